//! The functors `F(M) = (M ⊗ M)^{C2}` and `G(M) = M ⊗ M` on based free
//! `Z/4`-modules, and the inclusion `ι: F ⇒ G`.
//!
//! For a basis `e_0..e_{r-1}` of `M`, `F(M)` is free on `e_u ⊗ e_u` and
//! `e_u ⊗ e_v + e_v ⊗ e_u` (`u < v`), listed diagonal-first by [`SymPairBasis`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Z4Sparse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Functor {
    F,
    G,
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Functor::F => "F",
            Functor::G => "G",
        })
    }
}

impl FromStr for Functor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" => Ok(Functor::F),
            "G" => Ok(Functor::G),
            _ => Err(Error::Config(format!("unknown functor '{s}', expected F or G"))),
        }
    }
}

/// Basis of `F((Z/4)^r)`: diagonal pairs `(u,u)` first, then `{u<v}` lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymPairBasis {
    rank: usize,
}

impl SymPairBasis {
    pub fn new(rank: usize) -> Self {
        SymPairBasis { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        self.rank * (self.rank + 1) / 2
    }

    pub fn index(&self, u: usize, v: usize) -> usize {
        let r = self.rank;
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        debug_assert!(b < r);
        if a == b {
            a
        } else {
            r + a * (2 * r - a - 1) / 2 + (b - a - 1)
        }
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        let r = self.rank;
        if idx < r {
            return (idx, idx);
        }
        let mut rest = idx - r;
        for a in 0..r {
            let row = r - a - 1;
            if rest < row {
                return (a, a + 1 + rest);
            }
            rest -= row;
        }
        panic!("index {idx} out of range for rank {r}");
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size()).map(|i| self.pair(i))
    }
}

impl Functor {
    /// Rank of `T((Z/4)^r)`.
    pub fn size(&self, r: usize) -> usize {
        match self {
            Functor::F => SymPairBasis::new(r).size(),
            Functor::G => r * r,
        }
    }

    /// Source basis pair of a basis element of `T((Z/4)^r)`.
    pub fn pair(&self, r: usize, idx: usize) -> (usize, usize) {
        match self {
            Functor::F => SymPairBasis::new(r).pair(idx),
            Functor::G => (idx / r, idx % r),
        }
    }

    pub fn index(&self, r: usize, u: usize, v: usize) -> usize {
        match self {
            Functor::F => SymPairBasis::new(r).index(u, v),
            Functor::G => u * r + v,
        }
    }

    /// Columns of `T(α)` for the given source pairs.
    pub fn columns_for_pairs(&self, alpha: &Z4Sparse, pairs: &[(usize, usize)]) -> Z4Sparse {
        let rt = alpha.rows();
        let cols = pairs
            .iter()
            .map(|&(u, v)| match self {
                Functor::F => f_column(alpha.column(u), alpha.column(v), u == v, rt),
                Functor::G => g_column(alpha.column(u), alpha.column(v), rt),
            })
            .collect();
        Z4Sparse::from_columns(self.size(rt), cols)
    }

    pub fn on_matrix(&self, alpha: &Z4Sparse) -> Z4Sparse {
        let rs = alpha.cols();
        let pairs: Vec<(usize, usize)> = (0..self.size(rs)).map(|i| self.pair(rs, i)).collect();
        self.columns_for_pairs(alpha, &pairs)
    }
}

fn f_column(a: &[(u32, u8)], b: &[(u32, u8)], diagonal: bool, rt: usize) -> Vec<(u32, u8)> {
    let basis = SymPairBasis::new(rt);
    let mut out = Vec::new();
    if diagonal {
        for (x, &(v, av)) in a.iter().enumerate() {
            out.push((basis.index(v as usize, v as usize) as u32, (av * av) & 3));
            for &(w, aw) in &a[x + 1..] {
                out.push((basis.index(v as usize, w as usize) as u32, (av * aw) & 3));
            }
        }
    } else {
        for &(v, av) in a {
            for &(w, bw) in b {
                let c = (av * bw) & 3;
                if v == w {
                    out.push((basis.index(v as usize, v as usize) as u32, (2 * c) & 3));
                } else {
                    out.push((basis.index(v as usize, w as usize) as u32, c));
                }
            }
        }
    }
    out
}

fn g_column(a: &[(u32, u8)], b: &[(u32, u8)], rt: usize) -> Vec<(u32, u8)> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &(v, av) in a {
        for &(w, bw) in b {
            out.push(((v as usize * rt + w as usize) as u32, (av * bw) & 3));
        }
    }
    out
}

/// `F(α)` for `α: (Z/4)^{r_src} → (Z/4)^{r_tgt}`.
pub fn f_on_matrix(alpha: &Z4Sparse, r_src: usize, r_tgt: usize) -> Result<Z4Sparse> {
    if alpha.cols() != r_src || alpha.rows() != r_tgt {
        return Err(Error::ShapeMismatch(format!(
            "matrix is {}x{}, expected {r_tgt}x{r_src}",
            alpha.rows(),
            alpha.cols()
        )));
    }
    Ok(Functor::F.on_matrix(alpha))
}

/// `G(α) = α ⊗ α`, with ordered pairs `(u, v)` at index `u * r + v`.
pub fn g_on_matrix(alpha: &Z4Sparse) -> Z4Sparse {
    Functor::G.on_matrix(alpha)
}

/// `ι_r : F((Z/4)^r) → G((Z/4)^r)`.
pub fn iota_matrix(r: usize) -> Z4Sparse {
    let basis = SymPairBasis::new(r);
    let cols = basis
        .pairs()
        .map(|(u, v)| if u == v { vec![((u * r + u) as u32, 1)] } else { vec![((u * r + v) as u32, 1), ((v * r + u) as u32, 1)] })
        .collect();
    Z4Sparse::from_columns(r * r, cols)
}

/// `F(α)` recomputed from `G(α)` and `ι` alone, by exhaustive search over
/// `F` of the target. Only for ranks up to 3.
pub fn brute_force_f(alpha: &Z4Sparse) -> Result<Z4Sparse> {
    let (rs, rt) = (alpha.cols(), alpha.rows());
    if rs > 3 || rt > 3 {
        return Err(Error::RankTooLarge(rs.max(rt)));
    }
    let g = g_on_matrix(alpha);
    let iota_s = iota_matrix(rs);
    let iota_t = iota_matrix(rt);
    let ft = SymPairBasis::new(rt).size();
    let candidates: Vec<(Vec<u8>, Vec<u8>)> = (0..4usize.pow(ft as u32))
        .map(|mut code| {
            let c: Vec<u8> = (0..ft)
                .map(|_| {
                    let d = (code % 4) as u8;
                    code /= 4;
                    d
                })
                .collect();
            let img = iota_t.apply(&c);
            (c, img)
        })
        .collect();
    let mut cols = Vec::new();
    for e in 0..iota_s.cols() {
        let mut unit = vec![0u8; iota_s.cols()];
        unit[e] = 1;
        let target = g.apply(&iota_s.apply(&unit));
        let swap_fixed = (0..rt).all(|u| (0..rt).all(|v| target[u * rt + v] == target[v * rt + u]));
        if !swap_fixed {
            return Err(Error::Invariant("image of a symmetric tensor is not symmetric".into()));
        }
        let (c, _) = candidates
            .iter()
            .find(|(_, img)| *img == target)
            .ok_or_else(|| Error::Invariant("symmetric tensor outside the image of iota".into()))?;
        cols.push(c.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i as u32, v)).collect());
    }
    Ok(Z4Sparse::from_columns(ft, cols))
}
