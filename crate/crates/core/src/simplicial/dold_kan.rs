use std::collections::HashMap;

use super::chain::TruncatedChainComplex;
use super::surjection::{enumerate_surjections, epi_mono_factor, MonotoneMap, Surjection};
use crate::error::{Error, Result};
use crate::linalg::Z4Sparse;

/// Basis element `(s, b)` of level `m`: the `b`-th basis vector of the summand
/// `C_k` indexed by the surjection `s: [m] ↠ [k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub surjection: Surjection,
    pub index: usize,
}

impl BasisLabel {
    pub fn degree(&self) -> usize {
        self.surjection.target_dim()
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialLevel {
    pub basis: Vec<BasisLabel>,
    offsets: HashMap<Surjection, usize>,
}

impl SimplicialLevel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// First basis position of the summand indexed by `s`, if present.
    pub fn offset(&self, s: &Surjection) -> Option<usize> {
        self.offsets.get(s).copied()
    }
}

/// The simplicial `Z/4`-module of a truncated complex, levels `0..=top`.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialModule {
    levels: Vec<SimplicialLevel>,
    faces: Vec<Vec<Z4Sparse>>,
    degeneracies: Vec<Vec<Z4Sparse>>,
}

fn build_level(c: &TruncatedChainComplex, m: usize) -> SimplicialLevel {
    let mut basis = Vec::new();
    let mut offsets = HashMap::new();
    for k in c.bottom()..=m.min(c.top()) {
        let r = c.rank(k);
        if r == 0 {
            continue;
        }
        for s in enumerate_surjections(m, k) {
            offsets.insert(s.clone(), basis.len());
            basis.extend((0..r).map(|b| BasisLabel { surjection: s.clone(), index: b }));
        }
    }
    SimplicialLevel { basis, offsets }
}

/// Applies Dold-Kan to `c`, building levels `0..=top_level`.
pub fn dold_kan(c: &TruncatedChainComplex, top_level: usize) -> Result<TruncatedSimplicialModule> {
    let levels: Vec<SimplicialLevel> = (0..=top_level).map(|m| build_level(c, m)).collect();
    let mut faces = vec![Vec::new()];
    for m in 1..=top_level {
        let (src, tgt) = (&levels[m], &levels[m - 1]);
        let mut level_faces = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let theta = MonotoneMap::coface(m, j);
            let mut columns = vec![Vec::new(); src.rank()];
            let mut pos = 0;
            while pos < src.rank() {
                let s = &src.basis[pos].surjection;
                let k = s.target_dim();
                let r = c.rank(k);
                let (s2, iota) = epi_mono_factor(&theta, s)?;
                if iota.is_identity() {
                    let off = tgt.offset(&s2).ok_or_else(|| Error::Invariant(format!("missing summand {s2:?}")))?;
                    for b in 0..r {
                        columns[pos + b].push(((off + b) as u32, 1));
                    }
                } else if iota == MonotoneMap::coface(k, k) && k > c.bottom() && c.rank(k - 1) > 0 {
                    let off = tgt.offset(&s2).ok_or_else(|| Error::Invariant(format!("missing summand {s2:?}")))?;
                    let d = c.differential(k);
                    for b in 0..r {
                        columns[pos + b].extend(d.column(b).iter().map(|&(row, v)| ((off + row as usize) as u32, v)));
                    }
                }
                pos += r;
            }
            level_faces.push(Z4Sparse::from_columns(tgt.rank(), columns));
        }
        faces.push(level_faces);
    }
    let mut degeneracies = Vec::new();
    for m in 0..top_level {
        let (src, tgt) = (&levels[m], &levels[m + 1]);
        let mut level_degs = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let columns = src
                .basis
                .iter()
                .map(|label| {
                    let s2 = label.surjection.after_codegeneracy(j);
                    let off = tgt.offset(&s2).expect("degenerate summand exists");
                    vec![((off + label.index) as u32, 1)]
                })
                .collect();
            level_degs.push(Z4Sparse::from_columns(tgt.rank(), columns));
        }
        degeneracies.push(level_degs);
    }
    Ok(TruncatedSimplicialModule { levels, faces, degeneracies })
}

impl TruncatedSimplicialModule {
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &SimplicialLevel {
        &self.levels[m]
    }

    pub fn rank(&self, m: usize) -> usize {
        self.levels[m].rank()
    }

    fn check_level(&self, m: usize) -> Result<()> {
        if m > self.top_level() {
            return Err(Error::TruncationTooShallow { requested: m, available: self.top_level() });
        }
        Ok(())
    }

    /// `d_j : level m → level m-1`.
    pub fn face(&self, m: usize, j: usize) -> Result<&Z4Sparse> {
        self.check_level(m)?;
        if m == 0 || j > m {
            return Err(Error::InvalidMap(format!("no face d_{j} on level {m}")));
        }
        Ok(&self.faces[m][j])
    }

    /// `s_j : level m → level m+1`.
    pub fn degeneracy(&self, m: usize, j: usize) -> Result<&Z4Sparse> {
        self.check_level(m + 1)?;
        if j > m {
            return Err(Error::InvalidMap(format!("no degeneracy s_{j} on level {m}")));
        }
        Ok(&self.degeneracies[m][j])
    }

    pub fn faces(&self, m: usize) -> Result<&[Z4Sparse]> {
        self.check_level(m)?;
        Ok(&self.faces[m])
    }

    pub fn degeneracies(&self, m: usize) -> Result<&[Z4Sparse]> {
        self.check_level(m + 1)?;
        Ok(&self.degeneracies[m])
    }

    /// `∂_m = Σ (-1)^j d_j`, mapping level `m` to level `m-1`.
    pub fn moore_differential(&self, m: usize) -> Result<Z4Sparse> {
        self.check_level(m)?;
        if m == 0 {
            return Ok(Z4Sparse::zeros(0, self.rank(0)));
        }
        alternating_sum(&self.faces[m])
    }

    /// Checks every simplicial identity among the stored faces and degeneracies.
    pub fn check_simplicial_identities(&self) -> Result<()> {
        check_identities(self.top_level(), |m, j| &self.faces[m][j], |m, j| &self.degeneracies[m][j])
    }
}

/// `Σ (-1)^j d_j` for a list of face maps on one level.
pub fn alternating_sum(faces: &[Z4Sparse]) -> Result<Z4Sparse> {
    let mut acc = Z4Sparse::zeros(faces[0].rows(), faces[0].cols());
    for (j, d) in faces.iter().enumerate() {
        acc = acc.add_scaled(d, if j % 2 == 0 { 1 } else { 3 })?;
    }
    Ok(acc)
}

/// Simplicial identities for face/degeneracy families given by accessors.
pub fn check_identities<'a>(
    top: usize,
    face: impl Fn(usize, usize) -> &'a Z4Sparse,
    degen: impl Fn(usize, usize) -> &'a Z4Sparse,
) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(format!("simplicial identity fails: {what}")));
    for m in 2..=top {
        for j in 1..=m {
            for i in 0..j {
                // d_i d_j = d_{j-1} d_i on level m
                if face(m - 1, i).mul(face(m, j))? != face(m - 1, j - 1).mul(face(m, i))? {
                    return fail(format!("d_{i} d_{j} on level {m}"));
                }
            }
        }
    }
    for m in 0..top {
        let id = Z4Sparse::identity(degen(m, 0).cols());
        for j in 0..=m {
            let s = degen(m, j);
            for i in 0..=m + 1 {
                let lhs = face(m + 1, i).mul(s)?;
                let ok = if i < j {
                    lhs == degen(m - 1, j - 1).mul(face(m, i))?
                } else if i == j || i == j + 1 {
                    lhs == id
                } else {
                    lhs == degen(m - 1, j).mul(face(m, i - 1))?
                };
                if !ok {
                    return fail(format!("d_{i} s_{j} on level {m}"));
                }
            }
        }
        if m + 1 < top {
            for j in 0..=m {
                for i in 0..=j {
                    // s_i s_j = s_{j+1} s_i
                    if degen(m + 1, i).mul(degen(m, j))? != degen(m + 1, j + 1).mul(degen(m, i))? {
                        return fail(format!("s_{i} s_{j} on level {m}"));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::chain::{standard_resolution, BaseModule};

    #[test]
    fn level_ranks() {
        let c = standard_resolution(BaseModule::Z2, 0, 4).unwrap();
        let sm = dold_kan(&c, 4).unwrap();
        // rank of level m is sum_k C(m,k) = 2^m
        for m in 0..=4 {
            assert_eq!(sm.rank(m), 1 << m);
        }
        let c = standard_resolution(BaseModule::Z2, 2, 5).unwrap();
        let sm = dold_kan(&c, 5).unwrap();
        assert_eq!(sm.rank(1), 0);
        assert_eq!(sm.rank(3), 3 + 1);
    }

    #[test]
    fn identities_hold() {
        for module in [BaseModule::Z2, BaseModule::Z4] {
            for n in 0..3 {
                let c = standard_resolution(module, n, 4).unwrap();
                dold_kan(&c, 4).unwrap().check_simplicial_identities().unwrap();
            }
        }
    }

    #[test]
    fn moore_squares_to_zero() {
        let c = standard_resolution(BaseModule::Z2, 1, 5).unwrap();
        let sm = dold_kan(&c, 5).unwrap();
        for m in 2..=5 {
            let d = sm.moore_differential(m - 1).unwrap().mul(&sm.moore_differential(m).unwrap()).unwrap();
            assert!(d.is_zero());
        }
    }

    #[test]
    fn out_of_range_levels() {
        let c = standard_resolution(BaseModule::Z2, 0, 2).unwrap();
        let sm = dold_kan(&c, 2).unwrap();
        assert!(matches!(sm.face(3, 0), Err(Error::TruncationTooShallow { .. })));
        assert!(sm.degeneracy(2, 0).is_err());
    }
}
