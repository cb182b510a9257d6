use std::fmt;

use crate::error::{Error, Result};

/// A monotone map `[m] → [t]`, stored as its list of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    values: Vec<u8>,
    target: usize,
}

impl MonotoneMap {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidMap("empty source".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
            return Err(Error::InvalidMap(format!("{values:?} is not monotone into [{target}]")));
        }
        Ok(MonotoneMap { values: values.into_iter().map(|v| v as u8).collect(), target })
    }

    /// The coface `δ_j: [m-1] → [m]` missing `j`.
    pub fn coface(m: usize, j: usize) -> Self {
        assert!(m >= 1 && j <= m);
        let values = (0..m).map(|x| if x < j { x } else { x + 1 } as u8).collect();
        MonotoneMap { values, target: m }
    }

    /// The codegeneracy `σ_j: [m+1] → [m]` hitting `j` twice.
    pub fn codegeneracy(m: usize, j: usize) -> Self {
        assert!(j <= m);
        let values = (0..=m + 1).map(|x| if x <= j { x } else { x - 1 } as u8).collect();
        MonotoneMap { values, target: m }
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn value(&self, x: usize) -> usize {
        self.values[x] as usize
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim() == self.target && self.is_injective()
    }
}

/// A surjection `[m] ↠ [k]` in the simplex category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surjection {
    values: Vec<u8>,
}

impl Surjection {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.first() != Some(&0) || values.windows(2).any(|w| w[1] != w[0] && w[1] != w[0] + 1) {
            return Err(Error::InvalidMap(format!("{values:?} is not a surjection of ordinals")));
        }
        Ok(Surjection { values: values.into_iter().map(|v| v as u8).collect() })
    }

    pub fn identity(m: usize) -> Self {
        Surjection { values: (0..=m as u8).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        *self.values.last().unwrap() as usize
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim() == self.target_dim()
    }

    /// True if `s(j) = s(j+1)`, i.e. `s` factors through `σ_j`.
    pub fn repeats_at(&self, j: usize) -> bool {
        self.values[j] == self.values[j + 1]
    }

    /// `self ∘ σ_j : [m+1] → [k]`.
    pub fn after_codegeneracy(&self, j: usize) -> Surjection {
        let m = self.source_dim();
        assert!(j <= m);
        let values = (0..=m + 1).map(|x| self.values[if x <= j { x } else { x - 1 }]).collect();
        Surjection { values }
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{:?}", self.values)
    }
}

/// All surjections `[m] ↠ [k]` in lexicographic order of their value lists.
pub fn enumerate_surjections(m: usize, k: usize) -> Vec<Surjection> {
    fn go(m: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Surjection>) {
        let pos = cur.len();
        if pos == m + 1 {
            if *cur.last().unwrap() as usize == k {
                out.push(Surjection { values: cur.clone() });
            }
            return;
        }
        let last = *cur.last().unwrap() as usize;
        let remaining = m + 1 - pos;
        // staying leaves remaining - 1 positions to climb k - last steps
        if k - last < remaining {
            cur.push(last as u8);
            go(m, k, cur, out);
            cur.pop();
        }
        if last < k {
            cur.push(last as u8 + 1);
            go(m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut cur = vec![0u8];
    go(m, k, &mut cur, &mut out);
    out
}

/// Factors `s ∘ θ` as `ι ∘ s'` with `s'` surjective and `ι` injective.
pub fn epi_mono_factor(theta: &MonotoneMap, s: &Surjection) -> Result<(Surjection, MonotoneMap)> {
    if theta.target_dim() != s.source_dim() {
        return Err(Error::InvalidMap(format!(
            "cannot compose map into [{}] with surjection from [{}]",
            theta.target_dim(),
            s.source_dim()
        )));
    }
    let composite: Vec<u8> = theta.values.iter().map(|&x| s.values[x as usize]).collect();
    let mut image: Vec<u8> = composite.clone();
    image.dedup();
    let epi: Vec<u8> = composite
        .iter()
        .map(|v| image.iter().position(|w| w == v).unwrap() as u8)
        .collect();
    Ok((Surjection { values: epi }, MonotoneMap { values: image, target: s.target_dim() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_are_binomial() {
        for m in 0..8 {
            for k in 0..=m {
                assert_eq!(enumerate_surjections(m, k).len(), binom(m, k), "m={m} k={k}");
            }
        }
        assert!(enumerate_surjections(2, 3).is_empty());
    }

    #[test]
    fn lexicographic_order() {
        let s = enumerate_surjections(3, 1);
        let vals: Vec<Vec<u8>> = s.iter().map(|x| x.values().to_vec()).collect();
        assert_eq!(vals, vec![vec![0, 0, 0, 1], vec![0, 0, 1, 1], vec![0, 1, 1, 1]]);
    }

    #[test]
    fn factor_coface_of_identity() {
        let (e, i) = epi_mono_factor(&MonotoneMap::coface(2, 1), &Surjection::identity(2)).unwrap();
        assert!(e.is_identity());
        assert_eq!(i, MonotoneMap::coface(2, 1));
    }

    #[test]
    fn factor_degenerate_face() {
        let s = Surjection::new(vec![0, 0, 1]).unwrap();
        let (e, i) = epi_mono_factor(&MonotoneMap::coface(2, 0), &s).unwrap();
        assert_eq!(e, Surjection::identity(1));
        assert!(i.is_identity());
        let (e, i) = epi_mono_factor(&MonotoneMap::coface(2, 2), &s).unwrap();
        assert_eq!(e, Surjection::new(vec![0, 0]).unwrap());
        assert_eq!(i, MonotoneMap::coface(1, 1));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Surjection::new(vec![0, 2]).is_err());
        assert!(MonotoneMap::new(vec![1, 0], 1).is_err());
        assert!(epi_mono_factor(&MonotoneMap::coface(3, 0), &Surjection::identity(2)).is_err());
    }
}
