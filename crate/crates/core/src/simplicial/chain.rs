use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{FinAbTwoGroup, Z4Sparse};

/// The two `Z/4`-modules the engine is run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseModule {
    Z2,
    Z4,
}

impl fmt::Display for BaseModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseModule::Z2 => "Z2",
            BaseModule::Z4 => "Z4",
        })
    }
}

impl FromStr for BaseModule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z2" | "Z/2" => Ok(BaseModule::Z2),
            "Z4" | "Z/4" => Ok(BaseModule::Z4),
            _ => Err(Error::Config(format!("unknown module '{s}', expected Z2 or Z4"))),
        }
    }
}

/// A complex of free `Z/4`-modules concentrated in degrees `bottom..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedChainComplex {
    bottom: usize,
    top: usize,
    ranks: Vec<usize>,
    // differentials[k] : C_k → C_{k-1}, zero for k <= bottom
    differentials: Vec<Z4Sparse>,
}

impl TruncatedChainComplex {
    /// `ranks[j]` is the rank in degree `bottom + j`; `diffs[j]` is `d_{bottom+j+1}`.
    pub fn new(bottom: usize, ranks: Vec<usize>, diffs: Vec<Z4Sparse>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        let top = bottom + ranks.len() - 1;
        let mut all_ranks = vec![0; bottom];
        all_ranks.extend_from_slice(&ranks);
        let mut differentials: Vec<Z4Sparse> = (0..=bottom)
            .map(|k| Z4Sparse::zeros(if k == 0 { 0 } else { all_ranks[k - 1] }, all_ranks[k]))
            .collect();
        for (j, d) in diffs.into_iter().enumerate() {
            let k = bottom + j + 1;
            if d.rows() != all_ranks[k - 1] || d.cols() != all_ranks[k] {
                return Err(Error::ShapeMismatch(format!(
                    "d_{k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    all_ranks[k - 1],
                    all_ranks[k]
                )));
            }
            differentials.push(d);
        }
        for k in bottom + 2..=top {
            if !differentials[k - 1].mul(&differentials[k])?.is_zero() {
                return Err(Error::Invariant(format!("d_{} d_{k} is not zero", k - 1)));
            }
        }
        Ok(TruncatedChainComplex { bottom, top, ranks: all_ranks, differentials })
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `d_k : C_k → C_{k-1}`.
    pub fn differential(&self, k: usize) -> &Z4Sparse {
        &self.differentials[k]
    }

    /// `H_k` of the truncated complex.
    pub fn homology(&self, k: usize) -> Result<FinAbTwoGroup> {
        if k > self.top {
            return Err(Error::TruncationTooShallow { requested: k, available: self.top });
        }
        let incoming = if k < self.top {
            self.differentials[k + 1].clone()
        } else {
            Z4Sparse::zeros(self.rank(k), 0)
        };
        let h = crate::linalg::z4_homology(&incoming, &self.differentials[k], &[])?;
        let orders: Vec<u64> = h.orders.iter().map(|&o| o as u64).collect();
        Ok(FinAbTwoGroup::from_cyclic_orders(&orders))
    }
}

/// Free resolution of `module` over `Z/4`, shifted to start in degree `n`
/// and cut off at degree `top`.
///
/// `Z2` gives `Z/4 ←2− Z/4 ←2− …`, `Z4` is itself free.
pub fn standard_resolution(module: BaseModule, n: usize, top: usize) -> Result<TruncatedChainComplex> {
    if top < n {
        return Err(Error::TruncationTooShallow { requested: n, available: top });
    }
    match module {
        BaseModule::Z4 => {
            let len = top - n + 1;
            let mut ranks = vec![0; len];
            ranks[0] = 1;
            let diffs = (1..len).map(|j| Z4Sparse::zeros(ranks[j - 1], ranks[j])).collect();
            TruncatedChainComplex::new(n, ranks, diffs)
        }
        BaseModule::Z2 => {
            let len = top - n + 1;
            let two = Z4Sparse::from_dense_rows(&[vec![2]], 1);
            TruncatedChainComplex::new(n, vec![1; len], vec![two; len - 1])
        }
    }
}
