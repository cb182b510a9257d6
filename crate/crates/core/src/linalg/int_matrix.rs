use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diag<T: Into<BigInt> + Clone>(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone().into());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. All rows must have `cols` entries.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, BigInt::from(*v));
            }
        }
        Ok(m)
    }

    pub fn from_dense(dense: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::zeros(dense.len(), cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); rhs.rows];
        for (&(r, c), v) in &rhs.entries {
            by_row[r].push((c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &by_row[k] {
                *acc.entry((r, c)).or_default() += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(IntMatrix { rows: self.rows, cols: rhs.cols, entries: acc })
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            y[r] += v * &x[c];
        }
        y
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hconcat(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "hconcat of {} and {} rows",
                self.rows, rhs.rows
            )));
        }
        let mut m = self.clone();
        m.cols += rhs.cols;
        for (&(r, c), v) in &rhs.entries {
            m.entries.insert((r, c + self.cols), v.clone());
        }
        Ok(m)
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!(
                "vconcat of {} and {} columns",
                self.cols, rhs.cols
            )));
        }
        let mut m = self.clone();
        m.rows += rhs.rows;
        for (&(r, c), v) in &rhs.entries {
            m.entries.insert((r + self.rows, c), v.clone());
        }
        Ok(m)
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for (new_c, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                if let Some(v) = self.entries.get(&(r, c)) {
                    m.entries.insert((r, new_c), v.clone());
                }
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (new_r, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                if let Some(v) = self.entries.get(&(r, c)) {
                    m.entries.insert((new_r, c), v.clone());
                }
            }
        }
        m
    }

    pub fn neg(&self) -> IntMatrix {
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v = -v.clone();
        }
        m
    }

    /// Reduces row `r` modulo `moduli[r]` into `0..moduli[r]`. A modulus of zero leaves the row alone.
    pub fn reduce_rows(&self, moduli: &[BigInt]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            let red = if moduli[r].is_zero() { v.clone() } else { v.mod_floor(&moduli[r]) };
            m.set(r, c, red);
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_are_not_stored() {
        let mut m = IntMatrix::zeros(2, 2);
        m.set(0, 1, BigInt::from(3));
        m.set(0, 1, BigInt::zero());
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn multiply_small() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![0, 1]], 2).unwrap();
        let b = IntMatrix::from_rows(&[vec![3, 0], vec![1, -1]], 2).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c, IntMatrix::from_rows(&[vec![5, -2], vec![1, -1]], 2).unwrap());
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn concat_shapes() {
        let a = IntMatrix::identity(2);
        let h = a.hconcat(&IntMatrix::diag(&[4, 2])).unwrap();
        assert_eq!((h.rows(), h.cols()), (2, 4));
        assert_eq!(h.get(1, 3), BigInt::from(2));
        let v = a.vconcat(&a).unwrap();
        assert_eq!(v.get(3, 1), BigInt::one());
    }
}
