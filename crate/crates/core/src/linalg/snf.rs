//! Smith normal form over the integers with both transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int_matrix::IntMatrix;

/// Result of [`snf`]: `p * a * q = diag(d)`, with `p_inv`, `q_inv` the inverses.
///
/// `d` has `min(rows, cols)` entries, nonnegative, each dividing the next
/// nonzero one, zeros last.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.iter().take_while(|v| !v.is_zero()).count()
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.p.rows(), self.q.cols());
        for (i, v) in self.d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// `p_inv * diag(d) * q_inv`, which equals the input matrix.
    pub fn reconstruct(&self) -> IntMatrix {
        self.p_inv
            .mul(&self.diagonal_matrix())
            .and_then(|m| m.mul(&self.q_inv))
            .expect("snf factors have compatible shapes")
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    p: Vec<Vec<BigInt>>,
    p_inv: Vec<Vec<BigInt>>,
    q: Vec<Vec<BigInt>>,
    q_inv: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.p.swap(i, j);
        for row in &mut self.p_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.q {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        let (src_a, src_p) = (self.a[j].clone(), self.p[j].clone());
        for (x, y) in self.a[i].iter_mut().zip(&src_a) {
            *x += k * y;
        }
        for (x, y) in self.p[i].iter_mut().zip(&src_p) {
            *x += k * y;
        }
        for row in &mut self.p_inv {
            let t = k * &row[i];
            row[j] -= t;
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for row in &mut self.a {
            let t = k * &row[j];
            row[i] += t;
        }
        for row in &mut self.q {
            let t = k * &row[j];
            row[i] += t;
        }
        let src = self.q_inv[i].clone();
        for (x, y) in self.q_inv[j].iter_mut().zip(&src) {
            *x -= k * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        for x in &mut self.p[i] {
            *x = -x.clone();
        }
        for row in &mut self.p_inv {
            row[i] = -row[i].clone();
        }
    }
}

fn pick_pivot(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut best: Option<(BigInt, usize, usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if a[i][j].is_zero() {
                continue;
            }
            let mag = a[i][j].abs();
            let better = match &best {
                None => true,
                Some((m, _, _, _)) => mag < *m,
            };
            let tie = matches!(&best, Some((m, _, _, _)) if mag == *m);
            if better || tie {
                let row_nz = a[i][t..].iter().filter(|v| !v.is_zero()).count();
                let col_nz = (t..rows).filter(|&r| !a[r][j].is_zero()).count();
                let weight = row_nz + col_nz;
                if better || best.as_ref().is_some_and(|b| weight < b.3) {
                    best = Some((mag, i, j, weight));
                }
            }
        }
    }
    best.map(|(_, i, j, _)| (i, j))
}

/// `q` with `|a - q b| <= |b| / 2`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a.div_floor(b);
    let r = a - &q * b;
    if (&r * 2u8).abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Smith normal form of an integer matrix.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_dense(),
        p: identity(rows),
        p_inv: identity(rows),
        q: identity(cols),
        q_inv: identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // smallest entry of row t and column t becomes the pivot
            let mut best = (w.a[t][t].abs(), t, t);
            for i in t + 1..rows {
                let v = w.a[i][t].abs();
                if !v.is_zero() && v < best.0 {
                    best = (v, i, t);
                }
            }
            for j in t + 1..cols {
                let v = w.a[t][j].abs();
                if !v.is_zero() && v < best.0 {
                    best = (v, t, j);
                }
            }
            w.swap_rows(t, best.1);
            w.swap_cols(t, best.2);
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let quo = nearest_quotient(&w.a[i][t], &w.a[t][t]);
                    w.add_row(i, t, &-quo);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let quo = nearest_quotient(&w.a[t][j], &w.a[t][t]);
                    w.add_col(j, t, &-quo);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = w.a[t][t].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let mut d: Vec<BigInt> = (0..rows.min(cols)).map(|i| w.a[i][i].clone()).collect();
    for v in d.iter_mut().skip(t) {
        *v = BigInt::zero();
    }
    SnfResult {
        d,
        p: IntMatrix::from_dense(&w.p, rows),
        p_inv: IntMatrix::from_dense(&w.p_inv, rows),
        q: IntMatrix::from_dense(&w.q, cols),
        q_inv: IntMatrix::from_dense(&w.q_inv, cols),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn coefficients_stay_small() {
        let a = IntMatrix::from_rows(
            &[
                vec![0, 0, 0, 4, 0, 0, 0, 0],
                vec![0, 0, 0, 156, 0, 96, -4, 80],
                vec![0, 0, 0, -661, -72, -271, 133, -322],
                vec![0, 0, 0, 347, 38, 142, -70, 169],
                vec![0, 0, 0, 154, 17, 63, -31, 75],
            ],
            8,
        )
        .unwrap();
        let s = snf(&a);
        assert_eq!(s.d, ints(&[1, 1, 1, 4, 4]));
        assert_eq!(s.reconstruct(), a);
        assert!(s.q.entries().all(|(_, _, v)| v.bits() < 64));
    }

    #[test]
    fn all_twos_block() {
        let a = IntMatrix::from_rows(&[vec![2, 2], vec![2, 2]], 2).unwrap();
        let s = snf(&a);
        assert_eq!(s.d, ints(&[2, 0]));
        assert_eq!(s.reconstruct(), a);
    }

    #[test]
    fn divisibility_is_enforced() {
        let a = IntMatrix::diag(&[4, 6]);
        let s = snf(&a);
        assert_eq!(s.d, ints(&[2, 12]));
        assert_eq!(s.p.mul(&a).unwrap().mul(&s.q).unwrap(), s.diagonal_matrix());
    }

    #[test]
    fn empty_and_zero() {
        let s = snf(&IntMatrix::zeros(3, 0));
        assert!(s.d.is_empty());
        let s = snf(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
        assert_eq!(s.p.rows(), 2);
        assert_eq!(s.q.rows(), 3);
    }

    #[test]
    fn rectangular_with_negative_entries() {
        let a = IntMatrix::from_rows(&[vec![3, -6, 9], vec![-1, 4, 0]], 3).unwrap();
        let s = snf(&a);
        assert_eq!(s.reconstruct(), a);
        assert_eq!(s.p.mul(&s.p_inv).unwrap(), IntMatrix::identity(2));
        assert_eq!(s.q.mul(&s.q_inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(s.d, ints(&[1, 3]));
    }
}
