//! Presentations `L / R` of finitely generated abelian groups, with `R ⊆ L ⊆ Z^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::int_matrix::IntMatrix;
use super::snf::snf;
use crate::error::{Error, Result};

/// The group `L / R` together with generators and a classifier.
///
/// `orders` lists the nontrivial cyclic factors in divisibility order, with 0
/// standing for an infinite cyclic factor. `generators` has one ambient column
/// per factor.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient: usize,
    pub orders: Vec<BigInt>,
    pub generators: IntMatrix,
    // rows of the left SNF transform of S restricted to the rank of L
    lattice_rows: IntMatrix,
    lattice_diag: Vec<BigInt>,
    // rows of the second left transform selecting nontrivial factors
    combine: IntMatrix,
}

impl Subquotient {
    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|o| !o.is_zero())
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    /// Coordinates of `x` in the basis of `L` produced by the SNF of `S`.
    fn lattice_coordinates(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in ambient rank {}",
                x.len(),
                self.ambient
            )));
        }
        let px = self.lattice_rows.apply(x);
        let mut c = Vec::with_capacity(self.lattice_diag.len());
        for (v, d) in px.iter().zip(&self.lattice_diag) {
            let (quo, rem) = v.div_rem(d);
            if !rem.is_zero() {
                return Err(Error::NotInLattice);
            }
            c.push(quo);
        }
        // rows beyond the rank must vanish
        let full = self.lattice_rows.rows();
        if full > self.lattice_diag.len() && px[self.lattice_diag.len()..].iter().any(|v| !v.is_zero()) {
            return Err(Error::NotInLattice);
        }
        Ok(c)
    }

    /// Class of an element of `L` in `L / R`, one residue per factor.
    pub fn classify(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.lattice_coordinates(x)?;
        let z = self.combine.apply(&c);
        Ok(z
            .into_iter()
            .zip(&self.orders)
            .map(|(v, o)| if o.is_zero() { v } else { v.mod_floor(o) })
            .collect())
    }
}

/// Presents `L / R`, where `L` is spanned by the columns of `s` and `R` by the columns of `r`.
pub fn subquotient(ambient: usize, s: &IntMatrix, r: &IntMatrix) -> Result<Subquotient> {
    if s.rows() != ambient || r.rows() != ambient {
        return Err(Error::ShapeMismatch(format!(
            "subquotient in ambient rank {ambient} with {} and {} rows",
            s.rows(),
            r.rows()
        )));
    }
    let f = snf(s);
    let rank = f.rank();
    let basis_idx: Vec<usize> = (0..rank).collect();
    // basis of L: columns of p_inv * diag(d) restricted to the rank
    let mut basis = f.p_inv.select_columns(&basis_idx);
    for (j, d) in f.d.iter().take(rank).enumerate() {
        for i in 0..ambient {
            let v = basis.get(i, j);
            if !v.is_zero() {
                basis.set(i, j, v * d);
            }
        }
    }
    let all_rows: Vec<usize> = (0..ambient).collect();
    let lattice_rows = f.p.select_rows(&all_rows);
    let lattice_diag: Vec<BigInt> = f.d[..rank].to_vec();

    let mut probe = Subquotient {
        ambient,
        orders: Vec::new(),
        generators: IntMatrix::zeros(ambient, 0),
        lattice_rows,
        lattice_diag,
        combine: IntMatrix::zeros(0, rank),
    };

    let mut coord_cols = Vec::with_capacity(r.cols());
    for j in 0..r.cols() {
        let col = r.column(j);
        let c = probe
            .lattice_coordinates(&col)
            .map_err(|_| Error::RelationNotInSubgroup { column: j })?;
        coord_cols.push(c);
    }
    let coords = IntMatrix::from_columns(rank, &coord_cols);
    let g = snf(&coords);
    let mut orders = Vec::new();
    let mut keep = Vec::new();
    for j in 0..rank {
        let dj = g.d.get(j).cloned().unwrap_or_default();
        if dj.is_one() {
            continue;
        }
        orders.push(dj);
        keep.push(j);
    }
    let combine = g.p.select_rows(&keep);
    let gen_coords = g.p_inv.select_columns(&keep);
    let generators = basis.mul(&gen_coords)?;
    probe.orders = orders;
    probe.combine = combine;
    probe.generators = generators;
    Ok(probe)
}
