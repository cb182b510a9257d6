//! Finite abelian groups, homomorphisms between direct sums of cyclic groups,
//! kernels, cokernels and pushouts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::int_matrix::IntMatrix;
use super::snf::snf;
use super::subquotient::{subquotient, Subquotient};
use crate::error::{Error, Result};

/// A finite abelian group in canonical form: the list of its prime-power
/// cyclic factors, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FinAbTwoGroup {
    invariant_factors: Vec<u64>,
}

fn prime_power_split(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime_power(n: u64) -> bool {
    n > 1 && prime_power_split(n).len() == 1
}

impl FinAbTwoGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(&[order])
    }

    /// Builds a group from prime-power factors in any order.
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&f| !is_prime_power(f)) {
            return Err(Error::Invariant(format!("{bad} is not a prime power")));
        }
        factors.sort_unstable();
        Ok(FinAbTwoGroup { invariant_factors: factors })
    }

    /// Direct sum of cyclic groups of the given (positive) orders.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut factors: Vec<u64> = orders.iter().flat_map(|&o| prime_power_split(o)).collect();
        factors.sort_unstable();
        FinAbTwoGroup { invariant_factors: factors }
    }

    pub fn from_bigint_orders(orders: &[BigInt]) -> Result<Self> {
        let mut small = Vec::with_capacity(orders.len());
        for o in orders {
            if o.is_zero() {
                return Err(Error::NotFinite);
            }
            small.push(o.to_u64().ok_or_else(|| Error::Invariant(format!("order {o} too large")))?);
        }
        Ok(Self::from_cyclic_orders(&small))
    }

    /// Elementary abelian 2-group of the given rank.
    pub fn elementary(rank: usize) -> Self {
        FinAbTwoGroup { invariant_factors: vec![2; rank] }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn num_factors(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn count_of(&self, order: u64) -> usize {
        self.invariant_factors.iter().filter(|&&f| f == order).count()
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().fold(BigInt::from(1), |acc, &f| acc * f)
    }

    /// `log2 |A|`, if `A` is a 2-group.
    pub fn log2_order(&self) -> Option<u32> {
        self.invariant_factors
            .iter()
            .map(|f| f.is_power_of_two().then(|| f.trailing_zeros()))
            .sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut f = self.invariant_factors.clone();
        f.extend_from_slice(&other.invariant_factors);
        f.sort_unstable();
        FinAbTwoGroup { invariant_factors: f }
    }
}

impl fmt::Display for FinAbTwoGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let v = self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|&&x| x == v).count();
            parts.push(if run == 1 { format!("Z/{v}") } else { format!("(Z/{v})^{run}") });
            i += run;
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl FromStr for FinAbTwoGroup {
    type Err = Error;

    /// Parses strings like `0`, `Z/4`, `(Z/2)^15 ⊕ (Z/4)^3`. `+` also separates summands.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::trivial());
        }
        let bad = || Error::Invariant(format!("cannot parse group '{s}'"));
        let mut factors = Vec::new();
        for part in s.split(['⊕', '+']) {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim().trim_start_matches('(').trim_end_matches(')'), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let order = base.strip_prefix("Z/").ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())?;
            factors.extend(std::iter::repeat_n(order, exp));
        }
        Self::new(factors)
    }
}

/// An ordered direct sum of cyclic groups `⊕ Z/o_j`, one entry per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CyclicSum {
    generator_orders: Vec<u64>,
}

impl CyclicSum {
    pub fn new(generator_orders: Vec<u64>) -> Self {
        assert!(generator_orders.iter().all(|&o| o > 0), "generator orders must be positive");
        CyclicSum { generator_orders }
    }

    pub fn orders(&self) -> &[u64] {
        &self.generator_orders
    }

    pub fn len(&self) -> usize {
        self.generator_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generator_orders.is_empty()
    }

    pub fn group(&self) -> FinAbTwoGroup {
        FinAbTwoGroup::from_cyclic_orders(&self.generator_orders)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut o = self.generator_orders.clone();
        o.extend_from_slice(&other.generator_orders);
        CyclicSum { generator_orders: o }
    }

    fn big_orders(&self) -> Vec<BigInt> {
        self.generator_orders.iter().map(|&o| BigInt::from(o)).collect()
    }
}

/// A homomorphism `⊕ Z/s_j → ⊕ Z/t_i`, stored as a target-by-source matrix of
/// least nonnegative residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: CyclicSum,
    target: CyclicSum,
    matrix: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct GroupHomRepr {
    source: CyclicSum,
    target: CyclicSum,
    matrix: Vec<Vec<u64>>,
}

impl GroupHom {
    /// Reduces entries and checks that every column respects the order of its generator.
    pub fn new(source: CyclicSum, target: CyclicSum, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} for hom from {} to {} generators",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        let matrix = matrix.reduce_rows(&target.big_orders());
        for (r, c, v) in matrix.entries() {
            let s = BigInt::from(source.orders()[c]);
            if !(v * s).is_multiple_of(&BigInt::from(target.orders()[r])) {
                return Err(Error::Invariant(format!(
                    "generator {c} of order {} cannot map to {v} in Z/{}",
                    source.orders()[c],
                    target.orders()[r]
                )));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: CyclicSum, target: CyclicSum) -> Self {
        let matrix = IntMatrix::zeros(target.len(), source.len());
        GroupHom { source, target, matrix }
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, r: usize, c: usize) -> u64 {
        self.matrix.get(r, c).to_u64().expect("entries are reduced")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.nnz() == 0
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let y = self.matrix.apply(&big);
        y.iter()
            .zip(self.target.orders())
            .map(|(v, &o)| v.mod_floor(&BigInt::from(o)).to_u64().unwrap())
            .collect()
    }

    /// `self - other` for maps with the same source and target.
    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch("difference of maps with different endpoints".into()));
        }
        let mut m = self.matrix.clone();
        for (r, c, v) in other.matrix.entries() {
            m.set(r, c, m.get(r, c) - v);
        }
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GroupHom) -> Result<GroupHom> {
        if rhs.target != self.source {
            return Err(Error::ShapeMismatch("composition of incompatible maps".into()));
        }
        GroupHom::new(rhs.source.clone(), self.target.clone(), self.matrix.mul(&rhs.matrix)?)
    }

    /// Order of the image, as `log2`, for maps between 2-groups.
    pub fn image_log2(&self) -> Result<u32> {
        let (k, _) = hom_kernel(self)?;
        let src = self.source.group().log2_order().ok_or(Error::NotFinite)?;
        Ok(src - k.log2_order().ok_or(Error::NotFinite)?)
    }
}

impl Serialize for GroupHom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let matrix = (0..self.matrix.rows())
            .map(|r| (0..self.matrix.cols()).map(|c| self.entry(r, c)).collect())
            .collect();
        GroupHomRepr { source: self.source.clone(), target: self.target.clone(), matrix }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupHom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GroupHomRepr::deserialize(d)?;
        let rows: Vec<Vec<i64>> = repr.matrix.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        let m = IntMatrix::from_rows(&rows, repr.source.len()).map_err(serde::de::Error::custom)?;
        GroupHom::new(repr.source, repr.target, m).map_err(serde::de::Error::custom)
    }
}

fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let f = snf(a);
    let rank = f.rank();
    let cols: Vec<usize> = (rank..a.cols()).collect();
    f.q.select_columns(&cols)
}

/// Kernel of `h`, with its inclusion into the source.
pub fn hom_kernel(h: &GroupHom) -> Result<(FinAbTwoGroup, GroupHom)> {
    let s = h.source.len();
    let a = h.matrix.hconcat(&IntMatrix::diag(&h.target.big_orders()))?;
    let k = integer_kernel(&a);
    let top: Vec<usize> = (0..s).collect();
    let lattice = k.select_rows(&top);
    let rel = IntMatrix::diag(&h.source.big_orders());
    let q = subquotient(s, &lattice, &rel)?;
    let group = FinAbTwoGroup::from_bigint_orders(&q.orders)?;
    let ker_orders: Vec<u64> = q.orders.iter().map(|o| o.to_u64().unwrap()).collect();
    let incl = GroupHom::new(CyclicSum::new(ker_orders), h.source.clone(), q.generators.clone())?;
    Ok((group, incl))
}

/// Cokernel of `h` as a presented group, so classes of target elements can be computed.
pub fn hom_cokernel_presented(h: &GroupHom) -> Result<Subquotient> {
    let t = h.target.len();
    let rel = h.matrix.hconcat(&IntMatrix::diag(&h.target.big_orders()))?;
    subquotient(t, &IntMatrix::identity(t), &rel)
}

pub fn hom_cokernel(h: &GroupHom) -> Result<FinAbTwoGroup> {
    FinAbTwoGroup::from_bigint_orders(&hom_cokernel_presented(h)?.orders)
}

/// Pushout of `B <- A -> C`, i.e. the cokernel of `a ↦ (f a, -g a)`.
pub fn group_pushout(f: &GroupHom, g: &GroupHom) -> Result<(FinAbTwoGroup, Subquotient)> {
    if f.source != g.source {
        return Err(Error::ShapeMismatch("pushout legs have different sources".into()));
    }
    let m = f.matrix.vconcat(&g.matrix.neg())?;
    let h = GroupHom::new(f.source.clone(), f.target.concat(&g.target), m)?;
    let sq = hom_cokernel_presented(&h)?;
    Ok((FinAbTwoGroup::from_bigint_orders(&sq.orders)?, sq))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(src: &[u64], tgt: &[u64], rows: &[Vec<i64>]) -> GroupHom {
        let m = IntMatrix::from_rows(rows, src.len()).unwrap();
        GroupHom::new(CyclicSum::new(src.to_vec()), CyclicSum::new(tgt.to_vec()), m).unwrap()
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let g = FinAbTwoGroup::new(vec![4, 2, 2, 4, 2]).unwrap();
        assert_eq!(g.to_string(), "(Z/2)^3 ⊕ (Z/4)^2");
        assert_eq!("(Z/2)^3 ⊕ (Z/4)^2".parse::<FinAbTwoGroup>().unwrap(), g);
        assert_eq!("0".parse::<FinAbTwoGroup>().unwrap(), FinAbTwoGroup::trivial());
        assert_eq!(FinAbTwoGroup::cyclic(12).invariant_factors(), &[3, 4]);
        assert!(FinAbTwoGroup::new(vec![6]).is_err());
    }

    #[test]
    fn json_shape() {
        let g = FinAbTwoGroup::new(vec![2, 2, 4]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"invariant_factors":[2,2,4]}"#);
        let h = hom(&[4], &[2], &[vec![1]]);
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<GroupHom>(&text).unwrap(), h);
    }

    #[test]
    fn ill_defined_map_rejected() {
        let m = IntMatrix::from_rows(&[vec![1]], 1).unwrap();
        assert!(GroupHom::new(CyclicSum::new(vec![2]), CyclicSum::new(vec![4]), m).is_err());
    }

    #[test]
    fn reduction_mod_two_from_z4() {
        let h = hom(&[4], &[2], &[vec![1]]);
        let (k, incl) = hom_kernel(&h).unwrap();
        assert_eq!(k, FinAbTwoGroup::cyclic(2));
        assert_eq!(incl.apply(&[1]), vec![2]);
        assert!(hom_cokernel(&h).unwrap().is_trivial());
    }

    #[test]
    fn zero_map() {
        let h = GroupHom::zero(CyclicSum::new(vec![4, 2]), CyclicSum::new(vec![2]));
        assert_eq!(hom_kernel(&h).unwrap().0, FinAbTwoGroup::new(vec![2, 4]).unwrap());
        assert_eq!(hom_cokernel(&h).unwrap(), FinAbTwoGroup::cyclic(2));
    }

    #[test]
    fn pushout_of_inclusions() {
        // Z/2 -> Z/4 (times 2) and Z/2 -> Z/2 (identity): pushout Z/4
        let f = hom(&[2], &[4], &[vec![2]]);
        let g = hom(&[2], &[2], &[vec![1]]);
        let (p, _) = group_pushout(&f, &g).unwrap();
        assert_eq!(p, FinAbTwoGroup::cyclic(4));
        let (p2, _) = group_pushout(&g, &f).unwrap();
        assert_eq!(p, p2);
    }
}
