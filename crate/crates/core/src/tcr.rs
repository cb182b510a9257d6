//! Homotopy groups of `THR(Z/4)^φ` and its fixed points, the maps `r` and
//! `f` between them, and what the long exact sequence of `r - f` gives.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{group_pushout, hom_cokernel, hom_cokernel_presented, hom_kernel, CyclicSum, FinAbTwoGroup, GroupHom, IntMatrix};
use crate::nadf::{theta_parity, Engine};
use crate::quad::Functor;
use crate::report::Report;
use crate::simplicial::BaseModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SummandIndex {
    /// `L_i^(n) F(Z2)`, on the fixed-point side.
    Diagonal { n: usize },
    /// The `Z/2` indexed by `(n, m, k)` with `n < m`, on the fixed-point side.
    OffDiagonal { n: usize, m: usize, k: usize },
    /// The `Z/2` indexed by `(n, m, k)`, on the underlying side.
    Triple { n: usize, m: usize, k: usize },
}

impl fmt::Display for SummandIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandIndex::Diagonal { n } => write!(f, "D{n}"),
            SummandIndex::OffDiagonal { n, m, k } => write!(f, "O({n},{m},{k})"),
            SummandIndex::Triple { n, m, k } => write!(f, "T({n},{m},{k})"),
        }
    }
}

/// `π_i` as an ordered direct sum of summands, each an ordered list of cyclic generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssembledGroup {
    pub degree: usize,
    pub summands: Vec<(SummandIndex, CyclicSum)>,
    pub total: FinAbTwoGroup,
    offsets: Vec<usize>,
}

impl AssembledGroup {
    fn from_summands(degree: usize, summands: Vec<(SummandIndex, CyclicSum)>) -> Self {
        let mut offsets = Vec::with_capacity(summands.len());
        let mut total = FinAbTwoGroup::trivial();
        let mut pos = 0;
        for (_, s) in &summands {
            offsets.push(pos);
            pos += s.len();
            total = total.direct_sum(&s.group());
        }
        AssembledGroup { degree, summands, total, offsets }
    }

    /// All generators in summand order.
    pub fn generators(&self) -> CyclicSum {
        self.summands.iter().fold(CyclicSum::default(), |acc, (_, s)| acc.concat(s))
    }

    pub fn num_generators(&self) -> usize {
        self.summands.iter().map(|(_, s)| s.len()).sum()
    }

    /// Generator positions of a summand.
    pub fn range(&self, idx: &SummandIndex) -> Option<Range<usize>> {
        let p = self.summands.iter().position(|(s, _)| s == idx)?;
        Some(self.offsets[p]..self.offsets[p] + self.summands[p].1.len())
    }

    pub fn count_matching(&self, pred: impl Fn(&SummandIndex) -> bool) -> usize {
        self.summands.iter().filter(|(s, _)| pred(s)).count()
    }
}

fn triples(i: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=i).flat_map(move |n| (0..=i - n).map(move |m| (n, m, i - n - m)))
}

/// `π_i THR(Z/4)^φ = ⊕_{n+m+k=i} Z/2`.
pub fn assemble_thr(i: usize) -> AssembledGroup {
    let summands = triples(i).map(|(n, m, k)| (SummandIndex::Triple { n, m, k }, CyclicSum::new(vec![2]))).collect();
    AssembledGroup::from_summands(i, summands)
}

/// `π_i` of the fixed points: `⊕_n L_i^(n) F(Z2)` plus one `Z/2` per `(n, m, k)`, `n < m`.
pub fn assemble_thr_c2(engine: &Engine, i: usize) -> Result<AssembledGroup> {
    let mut summands = Vec::new();
    for n in 0..=i {
        let v = engine.derived(Functor::F, BaseModule::Z2, n, i)?;
        summands.push((SummandIndex::Diagonal { n }, v.cyclic_sum()));
    }
    for (n, m, k) in triples(i) {
        if n < m {
            summands.push((SummandIndex::OffDiagonal { n, m, k }, CyclicSum::new(vec![2])));
        }
    }
    Ok(AssembledGroup::from_summands(i, summands))
}

fn hom_from_columns(src: &AssembledGroup, tgt: &AssembledGroup, cols: Vec<Vec<BigInt>>) -> Result<GroupHom> {
    GroupHom::new(src.generators(), tgt.generators(), IntMatrix::from_columns(tgt.num_generators(), &cols))
}

fn triple_pos(thr: &AssembledGroup, n: usize, m: usize, k: usize) -> usize {
    thr.range(&SummandIndex::Triple { n, m, k }).expect("triple present").start
}

/// `f_i`, induced by the inclusion of fixed points.
pub fn build_f(engine: &Engine, i: usize) -> Result<GroupHom> {
    let src = assemble_thr_c2(engine, i)?;
    let tgt = assemble_thr(i);
    let rows = tgt.num_generators();
    let mut cols = Vec::with_capacity(src.num_generators());
    for (idx, sum) in &src.summands {
        match *idx {
            SummandIndex::Diagonal { n } => {
                let iota = if 2 * n <= i { Some(engine.induced_iota(n, i)?) } else { None };
                for j in 0..sum.len() {
                    let mut col = vec![BigInt::from(0); rows];
                    if let Some(h) = &iota {
                        col[triple_pos(&tgt, n, n, i - 2 * n)] = BigInt::from(h.entry(0, j));
                    }
                    cols.push(col);
                }
            }
            SummandIndex::OffDiagonal { n, m, k } => {
                let mut col = vec![BigInt::from(0); rows];
                col[triple_pos(&tgt, n, m, k)] = BigInt::from(1);
                col[triple_pos(&tgt, m, n, k)] = BigInt::from(1);
                cols.push(col);
            }
            SummandIndex::Triple { .. } => unreachable!("no triples on the fixed-point side"),
        }
    }
    hom_from_columns(&src, &tgt, cols)
}

/// `r_i`, read off from the parity of the identity diagonal coefficient.
pub fn build_r(engine: &Engine, i: usize) -> Result<GroupHom> {
    let src = assemble_thr_c2(engine, i)?;
    let tgt = assemble_thr(i);
    let rows = tgt.num_generators();
    let mut cols = Vec::with_capacity(src.num_generators());
    for (idx, sum) in &src.summands {
        match *idx {
            SummandIndex::Diagonal { n } => {
                let value = engine.derived(Functor::F, BaseModule::Z2, n, i)?;
                let bits = theta_parity(&value)?;
                for &b in bits.iter().take(sum.len()) {
                    let mut col = vec![BigInt::from(0); rows];
                    col[triple_pos(&tgt, n, 0, i - n)] = BigInt::from(b);
                    cols.push(col);
                }
            }
            _ => cols.push(vec![BigInt::from(0); rows]),
        }
    }
    hom_from_columns(&src, &tgt, cols)
}

pub fn r_minus_f(engine: &Engine, i: usize) -> Result<GroupHom> {
    build_r(engine, i)?.sub(&build_f(engine, i)?)
}

/// One row of the kernel/cokernel table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesRow {
    pub i: usize,
    pub thr_c2: FinAbTwoGroup,
    pub thr: FinAbTwoGroup,
    pub ker: FinAbTwoGroup,
    pub coker: FinAbTwoGroup,
}

/// `0 → coker_{i+1} → π_i TCR → ker_i → 0`; `group` is set when one end is trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesPair {
    pub i: i64,
    pub sub: FinAbTwoGroup,
    pub quotient: FinAbTwoGroup,
    pub group: Option<FinAbTwoGroup>,
}

impl SesPair {
    pub fn log2_order(&self) -> u32 {
        self.sub.log2_order().unwrap_or(0) + self.quotient.log2_order().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SesTable {
    pub rows: Vec<SesRow>,
    pub ses: Vec<SesPair>,
}

/// Everything `F(Z2)` and `G(Z2)` needs up to degree `max_degree`, computed in parallel.
pub fn prefetch(engine: &Engine, max_degree: usize) -> Result<()> {
    engine.prefetch(&engine.table_keys(&[Functor::F, Functor::G], BaseModule::Z2, max_degree))
}

pub fn ses_row(engine: &Engine, i: usize) -> Result<SesRow> {
    let h = r_minus_f(engine, i)?;
    Ok(SesRow {
        i,
        thr_c2: assemble_thr_c2(engine, i)?.total,
        thr: assemble_thr(i).total,
        ker: hom_kernel(&h)?.0,
        coker: hom_cokernel(&h)?,
    })
}

/// Kernel/cokernel rows for `0..=i_max+1` and SES pairs for `-1..=i_max`.
pub fn ses_table(engine: &Engine, i_max: usize) -> Result<SesTable> {
    prefetch(engine, i_max + 1)?;
    let rows: Vec<SesRow> = (0..=i_max + 1).into_par_iter().map(|i| ses_row(engine, i)).collect::<Result<_>>()?;
    let mut ses = vec![pair(-1, rows[0].coker.clone(), FinAbTwoGroup::trivial())];
    for i in 0..=i_max {
        ses.push(pair(i as i64, rows[i + 1].coker.clone(), rows[i].ker.clone()));
    }
    Ok(SesTable { rows, ses })
}

fn pair(i: i64, sub: FinAbTwoGroup, quotient: FinAbTwoGroup) -> SesPair {
    let group = if sub.is_trivial() {
        Some(quotient.clone())
    } else if quotient.is_trivial() {
        Some(sub.clone())
    } else {
        None
    };
    SesPair { i, sub, quotient, group }
}

/// `(r - f)_i` restricted to `L_i^(n) F(Z2)`, landing in the triples with first index `n`.
pub fn gamma_map(engine: &Engine, n: usize, i: usize) -> Result<GroupHom> {
    let src = assemble_thr_c2(engine, i)?;
    let tgt = assemble_thr(i);
    let h = r_minus_f(engine, i)?;
    let cols: Vec<usize> = src.range(&SummandIndex::Diagonal { n }).map(|r| r.collect()).unwrap_or_default();
    let rows = gamma_rows(&tgt, n);
    let m = h.matrix().select_columns(&cols).select_rows(&rows);
    let src_orders = cols.iter().map(|&c| h.source().orders()[c]).collect();
    let tgt_orders = rows.iter().map(|&r| h.target().orders()[r]).collect();
    GroupHom::new(CyclicSum::new(src_orders), CyclicSum::new(tgt_orders), m)
}

fn gamma_rows(tgt: &AssembledGroup, n: usize) -> Vec<usize> {
    tgt.summands
        .iter()
        .filter(|(s, _)| matches!(s, SummandIndex::Triple { n: a, .. } if *a == n))
        .flat_map(|(s, _)| tgt.range(s).unwrap())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Resolution {
    pub group: FinAbTwoGroup,
    /// `coker(π_2 γ_n)` for `n = 0, 1, 2`.
    pub gamma_cokernels: Vec<FinAbTwoGroup>,
    /// `ker(π_1 γ_n)` for `n = 0, 1`.
    pub gamma_kernels: Vec<FinAbTwoGroup>,
    /// Matrix of `⊕_n coker(π_2 γ_n) → coker((r-f)_2)`.
    pub quotient_map: GroupHom,
    /// The same map restricted to each block, `n = 0, 1, 2`.
    pub quotient_blocks: Vec<GroupHom>,
}

/// `π_1 TCR(Z/4)^φ` as a pushout of `coker(π_2 γ) → π_1 hofib(γ)` along the
/// quotient onto `coker((r-f)_2)`.
pub fn resolve_pi1(engine: &Engine) -> Result<Pi1Resolution> {
    prefetch(engine, 2)?;
    let tgt2 = assemble_thr(2);
    let h2 = r_minus_f(engine, 2)?;
    let coker2 = hom_cokernel_presented(&h2)?;
    let coker2_orders: Vec<u64> = coker2.orders.iter().map(|o| u64::try_from(o.clone()).unwrap()).collect();
    let coker2_sum = CyclicSum::new(coker2_orders);

    let mut gamma_cokernels = Vec::new();
    let mut block_sums = Vec::new();
    let mut q_cols: Vec<Vec<BigInt>> = Vec::new();
    let mut quotient_blocks = Vec::new();
    for n in 0..=2 {
        let g = gamma_map(engine, n, 2)?;
        let pres = hom_cokernel_presented(&g)?;
        let rows = gamma_rows(&tgt2, n);
        let orders: Vec<u64> = pres.orders.iter().map(|o| u64::try_from(o.clone()).unwrap()).collect();
        let mut block_cols = Vec::new();
        for j in 0..pres.num_generators() {
            let local = pres.generators.column(j);
            let mut full = vec![BigInt::from(0); tgt2.num_generators()];
            for (&r, v) in rows.iter().zip(local) {
                full[r] = v;
            }
            block_cols.push(coker2.classify(&full)?);
        }
        let block = GroupHom::new(
            CyclicSum::new(orders.clone()),
            coker2_sum.clone(),
            IntMatrix::from_columns(coker2_sum.len(), &block_cols),
        )?;
        q_cols.extend(block_cols);
        gamma_cokernels.push(FinAbTwoGroup::from_cyclic_orders(&orders));
        block_sums.push(CyclicSum::new(orders));
        quotient_blocks.push(block);
    }
    let a_sum = block_sums.iter().fold(CyclicSum::default(), |acc, s| acc.concat(s));
    let quotient_map = GroupHom::new(a_sum.clone(), coker2_sum.clone(), IntMatrix::from_columns(coker2_sum.len(), &q_cols))?;

    let gamma_kernels: Vec<FinAbTwoGroup> =
        (0..=1).map(|n| gamma_map(engine, n, 1).and_then(|g| hom_kernel(&g).map(|k| k.0))).collect::<Result<_>>()?;
    let higher_kernels_vanish = (2..=2).all(|n| gamma_map(engine, n, 1).map(|g| g.source().is_empty()).unwrap_or(false));

    // the shape the argument needs
    let unexpected = |what: &str| Err(Error::PushoutShapeUnexpected(what.to_string()));
    if !quotient_blocks[0].is_zero() {
        return unexpected("quotient map is nonzero on the n = 0 block");
    }
    let b1 = &quotient_blocks[1];
    if !(hom_kernel(b1)?.0.is_trivial() && hom_cokernel(b1)?.is_trivial()) {
        return unexpected("quotient map is not an isomorphism on the n = 1 block");
    }
    if !block_sums[2].is_empty() {
        return unexpected("n = 2 block of the cokernel is nonzero");
    }
    if !gamma_kernels[1].is_trivial() || !higher_kernels_vanish {
        return unexpected("kernel of the n >= 1 restrictions on π_1 is nonzero");
    }

    // π_1 hofib(γ) modelled as ⊕_n (coker_n ⊕ ker_n); the pushout does not
    // depend on the extension once the n = 0 block is killed by the quotient.
    let mut b_orders = Vec::new();
    let mut incl_cols: Vec<Vec<BigInt>> = Vec::new();
    let kernel_sums: Vec<CyclicSum> = (0..=1)
        .map(|n| gamma_map(engine, n, 1).and_then(|g| hom_kernel(&g).map(|(_, inc)| inc.source().clone())))
        .collect::<Result<_>>()?;
    let mut positions = Vec::new();
    for (n, block) in block_sums.iter().enumerate() {
        positions.push(b_orders.len());
        b_orders.extend_from_slice(block.orders());
        if let Some(k) = kernel_sums.get(n) {
            b_orders.extend_from_slice(k.orders());
        }
    }
    for (block, &pos) in block_sums.iter().zip(&positions) {
        for j in 0..block.len() {
            let mut col = vec![BigInt::from(0); b_orders.len()];
            col[pos + j] = BigInt::from(1);
            incl_cols.push(col);
        }
    }
    let b_sum = CyclicSum::new(b_orders);
    let incl = GroupHom::new(a_sum, b_sum.clone(), IntMatrix::from_columns(b_sum.len(), &incl_cols))?;
    let (group, _) = group_pushout(&incl, &quotient_map)?;

    let expected = gamma_kernels[0].direct_sum(&gamma_cokernels[1]);
    if group != expected {
        return unexpected(&format!("pushout {group} differs from ker ⊕ coker = {expected}"));
    }
    Ok(Pi1Resolution { group, gamma_cokernels, gamma_kernels, quotient_map, quotient_blocks })
}

fn within(lo_num: i64, value8: i64, hi_num: i64) -> bool {
    lo_num <= value8 && value8 <= hi_num
}

/// Order bounds on the fixed points and on `π_i TCR` for `0 <= i <= i_max`.
pub fn verify_bounds(engine: &Engine, i_max: usize) -> Result<Report> {
    let table = ses_table(engine, i_max)?;
    let log2 = |g: &FinAbTwoGroup| g.log2_order().unwrap_or(0) as i64;
    let mut rep = Report::new("bounds");
    for row in &table.rows {
        let i = row.i as i64;
        let c = log2(&row.thr_c2);
        let (lo, hi) = ((i + 1) * (5 * i + 7), (i + 2) * (5 * i + 8));
        rep.push(
            format!("i={i} log2|C2 fixed points| bounds"),
            format!("[{}/8, {}/8]", lo, hi),
            c,
            within(lo, 8 * c, hi),
        );
        rep.expect_eq(format!("i={i} log2|THR| exact"), (i + 1) * (i + 2) / 2, log2(&row.thr));
        // |ker| |target| = |coker| |source| for a map of finite groups
        rep.expect_eq(format!("i={i} kernel and cokernel orders consistent"), log2(&row.ker) + log2(&row.thr), log2(&row.coker) + c);
    }
    for i in 0..=i_max {
        let s = &table.ses[i + 1];
        let c = s.log2_order() as i64;
        let ii = i as i64;
        let (lo, hi) = ((ii - 1) * (ii + 1), (ii + 2) * (9 * ii + 20));
        rep.push(format!("i={i} log2|π_i TCR| bounds"), format!("[{}/8, {}/8]", lo, hi), c, within(lo, 8 * c, hi));
        let (a, b) = (log2(&table.rows[i + 1].thr_c2), log2(&table.rows[i + 1].thr));
        let (d, e) = (log2(&table.rows[i].thr_c2), log2(&table.rows[i].thr));
        let lower = (b - a).max(0) + (d - e).max(0);
        let upper = b + d;
        rep.push(format!("i={i} exact sequence size estimate"), format!("[{lower}, {upper}]"), c, lower <= c && c <= upper);
    }
    Ok(rep)
}
