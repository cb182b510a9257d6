//! Non-abelian derived functors `L_i^(n) T(M)` for `T ∈ {F, G}`.
//!
//! `L_i^(n) T(M)` is the degree-`i` homology of the Moore complex of `T`
//! applied level-wise to the Dold-Kan image of a free resolution of `M`
//! shifted up by `n`. Two equivalent routes are implemented: the full Moore
//! complex, and the quotient by degenerate elements. For `T(σC)` the
//! degenerate subcomplex is spanned by basis pairs that are simultaneously
//! degenerate along some `s_j`, so the quotient is a coordinate projection.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use log::debug;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::DiskCache;
use crate::error::{Error, Result};
use crate::linalg::z4::Z4Classifier;
use crate::linalg::{z4_homology, z4_kernel, CyclicSum, FinAbTwoGroup, GroupHom, IntMatrix, Z4Sparse};
use crate::quad::{iota_matrix, Functor};
use crate::report::Report;
use crate::simplicial::dold_kan::alternating_sum;
use crate::simplicial::{dold_kan, standard_resolution, BaseModule, Surjection, TruncatedSimplicialModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomologyPath {
    Moore,
    Normalized,
}

impl fmt::Display for HomologyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomologyPath::Moore => "moore",
            HomologyPath::Normalized => "normalized",
        })
    }
}

impl FromStr for HomologyPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moore" => Ok(HomologyPath::Moore),
            "normalized" => Ok(HomologyPath::Normalized),
            _ => Err(Error::Config(format!("unknown homology path '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DerivedKey {
    pub functor: Functor,
    pub module: BaseModule,
    pub n: usize,
    pub i: usize,
    pub path: HomologyPath,
}

impl DerivedKey {
    pub fn new(functor: Functor, module: BaseModule, n: usize, i: usize, path: HomologyPath) -> Self {
        DerivedKey { functor, module, n, i, path }
    }

    /// Top degree of the truncated resolution.
    pub fn truncation(&self) -> usize {
        self.i + 1
    }
}

/// `L_i^(n) T(M)` with cycle representatives in the Moore complex at level `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedValue {
    pub key: DerivedKey,
    pub group: FinAbTwoGroup,
    /// Order (2 or 4) of each generator, in classifier order.
    pub generator_orders: Vec<u8>,
    pub generators: Vec<Vec<u8>>,
    /// Rank of the simplicial resolution at level `i`.
    pub base_rank: usize,
    /// Position of `e_(id,id)` among the basis of `F` at level `i`, when present.
    pub theta_index: Option<usize>,
    /// Coordinates read by the classifier; `None` means all of them.
    pub support: Option<Vec<usize>>,
    pub classifier: Z4Classifier,
}

impl DerivedValue {
    pub fn level_rank(&self) -> usize {
        self.key.functor.size(self.base_rank)
    }

    pub fn cyclic_sum(&self) -> CyclicSum {
        CyclicSum::new(self.generator_orders.iter().map(|&o| o as u64).collect())
    }

    /// Class of a Moore cycle at level `i`, one residue per generator.
    pub fn classify(&self, cycle: &[u8]) -> Result<Vec<u8>> {
        if cycle.len() != self.level_rank() {
            return Err(Error::ShapeMismatch(format!(
                "cycle of length {} at level of rank {}",
                cycle.len(),
                self.level_rank()
            )));
        }
        if self.generators.is_empty() {
            return Ok(Vec::new());
        }
        match &self.support {
            None => self.classifier.classify(cycle),
            Some(idx) => {
                let proj: Vec<u8> = idx.iter().map(|&k| cycle[k]).collect();
                self.classifier.classify(&proj)
            }
        }
    }
}

/// `T` applied level-wise to a simplicial module.
struct Applied<'a> {
    sm: &'a TruncatedSimplicialModule,
    functor: Functor,
}

impl Applied<'_> {
    fn size(&self, m: usize) -> usize {
        self.functor.size(self.sm.rank(m))
    }

    fn pairs(&self, m: usize, idx: &[usize]) -> Vec<(usize, usize)> {
        let r = self.sm.rank(m);
        idx.iter().map(|&k| self.functor.pair(r, k)).collect()
    }

    fn face(&self, m: usize, j: usize) -> Result<Z4Sparse> {
        Ok(self.functor.on_matrix(self.sm.face(m, j)?))
    }

    fn degeneracy(&self, m: usize, j: usize) -> Result<Z4Sparse> {
        Ok(self.functor.on_matrix(self.sm.degeneracy(m, j)?))
    }

    fn moore(&self, m: usize) -> Result<Z4Sparse> {
        if m == 0 {
            return Ok(Z4Sparse::zeros(0, self.size(0)));
        }
        let faces: Vec<Z4Sparse> = (0..=m).map(|j| self.face(m, j)).collect::<Result<_>>()?;
        alternating_sum(&faces)
    }

    /// Columns of the Moore differential at level `m` for the given basis indices.
    fn moore_columns(&self, m: usize, idx: &[usize]) -> Result<Z4Sparse> {
        if m == 0 {
            return Ok(Z4Sparse::zeros(0, idx.len()));
        }
        let pairs = self.pairs(m, idx);
        let faces: Vec<Z4Sparse> = (0..=m)
            .map(|j| Ok(self.functor.columns_for_pairs(self.sm.face(m, j)?, &pairs)))
            .collect::<Result<_>>()?;
        alternating_sum(&faces)
    }

    /// Basis indices at level `m` not in the image of any degeneracy.
    fn nondegenerate(&self, m: usize) -> Vec<usize> {
        let basis = &self.sm.level(m).basis;
        let r = basis.len();
        let repeats: Vec<u64> = basis
            .iter()
            .map(|l| (0..m).filter(|&j| l.surjection.repeats_at(j)).fold(0u64, |acc, j| acc | (1 << j)))
            .collect();
        (0..self.size(m))
            .filter(|&k| {
                let (a, b) = self.functor.pair(r, k);
                repeats[a] & repeats[b] == 0
            })
            .collect()
    }

    fn theta_index(&self, m: usize) -> Option<usize> {
        if self.functor != Functor::F {
            return None;
        }
        let level = self.sm.level(m);
        let off = level.offset(&Surjection::identity(m))?;
        // the identity summand is C_m; we need it to be rank one
        let width = level.basis.iter().filter(|l| l.surjection.is_identity()).count();
        (width == 1).then(|| crate::quad::SymPairBasis::new(level.rank()).index(off, off))
    }
}

fn resolution(module: BaseModule, n: usize, i: usize) -> Result<TruncatedSimplicialModule> {
    let c = standard_resolution(module, n, i + 1)?;
    dold_kan(&c, i + 1)
}

fn trivial_value(key: DerivedKey, base_rank: usize) -> DerivedValue {
    DerivedValue {
        key,
        group: FinAbTwoGroup::trivial(),
        generator_orders: Vec::new(),
        generators: Vec::new(),
        base_rank,
        theta_index: None,
        support: None,
        classifier: Z4Classifier::default(),
    }
}

fn orders_to_group(orders: &[u8]) -> FinAbTwoGroup {
    FinAbTwoGroup::from_cyclic_orders(&orders.iter().map(|&o| o as u64).collect::<Vec<_>>())
}

/// Computes `L_i^(n) T(M)` without caching.
pub fn compute_derived(key: DerivedKey) -> Result<DerivedValue> {
    let DerivedKey { functor, module, n, i, path } = key;
    if i < n {
        return Ok(trivial_value(key, 0));
    }
    let start = std::time::Instant::now();
    let sm = resolution(module, n, i)?;
    let t = Applied { sm: &sm, functor };
    let theta_index = t.theta_index(i);
    let value = match path {
        HomologyPath::Moore => {
            let out = t.moore(i)?;
            let inc = t.moore(i + 1)?;
            let h = z4_homology(&inc, &out, &[])?;
            DerivedValue {
                key,
                group: orders_to_group(&h.orders),
                generator_orders: h.orders.clone(),
                generators: h.generators.clone(),
                base_rank: sm.rank(i),
                theta_index,
                support: None,
                classifier: Z4Classifier::from_homology(&h),
            }
        }
        HomologyPath::Normalized => {
            let nd_lo = if i > 0 { t.nondegenerate(i - 1) } else { Vec::new() };
            let nd = t.nondegenerate(i);
            let nd_hi = t.nondegenerate(i + 1);
            let out = t.moore_columns(i, &nd)?.select_rows(&nd_lo);
            let inc = t.moore_columns(i + 1, &nd_hi)?.select_rows(&nd);
            let h = z4_homology(&inc, &out, &[])?;
            let generators = lift_to_moore(&t, i, &nd, &h.generators)?;
            DerivedValue {
                key,
                group: orders_to_group(&h.orders),
                generator_orders: h.orders.clone(),
                generators,
                base_rank: sm.rank(i),
                theta_index,
                support: Some(nd),
                classifier: Z4Classifier::from_homology(&h),
            }
        }
    };
    debug!("{functor} {module} n={n} i={i} {path}: {} in {:.2?}", value.group, start.elapsed());
    Ok(value)
}

/// Turns normalized cycles into Moore cycles by projecting onto the
/// intersection of the kernels of `d_0 .. d_{i-1}`.
fn lift_to_moore(t: &Applied, i: usize, nd: &[usize], cycles: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
    let size = t.size(i);
    let maps: Vec<(Z4Sparse, Z4Sparse)> = (0..i)
        .map(|j| Ok((t.face(i, j)?, t.degeneracy(i - 1, j)?)))
        .collect::<Result<_>>()?;
    let moore = t.moore(i)?;
    cycles
        .iter()
        .map(|c| {
            let mut x = vec![0u8; size];
            for (&k, &v) in nd.iter().zip(c) {
                x[k] = v;
            }
            for (d, s) in &maps {
                let back = s.apply(&d.apply(&x));
                for (xv, bv) in x.iter_mut().zip(back) {
                    *xv = (*xv + 4 - bv) & 3;
                }
            }
            if moore.apply(&x).iter().any(|&v| v != 0) {
                return Err(Error::Invariant(format!("lifted generator at degree {i} is not a Moore cycle")));
            }
            Ok(x)
        })
        .collect()
}

type Slot = Arc<Mutex<Option<Arc<DerivedValue>>>>;

/// Memoizing front end for [`compute_derived`], optionally backed by a disk cache.
pub struct Engine {
    path: HomologyPath,
    cache: Option<DiskCache>,
    slots: Mutex<HashMap<DerivedKey, Slot>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(HomologyPath::Normalized, None)
    }
}

impl Engine {
    pub fn new(path: HomologyPath, cache: Option<DiskCache>) -> Self {
        Engine { path, cache, slots: Mutex::new(HashMap::new()) }
    }

    pub fn path(&self) -> HomologyPath {
        self.path
    }

    pub fn key(&self, functor: Functor, module: BaseModule, n: usize, i: usize) -> DerivedKey {
        DerivedKey::new(functor, module, n, i, self.path)
    }

    pub fn derived(&self, functor: Functor, module: BaseModule, n: usize, i: usize) -> Result<Arc<DerivedValue>> {
        self.derived_key(self.key(functor, module, n, i))
    }

    pub fn derived_key(&self, key: DerivedKey) -> Result<Arc<DerivedValue>> {
        let slot = {
            let mut slots = self.slots.lock().unwrap();
            slots.entry(key).or_default().clone()
        };
        let mut guard = slot.lock().unwrap();
        if let Some(v) = guard.as_ref() {
            return Ok(v.clone());
        }
        let value = match self.cache.as_ref().and_then(|c| c.load(&key)) {
            Some(v) => v,
            None => {
                let v = compute_derived(key)?;
                if let Some(c) = &self.cache {
                    c.store(&v)?;
                }
                v
            }
        };
        let value = Arc::new(value);
        *guard = Some(value.clone());
        Ok(value)
    }

    /// Computes the given keys in parallel, largest degrees first.
    pub fn prefetch(&self, keys: &[DerivedKey]) -> Result<()> {
        let mut keys = keys.to_vec();
        keys.sort_by_key(|k| std::cmp::Reverse((k.i.saturating_sub(k.n), k.i)));
        keys.dedup();
        keys.par_iter().try_for_each(|&k| self.derived_key(k).map(|_| ()))
    }

    /// Keys for `L_i^(n) T(Z2)`, `T ∈ {F, G}`, `0 ≤ n ≤ i ≤ max_degree`.
    pub fn table_keys(&self, functors: &[Functor], module: BaseModule, max_degree: usize) -> Vec<DerivedKey> {
        let mut keys = Vec::new();
        for &f in functors {
            for i in 0..=max_degree {
                for n in 0..=i {
                    keys.push(self.key(f, module, n, i));
                }
            }
        }
        keys
    }

    /// `ι_*: L_i^(n) F(Z2) → L_i^(n) G(Z2)`.
    pub fn induced_iota(&self, n: usize, i: usize) -> Result<GroupHom> {
        let fv = self.derived(Functor::F, BaseModule::Z2, n, i)?;
        let gv = self.derived(Functor::G, BaseModule::Z2, n, i)?;
        let src = fv.cyclic_sum();
        let tgt = gv.cyclic_sum();
        if fv.generators.is_empty() || gv.generators.is_empty() {
            return Ok(GroupHom::zero(src, tgt));
        }
        let iota = iota_matrix(fv.base_rank);
        let mut cols = Vec::with_capacity(fv.generators.len());
        for g in &fv.generators {
            let c = gv.classify(&iota.apply(g))?;
            cols.push(c.iter().map(|&v| num_bigint::BigInt::from(v)).collect::<Vec<_>>());
        }
        // spot check: boundaries go to zero
        let sm = resolution(BaseModule::Z2, n, i)?;
        let t = Applied { sm: &sm, functor: Functor::F };
        let size = t.size(i + 1);
        let step = (size / 8).max(1);
        let sample: Vec<usize> = (0..size).step_by(step).collect();
        let bd = t.moore_columns(i + 1, &sample)?;
        let mut dense = vec![0u8; bd.rows()];
        for col in bd.columns() {
            dense.fill(0);
            for &(r, v) in col {
                dense[r as usize] = v;
            }
            if gv.classify(&iota.apply(&dense))?.iter().any(|&v| v != 0) {
                return Err(Error::Invariant(format!("iota sends a boundary to a nonzero class at n={n}, i={i}")));
            }
        }
        GroupHom::new(src, tgt.clone(), IntMatrix::from_columns(tgt.len(), &cols))
    }
}

/// Coefficient of `e_(id,id)` in each generator, mod 2.
pub fn theta_parity(value: &DerivedValue) -> Result<Vec<u8>> {
    if value.key.functor != Functor::F || value.key.module != BaseModule::Z2 {
        return Err(Error::Invariant("theta is defined on F of Z2".into()));
    }
    match value.theta_index {
        Some(t) => Ok(value.generators.iter().map(|g| g[t] & 1).collect()),
        None if value.generators.is_empty() => Ok(Vec::new()),
        None => Err(Error::Invariant("identity diagonal missing at this level".into())),
    }
}

/// Outcome of the quotient computation behind the parity functional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientLemmaReport {
    pub n: usize,
    pub i: usize,
    pub quotient: FinAbTwoGroup,
    pub diagonal_class_generates: bool,
    pub theta_even_on_boundaries: bool,
}

impl QuotientLemmaReport {
    pub fn holds(&self) -> bool {
        self.quotient == FinAbTwoGroup::cyclic(2) && self.diagonal_class_generates && self.theta_even_on_boundaries
    }
}

/// `ker ∂_i / (im ∂_{i+1} + off-diagonal cycles + 2 ker ∂_i)` on the Moore complex of `F(σ Z2[n])`.
pub fn verify_quotient_lemma(n: usize, i: usize) -> Result<QuotientLemmaReport> {
    if n > i {
        return Err(Error::Invariant(format!("quotient lemma needs n <= i, got n={n}, i={i}")));
    }
    let sm = resolution(BaseModule::Z2, n, i)?;
    let t = Applied { sm: &sm, functor: Functor::F };
    let theta = t.theta_index(i).ok_or_else(|| Error::Invariant("no identity diagonal".into()))?;
    let out = t.moore(i)?;
    let inc = t.moore(i + 1)?;
    let r = sm.rank(i);
    let size = t.size(i);
    let off: Vec<usize> = (r..size).collect();
    let mut extra = Vec::new();
    let k_off = z4_kernel(&out.select_columns(&off));
    for g in &k_off.generators {
        let mut x = vec![0u8; size];
        for (&k, &v) in off.iter().zip(g) {
            x[k] = v;
        }
        extra.push(x);
    }
    let k_all = z4_kernel(&out);
    for (g, &o) in k_all.generators.iter().zip(&k_all.orders) {
        if o == 4 {
            extra.push(g.iter().map(|&v| (2 * v) & 3).collect());
        }
    }
    let h = z4_homology(&inc, &out, &extra)?;
    let mut e = vec![0u8; size];
    e[theta] = 1;
    let quotient = orders_to_group(&h.orders);
    let diagonal_class_generates = h.orders == [2] && h.classify(&e)? == [1];
    let theta_even_on_boundaries = inc.columns().iter().all(|col| {
        col.binary_search_by_key(&(theta as u32), |e| e.0).map(|p| col[p].1 % 2 == 0).unwrap_or(true)
    });
    Ok(QuotientLemmaReport { n, i, quotient, diagonal_class_generates, theta_even_on_boundaries })
}

/// Closed form for `L_i^(n) F(Z4)`.
pub fn f_z4_closed_form(n: usize, i: usize) -> FinAbTwoGroup {
    if i == 2 * n && n.is_multiple_of(2) {
        FinAbTwoGroup::cyclic(4)
    } else if (n <= i && i < 2 * n) || (i == 2 * n && n % 2 == 1) {
        FinAbTwoGroup::cyclic(2)
    } else {
        FinAbTwoGroup::trivial()
    }
}

/// Closed form for `L_i^(n) G(Z2)`.
pub fn g_z2_closed_form(n: usize, i: usize) -> FinAbTwoGroup {
    if i >= 2 * n {
        FinAbTwoGroup::cyclic(2)
    } else {
        FinAbTwoGroup::trivial()
    }
}

/// The two candidate values of `L_i^(0) F(Z2)` allowed by the classification,
/// equal when the value is pinned down.
pub fn f_z2_allowed(i: usize) -> [FinAbTwoGroup; 2] {
    let h = i / 2;
    let e = FinAbTwoGroup::elementary;
    match i % 4 {
        0 => [e(h + 1), e(h).direct_sum(&FinAbTwoGroup::cyclic(4))],
        1 => [e(h + 1), e(h + 2)],
        2 => [e(h + 1), e(h + 1)],
        _ => [e(h + 2), e(h + 2)],
    }
}

/// Stability, closed forms and the shape of `L_i^(n) F(Z2)` for `i <= i_max`.
pub fn verify_stability(engine: &Engine, i_max: usize) -> Result<Report> {
    let mut keys = engine.table_keys(&[Functor::F, Functor::G], BaseModule::Z2, i_max);
    keys.extend(engine.table_keys(&[Functor::F], BaseModule::Z4, i_max));
    engine.prefetch(&keys)?;
    let f = |n, i| engine.derived(Functor::F, BaseModule::Z2, n, i).map(|v| v.group.clone());
    let mut rep = Report::new("stability");
    for i in 0..=i_max {
        for n in 0..=i_max {
            rep.expect_eq(
                format!("F(Z4) n={n} i={i} closed form"),
                f_z4_closed_form(n, i),
                engine.derived(Functor::F, BaseModule::Z4, n, i)?.group.clone(),
            );
            rep.expect_eq(
                format!("G(Z2) n={n} i={i} closed form"),
                if n <= i { g_z2_closed_form(n, i) } else { FinAbTwoGroup::trivial() },
                engine.derived(Functor::G, BaseModule::Z2, n, i)?.group.clone(),
            );
            if n > i {
                rep.expect_eq(format!("F(Z2) n={n} i={i} vanishes"), FinAbTwoGroup::trivial(), f(n, i)?);
            }
        }
    }
    for i in 0..=i_max {
        let base = f(0, i)?;
        for n in 1..=i / 2 {
            rep.expect_eq(format!("F(Z2) i={i} constant at n={n}"), base.clone(), f(n, i)?);
        }
        for n in i / 2 + 1..=i {
            rep.expect_eq(format!("F(Z2) n={n} i={i} stable band"), FinAbTwoGroup::elementary(i - n + 1), f(n, i)?);
        }
        for n in 0..=i {
            if i < 2 * n && i < i_max {
                rep.expect_eq(format!("F(Z2) L_{i}^({n}) = L_{}^({})", i + 1, n + 1), f(n, i)?, f(n + 1, i + 1)?);
            }
        }
        let allowed = f_z2_allowed(i);
        let ok = allowed.contains(&base);
        rep.push(format!("F(Z2) L_{i}^(0) allowed value"), format!("{} or {}", allowed[0], allowed[1]), &base, ok);
    }
    for k in 0.. {
        if 4 * k + 1 > i_max {
            break;
        }
        let (a, b) = (f(0, 4 * k)?, f(0, 4 * k + 1)?);
        rep.expect_eq(format!("|L_{}^(0)| = |L_{}^(0)|", 4 * k, 4 * k + 1), a.order(), b.order());
    }
    Ok(rep)
}

/// Compares the Moore and normalized routes on every `(n, i)` with `n, i <= max_degree`.
pub fn verify_path_agreement(max_degree: usize, functors: &[Functor], modules: &[BaseModule]) -> Result<Report> {
    let mut keys = Vec::new();
    for &f in functors {
        for &m in modules {
            for i in 0..=max_degree {
                for n in 0..=i {
                    keys.push((f, m, n, i));
                }
            }
        }
    }
    let results: Vec<Result<(String, FinAbTwoGroup, FinAbTwoGroup)>> = keys
        .par_iter()
        .map(|&(f, m, n, i)| {
            let a = compute_derived(DerivedKey::new(f, m, n, i, HomologyPath::Moore))?;
            let b = compute_derived(DerivedKey::new(f, m, n, i, HomologyPath::Normalized))?;
            // each route's generators must classify to the unit vectors under the other route
            for (src, other) in [(&a, &b), (&b, &a)] {
                let mut classes = Vec::new();
                for g in &src.generators {
                    classes.push(other.classify(g)?);
                }
                let mat = IntMatrix::from_columns(
                    other.generator_orders.len(),
                    &classes.iter().map(|c| c.iter().map(|&v| num_bigint::BigInt::from(v)).collect()).collect::<Vec<_>>(),
                );
                let hom = GroupHom::new(src.cyclic_sum(), other.cyclic_sum(), mat)?;
                let (k, _) = crate::linalg::hom_kernel(&hom)?;
                if !k.is_trivial() || crate::linalg::hom_cokernel(&hom)?.num_factors() != 0 {
                    return Err(Error::Invariant(format!("routes disagree on classes at {f} {m} n={n} i={i}")));
                }
            }
            Ok((format!("{f} {m} n={n} i={i}"), a.group, b.group))
        })
        .collect();
    let mut rep = Report::new("path agreement");
    for r in results {
        let (name, a, b) = r?;
        rep.expect_eq(name, a, b);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compute(f: Functor, m: BaseModule, n: usize, i: usize, p: HomologyPath) -> DerivedValue {
        compute_derived(DerivedKey::new(f, m, n, i, p)).unwrap()
    }

    #[test]
    fn degree_zero_is_z4() {
        for p in [HomologyPath::Moore, HomologyPath::Normalized] {
            let v = compute(Functor::F, BaseModule::Z2, 0, 0, p);
            assert_eq!(v.group, FinAbTwoGroup::cyclic(4));
            assert_eq!(theta_parity(&v).unwrap(), vec![1]);
        }
    }

    #[test]
    fn below_n_is_trivial() {
        let v = compute(Functor::G, BaseModule::Z2, 3, 2, HomologyPath::Moore);
        assert!(v.group.is_trivial());
        assert!(v.generators.is_empty());
    }

    #[test]
    fn nondegenerate_counts() {
        let sm = resolution(BaseModule::Z2, 0, 4).unwrap();
        let f = Applied { sm: &sm, functor: Functor::F };
        let g = Applied { sm: &sm, functor: Functor::G };
        for m in 0..=4 {
            assert_eq!(f.nondegenerate(m).len(), 3usize.pow(m as u32).div_ceil(2));
            assert_eq!(g.nondegenerate(m).len(), 3usize.pow(m as u32));
        }
    }

    #[test]
    fn low_degree_values() {
        let e = FinAbTwoGroup::elementary;
        let v = compute(Functor::F, BaseModule::Z2, 0, 1, HomologyPath::Moore);
        assert_eq!(v.group, e(2));
        let v = compute(Functor::F, BaseModule::Z2, 1, 1, HomologyPath::Normalized);
        assert_eq!(v.group, e(1));
        let v = compute(Functor::G, BaseModule::Z2, 1, 2, HomologyPath::Normalized);
        assert_eq!(v.group, e(1));
    }

    #[test]
    fn quotient_lemma_small() {
        for i in 0..3 {
            for n in 0..=i {
                assert!(verify_quotient_lemma(n, i).unwrap().holds(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn allowed_values() {
        let [a, b] = f_z2_allowed(4);
        assert_eq!(a.to_string(), "(Z/2)^3");
        assert_eq!(b.to_string(), "(Z/2)^2 ⊕ Z/4");
    }
}
