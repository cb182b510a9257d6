//! Independent recomputations used to check the fast paths.

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{snf, subquotient, z4_homology, z4_kernel, FinAbTwoGroup, IntMatrix, Z4Sparse};
use crate::quad::{brute_force_f, f_on_matrix, g_on_matrix, iota_matrix};
use crate::simplicial::{alternating_sum, dold_kan, standard_resolution, BaseModule, Surjection, TruncatedChainComplex};
use crate::report::Report;

pub fn random_z4(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> Z4Sparse {
    let dense: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(1..4) } else { 0 }).collect())
        .collect();
    Z4Sparse::from_dense_rows(&dense, cols)
}

/// A random `rows x c` matrix whose columns lie in `ker(out)`.
pub fn random_into_kernel(rng: &mut impl Rng, out: &Z4Sparse, c: usize) -> Z4Sparse {
    let k = z4_kernel(out);
    let mix = random_z4(rng, k.len(), c, 0.5);
    let cols: Vec<Vec<(u32, u8)>> = (0..c)
        .map(|j| {
            let coeffs: Vec<u8> = (0..k.len()).map(|t| mix.get(t, j)).collect();
            let v = k.combine(&coeffs);
            v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(r, &x)| (r as u32, x)).collect()
        })
        .collect();
    Z4Sparse::from_columns(out.cols(), cols)
}

/// Random complex in degrees `0..=top` with ranks at most `max_rank`.
pub fn random_complex(rng: &mut impl Rng, max_rank: usize, top: usize) -> Result<TruncatedChainComplex> {
    let ranks: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<Z4Sparse> = Vec::with_capacity(top);
    for k in 1..=top {
        let d = match diffs.last() {
            None => random_z4(rng, ranks[0], ranks[1], 0.5),
            Some(prev) => random_into_kernel(rng, prev, ranks[k]),
        };
        diffs.push(d);
    }
    TruncatedChainComplex::new(0, ranks, diffs)
}

fn moore_homology(inc: &Z4Sparse, out: &Z4Sparse) -> Result<FinAbTwoGroup> {
    let h = z4_homology(inc, out, &[])?;
    Ok(FinAbTwoGroup::from_cyclic_orders(&h.orders.iter().map(|&o| o as u64).collect::<Vec<_>>()))
}

/// Checks Dold-Kan on `c` (built with bottom degree 0): simplicial identities,
/// the normalized summand recovering `c`, homology, and `∂² = 0` before and
/// after applying `F` and `G` levelwise.
pub fn check_dold_kan_roundtrip(c: &TruncatedChainComplex) -> Result<()> {
    let top = c.top();
    let dk = dold_kan(c, top)?;
    dk.check_simplicial_identities()?;
    let fail = |what: String| Err(Error::Invariant(what));
    let moore: Vec<Z4Sparse> = (1..=top).map(|m| dk.moore_differential(m)).collect::<Result<_>>()?;
    for m in 1..=top {
        let d = &moore[m - 1];
        let src = dk.level(m).offset(&Surjection::identity(m));
        let tgt = dk.level(m - 1).offset(&Surjection::identity(m - 1));
        let (rm, rm1) = (c.rank(m), c.rank(m - 1));
        let sign = if m % 2 == 0 { 1 } else { 3 };
        for b in 0..rm {
            let col = src.expect("identity summand present when rank is positive") + b;
            for r in 0..dk.rank(m - 1) {
                let inside = tgt.map(|t| r >= t && r < t + rm1);
                let want = match inside {
                    Some(true) => (sign * c.differential(m).get(r - tgt.unwrap(), b)) % 4,
                    _ => 0,
                };
                if d.get(r, col) != want {
                    return fail(format!("normalized part of level {m} differs from d_{m}"));
                }
            }
        }
    }
    for m in 2..=top {
        if !moore[m - 2].mul(&moore[m - 1])?.is_zero() {
            return fail(format!("Moore ∂² ≠ 0 at level {m}"));
        }
        for (name, lift) in [("F", true), ("G", false)] {
            let apply = |lvl: usize| -> Result<Z4Sparse> {
                let faces: Vec<Z4Sparse> = dk
                    .faces(lvl)?
                    .iter()
                    .map(|f| if lift { f_on_matrix(f, dk.rank(lvl), dk.rank(lvl - 1)) } else { Ok(g_on_matrix(f)) })
                    .collect::<Result<_>>()?;
                alternating_sum(&faces)
            };
            if !apply(m - 1)?.mul(&apply(m)?)?.is_zero() {
                return fail(format!("∂² ≠ 0 after {name} at level {m}"));
            }
        }
    }
    for k in 0..top {
        let out = if k == 0 { Z4Sparse::zeros(0, dk.rank(0)) } else { moore[k - 1].clone() };
        if moore_homology(&moore[k], &out)? != c.homology(k)? {
            return fail(format!("homology of the Moore complex differs from the input in degree {k}"));
        }
    }
    Ok(())
}

fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> IntMatrix {
    let dense: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen_bool(0.35) { rng.gen_range(-9..=9) } else { 0 }).collect())
        .collect();
    IntMatrix::from_rows(&dense, cols).expect("rows have the declared width")
}

/// Smith form is a valid factorization with unimodular transforms.
pub fn check_snf(m: &IntMatrix) -> Result<()> {
    let f = snf(m);
    let fail = |what: &str| Err(Error::Invariant(format!("snf: {what}")));
    if f.reconstruct() != *m {
        return fail("p_inv d q_inv differs from the input");
    }
    if f.p.mul(m)?.mul(&f.q)? != f.diagonal_matrix() {
        return fail("p m q is not diagonal");
    }
    if f.p.mul(&f.p_inv)? != IntMatrix::identity(m.rows()) || f.q.mul(&f.q_inv)? != IntMatrix::identity(m.cols()) {
        return fail("transforms are not inverse pairs");
    }
    let nz: Vec<&BigInt> = f.d.iter().filter(|v| !v.is_zero()).collect();
    if f.d.iter().any(|v| v.is_negative()) || nz.windows(2).any(|w| !(w[1] % w[0]).is_zero()) {
        return fail("diagonal is not a divisibility chain");
    }
    if f.d[..nz.len()].iter().any(|v| v.is_zero()) {
        return fail("zeros are not last");
    }
    Ok(())
}

/// The randomized property suites in one report.
pub fn verify_properties(seed: u64) -> Result<Report> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = Report::new("properties");

    let (snf_samples, dk_samples) = (250, 60);
    let mut bad = Vec::new();
    for _ in 0..snf_samples {
        let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        if let Err(e) = check_snf(&random_int_matrix(&mut rng, r, c)) {
            bad.push(e.to_string());
        }
    }
    rep.push(format!("SNF reconstruction on {snf_samples} random sparse matrices"), "0 failures", format!("{} failures", bad.len()), bad.is_empty());

    let mut bad = Vec::new();
    for _ in 0..dk_samples {
        let top = rng.gen_range(1..=4);
        let c = random_complex(&mut rng, 3, top)?;
        if let Err(e) = check_dold_kan_roundtrip(&c) {
            bad.push(e.to_string());
        }
    }
    rep.push(
        format!("Dold-Kan roundtrip, identities and ∂² = 0 on {dk_samples} random complexes"),
        "0 failures",
        format!("{} failures {:?}", bad.len(), bad.first()),
        bad.is_empty(),
    );

    let mut bad = Vec::new();
    for module in [BaseModule::Z2, BaseModule::Z4] {
        for i in 0..=4 {
            for n in 0..=i {
                let dk = dold_kan(&standard_resolution(module, n, i + 1)?, i + 1)?;
                if dk.check_simplicial_identities().is_err() {
                    bad.push(format!("{module} n={n} top={}", i + 1));
                }
            }
        }
    }
    rep.push("simplicial identities on the resolution modules", "0 failures", format!("{} failures", bad.len()), bad.is_empty());

    rep.extend(verify_oracle(3, 120, seed ^ 0x5eed)?);
    Ok(rep)
}

/// `ker(out) / im(inc)` over `Z/4`, computed with integer Smith forms.
pub fn integer_homology(inc: &Z4Sparse, out: &Z4Sparse) -> Result<FinAbTwoGroup> {
    let n = out.cols();
    let four = IntMatrix::diag(&vec![BigInt::from(4); out.rows()]);
    // kernel lattice of x ↦ out x mod 4: integer kernel of [out | 4I], top block
    let a = out.to_int_matrix().hconcat(&four)?;
    let f = snf(&a);
    let cols: Vec<usize> = (f.rank()..a.cols()).collect();
    let top: Vec<usize> = (0..n).collect();
    let lattice = f.q.select_columns(&cols).select_rows(&top);
    let rel = inc.to_int_matrix().hconcat(&IntMatrix::diag(&vec![BigInt::from(4); n]))?;
    let q = subquotient(n, &lattice, &rel)?;
    FinAbTwoGroup::from_bigint_orders(&q.orders)
}

/// Functor oracles on random matrices of rank at most `max_rank` (capped at 3).
pub fn verify_oracle(max_rank: usize, samples: usize, seed: u64) -> Result<Report> {
    let max_rank = max_rank.clamp(1, 3);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = Report::new("oracle");
    let mut bad_f = 0;
    for a in 0..4 {
        let alpha = Z4Sparse::from_dense_rows(&[vec![a]], 1);
        if brute_force_f(&alpha)? != f_on_matrix(&alpha, 1, 1)? {
            bad_f += 1;
        }
    }
    rep.expect_eq("F on 1x1 matrices matches brute force", 0, bad_f);

    let (mut bad_bf, mut bad_fun, mut bad_nat) = (0, 0, 0);
    for _ in 0..samples {
        let (r0, r1, r2) = (rng.gen_range(1..=max_rank), rng.gen_range(1..=max_rank), rng.gen_range(1..=max_rank));
        let a = random_z4(&mut rng, r1, r0, 0.6);
        let b = random_z4(&mut rng, r2, r1, 0.6);
        let fa = f_on_matrix(&a, r0, r1)?;
        if brute_force_f(&a)? != fa {
            bad_bf += 1;
        }
        let ba = b.mul(&a)?;
        if f_on_matrix(&ba, r0, r2)? != f_on_matrix(&b, r1, r2)?.mul(&fa)?
            || g_on_matrix(&ba) != g_on_matrix(&b).mul(&g_on_matrix(&a))?
        {
            bad_fun += 1;
        }
        if g_on_matrix(&a).mul(&iota_matrix(r0))? != iota_matrix(r1).mul(&fa)? {
            bad_nat += 1;
        }
    }
    rep.expect_eq(format!("F matches brute force on {samples} random matrices"), 0, bad_bf);
    rep.expect_eq(format!("F and G preserve composition on {samples} random pairs"), 0, bad_fun);
    rep.expect_eq(format!("iota is natural on {samples} random matrices"), 0, bad_nat);

    let mut bad_h = 0;
    for _ in 0..samples {
        let (a, b, c) = (rng.gen_range(0..5), rng.gen_range(1..6), rng.gen_range(0..5));
        let out = random_z4(&mut rng, a, b, 0.5);
        let inc = random_into_kernel(&mut rng, &out, c);
        let h = z4_homology(&inc, &out, &[])?;
        let fast = FinAbTwoGroup::from_cyclic_orders(&h.orders.iter().map(|&o| o as u64).collect::<Vec<_>>());
        if fast != integer_homology(&inc, &out)? {
            bad_h += 1;
        }
    }
    rep.expect_eq(format!("Z/4 homology matches integer Smith forms on {samples} complexes"), 0, bad_h);
    Ok(rep)
}
