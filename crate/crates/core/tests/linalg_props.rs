use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use tcrgf_core::linalg::{
    group_pushout, hom_cokernel, hom_kernel, snf, z4_homology, CyclicSum, FinAbTwoGroup, GroupHom, IntMatrix, Z4Sparse,
};
use tcrgf_core::oracle::{check_snf, integer_homology, random_into_kernel, random_z4};

fn sparse_int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::option::weighted(0.35, -12i64..=12), r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.iter().map(|x| x.unwrap_or(0)).collect()).collect();
            IntMatrix::from_rows(&rows, c).unwrap()
        })
    })
}

fn two_group() -> impl Strategy<Value = FinAbTwoGroup> {
    prop::collection::vec(prop::sample::select(vec![2u64, 4, 8]), 0..6).prop_map(|v| FinAbTwoGroup::new(v).unwrap())
}

fn orders(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::sample::select(vec![2u64, 4]), n)
}

/// A homomorphism between sums of Z/2 and Z/4; entries from Z/2 into Z/4 are forced even.
fn hom_from(src: Vec<u64>, tgt: Vec<u64>) -> impl Strategy<Value = GroupHom> {
    let (r, c) = (tgt.len(), src.len());
    prop::collection::vec(0i64..4, r * c).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        let e = v[i * c + j] % tgt[i] as i64;
                        if src[j] < tgt[i] { (2 * e) % tgt[i] as i64 } else { e }
                    })
                    .collect()
            })
            .collect();
        let m = IntMatrix::from_rows(&rows, c).unwrap();
        GroupHom::new(CyclicSum::new(src.clone()), CyclicSum::new(tgt.clone()), m).unwrap()
    })
}

fn hom() -> impl Strategy<Value = GroupHom> {
    (orders(0..4), orders(0..4)).prop_flat_map(|(s, t)| hom_from(s, t))
}

fn span() -> impl Strategy<Value = (GroupHom, GroupHom)> {
    (orders(0..4), orders(0..4), orders(0..4)).prop_flat_map(|(a, b, c)| (hom_from(a.clone(), b), hom_from(a, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn snf_reconstructs(m in sparse_int_matrix()) {
        prop_assert!(check_snf(&m).is_ok(), "{:?}", check_snf(&m));
    }

    #[test]
    fn snf_rank_is_transpose_invariant(m in sparse_int_matrix()) {
        prop_assert_eq!(snf(&m).d.clone(), snf(&m.transpose()).d);
    }

    #[test]
    fn z4_homology_matches_integer_smith(seed in any::<u64>(), a in 0usize..5, b in 1usize..6, c in 0usize..5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let out = random_z4(&mut rng, a, b, 0.5);
        let inc = random_into_kernel(&mut rng, &out, c);
        let h = z4_homology(&inc, &out, &[]).unwrap();
        let fast = FinAbTwoGroup::from_cyclic_orders(&h.orders.iter().map(|&o| o as u64).collect::<Vec<_>>());
        prop_assert_eq!(fast, integer_homology(&inc, &out).unwrap());
        for g in &h.kernel().generators {
            prop_assert!(out.apply(g).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn group_display_and_json_roundtrip(g in two_group()) {
        prop_assert_eq!(g.to_string().parse::<FinAbTwoGroup>().unwrap(), g.clone());
        let js = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<FinAbTwoGroup>(&js).unwrap(), g);
    }

    #[test]
    fn direct_sum_multiplies_orders(g in two_group(), h in two_group()) {
        prop_assert_eq!(g.direct_sum(&h).order(), g.order() * h.order());
    }

    #[test]
    fn kernel_and_cokernel_orders(h in hom()) {
        // |ker| |im| = |A| and |coker| |im| = |B|
        let (k, inc) = hom_kernel(&h).unwrap();
        let q = hom_cokernel(&h).unwrap();
        let a = h.source().group().order();
        let b = h.target().group().order();
        prop_assert_eq!(k.order() * &b, a * q.order());
        prop_assert!(h.compose(&inc).unwrap().is_zero());
    }

    #[test]
    fn pushout_is_symmetric((f, g) in span()) {
        let (p, _) = group_pushout(&f, &g).unwrap();
        let (q, _) = group_pushout(&g, &f).unwrap();
        prop_assert_eq!(&p, &q);
        // |P| |im(f, -g)| = |B| |C|
        let both = GroupHom::new(
            f.source().clone(),
            f.target().concat(g.target()),
            f.matrix().vconcat(&g.matrix().neg()).unwrap(),
        ).unwrap();
        let img = BigInt::from(1u8) << both.image_log2().unwrap();
        prop_assert_eq!(p.order() * img, f.target().group().order() * g.target().group().order());
    }
}

#[test]
fn z4_sparse_roundtrips_through_integers() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..50 {
        let m = random_z4(&mut rng, 4, 5, 0.5);
        assert_eq!(Z4Sparse::from_int_matrix(&m.to_int_matrix()), m);
        assert_eq!(m.transpose().transpose(), m);
    }
}
