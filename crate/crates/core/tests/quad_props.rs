use proptest::prelude::*;

use tcrgf_core::linalg::Z4Sparse;
use tcrgf_core::quad::{brute_force_f, f_on_matrix, g_on_matrix, iota_matrix, Functor, SymPairBasis};

fn z4_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Z4Sparse> {
    prop::collection::vec(0i64..4, rows * cols).prop_map(move |v| {
        let dense: Vec<Vec<i64>> = (0..rows).map(|i| v[i * cols..(i + 1) * cols].to_vec()).collect();
        Z4Sparse::from_dense_rows(&dense, cols)
    })
}

fn composable() -> impl Strategy<Value = (usize, Z4Sparse, usize, Z4Sparse, usize)> {
    (1usize..=3, 1usize..=3, 1usize..=3)
        .prop_flat_map(|(r0, r1, r2)| (Just(r0), z4_matrix(r1, r0), Just(r1), z4_matrix(r2, r1), Just(r2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn f_matches_brute_force((r0, a, r1, _, _) in composable()) {
        prop_assert_eq!(f_on_matrix(&a, r0, r1).unwrap(), brute_force_f(&a).unwrap());
    }

    #[test]
    fn functors_preserve_composition((r0, a, r1, b, r2) in composable()) {
        let ba = b.mul(&a).unwrap();
        let fa = f_on_matrix(&a, r0, r1).unwrap();
        prop_assert_eq!(f_on_matrix(&ba, r0, r2).unwrap(), f_on_matrix(&b, r1, r2).unwrap().mul(&fa).unwrap());
        prop_assert_eq!(g_on_matrix(&ba), g_on_matrix(&b).mul(&g_on_matrix(&a)).unwrap());
    }

    #[test]
    fn iota_is_natural((r0, a, r1, _, _) in composable()) {
        let fa = f_on_matrix(&a, r0, r1).unwrap();
        prop_assert_eq!(g_on_matrix(&a).mul(&iota_matrix(r0)).unwrap(), iota_matrix(r1).mul(&fa).unwrap());
    }

    #[test]
    fn pair_basis_roundtrip(r in 1usize..8) {
        let basis = SymPairBasis::new(r);
        prop_assert_eq!(basis.size(), r * (r + 1) / 2);
        for idx in 0..basis.size() {
            let (u, v) = basis.pair(idx);
            prop_assert!(u <= v);
            prop_assert_eq!(basis.index(u, v), idx);
            prop_assert_eq!(basis.index(v, u), idx);
        }
    }
}

#[test]
fn f_exhaustive_on_one_by_one() {
    for a in 0..4 {
        let alpha = Z4Sparse::from_dense_rows(&[vec![a]], 1);
        assert_eq!(f_on_matrix(&alpha, 1, 1).unwrap(), brute_force_f(&alpha).unwrap());
        // F(Z/4) = Z/4 and a ↦ a²
        assert_eq!(f_on_matrix(&alpha, 1, 1).unwrap().get(0, 0) as i64, (a * a) % 4);
    }
}

#[test]
fn functors_preserve_identities() {
    for r in 1..5 {
        let id = Z4Sparse::identity(r);
        assert_eq!(Functor::F.on_matrix(&id), Z4Sparse::identity(Functor::F.size(r)));
        assert_eq!(Functor::G.on_matrix(&id), Z4Sparse::identity(r * r));
    }
}
