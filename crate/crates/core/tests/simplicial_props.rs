use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use tcrgf_core::oracle::{check_dold_kan_roundtrip, random_complex};
use tcrgf_core::simplicial::{dold_kan, enumerate_surjections, epi_mono_factor, standard_resolution, BaseModule, MonotoneMap};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dold_kan_roundtrip(seed in any::<u64>(), top in 1usize..=4) {
        let c = random_complex(&mut StdRng::seed_from_u64(seed), 3, top).unwrap();
        prop_assert!(check_dold_kan_roundtrip(&c).is_ok(), "{:?}", check_dold_kan_roundtrip(&c));
    }

    #[test]
    fn level_ranks_follow_binomials(seed in any::<u64>(), top in 1usize..=4) {
        let c = random_complex(&mut StdRng::seed_from_u64(seed), 3, top).unwrap();
        let dk = dold_kan(&c, top).unwrap();
        for m in 0..=top {
            let want: usize = (0..=m).map(|k| binomial(m, k) * c.rank(k)).sum();
            prop_assert_eq!(dk.rank(m), want);
        }
    }

    #[test]
    fn epi_mono_factorization_composes(m in 1usize..6, kk in 0usize..6, j in 0usize..6, pick in any::<prop::sample::Index>()) {
        let k = kk.min(m);
        let j = j % (m + 1);
        let surj = enumerate_surjections(m, k);
        let s = &surj[pick.index(surj.len())];
        let theta = MonotoneMap::coface(m, j);
        let (e, iota) = epi_mono_factor(&theta, s).unwrap();
        prop_assert!(iota.is_injective());
        for x in 0..m {
            prop_assert_eq!(iota.value(e.values()[x] as usize), s.values()[theta.value(x)] as usize);
        }
    }
}

#[test]
fn surjection_counts() {
    // monotone surjections [m] -> [k] are determined by k jump positions
    for m in 0..7 {
        for k in 0..=m {
            assert_eq!(enumerate_surjections(m, k).len(), binomial(m, k));
        }
    }
}

#[test]
fn resolutions_have_expected_homology() {
    for n in 0..4 {
        let top = n + 3;
        let z2 = standard_resolution(BaseModule::Z2, n, top).unwrap();
        assert_eq!(z2.homology(n).unwrap().to_string(), "Z/2");
        for k in n + 1..top {
            assert!(z2.homology(k).unwrap().is_trivial());
        }
        let z4 = standard_resolution(BaseModule::Z4, n, top).unwrap();
        assert_eq!(z4.homology(n).unwrap().to_string(), "Z/4");
        let dk = dold_kan(&z2, top).unwrap();
        dk.check_simplicial_identities().unwrap();
    }
}
