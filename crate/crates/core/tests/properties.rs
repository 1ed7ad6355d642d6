//! Randomized invariants.

mod oracle;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sharpset::boolean::{decompositions, is_sheaf, is_sheaf_all_decompositions, local_fibration, sheafify, BooleanAlgebra, PresheafMap};
use sharpset::certificate::{certify_weak_equivalence, CertifyOptions};
use sharpset::homology::homology;
use sharpset::kan::has_horn_lifts;
use sharpset::limits::{colimit, is_pullback_square, verify_distributive_law};
use sharpset::map::SimplicialMap;
use sharpset::operator::Operator;
use sharpset::peculiar::{Ladder, LadderVerdict};
use sharpset::product::{fiber_product, product};
use sharpset::random::*;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn operator(n: usize) -> impl Strategy<Value = Operator> {
    (0..=3usize).prop_flat_map(move |m| {
        proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
            v.sort();
            Operator::new(&v, n).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn epi_mono_factors(op in (0..=3usize).prop_flat_map(operator)) {
        let (epi, mono) = op.epi_mono();
        prop_assert!(epi.is_surjective() && mono.is_injective());
        prop_assert_eq!(mono.compose(&epi), op);
    }

    #[test]
    fn simplicial_identities((n, i, j) in (2..=5usize).prop_flat_map(|n| (Just(n), 0..n)).prop_flat_map(|(n, i)| (Just(n), Just(i), i + 1..=n))) {
        // d_i d_j = d_{j-1} d_i as operators [n-2] -> [n].
        let lhs = Operator::face(n, j).compose(&Operator::face(n - 1, i));
        let rhs = Operator::face(n, i).compose(&Operator::face(n - 1, j - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn distributive_law_on_random_instances(seed in any::<u64>()) {
        let (d, a) = random_map_into_colimit(&mut rng(seed), Bounds::default()).unwrap();
        prop_assert!(verify_distributive_law(&d, &a).unwrap().holds);
    }

    #[test]
    fn colimit_legs_are_jointly_surjective(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), Bounds::default()).unwrap();
        let c = colimit(&d).unwrap();
        let mut hit = std::collections::HashSet::new();
        for leg in &c.cocone {
            for x in leg.source().cells() {
                hit.insert(leg.on_cell(x).cell);
            }
        }
        prop_assert_eq!(hit.len(), c.object.cells().count());
    }

    #[test]
    fn fiber_products_are_pullbacks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = random_complex(&mut r, 2);
        let (x, y) = (random_complex(&mut r, 1), random_complex(&mut r, 1));
        let f = random_map(&mut r, &x, &b).unwrap();
        let g = random_map(&mut r, &y, &b).unwrap();
        let p = fiber_product(&f, &g).unwrap();
        prop_assert!(is_pullback_square(&p.left, &p.right, &f, &g).unwrap());
    }

    #[test]
    fn homology_matches_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_complex(&mut r, 2), random_complex(&mut r, 1));
        let x = product(&a, &b).unwrap().object;
        let top = x.max_dim() + 1;
        let lib: Vec<String> = homology(&x, top).iter().map(|g| g.to_string()).collect();
        prop_assert_eq!(lib, oracle::homology_strings(&x, top));
    }

    #[test]
    fn certificates_agree_with_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_complex(&mut r, 2), random_complex(&mut r, 2));
        let f = random_map(&mut r, &a, &b).unwrap();
        let c = certify_weak_equivalence(&f, &CertifyOptions::default()).unwrap();
        if c.is_refuted() {
            prop_assert!(oracle::genuine_mismatch(&f));
        }
        if c.is_certified() {
            prop_assert!(!oracle::genuine_mismatch(&f));
        }
    }

    #[test]
    fn ladders_hold(seed in any::<u64>()) {
        prop_assert_eq!(Ladder::random(&mut rng(seed), 6).verify(), LadderVerdict::Holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sheafification_is_a_sheaf_and_idempotent(seed in any::<u64>()) {
        let x = random_presheaf(&mut rng(seed), 3).unwrap();
        let l = sheafify(&x).unwrap();
        prop_assert!(is_sheaf(&l.sheaf).unwrap().is_sheaf);
        prop_assert!(sheafify(&l.sheaf).unwrap().unit.is_iso());
        let atoms = is_sheaf(&x).unwrap().is_sheaf;
        prop_assert_eq!(atoms, l.unit.is_iso());
        // The atom criterion decides the general one.
        prop_assert_eq!(atoms, is_sheaf_all_decompositions(&x).unwrap().is_sheaf);
    }

    #[test]
    fn local_fibrations_lift_at_every_element(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2;
        let maps: Vec<SimplicialMap> = (0..n)
            .map(|_| {
                let (a, b) = (random_complex(&mut r, 1), random_complex(&mut r, 1));
                random_map(&mut r, &a, &b).unwrap()
            })
            .collect();
        let f = PresheafMap::from_atoms(&maps).unwrap();
        let local = local_fibration(&f, Some(2)).unwrap().iter().all(|l| l.holds);
        let global = BooleanAlgebra::new(n).unwrap().elements().all(|b| has_horn_lifts(&f.components[b as usize], 2).unwrap().holds);
        prop_assert_eq!(local, global);
    }
}

#[test]
fn decomposition_counts_are_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52];
    for (k, &b) in bell.iter().enumerate() {
        let top = (1u32 << k) - 1;
        let ds = decompositions(top);
        assert_eq!(ds.len(), b);
        assert!(ds.iter().all(|d| d.is_valid()));
    }
}
