use eqtree::automorphism::{check_structure_laws, compute_orbits};
use eqtree::generate::{random_conjugate, random_quotient, Recipe};
use eqtree::quotient::{build_quotient_mapped, expand_quotient_mapped};
use eqtree::reduction::{predicted_size, recover_quotient, reduce_to_graph};
use eqtree::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(n: usize, k: u32, seed: u64, loop_prob: f64) -> GenSpec {
    GenSpec {
        loop_prob,
        ..GenSpec::new(n, k, seed)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ranks_partition_vertices(n in 1usize..60, k in 1u32..4, seed: u64) {
        let et = gen_equipped(&spec(n, k, seed, 0.3)).unwrap();
        let r = compute_ranks(et.tree());
        let mut seen = vec![0; n];
        for (i, layer) in r.strip_sequence.iter().enumerate() {
            for &v in layer {
                seen[v] += 1;
                prop_assert_eq!(r.rank[v], i);
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert!(r.centers.len() == 1 || r.centers.len() == 2);
        // centers are mapped among themselves
        for &c in &r.centers {
            prop_assert!(r.centers.contains(&et.perm().apply(c)));
        }
        // ranks are preserved by the automorphism
        for v in 0..n {
            prop_assert_eq!(r.rank[v], r.rank[et.perm().apply(v)]);
        }
    }

    #[test]
    fn generated_instances_obey_laws(n in 1usize..80, k in 1u32..4, seed: u64) {
        let et = gen_equipped(&spec(n, k, seed, 0.3)).unwrap();
        prop_assert_eq!(et.n(), n);
        let r = compute_ranks(et.tree());
        let o = compute_orbits(&et);
        let report = check_structure_laws(&et, &r, &o);
        prop_assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn quotient_round_trip(n in 1usize..60, k in 1u32..4, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quotient(&mut rng, n, k, 6);
        let exp = expand_quotient_mapped(&q).unwrap();
        prop_assert_eq!(exp.equipped.n(), n);
        let back = build_quotient_mapped(&exp.equipped, false).unwrap();
        // each quotient vertex of the rebuild lies over one original vertex
        let mut map = vec![usize::MAX; back.quotient.m()];
        for x in 0..n {
            map[back.vertex_to_q[x]] = exp.origin[x];
        }
        prop_assert!(back.quotient.matches_under(&q, &map));
    }

    #[test]
    fn reduction_round_trip(n in 1usize..60, k in 1u32..4, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_quotient(&mut rng, n, k, 6);
        let img = reduce_to_graph(&q).unwrap();
        prop_assert_eq!(img.graph.nv, predicted_size(&q));
        let back = recover_quotient(&img.graph).unwrap();
        prop_assert!(iso_via_reduction(&q, &back).unwrap());
        prop_assert_eq!(
            canon_quotient(&q, Root::Centers),
            canon_quotient(&back, Root::Centers)
        );
    }

    #[test]
    fn codes_ignore_relabeling(n in 1usize..60, k in 1u32..4, seed: u64) {
        let et = gen_equipped(&spec(n, k, seed, 0.3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5555);
        let other = random_conjugate(&mut rng, &et);
        prop_assert_eq!(equipped_code(&et), equipped_code(&other));
    }

    #[test]
    fn deciders_agree(n in 1usize..10, k in 1u32..3, seed: u64, iso: bool) {
        let et = gen_equipped(&spec(n, k, seed, 0.3)).unwrap();
        let kind = if iso { PairKind::Iso } else { PairKind::NonIso };
        if let Some(p) = make_pair(&et, kind, seed) {
            let brute = iso_brute(&p.first, &p.second, 12).unwrap().is_some();
            prop_assert_eq!(brute, p.expected);
            prop_assert_eq!(iso_decide(&p.first, &p.second), brute);
            prop_assert_eq!(iso_decide_via_reduction(&p.first, &p.second).unwrap(), brute);
        }
    }

    #[test]
    fn independent_instances_agree(a in 1usize..8, seed1: u64, seed2: u64) {
        // unrelated instances of equal size exercise the mixed cases
        let e1 = gen_equipped(&spec(a, 2, seed1, 0.4)).unwrap();
        let e2 = gen_equipped(&spec(a, 2, seed2, 0.4)).unwrap();
        let brute = iso_brute(&e1, &e2, 12).unwrap().is_some();
        prop_assert_eq!(iso_decide(&e1, &e2), brute);
        prop_assert_eq!(iso_decide_via_reduction(&e1, &e2).unwrap(), brute);
    }

    #[test]
    fn recipe_rebuilds_isomorphic_instance(n in 1usize..40, seed: u64) {
        let et = gen_equipped(&spec(n, 3, seed, 0.5)).unwrap();
        let again = Recipe::of(&et).realize(Mode::Generic);
        prop_assert!(iso_decide(&et, &again));
    }
}

#[test]
fn brute_witness_is_valid() {
    for seed in 0..100 {
        let et = gen_equipped(&spec(9, 2, seed, 0.5)).unwrap();
        let p = make_pair(&et, PairKind::Iso, seed).unwrap();
        let w = iso_brute(&p.first, &p.second, 12)
            .unwrap()
            .expect("isomorphic");
        assert!(isomorphism::verify_witness(&p.first, &p.second, &w));
    }
}

#[test]
fn brute_refuses_large_inputs() {
    let et = gen_equipped(&spec(20, 2, 1, 0.0)).unwrap();
    assert!(matches!(
        iso_brute(&et, &et, 12),
        Err(IsoError::TooLarge { n: 20, limit: 12 })
    ));
}
