use coalwalk::bounds::{bound_hit_spectral, check_collision_concentration, check_concentration, measure, verify_relations, Relation};
use coalwalk::coalesce::{default_cap, estimate, SimKind};
use coalwalk::graph::generate;
use coalwalk::markov::{spectral, t_hit, ExactConfig};
use coalwalk::{FamilySpec, Graph};
use proptest::prelude::*;

fn spread(xs: &[f64]) -> f64 {
    let lo = xs.iter().cloned().fold(f64::MAX, f64::min);
    let hi = xs.iter().cloned().fold(0.0, f64::max);
    hi / lo
}

#[test]
fn star_coalescence_over_meeting_log_bounded() {
    let ratios: Vec<f64> = [16, 32, 64, 96]
        .iter()
        .map(|&n| {
            let g = generate(&FamilySpec::Star { n }, 0).unwrap();
            let mut mq = measure(&g, &ExactConfig::default(), false).unwrap();
            mq.t_coal_estimate =
                Some(estimate(&SimKind::Coalescence { start: None }, &g, 1000, 17, default_cap(n)).unwrap());
            let r = verify_relations(&g, &mq).unwrap();
            assert!(r.explicit_passed(), "star {n}: {:?}", r.failures().collect::<Vec<_>>());
            let beer = r.get("coal_beer").unwrap();
            assert_eq!(beer.rel, Relation::Ratio);
            beer.ratio_value()
        })
        .collect();
    assert!(ratios.iter().all(|&r| r > 0.1 && r < 2.0), "{ratios:?}");
    assert!(spread(&ratios) <= 2.0, "{ratios:?}");
}

#[test]
fn random_regular_hitting_tracks_spectral_expression() {
    let ratios: Vec<f64> = [32, 64, 128, 256]
        .iter()
        .map(|&n| {
            let g = generate(&FamilySpec::RandomRegular { n, degree: 4 }, 5).unwrap();
            let t_hit = t_hit(&g).unwrap();
            t_hit / bound_hit_spectral(g.n() as f64, g.gamma(), spectral(&g).unwrap().lambda2)
        })
        .collect();
    assert!(spread(&ratios) <= 1.5, "{ratios:?}");
}

#[test]
fn every_family_passes_explicit_checks() {
    let specs = [
        FamilySpec::Path { n: 20 },
        FamilySpec::Cycle { n: 21 },
        FamilySpec::Clique { n: 16 },
        FamilySpec::Star { n: 33 },
        FamilySpec::BinaryTree { levels: 5 },
        FamilySpec::Hypercube { dim: 5 },
        FamilySpec::Torus { dim: 2, side: 7 },
        FamilySpec::Torus { dim: 3, side: 4 },
        FamilySpec::Grid { dim: 2, side: 6 },
        FamilySpec::Barbell { n: 24 },
        FamilySpec::RandomRegular { n: 40, degree: 3 },
        FamilySpec::LowerBound { n: 64, alpha: 1.0, alpha_floor: 4.0 },
    ];
    for spec in specs {
        let g = generate(&spec, 2).unwrap();
        let mq = measure(&g, &ExactConfig::default(), spec.kind().is_vertex_transitive()).unwrap();
        let r = verify_relations(&g, &mq).unwrap();
        assert!(r.explicit_passed(), "{spec:?}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn concentration_on_small_graphs() {
    let cycle = generate(&FamilySpec::Cycle { n: 16 }, 0).unwrap();
    let r = check_concentration(&cycle, &[0], 64, 2000, 3).unwrap();
    assert!(r.passed(), "{r:?}");
    let star = generate(&FamilySpec::Star { n: 16 }, 0).unwrap();
    let r = check_collision_concentration(&star, &[1, 2, 3], 32, 2000, 3).unwrap();
    assert!(r.passed(), "{r:?}");
}

fn random_graph() -> impl Strategy<Value = (FamilySpec, u64)> {
    let spec = prop_oneof![
        (3usize..16).prop_map(|n| FamilySpec::Cycle { n }),
        (2usize..16).prop_map(|n| FamilySpec::Path { n }),
        (3usize..16).prop_map(|n| FamilySpec::Star { n }),
        (2usize..5).prop_map(|k| FamilySpec::Barbell { n: 4 * k }),
        (3usize..9).prop_map(|h| FamilySpec::RandomRegular { n: 2 * h, degree: 3 }),
        (3usize..6).prop_map(|h| FamilySpec::RandomRegular { n: 2 * h, degree: 4 }),
    ];
    (spec, any::<u64>())
}

fn to_graph(spec: &FamilySpec, seed: u64) -> Graph {
    generate(spec, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn explicit_relations_hold((spec, seed) in random_graph()) {
        let g = to_graph(&spec, seed);
        let mq = measure(&g, &ExactConfig::default(), spec.kind().is_vertex_transitive()).unwrap();
        let r = verify_relations(&g, &mq).unwrap();
        let failures: Vec<_> = r.failures().collect();
        prop_assert!(failures.is_empty(), "{spec:?} seed {seed}: {failures:?}");
    }
}
