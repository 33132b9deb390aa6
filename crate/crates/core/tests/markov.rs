use approx::assert_relative_eq;
use coalwalk::experiment::{fit_scaling, ScalingModel};
use coalwalk::graph::generate;
use coalwalk::markov::{
    collision_stats, distance_profile, hitting_to, lazy_step, meeting_exact, meeting_jacobi, mixing_time,
    separation_time, spectral, stationary, t_hit, tstep_row, tv_distance, DistVector, DEFAULT_EPS,
};
use coalwalk::{Error, FamilySpec, Graph};
use proptest::prelude::*;

fn cycle(n: usize) -> Graph {
    generate(&FamilySpec::Cycle { n }, 0).unwrap()
}

#[test]
fn lazy_step_on_cycle_four() {
    let d = lazy_step(&cycle(4), &DistVector::point_mass(4, 0)).unwrap();
    assert_eq!(d.as_slice(), &[0.5, 0.25, 0.0, 0.25]);
}

#[test]
fn tv_distance_examples() {
    let a = DistVector::new(vec![1.0, 0.0]).unwrap();
    let b = DistVector::new(vec![0.5, 0.5]).unwrap();
    assert_eq!(tv_distance(&a, &a).unwrap(), 0.0);
    assert_eq!(tv_distance(&a, &b).unwrap(), 0.5);
    assert_eq!(tv_distance(&a, &DistVector::point_mass(2, 1)).unwrap(), 1.0);
    assert!(matches!(tv_distance(&a, &DistVector::uniform(3)), Err(Error::LengthMismatch { .. })));
}

#[test]
fn return_probability_non_increasing_on_cycle_eight() {
    let g = cycle(8);
    let pi = stationary(&g);
    let mut prev = 1.0;
    for t in 1..=20 {
        let p = tstep_row(&g, 0, t).unwrap().get(0);
        assert!(p <= prev + 1e-15, "t={t}: {p} > {prev}");
        assert!(p >= pi.get(0) - 1e-15);
        prev = p;
    }
}

#[test]
fn cycle_eight_second_eigenvalue() {
    let s = spectral(&cycle(8)).unwrap();
    let closed = (1.0 + (2.0 * std::f64::consts::PI / 8.0).cos()) / 2.0;
    assert_relative_eq!(s.lambda2, closed, epsilon = 1e-10);
    assert!(s.residual <= 1e-8);
}

#[test]
fn hitting_oracles() {
    for n in [3, 5, 8, 13] {
        let g = generate(&FamilySpec::Clique { n }, 0).unwrap();
        let h = hitting_to(&g, n - 1).unwrap();
        for u in 0..n - 1 {
            assert_relative_eq!(h.h[u], 2.0 * (n as f64 - 1.0), max_relative = 1e-12);
        }
    }
    // 2·k(n−k) for the lazy walk, k = 4 on the 8-cycle
    let h = hitting_to(&cycle(8), 4).unwrap();
    assert_relative_eq!(h.h[0], 32.0, max_relative = 1e-12);
    assert_relative_eq!(t_hit(&generate(&FamilySpec::Clique { n: 8 }, 0).unwrap()).unwrap(), 14.0, max_relative = 1e-12);
}

#[test]
fn small_closed_forms() {
    let k2 = generate(&FamilySpec::Clique { n: 2 }, 0).unwrap();
    assert_eq!(hitting_to(&k2, 1).unwrap().h, vec![2.0, 0.0]);
    assert_eq!(mixing_time(&k2, DEFAULT_EPS).unwrap().value(), 1);
    assert_eq!(separation_time(&k2, DEFAULT_EPS).unwrap(), 1);
    assert_relative_eq!(spectral(&k2).unwrap().lambda2, 0.0, epsilon = 1e-12);
    let m = meeting_exact(&k2).unwrap();
    assert_relative_eq!(m.t_meet, 2.0, max_relative = 1e-9);

    let one = Graph::from_edges(1, []).unwrap();
    assert_eq!(t_hit(&one).unwrap(), 0.0);
    assert_eq!(meeting_exact(&one).unwrap().t_meet, 0.0);
}

#[test]
fn meeting_on_cycle_eight() {
    let g = cycle(8);
    let m = meeting_exact(&g).unwrap();
    let h = t_hit(&g).unwrap();
    assert!(h / 2.0 <= m.t_meet && m.t_meet <= 2.0 * h, "{} vs {h}", m.t_meet);
    let jac = meeting_jacobi(&g, 1e-10, 1_000_000).unwrap();
    assert_relative_eq!(m.t_meet, jac.t_meet, max_relative = 1e-6);
    assert_relative_eq!(m.t_meet_pi, jac.t_meet_pi, max_relative = 1e-6);
    for u in 0..8 {
        assert_eq!(m.get(u, u), 0.0);
        for v in 0..8 {
            assert_relative_eq!(m.get(u, v), m.get(v, u), max_relative = 1e-9);
        }
    }
}

#[test]
fn meeting_refuses_large_graphs() {
    assert!(matches!(meeting_exact(&cycle(200)), Err(Error::TooLarge { .. })));
}

#[test]
fn cycle_mixing_exponent_is_two() {
    let pts: Vec<(f64, f64)> = [16, 32, 64, 128]
        .iter()
        .map(|&n| (n as f64, mixing_time(&cycle(n), DEFAULT_EPS).unwrap().value() as f64))
        .collect();
    let fit = fit_scaling(&pts, ScalingModel::Power).unwrap();
    let a = fit.exponent.unwrap();
    assert!((1.9..=2.1).contains(&a), "exponent {a}");
}

#[test]
fn clique_mixes_in_constant_time() {
    for n in [8, 16, 64] {
        let t = mixing_time(&generate(&FamilySpec::Clique { n }, 0).unwrap(), DEFAULT_EPS).unwrap();
        assert!(t.is_exact() && t.value() <= 3, "n={n}: {t:?}");
    }
}

#[test]
fn binary_tree_hitting_tracks_n_log_n() {
    let pts: Vec<(f64, f64)> = (6..=9)
        .map(|levels| {
            let g = generate(&FamilySpec::BinaryTree { levels }, 0).unwrap();
            (g.n() as f64, t_hit(&g).unwrap())
        })
        .collect();
    let fit = fit_scaling(&pts, ScalingModel::NLogN).unwrap();
    assert!(fit.ratio_spread <= 1.2, "spread {}", fit.ratio_spread);
}

#[test]
fn torus_collisions_grow_logarithmically() {
    let stats: Vec<(f64, f64)> = [4usize, 6, 8, 12, 16]
        .iter()
        .map(|&side| {
            let g = generate(&FamilySpec::Torus { dim: 2, side }, 0).unwrap();
            (g.n() as f64, collision_stats(&g).unwrap().c_min)
        })
        .collect();
    assert!(stats.windows(2).all(|w| w[1].1 > w[0].1), "{stats:?}");
    let ratios: Vec<f64> = stats.iter().map(|&(n, c)| c / n.ln()).collect();
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    assert!(hi / lo <= 2.0, "C_min / ln n ratios {ratios:?}");
}

fn small_graphs() -> impl Strategy<Value = (FamilySpec, u64)> {
    let spec = prop_oneof![
        (2usize..14).prop_map(|n| FamilySpec::Path { n }),
        (3usize..14).prop_map(|n| FamilySpec::Cycle { n }),
        (2usize..10).prop_map(|n| FamilySpec::Clique { n }),
        (2usize..14).prop_map(|n| FamilySpec::Star { n }),
        (2u32..4).prop_map(|levels| FamilySpec::BinaryTree { levels }),
        (1u32..4).prop_map(|dim| FamilySpec::Hypercube { dim }),
        (2usize..4).prop_map(|k| FamilySpec::Barbell { n: 4 * k }),
        (3usize..7).prop_map(|h| FamilySpec::RandomRegular { n: 2 * h, degree: 3 }),
    ];
    (spec, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chain_invariants((spec, seed) in small_graphs()) {
        let g = generate(&spec, seed).unwrap();
        let n = g.n();
        let pi = stationary(&g);
        let p1: Vec<DistVector> = (0..n).map(|u| tstep_row(&g, u, 1).unwrap()).collect();
        for (u, v) in g.edges() {
            let lhs = pi.get(u) * p1[u].get(v);
            let rhs = pi.get(v) * p1[v].get(u);
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        let s = spectral(&g).unwrap();
        prop_assert!(s.lambda2 >= -1e-12);

        let mix = mixing_time(&g, DEFAULT_EPS).unwrap().value();
        let sep = separation_time(&g, DEFAULT_EPS).unwrap();
        prop_assert!(sep <= 4 * mix, "t_sep {sep} > 4 t_mix {mix}");
        prop_assert!(mixing_time(&g, 0.1).unwrap().value() >= mix);

        let prof = distance_profile(&g, 4 * mix.max(1));
        prop_assert!(prof.windows(2).all(|w| w[1].d_bar <= w[0].d_bar + 1e-12));
        for u in 0..n {
            let mut prev = 1.0;
            for t in 0..=4 * mix.max(1) {
                let p = tstep_row(&g, u, t).unwrap().get(u);
                prop_assert!(p <= prev + 1e-12 && p >= pi.get(u) - 1e-12);
                prev = p;
            }
        }

        let pi_min = pi.as_slice().iter().copied().fold(f64::MAX, f64::min);
        let th = t_hit(&g).unwrap();
        prop_assert!(th >= 2.0 / pi_min - 2.0 - 1e-9 * th);
        let prof = hitting_to(&g, n - 1).unwrap();
        prop_assert!(prof.residual <= 1e-9 * n as f64);

        let m = meeting_exact(&g).unwrap();
        prop_assert!(m.t_meet <= 4.0 * th * (1.0 + 1e-9));
        prop_assert!(m.t_meet_pi <= m.t_meet * (1.0 + 1e-9));
    }
}
