use fr_bvd::basis::CellBasis;
use fr_bvd::cases::{initial, Case};
use fr_bvd::limiting::{
    apply_selection, bvd_select, minmod, tvb_indicator, tvb_minmod, Choice, Mechanism, SelectionTrace, TvbParams,
};
use fr_bvd::reconstruction::{build_all_candidates, Candidate, CandidateKind, CandidatePair};
use fr_bvd::solver::Field;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_pair(rng: &mut ChaCha8Rng) -> CandidatePair<f64> {
    // coarse values so that ties between boundary variations actually occur
    let mut v = || f64::from(rng.gen_range(-4i32..=4)) * 0.25;
    let c = |l: f64, r: f64| Candidate {
        values: vec![],
        left: l,
        right: r,
    };
    CandidatePair {
        high: c(v(), v()),
        stable: c(v(), v()),
        average: v(),
    }
}

fn trace_of(pair: &CandidatePair<f64>, p: usize, right: bool) -> f64 {
    let c = if p == 1 { &pair.high } else { &pair.stable };
    if right {
        c.right
    } else {
        c.left
    }
}

/// Brute force: enumerate the four pairs, keep the minimal ones and take the
/// lexicographically smallest `(p, q)`.
fn oracle_pair(left: &CandidatePair<f64>, right: &CandidatePair<f64>) -> ((usize, usize), f64) {
    let mut all = Vec::new();
    for p in 1..=2 {
        for q in 1..=2 {
            all.push(((p, q), (trace_of(left, p, true) - trace_of(right, q, false)).abs()));
        }
    }
    let min = all.iter().map(|a| a.1).fold(f64::INFINITY, f64::min);
    let best = all.iter().filter(|a| a.1 == min).map(|a| a.0).min().unwrap();
    (best, min)
}

fn idx(c: Choice) -> usize {
    c.index() as usize
}

#[test]
fn bvd_matches_brute_force_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut tiebreaks = 0;
    for _ in 0..500 {
        let n = rng.gen_range(3..8);
        let pairs: Vec<_> = (0..n).map(|_| random_pair(&mut rng)).collect();
        let trace = bvd_select(&pairs);
        let mut oracle = Vec::new();
        for i in 0..n {
            let (pq, bv) = oracle_pair(&pairs[i], &pairs[(i + 1) % n]);
            let vote = trace.interfaces[i];
            assert_eq!((idx(vote.pair.0), idx(vote.pair.1)), pq);
            assert_eq!(vote.bv, bv);
            oracle.push(pq);
        }
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let (from_right, from_left) = (oracle[i].0, oracle[prev].1);
            let expected = if from_right == from_left {
                from_right
            } else {
                tiebreaks += 1;
                let (a, b, c) = (pairs[prev].average, pairs[i].average, pairs[(i + 1) % n].average);
                if (b - c) * (a - b) < 0.0 {
                    1
                } else {
                    2
                }
            };
            assert_eq!(idx(trace.chosen[i]), expected);
            let mech = if from_right == from_left {
                Mechanism::BvdConsistent
            } else {
                Mechanism::BvdTiebreak
            };
            assert_eq!(trace.mechanism[i], mech);
        }
    }
    assert!(tiebreaks > 50, "too few vote conflicts exercised: {tiebreaks}");
}

#[test]
fn bvd_choice_is_scale_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let pairs: Vec<_> = (0..6).map(|_| random_pair(&mut rng)).collect();
        // powers of two keep exact ties exact after scaling
        let c = 2f64.powi(rng.gen_range(-6..=6));
        let scaled: Vec<_> = pairs.iter().map(|p| p.scaled(c)).collect();
        let a = bvd_select(&pairs);
        let b = bvd_select(&scaled);
        assert_eq!(a.chosen, b.chosen);
        assert_eq!(a.mechanism, b.mechanism);
        for (x, y) in a.interfaces.iter().zip(&b.interfaces) {
            assert_eq!(x.pair, y.pair);
            assert_eq!(x.bv * c, y.bv);
        }
    }
}

#[test]
fn tvb_algebra_identities() {
    assert_eq!(minmod(&[1.0, 2.0, 3.0]), 1.0);
    assert_eq!(minmod(&[1.0, -2.0, 3.0]), 0.0);
    assert_eq!(minmod(&[-0.5, -0.2, -0.9]), -0.2);
    assert_eq!(tvb_minmod(0.5, 0.2, 0.3, &TvbParams::new(200.0, 0.1)), 0.5);
    assert_eq!(tvb_minmod(0.5, 0.2, 0.3, &TvbParams::new(0.0, 0.1)), 0.2);
    assert_eq!(tvb_minmod(0.5, -0.2, 0.3, &TvbParams::new(0.0, 0.1)), 0.0);
}

proptest! {
    #[test]
    fn minmod_magnitude_never_exceeds_inputs(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0) {
        let m = minmod(&[a, b, c]);
        prop_assert!(m.abs() <= a.abs().min(b.abs()).min(c.abs()));
        prop_assert!(m == 0.0 || m.signum() == a.signum());
    }

    #[test]
    fn tvb_pass_is_monotone_in_m(
        a in -2.0f64..2.0, b in -2.0f64..2.0, c in -2.0f64..2.0,
        m0 in 0.0f64..100.0, dm in 0.0f64..100.0, h in 0.01f64..1.0,
    ) {
        let passes = |m: f64| tvb_minmod(a, b, c, &TvbParams::new(m, h)) == a;
        if passes(m0) {
            prop_assert!(passes(m0 + dm));
        }
    }
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Field<f64> {
    let values = (0..n * (k + 1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Field::from_values(n, k, 0.0, 1.0, values).unwrap()
}

#[test]
fn tvb_indicator_monotone_in_m_on_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let b = CellBasis::<f64>::new(2).unwrap();
    for _ in 0..1000 {
        let field = random_field(&mut rng, 5, 2);
        let h = field.dx();
        let m0 = rng.gen_range(0.0..50.0);
        let m1 = m0 + rng.gen_range(0.0..50.0);
        let t0 = tvb_indicator(&field, &b, &TvbParams::new(m0, h));
        let t1 = tvb_indicator(&field, &b, &TvbParams::new(m1, h));
        for (a, c) in t0.iter().zip(&t1) {
            assert!(*a || !*c, "troubled at larger M but not at smaller M");
        }
    }
}

#[test]
fn tvb_large_m_flags_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = CellBasis::<f64>::new(3).unwrap();
    for _ in 0..50 {
        let field = random_field(&mut rng, 7, 3);
        // |deviation| <= max|u| * (1 + sum|phi(±1)|) is far below 1e6 * h^2
        let flags = tvb_indicator(&field, &b, &TvbParams::new(1e6, field.dx()));
        assert!(flags.iter().all(|&t| !t));
    }
}

#[test]
fn tvb_indicator_examples() {
    let b = CellBasis::<f64>::new(2).unwrap();
    let constant = Field::from_fn(4, &b, 0.0, 1.0, |_| 0.3).unwrap();
    assert!(tvb_indicator(&constant, &b, &TvbParams::new(0.0, constant.dx())).iter().all(|&t| !t));

    let step = initial(&Case::Step, 3, &b).unwrap();
    let h = 10.0 / 3.0;
    assert!(tvb_indicator(&step, &b, &TvbParams::new(0.0, h))[1]);
    assert!(!tvb_indicator(&step, &b, &TvbParams::new(200.0, h))[1]);
}

#[test]
fn apply_selection_keeps_averages() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let b = CellBasis::<f64>::new(2).unwrap();
    for kind in [CandidateKind::Weno, CandidateKind::Sweno] {
        let field = random_field(&mut rng, 8, 2);
        let pairs = build_all_candidates(&field, kind, &b);
        let averages = field.averages(&b);

        let mut all_high = field.clone();
        let trace = SelectionTrace::<f64> {
            chosen: vec![Choice::High; 8],
            mechanism: vec![Mechanism::TvbPass; 8],
            interfaces: vec![],
        };
        apply_selection(&mut all_high, &pairs, &trace);
        assert_eq!(all_high, field);

        let mut all_stable = field.clone();
        let trace = SelectionTrace::<f64> {
            chosen: vec![Choice::Stable; 8],
            mechanism: vec![Mechanism::TvbTroubled; 8],
            interfaces: vec![],
        };
        apply_selection(&mut all_stable, &pairs, &trace);
        for (a, e) in all_stable.averages(&b).iter().zip(&averages) {
            assert!((a - e).abs() < 1e-12);
        }

        let mut mixed = field.clone();
        let trace = bvd_select(&pairs);
        apply_selection(&mut mixed, &pairs, &trace);
        assert!((mixed.total(&b) - field.total(&b)).abs() < 1e-12);
    }
}
