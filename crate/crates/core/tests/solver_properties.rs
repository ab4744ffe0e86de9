use approx::assert_abs_diff_eq;
use fr_bvd::basis::CellBasis;
use fr_bvd::cases::{error_norms, initial, Case};
use fr_bvd::reconstruction::CandidateKind;
use fr_bvd::solver::{residual, run, Field, FluxSpec, Limiter, RunSettings, Scheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SINE: Case = Case::Sine {
    amplitude: 0.2,
    frequency: 0.2,
};

fn all_schemes() -> Vec<Scheme<f64>> {
    let mut out = vec![Scheme::unlimited()];
    for candidate in [CandidateKind::Weno, CandidateKind::Sweno] {
        for limiter in [Limiter::Bvd, Limiter::Tvb { m: 0.0 }, Limiter::Tvb { m: 200.0 }] {
            out.push(Scheme { limiter, candidate });
        }
    }
    out
}

fn settings(cfl: f64, t_end: f64) -> RunSettings<f64> {
    RunSettings {
        cfl,
        t_end,
        snapshot_times: vec![],
    }
}

#[test]
fn residual_integrates_to_zero() {
    let b = CellBasis::<f64>::new(2).unwrap();
    for case in [SINE, Case::AdvectedStep, Case::AdvectedPlateau] {
        let f = initial(&case, 80, &b).unwrap();
        let r = residual(&f, &b, &FluxSpec::default()).unwrap();
        let rf = Field::from_values(80, 2, 0.0, 10.0, r).unwrap();
        assert!(rf.total(&b).abs() < 1e-12, "{case:?}: {}", rf.total(&b));
    }
}

#[test]
fn unlimited_residual_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = CellBasis::<f64>::new(3).unwrap();
    let n = 12 * 4;
    let u: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (a, c) = (0.7, -1.3);
    let mk = |vals: Vec<f64>| Field::from_values(12, 3, 0.0, 10.0, vals).unwrap();
    let flux = FluxSpec::default();
    let ru = residual(&mk(u.clone()), &b, &flux).unwrap();
    let rv = residual(&mk(v.clone()), &b, &flux).unwrap();
    let combo = u.iter().zip(&v).map(|(x, y)| a * x + c * y).collect();
    let rc = residual(&mk(combo), &b, &flux).unwrap();
    for i in 0..n {
        assert_abs_diff_eq!(rc[i], a * ru[i] + c * rv[i], epsilon = 1e-12);
    }
}

#[test]
fn constants_survive_every_scheme() {
    let b = CellBasis::<f64>::new(2).unwrap();
    for scheme in all_schemes() {
        let f = Field::from_fn(10, &b, 0.0, 10.0, |_| 0.375).unwrap();
        let out = run(f, &b, &scheme, &FluxSpec::default(), &settings(0.1, 0.5)).unwrap();
        for &v in out.final_field.values() {
            assert_abs_diff_eq!(v, 0.375, epsilon = 1e-13);
        }
    }
}

#[test]
fn short_runs_conserve_mass() {
    let b = CellBasis::<f64>::new(2).unwrap();
    for scheme in all_schemes() {
        let f = initial(&Case::AdvectedStep, 40, &b).unwrap();
        let out = run(f, &b, &scheme, &FluxSpec::default(), &settings(0.05, 0.5)).unwrap();
        assert!(out.max_drift < 1e-12, "{scheme:?}: {}", out.max_drift);
    }
}

#[test]
fn k2_converges_at_high_order() {
    let b = CellBasis::<f64>::new(2).unwrap();
    let errs: Vec<f64> = [10, 20, 40]
        .iter()
        .map(|&n| {
            let f = initial(&SINE, n, &b).unwrap();
            let out = run(f, &b, &Scheme::unlimited(), &FluxSpec::default(), &settings(0.05, 1.0)).unwrap();
            error_norms(&out.final_field, &SINE, 1.0, &b).l2
        })
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 2.5, "errors {errs:?}, order {order}");
    }
}

#[test]
fn sine_returns_after_one_period() {
    let b = CellBasis::<f64>::new(3).unwrap();
    let f = initial(&SINE, 20, &b).unwrap();
    let start = f.clone();
    let out = run(f, &b, &Scheme::unlimited(), &FluxSpec::default(), &settings(0.1, 10.0)).unwrap();
    let n = error_norms(&out.final_field, &SINE, 0.0, &b);
    assert!(n.linf < 1e-4, "{n:?}");
    assert_eq!(out.final_field.n_cells(), start.n_cells());
}

#[test]
fn larger_cfl_stays_bounded() {
    let b = CellBasis::<f64>::new(2).unwrap();
    for candidate in [CandidateKind::Weno, CandidateKind::Sweno] {
        let scheme = Scheme {
            limiter: Limiter::Bvd,
            candidate,
        };
        let f = initial(&Case::AdvectedPlateau, 40, &b).unwrap();
        let out = run(f, &b, &scheme, &FluxSpec::default(), &settings(0.05, 2.0)).unwrap();
        assert!(out.final_field.is_finite());
        let n = error_norms(&out.final_field, &Case::AdvectedPlateau, 2.0, &b);
        assert!(n.overshoot < 0.1 && n.undershoot < 0.1, "{n:?}");
    }
}

#[test]
fn f32_run_tracks_f64() {
    let b32 = CellBasis::<f32>::new(2).unwrap();
    let b64 = CellBasis::<f64>::new(2).unwrap();
    let scheme32 = Scheme {
        limiter: Limiter::Bvd,
        candidate: CandidateKind::Sweno,
    };
    let scheme64 = Scheme {
        limiter: Limiter::Bvd,
        candidate: CandidateKind::Sweno,
    };
    let s32 = RunSettings {
        cfl: 0.05f32,
        t_end: 0.5,
        snapshot_times: vec![],
    };
    let a = run(initial(&SINE, 20, &b32).unwrap(), &b32, &scheme32, &FluxSpec::default(), &s32).unwrap();
    let c = run(initial(&SINE, 20, &b64).unwrap(), &b64, &scheme64, &FluxSpec::default(), &settings(0.05, 0.5)).unwrap();
    for (x, y) in a.final_field.values().iter().zip(c.final_field.values()) {
        assert!((f64::from(*x) - y).abs() < 1e-4);
    }
}

#[test]
fn unlimited_step_overshoots() {
    // guards the limiter bounds from being vacuous
    let b = CellBasis::<f64>::new(2).unwrap();
    let f = initial(&Case::AdvectedStep, 80, &b).unwrap();
    let out = run(f, &b, &Scheme::unlimited(), &FluxSpec::default(), &settings(0.05, 1.0)).unwrap();
    let n = error_norms(&out.final_field, &Case::AdvectedStep, 1.0, &b);
    assert!(n.overshoot > 0.05, "{n:?}");
}
