use num_complex::Complex64;
use proptest::prelude::*;

use qst_optomech::config::{parse_config, ConfigFile};
use qst_optomech::dynamics::{dissipative_rhs, effective_rhs, Model, RhsKind};
use qst_optomech::integrator::{integrate, IntegratorConfig};
use qst_optomech::output::{efficiency_from_csv, trajectory_csv};
use qst_optomech::params::{ModelKind, SystemParams};
use qst_optomech::pulses::{effective_hop, fiber_coupling, gaussian_coupling, CouplingSnapshot};
use qst_optomech::state::ModeState;
use qst_optomech::transfer_efficiency;

const KINDS: [RhsKind; 4] = [
    RhsKind::EffectiveLossless,
    RhsKind::EffectiveDissipative,
    RhsKind::FullLossless,
    RhsKind::FullDissipative,
];

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn state(model: ModelKind) -> impl Strategy<Value = ModeState> {
    prop::collection::vec(complex(), model.dim())
        .prop_map(move |v| ModeState::from_slice(model, &v).unwrap())
}

fn params() -> impl Strategy<Value = SystemParams> {
    (
        0.0..5.0f64,
        1.0..30.0f64,
        0.0..2.0f64,
        0.05..1.0f64,
        0.0..0.1f64,
        -12.0..12.0f64,
    )
        .prop_map(
            |(g_peak, delta, g_fiber, width, rate, omega_c)| SystemParams {
                g_peak,
                delta,
                g_fiber,
                width,
                kappa1: rate,
                kappa2: 0.5 * rate,
                gamma1: 2.0 * rate,
                gamma2: rate,
                omega_c: Some(omega_c),
                ..Default::default()
            },
        )
}

fn model_for(kind: RhsKind, p: &SystemParams) -> Model {
    let p = SystemParams {
        model: kind.model(),
        ..p.clone()
    };
    Model::new(kind, &p.validate().unwrap())
}

fn rel_close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale.max(1.0)
}

proptest! {
    #[test]
    fn gaussian_is_symmetric(x in 0.0..3.0f64, peak in 0.0..5.0f64, tc in 0.0..20.0f64, s in 0.05..2.0f64) {
        let up = gaussian_coupling(tc + x, peak, tc, s);
        let down = gaussian_coupling(tc - x, peak, tc, s);
        prop_assert!((up - down).abs() <= 1e-14 * peak.max(1e-300));
    }

    #[test]
    fn gaussian_peaks_at_center_and_decreases(x in 0.0..1.0f64, dx in 1e-3..1.0f64, peak in 0.1..5.0f64, s in 0.1..1.0f64) {
        let tc = 4.0;
        prop_assert_eq!(gaussian_coupling(tc, peak, tc, s), peak);
        let near = gaussian_coupling(tc + x * s, peak, tc, s);
        let far = gaussian_coupling(tc + (x + dx) * s, peak, tc, s);
        prop_assert!(near <= peak);
        prop_assert!(far < near);
    }

    #[test]
    fn fiber_is_right_continuous_step(t in 0.0..30.0f64, t_off in 0.0..30.0f64, g0 in 0.0..3.0f64) {
        let g = fiber_coupling(t, g0, t_off);
        prop_assert_eq!(g, if t < t_off { g0 } else { 0.0 });
        prop_assert_eq!(fiber_coupling(t_off, g0, t_off), 0.0);
    }

    #[test]
    fn hop_scales_quadratically(g in 0.0..10.0f64, delta in 0.1..50.0f64) {
        let one = effective_hop(g, delta).unwrap();
        prop_assert_eq!(effective_hop(2.0 * g, delta).unwrap(), 4.0 * one);
        prop_assert_eq!(one, 2.0 * g * g / delta);
    }

    #[test]
    fn effective_rhs_matches_matrix_oracle(x in state(ModelKind::Effective), g1 in 0.0..3.0f64, g2 in 0.0..3.0f64, hop in 0.0..1.0f64) {
        // Coupling matrix read off the equations: a1-b1 and a2-b2 via G1, G2;
        // a1-a2 via the hop.
        let m = [
            [0.0, hop, g1, 0.0],
            [hop, 0.0, 0.0, g2],
            [g1, 0.0, 0.0, 0.0],
            [0.0, g2, 0.0, 0.0],
        ];
        let snap = CouplingSnapshot { g1, g2, g: 0.0, hop };
        let d = effective_rhs(&x, &snap);
        for (row, coeffs) in m.iter().enumerate() {
            let expected: Complex64 = coeffs.iter().zip(x.as_slice()).map(|(c, z)| Complex64::new(0.0, -*c) * z).sum();
            prop_assert!((d[row] - expected).norm() <= 1e-14 * (1.0 + expected.norm()));
        }
    }

    #[test]
    fn every_rhs_is_linear(p in params(), t in 0.0..20.0f64, fiber in any::<bool>(), a in complex(), b in complex(),
                           xs in prop::collection::vec(complex(), 5), ys in prop::collection::vec(complex(), 5)) {
        for kind in KINDS {
            let model = model_for(kind, &p);
            let n = kind.dim();
            let x = ModeState::from_slice(kind.model(), &xs[..n]).unwrap();
            let y = ModeState::from_slice(kind.model(), &ys[..n]).unwrap();
            let combo = x.scale(a).add_scaled(1.0, &y.scale(b));
            let (fx, fy) = (model.derivative(t, fiber, &x), model.derivative(t, fiber, &y));
            let lhs = model.derivative(t, fiber, &combo);
            let rhs = fx.scale(a).add_scaled(1.0, &fy.scale(b));
            // Magnitude of the terms being summed, so cancellation is allowed for.
            let scale = a.norm() * fx.norm().sqrt() + b.norm() * fy.norm().sqrt();
            prop_assert!(lhs.distance(&rhs) <= 1e-12 * scale.max(1e-300), "{:?}", kind);
        }
    }

    #[test]
    fn norm_flux_matches_damping(p in params(), t in 0.0..20.0f64, fiber in any::<bool>(), xs in prop::collection::vec(complex(), 5)) {
        for kind in KINDS {
            let model = model_for(kind, &p);
            let x = ModeState::from_slice(kind.model(), &xs[..kind.dim()]).unwrap();
            let d = model.derivative(t, fiber, &x);
            let flux = 2.0 * x.inner(&d).re;
            let loss: f64 = kind.mode_rates(&p).iter().zip(x.occupations()).map(|(r, n)| r * n).sum();
            // Scale by the largest |x|·|dx| product that could cancel.
            let scale = x.norm().sqrt() * d.norm().sqrt();
            prop_assert!(rel_close(flux, -loss, scale), "{:?}: {} vs {}", kind, flux, -loss);
        }
    }

    #[test]
    fn effective_coupling_matrix_is_real_symmetric(p in params(), t in 0.0..20.0f64, fiber in any::<bool>()) {
        let model = model_for(RhsKind::EffectiveLossless, &p);
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for col in 0..4 {
            let mut e = ModeState::zeros(ModelKind::Effective);
            e[col] = Complex64::new(1.0, 0.0);
            // f(e) = -i M e, so M e = i f(e).
            let column = model.derivative(t, fiber, &e).scale(Complex64::new(0.0, 1.0));
            for row in 0..4 {
                m[row][col] = column[row];
            }
        }
        for r in 0..4 {
            for c in 0..4 {
                prop_assert_eq!(m[r][c].im, 0.0);
                prop_assert_eq!(m[r][c], m[c][r]);
            }
        }
    }

    #[test]
    fn zero_rates_dissipative_equals_lossless(x in state(ModelKind::Effective), g1 in 0.0..3.0f64, g2 in 0.0..3.0f64, hop in 0.0..1.0f64) {
        let snap = CouplingSnapshot { g1, g2, g: 1.0, hop };
        prop_assert_eq!(dissipative_rhs(&x, &snap, &SystemParams::default()), effective_rhs(&x, &snap));
    }

    #[test]
    fn validate_is_idempotent(p in params(), t1 in 0.0..5.0f64, gap in -1.0..8.0f64) {
        let p = SystemParams { t1, t2: t1 + gap, ..p };
        match p.clone().validate() {
            Ok(v) => prop_assert_eq!(v.clone().into_inner().validate().unwrap(), v),
            Err(e) => prop_assert_eq!(p.validate().unwrap_err().param_name(), e.param_name()),
        }
    }

    #[test]
    fn config_round_trips(p in params(), full in any::<bool>(), dissipative in any::<bool>(),
                          dt in 1e-4..1e-2f64, stride in 1usize..50) {
        let file = ConfigFile {
            g_peak: Some(p.g_peak),
            delta: Some(p.delta),
            g_fiber: Some(p.g_fiber),
            width: Some(p.width),
            kappa1: Some(p.kappa1),
            gamma2: Some(p.gamma2),
            omega_c: p.omega_c,
            model: Some(if full { ModelKind::Full } else { ModelKind::Effective }),
            dissipative: Some(dissipative),
            dt: Some(dt),
            sample_stride: Some(stride),
            ..Default::default()
        };
        let cfg = file.into_run_config().unwrap();
        let back = parse_config(&cfg.to_json()).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn csv_recomputes_printed_eta(g_peak in 1.5..3.5f64, delta in 6.0..16.0f64, full in any::<bool>()) {
        let model = if full { ModelKind::Full } else { ModelKind::Effective };
        let p = SystemParams { g_peak, delta, model, ..Default::default() }.validate().unwrap();
        let kind = RhsKind::new(model, false);
        let traj = integrate(kind, &p, &ModeState::seed(model), &IntegratorConfig::default()).unwrap();
        let eta = transfer_efficiency(&traj).unwrap();
        let printed: f64 = format!("{eta:.12e}").parse().unwrap();
        let from_csv = efficiency_from_csv(&trajectory_csv(&traj)).unwrap();
        prop_assert!((from_csv - printed).abs() < 1e-9);
    }
}
