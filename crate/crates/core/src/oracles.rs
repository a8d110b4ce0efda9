//! Self-checks run by the `validate` command. Each check compares the
//! integrator against a closed form or a known physical law.

use std::f64::consts::PI;

use crate::analysis::{norm_decay_residual, sweep_1d_with_hop, transfer_efficiency, SweepParam};
use crate::dynamics::{Model, RhsKind};
use crate::error::Result;
use crate::integrator::{convergence_check, integrate_model, IntegratorConfig, DEFAULT_DT};
use crate::params::{ModelKind, SystemParams, ValidParams};
use crate::pulses::{hop_rate, pulse_area, HopRule};
use crate::state::{ModeState, A1, B1, C};

pub const RABI_TOLERANCE: f64 = 1e-6;
pub const NORM_DRIFT_TOLERANCE: f64 = 1e-8;
pub const DECAY_TOLERANCE: f64 = 1e-6;
pub const CONVERGENCE_TOLERANCE: f64 = 1e-8;
/// Accepted range for the error reduction when dt is halved (ideal 16).
pub const ORDER_FACTOR_RANGE: (f64, f64) = (12.0, 20.0);
pub const AREA_LAW_TOLERANCE: f64 = 0.05;
pub const MIN_REFERENCE_EFFICIENCY: f64 = 0.9;

type Check = fn(&OracleSuite) -> Result<(bool, String)>;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Two-mode Rabi scenario: G1 held at 1 by an extremely wide pulse, fiber
/// off, run to t = π. Starting from b1 = 1 the exact occupations are
/// n_b1 = cos² t and n_a1 = sin² t.
pub fn rabi_params() -> SystemParams {
    SystemParams {
        g_peak: 1.0,
        width: 1e6,
        t1: 0.0,
        t2: PI,
        t_final: PI,
        g_fiber: 0.0,
        ..Default::default()
    }
}

/// Largest deviation of the Rabi occupations from cos²/sin².
pub fn rabi_error(model: &Model, cfg: &IntegratorConfig) -> Result<f64> {
    let traj = integrate_model(model, &ModeState::seed(ModelKind::Effective), cfg)?;
    Ok(traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(t, s)| {
            let eb = (s[B1].norm_sqr() - t.cos().powi(2)).abs();
            let ea = (s[A1].norm_sqr() - t.sin().powi(2)).abs();
            eb.max(ea)
        })
        .fold(0.0, f64::max))
}

/// Largest |norm(t) - norm(0)| over the samples of a lossless run.
pub fn norm_drift(model: &Model, cfg: &IntegratorConfig) -> Result<f64> {
    let state0 = ModeState::seed(model.kind().model());
    let traj = integrate_model(model, &state0, cfg)?;
    let n0 = state0.norm();
    Ok(traj
        .norms()
        .iter()
        .map(|n| (n - n0).abs())
        .fold(0.0, f64::max))
}

/// Peak fiber-mode occupation of a full-model run.
pub fn peak_fiber_occupation(model: &Model, cfg: &IntegratorConfig) -> Result<f64> {
    let traj = integrate_model(model, &ModeState::seed(ModelKind::Full), cfg)?;
    Ok(traj.mode_occupation(C).into_iter().fold(0.0, f64::max))
}

/// Ratio of step-halving estimates at `dt` and `dt / 2`.
pub fn order_factor(model: &Model, state0: &ModeState, dt: f64) -> Result<f64> {
    let coarse = convergence_check(model, state0, dt)?;
    let fine = convergence_check(model, state0, 0.5 * dt)?;
    Ok(coarse / fine)
}

fn valid(p: SystemParams) -> ValidParams {
    p.validate().expect("built-in scenario is valid")
}

/// Oracle suite with an adjustable step and hop rule.
#[derive(Clone, Debug)]
pub struct OracleSuite {
    pub dt: f64,
    pub hop: HopRule,
}

impl Default for OracleSuite {
    fn default() -> Self {
        OracleSuite {
            dt: DEFAULT_DT,
            hop: hop_rate,
        }
    }
}

impl OracleSuite {
    fn cfg(&self, sample_stride: usize) -> IntegratorConfig {
        IntegratorConfig {
            dt: self.dt,
            sample_stride,
        }
    }

    fn model(&self, kind: RhsKind, params: SystemParams) -> Model {
        Model::new(kind, &valid(params)).with_hop(self.hop)
    }

    pub fn run(&self) -> Vec<CheckOutcome> {
        let checks: [(&'static str, Check); 9] = [
            ("rabi-oracle", Self::check_rabi),
            ("norm-conservation-effective", |s| {
                s.check_norm(ModelKind::Effective)
            }),
            ("norm-conservation-full", |s| s.check_norm(ModelKind::Full)),
            ("equal-rate-decay", Self::check_decay),
            ("step-halving-estimate", Self::check_convergence),
            ("convergence-order", Self::check_order),
            ("reference-transfer", Self::check_reference),
            ("pulse-area-law", Self::check_g0_sweep),
            ("delta-sweep-law", Self::check_delta_sweep),
        ];
        checks
            .into_iter()
            .map(|(name, check)| match check(self) {
                Ok((passed, detail)) => CheckOutcome {
                    name,
                    passed,
                    detail,
                },
                Err(e) => CheckOutcome {
                    name,
                    passed: false,
                    detail: format!("error: {e}"),
                },
            })
            .collect()
    }

    fn check_rabi(&self) -> Result<(bool, String)> {
        let model = self.model(RhsKind::EffectiveLossless, rabi_params());
        let err = rabi_error(&model, &self.cfg(1))?;
        Ok((
            err < RABI_TOLERANCE,
            format!("max occupation error {err:.3e}"),
        ))
    }

    fn check_norm(&self, model_kind: ModelKind) -> Result<(bool, String)> {
        let params = SystemParams {
            model: model_kind,
            ..Default::default()
        };
        let model = self.model(RhsKind::new(model_kind, false), params);
        let drift = norm_drift(&model, &self.cfg(1))?;
        Ok((
            drift < NORM_DRIFT_TOLERANCE,
            format!("max drift {drift:.3e}"),
        ))
    }

    fn check_decay(&self) -> Result<(bool, String)> {
        let model = self.model(
            RhsKind::EffectiveDissipative,
            SystemParams::default().with_rates(0.01),
        );
        let traj = integrate_model(&model, &ModeState::seed(ModelKind::Effective), &self.cfg(1))?;
        let residual = norm_decay_residual(&traj)?;
        Ok((
            residual < DECAY_TOLERANCE,
            format!("max residual {residual:.3e}"),
        ))
    }

    fn check_convergence(&self) -> Result<(bool, String)> {
        let model = self.model(RhsKind::EffectiveLossless, rabi_params());
        let est = convergence_check(&model, &ModeState::seed(ModelKind::Effective), self.dt)?;
        Ok((est < CONVERGENCE_TOLERANCE, format!("estimate {est:.3e}")))
    }

    /// Measured at 10·dt, where the truncation error is well above roundoff.
    fn check_order(&self) -> Result<(bool, String)> {
        let base = 10.0 * self.dt;
        let seed = ModeState::seed(ModelKind::Effective);
        let rabi = self.model(RhsKind::EffectiveLossless, rabi_params());
        let smooth = self.model(
            RhsKind::EffectiveLossless,
            SystemParams {
                t_off: 25.0,
                ..Default::default()
            },
        );
        let (lo, hi) = ORDER_FACTOR_RANGE;
        let f_rabi = order_factor(&rabi, &seed, base)?;
        let f_smooth = order_factor(&smooth, &seed, base)?;
        let ok = [f_rabi, f_smooth].iter().all(|f| (lo..=hi).contains(f));
        Ok((
            ok,
            format!("factors {f_rabi:.2} (rabi), {f_smooth:.2} (pulsed)"),
        ))
    }

    fn check_reference(&self) -> Result<(bool, String)> {
        let model = self.model(RhsKind::EffectiveLossless, SystemParams::default());
        let traj = integrate_model(
            &model,
            &ModeState::seed(ModelKind::Effective),
            &self.cfg(10),
        )?;
        let eta = transfer_efficiency(&traj)?;
        Ok((eta >= MIN_REFERENCE_EFFICIENCY, format!("eta {eta:.9}")))
    }

    fn check_g0_sweep(&self) -> Result<(bool, String)> {
        let base = SystemParams::default();
        let r = sweep_1d_with_hop(
            SweepParam::PeakCoupling,
            0.5,
            5.0,
            46,
            &base,
            RhsKind::EffectiveLossless,
            &self.cfg(1000),
            self.hop,
        )?;
        let best = r.best_value();
        let area_err = (pulse_area(best, base.width) - PI / 2.0).abs() / (PI / 2.0);
        let ok = (best - 2.5).abs() <= 0.25 && area_err < AREA_LAW_TOLERANCE;
        Ok((ok, format!("best G0 {best}, area error {area_err:.4}")))
    }

    fn check_delta_sweep(&self) -> Result<(bool, String)> {
        let r = sweep_1d_with_hop(
            SweepParam::Detuning,
            5.0,
            20.0,
            61,
            &SystemParams::default(),
            RhsKind::EffectiveLossless,
            &self.cfg(1000),
            self.hop,
        )?;
        let best = r.best_value();
        Ok(((best - 10.5).abs() <= 1.0, format!("best delta {best}")))
    }
}
