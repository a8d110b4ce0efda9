//! Observables on trajectories and one-dimensional parameter sweeps.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{Model, RhsKind};
use crate::error::{Error, Result};
use crate::integrator::{integrate_model, IntegratorConfig};
use crate::params::SystemParams;
use crate::pulses::{hop_rate, HopRule};
use crate::state::{ModeState, Trajectory, B1, B2};

pub fn occupations(state: &ModeState) -> Vec<f64> {
    state.occupations()
}

/// η = |b2(t_final)|² / |b1(0)|².
pub fn transfer_efficiency(traj: &Trajectory) -> Result<f64> {
    let (Some(first), Some(last)) = (traj.initial(), traj.last()) else {
        return Err(Error::ZeroInitialExcitation);
    };
    let seed = first[B1].norm_sqr();
    if seed == 0.0 {
        return Err(Error::ZeroInitialExcitation);
    }
    Ok(last[B2].norm_sqr() / seed)
}

/// Largest deviation of the total occupation from `norm(0) * exp(-r t)`.
/// Only defined when every mode (fiber included) damps at the same rate r.
pub fn norm_decay_residual(traj: &Trajectory) -> Result<f64> {
    let rates = traj.kind.mode_rates(&traj.params);
    let r = rates[0];
    if rates.iter().any(|&x| x != r) {
        return Err(Error::UnequalRates(rates));
    }
    let Some(first) = traj.initial() else {
        return Ok(0.0);
    };
    let n0 = first.norm();
    Ok(traj
        .times
        .iter()
        .zip(&traj.states)
        .map(|(t, s)| (s.norm() - n0 * (-r * t).exp()).abs())
        .fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepParam {
    PeakCoupling,
    Detuning,
    Width,
    SwitchOff,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::PeakCoupling => "G0",
            SweepParam::Detuning => "delta",
            SweepParam::Width => "s",
            SweepParam::SwitchOff => "t_off",
        }
    }

    pub fn apply(self, params: &mut SystemParams, value: f64) {
        match self {
            SweepParam::PeakCoupling => params.g_peak = value,
            SweepParam::Detuning => params.delta = value,
            SweepParam::Width => params.width = value,
            SweepParam::SwitchOff => params.t_off = value,
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G0" => Ok(SweepParam::PeakCoupling),
            "delta" => Ok(SweepParam::Detuning),
            "s" => Ok(SweepParam::Width),
            "t_off" => Ok(SweepParam::SwitchOff),
            other => Err(Error::Usage(format!(
                "unknown sweep parameter `{other}` (expected G0, delta, s or t_off)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub param: SweepParam,
    pub grid: Vec<f64>,
    pub eta: Vec<f64>,
    /// Smallest index attaining the maximal η.
    pub best_index: usize,
}

impl SweepResult {
    pub fn best_value(&self) -> f64 {
        self.grid[self.best_index]
    }

    pub fn best_eta(&self) -> f64 {
        self.eta[self.best_index]
    }
}

/// `steps` equally spaced values from `lo` to `hi`, both included.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let span = hi - lo;
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + span * (i as f64 / last)
            }
        })
        .collect()
}

pub fn sweep_1d(
    param: SweepParam,
    lo: f64,
    hi: f64,
    steps: usize,
    base: &SystemParams,
    kind: RhsKind,
    cfg: &IntegratorConfig,
) -> Result<SweepResult> {
    sweep_1d_with_hop(param, lo, hi, steps, base, kind, cfg, hop_rate)
}

/// [`sweep_1d`] with a substitute hop rule.
#[allow(clippy::too_many_arguments)]
pub fn sweep_1d_with_hop(
    param: SweepParam,
    lo: f64,
    hi: f64,
    steps: usize,
    base: &SystemParams,
    kind: RhsKind,
    cfg: &IntegratorConfig,
    hop: HopRule,
) -> Result<SweepResult> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Usage(format!(
            "sweep needs min < max, got [{lo}, {hi}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Usage(format!(
            "sweep needs at least 2 steps, got {steps}"
        )));
    }
    let grid = linear_grid(lo, hi, steps);

    // Points are independent; collect() keeps grid order.
    let outcomes: Vec<Result<f64>> = grid
        .par_iter()
        .map(|&value| {
            sweep_point(param, value, base, kind, cfg, hop).map_err(|e| Error::Sweep {
                param: param.name().to_string(),
                value,
                source: Box::new(e),
            })
        })
        .collect();
    let eta = outcomes.into_iter().collect::<Result<Vec<f64>>>()?;

    let mut best_index = 0;
    for (i, &e) in eta.iter().enumerate() {
        if e > eta[best_index] {
            best_index = i;
        }
    }
    Ok(SweepResult {
        param,
        grid,
        eta,
        best_index,
    })
}

fn sweep_point(
    param: SweepParam,
    value: f64,
    base: &SystemParams,
    kind: RhsKind,
    cfg: &IntegratorConfig,
    hop: HopRule,
) -> Result<f64> {
    let mut params = base.clone();
    param.apply(&mut params, value);
    let params = params.validate()?;
    let model = Model::new(kind, &params).with_hop(hop);
    let traj = integrate_model(&model, &ModeState::seed(kind.model()), cfg)?;
    transfer_efficiency(&traj)
}
