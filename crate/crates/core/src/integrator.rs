//! Fixed-step classical Runge-Kutta integration of the mode equations.
//!
//! Grid points are `t_k = k * dt` for `k < n` and `t_n = t_final`, so the
//! last step is shortened when `t_final` is not a multiple of `dt`. The
//! fiber switch time is snapped to the nearest grid point `k_off * dt`;
//! steps `k < k_off` run with the fiber on and all later steps with it off,
//! so no stage of a step straddles the discontinuity.

use serde::{Deserialize, Serialize};

use crate::dynamics::{Model, RhsKind};
use crate::error::{Error, Result};
use crate::params::ValidParams;
use crate::state::{ModeState, Trajectory};

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_STRIDE: usize = 10;
pub const MAX_DT: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    /// Record every `sample_stride`-th step. The final point is always kept.
    pub sample_stride: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            dt: DEFAULT_DT,
            sample_stride: DEFAULT_STRIDE,
        }
    }
}

impl IntegratorConfig {
    pub fn new(dt: f64, sample_stride: usize) -> Result<Self> {
        let cfg = IntegratorConfig { dt, sample_stride };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Full check including the `dt <= 0.01` accuracy cap. The integrator
    /// itself only requires a positive finite step.
    pub fn validate(&self) -> Result<()> {
        self.check_runnable()?;
        if self.dt > MAX_DT {
            return Err(Error::invalid(
                "dt",
                format!("must be <= {MAX_DT}, got {}", self.dt),
            ));
        }
        Ok(())
    }

    fn check_runnable(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid(
                "dt",
                format!("must be > 0, got {}", self.dt),
            ));
        }
        if self.sample_stride == 0 {
            return Err(Error::invalid("sample_stride", "must be >= 1"));
        }
        Ok(())
    }
}

/// Uniform time grid with a possibly shortened last step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub dt: f64,
    pub t_final: f64,
    pub steps: usize,
    /// Index of the first step with the fiber switched off.
    pub switch_step: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, t_final: f64, t_off: f64) -> Self {
        let ratio = t_final / dt;
        let steps = (ratio - 1e-9).ceil().max(0.0) as usize;
        let switch_step = (t_off / dt).round().max(0.0) as usize;
        TimeGrid {
            dt,
            t_final,
            steps,
            switch_step,
        }
    }

    pub fn time(&self, k: usize) -> f64 {
        if k >= self.steps {
            self.t_final
        } else {
            k as f64 * self.dt
        }
    }

    /// Fiber state on step `k` (from `t_k` to `t_{k+1}`), and also the value
    /// reported at grid point `t_k`.
    pub fn fiber_on(&self, k: usize) -> bool {
        k < self.switch_step
    }

    /// Grid indices that get recorded for a given stride.
    pub fn sample_indices(&self, stride: usize) -> impl Iterator<Item = usize> + '_ {
        let steps = self.steps;
        (0..=steps).filter(move |&k| k % stride == 0 || k == steps)
    }
}

/// One classical fourth-order Runge-Kutta step of `dy/dt = rhs(t, y)`.
pub fn rk4_step<F>(rhs: F, state: &ModeState, t: f64, dt: f64) -> Result<ModeState>
where
    F: Fn(f64, &ModeState) -> ModeState,
{
    let half = 0.5 * dt;
    let k1 = rhs(t, state);
    let k2 = rhs(t + half, &state.add_scaled(half, &k1));
    let k3 = rhs(t + half, &state.add_scaled(half, &k2));
    let k4 = rhs(t + dt, &state.add_scaled(dt, &k3));

    let sixth = dt / 6.0;
    let next = state
        .add_scaled(sixth, &k1)
        .add_scaled(2.0 * sixth, &k2)
        .add_scaled(2.0 * sixth, &k3)
        .add_scaled(sixth, &k4);
    if !next.is_finite() {
        return Err(Error::Numeric { t: t + dt });
    }
    Ok(next)
}

/// Integrates `kind` from `state0` at t = 0 to `params.t_final`.
pub fn integrate(
    kind: RhsKind,
    params: &ValidParams,
    state0: &ModeState,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    if kind.model() != params.model {
        return Err(Error::invalid(
            "model",
            format!("rhs kind {kind:?} does not match model {:?}", params.model),
        ));
    }
    integrate_model(&Model::new(kind, params), state0, cfg)
}

pub fn integrate_model(
    model: &Model,
    state0: &ModeState,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.check_runnable()?;
    model.check_state(state0)?;
    if !state0.is_finite() {
        return Err(Error::Numeric { t: 0.0 });
    }

    let params = model.params();
    let grid = TimeGrid::new(cfg.dt, params.t_final, params.t_off);
    let capacity = grid.steps / cfg.sample_stride + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    times.push(0.0);
    states.push(*state0);

    let mut state = *state0;
    for k in 0..grid.steps {
        let t = grid.time(k);
        let h = grid.time(k + 1) - t;
        let fiber_on = grid.fiber_on(k);
        state = rk4_step(|tt, s| model.derivative(tt, fiber_on, s), &state, t, h)?;
        let next = k + 1;
        if next % cfg.sample_stride == 0 || next == grid.steps {
            times.push(grid.time(next));
            states.push(state);
        }
    }

    Ok(Trajectory {
        times,
        states,
        params: params.clone(),
        kind: model.kind(),
    })
}

/// Step-halving error estimate: the largest Euclidean distance between the
/// runs at `dt` and `dt / 2`, taken over the coarse grid points.
pub fn convergence_check(model: &Model, state0: &ModeState, dt: f64) -> Result<f64> {
    let coarse = integrate_model(
        model,
        state0,
        &IntegratorConfig {
            dt,
            sample_stride: 1,
        },
    )?;
    let fine = integrate_model(
        model,
        state0,
        &IntegratorConfig {
            dt: 0.5 * dt,
            sample_stride: 1,
        },
    )?;

    let mut worst = 0.0f64;
    let mut j = 0;
    for (t, s) in coarse.times.iter().zip(&coarse.states) {
        while j < fine.times.len() && fine.times[j] < *t - 1e-12 * t.abs().max(1.0) {
            j += 1;
        }
        if j < fine.times.len() && (fine.times[j] - t).abs() <= 1e-12 * t.abs().max(1.0) {
            worst = worst.max(s.distance(&fine.states[j]));
        }
    }
    Ok(worst)
}
