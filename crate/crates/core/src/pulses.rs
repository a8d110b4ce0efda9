//! Time-dependent coupling schedule: two Gaussian optomechanical pulses, a
//! fiber coupling that is switched off abruptly, and the cavity-cavity hop
//! induced by the eliminated fiber mode.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Prefactor of the induced hop `HOP_FACTOR * g² / Δ`.
pub const HOP_FACTOR: f64 = 2.0;

/// Maps (g, Δ) to the cavity-cavity hop rate. Δ is assumed positive.
pub type HopRule = fn(f64, f64) -> f64;

/// `G0 * exp(-(t - tc)² / (2 s²))`.
pub fn gaussian_coupling(t: f64, peak: f64, center: f64, width: f64) -> f64 {
    let x = (t - center) / width;
    peak * (-0.5 * x * x).exp()
}

/// Right-continuous switch: `g0` on `[.., t_off)`, zero from `t_off` on.
pub fn fiber_coupling(t: f64, g0: f64, t_off: f64) -> f64 {
    if t < t_off {
        g0
    } else {
        0.0
    }
}

pub fn effective_hop(g: f64, delta: f64) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::NonPositiveDelta(delta));
    }
    Ok(hop_rate(g, delta))
}

/// Unchecked form of [`effective_hop`] for callers holding validated params.
pub fn hop_rate(g: f64, delta: f64) -> f64 {
    HOP_FACTOR * g * g / delta
}

/// Time integral of a Gaussian pulse over the whole line, `G0 s √(2π)`.
pub fn pulse_area(peak: f64, width: f64) -> f64 {
    peak * width * (2.0 * PI).sqrt()
}

/// Coupling rates at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CouplingSnapshot {
    pub g1: f64,
    pub g2: f64,
    /// Cavity-fiber coupling.
    pub g: f64,
    /// Cavity-cavity hop.
    pub hop: f64,
}

impl CouplingSnapshot {
    /// Snapshot with the fiber state given explicitly rather than read off
    /// `t_off`. The integrator fixes the fiber state per step so that no
    /// stage straddles the switch.
    pub fn with_fiber(t: f64, params: &SystemParams, fiber_on: bool, hop: HopRule) -> Self {
        let g = if fiber_on { params.g_fiber } else { 0.0 };
        CouplingSnapshot {
            g1: gaussian_coupling(t, params.g_peak, params.t1, params.width),
            g2: gaussian_coupling(t, params.g_peak, params.t2, params.width),
            g,
            hop: hop(g, params.delta),
        }
    }
}

pub fn coupling_snapshot(t: f64, params: &SystemParams) -> CouplingSnapshot {
    CouplingSnapshot::with_fiber(t, params, t < params.t_off, hop_rate)
}
