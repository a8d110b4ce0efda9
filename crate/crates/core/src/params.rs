//! Model constants in natural units: every rate is measured in units of the
//! base fiber coupling g0 and every time in units of 1/g0.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Detuning below `REGIME_RATIO * g_fiber` is flagged: the fiber mode can no
/// longer be treated as adiabatically eliminated.
pub const REGIME_RATIO: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Four modes (a1, a2, b1, b2) with the fiber eliminated.
    Effective,
    /// Five modes, the fiber mode c kept explicitly.
    Full,
}

impl ModelKind {
    pub fn dim(self) -> usize {
        match self {
            ModelKind::Effective => 4,
            ModelKind::Full => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemParams {
    /// Peak optomechanical coupling G0.
    pub g_peak: f64,
    /// Detuning Δ; the cavity drives sit at Δ1 = Δ2 = -Δ - ω_c.
    pub delta: f64,
    /// Cavity-fiber coupling while the fiber is switched on.
    pub g_fiber: f64,
    /// Center of the first optomechanical pulse.
    pub t1: f64,
    /// Center of the second optomechanical pulse.
    pub t2: f64,
    /// Gaussian pulse width s.
    pub width: f64,
    /// Fiber switch-off time.
    pub t_off: f64,
    pub t_final: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Mechanical frequency, full model only.
    pub omega_m: f64,
    /// Fiber-mode frequency, full model only. `None` resolves to the
    /// resonant value, see [`SystemParams::resolved_omega_c`].
    pub omega_c: Option<f64>,
    pub model: ModelKind,
}

impl Default for SystemParams {
    /// The reference transfer scenario: G0 = 2.5, Δ = 10.5, pulses at 1 and
    /// 10 with width 0.25, fiber off at 9, lossless, run to t = 20.
    fn default() -> Self {
        SystemParams {
            g_peak: 2.5,
            delta: 10.5,
            g_fiber: 1.0,
            t1: 1.0,
            t2: 10.0,
            width: 0.25,
            t_off: 9.0,
            t_final: 20.0,
            kappa1: 0.0,
            kappa2: 0.0,
            gamma1: 0.0,
            gamma2: 0.0,
            omega_m: 1.0,
            omega_c: None,
            model: ModelKind::Effective,
        }
    }
}

impl SystemParams {
    pub fn with_rates(mut self, rate: f64) -> Self {
        self.kappa1 = rate;
        self.kappa2 = rate;
        self.gamma1 = rate;
        self.gamma2 = rate;
        self
    }

    /// Fiber-mode frequency used by the full model.
    ///
    /// When unset, ω_c is placed so that the bare cavity frequency Δ + ω_c,
    /// raised by the mean fiber-induced shift g²/Δ, matches ω_m. This keeps
    /// the optomechanical beam-splitter exchange resonant.
    pub fn resolved_omega_c(&self) -> f64 {
        self.omega_c
            .unwrap_or(self.omega_m - self.delta - self.g_fiber * self.g_fiber / self.delta)
    }

    /// Cavity drive detuning Δ1 = Δ2 = -Δ - ω_c.
    pub fn cavity_detuning(&self) -> f64 {
        -self.delta - self.resolved_omega_c()
    }

    pub fn rates(&self) -> [f64; 4] {
        [self.kappa1, self.kappa2, self.gamma1, self.gamma2]
    }

    pub fn has_damping(&self) -> bool {
        self.rates().iter().any(|&r| r != 0.0)
    }

    /// Checks every invariant in a fixed order and reports the first one
    /// violated.
    pub fn validate(self) -> Result<ValidParams> {
        let finite: [(&'static str, f64); 13] = [
            ("G0", self.g_peak),
            ("delta", self.delta),
            ("g_fiber", self.g_fiber),
            ("t1", self.t1),
            ("t2", self.t2),
            ("s", self.width),
            ("t_off", self.t_off),
            ("t_final", self.t_final),
            ("kappa1", self.kappa1),
            ("kappa2", self.kappa2),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("omega_m", self.omega_m),
        ];
        for (name, value) in finite {
            if !value.is_finite() {
                return Err(Error::invalid(name, format!("{value} is not finite")));
            }
        }
        if let Some(wc) = self.omega_c {
            if !wc.is_finite() {
                return Err(Error::invalid("omega_c", format!("{wc} is not finite")));
            }
        }
        if self.width <= 0.0 {
            return Err(Error::invalid(
                "s",
                format!("width must be > 0, got {}", self.width),
            ));
        }
        if self.t_final <= 0.0 {
            return Err(Error::invalid(
                "t_final",
                format!("must be > 0, got {}", self.t_final),
            ));
        }
        if self.g_fiber < 0.0 {
            return Err(Error::invalid(
                "g_fiber",
                format!("must be >= 0, got {}", self.g_fiber),
            ));
        }
        if self.g_peak < 0.0 {
            return Err(Error::invalid(
                "G0",
                format!("must be >= 0, got {}", self.g_peak),
            ));
        }
        if self.delta <= 0.0 {
            return Err(Error::invalid(
                "delta",
                format!("must be > 0, got {}", self.delta),
            ));
        }
        let rate_names = ["kappa1", "kappa2", "gamma1", "gamma2"];
        for (name, rate) in rate_names.into_iter().zip(self.rates()) {
            if rate < 0.0 {
                return Err(Error::invalid(name, format!("must be >= 0, got {rate}")));
            }
        }
        if self.t1 >= self.t2 {
            return Err(Error::invalid(
                "t1",
                format!("pulse order needs t1 < t2, got {} >= {}", self.t1, self.t2),
            ));
        }
        if self.t2 > self.t_final {
            return Err(Error::invalid(
                "t2",
                format!("needs t2 <= t_final, got {} > {}", self.t2, self.t_final),
            ));
        }
        let regime_warning = self.delta < REGIME_RATIO * self.g_fiber;
        Ok(ValidParams {
            params: self,
            regime_warning,
        })
    }
}

/// Parameters that passed [`SystemParams::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidParams {
    params: SystemParams,
    regime_warning: bool,
}

impl ValidParams {
    /// True when Δ < 5·g0, outside the large-detuning regime the effective
    /// model assumes. Runs still proceed.
    pub fn regime_warning(&self) -> bool {
        self.regime_warning
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn into_inner(self) -> SystemParams {
        self.params
    }
}

impl Deref for ValidParams {
    type Target = SystemParams;

    fn deref(&self) -> &SystemParams {
        &self.params
    }
}
