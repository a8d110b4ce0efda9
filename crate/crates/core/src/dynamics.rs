//! Right-hand sides of the mean-field equations of motion.
//!
//! Every variant is linear in the state, `d/dt x = (-i M(t) - D) x`, with a
//! real symmetric coupling matrix `M(t)` and a diagonal damping `D` of half
//! the energy-damping rates. Input-noise terms have zero mean and are absent.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{ModelKind, SystemParams, ValidParams};
use crate::pulses::{coupling_snapshot, hop_rate, CouplingSnapshot, HopRule};
use crate::state::{ModeState, A1, A2, B1, B2, C};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RhsKind {
    EffectiveLossless,
    EffectiveDissipative,
    FullLossless,
    FullDissipative,
}

impl RhsKind {
    pub fn new(model: ModelKind, dissipative: bool) -> Self {
        match (model, dissipative) {
            (ModelKind::Effective, false) => RhsKind::EffectiveLossless,
            (ModelKind::Effective, true) => RhsKind::EffectiveDissipative,
            (ModelKind::Full, false) => RhsKind::FullLossless,
            (ModelKind::Full, true) => RhsKind::FullDissipative,
        }
    }

    pub fn model(self) -> ModelKind {
        match self {
            RhsKind::EffectiveLossless | RhsKind::EffectiveDissipative => ModelKind::Effective,
            RhsKind::FullLossless | RhsKind::FullDissipative => ModelKind::Full,
        }
    }

    pub fn is_dissipative(self) -> bool {
        matches!(
            self,
            RhsKind::EffectiveDissipative | RhsKind::FullDissipative
        )
    }

    pub fn dim(self) -> usize {
        self.model().dim()
    }

    /// Energy-damping rate of every mode in state order. Lossless kinds and
    /// the fiber mode have rate zero.
    pub fn mode_rates(self, params: &SystemParams) -> Vec<f64> {
        let mut rates = if self.is_dissipative() {
            params.rates().to_vec()
        } else {
            vec![0.0; 4]
        };
        if self.model() == ModelKind::Full {
            rates.push(0.0);
        }
        rates
    }
}

/// Interaction-only equations of the effective four-mode model:
///
/// ```text
/// da1 = -i G1 b1 - i J a2
/// da2 = -i G2 b2 - i J a1
/// db1 = -i G1 a1
/// db2 = -i G2 a2
/// ```
pub fn effective_rhs(state: &ModeState, snap: &CouplingSnapshot) -> ModeState {
    let mut d = ModeState::zeros(ModelKind::Effective);
    d[A1] = -I * (snap.g1 * state[B1] + snap.hop * state[A2]);
    d[A2] = -I * (snap.g2 * state[B2] + snap.hop * state[A1]);
    d[B1] = -I * snap.g1 * state[A1];
    d[B2] = -I * snap.g2 * state[A2];
    d
}

/// [`effective_rhs`] plus amplitude damping κ_j/2 on the cavities and γ_j/2
/// on the mechanical modes.
pub fn dissipative_rhs(
    state: &ModeState,
    snap: &CouplingSnapshot,
    params: &SystemParams,
) -> ModeState {
    let mut d = effective_rhs(state, snap);
    apply_damping(&mut d, state, params);
    d
}

fn apply_damping(d: &mut ModeState, state: &ModeState, params: &SystemParams) {
    for (mode, rate) in [A1, A2, B1, B2].into_iter().zip(params.rates()) {
        d[mode] -= state[mode] * (0.5 * rate);
    }
}

/// Five-mode equations from the full Hamiltonian, fiber mode kept:
///
/// ```text
/// da1 = i Δ1 a1 - i g c - i G1 b1
/// da2 = i Δ2 a2 - i g c - i G2 b2
/// db1 = -i ω_m b1 - i G1 a1
/// db2 = -i ω_m b2 - i G2 a2
/// dc  = -i ω_c c - i g (a1 + a2)
/// ```
///
/// with Δ1 = Δ2 = -Δ - ω_c. Couplings come from the schedule at `t`.
pub fn full_rhs(state: &ModeState, t: f64, params: &SystemParams) -> ModeState {
    full_rhs_at(state, &coupling_snapshot(t, params), params, false)
}

/// [`full_rhs`] with an explicit snapshot; `damped` adds κ_j/2 and γ_j/2.
/// The fiber mode is never damped.
pub fn full_rhs_at(
    state: &ModeState,
    snap: &CouplingSnapshot,
    params: &SystemParams,
    damped: bool,
) -> ModeState {
    let detuning = params.cavity_detuning();
    let omega_c = params.resolved_omega_c();
    let omega_m = params.omega_m;
    let mut d = ModeState::zeros(ModelKind::Full);
    d[A1] = I * (detuning * state[A1] - snap.g * state[C] - snap.g1 * state[B1]);
    d[A2] = I * (detuning * state[A2] - snap.g * state[C] - snap.g2 * state[B2]);
    d[B1] = -I * (omega_m * state[B1] + snap.g1 * state[A1]);
    d[B2] = -I * (omega_m * state[B2] + snap.g2 * state[A2]);
    d[C] = -I * (omega_c * state[C] + snap.g * (state[A1] + state[A2]));
    if damped {
        apply_damping(&mut d, state, params);
    }
    d
}

/// A fully specified vector field: rhs kind, validated parameters and the
/// rule used for the induced hop.
#[derive(Clone, Debug)]
pub struct Model {
    kind: RhsKind,
    params: SystemParams,
    hop: HopRule,
}

impl Model {
    pub fn new(kind: RhsKind, params: &ValidParams) -> Self {
        Model {
            kind,
            params: params.params().clone(),
            hop: hop_rate,
        }
    }

    /// Replace the hop rule. Used by the oracle suite to check that a wrong
    /// hop is detected.
    pub fn with_hop(mut self, hop: HopRule) -> Self {
        self.hop = hop;
        self
    }

    pub fn kind(&self) -> RhsKind {
        self.kind
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn snapshot(&self, t: f64, fiber_on: bool) -> CouplingSnapshot {
        CouplingSnapshot::with_fiber(t, &self.params, fiber_on, self.hop)
    }

    pub fn check_state(&self, state: &ModeState) -> Result<()> {
        if state.dim() != self.kind.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.kind.dim(),
                found: state.dim(),
            });
        }
        Ok(())
    }

    /// Time derivative at `t` with the fiber state fixed by the caller.
    pub fn derivative(&self, t: f64, fiber_on: bool, state: &ModeState) -> ModeState {
        let snap = self.snapshot(t, fiber_on);
        match self.kind {
            RhsKind::EffectiveLossless => effective_rhs(state, &snap),
            RhsKind::EffectiveDissipative => dissipative_rhs(state, &snap, &self.params),
            RhsKind::FullLossless => full_rhs_at(state, &snap, &self.params, false),
            RhsKind::FullDissipative => full_rhs_at(state, &snap, &self.params, true),
        }
    }
}
