use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::dynamics::RhsKind;
use crate::error::{Error, Result};
use crate::params::{ModelKind, SystemParams};

/// Index of cavity mode 1.
pub const A1: usize = 0;
pub const A2: usize = 1;
/// Index of mechanical mode 1.
pub const B1: usize = 2;
pub const B2: usize = 3;
/// Index of the fiber mode (full model only).
pub const C: usize = 4;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Mean complex amplitudes of the dynamical modes, ordered
/// (a1, a2, b1, b2) for the effective model and (a1, a2, b1, b2, c) for the
/// full model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeState {
    amps: [Complex64; 5],
    model: ModelKind,
}

impl ModeState {
    pub fn zeros(model: ModelKind) -> Self {
        ModeState {
            amps: [ZERO; 5],
            model,
        }
    }

    pub fn from_slice(model: ModelKind, amps: &[Complex64]) -> Result<Self> {
        if amps.len() != model.dim() {
            return Err(Error::DimensionMismatch {
                expected: model.dim(),
                found: amps.len(),
            });
        }
        let mut state = ModeState::zeros(model);
        state.amps[..amps.len()].copy_from_slice(amps);
        Ok(state)
    }

    /// Single excitation on mechanical mode 1: b1 = 1, everything else 0.
    pub fn seed(model: ModelKind) -> Self {
        let mut state = ModeState::zeros(model);
        state.amps[B1] = Complex64::new(1.0, 0.0);
        state
    }

    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.amps[..self.dim()]
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        let n = self.dim();
        &mut self.amps[..n]
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice()
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Total occupation ∑|amplitude|².
    pub fn norm(&self) -> f64 {
        self.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Per-mode occupation |amplitude|², in state order.
    pub fn occupations(&self) -> Vec<f64> {
        self.as_slice().iter().map(|z| z.norm_sqr()).collect()
    }

    /// Hermitian inner product ⟨self, other⟩ = ∑ conj(self_i)·other_i.
    pub fn inner(&self, other: &ModeState) -> Complex64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self + scale * other`, componentwise.
    pub fn add_scaled(&self, scale: f64, other: &ModeState) -> ModeState {
        let mut out = *self;
        for (o, x) in out.as_mut_slice().iter_mut().zip(other.as_slice()) {
            *o += x * scale;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> ModeState {
        let mut out = *self;
        out.as_mut_slice().iter_mut().for_each(|z| *z *= factor);
        out
    }

    /// Euclidean distance between two states of the same model.
    pub fn distance(&self, other: &ModeState) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Index<usize> for ModeState {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for ModeState {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.as_mut_slice()[i]
    }
}

/// Time-ordered samples of one integration run.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ModeState>,
    pub params: SystemParams,
    pub kind: RhsKind,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn initial(&self) -> Option<&ModeState> {
        self.states.first()
    }

    pub fn last(&self) -> Option<&ModeState> {
        self.states.last()
    }

    /// Occupation of one mode across all samples.
    pub fn mode_occupation(&self, mode: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[mode].norm_sqr()).collect()
    }

    pub fn norms(&self) -> Vec<f64> {
        self.states.iter().map(ModeState::norm).collect()
    }
}
