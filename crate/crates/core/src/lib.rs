//! Mean-field simulation of quantum state transfer between two distant
//! mechanical oscillators. Each oscillator couples to its own optical cavity
//! through a Gaussian-pulsed optomechanical interaction, and the cavities are
//! linked by an optical fiber that is switched off partway through the
//! protocol.
//!
//! Two models are provided: an effective four-mode model where the fiber is
//! adiabatically eliminated into a direct cavity-cavity hop 2g²/Δ, and the
//! full five-mode model with the fiber mode kept. All quantities are in
//! natural units with the base fiber coupling g0 = 1.

pub mod analysis;
pub mod cli;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod integrator;
pub mod oracles;
pub mod output;
pub mod params;
pub mod pulses;
pub mod state;

pub use analysis::{sweep_1d, transfer_efficiency, SweepParam, SweepResult};
pub use config::{parse_config, RunConfig};
pub use dynamics::{Model, RhsKind};
pub use error::{Error, Result};
pub use integrator::{integrate, IntegratorConfig};
pub use params::{ModelKind, SystemParams, ValidParams};
pub use pulses::CouplingSnapshot;
pub use state::{ModeState, Trajectory};
