//! Tunneling through delta and double-delta potentials under the fractional
//! Schrödinger equation with a Riesz derivative of order `α ∈ (1, 2]`.
//!
//! Module map:
//!
//! * [`numcore`]: gamma, digamma, `cot(kπ/α)`, Mittag-Leffler.
//! * [`pvquad`]: principal-value quadrature with oscillatory tails.
//! * [`kernels`]: the kernels `J_α`, `Ξ_α`, `Φ_α` and the Fox H-function series.
//! * [`scattering`]: reflection/transmission for one and two delta centers.
//! * [`wavefield`]: position-space wave functions and the jump condition.
//! * [`verify`]: the invariant suite behind `fractunnel verify`.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod kernels;
pub mod numcore;
pub mod pvquad;
pub mod scattering;
pub mod verify;
pub mod wavefield;

pub use kernels::{FoxH, FoxH2132Params, KernelError, KernelEvalPolicy};
pub use numcore::GammaValue;
pub use pvquad::{QuadResult, TailSpec};
pub use scattering::{
    Amplitudes, DoubleDeltaInternals, PhysicalParams, ScatteringError, ScatteringScales, ZeroEnergyExpansion,
};
pub use wavefield::{WaveMode, WaveSolution};
