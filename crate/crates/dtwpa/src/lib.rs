//! Design and verification toolkit for a diplexed Josephson traveling-wave
//! parametric amplifier (D-TWPA).
//!
//! The crate covers the full desk-scale workflow for such a device:
//!
//! - [`filtsynth`] — singly- and doubly-terminated Chebyshev ladder synthesis
//!   and assembly of contiguous-band diplexers.
//! - [`rfnet`] — linear frequency-domain network analysis: ABCD cascades,
//!   n-port S-parameters by nodal admittance analysis, crossover location,
//!   and Bloch dispersion of periodic cells.
//! - [`twpa`] — construction of the nonlinear Josephson transmission line
//!   with periodic phase-matching resonators, and composition with the
//!   diplexers into the four-port device.
//! - [`transim`] — fixed-step trapezoidal transient simulation with per-step
//!   Newton iteration, windowed-DFT tone extraction, pumped gain profiles
//!   and compression sweeps.
//! - [`noisecal`] — shot-noise tunnel junction input-noise modeling,
//!   chain-noise fits, amplifier noise decomposition, and input-line
//!   attenuation calibration.
//! - [`io`] — JSON document formats, CSV tables, Touchstone output and the
//!   raw time-series dump.
//!
//! All numerics are generic over the scalar type through the [`Scalar`]
//! trait; `f64` is the working precision used by the CLI and the concrete
//! aliases below.

pub mod consts;
pub mod error;
pub mod filtsynth;
pub mod io;
pub mod linalg;
pub mod noisecal;
pub mod rfnet;
pub mod scalar;
pub mod transim;
pub mod twpa;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Working precision of the CLI and the document formats.
pub type Real = f64;

pub type FilterSpec = filtsynth::FilterSpec<Real>;
pub type LadderElements = filtsynth::LadderElements<Real>;
pub type PrototypeCoefficients = filtsynth::PrototypeCoefficients<Real>;
pub type Netlist = rfnet::Netlist<Real>;
pub type SParamSweep = rfnet::SParamSweep<Real>;
pub type Abcd = rfnet::Abcd<Real>;
pub type TwpaDesign = twpa::TwpaDesign<Real>;
pub type NonlinearNetlist = twpa::NonlinearNetlist<Real>;
pub type DriveConfig = transim::DriveConfig<Real>;
pub type SimConfig = transim::SimConfig<Real>;
pub type TransientResult = transim::TransientResult<Real>;
pub type CompressionResult = transim::CompressionResult<Real>;
pub type SntjParams = noisecal::SntjParams<Real>;
pub type NoiseSweep = noisecal::NoiseSweep<Real>;
pub type ChainFit = noisecal::ChainFit<Real>;
pub type ChainDecomposition = noisecal::ChainDecomposition<Real>;
pub type AttenuationCal = noisecal::AttenuationCal<Real>;
