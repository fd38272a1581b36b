//! Linear frequency-domain network engine.
//!
//! Netlists are evaluated by nodal admittance analysis with port
//! terminations; pure ladder two-ports can also be evaluated through ABCD
//! cascades, which provides an independent algebraic route for
//! cross-checking.

mod abcd;
mod netlist;
mod sparams;

pub use abcd::{bloch_phase_per_cell, cascade, element_abcd, Abcd, Orientation};
pub use netlist::{Element, ElementKind, Netlist, Node, Port};
pub use sparams::{crossover_frequency, nport_sparams, AcOptions, SParamSweep};
