//! Optical and analyzer elements.
//!
//! Path elements act on [`TwoModeState`](crate::amplitude::TwoModeState);
//! waveplates act on a separate polarization vector. No element couples the two.

mod response;
mod spin;
mod splitter;
mod waveplate;

use thiserror::Error;

pub use response::{apparatus_response, apparatus_response_for, reconstruct, ApparatusResponse};
pub use spin::{beth_transfer, stern_gerlach_probs, SpinComponent, SpinState};
pub use splitter::{bs_transfer, phase_shift, BeamSplitterSpec};
pub use waveplate::{waveplate_apply, JonesMatrix, Polarization, WaveplateSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ElementError {
    #[error("transmittance {0} outside [0, 1]")]
    Transmittance(f64),
    #[error("non-finite element parameter `{0}`")]
    NonFinite(&'static str),
    #[error(
        "response was generated for path {generated} but reconstruction asked for path {requested}"
    )]
    ResponseMismatch {
        generated: &'static str,
        requested: &'static str,
    },
}
