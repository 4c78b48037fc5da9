use num_complex::Complex;

use super::{BeamSplitterSpec, ElementError};
use crate::amplitude::{ComplexAmp, Port, TwoModeState};
use crate::scalar::Scalar;

/// Reaction wave left in a splitter when a photon is committed to one path.
///
/// Expressed in the splitter's path basis (`|ψ_I⟩`, `|ψ_II⟩` with their mode
/// phases factored out). Photon plus response equals the undivided
/// superposition `√T|ψ_I⟩ + √R|ψ_II⟩` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApparatusResponse<T> {
    pub resp_i: ComplexAmp<T>,
    pub resp_ii: ComplexAmp<T>,
    taken: Port,
}

impl<T: Scalar> ApparatusResponse<T> {
    /// Path the photon was committed to when this response was generated.
    pub fn taken(&self) -> Port {
        self.taken
    }

    pub fn as_state(&self) -> TwoModeState<T> {
        TwoModeState::new(self.resp_i, self.resp_ii)
    }

    pub fn get(&self, port: Port) -> ComplexAmp<T> {
        match port {
            Port::I => self.resp_i,
            Port::II => self.resp_ii,
        }
    }

    /// `|resp_I|² + |resp_II|²`.
    pub fn intensity(&self) -> T {
        self.as_state().total_intensity()
    }
}

/// Path-basis superposition a splitter would produce from a unit input.
pub(crate) fn path_superposition<T: Scalar>(spec: &BeamSplitterSpec<T>) -> TwoModeState<T> {
    TwoModeState::new(
        Complex::new(spec.transmittance().sqrt(), T::zero()),
        Complex::new(spec.reflectance().sqrt(), T::zero()),
    )
}

/// Response of a 50:50 splitter: `(1/√2)(|ψ_I⟩ + |ψ_II⟩) − |ψ_taken⟩`.
pub fn apparatus_response<T: Scalar>(taken: Port) -> ApparatusResponse<T> {
    apparatus_response_for(&BeamSplitterSpec::fifty_fifty(), taken)
}

/// Response of an arbitrary lossless splitter: the undivided superposition
/// minus the committed photon.
pub fn apparatus_response_for<T: Scalar>(
    spec: &BeamSplitterSpec<T>,
    taken: Port,
) -> ApparatusResponse<T> {
    let sup = path_superposition(spec);
    let one = Complex::new(T::one(), T::zero());
    let sub = |port: Port| {
        let a = sup.get(port);
        if port == taken {
            a - one
        } else {
            a
        }
    };
    ApparatusResponse {
        resp_i: sub(Port::I),
        resp_ii: sub(Port::II),
        taken,
    }
}

/// Photon on `taken` plus its response, in the path basis.
pub fn reconstruct<T: Scalar>(
    taken: Port,
    response: &ApparatusResponse<T>,
) -> Result<TwoModeState<T>, ElementError> {
    if response.taken != taken {
        return Err(ElementError::ResponseMismatch {
            generated: response.taken.label(),
            requested: taken.label(),
        });
    }
    Ok(TwoModeState::basis(taken) + response.as_state())
}
