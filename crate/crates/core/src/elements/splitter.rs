use num_complex::Complex;

use super::ElementError;
use crate::amplitude::{phasor, ComplexAmp, Port, TwoModeState};
use crate::scalar::Scalar;

/// Lossless two-port beam splitter.
///
/// The transfer matrix, acting on input amplitudes `(a_I, a_II)`, is
///
/// ```text
/// | t        -conj(ρ)·r |
/// | ρ·r       t         |      t = √T, r = √(1 − T), ρ = e^{iφ}
/// ```
///
/// which is unitary for every reflection phase φ. With the default φ = π/2 it
/// is the symmetric splitter `[[t, i r], [i r, t]]`; with φ = π it is the
/// Stokes pair of a dielectric interface (`r' = −r`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterSpec<T> {
    transmittance: T,
    reflection_phase: T,
}

impl<T: Scalar> BeamSplitterSpec<T> {
    pub fn new(transmittance: T, reflection_phase: T) -> Result<Self, ElementError> {
        if !transmittance.is_finite() {
            return Err(ElementError::NonFinite("transmittance"));
        }
        if !reflection_phase.is_finite() {
            return Err(ElementError::NonFinite("reflection_phase"));
        }
        if transmittance < T::zero() || transmittance > T::one() {
            return Err(ElementError::Transmittance(transmittance.as_f64()));
        }
        Ok(Self {
            transmittance,
            reflection_phase,
        })
    }

    /// Splitter with the default π/2 reflection phase.
    pub fn with_transmittance(transmittance: T) -> Result<Self, ElementError> {
        Self::new(transmittance, T::FRAC_PI_2())
    }

    pub fn fifty_fifty() -> Self {
        Self {
            transmittance: T::lit(0.5),
            reflection_phase: T::FRAC_PI_2(),
        }
    }

    pub fn transmittance(&self) -> T {
        self.transmittance
    }

    pub fn reflectance(&self) -> T {
        T::one() - self.transmittance
    }

    pub fn reflection_phase(&self) -> T {
        self.reflection_phase
    }

    pub fn is_fifty_fifty(&self) -> bool {
        self.transmittance == T::lit(0.5)
    }

    /// Row-major transfer matrix.
    pub fn matrix(&self) -> [[ComplexAmp<T>; 2]; 2] {
        let t = Complex::new(self.transmittance.sqrt(), T::zero());
        let r = self.reflectance().sqrt();
        let rho = phasor(self.reflection_phase);
        [[t, -rho.conj() * r], [rho * r, t]]
    }

    pub fn apply(&self, input: &TwoModeState<T>) -> TwoModeState<T> {
        let m = self.matrix();
        TwoModeState::new(
            m[0][0] * input.amp_i + m[0][1] * input.amp_ii,
            m[1][0] * input.amp_i + m[1][1] * input.amp_ii,
        )
    }

    /// Phase carried by output mode `port` for light entering port I.
    pub fn mode_phasor(&self, port: Port) -> ComplexAmp<T> {
        match port {
            Port::I => Complex::new(T::one(), T::zero()),
            Port::II => phasor(self.reflection_phase),
        }
    }

    /// Target probability of port I for a photon entering port I.
    pub fn probability_i(&self) -> T {
        self.transmittance
    }
}

/// Divides a single amplitude entering port I.
pub fn bs_transfer<T: Scalar>(input: ComplexAmp<T>, spec: &BeamSplitterSpec<T>) -> TwoModeState<T> {
    spec.apply(&TwoModeState::new(
        input,
        Complex::new(T::zero(), T::zero()),
    ))
}

/// Multiplies one port by `e^{iΔ}`.
pub fn phase_shift<T: Scalar>(s: &TwoModeState<T>, port: Port, delta: T) -> TwoModeState<T> {
    s.with(port, s.get(port) * phasor(delta))
}
