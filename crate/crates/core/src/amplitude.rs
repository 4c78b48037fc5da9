//! Complex amplitudes on the two output ports of a two-port element.

use std::ops::Add;

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Scalar;

/// Dimensionless complex amplitude. Intensity is `|a|²`, read as a probability
/// under the unit-input convention.
pub type ComplexAmp<T> = Complex<T>;

/// One of the two ports of a two-port element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    I,
    II,
}

impl Port {
    pub fn other(self) -> Port {
        match self {
            Port::I => Port::II,
            Port::II => Port::I,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Port::I => "I",
            Port::II => "II",
        }
    }
}

/// Amplitudes on ports I and II.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeState<T> {
    pub amp_i: ComplexAmp<T>,
    pub amp_ii: ComplexAmp<T>,
}

impl<T: Scalar> TwoModeState<T> {
    pub fn new(amp_i: ComplexAmp<T>, amp_ii: ComplexAmp<T>) -> Self {
        Self { amp_i, amp_ii }
    }

    pub fn zero() -> Self {
        Self::new(Complex::zero(), Complex::zero())
    }

    /// Unit amplitude on one port, nothing on the other.
    pub fn basis(port: Port) -> Self {
        Self::zero().with(port, Complex::new(T::one(), T::zero()))
    }

    pub fn get(&self, port: Port) -> ComplexAmp<T> {
        match port {
            Port::I => self.amp_i,
            Port::II => self.amp_ii,
        }
    }

    pub fn with(mut self, port: Port, amp: ComplexAmp<T>) -> Self {
        match port {
            Port::I => self.amp_i = amp,
            Port::II => self.amp_ii = amp,
        }
        self
    }

    pub fn scale(self, k: ComplexAmp<T>) -> Self {
        Self::new(self.amp_i * k, self.amp_ii * k)
    }

    /// `|amp_I|² + |amp_II|²`.
    pub fn total_intensity(&self) -> T {
        let (a, b) = port_intensities(self);
        a + b
    }

    pub fn is_finite(&self) -> bool {
        [self.amp_i.re, self.amp_i.im, self.amp_ii.re, self.amp_ii.im]
            .iter()
            .all(|x| x.is_finite())
    }

    /// Largest componentwise distance to `other` (real and imaginary parts).
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let d = [
            self.amp_i.re - other.amp_i.re,
            self.amp_i.im - other.amp_i.im,
            self.amp_ii.re - other.amp_ii.re,
            self.amp_ii.im - other.amp_ii.im,
        ];
        d.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }
}

impl<T: Scalar> Add for TwoModeState<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        superpose(&self, &rhs)
    }
}

/// Componentwise complex sum of two states.
pub fn superpose<T: Scalar>(a: &TwoModeState<T>, b: &TwoModeState<T>) -> TwoModeState<T> {
    TwoModeState::new(a.amp_i + b.amp_i, a.amp_ii + b.amp_ii)
}

/// `(|amp_I|², |amp_II|²)`.
pub fn port_intensities<T: Scalar>(s: &TwoModeState<T>) -> (T, T) {
    (s.amp_i.norm_sqr(), s.amp_ii.norm_sqr())
}

/// Phase difference `Δ = χ₁ − χ₂`, stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PhaseDifference<T>(T);

impl<T: Scalar> PhaseDifference<T> {
    pub fn new(delta: T) -> Self {
        Self(wrap_phase(delta))
    }

    pub fn radians(self) -> T {
        self.0
    }
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_phase<T: Scalar>(x: T) -> T {
    let tau = T::TAU();
    let mut r = x % tau;
    if r < T::zero() {
        r = r + tau;
    }
    // -tiny + 2π can round up to exactly 2π
    if r >= tau {
        r = r - tau;
    }
    r
}

pub fn phase_difference<T: Scalar>(chi1: T, chi2: T) -> PhaseDifference<T> {
    PhaseDifference::new(chi1 - chi2)
}

/// Unit phasor `e^{iθ}`.
pub fn phasor<T: Scalar>(theta: T) -> ComplexAmp<T> {
    Complex::from_polar(T::one(), theta)
}
