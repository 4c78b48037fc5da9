use std::ops::Mul;

use num_complex::Complex;

use crate::amplitude::{phasor, ComplexAmp};
use crate::scalar::Scalar;

/// Polarization of a single photon as horizontal/vertical Jones components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization<T> {
    pub h: ComplexAmp<T>,
    pub v: ComplexAmp<T>,
}

impl<T: Scalar> Polarization<T> {
    pub fn new(h: ComplexAmp<T>, v: ComplexAmp<T>) -> Self {
        Self { h, v }
    }

    /// Linear polarization at `theta` from the horizontal axis.
    pub fn linear(theta: T) -> Self {
        Self::new(
            Complex::new(theta.cos(), T::zero()),
            Complex::new(theta.sin(), T::zero()),
        )
    }

    /// Positive-helicity circular state `(1, i)/√2`.
    pub fn right_circular() -> Self {
        let k = T::FRAC_1_SQRT_2();
        Self::new(Complex::new(k, T::zero()), Complex::new(T::zero(), k))
    }

    /// Negative-helicity circular state `(1, −i)/√2`.
    pub fn left_circular() -> Self {
        let k = T::FRAC_1_SQRT_2();
        Self::new(Complex::new(k, T::zero()), Complex::new(T::zero(), -k))
    }

    pub fn norm_sqr(&self) -> T {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    /// Mean spin along the propagation axis in units of ħ, in `[-1, 1]`.
    pub fn helicity(&self) -> T {
        let i = Complex::new(T::zero(), T::one());
        let k = T::FRAC_1_SQRT_2();
        let right = (self.h - i * self.v) * k;
        let left = (self.h + i * self.v) * k;
        right.norm_sqr() - left.norm_sqr()
    }

    /// `|⟨self|other⟩|`, equal to 1 when the states agree up to a global phase.
    pub fn overlap(&self, other: &Self) -> T {
        (self.h.conj() * other.h + self.v.conj() * other.v).norm()
    }
}

/// 2×2 complex Jones matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesMatrix<T>(pub [[ComplexAmp<T>; 2]; 2]);

impl<T: Scalar> JonesMatrix<T> {
    pub fn identity() -> Self {
        let o = Complex::new(T::one(), T::zero());
        let z = Complex::new(T::zero(), T::zero());
        Self([[o, z], [z, o]])
    }

    fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        let re = |x: T| Complex::new(x, T::zero());
        Self([[re(c), re(s)], [re(-s), re(c)]])
    }

    pub fn apply(&self, p: &Polarization<T>) -> Polarization<T> {
        let m = &self.0;
        Polarization::new(m[0][0] * p.h + m[0][1] * p.v, m[1][0] * p.h + m[1][1] * p.v)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    /// Largest entry of `M†M − 1`.
    pub fn unitarity_defect(&self) -> T {
        let m = &self.0;
        let mut prod = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (r, row) in prod.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = m[0][r].conj() * m[0][c] + m[1][r].conj() * m[1][c];
            }
        }
        JonesMatrix(prod).max_abs_diff(&Self::identity())
    }
}

impl<T: Scalar> Mul for JonesMatrix<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.0;
        let b = &rhs.0;
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self(out)
    }
}

/// Linear retarder: the slow-axis component lags the fast-axis component by
/// `retardation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveplateSpec<T> {
    pub retardation: T,
    pub fast_axis: T,
}

impl<T: Scalar> WaveplateSpec<T> {
    pub fn new(retardation: T, fast_axis: T) -> Self {
        Self {
            retardation,
            fast_axis,
        }
    }

    pub fn half_wave(fast_axis: T) -> Self {
        Self::new(T::PI(), fast_axis)
    }

    pub fn quarter_wave(fast_axis: T) -> Self {
        Self::new(T::FRAC_PI_2(), fast_axis)
    }

    pub fn jones(&self) -> JonesMatrix<T> {
        let o = Complex::new(T::one(), T::zero());
        let z = Complex::new(T::zero(), T::zero());
        let retard = JonesMatrix([[o, z], [z, phasor(self.retardation)]]);
        JonesMatrix::rotation(-self.fast_axis) * retard * JonesMatrix::rotation(self.fast_axis)
    }
}

pub fn waveplate_apply<T: Scalar>(
    pol: &Polarization<T>,
    spec: &WaveplateSpec<T>,
) -> Polarization<T> {
    spec.jones().apply(pol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, PI, TAU};

    #[test]
    fn half_wave_mirrors_linear_polarization() {
        let theta = 30f64.to_radians();
        let out = waveplate_apply(&Polarization::linear(theta), &WaveplateSpec::half_wave(0.0));
        assert_abs_diff_eq!(
            out.overlap(&Polarization::linear(-theta)),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn full_wave_restores_input() {
        let p = Polarization::linear(0.7);
        let out = waveplate_apply(&p, &WaveplateSpec::new(TAU, 0.3));
        assert_abs_diff_eq!(out.overlap(&p), 1.0, epsilon = 1e-12);
        // 2nπ + π acts as a half-wave plate
        let hw = WaveplateSpec::new(5.0 * PI, 0.0).jones();
        assert!(hw.max_abs_diff(&WaveplateSpec::half_wave(0.0).jones()) < 1e-12);
    }

    #[test]
    fn quarter_wave_makes_circular() {
        let out = waveplate_apply(
            &Polarization::linear(FRAC_PI_4),
            &WaveplateSpec::quarter_wave(0.0),
        );
        assert_abs_diff_eq!(out.h.norm(), out.v.norm(), epsilon = 1e-12);
        let rel = (out.v / out.h).arg();
        assert_abs_diff_eq!(rel.abs(), PI / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(out.helicity().abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn half_wave_flips_helicity() {
        let out = waveplate_apply(
            &Polarization::right_circular(),
            &WaveplateSpec::half_wave(0.4),
        );
        assert_abs_diff_eq!(out.helicity(), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            Polarization::<f64>::right_circular().helicity(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Polarization::<f64>::linear(0.2).helicity(),
            0.0,
            epsilon = 1e-15
        );
    }

    proptest! {
        #[test]
        fn waveplates_are_unitary(ret in -10.0..10.0f64, axis in -4.0..4.0f64) {
            prop_assert!(WaveplateSpec::new(ret, axis).jones().unitarity_defect() <= 1e-12);
        }

        #[test]
        fn two_quarter_waves_make_a_half_wave(axis in -4.0..4.0f64) {
            let q = WaveplateSpec::quarter_wave(axis).jones();
            let h = WaveplateSpec::half_wave(axis).jones();
            prop_assert!((q * q).max_abs_diff(&h) <= 1e-12);
        }

        #[test]
        fn norm_preserved(theta in -4.0..4.0f64, ret in -10.0..10.0f64, axis in -4.0..4.0f64) {
            let out = waveplate_apply(&Polarization::linear(theta), &WaveplateSpec::new(ret, axis));
            prop_assert!((out.norm_sqr() - 1.0).abs() <= 1e-12);
        }
    }
}
