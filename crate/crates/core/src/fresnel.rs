//! Dielectric boundary at normal incidence, in SI units.
//!
//! Solving the continuity conditions for a wave crossing the `xy` plane from
//! medium 1 into medium 2 gives the Fresnel amplitude coefficients, which in
//! turn fix the transmittance of a splitter built from that interface.

use thiserror::Error;

use crate::elements::{BeamSplitterSpec, ElementError};
use crate::scalar::Scalar;

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_818_8e-12;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FresnelError {
    #[error("oscillator frequency is zero")]
    ZeroFrequency,
    #[error("invalid dipole parameter: {0}")]
    Dipole(&'static str),
    #[error("refractive indices must be finite and at least 1, got n1 = {n1}, n2 = {n2}")]
    Index { n1: f64, n2: f64 },
    #[error(transparent)]
    Element(#[from] ElementError),
}

/// Bound electron driven as a harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleParams<T> {
    /// Charge, C.
    pub q: T,
    /// Mass, kg.
    pub m: T,
    /// Angular frequency, rad/s.
    pub omega: T,
    /// Driving field, V/m.
    pub e_field: T,
}

/// Induced moment `−q²E/(mω²)` in C·m.
pub fn dipole_moment<T: Scalar>(p: &DipoleParams<T>) -> Result<T, FresnelError> {
    if p.omega == T::zero() {
        return Err(FresnelError::ZeroFrequency);
    }
    if p.m.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(FresnelError::Dipole("mass must be positive"));
    }
    if p.omega.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(FresnelError::Dipole("frequency must be positive"));
    }
    Ok(-(p.q * p.q) * p.e_field / (p.m * p.omega * p.omega))
}

pub type Vec3<T> = [T; 3];

/// Macroscopic fields on one side of the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldTriple<T> {
    /// Electric field, V/m.
    pub e: Vec3<T>,
    /// Magnetic field, T.
    pub b: Vec3<T>,
    /// Polarization, C/m².
    pub p: Vec3<T>,
    pub epsilon0: T,
}

impl<T: Scalar> FieldTriple<T> {
    fn normal_displacement(&self) -> T {
        self.epsilon0 * self.e[2] + self.p[2]
    }
}

/// Residuals of the three continuity conditions at a boundary with normal `z`:
/// `[(ε₀E + P)_z mismatch, max tangential E mismatch, max B mismatch]`.
/// All zero means the conditions hold.
pub fn check_boundary<T: Scalar>(side1: &FieldTriple<T>, side2: &FieldTriple<T>) -> [T; 3] {
    let normal = (side1.normal_displacement() - side2.normal_displacement()).abs();
    let tangential = (side1.e[0] - side2.e[0])
        .abs()
        .max((side1.e[1] - side2.e[1]).abs());
    let magnetic = (0..3).fold(T::zero(), |m, i| m.max((side1.b[i] - side2.b[i]).abs()));
    [normal, tangential, magnetic]
}

/// [`check_boundary`] with each residual divided by the largest magnitude
/// entering that condition, so fields of any scale compare on one footing.
pub fn relative_boundary_residual<T: Scalar>(
    side1: &FieldTriple<T>,
    side2: &FieldTriple<T>,
) -> [T; 3] {
    let raw = check_boundary(side1, side2);
    let max_abs = |xs: &[T]| xs.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let scales = [
        max_abs(&[side1.normal_displacement(), side2.normal_displacement()]),
        max_abs(&[side1.e[0], side1.e[1], side2.e[0], side2.e[1]]),
        max_abs(&[
            side1.b[0], side1.b[1], side1.b[2], side2.b[0], side2.b[1], side2.b[2],
        ]),
    ];
    let mut out = raw;
    for (r, s) in out.iter_mut().zip(scales) {
        if s > T::zero() {
            *r = *r / s;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceSpec<T> {
    pub n1: T,
    pub n2: T,
}

impl<T: Scalar> InterfaceSpec<T> {
    pub fn new(n1: T, n2: T) -> Result<Self, FresnelError> {
        let ok = |n: T| n.is_finite() && n >= T::one();
        if ok(n1) && ok(n2) {
            Ok(Self { n1, n2 })
        } else {
            Err(FresnelError::Index {
                n1: n1.as_f64(),
                n2: n2.as_f64(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelCoefficients<T> {
    /// Reflected amplitude ratio.
    pub r: T,
    /// Transmitted amplitude ratio.
    pub t: T,
    /// Reflected power fraction.
    pub reflectance: T,
    /// Transmitted power fraction, including the `n2/n1` flux factor.
    pub transmittance: T,
}

pub fn fresnel_coeffs<T: Scalar>(iface: &InterfaceSpec<T>) -> FresnelCoefficients<T> {
    let (n1, n2) = (iface.n1, iface.n2);
    let sum = n1 + n2;
    let r = (n1 - n2) / sum;
    let t = (n1 + n1) / sum;
    FresnelCoefficients {
        r,
        t,
        reflectance: r * r,
        transmittance: n2 / n1 * t * t,
    }
}

/// Fields just either side of the boundary for an incident wave of amplitude
/// `e0` (V/m), polarized along `x` and travelling along `+z`.
pub fn boundary_fields<T: Scalar>(
    iface: &InterfaceSpec<T>,
    coeffs: &FresnelCoefficients<T>,
    e0: T,
) -> (FieldTriple<T>, FieldTriple<T>) {
    let eps0 = T::lit(EPSILON_0);
    let c = T::lit(SPEED_OF_LIGHT);
    let z = T::zero();
    let side = |e_x: T, b_y: T, n: T| FieldTriple {
        e: [e_x, z, z],
        b: [z, b_y, z],
        p: [eps0 * (n * n - T::one()) * e_x, z, z],
        epsilon0: eps0,
    };
    // the reflected wave travels along −z, so its B enters with the opposite sign
    let incident_side = side(
        (T::one() + coeffs.r) * e0,
        iface.n1 * (T::one() - coeffs.r) * e0 / c,
        iface.n1,
    );
    let transmitted_side = side(coeffs.t * e0, iface.n2 * coeffs.t * e0 / c, iface.n2);
    (incident_side, transmitted_side)
}

/// Splitter equivalent to a bare interface.
///
/// Transmittance is the Fresnel power transmittance. The reflection phase is π
/// for reflection off a denser medium (`r < 0`) and 0 otherwise; through the
/// general splitter matrix this reproduces the Stokes relation `r' = −r`.
pub fn bs_from_interface<T: Scalar>(
    iface: &InterfaceSpec<T>,
) -> Result<BeamSplitterSpec<T>, FresnelError> {
    let c = fresnel_coeffs(iface);
    let phase = if c.r < T::zero() { T::PI() } else { T::zero() };
    // R + T = 1 up to rounding; keep the transmittance inside [0, 1]
    let t = c.transmittance.max(T::zero()).min(T::one());
    Ok(BeamSplitterSpec::new(t, phase)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn dipole_examples() {
        let p = DipoleParams {
            q: 1.0,
            m: 1.0,
            omega: 2.0,
            e_field: 4.0,
        };
        assert_eq!(dipole_moment(&p).unwrap(), -1.0);
        assert_eq!(
            dipole_moment(&DipoleParams { e_field: 0.0, ..p }).unwrap(),
            0.0
        );
        let doubled = dipole_moment(&DipoleParams { e_field: 8.0, ..p }).unwrap();
        assert_eq!(doubled, 2.0 * dipole_moment(&p).unwrap());
        assert_eq!(
            dipole_moment(&DipoleParams { q: -1.0, ..p }).unwrap(),
            dipole_moment(&p).unwrap()
        );
        assert_eq!(
            dipole_moment(&DipoleParams { omega: 4.0, ..p }).unwrap(),
            dipole_moment(&p).unwrap() / 4.0
        );
        assert_eq!(
            dipole_moment(&DipoleParams { omega: 0.0, ..p }),
            Err(FresnelError::ZeroFrequency)
        );
        assert!(dipole_moment(&DipoleParams { m: 0.0, ..p }).is_err());
    }

    #[test]
    fn air_to_glass() {
        let iface = InterfaceSpec::new(1.0, 1.5).unwrap();
        let c = fresnel_coeffs(&iface);
        assert_abs_diff_eq!(c.r, -0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(c.t, 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(c.reflectance, 0.04, epsilon = 1e-12);
        assert_abs_diff_eq!(c.transmittance, 0.96, epsilon = 1e-12);
    }

    #[test]
    fn no_interface() {
        let c = fresnel_coeffs(&InterfaceSpec::new(1.33, 1.33).unwrap());
        assert_eq!(c.r, 0.0);
        assert_abs_diff_eq!(c.transmittance, 1.0, epsilon = 1e-15);
        let bs = bs_from_interface(&InterfaceSpec::new(1.33, 1.33).unwrap()).unwrap();
        assert_abs_diff_eq!(bs.transmittance(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_sub_unity_index() {
        assert!(InterfaceSpec::new(0.9, 1.5).is_err());
        assert!(InterfaceSpec::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn splitter_from_interface() {
        let bs = bs_from_interface(&InterfaceSpec::new(1.0, 1.5).unwrap()).unwrap();
        assert_abs_diff_eq!(bs.transmittance(), 0.96, epsilon = 1e-12);
        assert_eq!(bs.reflection_phase(), std::f64::consts::PI);

        let ratio = 3.0 + 2.0 * 2f64.sqrt();
        let bs = bs_from_interface(&InterfaceSpec::new(1.0, ratio).unwrap()).unwrap();
        assert_abs_diff_eq!(bs.transmittance(), 0.5, epsilon = 1e-12);

        let bs = bs_from_interface(&InterfaceSpec::new(1.5, 1.0).unwrap()).unwrap();
        assert_eq!(bs.reflection_phase(), 0.0);
    }

    #[test]
    fn identical_and_perturbed_sides() {
        let iface = InterfaceSpec::new(1.0, 1.5).unwrap();
        let (a, _) = boundary_fields(&iface, &fresnel_coeffs(&iface), 1.0);
        assert_eq!(check_boundary(&a, &a), [0.0, 0.0, 0.0]);
        let mut b = a;
        b.e[1] += 0.1;
        let res = check_boundary(&a, &b);
        assert_abs_diff_eq!(res[1], 0.1, epsilon = 1e-15);
        assert_eq!(res[0], 0.0);
        assert_eq!(res[2], 0.0);
    }

    #[test]
    fn wrong_sign_violates_magnetic_condition() {
        let iface = InterfaceSpec::new(1.0, 1.5).unwrap();
        let mut c = fresnel_coeffs(&iface);
        c.r = -c.r;
        let (a, b) = boundary_fields(&iface, &c, 1.0);
        assert!(relative_boundary_residual(&a, &b)[2] > 0.1);
    }

    proptest! {
        #[test]
        fn coefficients_satisfy_continuity(n1 in 1.0..3.0f64, n2 in 1.0..3.0f64, e0 in 0.1..1e3f64) {
            let iface = InterfaceSpec::new(n1, n2).unwrap();
            let c = fresnel_coeffs(&iface);
            prop_assert!((1.0 + c.r - c.t).abs() <= 1e-12);
            prop_assert!((c.reflectance + c.transmittance - 1.0).abs() <= 1e-12);
            let (a, b) = boundary_fields(&iface, &c, e0);
            for r in relative_boundary_residual(&a, &b) {
                prop_assert!(r < 1e-12);
            }
        }
    }
}
