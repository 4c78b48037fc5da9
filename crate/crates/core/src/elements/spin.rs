use crate::scalar::Scalar;

/// Spin-1/2 particle whose axis makes `polar_angle` with the analyzing field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState<T> {
    pub polar_angle: T,
}

impl<T: Scalar> SpinState<T> {
    pub fn new(polar_angle: T) -> Self {
        Self { polar_angle }
    }

    pub fn probabilities(&self) -> (T, T) {
        stern_gerlach_probs(self.polar_angle)
    }

    /// Incident spin component along the field, in ħ units (`cos φ / 2`).
    pub fn field_component(&self) -> T {
        self.polar_angle.cos() * T::lit(0.5)
    }
}

/// `(cos²(φ/2), sin²(φ/2))`: spin-up and spin-down fractions.
pub fn stern_gerlach_probs<T: Scalar>(phi: T) -> (T, T) {
    let (s, c) = (phi * T::lit(0.5)).sin_cos();
    (c * c, s * s)
}

/// Photon spin along its direction of travel, in ħ units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinComponent {
    Minus,
    Zero,
    Plus,
}

impl SpinComponent {
    pub fn value(self) -> i32 {
        match self {
            SpinComponent::Minus => -1,
            SpinComponent::Zero => 0,
            SpinComponent::Plus => 1,
        }
    }

    /// Nearest component for a helicity that is within `1e-9` of -1, 0 or 1.
    pub fn from_helicity<T: Scalar>(h: T) -> Option<Self> {
        let h = h.as_f64();
        [
            SpinComponent::Minus,
            SpinComponent::Zero,
            SpinComponent::Plus,
        ]
        .into_iter()
        .find(|s| (h - s.value() as f64).abs() < 1e-9)
    }
}

/// Angular momentum deposited in the element: `spin_in − spin_out`.
pub fn beth_transfer<T: Scalar>(spin_in: SpinComponent, spin_out: SpinComponent) -> T {
    T::from_i32(spin_in.value() - spin_out.value()).expect("small integer")
}
