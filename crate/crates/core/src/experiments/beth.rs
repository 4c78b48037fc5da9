use crate::elements::{beth_transfer, waveplate_apply, Polarization, SpinComponent, WaveplateSpec};
use crate::scalar::Scalar;

use super::ExperimentError;

/// Spin of one photon before and after a polarization element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinFlipEvent {
    pub spin_in: SpinComponent,
    pub spin_out: SpinComponent,
}

/// Total angular momentum deposited by a stream of photons, in ħ units.
pub fn accumulate_beth<'a, T: Scalar>(events: impl IntoIterator<Item = &'a SpinFlipEvent>) -> T {
    events.into_iter().fold(T::zero(), |acc, e| {
        acc + beth_transfer::<T>(e.spin_in, e.spin_out)
    })
}

/// Sends `photons` identical photons through a waveplate and records their
/// spin change.
///
/// Both input and output must carry a definite spin (circular or linear).
pub fn run_waveplate<T: Scalar>(
    plate: &WaveplateSpec<T>,
    input: &Polarization<T>,
    photons: u64,
) -> Result<Vec<SpinFlipEvent>, ExperimentError> {
    let output = waveplate_apply(input, plate);
    let spin_in = SpinComponent::from_helicity(input.helicity())
        .ok_or_else(|| ExperimentError::Config("input polarization has no definite spin".into()))?;
    let spin_out = SpinComponent::from_helicity(output.helicity()).ok_or_else(|| {
        ExperimentError::Config("output polarization has no definite spin".into())
    })?;
    Ok((0..photons)
        .map(|_| SpinFlipEvent { spin_in, spin_out })
        .collect())
}
