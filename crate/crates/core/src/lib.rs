//! Discrete-photon interferometry.
//!
//! Photons are committed to one path at a time at each splitter. Two accounts
//! of how the path is picked are provided side by side:
//!
//! * **Born sampling**: port I with probability `|amp_I|²`, independently per
//!   photon.
//! * **Rebalancing**: each element carries an imbalance, the running deficit
//!   between realized and expected outcomes, and the next photon is steered to
//!   reduce it.
//!
//! A committed photon leaves a reaction wave in the splitter whose sum with
//! the photon is exactly the undivided superposition. Carried through the
//! interferometer arms, that sum sets the interference at the recombining
//! splitter, which becomes the target for its own commit.
//!
//! Numerics are generic over [`Scalar`] (`f32`/`f64`); the `*64` aliases at
//! the crate root pin `f64`, which the config and CLI layer use.

pub mod amplitude;
pub mod cli;
pub mod config;
pub mod elements;
pub mod emit;
pub mod experiments;
pub mod fresnel;
pub mod rng;
pub mod scalar;
pub mod selection;
pub mod stats;

pub use amplitude::{
    phase_difference, port_intensities, superpose, ComplexAmp, PhaseDifference, Port, TwoModeState,
};
pub use elements::{
    apparatus_response, apparatus_response_for, beth_transfer, bs_transfer, phase_shift,
    reconstruct, stern_gerlach_probs, waveplate_apply, ApparatusResponse, BeamSplitterSpec,
    ElementError, Polarization, SpinComponent, SpinState, WaveplateSpec,
};
pub use experiments::{
    accumulate_beth, arrival_times, mz_ideal_probs, run_experiment, run_mach_zehnder,
    run_single_bs, run_stern_gerlach, Arrival, EventRecord, ExperimentConfig, ExperimentError,
    ExperimentKind, RunSummary,
};
pub use fresnel::{
    bs_from_interface, check_boundary, dipole_moment, fresnel_coeffs, InterfaceSpec,
};
pub use rng::SimRng;
pub use scalar::Scalar;
pub use selection::{
    born_choose, dissipate, rebalance_choose_biased, rebalance_choose_greedy, EngineKind,
    ImbalanceState, Outcome, SelectionEngine,
};
pub use stats::{
    chi_square_gof, estimate_frequency, variance_curve, visibility, FrequencyEstimate,
    VarianceCurve,
};

pub type ComplexAmp64 = ComplexAmp<f64>;
pub type TwoModeState64 = TwoModeState<f64>;
pub type BeamSplitterSpec64 = BeamSplitterSpec<f64>;
pub type ApparatusResponse64 = ApparatusResponse<f64>;
pub type ImbalanceState64 = ImbalanceState<f64>;
pub type EngineKind64 = EngineKind<f64>;
pub type ExperimentConfig64 = ExperimentConfig<f64>;
pub type RunSummary64 = RunSummary<f64>;
pub type EventRecord64 = EventRecord<f64>;

pub type TwoModeState32 = TwoModeState<f32>;
pub type ExperimentConfig32 = ExperimentConfig<f32>;
pub type RunSummary32 = RunSummary<f32>;
