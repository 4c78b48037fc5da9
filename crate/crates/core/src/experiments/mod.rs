//! Runnable experiments: single beam splitter, Mach-Zehnder, Stern-Gerlach.
//!
//! A run is one sequential photon loop. Imbalance is order dependent, so
//! parallelism lives one level up, across replicas and sweep points, each with
//! its own engine and seed stream.

mod arrival;
mod beth;
mod runs;

use std::io;

use thiserror::Error;

use crate::amplitude::Port;
use crate::elements::{ApparatusResponse, BeamSplitterSpec, ElementError};
use crate::scalar::Scalar;
use crate::selection::{EngineKind, SelectionError};

pub use arrival::{arrival_times, Arrival, ArrivalClock};
pub use beth::{accumulate_beth, run_waveplate, SpinFlipEvent};
pub use runs::{
    mz_detector_probs, mz_ideal_probs, mz_output_state, run_experiment, run_mach_zehnder,
    run_single_bs, run_stern_gerlach, snap_intensity, DESTRUCTIVE_THRESHOLD,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error("event sink failed: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExperimentKind<T> {
    SingleBs {
        splitter: BeamSplitterSpec<T>,
    },
    MachZehnder {
        delta: T,
        splitter: BeamSplitterSpec<T>,
    },
    SternGerlach {
        phi: T,
    },
}

impl<T> ExperimentKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::SingleBs { .. } => "single_bs",
            ExperimentKind::MachZehnder { .. } => "mach_zehnder",
            ExperimentKind::SternGerlach { .. } => "stern_gerlach",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig<T> {
    pub kind: ExperimentKind<T>,
    pub engine: EngineKind<T>,
    pub photons: u64,
    pub seed: u64,
    pub arrival: Arrival<T>,
    /// Imbalance relaxation time in seconds; `+∞` for none.
    pub tau: T,
}

impl<T: Scalar> ExperimentConfig<T> {
    /// Config with the default engine (Born), fixed 1 s arrivals and no relaxation.
    pub fn new(kind: ExperimentKind<T>, photons: u64, seed: u64) -> Self {
        Self {
            kind,
            engine: EngineKind::Born,
            photons,
            seed,
            arrival: Arrival::Fixed { interval: T::one() },
            tau: T::infinity(),
        }
    }

    pub fn with_engine(mut self, engine: EngineKind<T>) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_arrival(mut self, arrival: Arrival<T>) -> Self {
        self.arrival = arrival;
        self
    }

    pub fn with_tau(mut self, tau: T) -> Self {
        self.tau = tau;
        self
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::Config(m.to_string()));
        if self.photons == 0 {
            return bad("photons must be at least 1");
        }
        match self.kind {
            ExperimentKind::MachZehnder { delta, .. } if !delta.is_finite() => {
                return bad("delta must be finite")
            }
            ExperimentKind::SternGerlach { phi } if !phi.is_finite() => {
                return bad("phi must be finite")
            }
            _ => {}
        }
        if !self.arrival.is_valid() {
            return bad("arrival interval and rate must be positive and finite");
        }
        if self.tau.is_nan() || self.tau <= T::zero() {
            return bad("tau must be positive or inf");
        }
        self.engine.validate()?;
        Ok(())
    }
}

/// Element that committed a photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    /// First splitter of the interferometer.
    Bs1,
    /// Recombining splitter of the interferometer.
    Bs2,
    /// Lone splitter of a single-splitter run.
    Splitter,
    Magnet,
}

impl Element {
    pub fn name(self) -> &'static str {
        match self {
            Element::Bs1 => "bs1",
            Element::Bs2 => "bs2",
            Element::Splitter => "bs",
            Element::Magnet => "sg",
        }
    }
}

/// What an element committed the photon to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chosen {
    Port(Port),
    D1,
    D2,
    Up,
    Down,
}

impl Chosen {
    pub fn label(self) -> &'static str {
        match self {
            Chosen::Port(p) => p.label(),
            Chosen::D1 => "D1",
            Chosen::D2 => "D2",
            Chosen::Up => "up",
            Chosen::Down => "down",
        }
    }
}

/// One commit of one photon at one element.
#[derive(Debug, Clone, PartialEq)]
pub struct EventRecord<T> {
    pub photon_id: u64,
    pub time: T,
    pub element: Element,
    pub chosen: Chosen,
    pub imbalance_before: T,
    pub imbalance_after: T,
    /// Reaction wave, present at elements a photon enters through one port.
    pub response: Option<ApparatusResponse<T>>,
}

/// Destination for per-photon events.
pub trait EventSink<T> {
    fn record(&mut self, event: EventRecord<T>) -> io::Result<()>;
}

impl<T> EventSink<T> for Vec<EventRecord<T>> {
    fn record(&mut self, event: EventRecord<T>) -> io::Result<()> {
        self.push(event);
        Ok(())
    }
}

/// Drops every event.
#[derive(Debug, Default, Clone, Copy)]
pub struct Discard;

impl<T> EventSink<T> for Discard {
    fn record(&mut self, _event: EventRecord<T>) -> io::Result<()> {
        Ok(())
    }
}

/// Aggregate result of one run.
///
/// Index 0 of the paired arrays is D1 / port I / spin up, index 1 the other
/// outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary<T> {
    pub photons: u64,
    pub counts: [u64; 2],
    pub frequencies: [T; 2],
    pub expected: [T; 2],
    pub outcomes: [Chosen; 2],
    pub final_imbalances: Vec<(Element, T)>,
    /// Angular momentum deposited in the apparatus, ħ units.
    pub accumulated_beth_l: T,
}

impl<T: Scalar> RunSummary<T> {
    /// `count_first − photons·expected_first`.
    pub fn deviation(&self) -> T {
        T::from_count(self.counts[0]) - T::from_count(self.photons) * self.expected[0]
    }
}
