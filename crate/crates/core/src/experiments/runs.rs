use num_complex::Complex;

use super::{
    ArrivalClock, Chosen, Element, EventRecord, EventSink, ExperimentConfig, ExperimentError,
    ExperimentKind, RunSummary,
};
use crate::amplitude::{port_intensities, Port, TwoModeState};
use crate::elements::{
    apparatus_response_for, bs_transfer, phase_shift, reconstruct, stern_gerlach_probs,
    BeamSplitterSpec, SpinState,
};
use crate::rng::{SimRng, STREAM_ARRIVAL, STREAM_SELECTION};
use crate::scalar::Scalar;
use crate::selection::{ImbalanceState, SelectionEngine};

/// Intensities below this are treated as exact destructive interference.
pub const DESTRUCTIVE_THRESHOLD: f64 = 1e-12;

pub fn snap_intensity<T: Scalar>(x: T) -> T {
    if x < T::lit(DESTRUCTIVE_THRESHOLD) {
        T::zero()
    } else {
        x
    }
}

fn normalized_pair<T: Scalar>(first: T, second: T) -> (T, T) {
    let (a, b) = (snap_intensity(first), snap_intensity(second));
    let total = a + b;
    (a / total, b / total)
}

/// `(cos²(Δ/2), sin²(Δ/2))`: detector probabilities of an ideal interferometer.
pub fn mz_ideal_probs<T: Scalar>(delta: T) -> (T, T) {
    let (s, c) = (delta * T::lit(0.5)).sin_cos();
    (c * c, s * s)
}

/// Output of the recombining splitter for a unit photon entering the first,
/// with `e^{iΔ}` applied to arm I.
///
/// Under the π/2 reflection convention the constructive output at Δ = 0 is
/// port II, which is therefore detector D1; port I is D2.
pub fn mz_output_state<T: Scalar>(delta: T, splitter: &BeamSplitterSpec<T>) -> TwoModeState<T> {
    let arms = bs_transfer(Complex::new(T::one(), T::zero()), splitter);
    splitter.apply(&phase_shift(&arms, Port::I, delta))
}

/// Normalized `(p_D1, p_D2)` from the transfer-matrix pipeline.
pub fn mz_detector_probs<T: Scalar>(delta: T, splitter: &BeamSplitterSpec<T>) -> (T, T) {
    detector_probs_from(&mz_output_state(delta, splitter))
}

fn detector_probs_from<T: Scalar>(out: &TwoModeState<T>) -> (T, T) {
    let (to_d2, to_d1) = port_intensities(out);
    normalized_pair(to_d1, to_d2)
}

fn first_or_second(port: Port, first: Chosen, second: Chosen) -> Chosen {
    match port {
        Port::I => first,
        Port::II => second,
    }
}

struct RunState<T> {
    engine: SelectionEngine<T>,
    clock: ArrivalClock<T>,
    counts: [u64; 2],
}

impl<T: Scalar> RunState<T> {
    fn new(cfg: &ExperimentConfig<T>) -> Result<Self, ExperimentError> {
        cfg.validate()?;
        Ok(Self {
            engine: SelectionEngine::new(cfg.engine, SimRng::stream(cfg.seed, STREAM_SELECTION))?,
            clock: ArrivalClock::new(cfg.arrival, SimRng::stream(cfg.seed, STREAM_ARRIVAL)),
            counts: [0; 2],
        })
    }

    fn summary(
        self,
        cfg: &ExperimentConfig<T>,
        expected: (T, T),
        outcomes: [Chosen; 2],
        final_imbalances: Vec<(Element, T)>,
        accumulated_beth_l: T,
    ) -> RunSummary<T> {
        let n = T::from_count(cfg.photons);
        RunSummary {
            photons: cfg.photons,
            counts: self.counts,
            frequencies: [
                T::from_count(self.counts[0]) / n,
                T::from_count(self.counts[1]) / n,
            ],
            expected: [expected.0, expected.1],
            outcomes,
            final_imbalances,
            accumulated_beth_l,
        }
    }
}

fn wrong_kind(want: &str, got: &str) -> ExperimentError {
    ExperimentError::Config(format!("expected a {want} experiment, got {got}"))
}

/// Dispatches on `cfg.kind`.
pub fn run_experiment<T: Scalar>(
    cfg: &ExperimentConfig<T>,
    sink: &mut impl EventSink<T>,
) -> Result<RunSummary<T>, ExperimentError> {
    match cfg.kind {
        ExperimentKind::SingleBs { .. } => run_single_bs(cfg, sink),
        ExperimentKind::MachZehnder { .. } => run_mach_zehnder(cfg, sink),
        ExperimentKind::SternGerlach { .. } => run_stern_gerlach(cfg, sink),
    }
}

/// Commits each photon at a lone splitter with target `p_I = T`.
pub fn run_single_bs<T: Scalar>(
    cfg: &ExperimentConfig<T>,
    sink: &mut impl EventSink<T>,
) -> Result<RunSummary<T>, ExperimentError> {
    let ExperimentKind::SingleBs { splitter } = cfg.kind else {
        return Err(wrong_kind("single_bs", cfg.kind.name()));
    };
    let mut st = RunState::new(cfg)?;
    let mut imb = ImbalanceState::new(cfg.tau)?;
    let p_i = splitter.probability_i();

    for photon_id in 0..cfg.photons {
        let now = st.clock.next().expect("unbounded clock");
        imb = imb.dissipate(now)?;
        let o = st.engine.choose(p_i, &mut imb)?;
        st.counts[o.port as usize] += 1;
        sink.record(EventRecord {
            photon_id,
            time: now,
            element: Element::Splitter,
            chosen: Chosen::Port(o.port),
            imbalance_before: o.imbalance_before,
            imbalance_after: o.imbalance_after,
            response: Some(apparatus_response_for(&splitter, o.port)),
        })?;
    }

    let p_ii = splitter.reflectance();
    Ok(st.summary(
        cfg,
        (p_i, p_ii),
        [Chosen::Port(Port::I), Chosen::Port(Port::II)],
        vec![(Element::Splitter, imb.b)],
        T::zero(),
    ))
}

/// Two-splitter interferometer.
///
/// Per photon: both splitters relax to the arrival time; the first commits the
/// photon to an arm with target `T` and leaves its reaction wave; photon and
/// reaction travel the arms (arm I picks up `e^{iΔ}`) and interfere in the
/// second splitter, whose output intensities become its targets for D1/D2.
pub fn run_mach_zehnder<T: Scalar>(
    cfg: &ExperimentConfig<T>,
    sink: &mut impl EventSink<T>,
) -> Result<RunSummary<T>, ExperimentError> {
    let ExperimentKind::MachZehnder { delta, splitter } = cfg.kind else {
        return Err(wrong_kind("mach_zehnder", cfg.kind.name()));
    };
    let mut st = RunState::new(cfg)?;
    let mut imb1 = ImbalanceState::new(cfg.tau)?;
    let mut imb2 = ImbalanceState::new(cfg.tau)?;
    let p_arm_i = splitter.probability_i();
    let mut expected = None;

    for photon_id in 0..cfg.photons {
        let now = st.clock.next().expect("unbounded clock");
        imb1 = imb1.dissipate(now)?;
        imb2 = imb2.dissipate(now)?;

        let first = st.engine.choose(p_arm_i, &mut imb1)?;
        let response = apparatus_response_for(&splitter, first.port);
        sink.record(EventRecord {
            photon_id,
            time: now,
            element: Element::Bs1,
            chosen: Chosen::Port(first.port),
            imbalance_before: first.imbalance_before,
            imbalance_after: first.imbalance_after,
            response: Some(response),
        })?;

        // photon + reaction, carried from the path basis into the arm modes
        let paths = reconstruct(first.port, &response)?;
        let arms = TwoModeState::new(
            paths.amp_i * splitter.mode_phasor(Port::I),
            paths.amp_ii * splitter.mode_phasor(Port::II),
        );
        let out = splitter.apply(&phase_shift(&arms, Port::I, delta));
        let (p_d1, p_d2) = detector_probs_from(&out);
        expected.get_or_insert((p_d1, p_d2));

        let second = st.engine.choose(p_d1, &mut imb2)?;
        st.counts[second.port as usize] += 1;
        sink.record(EventRecord {
            photon_id,
            time: now,
            element: Element::Bs2,
            chosen: first_or_second(second.port, Chosen::D1, Chosen::D2),
            imbalance_before: second.imbalance_before,
            imbalance_after: second.imbalance_after,
            response: None,
        })?;
    }

    let expected = expected.expect("at least one photon");
    Ok(st.summary(
        cfg,
        expected,
        [Chosen::D1, Chosen::D2],
        vec![(Element::Bs1, imb1.b), (Element::Bs2, imb2.b)],
        T::zero(),
    ))
}

/// Spin-1/2 analyzer. Each commit deposits the incident field component minus
/// the measured one, `cos φ/2 ∓ 1/2`, in the magnet.
pub fn run_stern_gerlach<T: Scalar>(
    cfg: &ExperimentConfig<T>,
    sink: &mut impl EventSink<T>,
) -> Result<RunSummary<T>, ExperimentError> {
    let ExperimentKind::SternGerlach { phi } = cfg.kind else {
        return Err(wrong_kind("stern_gerlach", cfg.kind.name()));
    };
    let mut st = RunState::new(cfg)?;
    let mut imb = ImbalanceState::new(cfg.tau)?;
    let (up, down) = stern_gerlach_probs(phi);
    let (p_up, p_down) = normalized_pair(up, down);
    let incident = SpinState::new(phi).field_component();
    let half = T::lit(0.5);
    let mut deposited = T::zero();

    for photon_id in 0..cfg.photons {
        let now = st.clock.next().expect("unbounded clock");
        imb = imb.dissipate(now)?;
        let o = st.engine.choose(p_up, &mut imb)?;
        st.counts[o.port as usize] += 1;
        let measured = match o.port {
            Port::I => half,
            Port::II => -half,
        };
        deposited = deposited + (incident - measured);
        sink.record(EventRecord {
            photon_id,
            time: now,
            element: Element::Magnet,
            chosen: first_or_second(o.port, Chosen::Up, Chosen::Down),
            imbalance_before: o.imbalance_before,
            imbalance_after: o.imbalance_after,
            response: None,
        })?;
    }

    Ok(st.summary(
        cfg,
        (p_up, p_down),
        [Chosen::Up, Chosen::Down],
        vec![(Element::Magnet, imb.b)],
        deposited,
    ))
}
