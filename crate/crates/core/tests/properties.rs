use std::f64::consts::{PI, TAU};

use mzsim::elements::SpinComponent::{Minus, Plus};
use mzsim::elements::{Polarization, WaveplateSpec};
use mzsim::experiments::{run_waveplate, Element};
use mzsim::*;
use proptest::prelude::*;

fn mz_config(delta: f64, photons: u64, seed: u64, engine: EngineKind64) -> ExperimentConfig64 {
    ExperimentConfig::new(
        ExperimentKind::MachZehnder {
            delta,
            splitter: BeamSplitterSpec::fifty_fifty(),
        },
        photons,
        seed,
    )
    .with_engine(engine)
}

fn engine_strategy() -> impl Strategy<Value = EngineKind64> {
    prop_oneof![
        Just(EngineKind::Born),
        Just(EngineKind::RebalanceGreedy),
        (0.01..5.0f64).prop_map(|gain| EngineKind::RebalanceBiased { gain }),
    ]
}

#[test]
fn greedy_sweep_has_full_visibility() {
    let sweep: Vec<(f64, f64)> = (0..32)
        .map(|k| {
            let delta = k as f64 * TAU / 32.0;
            let s = run_mach_zehnder(
                &mz_config(delta, 2000, 1, EngineKind::RebalanceGreedy),
                &mut Vec::new(),
            )
            .unwrap();
            (delta, s.frequencies[0])
        })
        .collect();
    assert!((visibility(&sweep).unwrap() - 1.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_sum_to_photons(
        delta in -10.0..10.0f64,
        photons in 1u64..3000,
        seed in any::<u64>(),
        engine in engine_strategy(),
    ) {
        let s = run_mach_zehnder(&mz_config(delta, photons, seed, engine), &mut experiments::Discard).unwrap();
        prop_assert_eq!(s.counts[0] + s.counts[1], photons);
        prop_assert!((s.frequencies[0] + s.frequencies[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn every_logged_response_restores_the_superposition(
        t in 0.05..0.95f64,
        seed in any::<u64>(),
        engine in engine_strategy(),
    ) {
        let splitter = BeamSplitterSpec::with_transmittance(t).unwrap();
        let cfg = ExperimentConfig::new(ExperimentKind::SingleBs { splitter }, 200, seed).with_engine(engine);
        let mut log = Vec::new();
        run_single_bs(&cfg, &mut log).unwrap();
        prop_assert_eq!(log.len(), 200);
        for ev in &log {
            let resp = ev.response.as_ref().expect("splitter events carry a response");
            let whole = reconstruct(resp.taken(), resp).unwrap();
            prop_assert!((whole.amp_i.re - t.sqrt()).abs() < 1e-15 && whole.amp_i.im.abs() < 1e-15);
            prop_assert!((whole.amp_ii.re - (1.0 - t).sqrt()).abs() < 1e-15 && whole.amp_ii.im.abs() < 1e-15);
        }
    }

    #[test]
    fn logged_imbalance_chains(seed in any::<u64>(), delta in 0.0..TAU) {
        let mut log = Vec::new();
        run_mach_zehnder(&mz_config(delta, 300, seed, EngineKind::RebalanceGreedy), &mut log).unwrap();
        for element in [Element::Bs1, Element::Bs2] {
            let evs: Vec<_> = log.iter().filter(|e| e.element == element).collect();
            prop_assert_eq!(evs.len(), 300);
            for pair in evs.windows(2) {
                // no relaxation, so the next photon sees exactly the last update
                prop_assert_eq!(pair[1].imbalance_before, pair[0].imbalance_after);
            }
            prop_assert!(evs.iter().all(|e| e.imbalance_after.abs() <= 0.5 + 1e-9));
        }
    }
}

#[test]
fn half_wave_plate_flips_spin_and_deposits_two_units_each() {
    let plate = WaveplateSpec::<f64>::half_wave(0.3);
    let events = run_waveplate(&plate, &Polarization::right_circular(), 25).unwrap();
    assert!(events
        .iter()
        .all(|e| e.spin_in == Plus && e.spin_out == Minus));
    assert_eq!(accumulate_beth::<f64>(&events), 50.0);
}

#[test]
fn stern_gerlach_deposit_vanishes_on_average() {
    // incident component cos(φ)/2 is the mean of the measured ±1/2
    let cfg = ExperimentConfig::new(ExperimentKind::SternGerlach { phi: PI / 3.0 }, 4000, 0)
        .with_engine(EngineKind::RebalanceGreedy);
    let s = run_stern_gerlach(&cfg, &mut experiments::Discard).unwrap();
    assert!(s.accumulated_beth_l.abs() <= 0.5 + 1e-9);
}
