#![allow(dead_code)]

use mzsim::config::{ConfigDocument, ExperimentName, SweepParam, SweepSpec};
use mzsim::experiments::Arrival;
use mzsim::fresnel::InterfaceSpec;
use mzsim::{EngineKind, SimRng};

fn pick<T: Copy>(rng: &mut SimRng, xs: &[T]) -> T {
    xs[(rng.next_u64() % xs.len() as u64) as usize]
}

fn coin(rng: &mut SimRng) -> bool {
    rng.next_u64() & 1 == 1
}

fn real(rng: &mut SimRng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.unit()
}

/// Random document that satisfies every cross-directive rule.
pub fn random_document(rng: &mut SimRng) -> ConfigDocument {
    let kind = pick(
        rng,
        &[
            ExperimentName::SingleBs,
            ExperimentName::MachZehnder,
            ExperimentName::SternGerlach,
        ],
    );
    let mut doc = ConfigDocument::new(kind);
    doc.engine = match rng.next_u64() % 3 {
        0 => EngineKind::Born,
        1 => EngineKind::RebalanceGreedy,
        _ => EngineKind::RebalanceBiased {
            gain: real(rng, 1e-3, 10.0),
        },
    };
    doc.photons = 1 + rng.next_u64() % 1_000_000;
    doc.seed = rng.next_u64();
    doc.replicas = 1 + (rng.next_u64() % 8) as u32;
    doc.arrival = if coin(rng) {
        Arrival::Fixed {
            interval: real(rng, 1e-9, 10.0),
        }
    } else {
        Arrival::Poisson {
            rate: real(rng, 1e-3, 1e6),
        }
    };
    doc.tau = if coin(rng) {
        f64::INFINITY
    } else {
        real(rng, 1e-6, 1e3)
    };

    let start = real(rng, -10.0, 10.0);
    let sweep = |param, start: f64, rng: &mut SimRng| SweepSpec {
        param,
        start,
        stop: start + real(rng, 1e-3, 10.0),
        steps: 2 + (rng.next_u64() % 50) as usize,
    };
    match kind {
        ExperimentName::MachZehnder => {
            if coin(rng) {
                doc.sweep = Some(sweep(SweepParam::Delta, start, rng));
            } else {
                doc.delta = Some(real(rng, -20.0, 20.0));
            }
        }
        ExperimentName::SternGerlach => {
            if coin(rng) {
                doc.sweep = Some(sweep(SweepParam::Phi, start, rng));
            } else {
                doc.phi = Some(real(rng, -20.0, 20.0));
            }
        }
        ExperimentName::SingleBs => {}
    }
    if kind != ExperimentName::SternGerlach {
        match rng.next_u64() % 3 {
            0 => doc.transmittance = Some(rng.unit()),
            1 => {
                doc.splitter =
                    Some(InterfaceSpec::new(real(rng, 1.0, 3.0), real(rng, 1.0, 3.0)).unwrap())
            }
            _ if kind == ExperimentName::SingleBs => doc.transmittance = Some(0.5),
            _ => {}
        }
    }
    if doc.sweep.is_none() && coin(rng) {
        doc.sweep = Some(sweep(SweepParam::Tau, real(rng, 1e-6, 5.0), rng));
    }
    if coin(rng) {
        doc.output = Some(format!("results_{}.csv", rng.next_u64() % 1000));
    }
    doc
}
