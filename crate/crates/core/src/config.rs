//! Line-oriented experiment configuration.
//!
//! One directive per line, `keyword arg...`; `#` starts a comment. Keywords:
//!
//! ```text
//! experiment    single_bs | mach_zehnder | stern_gerlach     (required, once)
//! engine        born | rebalance_greedy | rebalance_biased [gain]
//! photons       N
//! seed          S
//! delta         radians                  (mach_zehnder)
//! phi           radians                  (stern_gerlach)
//! transmittance T                        (single_bs, mach_zehnder)
//! splitter      from_interface n1 n2     (single_bs, mach_zehnder)
//! arrival       fixed <interval s> | poisson <rate Hz>
//! tau           seconds | inf
//! sweep         delta|phi|tau start stop steps
//! replicas      R
//! output        path
//! ```
//!
//! Sweep grids include both endpoints.

use std::str::FromStr;

use thiserror::Error;

use crate::elements::BeamSplitterSpec;
use crate::experiments::{Arrival, ExperimentConfig, ExperimentKind};
use crate::fresnel::{bs_from_interface, InterfaceSpec};
use crate::rng::derive_seed;
use crate::selection::EngineKind;

pub const DEFAULT_PHOTONS: u64 = 10_000;
pub const DEFAULT_GAIN: f64 = 1.0;

const KEYWORDS: [&str; 13] = [
    "experiment",
    "engine",
    "photons",
    "seed",
    "delta",
    "phi",
    "transmittance",
    "splitter",
    "arrival",
    "tau",
    "sweep",
    "replicas",
    "output",
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: unknown keyword `{keyword}`")]
    UnknownKeyword { line: usize, keyword: String },
    #[error("line {line}: duplicate `{keyword}` directive")]
    Duplicate { line: usize, keyword: String },
    #[error("line {line}: malformed number `{text}`")]
    BadNumber { line: usize, text: String },
    #[error("line {line}: {message}")]
    BadDirective { line: usize, message: String },
    #[error("missing `experiment` directive")]
    MissingExperiment,
    #[error("{experiment} requires `{parameter}`")]
    MissingParameter {
        experiment: &'static str,
        parameter: &'static str,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentName {
    SingleBs,
    MachZehnder,
    SternGerlach,
}

impl ExperimentName {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentName::SingleBs => "single_bs",
            ExperimentName::MachZehnder => "mach_zehnder",
            ExperimentName::SternGerlach => "stern_gerlach",
        }
    }
}

impl FromStr for ExperimentName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single_bs" => Ok(ExperimentName::SingleBs),
            "mach_zehnder" => Ok(ExperimentName::MachZehnder),
            "stern_gerlach" => Ok(ExperimentName::SternGerlach),
            other => Err(format!("unknown experiment `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Delta,
    Phi,
    Tau,
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::Delta => "delta",
            SweepParam::Phi => "phi",
            SweepParam::Tau => "tau",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    /// `steps` evenly spaced values from `start` to `stop` inclusive.
    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + span * (i as f64 / last)
                }
            })
            .collect()
    }
}

/// Validated configuration with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub experiment: ExperimentName,
    pub engine: EngineKind<f64>,
    pub photons: u64,
    pub seed: u64,
    pub delta: Option<f64>,
    pub phi: Option<f64>,
    pub transmittance: Option<f64>,
    pub splitter: Option<InterfaceSpec<f64>>,
    pub arrival: Arrival<f64>,
    pub tau: f64,
    pub sweep: Option<SweepSpec>,
    pub replicas: u32,
    pub output: Option<String>,
}

impl ConfigDocument {
    /// Document with every optional setting at its default.
    pub fn new(experiment: ExperimentName) -> Self {
        Self {
            experiment,
            engine: EngineKind::Born,
            photons: DEFAULT_PHOTONS,
            seed: 0,
            delta: None,
            phi: None,
            transmittance: None,
            splitter: None,
            arrival: Arrival::Fixed { interval: 1.0 },
            tau: f64::INFINITY,
            sweep: None,
            replicas: 1,
            output: None,
        }
    }

    /// Checks cross-directive rules.
    pub fn validate(&self) -> Result<(), ConfigError> {
        use ExperimentName::*;
        let kind = self.experiment;
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        let swept = self.sweep.map(|s| s.param);

        let not_for = |name: &str| format!("`{name}` does not apply to {}", kind.as_str());
        if self.delta.is_some() && kind != MachZehnder {
            return invalid(not_for("delta"));
        }
        if self.phi.is_some() && kind != SternGerlach {
            return invalid(not_for("phi"));
        }
        if kind == SternGerlach && (self.transmittance.is_some() || self.splitter.is_some()) {
            return invalid(not_for("transmittance/splitter"));
        }
        if self.transmittance.is_some() && self.splitter.is_some() {
            return invalid("`transmittance` and `splitter` are mutually exclusive".into());
        }
        match swept {
            Some(SweepParam::Delta) if kind != MachZehnder => {
                return invalid(not_for("sweep delta"))
            }
            Some(SweepParam::Phi) if kind != SternGerlach => return invalid(not_for("sweep phi")),
            Some(SweepParam::Delta) if self.delta.is_some() => {
                return invalid("`delta` given alongside a delta sweep".into())
            }
            Some(SweepParam::Phi) if self.phi.is_some() => {
                return invalid("`phi` given alongside a phi sweep".into())
            }
            Some(SweepParam::Tau) if self.sweep.is_some_and(|s| s.start <= 0.0) => {
                return invalid("tau sweep must start above 0".into())
            }
            _ => {}
        }
        let missing = |parameter| {
            Err(ConfigError::MissingParameter {
                experiment: kind.as_str(),
                parameter,
            })
        };
        match kind {
            MachZehnder if self.delta.is_none() && swept != Some(SweepParam::Delta) => {
                missing("delta")
            }
            SternGerlach if self.phi.is_none() && swept != Some(SweepParam::Phi) => missing("phi"),
            SingleBs if self.transmittance.is_none() && self.splitter.is_none() => {
                missing("transmittance")
            }
            _ => Ok(()),
        }
    }

    fn splitter_spec(&self) -> Result<BeamSplitterSpec<f64>, ConfigError> {
        let spec = match (self.transmittance, self.splitter) {
            (Some(t), _) => BeamSplitterSpec::with_transmittance(t).map_err(|e| e.to_string()),
            (None, Some(iface)) => bs_from_interface(&iface).map_err(|e| e.to_string()),
            (None, None) => Ok(BeamSplitterSpec::fifty_fifty()),
        };
        spec.map_err(ConfigError::Invalid)
    }

    /// Expands the document into its sweep points, in sweep order.
    pub fn sweep_points(&self) -> Result<Vec<SweepPoint>, ConfigError> {
        self.validate()?;
        let splitter = self.splitter_spec()?;
        let base = |delta: Option<f64>, phi: Option<f64>, tau: f64| {
            let kind = match self.experiment {
                ExperimentName::SingleBs => ExperimentKind::SingleBs { splitter },
                ExperimentName::MachZehnder => ExperimentKind::MachZehnder {
                    delta: delta.expect("validated"),
                    splitter,
                },
                ExperimentName::SternGerlach => ExperimentKind::SternGerlach {
                    phi: phi.expect("validated"),
                },
            };
            ExperimentConfig::new(kind, self.photons, self.seed)
                .with_engine(self.engine)
                .with_arrival(self.arrival)
                .with_tau(tau)
        };

        let points = match self.sweep {
            None => {
                let (param, value) = match self.experiment {
                    ExperimentName::SingleBs => ("transmittance", splitter.transmittance()),
                    ExperimentName::MachZehnder => ("delta", self.delta.expect("validated")),
                    ExperimentName::SternGerlach => ("phi", self.phi.expect("validated")),
                };
                vec![SweepPoint {
                    param,
                    value,
                    config: base(self.delta, self.phi, self.tau),
                }]
            }
            Some(sweep) => sweep
                .values()
                .into_iter()
                .map(|v| {
                    let config = match sweep.param {
                        SweepParam::Delta => base(Some(v), self.phi, self.tau),
                        SweepParam::Phi => base(self.delta, Some(v), self.tau),
                        SweepParam::Tau => base(self.delta, self.phi, v),
                    };
                    SweepPoint {
                        param: sweep.param.as_str(),
                        value: v,
                        config,
                    }
                })
                .collect(),
        };
        for p in &points {
            p.config
                .validate()
                .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        Ok(points)
    }
}

/// One coordinate of a sweep and the experiment run there.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub param: &'static str,
    pub value: f64,
    pub config: ExperimentConfig<f64>,
}

impl SweepPoint {
    /// Config for replica `replica` of point `index`, with its own seed.
    pub fn replica(&self, index: usize, replica: u32, replicas: u32) -> ExperimentConfig<f64> {
        let stream = index as u64 * replicas as u64 + replica as u64;
        ExperimentConfig {
            seed: derive_seed(self.config.seed, stream),
            ..self.config
        }
    }
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    args: Vec<&'a str>,
}

impl Line<'_> {
    fn bad(&self, message: impl Into<String>) -> ConfigError {
        ConfigError::BadDirective {
            line: self.number,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<(), ConfigError> {
        if self.args.len() == n {
            Ok(())
        } else {
            Err(self.bad(format!(
                "`{}` takes {n} argument(s), got {}",
                self.keyword,
                self.args.len()
            )))
        }
    }

    fn num<N: FromStr>(&self, i: usize) -> Result<N, ConfigError> {
        self.args[i].parse().map_err(|_| ConfigError::BadNumber {
            line: self.number,
            text: self.args[i].to_string(),
        })
    }

    fn finite(&self, i: usize) -> Result<f64, ConfigError> {
        let x: f64 = self.num(i)?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(ConfigError::BadNumber {
                line: self.number,
                text: self.args[i].to_string(),
            })
        }
    }

    fn positive(&self, i: usize) -> Result<f64, ConfigError> {
        let x = self.finite(i)?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(self.bad(format!("`{}` must be positive", self.keyword)))
        }
    }

    fn single(&self) -> Result<f64, ConfigError> {
        self.arity(1)?;
        self.finite(0)
    }
}

fn parse_engine(line: &Line) -> Result<EngineKind<f64>, ConfigError> {
    let name = line.args.first().copied().unwrap_or_default();
    match name {
        "born" | "rebalance_greedy" => {
            line.arity(1)?;
            Ok(if name == "born" {
                EngineKind::Born
            } else {
                EngineKind::RebalanceGreedy
            })
        }
        "rebalance_biased" => {
            let gain = match line.args.len() {
                1 => DEFAULT_GAIN,
                2 => line.positive(1)?,
                _ => return Err(line.bad("`engine rebalance_biased` takes at most a gain")),
            };
            Ok(EngineKind::RebalanceBiased { gain })
        }
        other => Err(line.bad(format!("unknown engine `{other}`"))),
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<ConfigDocument, ConfigError> {
    let mut experiment = None;
    let mut doc = ConfigDocument::new(ExperimentName::SingleBs);
    let mut seen: Vec<&str> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let line = Line {
            number: idx + 1,
            keyword,
            args: tokens.collect(),
        };

        if !KEYWORDS.contains(&keyword) {
            return Err(ConfigError::UnknownKeyword {
                line: line.number,
                keyword: keyword.into(),
            });
        }
        if seen.contains(&keyword) {
            return Err(ConfigError::Duplicate {
                line: line.number,
                keyword: keyword.into(),
            });
        }
        seen.push(keyword);

        match keyword {
            "experiment" => {
                line.arity(1)?;
                experiment = Some(line.args[0].parse().map_err(|m: String| line.bad(m))?);
            }
            "engine" => doc.engine = parse_engine(&line)?,
            "photons" => {
                line.arity(1)?;
                doc.photons = line.num(0)?;
                if doc.photons == 0 {
                    return Err(line.bad("`photons` must be at least 1"));
                }
            }
            "seed" => {
                line.arity(1)?;
                doc.seed = line.num(0)?;
            }
            "delta" => doc.delta = Some(line.single()?),
            "phi" => doc.phi = Some(line.single()?),
            "transmittance" => {
                let t = line.single()?;
                if !(0.0..=1.0).contains(&t) {
                    return Err(line.bad("`transmittance` must lie in [0, 1]"));
                }
                doc.transmittance = Some(t);
            }
            "splitter" => {
                line.arity(3)?;
                if line.args[0] != "from_interface" {
                    return Err(line.bad(format!("unknown splitter source `{}`", line.args[0])));
                }
                let iface = InterfaceSpec::new(line.finite(1)?, line.finite(2)?)
                    .map_err(|e| line.bad(e.to_string()))?;
                doc.splitter = Some(iface);
            }
            "arrival" => {
                line.arity(2)?;
                doc.arrival = match line.args[0] {
                    "fixed" => Arrival::Fixed {
                        interval: line.positive(1)?,
                    },
                    "poisson" => Arrival::Poisson {
                        rate: line.positive(1)?,
                    },
                    other => return Err(line.bad(format!("unknown arrival process `{other}`"))),
                };
            }
            "tau" => {
                line.arity(1)?;
                doc.tau = if line.args[0] == "inf" {
                    f64::INFINITY
                } else {
                    line.positive(0)?
                };
            }
            "sweep" => {
                line.arity(4)?;
                let param = match line.args[0] {
                    "delta" => SweepParam::Delta,
                    "phi" => SweepParam::Phi,
                    "tau" => SweepParam::Tau,
                    other => return Err(line.bad(format!("cannot sweep `{other}`"))),
                };
                let (start, stop) = (line.finite(1)?, line.finite(2)?);
                let steps: usize = line.num(3)?;
                if start >= stop {
                    return Err(line.bad("sweep start must be below stop"));
                }
                if steps < 2 {
                    return Err(line.bad("sweep needs at least 2 steps"));
                }
                doc.sweep = Some(SweepSpec {
                    param,
                    start,
                    stop,
                    steps,
                });
            }
            "replicas" => {
                line.arity(1)?;
                doc.replicas = line.num(0)?;
                if doc.replicas == 0 {
                    return Err(line.bad("`replicas` must be at least 1"));
                }
            }
            "output" => {
                line.arity(1)?;
                doc.output = Some(line.args[0].to_string());
            }
            _ => unreachable!("keyword list checked above"),
        }
    }

    doc.experiment = experiment.ok_or(ConfigError::MissingExperiment)?;
    doc.validate()?;
    Ok(doc)
}

/// Canonical text: fixed keyword order, defaults written out, comments dropped.
pub fn serialize_config(doc: &ConfigDocument) -> String {
    let mut out = String::new();
    let mut put = |line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    put(format!("experiment {}", doc.experiment.as_str()));
    put(match doc.engine {
        EngineKind::RebalanceBiased { gain } => format!("engine rebalance_biased {gain}"),
        other => format!("engine {}", other.name()),
    });
    put(format!("photons {}", doc.photons));
    put(format!("seed {}", doc.seed));
    if let Some(d) = doc.delta {
        put(format!("delta {d}"));
    }
    if let Some(p) = doc.phi {
        put(format!("phi {p}"));
    }
    if let Some(t) = doc.transmittance {
        put(format!("transmittance {t}"));
    }
    if let Some(s) = doc.splitter {
        put(format!("splitter from_interface {} {}", s.n1, s.n2));
    }
    put(match doc.arrival {
        Arrival::Fixed { interval } => format!("arrival fixed {interval}"),
        Arrival::Poisson { rate } => format!("arrival poisson {rate}"),
    });
    put(format!("tau {}", doc.tau));
    if let Some(s) = doc.sweep {
        put(format!(
            "sweep {} {} {} {}",
            s.param.as_str(),
            s.start,
            s.stop,
            s.steps
        ));
    }
    put(format!("replicas {}", doc.replicas));
    if let Some(o) = &doc.output {
        put(format!("output {o}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let doc = parse_config("experiment mach_zehnder\ndelta 0\nphotons 1000").unwrap();
        assert_eq!(doc.experiment, ExperimentName::MachZehnder);
        assert_eq!(doc.delta, Some(0.0));
        assert_eq!(doc.photons, 1000);
        assert_eq!(doc.engine, EngineKind::Born);
        assert_eq!(doc.seed, 0);
        assert_eq!(doc.arrival, Arrival::Fixed { interval: 1.0 });
        assert!(doc.tau.is_infinite());
    }

    #[test]
    #[allow(clippy::approx_constant)] // the config text, not the constant
    fn full_sweep_document() {
        let text = "experiment mach_zehnder\nengine rebalance_greedy\nsweep delta 0 6.283185307 16\nphotons 100000\nseed 42";
        let doc = parse_config(text).unwrap();
        assert_eq!(doc.engine, EngineKind::RebalanceGreedy);
        assert_eq!(doc.seed, 42);
        let sweep = doc.sweep.unwrap();
        assert_eq!(sweep.param, SweepParam::Delta);
        assert_eq!(sweep.steps, 16);
        let pts = doc.sweep_points().unwrap();
        assert_eq!(pts.len(), 16);
        assert_eq!(pts[0].value, 0.0);
        assert_eq!(pts[15].value, 6.283185307);
    }

    #[test]
    fn unknown_experiment_names_line() {
        let err = parse_config("experiment unknown_thing").unwrap_err();
        assert!(
            matches!(err, ConfigError::BadDirective { line: 1, .. }),
            "{err:?}"
        );
        assert!(err.to_string().starts_with("line 1:"));
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            parse_config("experiment single_bs\ntransmittance 0.5\nfoo 1"),
            Err(ConfigError::UnknownKeyword {
                line: 3,
                keyword: "foo".into()
            })
        );
        assert_eq!(
            parse_config("experiment single_bs\nexperiment single_bs"),
            Err(ConfigError::Duplicate {
                line: 2,
                keyword: "experiment".into()
            })
        );
        assert_eq!(
            parse_config("experiment mach_zehnder\ndelta abc"),
            Err(ConfigError::BadNumber {
                line: 2,
                text: "abc".into()
            })
        );
        assert_eq!(
            parse_config("experiment mach_zehnder\nphotons 10"),
            Err(ConfigError::MissingParameter {
                experiment: "mach_zehnder",
                parameter: "delta"
            })
        );
        assert_eq!(
            parse_config("photons 10"),
            Err(ConfigError::MissingExperiment)
        );
        assert!(parse_config("experiment stern_gerlach\nphi 1\ndelta 1").is_err());
        assert!(parse_config("experiment single_bs\ntransmittance 1.5").is_err());
        assert!(parse_config("experiment single_bs\ntransmittance 0.5\ntau 0").is_err());
        assert!(parse_config("experiment single_bs\ntransmittance 0.5\ntau nan").is_err());
        assert!(parse_config("experiment mach_zehnder\ndelta inf").is_err());
        assert!(parse_config("experiment mach_zehnder\nsweep delta 1 0 4").is_err());
        assert!(parse_config("experiment mach_zehnder\nsweep delta 0 1 1").is_err());
        assert!(parse_config("experiment mach_zehnder\nsweep phi 0 1 4").is_err());
        assert!(
            parse_config("experiment mach_zehnder\ndelta 0\nengine rebalance_biased -1").is_err()
        );
        assert!(parse_config("experiment single_bs\nsplitter from_interface 1 0.5").is_err());
        assert!(parse_config("experiment single_bs\ntransmittance 0.5\nphotons 0").is_err());
    }

    #[test]
    fn comments_and_blanks() {
        let text = "# header\n\nexperiment stern_gerlach   # trailing\n  phi 2.0943951023931953\n";
        let doc = parse_config(text).unwrap();
        assert_eq!(doc.phi, Some(2.0943951023931953));
        let canon = serialize_config(&doc);
        assert!(!canon.contains('#'));
    }

    #[test]
    fn canonical_form_writes_defaults() {
        let doc = parse_config("experiment mach_zehnder\ndelta 0.5").unwrap();
        let text = serialize_config(&doc);
        assert_eq!(
            text,
            "experiment mach_zehnder\nengine born\nphotons 10000\nseed 0\ndelta 0.5\n\
             arrival fixed 1\ntau inf\nreplicas 1\n"
        );
        assert_eq!(parse_config(&text).unwrap(), doc);
    }

    #[test]
    fn biased_gain_defaults_and_round_trips() {
        let doc = parse_config("experiment single_bs\ntransmittance 0.3\nengine rebalance_biased")
            .unwrap();
        assert_eq!(doc.engine, EngineKind::RebalanceBiased { gain: 1.0 });
        assert!(serialize_config(&doc).contains("engine rebalance_biased 1\n"));
    }

    #[test]
    fn interface_splitter_point() {
        let doc = parse_config("experiment single_bs\nsplitter from_interface 1 1.5").unwrap();
        let pts = doc.sweep_points().unwrap();
        assert_eq!(pts[0].param, "transmittance");
        assert!((pts[0].value - 0.96).abs() < 1e-12);
    }

    #[test]
    fn replica_seeds_are_distinct() {
        let doc = parse_config("experiment single_bs\ntransmittance 0.5\nreplicas 3").unwrap();
        let pt = &doc.sweep_points().unwrap()[0];
        let seeds: Vec<_> = (0..3).map(|r| pt.replica(0, r, 3).seed).collect();
        assert!(seeds[0] != seeds[1] && seeds[1] != seeds[2]);
    }
}
