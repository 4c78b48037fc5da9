//! Path selection: Born sampling and imbalance-driven rebalancing.
//!
//! Each path-committing element owns an [`ImbalanceState`]. Every commit moves
//! the element's imbalance by `indicator(port = I) − p_I`, whichever engine
//! made the choice, so the two accounts can be compared on the same quantity.
//! The Born engine ignores the imbalance; the rebalancing engines use it.

use thiserror::Error;

use crate::amplitude::Port;
use crate::rng::SimRng;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelectionError {
    #[error("target probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("event at t = {now} precedes previous event at t = {last}")]
    TimeOrder { now: f64, last: f64 },
    #[error("bias gain must be positive and finite, got {0}")]
    Gain(f64),
    #[error("relaxation time must be positive, got {0}")]
    RelaxationTime(f64),
}

/// Accumulated deficit toward port I at one element, with exponential
/// relaxation toward zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImbalanceState<T> {
    pub b: T,
    pub last_event_time: T,
    /// Relaxation time; `+∞` disables dissipation.
    pub tau: T,
}

impl<T: Scalar> ImbalanceState<T> {
    pub fn new(tau: T) -> Result<Self, SelectionError> {
        if tau.is_nan() || tau <= T::zero() {
            return Err(SelectionError::RelaxationTime(tau.as_f64()));
        }
        Ok(Self {
            b: T::zero(),
            last_event_time: T::zero(),
            tau,
        })
    }

    /// Never relaxes.
    pub fn persistent() -> Self {
        Self {
            b: T::zero(),
            last_event_time: T::zero(),
            tau: T::infinity(),
        }
    }

    /// Decays `b` to time `now`: `b ← b·exp(−(now − last)/τ)`.
    pub fn dissipate(&self, now: T) -> Result<Self, SelectionError> {
        if now < self.last_event_time {
            return Err(SelectionError::TimeOrder {
                now: now.as_f64(),
                last: self.last_event_time.as_f64(),
            });
        }
        let dt = now - self.last_event_time;
        let b = if dt == T::zero() || self.tau.is_infinite() {
            self.b
        } else {
            self.b * (-dt / self.tau).exp()
        };
        Ok(Self {
            b,
            last_event_time: now,
            tau: self.tau,
        })
    }

    fn commit(&mut self, port: Port, p_i: T) -> Outcome<T> {
        let before = self.b;
        self.b = before + (indicator::<T>(port) - p_i);
        Outcome {
            port,
            imbalance_before: before,
            imbalance_after: self.b,
        }
    }
}

/// Free-standing form of [`ImbalanceState::dissipate`].
pub fn dissipate<T: Scalar>(
    imb: &ImbalanceState<T>,
    now: T,
) -> Result<ImbalanceState<T>, SelectionError> {
    imb.dissipate(now)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EngineKind<T> {
    Born,
    RebalanceGreedy,
    RebalanceBiased { gain: T },
}

impl<T: Scalar> EngineKind<T> {
    pub fn validate(&self) -> Result<(), SelectionError> {
        match *self {
            EngineKind::RebalanceBiased { gain } if !(gain.is_finite() && gain > T::zero()) => {
                Err(SelectionError::Gain(gain.as_f64()))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EngineKind::Born => "born",
            EngineKind::RebalanceGreedy => "rebalance_greedy",
            EngineKind::RebalanceBiased { .. } => "rebalance_biased",
        }
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self, EngineKind::RebalanceGreedy)
    }
}

/// Result of one commit at one element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome<T> {
    pub port: Port,
    pub imbalance_before: T,
    pub imbalance_after: T,
}

fn indicator<T: Scalar>(port: Port) -> T {
    match port {
        Port::I => T::one(),
        Port::II => T::zero(),
    }
}

fn check_probability<T: Scalar>(p: T) -> Result<(), SelectionError> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(SelectionError::Probability(p.as_f64()))
    }
}

fn sample<T: Scalar>(p: T, rng: &mut SimRng) -> Port {
    // one draw per call regardless of p, so streams stay aligned across engines
    let u = rng.unit();
    if p >= T::one() || u < p.as_f64() {
        Port::I
    } else {
        Port::II
    }
}

/// Chooses port I with probability `p_i`.
pub fn born_choose<T: Scalar>(
    p_i: T,
    imb: &mut ImbalanceState<T>,
    rng: &mut SimRng,
) -> Result<Outcome<T>, SelectionError> {
    check_probability(p_i)?;
    let port = sample(p_i, rng);
    Ok(imb.commit(port, p_i))
}

/// Deterministically picks the port that leaves `|b|` smallest; ties go to I.
///
/// The two candidate imbalances differ by exactly 1, so `|b| ≤ 1/2` after
/// every commit.
pub fn rebalance_choose_greedy<T: Scalar>(
    p_i: T,
    imb: &mut ImbalanceState<T>,
) -> Result<Outcome<T>, SelectionError> {
    check_probability(p_i)?;
    let if_i = (imb.b + (T::one() - p_i)).abs();
    let if_ii = (imb.b - p_i).abs();
    // rounding drift in b must not turn an exact tie into a preference
    let tie = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));
    let port = if if_i <= if_ii + tie {
        Port::I
    } else {
        Port::II
    };
    Ok(imb.commit(port, p_i))
}

/// Samples port I with probability `clamp(p_i − gain·b, 0, 1)`.
pub fn rebalance_choose_biased<T: Scalar>(
    p_i: T,
    imb: &mut ImbalanceState<T>,
    gain: T,
    rng: &mut SimRng,
) -> Result<Outcome<T>, SelectionError> {
    check_probability(p_i)?;
    let biased = (p_i - gain * imb.b).max(T::zero()).min(T::one());
    let port = sample(biased, rng);
    Ok(imb.commit(port, p_i))
}

/// An engine kind bound to its random stream for one run.
#[derive(Debug, Clone)]
pub struct SelectionEngine<T> {
    kind: EngineKind<T>,
    rng: SimRng,
}

impl<T: Scalar> SelectionEngine<T> {
    pub fn new(kind: EngineKind<T>, rng: SimRng) -> Result<Self, SelectionError> {
        kind.validate()?;
        Ok(Self { kind, rng })
    }

    pub fn kind(&self) -> EngineKind<T> {
        self.kind
    }

    pub fn choose(
        &mut self,
        p_i: T,
        imb: &mut ImbalanceState<T>,
    ) -> Result<Outcome<T>, SelectionError> {
        match self.kind {
            EngineKind::Born => born_choose(p_i, imb, &mut self.rng),
            EngineKind::RebalanceGreedy => rebalance_choose_greedy(p_i, imb),
            EngineKind::RebalanceBiased { gain } => {
                rebalance_choose_biased(p_i, imb, gain, &mut self.rng)
            }
        }
    }
}
