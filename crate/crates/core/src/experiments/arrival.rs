use crate::rng::SimRng;
use crate::scalar::Scalar;

/// Photon arrival process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arrival<T> {
    /// One photon every `interval` seconds, the first at `interval`.
    Fixed { interval: T },
    /// Exponential interarrival times with the given rate in Hz.
    Poisson { rate: T },
}

impl<T: Scalar> Arrival<T> {
    pub fn is_valid(&self) -> bool {
        let x = match *self {
            Arrival::Fixed { interval } => interval,
            Arrival::Poisson { rate } => rate,
        };
        x.is_finite() && x > T::zero()
    }

    /// Mean time between photons.
    pub fn mean_interarrival(&self) -> T {
        match *self {
            Arrival::Fixed { interval } => interval,
            Arrival::Poisson { rate } => rate.recip(),
        }
    }
}

/// Lazily generated, strictly increasing arrival times.
#[derive(Debug, Clone)]
pub struct ArrivalClock<T> {
    process: Arrival<T>,
    rng: SimRng,
    index: u64,
    last: T,
}

impl<T: Scalar> ArrivalClock<T> {
    pub fn new(process: Arrival<T>, rng: SimRng) -> Self {
        Self {
            process,
            rng,
            index: 0,
            last: T::zero(),
        }
    }
}

impl<T: Scalar> Iterator for ArrivalClock<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        self.index += 1;
        let mut t = match self.process {
            Arrival::Fixed { interval } => T::from_count(self.index) * interval,
            Arrival::Poisson { rate } => self.last + T::lit(self.rng.exponential(rate.as_f64())),
        };
        if t <= self.last {
            // interarrival below the resolution of the running clock
            t = self.last + self.last.abs().max(T::min_positive_value()) * T::epsilon();
        }
        self.last = t;
        Some(t)
    }
}

/// First `n` arrival times of `process`.
pub fn arrival_times<T: Scalar>(process: Arrival<T>, n: usize, rng: SimRng) -> Vec<T> {
    ArrivalClock::new(process, rng).take(n).collect()
}
