//! Streaming, mergeable Monte Carlo accumulators with Wilson confidence
//! intervals, plus the coupled HS/Bures correction-factor estimator.

use crate::criteria::Verdict;
use crate::normal::inv_phi;

/// Counter state for one estimation run (or one worker's share of it).
///
/// `merge` is a fieldwise sum, so worker states combine in any order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EstimatorState {
    pub trials: u64,
    /// PPT (separable for 2x2 and 2x3) hits.
    pub hits: u64,
    /// Hits with det(rho^PT) > det(rho), counted among `hits`.
    pub det_greater_hits: u64,
    /// Hits certified by the spectrum criterion, counted among `hits`.
    pub spectrum_hits: u64,
    /// Optional (trials, hits) checkpoints recorded by a reducer.
    pub trace: Option<Vec<(u64, u64)>>,
}

impl EstimatorState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, v: &Verdict) {
        self.trials += 1;
        if v.ppt {
            self.hits += 1;
            if v.det_pt_greater {
                self.det_greater_hits += 1;
            }
            if v.spectrum_separable {
                self.spectrum_hits += 1;
            }
        }
    }

    /// Fieldwise sum. Checkpoint traces don't compose across shards, so the
    /// merged trace is whichever side has one (reducers own the trace).
    pub fn merge(&mut self, other: &EstimatorState) {
        self.trials += other.trials;
        self.hits += other.hits;
        self.det_greater_hits += other.det_greater_hits;
        self.spectrum_hits += other.spectrum_hits;
        if self.trace.is_none() {
            self.trace = other.trace.clone();
        }
    }

    /// Appends the current totals to the trace.
    pub fn record_checkpoint(&mut self) {
        self.trace.get_or_insert_with(Vec::new).push((self.trials, self.hits));
    }

    pub fn p_hat(&self) -> f64 {
        if self.trials == 0 {
            return f64::NAN;
        }
        self.hits as f64 / self.trials as f64
    }

    /// Fraction of hits with det(rho^PT) > det(rho).
    pub fn det_split(&self) -> f64 {
        if self.hits == 0 {
            return f64::NAN;
        }
        self.det_greater_hits as f64 / self.hits as f64
    }

    pub fn spectrum_fraction(&self) -> f64 {
        if self.hits == 0 {
            return f64::NAN;
        }
        self.spectrum_hits as f64 / self.hits as f64
    }

    /// Wilson score interval for the hit probability.
    pub fn wilson_ci(&self, level: f64) -> (f64, f64) {
        wilson(self.hits, self.trials, level)
    }

    /// Trace as CSV, one checkpoint per line.
    pub fn trace_csv(&self, level: f64) -> String {
        let mut out = String::from("trials,hits,p_hat,ci_lo,ci_hi\n");
        if let Some(trace) = &self.trace {
            for &(n, h) in trace {
                let (lo, hi) = wilson(h, n, level);
                let p = if n > 0 { h as f64 / n as f64 } else { f64::NAN };
                out.push_str(&format!("{n},{h},{p},{lo},{hi}\n"));
            }
        }
        out
    }
}

/// Wilson score interval for h successes in n trials.
pub fn wilson(h: u64, n: u64, level: f64) -> (f64, f64) {
    assert!(n >= 1, "wilson interval needs at least one trial");
    assert!(level > 0.0 && level < 1.0);
    let z = inv_phi(0.5 + level / 2.0);
    let nf = n as f64;
    let p = h as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Paired HS/Bures counters sharing the Ginibre block draw by draw.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoupledState {
    pub trials: u64,
    pub hs_hits: u64,
    pub bures_hits: u64,
}

impl CoupledState {
    pub fn merge(&mut self, other: &CoupledState) {
        self.trials += other.trials;
        self.hs_hits += other.hs_hits;
        self.bures_hits += other.bures_hits;
    }

    pub fn hs_hat(&self) -> f64 {
        self.hs_hits as f64 / self.trials as f64
    }

    pub fn bures_hat(&self) -> f64 {
        self.bures_hits as f64 / self.trials as f64
    }
}

/// Corrected Bures estimate: the HS arm of the coupled run is pinned to its
/// known value, and the averaged correction factor (1 + truth/hs_hat)/2 is
/// applied to the Bures arm. The average reflects that only half of each
/// draw's normal variates are shared between the two arms.
pub fn corrected_bures(coupled: &CoupledState, hs_truth: f64) -> Result<f64, &'static str> {
    if coupled.hs_hits == 0 {
        return Err("division by zero: no HS hits");
    }
    let factor = hs_truth / coupled.hs_hat();
    Ok(coupled.bures_hat() * (1.0 + factor) / 2.0)
}
