//! Machine-readable run reports. The JSON is emitted with a fixed key
//! order and shortest-roundtrip float formatting, so identical configs
//! (same seed, threads, samples) produce byte-identical reports apart from
//! the timestamp field.

use seplab_core::estimator::EstimatorState;
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: String,
    pub field: String,
    pub dims: (usize, usize),
    pub measure: String,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub x_states: bool,
    pub stride: u64,
    pub alpha0: Option<f64>,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        let alpha0 = match self.alpha0 {
            Some(a) => format!("{a}"),
            None => "null".to_string(),
        };
        format!(
            "{{\"command\": \"{}\", \"field\": \"{}\", \"dims\": \"{}x{}\", \"measure\": \"{}\", \"samples\": {}, \"seed\": {}, \"threads\": {}, \"x_states\": {}, \"stride\": {}, \"alpha0\": {}}}",
            self.command,
            self.field,
            self.dims.0,
            self.dims.1,
            self.measure,
            self.samples,
            self.seed,
            self.threads,
            self.x_states,
            self.stride,
            alpha0
        )
    }
}

pub struct RegistryComparison {
    pub value: f64,
    pub z: f64,
}

pub fn estimate_report_json(
    config: &RunConfig,
    state: &EstimatorState,
    registry: Option<&RegistryComparison>,
    timestamp: u64,
) -> String {
    let (lo, hi) = state.wilson_ci(0.95);
    let registry_json = match registry {
        Some(r) => format!("{{\"value\": {}, \"z\": {}}}", r.value, r.z),
        None => "null".to_string(),
    };
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\"config\": {}, \"p_hat\": {}, \"ci\": [{}, {}], \"n\": {}, \"hits\": {}, \"splits\": {{\"det_greater\": {}, \"spectrum\": {}}}, \"registry\": {}, \"version\": \"{}\", \"timestamp\": {}}}",
        config.to_json(),
        state.p_hat(),
        lo,
        hi,
        state.trials,
        state.hits,
        state.det_split(),
        state.spectrum_fraction(),
        registry_json,
        env!("CARGO_PKG_VERSION"),
        timestamp
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_reproducible_modulo_timestamp() {
        let config = RunConfig {
            command: "estimate".into(),
            field: "C".into(),
            dims: (2, 2),
            measure: "hs".into(),
            samples: 100,
            seed: 1,
            threads: 2,
            x_states: false,
            stride: 0,
            alpha0: None,
        };
        let mut st = EstimatorState::new();
        st.trials = 100;
        st.hits = 24;
        let a = estimate_report_json(&config, &st, None, 111);
        let b = estimate_report_json(&config, &st, None, 222);
        assert_eq!(a.replace("111", "X"), b.replace("222", "X"));
        assert!(a.contains("\"p_hat\": 0.24"));
        assert!(a.contains("\"registry\": null"));
    }
}
