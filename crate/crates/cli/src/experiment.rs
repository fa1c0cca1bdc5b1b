//! Random-graph experiment harness: samples configuration-model cubic
//! graphs and reports how often they are connected, upper-embeddable,
//! and admit stable/coherent decycling partitions.
//!
//! Upper embeddability of connected samples is decided through the
//! stable-partition equivalence, which the complete backtracking search
//! settles exactly, so the report never depends on search luck.

use decyc_core::decycling::{find_coherent_partition, find_stable_partition};
use decyc_core::generators::random_cubic;
use decyc_core::{SearchBudget, SearchOutcome};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExperimentReport {
    pub schema: String,
    pub n: u32,
    pub samples: u32,
    pub seed: u64,
    pub simple_only: bool,
    pub connected: u32,
    pub upper_embeddable: u32,
    pub stable_found: u32,
    pub coherent_found: u32,
    /// Samples where a search budget ran out before a verdict.
    pub unknown: u32,
}

pub fn run_experiment(n: u32, samples: u32, seed: u64, simple_only: bool) -> ExperimentReport {
    let mut report = ExperimentReport {
        schema: "decyc.experiment.v1".into(),
        n,
        samples,
        seed,
        simple_only,
        connected: 0,
        upper_embeddable: 0,
        stable_found: 0,
        coherent_found: 0,
        unknown: 0,
    };
    // The complete backtracking fallback is exact at harness sizes, so
    // the certificate searches get a small budget.
    let budget = SearchBudget { steps: 5_000, seed: seed ^ 0xA5A5 };
    for i in 0..samples {
        let sample_seed = seed.wrapping_add(i as u64).wrapping_mul(0x9E3779B97F4A7C15);
        let g = match random_cubic(n, sample_seed, simple_only) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if !g.is_connected() {
            continue;
        }
        report.connected += 1;
        match find_stable_partition(&g, &budget) {
            SearchOutcome::Found(p) => {
                report.stable_found += 1;
                report.upper_embeddable += 1;
                let coherent = if p.class.coherent {
                    true
                } else {
                    matches!(find_coherent_partition(&g, &budget), SearchOutcome::Found(_))
                };
                if coherent {
                    report.coherent_found += 1;
                }
            }
            SearchOutcome::NoneExhausted(_) => {}
            SearchOutcome::Unknown => report.unknown += 1,
        }
    }
    report
}

impl ExperimentReport {
    /// The counter inequalities every report satisfies.
    pub fn monotone(&self) -> bool {
        self.coherent_found <= self.stable_found
            && self.stable_found <= self.upper_embeddable
            && self.upper_embeddable <= self.connected
            && self.connected <= self.samples
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_monotone() {
        let a = run_experiment(12, 40, 7, false);
        let b = run_experiment(12, 40, 7, false);
        assert_eq!(a, b);
        assert!(a.monotone());
        assert!(a.connected > 0);
    }
}
