//! Seeded Monte Carlo simulation of pre- and post-selected ensembles.
//!
//! Trials are partitioned into fixed-size chunks; chunk c draws from a ChaCha
//! stream derived from (master seed, c), and chunk tallies are merged in chunk
//! order. Aggregate results are therefore bit-identical for a fixed master
//! seed no matter how many rayon workers execute the chunks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abl::{AblDistribution, TwoStateVector};
use crate::error::{Error, Result};
use crate::quantum::{born_distribution, orthonormal_completion, Observable, PureState};

/// Trials per deterministic chunk.
const CHUNK: u64 = 4096;

/// Default statistical pass band, in binomial standard errors.
pub const DEFAULT_SIGMA: f64 = 3.0;

/// Aggregate of a simulated ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleResult {
    pub total_runs: u64,
    pub postselected_runs: u64,
    /// postselected_runs / total_runs.
    pub postselection_rate: f64,
    /// Intermediate-outcome counts among post-selected runs, in outcome
    /// order. Present iff the intermediate measurement was performed.
    pub outcome_counts: Option<Vec<(String, u64)>>,
    /// outcome_counts / postselected_runs; present when counts are and at
    /// least one run post-selected.
    pub conditional_frequencies: Option<Vec<(String, f64)>>,
    pub master_seed: u64,
}

/// One simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub postselected: bool,
    /// Present iff the intermediate measurement was performed.
    pub intermediate_outcome: Option<String>,
}

/// Pre-computed sampling tables shared by every trial of a scenario.
struct TrialTables {
    /// Born probabilities of the intermediate outcomes on the pre-state,
    /// plus, per outcome, the final-measurement distribution after collapse.
    intermediate: Option<(Vec<f64>, Vec<Vec<f64>>)>,
    /// Final-measurement distribution straight from the pre-state.
    direct: Vec<f64>,
}

impl TrialTables {
    fn new(tsv: &TwoStateVector, intermediate: Option<&Observable>) -> Result<Self> {
        // The final selection is sampled in an orthonormal basis containing
        // |b⟩ (index 0); only the b / not-b dichotomy is ever used.
        let final_basis = orthonormal_completion(tsv.post());
        let measure_in_final = |state: &PureState| -> Result<Vec<f64>> {
            final_basis
                .iter()
                .map(|v| crate::quantum::overlap(v, state))
                .collect()
        };
        let intermediate = match intermediate {
            Some(obs) => {
                if obs.dim() != tsv.dim() {
                    return Err(Error::DimensionMismatch {
                        left: tsv.dim(),
                        right: obs.dim(),
                    });
                }
                let born = born_distribution(tsv.pre(), obs)?;
                let after: Vec<Vec<f64>> = obs
                    .eigenvectors()
                    .iter()
                    .map(measure_in_final)
                    .collect::<Result<_>>()?;
                Some((born, after))
            }
            None => None,
        };
        Ok(Self {
            intermediate,
            direct: measure_in_final(tsv.pre())?,
        })
    }

    /// (postselected, intermediate outcome index).
    fn run(&self, rng: &mut impl Rng) -> (bool, Option<usize>) {
        match &self.intermediate {
            Some((born, after)) => {
                let k = sample_index(born, rng);
                let m = sample_index(&after[k], rng);
                (m == 0, Some(k))
            }
            None => (sample_index(&self.direct, rng) == 0, None),
        }
    }
}

/// Inverse-CDF sampling with a single uniform draw. Zero-probability entries
/// can never be selected.
fn sample_index(probs: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (k, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return k;
        }
    }
    // Rounding pushed the cumulative total below u: take the last possible
    // outcome.
    probs
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("at least one positive probability")
}

/// Simulates a single run: prepare the pre-state, optionally measure the
/// intermediate observable (Born sample + collapse), then measure in an
/// orthonormal basis containing the post-state and report whether the
/// post-selection outcome occurred.
pub fn run_trial(
    tsv: &TwoStateVector,
    intermediate: Option<&Observable>,
    rng: &mut impl Rng,
) -> Result<TrialOutcome> {
    let tables = TrialTables::new(tsv, intermediate)?;
    let (postselected, k) = tables.run(rng);
    let intermediate_outcome = match (k, intermediate) {
        (Some(k), Some(obs)) => Some(obs.label(k)?.to_string()),
        _ => None,
    };
    Ok(TrialOutcome {
        postselected,
        intermediate_outcome,
    })
}

#[derive(Clone, Default)]
struct ChunkTally {
    postselected: u64,
    /// Outcome counts among post-selected runs.
    counts: Vec<u64>,
}

/// Runs `n_runs` independent trials. Bit-identical output for identical
/// inputs and master seed, regardless of how many threads execute it.
pub fn simulate_ensemble(
    tsv: &TwoStateVector,
    intermediate: Option<&Observable>,
    n_runs: u64,
    master_seed: u64,
) -> Result<EnsembleResult> {
    if n_runs == 0 {
        return Err(Error::NoData("n_runs must be at least 1".to_string()));
    }
    let tables = TrialTables::new(tsv, intermediate)?;
    let dim = tsv.dim();
    let n_chunks = n_runs.div_ceil(CHUNK);

    let tallies: Vec<ChunkTally> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n_runs);
            let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
            rng.set_stream(c);
            let mut tally = ChunkTally {
                postselected: 0,
                counts: vec![0; dim],
            };
            for _ in lo..hi {
                let (selected, k) = tables.run(&mut rng);
                if selected {
                    tally.postselected += 1;
                    if let Some(k) = k {
                        tally.counts[k] += 1;
                    }
                }
            }
            tally
        })
        .collect();

    let mut postselected = 0u64;
    let mut counts = vec![0u64; dim];
    for tally in tallies {
        postselected += tally.postselected;
        for (total, c) in counts.iter_mut().zip(&tally.counts) {
            *total += c;
        }
    }

    let (outcome_counts, conditional_frequencies) = match intermediate {
        Some(obs) => {
            let labeled: Vec<(String, u64)> = obs
                .outcome_labels()
                .iter()
                .cloned()
                .zip(counts.iter().copied())
                .collect();
            let freqs = if postselected > 0 {
                Some(
                    labeled
                        .iter()
                        .map(|(l, c)| (l.clone(), *c as f64 / postselected as f64))
                        .collect(),
                )
            } else {
                None
            };
            (Some(labeled), freqs)
        }
        None => (None, None),
    };

    Ok(EnsembleResult {
        total_runs: n_runs,
        postselected_runs: postselected,
        postselection_rate: postselected as f64 / n_runs as f64,
        outcome_counts,
        conditional_frequencies,
        master_seed,
    })
}

/// Per-outcome comparison of empirical conditional frequency against the ABL
/// probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeComparison {
    pub outcome: String,
    pub frequency: f64,
    pub abl_probability: f64,
    pub deviation: f64,
    pub std_error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub observable: String,
    pub postselected_runs: u64,
    pub sigma_level: f64,
    pub entries: Vec<OutcomeComparison>,
    pub overall_pass: bool,
}

/// Binomial standard error √(p(1−p)/m). Probabilities are clamped to [0, 1]
/// first so that 1 + ulp overshoots from squared moduli cannot produce NaN.
pub fn binomial_std_error(p: f64, m: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    (p * (1.0 - p) / m).sqrt()
}

/// Binomial check of conditional frequencies against an ABL distribution at
/// the default 3σ level.
pub fn compare_with_abl(result: &EnsembleResult, dist: &AblDistribution) -> Result<ComparisonReport> {
    compare_with_abl_at(result, dist, DEFAULT_SIGMA)
}

/// As [`compare_with_abl`], at a chosen σ level. Where the ABL probability is
/// exactly 0 or 1 the standard error vanishes and the check demands exact
/// agreement.
pub fn compare_with_abl_at(
    result: &EnsembleResult,
    dist: &AblDistribution,
    sigma_level: f64,
) -> Result<ComparisonReport> {
    let counts = result.outcome_counts.as_ref().ok_or_else(|| {
        Error::validation(
            "result.outcome_counts",
            "the intermediate measurement was not performed; nothing to compare",
        )
    })?;
    if result.postselected_runs == 0 {
        return Err(Error::NoData(
            "no run passed post-selection; conditional frequencies are undefined".to_string(),
        ));
    }
    let m = result.postselected_runs as f64;
    let mut entries = Vec::with_capacity(dist.entries.len());
    for (label, p) in &dist.entries {
        let count = counts
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, c)| *c)
            .ok_or_else(|| {
                Error::validation(
                    "result.outcome_counts",
                    format!("outcome `{label}` missing from the ensemble counts"),
                )
            })?;
        let frequency = count as f64 / m;
        let deviation = (frequency - p).abs();
        let std_error = binomial_std_error(*p, m);
        entries.push(OutcomeComparison {
            outcome: label.clone(),
            frequency,
            abl_probability: *p,
            deviation,
            std_error,
            pass: deviation <= sigma_level * std_error,
        });
    }
    let overall_pass = entries.iter().all(|e| e.pass);
    Ok(ComparisonReport {
        observable: dist.observable.clone(),
        postselected_runs: result.postselected_runs,
        sigma_level,
        entries,
        overall_pass,
    })
}
