//! The ABL rule (Aharonov–Bergmann–Lebowitz, 1964) and derived quantities
//! for pre- and post-selected systems.
//!
//! For a system pre-selected in |a⟩ at t1 and post-selected in |b⟩ at t2, the
//! probability that a measurement of a nondegenerate observable C performed at
//! an intermediate time t gave outcome c_j is
//!
//! ```text
//! P(c_j) = |⟨b|c_j⟩|²|⟨c_j|a⟩|² / Σ_k |⟨b|c_k⟩|²|⟨c_k|a⟩|²
//! ```
//!
//! The rule conditions on the measurement of C actually occurring between the
//! selections. Reading it counterfactually (for a measurement that was not
//! performed) requires the possible-worlds machinery in [`crate::worlds`] and
//! [`crate::similarity`]; [`elements_of_reality`] reports probability-1
//! outcomes only together with the verdict of that machinery.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{overlap, Observable, PureState, PROB_EPS};
use crate::similarity::natural_spheres;
use crate::worlds::{
    build_world_space, eval_counterfactual, prop_abl_governs, prop_measured, CounterfactualVerdict,
};

/// Denominators at or below this value make the ABL conditional undefined.
pub const DENOMINATOR_EPS: f64 = PROB_EPS;

/// Default tolerance for flagging ABL probability ≈ 1.
pub const DEFAULT_REALITY_TOL: f64 = 1e-9;

/// Largest accepted probability-1 tolerance.
pub const MAX_REALITY_TOL: f64 = 1e-6;

/// Symbolic ordering of the three measurement times. No units, no dynamics;
/// only the strict ordering t1 < t < t2 matters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timeline {
    pub pre: f64,
    pub intermediate: f64,
    pub post: f64,
}

impl Timeline {
    pub fn new(pre: f64, intermediate: f64, post: f64) -> Result<Self> {
        if !(pre < intermediate && intermediate < post) {
            return Err(Error::UnorderedTimeline {
                t1: pre,
                t: intermediate,
                t2: post,
            });
        }
        Ok(Self {
            pre,
            intermediate,
            post,
        })
    }
}

impl Default for Timeline {
    fn default() -> Self {
        Self {
            pre: 0.0,
            intermediate: 1.0,
            post: 2.0,
        }
    }
}

/// The generalized state of a pre- and post-selected system: the pair
/// ⟨b| |a⟩ of post- and pre-selection states.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStateVector {
    pre: PureState,
    post: PureState,
    timeline: Timeline,
}

impl TwoStateVector {
    pub fn new(pre: PureState, post: PureState) -> Result<Self> {
        Self::with_timeline(pre, post, Timeline::default())
    }

    pub fn with_timeline(pre: PureState, post: PureState, timeline: Timeline) -> Result<Self> {
        if pre.dim() != post.dim() {
            return Err(Error::DimensionMismatch {
                left: pre.dim(),
                right: post.dim(),
            });
        }
        Ok(Self {
            pre,
            post,
            timeline,
        })
    }

    /// |a⟩, the pre-selection state at t1.
    pub fn pre(&self) -> &PureState {
        &self.pre
    }

    /// |b⟩, the post-selection state at t2.
    pub fn post(&self) -> &PureState {
        &self.post
    }

    pub fn timeline(&self) -> Timeline {
        self.timeline
    }

    pub fn dim(&self) -> usize {
        self.pre.dim()
    }

    fn check_dim(&self, obs: &Observable) -> Result<()> {
        if self.dim() != obs.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: obs.dim(),
            });
        }
        Ok(())
    }
}

/// Conditional outcome distribution for an intermediate measurement, plus the
/// raw normalizer it was divided by.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblDistribution {
    pub observable: String,
    /// (outcome label, probability), in the observable's outcome order.
    pub entries: Vec<(String, f64)>,
    pub denominator: f64,
}

impl AblDistribution {
    pub fn probability(&self, label: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, p)| p)
    }
}

fn numerators(tsv: &TwoStateVector, obs: &Observable) -> Result<Vec<f64>> {
    (0..obs.dim())
        .map(|k| {
            let c_k = obs.eigenvector(k)?;
            Ok(overlap(tsv.post(), c_k)? * overlap(c_k, tsv.pre())?)
        })
        .collect()
}

/// Probability of intermediate outcome `j` given both selections.
pub fn abl_probability(tsv: &TwoStateVector, obs: &Observable, j: usize) -> Result<f64> {
    tsv.check_dim(obs)?;
    if j >= obs.dim() {
        return Err(Error::OutcomeOutOfRange {
            index: j,
            dim: obs.dim(),
        });
    }
    let nums = numerators(tsv, obs)?;
    let denominator: f64 = nums.iter().sum();
    if denominator <= DENOMINATOR_EPS {
        return Err(Error::UndefinedConditional { denominator });
    }
    Ok(nums[j] / denominator)
}

/// Full conditional distribution over the observable's outcomes.
pub fn abl_distribution(tsv: &TwoStateVector, obs: &Observable) -> Result<AblDistribution> {
    tsv.check_dim(obs)?;
    let nums = numerators(tsv, obs)?;
    let denominator: f64 = nums.iter().sum();
    if denominator <= DENOMINATOR_EPS {
        return Err(Error::UndefinedConditional { denominator });
    }
    let entries = obs
        .outcome_labels()
        .iter()
        .zip(&nums)
        .map(|(label, n)| (label.clone(), n / denominator))
        .collect();
    Ok(AblDistribution {
        observable: obs.name().to_string(),
        entries,
        denominator,
    })
}

/// Probability that the post-selection succeeds, with or without an
/// intermediate measurement:
/// `None` → |⟨b|a⟩|²; `Some(C)` → Σ_k |⟨b|c_k⟩|²|⟨c_k|a⟩|².
pub fn postselection_prob(tsv: &TwoStateVector, intermediate: Option<&Observable>) -> Result<f64> {
    match intermediate {
        None => overlap(tsv.post(), tsv.pre()),
        Some(obs) => {
            tsv.check_dim(obs)?;
            let total: f64 = numerators(tsv, obs)?.iter().sum();
            Ok(total.clamp(0.0, 1.0))
        }
    }
}

/// How much performing the measurement shifts the post-selection odds:
/// |Prob(T | measured) − Prob(T | unmeasured)|. Zero when the pre-state is an
/// eigenvector of the observable.
pub fn disturbance(tsv: &TwoStateVector, obs: &Observable) -> Result<f64> {
    let with = postselection_prob(tsv, Some(obs))?;
    let without = postselection_prob(tsv, None)?;
    Ok((with - without).abs())
}

/// One probability-≈1 outcome, annotated with whether the counterfactual
/// reading survives evaluation under the natural similarity relation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityEntry {
    pub observable: String,
    pub outcome: String,
    pub probability: f64,
    /// True only when "had C been measured, the ABL statistics would have
    /// governed" evaluates true under the natural similarity relation.
    pub counterfactually_valid: bool,
}

/// Observable whose ABL conditional was undefined (listed, never skipped).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UndefinedEntry {
    pub observable: String,
    pub denominator: f64,
}

/// Output of [`elements_of_reality`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementsOfReality {
    pub tolerance: f64,
    pub entries: Vec<RealityEntry>,
    pub undefined: Vec<UndefinedEntry>,
}

/// Finds every (observable, outcome) with ABL probability ≥ 1 − tol and
/// co-reports counterfactual validity for each. Probability-1 outcomes are
/// never returned as unconditional properties: the annotation is part of the
/// result.
pub fn elements_of_reality(
    tsv: &TwoStateVector,
    observables: &[Observable],
    tol: f64,
) -> Result<ElementsOfReality> {
    if !(tol > 0.0 && tol <= MAX_REALITY_TOL) {
        return Err(Error::InvalidTolerance(tol));
    }
    if overlap(tsv.post(), tsv.pre())? <= PROB_EPS {
        return Err(Error::InvalidScenario(
            "pre/post pair has zero overlap: the factual (unmeasured) selection is impossible, \
             so counterfactual validity is undefined"
                .to_string(),
        ));
    }
    let mut entries = Vec::new();
    let mut undefined = Vec::new();
    for obs in observables {
        tsv.check_dim(obs)?;
        let dist = match abl_distribution(tsv, obs) {
            Ok(d) => d,
            Err(Error::UndefinedConditional { denominator }) => {
                undefined.push(UndefinedEntry {
                    observable: obs.name().to_string(),
                    denominator,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let flagged: Vec<&(String, f64)> = dist
            .entries
            .iter()
            .filter(|(_, p)| *p >= 1.0 - tol)
            .collect();
        if flagged.is_empty() {
            continue;
        }
        let valid = counterfactual_reading_valid(tsv, obs)?;
        for (label, p) in flagged {
            entries.push(RealityEntry {
                observable: obs.name().to_string(),
                outcome: label.clone(),
                probability: *p,
                counterfactually_valid: valid,
            });
        }
    }
    Ok(ElementsOfReality {
        tolerance: tol,
        entries,
        undefined,
    })
}

/// Whether "had C been measured at t, the ABL statistics would have governed"
/// is true at the actual world under the natural similarity relation.
pub fn counterfactual_reading_valid(tsv: &TwoStateVector, obs: &Observable) -> Result<bool> {
    let worlds = build_world_space(tsv, obs)?;
    let spheres = natural_spheres(&worlds, crate::worlds::ACTUAL_WORLD_ID)?;
    let p = prop_measured(&worlds);
    let q = prop_abl_governs(&worlds);
    Ok(eval_counterfactual(&p, &q, &spheres)? == CounterfactualVerdict::True)
}
