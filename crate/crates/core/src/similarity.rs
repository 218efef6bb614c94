//! Similarity relations over generated world spaces, and the
//! comparative-possibility audit that decides whether a relation's closeness
//! claims are backed by likelihoods.
//!
//! Three constructors are provided:
//! - [`natural_spheres`]: the measurement may disturb the selection, so *all*
//!   accessible measured worlds sit at the same (second) distance, whatever
//!   their post-selection outcome.
//! - [`z_spheres`]: the stipulating relation; every accessible measured world
//!   satisfying a distinguished premise is placed in the smallest
//!   antecedent-permitting sphere, which makes the premise cotenable with the
//!   antecedent by construction.
//! - [`likelihood_spheres`]: worlds ranked by their context-conditional
//!   likelihood; equally likely worlds (within a tolerance) share a sphere.
//!
//! The audit compares each relation's ranking against those likelihoods and
//! runs the likelihood criterion: ranking world j above j′ because premise X
//! holds at j is justified only if Prob(X | antecedent & background) exceeds
//! Prob(¬X | antecedent & background).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::worlds::{validate_spheres, Proposition, SphereSystem, World};

/// Two likelihoods within this distance count as "equally close".
pub const TIE_TOL: f64 = 1e-9;

/// Upper bound accepted for grouping/audit tolerances.
pub const MAX_TOL: f64 = 1e-6;

fn find_world<'a>(worlds: &'a [World], id: &str) -> Result<&'a World> {
    worlds
        .iter()
        .find(|w| w.id == id)
        .ok_or_else(|| Error::UnknownWorld(id.to_string()))
}

fn check_center(worlds: &[World], center: &str) -> Result<()> {
    let actual = find_world(worlds, center)?;
    if !actual.accessible() {
        return Err(Error::InvalidScenario(format!(
            "actual world `{center}` has zero likelihood"
        )));
    }
    Ok(())
}

fn accessible_ids(worlds: &[World]) -> BTreeSet<String> {
    worlds
        .iter()
        .filter(|w| w.accessible())
        .map(|w| w.id.clone())
        .collect()
}

/// ζ(1) = {actual}; ζ(2) adds every accessible measured world, selection
/// preserved or not (the ambiguity is the point); ζ(3) = everything
/// accessible.
pub fn natural_spheres(worlds: &[World], center: &str) -> Result<SphereSystem> {
    check_center(worlds, center)?;
    let inner = BTreeSet::from([center.to_string()]);
    let mut middle = inner.clone();
    middle.extend(
        worlds
            .iter()
            .filter(|w| w.accessible() && w.measured.is_some())
            .map(|w| w.id.clone()),
    );
    let outer = accessible_ids(worlds);
    Ok(SphereSystem {
        center: center.to_string(),
        spheres: vec![inner, middle, outer],
    })
}

/// The stipulating relation: ζ(2) = {actual} ∪ every accessible measured
/// world where `stipulated` holds. Errors when no such world exists (nothing
/// to stipulate onto).
pub fn z_spheres(
    worlds: &[World],
    center: &str,
    stipulated: &Proposition,
) -> Result<SphereSystem> {
    check_center(worlds, center)?;
    let chosen: BTreeSet<String> = worlds
        .iter()
        .filter(|w| w.accessible() && w.measured.is_some() && stipulated.contains(&w.id))
        .map(|w| w.id.clone())
        .collect();
    if chosen.is_empty() {
        return Err(Error::ClosestWorldNonexistent(format!(
            "no accessible measured world satisfies `{}`",
            stipulated.name
        )));
    }
    let inner = BTreeSet::from([center.to_string()]);
    let mut middle = inner.clone();
    middle.extend(chosen);
    let outer = accessible_ids(worlds);
    Ok(SphereSystem {
        center: center.to_string(),
        spheres: vec![inner, middle, outer],
    })
}

/// Ranks accessible worlds by descending context-conditional likelihood;
/// worlds whose likelihoods differ by at most `tol` from the top of their
/// group share a sphere. Inaccessible worlds belong to no sphere.
pub fn likelihood_spheres(worlds: &[World], center: &str, tol: f64) -> Result<SphereSystem> {
    if !(tol > 0.0 && tol <= MAX_TOL) {
        return Err(Error::InvalidTolerance(tol));
    }
    check_center(worlds, center)?;
    let mut rest: Vec<&World> = worlds
        .iter()
        .filter(|w| w.accessible() && w.id != center)
        .collect();
    rest.sort_by(|a, b| {
        b.likelihood
            .partial_cmp(&a.likelihood)
            .expect("likelihoods are finite")
            .then_with(|| a.id.cmp(&b.id))
    });

    let mut spheres = vec![BTreeSet::from([center.to_string()])];
    let mut current = spheres[0].clone();
    let mut group_top: Option<f64> = None;
    for w in rest {
        match group_top {
            Some(top) if top - w.likelihood <= tol => {
                current.insert(w.id.clone());
            }
            Some(_) => {
                spheres.push(current.clone());
                current.insert(w.id.clone());
                group_top = Some(w.likelihood);
            }
            None => {
                current.insert(w.id.clone());
                group_top = Some(w.likelihood);
            }
        }
    }
    if spheres.last() != Some(&current) {
        spheres.push(current);
    }
    Ok(SphereSystem {
        center: center.to_string(),
        spheres,
    })
}

/// Outcome of one likelihood-criterion check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Tie,
}

/// Prob(X | given & background) versus Prob(¬X | given & background),
/// computed over the worlds where `given` holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodCheck {
    pub premise: String,
    pub given: String,
    pub prob: f64,
    pub prob_complement: f64,
    pub outcome: CheckOutcome,
}

/// The comparative-possibility criterion: closeness based on a shared fact X
/// is legitimate only if X is likelier than ¬X under the given proposition.
/// Likelihoods are normalized over the `given` worlds, which must all carry
/// positive total weight.
pub fn likelihood_criterion(
    x: &Proposition,
    given: &Proposition,
    worlds: &[World],
) -> Result<LikelihoodCheck> {
    let total: f64 = worlds
        .iter()
        .filter(|w| given.contains(&w.id))
        .map(|w| w.likelihood)
        .sum();
    if total <= crate::quantum::PROB_EPS {
        return Err(Error::UndefinedConditional { denominator: total });
    }
    let weight: f64 = worlds
        .iter()
        .filter(|w| given.contains(&w.id) && x.contains(&w.id))
        .map(|w| w.likelihood)
        .sum();
    let prob = weight / total;
    let prob_complement = 1.0 - prob;
    let outcome = if (prob - prob_complement).abs() <= TIE_TOL {
        CheckOutcome::Tie
    } else if prob > prob_complement {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail
    };
    Ok(LikelihoodCheck {
        premise: x.name.clone(),
        given: given.name.clone(),
        prob,
        prob_complement,
        outcome,
    })
}

/// A ranking the likelihoods contradict: the relation calls `closer` strictly
/// more similar, yet it is strictly less likely than `farther`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodViolation {
    pub closer: String,
    pub farther: String,
    pub closer_likelihood: f64,
    pub farther_likelihood: f64,
}

/// Audit verdict per the likelihood criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditVerdict {
    /// Every check passed: the premise-based ranking has likelihood support.
    Justified,
    /// Some check failed outright: the premise is less likely than its
    /// negation, so the ranking gets things backwards.
    Unjustified,
    /// The decisive check came out exactly even: no basis for calling either
    /// world the closer one.
    DegenerateTie,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityAudit {
    pub relation: String,
    pub violations: Vec<LikelihoodViolation>,
    pub likelihood_checks: Vec<LikelihoodCheck>,
    pub verdict: AuditVerdict,
}

/// Audits a sphere system against the worlds' likelihoods: records every
/// strictly-closer-but-strictly-less-likely pair, runs the likelihood
/// criterion for each supplied (premise, given) pair, and derives the
/// verdict from the checks.
pub fn audit_spheres(
    relation: &str,
    s: &SphereSystem,
    worlds: &[World],
    checks: &[(&Proposition, &Proposition)],
) -> Result<SimilarityAudit> {
    let sphere_violations = validate_spheres(s);
    if !sphere_violations.is_empty() {
        return Err(Error::InvalidSpheres(sphere_violations));
    }

    // The actual world is closest by centering, not by likelihood, so it is
    // exempt from the ranking scan.
    let ranked: Vec<(&World, usize)> = worlds
        .iter()
        .filter(|w| w.id != s.center)
        .filter_map(|w| s.rank(&w.id).map(|r| (w, r)))
        .collect();
    let mut violations = Vec::new();
    for (closer, closer_rank) in &ranked {
        for (farther, farther_rank) in &ranked {
            if closer_rank < farther_rank
                && closer.likelihood < farther.likelihood - TIE_TOL
            {
                violations.push(LikelihoodViolation {
                    closer: closer.id.clone(),
                    farther: farther.id.clone(),
                    closer_likelihood: closer.likelihood,
                    farther_likelihood: farther.likelihood,
                });
            }
        }
    }
    violations.sort_by(|a, b| (&a.closer, &a.farther).cmp(&(&b.closer, &b.farther)));

    let likelihood_checks: Vec<LikelihoodCheck> = checks
        .iter()
        .map(|(x, given)| likelihood_criterion(x, given, worlds))
        .collect::<Result<_>>()?;

    let verdict = if likelihood_checks
        .iter()
        .any(|c| c.outcome == CheckOutcome::Fail)
    {
        AuditVerdict::Unjustified
    } else if likelihood_checks
        .iter()
        .any(|c| c.outcome == CheckOutcome::Tie)
    {
        AuditVerdict::DegenerateTie
    } else {
        AuditVerdict::Justified
    };

    Ok(SimilarityAudit {
        relation: relation.to_string(),
        violations,
        likelihood_checks,
        verdict,
    })
}
