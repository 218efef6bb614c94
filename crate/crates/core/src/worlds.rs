//! Finite possible-worlds semantics in the style of Lewis's *Counterfactuals*
//! (1973): world spaces generated from pre/post-selection scenarios,
//! propositions as world sets, nested sphere systems, cotenability, and
//! counterfactual truth evaluation.
//!
//! A world records whether the intermediate measurement happened, which
//! outcome it gave, how the final selection came out, and how likely that
//! record is *given its measurement context*. Worlds with (numerically) zero
//! likelihood are inaccessible: they belong to no sphere.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abl::TwoStateVector;
use crate::error::{Error, Result};
use crate::quantum::{overlap, Observable, PROB_EPS};

/// Post-selection outcome label for "the selection succeeded" (outcome b).
pub const POST_SELECTED: &str = "b";
/// Post-selection outcome label for any other result.
pub const POST_OTHER: &str = "~b";
/// Id of the actual world in quantum-generated spaces: no measurement,
/// post-selection succeeded.
pub const ACTUAL_WORLD_ID: &str = "~P/b";

/// One complete way things might have gone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct World {
    pub id: String,
    /// Name of the measured observable (or classical antecedent context);
    /// the antecedent P holds exactly when this is present.
    pub measured: Option<String>,
    /// Intermediate outcome label; present iff `measured` is.
    pub intermediate_outcome: Option<String>,
    /// Final-selection outcome ([`POST_SELECTED`]/[`POST_OTHER`] for quantum
    /// scenarios, domain labels such as "win"/"lose" for classical ones).
    pub post_outcome: String,
    /// Probability of this world's outcome record given its measurement
    /// context and the background conditions.
    pub likelihood: f64,
}

impl World {
    pub fn accessible(&self) -> bool {
        self.likelihood > PROB_EPS
    }

    /// Context key: worlds sharing it share one normalized likelihood table.
    pub fn context(&self) -> &str {
        self.measured.as_deref().unwrap_or("~P")
    }
}

/// Checks structural invariants of a world list: unique ids, the
/// intermediate-outcome/measured pairing, likelihood bounds, and per-context
/// normalization within 1e-10.
pub fn validate_world_space(worlds: &[World]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for w in worlds {
        if !seen.insert(w.id.as_str()) {
            return Err(Error::InvalidScenario(format!(
                "duplicate world id `{}`",
                w.id
            )));
        }
        if w.measured.is_some() != w.intermediate_outcome.is_some() {
            return Err(Error::InvalidScenario(format!(
                "world `{}`: intermediate outcome must be present exactly when a measurement is",
                w.id
            )));
        }
        if !(0.0..=1.0 + 1e-10).contains(&w.likelihood) {
            return Err(Error::InvalidScenario(format!(
                "world `{}`: likelihood {} outside [0, 1]",
                w.id, w.likelihood
            )));
        }
    }
    let contexts: BTreeSet<&str> = worlds.iter().map(|w| w.context()).collect();
    for ctx in contexts {
        let total: f64 = worlds
            .iter()
            .filter(|w| w.context() == ctx)
            .map(|w| w.likelihood)
            .sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidScenario(format!(
                "context `{ctx}`: likelihoods sum to {total}, not 1"
            )));
        }
    }
    Ok(())
}

/// Enumerates the worlds of a pre/post-selection scenario with one candidate
/// intermediate observable: two no-measurement worlds (selection succeeded or
/// not) and, per intermediate outcome, two measured worlds. Likelihoods are
/// Born chains conditional on the context. The actual world is the
/// no-measurement world with a successful selection; it must be possible.
pub fn build_world_space(tsv: &TwoStateVector, obs: &Observable) -> Result<Vec<World>> {
    if tsv.dim() != obs.dim() {
        return Err(Error::DimensionMismatch {
            left: tsv.dim(),
            right: obs.dim(),
        });
    }
    let p_select = overlap(tsv.post(), tsv.pre())?;
    if p_select <= PROB_EPS {
        return Err(Error::InvalidScenario(format!(
            "actual world has zero likelihood: |⟨b|a⟩|² = {p_select:.3e}; the factual pre/post \
             selection must be possible"
        )));
    }
    let mut worlds = vec![
        World {
            id: ACTUAL_WORLD_ID.to_string(),
            measured: None,
            intermediate_outcome: None,
            post_outcome: POST_SELECTED.to_string(),
            likelihood: p_select,
        },
        World {
            id: format!("~P/{POST_OTHER}"),
            measured: None,
            intermediate_outcome: None,
            post_outcome: POST_OTHER.to_string(),
            likelihood: 1.0 - p_select,
        },
    ];
    for k in 0..obs.dim() {
        let c_k = obs.eigenvector(k)?;
        let label = obs.label(k)?;
        let reach = overlap(c_k, tsv.pre())?;
        let select_from_k = overlap(tsv.post(), c_k)?;
        worlds.push(World {
            id: format!("P/{label}/{POST_SELECTED}"),
            measured: Some(obs.name().to_string()),
            intermediate_outcome: Some(label.to_string()),
            post_outcome: POST_SELECTED.to_string(),
            likelihood: reach * select_from_k,
        });
        worlds.push(World {
            id: format!("P/{label}/{POST_OTHER}"),
            measured: Some(obs.name().to_string()),
            intermediate_outcome: Some(label.to_string()),
            post_outcome: POST_OTHER.to_string(),
            likelihood: reach * (1.0 - select_from_k),
        });
    }
    Ok(worlds)
}

/// A named set of worlds. Combinators follow plain set semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Proposition {
    pub name: String,
    pub extension: BTreeSet<String>,
}

impl Proposition {
    pub fn new(name: impl Into<String>, ids: impl IntoIterator<Item = String>) -> Self {
        Self {
            name: name.into(),
            extension: ids.into_iter().collect(),
        }
    }

    /// Builds a proposition from a predicate over a world space.
    pub fn over(
        name: impl Into<String>,
        worlds: &[World],
        pred: impl Fn(&World) -> bool,
    ) -> Self {
        Self {
            name: name.into(),
            extension: worlds
                .iter()
                .filter(|w| pred(w))
                .map(|w| w.id.clone())
                .collect(),
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.extension.contains(id)
    }

    pub fn is_empty(&self) -> bool {
        self.extension.is_empty()
    }

    pub fn and(&self, other: &Proposition) -> Proposition {
        Proposition {
            name: format!("({} & {})", self.name, other.name),
            extension: self.extension.intersection(&other.extension).cloned().collect(),
        }
    }

    pub fn or(&self, other: &Proposition) -> Proposition {
        Proposition {
            name: format!("({} | {})", self.name, other.name),
            extension: self.extension.union(&other.extension).cloned().collect(),
        }
    }

    /// Complement relative to the given world space.
    pub fn complement(&self, worlds: &[World]) -> Proposition {
        Proposition {
            name: format!("~{}", self.name),
            extension: worlds
                .iter()
                .filter(|w| !self.contains(&w.id))
                .map(|w| w.id.clone())
                .collect(),
        }
    }
}

/// P: the intermediate measurement (or classical antecedent) occurred.
pub fn prop_measured(worlds: &[World]) -> Proposition {
    Proposition::over("P", worlds, |w| w.measured.is_some())
}

/// T: the system's generalized state matches the actual world's, i.e. the
/// post-selection came out [`POST_SELECTED`].
pub fn prop_two_state_preserved(worlds: &[World]) -> Proposition {
    let mut p = Proposition::over("T", worlds, |w| w.post_outcome == POST_SELECTED);
    p.name = "T".to_string();
    p
}

/// Q: the ABL statistics computed from the actual generalized state govern
/// this world's intermediate outcome. Holds at a measured world exactly when
/// its realized pre/post pair matches, so extension(Q) = P ∩ T.
pub fn prop_abl_governs(worlds: &[World]) -> Proposition {
    let mut q = prop_measured(worlds).and(&prop_two_state_preserved(worlds));
    q.name = "Q".to_string();
    q
}

/// Nested spheres of increasing dissimilarity around the actual world.
/// Worlds outside every sphere are inaccessible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSystem {
    pub center: String,
    pub spheres: Vec<BTreeSet<String>>,
}

impl SphereSystem {
    /// Union of all spheres (with proper nesting, the outermost sphere).
    pub fn accessible(&self) -> BTreeSet<String> {
        let mut all = BTreeSet::new();
        for s in &self.spheres {
            all.extend(s.iter().cloned());
        }
        all
    }

    /// Index of the first (smallest) sphere containing the world, if any.
    pub fn rank(&self, id: &str) -> Option<usize> {
        self.spheres.iter().position(|s| s.contains(id))
    }
}

/// A violated sphere-system invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SphereViolation {
    /// ζ(index) contains `witness` but ζ(index+1) does not.
    Nesting { index: usize, witness: String },
    /// The center is missing from the innermost sphere (or there are no
    /// spheres at all).
    Centering { center: String },
}

impl fmt::Display for SphereViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereViolation::Nesting { index, witness } => {
                write!(f, "sphere {index} not contained in sphere {}: `{witness}` missing", index + 1)
            }
            SphereViolation::Centering { center } => {
                write!(f, "center `{center}` not in the innermost sphere")
            }
        }
    }
}

/// Checks nesting and centering; returns every violation found.
pub fn validate_spheres(s: &SphereSystem) -> Vec<SphereViolation> {
    let mut violations = Vec::new();
    match s.spheres.first() {
        Some(first) if first.contains(&s.center) => {}
        _ => violations.push(SphereViolation::Centering {
            center: s.center.clone(),
        }),
    }
    for (index, pair) in s.spheres.windows(2).enumerate() {
        if let Some(witness) = pair[0].difference(&pair[1]).next() {
            violations.push(SphereViolation::Nesting {
                index,
                witness: witness.clone(),
            });
        }
    }
    violations
}

fn ensure_valid(s: &SphereSystem) -> Result<()> {
    let violations = validate_spheres(s);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidSpheres(violations))
    }
}

/// Lewis cotenability: `x` is cotenable with `phi` at the center iff `x`
/// holds throughout some `phi`-permitting sphere.
pub fn cotenable(x: &Proposition, phi: &Proposition, s: &SphereSystem) -> Result<bool> {
    ensure_valid(s)?;
    Ok(s.spheres.iter().any(|sphere| {
        sphere.iter().any(|id| phi.contains(id)) && sphere.iter().all(|id| x.contains(id))
    }))
}

/// Truth value of a counterfactual at the sphere system's center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterfactualVerdict {
    True,
    False,
    VacuouslyTrue,
}

impl fmt::Display for CounterfactualVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CounterfactualVerdict::True => write!(f, "true"),
            CounterfactualVerdict::False => write!(f, "false"),
            CounterfactualVerdict::VacuouslyTrue => write!(f, "vacuously-true"),
        }
    }
}

/// "If p were the case, q would be": vacuously true when no accessible world
/// satisfies p; otherwise true iff the material conditional p → q holds
/// throughout the smallest p-permitting sphere.
pub fn eval_counterfactual(
    p: &Proposition,
    q: &Proposition,
    s: &SphereSystem,
) -> Result<CounterfactualVerdict> {
    ensure_valid(s)?;
    let permitting = s
        .spheres
        .iter()
        .find(|sphere| sphere.iter().any(|id| p.contains(id)));
    Ok(match permitting {
        None => CounterfactualVerdict::VacuouslyTrue,
        Some(sphere) => {
            if sphere.iter().all(|id| !p.contains(id) || q.contains(id)) {
                CounterfactualVerdict::True
            } else {
                CounterfactualVerdict::False
            }
        }
    })
}

/// Auxiliary-premise form of the truth condition: the counterfactual is true
/// iff some premise X, cotenable with p at the center, makes p & X logically
/// imply q. Premises are tried in list order; the first witness is returned.
pub fn eval_via_auxiliary(
    p: &Proposition,
    q: &Proposition,
    s: &SphereSystem,
    premises: &[Proposition],
) -> Result<(CounterfactualVerdict, Option<Proposition>)> {
    ensure_valid(s)?;
    if !s.spheres.iter().any(|sphere| sphere.iter().any(|id| p.contains(id))) {
        return Ok((CounterfactualVerdict::VacuouslyTrue, None));
    }
    for x in premises {
        if witnesses(p, q, s, x)? {
            return Ok((CounterfactualVerdict::True, Some(x.clone())));
        }
    }
    Ok((CounterfactualVerdict::False, None))
}

fn witnesses(p: &Proposition, q: &Proposition, s: &SphereSystem, x: &Proposition) -> Result<bool> {
    Ok(cotenable(x, p, s)?
        && p.extension
            .intersection(&x.extension)
            .all(|id| q.contains(id)))
}

/// Exhaustive variant of [`eval_via_auxiliary`]: tries every subset of the
/// world space as the auxiliary premise, ordered by size and then by the
/// lexicographic order of the sorted member ids, so the witness is
/// deterministic. Intended for small spaces (≤ 20 worlds).
pub fn eval_via_auxiliary_exhaustive(
    p: &Proposition,
    q: &Proposition,
    s: &SphereSystem,
    worlds: &[World],
) -> Result<(CounterfactualVerdict, Option<Proposition>)> {
    ensure_valid(s)?;
    let n = worlds.len();
    if n > 20 {
        return Err(Error::InvalidScenario(format!(
            "exhaustive premise search over {n} worlds (> 20) is not supported"
        )));
    }
    let mut ids: Vec<&str> = worlds.iter().map(|w| w.id.as_str()).collect();
    ids.sort_unstable();

    let bit_of = |id: &str| ids.iter().position(|x| *x == id).unwrap() as u32;
    let to_mask = |prop: &Proposition| -> u32 {
        prop.extension
            .iter()
            .filter(|id| ids.contains(&id.as_str()))
            .fold(0u32, |m, id| m | (1 << bit_of(id)))
    };
    let p_mask = to_mask(p);
    let q_mask = to_mask(q);
    let sphere_masks: Vec<u32> = s
        .spheres
        .iter()
        .map(|sphere| {
            sphere
                .iter()
                .filter(|id| ids.contains(&id.as_str()))
                .fold(0u32, |m, id| m | (1 << bit_of(id)))
        })
        .collect();

    if sphere_masks.iter().all(|m| m & p_mask == 0) {
        return Ok((CounterfactualVerdict::VacuouslyTrue, None));
    }

    let members = |mask: u32| -> Vec<&str> {
        (0..n).filter(|k| mask & (1 << k) != 0).map(|k| ids[k]).collect()
    };
    let mut candidates: Vec<u32> = (0..(1u32 << n)).collect();
    candidates.sort_by_cached_key(|m| (m.count_ones(), members(*m)));

    for mask in candidates {
        let cotenable_here = sphere_masks
            .iter()
            .any(|sp| sp & p_mask != 0 && sp & !mask == 0);
        if cotenable_here && (p_mask & mask) & !q_mask == 0 {
            let chosen = members(mask);
            let x = Proposition::new(
                format!("X{{{}}}", chosen.join(",")),
                chosen.into_iter().map(str::to_string),
            );
            return Ok((CounterfactualVerdict::True, Some(x)));
        }
    }
    Ok((CounterfactualVerdict::False, None))
}
