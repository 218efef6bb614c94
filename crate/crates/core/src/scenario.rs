//! Scenario documents: declarative descriptions of pre/post-selection
//! experiments (quantum) or explicit world-likelihood tables (classical),
//! plus the built-in presets.
//!
//! Documents are JSON with complex numbers written as `[re, im]` pairs; no
//! expression evaluation is performed, so files are bit-exact and portable.
//! Validation failures carry the offending field path.

use num_complex::Complex64;
use serde::Deserialize;

use crate::abl::TwoStateVector;
use crate::error::{Error, Result};
use crate::quantum::{Observable, PureState, PROB_EPS};
use crate::worlds::{validate_world_space, Proposition, World};

/// Default ensemble size when a scenario omits it.
pub const DEFAULT_RUNS: u64 = 100_000;
/// Default master seed; fixed so default runs are reproducible.
pub const DEFAULT_SEED: u64 = 1964;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleParams {
    pub runs: u64,
    pub seed: u64,
}

impl Default for EnsembleParams {
    fn default() -> Self {
        Self {
            runs: DEFAULT_RUNS,
            seed: DEFAULT_SEED,
        }
    }
}

/// A pre/post-selection experiment with candidate intermediate observables.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumScenario {
    pub name: String,
    pub tsv: TwoStateVector,
    pub observables: Vec<Observable>,
    pub ensemble: EnsembleParams,
}

impl QuantumScenario {
    pub fn observable(&self, name: &str) -> Result<&Observable> {
        self.observables
            .iter()
            .find(|o| o.name() == name)
            .ok_or_else(|| Error::UnknownObservable(name.to_string()))
    }
}

/// An explicit world table with named propositions; the antecedent is one
/// designated context.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalScenario {
    pub name: String,
    pub worlds: Vec<World>,
    pub actual: String,
    /// P: the world lies in the antecedent context.
    pub antecedent: Proposition,
    pub consequent: Proposition,
    /// Premise the stipulating relation pins to the smallest sphere.
    pub stipulated: Proposition,
    pub propositions: Vec<Proposition>,
    /// Additional (premise, given) pairs for the likelihood audit, by name.
    pub audit_checks: Vec<(String, String)>,
}

impl ClassicalScenario {
    pub fn proposition(&self, name: &str) -> Result<&Proposition> {
        if self.antecedent.name == name {
            return Ok(&self.antecedent);
        }
        self.propositions
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::validation("propositions", format!("unknown proposition `{name}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Quantum(QuantumScenario),
    Classical(ClassicalScenario),
}

impl Scenario {
    pub fn name(&self) -> &str {
        match self {
            Scenario::Quantum(q) => &q.name,
            Scenario::Classical(c) => &c.name,
        }
    }
}

// ---------------------------------------------------------------------------
// Document schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawScenario {
    Quantum(RawQuantum),
    Classical(RawClassical),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantum {
    name: String,
    dim: usize,
    pre_state: Vec<[f64; 2]>,
    post_state: Vec<[f64; 2]>,
    observables: Vec<RawObservable>,
    #[serde(default)]
    ensemble: Option<RawEnsemble>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObservable {
    name: String,
    eigenvectors: Vec<Vec<[f64; 2]>>,
    outcome_labels: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnsemble {
    runs: u64,
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassical {
    name: String,
    antecedent: String,
    actual: RawWorldRef,
    contexts: Vec<RawContext>,
    propositions: Vec<RawProposition>,
    consequent: String,
    stipulated: String,
    #[serde(default)]
    audit_checks: Vec<RawCheck>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorldRef {
    context: String,
    outcome: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawContext {
    name: String,
    worlds: Vec<RawClassicalWorld>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassicalWorld {
    outcome: Vec<String>,
    likelihood: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProposition {
    name: String,
    matches: RawMatcher,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawMatcher {
    #[serde(default)]
    context: Option<String>,
    #[serde(default)]
    intermediate: Option<String>,
    #[serde(default)]
    post: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    premise: String,
    given: String,
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    match raw {
        RawScenario::Quantum(q) => Ok(Scenario::Quantum(convert_quantum(q)?)),
        RawScenario::Classical(c) => Ok(Scenario::Classical(convert_classical(c)?)),
    }
}

fn state_from_pairs(field: &str, dim: usize, pairs: &[[f64; 2]]) -> Result<PureState> {
    if pairs.len() != dim {
        return Err(Error::validation(
            field,
            format!("expected {dim} amplitudes, found {}", pairs.len()),
        ));
    }
    PureState::new(
        pairs
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect(),
    )
    .map_err(|e| Error::validation(field, e.to_string()))
}

fn convert_quantum(raw: RawQuantum) -> Result<QuantumScenario> {
    if raw.dim < 2 {
        return Err(Error::validation("dim", "must be at least 2"));
    }
    let pre = state_from_pairs("pre_state", raw.dim, &raw.pre_state)?;
    let post = state_from_pairs("post_state", raw.dim, &raw.post_state)?;
    let tsv = TwoStateVector::new(pre, post)
        .map_err(|e| Error::validation("pre_state/post_state", e.to_string()))?;

    if raw.observables.is_empty() {
        return Err(Error::validation("observables", "at least one observable is required"));
    }
    let mut observables = Vec::with_capacity(raw.observables.len());
    for (i, o) in raw.observables.iter().enumerate() {
        let field = format!("observables[{i}]");
        if observables
            .iter()
            .any(|existing: &Observable| existing.name() == o.name)
        {
            return Err(Error::validation(
                &field,
                format!("duplicate observable name `{}`", o.name),
            ));
        }
        let eigenvectors = o
            .eigenvectors
            .iter()
            .enumerate()
            .map(|(k, row)| state_from_pairs(&format!("{field}.eigenvectors[{k}]"), raw.dim, row))
            .collect::<Result<Vec<_>>>()?;
        let obs = Observable::new(o.name.clone(), eigenvectors, o.outcome_labels.clone())
            .map_err(|e| Error::validation(&field, e.to_string()))?;
        observables.push(obs);
    }

    let ensemble = match raw.ensemble {
        Some(e) => {
            if e.runs == 0 {
                return Err(Error::validation("ensemble.runs", "must be at least 1"));
            }
            EnsembleParams {
                runs: e.runs,
                seed: e.seed,
            }
        }
        None => EnsembleParams::default(),
    };

    Ok(QuantumScenario {
        name: raw.name,
        tsv,
        observables,
        ensemble,
    })
}

fn classical_world_id(context: &str, outcome: &[String]) -> String {
    let mut id = context.to_string();
    for part in outcome {
        id.push('/');
        id.push_str(part);
    }
    id
}

fn convert_classical(raw: RawClassical) -> Result<ClassicalScenario> {
    if !raw.contexts.iter().any(|c| c.name == raw.antecedent) {
        return Err(Error::validation(
            "antecedent",
            format!("context `{}` is not defined", raw.antecedent),
        ));
    }
    // The world model has exactly two measurement contexts: the antecedent
    // one and the unmeasured one.
    let unmeasured = raw
        .contexts
        .iter()
        .filter(|c| c.name != raw.antecedent)
        .count();
    if unmeasured != 1 {
        return Err(Error::validation(
            "contexts",
            format!("expected exactly one non-antecedent context, found {unmeasured}"),
        ));
    }

    let mut worlds = Vec::new();
    for (i, ctx) in raw.contexts.iter().enumerate() {
        let field = format!("contexts[{i}]");
        if raw.contexts[..i].iter().any(|c| c.name == ctx.name) {
            return Err(Error::validation(
                &field,
                format!("duplicate context name `{}`", ctx.name),
            ));
        }
        let is_antecedent = ctx.name == raw.antecedent;
        let mut total = 0.0;
        for (j, w) in ctx.worlds.iter().enumerate() {
            let wfield = format!("{field}.worlds[{j}]");
            let expected = if is_antecedent { 2 } else { 1 };
            if w.outcome.len() != expected {
                return Err(Error::validation(
                    &wfield,
                    format!(
                        "outcome record must have {expected} component(s) in this context, found {}",
                        w.outcome.len()
                    ),
                ));
            }
            if !(0.0..=1.0 + 1e-10).contains(&w.likelihood) {
                return Err(Error::validation(
                    &wfield,
                    format!("likelihood {} outside [0, 1]", w.likelihood),
                ));
            }
            total += w.likelihood;
            worlds.push(World {
                id: classical_world_id(&ctx.name, &w.outcome),
                measured: is_antecedent.then(|| ctx.name.clone()),
                intermediate_outcome: is_antecedent.then(|| w.outcome[0].clone()),
                post_outcome: w.outcome.last().expect("validated length").clone(),
                likelihood: w.likelihood,
            });
        }
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::validation(
                &field,
                format!("likelihoods sum to {total}, not 1"),
            ));
        }
    }
    validate_world_space(&worlds).map_err(|e| Error::validation("contexts", e.to_string()))?;

    let actual = classical_world_id(&raw.actual.context, &raw.actual.outcome);
    let actual_world = worlds
        .iter()
        .find(|w| w.id == actual)
        .ok_or_else(|| Error::validation("actual", format!("world `{actual}` is not defined")))?;
    if actual_world.likelihood <= PROB_EPS {
        return Err(Error::validation(
            "actual",
            format!("actual world `{actual}` has zero likelihood"),
        ));
    }

    let antecedent = Proposition::over("P", &worlds, |w| w.measured.is_some());

    let mut propositions: Vec<Proposition> = Vec::with_capacity(raw.propositions.len());
    for (i, p) in raw.propositions.iter().enumerate() {
        let field = format!("propositions[{i}]");
        if p.name == "P" || propositions.iter().any(|q| q.name == p.name) {
            return Err(Error::validation(
                &field,
                format!("duplicate or reserved proposition name `{}`", p.name),
            ));
        }
        let matcher = &p.matches;
        let prop = Proposition::over(p.name.clone(), &worlds, |w| {
            matcher
                .context
                .as_ref()
                .is_none_or(|c| w.context() == c)
                && matcher
                    .intermediate
                    .as_ref()
                    .is_none_or(|x| w.intermediate_outcome.as_deref() == Some(x.as_str()))
                && matcher.post.as_ref().is_none_or(|x| &w.post_outcome == x)
        });
        propositions.push(prop);
    }

    let lookup = |field: &str, name: &str| -> Result<Proposition> {
        if name == "P" {
            return Ok(antecedent.clone());
        }
        propositions
            .iter()
            .find(|p| p.name == name)
            .cloned()
            .ok_or_else(|| Error::validation(field, format!("proposition `{name}` is not defined")))
    };
    let consequent = lookup("consequent", &raw.consequent)?;
    let stipulated = lookup("stipulated", &raw.stipulated)?;

    let mut audit_checks = vec![(stipulated.name.clone(), "P".to_string())];
    for (i, check) in raw.audit_checks.iter().enumerate() {
        let field = format!("audit_checks[{i}]");
        lookup(&field, &check.premise)?;
        lookup(&field, &check.given)?;
        audit_checks.push((check.premise.clone(), check.given.clone()));
    }

    Ok(ClassicalScenario {
        name: raw.name,
        worlds,
        actual,
        antecedent,
        consequent,
        stipulated,
        propositions,
        audit_checks,
    })
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Built-in scenarios mirroring the shipped `scenarios/*.scn` files.
pub mod presets {
    use super::*;

    /// Chance that nobody else enters the lottery; far-fetched but possible.
    pub const SOLE_ENTRY_CHANCE: f64 = 1e-9;

    pub fn z_plus() -> PureState {
        PureState::basis_vector(2, 0).expect("static state")
    }

    pub fn z_minus() -> PureState {
        PureState::basis_vector(2, 1).expect("static state")
    }

    pub fn x_plus() -> PureState {
        PureState::from_reals(&[1.0, 1.0]).expect("static state")
    }

    pub fn x_minus() -> PureState {
        PureState::from_reals(&[1.0, -1.0]).expect("static state")
    }

    pub fn sigma_z() -> Observable {
        Observable::new(
            "sigma_z",
            vec![z_plus(), z_minus()],
            vec!["z+".into(), "z-".into()],
        )
        .expect("static observable")
    }

    pub fn sigma_x() -> Observable {
        Observable::new(
            "sigma_x",
            vec![x_plus(), x_minus()],
            vec!["x+".into(), "x-".into()],
        )
        .expect("static observable")
    }

    /// Pre |z+⟩, post |x+⟩: both σz = z+ and σx = x+ get ABL probability 1.
    pub fn spin_zx() -> QuantumScenario {
        QuantumScenario {
            name: "spin_zx".to_string(),
            tsv: TwoStateVector::new(z_plus(), x_plus()).expect("static states"),
            observables: vec![sigma_z(), sigma_x()],
            ensemble: EnsembleParams::default(),
        }
    }

    /// Pre = post = |x+⟩: measuring σz halves the post-selection odds
    /// (disturbance 1/2).
    pub fn spin_xx() -> QuantumScenario {
        QuantumScenario {
            name: "spin_xx".to_string(),
            tsv: TwoStateVector::new(x_plus(), x_plus()).expect("static states"),
            observables: vec![sigma_z(), sigma_x()],
            ensemble: EnsembleParams::default(),
        }
    }

    /// Qutrit with uniform pre-state and a sign-flipped post-state: the
    /// selection-preserving branch carries conditional probability 1/3 < 1/2,
    /// so the stipulating relation is audited as unjustified.
    pub fn qutrit_uniform() -> QuantumScenario {
        let third = 1.0 / 3.0_f64.sqrt();
        let pre = PureState::from_reals(&[third, third, third]).expect("static state");
        let post = PureState::from_reals(&[third, -third, third]).expect("static state");
        let canonical = Observable::new(
            "canonical",
            (0..3)
                .map(|k| PureState::basis_vector(3, k).expect("static state"))
                .collect(),
            vec!["c0".into(), "c1".into(), "c2".into()],
        )
        .expect("static observable");
        QuantumScenario {
            name: "qutrit_uniform".to_string(),
            tsv: TwoStateVector::new(pre, post).expect("static states"),
            observables: vec![canonical],
            ensemble: EnsembleParams::default(),
        }
    }

    /// The lottery world table. The actual world: I stay out and do not win.
    /// Entering puts me in a field of `entrants` (chance 1 − ε) or, with
    /// chance ε, alone; a fair draw means the sole entrant cannot lose, so
    /// the sole+lose world has likelihood exactly 0.
    pub fn lottery(entrants: u64) -> Result<ClassicalScenario> {
        if entrants < 2 {
            return Err(Error::validation(
                "entrants",
                "at least 2 (a field of one is already the sole-entrant stipulation)",
            ));
        }
        let eps = SOLE_ENTRY_CHANCE;
        let k = entrants as f64;
        let worlds = vec![
            World {
                id: "stay_out/lose".into(),
                measured: None,
                intermediate_outcome: None,
                post_outcome: "lose".into(),
                likelihood: 1.0,
            },
            World {
                id: "stay_out/win".into(),
                measured: None,
                intermediate_outcome: None,
                post_outcome: "win".into(),
                likelihood: 0.0,
            },
            World {
                id: "enter/sole/win".into(),
                measured: Some("enter".into()),
                intermediate_outcome: Some("sole".into()),
                post_outcome: "win".into(),
                likelihood: eps,
            },
            World {
                id: "enter/sole/lose".into(),
                measured: Some("enter".into()),
                intermediate_outcome: Some("sole".into()),
                post_outcome: "lose".into(),
                likelihood: 0.0,
            },
            World {
                id: "enter/field/win".into(),
                measured: Some("enter".into()),
                intermediate_outcome: Some("field".into()),
                post_outcome: "win".into(),
                likelihood: (1.0 - eps) / k,
            },
            World {
                id: "enter/field/lose".into(),
                measured: Some("enter".into()),
                intermediate_outcome: Some("field".into()),
                post_outcome: "lose".into(),
                likelihood: (1.0 - eps) * (k - 1.0) / k,
            },
        ];
        validate_world_space(&worlds)?;
        let antecedent = Proposition::over("P", &worlds, |w| w.measured.is_some());
        let win = Proposition::over("WIN", &worlds, |w| w.post_outcome == "win");
        let lose = Proposition::over("LOSE", &worlds, |w| w.post_outcome == "lose");
        let sole = Proposition::over("SOLE", &worlds, |w| {
            w.intermediate_outcome.as_deref() == Some("sole")
        });
        Ok(ClassicalScenario {
            name: "lottery".to_string(),
            worlds,
            actual: "stay_out/lose".to_string(),
            antecedent,
            consequent: win.clone(),
            stipulated: sole.clone(),
            propositions: vec![win, lose, sole],
            audit_checks: vec![
                ("SOLE".to_string(), "P".to_string()),
                ("LOSE".to_string(), "SOLE".to_string()),
            ],
        })
    }
}
