//! Report composition and rendering.
//!
//! Each CLI subcommand maps to one report type here. Reports serialize to
//! JSON (full precision, stable field order) and render as plain-text tables
//! (probabilities at 6 decimal places). Identical inputs produce byte-equal
//! output in both formats.

use serde::{Deserialize, Serialize};

use crate::abl::{
    abl_distribution, elements_of_reality, postselection_prob, AblDistribution, ElementsOfReality,
};
use crate::ensemble::{
    compare_with_abl_at, simulate_ensemble, ComparisonReport, EnsembleResult, DEFAULT_SIGMA,
};
use crate::error::{Error, Result};
use crate::scenario::{presets, ClassicalScenario, QuantumScenario, Scenario};
use crate::similarity::{
    audit_spheres, likelihood_spheres, natural_spheres, z_spheres, SimilarityAudit, TIE_TOL,
};
use crate::worlds::{
    cotenable, eval_counterfactual, prop_abl_governs, prop_measured, prop_two_state_preserved,
    CounterfactualVerdict, Proposition, SphereSystem, World, ACTUAL_WORLD_ID,
};

/// Which similarity relation to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityKind {
    Natural,
    Z,
    Likelihood,
}

impl SimilarityKind {
    pub fn label(self) -> &'static str {
        match self {
            SimilarityKind::Natural => "natural",
            SimilarityKind::Z => "z",
            SimilarityKind::Likelihood => "likelihood",
        }
    }
}

impl std::str::FromStr for SimilarityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "natural" => Ok(SimilarityKind::Natural),
            "z" => Ok(SimilarityKind::Z),
            "likelihood" => Ok(SimilarityKind::Likelihood),
            other => Err(Error::validation(
                "--sr",
                format!("unknown similarity relation `{other}` (expected natural|z|likelihood)"),
            )),
        }
    }
}

/// Caveat attached to every report produced under the stipulating relation.
const STIPULATION_CAVEAT: &str = "verdicts under the stipulating relation hold by construction: \
the favorable premise is placed in the smallest antecedent-permitting sphere. The likelihood \
audit decides whether that placement has any support; without it the verdict carries no \
information about the actual world (deck-stacking).";

/// Caveat attached to every elements-of-reality report.
const REALITY_CAVEAT: &str = "probability-1 entries are certain only for measurements actually \
performed between the selections. Whether the value survives as a counterfactual (\"had C been \
measured...\") is reported per entry under the natural similarity relation; entries marked \
invalid must not be read as unconditional properties.";

pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    text.push('\n');
    text
}

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

// ---------------------------------------------------------------------------
// abl
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblReport {
    pub scenario: String,
    pub distribution: AblDistribution,
}

pub fn abl_report(scenario: &QuantumScenario, observable: &str) -> Result<AblReport> {
    let obs = scenario.observable(observable)?;
    Ok(AblReport {
        scenario: scenario.name.clone(),
        distribution: abl_distribution(&scenario.tsv, obs)?,
    })
}

impl AblReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario:    {}\n", self.scenario));
        out.push_str(&format!("observable:  {}\n", self.distribution.observable));
        out.push_str(&format!(
            "denominator: {}\n\n",
            fmt6(self.distribution.denominator)
        ));
        out.push_str("outcome      P_ABL\n");
        for (label, p) in &self.distribution.entries {
            out.push_str(&format!("{label:<12} {}\n", fmt6(*p)));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateCheck {
    pub expected: f64,
    pub observed: f64,
    pub std_error: f64,
    pub sigma_level: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub scenario: String,
    pub observable: Option<String>,
    pub result: EnsembleResult,
    pub rate_check: RateCheck,
    pub abl: Option<AblDistribution>,
    pub comparison: Option<ComparisonReport>,
    pub passed: bool,
}

pub fn simulate_report(
    scenario: &QuantumScenario,
    observable: Option<&str>,
    runs: u64,
    seed: u64,
) -> Result<SimulateReport> {
    let obs = observable.map(|n| scenario.observable(n)).transpose()?;
    let result = simulate_ensemble(&scenario.tsv, obs, runs, seed)?;

    let expected = postselection_prob(&scenario.tsv, obs)?;
    let std_error = crate::ensemble::binomial_std_error(expected, runs as f64);
    let rate_check = RateCheck {
        expected,
        observed: result.postselection_rate,
        std_error,
        sigma_level: DEFAULT_SIGMA,
        pass: (result.postselection_rate - expected).abs() <= DEFAULT_SIGMA * std_error,
    };

    let (abl, comparison) = match obs {
        Some(obs) => {
            let dist = abl_distribution(&scenario.tsv, obs)?;
            let cmp = compare_with_abl_at(&result, &dist, DEFAULT_SIGMA)?;
            (Some(dist), Some(cmp))
        }
        None => (None, None),
    };

    let passed = rate_check.pass && comparison.as_ref().is_none_or(|c| c.overall_pass);
    Ok(SimulateReport {
        scenario: scenario.name.clone(),
        observable: observable.map(str::to_string),
        result,
        rate_check,
        abl,
        comparison,
        passed,
    })
}

impl SimulateReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario:     {}\n", self.scenario));
        out.push_str(&format!(
            "observable:   {}\n",
            self.observable.as_deref().unwrap_or("(none: intermediate measurement omitted)")
        ));
        out.push_str(&format!("runs:         {}\n", self.result.total_runs));
        out.push_str(&format!("seed:         {}\n", self.result.master_seed));
        out.push_str(&format!(
            "postselected: {} (rate {})\n\n",
            self.result.postselected_runs,
            fmt6(self.result.postselection_rate)
        ));
        out.push_str(&format!(
            "post-selection rate: expected {}, observed {}, σ {}, {}σ band → {}\n",
            fmt6(self.rate_check.expected),
            fmt6(self.rate_check.observed),
            fmt6(self.rate_check.std_error),
            self.rate_check.sigma_level,
            pass_str(self.rate_check.pass),
        ));
        if let (Some(cmp), Some(counts)) = (&self.comparison, &self.result.outcome_counts) {
            out.push_str("\noutcome      count        frequency   P_ABL       |Δ|         σ           check\n");
            for entry in &cmp.entries {
                let count = counts
                    .iter()
                    .find(|(l, _)| l == &entry.outcome)
                    .map(|(_, c)| *c)
                    .unwrap_or(0);
                out.push_str(&format!(
                    "{:<12} {:<12} {:<11} {:<11} {:<11} {:<11} {}\n",
                    entry.outcome,
                    count,
                    fmt6(entry.frequency),
                    fmt6(entry.abl_probability),
                    fmt6(entry.deviation),
                    fmt6(entry.std_error),
                    pass_str(entry.pass),
                ));
            }
        }
        out.push_str(&format!(
            "\nverdict: {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

// ---------------------------------------------------------------------------
// reality
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityReport {
    pub scenario: String,
    pub report: ElementsOfReality,
    pub caveat: String,
}

pub fn reality_report(scenario: &QuantumScenario, tol: f64) -> Result<RealityReport> {
    Ok(RealityReport {
        scenario: scenario.name.clone(),
        report: elements_of_reality(&scenario.tsv, &scenario.observables, tol)?,
        caveat: REALITY_CAVEAT.to_string(),
    })
}

impl RealityReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario:  {}\n", self.scenario));
        out.push_str(&format!("tolerance: {:.1e}\n\n", self.report.tolerance));
        if self.report.entries.is_empty() {
            out.push_str("no outcome reaches probability 1 within tolerance\n");
        } else {
            out.push_str("observable   outcome      probability   counterfactual reading\n");
            for e in &self.report.entries {
                out.push_str(&format!(
                    "{:<12} {:<12} {:<13} {}\n",
                    e.observable,
                    e.outcome,
                    fmt6(e.probability),
                    if e.counterfactually_valid {
                        "valid under natural similarity"
                    } else {
                        "INVALID as counterfactual (natural similarity)"
                    }
                ));
            }
        }
        for u in &self.report.undefined {
            out.push_str(&format!(
                "{:<12} conditional undefined (denominator {:.3e})\n",
                u.observable, u.denominator
            ));
        }
        out.push_str(&format!("\nnote: {}\n", self.caveat));
        out
    }
}

// ---------------------------------------------------------------------------
// worlds
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldRow {
    pub id: String,
    pub context: String,
    pub intermediate: Option<String>,
    pub post: String,
    pub likelihood: f64,
    pub accessible: bool,
}

impl WorldRow {
    fn from_world(w: &World) -> Self {
        Self {
            id: w.id.clone(),
            context: w.context().to_string(),
            intermediate: w.intermediate_outcome.clone(),
            post: w.post_outcome.clone(),
            likelihood: w.likelihood,
            accessible: w.accessible(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereRow {
    pub index: usize,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CotenabilityRow {
    pub premise: String,
    pub antecedent: String,
    pub cotenable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterfactualRow {
    pub antecedent: String,
    pub consequent: String,
    pub verdict: CounterfactualVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorldsReport {
    pub scenario: String,
    pub observable: Option<String>,
    pub relation: String,
    pub actual: String,
    pub worlds: Vec<WorldRow>,
    pub spheres: Vec<SphereRow>,
    pub cotenability: CotenabilityRow,
    pub counterfactual: CounterfactualRow,
    pub audit: SimilarityAudit,
    pub caveat: Option<String>,
}

fn spheres_for(
    kind: SimilarityKind,
    worlds: &[World],
    center: &str,
    premise: &Proposition,
) -> Result<SphereSystem> {
    match kind {
        SimilarityKind::Natural => natural_spheres(worlds, center),
        SimilarityKind::Z => z_spheres(worlds, center, premise),
        SimilarityKind::Likelihood => likelihood_spheres(worlds, center, TIE_TOL),
    }
}

/// Everything a counterfactual evaluation needs besides the relation itself.
struct EvaluationFrame<'a> {
    worlds: &'a [World],
    center: &'a str,
    antecedent: &'a Proposition,
    premise: &'a Proposition,
    consequent: &'a Proposition,
    checks: &'a [(&'a Proposition, &'a Proposition)],
}

fn compose_worlds_report(
    scenario_name: &str,
    observable: Option<&str>,
    kind: SimilarityKind,
    frame: EvaluationFrame<'_>,
) -> Result<WorldsReport> {
    let EvaluationFrame {
        worlds,
        center,
        antecedent,
        premise,
        consequent,
        checks,
    } = frame;
    let spheres = spheres_for(kind, worlds, center, premise)?;
    let is_cotenable = cotenable(premise, antecedent, &spheres)?;
    let verdict = eval_counterfactual(antecedent, consequent, &spheres)?;
    let audit = audit_spheres(kind.label(), &spheres, worlds, checks)?;
    Ok(WorldsReport {
        scenario: scenario_name.to_string(),
        observable: observable.map(str::to_string),
        relation: kind.label().to_string(),
        actual: center.to_string(),
        worlds: worlds.iter().map(WorldRow::from_world).collect(),
        spheres: spheres
            .spheres
            .iter()
            .enumerate()
            .map(|(i, s)| SphereRow {
                index: i + 1,
                members: s.iter().cloned().collect(),
            })
            .collect(),
        cotenability: CotenabilityRow {
            premise: premise.name.clone(),
            antecedent: antecedent.name.clone(),
            cotenable: is_cotenable,
        },
        counterfactual: CounterfactualRow {
            antecedent: antecedent.name.clone(),
            consequent: consequent.name.clone(),
            verdict,
        },
        audit,
        caveat: (kind == SimilarityKind::Z).then(|| STIPULATION_CAVEAT.to_string()),
    })
}

pub fn worlds_report(
    scenario: &Scenario,
    observable: Option<&str>,
    kind: SimilarityKind,
) -> Result<WorldsReport> {
    match scenario {
        Scenario::Quantum(q) => {
            let name = observable.ok_or_else(|| {
                Error::validation("--observable", "required for quantum scenarios")
            })?;
            let obs = q.observable(name)?;
            let worlds = crate::worlds::build_world_space(&q.tsv, obs)?;
            let p = prop_measured(&worlds);
            let t = prop_two_state_preserved(&worlds);
            let q_prop = prop_abl_governs(&worlds);
            let checks = [(&t, &p)];
            compose_worlds_report(
                &q.name,
                Some(name),
                kind,
                EvaluationFrame {
                    worlds: &worlds,
                    center: ACTUAL_WORLD_ID,
                    antecedent: &p,
                    premise: &t,
                    consequent: &q_prop,
                    checks: &checks,
                },
            )
        }
        Scenario::Classical(c) => {
            if observable.is_some() {
                return Err(Error::validation(
                    "--observable",
                    "classical scenarios have no observables",
                ));
            }
            let checks: Vec<(&Proposition, &Proposition)> = c
                .audit_checks
                .iter()
                .map(|(x, given)| Ok((c.proposition(x)?, c.proposition(given)?)))
                .collect::<Result<_>>()?;
            compose_worlds_report(
                &c.name,
                None,
                kind,
                EvaluationFrame {
                    worlds: &c.worlds,
                    center: &c.actual,
                    antecedent: &c.antecedent,
                    premise: &c.stipulated,
                    consequent: &c.consequent,
                    checks: &checks,
                },
            )
        }
    }
}

fn audit_table(audit: &SimilarityAudit) -> String {
    let mut out = String::new();
    out.push_str(&format!("audit ({}):\n", audit.relation));
    out.push_str("  likelihood checks:\n");
    for c in &audit.likelihood_checks {
        out.push_str(&format!(
            "    Prob({} | {}&B) = {} vs Prob(¬{} | {}&B) = {} → {}\n",
            c.premise,
            c.given,
            fmt6(c.prob),
            c.premise,
            c.given,
            fmt6(c.prob_complement),
            match c.outcome {
                crate::similarity::CheckOutcome::Pass => "pass",
                crate::similarity::CheckOutcome::Fail => "fail",
                crate::similarity::CheckOutcome::Tie => "tie",
            }
        ));
    }
    if audit.violations.is_empty() {
        out.push_str("  ranking violations: none\n");
    } else {
        out.push_str("  ranking violations (closer world is strictly less likely):\n");
        for v in &audit.violations {
            out.push_str(&format!(
                "    {} ({}) ranked closer than {} ({})\n",
                v.closer,
                fmt6(v.closer_likelihood),
                v.farther,
                fmt6(v.farther_likelihood)
            ));
        }
    }
    out.push_str(&format!(
        "  verdict: {}\n",
        match audit.verdict {
            crate::similarity::AuditVerdict::Justified => "justified",
            crate::similarity::AuditVerdict::Unjustified => "unjustified",
            crate::similarity::AuditVerdict::DegenerateTie => "degenerate-tie",
        }
    ));
    out
}

fn worlds_table(rows: &[WorldRow]) -> String {
    let mut out = String::new();
    out.push_str("id               context    intermediate   post     likelihood   accessible\n");
    for w in rows {
        out.push_str(&format!(
            "{:<16} {:<10} {:<14} {:<8} {:<12} {}\n",
            w.id,
            w.context,
            w.intermediate.as_deref().unwrap_or("-"),
            w.post,
            fmt6(w.likelihood),
            if w.accessible { "yes" } else { "no" }
        ));
    }
    out
}

impl WorldsReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario:   {}\n", self.scenario));
        if let Some(obs) = &self.observable {
            out.push_str(&format!("observable: {obs}\n"));
        }
        out.push_str(&format!("relation:   {}\n", self.relation));
        out.push_str(&format!("actual:     {}\n\n", self.actual));
        out.push_str(&worlds_table(&self.worlds));
        out.push_str("\nspheres (innermost first):\n");
        for s in &self.spheres {
            out.push_str(&format!("  ζ({}): {}\n", s.index, s.members.join(", ")));
        }
        out.push_str(&format!(
            "\ncotenable({}, {}): {}\n",
            self.cotenability.premise,
            self.cotenability.antecedent,
            self.cotenability.cotenable
        ));
        out.push_str(&format!(
            "counterfactual {} □→ {}: {}\n\n",
            self.counterfactual.antecedent,
            self.counterfactual.consequent,
            self.counterfactual.verdict
        ));
        out.push_str(&audit_table(&self.audit));
        if let Some(caveat) = &self.caveat {
            out.push_str(&format!("\nnote: {caveat}\n"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// lottery
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LotteryArm {
    pub label: String,
    pub win_probability: f64,
    pub lose_probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LotteryEvaluation {
    pub relation: String,
    pub stipulation_cotenable: bool,
    pub verdict: CounterfactualVerdict,
    pub audit: SimilarityAudit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LotteryReport {
    pub entrants: u64,
    pub sole_entry_chance: f64,
    pub worlds: Vec<WorldRow>,
    pub factual_arm: LotteryArm,
    pub sole_arm: LotteryArm,
    pub evaluations: Vec<LotteryEvaluation>,
    pub caveat: String,
}

fn lottery_arm(scenario: &ClassicalScenario, label: &str, branch: &str) -> LotteryArm {
    let in_branch = |w: &&World| w.intermediate_outcome.as_deref() == Some(branch);
    let total: f64 = scenario.worlds.iter().filter(in_branch).map(|w| w.likelihood).sum();
    let win: f64 = scenario
        .worlds
        .iter()
        .filter(|w| in_branch(w) && w.post_outcome == "win")
        .map(|w| w.likelihood)
        .sum();
    LotteryArm {
        label: label.to_string(),
        win_probability: win / total,
        lose_probability: 1.0 - win / total,
    }
}

pub fn lottery_report(entrants: u64) -> Result<LotteryReport> {
    let scenario = presets::lottery(entrants)?;
    let checks: Vec<(&Proposition, &Proposition)> = scenario
        .audit_checks
        .iter()
        .map(|(x, given)| Ok((scenario.proposition(x)?, scenario.proposition(given)?)))
        .collect::<Result<_>>()?;

    let mut evaluations = Vec::new();
    for (relation, kind) in [
        ("sole-entrant", SimilarityKind::Z),
        ("likelihood", SimilarityKind::Likelihood),
    ] {
        let spheres = spheres_for(kind, &scenario.worlds, &scenario.actual, &scenario.stipulated)?;
        let stipulation_cotenable =
            cotenable(&scenario.stipulated, &scenario.antecedent, &spheres)?;
        let verdict = eval_counterfactual(&scenario.antecedent, &scenario.consequent, &spheres)?;
        let audit = audit_spheres(relation, &spheres, &scenario.worlds, &checks)?;
        evaluations.push(LotteryEvaluation {
            relation: relation.to_string(),
            stipulation_cotenable,
            verdict,
            audit,
        });
    }

    Ok(LotteryReport {
        entrants,
        sole_entry_chance: presets::SOLE_ENTRY_CHANCE,
        worlds: scenario.worlds.iter().map(WorldRow::from_world).collect(),
        factual_arm: lottery_arm(&scenario, "enter with the full field", "field"),
        sole_arm: lottery_arm(&scenario, "enter as sole entrant (stipulated)", "sole"),
        evaluations,
        caveat: STIPULATION_CAVEAT.to_string(),
    })
}

impl LotteryReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("lottery: field of {} entrants\n", self.entrants));
        out.push_str(&format!(
            "chance that no one else enters: {:.1e}\n\n",
            self.sole_entry_chance
        ));
        out.push_str(&worlds_table(&self.worlds));
        out.push('\n');
        for arm in [&self.factual_arm, &self.sole_arm] {
            out.push_str(&format!(
                "{}: win {}, lose {}\n",
                arm.label,
                fmt6(arm.win_probability),
                fmt6(arm.lose_probability)
            ));
        }
        out.push_str("\ncounterfactual: \"if I were to enter, I would win\" (P □→ WIN)\n\n");
        for eval in &self.evaluations {
            out.push_str(&format!(
                "under {}: cotenable(SOLE, P) = {}, verdict = {}\n",
                eval.relation, eval.stipulation_cotenable, eval.verdict
            ));
            out.push_str(&audit_table(&eval.audit));
            out.push('\n');
        }
        out.push_str(&format!("note: {}\n", self.caveat));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::presets;

    #[test]
    fn abl_report_renders_deterministically() {
        let scenario = presets::spin_zx();
        let a = abl_report(&scenario, "sigma_z").unwrap();
        let b = abl_report(&scenario, "sigma_z").unwrap();
        assert_eq!(render_json(&a), render_json(&b));
        assert_eq!(a.table(), b.table());
        assert!(a.table().contains("1.000000"));
    }

    #[test]
    fn reports_round_trip_through_json() {
        let scenario = presets::spin_zx();
        let report = abl_report(&scenario, "sigma_x").unwrap();
        let parsed: AblReport = serde_json::from_str(&render_json(&report)).unwrap();
        assert_eq!(parsed, report);

        let sim = simulate_report(&scenario, Some("sigma_z"), 5_000, 11).unwrap();
        let parsed: SimulateReport = serde_json::from_str(&render_json(&sim)).unwrap();
        assert_eq!(parsed, sim);

        let worlds = worlds_report(
            &Scenario::Quantum(scenario.clone()),
            Some("sigma_z"),
            SimilarityKind::Natural,
        )
        .unwrap();
        let parsed: WorldsReport = serde_json::from_str(&render_json(&worlds)).unwrap();
        assert_eq!(parsed, worlds);

        let lottery = lottery_report(1_000).unwrap();
        let parsed: LotteryReport = serde_json::from_str(&render_json(&lottery)).unwrap();
        assert_eq!(parsed, lottery);
    }

    #[test]
    fn worlds_report_z_carries_caveat() {
        let scenario = Scenario::Quantum(presets::spin_zx());
        let z = worlds_report(&scenario, Some("sigma_z"), SimilarityKind::Z).unwrap();
        assert!(z.caveat.is_some());
        assert!(z.cotenability.cotenable);
        assert_eq!(z.counterfactual.verdict, CounterfactualVerdict::True);
        let natural = worlds_report(&scenario, Some("sigma_z"), SimilarityKind::Natural).unwrap();
        assert!(natural.caveat.is_none());
    }

    #[test]
    fn worlds_report_requires_observable_for_quantum() {
        let scenario = Scenario::Quantum(presets::spin_zx());
        assert!(matches!(
            worlds_report(&scenario, None, SimilarityKind::Natural),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn worlds_report_rejects_observable_for_classical() {
        let scenario = Scenario::Classical(presets::lottery(100).unwrap());
        assert!(matches!(
            worlds_report(&scenario, Some("sigma_z"), SimilarityKind::Natural),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn lottery_report_arms() {
        let report = lottery_report(10_000_000).unwrap();
        assert!((report.factual_arm.win_probability - 1e-7).abs() < 1e-18);
        assert!((report.sole_arm.win_probability - 1.0).abs() < 1e-15);
        assert_eq!(report.sole_arm.lose_probability, 0.0);
        let sole = &report.evaluations[0];
        assert_eq!(sole.verdict, CounterfactualVerdict::True);
        let likelihood = &report.evaluations[1];
        assert_eq!(likelihood.verdict, CounterfactualVerdict::False);
    }

    #[test]
    fn table_and_json_agree_on_values() {
        let scenario = presets::spin_xx();
        let report = abl_report(&scenario, "sigma_z").unwrap();
        let table = report.table();
        for (_, p) in &report.distribution.entries {
            assert!(table.contains(&format!("{p:.6}")));
        }
    }
}
