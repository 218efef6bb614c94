//! Acceptance suite.
//!
//! One test per criterion; each prints a `[PASS]`/`[FAIL]` line (visible with
//! `cargo test --test acceptance -- --nocapture`). Tolerances are pinned in
//! the assertions.

use std::time::Instant;

use ablworlds_core::abl::{
    abl_probability, disturbance, elements_of_reality, postselection_prob, TwoStateVector,
};
use ablworlds_core::ensemble::{compare_with_abl, simulate_ensemble};
use ablworlds_core::error::Error;
use ablworlds_core::quantum::{overlap, random_basis, random_state, Observable, PROB_EPS};
use ablworlds_core::report::{render_json, simulate_report};
use ablworlds_core::scenario::presets;
use ablworlds_core::similarity::{
    audit_spheres, likelihood_criterion, likelihood_spheres, natural_spheres, z_spheres,
    AuditVerdict, CheckOutcome, TIE_TOL,
};
use ablworlds_core::worlds::{
    build_world_space, cotenable, eval_counterfactual, eval_via_auxiliary_exhaustive,
    prop_abl_governs, prop_measured, prop_two_state_preserved, CounterfactualVerdict, Proposition,
    World, ACTUAL_WORLD_ID,
};
use ablworlds_core::{abl_distribution, Scenario};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($arg)+));
        }
    };
}

fn criterion(number: u8, name: &str, run: impl FnOnce() -> Result<String, String>) {
    match run() {
        Ok(detail) => println!("[PASS] criterion {number} ({name}): {detail}"),
        Err(msg) => {
            println!("[FAIL] criterion {number} ({name}): {msg}");
            panic!("acceptance criterion {number} ({name}) failed: {msg}");
        }
    }
}

fn observable_from_basis(dim: usize, seed: u64) -> Observable {
    let basis = random_basis(dim, seed).expect("dim >= 2");
    let labels = (0..dim).map(|k| format!("o{k}")).collect();
    Observable::new("obs", basis, labels).expect("random basis is orthonormal")
}

#[test]
fn criterion_1_abl_normalization() {
    criterion(1, "ABL normalization on 1000 random cases", || {
        let start = Instant::now();
        let mut defined = 0u32;
        for i in 0..1000u64 {
            let dim = 2 + (i % 7) as usize;
            let pre = random_state(dim, 0xA000 + i).map_err(|e| e.to_string())?;
            let post = random_state(dim, 0xB000 + i).map_err(|e| e.to_string())?;
            let tsv = TwoStateVector::new(pre, post).map_err(|e| e.to_string())?;
            let obs = observable_from_basis(dim, 0xC000 + i);
            match abl_distribution(&tsv, &obs) {
                Ok(dist) => {
                    defined += 1;
                    let total: f64 = dist.entries.iter().map(|(_, p)| p).sum();
                    ensure!(
                        (total - 1.0).abs() <= 1e-10,
                        "case {i}: distribution sums to {total}"
                    );
                    for (label, p) in &dist.entries {
                        ensure!(
                            (-1e-12..=1.0 + 1e-10).contains(p),
                            "case {i}: outcome {label} probability {p} outside [0,1]"
                        );
                    }
                }
                Err(Error::UndefinedConditional { denominator }) => {
                    ensure!(
                        denominator <= PROB_EPS,
                        "case {i}: rejected a positive denominator {denominator}"
                    );
                }
                Err(e) => return Err(format!("case {i}: unexpected error {e}")),
            }
        }
        let elapsed = start.elapsed();
        ensure!(
            elapsed.as_secs_f64() < 1.0,
            "runtime {elapsed:?} exceeds 1 s"
        );
        Ok(format!("{defined}/1000 defined, all normalized within 1e-10, {elapsed:.2?}"))
    });
}

#[test]
fn criterion_2_elements_of_reality() {
    criterion(2, "probability-1 outcomes flagged as counterfactually invalid", || {
        let tsv = TwoStateVector::new(presets::z_plus(), presets::x_plus())
            .map_err(|e| e.to_string())?;
        let sigma_z = presets::sigma_z();
        let sigma_x = presets::sigma_x();
        let p_z = abl_probability(&tsv, &sigma_z, 0).map_err(|e| e.to_string())?;
        let p_x = abl_probability(&tsv, &sigma_x, 0).map_err(|e| e.to_string())?;
        ensure!((p_z - 1.0).abs() <= 1e-12, "P(σz = z+) = {p_z}, not 1 within 1e-12");
        ensure!((p_x - 1.0).abs() <= 1e-12, "P(σx = x+) = {p_x}, not 1 within 1e-12");

        let report = elements_of_reality(&tsv, &[sigma_z, sigma_x], 1e-9)
            .map_err(|e| e.to_string())?;
        ensure!(report.entries.len() == 2, "expected 2 entries, found {}", report.entries.len());
        for want in [("sigma_z", "z+"), ("sigma_x", "x+")] {
            let entry = report
                .entries
                .iter()
                .find(|e| e.observable == want.0 && e.outcome == want.1)
                .ok_or_else(|| format!("missing entry for {want:?}"))?;
            ensure!(
                (entry.probability - 1.0).abs() <= 1e-12,
                "{want:?} probability {}",
                entry.probability
            );
            ensure!(
                !entry.counterfactually_valid,
                "{want:?} not annotated invalid under the natural relation"
            );
        }
        Ok("both probability-1 entries within 1e-12 and annotated invalid".to_string())
    });
}

#[test]
fn criterion_3_monte_carlo_agreement() {
    criterion(3, "conditional frequencies match the rule when measured", || {
        let start = Instant::now();
        // Independent oracle: enumerate the two-stage outcome tree with plain
        // arithmetic. a = b = |z+⟩, C = σx.
        let amp = std::f64::consts::FRAC_1_SQRT_2;
        let branch = [amp * amp, amp * amp]; // Born probabilities of x± on |z+⟩
        let select = [amp * amp, amp * amp]; // |⟨z+|x±⟩|²
        let joint: Vec<f64> = branch.iter().zip(&select).map(|(b, s)| b * s).collect();
        let total: f64 = joint.iter().sum();
        let oracle: Vec<f64> = joint.iter().map(|j| j / total).collect();
        ensure!(
            (oracle[0] - 0.5).abs() < 1e-15 && (oracle[1] - 0.5).abs() < 1e-15,
            "tree enumeration gives {oracle:?}, expected {{0.5, 0.5}}"
        );

        let tsv = TwoStateVector::new(presets::z_plus(), presets::z_plus())
            .map_err(|e| e.to_string())?;
        let sigma_x = presets::sigma_x();
        let n = 100_000u64;
        let result = simulate_ensemble(&tsv, Some(&sigma_x), n, 1964).map_err(|e| e.to_string())?;
        let m = result.postselected_runs as f64;
        ensure!(m > 0.0, "no post-selected runs");
        let freqs = result
            .conditional_frequencies
            .as_ref()
            .ok_or("missing conditional frequencies")?;
        for ((label, freq), p) in freqs.iter().zip(&oracle) {
            let sigma = (p * (1.0 - p) / m).sqrt();
            ensure!(
                (freq - p).abs() <= 3.0 * sigma,
                "outcome {label}: frequency {freq} vs {p} beyond 3σ = {:.5}",
                3.0 * sigma
            );
        }
        // Same verdict through the comparison operation.
        let dist = abl_distribution(&tsv, &sigma_x).map_err(|e| e.to_string())?;
        let report = compare_with_abl(&result, &dist).map_err(|e| e.to_string())?;
        ensure!(report.overall_pass, "compare_with_abl reports failure");
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?} exceeds 5 s");
        Ok(format!(
            "frequencies {:?} within 3σ of {{0.5, 0.5}} at M = {}, {elapsed:.2?}",
            freqs.iter().map(|(_, f)| *f).collect::<Vec<_>>(),
            result.postselected_runs
        ))
    });
}

#[test]
fn criterion_4_disturbance() {
    criterion(4, "measurement disturbance, analytic and empirical", || {
        // Hand evaluation: with a = b = |x+⟩ and C = σz the selection odds
        // are 1/4 + 1/4 = 1/2 measured versus 1 unmeasured.
        let tsv = TwoStateVector::new(presets::x_plus(), presets::x_plus())
            .map_err(|e| e.to_string())?;
        let sigma_z = presets::sigma_z();
        let analytic = disturbance(&tsv, &sigma_z).map_err(|e| e.to_string())?;
        ensure!(
            (analytic - 0.5).abs() <= 1e-12,
            "analytic disturbance {analytic}, expected 0.5"
        );

        let n = 100_000u64;
        let measured =
            simulate_ensemble(&tsv, Some(&sigma_z), n, 1964).map_err(|e| e.to_string())?;
        let unmeasured = simulate_ensemble(&tsv, None, n, 1964).map_err(|e| e.to_string())?;
        ensure!(
            unmeasured.postselection_rate == 1.0,
            "unmeasured arm rate {} (certain selection expected)",
            unmeasured.postselection_rate
        );
        let expected_rate = postselection_prob(&tsv, Some(&sigma_z)).map_err(|e| e.to_string())?;
        let sigma = (expected_rate * (1.0 - expected_rate) / n as f64).sqrt();
        let empirical = (measured.postselection_rate - unmeasured.postselection_rate).abs();
        ensure!(
            (empirical - analytic).abs() <= 3.0 * sigma,
            "empirical disturbance {empirical} vs 0.5 beyond 3σ = {:.5}",
            3.0 * sigma
        );
        Ok(format!(
            "analytic 0.5 exactly; empirical {empirical:.5} within 3σ = {:.5}",
            3.0 * sigma
        ))
    });
}

#[test]
fn criterion_5_cotenability_verdicts() {
    criterion(5, "natural vs stipulating relation on the disturbance scenario", || {
        let tsv = TwoStateVector::new(presets::x_plus(), presets::x_plus())
            .map_err(|e| e.to_string())?;
        let sigma_z = presets::sigma_z();
        let worlds = build_world_space(&tsv, &sigma_z).map_err(|e| e.to_string())?;
        let p = prop_measured(&worlds);
        let t = prop_two_state_preserved(&worlds);
        let q = prop_abl_governs(&worlds);

        let natural = natural_spheres(&worlds, ACTUAL_WORLD_ID).map_err(|e| e.to_string())?;
        ensure!(
            !cotenable(&t, &p, &natural).map_err(|e| e.to_string())?,
            "T cotenable with P under the natural relation"
        );
        ensure!(
            eval_counterfactual(&p, &q, &natural).map_err(|e| e.to_string())?
                == CounterfactualVerdict::False,
            "counterfactual not false under the natural relation"
        );

        let z = z_spheres(&worlds, ACTUAL_WORLD_ID, &t).map_err(|e| e.to_string())?;
        ensure!(
            cotenable(&t, &p, &z).map_err(|e| e.to_string())?,
            "T not cotenable with P under the stipulating relation"
        );
        ensure!(
            eval_counterfactual(&p, &q, &z).map_err(|e| e.to_string())?
                == CounterfactualVerdict::True,
            "counterfactual not true under the stipulating relation"
        );
        Ok("natural: cotenable=false, verdict=false; z: cotenable=true, verdict=true".to_string())
    });
}

#[test]
fn criterion_6_semantics_oracle_equivalence() {
    criterion(6, "exhaustive premise search agrees with the truth condition", || {
        use rand::{Rng, SeedableRng};
        let start = Instant::now();
        let mut comparisons = 0u32;
        for i in 0..100u64 {
            let dim = 2 + (i % 4) as usize; // 6–12 worlds
            let mut found = None;
            for attempt in 0..64u64 {
                let pre = random_state(dim, 7_000 + i + attempt).map_err(|e| e.to_string())?;
                let post =
                    random_state(dim, 9_000 + i + attempt * 31).map_err(|e| e.to_string())?;
                if overlap(&post, &pre).map_err(|e| e.to_string())? > 1e-6 {
                    found = Some((
                        TwoStateVector::new(pre, post).map_err(|e| e.to_string())?,
                        observable_from_basis(dim, 11_000 + i),
                    ));
                    break;
                }
            }
            let (tsv, obs) = found.ok_or_else(|| format!("scenario {i}: no usable state pair"))?;
            let worlds = build_world_space(&tsv, &obs).map_err(|e| e.to_string())?;
            ensure!(worlds.len() <= 12, "scenario {i}: {} worlds", worlds.len());
            let p = prop_measured(&worlds);
            let t = prop_two_state_preserved(&worlds);
            let q = prop_abl_governs(&worlds);

            let mut ids: Vec<&str> = worlds.iter().map(|w| w.id.as_str()).collect();
            ids.sort_unstable();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xD00D + i);
            let mut random_prop = |name: &str| {
                let mask: u16 = rng.random();
                Proposition::new(
                    name,
                    ids.iter()
                        .enumerate()
                        .filter(|(bit, _)| mask & (1 << (bit % 16)) != 0)
                        .map(|(_, id)| id.to_string()),
                )
            };
            let pairs = [
                (p.clone(), q.clone()),
                (random_prop("p1"), random_prop("q1")),
                (random_prop("p2"), random_prop("q2")),
            ];

            let mut systems = vec![
                natural_spheres(&worlds, ACTUAL_WORLD_ID).map_err(|e| e.to_string())?,
                likelihood_spheres(&worlds, ACTUAL_WORLD_ID, TIE_TOL)
                    .map_err(|e| e.to_string())?,
            ];
            if let Ok(z) = z_spheres(&worlds, ACTUAL_WORLD_ID, &t) {
                systems.push(z);
            }
            for s in &systems {
                for (p, q) in &pairs {
                    let direct =
                        eval_counterfactual(p, q, s).map_err(|e| e.to_string())?;
                    let (searched, witness) =
                        eval_via_auxiliary_exhaustive(p, q, s, &worlds)
                            .map_err(|e| e.to_string())?;
                    ensure!(
                        direct == searched,
                        "scenario {i}: verdict mismatch {direct:?} vs {searched:?} for {}/{}",
                        p.name,
                        q.name
                    );
                    ensure!(
                        (searched == CounterfactualVerdict::True) == witness.is_some(),
                        "scenario {i}: witness presence inconsistent with verdict"
                    );
                    comparisons += 1;
                }
            }
        }
        let elapsed = start.elapsed();
        ensure!(elapsed.as_secs_f64() < 30.0, "runtime {elapsed:?} exceeds 30 s");
        Ok(format!("{comparisons} comparisons, exact agreement, {elapsed:.2?}"))
    });
}

#[test]
fn criterion_7_likelihood_audit() {
    criterion(7, "comparative-possibility audit of the stipulating relation", || {
        // Tie case: a = |z+⟩, b = |x+⟩, C = σz.
        let tsv = TwoStateVector::new(presets::z_plus(), presets::x_plus())
            .map_err(|e| e.to_string())?;
        let sigma_z = presets::sigma_z();
        let worlds = build_world_space(&tsv, &sigma_z).map_err(|e| e.to_string())?;
        let p = prop_measured(&worlds);
        let t = prop_two_state_preserved(&worlds);
        let z = z_spheres(&worlds, ACTUAL_WORLD_ID, &t).map_err(|e| e.to_string())?;
        let audit =
            audit_spheres("z", &z, &worlds, &[(&t, &p)]).map_err(|e| e.to_string())?;
        let check = &audit.likelihood_checks[0];
        ensure!(
            (check.prob - 0.5).abs() <= 1e-12 && (check.prob_complement - 0.5).abs() <= 1e-12,
            "tie case probabilities ({}, {})",
            check.prob,
            check.prob_complement
        );
        ensure!(check.outcome == CheckOutcome::Tie, "tie case outcome {:?}", check.outcome);
        ensure!(
            audit.verdict == AuditVerdict::DegenerateTie,
            "tie case verdict {:?}",
            audit.verdict
        );

        // Brute-force search (oracle: postselection probabilities) for a
        // qutrit where the premise is likelier false than true.
        let canonical = Observable::new(
            "canonical",
            (0..3)
                .map(|k| ablworlds_core::PureState::basis_vector(3, k).unwrap())
                .collect(),
            vec!["c0".into(), "c1".into(), "c2".into()],
        )
        .map_err(|e| e.to_string())?;
        let mut found = None;
        for seed in 0..500u64 {
            let a = random_state(3, 40_000 + seed).map_err(|e| e.to_string())?;
            let b = random_state(3, 50_000 + seed).map_err(|e| e.to_string())?;
            let tsv = TwoStateVector::new(a, b).map_err(|e| e.to_string())?;
            let with = postselection_prob(&tsv, Some(&canonical)).map_err(|e| e.to_string())?;
            let factual = postselection_prob(&tsv, None).map_err(|e| e.to_string())?;
            if factual > 1e-3 && with > 1e-3 && with < 0.45 {
                found = Some((tsv, with));
                break;
            }
        }
        let (qutrit_tsv, searched_prob) = found.ok_or("brute-force search found no qutrit")?;
        let worlds = build_world_space(&qutrit_tsv, &canonical).map_err(|e| e.to_string())?;
        let p = prop_measured(&worlds);
        let t = prop_two_state_preserved(&worlds);
        let check = likelihood_criterion(&t, &p, &worlds).map_err(|e| e.to_string())?;
        ensure!(
            (check.prob - searched_prob).abs() <= 1e-10,
            "world-sum route {} disagrees with the selection-probability oracle {}",
            check.prob,
            searched_prob
        );
        let z = z_spheres(&worlds, ACTUAL_WORLD_ID, &t).map_err(|e| e.to_string())?;
        let audit =
            audit_spheres("z", &z, &worlds, &[(&t, &p)]).map_err(|e| e.to_string())?;
        ensure!(
            audit.verdict == AuditVerdict::Unjustified,
            "searched qutrit verdict {:?}",
            audit.verdict
        );

        // The shipped qutrit preset exhibits the same reversal at 1/3.
        let preset = presets::qutrit_uniform();
        let prob_t = postselection_prob(&preset.tsv, Some(&preset.observables[0]))
            .map_err(|e| e.to_string())?;
        ensure!(
            (prob_t - 1.0 / 3.0).abs() <= 1e-12,
            "preset Prob(T|P&B) = {prob_t}, expected 1/3"
        );
        let worlds =
            build_world_space(&preset.tsv, &preset.observables[0]).map_err(|e| e.to_string())?;
        let p = prop_measured(&worlds);
        let t = prop_two_state_preserved(&worlds);
        let z = z_spheres(&worlds, ACTUAL_WORLD_ID, &t).map_err(|e| e.to_string())?;
        let audit =
            audit_spheres("z", &z, &worlds, &[(&t, &p)]).map_err(|e| e.to_string())?;
        ensure!(
            audit.verdict == AuditVerdict::Unjustified,
            "preset verdict {:?}",
            audit.verdict
        );

        // The likelihood relation itself never violates its own ordering, on
        // any preset.
        let mut preset_worlds: Vec<(String, Vec<World>)> = Vec::new();
        for scenario in [presets::spin_zx(), presets::spin_xx(), presets::qutrit_uniform()] {
            for obs in &scenario.observables {
                preset_worlds.push((
                    format!("{}/{}", scenario.name, obs.name()),
                    build_world_space(&scenario.tsv, obs).map_err(|e| e.to_string())?,
                ));
            }
        }
        let lottery = presets::lottery(10_000_000).map_err(|e| e.to_string())?;
        preset_worlds.push(("lottery".to_string(), lottery.worlds.clone()));
        for (label, worlds) in &preset_worlds {
            let center = worlds
                .iter()
                .find(|w| w.measured.is_none() && w.accessible())
                .map(|w| w.id.clone())
                .ok_or_else(|| format!("{label}: no accessible unmeasured world"))?;
            let s = likelihood_spheres(worlds, &center, TIE_TOL).map_err(|e| e.to_string())?;
            let audit = audit_spheres("likelihood", &s, worlds, &[]).map_err(|e| e.to_string())?;
            ensure!(
                audit.violations.is_empty(),
                "{label}: likelihood relation produced violations {:?}",
                audit.violations
            );
        }
        Ok(format!(
            "tie (0.5, 0.5); searched qutrit Prob(T|P&B) = {searched_prob:.4} → unjustified; \
             preset 1/3 → unjustified; zero violations on {} preset spaces",
            preset_worlds.len()
        ))
    });
}

#[test]
fn criterion_8_lottery_preset() {
    criterion(8, "sole-entrant stipulation flagged on the lottery preset", || {
        let lottery = presets::lottery(10_000_000).map_err(|e| e.to_string())?;
        let sole_lose = lottery
            .worlds
            .iter()
            .find(|w| w.id == "enter/sole/lose")
            .ok_or("missing sole+lose world")?;
        ensure!(
            sole_lose.likelihood == 0.0,
            "losing as sole entrant has likelihood {}",
            sole_lose.likelihood
        );

        let spheres = z_spheres(&lottery.worlds, &lottery.actual, &lottery.stipulated)
            .map_err(|e| e.to_string())?;
        ensure!(
            spheres.rank("enter/sole/lose").is_none(),
            "impossible world is inside a sphere"
        );
        let verdict = eval_counterfactual(&lottery.antecedent, &lottery.consequent, &spheres)
            .map_err(|e| e.to_string())?;
        ensure!(
            verdict == CounterfactualVerdict::True,
            "stipulated counterfactual verdict {verdict:?}"
        );

        let checks: Vec<(&Proposition, &Proposition)> = lottery
            .audit_checks
            .iter()
            .map(|(x, given)| {
                Ok((
                    lottery.proposition(x).map_err(|e| e.to_string())?,
                    lottery.proposition(given).map_err(|e| e.to_string())?,
                ))
            })
            .collect::<Result<_, String>>()?;
        let audit = audit_spheres("sole-entrant", &spheres, &lottery.worlds, &checks)
            .map_err(|e| e.to_string())?;
        ensure!(
            audit.verdict == AuditVerdict::Unjustified,
            "audit verdict {:?}",
            audit.verdict
        );
        ensure!(!audit.violations.is_empty(), "audit recorded no ranking violations");
        // Losing as the sole entrant: Prob = 0 versus 1, an outright failure.
        let lose_check = audit
            .likelihood_checks
            .iter()
            .find(|c| c.premise == "LOSE" && c.given == "SOLE")
            .ok_or("missing LOSE|SOLE check")?;
        ensure!(
            lose_check.prob == 0.0
                && lose_check.prob_complement == 1.0
                && lose_check.outcome == CheckOutcome::Fail,
            "LOSE|SOLE check ({}, {}, {:?})",
            lose_check.prob,
            lose_check.prob_complement,
            lose_check.outcome
        );

        // Contrast: ranked by likelihood, the counterfactual is false.
        let ranked = likelihood_spheres(&lottery.worlds, &lottery.actual, TIE_TOL)
            .map_err(|e| e.to_string())?;
        let ranked_verdict =
            eval_counterfactual(&lottery.antecedent, &lottery.consequent, &ranked)
                .map_err(|e| e.to_string())?;
        ensure!(
            ranked_verdict == CounterfactualVerdict::False,
            "likelihood-ranked verdict {ranked_verdict:?}"
        );
        Ok(
            "losing world inaccessible; stipulated verdict true; audit unjustified with \
             violations; likelihood relation says false"
                .to_string(),
        )
    });
}

#[test]
fn criterion_9_determinism() {
    criterion(9, "byte-identical structured reports across runs and worker counts", || {
        let scenario = presets::spin_zx();
        let reference = render_json(
            &simulate_report(&scenario, Some("sigma_z"), 100_000, 1964)
                .map_err(|e| e.to_string())?,
        );
        let repeat = render_json(
            &simulate_report(&scenario, Some("sigma_z"), 100_000, 1964)
                .map_err(|e| e.to_string())?,
        );
        ensure!(reference == repeat, "repeated run differs");
        for workers in [1usize, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| e.to_string())?;
            let run = pool.install(|| simulate_report(&scenario, Some("sigma_z"), 100_000, 1964));
            let rendered = render_json(&run.map_err(|e| e.to_string())?);
            ensure!(
                rendered == reference,
                "report differs with {workers} worker thread(s)"
            );
        }
        Ok(format!(
            "{} bytes, identical across repeats and 1/2/8 workers",
            reference.len()
        ))
    });
}

// The shipped scenario files stay in step with the built-in presets.
#[test]
fn shipped_presets_load_and_match() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("..")
        .join("scenarios");
    for (file, preset) in [
        ("spin_zx.scn", presets::spin_zx()),
        ("spin_xx.scn", presets::spin_xx()),
        ("qutrit_uniform.scn", presets::qutrit_uniform()),
    ] {
        let text = std::fs::read_to_string(dir.join(file)).expect(file);
        match ablworlds_core::parse_scenario(&text).expect(file) {
            Scenario::Quantum(q) => {
                assert_eq!(q.name, preset.name, "{file}");
                assert_eq!(q.tsv.dim(), preset.tsv.dim(), "{file}");
                for (a, b) in q
                    .tsv
                    .pre()
                    .amplitudes()
                    .iter()
                    .zip(preset.tsv.pre().amplitudes())
                {
                    assert!((a - b).norm() < 1e-12, "{file}: pre-state drift");
                }
                for (a, b) in q
                    .tsv
                    .post()
                    .amplitudes()
                    .iter()
                    .zip(preset.tsv.post().amplitudes())
                {
                    assert!((a - b).norm() < 1e-12, "{file}: post-state drift");
                }
                let names: Vec<&str> = q.observables.iter().map(|o| o.name()).collect();
                let expected: Vec<&str> = preset.observables.iter().map(|o| o.name()).collect();
                assert_eq!(names, expected, "{file}");
            }
            Scenario::Classical(_) => panic!("{file}: expected a quantum scenario"),
        }
    }

    let text = std::fs::read_to_string(dir.join("lottery.scn")).expect("lottery.scn");
    match ablworlds_core::parse_scenario(&text).expect("lottery.scn") {
        Scenario::Classical(c) => {
            let preset = presets::lottery(10_000_000).unwrap();
            assert_eq!(c.worlds.len(), preset.worlds.len());
            for (a, b) in c.worlds.iter().zip(&preset.worlds) {
                assert_eq!(a.id, b.id, "lottery.scn world order");
                assert!(
                    (a.likelihood - b.likelihood).abs() < 1e-15,
                    "lottery.scn: likelihood drift on {}",
                    a.id
                );
            }
            assert_eq!(c.actual, preset.actual);
            assert_eq!(c.audit_checks, preset.audit_checks);
        }
        Scenario::Quantum(_) => panic!("lottery.scn: expected a classical scenario"),
    }
}
