//! End-to-end acceptance checks. Each test covers one criterion and prints
//! a single PASS/FAIL line; run with `--nocapture` to see the lines on
//! success.

use std::collections::BTreeSet;
use std::time::Instant;

use pco_core::{
    build_canonical, check_canonical_properties, check_entailment, check_rule_soundness,
    check_schema, counterexamples, direct_cause_formula, endogenous_formula, enumerate_components,
    enumerate_models, extract_description, is_normal_form, laws_formula, measure,
    normal_form_with_trace, rat, CausalMultiteam, CoFormula, EnumerationBudget, FormulaPool,
    FunctionComponent, InterventionSpec, LawTable, Multiteam, PcoFormula, RuleId, SampleBudget,
    SchemaId, Signature, Verdict,
};

fn report(number: usize, name: &str, run: impl FnOnce() -> Result<(), String>) {
    match run() {
        Ok(()) => println!("ACCEPTANCE {number} ({name}): PASS"),
        Err(msg) => {
            println!("ACCEPTANCE {number} ({name}): FAIL - {msg}");
            panic!("acceptance criterion {number} ({name}) failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

/// The running example: Y = X + 1, Z = X * Y, four rows.
fn product_model() -> CausalMultiteam {
    let sig = Signature::new(vec![
        ("X", vec!["0", "1", "2"]),
        ("Y", vec!["1", "2", "3"]),
        ("Z", vec!["0", "1", "2", "3", "4", "6"]),
    ])
    .unwrap();
    let x = sig.var("X").unwrap();
    let y = sig.var("Y").unwrap();
    let z = sig.var("Z").unwrap();
    let num = |v, val| -> i64 { sig.value_name(v, val).parse().unwrap() };
    let y_law = LawTable::from_fn(&sig, y, |ctx| {
        sig.value(y, &(num(x, ctx[0]) + 1).to_string()).unwrap()
    });
    let z_law = LawTable::from_fn(&sig, z, |ctx| {
        sig.value(z, &(num(x, ctx[0]) * num(y, ctx[1])).to_string())
            .unwrap()
    });
    let laws = FunctionComponent::from_laws(vec![(y, y_law), (z, z_law)]);
    let mut team = Multiteam::empty();
    for (row, m) in [
        ([("X", "0"), ("Y", "1"), ("Z", "0")], 1),
        ([("X", "1"), ("Y", "2"), ("Z", "2")], 2),
        ([("X", "2"), ("Y", "3"), ("Z", "6")], 1),
    ] {
        team.add(sig.mk_assignment(&row).unwrap(), m);
    }
    CausalMultiteam::new(sig, laws, team).unwrap()
}

fn binary_sig(names: &[&str]) -> Signature {
    Signature::binary(names).unwrap()
}

fn small_budget() -> EnumerationBudget {
    EnumerationBudget::new(binary_sig(&["X", "Y"]), 4)
}

fn three_var_budget() -> EnumerationBudget {
    EnumerationBudget::new(binary_sig(&["X", "Y", "Z"]), 3)
}

fn nonempty_models(budget: &EnumerationBudget) -> Vec<CausalMultiteam> {
    enumerate_models(budget)
        .unwrap()
        .filter(|m| !m.is_empty())
        .collect()
}

#[test]
fn criterion_1_worked_example() {
    report(1, "worked-example", || {
        let started = Instant::now();
        let model = product_model();
        let sig = model.sig().clone();
        let (x, y, z) = (
            sig.var("X").unwrap(),
            sig.var("Y").unwrap(),
            sig.var("Z").unwrap(),
        );
        let z_is_2 = CoFormula::eq(z, sig.value(z, "2").unwrap());

        let before = model.prob(&z_is_2).map_err(|e| e.to_string())?;
        ensure!(before == rat(1, 2), "expected P(Z=2) = 1/2, got {before}");

        let spec = InterventionSpec::new(vec![(y, sig.value(y, "1").unwrap())]);
        let after = model.intervene(&spec).map_err(|e| e.to_string())?;
        let shifted = after.prob(&z_is_2).map_err(|e| e.to_string())?;
        ensure!(
            shifted == rat(1, 4),
            "expected P(Z=2) = 1/4 after forcing Y=1, got {shifted}"
        );

        let mut expected = Multiteam::empty();
        for (row, m) in [
            ([("X", "0"), ("Y", "1"), ("Z", "0")], 1),
            ([("X", "1"), ("Y", "1"), ("Z", "1")], 2),
            ([("X", "2"), ("Y", "1"), ("Z", "2")], 1),
        ] {
            expected.add(sig.mk_assignment(&row).unwrap(), m);
        }
        ensure!(
            after.team() == &expected,
            "post-intervention rows diverge: {:?}",
            after.team()
        );

        let graph = model.causal_graph();
        ensure!(
            graph.has_edge(x, y) && graph.has_edge(x, z) && graph.has_edge(y, z),
            "original graph should have arrows X->Y, X->Z, Y->Z"
        );
        let trimmed = after.causal_graph();
        ensure!(
            !trimmed.has_edge(x, y),
            "forcing Y must remove the arrow X->Y"
        );
        ensure!(
            trimmed.has_edge(x, z) && trimmed.has_edge(y, z) && trimmed.edge_count() == 2,
            "post-intervention graph should keep exactly X->Z and Y->Z"
        );

        let elapsed = started.elapsed();
        ensure!(
            elapsed < std::time::Duration::from_secs(1),
            "worked example took {elapsed:?}, expected under a second"
        );
        Ok(())
    });
}

#[test]
fn criterion_2_negation_dichotomy() {
    report(2, "negation-dichotomy", || {
        let budget = small_budget();
        let sig = budget.sig().clone();
        let models = nonempty_models(&budget);
        ensure!(models.len() == 125, "expected 125 nonempty models");

        let sample = SampleBudget::new(300, 0xd1c0);
        let mut pool = FormulaPool::new(&sig, &sample);
        let formulas: Vec<PcoFormula> = (0..sample.samples).map(|_| pool.pco()).collect();

        let mut checks = 0u64;
        for phi in &formulas {
            let negated = phi.neg_c(&sig);
            for model in &models {
                let holds = model.eval_pco(phi).map_err(|e| e.to_string())?;
                let refuted = model.eval_pco(&negated).map_err(|e| e.to_string())?;
                ensure!(
                    holds ^ refuted,
                    "dichotomy failed for {phi:?} on {:?}",
                    model.team()
                );
                checks += 1;
            }
        }
        ensure!(checks == 300 * 125, "ran {checks} checks, expected 37500");
        Ok(())
    });
}

#[test]
fn criterion_3_schema_validity() {
    report(3, "schema-validity", || {
        let budget = small_budget();
        for id in SchemaId::ALL {
            let sample = SampleBudget::new(50, 0xa1 + id as u64);
            let check = check_schema(id, &sample, &budget).map_err(|e| e.to_string())?;
            ensure!(
                check.results.len() >= 50,
                "{id}: only {} instances generated",
                check.results.len()
            );
            ensure!(
                check.all_valid(),
                "{id} has a counterexample for instance {:?}",
                check.violations().next().map(|(phi, _)| phi)
            );
        }
        let wide = three_var_budget();
        for id in [SchemaId::C9, SchemaId::C10, SchemaId::C11] {
            let sample = SampleBudget::new(50, 0xb2 + id as u64);
            let check = check_schema(id, &sample, &wide).map_err(|e| e.to_string())?;
            ensure!(
                check.results.len() >= 50,
                "{id}: only {} instances generated on three variables",
                check.results.len()
            );
            ensure!(
                check.all_valid(),
                "{id} has a three-variable counterexample for instance {:?}",
                check.violations().next().map(|(phi, _)| phi)
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_4_characterization_formulas() {
    report(4, "characterization-formulas", || {
        let budget = three_var_budget();
        let sig = budget.sig().clone();
        let vars: Vec<_> = sig.vars().collect();
        let models = nonempty_models(&budget);
        ensure!(models.len() == 2996, "expected 2996 nonempty models");

        let mut direct_cause = Vec::new();
        for &cause in &vars {
            for &effect in &vars {
                if cause != effect {
                    let phi =
                        direct_cause_formula(&sig, cause, effect).map_err(|e| e.to_string())?;
                    direct_cause.push((cause, effect, phi));
                }
            }
        }
        let endo: Vec<_> = vars
            .iter()
            .map(|&v| (v, endogenous_formula(&sig, v).unwrap()))
            .collect();
        let components = enumerate_components(&budget).map_err(|e| e.to_string())?;
        let law_formulas: Vec<_> = components
            .iter()
            .map(|f| (f, laws_formula(&sig, f).unwrap()))
            .collect();

        for model in &models {
            for (cause, effect, phi) in &direct_cause {
                let parents = if model.laws().is_endogenous(*effect) {
                    model.laws().parents(&sig, *effect).unwrap()
                } else {
                    BTreeSet::new()
                };
                let holds = model.eval_co(phi).map_err(|e| e.to_string())?;
                ensure!(
                    holds == parents.contains(cause),
                    "direct-cause formula disagrees for {} -> {} on {:?}",
                    sig.var_name(*cause),
                    sig.var_name(*effect),
                    model.team()
                );
            }
            for (v, phi) in &endo {
                let holds = model.eval_pco(phi).map_err(|e| e.to_string())?;
                ensure!(
                    holds == model.laws().is_endogenous(*v),
                    "endogeneity formula disagrees for {} on {:?}",
                    sig.var_name(*v),
                    model.team()
                );
            }
            for (laws, phi) in &law_formulas {
                let holds = model.eval_pco(phi).map_err(|e| e.to_string())?;
                ensure!(
                    holds == (model.laws() == *laws),
                    "law formula disagrees on {:?} for laws {laws:?}",
                    model.team()
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_normal_form() {
    report(5, "normal-form", || {
        let budget = small_budget();
        let sig = budget.sig().clone();
        let models: Vec<_> = enumerate_models(&budget).unwrap().collect();

        let sample = SampleBudget::new(500, 0x5eed);
        let mut pool = FormulaPool::new(&sig, &sample);
        for _ in 0..sample.samples {
            let phi = pool.pco();
            let (nf, trace) = normal_form_with_trace(&sig, &phi).map_err(|e| e.to_string())?;
            ensure!(is_normal_form(&nf), "not in normal form: {nf:?}");
            let mut last = measure(&phi);
            for step in &trace {
                let next = measure(&step.formula);
                ensure!(
                    next < last,
                    "rule {} did not decrease the measure on {phi:?}",
                    step.rule
                );
                last = next;
            }
            for model in &models {
                let before = model.eval_pco(&phi).map_err(|e| e.to_string())?;
                let after = model.eval_pco(&nf).map_err(|e| e.to_string())?;
                ensure!(
                    before == after,
                    "normalization changed truth of {phi:?} on {:?}",
                    model.team()
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_canonical_construction() {
    report(6, "canonical-construction", || {
        for (budget, seed) in [(small_budget(), 0xc0de), (three_var_budget(), 0xc1de)] {
            let sig = budget.sig().clone();
            for (i, model) in nonempty_models(&budget).into_iter().enumerate() {
                let desc = extract_description(&model).map_err(|e| e.to_string())?;
                let rebuilt = build_canonical(&desc).map_err(|e| e.to_string())?;
                let scale = model
                    .team()
                    .iter()
                    .fold(0u64, |g, (_, m)| num_integer::gcd(g, m));
                ensure!(
                    model.total() == rebuilt.total() * scale,
                    "rebuilt total {} is not the original {} over gcd {scale}",
                    rebuilt.total(),
                    model.total()
                );
                for (row, m) in model.team().iter() {
                    ensure!(
                        rebuilt.team().count(row) * scale == m,
                        "rebuilt multiplicity diverges on {}",
                        sig.format_row(row)
                    );
                }

                let sample = SampleBudget::new(100, seed + i as u64);
                let mut pool = FormulaPool::new(&sig, &sample);
                let betas: Vec<CoFormula> = (0..100).map(|_| pool.co()).collect();
                // The six properties characterize the model the construction
                // emits; rebuilt equals the original whenever the original's
                // multiplicities are already coprime.
                let report = check_canonical_properties(&rebuilt, &betas);
                ensure!(
                    report.all_pass(),
                    "canonical report failed on {:?}: {:?}",
                    model.team(),
                    report
                        .items()
                        .iter()
                        .find(|(_, status)| !status.passed())
                        .map(|(name, status)| (*name, (*status).clone()))
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_entailment_gaps() {
    report(7, "entailment-gaps", || {
        let budget = small_budget();
        let sig = budget.sig().clone();
        let (x, y) = (sig.var("X").unwrap(), sig.var("Y").unwrap());
        let x0 = CoFormula::eq(x, sig.value(x, "0").unwrap());
        let y1 = CoFormula::eq(y, sig.value(y, "1").unwrap());

        let material = PcoFormula::from(x0.clone()).arrow(PcoFormula::from(y1.clone()), &sig);
        let selective = PcoFormula::sel_imp(x0.clone(), PcoFormula::from(y1.clone()));
        let verdict = check_entailment(std::slice::from_ref(&material), &selective, &budget)
            .map_err(|e| e.to_string())?;
        ensure!(
            matches!(verdict, Verdict::Counterexample(_)),
            "material implication must not entail the selective one"
        );

        // The two-row crossing team: X=0,Y=0 and X=1,Y=1, no laws.
        let mut crossing = Multiteam::empty();
        crossing.add(sig.mk_assignment(&[("X", "0"), ("Y", "0")]).unwrap(), 1);
        crossing.add(sig.mk_assignment(&[("X", "1"), ("Y", "1")]).unwrap(), 1);
        let witness =
            CausalMultiteam::new(sig.clone(), FunctionComponent::empty(), crossing).unwrap();
        ensure!(
            witness.eval_pco(&material).unwrap() && !witness.eval_pco(&selective).unwrap(),
            "the crossing team should separate the two implications"
        );
        let seen = counterexamples(std::slice::from_ref(&material), &selective, &budget)
            .map_err(|e| e.to_string())?
            .any(|m| m == witness);
        ensure!(
            seen,
            "the crossing team must appear among the enumerated countermodels"
        );

        let sample = SampleBudget::new(25, 0x7a11);
        let mut pool = FormulaPool::new(&sig, &sample);
        for _ in 0..sample.samples {
            let alpha = pool.co_depth(2);
            let psi = pool.pco_depth(2);
            let premises = [
                PcoFormula::sel_imp(alpha.clone(), psi.clone()),
                PcoFormula::from(alpha.clone()),
            ];
            let verdict = check_entailment(&premises, &psi, &budget).map_err(|e| e.to_string())?;
            ensure!(
                verdict.is_valid(),
                "detachment entailment failed for {alpha:?} and {psi:?}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_8_rule_soundness() {
    report(8, "rule-soundness", || {
        let budget = small_budget();
        for rule in RuleId::ALL {
            let sample = SampleBudget::new(40, 0x40 + rule as u64);
            let report = check_rule_soundness(rule, &sample, &budget).map_err(|e| e.to_string())?;
            ensure!(
                report.cases_checked == 40,
                "{rule}: ran {} cases, expected 40",
                report.cases_checked
            );
            ensure!(
                report.is_sound(),
                "{rule} violated: {:?}",
                report.violations.first().map(|v| &v.case)
            );
        }
        Ok(())
    });
}
