//! Soundness checks for the five finitary inference rules: detachment as
//! truth preservation per model, the others as validity preservation over
//! the enumeration budget.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{CoFormula, PcoFormula};
use crate::model::CausalMultiteam;
use crate::normal_form::normal_form;
use crate::oracle::gen::{FormulaPool, SampleBudget};
use crate::oracle::{check_validity, enumerate_models, EnumerationBudget, Verdict};
use crate::signature::Signature;

/// The five finitary rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// From psi -> chi and psi, infer chi.
    ModusPonens,
    /// Replace a subformula by a provably equivalent one.
    Replacement,
    /// From psi -> chi, infer (alpha => psi) -> (alpha => chi).
    MonotoneImp,
    /// From alpha -> psi, infer alpha => psi.
    ArrowToImp,
    /// From psi -> chi, infer (spec |> psi) -> (spec |> chi).
    MonotoneCf,
}

impl RuleId {
    pub const ALL: [RuleId; 5] = [
        RuleId::ModusPonens,
        RuleId::Replacement,
        RuleId::MonotoneImp,
        RuleId::ArrowToImp,
        RuleId::MonotoneCf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::ModusPonens => "MP",
            RuleId::Replacement => "Rep",
            RuleId::MonotoneImp => "MonImp",
            RuleId::ArrowToImp => "ArrowToImp",
            RuleId::MonotoneCf => "MonCf",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        for id in RuleId::ALL {
            if s == id.as_str() {
                return Ok(id);
            }
        }
        match s {
            "Mon⊃" => Ok(RuleId::MonotoneImp),
            "→to⊃" => Ok(RuleId::ArrowToImp),
            "Mon▷" => Ok(RuleId::MonotoneCf),
            _ => Err(Error::UnknownRule(s.to_string())),
        }
    }
}

/// One observed failure, with the formulas involved and, when the check is
/// model-by-model, the witnessing model.
#[derive(Clone, Debug)]
pub struct RuleViolation {
    pub case: String,
    pub countermodel: Option<CausalMultiteam>,
}

/// Outcome of a rule check: how many cases ran and which failed.
#[derive(Clone, Debug)]
pub struct RuleReport {
    pub rule: RuleId,
    pub cases_checked: usize,
    pub violations: Vec<RuleViolation>,
}

impl RuleReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the rule's soundness check over sampled cases.
pub fn check_rule_soundness(
    rule: RuleId,
    sample: &SampleBudget,
    budget: &EnumerationBudget,
) -> Result<RuleReport> {
    let sig = budget.sig().clone();
    let mut pool = FormulaPool::new(&sig, sample);
    let mut violations = Vec::new();
    let mut cases = 0usize;

    match rule {
        RuleId::ModusPonens => {
            for _ in 0..sample.samples {
                let psi = pool.pco();
                let chi = pool.pco();
                let arrow = psi.arrow(chi.clone(), &sig);
                cases += 1;
                for m in enumerate_models(budget)? {
                    if m.eval_pco_unchecked(&arrow)
                        && m.eval_pco_unchecked(&psi)
                        && !m.eval_pco_unchecked(&chi)
                    {
                        violations.push(RuleViolation {
                            case: format!(
                                "detachment failed for premise {psi:?} with conclusion {chi:?}"
                            ),
                            countermodel: Some(m),
                        });
                        break;
                    }
                }
            }
        }
        RuleId::Replacement => {
            for i in 0..sample.samples {
                let phi = pool.pco();
                let psi = equivalent_variant(&sig, &phi, i)?;
                let premise = phi.iff(psi.clone(), &sig);
                cases += 1;
                if let Some(v) = refute(&premise, budget)? {
                    violations.push(RuleViolation {
                        case: format!("premise equivalence failed: {phi:?} vs {psi:?}"),
                        countermodel: Some(v),
                    });
                    continue;
                }
                let lhs = wrap_in_context(&mut pool, phi.clone());
                let rhs = rebuild_context(&lhs.1, psi);
                let conclusion = lhs.0.iff(rhs, &sig);
                if let Some(v) = refute(&conclusion, budget)? {
                    violations.push(RuleViolation {
                        case: format!("replacement broke equivalence in context: {phi:?}"),
                        countermodel: Some(v),
                    });
                }
            }
        }
        RuleId::MonotoneImp => {
            for i in 0..sample.samples {
                let (psi, chi) = valid_implication_pair(&sig, &mut pool, i)?;
                cases += 1;
                if let Some(report) = premise_then_conclusion(
                    &sig,
                    budget,
                    &psi,
                    &chi,
                    |alpha, side| PcoFormula::sel_imp(alpha.clone(), side),
                    pool.co(),
                )? {
                    violations.push(report);
                }
            }
        }
        RuleId::ArrowToImp => {
            for i in 0..sample.samples {
                let (alpha, psi) = valid_co_premise_pair(&sig, &mut pool, i);
                cases += 1;
                let premise = PcoFormula::from(alpha.clone()).arrow(psi.clone(), &sig);
                if let Some(v) = refute(&premise, budget)? {
                    violations.push(RuleViolation {
                        case: format!("sampled premise not valid: {premise:?}"),
                        countermodel: Some(v),
                    });
                    continue;
                }
                let conclusion = PcoFormula::sel_imp(alpha, psi);
                if let Some(v) = refute(&conclusion, budget)? {
                    violations.push(RuleViolation {
                        case: format!("selective form not valid: {conclusion:?}"),
                        countermodel: Some(v),
                    });
                }
            }
        }
        RuleId::MonotoneCf => {
            for i in 0..sample.samples {
                let (psi, chi) = valid_implication_pair(&sig, &mut pool, i)?;
                cases += 1;
                let spec = pool.spec(2);
                if let Some(report) = premise_then_conclusion(
                    &sig,
                    budget,
                    &psi,
                    &chi,
                    |s, side| PcoFormula::cf(s.clone(), side),
                    spec,
                )? {
                    violations.push(report);
                }
            }
        }
    }

    Ok(RuleReport {
        rule,
        cases_checked: cases,
        violations,
    })
}

fn refute(phi: &PcoFormula, budget: &EnumerationBudget) -> Result<Option<CausalMultiteam>> {
    match check_validity(phi, budget)? {
        Verdict::ValidOnBudget { .. } => Ok(None),
        Verdict::Counterexample(m) => Ok(Some(*m)),
    }
}

/// Checks the premise psi -> chi for validity, then the wrapped conclusion
/// wrap(psi) -> wrap(chi).
fn premise_then_conclusion<W>(
    sig: &Signature,
    budget: &EnumerationBudget,
    psi: &PcoFormula,
    chi: &PcoFormula,
    wrap: impl Fn(&W, PcoFormula) -> PcoFormula,
    wrapper: W,
) -> Result<Option<RuleViolation>>
where
    W: fmt::Debug,
{
    let premise = psi.arrow(chi.clone(), sig);
    if let Some(v) = refute(&premise, budget)? {
        return Ok(Some(RuleViolation {
            case: format!("sampled premise not valid: {premise:?}"),
            countermodel: Some(v),
        }));
    }
    let conclusion = wrap(&wrapper, psi.clone()).arrow(wrap(&wrapper, chi.clone()), sig);
    if let Some(v) = refute(&conclusion, budget)? {
        return Ok(Some(RuleViolation {
            case: format!("monotonicity failed under {wrapper:?} for {psi:?} -> {chi:?}"),
            countermodel: Some(v),
        }));
    }
    Ok(None)
}

/// A formula provably equivalent to phi, from rotation through known
/// truth-preserving transformations.
fn equivalent_variant(sig: &Signature, phi: &PcoFormula, i: usize) -> Result<PcoFormula> {
    Ok(match i % 3 {
        0 => normal_form(sig, phi)?,
        1 => phi.clone().and(phi.clone()),
        _ => phi.neg_c(sig).neg_c(sig),
    })
}

/// Wraps phi in a random one-hole context; returns the filled context and a
/// rebuilding recipe for a different hole filler.
fn wrap_in_context(pool: &mut FormulaPool, phi: PcoFormula) -> (PcoFormula, Context) {
    let choice = pool.rational();
    let alpha = pool.co_depth(1);
    let spec = pool.spec(2);
    let rho = pool.pco_depth(1);
    let kind = if choice < crate::formula::rat(1, 4) {
        ContextKind::Conj(rho.clone())
    } else if choice < crate::formula::rat(1, 2) {
        ContextKind::Disj(rho.clone())
    } else if choice < crate::formula::rat(3, 4) {
        ContextKind::Imp(alpha.clone())
    } else {
        ContextKind::Cf(spec.clone())
    };
    let filled = fill(&kind, phi);
    (filled, Context { kind })
}

struct Context {
    kind: ContextKind,
}

enum ContextKind {
    Conj(PcoFormula),
    Disj(PcoFormula),
    Imp(CoFormula),
    Cf(crate::formula::InterventionSpec),
}

fn fill(kind: &ContextKind, phi: PcoFormula) -> PcoFormula {
    match kind {
        ContextKind::Conj(rho) => phi.and(rho.clone()),
        ContextKind::Disj(rho) => rho.clone().global_or(phi),
        ContextKind::Imp(alpha) => PcoFormula::sel_imp(alpha.clone(), phi),
        ContextKind::Cf(spec) => PcoFormula::cf(spec.clone(), phi),
    }
}

fn rebuild_context(ctx: &Context, phi: PcoFormula) -> PcoFormula {
    fill(&ctx.kind, phi)
}

/// A pair (psi, chi) with psi -> chi valid by construction.
fn valid_implication_pair(
    sig: &Signature,
    pool: &mut FormulaPool,
    i: usize,
) -> Result<(PcoFormula, PcoFormula)> {
    Ok(match i % 5 {
        0 => {
            let psi = pool.pco_depth(2);
            (psi.clone(), psi)
        }
        1 => {
            let a = pool.pco_depth(2);
            let b = pool.pco_depth(2);
            (a.clone().and(b), a)
        }
        2 => {
            let a = pool.pco_depth(2);
            let b = pool.pco_depth(2);
            (a.clone(), a.global_or(b))
        }
        3 => {
            let psi = pool.pco_depth(2);
            (PcoFormula::bot(sig), psi)
        }
        _ => {
            let psi = pool.pco_depth(2);
            (psi.clone(), normal_form(sig, &psi)?)
        }
    })
}

/// A pair (alpha, psi) with alpha -> psi valid by construction, alpha a
/// row-level formula.
fn valid_co_premise_pair(
    sig: &Signature,
    pool: &mut FormulaPool,
    i: usize,
) -> (CoFormula, PcoFormula) {
    match i % 4 {
        0 => {
            let alpha = pool.co_depth(2);
            (alpha.clone(), PcoFormula::from(alpha))
        }
        1 => {
            let alpha = pool.co_depth(2);
            let rho = pool.pco_depth(2);
            (alpha.clone(), PcoFormula::from(alpha).global_or(rho))
        }
        2 => {
            let alpha = pool.co_depth(2);
            (alpha, PcoFormula::top(sig))
        }
        _ => {
            let alpha = pool.co_depth(2);
            // alpha -> Pr(alpha) >= 1 holds: team truth is row-uniform.
            let certain = PcoFormula::pr_ge(alpha.clone(), crate::formula::rat(1, 1))
                .expect("unit threshold");
            (alpha, certain)
        }
    }
}
