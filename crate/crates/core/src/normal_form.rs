//! Rewriting to a normal form where every counterfactual consequent is a
//! probability atom and every selective-implication consequent is a
//! counterfactual or a probability atom, plus the final stage that moves
//! counterfactuals inside probability arguments.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formula::{CoFormula, PcoFormula, Rational};
use crate::signature::Signature;
use num_traits::{One, Zero};

/// One applied rewrite: the rule that fired and the whole formula afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: &'static str,
    pub formula: PcoFormula,
}

/// True when the formula satisfies both structural conditions of the normal
/// form (counterfactual consequents are probability atoms; implication
/// consequents are such counterfactuals or probability atoms; all
/// counterfactual targets consistent).
pub fn is_normal_form(phi: &PcoFormula) -> bool {
    match phi {
        PcoFormula::Eq(..) | PcoFormula::Neq(..) => true,
        PcoFormula::ProbConst(..) | PcoFormula::ProbProb(..) => true,
        PcoFormula::And(a, b) | PcoFormula::GOr(a, b) => is_normal_form(a) && is_normal_form(b),
        PcoFormula::Cf(spec, body) => spec.is_consistent() && is_prob_atom(body),
        PcoFormula::SelImp(_, body) => match &**body {
            PcoFormula::ProbConst(..) | PcoFormula::ProbProb(..) => true,
            PcoFormula::Cf(spec, inner) => spec.is_consistent() && is_prob_atom(inner),
            _ => false,
        },
    }
}

fn is_prob_atom(phi: &PcoFormula) -> bool {
    matches!(phi, PcoFormula::ProbConst(..) | PcoFormula::ProbProb(..))
}

/// Rewrites to normal form. Every step preserves truth on every model; the
/// loop asserts that each step strictly decreases the termination measure.
pub fn normal_form(sig: &Signature, phi: &PcoFormula) -> Result<PcoFormula> {
    Ok(normal_form_with_trace(sig, phi)?.0)
}

/// Like [`normal_form`], additionally materializing every intermediate
/// formula.
pub fn normal_form_with_trace(
    sig: &Signature,
    phi: &PcoFormula,
) -> Result<(PcoFormula, Vec<RewriteStep>)> {
    phi.check(sig)?;
    let mut current = phi.clone();
    let mut m = measure(&current);
    let mut steps = Vec::new();
    while let Some((next, rule)) = rewrite_once(sig, &current) {
        let m_next = measure(&next);
        assert!(
            m_next < m,
            "rewrite rule {rule} failed to decrease the termination measure"
        );
        steps.push(RewriteStep {
            rule,
            formula: next.clone(),
        });
        current = next;
        m = m_next;
    }
    debug_assert!(is_normal_form(&current));
    Ok((current, steps))
}

/// Termination measure: a polynomial interpretation under which every
/// rewrite rule strictly shrinks the value. Literals weigh 3, probability
/// atoms 2; conjunction and global disjunction add, selective implication
/// doubles its consequent, and a counterfactual squares it. All contexts are
/// strictly monotone, so a local decrease is a global one.
pub fn measure(phi: &PcoFormula) -> BigUint {
    match phi {
        PcoFormula::Eq(..) | PcoFormula::Neq(..) => BigUint::from(3u32),
        PcoFormula::ProbConst(..) | PcoFormula::ProbProb(..) => BigUint::from(2u32),
        PcoFormula::And(a, b) | PcoFormula::GOr(a, b) => measure(a) + measure(b) + BigUint::one(),
        PcoFormula::SelImp(_, body) => BigUint::from(2u32) * measure(body),
        PcoFormula::Cf(_, body) => {
            let m = measure(body);
            &m * &m
        }
    }
}

/// Applies the highest-priority rule at its first match (pre-order), if any.
fn rewrite_once(sig: &Signature, phi: &PcoFormula) -> Option<(PcoFormula, &'static str)> {
    for rule in RULES {
        if let Some(next) = apply_somewhere(sig, phi, rule.apply) {
            return Some((next, rule.name));
        }
    }
    None
}

struct Rule {
    name: &'static str,
    apply: fn(&Signature, &PcoFormula) -> Option<PcoFormula>,
}

const RULES: &[Rule] = &[
    Rule {
        name: "distribute-cf-and",
        apply: distribute_cf_and,
    },
    Rule {
        name: "distribute-cf-or",
        apply: distribute_cf_or,
    },
    Rule {
        name: "distribute-cf-imp",
        apply: distribute_cf_imp,
    },
    Rule {
        name: "merge-cf",
        apply: merge_cf,
    },
    Rule {
        name: "drop-inconsistent-cf",
        apply: drop_inconsistent_cf,
    },
    Rule {
        name: "certainty-cf-literal",
        apply: certainty_cf_literal,
    },
    Rule {
        name: "certainty-imp-literal",
        apply: certainty_imp_literal,
    },
    Rule {
        name: "distribute-imp",
        apply: distribute_imp,
    },
    Rule {
        name: "fuse-imp",
        apply: fuse_imp,
    },
];

/// Tries `rule` at the root, then at each subformula in pre-order.
fn apply_somewhere(
    sig: &Signature,
    phi: &PcoFormula,
    rule: fn(&Signature, &PcoFormula) -> Option<PcoFormula>,
) -> Option<PcoFormula> {
    if let Some(next) = rule(sig, phi) {
        return Some(next);
    }
    match phi {
        PcoFormula::Eq(..)
        | PcoFormula::Neq(..)
        | PcoFormula::ProbConst(..)
        | PcoFormula::ProbProb(..) => None,
        PcoFormula::And(a, b) => apply_somewhere(sig, a, rule)
            .map(|a2| PcoFormula::And(Box::new(a2), b.clone()))
            .or_else(|| {
                apply_somewhere(sig, b, rule).map(|b2| PcoFormula::And(a.clone(), Box::new(b2)))
            }),
        PcoFormula::GOr(a, b) => apply_somewhere(sig, a, rule)
            .map(|a2| PcoFormula::GOr(Box::new(a2), b.clone()))
            .or_else(|| {
                apply_somewhere(sig, b, rule).map(|b2| PcoFormula::GOr(a.clone(), Box::new(b2)))
            }),
        PcoFormula::SelImp(alpha, body) => apply_somewhere(sig, body, rule)
            .map(|b2| PcoFormula::SelImp(alpha.clone(), Box::new(b2))),
        PcoFormula::Cf(spec, body) => {
            apply_somewhere(sig, body, rule).map(|b2| PcoFormula::Cf(spec.clone(), Box::new(b2)))
        }
    }
}

/// spec ▷ (ψ ∧ χ) becomes (spec ▷ ψ) ∧ (spec ▷ χ).
fn distribute_cf_and(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::Cf(spec, body) = phi {
        if let PcoFormula::And(a, b) = &**body {
            return Some(
                PcoFormula::cf(spec.clone(), (**a).clone())
                    .and(PcoFormula::cf(spec.clone(), (**b).clone())),
            );
        }
    }
    None
}

/// spec ▷ (ψ ⊔ χ) becomes (spec ▷ ψ) ⊔ (spec ▷ χ).
fn distribute_cf_or(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::Cf(spec, body) = phi {
        if let PcoFormula::GOr(a, b) = &**body {
            return Some(
                PcoFormula::cf(spec.clone(), (**a).clone())
                    .global_or(PcoFormula::cf(spec.clone(), (**b).clone())),
            );
        }
    }
    None
}

/// spec ▷ (α ⊃ χ) becomes (spec ▷ α) ⊃ (spec ▷ χ); the new antecedent is a
/// CO counterfactual.
fn distribute_cf_imp(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::Cf(spec, body) = phi {
        if let PcoFormula::SelImp(alpha, chi) = &**body {
            return Some(PcoFormula::sel_imp(
                CoFormula::cf(spec.clone(), alpha.clone()),
                PcoFormula::cf(spec.clone(), (**chi).clone()),
            ));
        }
    }
    None
}

/// spec₁ ▷ (spec₂ ▷ χ) becomes merged ▷ χ, where pairs re-targeted by the
/// inner intervention are dropped from the outer one. Requires the outer
/// target to be consistent.
fn merge_cf(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::Cf(outer, body) = phi {
        if !outer.is_consistent() {
            return None;
        }
        if let PcoFormula::Cf(inner, chi) = &**body {
            return Some(PcoFormula::cf(outer.override_with(inner), (**chi).clone()));
        }
    }
    None
}

/// A counterfactual with an inconsistent target is vacuously true; it
/// becomes the always-true atom Pr(⊤) ≥ 0.
fn drop_inconsistent_cf(sig: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::Cf(spec, _) = phi {
        if !spec.is_consistent() {
            return Some(PcoFormula::ProbConst(
                CoFormula::top(sig),
                crate::formula::Cmp::Ge,
                Rational::zero(),
            ));
        }
    }
    None
}

/// spec ▷ literal becomes spec ▷ Pr(literal) ≥ 1.
fn certainty_cf_literal(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::Cf(spec, body) = phi {
        if let Some(lit) = literal_co(body) {
            return Some(PcoFormula::cf(
                spec.clone(),
                PcoFormula::ProbConst(lit, crate::formula::Cmp::Ge, Rational::one()),
            ));
        }
    }
    None
}

/// α ⊃ literal becomes α ⊃ Pr(literal) ≥ 1.
fn certainty_imp_literal(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::SelImp(alpha, body) = phi {
        if let Some(lit) = literal_co(body) {
            return Some(PcoFormula::sel_imp(
                alpha.clone(),
                PcoFormula::ProbConst(lit, crate::formula::Cmp::Ge, Rational::one()),
            ));
        }
    }
    None
}

fn literal_co(phi: &PcoFormula) -> Option<CoFormula> {
    match phi {
        PcoFormula::Eq(v, x) => Some(CoFormula::Eq(*v, *x)),
        PcoFormula::Neq(v, x) => Some(CoFormula::Neq(*v, *x)),
        _ => None,
    }
}

/// α ⊃ (ψ ∧ χ) becomes (α ⊃ ψ) ∧ (α ⊃ χ); likewise for ⊔.
fn distribute_imp(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::SelImp(alpha, body) = phi {
        match &**body {
            PcoFormula::And(a, b) => {
                return Some(
                    PcoFormula::sel_imp(alpha.clone(), (**a).clone())
                        .and(PcoFormula::sel_imp(alpha.clone(), (**b).clone())),
                )
            }
            PcoFormula::GOr(a, b) => {
                return Some(
                    PcoFormula::sel_imp(alpha.clone(), (**a).clone())
                        .global_or(PcoFormula::sel_imp(alpha.clone(), (**b).clone())),
                )
            }
            _ => {}
        }
    }
    None
}

/// α ⊃ (β ⊃ χ) becomes (α ∧ β) ⊃ χ.
fn fuse_imp(_: &Signature, phi: &PcoFormula) -> Option<PcoFormula> {
    if let PcoFormula::SelImp(alpha, body) = phi {
        if let PcoFormula::SelImp(beta, chi) = &**body {
            return Some(PcoFormula::sel_imp(
                alpha.clone().and(beta.clone()),
                (**chi).clone(),
            ));
        }
    }
    None
}

/// Moves the remaining counterfactuals inside probability arguments:
/// spec ▷ Pr(α) ▷? ε becomes Pr(spec ▷ α) ▷? ε, and the two-probability
/// version rewrites both arguments. Requires normal form.
pub fn push_prob_inward(phi: &PcoFormula) -> Result<PcoFormula> {
    if !is_normal_form(phi) {
        return Err(Error::NotInNormalForm);
    }
    Ok(push_rec(phi))
}

fn push_rec(phi: &PcoFormula) -> PcoFormula {
    match phi {
        PcoFormula::Eq(..)
        | PcoFormula::Neq(..)
        | PcoFormula::ProbConst(..)
        | PcoFormula::ProbProb(..) => phi.clone(),
        PcoFormula::And(a, b) => push_rec(a).and(push_rec(b)),
        PcoFormula::GOr(a, b) => push_rec(a).global_or(push_rec(b)),
        PcoFormula::SelImp(alpha, body) => PcoFormula::sel_imp(alpha.clone(), push_rec(body)),
        PcoFormula::Cf(spec, body) => match &**body {
            PcoFormula::ProbConst(alpha, cmp, e) => {
                PcoFormula::ProbConst(CoFormula::cf(spec.clone(), alpha.clone()), *cmp, e.clone())
            }
            PcoFormula::ProbProb(alpha, cmp, beta) => PcoFormula::ProbProb(
                CoFormula::cf(spec.clone(), alpha.clone()),
                *cmp,
                CoFormula::cf(spec.clone(), beta.clone()),
            ),
            _ => unreachable!("normal form restricts counterfactual bodies to probability atoms"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{rat, Cmp, InterventionSpec};
    use crate::signature::Val;
    use crate::testutil::product_example;

    fn fixtures() -> (
        Signature,
        InterventionSpec,
        CoFormula,
        PcoFormula,
        PcoFormula,
    ) {
        let sig = Signature::binary(&["A", "B"]).unwrap();
        let a = sig.var("A").unwrap();
        let b = sig.var("B").unwrap();
        let spec = InterventionSpec::new(vec![(a, Val(1))]);
        let alpha = CoFormula::eq(b, Val(0));
        let p = PcoFormula::pr_ge(CoFormula::eq(b, Val(1)), rat(1, 2)).unwrap();
        let q = PcoFormula::pr_gt(CoFormula::eq(a, Val(0)), rat(1, 4)).unwrap();
        (sig, spec, alpha, p, q)
    }

    #[test]
    fn counterfactual_distributes_over_conjunction() {
        let (sig, spec, _, p, q) = fixtures();
        let phi = PcoFormula::cf(spec.clone(), p.clone().and(q.clone()));
        let nf = normal_form(&sig, &phi).unwrap();
        assert_eq!(
            nf,
            PcoFormula::cf(spec.clone(), p).and(PcoFormula::cf(spec, q))
        );
        assert!(is_normal_form(&nf));
    }

    #[test]
    fn implications_fuse_and_distribute() {
        let (sig, _, alpha, p, q) = fixtures();
        let beta = CoFormula::neq(sig.var("A").unwrap(), Val(0));
        let nested =
            PcoFormula::sel_imp(alpha.clone(), PcoFormula::sel_imp(beta.clone(), p.clone()));
        assert_eq!(
            normal_form(&sig, &nested).unwrap(),
            PcoFormula::sel_imp(alpha.clone().and(beta), p.clone())
        );

        let conj = PcoFormula::sel_imp(alpha.clone(), p.clone().and(q.clone()));
        assert_eq!(
            normal_form(&sig, &conj).unwrap(),
            PcoFormula::sel_imp(alpha.clone(), p).and(PcoFormula::sel_imp(alpha, q))
        );
    }

    #[test]
    fn nested_counterfactuals_merge_with_override() {
        let (sig, _, _, p, _) = fixtures();
        let a = sig.var("A").unwrap();
        let b = sig.var("B").unwrap();
        let outer = InterventionSpec::new(vec![(a, Val(0)), (b, Val(0))]);
        let inner = InterventionSpec::new(vec![(a, Val(1))]);
        let phi = PcoFormula::cf(outer, PcoFormula::cf(inner, p.clone()));
        let nf = normal_form(&sig, &phi).unwrap();
        match nf {
            PcoFormula::Cf(spec, body) => {
                assert_eq!(spec.pairs(), &[(b, Val(0)), (a, Val(1))]);
                assert_eq!(*body, p);
            }
            other => panic!("expected merged counterfactual, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_targets_become_trivial_atoms() {
        let (sig, _, _, p, _) = fixtures();
        let a = sig.var("A").unwrap();
        let clash = InterventionSpec::new(vec![(a, Val(0)), (a, Val(1))]);
        let phi = PcoFormula::cf(clash, p);
        let nf = normal_form(&sig, &phi).unwrap();
        assert_eq!(
            nf,
            PcoFormula::ProbConst(CoFormula::top(&sig), Cmp::Ge, rat(0, 1))
        );
    }

    #[test]
    fn literal_consequents_become_certainty_atoms() {
        let (sig, spec, alpha, _, _) = fixtures();
        let b = sig.var("B").unwrap();
        let lit = PcoFormula::eq(b, Val(1));

        let cf = PcoFormula::cf(spec.clone(), lit.clone());
        assert_eq!(
            normal_form(&sig, &cf).unwrap(),
            PcoFormula::cf(
                spec,
                PcoFormula::ProbConst(CoFormula::eq(b, Val(1)), Cmp::Ge, rat(1, 1))
            )
        );

        let imp = PcoFormula::sel_imp(alpha.clone(), lit);
        assert_eq!(
            normal_form(&sig, &imp).unwrap(),
            PcoFormula::sel_imp(
                alpha,
                PcoFormula::ProbConst(CoFormula::eq(b, Val(1)), Cmp::Ge, rat(1, 1))
            )
        );
    }

    #[test]
    fn normal_form_inputs_are_fixed_points() {
        let (sig, spec, alpha, p, q) = fixtures();
        let phi = PcoFormula::sel_imp(alpha, PcoFormula::cf(spec, p))
            .and(q)
            .global_or(PcoFormula::eq(sig.var("A").unwrap(), Val(0)));
        assert!(is_normal_form(&phi));
        let (nf, steps) = normal_form_with_trace(&sig, &phi).unwrap();
        assert_eq!(nf, phi);
        assert!(steps.is_empty());
    }

    #[test]
    fn rewriting_preserves_truth_on_the_worked_example() {
        let m = product_example();
        let sig = m.sig();
        let y = sig.var("Y").unwrap();
        let z = sig.var("Z").unwrap();
        let spec = InterventionSpec::new(vec![(y, sig.value(y, "1").unwrap())]);
        let z2 = CoFormula::eq(z, sig.value(z, "2").unwrap());

        let candidates = vec![
            PcoFormula::cf(
                spec.clone(),
                PcoFormula::pr_ge(z2.clone(), rat(1, 4))
                    .unwrap()
                    .and(PcoFormula::eq(y, sig.value(y, "1").unwrap())),
            ),
            PcoFormula::cf(
                spec.clone(),
                PcoFormula::sel_imp(z2.clone(), PcoFormula::neq(y, sig.value(y, "2").unwrap())),
            ),
            PcoFormula::cf(
                spec.clone(),
                PcoFormula::cf(
                    InterventionSpec::new(vec![(y, sig.value(y, "2").unwrap())]),
                    PcoFormula::pr_gt(z2.clone(), rat(0, 1)).unwrap(),
                ),
            ),
            PcoFormula::sel_imp(
                z2.clone(),
                PcoFormula::sel_imp(
                    CoFormula::eq(y, sig.value(y, "2").unwrap()),
                    PcoFormula::pr_ge(z2.clone(), rat(1, 1)).unwrap(),
                ),
            ),
        ];
        for phi in candidates {
            let nf = normal_form(sig, &phi).unwrap();
            assert!(is_normal_form(&nf));
            assert_eq!(
                m.eval_pco(&phi).unwrap(),
                m.eval_pco(&nf).unwrap(),
                "normal form changed truth of {phi:?}"
            );
        }
    }

    #[test]
    fn probabilities_absorb_counterfactuals() {
        let (sig, spec, alpha, _, _) = fixtures();
        let b = sig.var("B").unwrap();
        let beta = CoFormula::eq(b, Val(1));

        let atom = PcoFormula::cf(
            spec.clone(),
            PcoFormula::pr_ge(beta.clone(), rat(1, 2)).unwrap(),
        );
        assert_eq!(
            push_prob_inward(&atom).unwrap(),
            PcoFormula::ProbConst(
                CoFormula::cf(spec.clone(), beta.clone()),
                Cmp::Ge,
                rat(1, 2)
            )
        );

        let cmp = PcoFormula::cf(
            spec.clone(),
            PcoFormula::pr_cmp_pr(beta.clone(), Cmp::Gt, alpha.clone()),
        );
        assert_eq!(
            push_prob_inward(&cmp).unwrap(),
            PcoFormula::ProbProb(
                CoFormula::cf(spec.clone(), beta.clone()),
                Cmp::Gt,
                CoFormula::cf(spec.clone(), alpha.clone())
            )
        );

        // Not in normal form: counterfactual over a conjunction.
        let bad = PcoFormula::cf(
            spec,
            PcoFormula::pr_ge(beta, rat(1, 2))
                .unwrap()
                .and(PcoFormula::pr_ge(alpha, rat(1, 2)).unwrap()),
        );
        assert_eq!(push_prob_inward(&bad).unwrap_err(), Error::NotInNormalForm);
    }

    #[test]
    fn push_prob_preserves_truth() {
        let m = product_example();
        let sig = m.sig();
        let y = sig.var("Y").unwrap();
        let z = sig.var("Z").unwrap();
        let spec = InterventionSpec::new(vec![(y, sig.value(y, "1").unwrap())]);
        let z2 = CoFormula::eq(z, sig.value(z, "2").unwrap());

        let phi = PcoFormula::cf(spec, PcoFormula::pr_ge(z2, rat(1, 4)).unwrap());
        let pushed = push_prob_inward(&phi).unwrap();
        assert_eq!(m.eval_pco(&phi).unwrap(), m.eval_pco(&pushed).unwrap());
    }
}
