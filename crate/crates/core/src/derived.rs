//! Derived characterization formulas: causal influence, direct cause,
//! endogeneity, and full law descriptions, built as plain CO/PCO formulas.
//!
//! These expand to large disjunctions/conjunctions over the signature's
//! value space, so every builder enforces a node budget and fails with
//! `FormulaTooLarge` instead of materializing an oversized tree.

use crate::error::{Error, Result};
use crate::formula::{CoFormula, InterventionSpec, PcoFormula};
use crate::laws::FunctionComponent;
use crate::signature::{Signature, Val, Var};

/// Default ceiling on the node count of a built formula.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// Node cost of one paired-counterfactual disjunct
/// `(spec ▷ Y=y) ∧ (spec' ▷ Y=y')`.
const DISJUNCT_NODES: u128 = 5;
/// Extra nodes introduced by one tensor disjunction (two negations plus the
/// inner conjunction and the outer negation).
const OR_OVERHEAD: u128 = 10;
/// Node count of the canonical contradiction.
const BOT_NODES: u128 = 2;

/// "x causally affects y": some intervention that pins a context and moves x
/// also moves y. The context ranges over all subsets of the remaining
/// variables.
pub fn affects_formula(sig: &Signature, x: Var, y: Var) -> Result<CoFormula> {
    affects_formula_budgeted(sig, x, y, DEFAULT_NODE_BUDGET)
}

pub fn affects_formula_budgeted(sig: &Signature, x: Var, y: Var, budget: u64) -> Result<CoFormula> {
    check_pair_distinct(sig, x, y)?;
    let rest = vars_except(sig, &[x, y]);
    // Sum over subsets of products of range sizes = product of (1 + |Ran|).
    let mut context_tuples: u128 = 1;
    for &v in &rest {
        context_tuples = context_tuples.saturating_mul(1 + sig.range_size(v) as u128);
    }
    let disjuncts = context_tuples
        .saturating_mul(ordered_pairs(sig, x))
        .saturating_mul(ordered_pairs(sig, y));
    check_budget(or_fold_cost(disjuncts, DISJUNCT_NODES), budget)?;

    let mut parts = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let subset: Vec<Var> = rest
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        for tuple in value_tuples(sig, &subset) {
            let context: Vec<(Var, Val)> = subset.iter().copied().zip(tuple).collect();
            push_moved_pairs(sig, &mut parts, &context, x, y);
        }
    }
    Ok(fold_or_co(sig, parts))
}

/// "x is a direct cause of y": moving x moves y while the entire rest of the
/// domain is pinned.
pub fn direct_cause_formula(sig: &Signature, x: Var, y: Var) -> Result<CoFormula> {
    direct_cause_formula_budgeted(sig, x, y, DEFAULT_NODE_BUDGET)
}

pub fn direct_cause_formula_budgeted(
    sig: &Signature,
    x: Var,
    y: Var,
    budget: u64,
) -> Result<CoFormula> {
    check_pair_distinct(sig, x, y)?;
    let rest = vars_except(sig, &[x, y]);
    let mut context_tuples: u128 = 1;
    for &v in &rest {
        context_tuples = context_tuples.saturating_mul(sig.range_size(v) as u128);
    }
    let disjuncts = context_tuples
        .saturating_mul(ordered_pairs(sig, x))
        .saturating_mul(ordered_pairs(sig, y));
    check_budget(or_fold_cost(disjuncts, DISJUNCT_NODES), budget)?;

    let mut parts = Vec::new();
    for tuple in value_tuples(sig, &rest) {
        let context: Vec<(Var, Val)> = rest.iter().copied().zip(tuple).collect();
        push_moved_pairs(sig, &mut parts, &context, x, y);
    }
    Ok(fold_or_co(sig, parts))
}

/// "y is endogenous": some other variable is a direct cause of y. A global
/// disjunction of direct-cause formulas.
pub fn endogenous_formula(sig: &Signature, y: Var) -> Result<PcoFormula> {
    endogenous_formula_budgeted(sig, y, DEFAULT_NODE_BUDGET)
}

pub fn endogenous_formula_budgeted(sig: &Signature, y: Var, budget: u64) -> Result<PcoFormula> {
    sig.check_var(y)?;
    let candidates = vars_except(sig, &[y]);
    let mut total: u128 = 0;
    for &x in &candidates {
        let mut context_tuples: u128 = 1;
        for &v in &vars_except(sig, &[x, y]) {
            context_tuples = context_tuples.saturating_mul(sig.range_size(v) as u128);
        }
        let disjuncts = context_tuples
            .saturating_mul(ordered_pairs(sig, x))
            .saturating_mul(ordered_pairs(sig, y));
        total = total.saturating_add(or_fold_cost(disjuncts, DISJUNCT_NODES));
    }
    total = total.saturating_add(candidates.len().saturating_sub(1) as u128);
    check_budget(total.max(BOT_NODES), budget)?;

    let mut parts = Vec::new();
    for &x in &candidates {
        parts.push(PcoFormula::from(direct_cause_formula_budgeted(
            sig, x, y, budget,
        )?));
    }
    Ok(fold_gor(sig, parts))
}

/// Characterizes "the model's laws are exactly `laws`": endogenous variables
/// track their lookup tables under every pinning of the rest, exogenous
/// variables keep their value under every such pinning.
pub fn laws_formula(sig: &Signature, laws: &FunctionComponent) -> Result<PcoFormula> {
    laws_formula_budgeted(sig, laws, DEFAULT_NODE_BUDGET)
}

pub fn laws_formula_budgeted(
    sig: &Signature,
    laws: &FunctionComponent,
    budget: u64,
) -> Result<PcoFormula> {
    laws.check_shape(sig)?;
    let mut total: u128 = 0;
    let mut conjuncts: u128 = 0;
    for v in sig.vars() {
        let contexts = sig.context_count(v) as u128;
        if laws.is_endogenous(v) {
            total = total.saturating_add(contexts.saturating_mul(2));
            conjuncts = conjuncts.saturating_add(contexts);
        } else {
            let k = contexts.saturating_mul(sig.range_size(v) as u128);
            total = total.saturating_add(k.saturating_mul(4));
            conjuncts = conjuncts.saturating_add(k);
        }
    }
    total = total.saturating_add(conjuncts.saturating_sub(1));
    check_budget(total, budget)?;

    let mut parts: Vec<PcoFormula> = Vec::new();
    let endo: Vec<Var> = sig.vars().filter(|&v| laws.is_endogenous(v)).collect();
    let exo: Vec<Var> = sig.vars().filter(|&v| !laws.is_endogenous(v)).collect();
    for &v in &endo {
        let others = sig.others(v);
        for idx in 0..sig.context_count(v) {
            let tuple = sig.context_values(v, idx);
            let spec = InterventionSpec::new(others.iter().copied().zip(tuple).collect());
            let out = laws.law(v).expect("endogenous").output(idx);
            parts.push(PcoFormula::from(CoFormula::cf(spec, CoFormula::eq(v, out))));
        }
    }
    for &v in &exo {
        let others = sig.others(v);
        for idx in 0..sig.context_count(v) {
            let tuple = sig.context_values(v, idx);
            for val in sig.values(v) {
                let spec = InterventionSpec::new(
                    others.iter().copied().zip(tuple.iter().copied()).collect(),
                );
                parts.push(PcoFormula::sel_imp(
                    CoFormula::eq(v, val),
                    PcoFormula::from(CoFormula::cf(spec, CoFormula::eq(v, val))),
                ));
            }
        }
    }
    let first = parts
        .drain(..1)
        .next()
        .expect("signatures are nonempty, so there is at least one conjunct");
    Ok(parts.into_iter().fold(first, PcoFormula::and))
}

/// `vars = vals` as an equality conjunction; the empty tuple yields the
/// canonical tautology.
pub fn tuple_eq_co(sig: &Signature, pairs: &[(Var, Val)]) -> CoFormula {
    let mut it = pairs.iter().map(|&(v, x)| CoFormula::eq(v, x));
    match it.next() {
        None => CoFormula::top(sig),
        Some(first) => it.fold(first, CoFormula::and),
    }
}

/// `vars != vals` as a tensor disjunction of inequalities; the empty tuple
/// yields the canonical contradiction.
pub fn tuple_neq_co(sig: &Signature, pairs: &[(Var, Val)]) -> CoFormula {
    let parts: Vec<CoFormula> = pairs.iter().map(|&(v, x)| CoFormula::neq(v, x)).collect();
    fold_or_co(sig, parts)
}

/// `vars != vals` as a global disjunction of inequalities.
pub fn tuple_neq_pco(sig: &Signature, pairs: &[(Var, Val)]) -> PcoFormula {
    let parts: Vec<PcoFormula> = pairs.iter().map(|&(v, x)| PcoFormula::neq(v, x)).collect();
    fold_gor(sig, parts)
}

/// All value tuples over `vars` in ascending mixed-radix order; the empty
/// variable list has exactly the empty tuple.
pub(crate) fn value_tuples(sig: &Signature, vars: &[Var]) -> Vec<Vec<Val>> {
    let mut out = vec![Vec::new()];
    for &v in vars {
        let mut next = Vec::with_capacity(out.len() * sig.range_size(v));
        for tuple in &out {
            for val in sig.values(v) {
                let mut t = tuple.clone();
                t.push(val);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn check_pair_distinct(sig: &Signature, x: Var, y: Var) -> Result<()> {
    sig.check_var(x)?;
    sig.check_var(y)?;
    if x == y {
        return Err(Error::SameVariable(sig.var_name(x).to_string()));
    }
    Ok(())
}

fn vars_except(sig: &Signature, excluded: &[Var]) -> Vec<Var> {
    sig.vars().filter(|v| !excluded.contains(v)).collect()
}

/// Number of ordered pairs of distinct values of `v`.
fn ordered_pairs(sig: &Signature, v: Var) -> u128 {
    let r = sig.range_size(v) as u128;
    r * (r - 1)
}

fn or_fold_cost(disjuncts: u128, disjunct_nodes: u128) -> u128 {
    if disjuncts == 0 {
        BOT_NODES
    } else {
        disjuncts.saturating_mul(disjunct_nodes) + OR_OVERHEAD.saturating_mul(disjuncts - 1)
    }
}

fn check_budget(estimate: u128, budget: u64) -> Result<()> {
    if estimate > budget as u128 {
        return Err(Error::FormulaTooLarge {
            estimate: estimate.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    Ok(())
}

/// Both ordered-pair disjuncts for a pinned context: x moved from `xv` to
/// `xv'` flips y from `yv` to `yv'`.
fn push_moved_pairs(
    sig: &Signature,
    parts: &mut Vec<CoFormula>,
    context: &[(Var, Val)],
    x: Var,
    y: Var,
) {
    for xv in sig.values(x) {
        for xv2 in sig.values(x) {
            if xv == xv2 {
                continue;
            }
            for yv in sig.values(y) {
                for yv2 in sig.values(y) {
                    if yv == yv2 {
                        continue;
                    }
                    let mut first = context.to_vec();
                    first.push((x, xv));
                    let mut second = context.to_vec();
                    second.push((x, xv2));
                    parts.push(
                        CoFormula::cf(InterventionSpec::new(first), CoFormula::eq(y, yv)).and(
                            CoFormula::cf(InterventionSpec::new(second), CoFormula::eq(y, yv2)),
                        ),
                    );
                }
            }
        }
    }
}

fn fold_or_co(sig: &Signature, parts: Vec<CoFormula>) -> CoFormula {
    let mut it = parts.into_iter();
    match it.next() {
        None => CoFormula::bot(sig),
        Some(first) => it.fold(first, |acc, next| acc.or(next, sig)),
    }
}

fn fold_gor(sig: &Signature, parts: Vec<PcoFormula>) -> PcoFormula {
    let mut it = parts.into_iter();
    match it.next() {
        None => PcoFormula::bot(sig),
        Some(first) => it.fold(first, PcoFormula::global_or),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::LawTable;
    use crate::model::CausalMultiteam;
    use crate::team::Multiteam;
    use crate::testutil::product_example;

    #[test]
    fn affects_tracks_the_worked_example() {
        let m = product_example();
        let sig = m.sig();
        let (x, z) = (sig.var("X").unwrap(), sig.var("Z").unwrap());
        let aff = affects_formula(sig, x, z).unwrap();
        assert!(m.eval_co(&aff).unwrap());
        assert!(matches!(
            affects_formula(sig, x, x),
            Err(Error::SameVariable(_))
        ));
    }

    #[test]
    fn affects_is_false_when_everything_is_exogenous() {
        let sig = Signature::binary(&["X", "Y"]).unwrap();
        let mut team = Multiteam::empty();
        team.add(sig.mk_assignment(&[("X", "0"), ("Y", "0")]).unwrap(), 1);
        team.add(sig.mk_assignment(&[("X", "1"), ("Y", "1")]).unwrap(), 1);
        let m = CausalMultiteam::new(sig.clone(), FunctionComponent::empty(), team).unwrap();
        let (x, y) = (sig.var("X").unwrap(), sig.var("Y").unwrap());
        let aff = affects_formula(&sig, x, y).unwrap();
        assert!(!m.eval_co(&aff).unwrap());
    }

    #[test]
    fn direct_cause_matches_parent_sets_on_the_worked_example() {
        let m = product_example();
        let sig = m.sig();
        let (x, y, z) = (
            sig.var("X").unwrap(),
            sig.var("Y").unwrap(),
            sig.var("Z").unwrap(),
        );
        assert!(m
            .eval_co(&direct_cause_formula(sig, x, y).unwrap())
            .unwrap());
        assert!(!m
            .eval_co(&direct_cause_formula(sig, z, y).unwrap())
            .unwrap());

        let empty =
            CausalMultiteam::new(sig.clone(), m.laws().clone(), Multiteam::empty()).unwrap();
        assert!(empty
            .eval_co(&direct_cause_formula(sig, z, y).unwrap())
            .unwrap());
    }

    #[test]
    fn endogeneity_formula_matches_the_law_domain() {
        let m = product_example();
        let sig = m.sig();
        let (x, z) = (sig.var("X").unwrap(), sig.var("Z").unwrap());
        assert!(m.eval_pco(&endogenous_formula(sig, z).unwrap()).unwrap());
        assert!(!m.eval_pco(&endogenous_formula(sig, x).unwrap()).unwrap());
    }

    #[test]
    fn laws_formula_pins_down_the_function_component() {
        let m = product_example();
        let sig = m.sig();
        let own = laws_formula(sig, m.laws()).unwrap();
        assert!(m.eval_pco(&own).unwrap());

        // Same shape, different outputs for Y: X + 1 replaced by constant-ish
        // swap (still non-constant).
        let y = sig.var("Y").unwrap();
        let x = sig.var("X").unwrap();
        let other_y = LawTable::from_fn(sig, y, |ctx| {
            let xv: i64 = sig.value_name(x, ctx[0]).parse().unwrap();
            let flipped = match xv {
                0 => 2,
                1 => 1,
                _ => 3,
            };
            sig.value(y, &flipped.to_string()).unwrap()
        });
        let mut other = m.laws().clone();
        other.insert(y, other_y);
        let foreign = laws_formula(sig, &other).unwrap();
        assert!(!m.eval_pco(&foreign).unwrap());

        let empty =
            CausalMultiteam::new(sig.clone(), m.laws().clone(), Multiteam::empty()).unwrap();
        assert!(empty.eval_pco(&foreign).unwrap());
    }

    #[test]
    fn tuple_literals_expand_to_the_advertised_shapes() {
        let sig = Signature::binary(&["X", "Y"]).unwrap();
        let (x, y) = (sig.var("X").unwrap(), sig.var("Y").unwrap());
        let pairs = vec![(x, Val(0)), (y, Val(1))];
        assert_eq!(
            tuple_eq_co(&sig, &pairs),
            CoFormula::eq(x, Val(0)).and(CoFormula::eq(y, Val(1)))
        );
        assert_eq!(tuple_eq_co(&sig, &[]), CoFormula::top(&sig));
        assert_eq!(
            tuple_neq_pco(&sig, &pairs),
            PcoFormula::neq(x, Val(0)).global_or(PcoFormula::neq(y, Val(1)))
        );
        assert_eq!(
            tuple_neq_co(&sig, &pairs),
            CoFormula::neq(x, Val(0)).or(CoFormula::neq(y, Val(1)), &sig)
        );
    }

    #[test]
    fn node_budget_is_enforced_and_counts_exactly() {
        let m = product_example();
        let sig = m.sig();
        let (x, z) = (sig.var("X").unwrap(), sig.var("Z").unwrap());

        let aff = affects_formula(sig, x, z).unwrap();
        // Recompute the advertised cost and compare with the real tree.
        let err = affects_formula_budgeted(sig, x, z, 10).unwrap_err();
        match err {
            Error::FormulaTooLarge { estimate, budget } => {
                assert_eq!(budget, 10);
                assert_eq!(estimate, aff.node_count());
            }
            other => panic!("expected FormulaTooLarge, got {other:?}"),
        }

        let phi = laws_formula(sig, m.laws()).unwrap();
        let err = laws_formula_budgeted(sig, m.laws(), 10).unwrap_err();
        match err {
            Error::FormulaTooLarge { estimate, .. } => {
                assert_eq!(estimate, phi.node_count());
            }
            other => panic!("expected FormulaTooLarge, got {other:?}"),
        }
    }
}
