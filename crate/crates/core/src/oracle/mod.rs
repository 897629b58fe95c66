//! Bounded exhaustive enumeration of models over a signature, and the
//! validity and entailment checks built on it. Verdicts are sound for
//! refutation; "valid" always means valid on the stated budget.

pub mod gen;
pub mod rules;
pub mod schema;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::PcoFormula;
use crate::laws::{FunctionComponent, LawTable};
use crate::model::CausalMultiteam;
use crate::signature::{Assignment, Signature, Val, Var};
use crate::team::Multiteam;

/// Default ceiling on the number of models an enumeration may produce.
pub const DEFAULT_MODEL_CAP: u128 = 2_000_000;

type LawFilter = Arc<dyn Fn(&FunctionComponent) -> bool + Send + Sync>;

/// What to enumerate: all models over `sig` with at most `max_rows` rows,
/// optionally restricted to law families accepted by a filter, guarded by a
/// cap on the total model count.
#[derive(Clone)]
pub struct EnumerationBudget {
    sig: Signature,
    max_rows: usize,
    law_filter: Option<LawFilter>,
    model_cap: u128,
}

impl EnumerationBudget {
    pub fn new(sig: Signature, max_rows: usize) -> Self {
        EnumerationBudget {
            sig,
            max_rows,
            law_filter: None,
            model_cap: DEFAULT_MODEL_CAP,
        }
    }

    pub fn with_law_filter(
        mut self,
        filter: impl Fn(&FunctionComponent) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.law_filter = Some(Arc::new(filter));
        self
    }

    pub fn with_model_cap(mut self, cap: u128) -> Self {
        self.model_cap = cap;
        self
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn max_rows(&self) -> usize {
        self.max_rows
    }
}

impl fmt::Debug for EnumerationBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumerationBudget")
            .field("sig", &self.sig)
            .field("max_rows", &self.max_rows)
            .field("law_filter", &self.law_filter.as_ref().map(|_| "<fn>"))
            .field("model_cap", &self.model_cap)
            .finish()
    }
}

/// Every admissible function component over the signature: each choice of
/// endogenous subset (ascending bitmask order) and of non-constant tables
/// (ascending mixed-radix order), kept when acyclic and filter-accepted.
pub fn enumerate_components(budget: &EnumerationBudget) -> Result<Vec<FunctionComponent>> {
    components_and_count(budget).map(|(comps, _)| comps)
}

/// Exact number of models the enumeration will yield.
pub fn count_models(budget: &EnumerationBudget) -> Result<u128> {
    components_and_count(budget).map(|(_, count)| count)
}

/// The compatible assignments of a law family, in ascending row order: one
/// per combination of exogenous values, with endogenous values computed.
pub fn compatible_assignments(sig: &Signature, laws: &FunctionComponent) -> Vec<Assignment> {
    let exo: Vec<Var> = sig.vars().filter(|v| !laws.is_endogenous(*v)).collect();
    let order = laws.topo_order(sig).expect("acyclic laws");
    let mut rows = Vec::new();
    let mut combo: Vec<usize> = vec![0; exo.len()];
    loop {
        let mut row = sig
            .assignment(vec![Val(0); sig.var_count()])
            .expect("zero row");
        for (i, &v) in exo.iter().enumerate() {
            row.set(v, Val(combo[i] as u32));
        }
        for &v in &order {
            if laws.is_endogenous(v) {
                let out = laws.output_for(sig, v, &row).expect("endogenous law");
                row.set(v, out);
            }
        }
        rows.push(row);
        // Mixed-radix increment over the exogenous ranges.
        let mut i = exo.len();
        loop {
            if i == 0 {
                rows.sort();
                return rows;
            }
            i -= 1;
            combo[i] += 1;
            if combo[i] < sig.range_size(exo[i]) {
                break;
            }
            combo[i] = 0;
        }
    }
}

/// Deterministic stream of every model within the budget, empty teams first
/// within each law family, assignment multisets in ascending order.
pub struct ModelEnumeration {
    inner: Box<dyn Iterator<Item = CausalMultiteam> + Send>,
}

impl Iterator for ModelEnumeration {
    type Item = CausalMultiteam;

    fn next(&mut self) -> Option<CausalMultiteam> {
        self.inner.next()
    }
}

pub fn enumerate_models(budget: &EnumerationBudget) -> Result<ModelEnumeration> {
    let (components, _) = components_and_count(budget)?;
    let sig = budget.sig.clone();
    let max_rows = budget.max_rows;
    let inner = components.into_iter().flat_map(move |laws| {
        let rows = compatible_assignments(&sig, &laws);
        let sig = sig.clone();
        (0..=max_rows).flat_map(move |k| {
            let sig = sig.clone();
            let laws = laws.clone();
            let rows = rows.clone();
            multisets(rows.len(), k).map(move |counts| {
                let team = Multiteam::from_rows(
                    counts
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c > 0)
                        .map(|(i, c)| (rows[i].clone(), *c)),
                );
                CausalMultiteam::from_parts_unchecked(sig.clone(), laws.clone(), team)
            })
        })
    });
    Ok(ModelEnumeration {
        inner: Box::new(inner),
    })
}

/// All multiplicity vectors over `n` slots summing to exactly `k`, in
/// lexicographic order of the underlying sorted index multisets.
fn multisets(n: usize, k: usize) -> Box<dyn Iterator<Item = Vec<u64>> + Send> {
    if k == 0 {
        return Box::new(std::iter::once(vec![0; n]));
    }
    if n == 0 {
        return Box::new(std::iter::empty());
    }
    Box::new((0..=k).flat_map(move |rest| {
        // First slot takes k - rest copies; recurse on the remaining slots.
        multisets(n - 1, rest).map(move |mut tail| {
            let mut counts = Vec::with_capacity(n);
            counts.push((k - rest) as u64);
            counts.append(&mut tail);
            counts
        })
    }))
}

fn components_and_count(budget: &EnumerationBudget) -> Result<(Vec<FunctionComponent>, u128)> {
    let sig = &budget.sig;
    let n = sig.var_count();
    let raw = raw_component_bound(sig).ok_or_else(|| Error::BudgetTooLarge {
        estimate: "more than 2^128 function components".into(),
        cap: budget.model_cap,
    })?;
    if raw > budget.model_cap {
        return Err(Error::BudgetTooLarge {
            estimate: format!("at least {raw} function components"),
            cap: budget.model_cap,
        });
    }

    // Per variable, every non-constant table in ascending mixed-radix order.
    let tables: Vec<Vec<LawTable>> = sig
        .vars()
        .map(|v| {
            let contexts = sig.context_count(v);
            let range = sig.range_size(v);
            let mut out = Vec::new();
            let mut digits = vec![0usize; contexts];
            'all: loop {
                if digits.iter().any(|&d| d != digits[0]) {
                    out.push(LawTable::new(
                        digits.iter().map(|&d| Val(d as u32)).collect(),
                    ));
                }
                let mut i = contexts;
                loop {
                    if i == 0 {
                        break 'all;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < range {
                        break;
                    }
                    digits[i] = 0;
                }
            }
            out
        })
        .collect();

    let mut components = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let endo: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if endo.iter().any(|&i| tables[i].is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; endo.len()];
        'family: loop {
            let fc = FunctionComponent::from_laws(
                endo.iter()
                    .zip(&choice)
                    .map(|(&i, &c)| (Var(i as u32), tables[i][c].clone())),
            );
            if fc.topo_order(sig).is_ok() && budget.law_filter.as_ref().is_none_or(|f| f(&fc)) {
                components.push(fc);
            }
            let mut i = endo.len();
            loop {
                if i == 0 {
                    break 'family;
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < tables[endo[i]].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }

    let mut total: u128 = 0;
    for fc in &components {
        let a = compatible_assignments(sig, fc).len() as u128;
        let models = multiset_total(a, budget.max_rows).ok_or_else(|| Error::BudgetTooLarge {
            estimate: "more than 2^128 models".into(),
            cap: budget.model_cap,
        })?;
        total = total
            .checked_add(models)
            .filter(|t| *t <= budget.model_cap)
            .ok_or_else(|| Error::BudgetTooLarge {
                estimate: format!("more than {} models", budget.model_cap),
                cap: budget.model_cap,
            })?;
    }
    Ok((components, total))
}

/// Upper bound on the component count, ignoring acyclicity and filters.
fn raw_component_bound(sig: &Signature) -> Option<u128> {
    let n = sig.var_count();
    if n > 20 {
        return None;
    }
    let mut total: u128 = 0;
    for mask in 0u64..(1u64 << n) {
        let mut prod: u128 = 1;
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            let v = Var(i as u32);
            let r = sig.range_size(v) as u128;
            let c = sig.context_count(v);
            if r >= 2 && c > 127 {
                return None;
            }
            let mut pow: u128 = 1;
            for _ in 0..c {
                pow = pow.checked_mul(r)?;
            }
            prod = prod.checked_mul(pow - r)?;
            if prod == 0 {
                break;
            }
        }
        total = total.checked_add(prod)?;
    }
    Some(total)
}

/// Number of multisets of size at most `max_rows` over `a` items.
fn multiset_total(a: u128, max_rows: usize) -> Option<u128> {
    let mut total: u128 = 0;
    for k in 0..=(max_rows as u128) {
        let combos = if k == 0 {
            1
        } else {
            binomial(a.checked_add(k)? - 1, k)?
        };
        total = total.checked_add(combos)?;
    }
    Some(total)
}

fn binomial(n: u128, r: u128) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc.checked_mul(n - r + i)? / i;
    }
    Some(acc)
}

/// Outcome of a bounded validity or entailment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No countermodel within the budget; not a proof beyond it.
    ValidOnBudget { models_checked: u128 },
    /// First countermodel in enumeration order.
    Counterexample(Box<CausalMultiteam>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidOnBudget { .. })
    }
}

/// Searches the budget for a model falsifying `phi`.
pub fn check_validity(phi: &PcoFormula, budget: &EnumerationBudget) -> Result<Verdict> {
    check_entailment(&[], phi, budget)
}

/// Searches the budget for a model satisfying every premise and falsifying
/// `phi`.
pub fn check_entailment(
    premises: &[PcoFormula],
    phi: &PcoFormula,
    budget: &EnumerationBudget,
) -> Result<Verdict> {
    let mut stream = counterexamples(premises, phi, budget)?;
    match stream.next() {
        Some(model) => Ok(Verdict::Counterexample(Box::new(model))),
        None => Ok(Verdict::ValidOnBudget {
            models_checked: count_models(budget)?,
        }),
    }
}

/// Every countermodel to the entailment within the budget, in enumeration
/// order.
pub fn counterexamples(
    premises: &[PcoFormula],
    phi: &PcoFormula,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = CausalMultiteam> + Send> {
    for psi in premises {
        psi.check(budget.sig())?;
    }
    phi.check(budget.sig())?;
    let premises = premises.to_vec();
    let phi = phi.clone();
    Ok(enumerate_models(budget)?.filter(move |m| {
        premises.iter().all(|p| m.eval_pco_unchecked(p)) && !m.eval_pco_unchecked(&phi)
    }))
}

#[cfg(test)]
type ModelKey = (Vec<(Var, Vec<Val>)>, Vec<(Vec<Val>, u64)>);

/// Test helper: canonical form for duplicate detection.
#[cfg(test)]
fn canonical_key(m: &CausalMultiteam) -> ModelKey {
    let laws = m
        .laws()
        .endogenous()
        .map(|v| (v, m.laws().law(v).unwrap().outputs().to_vec()))
        .collect();
    let team = m
        .team()
        .iter()
        .map(|(row, c)| (row.values().to_vec(), c))
        .collect();
    (laws, team)
}
