//! Axiom schema identifiers and instance generators. Every generated
//! instance honors the schema's side conditions (threshold constraints,
//! consistency of intervention targets, counterfactual-free subformulas,
//! chain lengths), so each one is expected to be valid on every budget.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::derived::{affects_formula, endogenous_formula, tuple_eq_co, tuple_neq_pco};
use crate::error::{Error, Result};
use crate::formula::{rat, CoFormula, InterventionSpec, PcoFormula, Rational};
use crate::oracle::gen::{FormulaPool, SampleBudget};
use crate::oracle::{check_validity, EnumerationBudget, Verdict};
use crate::signature::Signature;

/// The thirty-six axiom schemas covered by the instance generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum SchemaId {
    T1,
    T2,
    P1,
    P2,
    P3,
    P3b,
    P4,
    P5,
    P6,
    P6b,
    CP1,
    CP2,
    O1,
    O1b,
    O2,
    O3,
    O4,
    O5And,
    O5Or,
    O5Imp,
    A1,
    A2,
    A3,
    C1,
    C2,
    C3,
    C4,
    C4b,
    C5,
    C6,
    C7,
    C8,
    C8b,
    C9,
    C10,
    C11,
}

impl SchemaId {
    pub const ALL: [SchemaId; 36] = [
        SchemaId::T1,
        SchemaId::T2,
        SchemaId::P1,
        SchemaId::P2,
        SchemaId::P3,
        SchemaId::P3b,
        SchemaId::P4,
        SchemaId::P5,
        SchemaId::P6,
        SchemaId::P6b,
        SchemaId::CP1,
        SchemaId::CP2,
        SchemaId::O1,
        SchemaId::O1b,
        SchemaId::O2,
        SchemaId::O3,
        SchemaId::O4,
        SchemaId::O5And,
        SchemaId::O5Or,
        SchemaId::O5Imp,
        SchemaId::A1,
        SchemaId::A2,
        SchemaId::A3,
        SchemaId::C1,
        SchemaId::C2,
        SchemaId::C3,
        SchemaId::C4,
        SchemaId::C4b,
        SchemaId::C5,
        SchemaId::C6,
        SchemaId::C7,
        SchemaId::C8,
        SchemaId::C8b,
        SchemaId::C9,
        SchemaId::C10,
        SchemaId::C11,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemaId::T1 => "T1",
            SchemaId::T2 => "T2",
            SchemaId::P1 => "P1",
            SchemaId::P2 => "P2",
            SchemaId::P3 => "P3",
            SchemaId::P3b => "P3b",
            SchemaId::P4 => "P4",
            SchemaId::P5 => "P5",
            SchemaId::P6 => "P6",
            SchemaId::P6b => "P6b",
            SchemaId::CP1 => "CP1",
            SchemaId::CP2 => "CP2",
            SchemaId::O1 => "O1",
            SchemaId::O1b => "O1b",
            SchemaId::O2 => "O2",
            SchemaId::O3 => "O3",
            SchemaId::O4 => "O4",
            SchemaId::O5And => "O5and",
            SchemaId::O5Or => "O5or",
            SchemaId::O5Imp => "O5imp",
            SchemaId::A1 => "A1",
            SchemaId::A2 => "A2",
            SchemaId::A3 => "A3",
            SchemaId::C1 => "C1",
            SchemaId::C2 => "C2",
            SchemaId::C3 => "C3",
            SchemaId::C4 => "C4",
            SchemaId::C4b => "C4b",
            SchemaId::C5 => "C5",
            SchemaId::C6 => "C6",
            SchemaId::C7 => "C7",
            SchemaId::C8 => "C8",
            SchemaId::C8b => "C8b",
            SchemaId::C9 => "C9",
            SchemaId::C10 => "C10",
            SchemaId::C11 => "C11",
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SchemaId> {
        for id in SchemaId::ALL {
            if s == id.as_str() {
                return Ok(id);
            }
        }
        match s {
            "O5∧" => Ok(SchemaId::O5And),
            "O5⊔" => Ok(SchemaId::O5Or),
            "O5⊃" => Ok(SchemaId::O5Imp),
            _ => Err(Error::UnknownSchema(s.to_string())),
        }
    }
}

/// Yields `budget.samples` instances of the schema (fewer when the
/// signature admits fewer, e.g. chains over too few variables).
pub fn instantiate_schema(
    id: SchemaId,
    sig: &Signature,
    budget: &SampleBudget,
) -> Result<Vec<PcoFormula>> {
    let mut pool = FormulaPool::new(sig, budget);
    let mut out = Vec::with_capacity(budget.samples);
    let mut attempts = 0usize;
    let max_attempts = budget.samples.saturating_mul(4).max(16);
    while out.len() < budget.samples && attempts < max_attempts {
        if let Some(phi) = instance(id, sig, &mut pool, attempts)? {
            debug_assert!(phi.check(sig).is_ok(), "generated instance is ill-formed");
            out.push(phi);
        }
        attempts += 1;
    }
    Ok(out)
}

/// Instances of every schema, checked for countermodels on the budget.
#[derive(Clone, Debug)]
pub struct SchemaCheck {
    pub schema: SchemaId,
    pub results: Vec<(PcoFormula, Verdict)>,
}

impl SchemaCheck {
    pub fn all_valid(&self) -> bool {
        self.results.iter().all(|(_, v)| v.is_valid())
    }

    pub fn violations(&self) -> impl Iterator<Item = &(PcoFormula, Verdict)> {
        self.results.iter().filter(|(_, v)| !v.is_valid())
    }
}

/// Generates instances and searches each for a countermodel.
pub fn check_schema(
    id: SchemaId,
    sample: &SampleBudget,
    budget: &EnumerationBudget,
) -> Result<SchemaCheck> {
    let instances = instantiate_schema(id, budget.sig(), sample)?;
    let mut results = Vec::with_capacity(instances.len());
    for phi in instances {
        let verdict = check_validity(&phi, budget)?;
        results.push((phi, verdict));
    }
    Ok(SchemaCheck {
        schema: id,
        results,
    })
}

fn instance(
    id: SchemaId,
    sig: &Signature,
    p: &mut FormulaPool,
    k: usize,
) -> Result<Option<PcoFormula>> {
    let phi = match id {
        SchemaId::T1 => Some(pco_tautology(sig, p, k)),
        SchemaId::T2 => Some(co_tautology(sig, p, k)),
        SchemaId::P1 => {
            let a = p.co();
            Some(PcoFormula::from(a.clone()).iff(pr_eq(a, Rational::one(), sig), sig))
        }
        SchemaId::P2 => Some(PcoFormula::pr_ge(p.co(), rat(0, 1)).expect("zero threshold")),
        SchemaId::P3 => {
            let (delta, epsilon) = p.rationals_summing_at_most_one();
            let a = p.co();
            let b = p.co();
            let lhs = pr_eq(a.clone(), delta.clone(), sig)
                .and(pr_eq(b.clone(), epsilon.clone(), sig))
                .and(pr_eq(a.clone().and(b.clone()), Rational::zero(), sig));
            let rhs = pr_eq(a.or(b, sig), delta + epsilon, sig);
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::P3b => {
            let epsilon = p.rational();
            let a = p.co();
            let b = p.co();
            let lhs = PcoFormula::pr_ge(a.clone(), epsilon.clone())
                .expect("threshold in range")
                .and(pr_eq(a.and(b.clone()), Rational::zero(), sig));
            let rhs =
                PcoFormula::pr_le(b, Rational::one() - epsilon, sig).expect("threshold in range");
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::P4 => {
            let (delta, epsilon) = p.rationals_strictly_ordered();
            let a = p.co();
            let lhs = PcoFormula::pr_le(a.clone(), epsilon, sig).expect("threshold in range");
            let rhs = PcoFormula::pr_lt(a, delta, sig).expect("threshold in range");
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::P5 => {
            let epsilon = p.rational();
            let a = p.co();
            let lhs =
                PcoFormula::pr_lt(a.clone(), epsilon.clone(), sig).expect("threshold in range");
            let rhs = PcoFormula::pr_le(a, epsilon, sig).expect("threshold in range");
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::P6 => {
            let epsilon = p.rational();
            let a = p.co();
            let b = p.co();
            let lhs = pr_eq(a.clone().equiv(b.clone()), Rational::one(), sig);
            let inner = pr_eq(a, epsilon.clone(), sig).arrow(pr_eq(b, epsilon, sig), sig);
            Some(lhs.arrow(inner, sig))
        }
        SchemaId::P6b => {
            let epsilon = p.rational();
            let a = p.co();
            let b = p.co();
            let lhs = pr_eq(a.clone().sel_imp(b.clone()), Rational::one(), sig);
            let inner = pr_eq(a, epsilon.clone(), sig).arrow(
                PcoFormula::pr_ge(b, epsilon).expect("threshold in range"),
                sig,
            );
            Some(lhs.arrow(inner, sig))
        }
        SchemaId::CP1 => {
            let (delta, epsilon) = p.rationals_ordered();
            let a = p.co();
            let b = p.co();
            let lhs = pr_eq(a.clone(), delta, sig).and(pr_eq(b.clone(), epsilon, sig));
            let rhs = PcoFormula::pr_cmp_pr(a, crate::formula::Cmp::Ge, b);
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::CP2 => {
            let (delta, epsilon) = p.rationals_strictly_ordered();
            let a = p.co();
            let b = p.co();
            let lhs = pr_eq(a.clone(), delta, sig).and(pr_eq(b.clone(), epsilon, sig));
            let rhs = PcoFormula::pr_cmp_pr(a, crate::formula::Cmp::Gt, b);
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::O1 => {
            let a = p.co();
            let psi = p.pco();
            let lhs = pr_eq(a.clone(), Rational::zero(), sig);
            Some(lhs.arrow(PcoFormula::sel_imp(a, psi), sig))
        }
        SchemaId::O1b => {
            let a = p.co();
            let lhs = PcoFormula::sel_imp(a.clone(), PcoFormula::bot(sig));
            Some(lhs.arrow(pr_eq(a, Rational::zero(), sig), sig))
        }
        SchemaId::O2 => {
            let delta = p.rational_pos();
            let epsilon = p.rational_scaled(&delta);
            let a = p.co();
            let b = p.co();
            let lhs = pr_eq(a.clone(), delta.clone(), sig).and(pr_eq(
                a.clone().and(b.clone()),
                epsilon.clone(),
                sig,
            ));
            let rhs = PcoFormula::sel_imp(a, pr_eq(b, epsilon / delta, sig));
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::O3 => {
            let epsilon = p.rational_pos();
            let delta = p.rational();
            let a = p.co();
            let b = p.co();
            let lhs = PcoFormula::sel_imp(a.clone(), pr_eq(b.clone(), epsilon.clone(), sig));
            let rhs = pr_eq(a.clone(), delta.clone(), sig)
                .iff(pr_eq(a.and(b), epsilon * delta, sig), sig);
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::O4 => {
            let a = p.co();
            let psi = p.pco();
            let lhs = PcoFormula::sel_imp(a.clone(), psi.clone());
            Some(lhs.arrow(PcoFormula::from(a).arrow(psi, sig), sig))
        }
        SchemaId::O5And => {
            let a = p.co();
            let psi = p.pco();
            let chi = p.pco();
            let lhs = PcoFormula::sel_imp(a.clone(), psi.clone().and(chi.clone()));
            let rhs = PcoFormula::sel_imp(a.clone(), psi).and(PcoFormula::sel_imp(a, chi));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::O5Or => {
            let a = p.co();
            let psi = p.pco();
            let chi = p.pco();
            let lhs = PcoFormula::sel_imp(a.clone(), psi.clone().global_or(chi.clone()));
            let rhs = PcoFormula::sel_imp(a.clone(), psi).global_or(PcoFormula::sel_imp(a, chi));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::O5Imp => {
            let a = p.co();
            let b = p.co();
            let chi = p.pco();
            let lhs = PcoFormula::sel_imp(a.clone(), PcoFormula::sel_imp(b.clone(), chi.clone()));
            let rhs = PcoFormula::sel_imp(a.and(b), chi);
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::A1 => {
            let vars = p.var_subset(2);
            match p.distinct_value_tuples(&vars) {
                None => None,
                Some((y, y2)) => {
                    let eq_pairs: Vec<_> = vars.iter().copied().zip(y).collect();
                    let neq_pairs: Vec<_> = vars.iter().copied().zip(y2).collect();
                    let lhs = PcoFormula::from(tuple_eq_co(sig, &eq_pairs));
                    Some(lhs.arrow(tuple_neq_pco(sig, &neq_pairs), sig))
                }
            }
        }
        SchemaId::A2 => {
            let v = p.var();
            let x = p.val(v);
            let lhs = PcoFormula::neq(v, x);
            let rhs = PcoFormula::sel_imp(CoFormula::eq(v, x), PcoFormula::bot(sig));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::A3 => {
            let vars = p.var_subset(2);
            let mut tuples = crate::derived::value_tuples(sig, &vars).into_iter();
            let first = tuples.next().expect("nonempty product");
            let to_co = |vals: Vec<crate::signature::Val>| {
                let pairs: Vec<_> = vars.iter().copied().zip(vals).collect();
                tuple_eq_co(sig, &pairs)
            };
            let folded = tuples.fold(to_co(first), |acc, vals| acc.or(to_co(vals), sig));
            Some(PcoFormula::from(folded))
        }
        SchemaId::C1 => {
            let spec = p.spec(2);
            let psi = p.pco();
            let chi = p.pco();
            let lhs = PcoFormula::cf(spec.clone(), psi.clone().and(chi.clone()));
            let rhs = PcoFormula::cf(spec.clone(), psi).and(PcoFormula::cf(spec, chi));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::C2 => {
            let spec = p.spec(2);
            let psi = p.pco();
            let chi = p.pco();
            let lhs = PcoFormula::cf(spec.clone(), psi.clone().global_or(chi.clone()));
            let rhs = PcoFormula::cf(spec.clone(), psi).global_or(PcoFormula::cf(spec, chi));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::C3 => {
            let spec = p.spec(2);
            let a = p.co();
            let chi = p.pco();
            let lhs = PcoFormula::cf(spec.clone(), PcoFormula::sel_imp(a.clone(), chi.clone()));
            let rhs =
                PcoFormula::sel_imp(CoFormula::cf(spec.clone(), a), PcoFormula::cf(spec, chi));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::C4 => {
            let outer = p.spec(2);
            let inner = p.spec(2);
            let chi = p.pco();
            let lhs = PcoFormula::cf(outer.clone(), PcoFormula::cf(inner.clone(), chi.clone()));
            let rhs = PcoFormula::cf(outer.override_with(&inner), chi);
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::C4b => {
            if sig.var_count() < 2 {
                return Ok(None);
            }
            let mut vars = p.var_subset(sig.var_count().min(3));
            if vars.len() < 2 {
                return Ok(None);
            }
            let tail = vars.split_off(1 + (k % (vars.len() - 1)));
            let first = InterventionSpec::new(vars.into_iter().map(|v| (v, p.val(v))).collect());
            let second = InterventionSpec::new(tail.into_iter().map(|v| (v, p.val(v))).collect());
            let chi = p.pco();
            let joint = InterventionSpec::new(
                first
                    .pairs()
                    .iter()
                    .chain(second.pairs())
                    .copied()
                    .collect(),
            );
            let lhs = PcoFormula::cf(joint, chi.clone());
            let rhs = PcoFormula::cf(first, PcoFormula::cf(second, chi));
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::C5 => {
            let spec = p.spec(2);
            let psi = p.pco();
            let lhs = PcoFormula::cf(spec, PcoFormula::bot(sig));
            Some(lhs.arrow(psi, sig))
        }
        SchemaId::C6 => {
            let spec = p.spec(2);
            let pairs = spec.pairs().to_vec();
            let (v, x) = pairs[k % pairs.len()];
            Some(PcoFormula::cf(spec, PcoFormula::eq(v, x)))
        }
        SchemaId::C7 => {
            let spec = p.spec(2);
            let gamma = p.pco_plain();
            let lits = spec
                .pairs()
                .iter()
                .map(|&(v, x)| PcoFormula::eq(v, x))
                .reduce(PcoFormula::and)
                .expect("nonempty spec");
            let lhs = lits.and(gamma.clone());
            Some(lhs.arrow(PcoFormula::cf(spec, gamma), sig))
        }
        SchemaId::C8 => {
            let spec = p.spec(2);
            let a = p.co();
            let cmp = p.cmp();
            let e = p.rational();
            let lhs = PcoFormula::cf(
                spec.clone(),
                PcoFormula::pr(a.clone(), cmp, e.clone()).expect("threshold in range"),
            );
            let rhs = PcoFormula::pr(CoFormula::cf(spec, a), cmp, e).expect("threshold in range");
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::C8b => {
            let spec = p.spec(2);
            let a = p.co();
            let b = p.co();
            let cmp = p.cmp();
            let lhs = PcoFormula::cf(
                spec.clone(),
                PcoFormula::pr_cmp_pr(a.clone(), cmp, b.clone()),
            );
            let rhs =
                PcoFormula::pr_cmp_pr(CoFormula::cf(spec.clone(), a), cmp, CoFormula::cf(spec, b));
            Some(lhs.iff(rhs, sig))
        }
        SchemaId::C9 => {
            let y = p.var();
            let others = sig.others(y);
            let spec = InterventionSpec::new(others.into_iter().map(|v| (v, p.val(v))).collect());
            let some_value = sig
                .values(y)
                .map(|x| PcoFormula::eq(y, x))
                .reduce(PcoFormula::global_or)
                .expect("nonempty range");
            let lhs = endogenous_formula(sig, y)?;
            Some(lhs.arrow(PcoFormula::cf(spec, some_value), sig))
        }
        SchemaId::C10 => {
            let y = p.var();
            let x = p.val(y);
            let others = sig.others(y);
            let spec = InterventionSpec::new(others.into_iter().map(|v| (v, p.val(v))).collect());
            let lhs = endogenous_formula(sig, y)?.neg_c(sig);
            let rhs = PcoFormula::sel_imp(
                CoFormula::eq(y, x),
                PcoFormula::cf(spec, PcoFormula::eq(y, x)),
            );
            Some(lhs.arrow(rhs, sig))
        }
        SchemaId::C11 => {
            if sig.var_count() < 2 {
                return Ok(None);
            }
            let len = 2 + (k % 2);
            let mut chain = p.var_subset(sig.var_count());
            if chain.len() < len.min(sig.var_count()) {
                return Ok(None);
            }
            chain.truncate(len.min(sig.var_count()));
            if chain.len() < 2 {
                return Ok(None);
            }
            let mut links = Vec::new();
            for pair in chain.windows(2) {
                links.push(PcoFormula::from(affects_formula(sig, pair[0], pair[1])?));
            }
            let lhs = links.into_iter().reduce(PcoFormula::and).expect("n > 1");
            let back = PcoFormula::from(affects_formula(
                sig,
                *chain.last().expect("nonempty"),
                chain[0],
            )?);
            Some(lhs.arrow(back.neg_c(sig), sig))
        }
    };
    Ok(phi)
}

fn pr_eq(alpha: CoFormula, e: Rational, sig: &Signature) -> PcoFormula {
    PcoFormula::pr_eq(alpha, e, sig).expect("threshold in range")
}

/// Fixed tautology templates over the team-level connectives, instantiated
/// with random formulas.
fn pco_tautology(sig: &Signature, p: &mut FormulaPool, k: usize) -> PcoFormula {
    let f = p.pco_depth(2);
    let g = p.pco_depth(2);
    let h = p.pco_depth(2);
    match k % 15 {
        0 => f.arrow(f.clone(), sig),
        1 => f.arrow(g.arrow(f.clone(), sig), sig),
        2 => {
            let s1 = f.arrow(g.arrow(h.clone(), sig), sig);
            let s2 = f.arrow(g.clone(), sig).arrow(f.arrow(h, sig), sig);
            s1.arrow(s2, sig)
        }
        3 => {
            let peirce = f.arrow(g, sig).arrow(f.clone(), sig);
            peirce.arrow(f, sig)
        }
        4 => f.clone().global_or(f.neg_c(sig)),
        5 => f.neg_c(sig).neg_c(sig).iff(f, sig),
        6 => {
            let both = f.clone().and(g.clone());
            both.neg_c(sig)
                .iff(f.neg_c(sig).global_or(g.neg_c(sig)), sig)
        }
        7 => {
            let either = f.clone().global_or(g.clone());
            either.neg_c(sig).iff(f.neg_c(sig).and(g.neg_c(sig)), sig)
        }
        8 => f.clone().and(g).arrow(f, sig),
        9 => g.clone().and(f.clone()).arrow(f, sig),
        10 => f.clone().arrow(f.global_or(g), sig),
        11 => {
            let lhs = f.clone().and(g.clone().global_or(h.clone()));
            let rhs = f.clone().and(g).global_or(f.and(h));
            lhs.iff(rhs, sig)
        }
        12 => f.arrow(PcoFormula::top(sig), sig),
        13 => PcoFormula::bot(sig).arrow(f, sig),
        _ => {
            let fwd = f.clone().arrow(g.clone(), sig);
            fwd.arrow(g.neg_c(sig).arrow(f.neg_c(sig), sig), sig)
        }
    }
}

/// Fixed tautology templates over the row-level connectives; valid because
/// each such formula reduces to singleton rows.
fn co_tautology(sig: &Signature, p: &mut FormulaPool, k: usize) -> PcoFormula {
    let a = p.co_depth(2);
    let b = p.co_depth(2);
    let c = p.co_depth(2);
    let alpha = match k % 15 {
        0 => a.clone().sel_imp(a),
        1 => a.clone().sel_imp(b.sel_imp(a)),
        2 => {
            let s1 = a.clone().sel_imp(b.clone().sel_imp(c.clone()));
            let s2 = a.clone().sel_imp(b).sel_imp(a.sel_imp(c));
            s1.sel_imp(s2)
        }
        3 => {
            let peirce = a.clone().sel_imp(b).sel_imp(a.clone());
            peirce.sel_imp(a)
        }
        4 => a.clone().or(a.not(sig), sig),
        5 => a.clone().not(sig).not(sig).equiv(a),
        6 => {
            let both = a.clone().and(b.clone());
            both.not(sig).equiv(a.not(sig).or(b.not(sig), sig))
        }
        7 => {
            let either = a.clone().or(b.clone(), sig);
            either.not(sig).equiv(a.not(sig).and(b.not(sig)))
        }
        8 => a.clone().and(b).sel_imp(a),
        9 => b.clone().and(a.clone()).sel_imp(a),
        10 => a.clone().sel_imp(a.or(b, sig)),
        11 => {
            let lhs = a.clone().and(b.clone().or(c.clone(), sig));
            let rhs = a.clone().and(b).or(a.and(c), sig);
            lhs.equiv(rhs)
        }
        12 => a.sel_imp(CoFormula::top(sig)),
        13 => CoFormula::bot(sig).sel_imp(a),
        _ => {
            let fwd = a.clone().sel_imp(b.clone());
            fwd.sel_imp(b.not(sig).sel_imp(a.not(sig)))
        }
    };
    PcoFormula::from(alpha)
}
