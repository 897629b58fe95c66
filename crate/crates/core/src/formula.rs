//! Formula ASTs.
//!
//! `CoFormula` is the counterfactual-observational fragment: literals,
//! conjunction, selective implication, and counterfactuals. `PcoFormula` adds
//! probability atoms and global disjunction on top; CO formulas appear inside
//! it as probability arguments and as antecedents of selective implications.
//!
//! Defined operators (negation, tensor disjunction, top/bottom, bounded
//! probability comparisons, material conditionals, ...) are expanded eagerly
//! into the primitives; pretty printing re-sugars the recognizable shapes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::signature::{Signature, Val, Var};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Comparison mode of probability atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cmp {
    Ge,
    Gt,
}

impl Cmp {
    pub fn holds(self, left: &Rational, right: &Rational) -> bool {
        match self {
            Cmp::Ge => left >= right,
            Cmp::Gt => left > right,
        }
    }
}

/// An intervention target: an ordered list of `(variable, value)` pairs.
/// Inconsistent lists (one variable, two values) are representable; the
/// semantics treats counterfactuals with inconsistent targets as vacuously
/// true.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InterventionSpec {
    pairs: Vec<(Var, Val)>,
}

impl InterventionSpec {
    pub fn new(pairs: Vec<(Var, Val)>) -> Self {
        InterventionSpec { pairs }
    }

    pub fn pairs(&self) -> &[(Var, Val)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.pairs.iter().map(|&(v, _)| v).collect()
    }

    /// A variable bound to two distinct values, if any.
    pub fn conflicting_var(&self) -> Option<Var> {
        for (i, &(v, x)) in self.pairs.iter().enumerate() {
            if self.pairs[..i].iter().any(|&(u, y)| u == v && y != x) {
                return Some(v);
            }
        }
        None
    }

    pub fn is_consistent(&self) -> bool {
        self.conflicting_var().is_none()
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        for &(v, x) in &self.pairs {
            sig.check_pair(v, x)?;
        }
        Ok(())
    }

    /// Merge for nested interventions: pairs of `self` whose variable is
    /// re-targeted by `inner` are dropped, then `inner` is appended.
    pub fn override_with(&self, inner: &InterventionSpec) -> InterventionSpec {
        let inner_vars = inner.vars();
        let mut pairs: Vec<(Var, Val)> = self
            .pairs
            .iter()
            .filter(|(v, _)| !inner_vars.contains(v))
            .copied()
            .collect();
        pairs.extend_from_slice(&inner.pairs);
        InterventionSpec { pairs }
    }
}

/// Counterfactual-observational formulas. Flat: a team satisfies one exactly
/// when every row does.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoFormula {
    Eq(Var, Val),
    Neq(Var, Val),
    And(Box<CoFormula>, Box<CoFormula>),
    /// Selective implication: the consequent must hold on the rows satisfying
    /// the antecedent.
    SelImp(Box<CoFormula>, Box<CoFormula>),
    /// Counterfactual: the body must hold after intervening on the target.
    Cf(InterventionSpec, Box<CoFormula>),
}

impl CoFormula {
    pub fn eq(v: Var, x: Val) -> Self {
        CoFormula::Eq(v, x)
    }

    pub fn neq(v: Var, x: Val) -> Self {
        CoFormula::Neq(v, x)
    }

    pub fn and(self, rhs: CoFormula) -> Self {
        CoFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn sel_imp(self, rhs: CoFormula) -> Self {
        CoFormula::SelImp(Box::new(self), Box::new(rhs))
    }

    pub fn cf(spec: InterventionSpec, body: CoFormula) -> Self {
        CoFormula::Cf(spec, Box::new(body))
    }

    /// Canonical tautology: intervening the first variable to its first value
    /// makes that very equality hold.
    pub fn top(sig: &Signature) -> Self {
        let v = sig.vars().next().expect("signatures are nonempty");
        let x = sig.values(v).next().expect("ranges are nonempty");
        CoFormula::cf(InterventionSpec::new(vec![(v, x)]), CoFormula::Eq(v, x))
    }

    /// Canonical contradiction, dual to [`CoFormula::top`].
    pub fn bot(sig: &Signature) -> Self {
        let v = sig.vars().next().expect("signatures are nonempty");
        let x = sig.values(v).next().expect("ranges are nonempty");
        CoFormula::cf(InterventionSpec::new(vec![(v, x)]), CoFormula::Neq(v, x))
    }

    /// Dual negation, defined as `self => BOT`.
    pub fn not(self, sig: &Signature) -> Self {
        self.sel_imp(CoFormula::bot(sig))
    }

    /// Tensor disjunction, defined as `~(~self & ~rhs)`.
    pub fn or(self, rhs: CoFormula, sig: &Signature) -> Self {
        self.not(sig).and(rhs.not(sig)).not(sig)
    }

    /// Biconditional, defined as the conjunction of both implications.
    pub fn equiv(self, rhs: CoFormula) -> Self {
        let fwd = self.clone().sel_imp(rhs.clone());
        let back = rhs.sel_imp(self);
        fwd.and(back)
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            CoFormula::Eq(v, x) | CoFormula::Neq(v, x) => sig.check_pair(*v, *x),
            CoFormula::And(a, b) | CoFormula::SelImp(a, b) => {
                a.check(sig)?;
                b.check(sig)
            }
            CoFormula::Cf(spec, body) => {
                spec.check(sig)?;
                body.check(sig)
            }
        }
    }

    pub fn node_count(&self) -> u64 {
        match self {
            CoFormula::Eq(..) | CoFormula::Neq(..) => 1,
            CoFormula::And(a, b) | CoFormula::SelImp(a, b) => 1 + a.node_count() + b.node_count(),
            CoFormula::Cf(_, body) => 1 + body.node_count(),
        }
    }
}

/// Probabilistic counterfactual-observational formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PcoFormula {
    Eq(Var, Val),
    Neq(Var, Val),
    /// Probability of a CO formula compared against a rational in `[0, 1]`.
    ProbConst(CoFormula, Cmp, Rational),
    /// Probabilities of two CO formulas compared against each other.
    ProbProb(CoFormula, Cmp, CoFormula),
    And(Box<PcoFormula>, Box<PcoFormula>),
    /// Global (Boolean) disjunction.
    GOr(Box<PcoFormula>, Box<PcoFormula>),
    /// Selective implication with a CO antecedent.
    SelImp(CoFormula, Box<PcoFormula>),
    Cf(InterventionSpec, Box<PcoFormula>),
}

impl From<CoFormula> for PcoFormula {
    fn from(alpha: CoFormula) -> PcoFormula {
        match alpha {
            CoFormula::Eq(v, x) => PcoFormula::Eq(v, x),
            CoFormula::Neq(v, x) => PcoFormula::Neq(v, x),
            CoFormula::And(a, b) => PcoFormula::from(*a).and(PcoFormula::from(*b)),
            CoFormula::SelImp(a, b) => PcoFormula::sel_imp(*a, PcoFormula::from(*b)),
            CoFormula::Cf(spec, body) => PcoFormula::cf(spec, PcoFormula::from(*body)),
        }
    }
}

impl PcoFormula {
    pub fn eq(v: Var, x: Val) -> Self {
        PcoFormula::Eq(v, x)
    }

    pub fn neq(v: Var, x: Val) -> Self {
        PcoFormula::Neq(v, x)
    }

    /// Probability atom with a threshold; the threshold must lie in `[0, 1]`.
    pub fn pr(alpha: CoFormula, cmp: Cmp, threshold: Rational) -> Result<Self> {
        if threshold < Rational::zero() || threshold > Rational::one() {
            return Err(Error::RangeViolation(format!(
                "probability threshold {threshold} outside [0, 1]"
            )));
        }
        Ok(PcoFormula::ProbConst(alpha, cmp, threshold))
    }

    pub fn pr_ge(alpha: CoFormula, threshold: Rational) -> Result<Self> {
        PcoFormula::pr(alpha, Cmp::Ge, threshold)
    }

    pub fn pr_gt(alpha: CoFormula, threshold: Rational) -> Result<Self> {
        PcoFormula::pr(alpha, Cmp::Gt, threshold)
    }

    /// `Pr(alpha) <= e`, defined as `Pr(~alpha) >= 1 - e`.
    pub fn pr_le(alpha: CoFormula, threshold: Rational, sig: &Signature) -> Result<Self> {
        let e = check_unit(threshold)?;
        Ok(PcoFormula::ProbConst(
            alpha.not(sig),
            Cmp::Ge,
            Rational::one() - e,
        ))
    }

    /// `Pr(alpha) < e`, defined as `Pr(~alpha) > 1 - e`.
    pub fn pr_lt(alpha: CoFormula, threshold: Rational, sig: &Signature) -> Result<Self> {
        let e = check_unit(threshold)?;
        Ok(PcoFormula::ProbConst(
            alpha.not(sig),
            Cmp::Gt,
            Rational::one() - e,
        ))
    }

    /// `Pr(alpha) = e`, defined as `Pr(alpha) >= e & Pr(alpha) <= e`.
    pub fn pr_eq(alpha: CoFormula, threshold: Rational, sig: &Signature) -> Result<Self> {
        let ge = PcoFormula::pr_ge(alpha.clone(), threshold.clone())?;
        let le = PcoFormula::pr_le(alpha, threshold, sig)?;
        Ok(ge.and(le))
    }

    /// `Pr(alpha) != e`, defined as `Pr(alpha) > e || Pr(alpha) < e`.
    pub fn pr_ne(alpha: CoFormula, threshold: Rational, sig: &Signature) -> Result<Self> {
        let gt = PcoFormula::pr_gt(alpha.clone(), threshold.clone())?;
        let lt = PcoFormula::pr_lt(alpha, threshold, sig)?;
        Ok(gt.global_or(lt))
    }

    /// Comparison of two probabilities.
    pub fn pr_cmp_pr(alpha: CoFormula, cmp: Cmp, beta: CoFormula) -> Self {
        PcoFormula::ProbProb(alpha, cmp, beta)
    }

    /// Conditional probability against a constant:
    /// `Pr(alpha | gamma) cmp e`, defined as `gamma => Pr(alpha) cmp e`.
    pub fn pr_given(
        alpha: CoFormula,
        gamma: CoFormula,
        cmp: Cmp,
        threshold: Rational,
    ) -> Result<Self> {
        Ok(PcoFormula::sel_imp(
            gamma,
            PcoFormula::pr(alpha, cmp, threshold)?,
        ))
    }

    /// Conditional comparison of two probabilities under the same condition.
    pub fn pr_given_cmp_pr(alpha: CoFormula, cmp: Cmp, beta: CoFormula, gamma: CoFormula) -> Self {
        PcoFormula::sel_imp(gamma, PcoFormula::pr_cmp_pr(alpha, cmp, beta))
    }

    pub fn and(self, rhs: PcoFormula) -> Self {
        PcoFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn global_or(self, rhs: PcoFormula) -> Self {
        PcoFormula::GOr(Box::new(self), Box::new(rhs))
    }

    pub fn sel_imp(alpha: CoFormula, rhs: PcoFormula) -> Self {
        PcoFormula::SelImp(alpha, Box::new(rhs))
    }

    pub fn cf(spec: InterventionSpec, body: PcoFormula) -> Self {
        PcoFormula::Cf(spec, Box::new(body))
    }

    pub fn top(sig: &Signature) -> Self {
        PcoFormula::from(CoFormula::top(sig))
    }

    pub fn bot(sig: &Signature) -> Self {
        PcoFormula::from(CoFormula::bot(sig))
    }

    /// Material conditional, defined as `neg_c(self) || rhs`.
    pub fn arrow(&self, rhs: PcoFormula, sig: &Signature) -> Self {
        self.neg_c(sig).global_or(rhs)
    }

    /// Material biconditional.
    pub fn iff(&self, rhs: PcoFormula, sig: &Signature) -> Self {
        self.arrow(rhs.clone(), sig)
            .and(rhs.arrow(self.clone(), sig))
    }

    /// True exactly when the formula lies in the CO fragment.
    pub fn is_co(&self) -> bool {
        self.as_co().is_some()
    }

    /// Extracts the CO formula this one embeds, if any.
    pub fn as_co(&self) -> Option<CoFormula> {
        match self {
            PcoFormula::Eq(v, x) => Some(CoFormula::Eq(*v, *x)),
            PcoFormula::Neq(v, x) => Some(CoFormula::Neq(*v, *x)),
            PcoFormula::And(a, b) => Some(a.as_co()?.and(b.as_co()?)),
            PcoFormula::SelImp(alpha, b) => Some(alpha.clone().sel_imp(b.as_co()?)),
            PcoFormula::Cf(spec, body) => Some(CoFormula::cf(spec.clone(), body.as_co()?)),
            PcoFormula::ProbConst(..) | PcoFormula::ProbProb(..) | PcoFormula::GOr(..) => None,
        }
    }

    /// Weak contradictory negation. On nonempty models it holds exactly when
    /// the formula does not.
    pub fn neg_c(&self, sig: &Signature) -> PcoFormula {
        match self {
            // Literal fails somewhere: its probability is below one.
            PcoFormula::Eq(v, x) => pr_lt_unchecked(CoFormula::Eq(*v, *x), Rational::one(), sig),
            PcoFormula::Neq(v, x) => pr_lt_unchecked(CoFormula::Neq(*v, *x), Rational::one(), sig),
            PcoFormula::ProbConst(alpha, Cmp::Ge, e) => {
                pr_lt_unchecked(alpha.clone(), e.clone(), sig)
            }
            PcoFormula::ProbConst(alpha, Cmp::Gt, e) => {
                PcoFormula::ProbConst(alpha.clone().not(sig), Cmp::Ge, Rational::one() - e.clone())
            }
            PcoFormula::ProbProb(alpha, Cmp::Ge, beta) => {
                PcoFormula::ProbProb(beta.clone(), Cmp::Gt, alpha.clone())
            }
            PcoFormula::ProbProb(alpha, Cmp::Gt, beta) => {
                PcoFormula::ProbProb(beta.clone(), Cmp::Ge, alpha.clone())
            }
            PcoFormula::And(a, b) => a.neg_c(sig).global_or(b.neg_c(sig)),
            PcoFormula::GOr(a, b) => a.neg_c(sig).and(b.neg_c(sig)),
            PcoFormula::SelImp(alpha, b) => {
                let observable = PcoFormula::ProbConst(alpha.clone(), Cmp::Gt, Rational::zero());
                observable.and(PcoFormula::sel_imp(alpha.clone(), b.neg_c(sig)))
            }
            PcoFormula::Cf(spec, body) => PcoFormula::cf(spec.clone(), body.neg_c(sig)),
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            PcoFormula::Eq(v, x) | PcoFormula::Neq(v, x) => sig.check_pair(*v, *x),
            PcoFormula::ProbConst(alpha, _, e) => {
                alpha.check(sig)?;
                if *e < Rational::zero() || *e > Rational::one() {
                    return Err(Error::RangeViolation(format!(
                        "probability threshold {e} outside [0, 1]"
                    )));
                }
                Ok(())
            }
            PcoFormula::ProbProb(alpha, _, beta) => {
                alpha.check(sig)?;
                beta.check(sig)
            }
            PcoFormula::And(a, b) | PcoFormula::GOr(a, b) => {
                a.check(sig)?;
                b.check(sig)
            }
            PcoFormula::SelImp(alpha, b) => {
                alpha.check(sig)?;
                b.check(sig)
            }
            PcoFormula::Cf(spec, body) => {
                spec.check(sig)?;
                body.check(sig)
            }
        }
    }

    pub fn node_count(&self) -> u64 {
        match self {
            PcoFormula::Eq(..) | PcoFormula::Neq(..) => 1,
            PcoFormula::ProbConst(alpha, _, _) => 1 + alpha.node_count(),
            PcoFormula::ProbProb(alpha, _, beta) => 1 + alpha.node_count() + beta.node_count(),
            PcoFormula::And(a, b) | PcoFormula::GOr(a, b) => 1 + a.node_count() + b.node_count(),
            PcoFormula::SelImp(alpha, b) => 1 + alpha.node_count() + b.node_count(),
            PcoFormula::Cf(_, body) => 1 + body.node_count(),
        }
    }
}

fn check_unit(e: Rational) -> Result<Rational> {
    if e < Rational::zero() || e > Rational::one() {
        return Err(Error::RangeViolation(format!(
            "probability threshold {e} outside [0, 1]"
        )));
    }
    Ok(e)
}

/// `Pr(alpha) < e` expansion without the range re-check (used where `e` is
/// known to lie in `[0, 1]`).
fn pr_lt_unchecked(alpha: CoFormula, e: Rational, sig: &Signature) -> PcoFormula {
    PcoFormula::ProbConst(alpha.not(sig), Cmp::Gt, Rational::one() - e)
}

/// Checked tensor disjunction on PCO formulas; both operands must be CO.
pub fn pco_or(a: &PcoFormula, b: &PcoFormula, sig: &Signature) -> Result<PcoFormula> {
    match (a.as_co(), b.as_co()) {
        (Some(a), Some(b)) => Ok(PcoFormula::from(a.or(b, sig))),
        _ => Err(Error::NotCoFormula),
    }
}

/// Checked dual negation on PCO formulas; the operand must be CO.
pub fn pco_not(a: &PcoFormula, sig: &Signature) -> Result<PcoFormula> {
    match a.as_co() {
        Some(a) => Ok(PcoFormula::from(a.not(sig))),
        None => Err(Error::NotCoFormula),
    }
}

/// Checked biconditional on PCO formulas; both operands must be CO.
pub fn pco_equiv(a: &PcoFormula, b: &PcoFormula) -> Result<PcoFormula> {
    match (a.as_co(), b.as_co()) {
        (Some(a), Some(b)) => Ok(PcoFormula::from(a.equiv(b))),
        _ => Err(Error::NotCoFormula),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::binary(&["X", "Y"]).unwrap()
    }

    #[test]
    fn spec_consistency() {
        let s = sig();
        let x = s.var("X").unwrap();
        let v0 = s.value(x, "0").unwrap();
        let v1 = s.value(x, "1").unwrap();
        assert!(InterventionSpec::new(vec![(x, v0), (x, v0)]).is_consistent());
        let bad = InterventionSpec::new(vec![(x, v0), (x, v1)]);
        assert_eq!(bad.conflicting_var(), Some(x));
        assert!(InterventionSpec::new(vec![]).is_consistent());
    }

    #[test]
    fn override_keeps_outer_pairs_not_retargeted() {
        let s = Signature::binary(&["A", "B", "C"]).unwrap();
        let (a, b, c) = (
            s.var("A").unwrap(),
            s.var("B").unwrap(),
            s.var("C").unwrap(),
        );
        let zero = Val(0);
        let one = Val(1);
        let outer = InterventionSpec::new(vec![(a, zero), (b, zero)]);
        let inner = InterventionSpec::new(vec![(b, one), (c, one)]);
        let merged = outer.override_with(&inner);
        assert_eq!(merged.pairs(), &[(a, zero), (b, one), (c, one)]);
    }

    #[test]
    fn embedding_round_trips_through_as_co() {
        let s = sig();
        let x = s.var("X").unwrap();
        let y = s.var("Y").unwrap();
        let alpha = CoFormula::eq(x, Val(0))
            .and(CoFormula::neq(y, Val(1)))
            .sel_imp(CoFormula::cf(
                InterventionSpec::new(vec![(x, Val(1))]),
                CoFormula::eq(y, Val(0)),
            ));
        let embedded = PcoFormula::from(alpha.clone());
        assert!(embedded.is_co());
        assert_eq!(embedded.as_co().unwrap(), alpha);
        let probabilistic = PcoFormula::pr_ge(alpha, rat(1, 2)).unwrap();
        assert!(!probabilistic.is_co());
    }

    #[test]
    fn thresholds_outside_unit_interval_are_rejected() {
        let s = sig();
        let lit = CoFormula::eq(s.var("X").unwrap(), Val(0));
        assert!(PcoFormula::pr_ge(lit.clone(), rat(3, 2)).is_err());
        assert!(PcoFormula::pr_gt(lit.clone(), rat(-1, 2)).is_err());
        assert!(PcoFormula::pr_le(lit, rat(7, 6), &s).is_err());
    }

    #[test]
    fn neg_c_clauses_have_expected_shapes() {
        let s = sig();
        let x = s.var("X").unwrap();
        let lit = CoFormula::eq(x, Val(0));

        // (Pr(a) >= e)^C = Pr(a) < e, i.e. Pr(~a) > 1 - e.
        let atom = PcoFormula::pr_ge(lit.clone(), rat(1, 3)).unwrap();
        let neg = atom.neg_c(&s);
        assert_eq!(
            neg,
            PcoFormula::ProbConst(lit.clone().not(&s), Cmp::Gt, rat(2, 3))
        );

        // (Pr(a) >= Pr(b))^C swaps and strengthens.
        let beta = CoFormula::neq(x, Val(1));
        let cmp = PcoFormula::pr_cmp_pr(lit.clone(), Cmp::Ge, beta.clone());
        assert_eq!(
            cmp.neg_c(&s),
            PcoFormula::pr_cmp_pr(beta.clone(), Cmp::Gt, lit.clone())
        );

        // Conjunction flips to global disjunction.
        let both = PcoFormula::from(lit.clone()).and(PcoFormula::from(beta.clone()));
        match both.neg_c(&s) {
            PcoFormula::GOr(..) => {}
            other => panic!("expected GOr, got {other:?}"),
        }

        // Counterfactual pushes inside.
        let spec = InterventionSpec::new(vec![(x, Val(1))]);
        let cf = PcoFormula::cf(spec.clone(), PcoFormula::from(lit.clone()));
        match cf.neg_c(&s) {
            PcoFormula::Cf(sp, _) => assert_eq!(sp, spec),
            other => panic!("expected Cf, got {other:?}"),
        }

        // Selective implication gains the observability guard.
        let imp = PcoFormula::sel_imp(lit.clone(), PcoFormula::from(beta));
        match imp.neg_c(&s) {
            PcoFormula::And(guard, rest) => {
                assert_eq!(
                    *guard,
                    PcoFormula::ProbConst(lit.clone(), Cmp::Gt, Rational::zero())
                );
                assert!(matches!(*rest, PcoFormula::SelImp(..)));
            }
            other => panic!("expected guarded And, got {other:?}"),
        }
    }
}
