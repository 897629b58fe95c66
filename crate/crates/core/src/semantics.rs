//! Evaluation of CO and PCO formulas on causal multiteams, with exact
//! rational probabilities.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formula::{CoFormula, PcoFormula, Rational};
use crate::model::CausalMultiteam;
use crate::signature::Assignment;
use crate::team::Multiteam;

/// Evaluates a CO formula at a single assignment, using the model's laws for
/// counterfactuals. `row` must be compatible with those laws.
///
/// Counterfactuals are evaluated by intervening on a one-row model; there is
/// no separate single-assignment recursion.
pub fn eval_co_at(model: &CausalMultiteam, row: &Assignment, alpha: &CoFormula) -> bool {
    match alpha {
        CoFormula::Eq(v, x) => row.get(*v) == *x,
        CoFormula::Neq(v, x) => row.get(*v) != *x,
        CoFormula::And(a, b) => eval_co_at(model, row, a) && eval_co_at(model, row, b),
        CoFormula::SelImp(a, b) => !eval_co_at(model, row, a) || eval_co_at(model, row, b),
        CoFormula::Cf(spec, body) => {
            if !spec.is_consistent() {
                return true;
            }
            let single = CausalMultiteam::from_parts_unchecked(
                model.sig().clone(),
                model.laws().clone(),
                Multiteam::from_rows([(row.clone(), 1)]),
            );
            let after = single
                .intervene(spec)
                .expect("spec is consistent and checked");
            let (image, _) = after
                .team()
                .iter()
                .next()
                .expect("a one-row model intervenes to a one-row model");
            eval_co_at(&after, image, body)
        }
    }
}

impl CausalMultiteam {
    /// Team-level truth of a CO formula. CO is flat, so this holds exactly
    /// when every row satisfies the formula; the empty model satisfies
    /// everything.
    pub fn eval_co(&self, alpha: &CoFormula) -> Result<bool> {
        alpha.check(self.sig())?;
        Ok(self.eval_co_unchecked(alpha))
    }

    pub(crate) fn eval_co_unchecked(&self, alpha: &CoFormula) -> bool {
        self.team()
            .support()
            .all(|row| eval_co_at(self, row, alpha))
    }

    /// Exact probability of a CO formula: the multiplicity mass of the rows
    /// satisfying it over the total. Undefined on the empty model.
    pub fn prob(&self, alpha: &CoFormula) -> Result<Rational> {
        alpha.check(self.sig())?;
        if self.is_empty() {
            return Err(Error::EmptyModel);
        }
        Ok(self.prob_unchecked(alpha))
    }

    pub(crate) fn prob_unchecked(&self, alpha: &CoFormula) -> Rational {
        let mut hits: u64 = 0;
        for (row, count) in self.team().iter() {
            if eval_co_at(self, row, alpha) {
                hits += count;
            }
        }
        Rational::new(BigInt::from(hits), BigInt::from(self.total()))
    }

    /// Team-level truth of a PCO formula.
    pub fn eval_pco(&self, phi: &PcoFormula) -> Result<bool> {
        phi.check(self.sig())?;
        Ok(self.eval_pco_unchecked(phi))
    }

    pub(crate) fn eval_pco_unchecked(&self, phi: &PcoFormula) -> bool {
        match phi {
            PcoFormula::Eq(v, x) => self.eval_co_unchecked(&CoFormula::Eq(*v, *x)),
            PcoFormula::Neq(v, x) => self.eval_co_unchecked(&CoFormula::Neq(*v, *x)),
            // Probability atoms hold vacuously on the empty model.
            PcoFormula::ProbConst(alpha, cmp, e) => {
                self.is_empty() || cmp.holds(&self.prob_unchecked(alpha), e)
            }
            PcoFormula::ProbProb(alpha, cmp, beta) => {
                self.is_empty()
                    || cmp.holds(&self.prob_unchecked(alpha), &self.prob_unchecked(beta))
            }
            PcoFormula::And(a, b) => self.eval_pco_unchecked(a) && self.eval_pco_unchecked(b),
            PcoFormula::GOr(a, b) => self.eval_pco_unchecked(a) || self.eval_pco_unchecked(b),
            PcoFormula::SelImp(alpha, rest) => self
                .observe(alpha)
                .expect("formula was checked")
                .eval_pco_unchecked(rest),
            PcoFormula::Cf(spec, rest) => {
                if !spec.is_consistent() {
                    return true;
                }
                self.intervene(spec)
                    .expect("spec is consistent and checked")
                    .eval_pco_unchecked(rest)
            }
        }
    }

    /// Probability of `alpha` conditional on `gamma`; `None` when no row
    /// satisfies `gamma`.
    pub fn cond_prob(&self, alpha: &CoFormula, gamma: &CoFormula) -> Result<Option<Rational>> {
        alpha.check(self.sig())?;
        let selected = self.observe(gamma)?;
        if selected.is_empty() {
            return Ok(None);
        }
        Ok(Some(selected.prob_unchecked(alpha)))
    }
}
