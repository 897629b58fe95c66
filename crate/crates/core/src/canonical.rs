//! Atomic descriptions (rational weights on full assignments plus laws) and
//! the construction that realizes them as a model with integer row counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::derived::tuple_eq_co;
use crate::error::{Error, Result};
use crate::formula::{CoFormula, Rational};
use crate::laws::FunctionComponent;
use crate::model::CausalMultiteam;
use crate::semantics::eval_co_at;
use crate::signature::{Assignment, Signature};
use crate::team::Multiteam;

/// A probability distribution over full assignments together with laws for
/// the endogenous variables. Weights are exact rationals in [0, 1] summing
/// to 1; zero-weight assignments are dropped, and every kept assignment must
/// satisfy the laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicDescription {
    sig: Signature,
    laws: FunctionComponent,
    weights: BTreeMap<Assignment, Rational>,
}

impl AtomicDescription {
    pub fn new<I>(sig: Signature, laws: FunctionComponent, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Assignment, Rational)>,
    {
        laws.check_shape(&sig)?;
        laws.check_non_constant(&sig)?;
        laws.topo_order(&sig)?;

        let mut kept: BTreeMap<Assignment, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (row, w) in weights {
            check_full_row(&sig, &row)?;
            if w.is_negative() {
                return Err(Error::WeightsNotNormalized(format!(
                    "negative weight {} for row {}",
                    w,
                    sig.format_row(&row)
                )));
            }
            total += &w;
            if w.is_zero() {
                continue;
            }
            *kept.entry(row).or_insert_with(Rational::zero) += w;
        }
        if !total.is_one() {
            return Err(Error::WeightsNotNormalized(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        for row in kept.keys() {
            check_supported_row(&sig, &laws, row)?;
        }
        Ok(AtomicDescription {
            sig,
            laws,
            weights: kept,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn laws(&self) -> &FunctionComponent {
        &self.laws
    }

    pub fn weights(&self) -> impl Iterator<Item = (&Assignment, &Rational)> {
        self.weights.iter()
    }

    /// Weight of one assignment; zero when absent.
    pub fn weight(&self, row: &Assignment) -> Rational {
        self.weights
            .get(row)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Least common denominator of the (reduced) weights.
    pub fn denominator(&self) -> BigInt {
        self.weights
            .values()
            .fold(BigInt::one(), |d, w| d.lcm(w.denom()))
    }
}

fn check_full_row(sig: &Signature, row: &Assignment) -> Result<()> {
    if row.values().len() != sig.var_count() {
        return Err(Error::SignatureMismatch);
    }
    for v in sig.vars() {
        sig.check_pair(v, row.get(v))?;
    }
    Ok(())
}

fn check_supported_row(sig: &Signature, laws: &FunctionComponent, row: &Assignment) -> Result<()> {
    for v in laws.endogenous() {
        let expected = laws.output_for(sig, v, row).expect("endogenous law");
        if expected != row.get(v) {
            return Err(Error::SupportIncompatible(format!(
                "row {} sets {} = {} but the law yields {}",
                sig.format_row(row),
                sig.var_name(v),
                sig.value_name(v, row.get(v)),
                sig.value_name(v, expected)
            )));
        }
    }
    Ok(())
}

/// Realizes a description as a model: with d the least common denominator,
/// each assignment of weight ε gets ε·d rows.
pub fn build_canonical(desc: &AtomicDescription) -> Result<CausalMultiteam> {
    let d = desc.denominator();
    let mut team = Multiteam::empty();
    for (row, w) in desc.weights() {
        let m = (w * Rational::from_integer(d.clone())).to_integer();
        let count = m.to_u64().ok_or_else(|| {
            Error::CountOverflow(format!(
                "multiplicity {m} for row {} exceeds the 64-bit row-count limit",
                desc.sig().format_row(row)
            ))
        })?;
        team.add(row.clone(), count);
    }
    CausalMultiteam::new(desc.sig().clone(), desc.laws().clone(), team)
}

/// Reads a description back off a nonempty model: each distinct row gets its
/// multiplicity divided by the total count. Rebuilding yields the original
/// model with multiplicities divided by their greatest common divisor.
pub fn extract_description(model: &CausalMultiteam) -> Result<AtomicDescription> {
    if model.is_empty() {
        return Err(Error::EmptyModel);
    }
    let total = BigInt::from(model.total());
    let weights = model.team().iter().map(|(row, count)| {
        (
            row.clone(),
            Rational::new(BigInt::from(count), total.clone()),
        )
    });
    AtomicDescription::new(model.sig().clone(), model.laws().clone(), weights)
}

/// Outcome of one item of [`check_canonical_properties`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    NotApplicable,
}

impl CheckStatus {
    pub fn passed(&self) -> bool {
        !matches!(self, CheckStatus::Fail(_))
    }
}

/// Per-item report of the distribution properties a model realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalReport {
    /// Every row satisfies the laws.
    pub compatibility: CheckStatus,
    /// The parent graph is acyclic.
    pub acyclicity: CheckStatus,
    /// The extracted weights sum to 1.
    pub weights_total: CheckStatus,
    /// The row count equals the least common denominator of the weights.
    pub row_count_is_denominator: CheckStatus,
    /// The probability of each full-assignment formula equals its weight.
    pub atom_probabilities: CheckStatus,
    /// Each supplied event's probability is the sum of its rows' weights.
    pub event_probabilities: CheckStatus,
}

impl CanonicalReport {
    pub fn all_pass(&self) -> bool {
        self.items().iter().all(|(_, s)| s.passed())
    }

    pub fn items(&self) -> [(&'static str, &CheckStatus); 6] {
        [
            ("compatibility", &self.compatibility),
            ("acyclicity", &self.acyclicity),
            ("weights-total", &self.weights_total),
            ("row-count-is-denominator", &self.row_count_is_denominator),
            ("atom-probabilities", &self.atom_probabilities),
            ("event-probabilities", &self.event_probabilities),
        ]
    }
}

/// Recomputes, independently of the constructors, the properties that a
/// model built from a description must have. On an empty model the
/// weight-based items are not applicable. `betas` supplies the events for
/// the final item.
pub fn check_canonical_properties(model: &CausalMultiteam, betas: &[CoFormula]) -> CanonicalReport {
    let sig = model.sig();
    let laws = model.laws();

    let compatibility = check_compatibility(model);
    let acyclicity = match laws.topo_order(sig) {
        Ok(_) => CheckStatus::Pass,
        Err(e) => CheckStatus::Fail(e.to_string()),
    };

    if model.is_empty() {
        return CanonicalReport {
            compatibility,
            acyclicity,
            weights_total: CheckStatus::NotApplicable,
            row_count_is_denominator: CheckStatus::NotApplicable,
            atom_probabilities: CheckStatus::NotApplicable,
            event_probabilities: CheckStatus::NotApplicable,
        };
    }

    let total = BigInt::from(model.total());
    let weights: Vec<(Assignment, Rational)> = model
        .team()
        .iter()
        .map(|(row, count)| {
            (
                row.clone(),
                Rational::new(BigInt::from(count), total.clone()),
            )
        })
        .collect();

    let sum: Rational = weights.iter().map(|(_, w)| w.clone()).sum();
    let weights_total = if sum.is_one() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(format!("weights sum to {sum}, expected 1"))
    };

    let d = weights
        .iter()
        .fold(BigInt::one(), |d, (_, w)| d.lcm(w.denom()));
    let row_count_is_denominator = if total == d {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(format!(
            "total row count {total} differs from least common denominator {d}"
        ))
    };

    let mut atom_probabilities = CheckStatus::Pass;
    for (row, w) in &weights {
        let pairs: Vec<_> = sig.vars().map(|v| (v, row.get(v))).collect();
        let alpha_hat = tuple_eq_co(sig, &pairs);
        let p = model.prob(&alpha_hat).expect("full-assignment formula");
        if p != *w {
            atom_probabilities = CheckStatus::Fail(format!(
                "row {} has probability {p}, expected {w}",
                sig.format_row(row)
            ));
            break;
        }
    }

    let mut event_probabilities = CheckStatus::Pass;
    for beta in betas {
        let p = match model.prob(beta) {
            Ok(p) => p,
            Err(e) => {
                event_probabilities = CheckStatus::Fail(e.to_string());
                break;
            }
        };
        let expected: Rational = weights
            .iter()
            .filter(|(row, _)| eval_co_at(model, row, beta))
            .map(|(_, w)| w.clone())
            .sum();
        if p != expected {
            event_probabilities = CheckStatus::Fail(format!(
                "event probability {p} differs from weight sum {expected}"
            ));
            break;
        }
    }

    CanonicalReport {
        compatibility,
        acyclicity,
        weights_total,
        row_count_is_denominator,
        atom_probabilities,
        event_probabilities,
    }
}

fn check_compatibility(model: &CausalMultiteam) -> CheckStatus {
    let sig = model.sig();
    let laws = model.laws();
    for row in model.team().support() {
        for v in laws.endogenous() {
            let expected = laws.output_for(sig, v, row).expect("endogenous law");
            if expected != row.get(v) {
                return CheckStatus::Fail(format!(
                    "row {} sets {} = {} but the law yields {}",
                    sig.format_row(row),
                    sig.var_name(v),
                    sig.value_name(v, row.get(v)),
                    sig.value_name(v, expected)
                ));
            }
        }
    }
    CheckStatus::Pass
}
