//! Causal multiteams: a team of assignments plus a validated function
//! component over a shared signature, with the two dynamic operations
//! (observation and intervention).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::{CoFormula, InterventionSpec};
use crate::laws::{CausalGraph, FunctionComponent};
use crate::semantics::eval_co_at;
use crate::signature::{Assignment, Signature, Var};
use crate::team::Multiteam;

/// A multiteam whose rows are compatible with a non-constant, acyclic set of
/// structural laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalMultiteam {
    sig: Signature,
    laws: FunctionComponent,
    team: Multiteam,
}

impl CausalMultiteam {
    /// Validates and assembles a model. Laws must be total lookup tables of
    /// the right shape, non-constant, and acyclic; every row must lie in
    /// range and agree with each law.
    pub fn new(sig: Signature, laws: FunctionComponent, team: Multiteam) -> Result<Self> {
        laws.check_shape(&sig)?;
        laws.check_non_constant(&sig)?;
        laws.topo_order(&sig)?;
        for (row, _) in team.iter() {
            check_row(&sig, &laws, row)?;
        }
        Ok(CausalMultiteam { sig, laws, team })
    }

    /// Assembles a model whose invariants are guaranteed by the caller
    /// (results of observe/intervene, enumerated models).
    pub(crate) fn from_parts_unchecked(
        sig: Signature,
        laws: FunctionComponent,
        team: Multiteam,
    ) -> Self {
        debug_assert!(
            team.iter()
                .all(|(row, _)| check_row(&sig, &laws, row).is_ok()),
            "caller promised compatible in-range rows"
        );
        CausalMultiteam { sig, laws, team }
    }

    /// Test-only assembly that skips validation, for fault injection.
    #[cfg(test)]
    pub(crate) fn from_parts_unvalidated(
        sig: Signature,
        laws: FunctionComponent,
        team: Multiteam,
    ) -> Self {
        CausalMultiteam { sig, laws, team }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn laws(&self) -> &FunctionComponent {
        &self.laws
    }

    pub fn team(&self) -> &Multiteam {
        &self.team
    }

    pub fn is_empty(&self) -> bool {
        self.team.is_empty()
    }

    /// Total row count, multiplicities included.
    pub fn total(&self) -> u64 {
        self.team.total()
    }

    pub fn endogenous(&self) -> BTreeSet<Var> {
        self.laws.endogenous().collect()
    }

    pub fn exogenous(&self) -> BTreeSet<Var> {
        self.sig
            .vars()
            .filter(|&v| !self.laws.is_endogenous(v))
            .collect()
    }

    /// The parent graph of the laws (edges from non-dummy arguments).
    pub fn causal_graph(&self) -> CausalGraph {
        self.laws
            .causal_graph(&self.sig)
            .expect("laws were validated at construction")
    }

    /// Keeps exactly the rows satisfying `alpha`, laws unchanged.
    pub fn observe(&self, alpha: &CoFormula) -> Result<CausalMultiteam> {
        alpha.check(&self.sig)?;
        let mut rows = Multiteam::empty();
        for (row, count) in self.team.iter() {
            if eval_co_at(self, row, alpha) {
                rows.add(row.clone(), count);
            }
        }
        Ok(CausalMultiteam {
            sig: self.sig.clone(),
            laws: self.laws.clone(),
            team: rows,
        })
    }

    /// Applies `do(spec)`: drops the laws of the targeted variables,
    /// overwrites their columns, and recomputes the remaining endogenous
    /// variables in topological order. Rows that collide merge their
    /// multiplicities.
    pub fn intervene(&self, spec: &InterventionSpec) -> Result<CausalMultiteam> {
        spec.check(&self.sig)?;
        if let Some(v) = spec.conflicting_var() {
            return Err(Error::InconsistentIntervention(
                self.sig.var_name(v).to_string(),
            ));
        }
        let targeted = spec.vars();
        let laws = self.laws.restrict(&targeted);
        let order = laws
            .topo_order(&self.sig)
            .expect("restriction preserves acyclicity");

        let mut team = Multiteam::empty();
        for (row, count) in self.team.iter() {
            let mut s = row.clone();
            for &(v, x) in spec.pairs() {
                s.set(v, x);
            }
            // Exogenous values stay; endogenous ones are recomputed after all
            // their parents (targeted, exogenous, or earlier endogenous) are
            // final.
            for &v in &order {
                if laws.is_endogenous(v) {
                    let out = laws
                        .output_for(&self.sig, v, &s)
                        .expect("endogenous variables have laws");
                    s.set(v, out);
                }
            }
            team.add(s, count);
        }
        Ok(CausalMultiteam::from_parts_unchecked(
            self.sig.clone(),
            laws,
            team,
        ))
    }

    /// Multiplicity-wise row inclusion with identical laws.
    pub fn is_sub_multiteam_of(&self, other: &CausalMultiteam) -> Result<bool> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(self.laws == other.laws && self.team.is_sub_of(&other.team))
    }
}

fn check_row(sig: &Signature, laws: &FunctionComponent, row: &Assignment) -> Result<()> {
    if row.values().len() != sig.var_count() {
        return Err(Error::SignatureMismatch);
    }
    for v in sig.vars() {
        let x = row.get(v);
        if x.index() >= sig.range_size(v) {
            return Err(Error::RangeViolation(format!(
                "row assigns {} a value index {} outside its range of size {}",
                sig.var_name(v),
                x.index(),
                sig.range_size(v)
            )));
        }
    }
    for v in laws.endogenous() {
        let expected = laws
            .output_for(sig, v, row)
            .expect("endogenous variables have laws");
        let found = row.get(v);
        if expected != found {
            return Err(Error::CompatibilityViolation {
                var: sig.var_name(v).to_string(),
                row: sig.format_row(row),
                expected: sig.value_name(v, expected).to_string(),
                found: sig.value_name(v, found).to_string(),
            });
        }
    }
    Ok(())
}
