//! Signatures fix the variable order and each variable's finite value range.
//! Rows (assignments), law tables, and formulas all index into one signature.

use crate::error::{Error, Result};

/// A variable, identified by its position in the signature order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A value of some variable, identified by its position in that variable's range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Val(pub(crate) u32);

impl Val {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct VarDef {
    name: String,
    values: Vec<String>,
}

/// Ordered variables with finite, named value ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    vars: Vec<VarDef>,
}

impl Signature {
    /// Builds a signature from `(name, values)` pairs, kept in the given order.
    /// Names must be unique and nonempty; every range must be nonempty with
    /// unique value symbols.
    pub fn new<S: Into<String>>(vars: Vec<(S, Vec<S>)>) -> Result<Self> {
        let vars: Vec<VarDef> = vars
            .into_iter()
            .map(|(name, values)| VarDef {
                name: name.into(),
                values: values.into_iter().map(Into::into).collect(),
            })
            .collect();
        if vars.is_empty() {
            return Err(Error::InvalidSignature("no variables".into()));
        }
        if vars.len() > u32::MAX as usize {
            return Err(Error::InvalidSignature("too many variables".into()));
        }
        for def in &vars {
            if def.name.is_empty() {
                return Err(Error::InvalidSignature("empty variable name".into()));
            }
            if def.values.is_empty() {
                return Err(Error::InvalidSignature(format!(
                    "variable {} has an empty range",
                    def.name
                )));
            }
            for (k, v) in def.values.iter().enumerate() {
                if v.is_empty() {
                    return Err(Error::InvalidSignature(format!(
                        "variable {} has an empty value symbol",
                        def.name
                    )));
                }
                if def.values[..k].contains(v) {
                    return Err(Error::InvalidSignature(format!(
                        "variable {} lists value {} twice",
                        def.name, v
                    )));
                }
            }
        }
        for (k, def) in vars.iter().enumerate() {
            if vars[..k].iter().any(|d| d.name == def.name) {
                return Err(Error::InvalidSignature(format!(
                    "variable {} declared twice",
                    def.name
                )));
            }
        }
        Ok(Signature { vars })
    }

    /// Convenience: all variables binary with values `0` and `1`.
    pub fn binary(names: &[&str]) -> Result<Self> {
        Signature::new(names.iter().map(|n| (*n, vec!["0", "1"])).collect())
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.vars.len() as u32).map(Var)
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.vars
            .iter()
            .position(|d| d.name == name)
            .map(|i| Var(i as u32))
    }

    pub fn var_name(&self, v: Var) -> &str {
        &self.vars[v.index()].name
    }

    pub fn range_size(&self, v: Var) -> usize {
        self.vars[v.index()].values.len()
    }

    pub fn values(&self, v: Var) -> impl Iterator<Item = Val> {
        (0..self.range_size(v) as u32).map(Val)
    }

    pub fn value(&self, v: Var, name: &str) -> Option<Val> {
        self.vars[v.index()]
            .values
            .iter()
            .position(|s| s == name)
            .map(|i| Val(i as u32))
    }

    pub fn value_name(&self, v: Var, x: Val) -> &str {
        &self.vars[v.index()].values[x.index()]
    }

    /// All variables except `v`, in signature order.
    pub fn others(&self, v: Var) -> Vec<Var> {
        self.vars().filter(|&u| u != v).collect()
    }

    pub fn check_var(&self, v: Var) -> Result<()> {
        if v.index() < self.vars.len() {
            Ok(())
        } else {
            Err(Error::RangeViolation(format!(
                "variable index {} out of range",
                v.index()
            )))
        }
    }

    pub fn check_pair(&self, v: Var, x: Val) -> Result<()> {
        self.check_var(v)?;
        if x.index() < self.range_size(v) {
            Ok(())
        } else {
            Err(Error::RangeViolation(format!(
                "value index {} out of range for {}",
                x.index(),
                self.var_name(v)
            )))
        }
    }

    /// Number of full assignments over this signature.
    pub fn assignment_count(&self) -> u128 {
        self.vars
            .iter()
            .fold(1u128, |acc, d| acc.saturating_mul(d.values.len() as u128))
    }

    /// All assignments in ascending (lexicographic) order.
    pub fn assignments(&self) -> Assignments<'_> {
        Assignments {
            sig: self,
            next: Some(Assignment(vec![Val(0); self.vars.len()])),
        }
    }

    /// Builds an assignment from `(variable, value)` name pairs; every variable
    /// must appear exactly once.
    pub fn mk_assignment(&self, pairs: &[(&str, &str)]) -> Result<Assignment> {
        let mut vals: Vec<Option<Val>> = vec![None; self.vars.len()];
        for (vn, xn) in pairs {
            let v = self
                .var(vn)
                .ok_or_else(|| Error::RangeViolation(format!("unknown variable {vn}")))?;
            let x = self
                .value(v, xn)
                .ok_or_else(|| Error::RangeViolation(format!("unknown value {xn} for {vn}")))?;
            if vals[v.index()].replace(x).is_some() {
                return Err(Error::RangeViolation(format!("variable {vn} given twice")));
            }
        }
        let vals: Option<Vec<Val>> = vals.into_iter().collect();
        match vals {
            Some(vals) => Ok(Assignment(vals)),
            None => Err(Error::RangeViolation("assignment misses a variable".into())),
        }
    }

    /// Wraps raw values as an assignment after checking arity and ranges.
    pub fn assignment(&self, vals: Vec<Val>) -> Result<Assignment> {
        if vals.len() != self.vars.len() {
            return Err(Error::RangeViolation(format!(
                "assignment has {} values, signature has {} variables",
                vals.len(),
                self.vars.len()
            )));
        }
        for (i, &x) in vals.iter().enumerate() {
            self.check_pair(Var(i as u32), x)?;
        }
        Ok(Assignment(vals))
    }

    /// Number of law-table rows for `v`: the product of the other ranges.
    pub fn context_count(&self, v: Var) -> usize {
        self.others(v).iter().map(|&u| self.range_size(u)).product()
    }

    /// Table index of the values the row gives to the variables other than `v`.
    pub fn context_index(&self, v: Var, row: &Assignment) -> usize {
        let mut idx = 0;
        for &u in &self.others(v) {
            idx = idx * self.range_size(u) + row.get(u).index();
        }
        idx
    }

    /// Table index of an explicit context (values for `others(v)` in order).
    pub fn context_index_of(&self, v: Var, context: &[Val]) -> usize {
        let mut idx = 0;
        for (&u, &x) in self.others(v).iter().zip(context) {
            idx = idx * self.range_size(u) + x.index();
        }
        idx
    }

    /// Inverse of [`Signature::context_index_of`].
    pub fn context_values(&self, v: Var, mut idx: usize) -> Vec<Val> {
        let others = self.others(v);
        let mut out = vec![Val(0); others.len()];
        for (slot, &u) in others.iter().enumerate().rev() {
            let rs = self.range_size(u);
            out[slot] = Val((idx % rs) as u32);
            idx /= rs;
        }
        out
    }

    /// Human-readable row rendering for error messages.
    pub fn format_row(&self, row: &Assignment) -> String {
        self.vars()
            .map(|v| format!("{}={}", self.var_name(v), self.value_name(v, row.get(v))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One value per variable, in signature order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub(crate) Vec<Val>);

impl Assignment {
    pub fn get(&self, v: Var) -> Val {
        self.0[v.index()]
    }

    pub fn set(&mut self, v: Var, x: Val) {
        self.0[v.index()] = x;
    }

    pub fn values(&self) -> &[Val] {
        &self.0
    }
}

/// Iterator over all assignments of a signature in ascending order.
pub struct Assignments<'a> {
    sig: &'a Signature,
    next: Option<Assignment>,
}

impl Iterator for Assignments<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let current = self.next.take()?;
        // Odometer step: last variable runs fastest.
        let mut bumped = current.clone();
        let mut pos = self.sig.var_count();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            let v = Var(pos as u32);
            let x = bumped.get(v).index() + 1;
            if x < self.sig.range_size(v) {
                bumped.set(v, Val(x as u32));
                self.next = Some(bumped);
                break;
            }
            bumped.set(v, Val(0));
        }
        Some(current)
    }
}
