//! Structural laws: one total lookup table per endogenous variable, plus the
//! causal graph they induce.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::signature::{Assignment, Signature, Val, Var};

/// A total lookup table for one variable, indexed by the values of all other
/// variables (see [`Signature::context_index`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawTable {
    outputs: Vec<Val>,
}

impl LawTable {
    pub fn new(outputs: Vec<Val>) -> Self {
        LawTable { outputs }
    }

    /// Builds the table for `v` by evaluating `f` on every context
    /// (values for `others(v)` in signature order).
    pub fn from_fn(sig: &Signature, v: Var, f: impl Fn(&[Val]) -> Val) -> Self {
        let outputs = (0..sig.context_count(v))
            .map(|idx| f(&sig.context_values(v, idx)))
            .collect();
        LawTable { outputs }
    }

    pub fn output(&self, context_index: usize) -> Val {
        self.outputs[context_index]
    }

    pub fn outputs(&self) -> &[Val] {
        &self.outputs
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.outputs.windows(2).all(|w| w[0] == w[1])
    }
}

/// The laws of a model: a table for each endogenous variable. Variables
/// without a table are exogenous.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctionComponent {
    laws: BTreeMap<Var, LawTable>,
}

impl FunctionComponent {
    pub fn empty() -> Self {
        FunctionComponent::default()
    }

    pub fn from_laws<I: IntoIterator<Item = (Var, LawTable)>>(laws: I) -> Self {
        FunctionComponent {
            laws: laws.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, v: Var, table: LawTable) {
        self.laws.insert(v, table);
    }

    pub fn len(&self) -> usize {
        self.laws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.laws.is_empty()
    }

    pub fn endogenous(&self) -> impl Iterator<Item = Var> + '_ {
        self.laws.keys().copied()
    }

    pub fn is_endogenous(&self, v: Var) -> bool {
        self.laws.contains_key(&v)
    }

    pub fn law(&self, v: Var) -> Option<&LawTable> {
        self.laws.get(&v)
    }

    /// Value the law for `v` dictates on `row`, or `None` if `v` is exogenous.
    pub fn output_for(&self, sig: &Signature, v: Var, row: &Assignment) -> Option<Val> {
        self.laws
            .get(&v)
            .map(|t| t.output(sig.context_index(v, row)))
    }

    /// Drops the laws of the given variables, keeping the rest unchanged.
    pub fn restrict(&self, drop: &BTreeSet<Var>) -> FunctionComponent {
        FunctionComponent {
            laws: self
                .laws
                .iter()
                .filter(|(v, _)| !drop.contains(v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        }
    }

    /// Checks table arities and output ranges against the signature.
    pub fn check_shape(&self, sig: &Signature) -> Result<()> {
        for (&v, table) in &self.laws {
            sig.check_var(v)?;
            if table.len() != sig.context_count(v) {
                return Err(Error::RangeViolation(format!(
                    "law table for {} has {} entries, expected {}",
                    sig.var_name(v),
                    table.len(),
                    sig.context_count(v)
                )));
            }
            for &out in table.outputs() {
                sig.check_pair(v, out)?;
            }
        }
        Ok(())
    }

    /// Rejects constant tables.
    pub fn check_non_constant(&self, sig: &Signature) -> Result<()> {
        for (&v, table) in &self.laws {
            if table.is_constant() {
                return Err(Error::ConstantFunction(sig.var_name(v).to_string()));
            }
        }
        Ok(())
    }

    /// Variables the law for `v` actually depends on (non-dummy arguments).
    pub fn parents(&self, sig: &Signature, v: Var) -> Result<BTreeSet<Var>> {
        let table = self
            .laws
            .get(&v)
            .ok_or_else(|| Error::NotEndogenous(sig.var_name(v).to_string()))?;
        let others = sig.others(v);
        let mut parents = BTreeSet::new();
        for (pos, &u) in others.iter().enumerate() {
            'search: for idx in 0..table.len() {
                let ctx = sig.context_values(v, idx);
                if ctx[pos].index() != 0 {
                    continue;
                }
                let base = table.output(idx);
                let mut probe = ctx;
                for alt in 1..sig.range_size(u) {
                    probe[pos] = Val(alt as u32);
                    if table.output(sig.context_index_of(v, &probe)) != base {
                        parents.insert(u);
                        break 'search;
                    }
                }
            }
        }
        Ok(parents)
    }

    /// Graph over all variables with an edge `parent -> child` for every
    /// non-dummy argument of every law.
    pub fn causal_graph(&self, sig: &Signature) -> Result<CausalGraph> {
        let mut edges = BTreeSet::new();
        for v in self.endogenous() {
            for p in self.parents(sig, v)? {
                edges.insert((p, v));
            }
        }
        Ok(CausalGraph {
            var_count: sig.var_count(),
            edges,
        })
    }

    /// Topological order of all variables, or `CyclicLaws`.
    pub fn topo_order(&self, sig: &Signature) -> Result<Vec<Var>> {
        self.causal_graph(sig)?.topo_order().map_err(|cycle| {
            Error::CyclicLaws(cycle.iter().map(|&v| sig.var_name(v).to_string()).collect())
        })
    }
}

/// A directed graph over the variables of a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalGraph {
    var_count: usize,
    edges: BTreeSet<(Var, Var)>,
}

impl CausalGraph {
    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn edges(&self) -> impl Iterator<Item = (Var, Var)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, from: Var, to: Var) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn parents_of(&self, v: Var) -> impl Iterator<Item = Var> + '_ {
        self.edges
            .iter()
            .filter(move |&&(_, to)| to == v)
            .map(|&(from, _)| from)
    }

    pub fn children_of(&self, v: Var) -> impl Iterator<Item = Var> + '_ {
        self.edges
            .range((v, Var(0))..=(v, Var(u32::MAX)))
            .map(|&(_, to)| to)
    }

    /// Kahn's algorithm, smallest ready vertex first. `Err` carries one cycle.
    pub fn topo_order(&self) -> std::result::Result<Vec<Var>, Vec<Var>> {
        let n = self.var_count;
        let mut indegree = vec![0usize; n];
        for &(_, to) in &self.edges {
            indegree[to.index()] += 1;
        }
        let mut ready: BTreeSet<Var> = (0..n as u32)
            .map(Var)
            .filter(|v| indegree[v.index()] == 0)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for child in self.children_of(v) {
                indegree[child.index()] -= 1;
                if indegree[child.index()] == 0 {
                    ready.insert(child);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Walk incoming edges among the unfinished vertices until one repeats.
        let stuck: BTreeSet<Var> = (0..n as u32)
            .map(Var)
            .filter(|v| indegree[v.index()] > 0)
            .collect();
        let mut path = vec![*stuck.iter().next().expect("nonempty when cyclic")];
        loop {
            let head = *path.last().unwrap();
            let pred = self
                .parents_of(head)
                .find(|p| stuck.contains(p))
                .expect("stuck vertices keep a stuck predecessor");
            if let Some(pos) = path.iter().position(|&v| v == pred) {
                let mut cycle: Vec<Var> = path[pos..].to_vec();
                cycle.reverse();
                return Err(cycle);
            }
            path.push(pred);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig3() -> Signature {
        Signature::binary(&["A", "B", "C"]).unwrap()
    }

    #[test]
    fn parents_match_pairwise_brute_force() {
        // Independent oracle: u is a parent iff two contexts differing only at
        // u give different outputs, found by scanning all context pairs.
        let sig = Signature::new(vec![
            ("A", vec!["0", "1", "2"]),
            ("B", vec!["0", "1"]),
            ("C", vec!["0", "1", "2"]),
        ])
        .unwrap();
        let b = sig.var("B").unwrap();
        let ctxs = sig.context_count(b);
        let mut table_id = 0u64;
        // Sample a deterministic spread of tables over the 2^9-style space.
        while table_id < 2u64.pow(ctxs as u32) {
            let outputs: Vec<Val> = (0..ctxs)
                .map(|i| Val(((table_id >> i) & 1) as u32))
                .collect();
            let laws = FunctionComponent::from_laws(vec![(b, LawTable::new(outputs.clone()))]);
            let fast = laws.parents(&sig, b).unwrap();
            let mut slow = BTreeSet::new();
            let others = sig.others(b);
            for i in 0..ctxs {
                for j in 0..ctxs {
                    if outputs[i] == outputs[j] {
                        continue;
                    }
                    let ci = sig.context_values(b, i);
                    let cj = sig.context_values(b, j);
                    let diff: Vec<usize> = (0..ci.len()).filter(|&k| ci[k] != cj[k]).collect();
                    if let [only] = diff[..] {
                        slow.insert(others[only]);
                    }
                }
            }
            assert_eq!(fast, slow, "table {table_id}");
            table_id += 7; // coprime stride covers varied tables
        }
    }

    #[test]
    fn topo_order_and_cycles() {
        let sig = sig3();
        let (a, b, c) = (
            sig.var("A").unwrap(),
            sig.var("B").unwrap(),
            sig.var("C").unwrap(),
        );
        // B copies A (C dummy), C copies B (A dummy): A -> B -> C.
        let tb = LawTable::from_fn(&sig, b, |ctx| ctx[0]);
        let tc = LawTable::from_fn(&sig, c, |ctx| ctx[1]);
        let laws = FunctionComponent::from_laws(vec![(b, tb.clone()), (c, tc)]);
        assert_eq!(laws.parents(&sig, b).unwrap(), BTreeSet::from([a]));
        assert_eq!(laws.parents(&sig, c).unwrap(), BTreeSet::from([b]));
        assert_eq!(laws.topo_order(&sig).unwrap(), vec![a, b, c]);

        // B copies C, C copies B: cycle.
        let tb2 = LawTable::from_fn(&sig, b, |ctx| ctx[1]);
        let tc2 = LawTable::from_fn(&sig, c, |ctx| ctx[1]);
        let cyclic = FunctionComponent::from_laws(vec![(b, tb2), (c, tc2)]);
        match cyclic.topo_order(&sig) {
            Err(Error::CyclicLaws(cycle)) => {
                assert!(cycle.contains(&"B".to_string()) && cycle.contains(&"C".to_string()));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn exogenous_has_no_parents_entry() {
        let sig = sig3();
        let a = sig.var("A").unwrap();
        let laws = FunctionComponent::empty();
        assert!(matches!(
            laws.parents(&sig, a),
            Err(Error::NotEndogenous(_))
        ));
    }
}
