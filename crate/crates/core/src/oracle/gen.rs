//! Seeded random generation of formulas, rationals, and intervention
//! targets, used to instantiate axiom schemas and property suites.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{rat, Cmp, CoFormula, InterventionSpec, PcoFormula, Rational};
use crate::signature::{Signature, Val, Var};

/// How many instances to draw and from what distribution: formula depth and
/// threshold denominators stay small so countermodel search stays readable.
#[derive(Clone, Debug)]
pub struct SampleBudget {
    pub samples: usize,
    pub seed: u64,
    pub depth: usize,
    pub max_denominator: u32,
}

impl SampleBudget {
    pub fn new(samples: usize, seed: u64) -> Self {
        SampleBudget {
            samples,
            seed,
            depth: 4,
            max_denominator: 6,
        }
    }
}

/// Deterministic source of random formulas over one signature.
pub struct FormulaPool {
    sig: Signature,
    rng: ChaCha8Rng,
    depth: usize,
    max_denominator: u32,
}

impl FormulaPool {
    pub fn new(sig: &Signature, budget: &SampleBudget) -> Self {
        FormulaPool {
            sig: sig.clone(),
            rng: ChaCha8Rng::seed_from_u64(budget.seed),
            depth: budget.depth,
            max_denominator: budget.max_denominator,
        }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn var(&mut self) -> Var {
        let i = self.rng.gen_range(0..self.sig.var_count());
        Var(i as u32)
    }

    pub fn val(&mut self, v: Var) -> Val {
        let i = self.rng.gen_range(0..self.sig.range_size(v));
        Val(i as u32)
    }

    pub fn cmp(&mut self) -> Cmp {
        if self.rng.gen_bool(0.5) {
            Cmp::Ge
        } else {
            Cmp::Gt
        }
    }

    pub fn literal_co(&mut self) -> CoFormula {
        let v = self.var();
        let x = self.val(v);
        if self.rng.gen_bool(0.5) {
            CoFormula::eq(v, x)
        } else {
            CoFormula::neq(v, x)
        }
    }

    /// Random CO formula up to the default depth.
    pub fn co(&mut self) -> CoFormula {
        self.co_depth(self.depth)
    }

    pub fn co_depth(&mut self, depth: usize) -> CoFormula {
        if depth == 0 {
            return self.literal_co();
        }
        match self.rng.gen_range(0..10u8) {
            0 | 1 => self.literal_co(),
            2 | 3 => self.co_depth(depth - 1).and(self.co_depth(depth - 1)),
            4 | 5 => self.co_depth(depth - 1).sel_imp(self.co_depth(depth - 1)),
            6 | 7 => {
                let spec = self.spec(2);
                CoFormula::cf(spec, self.co_depth(depth - 1))
            }
            8 => {
                let sig = self.sig.clone();
                self.co_depth(depth - 1).or(self.co_depth(depth - 1), &sig)
            }
            _ => {
                let sig = self.sig.clone();
                self.co_depth(depth - 1).not(&sig)
            }
        }
    }

    /// Random CO formula with no counterfactual anywhere, including the
    /// expansions of the defined operators.
    pub fn co_plain(&mut self) -> CoFormula {
        self.co_plain_depth(self.depth)
    }

    pub fn co_plain_depth(&mut self, depth: usize) -> CoFormula {
        if depth == 0 {
            return self.literal_co();
        }
        match self.rng.gen_range(0..6u8) {
            0 | 1 => self.literal_co(),
            2 | 3 => self
                .co_plain_depth(depth - 1)
                .and(self.co_plain_depth(depth - 1)),
            _ => self
                .co_plain_depth(depth - 1)
                .sel_imp(self.co_plain_depth(depth - 1)),
        }
    }

    /// Random PCO formula up to the default depth.
    pub fn pco(&mut self) -> PcoFormula {
        self.pco_depth(self.depth)
    }

    pub fn pco_depth(&mut self, depth: usize) -> PcoFormula {
        if depth == 0 {
            return PcoFormula::from(self.literal_co());
        }
        match self.rng.gen_range(0..12u8) {
            0 => PcoFormula::from(self.literal_co()),
            1 | 2 => {
                let alpha = self.co_depth(depth - 1);
                let cmp = self.cmp();
                let e = self.rational();
                PcoFormula::pr(alpha, cmp, e).expect("threshold in range")
            }
            3 => {
                let alpha = self.co_depth(depth - 1);
                let beta = self.co_depth(depth - 1);
                let cmp = self.cmp();
                PcoFormula::pr_cmp_pr(alpha, cmp, beta)
            }
            4 | 5 => self.pco_depth(depth - 1).and(self.pco_depth(depth - 1)),
            6 | 7 => self
                .pco_depth(depth - 1)
                .global_or(self.pco_depth(depth - 1)),
            8 | 9 => {
                let alpha = self.co_depth(depth - 1);
                PcoFormula::sel_imp(alpha, self.pco_depth(depth - 1))
            }
            _ => {
                let spec = self.spec(2);
                PcoFormula::cf(spec, self.pco_depth(depth - 1))
            }
        }
    }

    /// Random PCO formula with no counterfactual anywhere, including inside
    /// probability arguments.
    pub fn pco_plain(&mut self) -> PcoFormula {
        self.pco_plain_depth(self.depth)
    }

    pub fn pco_plain_depth(&mut self, depth: usize) -> PcoFormula {
        if depth == 0 {
            return PcoFormula::from(self.literal_co());
        }
        match self.rng.gen_range(0..10u8) {
            0 => PcoFormula::from(self.literal_co()),
            1 | 2 => {
                let alpha = self.co_plain_depth(depth - 1);
                let cmp = self.cmp();
                let e = self.rational();
                PcoFormula::pr(alpha, cmp, e).expect("threshold in range")
            }
            3 => {
                let alpha = self.co_plain_depth(depth - 1);
                let beta = self.co_plain_depth(depth - 1);
                let cmp = self.cmp();
                PcoFormula::pr_cmp_pr(alpha, cmp, beta)
            }
            4 | 5 => self
                .pco_plain_depth(depth - 1)
                .and(self.pco_plain_depth(depth - 1)),
            6 | 7 => self
                .pco_plain_depth(depth - 1)
                .global_or(self.pco_plain_depth(depth - 1)),
            _ => {
                let alpha = self.co_plain_depth(depth - 1);
                PcoFormula::sel_imp(alpha, self.pco_plain_depth(depth - 1))
            }
        }
    }

    /// Rational in [0, 1] with a small denominator.
    pub fn rational(&mut self) -> Rational {
        let den = self.rng.gen_range(1..=self.max_denominator) as i64;
        let num = self.rng.gen_range(0..=den);
        rat(num, den)
    }

    /// Rational in (0, 1].
    pub fn rational_pos(&mut self) -> Rational {
        let den = self.rng.gen_range(1..=self.max_denominator) as i64;
        let num = self.rng.gen_range(1..=den);
        rat(num, den)
    }

    /// Rational in [0, bound], as bound scaled by a random factor.
    pub fn rational_scaled(&mut self, bound: &Rational) -> Rational {
        self.rational() * bound
    }

    /// Pair (delta, epsilon) with delta + epsilon <= 1.
    pub fn rationals_summing_at_most_one(&mut self) -> (Rational, Rational) {
        let delta = self.rational();
        let epsilon = self.rational_scaled(&(Rational::one() - &delta));
        (delta, epsilon)
    }

    /// Pair (delta, epsilon) with delta > epsilon.
    pub fn rationals_strictly_ordered(&mut self) -> (Rational, Rational) {
        for _ in 0..32 {
            let a = self.rational();
            let b = self.rational();
            if a != b {
                return if a > b { (a, b) } else { (b, a) };
            }
        }
        (Rational::one(), Rational::zero())
    }

    /// Pair (delta, epsilon) with delta >= epsilon.
    pub fn rationals_ordered(&mut self) -> (Rational, Rational) {
        let a = self.rational();
        let b = self.rational();
        if a >= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Consistent intervention target over 1..=max_pairs distinct variables.
    pub fn spec(&mut self, max_pairs: usize) -> InterventionSpec {
        let vars = self.var_subset(max_pairs);
        let pairs = vars.into_iter().map(|v| (v, self.val(v))).collect();
        InterventionSpec::new(pairs)
    }

    /// Nonempty set of 1..=max_len distinct variables, in random order.
    pub fn var_subset(&mut self, max_len: usize) -> Vec<Var> {
        let n = self.sig.var_count();
        let len = self.rng.gen_range(1..=max_len.min(n).max(1));
        let mut all: Vec<Var> = self.sig.vars().collect();
        all.shuffle(&mut self.rng);
        all.truncate(len);
        all
    }

    /// Random value tuple over the given variables.
    pub fn value_tuple(&mut self, vars: &[Var]) -> Vec<Val> {
        vars.iter().map(|&v| self.val(v)).collect()
    }

    /// Two distinct value tuples over the given variables, or None when the
    /// combined range admits only one tuple.
    pub fn distinct_value_tuples(&mut self, vars: &[Var]) -> Option<(Vec<Val>, Vec<Val>)> {
        if vars.iter().all(|&v| self.sig.range_size(v) == 1) {
            return None;
        }
        loop {
            let a = self.value_tuple(vars);
            let b = self.value_tuple(vars);
            if a != b {
                return Some((a, b));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::binary(&["X", "Y"]).unwrap()
    }

    #[test]
    fn generation_is_seeded_and_well_formed() {
        let s = sig();
        let budget = SampleBudget::new(10, 42);
        let mut a = FormulaPool::new(&s, &budget);
        let mut b = FormulaPool::new(&s, &budget);
        for _ in 0..50 {
            let pa = a.pco();
            let pb = b.pco();
            assert_eq!(pa, pb, "same seed must reproduce the same stream");
            pa.check(&s).unwrap();
        }
    }

    #[test]
    fn plain_formulas_stay_counterfactual_free() {
        fn co_has_cf(alpha: &CoFormula) -> bool {
            match alpha {
                CoFormula::Eq(..) | CoFormula::Neq(..) => false,
                CoFormula::And(a, b) | CoFormula::SelImp(a, b) => co_has_cf(a) || co_has_cf(b),
                CoFormula::Cf(..) => true,
            }
        }
        fn pco_has_cf(phi: &PcoFormula) -> bool {
            match phi {
                PcoFormula::Eq(..) | PcoFormula::Neq(..) => false,
                PcoFormula::ProbConst(a, ..) => co_has_cf(a),
                PcoFormula::ProbProb(a, _, b) => co_has_cf(a) || co_has_cf(b),
                PcoFormula::And(a, b) | PcoFormula::GOr(a, b) => pco_has_cf(a) || pco_has_cf(b),
                PcoFormula::SelImp(a, b) => co_has_cf(a) || pco_has_cf(b),
                PcoFormula::Cf(..) => true,
            }
        }
        let s = sig();
        let mut pool = FormulaPool::new(&s, &SampleBudget::new(10, 7));
        for _ in 0..100 {
            assert!(!pco_has_cf(&pool.pco_plain()));
            assert!(!co_has_cf(&pool.co_plain()));
        }
    }

    #[test]
    fn constrained_rationals_respect_their_bounds() {
        let s = sig();
        let mut pool = FormulaPool::new(&s, &SampleBudget::new(10, 3));
        for _ in 0..200 {
            let (d, e) = pool.rationals_summing_at_most_one();
            assert!(d + e <= Rational::one());
            let (d, e) = pool.rationals_strictly_ordered();
            assert!(d > e);
            let (d, e) = pool.rationals_ordered();
            assert!(d >= e);
            let p = pool.rational_pos();
            assert!(p > Rational::zero() && p <= Rational::one());
        }
    }

    #[test]
    fn specs_are_consistent_and_in_range() {
        let s = sig();
        let mut pool = FormulaPool::new(&s, &SampleBudget::new(10, 9));
        for _ in 0..100 {
            let spec = pool.spec(2);
            assert!(spec.is_consistent());
            spec.check(&s).unwrap();
            assert!(!spec.is_empty());
        }
    }
}
