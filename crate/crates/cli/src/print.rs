//! Pretty-printer, the inverse of the parser on ASTs. Only core operators
//! appear in the output; parse-time sugar is never re-introduced.

use std::fmt::Write;

use pco_core::{CoFormula, InterventionSpec, PcoFormula, Rational, Signature};

/// Conditionals bind loosest, then disjunction, then conjunction, then
/// prefixes and atoms. Same scheme for both languages.
const LVL_COND: u8 = 1;
const LVL_OR: u8 = 2;
const LVL_AND: u8 = 3;
const LVL_PREFIX: u8 = 4;
const LVL_ATOM: u8 = 5;

/// Reduced `p/q` text, the exact serialization of a rational.
pub fn print_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn print_formula(phi: &PcoFormula, sig: &Signature) -> String {
    let mut out = String::new();
    pco(&mut out, phi, sig, 0);
    out
}

pub fn print_co(alpha: &CoFormula, sig: &Signature) -> String {
    let mut out = String::new();
    co(&mut out, alpha, sig, 0);
    out
}

fn pco_level(phi: &PcoFormula) -> u8 {
    match phi {
        PcoFormula::SelImp(..) => LVL_COND,
        PcoFormula::GOr(..) => LVL_OR,
        PcoFormula::And(..) => LVL_AND,
        PcoFormula::Cf(..) => LVL_PREFIX,
        _ => LVL_ATOM,
    }
}

fn co_level(alpha: &CoFormula) -> u8 {
    match alpha {
        CoFormula::SelImp(..) => LVL_COND,
        CoFormula::And(..) => LVL_AND,
        CoFormula::Cf(..) => LVL_PREFIX,
        _ => LVL_ATOM,
    }
}

fn spec(out: &mut String, s: &InterventionSpec, sig: &Signature) {
    out.push('[');
    for (i, &(v, x)) in s.pairs().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}={}", sig.var_name(v), sig.value_name(v, x));
    }
    out.push(']');
}

fn pco(out: &mut String, phi: &PcoFormula, sig: &Signature, min: u8) {
    if pco_level(phi) < min {
        out.push('(');
        pco(out, phi, sig, 0);
        out.push(')');
        return;
    }
    match phi {
        PcoFormula::Eq(v, x) => {
            let _ = write!(out, "{}={}", sig.var_name(*v), sig.value_name(*v, *x));
        }
        PcoFormula::Neq(v, x) => {
            let _ = write!(out, "{}!={}", sig.var_name(*v), sig.value_name(*v, *x));
        }
        PcoFormula::ProbConst(alpha, cmp, e) => {
            out.push_str("P(");
            co(out, alpha, sig, 0);
            let _ = write!(out, ") {} {}", cmp_text(*cmp), print_rational(e));
        }
        PcoFormula::ProbProb(alpha, cmp, beta) => {
            out.push_str("P(");
            co(out, alpha, sig, 0);
            let _ = write!(out, ") {} P(", cmp_text(*cmp));
            co(out, beta, sig, 0);
            out.push(')');
        }
        PcoFormula::And(a, b) => {
            pco(out, a, sig, LVL_AND);
            out.push_str(" & ");
            pco(out, b, sig, LVL_AND + 1);
        }
        PcoFormula::GOr(a, b) => {
            pco(out, a, sig, LVL_OR);
            out.push_str(" || ");
            pco(out, b, sig, LVL_OR + 1);
        }
        PcoFormula::SelImp(alpha, b) => {
            co(out, alpha, sig, LVL_COND + 1);
            out.push_str(" => ");
            pco(out, b, sig, LVL_COND);
        }
        PcoFormula::Cf(s, body) => {
            spec(out, s, sig);
            out.push(' ');
            pco(out, body, sig, LVL_PREFIX);
        }
    }
}

fn co(out: &mut String, alpha: &CoFormula, sig: &Signature, min: u8) {
    if co_level(alpha) < min {
        out.push('(');
        co(out, alpha, sig, 0);
        out.push(')');
        return;
    }
    match alpha {
        CoFormula::Eq(v, x) => {
            let _ = write!(out, "{}={}", sig.var_name(*v), sig.value_name(*v, *x));
        }
        CoFormula::Neq(v, x) => {
            let _ = write!(out, "{}!={}", sig.var_name(*v), sig.value_name(*v, *x));
        }
        CoFormula::And(a, b) => {
            co(out, a, sig, LVL_AND);
            out.push_str(" & ");
            co(out, b, sig, LVL_AND + 1);
        }
        CoFormula::SelImp(a, b) => {
            co(out, a, sig, LVL_COND + 1);
            out.push_str(" => ");
            co(out, b, sig, LVL_COND);
        }
        CoFormula::Cf(s, body) => {
            spec(out, s, sig);
            out.push(' ');
            co(out, body, sig, LVL_PREFIX);
        }
    }
}

fn cmp_text(cmp: pco_core::Cmp) -> &'static str {
    match cmp {
        pco_core::Cmp::Ge => ">=",
        pco_core::Cmp::Gt => ">",
    }
}
