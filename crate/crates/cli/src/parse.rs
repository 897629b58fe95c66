//! Recursive-descent parser. Sugar (`~`, `!`, `\/`, `->`, `<->`, `<=>`,
//! conditional probabilities, `TOP`, `BOT`) expands at parse time; the
//! result is a plain AST from the core crate.
//!
//! Precedence, loosest to tightest: conditionals (`=>`, `->`, `<->`, `<=>`,
//! right-associative) < disjunctions (`\/`, `||`, left-associative) < `&`
//! (left-associative) < prefixes (`[spec]`, `~`, `!`) and atoms.

use num_bigint::BigInt;
use pco_core::{CoFormula, InterventionSpec, PcoFormula, Rational, Signature, Val, Var};

use crate::error::{CliError, CliResult};
use crate::lex::{lex, TokKind, Token};
use crate::span::SourceSpan;

/// Parses a formula of the full probabilistic language against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> CliResult<PcoFormula> {
    let node = parse_to_ast(text)?;
    to_pco(&node, sig)
}

/// Parses a formula of the row-level fragment against `sig`.
pub fn parse_co_formula(text: &str, sig: &Signature) -> CliResult<CoFormula> {
    let node = parse_to_ast(text)?;
    to_co(&node, sig)
}

/// Parses a bare intervention list `X=1,Y=2` (no brackets).
pub fn parse_intervention(text: &str, sig: &Signature) -> CliResult<InterventionSpec> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let pairs = parser.spec_pairs(text.len())?;
    parser.expect_end()?;
    let resolved = pairs
        .iter()
        .map(|p| resolve_pair(p, sig))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(InterventionSpec::new(resolved))
}

fn parse_to_ast(text: &str) -> CliResult<Node> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let node = parser.conditional(text.len())?;
    parser.expect_end()?;
    Ok(node)
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeKind,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
enum NodeKind {
    Lit {
        var: Name,
        negated: bool,
        val: Name,
    },
    Top,
    Bot,
    And(Box<Node>, Box<Node>),
    TensorOr(Box<Node>, Box<Node>),
    GlobalOr(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Arrow(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Cf(Vec<SpecPair>, Box<Node>),
    /// `~`: row-level dual negation.
    NotDual(Box<Node>),
    /// `!`: weak contradictory negation.
    NotC(Box<Node>),
    Prob {
        alpha: Box<Node>,
        guard: Option<Box<Node>>,
        cmp: CmpKind,
        rhs: ProbRhs,
    },
}

#[derive(Clone, Debug)]
struct Name {
    text: String,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
struct SpecPair {
    var: Name,
    val: Name,
}

#[derive(Clone, Debug)]
enum ProbRhs {
    Const(Rational),
    Prob(Box<Node>),
}

#[derive(Clone, Copy, Debug)]
enum CmpKind {
    Ge,
    Gt,
    Le,
    Lt,
    Eq,
    Ne,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokKind> {
        self.peek().map(|t| t.kind)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn end_span(&self) -> SourceSpan {
        self.tokens.last().map_or(SourceSpan::new(0, 0), |t| {
            SourceSpan::new(t.span.end, t.span.end)
        })
    }

    fn expect(&mut self, kind: TokKind, what: &str) -> CliResult<Token> {
        match self.next() {
            Some(tok) if tok.kind == kind => Ok(tok),
            Some(tok) => Err(CliError::syntax(
                tok.span,
                format!("expected {what}, found `{}`", tok.text),
            )),
            None => Err(CliError::syntax(
                self.end_span(),
                format!("expected {what}, found end of input"),
            )),
        }
    }

    fn expect_end(&mut self) -> CliResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(tok) => Err(CliError::syntax(
                tok.span,
                format!("unexpected `{}` after the formula", tok.text),
            )),
        }
    }

    fn word(&mut self, what: &str) -> CliResult<Name> {
        let tok = self.expect(TokKind::Word, what)?;
        Ok(Name {
            text: tok.text,
            span: tok.span,
        })
    }

    /// conditional := disjunction (('=>'|'->'|'<->'|'<=>') conditional)?
    fn conditional(&mut self, input_len: usize) -> CliResult<Node> {
        let lhs = self.disjunction(input_len)?;
        let op = match self.peek_kind() {
            Some(TokKind::Imp) => TokKind::Imp,
            Some(TokKind::Arrow) => TokKind::Arrow,
            Some(TokKind::Iff) => TokKind::Iff,
            _ => return Ok(lhs),
        };
        self.next();
        let rhs = self.conditional(input_len)?;
        let span = lhs.span.join(rhs.span);
        let kind = match op {
            TokKind::Imp => NodeKind::Imp(Box::new(lhs), Box::new(rhs)),
            TokKind::Arrow => NodeKind::Arrow(Box::new(lhs), Box::new(rhs)),
            _ => NodeKind::Iff(Box::new(lhs), Box::new(rhs)),
        };
        Ok(Node { kind, span })
    }

    /// disjunction := conjunction (('\/'|'||') conjunction)*
    fn disjunction(&mut self, input_len: usize) -> CliResult<Node> {
        let mut lhs = self.conjunction(input_len)?;
        loop {
            let tensor = match self.peek_kind() {
                Some(TokKind::TensorOr) => true,
                Some(TokKind::GlobalOr) => false,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.conjunction(input_len)?;
            let span = lhs.span.join(rhs.span);
            let kind = if tensor {
                NodeKind::TensorOr(Box::new(lhs), Box::new(rhs))
            } else {
                NodeKind::GlobalOr(Box::new(lhs), Box::new(rhs))
            };
            lhs = Node { kind, span };
        }
    }

    /// conjunction := prefix ('&' prefix)*
    fn conjunction(&mut self, input_len: usize) -> CliResult<Node> {
        let mut lhs = self.prefix(input_len)?;
        while self.peek_kind() == Some(TokKind::Amp) {
            self.next();
            let rhs = self.prefix(input_len)?;
            let span = lhs.span.join(rhs.span);
            lhs = Node {
                kind: NodeKind::And(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    /// prefix := '[' pairs ']' prefix | '~' prefix | '!' prefix | atom
    fn prefix(&mut self, input_len: usize) -> CliResult<Node> {
        match self.peek_kind() {
            Some(TokKind::LBracket) => {
                let open = self.next().unwrap();
                let pairs = self.spec_pairs(input_len)?;
                self.expect(TokKind::RBracket, "`]`")?;
                let body = self.prefix(input_len)?;
                let span = open.span.join(body.span);
                Ok(Node {
                    kind: NodeKind::Cf(pairs, Box::new(body)),
                    span,
                })
            }
            Some(TokKind::Tilde) => {
                let op = self.next().unwrap();
                let body = self.prefix(input_len)?;
                let span = op.span.join(body.span);
                Ok(Node {
                    kind: NodeKind::NotDual(Box::new(body)),
                    span,
                })
            }
            Some(TokKind::Bang) => {
                let op = self.next().unwrap();
                let body = self.prefix(input_len)?;
                let span = op.span.join(body.span);
                Ok(Node {
                    kind: NodeKind::NotC(Box::new(body)),
                    span,
                })
            }
            _ => self.atom(input_len),
        }
    }

    /// Comma-separated `X=v` pairs; empty lists are allowed.
    fn spec_pairs(&mut self, _input_len: usize) -> CliResult<Vec<SpecPair>> {
        let mut pairs = Vec::new();
        if self.peek_kind() != Some(TokKind::Word) {
            return Ok(pairs);
        }
        loop {
            let var = self.word("a variable name")?;
            self.expect(TokKind::Eq, "`=`")?;
            let val = self.word("a value")?;
            pairs.push(SpecPair { var, val });
            if self.peek_kind() == Some(TokKind::Comma) {
                self.next();
            } else {
                return Ok(pairs);
            }
        }
    }

    fn atom(&mut self, input_len: usize) -> CliResult<Node> {
        match self.peek() {
            Some(tok) if tok.kind == TokKind::LParen => {
                self.next();
                let inner = self.conditional(input_len)?;
                self.expect(TokKind::RParen, "`)`")?;
                Ok(inner)
            }
            Some(tok) if tok.kind == TokKind::Word => {
                let word = tok.clone();
                if word.text == "TOP" {
                    self.next();
                    return Ok(Node {
                        kind: NodeKind::Top,
                        span: word.span,
                    });
                }
                if word.text == "BOT" {
                    self.next();
                    return Ok(Node {
                        kind: NodeKind::Bot,
                        span: word.span,
                    });
                }
                if word.text == "P"
                    && self.tokens.get(self.pos + 1).map(|t| t.kind) == Some(TokKind::LParen)
                {
                    return self.prob_atom(input_len);
                }
                self.literal()
            }
            Some(tok) => Err(CliError::syntax(
                tok.span,
                format!("expected a formula, found `{}`", tok.text),
            )),
            None => Err(CliError::syntax(
                self.end_span(),
                "expected a formula, found end of input".to_string(),
            )),
        }
    }

    /// literal := WORD ('='|'!=') WORD
    fn literal(&mut self) -> CliResult<Node> {
        let var = self.word("a variable name")?;
        let negated = match self.next() {
            Some(tok) if tok.kind == TokKind::Eq => false,
            Some(tok) if tok.kind == TokKind::Neq => true,
            Some(tok) => {
                return Err(CliError::syntax(
                    tok.span,
                    format!("expected `=` or `!=`, found `{}`", tok.text),
                ))
            }
            None => {
                return Err(CliError::syntax(
                    self.end_span(),
                    "expected `=` or `!=`, found end of input".to_string(),
                ))
            }
        };
        let val = self.word("a value")?;
        let span = var.span.join(val.span);
        Ok(Node {
            kind: NodeKind::Lit { var, negated, val },
            span,
        })
    }

    /// prob := 'P' '(' formula ('|' formula)? ')' cmp (rational | 'P' '(' formula ')')
    fn prob_atom(&mut self, input_len: usize) -> CliResult<Node> {
        let p = self.next().unwrap();
        self.expect(TokKind::LParen, "`(`")?;
        let alpha = self.conditional(input_len)?;
        let guard = if self.peek_kind() == Some(TokKind::Bar) {
            self.next();
            Some(Box::new(self.conditional(input_len)?))
        } else {
            None
        };
        self.expect(TokKind::RParen, "`)`")?;
        let cmp = match self.next() {
            Some(tok) => match tok.kind {
                TokKind::Ge => CmpKind::Ge,
                TokKind::Gt => CmpKind::Gt,
                TokKind::Le => CmpKind::Le,
                TokKind::Lt => CmpKind::Lt,
                TokKind::Eq => CmpKind::Eq,
                TokKind::Neq => CmpKind::Ne,
                _ => {
                    return Err(CliError::syntax(
                        tok.span,
                        format!("expected a comparison, found `{}`", tok.text),
                    ))
                }
            },
            None => {
                return Err(CliError::syntax(
                    self.end_span(),
                    "expected a comparison after the probability".to_string(),
                ))
            }
        };
        let (rhs, end) = if self.peek().map(|t| t.text.as_str()) == Some("P")
            && self.tokens.get(self.pos + 1).map(|t| t.kind) == Some(TokKind::LParen)
        {
            self.next();
            self.expect(TokKind::LParen, "`(`")?;
            let beta = self.conditional(input_len)?;
            let close = self.expect(TokKind::RParen, "`)`")?;
            (ProbRhs::Prob(Box::new(beta)), close.span)
        } else {
            let (r, span) = self.rational()?;
            (ProbRhs::Const(r), span)
        };
        Ok(Node {
            kind: NodeKind::Prob {
                alpha: Box::new(alpha),
                guard,
                cmp,
                rhs,
            },
            span: p.span.join(end),
        })
    }

    /// rational := DIGITS ('/' DIGITS)?
    fn rational(&mut self) -> CliResult<(Rational, SourceSpan)> {
        let numer = self.word("a number")?;
        let n: BigInt = numer.text.parse().map_err(|_| {
            CliError::syntax(numer.span, format!("`{}` is not a number", numer.text))
        })?;
        if self.peek_kind() == Some(TokKind::Slash) {
            self.next();
            let denom = self.word("a denominator")?;
            let d: BigInt = denom.text.parse().map_err(|_| {
                CliError::syntax(denom.span, format!("`{}` is not a number", denom.text))
            })?;
            if d == BigInt::from(0) {
                return Err(CliError::syntax(
                    denom.span,
                    "denominator is zero".to_string(),
                ));
            }
            Ok((Rational::new(n, d), numer.span.join(denom.span)))
        } else {
            Ok((Rational::from_integer(n), numer.span))
        }
    }
}

fn resolve_var(name: &Name, sig: &Signature) -> CliResult<Var> {
    sig.var(&name.text)
        .ok_or_else(|| CliError::UnknownVariable {
            span: name.span,
            name: name.text.clone(),
        })
}

fn resolve_val(v: Var, name: &Name, sig: &Signature) -> CliResult<Val> {
    sig.value(v, &name.text)
        .ok_or_else(|| CliError::ValueOutOfRange {
            span: name.span,
            var: sig.var_name(v).to_string(),
            value: name.text.clone(),
        })
}

fn resolve_pair(pair: &SpecPair, sig: &Signature) -> CliResult<(Var, Val)> {
    let v = resolve_var(&pair.var, sig)?;
    let x = resolve_val(v, &pair.val, sig)?;
    Ok((v, x))
}

fn resolve_spec(pairs: &[SpecPair], sig: &Signature) -> CliResult<InterventionSpec> {
    let resolved = pairs
        .iter()
        .map(|p| resolve_pair(p, sig))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(InterventionSpec::new(resolved))
}

fn to_pco(node: &Node, sig: &Signature) -> CliResult<PcoFormula> {
    Ok(match &node.kind {
        NodeKind::Lit { var, negated, val } => {
            let v = resolve_var(var, sig)?;
            let x = resolve_val(v, val, sig)?;
            if *negated {
                PcoFormula::neq(v, x)
            } else {
                PcoFormula::eq(v, x)
            }
        }
        NodeKind::Top => PcoFormula::top(sig),
        NodeKind::Bot => PcoFormula::bot(sig),
        NodeKind::And(a, b) => to_pco(a, sig)?.and(to_pco(b, sig)?),
        NodeKind::GlobalOr(a, b) => to_pco(a, sig)?.global_or(to_pco(b, sig)?),
        NodeKind::TensorOr(a, b) => {
            let left = to_co(a, sig)?;
            let right = to_co(b, sig)?;
            PcoFormula::from(left.or(right, sig))
        }
        NodeKind::Imp(a, b) => {
            let alpha = to_co(a, sig)?;
            PcoFormula::sel_imp(alpha, to_pco(b, sig)?)
        }
        NodeKind::Arrow(a, b) => to_pco(a, sig)?.arrow(to_pco(b, sig)?, sig),
        NodeKind::Iff(a, b) => to_pco(a, sig)?.iff(to_pco(b, sig)?, sig),
        NodeKind::Cf(pairs, body) => {
            let spec = resolve_spec(pairs, sig)?;
            PcoFormula::cf(spec, to_pco(body, sig)?)
        }
        NodeKind::NotDual(a) => PcoFormula::from(to_co(a, sig)?.not(sig)),
        NodeKind::NotC(a) => to_pco(a, sig)?.neg_c(sig),
        NodeKind::Prob {
            alpha,
            guard,
            cmp,
            rhs,
        } => {
            let a = to_co(alpha, sig)?;
            let atom = match rhs {
                ProbRhs::Const(e) => match cmp {
                    CmpKind::Ge => PcoFormula::pr_ge(a, e.clone())?,
                    CmpKind::Gt => PcoFormula::pr_gt(a, e.clone())?,
                    CmpKind::Le => PcoFormula::pr_le(a, e.clone(), sig)?,
                    CmpKind::Lt => PcoFormula::pr_lt(a, e.clone(), sig)?,
                    CmpKind::Eq => PcoFormula::pr_eq(a, e.clone(), sig)?,
                    CmpKind::Ne => PcoFormula::pr_ne(a, e.clone(), sig)?,
                },
                ProbRhs::Prob(beta) => {
                    let b = to_co(beta, sig)?;
                    match cmp {
                        CmpKind::Ge => PcoFormula::pr_cmp_pr(a, pco_core::Cmp::Ge, b),
                        CmpKind::Gt => PcoFormula::pr_cmp_pr(a, pco_core::Cmp::Gt, b),
                        CmpKind::Le => PcoFormula::pr_cmp_pr(b, pco_core::Cmp::Ge, a),
                        CmpKind::Lt => PcoFormula::pr_cmp_pr(b, pco_core::Cmp::Gt, a),
                        CmpKind::Eq => {
                            PcoFormula::pr_cmp_pr(a.clone(), pco_core::Cmp::Ge, b.clone())
                                .and(PcoFormula::pr_cmp_pr(b, pco_core::Cmp::Ge, a))
                        }
                        CmpKind::Ne => {
                            PcoFormula::pr_cmp_pr(a.clone(), pco_core::Cmp::Ge, b.clone())
                                .and(PcoFormula::pr_cmp_pr(b, pco_core::Cmp::Ge, a))
                                .neg_c(sig)
                        }
                    }
                }
            };
            match guard {
                Some(g) => PcoFormula::sel_imp(to_co(g, sig)?, atom),
                None => atom,
            }
        }
    })
}

fn to_co(node: &Node, sig: &Signature) -> CliResult<CoFormula> {
    Ok(match &node.kind {
        NodeKind::Lit { var, negated, val } => {
            let v = resolve_var(var, sig)?;
            let x = resolve_val(v, val, sig)?;
            if *negated {
                CoFormula::neq(v, x)
            } else {
                CoFormula::eq(v, x)
            }
        }
        NodeKind::Top => CoFormula::top(sig),
        NodeKind::Bot => CoFormula::bot(sig),
        NodeKind::And(a, b) => to_co(a, sig)?.and(to_co(b, sig)?),
        NodeKind::TensorOr(a, b) => {
            let left = to_co(a, sig)?;
            to_co(b, sig).map(|right| left.or(right, sig))?
        }
        NodeKind::Imp(a, b) => to_co(a, sig)?.sel_imp(to_co(b, sig)?),
        NodeKind::Cf(pairs, body) => {
            let spec = resolve_spec(pairs, sig)?;
            CoFormula::cf(spec, to_co(body, sig)?)
        }
        NodeKind::NotDual(a) => to_co(a, sig)?.not(sig),
        NodeKind::GlobalOr(..) => {
            return Err(CliError::co_violation(
                node.span,
                "`||` is a team-level connective; use `\\/` here",
            ))
        }
        NodeKind::Arrow(..) | NodeKind::Iff(..) => {
            return Err(CliError::co_violation(
                node.span,
                "material conditionals are team-level; use `=>` here",
            ))
        }
        NodeKind::NotC(..) => {
            return Err(CliError::co_violation(
                node.span,
                "`!` produces a team-level formula; use `~` here",
            ))
        }
        NodeKind::Prob { .. } => {
            return Err(CliError::co_violation(
                node.span,
                "probability atoms are team-level formulas",
            ))
        }
    })
}
