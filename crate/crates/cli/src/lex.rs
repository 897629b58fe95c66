//! Tokenizer for the formula grammar. Every token carries its byte span.

use crate::error::{CliError, CliResult};
use crate::span::SourceSpan;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokKind {
    /// Alphanumeric word: variable or value name, digits, or a keyword.
    Word,
    Eq,
    Neq,
    Bang,
    Tilde,
    Amp,
    /// `\/`: row-level (tensor) disjunction.
    TensorOr,
    /// `||`: team-level disjunction.
    GlobalOr,
    /// `=>`: selective implication.
    Imp,
    /// `->`: material implication.
    Arrow,
    /// `<->` or `<=>`: material equivalence.
    Iff,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Bar,
    Ge,
    Gt,
    Le,
    Lt,
    Slash,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokKind,
    pub text: String,
    pub span: SourceSpan,
}

/// Multi-character operators first so maximal munch wins.
const PUNCT: &[(&str, TokKind)] = &[
    ("<=>", TokKind::Iff),
    ("<->", TokKind::Iff),
    ("=>", TokKind::Imp),
    ("->", TokKind::Arrow),
    ("!=", TokKind::Neq),
    ("\\/", TokKind::TensorOr),
    ("||", TokKind::GlobalOr),
    (">=", TokKind::Ge),
    ("<=", TokKind::Le),
    ("=", TokKind::Eq),
    ("!", TokKind::Bang),
    ("~", TokKind::Tilde),
    ("&", TokKind::Amp),
    ("|", TokKind::Bar),
    (">", TokKind::Gt),
    ("<", TokKind::Lt),
    ("[", TokKind::LBracket),
    ("]", TokKind::RBracket),
    ("(", TokKind::LParen),
    (")", TokKind::RParen),
    (",", TokKind::Comma),
    ("/", TokKind::Slash),
];

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

pub fn lex(text: &str) -> CliResult<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut pos = 0;
    let bytes = text.as_bytes();
    'outer: while pos < bytes.len() {
        let rest = &text[pos..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        for &(pat, kind) in PUNCT {
            if rest.starts_with(pat) {
                let span = SourceSpan::new(pos, pos + pat.len());
                tokens.push(Token {
                    kind,
                    text: pat.to_string(),
                    span,
                });
                pos += pat.len();
                continue 'outer;
            }
        }
        if is_word_char(c) {
            let len = rest
                .char_indices()
                .find(|&(_, ch)| !is_word_char(ch))
                .map_or(rest.len(), |(i, _)| i);
            let span = SourceSpan::new(pos, pos + len);
            tokens.push(Token {
                kind: TokKind::Word,
                text: rest[..len].to_string(),
                span,
            });
            pos += len;
            continue;
        }
        return Err(CliError::syntax(
            SourceSpan::new(pos, pos + c.len_utf8()),
            format!("unexpected character `{c}`"),
        ));
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_operators_are_split_with_spans() {
        let toks = lex("X!=1 => P(Y=0) >= 1/2").unwrap();
        let kinds: Vec<TokKind> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokKind::Word,
                TokKind::Neq,
                TokKind::Word,
                TokKind::Imp,
                TokKind::Word,
                TokKind::LParen,
                TokKind::Word,
                TokKind::Eq,
                TokKind::Word,
                TokKind::RParen,
                TokKind::Ge,
                TokKind::Word,
                TokKind::Slash,
                TokKind::Word,
            ]
        );
        assert_eq!(toks[0].span, SourceSpan::new(0, 1));
        assert_eq!(toks[1].span, SourceSpan::new(1, 3));
        assert_eq!(toks[13].span, SourceSpan::new(20, 21));
    }

    #[test]
    fn maximal_munch_separates_lookalikes() {
        let toks = lex("<-> <=> <= < -> => ! != \\/ || |").unwrap();
        let kinds: Vec<TokKind> = toks.iter().map(|t| t.kind).collect();
        assert_eq!(
            kinds,
            vec![
                TokKind::Iff,
                TokKind::Iff,
                TokKind::Le,
                TokKind::Lt,
                TokKind::Arrow,
                TokKind::Imp,
                TokKind::Bang,
                TokKind::Neq,
                TokKind::TensorOr,
                TokKind::GlobalOr,
                TokKind::Bar,
            ]
        );
    }

    #[test]
    fn rejects_stray_characters() {
        let err = lex("X=1 @ Y=2").unwrap_err();
        assert_eq!(err.span(), Some(SourceSpan::new(4, 5)));
    }
}
