//! Text formats for signatures, models, and weight descriptions.
//!
//! A model file has three sections introduced by bare keywords:
//!
//! ```text
//! signature
//! X: 0 1 2
//! Y: 1 2 3
//! laws
//! Y <- 0 -> 1, 1 -> 2, 2 -> 3
//! team
//! 1: 0 1
//! 2: 1 2
//! ```
//!
//! `laws` lines map full context tuples (values of the other variables in
//! signature order) to an output; the table must be total. `team` lines are
//! `count: v1 v2 ... vk`. A description file replaces `team` with a
//! `weights` section of `v1 v2 ... vk : p/q` lines. `#` starts a comment;
//! blank lines are ignored. A bare signature file is just the `VAR: v1 v2
//! ...` lines, with the `signature` header optional.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use pco_core::{
    AtomicDescription, CausalMultiteam, FunctionComponent, LawTable, Multiteam, Rational,
    Signature, Val, Var,
};

use crate::error::{CliError, CliResult};
use crate::span::SourceSpan;

/// A line stripped of comments, with the byte span of its trimmed content.
struct Line<'a> {
    text: &'a str,
    span: SourceSpan,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.strip_suffix('\n').unwrap_or(raw);
        let body = line.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if !trimmed.is_empty() {
            let start = offset + (body.len() - body.trim_start().len());
            lines.push(Line {
                text: trimmed,
                span: SourceSpan::new(start, start + trimmed.len()),
            });
        }
        offset += raw.len();
    }
    lines
}

/// Whitespace-separated words of a line with their spans in the source.
fn words(line: &Line<'_>) -> Vec<(String, SourceSpan)> {
    let mut out = Vec::new();
    let base = line.span.start;
    let mut pos = 0;
    for word in line.text.split_whitespace() {
        let at = line.text[pos..].find(word).unwrap() + pos;
        out.push((
            word.to_string(),
            SourceSpan::new(base + at, base + at + word.len()),
        ));
        pos = at + word.len();
    }
    out
}

const SECTIONS: [&str; 4] = ["signature", "laws", "team", "weights"];

/// Splits into sections. `allowed` lists the section keywords this file kind
/// accepts, in any order of appearance; each may appear at most once.
fn split_sections<'a>(
    lines: Vec<Line<'a>>,
    allowed: &[&str],
) -> CliResult<BTreeMap<&'a str, Vec<Line<'a>>>> {
    let mut sections: BTreeMap<&str, Vec<Line<'a>>> = BTreeMap::new();
    let mut current: Option<&'a str> = None;
    for line in lines {
        if SECTIONS.contains(&line.text) {
            if !allowed.contains(&line.text) {
                return Err(CliError::syntax(
                    line.span,
                    format!("a `{}` section does not belong in this file", line.text),
                ));
            }
            if sections.contains_key(line.text) {
                return Err(CliError::syntax(
                    line.span,
                    format!("duplicate `{}` section", line.text),
                ));
            }
            current = Some(line.text);
            sections.insert(line.text, Vec::new());
            continue;
        }
        match current {
            Some(name) => sections.get_mut(name).unwrap().push(line),
            None => {
                return Err(CliError::syntax(
                    line.span,
                    "expected a section header (signature, laws, ...)".to_string(),
                ))
            }
        }
    }
    Ok(sections)
}

fn sig_from_lines(lines: &[Line<'_>]) -> CliResult<Signature> {
    let mut vars: Vec<(String, Vec<String>)> = Vec::new();
    for line in lines {
        let Some((name, values)) = line.text.split_once(':') else {
            return Err(CliError::syntax(
                line.span,
                "expected `VAR: v1 v2 ...`".to_string(),
            ));
        };
        let name = name.trim();
        let values: Vec<String> = values.split_whitespace().map(str::to_string).collect();
        if name.is_empty() || values.is_empty() {
            return Err(CliError::syntax(
                line.span,
                "expected `VAR: v1 v2 ...`".to_string(),
            ));
        }
        vars.push((name.to_string(), values));
    }
    Ok(Signature::new(vars)?)
}

/// Parses a signature file: `VAR: v1 v2 ...` lines, one per variable, with
/// an optional `signature` header.
pub fn parse_signature(text: &str) -> CliResult<Signature> {
    let mut lines = content_lines(text);
    if lines.first().map(|l| l.text) == Some("signature") {
        lines.remove(0);
    }
    if let Some(stray) = lines.iter().find(|l| SECTIONS.contains(&l.text)) {
        return Err(CliError::syntax(
            stray.span,
            format!("unexpected `{}` section in a signature file", stray.text),
        ));
    }
    sig_from_lines(&lines)
}

fn resolve_value(sig: &Signature, v: Var, word: &str, span: SourceSpan) -> CliResult<Val> {
    sig.value(v, word).ok_or_else(|| CliError::ValueOutOfRange {
        span,
        var: sig.var_name(v).to_string(),
        value: word.to_string(),
    })
}

fn laws_from_lines(sig: &Signature, lines: &[Line<'_>]) -> CliResult<FunctionComponent> {
    let mut laws = FunctionComponent::empty();
    for line in lines {
        let Some((name, table)) = line.text.split_once("<-") else {
            return Err(CliError::syntax(
                line.span,
                "expected `VAR <- ctx -> out, ...`".to_string(),
            ));
        };
        let name = name.trim();
        let Some(v) = sig.var(name) else {
            return Err(CliError::UnknownVariable {
                span: line.span,
                name: name.to_string(),
            });
        };
        if laws.is_endogenous(v) {
            return Err(CliError::syntax(
                line.span,
                format!("duplicate law for `{name}`"),
            ));
        }
        let others = sig.others(v);
        let mut outputs: Vec<Option<Val>> = vec![None; sig.context_count(v)];
        for entry in table.split(',') {
            let Some((ctx_text, out_text)) = entry.split_once("->") else {
                return Err(CliError::syntax(
                    line.span,
                    format!("law entry `{}` is missing `->`", entry.trim()),
                ));
            };
            let ctx_words: Vec<&str> = ctx_text.split_whitespace().collect();
            if ctx_words.len() != others.len() {
                return Err(CliError::syntax(
                    line.span,
                    format!(
                        "law entry `{}` lists {} context values, expected {}",
                        entry.trim(),
                        ctx_words.len(),
                        others.len()
                    ),
                ));
            }
            let ctx: Vec<Val> = ctx_words
                .iter()
                .zip(&others)
                .map(|(w, &u)| resolve_value(sig, u, w, line.span))
                .collect::<CliResult<_>>()?;
            let out = resolve_value(sig, v, out_text.trim(), line.span)?;
            let idx = sig.context_index_of(v, &ctx);
            if outputs[idx].is_some() {
                return Err(CliError::syntax(
                    line.span,
                    format!("duplicate law entry for context `{}`", ctx_text.trim()),
                ));
            }
            outputs[idx] = Some(out);
        }
        if let Some(missing) = outputs.iter().position(|o| o.is_none()) {
            let ctx = sig.context_values(v, missing);
            let names: Vec<&str> = ctx
                .iter()
                .zip(&others)
                .map(|(&x, &u)| sig.value_name(u, x))
                .collect();
            return Err(CliError::syntax(
                line.span,
                format!(
                    "law for `{name}` has no entry for context `{}`",
                    names.join(" ")
                ),
            ));
        }
        laws.insert(v, LawTable::new(outputs.into_iter().flatten().collect()));
    }
    Ok(laws)
}

fn row_from_words(
    sig: &Signature,
    row_words: &[(String, SourceSpan)],
    line: &Line<'_>,
) -> CliResult<pco_core::Assignment> {
    if row_words.len() != sig.var_count() {
        return Err(CliError::syntax(
            line.span,
            format!(
                "row lists {} values, expected {}",
                row_words.len(),
                sig.var_count()
            ),
        ));
    }
    let vals: Vec<Val> = row_words
        .iter()
        .zip(sig.vars())
        .map(|((w, span), v)| resolve_value(sig, v, w, *span))
        .collect::<CliResult<_>>()?;
    Ok(sig.assignment(vals)?)
}

/// Parses a model file (`signature`, `laws`, `team` sections) and validates
/// the result.
pub fn parse_model(text: &str) -> CliResult<CausalMultiteam> {
    let lines = content_lines(text);
    let whole = SourceSpan::new(0, text.len());
    let sections = split_sections(lines, &["signature", "laws", "team"])?;
    let sig_lines = sections
        .get("signature")
        .ok_or_else(|| CliError::syntax(whole, "missing `signature` section".to_string()))?;
    let sig = sig_from_lines(sig_lines)?;
    let laws = match sections.get("laws") {
        Some(lines) => laws_from_lines(&sig, lines)?,
        None => FunctionComponent::empty(),
    };
    let team_lines = sections
        .get("team")
        .ok_or_else(|| CliError::syntax(whole, "missing `team` section".to_string()))?;

    let mut team = Multiteam::empty();
    for line in team_lines {
        let Some((count_text, _)) = line.text.split_once(':') else {
            return Err(CliError::syntax(
                line.span,
                "expected `count: v1 v2 ...`".to_string(),
            ));
        };
        let all = words(line);
        let count: u64 = count_text.trim().parse().map_err(|_| {
            CliError::syntax(
                all[0].1,
                format!("`{}` is not a row count", count_text.trim()),
            )
        })?;
        // The first word is `count:` (or `count` when spaced); drop through
        // the colon by re-splitting the remainder of the line.
        let after = &line.text[line.text.find(':').unwrap() + 1..];
        let base = line.span.start + line.text.find(':').unwrap() + 1;
        let row_line = Line {
            text: after.trim(),
            span: SourceSpan::new(
                base + (after.len() - after.trim_start().len()),
                line.span.end,
            ),
        };
        let row_words = words(&row_line);
        let row = row_from_words(&sig, &row_words, line)?;
        team.add(row, count);
    }
    Ok(CausalMultiteam::new(sig, laws, team)?)
}

fn parse_weight(text: &str, span: SourceSpan) -> CliResult<Rational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = n
        .parse()
        .map_err(|_| CliError::syntax(span, format!("`{text}` is not a rational")))?;
    match d {
        Some(d) => {
            let denom: BigInt = d
                .parse()
                .map_err(|_| CliError::syntax(span, format!("`{text}` is not a rational")))?;
            if denom == BigInt::from(0) {
                return Err(CliError::syntax(span, "denominator is zero".to_string()));
            }
            Ok(Rational::new(numer, denom))
        }
        None => Ok(Rational::from_integer(numer)),
    }
}

/// Parses a description file (`signature`, `laws`, `weights` sections).
pub fn parse_description(text: &str) -> CliResult<AtomicDescription> {
    let lines = content_lines(text);
    let whole = SourceSpan::new(0, text.len());
    let sections = split_sections(lines, &["signature", "laws", "weights"])?;
    let sig_lines = sections
        .get("signature")
        .ok_or_else(|| CliError::syntax(whole, "missing `signature` section".to_string()))?;
    let sig = sig_from_lines(sig_lines)?;
    let laws = match sections.get("laws") {
        Some(lines) => laws_from_lines(&sig, lines)?,
        None => FunctionComponent::empty(),
    };
    let weight_lines = sections
        .get("weights")
        .ok_or_else(|| CliError::syntax(whole, "missing `weights` section".to_string()))?;

    let mut weights = Vec::new();
    for line in weight_lines {
        let Some((row_text, weight_text)) = line.text.split_once(':') else {
            return Err(CliError::syntax(
                line.span,
                "expected `v1 v2 ... : p/q`".to_string(),
            ));
        };
        let row_line = Line {
            text: row_text.trim(),
            span: SourceSpan::new(line.span.start, line.span.start + row_text.len()),
        };
        let row_words = words(&row_line);
        let row = row_from_words(&sig, &row_words, line)?;
        let weight_span = SourceSpan::new(line.span.start + row_text.len() + 1, line.span.end);
        let weight = parse_weight(weight_text, weight_span)?;
        weights.push((row, weight));
    }
    Ok(AtomicDescription::new(sig, laws, weights)?)
}

pub fn write_signature(sig: &Signature) -> String {
    let mut out = String::new();
    for v in sig.vars() {
        let _ = write!(out, "{}:", sig.var_name(v));
        for x in sig.values(v) {
            let _ = write!(out, " {}", sig.value_name(v, x));
        }
        out.push('\n');
    }
    out
}

fn write_laws(out: &mut String, sig: &Signature, laws: &FunctionComponent) {
    for v in sig.vars().filter(|&v| laws.is_endogenous(v)) {
        let table = laws.law(v).unwrap();
        let others = sig.others(v);
        let _ = write!(out, "{} <-", sig.var_name(v));
        for idx in 0..table.len() {
            if idx > 0 {
                out.push(',');
            }
            for (&x, &u) in sig.context_values(v, idx).iter().zip(&others) {
                let _ = write!(out, " {}", sig.value_name(u, x));
            }
            let _ = write!(out, " -> {}", sig.value_name(v, table.output(idx)));
        }
        out.push('\n');
    }
}

fn row_text(sig: &Signature, row: &pco_core::Assignment) -> String {
    sig.vars()
        .zip(row.values())
        .map(|(v, &x)| sig.value_name(v, x))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serializes a model; `parse_model` inverts it exactly.
pub fn write_model(model: &CausalMultiteam) -> String {
    let sig = model.sig();
    let mut out = String::from("signature\n");
    out.push_str(&write_signature(sig));
    out.push_str("laws\n");
    write_laws(&mut out, sig, model.laws());
    out.push_str("team\n");
    for (row, count) in model.team().iter() {
        let _ = writeln!(out, "{count}: {}", row_text(sig, row));
    }
    out
}

/// Serializes a description; `parse_description` inverts it exactly.
pub fn write_description(desc: &AtomicDescription) -> String {
    let sig = desc.sig();
    let mut out = String::from("signature\n");
    out.push_str(&write_signature(sig));
    out.push_str("laws\n");
    write_laws(&mut out, sig, desc.laws());
    out.push_str("weights\n");
    for (row, weight) in desc.weights() {
        let _ = writeln!(
            out,
            "{} : {}/{}",
            row_text(sig, row),
            weight.numer(),
            weight.denom()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEX: &str = "\
# worked example
signature
X: 0 1 2
Y: 1 2 3
Z: 0 1 2 3 4 6
laws
Y <- 0 0 -> 1, 0 1 -> 1, 0 2 -> 1, 0 3 -> 1, 0 4 -> 1, 0 6 -> 1, \
     1 0 -> 2, 1 1 -> 2, 1 2 -> 2, 1 3 -> 2, 1 4 -> 2, 1 6 -> 2, \
     2 0 -> 3, 2 1 -> 3, 2 2 -> 3, 2 3 -> 3, 2 4 -> 3, 2 6 -> 3
Z <- 0 1 -> 0, 0 2 -> 0, 0 3 -> 0, 1 1 -> 1, 1 2 -> 2, 1 3 -> 3, \
     2 1 -> 2, 2 2 -> 4, 2 3 -> 6
team
1: 0 1 0
2: 1 2 2
1: 2 3 6
";

    #[test]
    fn the_worked_example_file_round_trips() {
        let model = parse_model(TEX).unwrap();
        assert_eq!(model.total(), 4);
        assert_eq!(model.sig().var_count(), 3);
        let z = model.sig().var("Z").unwrap();
        assert!(model.laws().is_endogenous(z));
        let text = write_model(&model);
        assert_eq!(parse_model(&text).unwrap(), model);
    }

    #[test]
    fn signature_files_parse_with_or_without_header() {
        let a = parse_signature("X: 0 1\nY: 0 1\n").unwrap();
        let b = parse_signature("signature\nX: 0 1\nY: 0 1\n").unwrap();
        assert_eq!(a, b);
        assert!(parse_signature("X: 0 1\nteam\n").is_err());
    }

    #[test]
    fn wrong_arity_rows_are_syntax_errors() {
        let text = "signature\nX: 0 1\nY: 0 1\nlaws\nteam\n1: 0\n";
        let err = parse_model(text).unwrap_err();
        assert!(matches!(err, CliError::Syntax { .. }), "{err}");
    }

    #[test]
    fn law_tables_must_be_total() {
        let text = "signature\nX: 0 1\nY: 0 1\nlaws\nY <- 0 -> 1\nteam\n";
        let err = parse_model(text).unwrap_err();
        assert!(err.to_string().contains("no entry for context"), "{err}");
    }

    #[test]
    fn descriptions_round_trip() {
        let text = "\
signature
X: 0 1
Y: 0 1
laws
Y <- 0 -> 0, 1 -> 1
weights
0 0 : 1/3
1 1 : 2/3
";
        let desc = parse_description(text).unwrap();
        let out = write_description(&desc);
        assert_eq!(parse_description(&out).unwrap(), desc);
    }

    #[test]
    fn incompatible_rows_surface_core_errors() {
        let text = "signature\nX: 0 1\nY: 0 1\nlaws\nY <- 0 -> 0, 1 -> 1\nteam\n1: 0 1\n";
        let err = parse_model(text).unwrap_err();
        assert!(matches!(err, CliError::Core(_)), "{err}");
    }
}
