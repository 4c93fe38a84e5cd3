//! Plain-text formats: multiplication tables (`.sgt`), partial-map
//! generators (`.pgen`), action dumps (`.act`) and Rees matrix descriptions
//! (`.rees`). Blank lines and everything after `#` are ignored.

use std::fmt::Write as _;

use crate::action::PartialAction;
use crate::builders;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::semigroup::{FiniteSemigroup, PartialMap, DEFAULT_CLOSURE_CAP, UNDEF};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Sgt,
    Pgen,
    Rees,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "sgt" => Ok(Format::Sgt),
            "pgen" => Ok(Format::Pgen),
            "rees" => Ok(Format::Rees),
            _ => Err(Error::BadParameters(format!(
                "unknown format {s:?}; use sgt, pgen or rees"
            ))),
        }
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a number, got {tok:?}")))
}

/// Format from the first meaningful line: a `G=` header means `.rees`.
pub fn detect(text: &str) -> Format {
    match lines(text).next() {
        Some((_, l)) if l.starts_with("G=") => Format::Rees,
        _ => Format::Sgt,
    }
}

pub fn parse_semigroup(text: &str, format: Format) -> Result<FiniteSemigroup> {
    match format {
        Format::Sgt => parse_sgt(text),
        Format::Pgen => {
            let (degree, gens) = parse_pgen(text)?;
            Ok(FiniteSemigroup::from_partial_maps(degree, &gens, DEFAULT_CLOSURE_CAP)?.0)
        }
        Format::Rees => parse_rees(text),
    }
}

pub fn parse_sgt(text: &str) -> Result<FiniteSemigroup> {
    let mut it = lines(text);
    let (line, l) = it.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let n = number(line, l)?;
    let mut rows = Vec::with_capacity(n);
    for (line, l) in it.by_ref().take(n) {
        let row = l
            .split_whitespace()
            .map(|t| number(line, t))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(line, format!("expected {n} rows, found {}", rows.len())));
    }
    if let Some((line, _)) = it.next() {
        return Err(parse_err(line, "trailing data after the table"));
    }
    FiniteSemigroup::from_table(&rows)
}

pub fn write_sgt(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.size());
    for row in s.rows() {
        let toks: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

fn parse_point(line: usize, tok: &str, degree: usize) -> Result<usize> {
    if tok == "-" {
        return Ok(UNDEF);
    }
    let p = number(line, tok)?;
    if p >= degree {
        return Err(parse_err(line, format!("point {p} out of range for degree {degree}")));
    }
    Ok(p)
}

fn parse_rows_of_points(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut it = lines(text);
    let (line, l) = it.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let degree = number(line, l)?;
    let mut rows = Vec::new();
    for (line, l) in it {
        let row = l
            .split_whitespace()
            .map(|t| parse_point(line, t, degree))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != degree {
            return Err(parse_err(
                line,
                format!("expected {degree} tokens, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok((degree, rows))
}

pub fn parse_pgen(text: &str) -> Result<(usize, Vec<PartialMap>)> {
    let (degree, rows) = parse_rows_of_points(text)?;
    if rows.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    Ok((degree, rows.into_iter().map(PartialMap::new).collect()))
}

pub fn write_pgen(degree: usize, gens: &[PartialMap]) -> String {
    let mut out = format!("{degree}\n");
    for g in gens {
        let toks: Vec<String> = g
            .images()
            .iter()
            .map(|&p| if p == UNDEF { "-".into() } else { p.to_string() })
            .collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_act(text: &str) -> Result<PartialAction> {
    let (degree, rows) = parse_rows_of_points(text)?;
    let elements = rows.len();
    Ok(PartialAction::from_images(
        elements,
        degree,
        rows.into_iter().flatten().collect(),
    ))
}

pub fn write_act(a: &PartialAction) -> String {
    a.to_text()
}

/// A parsed `.rees` description.
#[derive(Debug, Clone)]
pub struct ReesSpec {
    pub group: Group,
    pub sandwich: Vec<Vec<usize>>,
    pub zero: bool,
}

pub fn parse_rees_spec(text: &str) -> Result<ReesSpec> {
    let mut it = lines(text);
    let (line, header) = it.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let (mut g, mut a, mut b, mut zero) = (None, None, None, None);
    for tok in header.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got {tok:?}")))?;
        let v = number(line, value)?;
        match key {
            "G" => g = Some(v),
            "A" => a = Some(v),
            "B" => b = Some(v),
            "zero" if v <= 1 => zero = Some(v == 1),
            _ => return Err(parse_err(line, format!("unexpected header field {tok:?}"))),
        }
    }
    let missing = || parse_err(line, "header needs G=, A=, B= and zero=");
    let (g, a, b, zero) = (
        g.ok_or_else(missing)?,
        a.ok_or_else(missing)?,
        b.ok_or_else(missing)?,
        zero.ok_or_else(missing)?,
    );
    let mut table = Vec::with_capacity(g);
    let mut last = line;
    for _ in 0..g {
        let (line, l) = it.next().ok_or_else(|| parse_err(last, "group table ends early"))?;
        last = line;
        table.push(
            l.split_whitespace()
                .map(|t| number(line, t))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let group = Group::from_table(&table).map_err(|e| parse_err(last, format!("group table: {e}")))?;
    let mut sandwich = Vec::with_capacity(b);
    for _ in 0..b {
        let (line, l) = it.next().ok_or_else(|| parse_err(last, "sandwich matrix ends early"))?;
        last = line;
        let row = l
            .split_whitespace()
            .map(|t| number(line, t))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != a {
            return Err(parse_err(
                line,
                format!("expected {a} sandwich entries, found {}", row.len()),
            ));
        }
        sandwich.push(row);
    }
    if let Some((line, _)) = it.next() {
        return Err(parse_err(line, "trailing data after the sandwich matrix"));
    }
    Ok(ReesSpec { group, sandwich, zero })
}

pub fn parse_rees(text: &str) -> Result<FiniteSemigroup> {
    let spec = parse_rees_spec(text)?;
    builders::rees(&spec.group, &spec.sandwich, spec.zero)
}

pub fn write_rees(group: &Group, sandwich: &[Vec<usize>], zero: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "G={} A={} B={} zero={}",
        group.order(),
        sandwich.first().map_or(0, Vec::len),
        sandwich.len(),
        u8::from(zero)
    );
    for row in group.rows().iter().chain(sandwich) {
        let toks: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}
