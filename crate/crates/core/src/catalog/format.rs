//! Line-oriented presentation files.
//!
//! ```text
//! # comment
//! [params]        parameter names
//! [generators]    generator names, increasing precedence
//! [rules]         lhs -> rhs
//! [coproduct]     g -> 2-slot expression (`ox` between factors)
//! [counit]        g -> scalar
//! [antipode]      g -> expression
//! [star]          g -> expression
//! [excluded]      generators without coproduct, counit and antipode
//! ```
//!
//! A file with a `[coproduct]` section describes a Hopf presentation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Element, GeneratorMap, MapKind};
use crate::hopf::HopfPresentation;
use crate::print::{format_element, format_word};
use crate::rewrite::{Presentation, RewriteRule};
use crate::scalars::{Scalar, MAX_ORDER};

use super::parse::{parse_at, Scope, RESERVED};

#[derive(Debug, Clone)]
pub enum Loaded {
    Plain(Presentation),
    Hopf(Box<HopfPresentation>),
}

impl Loaded {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Loaded::Plain(p) => p,
            Loaded::Hopf(h) => h.base(),
        }
    }

    pub fn hopf(&self) -> Option<&HopfPresentation> {
        match self {
            Loaded::Plain(_) => None,
            Loaded::Hopf(h) => Some(h),
        }
    }

    pub fn into_hopf(self) -> Result<HopfPresentation> {
        match self {
            Loaded::Hopf(h) => Ok(*h),
            Loaded::Plain(p) => Err(Error::Presentation(format!("`{}` has no Hopf structure", p.name()))),
        }
    }
}

const SECTIONS: [&str; 8] = ["params", "generators", "rules", "coproduct", "counit", "antipode", "star", "excluded"];

struct Line<'a> {
    no: usize,
    col: usize,
    text: &'a str,
}

fn strip_comment(s: &str) -> &str {
    match s.find('#') {
        Some(i) => &s[..i],
        None => s,
    }
}

fn names_in<'a>(line: &Line<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.text.char_indices().chain(std::iter::once((line.text.len(), ' '))) {
        let sep = ch.is_whitespace() || ch == ',';
        match (start, sep) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push((line.col + line.text[..s].chars().count(), &line.text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn check_identifier(name: &str, line: usize, col: usize) -> Result<()> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_');
    if !ok {
        return Err(Error::syntax(line, col, format!("`{name}` is not an identifier")));
    }
    if RESERVED.contains(&name) {
        return Err(Error::syntax(line, col, format!("`{name}` is reserved")));
    }
    Ok(())
}

/// Column and text of one side of `->`.
type Side<'a> = (usize, &'a str);

fn split_arrow<'a>(line: &Line<'a>) -> Result<(Side<'a>, Side<'a>)> {
    let i = line
        .text
        .find("->")
        .ok_or_else(|| Error::syntax(line.no, line.col, "expected `lhs -> rhs`"))?;
    let lhs = &line.text[..i];
    let rhs = &line.text[i + 2..];
    let rhs_col = line.col + line.text[..i + 2].chars().count();
    Ok(((line.col, lhs), (rhs_col, rhs)))
}

/// Parses presentation text. `name` labels the result; `order` is the
/// truncation order of all coefficients.
pub fn load_presentation(source: &str, name: &str, order: u32) -> Result<Loaded> {
    if order > MAX_ORDER {
        return Err(Error::Usage(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let mut sections: BTreeMap<&str, Vec<Line<'_>>> = BTreeMap::new();
    let mut seen: Vec<&str> = Vec::new();
    let mut current: Option<&str> = None;
    for (idx, raw) in source.lines().enumerate() {
        let no = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body.len() - body.trim_start().len() + 1;
        if let Some(inner) = trimmed.strip_prefix('[') {
            let sec = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::syntax(no, col, "unterminated section header"))?
                .trim();
            let sec = SECTIONS
                .iter()
                .find(|s| **s == sec)
                .ok_or_else(|| Error::syntax(no, col, format!("unknown section `[{sec}]`")))?;
            if seen.contains(sec) {
                return Err(Error::syntax(no, col, format!("duplicate section `[{sec}]`")));
            }
            seen.push(sec);
            current = Some(sec);
            sections.entry(sec).or_default();
            continue;
        }
        let sec = current.ok_or_else(|| Error::syntax(no, col, "content before the first section"))?;
        sections.entry(sec).or_default().push(Line { no, col, text: trimmed });
    }

    let mut params: Vec<String> = Vec::new();
    for line in sections.get("params").into_iter().flatten() {
        for (col, n) in names_in(line) {
            check_identifier(n, line.no, col)?;
            if params.iter().any(|p| p == n) {
                return Err(Error::syntax(line.no, col, format!("duplicate parameter `{n}`")));
            }
            params.push(n.to_string());
        }
    }
    let mut gens: Vec<String> = Vec::new();
    for line in sections.get("generators").into_iter().flatten() {
        for (col, n) in names_in(line) {
            check_identifier(n, line.no, col)?;
            if gens.iter().any(|g| g == n) || params.iter().any(|p| p == n) {
                return Err(Error::syntax(line.no, col, format!("`{n}` declared twice")));
            }
            gens.push(n.to_string());
        }
    }
    if gens.is_empty() {
        return Err(Error::Presentation("no generators declared".into()));
    }
    let alphabet = Alphabet::new(gens)?;
    let scope = Scope { alphabet: &alphabet, params: &params, order };

    let mut rules = Vec::new();
    for line in sections.get("rules").into_iter().flatten() {
        let ((lc, lt), (rc, rt)) = split_arrow(line)?;
        let lhs = parse_at(lt, scope, line.no, lc)?;
        let rhs = parse_at(rt, scope, line.no, rc)?;
        let word = match lhs.terms().next() {
            Some((w, c)) if lhs.len() == 1 && c.is_one() && !w.is_empty() && w.max_slot() == 0 => w.clone(),
            _ => return Err(Error::syntax(line.no, lc, "left-hand side must be a single word")),
        };
        if rhs.max_slot() != 0 {
            return Err(Error::syntax(line.no, rc, "tensor product in a rule"));
        }
        let label = format!("{} -> {}", format_word(&alphabet, &word), format_element(&rhs));
        rules.push(RewriteRule::new(label, word, rhs)?);
    }
    let presentation = Presentation::new(name, alphabet.clone(), params.clone(), order, rules)?;

    let has_hopf = ["coproduct", "counit", "antipode", "star", "excluded"]
        .iter()
        .any(|s| sections.contains_key(s));
    if !has_hopf {
        return Ok(Loaded::Plain(presentation));
    }

    let mut excluded = vec![false; alphabet.len()];
    for line in sections.get("excluded").into_iter().flatten() {
        for (col, n) in names_in(line) {
            let g = alphabet
                .index(n)
                .ok_or_else(|| Error::UnknownSymbol { name: n.into(), line: line.no, col })?;
            excluded[g as usize] = true;
        }
    }

    let read_map = |sec: &str| -> Result<Vec<(u16, usize, usize, Element)>> {
        let mut out: Vec<(u16, usize, usize, Element)> = Vec::new();
        for line in sections.get(sec).into_iter().flatten() {
            let ((lc, lt), (rc, rt)) = split_arrow(line)?;
            let g = lt.trim();
            let gcol = lc + lt.chars().count() - lt.trim_start().chars().count();
            let gi = alphabet
                .index(g)
                .ok_or_else(|| Error::UnknownSymbol { name: g.into(), line: line.no, col: gcol })?;
            if out.iter().any(|(x, ..)| *x == gi) {
                return Err(Error::syntax(line.no, gcol, format!("`{g}` given twice in [{sec}]")));
            }
            out.push((gi, line.no, rc, parse_at(rt, scope, line.no, rc)?));
        }
        Ok(out)
    };

    let mut coproduct = GeneratorMap::new(&alphabet, &alphabet, MapKind::Homomorphism);
    for (g, no, col, img) in read_map("coproduct")? {
        if img.max_slot() > 2 {
            return Err(Error::syntax(no, col, "coproduct image must have at most two tensor factors"));
        }
        // a bare scalar such as `1` is read as 1 (x) 1
        if img.max_slot() == 0 && img.max_degree() > 0 {
            return Err(Error::syntax(no, col, "coproduct image must be written with `ox`"));
        }
        coproduct.set(alphabet.name(g), img)?;
    }
    let mut counit: Vec<Option<Scalar>> = vec![None; alphabet.len()];
    for (g, no, col, img) in read_map("counit")? {
        let s = img
            .as_scalar()
            .ok_or_else(|| Error::syntax(no, col, "counit value must be a scalar"))?;
        counit[g as usize] = Some(s);
    }
    let mut antipode = GeneratorMap::new(&alphabet, &alphabet, MapKind::Antihomomorphism);
    for (g, no, col, img) in read_map("antipode")? {
        if img.max_slot() != 0 {
            return Err(Error::syntax(no, col, "tensor product in an antipode image"));
        }
        antipode.set(alphabet.name(g), img)?;
    }
    let star_lines = read_map("star")?;
    let star = if sections.contains_key("star") {
        let mut s = GeneratorMap::new(&alphabet, &alphabet, MapKind::AntilinearAntihomomorphism);
        for (g, no, col, img) in star_lines {
            if img.max_slot() != 0 {
                return Err(Error::syntax(no, col, "tensor product in a star image"));
            }
            s.set(alphabet.name(g), img)?;
        }
        Some(s)
    } else {
        None
    };
    Ok(Loaded::Hopf(Box::new(HopfPresentation::new(presentation, coproduct, counit, antipode, star, excluded)?)))
}

/// Canonical text of a presentation; loading it back gives the same
/// presentation.
pub fn presentation_to_text(p: &Presentation, h: Option<&HopfPresentation>) -> String {
    let alpha = p.alphabet();
    let mut out = String::new();
    if !p.params().is_empty() {
        out.push_str("[params]\n");
        out.push_str(&p.params().join(" "));
        out.push_str("\n\n");
    }
    out.push_str("[generators]\n");
    out.push_str(&alpha.names().join(" "));
    out.push_str("\n\n[rules]\n");
    for r in p.rules() {
        out.push_str(&format!("{} -> {}\n", format_word(alpha, &r.lhs), format_element(&r.rhs)));
    }
    let Some(h) = h else {
        return out;
    };
    let gens = 0..alpha.len() as u16;
    out.push_str("\n[coproduct]\n");
    for g in gens.clone().filter(|g| !h.is_excluded(*g)) {
        let img = h.coproduct_map().image(g).expect("validated");
        out.push_str(&format!("{} -> {}\n", alpha.name(g), format_element(img)));
    }
    out.push_str("\n[counit]\n");
    for g in gens.clone().filter(|g| !h.is_excluded(*g)) {
        let c = h.counit_of(g).expect("validated");
        out.push_str(&format!("{} -> {}\n", alpha.name(g), format_element(&p.scalar(c.clone()))));
    }
    out.push_str("\n[antipode]\n");
    for g in gens.clone().filter(|g| !h.is_excluded(*g)) {
        let img = h.antipode_map().image(g).expect("validated");
        out.push_str(&format!("{} -> {}\n", alpha.name(g), format_element(img)));
    }
    if let Some(s) = h.star_map() {
        out.push_str("\n[star]\n");
        for g in gens.clone() {
            if let Some(img) = s.image(g) {
                out.push_str(&format!("{} -> {}\n", alpha.name(g), format_element(img)));
            }
        }
    }
    let ex = h.excluded_names();
    if !ex.is_empty() {
        out.push_str("\n[excluded]\n");
        out.push_str(&ex.join(" "));
        out.push('\n');
    }
    out
}

pub fn loaded_to_text(l: &Loaded) -> String {
    presentation_to_text(l.presentation(), l.hopf())
}
