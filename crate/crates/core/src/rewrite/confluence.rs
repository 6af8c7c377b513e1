use serde::Serialize;

use super::Presentation;
use crate::error::Result;
use crate::freealg::{Element, Word};
use crate::print::{format_element, format_word};

/// An ambiguity word and its two one-step reducts.
#[derive(Debug, Clone, PartialEq)]
pub struct Ambiguity {
    pub word: Word,
    pub first_rule: usize,
    pub second_rule: usize,
    pub left: Element,
    pub right: Element,
}

fn reduct(p: &Presentation, w: &Word, pos: usize, ri: usize) -> Element {
    let mut out = Element::zero(p.alphabet(), p.order());
    for (nw, c) in p.rewrite_at(w, pos, ri) {
        out.add_term(nw, &c).expect("orders agree");
    }
    out
}

/// Overlap and inclusion ambiguities among the active rules whose word has
/// at most `max_overlap` letters.
pub fn critical_pairs(p: &Presentation, max_overlap: usize) -> Vec<Ambiguity> {
    let rules = p.active_rules();
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let u = ri.lhs.letters();
        for (j, rj) in rules.iter().enumerate() {
            let v = rj.lhs.letters();
            // overlaps: proper suffix of u equals proper prefix of v
            for k in 1..u.len().min(v.len()) {
                if u[u.len() - k..] != v[..k] {
                    continue;
                }
                let len = u.len() + v.len() - k;
                if len > max_overlap {
                    continue;
                }
                let mut letters = u.to_vec();
                letters.extend_from_slice(&v[k..]);
                let w = Word::from_letters(&letters);
                out.push(Ambiguity {
                    left: reduct(p, &w, 0, i),
                    right: reduct(p, &w, u.len() - k, j),
                    word: w,
                    first_rule: i,
                    second_rule: j,
                });
            }
            // inclusions: v occurs inside u
            if i != j && v.len() <= u.len() && u.len() <= max_overlap {
                for pos in 0..=u.len() - v.len() {
                    if u[pos..pos + v.len()] == *v {
                        let w = ri.lhs.clone();
                        out.push(Ambiguity {
                            left: reduct(p, &w, 0, i),
                            right: reduct(p, &w, pos, j),
                            word: w,
                            first_rule: i,
                            second_rule: j,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct AmbiguityStatus {
    pub word: String,
    pub rules: (String, String),
    pub resolved: bool,
    /// Normal form of the difference of the two reducts.
    pub difference: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub presentation: String,
    pub ok: bool,
    pub ambiguities: Vec<AmbiguityStatus>,
}

impl ConfluenceReport {
    pub fn unresolved(&self) -> impl Iterator<Item = &AmbiguityStatus> {
        self.ambiguities.iter().filter(|a| !a.resolved)
    }
}

pub fn check_local_confluence(p: &Presentation, max_overlap: usize, step_limit: u64) -> Result<ConfluenceReport> {
    let mut ambiguities = Vec::new();
    for amb in critical_pairs(p, max_overlap) {
        let diff = p.normal_form(&(&amb.left - &amb.right), step_limit)?;
        ambiguities.push(AmbiguityStatus {
            word: format_word(p.alphabet(), &amb.word),
            rules: (p.rule(amb.first_rule).name.clone(), p.rule(amb.second_rule).name.clone()),
            resolved: diff.is_zero(),
            difference: format_element(&diff),
        });
    }
    Ok(ConfluenceReport {
        presentation: p.name().to_string(),
        ok: ambiguities.iter().all(|a| a.resolved),
        ambiguities,
    })
}
