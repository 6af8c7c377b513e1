//! Canonical text form of elements.
//!
//! Terms are listed in descending monomial order; every scalar term becomes
//! one printed term such as `-1/2*lam*eps*K^2*L`. Runs of one generator are
//! written as powers. Multi-slot elements separate tensor factors with `ox`.
//! The output is accepted verbatim by the expression parser.

use crate::freealg::{Alphabet, Element, Word};
use crate::scalars::term_factors;

fn block_factors(alphabet: &Alphabet, letters: &[crate::freealg::Letter]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = alphabet.name(letters[i].gen);
        out.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
        i = j;
    }
    out
}

fn format_term(alphabet: &Alphabet, w: &Word, scalar: Vec<String>, slots: u8) -> String {
    if slots == 0 {
        let mut f = scalar;
        f.extend(block_factors(alphabet, w.letters()));
        return if f.is_empty() { "1".to_string() } else { f.join("*") };
    }
    let blocks = w.slot_blocks();
    let mut parts = Vec::with_capacity(slots as usize);
    for s in 1..=slots {
        let mut f = if s == 1 { scalar.clone() } else { Vec::new() };
        if let Some(b) = blocks.get(&s) {
            f.extend(block_factors(alphabet, b.letters()));
        }
        parts.push(if f.is_empty() { "1".to_string() } else { f.join("*") });
    }
    parts.join(" ox ")
}

/// Prints a word alone (no coefficient).
pub fn format_word(alphabet: &Alphabet, w: &Word) -> String {
    format_term(alphabet, w, Vec::new(), w.max_slot())
}

pub fn format_element(x: &Element) -> String {
    let slots = x.max_slot();
    let alphabet = x.alphabet();
    let mut out = String::new();
    let mut first = true;
    for (w, c) in x.terms().rev() {
        for (k, v) in c.terms() {
            let (neg, factors) = term_factors(k, v);
            let body = format_term(alphabet, w, factors, slots);
            match (first, neg) {
                (true, false) => out.push_str(&body),
                (true, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
            first = false;
        }
    }
    if first {
        out.push('0');
    }
    out
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_element(self))
    }
}
