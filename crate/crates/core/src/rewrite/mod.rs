//! Presentations by oriented relations and normal forms by subword
//! rewriting.
//!
//! The monomial order is degree-lexicographic with the precedence given by
//! the alphabet (generators are listed in increasing precedence); letters in
//! a higher tensor slot are larger than letters in a lower one. Every rule
//! must strictly decrease this order, which makes rewriting terminate.

mod confluence;
mod strategy;

pub use confluence::{check_local_confluence, critical_pairs, Ambiguity, AmbiguityStatus, ConfluenceReport};
pub use strategy::{LeftmostStrategy, RandomStrategy, RewriteStrategy, StrategyRegistry};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Element, Letter, Word, MAX_SLOT};
use crate::print::format_element;
use crate::scalars::Scalar;

pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// `lhs -> rhs`, with `lhs` strictly above every word of `rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: Word,
    pub rhs: Element,
}

impl RewriteRule {
    pub fn new(name: impl Into<String>, lhs: Word, rhs: Element) -> Result<Self> {
        let name = name.into();
        if lhs.is_empty() {
            return Err(Error::Presentation(format!("rule `{name}` has an empty left-hand side")));
        }
        if let Some((top, _)) = rhs.leading() {
            if *top >= lhs {
                return Err(Error::NonDecreasingRule(name));
            }
        }
        Ok(Self { name, lhs, rhs })
    }

    /// `lhs - rhs` as an element.
    pub fn residual(&self) -> Element {
        let lhs = Element::word(self.rhs.alphabet(), self.lhs.clone(), self.rhs.order());
        &lhs - &self.rhs
    }
}

/// Generators, oriented relations and the tensor-slot layout.
///
/// `slots == 0` is the base algebra (slot-0 letters). `slots == n > 0` is the
/// n-fold tensor power: every base rule is copied into slots `1..=n` and
/// letters of distinct slots commute, lower slots moving left.
#[derive(Debug, Clone)]
pub struct Presentation {
    name: String,
    alphabet: Arc<Alphabet>,
    params: Vec<String>,
    order: u32,
    rules: Vec<RewriteRule>,
    slots: u8,
    active: Vec<RewriteRule>,
    index: HashMap<Vec<Letter>, usize>,
    lhs_lens: Vec<usize>,
    step_limit: u64,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        alphabet: Arc<Alphabet>,
        params: Vec<String>,
        order: u32,
        rules: Vec<RewriteRule>,
    ) -> Result<Self> {
        Self::build(name.into(), alphabet, params, order, rules, 0)
    }

    fn build(
        name: String,
        alphabet: Arc<Alphabet>,
        params: Vec<String>,
        order: u32,
        rules: Vec<RewriteRule>,
        slots: u8,
    ) -> Result<Self> {
        if slots > MAX_SLOT {
            return Err(Error::SlotOutOfRange(slots));
        }
        for r in &rules {
            if r.rhs.alphabet() != &alphabet && !Arc::ptr_eq(r.rhs.alphabet(), &alphabet) {
                return Err(Error::Presentation(format!("rule `{}` uses another alphabet", r.name)));
            }
            if r.rhs.order() != order {
                return Err(Error::OrderMismatch(order, r.rhs.order()));
            }
            if r.lhs.max_slot() != 0 || r.rhs.max_slot() != 0 {
                return Err(Error::Presentation(format!("rule `{}` is not a slot-0 rule", r.name)));
            }
        }
        let mut active = Vec::new();
        if slots == 0 {
            active.extend(rules.iter().cloned());
        } else {
            for s in 1..=slots {
                for r in &rules {
                    active.push(RewriteRule {
                        name: format!("{}@{}", r.name, s),
                        lhs: r.lhs.retag(s),
                        rhs: r.rhs.retag(s)?,
                    });
                }
            }
            let n = alphabet.len() as u16;
            for hi in 2..=slots {
                for lo in 1..hi {
                    for x in 0..n {
                        for y in 0..n {
                            let (a, b) = (Letter::new(x, hi), Letter::new(y, lo));
                            active.push(RewriteRule {
                                name: format!("{}@{} {}@{} swap", alphabet.name(x), hi, alphabet.name(y), lo),
                                lhs: Word::from_letters(&[a, b]),
                                rhs: Element::word(&alphabet, Word::from_letters(&[b, a]), order),
                            });
                        }
                    }
                }
            }
        }
        let mut index = HashMap::new();
        let mut lhs_lens = Vec::new();
        for (i, r) in active.iter().enumerate() {
            index.entry(r.lhs.letters().to_vec()).or_insert(i);
            if !lhs_lens.contains(&r.lhs.len()) {
                lhs_lens.push(r.lhs.len());
            }
        }
        lhs_lens.sort_unstable();
        Ok(Self { name, alphabet, params, order, rules, slots, active, index, lhs_lens, step_limit: DEFAULT_STEP_LIMIT })
    }

    /// The `n`-fold tensor power of the base presentation.
    pub fn tensor(&self, n: u8) -> Result<Self> {
        let mut p = Self::build(self.name.clone(), self.alphabet.clone(), self.params.clone(), self.order, self.rules.clone(), n)?;
        p.step_limit = self.step_limit;
        Ok(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn slots(&self) -> u8 {
        self.slots
    }

    /// Base rules as declared.
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Rules used for rewriting, including slot copies and slot swaps.
    pub fn active_rules(&self) -> &[RewriteRule] {
        &self.active
    }

    pub fn rule(&self, i: usize) -> &RewriteRule {
        &self.active[i]
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Element::generator(&self.alphabet, name, self.order)
    }

    pub fn one(&self) -> Element {
        Element::one(&self.alphabet, self.order)
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.alphabet, self.order)
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        Element::scalar(&self.alphabet, c)
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let mut p = self.clone();
        p.name = name.into();
        p
    }

    /// Same presentation with a different truncation order.
    pub fn with_order(&self, order: u32) -> Result<Self> {
        let rules = self
            .rules
            .iter()
            .map(|r| RewriteRule::new(r.name.clone(), r.lhs.clone(), r.rhs.with_order(order)))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Self::build(self.name.clone(), self.alphabet.clone(), self.params.clone(), order, rules, self.slots)?;
        p.step_limit = self.step_limit;
        Ok(p)
    }

    /// Replaces the base rules (validation and slot layout are redone).
    pub fn with_rules(&self, rules: Vec<RewriteRule>) -> Result<Self> {
        let mut p = Self::build(self.name.clone(), self.alphabet.clone(), self.params.clone(), self.order, rules, self.slots)?;
        p.step_limit = self.step_limit;
        Ok(p)
    }

    /// Same presentation with another limit for `nf`.
    pub fn with_step_limit(&self, step_limit: u64) -> Self {
        let mut p = self.clone();
        p.step_limit = step_limit;
        p
    }

    pub fn step_limit(&self) -> u64 {
        self.step_limit
    }

    /// Rule set with parameter `name` set to zero.
    pub fn specialize_zero(&self, name: &str) -> Result<Self> {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let rhs = r.rhs.map_scalars(|c| c.specialize_zero(name))?;
                RewriteRule::new(r.name.clone(), r.lhs.clone(), rhs)
            })
            .collect::<Result<Vec<_>>>()?;
        self.with_rules(rules)
    }

    /// Leftmost position where some rule matches, and the first declared rule
    /// matching there.
    pub fn find_match(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            let mut best: Option<usize> = None;
            for &len in &self.lhs_lens {
                if pos + len > letters.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&letters[pos..pos + len]) {
                    best = Some(best.map_or(r, |b: usize| b.min(r)));
                }
            }
            if let Some(r) = best {
                return Some((pos, r));
            }
        }
        None
    }

    /// Every (position, rule) whose left-hand side occurs in `w`.
    pub fn all_matches(&self, w: &Word) -> Vec<(usize, usize)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for (ri, r) in self.active.iter().enumerate() {
            let n = r.lhs.len();
            if n > letters.len() {
                continue;
            }
            for pos in 0..=letters.len() - n {
                if &letters[pos..pos + n] == r.lhs.letters() {
                    out.push((pos, ri));
                }
            }
        }
        out
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_match(w).is_none()
    }

    /// Replaces the occurrence of rule `ri`'s lhs at `pos` in `w`.
    pub fn rewrite_at(&self, w: &Word, pos: usize, ri: usize) -> Vec<(Word, Scalar)> {
        let r = &self.active[ri];
        let (pre, post) = (&w.letters()[..pos], &w.letters()[pos + r.lhs.len()..]);
        r.rhs
            .terms()
            .map(|(rw, rc)| {
                let mut v: smallvec::SmallVec<[Letter; 8]> = smallvec::SmallVec::from_slice(pre);
                v.extend_from_slice(rw.letters());
                v.extend_from_slice(post);
                (Word(v), rc.clone())
            })
            .collect()
    }

    /// Deterministic normal form with this presentation's step limit.
    pub fn nf(&self, x: &Element) -> Result<Element> {
        self.normal_form(x, self.step_limit)
    }

    /// Deterministic normal form: the largest pending word is rewritten at
    /// its leftmost redex (first declared rule at that position). Rewriting
    /// only produces smaller words, so every word is visited once with its
    /// accumulated coefficient.
    pub fn normal_form(&self, x: &Element, step_limit: u64) -> Result<Element> {
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet.names().join(","), x.alphabet().names().join(",")));
        }
        if x.order() != self.order {
            return Err(Error::OrderMismatch(self.order, x.order()));
        }
        let mut pending: BTreeMap<Word, Scalar> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut steps = 0u64;
        while let Some((w, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            match self.find_match(&w) {
                None => {
                    done.insert(w, c);
                }
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > step_limit {
                        return Err(Error::StepLimit(step_limit));
                    }
                    for (nw, rc) in self.rewrite_at(&w, pos, ri) {
                        let nc = c.checked_mul(&rc)?;
                        match pending.get_mut(&nw) {
                            Some(e) => {
                                *e = e.checked_add(&nc)?;
                            }
                            None => {
                                pending.insert(nw, nc);
                            }
                        }
                    }
                }
            }
        }
        Ok(Element::from_terms(&self.alphabet, self.order, done))
    }

    /// Normal form, then `true` iff zero.
    pub fn reduces_to_zero(&self, x: &Element) -> Result<bool> {
        Ok(self.nf(x)?.is_zero())
    }

    pub fn format(&self, x: &Element) -> String {
        format_element(x)
    }
}
