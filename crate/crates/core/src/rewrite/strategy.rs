use std::collections::BTreeMap;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Presentation;
use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::scalars::Scalar;

/// A way of driving rules to a fixed point.
pub trait RewriteStrategy: Send + Sync {
    fn name(&self) -> &str;

    fn normalize(&self, p: &Presentation, x: &Element, step_limit: u64) -> Result<Element>;
}

/// Largest word first, leftmost redex, first declared rule.
#[derive(Debug, Default, Clone, Copy)]
pub struct LeftmostStrategy;

impl RewriteStrategy for LeftmostStrategy {
    fn name(&self) -> &str {
        "leftmost"
    }

    fn normalize(&self, p: &Presentation, x: &Element, step_limit: u64) -> Result<Element> {
        p.normal_form(x, step_limit)
    }
}

/// Picks a random reducible term and a random redex in it at every step.
/// Agrees with [`LeftmostStrategy`] exactly when the rules are confluent.
#[derive(Debug)]
pub struct RandomStrategy {
    rng: Mutex<ChaCha8Rng>,
}

impl RandomStrategy {
    pub fn new(seed: u64) -> Self {
        Self { rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)) }
    }
}

impl RewriteStrategy for RandomStrategy {
    fn name(&self) -> &str {
        "random"
    }

    fn normalize(&self, p: &Presentation, x: &Element, step_limit: u64) -> Result<Element> {
        let mut rng = self.rng.lock().expect("rng poisoned");
        let mut terms: BTreeMap<Word, Scalar> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut irreducible: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut steps = 0u64;
        loop {
            // sift irreducible words out so only redexes remain
            let words: Vec<Word> = terms.keys().cloned().collect();
            for w in words {
                if p.is_irreducible(&w) {
                    let c = terms.remove(&w).expect("present");
                    let e = irreducible.entry(w).or_insert_with(|| Scalar::zero(c.order()));
                    *e = e.checked_add(&c)?;
                }
            }
            if terms.is_empty() {
                break;
            }
            let pick = rng.gen_range(0..terms.len());
            let w = terms.keys().nth(pick).cloned().expect("in range");
            let c = terms.remove(&w).expect("present");
            let matches = p.all_matches(&w);
            let (pos, ri) = matches[rng.gen_range(0..matches.len())];
            steps += 1;
            if steps > step_limit {
                return Err(Error::StepLimit(step_limit));
            }
            for (nw, rc) in p.rewrite_at(&w, pos, ri) {
                let nc = c.checked_mul(&rc)?;
                let e = terms.entry(nw).or_insert_with(|| Scalar::zero(nc.order()));
                *e = e.checked_add(&nc)?;
            }
            terms.retain(|_, c| !c.is_zero());
        }
        irreducible.retain(|_, c| !c.is_zero());
        Ok(Element::from_terms(p.alphabet(), p.order(), irreducible))
    }
}

type Factory = Box<dyn Fn(u64) -> Box<dyn RewriteStrategy> + Send + Sync>;

/// Strategies by name, constructed with a seed.
pub struct StrategyRegistry {
    entries: BTreeMap<String, Factory>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self { entries: BTreeMap::new() }
    }

    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(u64) -> Box<dyn RewriteStrategy> + Send + Sync + 'static,
    {
        self.entries.insert(name.to_string(), Box::new(factory));
    }

    pub fn get(&self, name: &str, seed: u64) -> Result<Box<dyn RewriteStrategy>> {
        self.entries
            .get(name)
            .map(|f| f(seed))
            .ok_or_else(|| Error::Usage(format!("unknown rewrite strategy `{name}` (known: {})", self.names().join(", "))))
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register("leftmost", |_| Box::new(LeftmostStrategy));
        r.register("random", |seed| Box::new(RandomStrategy::new(seed)));
        r
    }
}
