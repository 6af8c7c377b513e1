//! Coproduct, counit, antipode and star attached to a presentation, and the
//! checks of the Hopf-algebra axioms.
//!
//! Structure maps are given on generators and extended by their kind:
//! the coproduct and counit multiplicatively, the antipode
//! antimultiplicatively, the star antilinearly and antimultiplicatively.
//! Generators in the excluded set (computational inverses such as `J`) carry
//! no coproduct, counit or antipode.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Element, GeneratorMap, MapKind, Word};
use crate::report::CheckReport;
use crate::rewrite::Presentation;
use crate::scalars::Scalar;

#[derive(Debug, Clone)]
pub struct HopfPresentation {
    base: Presentation,
    two: Presentation,
    three: Presentation,
    coproduct: GeneratorMap,
    counit: Vec<Option<Scalar>>,
    antipode: GeneratorMap,
    star: Option<GeneratorMap>,
    excluded: Vec<bool>,
}

impl HopfPresentation {
    pub fn new(
        base: Presentation,
        coproduct: GeneratorMap,
        counit: Vec<Option<Scalar>>,
        antipode: GeneratorMap,
        star: Option<GeneratorMap>,
        excluded: Vec<bool>,
    ) -> Result<Self> {
        let alpha = base.alphabet().clone();
        let n = alpha.len();
        if counit.len() != n || excluded.len() != n {
            return Err(Error::Presentation("counit/excluded tables do not match the alphabet".into()));
        }
        if coproduct.kind() != MapKind::Homomorphism || antipode.kind() != MapKind::Antihomomorphism {
            return Err(Error::Presentation("coproduct must be a homomorphism, antipode an antihomomorphism".into()));
        }
        if let Some(s) = &star {
            if s.kind() != MapKind::AntilinearAntihomomorphism || !s.is_total() {
                return Err(Error::Presentation("star must be a total antilinear antihomomorphism".into()));
            }
        }
        for g in 0..n as u16 {
            let name = alpha.name(g);
            if excluded[g as usize] {
                continue;
            }
            let d = coproduct
                .image(g)
                .ok_or_else(|| Error::Presentation(format!("no coproduct for `{name}`")))?;
            if d.max_slot() > 2 || d.terms().any(|(w, _)| w.letters().iter().any(|l| l.slot == 0)) {
                return Err(Error::Presentation(format!("coproduct of `{name}` is not a 2-slot element")));
            }
            if (0..n as u16).any(|e| excluded[e as usize] && d.mentions_generator(e)) {
                return Err(Error::Presentation(format!("coproduct of `{name}` uses an excluded generator")));
            }
            if counit[g as usize].is_none() {
                return Err(Error::Presentation(format!("no counit for `{name}`")));
            }
            if antipode.image(g).is_none() {
                return Err(Error::Presentation(format!("no antipode for `{name}`")));
            }
        }
        let two = base.tensor(2)?;
        let three = base.tensor(3)?;
        Ok(Self { base, two, three, coproduct, counit, antipode, star, excluded })
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn two(&self) -> &Presentation {
        &self.two
    }

    pub fn three(&self) -> &Presentation {
        &self.three
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.base.alphabet()
    }

    pub fn coproduct_map(&self) -> &GeneratorMap {
        &self.coproduct
    }

    pub fn antipode_map(&self) -> &GeneratorMap {
        &self.antipode
    }

    pub fn star_map(&self) -> Option<&GeneratorMap> {
        self.star.as_ref()
    }

    pub fn counit_of(&self, gen: u16) -> Option<&Scalar> {
        self.counit.get(gen as usize).and_then(Option::as_ref)
    }

    pub fn is_excluded(&self, gen: u16) -> bool {
        self.excluded[gen as usize]
    }

    pub fn excluded_names(&self) -> Vec<&str> {
        (0..self.alphabet().len() as u16)
            .filter(|g| self.is_excluded(*g))
            .map(|g| self.alphabet().name(g))
            .collect()
    }

    fn first_excluded(&self, x: &Element) -> Option<u16> {
        (0..self.alphabet().len() as u16).find(|g| self.is_excluded(*g) && x.mentions_generator(*g))
    }

    fn reject_excluded(&self, x: &Element) -> Result<()> {
        match self.first_excluded(x) {
            Some(g) => Err(Error::Excluded(self.alphabet().name(g).to_string())),
            None => Ok(()),
        }
    }

    /// Same structure with the rule set replaced (all maps kept).
    pub fn with_base(&self, base: Presentation) -> Result<Self> {
        Self::new(
            base,
            self.coproduct.clone(),
            self.counit.clone(),
            self.antipode.clone(),
            self.star.clone(),
            self.excluded.clone(),
        )
    }

    /// Same structure with another normal-form step limit in every slot
    /// count.
    pub fn with_step_limit(&self, step_limit: u64) -> Self {
        let mut h = self.clone();
        h.base = h.base.with_step_limit(step_limit);
        h.two = h.two.with_step_limit(step_limit);
        h.three = h.three.with_step_limit(step_limit);
        h
    }

    /// Same structure at another truncation order.
    pub fn with_order(&self, order: u32) -> Result<Self> {
        let f = |e: &Element| Ok(e.with_order(order));
        Self::new(
            self.base.with_order(order)?,
            self.coproduct.map_images(f)?,
            self.counit.iter().map(|c| c.as_ref().map(|c| c.with_order(order))).collect(),
            self.antipode.map_images(f)?,
            self.star.as_ref().map(|s| s.map_images(f)).transpose()?,
            self.excluded.clone(),
        )
    }

    /// Sets a parameter to zero everywhere.
    pub fn specialize_zero(&self, name: &str) -> Result<Self> {
        let f = |e: &Element| e.map_scalars(|c| c.specialize_zero(name));
        Self::new(
            self.base.specialize_zero(name)?,
            self.coproduct.map_images(f)?,
            self.counit
                .iter()
                .map(|c| c.as_ref().map(|c| c.specialize_zero(name)).transpose())
                .collect::<Result<Vec<_>>>()?,
            self.antipode.map_images(f)?,
            self.star.as_ref().map(|s| s.map_images(f)).transpose()?,
            self.excluded.clone(),
        )
    }

    /// Raw (unreduced) coproduct of a word.
    fn delta_word(&self, w: &Word) -> Result<Element> {
        self.coproduct.apply_word(w, self.base.order())
    }

    fn counit_word(&self, w: &Word) -> Result<Scalar> {
        let mut acc = Scalar::one(self.base.order());
        for l in w.letters() {
            let c = self
                .counit_of(l.gen)
                .ok_or_else(|| Error::Excluded(self.alphabet().name(l.gen).to_string()))?;
            acc = acc.checked_mul(c)?;
        }
        Ok(acc)
    }

    /// Coproduct of a slot-0 element, reduced in the 2-slot algebra.
    pub fn coproduct(&self, x: &Element) -> Result<Element> {
        let x = self.base.nf(x)?;
        self.reject_excluded(&x)?;
        self.two.nf(&self.coproduct.apply(&x)?)
    }

    /// Coproduct applied without reducing the input first.
    pub fn coproduct_raw(&self, x: &Element) -> Result<Element> {
        self.reject_excluded(x)?;
        self.two.nf(&self.coproduct.apply(x)?)
    }

    pub fn counit(&self, x: &Element) -> Result<Scalar> {
        let x = self.base.nf(x)?;
        self.reject_excluded(&x)?;
        let mut acc = Scalar::zero(self.base.order());
        for (w, c) in x.terms() {
            acc = acc.checked_add(&c.checked_mul(&self.counit_word(w)?)?)?;
        }
        Ok(acc)
    }

    pub fn antipode(&self, x: &Element) -> Result<Element> {
        let x = self.base.nf(x)?;
        self.reject_excluded(&x)?;
        self.base.nf(&self.antipode.apply(&x)?)
    }

    pub fn star(&self, x: &Element) -> Result<Element> {
        let s = self.star.as_ref().ok_or_else(|| Error::Presentation("no star structure".into()))?;
        self.base.nf(&s.apply(x)?)
    }

    /// `(Delta (x) id)` on a 2-slot element, landing in 3 slots.
    pub fn delta_left(&self, y: &Element) -> Result<Element> {
        let alpha = self.alphabet().clone();
        let order = self.base.order();
        y.map_slot_blocks(&alpha, false, |slot, block| match slot {
            1 => self.delta_word(block),
            2 => Element::word(&alpha, block.clone(), order).retag(3),
            s => Err(Error::SlotOutOfRange(s)),
        })
    }

    /// `(id (x) Delta)` on a 2-slot element, landing in 3 slots.
    pub fn delta_right(&self, y: &Element) -> Result<Element> {
        let alpha = self.alphabet().clone();
        let order = self.base.order();
        y.map_slot_blocks(&alpha, false, |slot, block| match slot {
            1 => Element::word(&alpha, block.clone(), order).retag(1),
            2 => self.delta_word(block)?.shift_slots(1),
            s => Err(Error::SlotOutOfRange(s)),
        })
    }

    /// `(eps (x) id)` if `slot == 1`, `(id (x) eps)` if `slot == 2`.
    pub fn counit_on_slot(&self, y: &Element, slot: u8) -> Result<Element> {
        let alpha = self.alphabet().clone();
        let order = self.base.order();
        y.map_slot_blocks(&alpha, false, |s, block| {
            if s == slot {
                Ok(Element::scalar(&alpha, self.counit_word(block)?))
            } else {
                Ok(Element::word(&alpha, block.clone(), order))
            }
        })
    }

    /// `m (S (x) id)` if `slot == 1`, `m (id (x) S)` if `slot == 2`.
    pub fn antipode_convolution(&self, y: &Element, slot: u8) -> Result<Element> {
        let alpha = self.alphabet().clone();
        let order = self.base.order();
        y.map_slot_blocks(&alpha, false, |s, block| {
            if s == slot {
                self.antipode.apply_word(block, order)
            } else {
                Ok(Element::word(&alpha, block.clone(), order))
            }
        })
    }

    /// `(* (x) *)` on a multi-slot element; coefficients conjugated once.
    pub fn star_slotwise(&self, y: &Element) -> Result<Element> {
        let s = self.star.as_ref().ok_or_else(|| Error::Presentation("no star structure".into()))?;
        let alpha = self.alphabet().clone();
        let order = self.base.order();
        y.map_slot_blocks(&alpha, true, |slot, block| {
            let img = s.apply_word(block, order)?;
            if slot == 0 {
                Ok(img)
            } else {
                img.retag(slot)
            }
        })
    }

    fn gen_element(&self, g: u16) -> Element {
        Element::word(self.alphabet(), Word::from_letters(&[crate::freealg::Letter::new(g, 0)]), self.base.order())
    }

    fn rule_mentions_excluded(&self, lhs: &Element, rhs: &Element) -> bool {
        self.first_excluded(lhs).is_some() || self.first_excluded(rhs).is_some()
    }
}

const TAG_DELTA_HOM: &str = "Delta(lhs) = Delta(rhs)";
const TAG_COASSOC: &str = "(Delta x id) Delta = (id x Delta) Delta";
const TAG_COUNIT: &str = "(eps x id) Delta = id = (id x eps) Delta";
const TAG_ANTIPODE: &str = "m (S x id) Delta = eps 1 = m (id x S) Delta";
const TAG_STAR: &str = "x** = x, (lhs - rhs)* = 0, Delta(x*) = (* x *) Delta(x)";

/// Every rule is respected by the coproduct: `Delta(lhs) - Delta(rhs)`
/// reduces to zero in the 2-slot algebra.
pub fn check_delta_respects_relations(h: &HopfPresentation) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let alpha = h.alphabet().clone();
    for r in h.base().rules() {
        let lhs = Element::word(&alpha, r.lhs.clone(), h.base().order());
        let name = format!("coproduct respects `{}`", r.name);
        if h.rule_mentions_excluded(&lhs, &r.rhs) {
            rep.skipped(name, TAG_DELTA_HOM, "rule involves an excluded generator");
            continue;
        }
        let res = h.two().nf(&h.coproduct.apply(&(&lhs - &r.rhs))?)?;
        rep.zero(name, TAG_DELTA_HOM, &res);
    }
    Ok(rep)
}

pub fn check_coassociativity(h: &HopfPresentation) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    for g in 0..h.alphabet().len() as u16 {
        if h.is_excluded(g) {
            continue;
        }
        let d = h.coproduct(&h.gen_element(g))?;
        let res = h.three().nf(&(&h.delta_left(&d)? - &h.delta_right(&d)?))?;
        rep.zero(format!("coassociativity on {}", h.alphabet().name(g)), TAG_COASSOC, &res);
    }
    Ok(rep)
}

/// Counit and antipode identities on generators, plus compatibility of the
/// counit and antipode with every rule.
pub fn check_counit_antipode(h: &HopfPresentation) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let base = h.base();
    for g in 0..h.alphabet().len() as u16 {
        if h.is_excluded(g) {
            continue;
        }
        let name = h.alphabet().name(g);
        let x = h.gen_element(g);
        let d = h.coproduct(&x)?;
        let eps = base.scalar(h.counit_of(g).expect("validated").clone());
        for slot in [1u8, 2] {
            let res = base.nf(&(&h.counit_on_slot(&d, slot)? - &x))?;
            rep.zero(format!("counit slot {slot} on {name}"), TAG_COUNIT, &res);
        }
        for slot in [1u8, 2] {
            let res = base.nf(&(&h.antipode_convolution(&d, slot)? - &eps))?;
            rep.zero(format!("antipode slot {slot} on {name}"), TAG_ANTIPODE, &res);
        }
    }
    let alpha = h.alphabet().clone();
    for r in base.rules() {
        let lhs = Element::word(&alpha, r.lhs.clone(), base.order());
        if h.rule_mentions_excluded(&lhs, &r.rhs) {
            rep.skipped(format!("counit respects `{}`", r.name), "eps(lhs) = eps(rhs)", "rule involves an excluded generator");
            rep.skipped(format!("antipode respects `{}`", r.name), "S(lhs) = S(rhs)", "rule involves an excluded generator");
            continue;
        }
        let diff = &lhs - &r.rhs;
        let mut e = Scalar::zero(base.order());
        for (w, c) in diff.terms() {
            e = e.checked_add(&c.checked_mul(&h.counit_word(w)?)?)?;
        }
        rep.zero(format!("counit respects `{}`", r.name), "eps(lhs) = eps(rhs)", &base.scalar(e));
        let s = base.nf(&h.antipode.apply(&diff)?)?;
        rep.zero(format!("antipode respects `{}`", r.name), "S(lhs) = S(rhs)", &s);
    }
    Ok(rep)
}

pub fn check_star(h: &HopfPresentation) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let Some(star) = h.star_map() else {
        rep.skipped("star structure", TAG_STAR, "presentation has no star");
        return Ok(rep);
    };
    let base = h.base();
    let alpha = h.alphabet().clone();
    for g in 0..alpha.len() as u16 {
        let x = h.gen_element(g);
        let twice = star.apply(&star.apply(&x)?)?;
        rep.zero(format!("star involution on {}", alpha.name(g)), "x** = x", &base.nf(&(&twice - &x))?);
    }
    for r in base.rules() {
        let lhs = Element::word(&alpha, r.lhs.clone(), base.order());
        let res = base.nf(&star.apply(&(&lhs - &r.rhs))?)?;
        rep.zero(format!("star respects `{}`", r.name), "(lhs - rhs)* = 0", &res);
    }
    for g in 0..alpha.len() as u16 {
        if h.is_excluded(g) {
            continue;
        }
        let x = h.gen_element(g);
        let left = h.coproduct(&star.apply(&x)?)?;
        let right = h.star_slotwise(&h.coproduct(&x)?)?;
        rep.zero(
            format!("coproduct commutes with star on {}", alpha.name(g)),
            "Delta(x*) = (* x *) Delta(x)",
            &h.two().nf(&(&left - &right))?,
        );
    }
    Ok(rep)
}

/// All four generator-level axiom checks.
pub fn check_all(h: &HopfPresentation) -> Result<CheckReport> {
    let mut rep = check_delta_respects_relations(h)?;
    rep.extend(check_coassociativity(h)?);
    rep.extend(check_counit_antipode(h)?);
    rep.extend(check_star(h)?);
    Ok(rep)
}

/// Convolution identities `m(S x id)Delta x = eps(x) 1 = m(id x S)Delta x`
/// on random elements built from non-excluded generators, avoiding the given
/// adjacent pairs.
pub fn check_random_convolution<R: Rng>(
    h: &HopfPresentation,
    rng: &mut R,
    count: usize,
    max_degree: usize,
    avoid: &[(u16, u16)],
) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let gens: Vec<u16> = (0..h.alphabet().len() as u16).filter(|g| !h.is_excluded(*g)).collect();
    let mut failures = 0;
    for k in 0..count {
        let x = crate::random::random_element(rng, h.base(), &gens, max_degree, avoid);
        let d = h.coproduct_raw(&x)?;
        let eps = h.base().scalar(h.counit(&x)?);
        for slot in [1u8, 2] {
            let res = h.base().nf(&(&h.antipode_convolution(&d, slot)? - &eps))?;
            if !res.is_zero() {
                failures += 1;
                rep.zero(format!("random convolution #{k} slot {slot}"), TAG_ANTIPODE, &res);
            }
        }
    }
    if failures == 0 {
        rep.zero(
            format!("convolution identities on {count} random elements"),
            TAG_ANTIPODE,
            &h.base().zero(),
        );
    }
    Ok(rep)
}

/// `(x*)* = x` on random elements.
pub fn check_random_star_involution<R: Rng>(
    h: &HopfPresentation,
    rng: &mut R,
    count: usize,
    max_degree: usize,
    avoid: &[(u16, u16)],
) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let Some(star) = h.star_map() else {
        rep.skipped("random star involution", "x** = x", "presentation has no star");
        return Ok(rep);
    };
    let gens: Vec<u16> = (0..h.alphabet().len() as u16).collect();
    let mut failures = 0;
    for k in 0..count {
        let x = crate::random::random_element(rng, h.base(), &gens, max_degree, avoid);
        let res = h.base().nf(&(&star.apply(&star.apply(&x)?)? - &x))?;
        if !res.is_zero() {
            failures += 1;
            rep.zero(format!("random star involution #{k}"), "x** = x", &res);
        }
    }
    if failures == 0 {
        rep.zero(format!("star involution on {count} random elements"), "x** = x", &h.base().zero());
    }
    Ok(rep)
}
