//! Free noncommutative algebra over [`Scalar`] coefficients.
//!
//! Tensor powers are not a separate type: a letter carries a slot index
//! (0 for the base algebra, 1..=3 for tensor factors) and letters of distinct
//! slots are made to commute by rewrite rules.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub const MAX_SLOT: u8 = 3;

/// Generator names in increasing precedence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Presentation(format!("duplicate generator `{n}`")));
            }
        }
        if names.len() > u16::MAX as usize {
            return Err(Error::Presentation("too many generators".into()));
        }
        Ok(Arc::new(Self { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, gen: u16) -> &str {
        &self.names[gen as usize]
    }

    pub fn index(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index(name).map(|gen| Letter { slot: 0, gen })
    }

    fn describe(&self) -> String {
        self.names.join(",")
    }
}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(a.describe(), b.describe()))
    }
}

/// A generator tagged with its tensor slot. Ordering compares the slot first,
/// then the generator's precedence rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub slot: u8,
    pub gen: u16,
}

impl Letter {
    pub fn new(gen: u16, slot: u8) -> Self {
        Self { slot, gen }
    }

    pub fn in_slot(self, slot: u8) -> Self {
        Self { slot, gen: self.gen }
    }
}

/// A noncommutative monomial. Words are ordered degree-lexicographically:
/// longer words are larger, equal lengths compare letter by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Self(letters.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_slot(&self) -> u8 {
        self.0.iter().map(|l| l.slot).max().unwrap_or(0)
    }

    pub fn retag(&self, slot: u8) -> Word {
        Word(self.0.iter().map(|l| l.in_slot(slot)).collect())
    }

    /// Letters grouped by slot, each group in original relative order.
    pub fn slot_blocks(&self) -> BTreeMap<u8, Word> {
        let mut out: BTreeMap<u8, Word> = BTreeMap::new();
        for l in &self.0 {
            out.entry(l.slot).or_default().0.push(l.in_slot(0));
        }
        out
    }

    /// True if `a` is immediately followed by `b` in the same slot.
    pub fn has_adjacent(&self, a: u16, b: u16) -> bool {
        self.0
            .windows(2)
            .any(|w| w[0].gen == a && w[1].gen == b && w[0].slot == w[1].slot)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    alphabet: Arc<Alphabet>,
    order: u32,
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero(alphabet: &Arc<Alphabet>, order: u32) -> Self {
        Self { alphabet: alphabet.clone(), order, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, order: u32) -> Self {
        Self::scalar(alphabet, Scalar::one(order))
    }

    pub fn scalar(alphabet: &Arc<Alphabet>, c: Scalar) -> Self {
        Self::monomial(alphabet, Word::unit(), c)
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, w: Word, c: Scalar) -> Self {
        let mut e = Self::zero(alphabet, c.order());
        if !c.is_zero() {
            e.terms.insert(w, c);
        }
        e
    }

    pub fn word(alphabet: &Arc<Alphabet>, w: Word, order: u32) -> Self {
        Self::monomial(alphabet, w, Scalar::one(order))
    }

    pub fn generator(alphabet: &Arc<Alphabet>, name: &str, order: u32) -> Result<Self> {
        let l = alphabet
            .letter(name)
            .ok_or_else(|| Error::UnknownSymbol { name: name.into(), line: 0, col: 0 })?;
        Ok(Self::word(alphabet, Word::from_letters(&[l]), order))
    }

    pub(crate) fn from_terms(alphabet: &Arc<Alphabet>, order: u32, terms: BTreeMap<Word, Scalar>) -> Self {
        Self { alphabet: alphabet.clone(), order, terms }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_slot(&self) -> u8 {
        self.terms.keys().map(Word::max_slot).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The element as a scalar if only the unit word occurs.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.order)),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &Scalar) -> Result<()> {
        use std::collections::btree_map::Entry;
        if c.order() != self.order {
            return Err(Error::OrderMismatch(self.order, c.order()));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c)?;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        same_alphabet(&self.alphabet, &other.alphabet)?;
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c)?;
        }
        Ok(out)
    }

    /// Bilinear concatenation product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.alphabet, self.order);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let c = ca.checked_mul(cb)?;
                out.add_term(wa.concat(wb), &c)?;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one(&self.alphabet, self.order);
        for _ in 0..n {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        let mut out = Self::zero(&self.alphabet, self.order);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &v.checked_mul(c)?)?;
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient; the result keeps this element's
    /// words and alphabet.
    pub fn map_scalars<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Scalar) -> Result<Scalar>,
    {
        let mut out: Option<Self> = None;
        for (w, c) in &self.terms {
            let c = f(c)?;
            let o = out.get_or_insert_with(|| Self::zero(&self.alphabet, c.order()));
            o.add_term(w.clone(), &c)?;
        }
        Ok(out.unwrap_or_else(|| Self::zero(&self.alphabet, self.order)))
    }

    pub fn with_order(&self, order: u32) -> Self {
        let mut out = Self::zero(&self.alphabet, order);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.with_order(order)).expect("orders agree");
        }
        out
    }

    pub fn conjugate_coefficients(&self) -> Self {
        self.map_scalars(|c| Ok(c.conjugate())).expect("conjugation preserves order")
    }

    /// The coefficient of `eps^k`, as an element with `eps`-free scalars.
    pub fn eps_component(&self, k: u32) -> Self {
        self.map_scalars(|c| Ok(c.eps_coefficient(k))).expect("order preserved")
    }

    pub fn max_eps_degree(&self) -> u32 {
        self.terms.values().filter_map(Scalar::max_eps_degree).max().unwrap_or(0)
    }

    /// Retags every letter of a slot-0 element into `slot`.
    pub fn tensor_embed(&self, slot: u8) -> Result<Self> {
        if slot == 0 || slot > MAX_SLOT {
            return Err(Error::SlotOutOfRange(slot));
        }
        if self.max_slot() != 0 {
            return Err(Error::Usage("tensor_embed expects a slot-0 element".into()));
        }
        self.retag(slot)
    }

    pub(crate) fn retag(&self, slot: u8) -> Result<Self> {
        let mut out = Self::zero(&self.alphabet, self.order);
        for (w, c) in &self.terms {
            out.add_term(w.retag(slot), c)?;
        }
        Ok(out)
    }

    /// Adds `delta` to every slot index (slot-0 letters are left alone).
    pub fn shift_slots(&self, delta: u8) -> Result<Self> {
        let mut out = Self::zero(&self.alphabet, self.order);
        for (w, c) in &self.terms {
            let mut v = w.clone();
            for l in v.0.iter_mut() {
                if l.slot > 0 {
                    l.slot += delta;
                    if l.slot > MAX_SLOT {
                        return Err(Error::SlotOutOfRange(l.slot));
                    }
                }
            }
            out.add_term(v, c)?;
        }
        Ok(out)
    }

    /// Transforms each word blockwise: letters are grouped by slot (letters
    /// of distinct slots commute), `f` maps each block (given with slot-0
    /// letters) and the images are multiplied in slot order. With
    /// `conjugate`, coefficients are conjugated once per term.
    pub fn map_slot_blocks<F>(&self, target: &Arc<Alphabet>, conjugate: bool, mut f: F) -> Result<Self>
    where
        F: FnMut(u8, &Word) -> Result<Self>,
    {
        let mut out = Self::zero(target, self.order);
        for (w, c) in &self.terms {
            let mut acc = Self::one(target, self.order);
            for (slot, block) in w.slot_blocks() {
                acc = acc.try_mul(&f(slot, &block)?)?;
            }
            let c = if conjugate { c.conjugate() } else { c.clone() };
            out = out.try_add(&acc.scale(&c)?)?;
        }
        Ok(out)
    }

    /// The multiplication map `A (x) A (x) ... -> A`: letters are stably
    /// sorted by slot and retagged to slot 0.
    pub fn multiply_slots(&self) -> Result<Self> {
        self.map_slot_blocks(&self.alphabet.clone(), false, |_, block| {
            Ok(Self::word(&self.alphabet, block.clone(), self.order))
        })
    }

    /// True if some word has generator `a` immediately followed by `b`.
    pub fn has_adjacent(&self, a: u16, b: u16) -> bool {
        self.terms.keys().any(|w| w.has_adjacent(a, b))
    }

    pub fn mentions_generator(&self, gen: u16) -> bool {
        self.terms.keys().any(|w| w.0.iter().any(|l| l.gen == gen))
    }
}

macro_rules! element_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &Element {
            type Output = Element;
            fn $method(self, o: &Element) -> Element {
                self.$checked(o).expect("incompatible elements")
            }
        }
        impl $tr for Element {
            type Output = Element;
            fn $method(self, o: Element) -> Element {
                (&self).$method(&o)
            }
        }
    };
}

element_binop!(Add, add, try_add);
element_binop!(Sub, sub, try_sub);
element_binop!(Mul, mul, try_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// How a generator map extends from generators to words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Homomorphism,
    Antihomomorphism,
    AntilinearAntihomomorphism,
}

impl MapKind {
    pub fn reverses(self) -> bool {
        !matches!(self, MapKind::Homomorphism)
    }

    pub fn antilinear(self) -> bool {
        matches!(self, MapKind::AntilinearAntihomomorphism)
    }
}

/// Images of generators, extended to the free algebra by `kind`.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    images: Vec<Option<Element>>,
    kind: MapKind,
}

impl GeneratorMap {
    pub fn new(source: &Arc<Alphabet>, target: &Arc<Alphabet>, kind: MapKind) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.len()],
            kind,
        }
    }

    pub fn set(&mut self, name: &str, image: Element) -> Result<()> {
        same_alphabet(&self.target, image.alphabet())?;
        let g = self
            .source
            .index(name)
            .ok_or_else(|| Error::UnknownSymbol { name: name.into(), line: 0, col: 0 })?;
        self.images[g as usize] = Some(image);
        Ok(())
    }

    pub fn image(&self, gen: u16) -> Option<&Element> {
        self.images.get(gen as usize).and_then(Option::as_ref)
    }

    pub fn image_of(&self, name: &str) -> Option<&Element> {
        self.source.index(name).and_then(|g| self.image(g))
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn is_total(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    /// Applies `f` to every image.
    pub fn map_images<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Element) -> Result<Element>,
    {
        let mut out = self.clone();
        for img in out.images.iter_mut().flatten() {
            *img = f(img)?;
        }
        Ok(out)
    }

    fn letter_image(&self, l: Letter) -> Result<Element> {
        let img = self
            .image(l.gen)
            .ok_or_else(|| Error::MissingImage(self.source.name(l.gen).to_string()))?;
        if l.slot == 0 {
            Ok(img.clone())
        } else {
            img.tensor_embed(l.slot)
        }
    }

    /// Image of a single word (coefficient 1).
    pub fn apply_word(&self, w: &Word, order: u32) -> Result<Element> {
        let mut acc = Element::one(&self.target, order);
        if self.kind.reverses() {
            for l in w.0.iter().rev() {
                acc = acc.try_mul(&self.letter_image(*l)?)?;
            }
        } else {
            for l in w.0.iter() {
                acc = acc.try_mul(&self.letter_image(*l)?)?;
            }
        }
        Ok(acc)
    }

    /// Extends the map linearly (or antilinearly) to `x`.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        same_alphabet(&self.source, x.alphabet())?;
        let mut out = Element::zero(&self.target, x.order());
        for (w, c) in x.terms() {
            let c = if self.kind.antilinear() { c.conjugate() } else { c.clone() };
            out = out.try_add(&self.apply_word(w, x.order())?.scale(&c)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}@{}", self.gen, self.slot)
    }
}
