//! Seeded random elements for property checks.

use rand::Rng;

use crate::freealg::{Element, Letter, Word};
use crate::rewrite::Presentation;
use crate::scalars::{GaussianRational, ParamMonomial, Scalar, Q};

fn random_coefficient<R: Rng>(rng: &mut R, p: &Presentation) -> Scalar {
    let (re, im) = loop {
        let re: i64 = rng.gen_range(-2..=2);
        let im: i64 = if rng.gen_bool(0.3) { rng.gen_range(-2..=2) } else { 0 };
        if re != 0 || im != 0 {
            break (re, im);
        }
    };
    let c = &GaussianRational::from_int(re) + &(&GaussianRational::from_int(im) * &GaussianRational::i());
    let mono = match p.params() {
        [] => ParamMonomial::one(),
        params if rng.gen_bool(0.3) => {
            let name = &params[rng.gen_range(0..params.len())];
            let exp = if name == Q && rng.gen_bool(0.5) { -1 } else { 1 };
            ParamMonomial::var(name, exp)
        }
        _ => ParamMonomial::one(),
    };
    Scalar::term(c, mono, 0, p.order())
}

/// A random word of length `len` over `gens`, never placing a pair from
/// `avoid` next to each other.
pub fn random_word<R: Rng>(rng: &mut R, gens: &[u16], len: usize, avoid: &[(u16, u16)]) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = gens[rng.gen_range(0..gens.len())];
        if let Some(prev) = letters.last() {
            if avoid.contains(&(prev.gen, g)) {
                continue;
            }
        }
        letters.push(Letter::new(g, 0));
    }
    Word::from_letters(&letters)
}

/// One to three terms of degree at most `max_degree` over `gens`.
pub fn random_element<R: Rng>(
    rng: &mut R,
    p: &Presentation,
    gens: &[u16],
    max_degree: usize,
    avoid: &[(u16, u16)],
) -> Element {
    let mut x = p.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_degree);
        let w = random_word(rng, gens, len, avoid);
        let c = random_coefficient(rng, p);
        x = &x + &Element::monomial(p.alphabet(), w, c);
    }
    x
}
