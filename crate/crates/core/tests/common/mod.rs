#![allow(dead_code)]

use qgroup::catalog::{self, Builtins, Loaded};
use qgroup::freealg::Element;
use qgroup::hopf::HopfPresentation;
use qgroup::rewrite::Presentation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 42;

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn hopf(name: &str) -> HopfPresentation {
    catalog::load_builtin_hopf(name, 1).unwrap()
}

pub fn builtins() -> Builtins {
    Builtins::load(1, false).unwrap()
}

pub fn el(p: &Presentation, text: &str) -> Element {
    catalog::parse_expression(text, p).unwrap_or_else(|e| panic!("`{text}`: {e}"))
}

pub fn load_text(text: &str, name: &str) -> Loaded {
    catalog::load_presentation(text, name, 1).unwrap()
}

/// Generator indices of `p` minus the excluded ones of `h`.
pub fn structure_gens(h: &HopfPresentation) -> Vec<u16> {
    (0..h.alphabet().len() as u16).filter(|&g| !h.is_excluded(g)).collect()
}

pub fn all_gens(p: &Presentation) -> Vec<u16> {
    (0..p.alphabet().len() as u16).collect()
}

/// Adjacent pairs `(L, N)` and `(N, L)` when both exist.
pub fn ln_pairs(p: &Presentation) -> Vec<(u16, u16)> {
    match (p.alphabet().index("L"), p.alphabet().index("N")) {
        (Some(l), Some(n)) => vec![(l, n), (n, l)],
        _ => Vec::new(),
    }
}
