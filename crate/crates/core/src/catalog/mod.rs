//! Builtin presentations, the presentation file format and named elements.

mod format;
mod parse;
pub mod rtt;

pub use format::{load_presentation, loaded_to_text, presentation_to_text, Loaded};
pub use parse::{parse_at, parse_in, Scope, RESERVED};

use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::hopf::HopfPresentation;
use crate::rewrite::Presentation;
use crate::scalars::LAMBDA;

pub const SUQ2: &str = "suq2";
pub const KLMN: &str = "ekappa2-klmn";
pub const FINAL: &str = "ekappa2-final";

struct Builtin {
    name: &'static str,
    source: &'static str,
    golden: &'static str,
}

const BUILTINS: [Builtin; 3] = [
    Builtin {
        name: SUQ2,
        source: include_str!("../../catalog/suq2.qg"),
        golden: include_str!("../../catalog/suq2.golden"),
    },
    Builtin {
        name: KLMN,
        source: include_str!("../../catalog/ekappa2-klmn.qg"),
        golden: include_str!("../../catalog/ekappa2-klmn.golden"),
    },
    Builtin {
        name: FINAL,
        source: include_str!("../../catalog/ekappa2-final.qg"),
        golden: include_str!("../../catalog/ekappa2-final.golden"),
    },
];

/// Expected unreduced RTT components for the standard R-matrix at order 1.
pub const RTT_GOLDEN: &str = include_str!("../../catalog/rtt_relations.golden");

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|b| b.name).collect()
}

pub fn builtin_source(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|b| b.name == name).map(|b| b.source)
}

/// Canonical text of a builtin at order 1.
pub fn builtin_golden(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|b| b.name == name).map(|b| b.golden)
}

pub fn load_builtin(name: &str, order: u32) -> Result<Loaded> {
    let src = builtin_source(name).ok_or_else(|| {
        Error::Usage(format!("unknown builtin `{name}` (known: {})", builtin_names().join(", ")))
    })?;
    load_presentation(src, name, order)
}

pub fn load_builtin_hopf(name: &str, order: u32) -> Result<HopfPresentation> {
    load_builtin(name, order)?.into_hopf()
}

/// `builtin:NAME` or a path to a presentation file.
pub fn resolve(spec: &str, order: u32) -> Result<Loaded> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return load_builtin(name, order);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Usage(format!("cannot read `{spec}`: {e}")))?;
    let name = std::path::Path::new(spec)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(spec);
    load_presentation(&text, name, order)
}

/// Parses an expression over the generators and parameters of `p`.
pub fn parse_expression(text: &str, p: &Presentation) -> Result<Element> {
    parse_in(text, Scope { alphabet: p.alphabet(), params: p.params(), order: p.order() })
}

/// Elements of the KLMN algebra with names of their own.
pub const NAMED_ELEMENTS: [(&str, &str); 8] = [
    ("vplus", "K + M"),
    ("vminus", "K - M"),
    ("wplus", "L - 1/2*lam*M + i*N"),
    ("wminus", "L + 1/2*lam*M - i*N"),
    ("eta", "(L - 1/2*lam*M + i*N)*(K - M)"),
    ("etabar", "-(K + M)*(L + 1/2*lam*M - i*N)"),
    ("E", "(K + M)^2"),
    ("Einv", "(K - M)^2"),
];

/// The named element `name`, parsed in `klmn`.
pub fn named(klmn: &Presentation, name: &str) -> Result<Element> {
    let (_, def) = NAMED_ELEMENTS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Usage(format!("unknown named element `{name}`")))?;
    parse_expression(def, klmn)
}

/// The three builtin Hopf presentations at one order, optionally with the
/// deformation parameter set to zero.
#[derive(Debug, Clone)]
pub struct Builtins {
    pub suq2: HopfPresentation,
    pub klmn: HopfPresentation,
    pub fin: HopfPresentation,
    pub classical: bool,
}

impl Builtins {
    pub fn load(order: u32, classical: bool) -> Result<Self> {
        let suq2 = load_builtin_hopf(SUQ2, order)?;
        let mut klmn = load_builtin_hopf(KLMN, order)?;
        let mut fin = load_builtin_hopf(FINAL, order)?;
        if classical {
            klmn = klmn.specialize_zero(LAMBDA)?;
            fin = fin.specialize_zero(LAMBDA)?;
        }
        Ok(Self { suq2, klmn, fin, classical })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load_as_hopf() {
        for name in builtin_names() {
            let h = load_builtin_hopf(name, 1).unwrap();
            assert!(!h.base().rules().is_empty(), "{name}");
        }
        assert_eq!(load_builtin_hopf(SUQ2, 1).unwrap().base().rules().len(), 7);
        assert_eq!(load_builtin_hopf(KLMN, 1).unwrap().base().rules().len(), 11);
        assert_eq!(load_builtin_hopf(FINAL, 1).unwrap().base().rules().len(), 7);
    }

    #[test]
    fn unknown_builtin_is_a_usage_error() {
        assert!(load_builtin("nope", 1).unwrap_err().is_usage());
        assert!(resolve("builtin:nope", 1).unwrap_err().is_usage());
    }

    #[test]
    fn named_elements_parse() {
        let p = load_builtin(KLMN, 1).unwrap().presentation().clone();
        for (n, _) in NAMED_ELEMENTS {
            named(&p, n).unwrap();
        }
        let vp = named(&p, "vplus").unwrap();
        let vm = named(&p, "vminus").unwrap();
        assert!(p.nf(&(&vp * &vm)).unwrap().is_one());
    }
}
