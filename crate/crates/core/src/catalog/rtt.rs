//! Quadratic exchange relations `R T1 T2 = T2 T1 R` of a 2x2 quantum matrix.
//!
//! Rows and columns of the 4x4 matrices are indexed by pairs `(i, j)` in
//! row-major order `(1,1), (1,2), (2,1), (2,2)`. With `T1 = T (x) 1` and
//! `T2 = 1 (x) T`,
//!
//! ```text
//! (T1 T2)_{(k,l),(m,n)} = T_km T_ln        (T2 T1)_{(i,j),(k,l)} = T_jl T_ik
//! ```
//!
//! so component `((i,j),(m,n))` of `R T1 T2 - T2 T1 R` is
//! `sum_{k,l} R_{(i,j),(k,l)} T_km T_ln - T_jl T_ik R_{(k,l),(m,n)}`.

use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::print::format_element;
use crate::rewrite::Presentation;
use crate::scalars::{Scalar, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    entries: [[Scalar; 4]; 4],
}

fn pair_index(i: usize, j: usize) -> usize {
    2 * i + j
}

impl RMatrix {
    /// Diagonal `(q, 1, 1, q)` and `q - q^-1` at row `(2,1)`, column `(1,2)`.
    pub fn standard(order: u32) -> Self {
        let z = || Scalar::zero(order);
        let mut entries: [[Scalar; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
        let q = Scalar::param(Q, 1, order);
        entries[0][0] = q.clone();
        entries[1][1] = Scalar::one(order);
        entries[2][2] = Scalar::one(order);
        entries[3][3] = q.clone();
        entries[pair_index(1, 0)][pair_index(0, 1)] = &q - &Scalar::param(Q, -1, order);
        Self { entries }
    }

    /// Entry at row pair `(i, j)` and column pair `(k, l)`, 0-based.
    pub fn entry(&self, row: (usize, usize), col: (usize, usize)) -> &Scalar {
        &self.entries[pair_index(row.0, row.1)][pair_index(col.0, col.1)]
    }
}

/// One component of `R T1 T2 - T2 T1 R`; indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct RttComponent {
    pub row: (u8, u8),
    pub col: (u8, u8),
    pub relation: Element,
}

impl RttComponent {
    pub fn is_trivial(&self) -> bool {
        self.relation.is_zero()
    }
}

/// All 16 components over the generators `a, b, c, d` of `p`, unreduced.
pub fn rtt_relations(r: &RMatrix, p: &Presentation) -> Result<Vec<RttComponent>> {
    let names = [["a", "b"], ["c", "d"]];
    let mut t: Vec<Vec<Element>> = Vec::new();
    for row in names {
        t.push(row.iter().map(|n| p.generator(n)).collect::<Result<Vec<_>>>()?);
    }
    let scalar = |s: &Scalar| -> Result<Element> {
        if s.order() != p.order() {
            return Err(Error::OrderMismatch(p.order(), s.order()));
        }
        Ok(p.scalar(s.clone()))
    };
    let mut out = Vec::with_capacity(16);
    for i in 0..2 {
        for j in 0..2 {
            for m in 0..2 {
                for n in 0..2 {
                    let mut rel = p.zero();
                    for k in 0..2 {
                        for l in 0..2 {
                            let left = &scalar(r.entry((i, j), (k, l)))? * &(&t[k][m] * &t[l][n]);
                            let right = &(&t[j][l] * &t[i][k]) * &scalar(r.entry((k, l), (m, n)))?;
                            rel = &(&rel + &left) - &right;
                        }
                    }
                    out.push(RttComponent {
                        row: (i as u8 + 1, j as u8 + 1),
                        col: (m as u8 + 1, n as u8 + 1),
                        relation: rel,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Golden-file text: one line per component.
pub fn format_rtt(components: &[RttComponent]) -> String {
    let mut out = String::new();
    for c in components {
        out.push_str(&format!(
            "({},{}),({},{}): {}\n",
            c.row.0,
            c.row.1,
            c.col.0,
            c.col.1,
            format_element(&c.relation)
        ));
    }
    out
}

/// `x` and `y` differ by a nonzero scalar factor (checked by
/// cross-multiplying with the leading coefficients).
pub fn scalar_multiples(x: &Element, y: &Element) -> bool {
    match (x.leading(), y.leading()) {
        (Some((wx, cx)), Some((wy, cy))) if wx == wy => match (x.scale(cy), y.scale(cx)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        },
        _ => false,
    }
}

/// One representative per class of nonzero components up to scalar factors,
/// in order of first appearance.
pub fn distinct_relations(components: &[RttComponent]) -> Vec<Element> {
    let mut reps: Vec<Element> = Vec::new();
    for c in components.iter().filter(|c| !c.is_trivial()) {
        if !reps.iter().any(|r| scalar_multiples(r, &c.relation)) {
            reps.push(c.relation.clone());
        }
    }
    reps
}

/// Remainder of `x` after subtracting multiples of `basis` to clear every
/// word that is the leading word of some basis element. Leading words must
/// be distinct and leading coefficients invertible.
pub fn reduce_linear(x: &Element, basis: &[Element]) -> Result<Element> {
    let mut leads = Vec::new();
    for b in basis {
        let (w, c) = b.leading().ok_or_else(|| Error::Presentation("zero relation in basis".into()))?;
        leads.push((w.clone(), c.try_inverse()?, b));
    }
    let mut rem = x.clone();
    loop {
        let hit = rem
            .terms()
            .rev()
            .find_map(|(w, c)| leads.iter().find(|(lw, ..)| lw == w).map(|(_, inv, b)| (c.checked_mul(inv), *b)));
        match hit {
            None => return Ok(rem),
            Some((f, b)) => rem = rem.try_sub(&b.scale(&f?)?)?,
        }
    }
}

/// Components and `expected` span the same relations: each expected
/// relation is a scalar multiple of some component, and every component
/// reduces to zero modulo `expected`.
pub fn matches_relation_set(components: &[RttComponent], expected: &[Element]) -> Result<bool> {
    let reps = distinct_relations(components);
    let covered = expected.iter().all(|e| reps.iter().any(|r| scalar_multiples(e, r)));
    for c in components {
        if !reduce_linear(&c.relation, expected)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(covered)
}
