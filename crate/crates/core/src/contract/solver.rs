//! Solving for an undetermined commutator from coproduct consistency.
//!
//! With `[x, y] = sum_w c_w w` unknown, compatibility with the coproduct
//! demands `[Delta x, Delta y] = sum_w c_w Delta w` in the 2-slot algebra.
//! The unknowns enter linearly; splitting every `c_w` into powers of `lam`
//! gives a linear system over the Gaussian rationals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freealg::{Element, Word};
use crate::hopf::HopfPresentation;
use crate::print::format_word;
use crate::rewrite::RewriteRule;
use crate::scalars::{GaussianRational, ParamMonomial, Scalar, LAMBDA};

#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    /// One coefficient per basis element.
    Unique(Vec<Scalar>),
    Inconsistent { augmented_rank: usize },
    /// Free unknowns as (basis index, power of `lam`).
    Underdetermined { free: Vec<(usize, u32)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub outcome: SolveOutcome,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// Exchange rule for the pair that was set aside.
    pub dropped_rule: Option<String>,
}

impl Solution {
    pub fn coefficients(&self) -> Option<&[Scalar]> {
        match &self.outcome {
            SolveOutcome::Unique(c) => Some(c),
            _ => None,
        }
    }
}

fn unknown_name(i: usize) -> String {
    format!("_c{i}")
}

fn single_generator(x: &Element) -> Option<Word> {
    match x.terms().next() {
        Some((w, c)) if x.len() == 1 && w.len() == 1 && c.is_one() && w.max_slot() == 0 => Some(w.clone()),
        _ => None,
    }
}

/// Presentation with the exchange rule of `x, y` replaced by one carrying
/// the formal commutator `coeffs . basis`. Returns the new structure and the
/// dropped rule's name. Without an exchange rule and with both orderings
/// reducible nothing is installed.
fn with_commutator(
    h: &HopfPresentation,
    x: &Element,
    y: &Element,
    commutator: &Element,
) -> Result<(HopfPresentation, Option<String>, bool)> {
    let (Some(wx), Some(wy)) = (single_generator(x), single_generator(y)) else {
        return Ok((h.clone(), None, false));
    };
    let (xy, yx) = (wx.concat(&wy), wy.concat(&wx));
    if xy == yx {
        return Ok((h.clone(), None, false));
    }
    let (hi, lo, sign) = if xy > yx { (xy, yx, 1) } else { (yx, xy, -1) };
    let base = h.base();
    let mut dropped = None;
    let mut rules = Vec::new();
    for r in base.rules() {
        if r.lhs == hi && r.rhs.coefficient(&lo).is_some() {
            dropped = Some(r.name.clone());
        } else {
            rules.push(r.clone());
        }
    }
    let probe = base.with_rules(rules.clone())?;
    if !probe.is_irreducible(&hi) {
        return Ok((h.clone(), None, false));
    }
    let order = base.order();
    let lo_el = Element::word(base.alphabet(), lo, order);
    let rhs = if sign > 0 { &lo_el + commutator } else { &lo_el - commutator };
    let label = format!("{} -> {}", format_word(base.alphabet(), &hi), crate::print::format_element(&rhs));
    rules.push(RewriteRule::new(label, hi, rhs)?);
    Ok((h.with_base(base.with_rules(rules)?)?, dropped, true))
}

/// Finds `c` with `[x, y] = sum_i c_i basis_i` consistent with the coproduct.
/// An exchange rule `yx -> xy - ...` present in `h` is set aside first.
pub fn solve_commutator(h: &HopfPresentation, x: &Element, y: &Element, basis: &[Element]) -> Result<Solution> {
    let base = h.base();
    let order = base.order();
    let mut formal = base.zero();
    for (i, w) in basis.iter().enumerate() {
        formal = &formal + &w.scale(&Scalar::param(&unknown_name(i), 1, order))?;
    }
    let (hx, dropped, _) = with_commutator(h, x, y, &formal)?;
    let b1 = hx.base();

    let eq1 = &b1.nf(&x.commutator(y)?)? - &b1.nf(&formal)?;
    let dx = hx.coproduct_raw(x)?;
    let dy = hx.coproduct_raw(y)?;
    let mut d_formal = hx.two().zero();
    for (i, w) in basis.iter().enumerate() {
        d_formal = &d_formal + &hx.coproduct_raw(w)?.scale(&Scalar::param(&unknown_name(i), 1, order))?;
    }
    let eq2 = hx.two().nf(&(&dx.commutator(&dy)? - &d_formal))?;

    let system = LinearSystem::collect(&[eq1, eq2], basis.len())?;
    let (outcome, rank) = system.solve(order);
    Ok(Solution {
        outcome,
        unknowns: system.columns.len(),
        equations: system.rows.len(),
        rank,
        dropped_rule: dropped,
    })
}

/// `h` with the exchange rule of `x, y` given by `coeffs . basis`.
pub fn install_commutator(
    h: &HopfPresentation,
    x: &Element,
    y: &Element,
    basis: &[Element],
    coeffs: &[Scalar],
) -> Result<HopfPresentation> {
    if basis.len() != coeffs.len() {
        return Err(Error::Solver("basis and coefficients differ in length".into()));
    }
    let mut comm = h.base().zero();
    for (w, c) in basis.iter().zip(coeffs) {
        comm = &comm + &w.scale(c)?;
    }
    let (out, _, installed) = with_commutator(h, x, y, &comm)?;
    if !installed {
        return Err(Error::Solver("no exchange rule to install for this pair".into()));
    }
    Ok(out)
}

type RowKey = (usize, Word, u32, ParamMonomial, i32);

struct LinearSystem {
    /// (basis index, power of lam)
    columns: Vec<(usize, u32)>,
    rows: Vec<(Vec<GaussianRational>, GaussianRational)>,
}

impl LinearSystem {
    fn collect(eqs: &[Element], n: usize) -> Result<Self> {
        // (row, Some(unknown) or None for the constant part, coefficient)
        let mut entries: Vec<(RowKey, Option<usize>, GaussianRational)> = Vec::new();
        let mut max_lam = 0;
        for (e, eq) in eqs.iter().enumerate() {
            for (w, s) in eq.terms() {
                for (key, c) in s.terms() {
                    let mut unknown = None;
                    let mut rest = key.mono.clone();
                    for i in 0..n {
                        let name = unknown_name(i);
                        match key.mono.exponent(&name) {
                            0 => {}
                            1 if unknown.is_none() => {
                                unknown = Some(i);
                                rest = rest.without(&name);
                            }
                            _ => return Err(Error::Solver("the system is not linear in the unknowns".into())),
                        }
                    }
                    let lam = rest.exponent(LAMBDA);
                    if unknown.is_none() {
                        max_lam = max_lam.max(lam);
                    }
                    let row = (e, w.clone(), key.eps, rest.without(LAMBDA), lam);
                    entries.push((row, unknown, c.clone()));
                }
            }
        }
        let degrees = max_lam.max(0) as u32;
        let columns: Vec<(usize, u32)> = (0..n).flat_map(|i| (0..=degrees).map(move |d| (i, d))).collect();
        let mut table: BTreeMap<RowKey, (Vec<GaussianRational>, GaussianRational)> = BTreeMap::new();
        let blank = || (vec![GaussianRational::zero(); columns.len()], GaussianRational::zero());
        for ((e, w, eps, mono, lam), unknown, c) in entries {
            match unknown {
                None => {
                    let row = table.entry((e, w, eps, mono, lam)).or_insert_with(blank);
                    row.1 = &row.1 - &c;
                }
                Some(i) => {
                    for d in 0..=degrees {
                        let key = (e, w.clone(), eps, mono.clone(), lam + d as i32);
                        let row = table.entry(key).or_insert_with(blank);
                        let col = i * (degrees as usize + 1) + d as usize;
                        row.0[col] = &row.0[col] + &c;
                    }
                }
            }
        }
        let rows = table.into_values().filter(|(a, b)| !b.is_zero() || a.iter().any(|x| !x.is_zero())).collect();
        Ok(Self { columns, rows })
    }

    fn solve(&self, order: u32) -> (SolveOutcome, usize) {
        let ncols = self.columns.len();
        let mut m: Vec<Vec<GaussianRational>> = self
            .rows
            .iter()
            .map(|(a, b)| a.iter().cloned().chain(std::iter::once(b.clone())).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..=ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            if col == ncols {
                return (SolveOutcome::Inconsistent { augmented_rank: r + 1 }, r);
            }
            m.swap(r, p);
            let inv = m[r][col].inv().expect("pivot is nonzero");
            for v in m[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    let pivot = m[r].clone();
                    for (v, p) in m[i].iter_mut().zip(&pivot) {
                        *v = &*v - &(p * &f);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let rank = r;
        if rank < ncols {
            let free = (0..ncols).filter(|c| !pivots.contains(c)).map(|c| self.columns[c]).collect();
            return (SolveOutcome::Underdetermined { free }, rank);
        }
        let n = self.columns.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![Scalar::zero(order); n];
        for (row, &col) in pivots.iter().enumerate() {
            let (i, d) = self.columns[col];
            let v = m[row][ncols].clone();
            if !v.is_zero() {
                let t = Scalar::term(v, ParamMonomial::var(LAMBDA, d as i32), 0, order);
                coeffs[i] = &coeffs[i] + &t;
            }
        }
        (SolveOutcome::Unique(coeffs), rank)
    }
}
