//! Named verification suites and the full report run.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, rtt, Builtins, Loaded, FINAL, KLMN, SUQ2};
use crate::contract::{self, ContractionAnsatz, SolveOutcome};
use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::hopf::{self, HopfPresentation};
use crate::print::format_element;
use crate::random::random_element;
use crate::report::{CheckRecord, CheckReport, Status};
use crate::rewrite::{check_local_confluence, Presentation, RandomStrategy, RewriteStrategy, DEFAULT_STEP_LIMIT};
use crate::scalars::{Scalar, DEFAULT_ORDER, LAMBDA, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// `builtin:NAME` or a file path checked in addition to the builtins.
    pub presentation: Option<String>,
    pub truncation_order: u32,
    pub step_limit: u64,
    pub seed: u64,
    pub max_overlap: usize,
    pub output: String,
    pub classical: bool,
    pub timings: bool,
    /// Random elements per property check.
    pub trials: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            presentation: None,
            truncation_order: DEFAULT_ORDER,
            step_limit: DEFAULT_STEP_LIMIT,
            seed: 42,
            max_overlap: 6,
            output: "text".into(),
            classical: false,
            timings: false,
            trials: 200,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.truncation_order > MAX_ORDER {
            return Err(Error::Usage(format!("order {} exceeds {MAX_ORDER}", self.truncation_order)));
        }
        if self.max_overlap < 2 {
            return Err(Error::Usage("max-overlap must be at least 2".into()));
        }
        Ok(())
    }
}

/// Everything a suite may look at.
pub struct SuiteContext {
    pub config: RunConfig,
    pub builtins: Builtins,
    pub extra: Option<Loaded>,
}

impl SuiteContext {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let b = Builtins::load(config.truncation_order, config.classical)?;
        let limit = config.step_limit;
        let builtins = Builtins {
            suq2: b.suq2.with_step_limit(limit),
            klmn: b.klmn.with_step_limit(limit),
            fin: b.fin.with_step_limit(limit),
            classical: b.classical,
        };
        let extra = match &config.presentation {
            Some(spec) => Some(match catalog::resolve(spec, config.truncation_order)? {
                Loaded::Plain(p) => Loaded::Plain(p.with_step_limit(limit)),
                Loaded::Hopf(h) => Loaded::Hopf(Box::new(h.with_step_limit(limit))),
            }),
            None => None,
        };
        Ok(Self { config, builtins, extra })
    }

    /// Seeded generator private to one suite.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_mul(0x9e37_79b9).wrapping_add(salt))
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;

    fn applies(&self, _cx: &SuiteContext) -> bool {
        true
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport>;
}

/// Suites in run order.
pub struct SuiteRegistry {
    suites: Vec<Box<dyn Suite>>,
}

impl Default for SuiteRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(CatalogSuite));
        r.register(Box::new(ConfluenceSuite));
        r.register(Box::new(HopfSuite { which: SUQ2 }));
        r.register(Box::new(HopfSuite { which: KLMN }));
        r.register(Box::new(ContractionSuite));
        r.register(Box::new(ChangeOfVariablesSuite));
        r.register(Box::new(HopfSuite { which: FINAL }));
        r.register(Box::new(SolverSuite));
        r.register(Box::new(PropertySuite));
        r.register(Box::new(ClassicalSuite));
        r.register(Box::new(PresentationSuite));
        r
    }
}

impl SuiteRegistry {
    pub fn empty() -> Self {
        Self { suites: Vec::new() }
    }

    pub fn register(&mut self, s: Box<dyn Suite>) {
        self.suites.push(s);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    /// Runs the applicable suites concurrently; records keep registry order.
    /// The first error (in registry order) wins.
    pub fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let active: Vec<&dyn Suite> = self.suites.iter().map(|s| s.as_ref()).filter(|s| s.applies(cx)).collect();
        let results: Vec<Result<CheckReport>> = std::thread::scope(|scope| {
            let handles: Vec<_> = active
                .iter()
                .map(|s| scope.spawn(move || run_timed(*s, cx)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
        });
        let mut rep = CheckReport::new();
        for r in results {
            rep.extend(r?);
        }
        Ok(rep)
    }
}

fn run_timed(s: &dyn Suite, cx: &SuiteContext) -> Result<CheckReport> {
    let start = Instant::now();
    let mut rep = s.run(cx)?;
    if cx.config.timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut rep.records {
            r.millis = ms;
        }
    }
    Ok(rep)
}

fn first_difference(expected: &str, actual: &str) -> String {
    for (i, (e, a)) in expected.lines().zip(actual.lines()).enumerate() {
        if e != a {
            return format!("line {}: expected `{e}`, got `{a}`", i + 1);
        }
    }
    format!("line counts differ: expected {}, got {}", expected.lines().count(), actual.lines().count())
}

fn text_record(name: String, tag: &str, expected: &str, actual: &str) -> CheckRecord {
    if expected == actual {
        CheckRecord::new(name, tag, Status::Pass, "0")
    } else {
        CheckRecord::new(name, tag, Status::Fail, first_difference(expected, actual))
    }
}

/// Builtins against their golden text, the RTT relations and the named
/// elements.
struct CatalogSuite;

impl Suite for CatalogSuite {
    fn name(&self) -> &'static str {
        "catalog"
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let order = cx.config.truncation_order;
        let mut rep = CheckReport::new();
        for name in catalog::builtin_names() {
            let text = catalog::loaded_to_text(&catalog::load_builtin(name, order)?);
            let golden = catalog::builtin_golden(name).expect("builtin has a golden file");
            rep.push(text_record(format!("golden text of {name}"), "catalog format", golden, &text));
        }
        let suq2 = catalog::load_builtin(SUQ2, order)?.presentation().clone();
        let comps = rtt::rtt_relations(&rtt::RMatrix::standard(order), &suq2)?;
        rep.push(text_record("golden RTT components".into(), "R T1 T2 = T2 T1 R", catalog::RTT_GOLDEN, &rtt::format_rtt(&comps)));
        let six = [
            "a*b - q*b*a",
            "a*c - q*c*a",
            "b*c - c*b",
            "b*d - q*d*b",
            "c*d - q*d*c",
            "a*d - d*a - (q - q^-1)*b*c",
        ]
        .iter()
        .map(|s| catalog::parse_expression(s, &suq2))
        .collect::<Result<Vec<_>>>()?;
        let distinct = rtt::distinct_relations(&comps);
        let matched = rtt::matches_relation_set(&comps, &six)?;
        rep.push(CheckRecord::new(
            "RTT relations span the six exchange relations",
            "R T1 T2 = T2 T1 R",
            if matched { Status::Pass } else { Status::Fail },
            format!("{} nonzero relations up to scalar multiples", distinct.len()),
        ));
        for c in &comps {
            rep.zero(
                format!("RTT ({},{}),({},{}) holds in {SUQ2}", c.row.0, c.row.1, c.col.0, c.col.1),
                "R T1 T2 = T2 T1 R",
                &suq2.nf(&c.relation)?,
            );
        }
        let klmn = catalog::load_builtin(KLMN, order)?.presentation().clone();
        for (n, _) in catalog::NAMED_ELEMENTS {
            let x = klmn.nf(&catalog::named(&klmn, n)?)?;
            let printed = format_element(&x);
            let back = catalog::parse_expression(&printed, &klmn)?;
            rep.zero(format!("named element {n} round-trips"), "print(parse(x)) = x", &(&back - &x));
        }
        Ok(rep)
    }
}

fn confluence_record(p: &Presentation, max_overlap: usize, step_limit: u64) -> Result<CheckRecord> {
    let r = check_local_confluence(p, max_overlap, step_limit)?;
    let bad: Vec<String> = r
        .unresolved()
        .map(|a| format!("{} via `{}` / `{}`: {}", a.word, a.rules.0, a.rules.1, a.difference))
        .collect();
    Ok(if bad.is_empty() {
        CheckRecord::new(
            format!("local confluence of {}", p.name()),
            "critical pairs resolve",
            Status::Pass,
            format!("{} ambiguities resolved", r.ambiguities.len()),
        )
    } else {
        CheckRecord::new(format!("local confluence of {}", p.name()), "critical pairs resolve", Status::Fail, bad.join("; "))
    })
}

struct ConfluenceSuite;

impl Suite for ConfluenceSuite {
    fn name(&self) -> &'static str {
        "confluence"
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let b = &cx.builtins;
        let mut rep = CheckReport::new();
        for h in [&b.suq2, &b.klmn, &b.fin] {
            rep.push(confluence_record(h.base(), cx.config.max_overlap, cx.config.step_limit)?);
        }
        Ok(rep)
    }
}

/// Adjacent generator pairs random elements avoid: the KLMN algebra has no
/// rule for `L*N`.
fn avoid_pairs(h: &HopfPresentation) -> Vec<(u16, u16)> {
    match (h.alphabet().index("L"), h.alphabet().index("N")) {
        (Some(l), Some(n)) => vec![(l, n), (n, l)],
        _ => Vec::new(),
    }
}

/// Generator-level axioms plus random convolution and star layers.
pub fn hopf_checks(h: &HopfPresentation, rng: &mut ChaCha8Rng, trials: usize) -> Result<CheckReport> {
    let mut rep = hopf::check_all(h)?;
    let avoid = avoid_pairs(h);
    rep.extend(hopf::check_random_convolution(h, rng, trials, 3, &avoid)?);
    rep.extend(hopf::check_random_star_involution(h, rng, trials, 3, &avoid)?);
    Ok(rep)
}

struct HopfSuite {
    which: &'static str,
}

impl Suite for HopfSuite {
    fn name(&self) -> &'static str {
        match self.which {
            SUQ2 => "hopf-suq2",
            KLMN => "hopf-klmn",
            _ => "hopf-final",
        }
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let b = &cx.builtins;
        let (h, salt) = match self.which {
            SUQ2 => (&b.suq2, 1),
            KLMN => (&b.klmn, 2),
            _ => (&b.fin, 3),
        };
        let mut rep = hopf_checks(h, &mut cx.rng(salt), cx.config.trials)?;
        if self.which == SUQ2 {
            rep.extend(determinant_checks(h)?);
        }
        Ok(rep)
    }
}

/// `D = a*d - q*b*c` is grouplike and central (checked before reducing `D`).
pub fn determinant_checks(h: &HopfPresentation) -> Result<CheckReport> {
    let p = h.base();
    let det = catalog::parse_expression("a*d - q*b*c", p)?;
    let mut rep = CheckReport::new();
    let dd = &det.tensor_embed(1)? * &det.tensor_embed(2)?;
    rep.zero("determinant is grouplike", "Delta(D) = D ox D", &h.two().nf(&(&h.coproduct_raw(&det)? - &dd))?);
    rep.zero("counit of the determinant", "eps(D) = 1", &p.scalar(h.counit(&det)?.checked_sub(&Scalar::one(p.order()))?));
    for g in ["a", "b", "c", "d"] {
        let x = p.generator(g)?;
        rep.zero(format!("determinant commutes with {g}"), "D x = x D", &p.nf(&det.commutator(&x)?)?);
    }
    Ok(rep)
}

struct ContractionSuite;

impl Suite for ContractionSuite {
    fn name(&self) -> &'static str {
        "contraction"
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let ans = ContractionAnsatz::new(&cx.builtins)?;
        let mut rep = contract::verify_dseries(&ans)?;
        rep.extend(contract::relation_suite(&ans)?);
        rep.extend(contract::coproduct_suite(&ans)?);
        rep.extend(contract::verify_star_contraction(&ans)?);
        rep.extend(contract::verify_antipode_counit_contraction(&ans)?);
        Ok(rep.to_check_report())
    }
}

struct ChangeOfVariablesSuite;

impl Suite for ChangeOfVariablesSuite {
    fn name(&self) -> &'static str {
        "change-of-variables"
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        Ok(contract::verify_change_of_variables(&cx.builtins)?.to_check_report())
    }
}

/// The basis `eta, etabar, E - 1, F - 1` of the final algebra.
pub fn eta_basis(p: &Presentation) -> Result<Vec<Element>> {
    ["eta", "etabar", "E - 1", "F - 1"]
        .iter()
        .map(|s| catalog::parse_expression(s, p))
        .collect()
}

struct SolverSuite;

impl Suite for SolverSuite {
    fn name(&self) -> &'static str {
        "solver"
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let h = &cx.builtins.fin;
        let p = h.base();
        let order = p.order();
        let basis = eta_basis(p)?;
        let (eta, etabar) = (p.generator("eta")?, p.generator("etabar")?);
        let mut rep = CheckReport::new();
        let tag = "[eta, etabar] = lam (etabar + eta)";

        let sol = contract::solve_commutator(h, &eta, &etabar, &basis)?;
        let lam = if cx.builtins.classical { Scalar::zero(order) } else { Scalar::param(LAMBDA, 1, order) };
        let expected = [lam.clone(), lam, Scalar::zero(order), Scalar::zero(order)];
        let shown = match &sol.outcome {
            SolveOutcome::Unique(c) => c.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
            other => format!("{other:?} (rank {})", sol.rank),
        };
        let unique_ok = sol.coefficients() == Some(&expected[..]);
        rep.push(CheckRecord::new(
            "solve [eta, etabar] over eta, etabar, E - 1, F - 1",
            tag,
            if unique_ok { Status::Pass } else { Status::Fail },
            format!("({shown})"),
        ));
        if let Some(c) = sol.coefficients() {
            let installed = contract::install_commutator(h, &eta, &etabar, &basis, c)?;
            let named = installed.base().with_name(format!("{} with solved rule", p.name()));
            rep.push(confluence_record(&named, cx.config.max_overlap, cx.config.step_limit)?);
            for mut r in hopf::check_all(&installed)?.records {
                r.name = format!("solved presentation: {}", r.name);
                rep.push(r);
            }
        }

        let small = contract::solve_commutator(h, &eta, &etabar, &basis[2..])?;
        rep.push(CheckRecord::new(
            "solve [eta, etabar] over E - 1, F - 1 is inconsistent",
            tag,
            if matches!(small.outcome, SolveOutcome::Inconsistent { .. }) || cx.builtins.classical {
                Status::Pass
            } else {
                Status::Fail
            },
            format!("{:?} (rank {})", small.outcome, small.rank),
        ));

        let ef = contract::solve_commutator(h, &p.generator("E")?, &p.generator("F")?, &basis)?;
        let zero_ok = ef.coefficients().is_some_and(|c| c.iter().all(Scalar::is_zero));
        rep.push(CheckRecord::new(
            "solve [E, F] gives zero",
            "[E, E^-1] = 0",
            if zero_ok { Status::Pass } else { Status::Fail },
            format!("{:?}", ef.outcome),
        ));
        Ok(rep)
    }
}

/// Normal-form idempotence and agreement of the random strategy with the
/// deterministic one on random elements of degree at most 5.
struct PropertySuite;

impl Suite for PropertySuite {
    fn name(&self) -> &'static str {
        "properties"
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let b = &cx.builtins;
        let mut rep = CheckReport::new();
        for (i, h) in [&b.suq2, &b.klmn, &b.fin].into_iter().enumerate() {
            let mut rng = cx.rng(10 + i as u64);
            let strategy = RandomStrategy::new(cx.config.seed.wrapping_add(i as u64));
            let p = h.base();
            let gens: Vec<u16> = (0..p.alphabet().len() as u16).collect();
            let avoid = avoid_pairs(h);
            let trials = cx.config.trials.max(500);
            let (mut idem, mut agree) = (None, None);
            for k in 0..trials {
                let x = random_element(&mut rng, p, &gens, 5, &avoid);
                let n = p.nf(&x)?;
                if idem.is_none() && p.nf(&n)? != n {
                    idem = Some(format!("#{k}: {}", format_element(&x)));
                }
                if agree.is_none() && strategy.normalize(p, &x, cx.config.step_limit)? != n {
                    agree = Some(format!("#{k}: {}", format_element(&x)));
                }
            }
            for (what, bad) in [("normal form is idempotent", idem), ("random strategy agrees", agree)] {
                let (status, residual) = match bad {
                    None => (Status::Pass, format!("{trials} random elements")),
                    Some(w) => (Status::Fail, w),
                };
                rep.push(CheckRecord::new(format!("{what} on {}", p.name()), "nf(nf x) = nf x", status, residual));
            }
        }
        Ok(rep)
    }
}

struct ClassicalSuite;

impl Suite for ClassicalSuite {
    fn name(&self) -> &'static str {
        "classical"
    }

    fn applies(&self, cx: &SuiteContext) -> bool {
        cx.builtins.classical
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        Ok(contract::verify_classical_limit(&cx.builtins)?.to_check_report())
    }
}

/// Confluence and, for Hopf presentations, the axiom suite on the
/// presentation given with `-p`.
struct PresentationSuite;

impl Suite for PresentationSuite {
    fn name(&self) -> &'static str {
        "presentation"
    }

    fn applies(&self, cx: &SuiteContext) -> bool {
        cx.extra.is_some()
    }

    fn run(&self, cx: &SuiteContext) -> Result<CheckReport> {
        let l = cx.extra.as_ref().expect("applies");
        let mut rep = CheckReport::new();
        rep.push(confluence_record(l.presentation(), cx.config.max_overlap, cx.config.step_limit)?);
        if let Some(h) = l.hopf() {
            for mut r in hopf_checks(h, &mut cx.rng(99), cx.config.trials)?.records {
                r.name = format!("{}: {}", l.presentation().name(), r.name);
                rep.push(r);
            }
        }
        Ok(rep)
    }
}

/// Runs every applicable suite of the default registry.
pub fn run_report(config: RunConfig) -> Result<CheckReport> {
    let cx = SuiteContext::new(config)?;
    SuiteRegistry::default().run(&cx)
}
