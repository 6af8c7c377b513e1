//! One line per acceptance criterion; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use qgroup::catalog::{self, rtt, Builtins, FINAL, KLMN, SUQ2};
use qgroup::contract::{self, ContractionAnsatz, ContractionReport};
use qgroup::freealg::Element;
use qgroup::hopf::{self, HopfPresentation};
use qgroup::report::CheckReport;
use qgroup::rewrite::{check_local_confluence, RandomStrategy, RewriteStrategy};
use qgroup::scalars::{Scalar, LAMBDA};
use qgroup::suite::{self, RunConfig, SuiteContext, SuiteRegistry};

mod common;
use common::el;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn no_failures(what: &str, rep: &CheckReport) -> Result<(), String> {
    match rep.failures().next() {
        None => Ok(()),
        Some(r) => Err(format!("{what}: `{}` left {}", r.name, r.residual)),
    }
}

fn contraction_ok(what: &str, rep: &ContractionReport) -> Result<(), String> {
    match rep.checks.iter().find(|c| !c.ok()) {
        None => Ok(()),
        Some(c) => Err(format!("{what}: `{}` left {}", c.name(), c.residual)),
    }
}

fn rtt_generation() -> Outcome {
    let s = common::hopf(SUQ2);
    let p = s.base();
    let comps = rtt::rtt_relations(&rtt::RMatrix::standard(1), p).map_err(|e| e.to_string())?;
    let six: Vec<Element> = ["a*b - q*b*a", "a*c - q*c*a", "b*c - c*b", "b*d - q*d*b", "c*d - q*d*c", "a*d - d*a - (q - q^-1)*b*c"]
        .iter()
        .map(|t| el(p, t))
        .collect();
    ensure(rtt::format_rtt(&comps) == catalog::RTT_GOLDEN, "golden RTT text differs")?;
    ensure(rtt::matches_relation_set(&comps, &six).map_err(|e| e.to_string())?, "relations do not match the six")?;
    Ok(format!("{} components, golden exact", comps.len()))
}

fn confluence() -> Outcome {
    let mut n = 0;
    for name in [SUQ2, KLMN, FINAL] {
        let h = common::hopf(name);
        let r = check_local_confluence(h.base(), 6, 1_000_000).map_err(|e| e.to_string())?;
        if let Some(a) = r.unresolved().next() {
            return Err(format!("{name}: {} unresolved ({} / {})", a.word, a.rules.0, a.rules.1));
        }
        n += r.ambiguities.len();
    }
    Ok(format!("{n} ambiguities resolved"))
}

fn suq2_hopf() -> Outcome {
    let s = common::hopf(SUQ2);
    let mut rep = hopf::check_all(&s).map_err(|e| e.to_string())?;
    rep.extend(suite::determinant_checks(&s).map_err(|e| e.to_string())?);
    no_failures("suq2", &rep)?;
    ensure(rep.count(qgroup::report::Status::Skipped) == 0, "suq2 skipped a check")?;
    Ok(format!("{} checks, all residuals 0", rep.records.len()))
}

fn ansatz() -> Result<(Builtins, ContractionAnsatz), String> {
    let b = common::builtins();
    let a = ContractionAnsatz::new(&b).map_err(|e| e.to_string())?;
    Ok((b, a))
}

fn contraction_relations() -> Outcome {
    let (b, ans) = ansatz()?;
    let rep = contract::relation_suite(&ans).map_err(|e| e.to_string())?;
    contraction_ok("relations", &rep)?;
    ensure(rep.checks.len() == 36, "expected 18 relations at orders 0 and 1")?;
    let t = b.klmn.base();
    let raw = |id: &str, k: u32| rep.find(id, Some(k)).and_then(|c| c.raw.clone()).ok_or(format!("no raw for {id}"));
    ensure(raw("RTT (1,1),(2,1)", 0)? == el(t, "-(K*M - M*K)"), "order-0 raw is not [K, M]")?;
    let o1 = raw("RTT (1,1),(2,1)", 1)?;
    ensure(o1 == el(t, "-(K*(i*N) - (i*N)*K + L*M - M*L - lam*M*K)"), "order-1 raw is not [K, iN] + [L, M] - lam MK")?;
    ensure(raw("RTT (1,2),(2,1)", 1)? == el(t, "2*i*(N*M - M*N)"), "raw bc - cb is not proportional to [M, N]")?;
    Ok("orders 0 and 1 reduce to 0; raw residuals match".into())
}

fn d_series() -> Outcome {
    let (b, ans) = ansatz()?;
    let t = b.klmn.base();
    let ds = ans.dseries();
    ensure(ds.d == el(t, "K - eps*L"), format!("d = {}", ds.d))?;
    ensure(ds.raw.eps_component(0) == el(t, "J + J*M*M"), "raw order 0 is not K^-1 (1 + M^2)")?;
    ensure(
        ds.raw.eps_component(1) == el(t, "J*(lam*M*M + i*(N*M - M*N)) - J*L*J*(1 + M*M)"),
        "raw order 1 differs",
    )?;
    contraction_ok("d-series", &contract::verify_dseries(&ans).map_err(|e| e.to_string())?)?;
    Ok("d = K - eps*L, a*d and d*a hold to order 1".into())
}

fn coproducts_and_star() -> Outcome {
    let (b, ans) = ansatz()?;
    let two = b.klmn.two();
    let co = contract::coproduct_suite(&ans).map_err(|e| e.to_string())?;
    contraction_ok("coproducts", &co)?;
    let val = |g: &str, k: u32| co.find(&format!("contracted coproduct of {g}"), Some(k)).and_then(|c| c.value.clone());
    ensure(val("b", 0) == Some(el(two, "K ox M + M ox K")), "Delta(M) differs")?;
    ensure(val("a", 0) == Some(el(two, "K ox K + M ox M")), "Delta(K) differs")?;
    ensure(val("a", 1) == Some(el(two, "K ox L + L ox K + i*N ox M - i*M ox N")), "Delta(L) differs")?;
    let st = contract::verify_star_contraction(&ans).map_err(|e| e.to_string())?;
    contraction_ok("star", &st)?;
    let k = &b.klmn;
    let t = k.base();
    for (x, y) in [("K", "K"), ("L", "-L"), ("M", "-M"), ("N", "-N - i*lam*M")] {
        ensure(k.star(&el(t, x)).map_err(|e| e.to_string())? == el(t, y), format!("{x}* differs"))?;
    }
    let cv = contract::verify_change_of_variables(&b).map_err(|e| e.to_string())?;
    for id in ["Delta(K + M) = (K + M) ox (K + M)", "Delta(K - M) = (K - M) ox (K - M)", "Delta(L - lam/2*M + i*N)", "Delta(L + lam/2*M - i*N)"] {
        let c = cv.find(id, None).ok_or(format!("missing {id}"))?;
        ensure(c.claimed && c.residual.is_zero(), format!("{id} fails"))?;
    }
    let anti = contract::verify_antipode_counit_contraction(&ans).map_err(|e| e.to_string())?;
    contraction_ok("antipode and counit", &anti)?;
    Ok(format!("{} coproduct, {} star checks; both sign choices", co.checks.len(), st.checks.len()))
}

fn change_of_variables() -> Outcome {
    let b = common::builtins();
    let rep = contract::verify_change_of_variables(&b).map_err(|e| e.to_string())?;
    contraction_ok("change of variables", &rep)?;
    let star = rep.find("eta* = etabar", None).ok_or("missing eta*")?;
    ensure(star.residual.is_zero(), "eta* differs from etabar")?;
    let t = b.klmn.base();
    let eta = contract::klmn_named(&b, "eta").map_err(|e| e.to_string())?;
    let etabar = contract::klmn_named(&b, "etabar").map_err(|e| e.to_string())?;
    ensure(b.klmn.star(&eta).map_err(|e| e.to_string())? == t.nf(&etabar).map_err(|e| e.to_string())?, "eta* != etabar exactly")?;
    let claimed = rep.checks.iter().filter(|c| c.claimed).count();
    Ok(format!("{claimed} identities reduce to 0; etabar*eta reported open"))
}

fn eta_basis(h: &HopfPresentation) -> Vec<Element> {
    ["eta", "etabar", "E - 1", "F - 1"].iter().map(|s| el(h.base(), s)).collect()
}

fn solver() -> Outcome {
    let h = common::hopf(FINAL);
    let p = h.base();
    let (x, y) = (el(p, "eta"), el(p, "etabar"));
    let basis = eta_basis(&h);
    let sol = contract::solve_commutator(&h, &x, &y, &basis).map_err(|e| e.to_string())?;
    let lam = Scalar::param(LAMBDA, 1, 1);
    let zero = Scalar::zero(1);
    let want = [lam.clone(), lam, zero.clone(), zero];
    ensure(sol.coefficients() == Some(&want[..]), format!("{:?}", sol.outcome))?;
    let hs = contract::install_commutator(&h, &x, &y, &basis, &want).map_err(|e| e.to_string())?;
    let r = check_local_confluence(hs.base(), 6, 1_000_000).map_err(|e| e.to_string())?;
    ensure(r.ok, "installed presentation is not confluent")?;
    let mut rep = hopf::check_all(&hs).map_err(|e| e.to_string())?;
    let mut rng = common::rng(90);
    rep.extend(hopf::check_random_convolution(&hs, &mut rng, 200, 3, &[]).map_err(|e| e.to_string())?);
    no_failures("installed", &rep)?;
    Ok("(lam, lam, 0, 0); installed rule confluent and Hopf".into())
}

fn property_suites() -> Outcome {
    let mut total = 0;
    for (k, name) in [SUQ2, KLMN, FINAL].into_iter().enumerate() {
        let h = common::hopf(name);
        let p = h.base();
        let avoid = common::ln_pairs(p);
        let mut rng = common::rng(100 + k as u64);
        let random = RandomStrategy::new(7 + k as u64);
        let gens = common::all_gens(p);
        for _ in 0..500 {
            let x = qgroup::random::random_element(&mut rng, p, &gens, 5, &[]);
            let n = p.nf(&x).map_err(|e| e.to_string())?;
            ensure(p.nf(&n).map_err(|e| e.to_string())? == n, format!("{name}: nf not idempotent"))?;
            ensure(random.normalize(p, &x, 1_000_000).map_err(|e| e.to_string())? == n, format!("{name}: strategies disagree"))?;
        }
        let mut rep = hopf::check_random_convolution(&h, &mut rng, 200, 3, &avoid).map_err(|e| e.to_string())?;
        rep.extend(hopf::check_random_star_involution(&h, &mut rng, 200, 3, &avoid).map_err(|e| e.to_string())?);
        no_failures(name, &rep)?;
        total += 500 + 400;
    }
    let cx = SuiteContext::new(RunConfig::default()).map_err(|e| e.to_string())?;
    let props = SuiteRegistry::default().get("properties").ok_or("no properties suite")?.run(&cx).map_err(|e| e.to_string())?;
    no_failures("properties suite", &props)?;
    Ok(format!("{total} randomized checks, seed fixed"))
}

fn classical_limit() -> Outcome {
    let b = Builtins::load(1, true).map_err(|e| e.to_string())?;
    contraction_ok("classical", &contract::verify_classical_limit(&b).map_err(|e| e.to_string())?)?;
    let cx = SuiteContext::new(RunConfig { classical: true, ..RunConfig::default() }).map_err(|e| e.to_string())?;
    let rep = SuiteRegistry::default().run(&cx).map_err(|e| e.to_string())?;
    no_failures("classical run", &rep)?;
    Ok(format!("{} records, 0 failed", rep.records.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("RTT generation", rtt_generation),
        ("confluence", confluence),
        ("SU_q(2) Hopf suite", suq2_hopf),
        ("contraction relations", contraction_relations),
        ("d-series", d_series),
        ("contracted coproducts and star", coproducts_and_star),
        ("change of variables", change_of_variables),
        ("solver", solver),
        ("property suites", property_suites),
        ("classical limit", classical_limit),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match out {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
