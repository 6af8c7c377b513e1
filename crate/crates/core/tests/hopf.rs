use qgroup::catalog::{FINAL, KLMN, SUQ2};
use qgroup::hopf::{check_all, check_coassociativity, check_delta_respects_relations, check_random_convolution, check_random_star_involution};
use qgroup::report::Status;
use qgroup::suite::determinant_checks;

mod common;
use common::el;

#[test]
fn coproducts_from_examples() {
    let s = common::hopf(SUQ2);
    assert_eq!(s.coproduct(&el(s.base(), "a")).unwrap(), el(s.two(), "a ox a + b ox c"));
    let k = common::hopf(KLMN);
    assert_eq!(k.coproduct(&el(k.base(), "K")).unwrap(), el(k.two(), "K ox K + M ox M"));
    let f = common::hopf(FINAL);
    assert_eq!(f.coproduct(&el(f.base(), "E")).unwrap(), el(f.two(), "E ox E"));
}

#[test]
fn coproduct_respects_named_rules() {
    for (name, rule) in [(SUQ2, "a*b -> q*b*a"), (KLMN, "L*M -> M*L + lam*M*K"), (FINAL, "etabar*eta -> eta*etabar - lam*etabar - lam*eta")] {
        let h = common::hopf(name);
        let rep = check_delta_respects_relations(&h).unwrap();
        let r = rep.find(&format!("coproduct respects `{rule}`")).unwrap_or_else(|| panic!("{name}: {rule}"));
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.residual, "0");
    }
}

#[test]
fn coassociativity_on_named_generators() {
    for (name, g) in [(FINAL, "E"), (KLMN, "K"), (FINAL, "eta")] {
        let h = common::hopf(name);
        let rep = check_coassociativity(&h).unwrap();
        assert_eq!(rep.find(&format!("coassociativity on {g}")).unwrap().status, Status::Pass);
    }
}

#[test]
fn antipode_examples() {
    let s = common::hopf(SUQ2);
    let p = s.base();
    assert_eq!(s.antipode(&el(p, "a")).unwrap(), el(p, "d"));
    assert_eq!(s.antipode(&el(p, "b")).unwrap(), el(p, "-q^-1*b"));
    assert_eq!(s.antipode(&el(p, "c")).unwrap(), el(p, "-q*c"));
    // S(a) a + S(b) c = d a - q^-1 b c
    let conv = el(p, "d*a - q^-1*b*c");
    assert!(p.nf(&conv).unwrap().is_one());
    assert!(p.nf(&s.antipode_convolution(&s.coproduct(&el(p, "a")).unwrap(), 1).unwrap()).unwrap().is_one());

    let f = common::hopf(FINAL);
    let fp = f.base();
    assert_eq!(f.antipode(&el(fp, "eta")).unwrap(), el(fp, "-E*eta"));
    assert!(fp.nf(&el(fp, "-E*eta + E*eta")).unwrap().is_zero());
    let d = f.coproduct(&el(fp, "eta")).unwrap();
    assert!(fp.nf(&f.antipode_convolution(&d, 1).unwrap()).unwrap().is_zero());
    assert!(fp.nf(&(&f.antipode(&el(fp, "E")).unwrap() * &el(fp, "E"))).unwrap().is_one());
}

#[test]
fn star_examples() {
    let k = common::hopf(KLMN);
    let t = k.base();
    assert_eq!(k.star(&el(t, "N")).unwrap(), el(t, "-N - i*lam*M"));
    assert_eq!(k.star(&k.star(&el(t, "N")).unwrap()).unwrap(), el(t, "N"));
    let s = common::hopf(SUQ2);
    let p = s.base();
    assert!(s.star(&el(p, "a*b - q*b*a")).unwrap().is_zero());
}

#[test]
fn all_builtins_pass_the_generator_checks() {
    for name in [SUQ2, KLMN, FINAL] {
        let rep = check_all(&common::hopf(name)).unwrap();
        let fails: Vec<_> = rep.failures().map(|r| r.name.clone()).collect();
        assert!(fails.is_empty(), "{name}: {fails:?}");
        assert!(rep.count(Status::Pass) > 10);
    }
}

#[test]
fn klmn_skips_only_rules_with_j() {
    let rep = check_all(&common::hopf(KLMN)).unwrap();
    for r in rep.records.iter().filter(|r| r.status == Status::Skipped) {
        assert!(r.name.contains('J'), "{}", r.name);
    }
}

#[test]
fn determinant_is_central_and_grouplike() {
    let s = common::hopf(SUQ2);
    let rep = determinant_checks(&s).unwrap();
    assert!(rep.ok(), "{:?}", rep.failures().collect::<Vec<_>>());
    assert_eq!(rep.count(Status::Pass), 6);
    let p = s.base();
    let det = el(p, "a*d - q*b*c");
    assert!(p.nf(&det).unwrap().is_one());
    assert_eq!(s.coproduct_raw(&det).unwrap(), el(s.two(), "1 ox 1"));
}

#[test]
fn random_convolution_and_star() {
    for (k, name) in [SUQ2, KLMN, FINAL].into_iter().enumerate() {
        let h = common::hopf(name);
        let avoid = common::ln_pairs(h.base());
        let mut rng = common::rng(40 + k as u64);
        let rep = check_random_convolution(&h, &mut rng, 200, 3, &avoid).unwrap();
        assert!(rep.ok(), "{name}: {:?}", rep.failures().collect::<Vec<_>>());
        let rep = check_random_star_involution(&h, &mut rng, 200, 3, &avoid).unwrap();
        assert!(rep.ok(), "{name}: {:?}", rep.failures().collect::<Vec<_>>());
    }
}

#[test]
fn excluded_generators_are_rejected() {
    let k = common::hopf(KLMN);
    let t = k.base();
    assert!(k.coproduct(&el(t, "J*L")).is_err());
    assert!(k.counit(&el(t, "J")).is_err());
    assert!(k.coproduct(&el(t, "J*K")).unwrap().is_one());
}

#[test]
fn a_broken_coproduct_is_caught() {
    let src = qgroup::catalog::builtin_source(SUQ2).unwrap().replace("a -> a ox a + b ox c", "a -> a ox a");
    let h = common::load_text(&src, "broken").into_hopf().unwrap();
    let rep = check_all(&h).unwrap();
    assert!(!rep.ok());
    assert!(rep.failures().any(|r| r.name.contains("coproduct respects")));
}
