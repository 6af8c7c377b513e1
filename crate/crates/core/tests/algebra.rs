use qgroup::catalog::{KLMN, SUQ2};
use qgroup::freealg::{Alphabet, Element, GeneratorMap, Letter, MapKind, Word};
use qgroup::random::random_element;
use qgroup::scalars::Scalar;

mod common;
use common::el;

#[test]
fn products_from_examples() {
    let h = common::hopf(KLMN);
    let p = h.base();
    let km = &el(p, "K") * &el(p, "M");
    let (w, c) = km.leading().unwrap();
    assert_eq!(w.len(), 2);
    assert!(c.is_one());
    assert_eq!(km.len(), 1);

    let x = &el(p, "K + eps*L") * &el(p, "K - eps*L");
    assert_eq!(x, el(p, "K*K + eps*(L*K - K*L)"));
    let y = &el(p, "M + i*eps*N") * &el(p, "M - i*eps*N");
    assert_eq!(y, el(p, "M*M + i*eps*(N*M - M*N)"));
}

#[test]
fn tensor_embedding() {
    let p = common::hopf(KLMN).base().clone();
    let k1 = el(&p, "K").tensor_embed(1).unwrap();
    let m2 = el(&p, "M").tensor_embed(2).unwrap();
    let km = &k1 * &m2;
    let (w, _) = km.leading().unwrap();
    assert_eq!(w.letters()[0].slot, 1);
    assert_eq!(w.letters()[1].slot, 2);
    assert_eq!(km, el(&p.tensor(2).unwrap(), "K ox M"));
    assert!(p.one().tensor_embed(1).unwrap().is_one());
}

#[test]
fn maps_from_examples() {
    let src = Alphabet::new(["x"]).unwrap();
    let klmn = common::hopf(KLMN);
    let t = klmn.base();
    let mut f = GeneratorMap::new(&src, t.alphabet(), MapKind::Homomorphism);
    f.set("x", el(t, "K")).unwrap();
    let x = Element::generator(&src, "x", 1).unwrap();
    assert_eq!(f.apply(&(&x * &x)).unwrap(), el(t, "K*K"));

    let mut star = GeneratorMap::new(t.alphabet(), t.alphabet(), MapKind::AntilinearAntihomomorphism);
    star.set("K", el(t, "K")).unwrap();
    star.set("M", el(t, "-M")).unwrap();
    assert_eq!(star.apply(&el(t, "i*K*M")).unwrap(), el(t, "i*M*K"));

    let b = common::builtins();
    let ans = qgroup::contract::ContractionAnsatz::new(&b).unwrap();
    let s = b.suq2.base();
    assert_eq!(ans.apply(&el(s, "b*c")).unwrap(), el(t, "(M + i*eps*N)*(M - i*eps*N)"));
}

#[test]
fn missing_images_are_reported() {
    let t = common::hopf(KLMN).base().clone();
    let f = GeneratorMap::new(t.alphabet(), t.alphabet(), MapKind::Homomorphism);
    assert!(f.apply(&el(&t, "K")).is_err());
    assert!(f.apply(&el(&t, "2 + lam")).unwrap() == el(&t, "2 + lam"));
}

#[test]
fn multiplication_is_associative_and_unital() {
    let mut rng = common::rng(10);
    for name in [SUQ2, KLMN] {
        let h = common::hopf(name);
        let p = h.base();
        let gens = common::all_gens(p);
        for _ in 0..300 {
            let x = random_element(&mut rng, p, &gens, 4, &[]);
            let y = random_element(&mut rng, p, &gens, 4, &[]);
            let z = random_element(&mut rng, p, &gens, 4, &[]);
            assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            assert_eq!(&x * &p.one(), x);
            assert_eq!(&p.one() * &x, x);
            assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}

#[test]
fn maps_respect_products() {
    let mut rng = common::rng(11);
    for name in [SUQ2, KLMN] {
        let h = common::hopf(name);
        let p = h.base();
        let gens = common::structure_gens(&h);
        let maps = [h.antipode_map().clone(), h.star_map().unwrap().clone()];
        for _ in 0..100 {
            let x = random_element(&mut rng, p, &gens, 3, &[]);
            let y = random_element(&mut rng, p, &gens, 3, &[]);
            let xy = &x * &y;
            let d = h.coproduct_map();
            assert_eq!(d.apply(&xy).unwrap(), &d.apply(&x).unwrap() * &d.apply(&y).unwrap());
            for f in &maps {
                assert!(f.kind().reverses());
                assert_eq!(f.apply(&xy).unwrap(), &f.apply(&y).unwrap() * &f.apply(&x).unwrap());
            }
            let star = h.star_map().unwrap();
            let c = Scalar::i(1);
            assert_eq!(star.apply(&x.scale(&c).unwrap()).unwrap(), star.apply(&x).unwrap().scale(&c.conjugate()).unwrap());
        }
    }
}

#[test]
fn word_order_is_deglex() {
    let a = Letter::new(0, 0);
    let b = Letter::new(1, 0);
    let short = Word::from_letters(&[b]);
    let long = Word::from_letters(&[a, a]);
    assert!(long > short);
    assert!(Word::from_letters(&[b, a]) > Word::from_letters(&[a, b]));
    assert!(Word::unit() < short);
}
