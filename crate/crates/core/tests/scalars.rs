use num_bigint::BigInt;
use num_rational::BigRational;
use qgroup::scalars::{q_power, GaussianRational, ParamMonomial, Scalar, LAMBDA, Q};
use rand::Rng;

mod common;

fn rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=4)))
}

fn random_scalar<R: Rng>(rng: &mut R, order: u32) -> Scalar {
    let mut s = Scalar::zero(order);
    for _ in 0..rng.gen_range(0..=4) {
        let c = GaussianRational::new(rational(rng), rational(rng));
        let mono = ParamMonomial::var(Q, rng.gen_range(-2..=2)).mul(&ParamMonomial::var(LAMBDA, rng.gen_range(0..=2)));
        s = &s + &Scalar::term(c, mono, rng.gen_range(0..=order + 1), order);
    }
    s
}

#[test]
fn ring_axioms_on_random_scalars() {
    let mut rng = common::rng(1);
    for _ in 0..1000 {
        let order = rng.gen_range(0..=3);
        let (x, y, z) = (random_scalar(&mut rng, order), random_scalar(&mut rng, order), random_scalar(&mut rng, order));
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        assert_eq!(&x * &y, &y * &x);
        assert_eq!(&x + &y, &y + &x);
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        assert_eq!(&x * &Scalar::one(order), x);
        assert!((&x - &x).is_zero());
        assert_eq!(&x + &(-&y), &x - &y);
    }
}

#[test]
fn truncation() {
    let e = Scalar::eps(1);
    assert!((&e * &e).is_zero());
    assert_eq!(Scalar::eps(2).pow(2).max_eps_degree(), Some(2));
    assert!(Scalar::eps(2).pow(3).is_zero());
    assert!(Scalar::term(GaussianRational::one(), ParamMonomial::one(), 2, 1).is_zero());
}

#[test]
fn products_from_examples() {
    let q = Scalar::param(Q, 1, 1);
    let qi = Scalar::param(Q, -1, 1);
    assert!((&q * &qi).is_one());
    let i = Scalar::i(1);
    assert_eq!(&i * &i, Scalar::from_int(-1, 1));
}

#[test]
fn mismatched_orders_are_a_usage_error() {
    let err = Scalar::one(1).checked_add(&Scalar::one(2)).unwrap_err();
    assert!(err.is_usage(), "{err}");
    assert!(Scalar::one(1).checked_mul(&Scalar::one(3)).is_err());
}

#[test]
fn conjugation() {
    assert_eq!(Scalar::i(1).conjugate(), -Scalar::i(1));
    let c = GaussianRational::new(BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into()));
    assert_eq!(Scalar::constant(c.clone(), 1).conjugate(), Scalar::constant(c.conj(), 1));
    assert_eq!(Scalar::constant(c.conj(), 1).to_string(), "(3/2-1/2*i)");
    let ile = &(&Scalar::i(1) * &Scalar::param(LAMBDA, 1, 1)) * &Scalar::eps(1);
    assert_eq!(ile.conjugate(), -ile);
}

#[test]
fn q_power_values() {
    let lam = Scalar::param(LAMBDA, 1, 1);
    assert_eq!(q_power(1, 1), &Scalar::one(1) + &(&lam * &Scalar::eps(1)));
    assert!(q_power(0, 3).is_one());
    let lam2 = Scalar::param(LAMBDA, 1, 2);
    assert_eq!(&q_power(1, 2) - &q_power(-1, 2), &(&Scalar::from_int(2, 2) * &lam2) * &Scalar::eps(2));
}

#[test]
fn q_powers_multiply_like_exponentials() {
    for order in 0..=4 {
        for m in -4..=4 {
            assert!((&q_power(m, order) * &q_power(-m, order)).is_one(), "m = {m}, order {order}");
            for n in -4..=4 {
                assert_eq!(&q_power(m, order) * &q_power(n, order), q_power(m + n, order));
            }
        }
    }
}

#[test]
fn q_elimination_matches_q_power() {
    let q3 = Scalar::param(Q, 3, 2);
    let e = q3.substitute(Q, |m| Ok(q_power(m, 2))).unwrap();
    assert_eq!(e, q_power(3, 2));
    assert!(!e.mentions(Q));
}

#[test]
fn inverses() {
    let mut rng = common::rng(2);
    for _ in 0..200 {
        let c = GaussianRational::new(rational(&mut rng), rational(&mut rng));
        match c.inv() {
            Some(inv) => assert!((&c * &inv).is_one()),
            None => assert!(c.is_zero()),
        }
    }
    let x = &Scalar::from_int(2, 2) * &Scalar::param(Q, 3, 2);
    assert!((&x * &x.try_inverse().unwrap()).is_one());
    assert!(Scalar::eps(1).try_inverse().is_err());
    assert!((&Scalar::one(1) + &Scalar::param(Q, 1, 1)).try_inverse().is_err());
}
