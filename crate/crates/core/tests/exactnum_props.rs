mod oracle;

use berg_core::exactnum::{quad_arith, ArithError, ArithOp, QuadraticNumber, Rational};
use num_bigint::BigInt;
use oracle::{interval_sign, Scaled};
use proptest::prelude::*;

fn q(s: &str) -> QuadraticNumber {
    s.parse().unwrap()
}

fn quad(a: (i64, i64), b: (i64, i64), d: u64) -> QuadraticNumber {
    QuadraticNumber::new(
        Rational::new(BigInt::from(a.0), BigInt::from(a.1)),
        Rational::new(BigInt::from(b.0), BigInt::from(b.1)),
        d,
    )
}

#[test]
fn arithmetic_examples() {
    let p = quad_arith(&q("1+sqrt(5)"), &q("1-sqrt(5)"), ArithOp::Mul).unwrap();
    assert_eq!(p, QuadraticNumber::from_integer(-4));
    let p = quad_arith(&q("4+sqrt(15)"), &q("4-sqrt(15)"), ArithOp::Mul).unwrap();
    assert_eq!(p, QuadraticNumber::one());
    let r = quad_arith(&QuadraticNumber::one(), &q("1+sqrt(5)"), ArithOp::Div).unwrap();
    assert_eq!(r, q("-1/4+1/4*sqrt(5)"));
}

#[test]
fn arithmetic_errors() {
    let z = QuadraticNumber::zero();
    assert_eq!(quad_arith(&QuadraticNumber::one(), &z, ArithOp::Div), Err(ArithError::DivisionByZero));
    assert!(matches!(
        quad_arith(&QuadraticNumber::sqrt(2), &QuadraticNumber::sqrt(3), ArithOp::Add),
        Err(ArithError::MixedRadicands { .. })
    ));
    // Rational values combine with any field.
    assert!(quad_arith(&QuadraticNumber::sqrt(2), &QuadraticNumber::from_ratio(1, 3), ArithOp::Mul).is_ok());
}

#[test]
fn sign_examples() {
    assert_eq!(q("4-sqrt(15)").signum(), 1);
    assert_eq!(QuadraticNumber::zero().signum(), 0);
    assert_eq!(q("3-2*sqrt(3)").signum(), -1);
}

#[test]
fn floor_examples() {
    assert_eq!(QuadraticNumber::sqrt(15).floor(), BigInt::from(3));
    assert_eq!(q("4+sqrt(15)").floor(), BigInt::from(7));
    assert_eq!((-QuadraticNumber::sqrt(2)).floor(), BigInt::from(-2));
}

#[test]
fn square_factors_are_pulled_out() {
    assert_eq!(QuadraticNumber::sqrt(60), q("2*sqrt(15)"));
    assert_eq!(QuadraticNumber::sqrt(49), QuadraticNumber::from_integer(7));
}

#[test]
fn decimals() {
    assert_eq!(q("4+sqrt(15)").to_decimal(8), "7.87298335");
    assert_eq!(QuadraticNumber::from_ratio(1, 8).to_decimal(2), "0.12");
    assert_eq!(QuadraticNumber::from_ratio(3, 8).to_decimal(2), "0.38");
    assert_eq!(QuadraticNumber::from_ratio(-1, 3).to_decimal(4), "-0.3333");
}

const RADICANDS: [u64; 8] = [2, 3, 5, 6, 7, 13, 15, 21];

fn small_quad() -> impl Strategy<Value = QuadraticNumber> {
    (-50i64..50, 1i64..20, -50i64..50, 1i64..20, 0usize..RADICANDS.len())
        .prop_map(|(a, ad, b, bd, i)| quad((a, ad), (b, bd), RADICANDS[i]))
}

fn triple() -> impl Strategy<Value = (QuadraticNumber, QuadraticNumber, QuadraticNumber)> {
    (0usize..RADICANDS.len(), prop::array::uniform6((-50i64..50, 1i64..20))).prop_map(|(i, c)| {
        let d = RADICANDS[i];
        (quad(c[0], c[1], d), quad(c[2], c[3], d), quad(c[4], c[5], d))
    })
}

proptest! {
    #[test]
    fn field_laws((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x - &x, QuadraticNumber::zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.checked_recip().unwrap(), QuadraticNumber::one());
            prop_assert_eq!(&(&y / &x) * &x, y.clone());
        }
    }

    #[test]
    fn conjugate_product_is_norm(x in small_quad()) {
        let n = &x * &x.conjugate();
        let a = x.rat();
        let b = x.surd();
        let expected = a * a - b * b * Rational::from_integer(BigInt::from(x.radicand()));
        prop_assert!(n.is_rational());
        prop_assert_eq!(n.rat(), &expected);
        prop_assert_eq!(x.norm(), expected);
    }

    #[test]
    fn floor_brackets_value(x in small_quad()) {
        let n = QuadraticNumber::rational(Rational::from_integer(x.floor()));
        prop_assert!((&x - &n).signum() >= 0);
        prop_assert!((&(&n + &QuadraticNumber::one()) - &x).signum() > 0);
        prop_assert_eq!(x.floor(), Scaled::of(&x).floor());
    }

    #[test]
    fn text_round_trip(x in small_quad()) {
        let back: QuadraticNumber = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    /// Wide coefficients, plus values pinned next to zero: `p − q·√D` with
    /// `p = ⌊q·√D⌋ + δ` for small `δ`.
    #[test]
    fn sign_matches_interval_evaluation(
        i in 0usize..RADICANDS.len(),
        wide in any::<bool>(),
        a in any::<i64>(),
        b in any::<i64>(),
        den in 1i64..1_000_000,
        delta in -2i64..=2,
    ) {
        let d = RADICANDS[i];
        let x = if wide {
            quad((a, den), (b, 1 + den / 7), d)
        } else {
            let qq = (b % 1_000_000_000).abs() + 1;
            let root = (BigInt::from(qq) * BigInt::from(qq) * BigInt::from(d)).sqrt();
            let p: i64 = (root + BigInt::from(delta)).try_into().unwrap();
            quad((p, 1), (-qq, 1), d)
        };
        prop_assert_eq!(x.signum(), interval_sign(&x));
        prop_assert_eq!(x.signum(), Scaled::of(&x).sign());
    }
}
