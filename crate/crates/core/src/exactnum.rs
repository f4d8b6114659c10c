//! Exact arithmetic over the rationals and real quadratic fields `Q(√D)`.
//!
//! Every geometric predicate in this crate reduces to the sign of an element
//! `a + b√D`, which is decided with integer comparisons only.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    DivisionByZero,
    /// Both operands carry a surd part, over different radicands.
    MixedRadicands { left: u64, right: u64 },
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => f.write_str("DivisionByZero"),
            ArithError::MixedRadicands { left, right } => {
                write!(f, "MixedRadicands: sqrt({left}) and sqrt({right})")
            }
        }
    }
}

impl core::error::Error for ArithError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Splits `n` as `f² · d` with `d` square-free. Returns `(f, d)`.
pub fn square_free_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut rest = n;
    let mut outer = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        outer *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (outer, core * rest)
}

/// An element `rat + surd·√radicand` of a real quadratic field.
///
/// The representation is canonical: the radicand is square-free and at least
/// 2 whenever `surd ≠ 0`, and it is 1 for every rational value, so that
/// derived equality and hashing agree with numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rat: Rational,
    surd: Rational,
    radicand: u64,
}

fn rational_sign(x: &Rational) -> Ordering {
    match x.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

impl QuadraticNumber {
    /// Builds `rat + surd·√d` for any `d ≥ 0`; square factors of `d` are
    /// moved into the surd coefficient.
    pub fn new(rat: Rational, surd: Rational, d: u64) -> Self {
        let (outer, core) = square_free_split(d);
        if core <= 1 || surd.is_zero() {
            let extra = if core == 1 {
                surd * Rational::from_integer(BigInt::from(outer))
            } else {
                Rational::zero()
            };
            return Self::rational(rat + extra);
        }
        QuadraticNumber {
            rat,
            surd: surd * Rational::from_integer(BigInt::from(outer)),
            radicand: core,
        }
    }

    pub fn rational(r: Rational) -> Self {
        QuadraticNumber { rat: r, surd: Rational::zero(), radicand: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `√d`, simplified.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn surd(&self) -> &Rational {
        &self.surd
    }

    /// Square-free radicand, or 1 for a rational value.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber { rat: self.rat.clone(), surd: -&self.surd, radicand: self.radicand }
    }

    /// Field norm `a² − D·b²`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.surd * &self.surd * Self::radicand_rational(self.radicand)
    }

    fn radicand_rational(d: u64) -> Rational {
        Rational::from_integer(BigInt::from(d))
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, ArithError> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.radicand),
            (_, true) => Ok(self.radicand),
            _ if self.radicand == other.radicand => Ok(self.radicand),
            _ => Err(ArithError::MixedRadicands { left: self.radicand, right: other.radicand }),
        }
    }

    fn assemble(rat: Rational, surd: Rational, radicand: u64) -> Self {
        if surd.is_zero() {
            Self::rational(rat)
        } else {
            QuadraticNumber { rat, surd, radicand }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(&self.rat + &other.rat, &self.surd + &other.surd, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(&self.rat - &other.rat, &self.surd - &other.surd, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(other)?;
        if self.is_rational() {
            return Ok(Self::assemble(&self.rat * &other.rat, &self.rat * &other.surd, d));
        }
        if other.is_rational() {
            return Ok(Self::assemble(&self.rat * &other.rat, &self.surd * &other.rat, d));
        }
        let dr = Self::radicand_rational(d);
        let rat = &self.rat * &other.rat + &self.surd * &other.surd * dr;
        let surd = &self.rat * &other.surd + &self.surd * &other.rat;
        Ok(Self::assemble(rat, surd, d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let d = self.common_radicand(other)?;
        if other.is_rational() {
            return Ok(Self::assemble(&self.rat / &other.rat, &self.surd / &other.rat, d));
        }
        let n = other.norm();
        let num = self.checked_mul(&other.conjugate())?;
        Ok(Self::assemble(&num.rat / &n, &num.surd / &n, d))
    }

    pub fn checked_recip(&self) -> Result<Self, ArithError> {
        Self::one().checked_div(self)
    }

    /// Exact sign of the real value, from integer comparisons of `a²` and
    /// `D·b²`.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.rat);
        let sb = rational_sign(&self.surd);
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.rat * &self.rat;
        let db2 = &self.surd * &self.surd * Self::radicand_rational(self.radicand);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // D is square-free and > 1, so a² = D·b² forces a = b = 0.
            Ordering::Equal => unreachable!("a^2 = D b^2 with nonzero b"),
        }
    }

    pub fn signum(&self) -> i8 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison; fails only for two irrational values over
    /// different radicands.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ArithError> {
        Ok(self.checked_sub(other)?.sign())
    }

    /// Greatest integer `≤ self`.
    pub fn floor(&self) -> BigInt {
        // Integer estimate within a couple of units, then exact correction.
        let mut n = self.rat.floor().to_integer();
        if !self.surd.is_zero() {
            // |b|·√D = √(p²D)/q for b = p/q.
            let p = self.surd.numer().abs();
            let q = self.surd.denom();
            let root = (&p * &p * BigInt::from(self.radicand)).sqrt();
            let est = root.div_floor(q);
            if self.surd.is_positive() {
                n += est;
            } else {
                n -= est + BigInt::one();
            }
        }
        loop {
            let lower = self - &Self::rational(Rational::from_integer(n.clone()));
            if lower.is_negative() {
                n -= 1;
                continue;
            }
            let upper = &lower - &Self::one();
            if upper.sign() != Ordering::Less {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Fractional part `self − floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Self::rational(Rational::from_integer(self.floor()))
    }

    /// Decimal rendering with exactly `precision` digits after the point,
    /// rounded half-to-even.
    pub fn to_decimal(&self, precision: usize) -> String {
        let scale = BigInt::from(10u32).pow(precision as u32);
        let scaled = self * &Self::rational(Rational::from_integer(scale.clone()));
        let mut n = scaled.floor();
        let frac = &scaled - &Self::rational(Rational::from_integer(n.clone()));
        let half = Self::from_ratio(1, 2);
        match (&frac - &half).sign() {
            Ordering::Greater => n += 1,
            Ordering::Equal if n.is_odd() => n += 1,
            _ => {}
        }
        let negative = n.is_negative();
        let digits = n.abs().to_string();
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if precision == 0 {
            out.push_str(&digits);
            return out;
        }
        let padded = if digits.len() <= precision {
            let mut s = "0".repeat(precision + 1 - digits.len());
            s.push_str(&digits);
            s
        } else {
            digits
        };
        let split = padded.len() - precision;
        out.push_str(&padded[..split]);
        out.push('.');
        out.push_str(&padded[split..]);
        out
    }

    /// Coarse `f64` approximation, for diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        let a = self.rat.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand as f64;
        // no_std: Newton iteration instead of f64::sqrt.
        let mut r = if d > 1.0 { d / 2.0 } else { d };
        for _ in 0..64 {
            if r == 0.0 {
                break;
            }
            r = 0.5 * (r + d / r);
        }
        a + b * r
    }
}

pub fn quad_arith(
    x: &QuadraticNumber,
    y: &QuadraticNumber,
    op: ArithOp,
) -> Result<QuadraticNumber, ArithError> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { rat: -&self.rat, surd: -&self.surd, radicand: self.radicand }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl fmt::Display for QuadraticNumber {
    /// `a`, `b*sqrt(D)` or `a+b*sqrt(D)` / `a-b*sqrt(D)`; parsed back by
    /// [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if !self.rat.is_zero() {
            write!(f, "{}", self.rat)?;
            if self.surd.is_positive() {
                f.write_str("+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.surd, self.radicand)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseQuadraticError(pub String);

impl fmt::Display for ParseQuadraticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse quadratic number: {}", self.0)
    }
}

impl core::error::Error for ParseQuadraticError {}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for QuadraticNumber {
    type Err = ParseQuadraticError;

    /// Accepts `p`, `p/q`, `r*sqrt(D)` and `p/q±r/s*sqrt(D)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseQuadraticError(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(open) = t.find("sqrt(") else {
            return parse_rational(&t).map(Self::rational).ok_or_else(err);
        };
        let close = t[open..].find(')').map(|i| i + open).ok_or_else(err)?;
        if close + 1 != t.len() {
            return Err(err());
        }
        let d: u64 = t[open + 5..close].parse().map_err(|_| err())?;
        let head = &t[..open];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split the rational part from the surd coefficient at the last sign
        // that is not leading.
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (rat, coeff) = match split {
            Some(i) => (parse_rational(&head[..i]).ok_or_else(err)?, &head[i..]),
            None => (Rational::zero(), head),
        };
        let coeff = match coeff {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c.strip_prefix('+').unwrap_or(c)).ok_or_else(err)?,
        };
        Ok(Self::new(rat, coeff, d))
    }
}
