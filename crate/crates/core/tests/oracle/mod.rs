//! Reference computations that avoid the library's arithmetic: plain
//! integer formulas and fixed-point interval bounds.

#![allow(dead_code)]

use berg_core::exactnum::QuadraticNumber;
use berg_core::spectral::{corpus, AutomorphismMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};


/// `(a + b·√d)/c` with `c > 0`.
#[derive(Clone, Debug)]
pub struct Scaled {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Scaled {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        if c.is_negative() {
            Scaled { a: -a, b: -b, c: -c, d }
        } else {
            Scaled { a, b, c, d }
        }
    }

    pub fn of(x: &QuadraticNumber) -> Self {
        let c = x.rat().denom().lcm(x.surd().denom());
        let a = x.rat().numer() * (&c / x.rat().denom());
        let b = x.surd().numer() * (&c / x.surd().denom());
        Scaled { a, b, c, d: BigInt::from(x.radicand()) }
    }

    pub fn scale(&self, j: i64) -> Self {
        Scaled { a: &self.a * j, b: &self.b * j, ..self.clone() }
    }

    pub fn minus_integer(&self, n: &BigInt) -> Self {
        Scaled { a: &self.a - n * &self.c, ..self.clone() }
    }

    pub fn sub(&self, o: &Scaled) -> Self {
        assert_eq!(self.d, o.d);
        Scaled::new(
            &self.a * &o.c - &o.a * &self.c,
            &self.b * &o.c - &o.b * &self.c,
            &self.c * &o.c,
            self.d.clone(),
        )
    }

    /// Sign by comparing `a²` with `d·b²`.
    pub fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let db2 = &self.d * &self.b * &self.b;
        match a2.cmp(&db2) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
        }
    }

    /// `⌊x⌋` from an integer square root.
    pub fn floor(&self) -> BigInt {
        let root = (&self.d * &self.b * &self.b).sqrt();
        let exact = &root * &root == &self.d * &self.b * &self.b;
        let num = if !self.b.is_negative() {
            &self.a + &root
        } else if exact {
            &self.a - &root
        } else {
            &self.a - &root - 1
        };
        num.div_floor(&self.c)
    }
}

fn sgn(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `x` from `√d ∈ [r, r + 1]/2^bits`, doubling `bits` until the
/// interval for `x` excludes zero. Starts at 256 bits.
pub fn interval_sign(x: &QuadraticNumber) -> i8 {
    let s = Scaled::of(x);
    if s.b.is_zero() {
        return sgn(&s.a);
    }
    let mut bits = 256u32;
    loop {
        let scale = BigInt::one() << bits;
        let r = (&s.d << (2 * bits)).sqrt();
        let a = &s.a * &scale;
        let (lo, hi) = if s.b.is_positive() {
            (&a + &s.b * &r, &a + &s.b * (&r + 1))
        } else {
            (&a + &s.b * (&r + 1), &a + &s.b * &r)
        };
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "interval did not separate from zero");
    }
}

/// `s2 = (λ − k)/(λ − k + l)` rationalized by hand, with `Δ = tr² − 4·det`.
pub fn slope_s2(f: &AutomorphismMatrix) -> Scaled {
    let (k, l, n) = (f.k() as i64, f.l() as i64, f.n() as i64);
    let tr = k + n;
    let delta = tr * tr - 4 * f.det() as i64;
    let nk = n - k;
    let a = nk * (nk + 2 * l) - delta;
    let c = (nk + 2 * l) * (nk + 2 * l) - delta;
    let (outer, core) = square_free(delta);
    Scaled::new(a.into(), (2 * l * outer).into(), c.into(), core.into())
}

/// `n = outer²·core` with `core` square-free, by trial division.
fn square_free(n: i64) -> (i64, i64) {
    let (mut outer, mut core) = (1, n);
    let mut p = 2;
    while p * p <= core {
        while core % (p * p) == 0 {
            core /= p * p;
            outer *= p;
        }
        p += 1;
    }
    (outer, core)
}

/// Principal word with lock `[a,b]` as a mechanical word: `c_j = a` iff
/// `{(1 − j)·s2} ≥ s2`.
pub fn mechanical_word(f: &AutomorphismMatrix, lo: i64, hi: i64) -> String {
    let s2 = slope_s2(f);
    (lo..=hi)
        .map(|j| {
            let y = s2.scale(1 - j);
            let frac = y.minus_integer(&y.floor());
            if frac.sub(&s2).sign() >= 0 {
                'a'
            } else {
                'b'
            }
        })
        .collect()
}

/// Twenty matrices spread evenly over the `σ ≤ 30` corpus.
pub fn sample20() -> Vec<AutomorphismMatrix> {
    let all = corpus(30);
    (0..20).map(|i| all[i * all.len() / 20]).collect()
}

pub fn is_palindrome(s: &str) -> bool {
    s.chars().eq(s.chars().rev())
}
