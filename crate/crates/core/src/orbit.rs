//! Fixed-width integer evaluation of the interval-exchange orbit.
//!
//! Every orbit point has the form `(a + b·√D)/c` for one common
//! denominator `c`, so the exchange only needs `i128` additions and sign
//! tests of `a + b·√D`. Any overflow makes the caller fall back to exact
//! big-number arithmetic.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactnum::QuadraticNumber;
use crate::spectral::BiPartition;
use crate::tiling::{Letter, Side};

const LIMIT: i128 = 1 << 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Point {
    a: i128,
    b: i128,
}

pub(crate) struct FastOrbit {
    d: i128,
    s1: Point,
    s2: Point,
    /// `s1 − s2`.
    gap: Point,
    side: Side,
}

fn scaled(x: &QuadraticNumber, den: &BigInt) -> Option<Point> {
    let part = |r: &crate::exactnum::Rational| -> Option<i128> {
        let v = r.numer() * (den / r.denom());
        let v = v.to_i128()?;
        (v.abs() < LIMIT).then_some(v)
    };
    Some(Point { a: part(x.rat())?, b: part(x.surd())? })
}

impl FastOrbit {
    /// `None` when the spine or `base` do not fit, or `base` lives in a
    /// different quadratic field.
    pub(crate) fn new(bp: &BiPartition, base: &QuadraticNumber, side: Side) -> Option<(Self, Point)> {
        let d = bp.s1().radicand();
        if !base.is_rational() && base.radicand() != d {
            return None;
        }
        let den = [bp.s1(), bp.s2(), base]
            .iter()
            .flat_map(|q| [q.rat().denom().clone(), q.surd().denom().clone()])
            .fold(BigInt::from(1), |acc, x| acc.lcm(&x));
        let s1 = scaled(bp.s1(), &den)?;
        let s2 = scaled(bp.s2(), &den)?;
        let t = scaled(base, &den)?;
        let gap = Point { a: s1.a - s2.a, b: s1.b - s2.b };
        Some((FastOrbit { d: d as i128, s1, s2, gap, side }, t))
    }

    fn sign(&self, p: Point) -> Option<Ordering> {
        let sa = p.a.cmp(&0);
        let sb = p.b.cmp(&0);
        if sb == Ordering::Equal || sa == sb {
            return Some(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Some(sb);
        }
        let a2 = p.a.checked_mul(p.a)?;
        let db2 = p.b.checked_mul(p.b)?.checked_mul(self.d)?;
        Some(match a2.cmp(&db2) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sa,
            Ordering::Less => sb,
        })
    }

    fn add(p: Point, q: Point) -> Option<Point> {
        let r = Point { a: p.a.checked_add(q.a)?, b: p.b.checked_add(q.b)? };
        (r.a.abs() < LIMIT && r.b.abs() < LIMIT).then_some(r)
    }

    fn sub(p: Point, q: Point) -> Option<Point> {
        Self::add(p, Point { a: -q.a, b: -q.b })
    }

    fn letter(&self, t: Point) -> Option<Letter> {
        let s = self.sign(t)?;
        let first = match self.side {
            Side::Right => s != Ordering::Less,
            Side::Left => s == Ordering::Greater,
        };
        Some(if first { Letter::A } else { Letter::B })
    }

    fn forward(&self, t: Point) -> Option<Point> {
        match self.letter(t)? {
            Letter::A => Self::sub(t, self.s2),
            Letter::B => Self::add(t, self.s1),
        }
    }

    fn backward(&self, t: Point) -> Option<Point> {
        let s = self.sign(Self::sub(t, self.gap)?)?;
        let from_first = match self.side {
            Side::Right => s == Ordering::Less,
            Side::Left => s != Ordering::Greater,
        };
        if from_first {
            Self::add(t, self.s2)
        } else {
            Self::sub(t, self.s1)
        }
    }

    /// Letters `c_lo..=c_hi` of the orbit of `base` (index 0).
    pub(crate) fn letters(&self, base: Point, lo: i64, hi: i64) -> Option<Vec<Letter>> {
        let mut below = Vec::with_capacity(lo.unsigned_abs() as usize);
        let mut t = base;
        for _ in lo..0 {
            t = self.backward(t)?;
            below.push(self.letter(t)?);
        }
        below.reverse();
        let mut t = base;
        for i in 0..=hi {
            if i > 0 {
                t = self.forward(t)?;
            }
            below.push(self.letter(t)?);
        }
        Some(below)
    }
}
