//! Cutting sequences, the fan of bases of the lattice and Klein's sails.
//!
//! A fan basis is stored by its integer matrix `[[k, l], [m, n]]` with
//! `e_i = k·e0 + m·f0` and `f_i = l·e0 + n·f0` (column convention).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::exactnum::QuadraticNumber;
use crate::spectral::{AutomorphismMatrix, BiPartition};

/// Default search depth of [`locate_in_fan`].
pub const DEFAULT_LOCATE_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanError {
    ZeroDirection,
    /// A direction component was negative or zero.
    NonPositiveDirection,
    DepthExceeded { max_depth: usize },
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::ZeroDirection => f.write_str("ZeroDirection"),
            FanError::NonPositiveDirection => f.write_str("NonPositiveDirection"),
            FanError::DepthExceeded { max_depth } => {
                write!(f, "DepthExceeded: not found within depth {max_depth}")
            }
        }
    }
}

impl core::error::Error for FanError {}

/// Direction `(s1, s2)` of the unstable line in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    s1: QuadraticNumber,
    s2: QuadraticNumber,
}

impl Direction {
    pub fn new(s1: QuadraticNumber, s2: QuadraticNumber) -> Result<Self, FanError> {
        if s1.is_zero() && s2.is_zero() {
            return Err(FanError::ZeroDirection);
        }
        if !s1.is_positive() || !s2.is_positive() {
            return Err(FanError::NonPositiveDirection);
        }
        Ok(Direction { s1, s2 })
    }

    pub fn of(bp: &BiPartition) -> Self {
        Direction { s1: bp.s1().clone(), s2: bp.s2().clone() }
    }

    /// Cartesian x-coordinate of `ξ·e0 + η·f0`, up to the positive factor
    /// that does not affect its sign.
    fn x_sign(&self, xi: u64, eta: u64) -> Ordering {
        let xi = QuadraticNumber::from_integer(xi as i64);
        let eta = QuadraticNumber::from_integer(eta as i64);
        (&(&self.s2 * &xi) - &(&self.s1 * &eta)).sign()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuttingSequence {
    pub bits: Vec<u8>,
    /// Set when `e_N + f_N` turned out vertical (rational slope).
    pub terminated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FanBasis {
    pub index: usize,
    pub k: u64,
    pub l: u64,
    pub m: u64,
    pub n: u64,
}

impl FanBasis {
    pub fn identity() -> Self {
        FanBasis { index: 0, k: 1, l: 0, m: 0, n: 1 }
    }

    /// Lattice coordinates of `e_i`.
    pub fn e(&self) -> (u64, u64) {
        (self.k, self.m)
    }

    /// Lattice coordinates of `f_i`.
    pub fn f(&self) -> (u64, u64) {
        (self.l, self.n)
    }

    /// `k + m`, the number of tiles spanned by `e_i`.
    pub fn p(&self) -> u64 {
        self.k + self.m
    }

    /// `l + n`, the number of tiles spanned by `f_i`.
    pub fn r(&self) -> u64 {
        self.l + self.n
    }

    pub fn det(&self) -> i128 {
        self.k as i128 * self.n as i128 - self.l as i128 * self.m as i128
    }

    pub fn matrix(&self) -> [[u64; 2]; 2] {
        [[self.k, self.l], [self.m, self.n]]
    }

    /// Applies one cutting bit; `None` on `u64` overflow.
    pub fn step(&self, bit: u8) -> Option<FanBasis> {
        let index = self.index + 1;
        if bit == 1 {
            Some(FanBasis {
                index,
                k: self.k.checked_add(self.l)?,
                m: self.m.checked_add(self.n)?,
                ..*self
            })
        } else {
            Some(FanBasis {
                index,
                l: self.k.checked_add(self.l)?,
                n: self.m.checked_add(self.n)?,
                ..*self
            })
        }
    }
}

/// Runs the fan recursion for at most `depth` steps: bit `i` is 1 when
/// `e_i + f_i` lies right of the vertical axis, 0 when left, and the
/// sequence terminates when it is on the axis.
pub fn cutting_sequence(dir: &Direction, depth: usize) -> CuttingSequence {
    let mut basis = FanBasis::identity();
    let mut bits = Vec::with_capacity(depth);
    for _ in 0..depth {
        let (Some(xi), Some(eta)) = (basis.k.checked_add(basis.l), basis.m.checked_add(basis.n))
        else {
            break;
        };
        let bit = match dir.x_sign(xi, eta) {
            Ordering::Greater => 1,
            Ordering::Less => 0,
            Ordering::Equal => return CuttingSequence { bits, terminated: true },
        };
        match basis.step(bit) {
            Some(next) => basis = next,
            None => break,
        }
        bits.push(bit);
    }
    CuttingSequence { bits, terminated: false }
}

pub fn cutting_sequence_of(bp: &BiPartition, depth: usize) -> CuttingSequence {
    cutting_sequence(&Direction::of(bp), depth)
}

/// Bases `0..=bits.len()`, starting from the identity. Stops early if an
/// entry would overflow `u64`.
pub fn fan_bases(cs: &CuttingSequence) -> Vec<FanBasis> {
    let mut out = Vec::with_capacity(cs.bits.len() + 1);
    let mut basis = FanBasis::identity();
    out.push(basis);
    for &bit in &cs.bits {
        match basis.step(bit) {
            Some(next) => {
                basis = next;
                out.push(basis);
            }
            None => break,
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrant {
    First,
    Second,
}

/// Distinct `e_i` (first quadrant) or `f_i` (second quadrant) vectors, in
/// order of creation.
pub fn sail_vectors(bases: &[FanBasis], quadrant: Quadrant) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for b in bases {
        let v = match quadrant {
            Quadrant::First => b.e(),
            Quadrant::Second => b.f(),
        };
        if out.last() != Some(&v) {
            out.push(v);
        }
    }
    out
}

/// The vectors produced by each step of the recursion, `e_{i+1}` or
/// `f_{i+1}`, in order; both sails merged.
pub fn created_vectors(bases: &[FanBasis]) -> Vec<(u64, u64)> {
    bases
        .windows(2)
        .map(|w| if w[0].e() != w[1].e() { w[1].e() } else { w[1].f() })
        .collect()
}

/// Finds the fan index whose matrix equals `F` (or `F²` when `det F = −1`,
/// since then `F·e0` leaves the first quadrant).
pub fn locate_in_fan(f: &AutomorphismMatrix, max_depth: usize) -> Result<usize, FanError> {
    let target = if f.det() == 1 { f.entries() } else { f.square() };
    let bp = BiPartition::from_matrix(f);
    let cs = cutting_sequence_of(&bp, max_depth);
    fan_bases(&cs)
        .iter()
        .find(|b| b.matrix() == target)
        .map(|b| b.index)
        .ok_or(FanError::DepthExceeded { max_depth })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> BiPartition {
        BiPartition::from_matrix(&AutomorphismMatrix::from_entries(2, 1, 1, 1).unwrap())
    }

    #[test]
    fn golden_bits_alternate() {
        let cs = cutting_sequence_of(&golden(), 6);
        assert_eq!(cs.bits, [0, 1, 0, 1, 0, 1]);
        assert!(!cs.terminated);
    }

    #[test]
    fn worked_example_vectors() {
        let cs = CuttingSequence { bits: alloc::vec![1, 1, 0, 1, 1, 1, 0, 0, 1], terminated: false };
        let bases = fan_bases(&cs);
        let created = created_vectors(&bases);
        assert_eq!(
            created,
            [(1, 1), (1, 2), (1, 3), (2, 5), (3, 8), (4, 11), (5, 14), (9, 25), (13, 36)]
        );
        assert!(bases.iter().all(|b| b.det() == 1));
    }

    #[test]
    fn empty_bits_give_identity() {
        let cs = CuttingSequence { bits: Vec::new(), terminated: false };
        let bases = fan_bases(&cs);
        assert_eq!(bases, [FanBasis::identity()]);
        assert_eq!(sail_vectors(&bases, Quadrant::First), [(1, 0)]);
        assert_eq!(sail_vectors(&bases, Quadrant::Second), [(0, 1)]);
    }

    #[test]
    fn golden_sails_are_fibonacci() {
        let bases = fan_bases(&cutting_sequence_of(&golden(), 10));
        let first = sail_vectors(&bases, Quadrant::First);
        assert_eq!(first, [(1, 0), (2, 1), (5, 3), (13, 8), (34, 21), (89, 55)]);
        let second = sail_vectors(&bases, Quadrant::Second);
        assert_eq!(second, [(0, 1), (1, 1), (3, 2), (8, 5), (21, 13), (55, 34)]);
    }

    #[test]
    fn rational_direction_terminates() {
        let dir = Direction::new(QuadraticNumber::from_integer(1), QuadraticNumber::from_integer(1))
            .unwrap();
        let cs = cutting_sequence(&dir, 10);
        assert!(cs.terminated);
        assert!(cs.bits.is_empty());

        let dir = Direction::new(QuadraticNumber::from_integer(2), QuadraticNumber::from_integer(3))
            .unwrap();
        let cs = cutting_sequence(&dir, 10);
        assert_eq!(cs.bits, [1, 0]);
        assert!(cs.terminated);
        let last = *fan_bases(&cs).last().unwrap();
        assert_eq!((last.k + last.l, last.m + last.n), (2, 3));
    }

    #[test]
    fn direction_errors() {
        let z = QuadraticNumber::zero();
        assert_eq!(Direction::new(z.clone(), z.clone()), Err(FanError::ZeroDirection));
        assert_eq!(
            Direction::new(z, QuadraticNumber::one()),
            Err(FanError::NonPositiveDirection)
        );
    }

    #[test]
    fn locate() {
        let g = AutomorphismMatrix::from_entries(2, 1, 1, 1).unwrap();
        assert_eq!(locate_in_fan(&g, DEFAULT_LOCATE_DEPTH), Ok(2));
        let fib = AutomorphismMatrix::from_entries(1, 1, 1, 0).unwrap();
        assert_eq!(locate_in_fan(&fib, DEFAULT_LOCATE_DEPTH), Ok(2));
        let f = AutomorphismMatrix::from_entries(5, 2, 7, 3).unwrap();
        assert!(locate_in_fan(&f, DEFAULT_LOCATE_DEPTH).is_ok());
        assert_eq!(locate_in_fan(&f, 1), Err(FanError::DepthExceeded { max_depth: 1 }));
    }
}
