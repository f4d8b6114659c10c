//! Input validation, exact Perron data and the bi-partition geometry.

use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{QuadraticNumber, Rational};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    NegativeEntry,
    /// `|det| ≠ 1`.
    NotUnimodular { det: i128 },
    /// Discriminant `trace² − 4·det` is not positive, or is a perfect square.
    NotHyperbolic { discriminant: i128 },
}

impl MatrixError {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixError::NegativeEntry => "NegativeEntry",
            MatrixError::NotUnimodular { .. } => "NotUnimodular",
            MatrixError::NotHyperbolic { .. } => "NotHyperbolic",
        }
    }
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NegativeEntry => f.write_str("NegativeEntry: all entries must be >= 0"),
            MatrixError::NotUnimodular { det } => write!(f, "NotUnimodular: det = {det}"),
            MatrixError::NotHyperbolic { discriminant } => {
                write!(f, "NotHyperbolic: discriminant = {discriminant}")
            }
        }
    }
}

impl core::error::Error for MatrixError {}

/// A validated hyperbolic matrix `[[k, l], [m, n]]` in `GL(2, Z)` with
/// nonnegative entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AutomorphismMatrix {
    k: u64,
    l: u64,
    m: u64,
    n: u64,
    det: i8,
}

fn is_perfect_square(x: i128) -> bool {
    if x < 0 {
        return false;
    }
    let r = num_integer::Roots::sqrt(&x);
    r * r == x
}

impl AutomorphismMatrix {
    /// Validates a row-major matrix `[[k, l], [m, n]]`.
    pub fn new(raw: [[i64; 2]; 2]) -> Result<Self, MatrixError> {
        let [[k, l], [m, n]] = raw;
        if [k, l, m, n].iter().any(|&x| x < 0) {
            return Err(MatrixError::NegativeEntry);
        }
        let det = k as i128 * n as i128 - l as i128 * m as i128;
        if det.abs() != 1 {
            return Err(MatrixError::NotUnimodular { det });
        }
        let trace = k as i128 + n as i128;
        let discriminant = trace * trace - 4 * det;
        if discriminant <= 0 || is_perfect_square(discriminant) {
            return Err(MatrixError::NotHyperbolic { discriminant });
        }
        debug_assert!(l >= 1 && m >= 1);
        Ok(AutomorphismMatrix { k: k as u64, l: l as u64, m: m as u64, n: n as u64, det: det as i8 })
    }

    pub fn from_entries(k: i64, l: i64, m: i64, n: i64) -> Result<Self, MatrixError> {
        Self::new([[k, l], [m, n]])
    }

    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn l(&self) -> u64 {
        self.l
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn entries(&self) -> [[u64; 2]; 2] {
        [[self.k, self.l], [self.m, self.n]]
    }
    /// `+1` or `−1`.
    pub fn det(&self) -> i8 {
        self.det
    }
    pub fn trace(&self) -> u64 {
        self.k + self.n
    }
    /// Sum of all four entries.
    pub fn sigma(&self) -> u64 {
        self.k + self.l + self.m + self.n
    }
    /// Length of the image of `a`: `k + m`.
    pub fn p(&self) -> u64 {
        self.k + self.m
    }
    /// Length of the image of `b`: `l + n`.
    pub fn r(&self) -> u64 {
        self.l + self.n
    }
    pub fn discriminant(&self) -> u64 {
        let t = self.trace() as i128;
        (t * t - 4 * self.det as i128) as u64
    }

    pub fn square(&self) -> [[u64; 2]; 2] {
        let (k, l, m, n) = (self.k, self.l, self.m, self.n);
        [[k * k + l * m, k * l + l * n], [m * k + n * m, m * l + n * n]]
    }

    /// Computes the exact Perron data.
    pub fn eigen_data(&self) -> EigenData {
        EigenData::new(self)
    }
}

impl fmt::Display for AutomorphismMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.k, self.l, self.m, self.n)
    }
}

/// Every valid matrix with entry sum at most `max_sigma`, ordered by
/// `(sigma, k, l, m)`.
pub fn corpus(max_sigma: u64) -> Vec<AutomorphismMatrix> {
    let mut out = Vec::new();
    for s in 0..=max_sigma as i64 {
        for k in 0..=s {
            for l in 0..=s - k {
                for m in 0..=s - k - l {
                    let n = s - k - l - m;
                    if let Ok(f) = AutomorphismMatrix::from_entries(k, l, m, n) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

/// Exact spectral data of a validated matrix.
///
/// `s` is the column eigenvector and `u` the row eigenvector for the
/// unstable eigenvalue, both normalized to unit coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub lambda: QuadraticNumber,
    pub lambda_s: QuadraticNumber,
    pub s1: QuadraticNumber,
    pub s2: QuadraticNumber,
    pub u1: QuadraticNumber,
    pub u2: QuadraticNumber,
    pub d: QuadraticNumber,
}

fn int(n: u64) -> QuadraticNumber {
    QuadraticNumber::rational(Rational::from_integer(BigInt::from(n)))
}

impl EigenData {
    pub fn new(f: &AutomorphismMatrix) -> Self {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let lambda = QuadraticNumber::new(
            Rational::from_integer(BigInt::from(f.trace())) * &half,
            half,
            f.discriminant(),
        );
        let det = QuadraticNumber::from_integer(f.det() as i64);
        let lambda_s = &det / &lambda;
        let lk = &lambda - &int(f.k());
        // s ∝ (l, λ − k), u ∝ (m, λ − k); l, m ≥ 1 for hyperbolic input.
        let s_total = &int(f.l()) + &lk;
        let s1 = &int(f.l()) / &s_total;
        let s2 = &lk / &s_total;
        let u_total = &int(f.m()) + &lk;
        let u1 = &int(f.m()) / &u_total;
        let u2 = &lk / &u_total;
        let d = &(&s1 * &u1) + &(&s2 * &u2);
        EigenData { lambda, lambda_s, s1, s2, u1, u2, d }
    }

    /// Checks `F·s = λ·s`, `u·F = λ·u`, positivity and `λ·λ_s = det` exactly.
    pub fn satisfies_identities(&self, f: &AutomorphismMatrix) -> bool {
        let (k, l, m, n) = (int(f.k()), int(f.l()), int(f.m()), int(f.n()));
        let fs1 = &(&k * &self.s1) + &(&l * &self.s2);
        let fs2 = &(&m * &self.s1) + &(&n * &self.s2);
        let uf1 = &(&self.u1 * &k) + &(&self.u2 * &m);
        let uf2 = &(&self.u1 * &l) + &(&self.u2 * &n);
        fs1 == &self.lambda * &self.s1
            && fs2 == &self.lambda * &self.s2
            && uf1 == &self.lambda * &self.u1
            && uf2 == &self.lambda * &self.u2
            && [&self.s1, &self.s2, &self.u1, &self.u2].iter().all(|x| x.is_positive())
            && &self.lambda * &self.lambda_s == QuadraticNumber::from_integer(f.det() as i64)
            && &self.lambda + &self.lambda_s == int(f.trace())
    }

    /// `(x, y) ↦ (λ_s·x, λ·y)`: the automorphism in Cartesian coordinates.
    pub fn apply_cartesian(
        &self,
        x: &QuadraticNumber,
        y: &QuadraticNumber,
    ) -> (QuadraticNumber, QuadraticNumber) {
        (&self.lambda_s * x, &self.lambda * y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    /// A side length was not strictly positive.
    NonPositiveSide,
    SingularBasis,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::NonPositiveSide => f.write_str("NonPositiveSide"),
            GeometryError::SingularBasis => f.write_str("SingularBasis"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// The fundamental domain `R1 = [0, s1]×[0, u1]`, `R2 = [−s2, 0]×[0, u2]`
/// of the torus `R²/L`, where `L` is spanned by `e0 = (s2, u1)` and
/// `f0 = (−s1, u2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPartition {
    s1: QuadraticNumber,
    s2: QuadraticNumber,
    u1: QuadraticNumber,
    u2: QuadraticNumber,
    d: QuadraticNumber,
}

pub type Point = (QuadraticNumber, QuadraticNumber);

impl BiPartition {
    pub fn from_eigen(e: &EigenData) -> Self {
        BiPartition {
            s1: e.s1.clone(),
            s2: e.s2.clone(),
            u1: e.u1.clone(),
            u2: e.u2.clone(),
            d: e.d.clone(),
        }
    }

    pub fn from_matrix(f: &AutomorphismMatrix) -> Self {
        Self::from_eigen(&f.eigen_data())
    }

    /// Arbitrary positive side lengths, e.g. for rational slopes.
    pub fn from_sides(
        s1: QuadraticNumber,
        s2: QuadraticNumber,
        u1: QuadraticNumber,
        u2: QuadraticNumber,
    ) -> Result<Self, GeometryError> {
        if ![&s1, &s2, &u1, &u2].iter().all(|x| x.is_positive()) {
            return Err(GeometryError::NonPositiveSide);
        }
        let d = &(&s1 * &u1) + &(&s2 * &u2);
        Ok(BiPartition { s1, s2, u1, u2, d })
    }

    pub fn s1(&self) -> &QuadraticNumber {
        &self.s1
    }
    pub fn s2(&self) -> &QuadraticNumber {
        &self.s2
    }
    pub fn u1(&self) -> &QuadraticNumber {
        &self.u1
    }
    pub fn u2(&self) -> &QuadraticNumber {
        &self.u2
    }
    /// `s1·u1 + s2·u2`, the covolume of the lattice.
    pub fn d(&self) -> &QuadraticNumber {
        &self.d
    }

    pub fn e0(&self) -> Point {
        (self.s2.clone(), self.u1.clone())
    }

    pub fn f0(&self) -> Point {
        (-&self.s1, self.u2.clone())
    }

    /// Horizontal spine `[−s2, s1]`.
    pub fn spine_h(&self) -> (QuadraticNumber, QuadraticNumber) {
        (-&self.s2, self.s1.clone())
    }

    /// Vertical spine `[0, u1 + u2]`.
    pub fn spine_v(&self) -> (QuadraticNumber, QuadraticNumber) {
        (QuadraticNumber::zero(), &self.u1 + &self.u2)
    }

    /// `x = s2·ξ − s1·η`, `y = u1·ξ + u2·η`.
    pub fn lattice_to_cartesian(&self, xi: &QuadraticNumber, eta: &QuadraticNumber) -> Point {
        (&(&self.s2 * xi) - &(&self.s1 * eta), &(&self.u1 * xi) + &(&self.u2 * eta))
    }

    pub fn cartesian_to_lattice(
        &self,
        x: &QuadraticNumber,
        y: &QuadraticNumber,
    ) -> Result<Point, GeometryError> {
        if self.d.is_zero() {
            return Err(GeometryError::SingularBasis);
        }
        let xi = &(&(&self.u2 * x) + &(&self.s1 * y)) / &self.d;
        let eta = &(&(&self.s2 * y) - &(&self.u1 * x)) / &self.d;
        Ok((xi, eta))
    }

    /// Cartesian x-coordinate of the integer lattice point `ξ·e0 + η·f0`.
    pub fn lattice_x(&self, xi: i128, eta: i128) -> QuadraticNumber {
        let xi = QuadraticNumber::rational(Rational::from_integer(BigInt::from(xi)));
        let eta = QuadraticNumber::rational(Rational::from_integer(BigInt::from(eta)));
        &(&self.s2 * &xi) - &(&self.s1 * &eta)
    }
}
