//! Exact geometry of the generating Markov partitions: strip diagrams and
//! the torus-wrapped segments `F⁻¹(J^s)` and `F(J^u)`.
//!
//! Coordinates are Cartesian with the fundamental domain `R1 ∪ R2`, where
//! `R1 = [0, s1] × [0, u1]` and `R2 = [−s2, 0] × [0, u2]`.

use alloc::vec::Vec;
use core::fmt;

use crate::berg::SubstitutionRule;
use crate::exactnum::QuadraticNumber;
use crate::spectral::{AutomorphismMatrix, BiPartition, EigenData};
use crate::tiling::{iet_step, letter_at, Letter, Orientation, Step, TilingError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RenderError {
    /// The rule's letter counts are not the entries of `F`.
    CountMismatch,
    /// Strip heights do not add up to the rectangle height.
    HeightMismatch,
    /// The rule carries no window offset, so no fixed point is attached.
    MissingOffset,
    /// The offset lies outside `2 − σ..=0`.
    OffsetOutOfRange { offset: i64 },
    Tiling(TilingError),
}

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenderError::CountMismatch => f.write_str("CountMismatch: strip counts differ from F"),
            RenderError::HeightMismatch => f.write_str("HeightMismatch: strip heights do not sum"),
            RenderError::MissingOffset => f.write_str("MissingOffset: rule has no window offset"),
            RenderError::OffsetOutOfRange { offset } => write!(f, "OffsetOutOfRange: {offset}"),
            RenderError::Tiling(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RenderError {}

impl From<TilingError> for RenderError {
    fn from(e: TilingError) -> Self {
        RenderError::Tiling(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub letter: Letter,
    pub bottom: QuadraticNumber,
    pub height: QuadraticNumber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripDiagram {
    /// Bottom to top.
    pub r1: Vec<Strip>,
    pub r2: Vec<Strip>,
    pub rule: SubstitutionRule,
}

impl StripDiagram {
    pub fn counts(&self) -> [[usize; 2]; 2] {
        let count = |strips: &[Strip], l| strips.iter().filter(|s| s.letter == l).count();
        [
            [count(&self.r1, Letter::A), count(&self.r2, Letter::A)],
            [count(&self.r1, Letter::B), count(&self.r2, Letter::B)],
        ]
    }
}

fn stack(word: &[Letter], e: &EigenData) -> (Vec<Strip>, QuadraticNumber) {
    let a = &e.u1 / &e.lambda;
    let b = &e.u2 / &e.lambda;
    let mut bottom = QuadraticNumber::zero();
    let strips = word
        .iter()
        .map(|&letter| {
            let height = if letter == Letter::A { a.clone() } else { b.clone() };
            let s = Strip { letter, bottom: bottom.clone(), height: height.clone() };
            bottom = &bottom + &height;
            s
        })
        .collect();
    (strips, bottom)
}

/// Splits `R1` by the letters of `σ(a)` and `R2` by those of `σ(b)`; an
/// `a`-strip has height `u1/λ`, a `b`-strip `u2/λ`.
pub fn strip_diagram(f: &AutomorphismMatrix, rule: &SubstitutionRule) -> Result<StripDiagram, RenderError> {
    let e = f.eigen_data();
    let (r1, h1) = stack(&rule.image_a, &e);
    let (r2, h2) = stack(&rule.image_b, &e);
    let d = StripDiagram { r1, r2, rule: rule.clone() };
    let [[k, l], [m, n]] = f.entries();
    if d.counts() != [[k as usize, l as usize], [m as usize, n as usize]] {
        return Err(RenderError::CountMismatch);
    }
    if h1 != e.u1 || h2 != e.u2 {
        return Err(RenderError::HeightMismatch);
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rect {
    R1,
    R2,
}

/// A piece of a wrapped segment, in fundamental-domain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub rect: Rect,
    pub from: (QuadraticNumber, QuadraticNumber),
    pub to: (QuadraticNumber, QuadraticNumber),
}

impl Segment {
    /// Length of an axis-parallel segment.
    pub fn length(&self) -> QuadraticNumber {
        let dx = (&self.to.0 - &self.from.0).abs();
        let dy = (&self.to.1 - &self.from.1).abs();
        &dx + &dy
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionGeometry {
    pub eigen: EigenData,
    pub offset: i64,
    /// Height on `J^u` of the point fixed by the affine lift of `F`.
    pub fixed_height: QuadraticNumber,
    /// Pieces of `F⁻¹(J^s)`, walking right then left from `J^u`.
    pub pre: Vec<Segment>,
    /// Pieces of `F(J^u)`, bottom to top.
    pub post: Vec<Segment>,
}

impl PartitionGeometry {
    pub fn pre_length(&self) -> QuadraticNumber {
        total(&self.pre)
    }

    pub fn post_length(&self) -> QuadraticNumber {
        total(&self.post)
    }

    /// Heights of the horizontal pieces inside the given rectangle, sorted.
    pub fn cut_heights(&self, rect: Rect) -> Vec<QuadraticNumber> {
        let mut hs: Vec<_> = self.pre.iter().filter(|s| s.rect == rect).map(|s| s.from.1.clone()).collect();
        hs.sort_by(|a, b| a.partial_cmp(b).expect("shared radicand"));
        hs.dedup();
        hs
    }
}

fn total(segs: &[Segment]) -> QuadraticNumber {
    segs.iter().fold(QuadraticNumber::zero(), |acc, s| &acc + &s.length())
}

fn min(a: QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    if a.partial_cmp(b) == Some(core::cmp::Ordering::Greater) {
        b.clone()
    } else {
        a
    }
}

/// Walks a horizontal line starting on `J^u` at circle height `y ∈ [0, 1)`
/// for `length` to the right.
fn walk_right(bp: &BiPartition, mut y: QuadraticNumber, mut length: QuadraticNumber, out: &mut Vec<Segment>) {
    let zero = QuadraticNumber::zero();
    while length.is_positive() {
        if (&y - bp.u1()).is_negative() {
            let run = min(bp.s1().clone(), &length);
            out.push(Segment { rect: Rect::R1, from: (zero.clone(), y.clone()), to: (run.clone(), y.clone()) });
            length = &length - &run;
            y = &y + bp.u2();
        } else {
            let h = &y - bp.u1();
            let run = min(bp.s2().clone(), &length);
            let x0 = -bp.s2();
            let x1 = &x0 + &run;
            out.push(Segment { rect: Rect::R2, from: (x0, h.clone()), to: (x1, h) });
            length = &length - &run;
            y = &y - bp.u1();
        }
    }
}

fn walk_left(bp: &BiPartition, mut y: QuadraticNumber, mut length: QuadraticNumber, out: &mut Vec<Segment>) {
    let zero = QuadraticNumber::zero();
    while length.is_positive() {
        if (&y - bp.u2()).is_negative() {
            let run = min(bp.s2().clone(), &length);
            out.push(Segment { rect: Rect::R2, from: (zero.clone(), y.clone()), to: (-&run, y.clone()) });
            length = &length - &run;
            y = &y + bp.u1();
        } else {
            let h = &y - bp.u2();
            let run = min(bp.s1().clone(), &length);
            let x0 = bp.s1().clone();
            let x1 = &x0 - &run;
            out.push(Segment { rect: Rect::R1, from: (x0, h.clone()), to: (x1, h) });
            length = &length - &run;
            y = &y - bp.u2();
        }
    }
}

/// Exact partition geometry for the window rule at `rule.offset()`. The
/// affine lift of `F` fixes the point of `J^u` at height
/// `−Y/(λ − 1)`, where `Y ≤ 0` is the bottom of tile `c_offset`.
pub fn partition_geometry(
    f: &AutomorphismMatrix,
    rule: &SubstitutionRule,
) -> Result<PartitionGeometry, RenderError> {
    let offset = rule.offset().ok_or(RenderError::MissingOffset)?;
    let sigma = f.sigma() as i64;
    if offset > 0 || offset < 2 - sigma {
        return Err(RenderError::OffsetOutOfRange { offset });
    }
    let e = f.eigen_data();
    let bp = BiPartition::from_eigen(&e);
    let side = Orientation::for_det(f.det()).side();
    let one = QuadraticNumber::one();
    let rect = |t: &QuadraticNumber| -> Result<Rect, RenderError> {
        Ok(match letter_at(t, &bp, side)? {
            Letter::A => Rect::R1,
            Letter::B => Rect::R2,
        })
    };
    let height = |r: Rect| if r == Rect::R1 { bp.u1().clone() } else { bp.u2().clone() };

    // Bottom of tile c_offset and its spine position.
    let mut t = QuadraticNumber::zero();
    let mut bottom = QuadraticNumber::zero();
    for _ in offset..0 {
        t = iet_step(&t, &bp, side, Step::Backward)?;
        bottom = &bottom - &height(rect(&t)?);
    }
    let lm1 = &e.lambda - &one;
    let y0 = -(&bottom / &lm1);

    // F⁻¹(J^s) crosses J^u at height y0·(λ − 1)/λ.
    let y1 = &(&y0 * &lm1) / &e.lambda;
    let (right, left) = if f.det() == 1 {
        (&e.lambda * bp.s1(), &e.lambda * bp.s2())
    } else {
        (&e.lambda * bp.s2(), &e.lambda * bp.s1())
    };
    let mut pre = Vec::new();
    walk_right(&bp, y1.clone(), right, &mut pre);
    walk_left(&bp, y1, left, &mut pre);

    // F(J^u) climbs the tiles c_offset, c_offset+1, … for total height λ.
    let mut post = Vec::new();
    let mut remaining = e.lambda.clone();
    while remaining.is_positive() {
        let r = rect(&t)?;
        let h = min(height(r), &remaining);
        let zero = QuadraticNumber::zero();
        post.push(Segment { rect: r, from: (t.clone(), zero), to: (t.clone(), h.clone()) });
        remaining = &remaining - &h;
        t = iet_step(&t, &bp, side, Step::Forward)?;
    }

    Ok(PartitionGeometry { eigen: e, offset, fixed_height: y0, pre, post })
}
