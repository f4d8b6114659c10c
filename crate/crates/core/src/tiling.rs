//! Intersection tilings of vertical lines with the periodic rectangle
//! tiling, encoded as words over `{a, b}`.
//!
//! A vertical line at horizontal position `t` in the spine `[−s2, s1)`
//! crosses a translate of `R1` (letter `a`) when `t ≥ 0` and of `R2`
//! (letter `b`) otherwise. Going up one tile moves `t` by the two-interval
//! exchange `t ↦ t − s2` on `[0, s1)` and `t ↦ t + s1` on `[−s2, 0)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use crate::exactnum::QuadraticNumber;
use crate::orbit::FastOrbit;
use crate::fan::{fan_bases, CuttingSequence, FanBasis};
use crate::spectral::BiPartition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TilingError {
    /// A spine coordinate outside `[−s2, s1)` (or `(−s2, s1]` on the left).
    OutOfSpine,
    /// The requested index range does not contain what the operation needs.
    RangeTooSmall { needed_lo: i64, needed_hi: i64 },
    /// `lo > hi`, or index 0 outside `lo..=hi`.
    InvalidRange { lo: i64, hi: i64 },
    /// A symmetry that must hold failed at the given index.
    NotPalindromic { index: i64 },
}

impl fmt::Display for TilingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingError::OutOfSpine => f.write_str("OutOfSpine"),
            TilingError::RangeTooSmall { needed_lo, needed_hi } => {
                write!(f, "RangeTooSmall: need indices {needed_lo}..={needed_hi}")
            }
            TilingError::InvalidRange { lo, hi } => write!(f, "InvalidRange: {lo}..={hi}"),
            TilingError::NotPalindromic { index } => write!(f, "NotPalindromic at index {index}"),
        }
    }
}

impl core::error::Error for TilingError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }
}

/// A finite word over `{a, b}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn repeat(letter: Letter, count: usize) -> Self {
        Word(alloc::vec![letter; count])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(parts: &[&[Letter]]) -> Self {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn reversed(&self) -> Self {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn swapped(&self) -> Self {
        Word(self.0.iter().map(|l| l.swap()).collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    /// `(#a, #b)`.
    pub fn content(&self) -> (usize, usize) {
        content(&self.0)
    }
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

pub fn content(w: &[Letter]) -> (usize, usize) {
    let a = w.iter().filter(|&&l| l == Letter::A).count();
    (a, w.len() - a)
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            fmt::Write::write_char(f, l.as_char())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWordError(pub String);

impl fmt::Display for ParseWordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid word: {}", self.0)
    }
}

impl core::error::Error for ParseWordError {}

impl FromStr for Word {
    type Err = ParseWordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Letter::from_char(c).ok_or_else(|| ParseWordError(s.into())))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Which side of a vertical-spine translate a line is considered to pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Orientation of the lock `[c0, c1]` of a principal word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ab,
    Ba,
}

impl Orientation {
    /// `[a,b]` for `det = 1`, `[b,a]` for `det = −1`.
    pub fn for_det(det: i8) -> Self {
        if det == 1 {
            Orientation::Ab
        } else {
            Orientation::Ba
        }
    }

    pub fn side(self) -> Side {
        match self {
            Orientation::Ab => Side::Right,
            Orientation::Ba => Side::Left,
        }
    }

    pub fn letters(self) -> [Letter; 2] {
        match self {
            Orientation::Ab => [Letter::A, Letter::B],
            Orientation::Ba => [Letter::B, Letter::A],
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ab => Orientation::Ba,
            Orientation::Ba => Orientation::Ab,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Ab => "ab",
            Orientation::Ba => "ba",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Forward,
    Backward,
}

/// Horizontal position of a vertical line within the spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinePosition {
    base: QuadraticNumber,
    side: Side,
}

impl LinePosition {
    pub fn new(base: QuadraticNumber, side: Side, bp: &BiPartition) -> Result<Self, TilingError> {
        check_in_spine(&base, bp, side)?;
        Ok(LinePosition { base, side })
    }

    pub fn base(&self) -> &QuadraticNumber {
        &self.base
    }

    pub fn side(&self) -> Side {
        self.side
    }
}

fn check_in_spine(t: &QuadraticNumber, bp: &BiPartition, side: Side) -> Result<(), TilingError> {
    let lo = (t + bp.s2()).sign();
    let hi = (t - bp.s1()).sign();
    let ok = match side {
        Side::Right => lo != Ordering::Less && hi == Ordering::Less,
        Side::Left => lo == Ordering::Greater && hi != Ordering::Greater,
    };
    if ok {
        Ok(())
    } else {
        Err(TilingError::OutOfSpine)
    }
}

/// Whether `t` belongs to the `a`-interval under the given side convention.
fn in_first_interval(t: &QuadraticNumber, side: Side) -> bool {
    match (side, t.sign()) {
        (Side::Right, s) => s != Ordering::Less,
        (Side::Left, s) => s == Ordering::Greater,
    }
}

/// One step of the interval exchange on the horizontal spine.
pub fn iet_step(
    t: &QuadraticNumber,
    bp: &BiPartition,
    side: Side,
    step: Step,
) -> Result<QuadraticNumber, TilingError> {
    check_in_spine(t, bp, side)?;
    Ok(iet_step_unchecked(t, bp, side, step))
}

fn iet_step_unchecked(t: &QuadraticNumber, bp: &BiPartition, side: Side, step: Step) -> QuadraticNumber {
    match step {
        Step::Forward => {
            if in_first_interval(t, side) {
                t - bp.s2()
            } else {
                t + bp.s1()
            }
        }
        Step::Backward => {
            // Images: [0, s1) ↦ [−s2, s1 − s2), [−s2, 0) ↦ [s1 − s2, s1).
            let shifted = &(t + bp.s2()) - bp.s1();
            let from_first = match side {
                Side::Right => shifted.is_negative(),
                Side::Left => !shifted.is_positive(),
            };
            if from_first {
                t + bp.s2()
            } else {
                t - bp.s1()
            }
        }
    }
}

pub fn letter_at(t: &QuadraticNumber, bp: &BiPartition, side: Side) -> Result<Letter, TilingError> {
    check_in_spine(t, bp, side)?;
    Ok(if in_first_interval(t, side) { Letter::A } else { Letter::B })
}

/// A finite window `lo..=hi` of a bi-infinite tiling. Index 0 is the tile
/// whose lower endpoint lies on the horizontal spine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingWord {
    lo: i64,
    letters: Word,
    /// Present for principal words: the lock occupies indices 0 and 1.
    lock: Option<Orientation>,
}

impl TilingWord {
    pub fn new(lo: i64, letters: Word, lock: Option<Orientation>) -> Self {
        TilingWord { lo, letters, lock }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.letters.len() as i64 - 1
    }

    pub fn lock(&self) -> Option<Orientation> {
        self.lock
    }

    pub fn letters(&self) -> &Word {
        &self.letters
    }

    pub fn get(&self, i: i64) -> Option<Letter> {
        if i < self.lo {
            return None;
        }
        self.letters.get((i - self.lo) as usize).copied()
    }

    /// Letters with indices `from..=to`; panics outside the range.
    pub fn slice(&self, from: i64, to: i64) -> &[Letter] {
        if to < from {
            return &[];
        }
        assert!(from >= self.lo && to <= self.hi(), "slice {from}..={to} outside word");
        &self.letters[(from - self.lo) as usize..=(to - self.lo) as usize]
    }

    pub fn covers(&self, from: i64, to: i64) -> bool {
        from >= self.lo && to <= self.hi()
    }

    /// Checks `c_{k−r} = c_{l+r}` for every `r ≥ 1` with both indices in
    /// range.
    pub fn check_symmetry(&self, k: i64, l: i64) -> Result<(), TilingError> {
        let mut r = 1;
        while k - r >= self.lo && l + r <= self.hi() {
            if self.get(k - r) != self.get(l + r) {
                return Err(TilingError::NotPalindromic { index: l + r });
            }
            r += 1;
        }
        Ok(())
    }
}

impl fmt::Display for TilingWord {
    /// Letters in index order; the lock of a principal word is bracketed
    /// (`aba[ab]aba`), otherwise the tile at index 0 is parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = self.lo;
        let hi = self.hi();
        while i <= hi {
            let c = self.get(i).unwrap().as_char();
            match self.lock {
                Some(_) if i == 0 && hi >= 1 => {
                    let d = self.get(1).unwrap().as_char();
                    write!(f, "[{c}{d}]")?;
                    i += 2;
                    continue;
                }
                None if i == 0 => write!(f, "({c})")?,
                _ => fmt::Write::write_char(f, c)?,
            }
            i += 1;
        }
        Ok(())
    }
}

impl FromStr for TilingWord {
    type Err = ParseWordError;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWordError(s.into());
        let mut letters = Vec::new();
        let mut origin = None;
        let mut lock = None;
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '[' | '(' => {
                    if origin.is_some() {
                        return Err(err());
                    }
                    origin = Some(letters.len());
                    let close = if c == '[' { ']' } else { ')' };
                    let mut inner = Vec::new();
                    for d in chars.by_ref() {
                        if d == close {
                            break;
                        }
                        inner.push(Letter::from_char(d).ok_or_else(err)?);
                    }
                    match (c, inner.as_slice()) {
                        ('[', [Letter::A, Letter::B]) => lock = Some(Orientation::Ab),
                        ('[', [Letter::B, Letter::A]) => lock = Some(Orientation::Ba),
                        ('(', [_]) => {}
                        _ => return Err(err()),
                    }
                    letters.extend(inner);
                }
                c => letters.push(Letter::from_char(c).ok_or_else(err)?),
            }
        }
        let origin = origin.ok_or_else(err)?;
        Ok(TilingWord { lo: -(origin as i64), letters: Word(letters), lock })
    }
}

fn check_range(lo: i64, hi: i64) -> Result<(), TilingError> {
    if lo > 0 || hi < 0 {
        return Err(TilingError::InvalidRange { lo, hi });
    }
    Ok(())
}

/// Word of the vertical line through `pos`, indices `lo..=hi`.
pub fn intersection_word(
    pos: &LinePosition,
    bp: &BiPartition,
    lo: i64,
    hi: i64,
) -> Result<TilingWord, TilingError> {
    check_range(lo, hi)?;
    check_in_spine(&pos.base, bp, pos.side)?;
    if let Some((orbit, base)) = FastOrbit::new(bp, &pos.base, pos.side) {
        if let Some(letters) = orbit.letters(base, lo, hi) {
            return Ok(TilingWord { lo, letters: Word(letters), lock: None });
        }
    }
    Ok(exact_intersection_word(pos, bp, lo, hi))
}

/// [`intersection_word`] evaluated entirely in big-number arithmetic.
fn exact_intersection_word(pos: &LinePosition, bp: &BiPartition, lo: i64, hi: i64) -> TilingWord {
    let letter = |t: &QuadraticNumber| if in_first_interval(t, pos.side) { Letter::A } else { Letter::B };

    let mut below = Vec::with_capacity((-lo) as usize);
    let mut t = pos.base.clone();
    for _ in lo..0 {
        t = iet_step_unchecked(&t, bp, pos.side, Step::Backward);
        below.push(letter(&t));
    }
    below.reverse();

    let mut t = pos.base.clone();
    let mut letters = below;
    letters.reserve(hi as usize + 1);
    for i in 0..=hi {
        if i > 0 {
            t = iet_step_unchecked(&t, bp, pos.side, Step::Forward);
        }
        letters.push(letter(&t));
    }
    TilingWord { lo, letters: Word(letters), lock: None }
}

/// The principal word: the line through the origin, with the lock at
/// indices 0 and 1 read in the given orientation.
pub fn principal_word(
    bp: &BiPartition,
    orientation: Orientation,
    lo: i64,
    hi: i64,
) -> Result<TilingWord, TilingError> {
    let pos = LinePosition { base: QuadraticNumber::zero(), side: orientation.side() };
    let mut w = intersection_word(&pos, bp, lo, hi)?;
    w.lock = Some(orientation);
    Ok(w)
}

/// The three palindromes attached to a fan basis with `p = k + m` and
/// `r = l + n`: `c_2..c_{p−1}`, `c_2..c_{r−1}` and `c_2..c_{p+r−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanPalindromes {
    pub p: u64,
    pub r: u64,
    pub p_word: Word,
    pub r_word: Word,
    pub pr_word: Word,
}

/// Extracts the palindromes of a fan basis from the `[a,b]` principal word
/// and checks them, together with
/// `P_{p+r} = P_p·ba·P_r = P_r·ab·P_p` when `p, r ≥ 2`.
pub fn fan_palindromes(bp: &BiPartition, basis: &FanBasis) -> Result<FanPalindromes, TilingError> {
    let (p, r) = (basis.p(), basis.r());
    let hi = (p + r) as i64 - 1;
    let word = principal_word(bp, Orientation::Ab, 0, hi.max(1))?;
    let slice = |n: u64| Word(word.slice(2, n as i64 - 1).to_vec());
    let out = FanPalindromes { p, r, p_word: slice(p), r_word: slice(r), pr_word: slice(p + r) };
    for w in [&out.p_word, &out.r_word, &out.pr_word] {
        if !w.is_palindrome() {
            return Err(TilingError::NotPalindromic { index: w.len() as i64 + 1 });
        }
    }
    if p >= 2 && r >= 2 {
        let ba = [Letter::B, Letter::A];
        let ab = [Letter::A, Letter::B];
        let first = Word::concat(&[&out.p_word, &ba, &out.r_word]);
        let second = Word::concat(&[&out.r_word, &ab, &out.p_word]);
        if first != out.pr_word || second != out.pr_word {
            return Err(TilingError::NotPalindromic { index: p as i64 });
        }
    }
    Ok(out)
}

/// One step of the palindromic recursion along the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionStep {
    /// The vector `e_i + f_i` created at this step.
    pub vector: (u64, u64),
    /// Its palindrome, of length `k + m − 2`.
    pub palindrome: Word,
    /// Palindromes of `e_i` and `f_i`, absent for `e0` and `f0`.
    pub e_palindrome: Option<Word>,
    pub f_palindrome: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalRecursion {
    pub steps: Vec<RecursionStep>,
    /// For a terminated (rational) cutting sequence, one period
    /// `c_0..c_{N−1}` of the `[a,b]` principal tiling.
    pub period: Option<Word>,
}

impl PrincipalRecursion {
    /// The longest palindrome built, i.e. `c_2..c_{q−1}` for the last
    /// created vector of coordinate sum `q`.
    pub fn prefix(&self) -> Word {
        self.steps.last().map(|s| s.palindrome.clone()).unwrap_or_default()
    }
}

fn recursion_palindrome(v: (u64, u64), pe: Option<&Word>, pf: Option<&Word>) -> Word {
    match (v, pe, pf) {
        ((1, m), _, _) => Word::repeat(Letter::B, m as usize - 1),
        ((k, 1), _, _) => Word::repeat(Letter::A, k as usize - 1),
        (_, Some(pe), Some(pf)) => Word::concat(&[pe, &[Letter::B, Letter::A], pf]),
        _ => unreachable!("vector with both coordinates >= 2 built from e0 or f0"),
    }
}

/// Builds the principal tiling from a cutting sequence alone, with each new
/// palindrome obtained from the previous two by `P_{e+f} = P_e·ba·P_f`.
/// Single-letter palindromes (a coordinate equal to 1) are forced by their
/// content.
pub fn build_principal_by_recursion(cs: &CuttingSequence) -> PrincipalRecursion {
    let bases = fan_bases(cs);
    let mut steps = Vec::with_capacity(bases.len());
    let mut pe: Option<Word> = None;
    let mut pf: Option<Word> = None;
    let mut push = |b: &FanBasis, pe: &Option<Word>, pf: &Option<Word>| {
        let v = (b.k + b.l, b.m + b.n);
        let palindrome = recursion_palindrome(v, pe.as_ref(), pf.as_ref());
        steps.push(RecursionStep {
            vector: v,
            palindrome: palindrome.clone(),
            e_palindrome: pe.clone(),
            f_palindrome: pf.clone(),
        });
        palindrome
    };
    for (b, &bit) in bases.iter().zip(&cs.bits) {
        let new = push(b, &pe, &pf);
        if bit == 1 {
            pe = Some(new);
        } else {
            pf = Some(new);
        }
    }
    let mut period = None;
    if cs.terminated {
        let last = bases.last().expect("fan_bases is never empty");
        let p = push(last, &pe, &pf);
        period = Some(Word::concat(&[&Orientation::Ab.letters(), &p]));
    }
    PrincipalRecursion { steps, period }
}

/// Window of a principal word: `n` consecutive letters starting at
/// `offset ≤ 0`, containing the lock.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub offset: i64,
    pub letters: Word,
}

impl Window {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// All `n − 1` windows of length `n ≥ 2`, offsets `0, −1, …, 2 − n`.
pub fn windows_of(word: &TilingWord, n: usize) -> Result<Vec<Window>, TilingError> {
    let n = n as i64;
    if n < 2 {
        return Err(TilingError::InvalidRange { lo: 2 - n, hi: n - 1 });
    }
    if !word.covers(2 - n, n - 1) {
        return Err(TilingError::RangeTooSmall { needed_lo: 2 - n, needed_hi: n - 1 });
    }
    Ok((2 - n..=0)
        .rev()
        .map(|j| Window { offset: j, letters: Word(word.slice(j, j + n - 1).to_vec()) })
        .collect())
}

/// `(#a, #b)` of a window.
pub fn window_content(w: &Window) -> (usize, usize) {
    w.letters.content()
}

/// The three non-principal lines with a palindromic tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Center {
    /// Through the center of the horizontal spine, `x = (s1 − s2)/2`.
    Js,
    /// Through the center of `R1`, `x = s1/2`.
    R1,
    /// Through the center of `R2`, `x = −s2/2`.
    R2,
}

/// Symmetry `c_{k−r} = c_{l+r}` for all `r ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlmostPalindrome {
    pub k: i64,
    pub l: i64,
    /// Index of the tile whose interior contains the rotation center, if
    /// the center is not a tile endpoint.
    pub center_tile: Option<i64>,
}

pub fn center_line(bp: &BiPartition, which: Center) -> QuadraticNumber {
    let half = QuadraticNumber::from_ratio(1, 2);
    match which {
        Center::Js => &(bp.s1() - bp.s2()) * &half,
        Center::R1 => bp.s1() * &half,
        Center::R2 => -(bp.s2() * &half),
    }
}

/// Word of a line through a rotation center, with its verified symmetry.
pub fn center_word(
    bp: &BiPartition,
    which: Center,
    lo: i64,
    hi: i64,
) -> Result<(TilingWord, AlmostPalindrome), TilingError> {
    let pos = LinePosition::new(center_line(bp, which), Side::Right, bp)?;
    let word = intersection_word(&pos, bp, lo, hi)?;
    let sym = match which {
        // The center of J^s sits on the spine, between c_{−1} and c_0.
        Center::Js => AlmostPalindrome { k: 0, l: -1, center_tile: None },
        Center::R1 | Center::R2 => AlmostPalindrome { k: 0, l: 0, center_tile: Some(0) },
    };
    word.check_symmetry(sym.k, sym.l)?;
    Ok((word, sym))
}

/// The principal word with its symmetry `c_{−r} = c_{1+r}`.
pub fn principal_symmetry() -> AlmostPalindrome {
    AlmostPalindrome { k: 0, l: 1, center_tile: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::cutting_sequence_of;
    use crate::spectral::AutomorphismMatrix;

    fn bp(k: i64, l: i64, m: i64, n: i64) -> BiPartition {
        BiPartition::from_matrix(&AutomorphismMatrix::from_entries(k, l, m, n).unwrap())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn integer_orbit_matches_exact_orbit() {
        for (k, l, m, n) in [(2, 1, 1, 1), (1, 1, 1, 0), (5, 2, 7, 3), (1, 2, 2, 3), (0, 1, 1, 3)] {
            let g = bp(k, l, m, n);
            let bases = [
                QuadraticNumber::zero(),
                g.lattice_x(1, 1),
                g.lattice_x(-2, -1),
                QuadraticNumber::from_ratio(-1, 7),
                -g.s2(),
            ];
            for base in bases {
                for side in [Side::Left, Side::Right] {
                    let Ok(pos) = LinePosition::new(base.clone(), side, &g) else { continue };
                    let fast = intersection_word(&pos, &g, -300, 300).unwrap();
                    assert_eq!(fast, exact_intersection_word(&pos, &g, -300, 300));
                }
            }
        }
    }

    #[test]
    fn exchange_steps() {
        let g = bp(2, 1, 1, 1);
        let zero = QuadraticNumber::zero();
        let fwd = iet_step(&zero, &g, Side::Right, Step::Forward).unwrap();
        assert_eq!(fwd, -g.s2());
        assert_eq!(iet_step(g.s2(), &g, Side::Right, Step::Forward).unwrap(), zero);
        assert_eq!(&iet_step(&zero, &g, Side::Right, Step::Backward).unwrap(), g.s2());
        assert_eq!(iet_step(g.s1(), &g, Side::Right, Step::Forward), Err(TilingError::OutOfSpine));
        assert!(iet_step(g.s1(), &g, Side::Left, Step::Forward).is_ok());
    }

    #[test]
    fn letters_by_side() {
        let g = bp(2, 1, 1, 1);
        let zero = QuadraticNumber::zero();
        assert_eq!(letter_at(&zero, &g, Side::Right), Ok(Letter::A));
        assert_eq!(letter_at(&zero, &g, Side::Left), Ok(Letter::B));
        let inner = -(g.s2() * &QuadraticNumber::from_ratio(1, 3));
        assert_eq!(letter_at(&inner, &g, Side::Right), Ok(Letter::B));
        assert_eq!(letter_at(&inner, &g, Side::Left), Ok(Letter::B));
    }

    #[test]
    fn golden_principal_words() {
        let g = bp(2, 1, 1, 1);
        let right = principal_word(&g, Orientation::Ab, -3, 4).unwrap();
        assert_eq!(right.letters(), &w("abaababa"));
        assert_eq!(right.to_string(), "aba[ab]aba");
        let left = principal_word(&g, Orientation::Ba, -3, 4).unwrap();
        assert_eq!((left.get(0), left.get(1)), (Some(Letter::B), Some(Letter::A)));
        assert_eq!(left.to_string(), "aba[ba]aba");
        let fib = bp(1, 1, 1, 0);
        let fw = principal_word(&fib, Orientation::Ba, 0, 2).unwrap();
        assert_eq!(fw.letters(), &w("baa"));
    }

    #[test]
    fn tiling_word_text_round_trip() {
        let g = bp(2, 1, 1, 1);
        let pw = principal_word(&g, Orientation::Ab, -5, 7).unwrap();
        assert_eq!(pw.to_string().parse::<TilingWord>().unwrap(), pw);
        let (cw, _) = center_word(&g, Center::R1, -4, 6).unwrap();
        let text = cw.to_string();
        assert!(text.contains('('));
        assert_eq!(text.parse::<TilingWord>().unwrap(), cw);
        assert!("ab[aa]b".parse::<TilingWord>().is_err());
        assert!("abab".parse::<TilingWord>().is_err());
    }

    #[test]
    fn range_errors() {
        let g = bp(2, 1, 1, 1);
        assert_eq!(
            principal_word(&g, Orientation::Ab, 1, 4),
            Err(TilingError::InvalidRange { lo: 1, hi: 4 })
        );
        let pw = principal_word(&g, Orientation::Ab, -1, 2).unwrap();
        assert_eq!(
            windows_of(&pw, 5),
            Err(TilingError::RangeTooSmall { needed_lo: -3, needed_hi: 4 })
        );
    }

    #[test]
    fn golden_fan_palindromes() {
        let g = bp(2, 1, 1, 1);
        let basis = FanBasis { index: 2, k: 2, l: 1, m: 1, n: 1 };
        let t = fan_palindromes(&g, &basis).unwrap();
        assert_eq!((t.p, t.r), (3, 2));
        assert_eq!(t.p_word, w("a"));
        assert_eq!(t.r_word, w(""));
        assert_eq!(t.pr_word, w("aba"));
    }

    #[test]
    fn golden_recursion_matches_orbit() {
        let g = bp(2, 1, 1, 1);
        let rec = build_principal_by_recursion(&cutting_sequence_of(&g, 8));
        let pals: Vec<String> =
            rec.steps.iter().map(|s| alloc::string::ToString::to_string(&s.palindrome)).collect();
        assert_eq!(pals[..4], ["", "a", "aba", "abaaba"]);
        let prefix = rec.prefix();
        let pw = principal_word(&g, Orientation::Ab, 0, prefix.len() as i64 + 1).unwrap();
        assert_eq!(pw.slice(2, pw.hi()), &prefix[..]);
    }

    #[test]
    fn rational_period() {
        use crate::fan::{cutting_sequence, Direction};
        let two = QuadraticNumber::from_integer(2);
        let three = QuadraticNumber::from_integer(3);
        let cs = cutting_sequence(&Direction::new(two, three).unwrap(), 20);
        let rec = build_principal_by_recursion(&cs);
        assert_eq!(rec.period, Some(w("abbab")));
        let sides = BiPartition::from_sides(
            QuadraticNumber::from_ratio(2, 5),
            QuadraticNumber::from_ratio(3, 5),
            QuadraticNumber::from_ratio(2, 3),
            QuadraticNumber::from_ratio(1, 3),
        )
        .unwrap();
        let pw = principal_word(&sides, Orientation::Ab, 0, 14).unwrap();
        assert_eq!(pw.letters(), &w("abbababbababbab"));
    }

    #[test]
    fn windows_and_contents() {
        let g = bp(2, 1, 1, 1);
        let pw = principal_word(&g, Orientation::Ab, -10, 10).unwrap();
        let ws = windows_of(&pw, 5).unwrap();
        assert_eq!(ws.iter().map(|w| w.offset).collect::<Vec<_>>(), [0, -1, -2, -3]);
        assert!(ws.iter().all(|w| window_content(w) == (3, 2)));
        assert!(windows_of(&pw, 3).unwrap().iter().all(|w| window_content(w) == (2, 1)));
        let lock = windows_of(&pw, 2).unwrap();
        assert_eq!(lock.len(), 1);
        assert_eq!(lock[0].letters, w("ab"));
    }

    #[test]
    fn centers_are_palindromic() {
        let g = bp(2, 1, 1, 1);
        for which in [Center::Js, Center::R1, Center::R2] {
            let (word, sym) = center_word(&g, which, -200, 200).unwrap();
            assert!(word.check_symmetry(sym.k, sym.l).is_ok());
        }
        let (r1, _) = center_word(&g, Center::R1, 0, 0).unwrap();
        assert_eq!(r1.get(0), Some(Letter::A));
        let (r2, _) = center_word(&g, Center::R2, 0, 0).unwrap();
        assert_eq!(r2.get(0), Some(Letter::B));
        let pw = principal_word(&g, Orientation::Ab, -200, 200).unwrap();
        let s = principal_symmetry();
        assert!(pw.check_symmetry(s.k, s.l).is_ok());
        // An off-center line is not palindromic about its origin tile.
        let pos = LinePosition::new(QuadraticNumber::from_ratio(1, 7), Side::Right, &g).unwrap();
        let off = intersection_word(&pos, &g, -50, 50).unwrap();
        assert!(off.check_symmetry(0, 0).is_err());
    }
}
