//! Berg partitions as windows of the principal tiling.
//!
//! Moving the fixed point inside the vertical spine selects a window `W` of
//! `p + r` tiles with `F(J^u) = W`; splitting it into the first `p` and the
//! last `r` tiles gives the substitution `a ↦ w1, b ↦ w2`.

use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::QuadraticNumber;
use crate::spectral::{AutomorphismMatrix, EigenData};
use crate::tiling::{principal_word, windows_of, Letter, Orientation, TilingError, TilingWord, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BergError {
    /// A window split whose halves do not have the contents `(k, m)` and
    /// `(l, n)`.
    ContentMismatch { offset: i64 },
    /// The rules at `j` and `2 − σ − j` are not reversals of each other.
    ReversalMismatch { offset: i64 },
    /// A length identity failed.
    IdentityFailed { offset: i64 },
    CountMismatch { expected: u64, found: u64 },
    Tiling(TilingError),
}

impl fmt::Display for BergError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BergError::ContentMismatch { offset } => write!(f, "ContentMismatch at offset {offset}"),
            BergError::ReversalMismatch { offset } => write!(f, "ReversalMismatch at offset {offset}"),
            BergError::IdentityFailed { offset } => write!(f, "IdentityFailed at offset {offset}"),
            BergError::CountMismatch { expected, found } => {
                write!(f, "CountMismatch: expected {expected}, found {found}")
            }
            BergError::Tiling(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for BergError {}

impl From<TilingError> for BergError {
    fn from(e: TilingError) -> Self {
        BergError::Tiling(e)
    }
}

/// Where a rule came from: the window offset and the lock used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WindowSource {
    pub offset: i64,
    pub lock: Orientation,
}

/// A substitution `a ↦ image_a, b ↦ image_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionRule {
    pub image_a: Word,
    pub image_b: Word,
    pub source: Option<WindowSource>,
}

impl SubstitutionRule {
    pub fn new(image_a: Word, image_b: Word) -> Self {
        SubstitutionRule { image_a, image_b, source: None }
    }

    pub fn image(&self, l: Letter) -> &Word {
        match l {
            Letter::A => &self.image_a,
            Letter::B => &self.image_b,
        }
    }

    pub fn offset(&self) -> Option<i64> {
        self.source.map(|s| s.offset)
    }

    /// Same images, ignoring where the rule came from.
    pub fn same_images(&self, other: &SubstitutionRule) -> bool {
        self.image_a == other.image_a && self.image_b == other.image_b
    }
}

impl fmt::Display for SubstitutionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a -> {}, b -> {}", self.image_a, self.image_b)
    }
}

/// The principal word with the lock prescribed by `det F`, over the index
/// range needed by all windows of length `σ`.
pub fn berg_principal_word(f: &AutomorphismMatrix) -> Result<TilingWord, TilingError> {
    let sigma = f.sigma() as i64;
    let bp = crate::spectral::BiPartition::from_matrix(f);
    principal_word(&bp, Orientation::for_det(f.det()), 2 - sigma, sigma - 1)
}

/// All `σ − 1` window substitutions of `F`, ordered by offset descending.
pub fn berg_substitutions(f: &AutomorphismMatrix) -> Result<Vec<SubstitutionRule>, BergError> {
    let word = berg_principal_word(f)?;
    rules_from_word(f, &word)
}

pub(crate) fn rules_from_word(
    f: &AutomorphismMatrix,
    word: &TilingWord,
) -> Result<Vec<SubstitutionRule>, BergError> {
    let p = f.p() as usize;
    let lock = Orientation::for_det(f.det());
    let want_a = (f.k() as usize, f.m() as usize);
    let want_b = (f.l() as usize, f.n() as usize);
    windows_of(word, f.sigma() as usize)?
        .into_iter()
        .map(|w| {
            let (w1, w2) = w.letters.split_at(p);
            let rule = SubstitutionRule {
                image_a: Word::from_letters(w1.to_vec()),
                image_b: Word::from_letters(w2.to_vec()),
                source: Some(WindowSource { offset: w.offset, lock }),
            };
            if rule.image_a.content() != want_a || rule.image_b.content() != want_b {
                return Err(BergError::ContentMismatch { offset: w.offset });
            }
            Ok(rule)
        })
        .collect()
}

/// The offset-0 rule: `a ↦ lock·α′`, `b ↦ lock′·β′`, where `α′`, `β′` are
/// the palindromes `c_2..c_{p−1}` and `c_2..c_{r−1}` and `lock′` is `[b,a]`
/// for `det = 1` and `[a,b]` for `det = −1`.
pub fn standard_substitution(f: &AutomorphismMatrix) -> Result<SubstitutionRule, BergError> {
    let word = berg_principal_word(f)?;
    let rule = rules_from_word(f, &word)?.swap_remove(0);
    let (p, r) = (f.p() as i64, f.r() as i64);
    if p >= 2 && r >= 2 {
        let lock = Orientation::for_det(f.det());
        let alpha = word.slice(2, p - 1);
        let beta = word.slice(2, r - 1);
        let second = if f.det() == 1 { Orientation::Ba } else { Orientation::Ab };
        let a = Word::concat(&[&lock.letters(), alpha]);
        let b = Word::concat(&[&second.letters(), beta]);
        if a != rule.image_a || b != rule.image_b {
            return Err(BergError::IdentityFailed { offset: 0 });
        }
    }
    Ok(rule)
}

/// Letterwise reversal of both images. A window rule at offset `j` maps to
/// the window at `2 − σ − j`, with `σ` the total image length.
pub fn reverse_rule(rule: &SubstitutionRule) -> SubstitutionRule {
    let sigma = (rule.image_a.len() + rule.image_b.len()) as i64;
    SubstitutionRule {
        image_a: rule.image_a.reversed(),
        image_b: rule.image_b.reversed(),
        source: rule.source.map(|s| WindowSource { offset: 2 - sigma - s.offset, ..s }),
    }
}

/// Berg partitions whose fixed points sit symmetrically in `J^u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergClass {
    /// `(j, j′)` with `j′ = 2 − σ − j` and `j ≥ j′`.
    pub offsets: (i64, i64),
    pub representative: SubstitutionRule,
    pub self_symmetric: bool,
}

/// Pairs offset `j` with `2 − σ − j`, checking that paired rules are
/// reversals of each other.
pub fn equivalence_classes(rules: &[SubstitutionRule]) -> Result<Vec<BergClass>, BergError> {
    let sigma = rules.len() as i64 + 1;
    let by_offset = |j: i64| rules.iter().find(|r| r.offset() == Some(j));
    let mut out = Vec::new();
    for rule in rules {
        let j = rule.offset().ok_or(BergError::ReversalMismatch { offset: 0 })?;
        let partner = 2 - sigma - j;
        if partner > j {
            continue;
        }
        let other = by_offset(partner).ok_or(BergError::ReversalMismatch { offset: j })?;
        if !reverse_rule(rule).same_images(other) {
            return Err(BergError::ReversalMismatch { offset: j });
        }
        out.push(BergClass { offsets: (j, partner), representative: rule.clone(), self_symmetric: j == partner });
    }
    Ok(out)
}

/// `⌊σ/2⌋`, checked against the enumerated classes.
pub fn count_berg(f: &AutomorphismMatrix) -> Result<u64, BergError> {
    let expected = f.sigma() / 2;
    let found = equivalence_classes(&berg_substitutions(f)?)?.len() as u64;
    if found != expected {
        return Err(BergError::CountMismatch { expected, found });
    }
    Ok(expected)
}

/// Count of Berg partitions for the automorphism given by `−F`; equal to
/// that of `F` through the rotation by π about the centers of the
/// bi-partition.
pub fn negative_automorphism_count(f: &AutomorphismMatrix) -> Result<u64, BergError> {
    count_berg(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthReport {
    /// `#a(w1)·u1 + #b(w1)·u2`, equal to `λ·u1`.
    pub image_a_length: QuadraticNumber,
    /// `#a(w2)·u1 + #b(w2)·u2`, equal to `λ·u2`.
    pub image_b_length: QuadraticNumber,
}

/// Checks that `F(α1)` and `F(β2)` tile exactly onto the two halves of the
/// window.
pub fn verify_berg_lengths(e: &EigenData, rule: &SubstitutionRule) -> Result<LengthReport, BergError> {
    let len = |w: &Word| {
        let (a, b) = w.content();
        &(&QuadraticNumber::from_integer(a as i64) * &e.u1)
            + &(&QuadraticNumber::from_integer(b as i64) * &e.u2)
    };
    let report = LengthReport { image_a_length: len(&rule.image_a), image_b_length: len(&rule.image_b) };
    if report.image_a_length != &e.lambda * &e.u1 || report.image_b_length != &e.lambda * &e.u2 {
        return Err(BergError::IdentityFailed { offset: rule.offset().unwrap_or(0) });
    }
    Ok(report)
}
