//! Substitution engine: images, incidence matrices, language preservation,
//! fixed-word alignment and the triple-palindrome brute force.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

pub use crate::berg::reverse_rule;
use crate::berg::{berg_substitutions, BergError, SubstitutionRule};
use crate::spectral::{AutomorphismMatrix, BiPartition};
use crate::tiling::{principal_word, Letter, Orientation, TilingError, Word};

/// Minimum length of the principal-word window used as the factor reference.
pub const LANGUAGE_WINDOW_MIN: usize = 10_000;
/// The reference window is at least this many times `L·σ` letters long.
pub const LANGUAGE_WINDOW_FACTOR: usize = 10;
/// Largest word length the brute-force oracle will enumerate (`2^26` words).
pub const ROBINSON_MAX_LENGTH: u64 = 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstError {
    /// No shift aligns the substituted word with the principal word.
    NotFound { radius: i64 },
    /// Several shifts match; the compared range is too short.
    Ambiguous { shifts: Vec<i64> },
    /// A window rule produced a factor outside the Sturmian language.
    LanguageViolation { offset: i64 },
    DuplicateRule { offset: i64 },
    CountMismatch { expected: u64, found: u64 },
    /// `p < 2` or `r < 2`.
    InvalidLength { p: u64, r: u64 },
    SearchTooLarge { length: u64 },
    Berg(BergError),
    Tiling(TilingError),
}

impl fmt::Display for SubstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstError::NotFound { radius } => write!(f, "NotFound: no alignment within shift {radius}"),
            SubstError::Ambiguous { shifts } => write!(f, "Ambiguous: shifts {shifts:?} all align"),
            SubstError::LanguageViolation { offset } => write!(f, "LanguageViolation at offset {offset}"),
            SubstError::DuplicateRule { offset } => write!(f, "DuplicateRule at offset {offset}"),
            SubstError::CountMismatch { expected, found } => {
                write!(f, "CountMismatch: expected {expected}, found {found}")
            }
            SubstError::InvalidLength { p, r } => write!(f, "InvalidLength: p = {p}, r = {r} (need >= 2)"),
            SubstError::SearchTooLarge { length } => {
                write!(f, "SearchTooLarge: 2^{length} words exceeds the brute-force limit")
            }
            SubstError::Berg(e) => write!(f, "{e}"),
            SubstError::Tiling(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SubstError {}

impl From<BergError> for SubstError {
    fn from(e: BergError) -> Self {
        SubstError::Berg(e)
    }
}

impl From<TilingError> for SubstError {
    fn from(e: TilingError) -> Self {
        SubstError::Tiling(e)
    }
}

pub fn apply_substitution(rule: &SubstitutionRule, word: &[Letter]) -> Word {
    let mut out = Word::new();
    for &l in word {
        out.extend_from(rule.image(l));
    }
    out
}

/// `σⁿ(w)`.
pub fn iterate_substitution(rule: &SubstitutionRule, word: &[Letter], n: usize) -> Word {
    let mut w = Word::from_letters(word.to_vec());
    for _ in 0..n {
        w = apply_substitution(rule, &w);
    }
    w
}

/// Entry `[x][y]` counts the letter `x` in the image of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix(pub [[u64; 2]; 2]);

pub fn incidence_matrix(rule: &SubstitutionRule) -> IncidenceMatrix {
    let (aa, ba) = rule.image_a.content();
    let (ab, bb) = rule.image_b.content();
    IncidenceMatrix([[aa as u64, ab as u64], [ba as u64, bb as u64]])
}

enum FactorSet {
    Packed(BTreeSet<u128>),
    Slices(BTreeSet<Vec<Letter>>),
}

impl FactorSet {
    fn of(word: &[Letter], len: usize) -> Self {
        if len <= 128 {
            FactorSet::Packed(packed_factors(word, len).collect())
        } else {
            FactorSet::Slices(word.windows(len).map(|w| w.to_vec()).collect())
        }
    }

    fn contains_all_of(&self, word: &[Letter], len: usize) -> bool {
        match self {
            FactorSet::Packed(set) => {
                let distinct: BTreeSet<u128> = packed_factors(word, len).collect();
                distinct.iter().all(|f| set.contains(f))
            }
            FactorSet::Slices(set) => word.windows(len).all(|w| set.contains(w)),
        }
    }
}

/// Length-`len` factors of `word` packed as bit strings (`len ≤ 128`).
fn packed_factors(word: &[Letter], len: usize) -> impl Iterator<Item = u128> + '_ {
    let mask = if len == 128 { u128::MAX } else { (1u128 << len) - 1 };
    let mut key = 0u128;
    word.iter().enumerate().filter_map(move |(i, &l)| {
        key = ((key << 1) | l as u128) & mask;
        (i + 1 >= len).then_some(key)
    })
}

/// Number of distinct factors of length `n`.
pub fn factor_complexity(word: &[Letter], n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    if n <= 128 {
        packed_factors(word, n).collect::<BTreeSet<_>>().len()
    } else {
        word.windows(n).collect::<BTreeSet<_>>().len()
    }
}

/// Length-`L` factors of a long window of the principal word of `F`.
pub struct SturmianLanguage {
    factor_len: usize,
    window: Word,
    factors: FactorSet,
}

impl SturmianLanguage {
    pub fn window_length(f: &AutomorphismMatrix, factor_len: usize) -> usize {
        (LANGUAGE_WINDOW_FACTOR * factor_len * f.sigma() as usize).max(LANGUAGE_WINDOW_MIN)
    }

    pub fn new(f: &AutomorphismMatrix, factor_len: usize) -> Result<Self, TilingError> {
        let w = Self::window_length(f, factor_len) as i64;
        let bp = BiPartition::from_matrix(f);
        let word = principal_word(&bp, Orientation::for_det(f.det()), -w / 2, w - w / 2 - 1)?;
        let window = word.letters().clone();
        let factors = FactorSet::of(&window, factor_len.max(1));
        Ok(SturmianLanguage { factor_len: factor_len.max(1), window, factors })
    }

    pub fn factor_len(&self) -> usize {
        self.factor_len
    }

    /// Whether every factor of length `≤ L` of the iterated image `σⁿ(a)`
    /// occurs in the reference window. Iteration stops once the image
    /// reaches the window length or stops growing.
    pub fn admits(&self, rule: &SubstitutionRule) -> bool {
        let target = self.window.len();
        let mut w = Word::from_letters(alloc::vec![Letter::A]);
        while w.len() < target {
            let next = apply_substitution(rule, &w);
            if next.len() <= w.len() {
                w = next;
                break;
            }
            w = next;
        }
        let len = self.factor_len.min(w.len());
        if len == 0 {
            return true;
        }
        if len == self.factor_len {
            self.factors.contains_all_of(&w, len)
        } else {
            FactorSet::of(&self.window, len).contains_all_of(&w, len)
        }
    }
}

/// One-off form of [`SturmianLanguage::admits`].
pub fn language_preservation_check(
    rule: &SubstitutionRule,
    f: &AutomorphismMatrix,
    factor_len: usize,
) -> Result<bool, TilingError> {
    Ok(SturmianLanguage::new(f, factor_len)?.admits(rule))
}

/// Finds `k` with `σ(c)_i = c_{i+k}` over the image of `c_lo..c_hi`, where
/// the image of `c_0` starts at position 0 and `c` is the principal word of
/// `F` with its prescribed lock. Target positions inside the lock (0 and 1)
/// are not compared, since the two principal words differ only there. The
/// range must be long enough to rule out all but one shift.
pub fn fixed_word_alignment(
    rule: &SubstitutionRule,
    f: &AutomorphismMatrix,
    lo: i64,
    hi: i64,
) -> Result<i64, SubstError> {
    let bp = BiPartition::from_matrix(f);
    let lock = Orientation::for_det(f.det());
    let source = principal_word(&bp, lock, lo, hi)?;
    let before: usize = source.slice(lo, -1).iter().map(|&l| rule.image(l).len()).sum();
    let image = apply_substitution(rule, source.letters());
    let radius = f.sigma() as i64 + 1;
    let first = -(before as i64);
    let last = first + image.len() as i64 - 1;
    let target = principal_word(&bp, lock, (first - radius).min(0), (last + radius).max(1))?;
    let aligned = |k: i64| {
        image.iter().enumerate().all(|(i, &letter)| {
            let pos = first + i as i64 + k;
            pos == 0 || pos == 1 || target.get(pos) == Some(letter)
        })
    };
    let found: Vec<i64> = (-radius..=radius).filter(|&k| aligned(k)).collect();
    match found[..] {
        [k] => Ok(k),
        [] => Err(SubstError::NotFound { radius }),
        _ => Err(SubstError::Ambiguous { shifts: found }),
    }
}

/// `σ − 1`, after checking that the window rules are pairwise distinct and
/// all preserve the language at factor length `factor_len`.
pub fn seebold_count(f: &AutomorphismMatrix, factor_len: usize) -> Result<u64, SubstError> {
    let expected = f.sigma() - 1;
    let rules = berg_substitutions(f)?;
    let lang = SturmianLanguage::new(f, factor_len)?;
    let mut seen = BTreeSet::new();
    for rule in &rules {
        let offset = rule.offset().unwrap_or(0);
        if !seen.insert((rule.image_a.clone(), rule.image_b.clone())) {
            return Err(SubstError::DuplicateRule { offset });
        }
        if !lang.admits(rule) {
            return Err(SubstError::LanguageViolation { offset });
        }
    }
    let found = seen.len() as u64;
    if found != expected {
        return Err(SubstError::CountMismatch { expected, found });
    }
    Ok(expected)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobinsonOutcome {
    pub p: u64,
    pub r: u64,
    /// Sorted lexicographically (`a < b`).
    pub words: Vec<Word>,
    /// When false the uniqueness statement does not apply and `words` is
    /// reported as enumerated.
    pub coprime: bool,
}

fn mask_is_palindrome(mask: u32, len: u32) -> bool {
    if len <= 1 {
        return true;
    }
    let prefix = mask & ((1u32 << len) - 1);
    prefix.reverse_bits() >> (32 - len) == prefix
}

/// Exhaustively enumerates the words of length `p + r − 2` containing both
/// letters that are palindromes with palindromic prefixes of lengths `p − 2`
/// and `r − 2`.
pub fn robinson_oracle(p: u64, r: u64) -> Result<RobinsonOutcome, SubstError> {
    if p < 2 || r < 2 {
        return Err(SubstError::InvalidLength { p, r });
    }
    let n = p + r - 2;
    if n > ROBINSON_MAX_LENGTH {
        return Err(SubstError::SearchTooLarge { length: n });
    }
    let n = n as u32;
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut words: Vec<Word> = (0..=full)
        .filter(|&mask| mask != 0 && mask != full)
        .filter(|&mask| {
            mask_is_palindrome(mask, n)
                && mask_is_palindrome(mask, p as u32 - 2)
                && mask_is_palindrome(mask, r as u32 - 2)
        })
        .map(|mask| {
            Word::from_letters((0..n).map(|i| if mask >> i & 1 == 1 { Letter::B } else { Letter::A }).collect())
        })
        .collect();
    words.sort();
    Ok(RobinsonOutcome { p, r, words, coprime: p.gcd(&r) == 1 })
}
