//! Command-line front end for `berg-core`.
//!
//! Every command builds a `serde_json::Value`; `--format text` prints the
//! same value flattened to aligned `key: value` lines. Exit codes: 0 on
//! success, 1 on invalid input, 2 when a verification fails.

pub mod svg;
pub mod verify;
pub mod wire;

use std::fmt::Display;
use std::path::PathBuf;

use berg_core::berg::{berg_substitutions, count_berg, equivalence_classes, standard_substitution, BergError};
use berg_core::exactnum::QuadraticNumber;
use berg_core::fan::{
    created_vectors, cutting_sequence_of, fan_bases, locate_in_fan, sail_vectors, Quadrant,
    DEFAULT_LOCATE_DEPTH,
};
use berg_core::spectral::{corpus, AutomorphismMatrix, BiPartition};
use berg_core::subst::{
    fixed_word_alignment, incidence_matrix, robinson_oracle, seebold_count, SturmianLanguage, SubstError,
};
use berg_core::tiling::{
    center_word, fan_palindromes, intersection_word, principal_symmetry, principal_word, Center, LinePosition,
    Orientation, Side, TilingError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::svg::{emit_partition_svg, Panel, SvgOptions};
use crate::verify::{verify_matrix, VerifyOptions, CHECK_NAMES};
use crate::wire::{matrix_json, Exact, RuleJson};

pub const DEFAULT_RANGE: i64 = 2000;
pub const DEFAULT_DEPTH: usize = 12;
pub const DEFAULT_FACTOR_LENGTH: usize = 20;
/// Decimal digits of the rounded values next to exact ones.
pub const JSON_PRECISION: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "berg", version, about = "Tilings, fans and window substitutions of hyperbolic toral automorphisms")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Matrix `[[k, l], [m, n]]` given row-major.
#[derive(Args, Debug, Clone, Copy)]
pub struct MatrixArgs {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub n: i64,
}

impl MatrixArgs {
    fn matrix(&self) -> Result<AutomorphismMatrix, Failure> {
        AutomorphismMatrix::from_entries(self.k, self.l, self.m, self.n).map_err(Failure::invalid)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LineChoice {
    /// Through the origin, with the lock at indices 0 and 1.
    Principal,
    /// Through the center of the horizontal spine.
    Js,
    /// Through the center of R1.
    R1,
    /// Through the center of R2.
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LockChoice {
    Ab,
    Ba,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideChoice {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigen data, bi-partition, Berg and substitution counts.
    #[command(allow_negative_numbers = true)]
    Analyze {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = DEFAULT_FACTOR_LENGTH)]
        length: usize,
    },
    /// Letters of a vertical line of the tiling.
    #[command(allow_negative_numbers = true)]
    Word {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_enum, default_value_t = LineChoice::Principal)]
        line: LineChoice,
        /// Exact abscissa `a+b*sqrt(D)` of an arbitrary line; overrides --line.
        #[arg(long)]
        base: Option<String>,
        #[arg(long, value_enum, default_value_t = SideChoice::Right)]
        side: SideChoice,
        /// Lock of the principal word; defaults to `ab` for det 1, `ba` for det −1.
        #[arg(long, value_enum)]
        lock: Option<LockChoice>,
        #[arg(long, default_value_t = -DEFAULT_RANGE)]
        lo: i64,
        #[arg(long, default_value_t = DEFAULT_RANGE)]
        hi: i64,
    },
    /// Cutting sequence, fan bases and sail of the unstable direction.
    #[command(allow_negative_numbers = true)]
    Fan {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_LOCATE_DEPTH)]
        locate_depth: usize,
    },
    /// Palindromes attached to the fan bases.
    #[command(allow_negative_numbers = true)]
    Palindromes {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Window substitutions and their reversal classes.
    #[command(allow_negative_numbers = true)]
    Berg {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Language and fixed-word checks of every window substitution.
    #[command(allow_negative_numbers = true)]
    Substitutions {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = DEFAULT_FACTOR_LENGTH)]
        length: usize,
    },
    /// Every word of length p + r − 2 over {a, b} that is a palindrome with
    /// palindromic prefixes of lengths p − 2 and r − 2.
    Robinson { p: u64, r: u64 },
    /// SVG of the Markov partitions of one window substitution.
    #[command(allow_negative_numbers = true)]
    Render {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = 0)]
        offset: i64,
        /// Output file; the SVG goes to standard output without it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "both")]
        panel: String,
        #[arg(long, default_value_t = svg::DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long, default_value_t = svg::DEFAULT_SIZE)]
        size: u32,
    },
    /// Runs every identity check on one matrix or on a whole corpus.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(num_args = 4, value_names = ["K", "L", "M", "N"], required_unless_present = "corpus")]
        matrix: Option<Vec<i64>>,
        /// Check every matrix with entry sum at most SIGMA.
        #[arg(long, value_name = "SIGMA", conflicts_with = "matrix")]
        corpus: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_RANGE)]
        range: i64,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_FACTOR_LENGTH)]
        length: usize,
    },
}

/// A failed command: exit code and message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn invalid(e: impl Display) -> Self {
        Failure { code: 1, message: e.to_string() }
    }

    pub fn failed(e: impl Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }

    /// The error name, e.g. `NotHyperbolic`.
    pub fn name(&self) -> &str {
        self.message.split(|c: char| c == ':' || c.is_whitespace()).next().unwrap_or("")
    }
}

fn from_tiling(e: TilingError) -> Failure {
    match e {
        TilingError::NotPalindromic { .. } => Failure::failed(e),
        _ => Failure::invalid(e),
    }
}

fn from_berg(e: BergError) -> Failure {
    match e {
        BergError::Tiling(t) => from_tiling(t),
        _ => Failure::failed(e),
    }
}

fn from_subst(e: SubstError) -> Failure {
    match e {
        SubstError::InvalidLength { .. } | SubstError::SearchTooLarge { .. } => Failure::invalid(e),
        SubstError::Tiling(t) => from_tiling(t),
        SubstError::Berg(b) => from_berg(b),
        _ => Failure::failed(e),
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (without the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("berg".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(Output::Raw(bytes)) => Outcome { code: 0, stdout: bytes, stderr: String::new() },
        Ok(Output::Value(v, code)) => Outcome { code, stdout: format_value(&v, cli.format), stderr: String::new() },
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

pub fn format_value(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")),
        Format::Text => flatten_text(v),
    }
}

/// `key.path: value` lines, keys padded to a common width.
pub fn flatten_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(map) if !map.is_empty() => {
                for (k, x) in map {
                    walk(&join(k), x, out);
                }
            }
            Value::Array(items) if !items.is_empty() && items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&join(&i.to_string()), x, out);
                }
            }
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar_text).collect();
                out.push((prefix.to_string(), parts.join(" ")));
            }
            _ => out.push((prefix.to_string(), scalar_text(v))),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, x) in rows {
        s.push_str(&format!("{k:<width$}  {x}\n"));
    }
    s
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(_) => "{}".into(),
        Value::Array(_) => "[]".into(),
        other => other.to_string(),
    }
}

enum Output {
    Value(Value, i32),
    Raw(String),
}

fn ok(v: Value) -> Result<Output, Failure> {
    Ok(Output::Value(v, 0))
}

fn exact(x: &QuadraticNumber) -> Value {
    serde_json::to_value(Exact::new(x, JSON_PRECISION)).expect("values serialize")
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Analyze { matrix, length } => analyze(&matrix.matrix()?, *length),
        Command::Word { matrix, line, base, side, lock, lo, hi } => {
            word(&matrix.matrix()?, *line, base.as_deref(), *side, *lock, *lo, *hi)
        }
        Command::Fan { matrix, depth, locate_depth } => fan(&matrix.matrix()?, *depth, *locate_depth),
        Command::Palindromes { matrix, depth } => palindromes(&matrix.matrix()?, *depth),
        Command::Berg { matrix } => berg(&matrix.matrix()?),
        Command::Substitutions { matrix, length } => substitutions(&matrix.matrix()?, *length),
        Command::Robinson { p, r } => {
            let o = robinson_oracle(*p, *r).map_err(from_subst)?;
            let words: Vec<String> = o.words.iter().map(|w| w.to_string()).collect();
            ok(json!({ "p": o.p, "r": o.r, "words": words, "coprime": o.coprime }))
        }
        Command::Render { matrix, offset, out, panel, precision, size } => {
            let f = matrix.matrix()?;
            let panel: Panel = panel.parse().map_err(Failure::invalid)?;
            render(&f, *offset, out.as_ref(), SvgOptions { panel, precision: *precision, size: *size })
        }
        Command::Verify { matrix, corpus: max_sigma, range, depth, length } => {
            let opt = VerifyOptions { range: *range, depth: *depth, length: *length };
            if *range < 1 || *depth < 1 || *length < 1 {
                return Err(Failure::invalid("InvalidOption: range, depth and length must be positive"));
            }
            match (matrix, max_sigma) {
                (Some(v), _) => {
                    let f = AutomorphismMatrix::from_entries(v[0], v[1], v[2], v[3]).map_err(Failure::invalid)?;
                    verify_one(&f, &opt)
                }
                (None, Some(s)) => verify_corpus(*s, &opt),
                (None, None) => Err(Failure::invalid("MissingMatrix: give K L M N or --corpus SIGMA")),
            }
        }
    }
}

fn analyze(f: &AutomorphismMatrix, length: usize) -> Result<Output, Failure> {
    let e = f.eigen_data();
    let bp = BiPartition::from_matrix(f);
    let classes = count_berg(f).map_err(from_berg)?;
    let substitutions = seebold_count(f, length).map_err(from_subst)?;
    let fan_index = locate_in_fan(f, DEFAULT_LOCATE_DEPTH).ok();
    ok(json!({
        "matrix": matrix_json(f),
        "det": f.det(),
        "trace": f.trace(),
        "discriminant": f.discriminant(),
        "sigma": f.sigma(),
        "p": f.p(),
        "r": f.r(),
        "lambda": exact(&e.lambda),
        "lambda_s": exact(&e.lambda_s),
        "s1": exact(&e.s1),
        "s2": exact(&e.s2),
        "u1": exact(&e.u1),
        "u2": exact(&e.u2),
        "d": exact(&e.d),
        "e0": [exact(&bp.e0().0), exact(&bp.e0().1)],
        "f0": [exact(&bp.f0().0), exact(&bp.f0().1)],
        "fan_index": fan_index,
        "berg_classes": classes,
        "substitutions": substitutions,
    }))
}

fn word(
    f: &AutomorphismMatrix,
    line: LineChoice,
    base: Option<&str>,
    side: SideChoice,
    lock: Option<LockChoice>,
    lo: i64,
    hi: i64,
) -> Result<Output, Failure> {
    let bp = BiPartition::from_matrix(f);
    if let Some(base) = base {
        let x: QuadraticNumber = base.parse().map_err(|e| Failure::invalid(format!("InvalidNumber: {e}")))?;
        let side = match side {
            SideChoice::Left => Side::Left,
            SideChoice::Right => Side::Right,
        };
        let pos = LinePosition::new(x.clone(), side, &bp).map_err(from_tiling)?;
        let w = intersection_word(&pos, &bp, lo, hi).map_err(from_tiling)?;
        return ok(json!({
            "matrix": matrix_json(f), "line": "base", "base": exact(&x),
            "lo": lo, "hi": hi, "lock": null, "symmetry": null, "word": w.to_string(),
        }));
    }
    let (w, sym, name) = match line {
        LineChoice::Principal => {
            let o = match lock {
                Some(LockChoice::Ab) => Orientation::Ab,
                Some(LockChoice::Ba) => Orientation::Ba,
                None => Orientation::for_det(f.det()),
            };
            (principal_word(&bp, o, lo, hi).map_err(from_tiling)?, principal_symmetry(), "principal")
        }
        LineChoice::Js | LineChoice::R1 | LineChoice::R2 => {
            let (which, name) = match line {
                LineChoice::Js => (Center::Js, "js"),
                LineChoice::R1 => (Center::R1, "r1"),
                _ => (Center::R2, "r2"),
            };
            let (w, sym) = center_word(&bp, which, lo, hi).map_err(from_tiling)?;
            (w, sym, name)
        }
    };
    ok(json!({
        "matrix": matrix_json(f), "line": name, "lo": lo, "hi": hi,
        "lock": w.lock().map(|o| o.as_str()),
        "symmetry": { "k": sym.k, "l": sym.l, "center_tile": sym.center_tile },
        "word": w.to_string(),
    }))
}

fn fan(f: &AutomorphismMatrix, depth: usize, locate_depth: usize) -> Result<Output, Failure> {
    let bp = BiPartition::from_matrix(f);
    let cs = cutting_sequence_of(&bp, depth);
    let bases = fan_bases(&cs);
    let list: Vec<Value> = bases
        .iter()
        .map(|b| json!({ "index": b.index, "matrix": b.matrix(), "p": b.p(), "r": b.r(), "det": b.det() }))
        .collect();
    let bits: String = cs.bits.iter().map(|b| char::from(b'0' + b)).collect();
    let located = locate_in_fan(f, locate_depth);
    ok(json!({
        "matrix": matrix_json(f),
        "depth": depth,
        "bits": bits,
        "terminated": cs.terminated,
        "bases": list,
        "sail_first": sail_vectors(&bases, Quadrant::First),
        "sail_second": sail_vectors(&bases, Quadrant::Second),
        "created": created_vectors(&bases),
        "fan_index": located.as_ref().ok(),
        "locate_error": located.err().map(|e| e.to_string()),
    }))
}

fn palindromes(f: &AutomorphismMatrix, depth: usize) -> Result<Output, Failure> {
    let bp = BiPartition::from_matrix(f);
    let bases = fan_bases(&cutting_sequence_of(&bp, depth));
    let mut levels = Vec::new();
    for b in bases.iter().filter(|b| b.p() >= 2 && b.r() >= 2) {
        let fp = fan_palindromes(&bp, b).map_err(from_tiling)?;
        levels.push(json!({
            "index": b.index, "p": fp.p, "r": fp.r,
            "p_word": fp.p_word.to_string(), "r_word": fp.r_word.to_string(), "pr_word": fp.pr_word.to_string(),
        }));
    }
    ok(json!({ "matrix": matrix_json(f), "depth": depth, "levels": levels }))
}

fn rule_json(r: &berg_core::berg::SubstitutionRule) -> Value {
    serde_json::to_value(RuleJson::from_rule(r)).expect("values serialize")
}

fn berg(f: &AutomorphismMatrix) -> Result<Output, Failure> {
    let rules = berg_substitutions(f).map_err(from_berg)?;
    let classes = equivalence_classes(&rules).map_err(from_berg)?;
    let standard = standard_substitution(f).map_err(from_berg)?;
    let class_list: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "offsets": [c.offsets.0, c.offsets.1],
                "self_symmetric": c.self_symmetric,
                "representative": rule_json(&c.representative),
            })
        })
        .collect();
    ok(json!({
        "matrix": matrix_json(f),
        "sigma": f.sigma(),
        "standard": rule_json(&standard),
        "rules": rules.iter().map(rule_json).collect::<Vec<_>>(),
        "classes": class_list,
        "berg_classes": classes.len(),
    }))
}

fn substitutions(f: &AutomorphismMatrix, length: usize) -> Result<Output, Failure> {
    let rules = berg_substitutions(f).map_err(from_berg)?;
    let language = SturmianLanguage::new(f, length).map_err(from_tiling)?;
    let reach = (10 * f.sigma() as i64).max(200);
    let mut list = Vec::new();
    let mut all_ok = true;
    for r in &rules {
        let preserved = language.admits(r);
        let shift = fixed_word_alignment(r, f, -reach, reach);
        all_ok &= preserved && shift.as_ref().ok() == r.offset().as_ref();
        list.push(json!({
            "rule": rule_json(r),
            "incidence": incidence_matrix(r).0,
            "language_preserved": preserved,
            "alignment": shift.as_ref().ok(),
            "alignment_error": shift.as_ref().err().map(|e| e.to_string()),
        }));
    }
    let count = seebold_count(f, length);
    let v = json!({
        "matrix": matrix_json(f),
        "length": length,
        "window_length": SturmianLanguage::window_length(f, length),
        "rules": list,
        "substitutions": count.as_ref().ok(),
        "count_error": count.as_ref().err().map(|e| e.to_string()),
    });
    Ok(Output::Value(v, if all_ok && count.is_ok() { 0 } else { 2 }))
}

fn render(f: &AutomorphismMatrix, offset: i64, out: Option<&PathBuf>, options: SvgOptions) -> Result<Output, Failure> {
    let rules = berg_substitutions(f).map_err(from_berg)?;
    let rule = rules
        .iter()
        .find(|r| r.offset() == Some(offset))
        .ok_or_else(|| Failure::invalid(format!("OffsetOutOfRange: {offset} (expected {}..=0)", 2 - f.sigma() as i64)))?;
    let doc = emit_partition_svg(f, rule, &options).map_err(|e| match e {
        svg::SvgError::UnsupportedOption(_) => Failure::invalid(e),
        svg::SvgError::Render(_) => Failure::failed(e),
    })?;
    match out {
        None => Ok(Output::Raw(doc.bytes)),
        Some(path) => {
            std::fs::write(path, &doc.bytes)
                .map_err(|e| Failure::invalid(format!("IoError: {}: {e}", path.display())))?;
            ok(json!({
                "matrix": matrix_json(f),
                "offset": offset,
                "rule": rule_json(rule),
                "panel": options.panel.as_str(),
                "precision": options.precision,
                "path": path.display().to_string(),
                "bytes": doc.bytes.len(),
            }))
        }
    }
}

fn verify_one(f: &AutomorphismMatrix, opt: &VerifyOptions) -> Result<Output, Failure> {
    let checks = verify_matrix(f, opt);
    let passed = checks.iter().all(|c| c.passed);
    let v = json!({ "matrix": matrix_json(f), "checks": checks, "passed": passed });
    Ok(Output::Value(v, if passed { 0 } else { 2 }))
}

fn verify_corpus(max_sigma: u64, opt: &VerifyOptions) -> Result<Output, Failure> {
    let mats = corpus(max_sigma);
    let mut passed = [0usize; CHECK_NAMES.len()];
    let mut failures = Vec::new();
    for f in &mats {
        for (i, c) in verify_matrix(f, opt).into_iter().enumerate() {
            if c.passed {
                passed[i] += 1;
            } else {
                failures.push(json!({ "matrix": matrix_json(f), "check": c.name, "detail": c.detail }));
            }
        }
    }
    let mut summary = Map::new();
    for (i, name) in CHECK_NAMES.iter().enumerate() {
        summary.insert((*name).into(), json!({ "passed": passed[i], "failed": mats.len() - passed[i] }));
    }
    let ok_all = failures.is_empty();
    let v = json!({
        "max_sigma": max_sigma,
        "matrices": mats.len(),
        "checks": summary,
        "failures": failures,
        "passed": ok_all,
    });
    Ok(Output::Value(v, if ok_all { 0 } else { 2 }))
}
