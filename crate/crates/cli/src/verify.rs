//! The `verify` suite: every checkable identity for one matrix.

use berg_core::berg::{
    berg_substitutions, count_berg, equivalence_classes, standard_substitution, verify_berg_lengths,
};
use berg_core::fan::{cutting_sequence_of, fan_bases, locate_in_fan, DEFAULT_LOCATE_DEPTH};
use berg_core::render::{partition_geometry, strip_diagram, Rect};
use berg_core::spectral::{AutomorphismMatrix, BiPartition};
use berg_core::subst::{fixed_word_alignment, incidence_matrix, seebold_count, IncidenceMatrix};
use berg_core::tiling::{
    build_principal_by_recursion, center_word, fan_palindromes, principal_word, window_content, windows_of,
    Center, Orientation,
};
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Word range `−range..=range` for the palindromic and center checks.
    pub range: i64,
    pub depth: usize,
    /// Factor length of the language check.
    pub length: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { range: 2000, depth: 12, length: 20 }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const CHECK_NAMES: [&str; 14] = [
    "eigen",
    "fan_locate",
    "palindromes",
    "windows",
    "palindromic_law",
    "recursion",
    "centers",
    "berg_classes",
    "seebold",
    "incidence",
    "reversal",
    "lengths",
    "strips",
    "alignment",
];

fn check(name: &'static str, result: Result<String, String>) -> CheckResult {
    match result {
        Ok(detail) => CheckResult { name, passed: true, detail },
        Err(detail) => CheckResult { name, passed: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn verify_matrix(f: &AutomorphismMatrix, opt: &VerifyOptions) -> Vec<CheckResult> {
    let bp = BiPartition::from_matrix(f);
    let lock = Orientation::for_det(f.det());
    let sigma = f.sigma() as i64;
    let rules = berg_substitutions(f);
    let rules_or_err = || rules.clone().map_err(|e| e.to_string());
    let mut out = Vec::with_capacity(CHECK_NAMES.len());

    out.push(check("eigen", {
        let e = f.eigen_data();
        ensure(e.satisfies_identities(f), || "eigen identities fail".into()).map(|_| format!("lambda = {}", e.lambda))
    }));

    out.push(check(
        "fan_locate",
        locate_in_fan(f, DEFAULT_LOCATE_DEPTH).map(|i| format!("index {i}")).map_err(|e| e.to_string()),
    ));

    out.push(check("palindromes", (|| {
        let bases = fan_bases(&cutting_sequence_of(&bp, opt.depth));
        let mut n = 0;
        for b in bases.iter().filter(|b| b.p() >= 2 && b.r() >= 2) {
            fan_palindromes(&bp, b).map_err(|e| format!("basis {}: {e}", b.index))?;
            n += 1;
        }
        Ok(format!("{n} fan bases"))
    })()));

    out.push(check("windows", (|| {
        let (p, r) = (f.p() as usize, f.r() as usize);
        let word = principal_word(&bp, lock, 2 - sigma, sigma).map_err(|e| e.to_string())?;
        let cases = [(p, (f.k(), f.m())), (r, (f.l(), f.n())), (p + r, (f.k() + f.l(), f.m() + f.n()))];
        for (n, want) in cases.into_iter().filter(|c| c.0 >= 2) {
            for w in windows_of(&word, n).map_err(|e| e.to_string())? {
                let (a, b) = window_content(&w);
                ensure((a as u64, b as u64) == want, || format!("length {n} at offset {}: ({a}, {b})", w.offset))?;
            }
        }
        Ok("constant contents".into())
    })()));

    out.push(check("palindromic_law", (|| {
        for o in [Orientation::Ab, Orientation::Ba] {
            let w = principal_word(&bp, o, -opt.range, opt.range + 1).map_err(|e| e.to_string())?;
            for r in 1..=opt.range {
                ensure(w.get(-r) == w.get(1 + r), || format!("lock {} fails at r = {r}", o.as_str()))?;
            }
        }
        Ok(format!("r <= {}", opt.range))
    })()));

    out.push(check("recursion", (|| {
        let target = (2 * opt.range as usize).min(1000);
        let mut depth = opt.depth;
        let rec = loop {
            let rec = build_principal_by_recursion(&cutting_sequence_of(&bp, depth));
            if rec.prefix().len() + 2 >= target || depth > 200 {
                break rec;
            }
            depth += 4;
        };
        let built = format!("ab{}", rec.prefix());
        let orbit = principal_word(&bp, Orientation::Ab, 0, built.len() as i64 - 1).map_err(|e| e.to_string())?;
        ensure(orbit.letters().to_string() == built, || "recursion differs from orbit".into())?;
        Ok(format!("{} letters", built.len()))
    })()));

    out.push(check("centers", (|| {
        for which in [Center::Js, Center::R1, Center::R2] {
            center_word(&bp, which, -opt.range, opt.range).map_err(|e| format!("{which:?}: {e}"))?;
        }
        Ok("Js, R1, R2".into())
    })()));

    out.push(check("berg_classes", count_berg(f).map(|n| format!("{n} classes")).map_err(|e| e.to_string())));

    out.push(check(
        "seebold",
        seebold_count(f, opt.length).map(|n| format!("{n} substitutions")).map_err(|e| e.to_string()),
    ));

    out.push(check("incidence", (|| {
        let [[k, l], [m, n]] = f.entries();
        for r in rules_or_err()? {
            ensure(incidence_matrix(&r) == IncidenceMatrix([[k, l], [m, n]]), || format!("{r}"))?;
        }
        Ok("equals F".into())
    })()));

    out.push(check("reversal", (|| {
        let rules = rules_or_err()?;
        let classes = equivalence_classes(&rules).map_err(|e| e.to_string())?;
        let selfsym = classes.iter().filter(|c| c.self_symmetric).count();
        ensure((selfsym == 1) == (sigma % 2 == 0), || format!("{selfsym} self-symmetric rules"))?;
        let std = standard_substitution(f).map_err(|e| e.to_string())?;
        ensure(rules.first() == Some(&std), || "offset 0 rule is not the standard rule".into())?;
        Ok(format!("{selfsym} self-symmetric"))
    })()));

    out.push(check("lengths", (|| {
        let e = f.eigen_data();
        for r in rules_or_err()? {
            verify_berg_lengths(&e, &r).map_err(|err| err.to_string())?;
        }
        Ok("exact".into())
    })()));

    out.push(check("strips", (|| {
        for r in rules_or_err()? {
            let d = strip_diagram(f, &r).map_err(|e| e.to_string())?;
            let g = partition_geometry(f, &r).map_err(|e| e.to_string())?;
            let bottoms = |s: &[berg_core::render::Strip]| s.iter().map(|x| x.bottom.clone()).collect::<Vec<_>>();
            ensure(g.cut_heights(Rect::R1) == bottoms(&d.r1) && g.cut_heights(Rect::R2) == bottoms(&d.r2), || {
                format!("cuts differ from strips for {r}")
            })?;
        }
        Ok("cuts match strips".into())
    })()));

    out.push(check("alignment", (|| {
        let reach = (10 * sigma).max(200);
        for r in rules_or_err()? {
            let k = fixed_word_alignment(&r, f, -reach, reach).map_err(|e| format!("{r}: {e}"))?;
            ensure(Some(k) == r.offset(), || format!("{r}: shift {k}"))?;
        }
        Ok("shift = offset".into())
    })()));

    out
}
