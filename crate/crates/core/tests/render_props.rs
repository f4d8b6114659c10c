mod oracle;

use berg_core::berg::{berg_substitutions, SubstitutionRule};
use berg_core::exactnum::QuadraticNumber;
use berg_core::render::{partition_geometry, strip_diagram, Rect, RenderError, Strip};
use berg_core::spectral::{corpus, AutomorphismMatrix};
use oracle::sample20;

fn m(k: i64, l: i64, mm: i64, n: i64) -> AutomorphismMatrix {
    AutomorphismMatrix::from_entries(k, l, mm, n).unwrap()
}

fn letters(strips: &[Strip]) -> String {
    strips.iter().map(|s| s.letter.as_char()).collect()
}

#[test]
fn strip_examples() {
    let rule = |a: &str, b: &str| SubstitutionRule::new(a.parse().unwrap(), b.parse().unwrap());
    let d = strip_diagram(&m(2, 1, 1, 1), &rule("aba", "ba")).unwrap();
    assert_eq!((letters(&d.r1).as_str(), letters(&d.r2).as_str()), ("aba", "ba"));
    let d = strip_diagram(&m(1, 1, 1, 0), &rule("ba", "a")).unwrap();
    assert_eq!((letters(&d.r1).as_str(), letters(&d.r2).as_str()), ("ba", "a"));

    let f = m(5, 2, 7, 3);
    let e = f.eigen_data();
    for r in berg_substitutions(&f).unwrap() {
        let d = strip_diagram(&f, &r).unwrap();
        assert_eq!(d.r1.len(), 12);
        let narrow = &e.u1 / &e.lambda;
        assert_eq!(d.r1.iter().filter(|s| s.height == narrow).count(), 5);
        assert_eq!(d.r1.iter().filter(|s| s.height != narrow).count(), 7);
    }
    assert_eq!(strip_diagram(&m(2, 1, 1, 1), &rule("ab", "ab")), Err(RenderError::CountMismatch));
}

#[test]
fn strip_counts_and_heights_over_corpus() {
    for f in corpus(30) {
        let e = f.eigen_data();
        let [[k, l], [mm, n]] = f.entries().map(|r| r.map(|v| v as usize));
        for r in berg_substitutions(&f).unwrap() {
            let d = strip_diagram(&f, &r).unwrap();
            assert_eq!(d.counts(), [[k, l], [mm, n]]);
            let sum = |s: &[Strip]| s.iter().fold(QuadraticNumber::zero(), |acc, x| &acc + &x.height);
            assert_eq!(sum(&d.r1), e.u1);
            assert_eq!(sum(&d.r2), e.u2);
            assert_eq!(letters(&d.r1), r.image_a.to_string());
            assert_eq!(letters(&d.r2), r.image_b.to_string());
        }
    }
}

#[test]
fn golden_pre_panel_cuts() {
    let f = m(2, 1, 1, 1);
    let r = &berg_substitutions(&f).unwrap()[0];
    let g = partition_geometry(&f, r).unwrap();
    let interior: Vec<_> = g.cut_heights(Rect::R1).into_iter().filter(|h| !h.is_zero()).collect();
    assert_eq!(interior.len(), 2);
    assert!(g.fixed_height.is_zero());
}

#[test]
fn wrapped_segments_cut_the_strips() {
    for f in sample20().into_iter().chain([m(5, 2, 7, 3)]) {
        for r in berg_substitutions(&f).unwrap() {
            let g = partition_geometry(&f, &r).unwrap();
            let d = strip_diagram(&f, &r).unwrap();
            let bottoms = |s: &[Strip]| s.iter().map(|x| x.bottom.clone()).collect::<Vec<_>>();
            assert_eq!(g.cut_heights(Rect::R1), bottoms(&d.r1), "{f} {r}");
            assert_eq!(g.cut_heights(Rect::R2), bottoms(&d.r2), "{f} {r}");
            let e = &g.eigen;
            assert_eq!(g.pre_length(), &e.lambda * &(&e.s1 + &e.s2));
            assert_eq!(g.post_length(), e.lambda);
            assert_eq!(g.post.len() as u64, f.sigma());
            assert_eq!(g.pre.len() as u64, f.sigma());
        }
    }
}
