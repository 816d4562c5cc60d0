mod common;

use std::time::Instant;

use common::{a_t, algebra, at_generators, polys, q};
use gorenstein::isocheck::{
    candidate_from_morphism, decide_isomorphism, verify_algebra_morphism,
    verify_linear_equivalence, IsoOptions, Verdict,
};
use gorenstein::nilpoly::default_projection;

fn run(r: i64, s: i64) -> gorenstein::isocheck::IsomorphismReport {
    let (a, b) = (a_t(r), a_t(s));
    let (pa, pb) = (
        default_projection(&a).unwrap(),
        default_projection(&b).unwrap(),
    );
    let t = Instant::now();
    let rep = decide_isomorphism(&a, &pa, &b, &pb, &IsoOptions::default()).unwrap();
    eprintln!(
        "A_{r} vs A_{s}: {:?} {:?} in {:?}",
        rep.verdict,
        rep.reason,
        t.elapsed()
    );
    rep
}

#[test]
fn one_vs_three() {
    let rep = run(1, 3);
    assert_eq!(rep.verdict, Verdict::NotIsomorphic);
    assert_eq!(rep.refuting_degrees, vec![7, 6, 5]);
}

#[test]
fn one_vs_minus_one() {
    let rep = run(1, -1);
    assert_eq!(rep.verdict, Verdict::Isomorphic);
}

#[test]
fn one_vs_one() {
    assert_eq!(run(1, 1).verdict, Verdict::Isomorphic);
}

#[test]
fn witness_for_sign_flip_is_verified() {
    let (a, b) = (a_t(1), a_t(-1));
    let (pa, pb) = (
        default_projection(&a).unwrap(),
        default_projection(&b).unwrap(),
    );
    let rep = decide_isomorphism(&a, &pa, &b, &pb, &IsoOptions::default()).unwrap();
    let w = rep.witness.expect("witness");
    assert!(verify_linear_equivalence(&a, &pa, &b, &pb, &w).unwrap());
    // α2 is the y-coordinate; the witness must send it to a multiple of itself
    // with μ = -1 (odd powers of y flip sign)
    assert_eq!(w.matrix[(1, 1)], q(-1, 1));
    assert_eq!(w.matrix[(0, 0)], q(1, 1));
}

#[test]
fn substitution_y_to_minus_y_induces_an_equivalence() {
    let (a, b) = (a_t(1), a_t(-1));
    let (pa, pb) = (
        default_projection(&a).unwrap(),
        default_projection(&b).unwrap(),
    );
    let subst = polys(&["x", "-y"], &["x", "y"]);
    assert!(verify_algebra_morphism(&a, &b, &subst).unwrap());
    let cand = candidate_from_morphism(&a, &pa, &b, &pb, &subst).unwrap();
    assert!(verify_linear_equivalence(&a, &pa, &b, &pb, &cand).unwrap());
    // the identity is not a morphism between them
    let id = polys(&["x", "y"], &["x", "y"]);
    assert!(!verify_algebra_morphism(&a, &b, &id).unwrap());
}

#[test]
fn classification_r_equals_plus_minus_s() {
    for (r, s, iso) in [(3, -3, true), (1, 5, false), (3, 5, false), (-1, 3, false)] {
        let rep = run(r, s);
        let want = if iso {
            Verdict::Isomorphic
        } else {
            Verdict::NotIsomorphic
        };
        assert_eq!(rep.verdict, want, "A_{r} vs A_{s}");
    }
}

#[test]
fn degenerate_parameters() {
    use gorenstein::algebra::{build_quotient_algebra, structure_report};
    use gorenstein::polycore::TermOrder;
    use gorenstein::Error;
    // t = ±2: the generators share the factor x^2 ± y^3
    for t in [2, -2] {
        let g = at_generators(t);
        let g: Vec<&str> = g.iter().map(String::as_str).collect();
        let r = build_quotient_algebra(&polys(&g, &["x", "y"]), &TermOrder::Grevlex, None);
        assert!(
            matches!(r, Err(Error::InfiniteDimensional { .. })),
            "t = {t}"
        );
    }
    // t = 0: still dimension 15 and Gorenstein, but ν = 6
    let a0 = algebra(&["2*x^3", "2*y^5"], &["x", "y"]);
    let rep = structure_report(&a0).unwrap();
    assert_eq!(
        (rep.dimension, rep.is_gorenstein, rep.nil_index),
        (15, true, 6)
    );
    let p = gorenstein::nilpoly::nil_polynomial(&a0, &default_projection(&a0).unwrap()).unwrap();
    assert_eq!(p.degree(), 6);
}
