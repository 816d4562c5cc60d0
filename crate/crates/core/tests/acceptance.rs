//! Acceptance criteria 1–6, one PASS/FAIL line each.
//!
//! Every criterion runs even if an earlier one fails; the test fails at the
//! end if any line reads FAIL.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::props::{self, fixtures};
use common::{a_t, algebra, at_generators, polys, q};
use gorenstein::algebra::{
    build_quotient_algebra, check_grading, find_grading_weights, structure_report,
};
use gorenstein::invsys::{
    annihilator_member, default_complement, derivative_span_dimension, extract_and_verify,
    restrict_nil_polynomial, verify_inverse_system,
};
use gorenstein::isocheck::{decide_isomorphism, verify_linear_equivalence, IsoOptions, Verdict};
use gorenstein::nilpoly::{default_projection, nil_polynomial};
use gorenstein::polycore::{parse_polynomial, var_list, Monomial, TermOrder};
use gorenstein::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn within(limit: Duration, start: Instant, what: &str) {
    let t = start.elapsed();
    assert!(t < limit, "{what} took {t:?}, limit {limit:?}");
}

fn criterion_1() -> String {
    for t in [1, 3] {
        let start = Instant::now();
        let a = a_t(t);
        let r = structure_report(&a).unwrap();
        assert_eq!(r.dimension, 15);
        assert!(r.is_local && r.is_gorenstein);
        assert_eq!(r.embedding_dimension, 2);
        assert_eq!(r.nil_index, 7);
        assert_eq!(find_grading_weights(&a), Some(vec![3, 2]));
        let g = check_grading(&a, &[3, 2]).unwrap();
        for (w, d) in &g.dims {
            let want = if *w == 6 || *w == 8 { 2 } else { 1 };
            assert_eq!(*d, want, "weight {w}");
        }
        assert_eq!(g.dims.values().sum::<usize>(), 15);
        within(
            Duration::from_secs(5),
            start,
            &format!("structure of A_{t}"),
        );
    }
    "A_1, A_3: d=15, Gorenstein, emb dim 2, nu=7, weights (3,2) with dims 2 at 6 and 8".into()
}

fn criterion_2() -> String {
    let start = Instant::now();
    let mono = |e: &[(usize, u32)]| {
        let mut v = vec![0; 13];
        for &(i, k) in e {
            v[i - 1] = k;
        }
        Monomial::from_exponents(v)
    };
    let mut checked = 0;
    for t in [1i64, 3] {
        let a = a_t(t);
        let pi = default_projection(&a).unwrap();
        let p = nil_polynomial(&a, &pi).unwrap();
        let expected = [
            (mono(&[(2, 7)]), q(t, 10080)),
            (mono(&[(2, 4), (1, 2)]), q(-1, 48)),
            (mono(&[(2, 5), (5, 1)]), q(t, 240)),
            (mono(&[(1, 4), (2, 1)]), q(t, 48)),
            (mono(&[(1, 2), (2, 2), (5, 1)]), q(-1, 4)),
            (mono(&[(1, 1), (2, 3), (4, 1)]), q(-1, 6)),
            (mono(&[(2, 3), (5, 2)]), q(t, 24)),
            (mono(&[(2, 4), (8, 1)]), q(t, 48)),
            (mono(&[(2, 4), (3, 1)]), q(-1, 24)),
        ];
        for (m, c) in expected {
            assert_eq!(p.polynomial().coefficient(&m), c, "t={t}, {m:?}");
            checked += 1;
        }
    }
    within(Duration::from_secs(60), start, "nil-polynomials");
    format!("{checked} displayed coefficients reproduced exactly for t=1,3")
}

fn criterion_3() -> String {
    let start = Instant::now();
    let a = a_t(1);
    let pi = default_projection(&a).unwrap();
    let p = nil_polynomial(&a, &pi).unwrap();
    let l = a.var_images().to_vec();
    let restricted = restrict_nil_polynomial(&a, &p, &l).unwrap();
    let mu = parse_polynomial("1/10080*y^7 - 1/48*x^2*y^4 + 1/48*x^4*y", a.vars()).unwrap();
    let mu_y = mu.with_vars(var_list(&["y1", "y2"])).unwrap();
    assert!(
        restricted == mu_y || restricted == -&mu_y,
        "restriction is not ±mu_1"
    );
    for g in a.generators() {
        assert!(annihilator_member(g, &mu).unwrap());
    }
    assert_eq!(derivative_span_dimension(&mu).unwrap(), 15);
    assert!(verify_inverse_system(&a, &mu).unwrap().verdict());
    within(Duration::from_secs(10), start, "inverse system");
    "restriction to L=(x,y) equals -mu_1; generators annihilate; span dim 15".into()
}

fn criterion_4() -> String {
    let start = Instant::now();
    // A_2 has x^2 + y^3 as a common factor of its generators: not Artinian
    let g2 = at_generators(2);
    let g2: Vec<&str> = g2.iter().map(String::as_str).collect();
    assert!(matches!(
        build_quotient_algebra(&polys(&g2, &["x", "y"]), &TermOrder::Grevlex, None),
        Err(Error::InfiniteDimensional { .. })
    ));
    let run = |s: i64| {
        let (a, b) = (a_t(1), a_t(s));
        let (pa, pb) = (
            default_projection(&a).unwrap(),
            default_projection(&b).unwrap(),
        );
        let r = decide_isomorphism(&a, &pa, &b, &pb, &IsoOptions::default()).unwrap();
        if let Some(w) = &r.witness {
            assert!(verify_linear_equivalence(&a, &pa, &b, &pb, w).unwrap());
        }
        r
    };
    let r = run(3);
    assert_eq!(r.verdict, Verdict::NotIsomorphic);
    assert_eq!(r.refuting_degrees, vec![7, 6, 5]);
    let r = run(-1);
    assert_eq!(r.verdict, Verdict::Isomorphic);
    assert!(r.witness.is_some());
    let r = run(1);
    assert_eq!(r.verdict, Verdict::Isomorphic);
    within(Duration::from_secs(600), start, "isomorphism checks");
    format!(
        "A_1 vs A_3 refuted by degrees {{7,6,5}} (A_2 is infinite-dimensional); A_1 ~ A_-1 with verified witness; A_1 ~ A_1 ({:?})",
        start.elapsed()
    )
}

fn criterion_5() -> String {
    let set = fixtures();
    let suites: [(&str, props::Suite); 6] = [
        ("(a) exp/log round trip", props::exp_log_round_trip),
        ("(b) Blaschke condition", props::blaschke_condition_holds),
        (
            "(c) product identity",
            props::product_splits_into_star_and_pairing,
        ),
        (
            "(d) components vs forms",
            props::homogeneous_components_are_the_forms,
        ),
        (
            "(e) structure constants vs normal forms",
            props::structure_constants_match_normal_forms,
        ),
        (
            "(f) translation graph identity",
            props::translated_graph_lies_on_translated_hypersurface,
        ),
    ];
    for (i, (name, suite)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        catch_unwind(AssertUnwindSafe(|| suite(&set, &mut rng)))
            .unwrap_or_else(|_| panic!("suite {name} failed"));
    }
    format!("suites (a)-(f) clean on {} fixtures", set.len())
}

fn criterion_6() -> String {
    let start = Instant::now();
    let mut algebras: Vec<_> = (2..=6)
        .map(|d| algebra(&[&format!("x^{d}")], &["x"]))
        .collect();
    algebras.push(algebra(&["x^2", "y^2"], &["x", "y"]));
    algebras.push(algebra(&["x^2 + y^2", "x*y"], &["x", "y"]));
    algebras.push(a_t(1));
    algebras.push(a_t(3));
    for a in &algebras {
        let pi = default_projection(a).unwrap();
        let p = nil_polynomial(a, &pi).unwrap();
        let l = default_complement(a, &pi).unwrap();
        let v = extract_and_verify(a, &p, &l).unwrap();
        assert!(v.annihilates(), "{:?}", a.generators());
        assert_eq!(v.span_dimension, a.dim());
    }
    within(Duration::from_secs(60), start, "inverse-system extraction");
    format!(
        "extracted Q verified on {} Gorenstein fixtures",
        algebras.len()
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn() -> String); 6] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
    ];
    let mut failed = Vec::new();
    for (n, check) in criteria {
        match catch_unwind(check) {
            Ok(detail) => println!("criterion {n}: PASS - {detail}"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {n}: FAIL - {msg}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
