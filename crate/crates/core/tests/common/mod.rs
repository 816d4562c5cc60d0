#![allow(dead_code)]

pub mod props;

use gorenstein::algebra::{build_quotient_algebra, QuotientAlgebra};
use gorenstein::polycore::{parse_polynomial, var_list, Polynomial, Scalar, TermOrder};

pub const AT_BASIS: [&str; 15] = [
    "1", "x", "y", "x^2", "x*y", "y^2", "x^2*y", "x*y^2", "y^3", "x*y^3", "x^2*y^2", "y^4",
    "x^2*y^3", "x*y^4", "x^2*y^4",
];

pub fn at_generators(t: i64) -> Vec<String> {
    vec![format!("2*x^3 + {t}*x*y^3"), format!("{t}*x^2*y^2 + 2*y^5")]
}

pub fn polys(items: &[&str], vars: &[&str]) -> Vec<Polynomial> {
    let v = var_list(vars);
    items
        .iter()
        .map(|s| parse_polynomial(s, &v).unwrap())
        .collect()
}

/// `A_t = Q[x,y]/(2x³ + t x y³, t x²y² + 2y⁵)` in the monomial basis e0..e14.
pub fn a_t(t: i64) -> QuotientAlgebra {
    let g = at_generators(t);
    let g: Vec<&str> = g.iter().map(String::as_str).collect();
    build_quotient_algebra(
        &polys(&g, &["x", "y"]),
        &TermOrder::Grevlex,
        Some(&polys(&AT_BASIS, &["x", "y"])),
    )
    .unwrap()
}

pub fn algebra(gens: &[&str], vars: &[&str]) -> QuotientAlgebra {
    build_quotient_algebra(&polys(gens, vars), &TermOrder::Grevlex, None).unwrap()
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n.into(), d.into())
}
