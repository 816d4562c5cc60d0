mod common;

use common::{a_t, q};
use gorenstein::algebra::structure_report;
use gorenstein::nilpoly::{blaschke_data, default_projection, nil_polynomial};
use gorenstein::polycore::Monomial;

fn mono(exps: &[(usize, u32)]) -> Monomial {
    let mut e = vec![0; 13];
    for &(i, k) in exps {
        e[i - 1] = k;
    }
    Monomial::from_exponents(e)
}

#[test]
fn family_coefficients_at_several_t() {
    for t in [1i64, 3, -1, 5] {
        let a = a_t(t);
        let pi = default_projection(&a).unwrap();
        assert_eq!(pi.pivot(), 14);
        let p = nil_polynomial(&a, &pi).unwrap();
        let c = |e: &[(usize, u32)]| p.polynomial().coefficient(&mono(e));
        assert_eq!(c(&[(2, 7)]), q(t, 10080));
        assert_eq!(c(&[(2, 4), (1, 2)]), q(-1, 48));
        assert_eq!(c(&[(2, 5), (5, 1)]), q(t, 240));
        assert_eq!(c(&[(1, 4), (2, 1)]), q(t, 48));
        assert_eq!(c(&[(1, 2), (2, 2), (5, 1)]), q(-1, 4));
        assert_eq!(c(&[(1, 1), (2, 3), (4, 1)]), q(-1, 6));
        assert_eq!(c(&[(2, 3), (5, 2)]), q(t, 24));
        assert_eq!(c(&[(2, 4), (8, 1)]), q(t, 48));
        assert_eq!(c(&[(2, 4), (3, 1)]), q(-1, 24));
        assert_eq!(p.degree(), 7);
        assert_eq!(structure_report(&a).unwrap().nil_index, 7);
        assert!(blaschke_data(&p).unwrap().is_normal_form());
    }
}
