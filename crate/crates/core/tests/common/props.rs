//! Algebraic identities checked on random elements of a fixture set.
//! Oracles are independent of the code under test where possible: the
//! normal form of a polynomial product, the defining series of exp/log,
//! and multilinear expansion of the algebra product.

use super::{a_t, algebra};
use gorenstein::algebra::QuotientAlgebra;
use gorenstein::nilpoly::{
    blaschke_data, default_projection, exp_element, log_element, nil_polynomial, omega_form,
    on_hypersurface, star_product, translate_projection, AdmissibleProjection,
};
use gorenstein::polycore::{Polynomial, Scalar, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Fixture = (String, QuotientAlgebra, AdmissibleProjection);
pub type Suite = fn(&[Fixture], &mut ChaCha8Rng);

fn algebras() -> Vec<(String, QuotientAlgebra)> {
    let mut out = Vec::new();
    for d in 2..=6 {
        out.push((format!("x^{d}"), algebra(&[&format!("x^{d}")], &["x"])));
    }
    out.push(("(x^2, y^2)".into(), algebra(&["x^2", "y^2"], &["x", "y"])));
    out.push((
        "(x^2+y^2, xy)".into(),
        algebra(&["x^2 + y^2", "x*y"], &["x", "y"]),
    ));
    out.push(("A_1".into(), a_t(1)));
    out.push(("A_3".into(), a_t(3)));
    out
}

pub fn rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(
        rng.gen_range(-4i64..=4).into(),
        rng.gen_range(1i64..=3).into(),
    )
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    (0..n).map(|_| rational(rng)).collect()
}

/// Random element of the maximal ideal.
pub fn random_m(rng: &mut ChaCha8Rng, a: &QuotientAlgebra) -> Vector {
    let mut v = random_vec(rng, a.dim());
    v[0] = Scalar::from_integer(0.into());
    v
}

pub fn add(u: &[Scalar], v: &[Scalar]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn scaled(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn factorial(m: usize) -> Scalar {
    Scalar::from_integer((1..=m as i64).product::<i64>().into())
}

/// The property fixture set with default projections.
pub fn fixtures() -> Vec<Fixture> {
    algebras()
        .into_iter()
        .map(|(name, a)| {
            let pi = default_projection(&a).unwrap();
            (name, a, pi)
        })
        .collect()
}

pub fn exp_log_round_trip(fixtures: &[Fixture], rng: &mut ChaCha8Rng) {
    for (name, a, _) in fixtures {
        for _ in 0..100 {
            let u = random_m(rng, a);
            let e = exp_element(a, &u).unwrap();
            assert!(
                a.constant_part(&e) == Scalar::from_integer(1.into()),
                "{name}"
            );
            assert_eq!(log_element(a, &e).unwrap(), u, "{name}: log(exp u) != u");
            let mut v = random_m(rng, a);
            v[0] = Scalar::from_integer(1.into());
            assert_eq!(
                exp_element(a, &log_element(a, &v).unwrap()).unwrap(),
                v,
                "{name}"
            );
        }
    }
}

pub fn exp_is_a_homomorphism(fixtures: &[Fixture], rng: &mut ChaCha8Rng) {
    for (name, a, _) in fixtures {
        for _ in 0..20 {
            let u = random_m(rng, a);
            let v = random_m(rng, a);
            let lhs = exp_element(a, &add(&u, &v)).unwrap();
            let rhs = a.mul(&exp_element(a, &u).unwrap(), &exp_element(a, &v).unwrap());
            assert_eq!(lhs, rhs, "{name}");
        }
    }
}

pub fn blaschke_condition_holds(fixtures: &[Fixture], rng: &mut ChaCha8Rng) {
    for (name, a, pi) in fixtures {
        let p = nil_polynomial(a, pi).unwrap();
        if p.degree() < 2 {
            // F[x]/(x^2): K = 0 and P = 0, nothing to normalise
            assert_eq!(pi.rank(), 0, "{name}");
            continue;
        }
        assert!(blaschke_data(&p).unwrap().is_normal_form(), "{name}");
        // other admissible projections: ω(1) = 0, ω(socle) ≠ 0
        for _ in 0..3 {
            let mut omega = random_m(rng, a);
            let s = pi.socle().to_vec();
            if (0..a.dim()).map(|i| &omega[i] * &s[i]).sum::<Scalar>()
                == Scalar::from_integer(0.into())
            {
                continue;
            }
            omega[0] = Scalar::from_integer(0.into());
            let other = AdmissibleProjection::from_functional(a, omega, None).unwrap();
            let q = nil_polynomial(a, &other).unwrap();
            assert!(blaschke_data(&q).unwrap().is_normal_form(), "{name}");
        }
    }
}

pub fn product_splits_into_star_and_pairing(fixtures: &[Fixture], rng: &mut ChaCha8Rng) {
    for (name, a, pi) in fixtures {
        let n = pi.rank();
        if n == 0 {
            continue;
        }
        let s = pi.socle().to_vec();
        for _ in 0..100 {
            let u = pi.k_element(&random_vec(rng, n));
            let v = pi.k_element(&random_vec(rng, n));
            let ua = add(&u, &scaled(&rational(rng), &s));
            let vb = add(&v, &scaled(&rational(rng), &s));
            let star = star_product(a, pi, &u, &v).unwrap();
            assert!(pi.is_in_kernel(&star), "{name}");
            let w2 = omega_form(a, pi, 2, &[u.clone(), v.clone()]).unwrap();
            assert_eq!(a.mul(&ua, &vb), add(&star, &scaled(&w2, &s)), "{name}");
        }
    }
}

pub fn homogeneous_components_are_the_forms(fixtures: &[Fixture], rng: &mut ChaCha8Rng) {
    for (name, a, pi) in fixtures {
        let p = nil_polynomial(a, pi).unwrap();
        let n = pi.rank();
        for _ in 0..50 {
            let alpha = random_vec(rng, n);
            let u = pi.k_element(&alpha);
            for m in 2..=pi.nil_index() {
                let lhs = p.component(m as u32).eval(&alpha);
                let w = omega_form(a, pi, m, &vec![u.clone(); m]).unwrap();
                assert_eq!(lhs, -(w / factorial(m)), "{name}, m = {m}");
            }
        }
        // no constant or linear part
        assert!(
            p.component(0).is_zero() && p.component(1).is_zero(),
            "{name}"
        );
    }
}

pub fn structure_constants_match_normal_forms(fixtures: &[Fixture], rng: &mut ChaCha8Rng) {
    for (name, a, _) in fixtures {
        let vars = a.vars().clone();
        let random_poly = |rng: &mut ChaCha8Rng| {
            let mut p = Polynomial::zero(vars.clone());
            for _ in 0..4 {
                let exps: Vec<u32> = (0..vars.len()).map(|_| rng.gen_range(0..5)).collect();
                let mut t = Polynomial::constant(vars.clone(), rational(rng));
                for (i, e) in exps.iter().enumerate() {
                    t = &t * &Polynomial::var(vars.clone(), i).pow(*e);
                }
                p = &p + &t;
            }
            p
        };
        for _ in 0..200 {
            let f = random_poly(rng);
            let g = random_poly(rng);
            let via_table = a.mul(&a.coords_of(&f).unwrap(), &a.coords_of(&g).unwrap());
            let via_normal_form = a.coords_of(&(&f * &g)).unwrap();
            assert_eq!(via_table, via_normal_form, "{name}");
        }
    }
}

pub fn translated_graph_lies_on_translated_hypersurface(
    fixtures: &[Fixture],
    rng: &mut ChaCha8Rng,
) {
    for (name, a, pi) in fixtures {
        let p = nil_polynomial(a, pi).unwrap();
        let n = pi.rank();
        for _ in 0..50 {
            let y = random_m(rng, a);
            let moved = translate_projection(a, pi, &y).unwrap();
            let pm = nil_polynomial(a, &moved).unwrap();
            let alpha = random_vec(rng, n);
            let z = p.graph_point(&alpha);
            assert!(on_hypersurface(a, pi, &z).unwrap(), "{name}");
            let shifted: Vector = z.iter().zip(&y).map(|(u, v)| u - v).collect();
            assert!(on_hypersurface(a, &moved, &shifted).unwrap(), "{name}");
            let (beta, t) = moved.decompose(&shifted).unwrap();
            assert_eq!(pm.eval(&beta), t, "{name}: S' is not the graph of P'");
        }
    }
}
