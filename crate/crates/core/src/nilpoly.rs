//! Admissible projections and the nil-polynomial `P(u) = -ω(exp u)`.
//!
//! A projection is stored as its functional `ω` (a row in algebra
//! coordinates) together with a basis `k_1..k_n` of `K = ker ω ∩ m` and a
//! socle generator `s` scaled so that `ω(s) = 1`. Every `z` in `m` splits
//! uniquely as `z = u + t s` with `u` in `K`; the hypersurface
//! `S = {z ∈ m : ω(exp z) = 0}` is the graph `t = P(u)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{structure_report, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::polycore::linalg::{dot, is_zero_vec};
use crate::polycore::scalar::factorial;
use crate::polycore::{Matrix, Monomial, Polynomial, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleProjection {
    omega: Vector,
    pivot: usize,
    /// algebra index `i` each kernel vector `k` is built from: `k = b_i - c b_pivot`
    kernel_source: Vec<usize>,
    kernel: Vec<Vector>,
    socle: Vector,
    nil_index: usize,
}

impl AdmissibleProjection {
    /// Builds the projection with functional `omega`. `preferred_pivot` is
    /// used to eliminate along when `omega` is nonzero there.
    pub fn from_functional(
        a: &QuotientAlgebra,
        omega: Vector,
        preferred_pivot: Option<usize>,
    ) -> Result<Self> {
        let report = structure_report(a)?;
        let d = a.dim();
        if omega.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: omega.len(),
            });
        }
        if !report.is_gorenstein {
            return Err(Error::NotGorenstein {
                socle_dim: report.socle.len(),
                dim: d,
            });
        }
        let raw = &report.socle[0];
        let os = dot(&omega, raw);
        if os.is_zero() {
            return Err(Error::Input("functional vanishes on the socle".into()));
        }
        let socle: Vector = raw.iter().map(|x| x / &os).collect();
        let pivot = preferred_pivot
            .filter(|&p| p > 0 && p < d && !omega[p].is_zero())
            .or_else(|| (1..d).rev().find(|&p| !omega[p].is_zero()))
            .expect("nonzero on the socle, hence on m");
        let mut kernel_source = Vec::new();
        let mut kernel = Vec::new();
        for i in (1..d).filter(|&i| i != pivot) {
            let mut k = a.basis_vector(i);
            if !omega[i].is_zero() {
                k[pivot] = -(&omega[i] / &omega[pivot]);
            }
            kernel_source.push(i);
            kernel.push(k);
        }
        Ok(AdmissibleProjection {
            omega,
            pivot,
            kernel_source,
            kernel,
            socle,
            nil_index: report.nil_index,
        })
    }

    pub fn omega(&self) -> &[Scalar] {
        &self.omega
    }

    pub fn apply(&self, v: &[Scalar]) -> Scalar {
        dot(&self.omega, v)
    }

    /// The basis `k_1..k_n` of `K`.
    pub fn kernel_basis(&self) -> &[Vector] {
        &self.kernel
    }

    /// Algebra basis index that `k_i` is built from.
    pub fn kernel_source(&self) -> &[usize] {
        &self.kernel_source
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Socle generator `s` with `ω(s) = 1`.
    pub fn socle(&self) -> &[Scalar] {
        &self.socle
    }

    pub fn nil_index(&self) -> usize {
        self.nil_index
    }

    /// `n = dim K = dim m - 1`.
    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    /// `Σ α_i k_i`.
    pub fn k_element(&self, alpha: &[Scalar]) -> Vector {
        let d = self.omega.len();
        let mut v = vec![Scalar::zero(); d];
        for (c, k) in alpha.iter().zip(&self.kernel) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in v.iter_mut().zip(k) {
                *o += c * x;
            }
        }
        v
    }

    /// Splits `z ∈ m` as `Σ α_i k_i + t s`, returning `(α, t)`.
    pub fn decompose(&self, z: &[Scalar]) -> Result<(Vector, Scalar)> {
        if !z[0].is_zero() {
            return Err(Error::ElementNotInMaxIdeal);
        }
        let t = self.apply(z);
        let rest: Vector = z.iter().zip(&self.socle).map(|(a, b)| a - &t * b).collect();
        // rest ∈ K; the k_i are unit vectors outside the pivot column
        let alpha: Vector = self
            .kernel_source
            .iter()
            .map(|&i| rest[i].clone())
            .collect();
        debug_assert_eq!(self.k_element(&alpha), rest);
        Ok((alpha, t))
    }

    pub fn is_in_kernel(&self, v: &[Scalar]) -> bool {
        v[0].is_zero() && self.apply(v).is_zero()
    }
}

pub fn default_projection(a: &QuotientAlgebra) -> Result<AdmissibleProjection> {
    let report = structure_report(a)?;
    if !report.is_gorenstein {
        return Err(Error::NotGorenstein {
            socle_dim: report.socle.len(),
            dim: a.dim(),
        });
    }
    let p = a
        .distinguished_index(&report.socle[0])
        .expect("socle generator is nonzero");
    AdmissibleProjection::from_functional(a, a.basis_vector(p), Some(p))
}

pub fn exp_element(a: &QuotientAlgebra, u: &[Scalar]) -> Result<Vector> {
    if !a.in_maximal_ideal(u) {
        return Err(Error::ElementNotInMaxIdeal);
    }
    let mut sum = a.unit();
    let mut term = a.unit();
    for m in 1u32.. {
        term = a.mul(&term, u);
        if is_zero_vec(&term) {
            break;
        }
        let f = Scalar::one() / factorial(m);
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t * &f;
        }
    }
    Ok(sum)
}

pub fn log_element(a: &QuotientAlgebra, v: &[Scalar]) -> Result<Vector> {
    if !a.constant_part(v).is_one() {
        return Err(Error::UnitPartNotOne);
    }
    let mut u = v.to_vec();
    u[0] -= Scalar::one();
    let mut sum = a.zero();
    let mut term = a.unit();
    for m in 1i64.. {
        term = a.mul(&term, &u);
        if is_zero_vec(&term) {
            break;
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        let f = Scalar::new(sign.into(), m.into());
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t * &f;
        }
    }
    Ok(sum)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilPolynomial {
    projection: AdmissibleProjection,
    poly: Polynomial,
}

/// Variable names `a1..an` of a nil-polynomial in `n` unknowns.
pub fn alpha_vars(n: usize) -> Arc<[String]> {
    (1..=n).map(|i| format!("a{i}")).collect::<Vec<_>>().into()
}

impl NilPolynomial {
    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn projection(&self) -> &AdmissibleProjection {
        &self.projection
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().finite().unwrap_or(0)
    }

    /// Homogeneous component `P^[m]`.
    pub fn component(&self, m: u32) -> Polynomial {
        self.poly.homogeneous_component(m)
    }

    pub fn eval(&self, alpha: &[Scalar]) -> Scalar {
        self.poly.eval(alpha)
    }

    /// The point `Σ α_i k_i + P(α) s` of the hypersurface.
    pub fn graph_point(&self, alpha: &[Scalar]) -> Vector {
        let mut z = self.projection.k_element(alpha);
        let t = self.eval(alpha);
        for (o, s) in z.iter_mut().zip(&self.projection.socle) {
            *o += &t * s;
        }
        z
    }
}

impl fmt::Display for NilPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// `-ω(exp u)` for the generic `u = Σ α_i k_i`, expanded symbolically.
pub fn nil_polynomial(a: &QuotientAlgebra, pi: &AdmissibleProjection) -> Result<NilPolynomial> {
    let n = pi.rank();
    let d = a.dim();
    if pi.omega.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: pi.omega.len(),
        });
    }
    let vars = alpha_vars(n);
    let mats: Vec<Matrix> = pi.kernel.iter().map(|k| a.mult_matrix(k)).collect();
    let alpha_mono: Vec<Monomial> = (0..n).map(|i| Monomial::var(n, i)).collect();

    // power = u^m as a vector of polynomials in α
    let mut power: Vec<Polynomial> = (0..d)
        .map(|j| Polynomial::constant(vars.clone(), a.unit()[j].clone()))
        .collect();
    let mut p = Polynomial::constant(vars.clone(), -pi.apply(&a.unit()));
    for m in 1u32.. {
        let mut next = vec![Polynomial::zero(vars.clone()); d];
        for (i, mat) in mats.iter().enumerate() {
            for (l, out) in next.iter_mut().enumerate() {
                for (j, w) in power.iter().enumerate() {
                    let c = &mat[(l, j)];
                    if !c.is_zero() && !w.is_zero() {
                        out.add_scaled(c, &alpha_mono[i], w);
                    }
                }
            }
        }
        power = next;
        if power.iter().all(Polynomial::is_zero) {
            break;
        }
        let f = -(Scalar::one() / factorial(m));
        for (w, o) in power.iter().zip(&pi.omega) {
            if !o.is_zero() {
                p.add_scaled(&(&f * o), &Monomial::one(n), w);
            }
        }
    }
    Ok(NilPolynomial {
        projection: pi.clone(),
        poly: p,
    })
}

/// `ω_m(u_1, ..., u_m) = ω(u_1 ⋯ u_m)`.
pub fn omega_form(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    m: usize,
    us: &[Vector],
) -> Result<Scalar> {
    if m < 2 || m > pi.nil_index.max(2) {
        return Err(Error::DegreeOutOfRange {
            degree: m,
            max: pi.nil_index,
        });
    }
    if us.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: us.len(),
        });
    }
    let mut prod = a.unit();
    for u in us {
        prod = a.mul(&prod, u);
    }
    Ok(pi.apply(&prod))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlaschkeData {
    pub g: Matrix,
    pub h: Vec<Vec<Vec<Scalar>>>,
    pub g_inverse: Matrix,
    pub trace: Vector,
}

impl BlaschkeData {
    pub fn is_normal_form(&self) -> bool {
        is_zero_vec(&self.trace)
    }
}

pub fn blaschke_data(p: &NilPolynomial) -> Result<BlaschkeData> {
    let n = p.projection.rank();
    if p.degree() < 2 {
        return Err(Error::DegenerateQuadraticForm);
    }
    let half = Scalar::new(1.into(), 2.into());
    let mut g = Matrix::zeros(n, n);
    for (m, c) in p.component(2).terms() {
        let idx: Vec<usize> = expand_indices(m);
        if idx[0] == idx[1] {
            g[(idx[0], idx[0])] = c.clone();
        } else {
            g[(idx[0], idx[1])] = c * &half;
            g[(idx[1], idx[0])] = c * &half;
        }
    }
    let mut h = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (m, c) in p.component(3).terms() {
        let idx = expand_indices(m);
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut arrangements: Vec<[usize; 3]> = perms
            .iter()
            .map(|q| [idx[q[0]], idx[q[1]], idx[q[2]]])
            .collect();
        arrangements.sort();
        arrangements.dedup();
        let share = c / Scalar::from_integer((arrangements.len() as i64).into());
        for [i, j, l] in arrangements {
            h[i][j][l] = share.clone();
        }
    }
    let g_inverse = g.inverse().ok_or(Error::DegenerateQuadraticForm)?;
    let trace = (0..n)
        .map(|l| {
            let mut t = Scalar::zero();
            for i in 0..n {
                for j in 0..n {
                    if !g_inverse[(i, j)].is_zero() && !h[i][j][l].is_zero() {
                        t += &g_inverse[(i, j)] * &h[i][j][l];
                    }
                }
            }
            t
        })
        .collect();
    Ok(BlaschkeData {
        g,
        h,
        g_inverse,
        trace,
    })
}

/// Variable indices of a monomial with multiplicity, ascending.
fn expand_indices(m: &Monomial) -> Vec<usize> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

/// The unique `u∗v ∈ K` with `ω₂(u∗v, w) = ω₃(u, v, w)` for all `w ∈ K`.
pub fn star_product(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    u: &[Scalar],
    v: &[Scalar],
) -> Result<Vector> {
    let n = pi.rank();
    let k = &pi.kernel;
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = pi.apply(&a.mul(&k[i], &k[j]));
            gram[(j, i)] = x.clone();
            gram[(i, j)] = x;
        }
    }
    let uv = a.mul(u, v);
    let rhs: Vector = k.iter().map(|w| pi.apply(&a.mul(&uv, w))).collect();
    let inv = gram.inverse().ok_or(Error::DegenerateQuadraticForm)?;
    Ok(pi.k_element(&inv.mul_vec(&rhs)))
}

/// The projection with functional `a ↦ ω(exp(y) a)`.
///
/// Its hypersurface is the original one translated by `-y`. When `y` is not
/// itself on the hypersurface, `ω'(1) ≠ 0` and the translated nil-polynomial
/// acquires a constant term.
pub fn translate_projection(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    y: &[Scalar],
) -> Result<AdmissibleProjection> {
    let e = exp_element(a, y)?;
    let m = a.mult_matrix(&e);
    let omega = m.transpose().mul_vec(&pi.omega);
    if omega == pi.omega {
        return Ok(pi.clone());
    }
    AdmissibleProjection::from_functional(a, omega, Some(pi.pivot))
}

/// Whether `z ∈ m` lies on `{z : ω(exp z) = 0}`.
pub fn on_hypersurface(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    z: &[Scalar],
) -> Result<bool> {
    Ok(pi.apply(&exp_element(a, z)?).is_zero())
}
