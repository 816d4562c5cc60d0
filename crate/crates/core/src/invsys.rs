//! Macaulay inverse systems and their extraction from nil-polynomials.
//!
//! For a complement `L = (e_1..e_k)` of `m²` in `m` lying inside `ker ω`,
//! `Q(y) = Σ_j (1/j!) ω((y_1 e_1 + ... + y_k e_k)^j)` is an inverse system of
//! the presentation `y_i ↦ e_i`. Since `ω(1) = 0` and `ω(e_i) = 0` this is
//! `-P` restricted to `span L`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::QuotientAlgebra;
use crate::error::{Error, Result};
use crate::nilpoly::{AdmissibleProjection, NilPolynomial};
use crate::polycore::linalg::span_rank;
use crate::polycore::{
    apply_diff_operator, var_list, Matrix, Monomial, Polynomial, Scalar, TermOrder, Vector,
};

/// Outcome of checking a candidate inverse system against a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSystemCandidate {
    pub polynomial: Polynomial,
    /// index of the first generator that does not annihilate, if any
    pub failing_generator: Option<usize>,
    pub span_dimension: usize,
    pub algebra_dimension: usize,
}

impl InverseSystemCandidate {
    pub fn annihilates(&self) -> bool {
        self.failing_generator.is_none()
    }

    pub fn verdict(&self) -> bool {
        self.annihilates() && self.span_dimension == self.algebra_dimension
    }
}

/// `y1..yk`.
pub fn fresh_vars(k: usize) -> Arc<[String]> {
    var_list(&(1..=k).map(|i| format!("y{i}")).collect::<Vec<_>>())
}

/// Checks that `l` is a basis of a complement to `m²` in `m` contained in `K`.
///
/// When `m² = 0` (so `m` is the socle and `K = 0`) no such complement
/// exists; there `l` must span `m` and the kernel condition is waived.
pub fn check_complement(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    l: &[Vector],
) -> Result<()> {
    let spaces = a.filtration_spaces()?;
    let m1 = spaces.first().map_or(0, Vec::len);
    let m2: &[Vector] = spaces.get(1).map_or(&[], Vec::as_slice);
    let k = m1 - m2.len();
    if l.len() != k {
        return Err(Error::NotAComplement(format!(
            "{} elements given, embedding dimension is {k}",
            l.len()
        )));
    }
    for (i, e) in l.iter().enumerate() {
        if e.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: e.len(),
            });
        }
        if !m2.is_empty() && !pi.is_in_kernel(e) {
            return Err(Error::NotInsideKernel { index: i });
        }
    }
    let mut all = m2.to_vec();
    all.extend(l.iter().cloned());
    let rank = span_rank(&all);
    if rank != m1 {
        return Err(Error::NotAComplement(format!(
            "images span {} of the {k} dimensions of m/m²",
            rank - m2.len()
        )));
    }
    Ok(())
}

/// Greedy complement: the first kernel basis vectors that are independent
/// modulo `m²`.
pub fn default_complement(a: &QuotientAlgebra, pi: &AdmissibleProjection) -> Result<Vec<Vector>> {
    let spaces = a.filtration_spaces()?;
    let mut acc: Vec<Vector> = spaces.get(1).cloned().unwrap_or_default();
    let target = spaces.first().map_or(0, Vec::len);
    if acc.is_empty() {
        // m² = 0: m is the socle line
        let chosen = vec![pi.socle().to_vec()];
        check_complement(a, pi, &chosen)?;
        return Ok(chosen);
    }
    let mut chosen = Vec::new();
    for k in pi.kernel_basis() {
        if acc.len() == target {
            break;
        }
        acc.push(k.clone());
        if span_rank(&acc) == acc.len() {
            chosen.push(k.clone());
        } else {
            acc.pop();
        }
    }
    check_complement(a, pi, &chosen)?;
    Ok(chosen)
}

/// `Q = ω∘exp` on `span L`, in variables `y1..yk`.
///
/// Writing `u = k + t·s` with `k ∈ K`, `Q(u) = -P(k) + t`; the linear socle
/// part only appears in the degenerate case `m² = 0`.
pub fn restrict_nil_polynomial(
    a: &QuotientAlgebra,
    p: &NilPolynomial,
    l: &[Vector],
) -> Result<Polynomial> {
    let pi = p.projection();
    check_complement(a, pi, l)?;
    let k = l.len();
    let yv = fresh_vars(k);
    let (coords, ts): (Vec<Vector>, Vec<Scalar>) = l
        .iter()
        .map(|e| pi.decompose(e))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    let values: Vec<Polynomial> = (0..pi.rank())
        .map(|j| {
            Polynomial::from_terms(
                yv.clone(),
                (0..k).map(|i| (Monomial::var(k, i), coords[i][j].clone())),
            )
        })
        .collect();
    let socle_part = Polynomial::from_terms(
        yv.clone(),
        (0..k).map(|i| (Monomial::var(k, i), ts[i].clone())),
    );
    if values.is_empty() {
        return Ok(socle_part);
    }
    Ok(&socle_part - &p.polynomial().compose(&values)?)
}

/// Whether `f(∂)` kills `g`.
pub fn annihilator_member(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    Ok(apply_diff_operator(f, g)?.is_zero())
}

/// Dimension of the span of `g` and all its iterated partial derivatives.
pub fn derivative_span_dimension(g: &Polynomial) -> Result<usize> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let order = TermOrder::Grevlex;
    // echelon rows keyed by leading monomial
    let mut pivots: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    let insert = |p: &Polynomial, pivots: &mut BTreeMap<Monomial, Polynomial>| -> bool {
        let mut p = p.clone();
        loop {
            let Some((m, c)) = p.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())) else {
                return false;
            };
            match pivots.get(&m) {
                Some(row) => p = &p - &row.scale(&c),
                None => {
                    pivots.insert(m, p.scale(&c.recip()));
                    return true;
                }
            }
        }
    };
    let mut frontier = vec![g.clone()];
    insert(g, &mut pivots);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for i in 0..f.nvars() {
                let d = f.partial_derivative(i);
                if insert(&d, &mut pivots) {
                    next.push(d);
                }
            }
        }
        frontier = next;
    }
    Ok(pivots.len())
}

/// Checks `g` against generators of a presentation of a `dim`-dimensional algebra.
pub fn verify_against(
    gens: &[Polynomial],
    g: &Polynomial,
    dim: usize,
) -> Result<InverseSystemCandidate> {
    let mut failing = None;
    for (i, f) in gens.iter().enumerate() {
        if !annihilator_member(f, g)? {
            failing = Some(i);
            break;
        }
    }
    let span = if g.is_zero() {
        0
    } else {
        derivative_span_dimension(g)?
    };
    Ok(InverseSystemCandidate {
        polynomial: g.clone(),
        failing_generator: failing,
        span_dimension: span,
        algebra_dimension: dim,
    })
}

pub fn verify_inverse_system(
    a: &QuotientAlgebra,
    g: &Polynomial,
) -> Result<InverseSystemCandidate> {
    if g.nvars() != a.vars().len() {
        return Err(Error::DimensionMismatch {
            expected: a.vars().len(),
            found: g.nvars(),
        });
    }
    verify_against(a.generators(), g, a.dim())
}

/// Generators of the kernel of `Q[y1..yk] → A`, `y_i ↦ e_i`.
///
/// Every monomial of degree above the nil-index maps to zero, so the kernel
/// is generated by those together with the linear relations among the
/// images of monomials of degree up to the nil-index.
pub fn relation_ideal(a: &QuotientAlgebra, l: &[Vector]) -> Result<Vec<Polynomial>> {
    let nu = a.filtration_spaces()?.len() as u32;
    let k = l.len();
    let yv = fresh_vars(k);
    let mut monos: Vec<Monomial> = Vec::new();
    let mut images: Vec<Vector> = Vec::new();
    let mut top: Vec<Monomial> = Vec::new();
    // enumerate by degree, reusing images of lower degree
    let mut layer: Vec<(Monomial, Vector)> = vec![(Monomial::one(k), a.unit())];
    for deg in 0..=nu + 1 {
        if deg > 0 {
            let mut next: BTreeMap<Monomial, Vector> = BTreeMap::new();
            for (m, v) in &layer {
                let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
                for (i, li) in l.iter().enumerate().skip(last) {
                    let nm = m.mul(&Monomial::var(k, i));
                    next.entry(nm).or_insert_with(|| a.mul(v, li));
                }
            }
            layer = next.into_iter().collect();
        }
        if deg == nu + 1 {
            top = layer.iter().map(|(m, _)| m.clone()).collect();
        } else {
            for (m, v) in &layer {
                monos.push(m.clone());
                images.push(v.clone());
            }
        }
    }
    let mat = Matrix::from_columns(&images, a.dim());
    let mut gens: Vec<Polynomial> = mat
        .kernel()
        .into_iter()
        .map(|v| Polynomial::from_terms(yv.clone(), monos.iter().cloned().zip(v)))
        .collect();
    gens.extend(
        top.into_iter()
            .map(|m| Polynomial::monomial(yv.clone(), m, Scalar::one())),
    );
    gens.retain(|g| !g.is_zero());
    Ok(gens)
}

/// Whether `l` is exactly the list of variable images, so that the
/// algebra's own presentation applies.
pub fn is_variable_complement(a: &QuotientAlgebra, l: &[Vector]) -> bool {
    l.len() == a.vars().len() && l.iter().zip(a.var_images()).all(|(e, x)| e == x)
}

/// Extracts `Q` for `l` and verifies it against the matching presentation.
pub fn extract_and_verify(
    a: &QuotientAlgebra,
    p: &NilPolynomial,
    l: &[Vector],
) -> Result<InverseSystemCandidate> {
    let q = restrict_nil_polynomial(a, p, l)?;
    if is_variable_complement(a, l) {
        let q = q.with_vars(a.vars().clone())?;
        verify_inverse_system(a, &q)
    } else {
        verify_against(&relation_ideal(a, l)?, &q, a.dim())
    }
}
