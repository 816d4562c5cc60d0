//! Finite-dimensional quotients `Q[x1..xk]/I` as structure-constant algebras.
//!
//! Elements are coordinate vectors in the algebra basis `b0 = 1, b1, ...`.
//! By default the basis is the standard monomials of the Gröbner basis in
//! increasing term order; a custom basis can be supplied instead, in which
//! case every coordinate the crate reports is expressed in it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::linalg::{dot, is_zero_vec, span_basis, span_rank};
use crate::polycore::{
    groebner_basis, GroebnerBasis, Matrix, Monomial, Polynomial, Scalar, TermOrder, Vector,
};

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    standard: Vec<Monomial>,
    basis: Vec<Polynomial>,
    /// column j = standard-monomial coordinates of basis element j
    to_standard: Matrix,
    from_standard: Matrix,
    /// `table[i][j]` = coordinates of `b_i * b_j`
    table: Vec<Vec<Vector>>,
    var_images: Vec<Vector>,
    custom: bool,
    /// basis elements as supplied (custom bases are not reduced here)
    labels: Vec<Polynomial>,
}

pub fn build_quotient_algebra(
    gens: &[Polynomial],
    order: &TermOrder,
    custom_basis: Option<&[Polynomial]>,
) -> Result<QuotientAlgebra> {
    let gb = groebner_basis(gens, order)?;
    if gb.is_unit_ideal() {
        return Err(Error::ImproperIdeal);
    }
    let standard = gb.standard_monomials()?;
    let d = standard.len();
    let vars = gb.vars().clone();
    let index: BTreeMap<&Monomial, usize> =
        standard.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let std_coords = |p: &Polynomial| -> Vector {
        let nf = gb.normal_form(p);
        let mut v = vec![Scalar::zero(); d];
        for (m, c) in nf.terms() {
            v[index[m]] = c.clone();
        }
        v
    };

    let (basis, to_standard) = match custom_basis {
        None => {
            let basis: Vec<Polynomial> = standard
                .iter()
                .map(|m| Polynomial::monomial(vars.clone(), m.clone(), Scalar::one()))
                .collect();
            (basis, Matrix::identity(d))
        }
        Some(cb) => {
            if cb.len() > d {
                return Err(Error::InvalidBasis(format!(
                    "{} elements given for a {d}-dimensional quotient",
                    cb.len()
                )));
            }
            let cols: Vec<Vector> = cb.iter().map(&std_coords).collect();
            let rank = span_rank(&cols);
            if rank < d {
                return Err(Error::SingularBasis { rank, dim: d });
            }
            let mut unit = vec![Scalar::zero(); d];
            unit[0] = Scalar::one();
            if cols[0] != unit {
                return Err(Error::InvalidBasis("first element must reduce to 1".into()));
            }
            if let Some(k) = (1..d).find(|&k| !cols[k][0].is_zero()) {
                return Err(Error::InvalidBasis(format!(
                    "element {k} has a nonzero constant term"
                )));
            }
            let basis = cb.iter().map(|p| gb.normal_form(p)).collect();
            (basis, Matrix::from_columns(&cols, d))
        }
    };
    let from_standard = to_standard
        .inverse()
        .ok_or(Error::SingularBasis { rank: 0, dim: d })?;

    let coords = |p: &Polynomial| from_standard.mul_vec(&std_coords(p));
    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in i..d {
            let v = coords(&(&basis[i] * &basis[j]));
            table[j][i] = v.clone();
            table[i][j] = v;
        }
    }
    let var_images = (0..vars.len())
        .map(|i| coords(&Polynomial::var(vars.clone(), i)))
        .collect();
    Ok(QuotientAlgebra {
        gb,
        standard,
        to_standard,
        from_standard,
        table,
        var_images,
        custom: custom_basis.is_some(),
        labels: custom_basis.map_or_else(|| basis.clone(), <[Polynomial]>::to_vec),
        basis,
    })
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.gb.generators()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.gb.vars()
    }

    pub fn order(&self) -> &TermOrder {
        self.gb.order()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    /// Basis elements as normal-form polynomials.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn has_custom_basis(&self) -> bool {
        self.custom
    }

    pub fn structure_constants(&self) -> &[Vec<Vector>] {
        &self.table
    }

    pub fn unit(&self) -> Vector {
        self.basis_vector(0)
    }

    pub fn zero(&self) -> Vector {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = Scalar::one();
        v
    }

    pub fn var_image(&self, i: usize) -> &Vector {
        &self.var_images[i]
    }

    pub fn var_images(&self) -> &[Vector] {
        &self.var_images
    }

    /// Coordinates of the class of `p`.
    pub fn coords_of(&self, p: &Polynomial) -> Result<Vector> {
        if p.vars() != self.vars() {
            return Err(Error::VariableMismatch {
                left: self.vars().to_vec(),
                right: p.vars().to_vec(),
            });
        }
        let nf = self.gb.normal_form(p);
        let mut v = self.zero();
        for (m, c) in nf.terms() {
            let k = self
                .standard
                .iter()
                .position(|s| s == m)
                .expect("normal form is supported on standard monomials");
            v[k] = c.clone();
        }
        Ok(self.from_standard.mul_vec(&v))
    }

    /// Normal-form polynomial representing `v`.
    pub fn element_poly(&self, v: &[Scalar]) -> Polynomial {
        let s = self.to_standard.mul_vec(v);
        Polynomial::from_terms(self.vars().clone(), self.standard.iter().cloned().zip(s))
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (ai, row) in a.iter().zip(&self.table) {
            if ai.is_zero() {
                continue;
            }
            for (bj, prod) in b.iter().zip(row) {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (o, c) in out.iter_mut().zip(prod) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[Scalar], e: u32) -> Vector {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Matrix of `v -> a v`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&cols, self.dim())
    }

    /// Coefficient of `1` in the standard-monomial expansion; for local
    /// algebras this is the residue modulo the maximal ideal.
    pub fn constant_part(&self, v: &[Scalar]) -> Scalar {
        // b_i has no constant term for i >= 1 in every admitted basis
        v[0].clone()
    }

    pub fn in_maximal_ideal(&self, v: &[Scalar]) -> bool {
        self.constant_part(v).is_zero()
    }

    /// Leading monomial of each basis element, used to rank basis elements.
    pub fn basis_leading_monomial(&self, i: usize) -> Monomial {
        self.basis[i]
            .leading_term(self.order())
            .map(|(m, _)| m.clone())
            .unwrap_or_else(|| Monomial::one(self.vars().len()))
    }

    /// Basis elements as written by the caller.
    pub fn basis_labels(&self) -> Vec<String> {
        self.labels
            .iter()
            .map(|p| p.display_with(self.order()).to_string())
            .collect()
    }

    /// `Σ v_i b_i` with each `b_i` as written by the caller, unreduced.
    pub fn lift(&self, v: &[Scalar]) -> Polynomial {
        let mut out = Polynomial::zero(self.vars().clone());
        for (c, b) in v.iter().zip(&self.labels) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    pub fn is_nilpotent(&self, a: &[Scalar]) -> bool {
        let d = self.dim();
        let mut p = a.to_vec();
        let mut e = 1usize;
        while e < d {
            p = self.mul(&p, &p);
            e *= 2;
        }
        is_zero_vec(&p)
    }

    /// Basis of `m^1 ⊃ m^2 ⊃ ... ⊃ m^ν` (the nonzero powers only).
    pub fn filtration_spaces(&self) -> Result<Vec<Vec<Vector>>> {
        self.check_local()?;
        let m1: Vec<Vector> = (1..self.dim()).map(|i| self.basis_vector(i)).collect();
        let mut out = vec![span_basis(&m1)];
        loop {
            let last = out.last().unwrap();
            let next: Vec<Vector> = last
                .iter()
                .flat_map(|v| self.var_images.iter().map(move |x| (v, x)))
                .map(|(v, x)| self.mul(v, x))
                .filter(|v| !is_zero_vec(v))
                .collect();
            let basis = span_basis(&next);
            if basis.is_empty() {
                return Ok(out);
            }
            out.push(basis);
        }
    }

    fn check_local(&self) -> Result<()> {
        for (i, x) in self.var_images.iter().enumerate() {
            if !self.is_nilpotent(x) {
                return Err(Error::NotLocal {
                    var: self.vars()[i].clone(),
                });
            }
        }
        Ok(())
    }

    /// `{u in m : u x_i = 0 for all i}` as a row-reduced basis.
    pub fn socle(&self) -> Result<Vec<Vector>> {
        self.check_local()?;
        let d = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for x in &self.var_images {
            let mm = self.mult_matrix(x);
            for r in 0..d {
                rows.push(mm.row(r)[1..].to_vec());
            }
        }
        if d == 1 {
            return Ok(Vec::new());
        }
        let kernel = Matrix::from_rows(&rows).kernel();
        let mut basis: Vec<Vector> = kernel
            .into_iter()
            .map(|k| {
                let mut v = vec![Scalar::zero()];
                v.extend(k);
                v
            })
            .collect();
        basis = span_basis(&basis);
        Ok(basis)
    }

    /// Index of the basis element with the term-order-largest leading
    /// monomial among those where `v` is nonzero (ties go to the later index).
    pub fn distinguished_index(&self, v: &[Scalar]) -> Option<usize> {
        (0..self.dim())
            .filter(|&i| !v[i].is_zero())
            .max_by(|&a, &b| {
                self.order()
                    .cmp(
                        &self.basis_leading_monomial(a),
                        &self.basis_leading_monomial(b),
                    )
                    .then(a.cmp(&b))
            })
    }

    /// Gram matrix of `(a, b) -> ω(a b)` on the full basis.
    pub fn pairing_matrix(&self, functional: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = dot(functional, &self.table[i][j]);
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub dimension: usize,
    pub is_local: bool,
    pub maximal_ideal: Vec<Vector>,
    pub socle: Vec<Vector>,
    pub is_gorenstein: bool,
    pub nil_index: usize,
    pub embedding_dimension: usize,
    /// `dim m^i` for `i = 1..=nil_index`.
    pub filtration: Vec<usize>,
}

impl StructureReport {
    /// The socle generator scaled so its distinguished coordinate is 1.
    pub fn socle_generator(&self, a: &QuotientAlgebra) -> Option<Vector> {
        if self.socle.len() != 1 {
            return None;
        }
        let s = &self.socle[0];
        let k = a.distinguished_index(s)?;
        let inv = s[k].recip();
        Some(s.iter().map(|x| x * &inv).collect())
    }
}

pub fn structure_report(a: &QuotientAlgebra) -> Result<StructureReport> {
    let spaces = a.filtration_spaces()?;
    let socle = a.socle()?;
    let d = a.dim();
    let filtration: Vec<usize> = if d == 1 {
        Vec::new()
    } else {
        spaces.iter().map(|s| s.len()).collect()
    };
    let nil_index = filtration.len();
    let embedding_dimension = match filtration.as_slice() {
        [] => 0,
        [m1] => *m1,
        [m1, m2, ..] => m1 - m2,
    };
    Ok(StructureReport {
        dimension: d,
        is_local: true,
        maximal_ideal: if d == 1 {
            Vec::new()
        } else {
            spaces[0].clone()
        },
        is_gorenstein: d > 1 && socle.len() == 1,
        socle,
        nil_index,
        embedding_dimension,
        filtration,
    })
}

pub fn power_filtration(a: &QuotientAlgebra) -> Result<Vec<usize>> {
    Ok(structure_report(a)?.filtration)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    pub weights: Vec<u32>,
    /// weighted degree -> dimension of that graded piece
    pub dims: BTreeMap<u64, usize>,
}

/// Checks that every generator is weighted-homogeneous and returns the
/// dimensions of the induced grading.
pub fn check_grading(a: &QuotientAlgebra, weights: &[u32]) -> Result<GradingData> {
    let n = a.vars().len();
    if weights.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: weights.len(),
        });
    }
    if weights.contains(&0) {
        return Err(Error::Input("grading weights must be positive".into()));
    }
    for g in a.generators() {
        if !g.is_weighted_homogeneous(weights) {
            return Err(Error::NotHomogeneous {
                generator: g.display_with(a.order()).to_string(),
            });
        }
    }
    // the reduced basis of a weighted-homogeneous ideal is weighted-homogeneous,
    // so the standard monomials split the quotient into graded pieces
    let mut dims = BTreeMap::new();
    for m in a.standard_monomials() {
        *dims.entry(m.weighted_degree(weights)).or_insert(0) += 1;
    }
    Ok(GradingData {
        weights: weights.to_vec(),
        dims,
    })
}

/// Positive integer weights making every generator weighted-homogeneous,
/// if the space of such weights is a single ray or contains `(1, ..., 1)`.
pub fn find_grading_weights(a: &QuotientAlgebra) -> Option<Vec<u32>> {
    let n = a.vars().len();
    let mut rows: Vec<Vector> = Vec::new();
    for g in a.generators() {
        let monos: Vec<&Monomial> = g.terms().map(|(m, _)| m).collect();
        for m in monos.iter().skip(1) {
            rows.push(
                (0..n)
                    .map(|i| {
                        Scalar::from_integer(
                            (i64::from(m.exponents()[i]) - i64::from(monos[0].exponents()[i]))
                                .into(),
                        )
                    })
                    .collect(),
            );
        }
    }
    let ones = vec![1u32; n];
    if rows.is_empty() {
        return Some(ones);
    }
    let kernel = Matrix::from_rows(&rows).kernel();
    let all_ones: Vector = vec![Scalar::one(); n];
    if rows.iter().all(|r| dot(r, &all_ones).is_zero()) {
        return Some(ones);
    }
    let [ray] = kernel.as_slice() else {
        return None;
    };
    let positive = ray.iter().all(|x| x > &Scalar::zero());
    let negative = ray.iter().all(|x| x < &Scalar::zero());
    if !positive && !negative {
        return None;
    }
    let lcm = ray.iter().fold(num_bigint::BigInt::one(), |acc, x| {
        num_integer::lcm(acc, x.denom().clone())
    });
    let ints: Vec<num_bigint::BigInt> = ray
        .iter()
        .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| {
        num_integer::gcd(acc, x.clone())
    });
    ints.iter()
        .map(|x| u32::try_from(num_traits::Signed::abs(&(x / &g))).ok())
        .collect()
}
