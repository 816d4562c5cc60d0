//! Isomorphism of Gorenstein algebras through their nil-polynomials.
//!
//! Two algebras are isomorphic when their hypersurfaces are linearly
//! equivalent, i.e. when `c·P(α) = P̃(Cα)` for an invertible `C` and a
//! nonzero `c`. When both algebras carry a non-negative grading the converse
//! holds for every choice of projections, so an inconsistent system of
//! coefficient equations refutes isomorphism.
//!
//! The unknowns are the entries of `C` allowed by the power filtration
//! (a linear equivalence is an algebra isomorphism and so preserves every
//! `m^i`), the scale `c` and an inverse witness `w` with `c·w = 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{check_grading, find_grading_weights, structure_report, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::nilpoly::{nil_polynomial, AdmissibleProjection};
use crate::polycore::linalg::span_basis;
use crate::polycore::{
    groebner_basis_bounded, var_list, Budget, Matrix, Monomial, Polynomial, Scalar, TermOrder,
    Vector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dimension: usize,
    pub nil_index: usize,
    pub embedding_dimension: usize,
    pub filtration: Vec<usize>,
    pub graded: bool,
    /// For `m = 2..=ν`, the rank of the span of the first partials of
    /// `P^[m]`. Invariant under `P ↦ c·P∘C`, so only meaningful (and only
    /// computed) for graded algebras, where any two projections give
    /// linearly equivalent nil-polynomials.
    pub partial_ranks: Option<Vec<usize>>,
}

/// Weights under which `a` is graded: the given ones if they work,
/// otherwise detected ones.
pub fn grading_weights(a: &QuotientAlgebra, weights: Option<&[u32]>) -> Option<Vec<u32>> {
    match weights {
        Some(w) => check_grading(a, w).ok().map(|g| g.weights),
        None => find_grading_weights(a).filter(|w| check_grading(a, w).is_ok()),
    }
}

pub fn invariant_fingerprint(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    weights: Option<&[u32]>,
) -> Result<Fingerprint> {
    let r = structure_report(a)?;
    if !r.is_gorenstein {
        return Err(Error::NotGorenstein {
            socle_dim: r.socle.len(),
            dim: a.dim(),
        });
    }
    let graded = grading_weights(a, weights).is_some();
    let partial_ranks = if graded {
        let p = nil_polynomial(a, pi)?;
        Some(
            (2..=r.nil_index as u32)
                .map(|m| partial_rank(&p.component(m)))
                .collect(),
        )
    } else {
        None
    };
    Ok(Fingerprint {
        dimension: r.dimension,
        nil_index: r.nil_index,
        embedding_dimension: r.embedding_dimension,
        filtration: r.filtration,
        graded,
        partial_ranks,
    })
}

fn partial_rank(p: &Polynomial) -> usize {
    let partials: Vec<Polynomial> = (0..p.nvars()).map(|i| p.partial_derivative(i)).collect();
    let monos: BTreeSet<&Monomial> = partials
        .iter()
        .flat_map(|q| q.terms().map(|(m, _)| m))
        .collect();
    let monos: Vec<&Monomial> = monos.into_iter().collect();
    let rows: Vec<Vector> = partials
        .iter()
        .map(|q| monos.iter().map(|m| q.coefficient(m)).collect())
        .collect();
    if monos.is_empty() {
        return 0;
    }
    span_basis(&rows).len()
}

/// Describes the first difference between two fingerprints, if any.
pub fn fingerprint_mismatch(f: &Fingerprint, g: &Fingerprint) -> Option<String> {
    if f.dimension != g.dimension {
        return Some(format!("dimension {} vs {}", f.dimension, g.dimension));
    }
    if f.nil_index != g.nil_index {
        return Some(format!("nil-index {} vs {}", f.nil_index, g.nil_index));
    }
    if f.embedding_dimension != g.embedding_dimension {
        return Some(format!(
            "embedding dimension {} vs {}",
            f.embedding_dimension, g.embedding_dimension
        ));
    }
    if f.filtration != g.filtration {
        return Some(format!(
            "filtration {:?} vs {:?}",
            f.filtration, g.filtration
        ));
    }
    if let (Some(a), Some(b)) = (&f.partial_ranks, &g.partial_ranks) {
        if a != b {
            return Some(format!("partial-derivative ranks {a:?} vs {b:?}"));
        }
    }
    None
}

/// `α̃ = Cα` on the kernels, `α̃_{n+1} = c·α_{n+1}` on the socle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCandidate {
    pub matrix: Matrix,
    pub scale: Scalar,
    pub substitution: Option<Vec<Polynomial>>,
}

impl EquivalenceCandidate {
    pub fn new(matrix: Matrix, scale: Scalar) -> Self {
        EquivalenceCandidate {
            matrix,
            scale,
            substitution: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n), Scalar::one())
    }
}

/// Whether `c·P = P̃∘C` exactly.
pub fn check_nil_equivalence(
    p: &Polynomial,
    pt: &Polynomial,
    cand: &EquivalenceCandidate,
) -> Result<bool> {
    let n = p.nvars();
    if pt.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pt.nvars(),
        });
    }
    if cand.matrix.nrows() != n || cand.matrix.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cand.matrix.nrows(),
        });
    }
    if cand.scale.is_zero() {
        return Err(Error::ZeroScale);
    }
    if n > 0 && cand.matrix.determinant().is_zero() {
        return Err(Error::SingularC);
    }
    let moved = pt
        .with_vars(p.vars().clone())?
        .substitute_linear(&cand.matrix.to_rows())?;
    Ok(moved == p.scale(&cand.scale))
}

pub fn verify_linear_equivalence(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    at: &QuotientAlgebra,
    pit: &AdmissibleProjection,
    cand: &EquivalenceCandidate,
) -> Result<bool> {
    if a.dim() != at.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: at.dim(),
        });
    }
    let p = nil_polynomial(a, pi)?;
    let pt = nil_polynomial(at, pit)?;
    check_nil_equivalence(p.polynomial(), pt.polynomial(), cand)
}

/// The linear map `A → Ã` of a candidate: `1 ↦ 1`, `K → K̃` by `C`,
/// socle by `c`; columns are images of the basis of `A`.
pub fn induced_map(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    at: &QuotientAlgebra,
    pit: &AdmissibleProjection,
    cand: &EquivalenceCandidate,
) -> Result<Matrix> {
    let mut cols = vec![at.unit()];
    for l in 1..a.dim() {
        let (alpha, t) = pi.decompose(&a.basis_vector(l))?;
        let mut img = pit.k_element(&cand.matrix.mul_vec(&alpha));
        let st = &cand.scale * &t;
        for (o, s) in img.iter_mut().zip(pit.socle()) {
            *o += &st * s;
        }
        cols.push(img);
    }
    Ok(Matrix::from_columns(&cols, at.dim()))
}

fn check_substitution(
    a: &QuotientAlgebra,
    at: &QuotientAlgebra,
    subst: &[Polynomial],
) -> Result<()> {
    if subst.len() != a.vars().len() {
        return Err(Error::DimensionMismatch {
            expected: a.vars().len(),
            found: subst.len(),
        });
    }
    for s in subst {
        if s.vars() != at.vars() {
            return Err(Error::VariableMismatch {
                left: at.vars().to_vec(),
                right: s.vars().to_vec(),
            });
        }
    }
    Ok(())
}

/// Matrix of the algebra map `x_i ↦ subst[i]` on basis coordinates.
fn morphism_matrix(
    a: &QuotientAlgebra,
    at: &QuotientAlgebra,
    subst: &[Polynomial],
) -> Result<Matrix> {
    let cols: Vec<Vector> = a
        .basis()
        .iter()
        .map(|b| at.coords_of(&b.compose(subst)?))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(&cols, at.dim()))
}

/// Whether `x_i ↦ subst[i]` defines an isomorphism `A → Ã`.
pub fn verify_algebra_morphism(
    a: &QuotientAlgebra,
    at: &QuotientAlgebra,
    subst: &[Polynomial],
) -> Result<bool> {
    check_substitution(a, at, subst)?;
    for g in a.generators() {
        if !at.coords_of(&g.compose(subst)?)?.iter().all(Zero::is_zero) {
            return Ok(false);
        }
    }
    if a.dim() != at.dim() {
        return Ok(false);
    }
    Ok(morphism_matrix(a, at, subst)?.rank() == a.dim())
}

/// The candidate induced by an isomorphism `φ` whose transport of `π̃` is a
/// multiple of `π` (so that `φ` is block diagonal).
pub fn candidate_from_morphism(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    at: &QuotientAlgebra,
    pit: &AdmissibleProjection,
    subst: &[Polynomial],
) -> Result<EquivalenceCandidate> {
    check_substitution(a, at, subst)?;
    let phi = morphism_matrix(a, at, subst)?;
    let pulled = phi.transpose().mul_vec(pit.omega());
    let lambda = crate::polycore::linalg::dot(&pulled, pi.socle());
    let expected: Vector = pi.omega().iter().map(|x| x * &lambda).collect();
    if lambda.is_zero() || pulled != expected {
        return Err(Error::NotBlockDiagonal);
    }
    let n = pi.rank();
    let mut c = Matrix::zeros(n, n);
    for (i, k) in pi.kernel_basis().iter().enumerate() {
        let (alpha, _) = pit.decompose(&phi.mul_vec(k))?;
        for (j, x) in alpha.into_iter().enumerate() {
            c[(j, i)] = x;
        }
    }
    Ok(EquivalenceCandidate {
        matrix: c,
        scale: lambda,
        substitution: Some(subst.to_vec()),
    })
}

/// Polynomial equations in the entries of `C`, `c` and `w`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    /// names of the unknowns: free entries `C<row>_<col>`, then `c`, then `w`
    pub unknowns: Arc<[String]>,
    pub equations: Vec<Polynomial>,
    /// degree of `P` each equation came from (`0` for `c·w = 1`)
    pub equation_degrees: Vec<u32>,
    pub degrees: Vec<u32>,
    /// rows forced to a multiple of a unit vector by pure-power components
    pub forced_rows: Vec<(u32, usize, usize)>,
    /// whether refutations are sound (both algebras graded)
    pub graded: bool,
    n: usize,
    /// `C[j][l]` as a polynomial in the unknowns (linear, no constant)
    entries: Vec<Vec<Polynomial>>,
    /// (row, col) of the entry each parameter was freed at
    param_entry: Vec<(usize, usize)>,
    source: Polynomial,
    target: Polynomial,
}

impl ConstraintSystem {
    pub fn parameter_count(&self) -> usize {
        self.param_entry.len()
    }

    fn scale_var(&self) -> usize {
        self.param_entry.len()
    }

    fn witness_var(&self) -> usize {
        self.param_entry.len() + 1
    }
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e} = 0")?;
        }
        Ok(())
    }
}

/// Bases of `K ∩ m^i` in `α`-coordinates, for `i = 1..=ν`.
fn kernel_filtration(a: &QuotientAlgebra, pi: &AdmissibleProjection) -> Result<Vec<Vec<Vector>>> {
    let mut out = Vec::new();
    for space in a.filtration_spaces()? {
        let basis = Matrix::from_columns(&space, a.dim());
        let omega_row = Matrix::from_rows(&[basis.transpose().mul_vec(pi.omega())]);
        let mut inside = Vec::new();
        for x in omega_row.kernel() {
            let (alpha, _) = pi.decompose(&basis.mul_vec(&x))?;
            inside.push(alpha);
        }
        out.push(span_basis(&inside));
    }
    Ok(out)
}

fn pure_power(p: &Polynomial) -> Option<usize> {
    let mut terms = p.terms();
    let (m, _) = terms.next()?;
    if terms.next().is_some() {
        return None;
    }
    m.pure_power().map(|(i, _)| i)
}

pub fn equivalence_constraint_system(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    at: &QuotientAlgebra,
    pit: &AdmissibleProjection,
    degrees: &[u32],
) -> Result<ConstraintSystem> {
    let f = invariant_fingerprint(a, pi, None)?;
    let ft = invariant_fingerprint(at, pit, None)?;
    if let Some(why) = fingerprint_mismatch(&f, &ft) {
        return Err(Error::FingerprintMismatch(why));
    }
    let nu = f.nil_index as u32;
    if let Some(&bad) = degrees.iter().find(|&&m| m < 2 || m > nu) {
        return Err(Error::DegreeOutOfRange {
            degree: bad as usize,
            max: nu as usize,
        });
    }
    let p = nil_polynomial(a, pi)?.polynomial().clone();
    let pt = nil_polynomial(at, pit)?.polynomial().clone();
    let n = pi.rank();

    // linear constraints on the n² entries of C
    let mut rows: Vec<Vector> = Vec::new();
    let src = kernel_filtration(a, pi)?;
    let tgt = kernel_filtration(at, pit)?;
    for (s, t) in src.iter().zip(&tgt) {
        let ann: Vec<Vector> = if t.is_empty() {
            (0..n).map(|j| unit(n, j)).collect()
        } else {
            Matrix::from_rows(t).kernel()
        };
        for v in s {
            for phi in &ann {
                let mut row = vec![Scalar::zero(); n * n];
                for j in 0..n {
                    for l in 0..n {
                        if !phi[j].is_zero() && !v[l].is_zero() {
                            row[j * n + l] = &phi[j] * &v[l];
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut forced_rows = Vec::new();
    let mut degrees: Vec<u32> = degrees.to_vec();
    degrees.sort_unstable_by(|x, y| y.cmp(x));
    degrees.dedup();
    for &m in &degrees {
        if let (Some(j), Some(k)) = (
            pure_power(&p.homogeneous_component(m)),
            pure_power(&pt.homogeneous_component(m)),
        ) {
            forced_rows.push((m, k, j));
            for l in (0..n).filter(|&l| l != j) {
                rows.push(unit(n * n, k * n + l));
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..n * n).map(|i| unit(n * n, i)).collect()
    } else {
        Matrix::from_rows(&rows).kernel()
    };
    let param_entry: Vec<(usize, usize)> = kernel
        .iter()
        .map(|v| {
            // the free column is the last nonzero entry with value 1 from `kernel`
            let f = (0..n * n)
                .rev()
                .find(|&i| v[i].is_one() && kernel.iter().filter(|w| !w[i].is_zero()).count() == 1)
                .expect("kernel vectors carry a unit in their free column");
            (f / n, f % n)
        })
        .collect();
    let mut names: Vec<String> = param_entry
        .iter()
        .map(|(j, l)| format!("C{}_{}", j + 1, l + 1))
        .collect();
    names.push("c".into());
    names.push("w".into());
    let unknowns = var_list(&names);
    let nu_vars = names.len();
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|l| {
                    Polynomial::from_terms(
                        unknowns.clone(),
                        kernel
                            .iter()
                            .enumerate()
                            .map(|(t, v)| (Monomial::var(nu_vars, t), v[j * n + l].clone())),
                    )
                })
                .collect()
        })
        .collect();

    let mut sys = ConstraintSystem {
        unknowns: unknowns.clone(),
        equations: Vec::new(),
        equation_degrees: Vec::new(),
        degrees: degrees.clone(),
        forced_rows,
        graded: f.graded && ft.graded,
        n,
        entries,
        param_entry,
        source: p,
        target: pt,
    };
    let c = Polynomial::var(unknowns.clone(), sys.scale_var());
    let w = Polynomial::var(unknowns.clone(), sys.witness_var());
    sys.equations
        .push(&(&c * &w) - &Polynomial::one(unknowns.clone()));
    sys.equation_degrees.push(0);
    for &m in &degrees {
        for e in degree_equations(&sys.source, &sys.target, m, &sys.entries, &c) {
            sys.equations.push(e);
            sys.equation_degrees.push(m);
        }
    }
    Ok(sys)
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Coefficients of `P̃^[m](Cα) − c·P^[m](α)`, as polynomials in the unknowns.
fn degree_equations(
    p: &Polynomial,
    pt: &Polynomial,
    m: u32,
    entries: &[Vec<Polynomial>],
    c: &Polynomial,
) -> Vec<Polynomial> {
    let n = p.nvars();
    let ring = c.vars().clone();
    let alpha_var: Vec<Monomial> = (0..n).map(|i| Monomial::var(n, i)).collect();
    let mut total: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (tm, tc) in pt.homogeneous_component(m).terms() {
        let mut partial: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        partial.insert(
            Monomial::one(n),
            Polynomial::constant(ring.clone(), tc.clone()),
        );
        for (j, &e) in tm.exponents().iter().enumerate() {
            for _ in 0..e {
                let mut next: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
                for (am, poly) in &partial {
                    for (l, entry) in entries[j].iter().enumerate() {
                        if entry.is_zero() {
                            continue;
                        }
                        let key = am.mul(&alpha_var[l]);
                        let prod = poly * entry;
                        next.entry(key)
                            .and_modify(|acc| *acc = &*acc + &prod)
                            .or_insert(prod);
                    }
                }
                partial = next;
            }
        }
        for (am, poly) in partial {
            total
                .entry(am)
                .and_modify(|acc| *acc = &*acc + &poly)
                .or_insert(poly);
        }
    }
    for (sm, sc) in p.homogeneous_component(m).terms() {
        let prod = c.scale(sc);
        total
            .entry(sm.clone())
            .and_modify(|acc| *acc = &*acc - &prod)
            .or_insert_with(|| -&prod);
    }
    total.into_values().filter(|e| !e.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfiability {
    /// the equations from these degrees generate the unit ideal
    Infeasible {
        degrees: Vec<u32>,
    },
    Witness(EquivalenceCandidate),
    Unknown(String),
}

/// Limits on the solver.
#[derive(Clone, Copy, Debug)]
pub struct SolverBudget {
    /// reductions per Gröbner basis call during refutation
    pub groebner_reductions: usize,
    /// equations tried when growing refutation subsets
    pub refutation_equations: usize,
    /// equations with more unknowns are left out of refutation subsets
    pub refutation_max_unknowns: usize,
    /// search nodes during witness search
    pub search_nodes: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            groebner_reductions: 4000,
            refutation_equations: 60,
            refutation_max_unknowns: 8,
            search_nodes: 20_000,
        }
    }
}

pub fn decide_constraint_satisfiability(sys: &ConstraintSystem) -> Satisfiability {
    decide_with_budget(sys, SolverBudget::default())
}

pub fn decide_with_budget(sys: &ConstraintSystem, budget: SolverBudget) -> Satisfiability {
    if sys.graded {
        if let Some(degrees) = refute(sys, &budget) {
            return Satisfiability::Infeasible { degrees };
        }
    }
    match search_witness(sys, &budget) {
        SearchOutcome::Found(cand) => Satisfiability::Witness(cand),
        SearchOutcome::Exhausted => Satisfiability::Unknown(if sys.graded {
            "no rational witness found and no refutation within the degree subset".into()
        } else {
            "no rational witness found; refutation needs a grading on both algebras".into()
        }),
        SearchOutcome::OutOfBudget => Satisfiability::Unknown("search budget exhausted".into()),
    }
}

fn unknowns_of(p: &Polynomial) -> BTreeSet<usize> {
    p.terms()
        .flat_map(|(m, _)| m.support().collect::<Vec<_>>())
        .collect()
}

/// Grows subsets of the equations (fewest unknowns first) and looks for
/// `1` in the ideal they generate.
fn refute(sys: &ConstraintSystem, budget: &SolverBudget) -> Option<Vec<u32>> {
    let mut order: Vec<usize> = (1..sys.equations.len())
        .filter(|&i| unknowns_of(&sys.equations[i]).len() <= budget.refutation_max_unknowns)
        .collect();
    order.sort_by_key(|&i| {
        let e = &sys.equations[i];
        (
            unknowns_of(e).len(),
            e.degree().finite().unwrap_or(0),
            e.len(),
            i,
        )
    });
    order.truncate(budget.refutation_equations);
    let mut basis: Vec<Polynomial> = vec![sys.equations[0].clone()];
    let mut used: Vec<usize> = Vec::new();
    for i in order {
        used.push(i);
        let mut gens = basis.clone();
        gens.push(sys.equations[i].clone());
        let b = Budget {
            max_reductions: budget.groebner_reductions,
        };
        match groebner_basis_bounded(&gens, &TermOrder::Grevlex, b) {
            Ok(Some(gb)) if gb.is_unit_ideal() => {
                let mut degrees: Vec<u32> = used.iter().map(|&k| sys.equation_degrees[k]).collect();
                degrees.extend(sys.forced_rows.iter().map(|r| r.0));
                degrees.sort_unstable_by(|x, y| y.cmp(x));
                degrees.dedup();
                return Some(degrees);
            }
            Ok(Some(gb)) => basis = gb.basis().to_vec(),
            // too expensive: keep the previous basis and skip this equation
            _ => {
                used.pop();
            }
        }
    }
    None
}

enum SearchOutcome {
    Found(EquivalenceCandidate),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    sys: &'a ConstraintSystem,
    nodes: usize,
    limit: usize,
    /// all degrees, highest first
    degrees: Vec<u32>,
}

#[derive(Clone)]
struct State {
    assign: Vec<Option<Scalar>>,
    equations: Vec<Polynomial>,
    next_degree: usize,
}

fn search_witness(sys: &ConstraintSystem, budget: &SolverBudget) -> SearchOutcome {
    let nu = sys.source.degree().finite().unwrap_or(0);
    let mut search = Search {
        sys,
        nodes: 0,
        limit: budget.search_nodes,
        degrees: (2..=nu).rev().collect(),
    };
    let state = State {
        assign: vec![None; sys.parameter_count() + 1],
        equations: Vec::new(),
        next_degree: 0,
    };
    match search.run(state) {
        Ok(Some(c)) => SearchOutcome::Found(c),
        Ok(None) => SearchOutcome::Exhausted,
        Err(()) => SearchOutcome::OutOfBudget,
    }
}

/// Substitutes `var := value` into `p`.
fn substitute(p: &Polynomial, var: usize, value: &Scalar) -> Polynomial {
    let mut out = Polynomial::zero(p.vars().clone());
    for (m, c) in p.terms() {
        let e = m.exponents()[var];
        if e == 0 {
            out.add_term(m.clone(), c.clone());
        } else {
            let mut exps = m.exponents().to_vec();
            exps[var] = 0;
            out.add_term(
                Monomial::from_exponents(exps),
                c * num_traits::pow(value.clone(), e as usize),
            );
        }
    }
    out
}

fn univariate_coefficients(p: &Polynomial, var: usize) -> Vec<Scalar> {
    let deg = p
        .terms()
        .map(|(m, _)| m.exponents()[var])
        .max()
        .unwrap_or(0) as usize;
    let mut coeffs = vec![Scalar::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exponents()[var] as usize] += c;
    }
    coeffs
}

/// Rational roots of `Σ coeffs[i] x^i`, or `None` if the coefficients are
/// too large to enumerate divisors.
fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| {
        num_integer::lcm(acc, c.denom().clone())
    });
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        roots.push(Scalar::zero());
    }
    let ints = &ints[low..];
    let deg = ints.len() - 1;
    if deg == 0 {
        return Some(roots);
    }
    let eval = |x: &Scalar| -> bool {
        let mut acc = Scalar::zero();
        for c in ints.iter().rev() {
            acc = acc * x + Scalar::from_integer(c.clone());
        }
        acc.is_zero()
    };
    // binomials a x^k + b: take an exact k-th root
    if ints[1..deg].iter().all(Zero::is_zero) {
        let q = Scalar::new(-ints[0].clone(), ints[deg].clone()).abs();
        let k = deg as u32;
        let r = Scalar::new(q.numer().nth_root(k), q.denom().nth_root(k));
        for cand in [r.clone(), -r] {
            if eval(&cand) && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
        roots.sort_by_key(|r| (r.is_negative(), r.abs()));
        return Some(roots);
    }
    let limit = BigInt::from(10u64).pow(12);
    if ints[0].abs() > limit || ints[deg].abs() > limit {
        return None;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut i = BigInt::one();
        while &i * &i <= n {
            if (&n % &i).is_zero() {
                out.push(i.clone());
                out.push(&n / &i);
            }
            i += 1;
        }
        out
    };
    for p in divisors(&ints[0]) {
        for q in divisors(&ints[deg]) {
            for cand in [
                Scalar::new(p.clone(), q.clone()),
                -Scalar::new(p.clone(), q.clone()),
            ] {
                if !roots.contains(&cand) && eval(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by_key(|r| (r.is_negative(), r.abs()));
    Some(roots)
}

enum Propagation {
    Conflict,
    Done(State),
}

impl Search<'_> {
    fn is_diagonal(&self, var: usize) -> bool {
        self.sys.param_entry.get(var).is_some_and(|(j, l)| j == l)
    }

    fn is_scale(&self, var: usize) -> bool {
        var == self.sys.scale_var()
    }

    fn preferred_values(&self, var: usize) -> Vec<Scalar> {
        let ints: &[(i64, i64)] = if self.is_scale(var) {
            &[(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
        } else if self.is_diagonal(var) {
            &[
                (1, 1),
                (-1, 1),
                (2, 1),
                (-2, 1),
                (1, 2),
                (-1, 2),
                (3, 1),
                (-3, 1),
            ]
        } else {
            &[(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1)]
        };
        ints.iter()
            .map(|&(n, d)| Scalar::new(n.into(), d.into()))
            .collect()
    }

    fn assign(&self, mut s: State, var: usize, value: Scalar) -> Option<State> {
        if self.is_scale(var) && value.is_zero() {
            return None;
        }
        s.equations = s
            .equations
            .iter()
            .map(|e| substitute(e, var, &value))
            .collect();
        s.assign[var] = Some(value);
        Some(s)
    }

    /// Assigns every unknown fixed by a univariate equation with a single
    /// rational root; drops satisfied equations.
    fn propagate(&self, mut s: State) -> Propagation {
        loop {
            let mut changed = false;
            let mut kept = Vec::with_capacity(s.equations.len());
            for e in std::mem::take(&mut s.equations) {
                if e.is_zero() {
                    continue;
                }
                if e.is_constant() {
                    return Propagation::Conflict;
                }
                kept.push(e);
            }
            s.equations = kept;
            for i in 0..s.equations.len() {
                let vars = unknowns_of(&s.equations[i]);
                if vars.len() != 1 {
                    continue;
                }
                let var = *vars.iter().next().unwrap();
                let coeffs = univariate_coefficients(&s.equations[i], var);
                let Some(roots) = rational_roots(&coeffs) else {
                    continue;
                };
                match roots.as_slice() {
                    [] => return Propagation::Conflict,
                    [r] => {
                        let Some(next) = self.assign(s.clone(), var, r.clone()) else {
                            return Propagation::Conflict;
                        };
                        s = next;
                        changed = true;
                        break;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Propagation::Done(s);
            }
        }
    }

    fn run(&mut self, s: State) -> std::result::Result<Option<EquivalenceCandidate>, ()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(());
        }
        let mut s = match self.propagate(s) {
            Propagation::Conflict => return Ok(None),
            Propagation::Done(s) => s,
        };
        while s.equations.is_empty() {
            if s.next_degree == self.degrees.len() {
                return Ok(self.finish(&s));
            }
            let m = self.degrees[s.next_degree];
            s.next_degree += 1;
            s.equations = self.equations_at(&s.assign, m);
            s = match self.propagate(s) {
                Propagation::Conflict => return Ok(None),
                Propagation::Done(s) => s,
            };
        }
        let (var, values) = self.branch_choice(&s);
        for v in values {
            if let Some(next) = self.assign(s.clone(), var, v) {
                if let Some(found) = self.run(next)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }

    fn branch_choice(&self, s: &State) -> (usize, Vec<Scalar>) {
        // a univariate equation with several roots: branch over its roots
        for e in &s.equations {
            let vars = unknowns_of(e);
            if vars.len() == 1 {
                let var = *vars.iter().next().unwrap();
                if let Some(r) = rational_roots(&univariate_coefficients(e, var)) {
                    return (var, r);
                }
            }
        }
        let e = s
            .equations
            .iter()
            .min_by_key(|e| (unknowns_of(e).len(), e.len()))
            .expect("nonempty");
        let var = unknowns_of(e)
            .into_iter()
            .max_by_key(|&v| {
                let deg = e.terms().map(|(m, _)| m.exponents()[v]).max().unwrap_or(0);
                (deg, self.is_diagonal(v), std::cmp::Reverse(v))
            })
            .expect("nonconstant equation");
        (var, self.preferred_values(var))
    }

    fn equations_at(&self, assign: &[Option<Scalar>], m: u32) -> Vec<Polynomial> {
        let sub = |p: &Polynomial| {
            assign
                .iter()
                .enumerate()
                .filter_map(|(i, v)| v.as_ref().map(|v| (i, v)))
                .fold(p.clone(), |acc, (i, v)| {
                    if acc.terms().any(|(mm, _)| mm.exponents()[i] > 0) {
                        substitute(&acc, i, v)
                    } else {
                        acc
                    }
                })
        };
        let entries: Vec<Vec<Polynomial>> = self
            .sys
            .entries
            .iter()
            .map(|row| row.iter().map(sub).collect())
            .collect();
        let c = sub(&Polynomial::var(
            self.sys.unknowns.clone(),
            self.sys.scale_var(),
        ));
        degree_equations(&self.sys.source, &self.sys.target, m, &entries, &c)
    }

    fn finish(&self, s: &State) -> Option<EquivalenceCandidate> {
        let n = self.sys.n;
        let mut values: Vec<Scalar> = Vec::with_capacity(s.assign.len());
        for (i, v) in s.assign.iter().enumerate() {
            values.push(match v {
                Some(v) => v.clone(),
                None if self.is_diagonal(i) || self.is_scale(i) => Scalar::one(),
                None => Scalar::zero(),
            });
        }
        values.push(Scalar::zero()); // w is not part of the search
        let scale = values[self.sys.scale_var()].clone();
        if let Some(w) = values.last_mut() {
            *w = scale.recip();
        }
        let mut c = Matrix::zeros(n, n);
        for j in 0..n {
            for l in 0..n {
                c[(j, l)] = self.sys.entries[j][l].eval(&values);
            }
        }
        let cand = EquivalenceCandidate::new(c, scale);
        match check_nil_equivalence(&self.sys.source, &self.sys.target, &cand) {
            Ok(true) => Some(cand),
            _ => None,
        }
    }
}

/// Final answer of an isomorphism check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct IsomorphismReport {
    pub verdict: Verdict,
    pub reason: String,
    pub fingerprints: (Fingerprint, Fingerprint),
    pub witness: Option<EquivalenceCandidate>,
    /// degrees whose equations refuted isomorphism
    pub refuting_degrees: Vec<u32>,
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct IsoOptions {
    /// degree subset for refutation; default `{ν, ν−1, ν−2}`
    pub degrees: Option<Vec<u32>>,
    pub weights: (Option<Vec<u32>>, Option<Vec<u32>>),
    pub budget: Option<SolverBudget>,
}

pub fn default_degrees(nu: u32) -> Vec<u32> {
    (nu.saturating_sub(2).max(2)..=nu).rev().collect()
}

/// Fingerprints, then refutation or witness search.
pub fn decide_isomorphism(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    at: &QuotientAlgebra,
    pit: &AdmissibleProjection,
    opts: &IsoOptions,
) -> Result<IsomorphismReport> {
    let f = invariant_fingerprint(a, pi, opts.weights.0.as_deref())?;
    let ft = invariant_fingerprint(at, pit, opts.weights.1.as_deref())?;
    let degrees = opts
        .degrees
        .clone()
        .unwrap_or_else(|| default_degrees(f.nil_index as u32));
    let mut report = IsomorphismReport {
        verdict: Verdict::Unknown,
        reason: String::new(),
        fingerprints: (f.clone(), ft.clone()),
        witness: None,
        refuting_degrees: Vec::new(),
        degrees: degrees.clone(),
    };
    if let Some(why) = fingerprint_mismatch(&f, &ft) {
        report.verdict = Verdict::NotIsomorphic;
        report.reason = format!("fingerprints differ: {why}");
        return Ok(report);
    }
    if f.dimension <= 2 {
        // nil-polynomials in at most one variable with equal shape
        report.verdict = Verdict::Isomorphic;
        report.reason = "same dimension and nil-index".into();
        return Ok(report);
    }
    let mut sys = equivalence_constraint_system(a, pi, at, pit, &degrees)?;
    sys.graded = f.graded && ft.graded;
    match decide_with_budget(&sys, opts.budget.unwrap_or_default()) {
        Satisfiability::Infeasible { degrees } => {
            report.verdict = Verdict::NotIsomorphic;
            report.reason = "coefficient equations are inconsistent".into();
            report.refuting_degrees = degrees;
        }
        Satisfiability::Witness(cand) => {
            if !verify_linear_equivalence(a, pi, at, pit, &cand)? {
                report.reason = "witness failed verification".into();
                return Ok(report);
            }
            report.verdict = Verdict::Isomorphic;
            report.reason = "verified linear equivalence of nil-polynomials".into();
            report.witness = Some(cand);
        }
        Satisfiability::Unknown(why) => report.reason = why,
    }
    Ok(report)
}
