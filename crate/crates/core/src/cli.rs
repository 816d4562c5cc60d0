//! Command-line front end: input files, dispatch and reports.
//!
//! An algebra file is a list of `key = value` lines; `#` starts a comment.
//!
//! ```text
//! vars    = x, y
//! gens    = 2*x^3 + x*y^3, x^2*y^2 + 2*y^5
//! order   = grevlex            # optional: grevlex | lex | weighted:3,2
//! basis   = 1, x, y, x^2, ...  # optional custom basis, b0 must be 1
//! weights = 3, 2               # optional grading weights
//! ```
//!
//! Reports are rendered as text or, with `--json`, as a single JSON object
//! whose field names and order are stable. Rationals are always strings
//! `"p/q"`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::algebra::{build_quotient_algebra, check_grading, structure_report, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::invsys::{
    default_complement, extract_and_verify, fresh_vars, is_variable_complement, relation_ideal,
    verify_inverse_system, InverseSystemCandidate,
};
use crate::isocheck::{
    candidate_from_morphism, check_nil_equivalence, decide_isomorphism, grading_weights,
    verify_algebra_morphism, verify_linear_equivalence, EquivalenceCandidate, Fingerprint,
    IsoOptions, Verdict,
};
use crate::nilpoly::{
    blaschke_data, default_projection, nil_polynomial, on_hypersurface, translate_projection,
    AdmissibleProjection, NilPolynomial,
};
use crate::polycore::scalar::{parse_scalar, to_fraction_string};
use crate::polycore::{parse_polynomial, var_list, Matrix, Polynomial, Scalar, TermOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 7;

#[derive(Debug, Parser)]
#[command(
    name = "gorenstein",
    version,
    about = "Artinian Gorenstein algebras over Q"
)]
pub struct Cli {
    /// Term order: grevlex, lex or weighted:W1,W2,...
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure of the quotient: dimension, socle, nil-index, filtration, grading
    Analyze { file: PathBuf },
    /// Nil-polynomial of the default projection and its Blaschke data
    Nilpoly {
        file: PathBuf,
        /// File with a custom basis (comma- or newline-separated polynomials)
        #[arg(long)]
        basis_file: Option<PathBuf>,
        /// Translate the projection by this element of the maximal ideal
        #[arg(long)]
        translate: Option<String>,
    },
    /// Extract an inverse system from the nil-polynomial, or verify one
    Invsys {
        file: PathBuf,
        /// Complement of m² in m, as comma-separated polynomials
        #[arg(long, conflicts_with = "verify")]
        complement: Option<String>,
        /// File holding a candidate inverse system in the algebra's variables
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Decide whether two algebras are isomorphic
    Isocheck {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Degrees used for refutation, e.g. 7,6,5
        #[arg(long)]
        degrees: Option<String>,
        /// Verify an explicit candidate (scale and matrix)
        #[arg(long, conflicts_with = "subst")]
        candidate: Option<PathBuf>,
        /// Verify a substitution x = poly, one per line
        #[arg(long)]
        subst: Option<PathBuf>,
    },
}

/// Parsed algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub vars: Arc<[String]>,
    pub gens: Vec<Polynomial>,
    pub order: Option<TermOrder>,
    pub basis: Option<Vec<Polynomial>>,
    pub weights: Option<Vec<u32>>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect()
}

fn parse_polys(items: &str, vars: &Arc<[String]>) -> Result<Vec<Polynomial>> {
    split_list(items)
        .into_iter()
        .map(|t| parse_polynomial(t, vars))
        .collect()
}

fn parse_u32_list(s: &str, what: &str) -> Result<Vec<u32>> {
    split_list(s)
        .into_iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Input(format!("bad {what} entry `{t}`")))
        })
        .collect()
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut fields: BTreeMap<String, String> = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("line {}: expected `key = value`", no + 1)))?;
            let k = k.trim().to_string();
            if !["vars", "gens", "order", "basis", "weights"].contains(&k.as_str()) {
                return Err(Error::Input(format!("line {}: unknown key `{k}`", no + 1)));
            }
            if fields.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(Error::Input(format!(
                    "line {}: duplicate key `{k}`",
                    no + 1
                )));
            }
        }
        let vars_text = fields
            .get("vars")
            .ok_or_else(|| Error::Input("missing `vars`".into()))?;
        let names = split_list(vars_text);
        if names.is_empty() {
            return Err(Error::Input("`vars` is empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Input(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("variable `{n}` declared twice")));
            }
        }
        let vars = var_list(&names);
        let gens = parse_polys(
            fields
                .get("gens")
                .ok_or_else(|| Error::Input("missing `gens`".into()))?,
            &vars,
        )?;
        if gens.is_empty() {
            return Err(Error::Input("`gens` is empty".into()));
        }
        let order = fields
            .get("order")
            .map(|s| s.parse::<TermOrder>())
            .transpose()?;
        let basis = fields
            .get("basis")
            .map(|s| parse_polys(s, &vars))
            .transpose()?;
        let weights = fields
            .get("weights")
            .map(|s| parse_u32_list(s, "weights"))
            .transpose()?;
        Ok(AlgebraFile {
            vars,
            gens,
            order,
            basis,
            weights,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?)
    }

    pub fn build(&self, order_override: Option<&TermOrder>) -> Result<QuotientAlgebra> {
        let order = order_override
            .or(self.order.as_ref())
            .cloned()
            .unwrap_or_default();
        build_quotient_algebra(&self.gens, &order, self.basis.as_deref())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn frac(s: &Scalar) -> String {
    to_fraction_string(s)
}

fn fracs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(frac).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub weights: Vec<u32>,
    /// weighted degree → dimension
    pub dims: BTreeMap<u64, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureSection {
    pub dimension: usize,
    pub local: bool,
    pub gorenstein: bool,
    pub nil_index: usize,
    pub embedding_dimension: usize,
    pub filtration: Vec<usize>,
    pub socle_dimension: usize,
    pub socle_generator: Option<String>,
    pub basis: Vec<String>,
    pub grading: Option<GradingReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Coefficient {
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlaschkeSection {
    pub normal_form: bool,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationSection {
    pub element: String,
    pub functional: Vec<String>,
    pub polynomial: String,
    /// sample points `u + P(u)s − y` checked on the translated hypersurface
    pub samples: usize,
    pub graph_translation_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilPolySection {
    pub variables: Vec<String>,
    /// basis of K the variables are coordinates for
    pub kernel_basis: Vec<String>,
    pub socle_generator: String,
    pub polynomial: String,
    pub degree: u32,
    pub degree_matches_nil_index: bool,
    pub coefficients: Vec<Coefficient>,
    pub blaschke: Option<BlaschkeSection>,
    pub translation: Option<TranslationSection>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseSystemSection {
    pub mode: String,
    pub complement: Option<Vec<String>>,
    pub polynomial: String,
    pub negated: String,
    pub generators: Vec<String>,
    pub annihilated: bool,
    pub failing_generator: Option<String>,
    pub span_dimension: usize,
    pub algebra_dimension: usize,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FingerprintReport {
    pub dimension: usize,
    pub nil_index: usize,
    pub embedding_dimension: usize,
    pub filtration: Vec<usize>,
    pub graded: bool,
    pub partial_ranks: Option<Vec<usize>>,
}

impl From<&Fingerprint> for FingerprintReport {
    fn from(f: &Fingerprint) -> Self {
        FingerprintReport {
            dimension: f.dimension,
            nil_index: f.nil_index,
            embedding_dimension: f.embedding_dimension,
            filtration: f.filtration.clone(),
            graded: f.graded,
            partial_ranks: f.partial_ranks.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub scale: String,
    pub matrix: Vec<Vec<String>>,
    pub substitution: Option<Vec<String>>,
    pub verified: bool,
}

fn witness_report(c: &EquivalenceCandidate, verified: bool) -> WitnessReport {
    WitnessReport {
        scale: frac(&c.scale),
        matrix: c.matrix.to_rows().iter().map(|r| fracs(r)).collect(),
        substitution: c
            .substitution
            .as_ref()
            .map(|s| s.iter().map(|p| p.to_string()).collect()),
        verified,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsomorphismSection {
    pub mode: String,
    pub verdict: String,
    pub reason: String,
    pub fingerprint_a: FingerprintReport,
    pub fingerprint_b: FingerprintReport,
    pub degrees: Vec<u32>,
    /// degrees whose coefficient equations generate the unit ideal
    pub refuting_degrees: Vec<u32>,
    pub witness: Option<WitnessReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub structure: Vec<StructureSection>,
    pub nil_polynomial: Option<NilPolySection>,
    pub inverse_system: Option<InverseSystemSection>,
    pub isomorphism: Option<IsomorphismSection>,
    #[serde(skip)]
    pub exit_code: i32,
}

pub fn structure_section(a: &QuotientAlgebra, weights: Option<&[u32]>) -> Result<StructureSection> {
    let r = structure_report(a)?;
    let socle_generator = r.socle_generator(a).map(|s| element_label(a, &s));
    let grading = match weights {
        Some(w) => Some(check_grading(a, w)?),
        None => grading_weights(a, None).and_then(|w| check_grading(a, &w).ok()),
    };
    Ok(StructureSection {
        dimension: r.dimension,
        local: r.is_local,
        gorenstein: r.is_gorenstein,
        nil_index: r.nil_index,
        embedding_dimension: r.embedding_dimension,
        filtration: r.filtration,
        socle_dimension: r.socle.len(),
        socle_generator,
        basis: a.basis_labels(),
        grading: grading.map(|g| GradingReport {
            weights: g.weights,
            dims: g.dims,
        }),
    })
}

fn element_label(a: &QuotientAlgebra, v: &[Scalar]) -> String {
    a.lift(v).display_with(a.order()).to_string()
}

/// Coefficients sorted by degree, then by decreasing term order.
fn coefficient_list(p: &Polynomial) -> Vec<Coefficient> {
    let order = TermOrder::Grevlex;
    let mut terms = p.sorted_terms(&order);
    terms.sort_by_key(|(m, _)| m.degree());
    terms
        .into_iter()
        .map(|(m, c)| Coefficient {
            monomial: m.display(p.vars()).to_string(),
            coefficient: frac(c),
        })
        .collect()
}

/// Deterministic sample points in `n` coordinates.
fn sample_points(n: usize, count: usize) -> Vec<Vec<Scalar>> {
    (0..count)
        .map(|k| {
            (0..n)
                .map(|i| {
                    let v = ((k * 7 + i * 3 + 1) % 5) as i64 - 2;
                    Scalar::new(v.into(), ((i + k) % 3 + 1).try_into().unwrap_or(1).into())
                })
                .collect()
        })
        .collect()
}

fn require_gorenstein(a: &QuotientAlgebra) -> Result<AdmissibleProjection> {
    default_projection(a)
}

fn nilpoly_section(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    p: &NilPolynomial,
) -> Result<NilPolySection> {
    let nu = structure_report(a)?.nil_index;
    let blaschke = if p.degree() >= 2 {
        let b = blaschke_data(p)?;
        Some(BlaschkeSection {
            normal_form: b.is_normal_form(),
            trace: fracs(&b.trace),
        })
    } else {
        None
    };
    Ok(NilPolySection {
        variables: p.polynomial().vars().to_vec(),
        kernel_basis: pi
            .kernel_basis()
            .iter()
            .map(|k| element_label(a, k))
            .collect(),
        socle_generator: element_label(a, pi.socle()),
        polynomial: p.to_string(),
        degree: p.degree(),
        degree_matches_nil_index: p.degree() as usize == nu,
        coefficients: coefficient_list(p.polynomial()),
        blaschke,
        translation: None,
    })
}

fn translation_section(
    a: &QuotientAlgebra,
    pi: &AdmissibleProjection,
    p: &NilPolynomial,
    expr: &str,
) -> Result<TranslationSection> {
    let y_poly = parse_polynomial(expr, a.vars())?;
    let y = a.coords_of(&y_poly)?;
    let moved = translate_projection(a, pi, &y)?;
    let pm = nil_polynomial(a, &moved)?;
    let samples = sample_points(pi.rank(), 12);
    let mut holds = true;
    for alpha in &samples {
        let z = p.graph_point(alpha);
        let shifted: Vec<Scalar> = z.iter().zip(&y).map(|(u, v)| u - v).collect();
        // decompose on the translated side and compare with its graph
        let (beta, t) = moved.decompose(&shifted)?;
        holds &= pm.eval(&beta) == t && on_hypersurface(a, &moved, &shifted)?;
    }
    Ok(TranslationSection {
        element: element_label(a, &y),
        functional: fracs(moved.omega()),
        polynomial: pm.to_string(),
        samples: samples.len(),
        graph_translation_holds: holds,
    })
}

fn inverse_section(
    mode: &str,
    complement: Option<Vec<String>>,
    gens: &[Polynomial],
    v: &InverseSystemCandidate,
) -> InverseSystemSection {
    InverseSystemSection {
        mode: mode.into(),
        complement,
        polynomial: v.polynomial.to_string(),
        negated: (-&v.polynomial).to_string(),
        generators: gens.iter().map(|g| g.to_string()).collect(),
        annihilated: v.annihilates(),
        failing_generator: v.failing_generator.map(|i| gens[i].to_string()),
        span_dimension: v.span_dimension,
        algebra_dimension: v.algebra_dimension,
        verdict: v.verdict(),
    }
}

/// A candidate `g` may be written in the algebra's variables or in dual
/// names (`y1..yk`, or just `y` for one variable); all are matched
/// positionally.
fn parse_dual(text: &str, a: &QuotientAlgebra) -> Result<Polynomial> {
    let k = a.vars().len();
    let mut tries = vec![a.vars().clone(), fresh_vars(k)];
    if k == 1 {
        tries.push(var_list(&["y"]));
    }
    let mut first_err = None;
    for vars in tries {
        match parse_polynomial(text, &vars) {
            Ok(g) => return g.with_vars(a.vars().clone()),
            Err(e @ Error::UnknownVariable { .. }) => {
                first_err.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(first_err.expect("at least one attempt"))
}

fn parse_degrees(s: &str) -> Result<Vec<u32>> {
    parse_u32_list(s, "degrees")
}

fn parse_candidate(text: &str, n: usize) -> Result<EquivalenceCandidate> {
    let mut scale = None;
    let mut matrix = None;
    for line in text.lines().map(strip_comment).filter(|l| !l.is_empty()) {
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Input(format!("candidate: expected `key = value`, got `{line}`"))
        })?;
        let scalar = |t: &str| {
            parse_scalar(t.trim())
                .ok_or_else(|| Error::Input(format!("candidate: bad number `{t}`")))
        };
        match k.trim() {
            "scale" => scale = Some(scalar(v)?),
            "matrix" => {
                let rows: Vec<Vec<Scalar>> = v
                    .split(';')
                    .map(|r| split_list(r).into_iter().map(scalar).collect())
                    .collect::<Result<_>>()?;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: rows.len(),
                    });
                }
                matrix = Some(Matrix::from_rows(&rows));
            }
            other => return Err(Error::Input(format!("candidate: unknown key `{other}`"))),
        }
    }
    Ok(EquivalenceCandidate::new(
        matrix.ok_or_else(|| Error::Input("candidate: missing `matrix`".into()))?,
        scale.ok_or_else(|| Error::Input("candidate: missing `scale`".into()))?,
    ))
}

fn parse_subst(
    text: &str,
    source: &Arc<[String]>,
    target: &Arc<[String]>,
) -> Result<Vec<Polynomial>> {
    let mut images: Vec<Option<Polynomial>> = vec![None; source.len()];
    for line in text.lines().map(strip_comment).filter(|l| !l.is_empty()) {
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("subst: expected `var = poly`, got `{line}`")))?;
        let k = k.trim();
        let i = source
            .iter()
            .position(|s| s == k)
            .ok_or_else(|| Error::UnknownVariable {
                name: k.to_string(),
                pos: 0,
            })?;
        images[i] = Some(parse_polynomial(v.trim(), target)?);
    }
    images
        .into_iter()
        .zip(source.iter())
        .map(|(p, name)| p.ok_or_else(|| Error::Input(format!("subst: no image for `{name}`"))))
        .collect()
}

fn order_flag(cli: &Cli) -> Result<Option<TermOrder>> {
    cli.order.as_deref().map(str::parse).transpose()
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, echo: Vec<String>) -> Result<Report> {
    let order = order_flag(cli)?;
    let mut report = Report {
        command: echo,
        structure: Vec::new(),
        nil_polynomial: None,
        inverse_system: None,
        isomorphism: None,
        exit_code: EXIT_OK,
    };
    match &cli.command {
        Command::Analyze { file } => {
            let f = AlgebraFile::load(file)?;
            let a = f.build(order.as_ref())?;
            report
                .structure
                .push(structure_section(&a, f.weights.as_deref())?);
        }
        Command::Nilpoly {
            file,
            basis_file,
            translate,
        } => {
            let mut f = AlgebraFile::load(file)?;
            if let Some(bf) = basis_file {
                let text: String = read(bf)?
                    .lines()
                    .map(strip_comment)
                    .collect::<Vec<_>>()
                    .join(",");
                f.basis = Some(parse_polys(&text, &f.vars)?);
            }
            let a = f.build(order.as_ref())?;
            report
                .structure
                .push(structure_section(&a, f.weights.as_deref())?);
            let pi = require_gorenstein(&a)?;
            let p = nil_polynomial(&a, &pi)?;
            let mut sec = nilpoly_section(&a, &pi, &p)?;
            if let Some(expr) = translate {
                sec.translation = Some(translation_section(&a, &pi, &p, expr)?);
            }
            report.nil_polynomial = Some(sec);
        }
        Command::Invsys {
            file,
            complement,
            verify,
        } => {
            let f = AlgebraFile::load(file)?;
            let a = f.build(order.as_ref())?;
            report
                .structure
                .push(structure_section(&a, f.weights.as_deref())?);
            let pi = require_gorenstein(&a)?;
            if let Some(g) = verify {
                let text: String = read(g)?
                    .lines()
                    .map(strip_comment)
                    .collect::<Vec<_>>()
                    .join(" ");
                let g = parse_dual(&text, &a)?;
                let v = verify_inverse_system(&a, &g)?;
                report.exit_code = if v.verdict() { EXIT_OK } else { EXIT_NEGATIVE };
                report.inverse_system = Some(inverse_section("verify", None, a.generators(), &v));
            } else {
                let l = match complement {
                    Some(list) => parse_polys(list, a.vars())?
                        .iter()
                        .map(|p| a.coords_of(p))
                        .collect::<Result<Vec<_>>>()?,
                    None => default_complement(&a, &pi)?,
                };
                let p = nil_polynomial(&a, &pi)?;
                let mut v = extract_and_verify(&a, &p, &l)?;
                let gens = if is_variable_complement(&a, &l) {
                    v.polynomial = v.polynomial.with_vars(a.vars().clone())?;
                    a.generators().to_vec()
                } else {
                    relation_ideal(&a, &l)?
                };
                let labels = l.iter().map(|e| element_label(&a, e)).collect();
                report.exit_code = if v.verdict() { EXIT_OK } else { EXIT_NEGATIVE };
                report.inverse_system = Some(inverse_section("extract", Some(labels), &gens, &v));
            }
        }
        Command::Isocheck {
            file_a,
            file_b,
            degrees,
            candidate,
            subst,
        } => {
            let fa = AlgebraFile::load(file_a)?;
            let fb = AlgebraFile::load(file_b)?;
            let a = fa.build(order.as_ref())?;
            let b = fb.build(order.as_ref())?;
            report
                .structure
                .push(structure_section(&a, fa.weights.as_deref())?);
            report
                .structure
                .push(structure_section(&b, fb.weights.as_deref())?);
            let pa = require_gorenstein(&a)?;
            let pb = require_gorenstein(&b)?;
            let opts = IsoOptions {
                degrees: degrees.as_deref().map(parse_degrees).transpose()?,
                weights: (fa.weights.clone(), fb.weights.clone()),
                budget: None,
            };
            let section = if candidate.is_some() || subst.is_some() {
                verification_section(
                    &a,
                    &pa,
                    &b,
                    &pb,
                    candidate.as_deref(),
                    subst.as_deref(),
                    &opts,
                )?
            } else {
                let r = decide_isomorphism(&a, &pa, &b, &pb, &opts)?;
                IsomorphismSection {
                    mode: "decide".into(),
                    verdict: verdict_name(r.verdict).into(),
                    reason: r.reason,
                    fingerprint_a: (&r.fingerprints.0).into(),
                    fingerprint_b: (&r.fingerprints.1).into(),
                    degrees: r.degrees,
                    refuting_degrees: r.refuting_degrees,
                    witness: r.witness.as_ref().map(|w| witness_report(w, true)),
                }
            };
            report.exit_code = match section.verdict.as_str() {
                "ISOMORPHIC" => EXIT_OK,
                "NOT_ISOMORPHIC" => EXIT_NEGATIVE,
                _ => EXIT_UNKNOWN,
            };
            report.isomorphism = Some(section);
        }
    }
    Ok(report)
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Isomorphic => "ISOMORPHIC",
        Verdict::NotIsomorphic => "NOT_ISOMORPHIC",
        Verdict::Unknown => "UNKNOWN",
    }
}

fn verification_section(
    a: &QuotientAlgebra,
    pa: &AdmissibleProjection,
    b: &QuotientAlgebra,
    pb: &AdmissibleProjection,
    candidate: Option<&Path>,
    subst: Option<&Path>,
    opts: &IsoOptions,
) -> Result<IsomorphismSection> {
    let fa = crate::isocheck::invariant_fingerprint(a, pa, opts.weights.0.as_deref())?;
    let fb = crate::isocheck::invariant_fingerprint(b, pb, opts.weights.1.as_deref())?;
    let (mode, ok, reason, witness) = if let Some(path) = candidate {
        let cand = parse_candidate(&read(path)?, pa.rank())?;
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        let p = nil_polynomial(a, pa)?;
        let q = nil_polynomial(b, pb)?;
        let ok = check_nil_equivalence(p.polynomial(), q.polynomial(), &cand)?;
        let reason = if ok {
            "candidate satisfies c·P = P̃∘C"
        } else {
            "candidate does not satisfy c·P = P̃∘C"
        };
        (
            "candidate",
            ok,
            reason.to_string(),
            Some(witness_report(&cand, ok)),
        )
    } else {
        let path = subst.expect("one verification mode");
        let s = parse_subst(&read(path)?, a.vars(), b.vars())?;
        if !verify_algebra_morphism(a, b, &s)? {
            (
                "subst",
                false,
                "substitution is not an algebra isomorphism".to_string(),
                None,
            )
        } else {
            match candidate_from_morphism(a, pa, b, pb, &s) {
                Ok(cand) => {
                    let ok = verify_linear_equivalence(a, pa, b, pb, &cand)?;
                    let reason = if ok {
                        "algebra isomorphism; induced linear equivalence verified"
                    } else {
                        "algebra isomorphism, but the induced map fails c·P = P̃∘C"
                    };
                    (
                        "subst",
                        ok,
                        reason.to_string(),
                        Some(witness_report(&cand, ok)),
                    )
                }
                Err(Error::NotBlockDiagonal) => (
                    "subst",
                    true,
                    "algebra isomorphism (does not preserve the default projections)".to_string(),
                    None,
                ),
                Err(e) => return Err(e),
            }
        }
    };
    Ok(IsomorphismSection {
        mode: mode.into(),
        verdict: if ok { "ISOMORPHIC" } else { "NOT_ISOMORPHIC" }.into(),
        reason,
        fingerprint_a: (&fa).into(),
        fingerprint_b: (&fb).into(),
        degrees: Vec::new(),
        refuting_degrees: Vec::new(),
        witness,
    })
}

/// Text rendering of a report.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("command: {}", r.command.join(" ")));
    for (i, s) in r.structure.iter().enumerate() {
        if r.structure.len() > 1 {
            line(format!("[algebra {}]", ["A", "B"].get(i).unwrap_or(&"?")));
        }
        line(format!("dimension: {}", s.dimension));
        line(format!("local: {}", s.local));
        line(format!("gorenstein: {}", s.gorenstein));
        line(format!("nil_index: {}", s.nil_index));
        line(format!("embedding_dimension: {}", s.embedding_dimension));
        line(format!("filtration: {}", join(&s.filtration)));
        line(format!("socle_dimension: {}", s.socle_dimension));
        if let Some(g) = &s.socle_generator {
            line(format!("socle_generator: {g}"));
        }
        line(format!("basis: {}", s.basis.join(", ")));
        match &s.grading {
            Some(g) => line(format!(
                "grading: weights {} dims {}",
                join(&g.weights),
                g.dims
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            )),
            None => line("grading: none found".into()),
        }
    }
    if let Some(n) = &r.nil_polynomial {
        line(format!("variables: {}", n.variables.join(", ")));
        line(format!("kernel_basis: {}", n.kernel_basis.join(", ")));
        line(format!("socle_generator: {}", n.socle_generator));
        line(format!("P = {}", n.polynomial));
        line(format!(
            "degree: {} (matches nil-index: {})",
            n.degree, n.degree_matches_nil_index
        ));
        line("coefficients:".into());
        for c in &n.coefficients {
            line(format!("  {}: {}", c.monomial, c.coefficient));
        }
        if let Some(b) = &n.blaschke {
            line(format!("blaschke_normal_form: {}", b.normal_form));
        }
        if let Some(t) = &n.translation {
            line(format!("translated_by: {}", t.element));
            line(format!(
                "translated_functional: {}",
                t.functional.join(", ")
            ));
            line(format!("P' = {}", t.polynomial));
            line(format!(
                "graph_translation_holds: {} ({} samples)",
                t.graph_translation_holds, t.samples
            ));
        }
    }
    if let Some(v) = &r.inverse_system {
        line(format!("mode: {}", v.mode));
        if let Some(c) = &v.complement {
            line(format!("complement: {}", c.join(", ")));
        }
        line(format!("Q = {}", v.polynomial));
        line(format!("-Q = {}", v.negated));
        line(format!("annihilated_by_generators: {}", v.annihilated));
        if let Some(g) = &v.failing_generator {
            line(format!("failing_generator: {g}"));
        }
        line(format!(
            "derivative_span_dimension: {} (algebra dimension {})",
            v.span_dimension, v.algebra_dimension
        ));
        line(format!("inverse_system: {}", v.verdict));
    }
    if let Some(i) = &r.isomorphism {
        line(format!("mode: {}", i.mode));
        line(format!("verdict: {}", i.verdict));
        line(format!("reason: {}", i.reason));
        if !i.degrees.is_empty() {
            line(format!("degrees: {}", join(&i.degrees)));
        }
        if !i.refuting_degrees.is_empty() {
            line(format!("refuting_degrees: {}", join(&i.refuting_degrees)));
        }
        if let Some(w) = &i.witness {
            line(format!("scale: {}", w.scale));
            line("matrix:".into());
            for row in &w.matrix {
                line(format!("  [{}]", row.join(", ")));
            }
            if let Some(s) = &w.substitution {
                line(format!("substitution: {}", s.join(", ")));
            }
            line(format!("verified: {}", w.verified));
        }
    }
    out
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render(r: &Report, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(r).expect("report serializes");
        s.push('\n');
        s
    } else {
        render_text(r)
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (text, String::new(), 0)
            } else {
                (String::new(), text, code)
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, echo) {
        Ok(r) => (render(&r, cli.json), String::new(), r.exit_code),
        Err(e) => (String::new(), format!("error: {e}\n"), e.exit_code()),
    }
}
