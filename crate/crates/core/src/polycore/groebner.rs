//! Buchberger's algorithm over the rationals.
//!
//! Pairs are selected by the normal strategy (smallest lcm under the term
//! order, ties by creation index) and pruned with the Gebauer–Möller
//! criteria. The final basis is reduced and monic, sorted by increasing
//! leading monomial, so two bases of the same ideal compare equal.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::{Monomial, Polynomial, TermOrder};
use crate::error::{Error, Result};

/// Terms sorted by increasing order; the leading term is the last one.
#[derive(Clone, Debug)]
struct Sparse {
    terms: Vec<(Monomial, Scalar)>,
}

impl Sparse {
    fn from_poly(p: &Polynomial, order: &TermOrder) -> Sparse {
        let mut terms: Vec<(Monomial, Scalar)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sparse { terms }
    }

    fn to_poly(&self, vars: &Arc<[String]>) -> Polynomial {
        Polynomial::from_terms(vars.clone(), self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn lc(&self) -> &Scalar {
        &self.terms.last().expect("nonzero polynomial").1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.lc().recip();
        if inv.is_one() {
            return;
        }
        for t in &mut self.terms {
            t.1 *= &inv;
        }
    }

    /// `self - c * m * g`, merging two sorted term lists.
    fn sub_scaled(&self, c: &Scalar, m: &Monomial, g: &Sparse, order: &TermOrder) -> Sparse {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(gm, gc)| (gm.mul(m), gc * c))
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, -bc));
                }
                Ordering::Equal => {
                    let (am, ac) = a.next().unwrap();
                    let (_, bc) = b.next().unwrap();
                    let v = ac - bc;
                    if !v.is_zero() {
                        out.push((am.clone(), v));
                    }
                }
            }
        }
        Sparse { terms: out }
    }
}

/// Full reduction of `p` modulo `basis` (only entries with `live[i]`).
fn reduce(p: &Sparse, basis: &[Sparse], live: &[bool], order: &TermOrder) -> Sparse {
    let mut work = p.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    'outer: while let Some((m, c)) = work.terms.last().cloned() {
        for (g, _) in basis.iter().zip(live).filter(|(_, &l)| l) {
            if let Some(q) = g.lm().quotient_of(&m) {
                let factor = &c / g.lc();
                work = work.sub_scaled(&factor, &q, g, order);
                continue 'outer;
            }
        }
        work.terms.pop();
        rem.push((m, c));
    }
    rem.reverse();
    Sparse { terms: rem }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: usize,
}

/// A reduced Gröbner basis together with its source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: TermOrder,
    vars: Arc<[String]>,
    basis: Vec<Polynomial>,
    generators: Vec<Polynomial>,
}

/// Work limit for [`groebner_basis_bounded`], counted in S-polynomial reductions.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_reductions: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_reductions: usize::MAX,
        }
    }
}

pub fn groebner_basis(gens: &[Polynomial], order: &TermOrder) -> Result<GroebnerBasis> {
    groebner_basis_bounded(gens, order, Budget::default())?
        .ok_or_else(|| Error::Input("unbounded Gröbner computation ran out of budget".into()))
}

/// As [`groebner_basis`] but gives up (`Ok(None)`) once the budget is spent.
pub fn groebner_basis_bounded(
    gens: &[Polynomial],
    order: &TermOrder,
    budget: Budget,
) -> Result<Option<GroebnerBasis>> {
    let Some(first) = gens.first() else {
        return Err(Error::Input("empty generator list".into()));
    };
    let vars = first.vars().clone();
    for g in gens {
        if g.vars() != &vars {
            return Err(Error::VariableMismatch {
                left: vars.to_vec(),
                right: g.vars().to_vec(),
            });
        }
    }
    order.validate(vars.len())?;

    let mut polys: Vec<Sparse> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0usize;
    let mut unit = false;

    let insert = |h: Sparse,
                  polys: &mut Vec<Sparse>,
                  live: &mut Vec<bool>,
                  pairs: &mut Vec<Pair>,
                  seq: &mut usize| {
        let hi = polys.len();
        let hlm = h.lm().clone();
        // Gebauer–Möller update.
        let mut cands: Vec<Pair> = (0..hi)
            .filter(|&i| live[i])
            .map(|i| {
                let lcm = polys[i].lm().lcm(&hlm);
                let p = Pair {
                    i,
                    j: hi,
                    lcm,
                    seq: *seq,
                };
                *seq += 1;
                p
            })
            .collect();
        // Criterion M: drop (i,h) if another (k,h) has a strictly dividing lcm,
        // or an equal lcm and comes earlier.
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].lcm.divides(&cands[a].lcm) && (cands[b].lcm != cands[a].lcm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Criterion F is covered by the tie rule above. Product criterion:
        cands = cands
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(p, _)| p)
            .filter(|p| !polys[p.i].lm().coprime(&hlm))
            .collect();
        // Criterion B on old pairs.
        pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hlm) != p.lcm
                && polys[p.j].lm().lcm(&hlm) != p.lcm)
        });
        pairs.extend(cands);
        for i in 0..hi {
            if live[i] && hlm.divides(polys[i].lm()) {
                live[i] = false;
            }
        }
        polys.push(h);
        live.push(true);
    };

    for g in gens {
        let s = Sparse::from_poly(g, order);
        let mut h = reduce(&s, &polys, &live, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            unit = true;
            break;
        }
        insert(h, &mut polys, &mut live, &mut pairs, &mut seq);
    }

    let mut work = 0usize;
    while !unit && !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| order.cmp(&a.lcm, &b.lcm).then(a.seq.cmp(&b.seq)))
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        work += 1;
        if work > budget.max_reductions {
            return Ok(None);
        }
        let (f, g) = (&polys[pair.i], &polys[pair.j]);
        let qf = f.lm().quotient_of(&pair.lcm).unwrap();
        let qg = g.lm().quotient_of(&pair.lcm).unwrap();
        // both monic: S = qf*f - qg*g
        let zero = Sparse { terms: vec![] };
        let sf = zero.sub_scaled(&-Scalar::one(), &qf, f, order);
        let s = sf.sub_scaled(&Scalar::one(), &qg, g, order);
        let mut h = reduce(&s, &polys, &live, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().is_one() {
            unit = true;
            break;
        }
        insert(h, &mut polys, &mut live, &mut pairs, &mut seq);
    }

    let basis = if unit {
        vec![Polynomial::one(vars.clone())]
    } else {
        interreduce(polys, live, order)
            .iter()
            .map(|s| s.to_poly(&vars))
            .collect()
    };
    Ok(Some(GroebnerBasis {
        order: order.clone(),
        vars,
        basis,
        generators: gens.to_vec(),
    }))
}

fn interreduce(polys: Vec<Sparse>, live: Vec<bool>, order: &TermOrder) -> Vec<Sparse> {
    let mut min: Vec<Sparse> = polys
        .into_iter()
        .zip(live)
        .filter(|(_, l)| *l)
        .map(|(p, _)| p)
        .collect();
    // distinct minimal leading monomials are guaranteed by the live flags,
    // except for duplicates with identical leading monomials
    min.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    min.dedup_by(|a, b| a.lm() == b.lm());
    let n = min.len();
    let mut out: Vec<Sparse> = Vec::with_capacity(n);
    for k in 0..n {
        let others: Vec<Sparse> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let flags = vec![true; others.len()];
        // reduce only the tail: leading term stays since no other LM divides it
        let lead = min[k].terms.last().cloned().unwrap();
        let mut tail = min[k].clone();
        tail.terms.pop();
        let mut r = reduce(&tail, &others, &flags, order);
        r.terms.push(lead);
        r.make_monic();
        out.push(r);
    }
    out
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    /// Reduced basis, monic, sorted by increasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// True iff the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(&self.order).unwrap().0.clone())
            .collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.vars(), &self.vars, "variable lists differ");
        let basis: Vec<Sparse> = self
            .basis
            .iter()
            .map(|g| Sparse::from_poly(g, &self.order))
            .collect();
        let live = vec![true; basis.len()];
        reduce(
            &Sparse::from_poly(p, &self.order),
            &basis,
            &live,
            &self.order,
        )
        .to_poly(&self.vars)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Monomials outside the leading-term ideal, in increasing term order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let n = self.vars.len();
        let lms = self.leading_monomials();
        let mut bounds = vec![0u32; n];
        for (i, b) in bounds.iter_mut().enumerate() {
            *b = lms
                .iter()
                .filter_map(|m| m.pure_power())
                .filter(|(v, _)| *v == i)
                .map(|(_, e)| e)
                .min()
                .ok_or_else(|| Error::InfiniteDimensional {
                    var: self.vars[i].clone(),
                })?;
        }
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial::from_exponents(e.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box below the pure-power bounds
            let mut k = 0;
            loop {
                if k == n {
                    out.sort_by(|a, b| self.order.cmp(a, b));
                    return Ok(out);
                }
                e[k] += 1;
                if e[k] < bounds[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    gb.normal_form(p)
}

pub fn standard_monomial_basis(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    gb.standard_monomials()
}
