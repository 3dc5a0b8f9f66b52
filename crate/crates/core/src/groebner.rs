//! Buchberger's algorithm with cofactor tracking.
//!
//! Every basis element `b` carries a cofactor vector `c` with
//! `sum_j c_j f_j = b`, where `f` is the input tuple. When the reduced basis
//! is a nonzero constant, the scaled cofactors are a Bezout certificate.

use std::cmp::Ordering;
use std::str::FromStr;

use crate::arith::GaussianRational;
use crate::error::{Error, Result};
use crate::multipoly::{Monomial, MultiPoly, PolyTuple};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    #[default]
    GrevLex,
    GrLex,
    Lex,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::GrevLex => a.grevlex_cmp(b),
            TermOrder::GrLex => a.grlex_cmp(b),
            TermOrder::Lex => a.lex_cmp(b),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TermOrder::GrevLex => "grevlex",
            TermOrder::GrLex => "grlex",
            TermOrder::Lex => "lex",
        }
    }

    /// Leading monomial and coefficient, `None` for zero.
    pub fn leading_term(self, p: &MultiPoly) -> Option<(&Monomial, &GaussianRational)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(TermOrder::GrevLex),
            "grlex" => Ok(TermOrder::GrLex),
            "lex" => Ok(TermOrder::Lex),
            other => Err(Error::InvalidInput(format!("unknown term order {other:?}"))),
        }
    }
}

/// Gröbner basis of `<f>` with a cofactor vector for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedBasis {
    pub generators: PolyTuple,
    pub order: TermOrder,
    pub basis: Vec<MultiPoly>,
    pub cofactors: Vec<Vec<MultiPoly>>,
}

impl TrackedBasis {
    /// `sum_j c_j f_j - b` for basis element `i`; zero when sound.
    pub fn cofactor_residual(&self, i: usize) -> MultiPoly {
        let c =
            PolyTuple::new(self.cofactors[i].clone()).expect("cofactor length matches generators");
        let combo = c.dot(&self.generators).expect("compatible cofactors");
        &combo - &self.basis[i]
    }

    /// The nonzero constant element and its cofactors, if any.
    pub fn unit_element(&self) -> Option<(GaussianRational, &[MultiPoly])> {
        self.basis.iter().zip(&self.cofactors).find_map(|(b, c)| {
            b.as_constant()
                .filter(|k| !k.is_zero())
                .map(|k| (k, c.as_slice()))
        })
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.unit_element().is_some()
    }
}

/// Witness that `sum_j g_j f_j = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub f: PolyTuple,
    pub g: PolyTuple,
    pub verified: bool,
}

impl BezoutCertificate {
    /// Builds a certificate, setting `verified` by symbolic expansion.
    pub fn checked(f: PolyTuple, g: PolyTuple) -> Result<Self> {
        let verified = g.dot(&f)?.is_one();
        Ok(BezoutCertificate { f, g, verified })
    }

    /// Recomputes `sum g_j f_j == 1` from scratch.
    pub fn recheck(&self) -> bool {
        self.g.dot(&self.f).map(|p| p.is_one()).unwrap_or(false)
    }
}

struct Tracked {
    poly: MultiPoly,
    cof: Vec<MultiPoly>,
}

impl Tracked {
    fn make_monic(&mut self, order: TermOrder) {
        if let Some((_, lc)) = order.leading_term(&self.poly) {
            if !lc.is_one() {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.poly = self.poly.scale(&inv);
                for c in &mut self.cof {
                    *c = c.scale(&inv);
                }
            }
        }
    }
}

/// Multivariate division of `p` by `divisors`, trying divisors in order.
/// Returns `(remainder, quotients)` with `p = sum q_i d_i + remainder`.
fn divide(p: &MultiPoly, divisors: &[&MultiPoly], order: TermOrder) -> (MultiPoly, Vec<MultiPoly>) {
    let n = p.n();
    let leads: Vec<Option<(Monomial, GaussianRational)>> = divisors
        .iter()
        .map(|d| order.leading_term(d).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut quotients = vec![MultiPoly::zero(n); divisors.len()];
    let mut remainder = MultiPoly::zero(n);
    let mut rest = p.clone();
    while let Some((lm, lc)) = order
        .leading_term(&rest)
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        let hit = leads.iter().enumerate().find_map(|(i, lead)| {
            let (dm, dc) = lead.as_ref()?;
            dm.quotient_of(&lm).map(|q| (i, q, dc))
        });
        match hit {
            Some((i, qm, dc)) => {
                let qc = lc.checked_div(dc).expect("leading coefficient is nonzero");
                rest = &rest - &divisors[i].mul_term(&qm, &qc);
                quotients[i].add_term(qm, &qc);
            }
            None => {
                remainder.add_term(lm.clone(), &lc);
                rest.add_term(lm, &-&lc);
            }
        }
    }
    (remainder, quotients)
}

/// Fully reduces `p` against `basis` (reducers tried in basis order).
///
/// Returns the remainder and one quotient per basis element with
/// `p = sum_i q_i * basis_i + remainder` exactly.
pub fn reduce(p: &MultiPoly, basis: &TrackedBasis) -> Result<(MultiPoly, Vec<MultiPoly>)> {
    if p.n() != basis.generators.n() {
        return Err(Error::DimensionMismatch {
            expected: basis.generators.n(),
            found: p.n(),
        });
    }
    let divisors: Vec<&MultiPoly> = basis.basis.iter().collect();
    Ok(divide(p, &divisors, basis.order))
}

fn reduce_tracked(t: &Tracked, basis: &[Tracked], order: TermOrder) -> Tracked {
    let divisors: Vec<&MultiPoly> = basis.iter().map(|b| &b.poly).collect();
    let (remainder, quotients) = divide(&t.poly, &divisors, order);
    let mut cof = t.cof.clone();
    for (q, b) in quotients.iter().zip(basis) {
        if q.is_zero() {
            continue;
        }
        for (c, bc) in cof.iter_mut().zip(&b.cof) {
            *c = &*c - &(q * bc);
        }
    }
    Tracked {
        poly: remainder,
        cof,
    }
}

fn s_polynomial(a: &Tracked, b: &Tracked, order: TermOrder) -> Tracked {
    let (am, ac) = order.leading_term(&a.poly).expect("nonzero basis element");
    let (bm, bc) = order.leading_term(&b.poly).expect("nonzero basis element");
    let lcm = am.lcm(bm);
    let ua = am.quotient_of(&lcm).unwrap();
    let ub = bm.quotient_of(&lcm).unwrap();
    let ka = ac.inv().unwrap();
    let kb = bc.inv().unwrap();
    let poly = &a.poly.mul_term(&ua, &ka) - &b.poly.mul_term(&ub, &kb);
    let cof = a
        .cof
        .iter()
        .zip(&b.cof)
        .map(|(x, y)| &x.mul_term(&ua, &ka) - &y.mul_term(&ub, &kb))
        .collect();
    Tracked { poly, cof }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pair {
    lcm_degree: u32,
    i: usize,
    j: usize,
}

impl Pair {
    fn key(&self) -> (u32, usize, usize) {
        (self.lcm_degree, self.i, self.j)
    }
}

fn new_pair(basis: &[Tracked], i: usize, j: usize, order: TermOrder) -> Pair {
    let a = order.leading_term(&basis[i].poly).unwrap().0;
    let b = order.leading_term(&basis[j].poly).unwrap().0;
    Pair {
        lcm_degree: a.lcm(b).total_degree(),
        i,
        j,
    }
}

/// Runs Buchberger's algorithm on `f` and returns the reduced Gröbner basis
/// with cofactors.
///
/// Pairs are processed by the normal strategy: smallest lcm total degree
/// first, ties broken by `(i, j)`. Pairs whose leading monomials are coprime
/// are skipped. The loop stops early once a nonzero constant appears, since
/// any ideal subset containing a unit is already a Gröbner basis.
pub fn buchberger(f: &PolyTuple, order: TermOrder) -> Result<TrackedBasis> {
    if f.is_zero() {
        return Err(Error::AllZeroInput);
    }
    let n = f.n();
    let big_n = f.len();
    let mut basis: Vec<Tracked> = Vec::new();
    for (j, fj) in f.iter().enumerate() {
        if fj.is_zero() {
            continue;
        }
        let mut cof = vec![MultiPoly::zero(n); big_n];
        cof[j] = MultiPoly::one(n);
        let mut t = Tracked {
            poly: fj.clone(),
            cof,
        };
        t.make_monic(order);
        basis.push(t);
    }

    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(new_pair(&basis, i, j, order));
        }
    }

    let mut found_unit = basis.iter().any(|b| b.poly.as_constant().is_some());
    while !found_unit && !pairs.is_empty() {
        let pos = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| p.key())
            .map(|(idx, _)| idx)
            .unwrap();
        let pair = pairs.swap_remove(pos);
        let lead_i = order.leading_term(&basis[pair.i].poly).unwrap().0;
        let lead_j = order.leading_term(&basis[pair.j].poly).unwrap().0;
        if lead_i.is_coprime(lead_j) {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order);
        let mut r = reduce_tracked(&s, &basis, order);
        if r.poly.is_zero() {
            continue;
        }
        r.make_monic(order);
        log::trace!("basis element {} added: {}", basis.len(), r.poly);
        found_unit = r.poly.as_constant().is_some();
        basis.push(r);
        let new = basis.len() - 1;
        for i in 0..new {
            pairs.push(new_pair(&basis, i, new, order));
        }
    }

    let basis = interreduce(basis, order);
    let (polys, cofactors) = basis.into_iter().map(|t| (t.poly, t.cof)).unzip();
    Ok(TrackedBasis {
        generators: f.clone(),
        order,
        basis: polys,
        cofactors,
    })
}

/// Minimalizes and tail-reduces a Gröbner basis, keeping cofactors in sync.
fn interreduce(mut basis: Vec<Tracked>, order: TermOrder) -> Vec<Tracked> {
    // Drop elements whose leading monomial is divisible by another's;
    // among equal leading monomials keep the earliest.
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|t| order.leading_term(&t.poly).unwrap().0.clone())
        .collect();
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len())
                .any(|j| j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i))
        })
        .collect();
    let mut idx = 0;
    basis.retain(|_| {
        let k = keep[idx];
        idx += 1;
        k
    });

    for i in 0..basis.len() {
        let current = std::mem::replace(
            &mut basis[i],
            Tracked {
                poly: MultiPoly::zero(0),
                cof: Vec::new(),
            },
        );
        let others: Vec<Tracked> = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, t)| Tracked {
                poly: t.poly.clone(),
                cof: t.cof.clone(),
            })
            .collect();
        let mut reduced = reduce_tracked(&current, &others, order);
        reduced.make_monic(order);
        basis[i] = reduced;
    }
    basis.sort_by(|a, b| {
        let la = order.leading_term(&a.poly).unwrap().0;
        let lb = order.leading_term(&b.poly).unwrap().0;
        order.cmp(la, lb)
    });
    basis
}

/// Decides whether `f` generates the unit ideal and, if so, returns
/// cofactors `g` with `sum g_j f_j = 1`, verified by expansion.
pub fn solve_bezout(f: &PolyTuple, order: TermOrder) -> Result<BezoutCertificate> {
    let tracked = buchberger(f, order)?;
    let (unit, cof) = tracked.unit_element().ok_or(Error::NotUnitIdeal)?;
    let inv = unit.inv()?;
    let g = PolyTuple::new(cof.iter().map(|c| c.scale(&inv)).collect())?;
    let cert = BezoutCertificate::checked(f.clone(), g)?;
    if !cert.verified {
        return Err(Error::InternalVerificationFailure(
            "cofactors extracted from the Gröbner basis do not combine to 1".into(),
        ));
    }
    Ok(cert)
}
