//! Sparse multivariate polynomials over `Q(i)`.
//!
//! A [`MultiPoly`] in `n` variables `z1..zn` maps exponent vectors to nonzero
//! coefficients. Sup-norms on polydisks are replaced by the coefficient
//! majorant `sum |c_a| r^{|a|}`, which dominates `|p|` on the closed polydisk
//! of radius `r` by the triangle inequality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{GaussianRational, ModulusBound, Rational};
use crate::error::{Error, Result};

/// Exponent vector `z^a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded lexicographic comparison with `z1 > z2 > ... > zn`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Graded reverse lexicographic comparison.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            })
    }

    fn evaluate(&self, powers: &[Vec<GaussianRational>]) -> GaussianRational {
        let mut acc = GaussianRational::one();
        for (var, &e) in self.0.iter().enumerate() {
            if e > 0 {
                acc = &acc * &powers[var][e as usize];
            }
        }
        acc
    }
}

/// Sparse polynomial in `n` variables. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::term(Monomial::one(n), c)
    }

    /// The variable `z_{index+1}`.
    pub fn var(n: usize, index: usize) -> Self {
        assert!(
            index < n,
            "variable index {index} out of range for {n} variables"
        );
        Self::term(Monomial::var(n, index), GaussianRational::one())
    }

    pub fn term(mono: Monomial, c: GaussianRational) -> Self {
        let n = mono.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MultiPoly { n, terms }
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = MultiPoly::zero(n);
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (lexicographic on exponent vectors).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    /// Terms sorted by descending graded-lex order.
    pub fn terms_grlex_desc(&self) -> Vec<(&Monomial, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.total_degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.n(), self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_n(&self, other: &MultiPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_n(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_n(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_same_n(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * z^m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.n);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let mut max_exp = vec![0u32; self.n];
        for m in self.terms.keys() {
            for (slot, &e) in max_exp.iter_mut().zip(m.exponents()) {
                *slot = (*slot).max(e);
            }
        }
        let powers: Vec<Vec<GaussianRational>> = point
            .iter()
            .zip(&max_exp)
            .map(|(z, &top)| {
                let mut v = Vec::with_capacity(top as usize + 1);
                v.push(GaussianRational::one());
                for k in 0..top as usize {
                    let next = &v[k] * z;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            acc += &(c * &m.evaluate(&powers));
        }
        Ok(acc)
    }

    /// Splits into the terms of total degree `<= d` and the rest.
    /// `d = -1` yields a zero head.
    pub fn truncate_total_degree(&self, d: i64) -> (MultiPoly, MultiPoly) {
        let (head, tail): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .partition(|(m, _)| (m.total_degree() as i64) <= d);
        (
            MultiPoly {
                n: self.n,
                terms: head,
            },
            MultiPoly {
                n: self.n,
                terms: tail,
            },
        )
    }

    pub fn polydisk_majorant(&self, disk: &Polydisk) -> Rational {
        self.polydisk_majorant_with(disk, ModulusBound::Sum)
    }

    /// `sum_a ub(c_a) r^{|a|}`.
    pub fn polydisk_majorant_with(&self, disk: &Polydisk, policy: ModulusBound) -> Rational {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let d = m.total_degree() as usize;
            while powers.len() <= d {
                let next = powers.last().unwrap() * &disk.radius;
                powers.push(next);
            }
            acc += c.modulus_upper_bound_with(policy) * &powers[d];
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("z{}", v + 1)
                    } else {
                        format!("z{}^{}", v + 1, e)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let real_negative = c.im.is_zero() && c.re.is_negative();
            let abs = if real_negative { -c } else { c.clone() };
            let sign = if real_negative { "-" } else { "+" };
            if idx == 0 {
                if real_negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff = if abs.im.is_zero() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{coeff}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = MultiPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Length-`N` vector of polynomials sharing one variable count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyTuple {
    entries: Vec<MultiPoly>,
}

impl PolyTuple {
    pub fn new(entries: Vec<MultiPoly>) -> Result<Self> {
        let first = entries.first().ok_or_else(|| {
            Error::InvalidInput("a polynomial tuple needs at least one entry".into())
        })?;
        let n = first.n();
        if let Some(bad) = entries.iter().find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(PolyTuple { entries })
    }

    pub fn zeros(len: usize, n: usize) -> Self {
        assert!(len >= 1);
        PolyTuple {
            entries: vec![MultiPoly::zero(n); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variable count shared by all entries.
    pub fn n(&self) -> usize {
        self.entries[0].n()
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn get(&self, j: usize) -> &MultiPoly {
        &self.entries[j]
    }

    pub fn into_entries(self) -> Vec<MultiPoly> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiPoly> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    /// Errors unless `other` has the same length and variable count.
    pub fn check_compatible(&self, other: &PolyTuple) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(())
    }

    /// `sum_j self_j * other_j`.
    pub fn dot(&self, other: &PolyTuple) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(MultiPoly::zero(self.n()), |acc, (a, b)| &acc + &(a * b)))
    }

    pub fn checked_add(&self, other: &PolyTuple) -> Result<PolyTuple> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &PolyTuple) -> Result<PolyTuple> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyTuple {
        PolyTuple {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &PolyTuple,
        op: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly,
    ) -> PolyTuple {
        PolyTuple {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    pub fn tuple_majorant(&self, disk: &Polydisk) -> Rational {
        self.tuple_majorant_with(disk, ModulusBound::Sum)
    }

    /// Max over entries of the polydisk majorant.
    pub fn tuple_majorant_with(&self, disk: &Polydisk, policy: ModulusBound) -> Rational {
        self.entries
            .iter()
            .map(|p| p.polydisk_majorant_with(disk, policy))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl<'a> IntoIterator for &'a PolyTuple {
    type Item = &'a MultiPoly;
    type IntoIter = std::slice::Iter<'a, MultiPoly>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// Closed polydisk `{ z : |z_j| <= radius }` in `n` dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polydisk {
    pub n: usize,
    pub radius: Rational,
}

impl Polydisk {
    pub fn new(n: usize, radius: Rational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::InvalidInput(format!(
                "polydisk radius must be positive, got {radius}"
            )));
        }
        Ok(Polydisk { n, radius })
    }
}
