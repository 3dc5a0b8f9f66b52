#![allow(dead_code)]

//! Shared generators and independent oracles for the integration suites.

use std::collections::BTreeMap;

use bezout::arith::{rational, Rational};
use bezout::{AntisymMatrix, GaussianRational, Monomial, MultiPoly, PolyTuple};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian rational with numerators in `-3..=3`, denominators in `1..=3`.
pub fn rand_coeff(rng: &mut TestRng) -> GaussianRational {
    GaussianRational::from_parts(
        rng.gen_range(-3..=3),
        rng.gen_range(1..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(1..=3),
    )
}

pub fn rand_nonzero_coeff(rng: &mut TestRng) -> GaussianRational {
    loop {
        let c = rand_coeff(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn rand_monomial(rng: &mut TestRng, n: usize, max_deg: u32) -> Monomial {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..total {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(e)
}

pub fn rand_poly(rng: &mut TestRng, n: usize, max_deg: u32, max_terms: usize) -> MultiPoly {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (rand_monomial(rng, n, max_deg), rand_coeff(rng)))
        .collect();
    MultiPoly::from_terms(n, terms).unwrap()
}

pub fn rand_antisym(rng: &mut TestRng, size: usize, n: usize, max_deg: u32) -> AntisymMatrix {
    let mut h = AntisymMatrix::zero(size, n);
    for j in 0..size {
        for k in j + 1..size {
            h.set(j, k, rand_poly(rng, n, max_deg, 3)).unwrap();
        }
    }
    h
}

pub fn rand_tuple(rng: &mut TestRng, size: usize, n: usize, max_deg: u32) -> PolyTuple {
    PolyTuple::new((0..size).map(|_| rand_poly(rng, n, max_deg, 4)).collect()).unwrap()
}

/// A unimodular row `a` (entry degree <= 3) with a known solution `x`.
///
/// Start from `a_1 = 1 - sum_{j>1} x_j a_j`, `x_1 = 1`, then mix with a few
/// elementary column operations `a_i += c a_j`, `x_j -= c x_i` that keep
/// `x a^t = 1`.
pub fn rand_unimodular(rng: &mut TestRng, size: usize, n: usize) -> (PolyTuple, PolyTuple) {
    let mut a: Vec<MultiPoly> = vec![MultiPoly::zero(n); size];
    let mut x: Vec<MultiPoly> = vec![MultiPoly::zero(n); size];
    x[0] = MultiPoly::one(n);
    let mut first = MultiPoly::one(n);
    for j in 1..size {
        a[j] = rand_poly(rng, n, 2, 3);
        x[j] = rand_poly(rng, n, 1, 2);
        first = &first - &(&x[j] * &a[j]);
    }
    a[0] = first;
    for _ in 0..2 {
        let i = rng.gen_range(0..size);
        let j = rng.gen_range(0..size);
        if i == j {
            continue;
        }
        let c = MultiPoly::constant(n, rand_coeff(rng));
        a[i] = &a[i] + &(&c * &a[j]);
        x[j] = &x[j] - &(&c * &x[i]);
    }
    (PolyTuple::new(a).unwrap(), PolyTuple::new(x).unwrap())
}

/// Random point with coordinates of modulus bound (|re| + |im|) at most `radius`.
pub fn rand_point_in_disk(rng: &mut TestRng, n: usize, radius: &Rational) -> Vec<GaussianRational> {
    (0..n)
        .map(|_| {
            let t = rational(rng.gen_range(0..=16), 16);
            let s = rational(rng.gen_range(0..=16), 16);
            let re = radius * &t;
            let im = (radius - &re) * &s;
            let re = if rng.gen_bool(0.5) { -re } else { re };
            let im = if rng.gen_bool(0.5) { -im } else { im };
            GaussianRational::new(re, im)
        })
        .collect()
}

/// Tuple whose entries all vanish at a random small Gaussian point.
pub fn planted_zero_system(
    rng: &mut TestRng,
    size: usize,
    n: usize,
) -> (PolyTuple, Vec<GaussianRational>) {
    let point: Vec<GaussianRational> = (0..n)
        .map(|_| GaussianRational::from_parts(rng.gen_range(-2..=2), 1, rng.gen_range(-2..=2), 1))
        .collect();
    let shifted: Vec<MultiPoly> = (0..n)
        .map(|i| &MultiPoly::var(n, i) - &MultiPoly::constant(n, point[i].clone()))
        .collect();
    loop {
        let entries: Vec<MultiPoly> = (0..size)
            .map(|_| {
                shifted.iter().fold(MultiPoly::zero(n), |acc, s| {
                    let h = rand_poly(rng, n, 1, 2);
                    &acc + &(&h * s)
                })
            })
            .collect();
        let f = PolyTuple::new(entries).unwrap();
        if !f.is_zero() {
            return (f, point);
        }
    }
}

// ---------------------------------------------------------------------------
// Independent expansion oracle: schoolbook products over plain maps,
// sharing nothing with MultiPoly's arithmetic.

type Expanded = BTreeMap<Vec<u32>, (Rational, Rational)>;

fn expand(p: &MultiPoly) -> Expanded {
    p.terms()
        .map(|(m, c)| (m.exponents().to_vec(), (c.re.clone(), c.im.clone())))
        .collect()
}

fn accumulate(acc: &mut Expanded, key: Vec<u32>, re: Rational, im: Rational) {
    let slot = acc
        .entry(key)
        .or_insert_with(|| (Rational::zero(), Rational::zero()));
    slot.0 += re;
    slot.1 += im;
}

/// `sum_j g_j f_j` expanded term by term.
pub fn expand_dot(g: &PolyTuple, f: &PolyTuple) -> Expanded {
    let mut acc = Expanded::new();
    for (gj, fj) in g.iter().zip(f.iter()) {
        for (ma, (ar, ai)) in expand(gj) {
            for (mb, (br, bi)) in expand(fj) {
                let key: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| x + y).collect();
                let re = &ar * &br - &ai * &bi;
                let im = &ar * &bi + &ai * &br;
                accumulate(&mut acc, key, re, im);
            }
        }
    }
    acc.retain(|_, (re, im)| !(re.is_zero() && im.is_zero()));
    acc
}

/// True when `sum_j g_j f_j` expands to exactly 1.
pub fn expands_to_one(g: &PolyTuple, f: &PolyTuple) -> bool {
    let e = expand_dot(g, f);
    e.len() == 1
        && e.iter()
            .next()
            .is_some_and(|(m, (re, im))| m.iter().all(|&d| d == 0) && re.is_one() && im.is_zero())
}

// ---------------------------------------------------------------------------
// Univariate extended Euclid over Q(i), dense coefficients low to high.

pub type Dense = Vec<GaussianRational>;

pub fn to_dense(p: &MultiPoly) -> Dense {
    assert_eq!(p.n(), 1);
    let deg = p.total_degree();
    if deg < 0 {
        return Vec::new();
    }
    let mut v = vec![GaussianRational::zero(); deg as usize + 1];
    for (m, c) in p.terms() {
        v[m.exponents()[0] as usize] = c.clone();
    }
    v
}

fn trim(v: &mut Dense) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn sub_scaled_shifted(a: &mut Dense, b: &Dense, c: &GaussianRational, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, GaussianRational::zero());
    }
    for (i, bc) in b.iter().enumerate() {
        a[i + shift] = &a[i + shift] - &(c * bc);
    }
    trim(a);
}

fn dense_divrem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut r = a.clone();
    trim(&mut r);
    let lead_inv = b.last().unwrap().inv().unwrap();
    let mut q = vec![GaussianRational::zero(); r.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        sub_scaled_shifted(&mut r, b, &c, shift);
        q[shift] = c;
    }
    trim(&mut q);
    (q, r)
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn dense_sub(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    sub_scaled_shifted(&mut out, b, &GaussianRational::one(), 0);
    out
}

/// `(gcd, s, t)` with `s a + t b = gcd`.
pub fn extended_euclid(a: &Dense, b: &Dense) -> (Dense, Dense, Dense) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    trim(&mut r0);
    trim(&mut r1);
    let one = vec![GaussianRational::one()];
    let (mut s0, mut s1): (Dense, Dense) = (one.clone(), Vec::new());
    let (mut t0, mut t1): (Dense, Dense) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = dense_divrem(&r0, &r1);
        let s2 = dense_sub(&s0, &dense_mul(&q, &s1));
        let t2 = dense_sub(&t0, &dense_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

/// Unit-ideal verdict for two univariate polynomials by Euclid.
pub fn euclid_unit_verdict(f1: &MultiPoly, f2: &MultiPoly) -> bool {
    let (g, _, _) = extended_euclid(&to_dense(f1), &to_dense(f2));
    g.len() == 1
}

pub fn poly(text: &str, n: usize) -> MultiPoly {
    bezout::parse::parse_poly(text, n).unwrap()
}

pub fn tuple(texts: &[&str], n: usize) -> PolyTuple {
    PolyTuple::new(texts.iter().map(|t| poly(t, n)).collect()).unwrap()
}

/// Hand-picked systems without common zeros, with their variable counts.
pub const UNIT_FIXTURES: &[(&[&str], usize)] = &[
    (&["z1*z2 - 1", "z1"], 2),
    (&["z", "1 - z"], 1),
    (&["1"], 1),
    (&["z1", "z2", "1 - z1 - z2"], 2),
    (&["z^2 + 1", "z"], 1),
    (&["z^2 + 1", "z - 2"], 1),
    (&["z1 - z2^2", "z2", "z1 - 1"], 2),
    (&["z1^2 + z2^2 - 1", "z1", "z2"], 2),
    (&["z1*z2 - 1", "z1 - z2", "z1 + z2"], 2),
    (&["z1*z2*z3 - 1", "z1"], 3),
    (&["z^3 - 2", "z^2 + 1"], 1),
    (&["(1+i) z - 1", "(1-i) z + 2"], 1),
    (&["z1^2 - z2", "z2^2 - z1", "z1*z2 - 2"], 2),
    (&["z1 - 1", "z2 - 1", "z1*z2 - 2"], 2),
    (&["z1^2", "z2^2", "z1*z2 - 1"], 2),
    (&["z1 + z2 + z3", "z1 - z2", "z3 - 1", "z1*z2 - 5"], 3),
    (&["z1^3 - z2", "z2 - 1", "z1^2 - 2"], 2),
    (&["3 z - 1", "2 z + 5"], 1),
    (&["z^4 - 1", "z^2 + 2"], 1),
    (&["i z1 z2 + 1", "z2 - i", "z1 - 2"], 2),
    (&["z1*z2 - 1", "z2*z3 - 1", "z1 - z3 - 1"], 3),
    (&["z1^2 + 1/2 z2", "z1 - 3/4", "z2 + i"], 2),
];
