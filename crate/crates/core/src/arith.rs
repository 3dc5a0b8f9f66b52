//! Exact rational and Gaussian-rational arithmetic.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. [`GaussianRational`] is an element of `Q(i)`, which
//! stands in for the complex numbers everywhere in this crate: no operation
//! ever rounds.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Fractional bits used by [`ModulusBound::Sqrt`].
const SQRT_PRECISION_BITS: usize = 32;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `2^{-k}`.
pub fn pow2_neg(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Renders as `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Element of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// Policy for [`GaussianRational::modulus_upper_bound`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ModulusBound {
    /// `|re| + |im|`. Subadditive and submultiplicative.
    #[default]
    Sum,
    /// A rational ceiling of `sqrt(re^2 + im^2)` at 32 fractional bits.
    Sqrt,
}

impl ModulusBound {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulusBound::Sum => "sum",
            ModulusBound::Sqrt => "sqrt",
        }
    }
}

impl FromStr for ModulusBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(ModulusBound::Sum),
            "sqrt" => Ok(ModulusBound::Sqrt),
            other => Err(Error::InvalidInput(format!(
                "unknown modulus bound policy {other:?}"
            ))),
        }
    }
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(rational_int(v))
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational::new(rational(re_num, re_den), rational(im_num, im_den))
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`, the squared modulus.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Rational `B` with `|self| <= B` under the given policy.
    pub fn modulus_upper_bound_with(&self, policy: ModulusBound) -> Rational {
        match policy {
            ModulusBound::Sum => self.re.abs() + self.im.abs(),
            ModulusBound::Sqrt => sqrt_ceiling_bound(&self.re, &self.im),
        }
    }

    /// Default-policy bound `|re| + |im|`.
    pub fn modulus_upper_bound(&self) -> Rational {
        self.modulus_upper_bound_with(ModulusBound::Sum)
    }
}

fn sqrt_ceiling_bound(re: &Rational, im: &Rational) -> Rational {
    if im.is_zero() {
        return re.abs();
    }
    if re.is_zero() {
        return im.abs();
    }
    // Over the common denominator D: |c| = sqrt(A^2 + C^2) / D.
    let den = re.denom().lcm(im.denom());
    let a = re.numer() * (&den / re.denom());
    let c = im.numer() * (&den / im.denom());
    let radicand = &a * &a + &c * &c;
    let root = radicand.sqrt();
    if &root * &root == radicand {
        return Rational::new(root, den);
    }
    let scaled = radicand << (2 * SQRT_PRECISION_BITS);
    let mut root = scaled.sqrt();
    if &root * &root < scaled {
        root += 1;
    }
    Rational::new(root, den << SQRT_PRECISION_BITS)
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = format_rational(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im_abs = self.im.abs();
        let im = match (im_abs.numer().is_one(), im_abs.denom().is_one()) {
            (true, true) => "i".to_string(),
            (true, false) => format!("i/{}", im_abs.denom()),
            (false, true) => format!("{}i", im_abs.numer()),
            (false, false) => format!("{}i/{}", im_abs.numer(), im_abs.denom()),
        };
        let neg = self.im.numer().sign() == Sign::Minus;
        match (self.re.is_zero(), neg) {
            (true, false) => write!(f, "{im}"),
            (true, true) => write!(f, "-{im}"),
            (false, false) => write!(f, "{re}+{im}"),
            (false, true) => write!(f, "{re}-{im}"),
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::from_rational(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        GaussianRational::from_int(v)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}
