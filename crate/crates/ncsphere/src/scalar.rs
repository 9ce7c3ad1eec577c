//! Exact scalar arithmetic.
//!
//! Scalars are Laurent polynomials in the formal unimodular deformation
//! parameter `q` with Gaussian-rational coefficients. The involution sends
//! `q` to `q^-1` and `i` to `-i`; no floating point or real deformation
//! angle ever appears here.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Exponents of the deformation parameter (and of generators) are capped
/// here; arithmetic that would exceed the cap panics instead of wrapping.
pub const MAX_EXPONENT: i64 = i32::MAX as i64;

fn check_exponent(k: i64) -> i64 {
    assert!(
        k.abs() <= MAX_EXPONENT,
        "deformation-parameter exponent overflow: |{k}| > 2^31 - 1"
    );
    k
}

/// An exact complex rational `re + im*i`, always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// `num/den` as a real rational. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(re_num + im_num*i) / den`, e.g. `(3+4i)/5`.
    pub fn complex_ratio(re_num: i64, im_num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(den)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, an exact non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// True iff the scalar lies exactly on the unit circle.
    pub fn is_unimodular(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussRat::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().expect("rational out of f64 range"),
            self.im.to_f64().expect("rational out of f64 range"),
        )
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}{}i", self.re, self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

/// A Laurent polynomial in the deformation parameter: a finitely supported
/// map from integer exponent to nonzero [`GaussRat`] coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Scalar {
    terms: BTreeMap<i64, GaussRat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(GaussRat::one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        Scalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_ratio(num, den))
    }

    /// The deformation parameter itself.
    pub fn lambda() -> Self {
        Scalar::lambda_pow(1)
    }

    /// `q^k` for any integer `k` (negative powers allowed).
    pub fn lambda_pow(k: i64) -> Self {
        check_exponent(k);
        let mut terms = BTreeMap::new();
        terms.insert(k, GaussRat::one());
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(GaussRat::is_one).unwrap_or(false)
    }

    /// Iterate `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &GaussRat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// If the scalar is `c * q^k` for a single term, return `(k, c)`.
    pub fn as_single(&self) -> Option<(i64, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    fn insert(&mut self, k: i64, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        check_exponent(k);
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Involution: conjugate coefficients and invert the parameter.
    pub fn conj(&self) -> Self {
        let mut out = Scalar::zero();
        for (k, c) in &self.terms {
            out.insert(check_exponent(-*k), c.conj());
        }
        out
    }

    /// Multiply by `q^k` in place.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out.insert(
                check_exponent(e.checked_add(k).expect("exponent overflow")),
                c.clone(),
            );
        }
        out
    }

    /// Specialize the parameter to an exact complex rational `lambda0`.
    ///
    /// Negative powers require `lambda0` to be invertible; unimodular values
    /// always are.
    pub fn eval(&self, lambda0: &GaussRat) -> GaussRat {
        let inv = lambda0.inv();
        let mut acc = GaussRat::zero();
        for (k, c) in &self.terms {
            let base = if *k >= 0 {
                lambda0.pow(*k as u32)
            } else {
                inv.as_ref()
                    .expect("cannot specialize negative powers at zero")
                    .pow((-*k) as u32)
            };
            acc = &acc + &(c * &base);
        }
        acc
    }

    /// Specialize the parameter to 1 (the classical point): sum of coefficients.
    pub fn eval_at_one(&self) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.terms.values() {
            acc = &acc + c;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, c.clone());
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, -c);
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                let k = k1.checked_add(*k2).expect("exponent overflow");
                out.insert(check_exponent(k), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = Scalar::zero();
        for (k, c) in &self.terms {
            out.insert(*k, -c);
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                k if *k > 1 => write!(f, "({c})q^{k}")?,
                k => write!(f, "({c})q^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rat_field_ops() {
        let x = GaussRat::complex_ratio(3, 4, 5);
        assert!(x.is_unimodular());
        let xi = x.inv().unwrap();
        assert_eq!(&x * &xi, GaussRat::one());
        // unimodular inverse is the conjugate
        assert_eq!(xi, x.conj());
        assert!(!GaussRat::from_int(2).is_unimodular());
    }

    #[test]
    fn conj_is_involutive_and_antimultiplicative() {
        let x = &Scalar::lambda_pow(3) + &Scalar::from_ratio(1, 2);
        let y = &Scalar::lambda_pow(-1) + &Scalar::i();
        assert_eq!(x.conj().conj(), x);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn lambda_times_conj_is_one() {
        let l = Scalar::lambda();
        assert!((&l * &l.conj()).is_one());
    }

    #[test]
    fn eval_specializations() {
        // q^2 + i at q = (3+4i)/5
        let s = &Scalar::lambda_pow(2) + &Scalar::i();
        let l0 = GaussRat::complex_ratio(3, 4, 5);
        let expected = &(&l0 * &l0) + &GaussRat::i();
        assert_eq!(s.eval(&l0), expected);
        assert_eq!(s.eval_at_one(), &GaussRat::one() + &GaussRat::i());
        // negative powers at a unimodular point
        let t = Scalar::lambda_pow(-1);
        assert_eq!(t.eval(&l0), l0.conj());
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let s = &Scalar::lambda() - &Scalar::lambda();
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }
}
