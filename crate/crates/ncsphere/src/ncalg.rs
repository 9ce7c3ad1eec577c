//! Exact arithmetic in the deformed 3-sphere algebra.
//!
//! Elements are finite linear combinations of normal-form monomials
//! `a^p a'^q b^r` / `a^p a'^q b'^s` with [`Scalar`] coefficients. All
//! operations fully normalize their results, so structural equality is
//! algebra equality.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;

use crate::scalar::{GaussRat, Scalar};
use crate::word::{self, Gen, Word};

/// A normal-form monomial `a^p a'^q b^r b'^s` with `r*s = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    p: u32,
    q: u32,
    r: u32,
    s: u32,
}

impl Monomial {
    /// Panics unless `r*s = 0` (a normal word never mixes `b` and `b'`).
    pub fn new(p: u32, q: u32, r: u32, s: u32) -> Self {
        assert!(r == 0 || s == 0, "monomial mixes b and b'");
        Monomial { p, q, r, s }
    }

    pub fn one() -> Self {
        Monomial::new(0, 0, 0, 0)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Total letter count.
    #[allow(clippy::len_without_is_empty)] // the unit monomial is `is_one`
    pub fn len(&self) -> u64 {
        self.p as u64 + self.q as u64 + self.r as u64 + self.s as u64
    }

    pub fn is_one(&self) -> bool {
        self.len() == 0
    }

    /// Charge under the circle coaction: `p - q + r - s`.
    pub fn degree(&self) -> i64 {
        self.p as i64 - self.q as i64 + self.r as i64 - self.s as i64
    }

    fn key(&self) -> (u64, u32, u32, u32, u32) {
        (self.len(), self.p, self.q, self.r, self.s)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (gen, e) in [("a", self.p), ("a'", self.q), ("b", self.r), ("b'", self.s)] {
            match e {
                0 => {}
                1 => parts.push(gen.to_string()),
                e => parts.push(format!("{gen}^{e}")),
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Error returned when a classical evaluation is attempted on an element
/// with a nonzero component of nonzero degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotCoinvariant {
    pub degree: i64,
}

impl fmt::Display for NotCoinvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element has a nonzero component of degree {}; the classical character is only defined in degree 0",
            self.degree
        )
    }
}

impl std::error::Error for NotCoinvariant {}

/// A fully normalized element of the deformed 3-sphere algebra.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Element::monomial(Monomial::one(), Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::monomial(Monomial::one(), s)
    }

    pub fn monomial(m: Monomial, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Element { terms }
    }

    /// Normalize `coeff * word` with the deterministic strategy.
    pub fn from_word(w: &[Gen], coeff: Scalar) -> Self {
        Element::from_terms(word::normalize(w, &coeff))
    }

    /// Normalize with a caller-chosen redex strategy (used by the
    /// confluence tests).
    pub fn from_word_with<F>(w: &[Gen], coeff: Scalar, choose: F) -> Self
    where
        F: FnMut(&[Gen], &[usize]) -> usize,
    {
        Element::from_terms(word::normalize_with(w, &coeff, choose))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut out = Element::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    // -- generators ---------------------------------------------------

    pub fn gen_a() -> Self {
        Element::monomial(Monomial::new(1, 0, 0, 0), Scalar::one())
    }

    pub fn gen_a_star() -> Self {
        Element::monomial(Monomial::new(0, 1, 0, 0), Scalar::one())
    }

    pub fn gen_b() -> Self {
        Element::monomial(Monomial::new(0, 0, 1, 0), Scalar::one())
    }

    pub fn gen_b_star() -> Self {
        Element::monomial(Monomial::new(0, 0, 0, 1), Scalar::one())
    }

    /// `z = a a'`.
    pub fn gen_z() -> Self {
        Element::monomial(Monomial::new(1, 1, 0, 0), Scalar::one())
    }

    /// `x+ = b a'`, in normal form `q a' b`.
    pub fn gen_x_plus() -> Self {
        Element::monomial(Monomial::new(0, 1, 1, 0), Scalar::lambda())
    }

    /// `x- = a b'`, already normal.
    pub fn gen_x_minus() -> Self {
        Element::monomial(Monomial::new(1, 0, 0, 1), Scalar::one())
    }

    // -- queries ------------------------------------------------------

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(Scalar::is_one)
                .unwrap_or(false)
    }

    /// Terms in the deterministic print order `(length, p, q, r, s)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest monomial length appearing in the element (0 for zero).
    pub fn max_len(&self) -> u64 {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    // -- algebra operations --------------------------------------------

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Element::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The involution: an anti-homomorphism that conjugates scalars.
    pub fn star(&self) -> Self {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            let w = word::word_of_monomial(m);
            let starred: Word = w.iter().rev().map(|g| g.star()).collect();
            for (m2, c2) in word::normalize(&starred, &c.conj()) {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Split into homogeneous components keyed by degree.
    pub fn degree_decompose(&self) -> BTreeMap<i64, Element> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(Element::zero)
                .add_term(*m, c.clone());
        }
        out
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: i64) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            if m.degree() == degree {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// True iff every monomial has degree 0, i.e. the element lies in the
    /// base subalgebra.
    pub fn is_coinvariant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Evaluate a degree-0 element under the classical character
    /// `a -> cos(theta/2) e^{i psi}`, `b -> sin(theta/2)`, `q -> 1`.
    pub fn eval_classical(&self, theta: f64, psi: f64) -> Result<Complex64, NotCoinvariant> {
        for m in self.terms.keys() {
            if m.degree() != 0 {
                return Err(NotCoinvariant { degree: m.degree() });
            }
        }
        Ok(self.eval_unchecked(theta, psi))
    }

    /// Evaluation without the degree check; callers must have verified
    /// coinvariance (the result is meaningless otherwise).
    pub(crate) fn eval_unchecked(&self, theta: f64, psi: f64) -> Complex64 {
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, coeff) in &self.terms {
            let k = m.p as i32 - m.q as i32;
            let radial = c.powi((m.p + m.q) as i32) * s.powi((m.r + m.s) as i32);
            let phase = Complex64::new(0.0, k as f64 * psi).exp();
            acc += coeff.eval_at_one().to_complex64() * radial * phase;
        }
        acc
    }

    /// Specialize the deformation parameter, mapping scalars into exact
    /// complex rationals; the monomial support is untouched.
    pub fn specialize(&self, lambda0: &GaussRat) -> Vec<(Monomial, GaussRat)> {
        self.terms
            .iter()
            .filter_map(|(m, c)| {
                let v = c.eval(lambda0);
                if v.is_zero() {
                    None
                } else {
                    Some((*m, v))
                }
            })
            .collect()
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            let w1 = word::word_of_monomial(m1);
            for (m2, c2) in &rhs.terms {
                let mut w = w1.clone();
                w.extend(word::word_of_monomial(m2));
                for (m, c) in word::normalize(&w, &(c1 * c2)) {
                    out.add_term(m, c);
                }
            }
        }
        out
    }
}

/// All normal monomials of length exactly `len`.
pub fn monomials_of_len(len: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for p in 0..=len {
        for q in 0..=(len - p) {
            let rest = len - p - q;
            if rest == 0 {
                out.push(Monomial::new(p, q, 0, 0));
            } else {
                out.push(Monomial::new(p, q, rest, 0));
                out.push(Monomial::new(p, q, 0, rest));
            }
        }
    }
    out.sort();
    out
}

/// All normal monomials of length at most `max_len`, in ascending order.
pub fn monomials_up_to(max_len: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=max_len).flat_map(monomials_of_len).collect();
    out.sort();
    out
}
