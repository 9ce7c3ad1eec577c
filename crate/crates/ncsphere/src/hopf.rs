//! The circle Hopf algebra (Laurent polynomials in a group-like unitary
//! `Z`) and its coaction on the sphere algebra.
//!
//! The coaction sends both generators to themselves tensored with `Z`, so
//! on a normal monomial it is just degree bookkeeping:
//! `f -> f (x) Z^deg(f)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::ncalg::{Element, Monomial};
use crate::scalar::Scalar;

/// An element of the circle algebra: finitely supported map from the
/// power of `Z` (negative = adjoint powers) to a nonzero [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HElement {
    terms: BTreeMap<i64, Scalar>,
}

impl HElement {
    pub fn zero() -> Self {
        HElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        HElement::group_like(0)
    }

    /// `Z^n` (any integer `n`).
    pub fn group_like(n: i64) -> Self {
        HElement::term(n, Scalar::one())
    }

    pub fn term(n: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        HElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    fn add_term(&mut self, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(n) {
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

    /// Laurent multiplication: `Z^m Z^n = Z^{m+n}`.
    pub fn mul(&self, rhs: &HElement) -> HElement {
        let mut out = HElement::zero();
        for (m, c1) in &self.terms {
            for (n, c2) in &rhs.terms {
                out.add_term(m.checked_add(*n).expect("Z exponent overflow"), c1 * c2);
            }
        }
        out
    }

    /// The involution: `Z^n -> Z^{-n}` with conjugated coefficients.
    pub fn star(&self) -> HElement {
        let mut out = HElement::zero();
        for (n, c) in &self.terms {
            out.add_term(-n, c.conj());
        }
        out
    }

    /// The counit: every group-like maps to 1, so this is the coefficient sum.
    pub fn counit(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.terms.values() {
            acc = &acc + c;
        }
        acc
    }
}

impl std::ops::Add for &HElement {
    type Output = HElement;
    fn add(self, rhs: &HElement) -> HElement {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(*n, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &HElement {
    type Output = HElement;
    fn sub(self, rhs: &HElement) -> HElement {
        let mut out = self.clone();
        for (n, c) in &rhs.terms {
            out.add_term(*n, -c);
        }
        out
    }
}

fn z_text(n: i64) -> String {
    match n {
        0 => "1".to_string(),
        1 => "Z".to_string(),
        -1 => "Z'".to_string(),
        n if n > 1 => format!("Z^{n}"),
        n => format!("Z'^{}", -n),
    }
}

impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| {
                if c.is_one() {
                    z_text(*n)
                } else {
                    format!("({}) {}", c, z_text(*n))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A formal tensor `P (x) H`: finitely supported map from
/// `(normal monomial, Z power)` to a nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorPH {
    terms: BTreeMap<(Monomial, i64), Scalar>,
}

impl TensorPH {
    pub fn zero() -> Self {
        TensorPH {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Monomial, i64), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, n: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((m, n)) {
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

    /// `f (x) h` for a full element and circle element.
    pub fn from_pair(f: &Element, h: &HElement) -> Self {
        let mut out = TensorPH::zero();
        for (m, c) in f.terms() {
            for (n, d) in h.iter() {
                out.add_term(*m, n, c * d);
            }
        }
        out
    }

    /// Componentwise product: algebra legs multiply in the algebra, circle
    /// legs add exponents.
    pub fn mul(&self, rhs: &TensorPH) -> TensorPH {
        let mut out = TensorPH::zero();
        for ((m1, n1), c1) in &self.terms {
            for ((m2, n2), c2) in &rhs.terms {
                let prod =
                    &Element::monomial(*m1, c1.clone()) * &Element::monomial(*m2, c2.clone());
                let n = n1.checked_add(*n2).expect("Z exponent overflow");
                for (m, c) in prod.terms() {
                    out.add_term(*m, n, c.clone());
                }
            }
        }
        out
    }

    /// `star (x) star`.
    pub fn star(&self) -> TensorPH {
        let mut out = TensorPH::zero();
        for ((m, n), c) in &self.terms {
            let starred = Element::monomial(*m, c.clone()).star();
            for (m2, c2) in starred.terms() {
                out.add_term(*m2, -n, c2.clone());
            }
        }
        out
    }
}

impl fmt::Display for TensorPH {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, n), c)| {
                let leg = Element::monomial(*m, c.clone());
                format!("{} (x) {}", leg, z_text(*n))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The coaction: `f -> sum_n f_n (x) Z^n` over the degree decomposition.
pub fn coact(f: &Element) -> TensorPH {
    let mut out = TensorPH::zero();
    for (m, c) in f.terms() {
        out.add_term(*m, m.degree(), c.clone());
    }
    out
}
