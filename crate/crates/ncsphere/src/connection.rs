//! The strong connection: a base-linear, circle-colinear unital splitting
//! of the product, built from the translation map.

use std::collections::BTreeMap;

use crate::galois::{ell, mu, TensorPP};
use crate::ncalg::{monomials_up_to, Element, Monomial};
use crate::report::Report;
use crate::sample;
use crate::scalar::Scalar;

/// The connection: on a homogeneous element of degree `n`,
/// `s(f) = (f (x) 1) * ell(Z^n)`; extended to every element by linearity
/// over the degree decomposition.
pub fn strong_s(f: &Element) -> TensorPP {
    let mut out = TensorPP::zero();
    for (d, comp) in f.degree_decompose() {
        out = &out + &ell(d).left_mul(&comp);
    }
    out
}

/// Formal triple expansion `(left, right, Z power)` used to compare the two
/// colinearity routes without a three-fold tensor type.
type Triples = BTreeMap<(Monomial, Monomial, i64), Scalar>;

fn triples_from(t: &TensorPP, attach: impl Fn(&Monomial) -> i64) -> Triples {
    let mut out = Triples::new();
    for ((l, r), c) in t.iter() {
        let key = (*l, *r, attach(r));
        let entry = out.entry(key).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Verify the four defining properties of the connection:
/// unitality, splitting of the product on all monomials up to `max_len`,
/// left base-linearity and right colinearity on seeded random samples.
pub fn verify_connection(max_len: u32, samples: u32, seed: u64) -> Report {
    let mut report = Report::new("connection")
        .param("max_len", max_len)
        .param("samples", samples)
        .param("seed", seed);

    // (i) s(1) = 1 (x) 1
    let unit = TensorPP::from_pair(&Element::one(), &Element::one());
    if strong_s(&Element::one()) != unit {
        report.fail("s(1) != 1 (x) 1".to_string());
    }

    // (ii) mu(s(m)) = m on all normal monomials up to max_len
    for m in monomials_up_to(max_len) {
        let f = Element::monomial(m, Scalar::one());
        if mu(&strong_s(&f)) != f {
            report.fail(format!("mu(s({m})) != {m}"));
        }
    }

    let mut rng = sample::rng(seed);
    for k in 0..samples {
        // (iii) left base-linearity: s(beta f) = (beta (x) 1) s(f), exactly
        let beta = sample::base_word(&mut rng, 3);
        let f = sample::homogeneous(&mut rng, max_len);
        let lhs = strong_s(&(&beta * &f));
        let rhs = strong_s(&f).left_mul(&beta);
        if lhs != rhs {
            report.fail(format!("s(beta f) != (beta (x) 1) s(f) at sample {k}"));
        }

        // (iv) right colinearity on the homogeneous sample
        let degree = f
            .terms()
            .next()
            .map(|(m, _)| m.degree())
            .expect("homogeneous sample is nonzero");
        let s_f = strong_s(&f);
        for ((l, r), _) in s_f.iter() {
            if l.degree() + r.degree() != degree {
                report.fail(format!(
                    "degree imbalance in s(f): {l} (x) {r} for degree {degree}"
                ));
            }
        }
        // (s (x) id)(f (x) Z^n) vs (id (x) coaction)(s(f)) as formal triples
        let lhs = triples_from(&s_f, |_| degree);
        let rhs = triples_from(&s_f, |r| r.degree());
        if lhs != rhs {
            report.fail(format!("colinearity triple mismatch at sample {k}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(p: u32, q: u32, r: u32, s: u32) -> Monomial {
        Monomial::new(p, q, r, s)
    }

    #[test]
    fn unitality_and_base_fixing() {
        assert_eq!(
            strong_s(&Element::one()),
            TensorPP::from_pair(&Element::one(), &Element::one())
        );
        // on the base, s is beta -> beta (x) 1
        let z = Element::gen_z();
        assert_eq!(strong_s(&z), TensorPP::from_pair(&z, &Element::one()));
    }

    #[test]
    fn connection_on_a() {
        // s(a) = z (x) a + x- (x) b
        let mut expected = TensorPP::zero();
        expected.add_term(mono(1, 1, 0, 0), mono(1, 0, 0, 0), Scalar::one());
        expected.add_term(mono(1, 0, 0, 1), mono(0, 0, 1, 0), Scalar::one());
        assert_eq!(strong_s(&Element::gen_a()), expected);
    }

    #[test]
    fn splitting_on_monomials() {
        for m in monomials_up_to(4) {
            let f = Element::monomial(m, Scalar::one());
            assert_eq!(mu(&strong_s(&f)), f, "mu(s({m}))");
        }
    }

    #[test]
    fn base_linearity_shares_the_translation_factor() {
        // z a has degree 1, so s(z a) = (z (x) 1) s(a)
        let z = Element::gen_z();
        let a = Element::gen_a();
        assert_eq!(strong_s(&(&z * &a)), strong_s(&a).left_mul(&z));
    }

    #[test]
    fn suite_passes() {
        let r = verify_connection(3, 40, 42);
        assert!(r.passed(), "{:?}", r.counterexample);
    }
}
