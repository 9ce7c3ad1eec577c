//! Acceptance suite: one test per criterion, each printing a pass line
//! with its measured budget. Run with `--nocapture` to see the lines:
//!
//! ```text
//! cargo test -p ncsphere --test acceptance -- --nocapture
//! ```

use std::time::Instant;

use num::complex::Complex64;
use rand::Rng;

use ncsphere::bundle::{chern_number, verify_projector, Projector};
use ncsphere::connection::verify_connection;
use ncsphere::expr::{parse_expr, print_expr};
use ncsphere::galois::{can_lift, chi, ell, kernel_certificate, mu, verify_chi_can};
use ncsphere::heegaard::{
    pi_boundary, rho_glue, verify_pair_presentation, DTorusElement, Orientation,
};
use ncsphere::hopf::TensorPH;
use ncsphere::ncalg::{monomials_up_to, Element, Monomial};
use ncsphere::sample;
use ncsphere::scalar::{GaussRat, Scalar};

fn ok(criterion: u32, label: &str, started: Instant) {
    println!(
        "criterion {criterion:>2} ({label}): pass in {:.2?}",
        started.elapsed()
    );
}

#[test]
fn criterion_01_rewriting_soundness() {
    let started = Instant::now();
    let mut rng = sample::rng(42);
    // order-independent normal forms on 1000 random words of length <= 12
    for _ in 0..1000 {
        let w = sample::word(&mut rng, 12);
        let det = Element::from_word(&w, Scalar::one());
        let rnd = Element::from_word_with(&w, Scalar::one(), |_, rs| rng.gen_range(0..rs.len()));
        assert_eq!(det, rnd, "normal form depends on rewrite order for {w:?}");
    }
    // star anti-homomorphism and grading multiplicativity on word pairs
    for _ in 0..300 {
        let f = Element::from_word(&sample::word(&mut rng, 6), sample::scalar(&mut rng));
        let g = Element::from_word(&sample::word(&mut rng, 6), sample::scalar(&mut rng));
        assert_eq!((&f * &g).star(), &g.star() * &f.star());
        let fg = &f * &g;
        let dmf: Vec<i64> = f.degree_decompose().keys().copied().collect();
        let dmg: Vec<i64> = g.degree_decompose().keys().copied().collect();
        for d in fg.degree_decompose().keys() {
            assert!(
                dmf.iter().any(|df| dmg.iter().any(|dg| df + dg == *d)),
                "degree {d} of the product is not a sum of factor degrees"
            );
        }
    }
    assert!(
        started.elapsed().as_secs() < 10,
        "criterion 1 exceeded 10 s"
    );
    ok(1, "rewriting soundness", started);
}

#[test]
fn criterion_02_presentation_relations() {
    let started = Instant::now();
    let a = Element::gen_a();
    let a_s = Element::gen_a_star();
    let b = Element::gen_b();
    let b_s = Element::gen_b_star();
    let one = Element::one();
    let q = Scalar::lambda();
    let q_inv = Scalar::lambda_pow(-1);

    assert!((&(&a * &a_s) - &(&a_s * &a)).is_zero(), "a a' != a' a");
    assert!((&(&b * &b_s) - &(&b_s * &b)).is_zero(), "b b' != b' b");
    assert!(
        (&(&a * &b) - &(&b * &a).scale(&q)).is_zero(),
        "a b != q b a"
    );
    assert!(
        (&(&a * &b_s) - &(&b_s * &a).scale(&q_inv)).is_zero(),
        "a b' != q^-1 b' a"
    );
    assert!(
        (&(&(&a * &a_s) + &(&b * &b_s)) - &one).is_zero(),
        "a a' + b b' != 1"
    );
    ok(2, "presentation relations", started);
}

#[test]
fn criterion_03_base_structure() {
    let started = Instant::now();
    let z = Element::gen_z();
    let rel = &(&(&z * &z) + &(&Element::gen_x_plus() * &Element::gen_x_minus())) - &z;
    assert!(rel.is_zero(), "z^2 + x+ x- - z != 0");

    let mut rng = sample::rng(42);
    for _ in 0..200 {
        let f = sample::base_word(&mut rng, 6);
        let g = sample::base_word(&mut rng, 6);
        assert_eq!(&f * &g, &g * &f, "base algebra is not commutative");
    }
    ok(3, "base structure", started);
}

#[test]
fn criterion_04_galois_first_half() {
    let started = Instant::now();
    for m in monomials_up_to(6) {
        for n in -5i64..=5 {
            let mut t = TensorPH::zero();
            t.add_term(m, n, Scalar::one());
            assert_eq!(can_lift(&chi(&t)), t, "can(chi({m} (x) Z^{n})) != id");
        }
    }
    assert!(
        started.elapsed().as_secs() < 60,
        "criterion 4 exceeded 60 s"
    );
    ok(4, "canonical map roundtrip (first half)", started);
}

#[test]
fn criterion_05_galois_consistency() {
    let started = Instant::now();
    for n in -8i64..=8 {
        let mut t = TensorPH::zero();
        t.add_term(Monomial::one(), n, Scalar::one());
        assert_eq!(chi(&t), ell(n), "chi(1 (x) Z^{n}) != ell({n})");
        assert!(mu(&ell(n)).is_one(), "mu(ell({n})) != 1");
    }
    ok(5, "translation-map consistency", started);
}

#[test]
fn criterion_06_galois_second_half() {
    let started = Instant::now();
    let r = verify_chi_can(5);
    assert!(
        r.passed(),
        "chi-can roundtrip failed: {:?}",
        r.counterexample
    );

    let cert = kernel_certificate(4, &GaussRat::complex_ratio(3, 4, 5), 2)
        .expect("certificate preconditions hold");
    assert!(
        cert.passed(),
        "kernel certificate: {:?}",
        cert.counterexample
    );
    let dims = cert.dims.as_ref().expect("certificate reports dimensions");
    for key in [
        "truncation",
        "truncation_padded",
        "kernel",
        "relations",
        "relations_inner",
    ] {
        assert!(dims.contains_key(key), "missing dimension report {key}");
    }
    assert!(
        dims["kernel"] >= dims["relations_inner"],
        "kernel must contain the in-truncation relation span"
    );
    assert!(
        started.elapsed().as_secs() < 300,
        "criterion 6 exceeded 5 min"
    );
    ok(6, "canonical map injectivity (second half)", started);
}

#[test]
fn criterion_07_connection() {
    let started = Instant::now();
    let r = verify_connection(6, 200, 42);
    assert!(
        r.passed(),
        "connection suite failed: {:?}",
        r.counterexample
    );
    ok(7, "strong connection", started);
}

#[test]
fn criterion_08_projector() {
    let started = Instant::now();
    // symbol-for-symbol unit-charge matrix
    let e = Projector::new(1);
    let z = Element::gen_z();
    assert_eq!(*e.entry(0, 0), z);
    assert_eq!(*e.entry(0, 1), Element::gen_x_minus());
    assert_eq!(*e.entry(1, 0), Element::gen_x_plus());
    assert_eq!(*e.entry(1, 1), &Element::one() - &z);

    for n in 1..=4i64 {
        let r = verify_projector(n);
        assert!(r.passed(), "projector charge {n}: {:?}", r.counterexample);
    }
    ok(8, "monopole projector algebra", started);
}

#[test]
fn criterion_09_monopole_charge() {
    let started = Instant::now();

    let budget = Instant::now();
    let c1 = chern_number(1, 400).unwrap();
    assert!(budget.elapsed().as_secs() < 30, "chern(1) exceeded 30 s");
    let s1 = c1.round();
    assert!(
        (c1 - s1).abs() < 1e-6 && s1.abs() == 1.0,
        "c1(1) = {c1} is not a unit integer within 1e-6"
    );

    for n in [2i64, 3] {
        let budget = Instant::now();
        let c = chern_number(n, 400).unwrap();
        assert!(budget.elapsed().as_secs() < 30, "chern({n}) exceeded 30 s");
        assert!(
            (c - s1 * n as f64).abs() < 1e-4,
            "c1({n}) = {c}, want {}",
            s1 * n as f64
        );
    }

    let c_neg = chern_number(-1, 400).unwrap();
    assert!(
        (c_neg + c1).abs() < 1e-9,
        "c1(-1) = {c_neg} does not negate c1(1) = {c1}"
    );

    let coarse = chern_number(3, 200).unwrap();
    let fine = chern_number(3, 400).unwrap();
    assert!(
        (coarse - fine).abs() < 1e-5,
        "grid drift {} exceeds 1e-5",
        (coarse - fine).abs()
    );
    ok(9, "monopole charge quadrature", started);
}

#[test]
fn criterion_10_heegaard() {
    let started = Instant::now();
    let r = verify_pair_presentation();
    assert!(
        r.passed(),
        "pair presentation failed: {:?}",
        r.counterexample
    );

    let mut rng = sample::rng(42);
    for _ in 0..100 {
        for orientation in [Orientation::Plus, Orientation::Minus] {
            let d1 = random_dtorus(&mut rng, orientation);
            let d2 = random_dtorus(&mut rng, orientation);
            assert_eq!(
                pi_boundary(&d1.mul(&d2).unwrap()),
                pi_boundary(&d1).mul(&pi_boundary(&d2)).unwrap(),
                "boundary restriction is not multiplicative"
            );
            assert_eq!(pi_boundary(&d1.star()), pi_boundary(&d1).star());
            if orientation == Orientation::Minus {
                let a1 = pi_boundary(&d1);
                let a2 = pi_boundary(&d2);
                assert_eq!(
                    rho_glue(&a1.mul(&a2).unwrap()).unwrap(),
                    rho_glue(&a1).unwrap().mul(&rho_glue(&a2).unwrap()).unwrap(),
                    "gluing is not multiplicative"
                );
                assert_eq!(rho_glue(&a1.star()).unwrap(), rho_glue(&a1).unwrap().star());
            }
        }
    }
    ok(10, "solid-torus gluing", started);
}

#[test]
fn criterion_11_parser_roundtrip() {
    let started = Instant::now();
    let mut rng = sample::rng(42);
    for _ in 0..500 {
        let f = sample::element(&mut rng, 6, 4);
        let printed = print_expr(&f);
        let reparsed = parse_expr(&printed)
            .unwrap_or_else(|e| panic!("printed form {printed:?} fails to parse: {e}"));
        assert_eq!(reparsed, f, "roundtrip changed the element: {printed:?}");
    }
    ok(11, "parser roundtrip", started);
}

// -- helpers --------------------------------------------------------------

fn random_dtorus<R: Rng>(rng: &mut R, orientation: Orientation) -> DTorusElement {
    let mut out = DTorusElement::zero(orientation);
    for _ in 0..rng.gen_range(1..=3) {
        let t = DTorusElement::term(
            orientation,
            rng.gen_range(0..3),
            rng.gen_range(0..3),
            rng.gen_range(-2..=2),
            sample::scalar(rng),
        );
        out = out.add(&t).unwrap();
    }
    out
}

// the idempotency/hermiticity invariant at every grid point backs criterion 9
#[test]
fn grid_idempotency_invariant() {
    let started = Instant::now();
    let g = 64;
    for n in [1i64, -1, 2] {
        let p = Projector::new(n);
        let m = p.size();
        for it in 0..g {
            for jp in 0..g {
                let theta = (it as f64 + 0.5) * std::f64::consts::PI / g as f64;
                let psi = (jp as f64 + 0.5) * 2.0 * std::f64::consts::PI / g as f64;
                let e = p.eval_at(theta, psi);
                // e^2 = e numerically
                let mut defect: f64 = 0.0;
                for i in 0..m {
                    for j in 0..m {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for k in 0..m {
                            acc += e[i * m + k] * e[k * m + j];
                        }
                        defect = defect.max((acc - e[i * m + j]).norm());
                    }
                }
                assert!(defect < 1e-12, "idempotency defect {defect} at charge {n}");
                if n.abs() == 1 {
                    for i in 0..m {
                        for j in 0..m {
                            assert!(
                                (e[i * m + j] - e[j * m + i].conj()).norm() < 1e-12,
                                "hermiticity defect at charge {n}"
                            );
                        }
                    }
                }
            }
        }
    }
    ok(9, "grid idempotency invariant (supporting)", started);
}
