//! Property tests for the algebraic core: ring axioms, the involution,
//! grading, rewrite-order independence, and the printer/parser pair.

use proptest::prelude::*;

use ncsphere::expr::{parse_expr, print_expr};
use ncsphere::ncalg::Element;
use ncsphere::scalar::{GaussRat, Scalar};
use ncsphere::word::Gen;

fn gen_letter() -> impl Strategy<Value = Gen> {
    prop_oneof![
        Just(Gen::A),
        Just(Gen::AStar),
        Just(Gen::B),
        Just(Gen::BStar)
    ]
}

fn word(max_len: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(gen_letter(), 0..=max_len)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -2i64..=2, 1i64..=3, -2i64..=2).prop_map(|(re, im, den, k)| {
        let c = GaussRat::complex_ratio(re, im, den);
        if c.is_zero() {
            Scalar::one()
        } else {
            Scalar::from_gauss(c).shift(k)
        }
    })
}

fn element(max_word: usize, max_terms: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((word(max_word), scalar()), 1..=max_terms).prop_map(|terms| {
        let mut acc = Element::zero();
        for (w, c) in terms {
            acc = &acc + &Element::from_word(&w, c);
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rewrite_order_does_not_matter(w in word(10), seed in any::<u64>()) {
        let mut rng = ncsphere::sample::rng(seed);
        let det = Element::from_word(&w, Scalar::one());
        let rnd = Element::from_word_with(&w, Scalar::one(), |_, rs| {
            use rand::Rng;
            rng.gen_range(0..rs.len())
        });
        prop_assert_eq!(det, rnd);
    }

    #[test]
    fn product_is_associative(f in element(4, 2), g in element(4, 2), h in element(4, 2)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn product_distributes(f in element(4, 2), g in element(4, 2), h in element(4, 2)) {
        let lhs = &f * &(&g + &h);
        let rhs = &(&f * &g) + &(&f * &h);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_involutive(f in element(5, 3)) {
        prop_assert_eq!(f.star().star(), f);
    }

    #[test]
    fn star_reverses_products(f in element(4, 2), g in element(4, 2)) {
        prop_assert_eq!((&f * &g).star(), &g.star() * &f.star());
    }

    #[test]
    fn degrees_of_products_come_from_factor_degrees(f in element(4, 2), g in element(4, 2)) {
        let df: Vec<i64> = f.degree_decompose().keys().copied().collect();
        let dg: Vec<i64> = g.degree_decompose().keys().copied().collect();
        for d in (&f * &g).degree_decompose().keys() {
            prop_assert!(df.iter().any(|x| dg.iter().any(|y| x + y == *d)));
        }
    }

    #[test]
    fn decomposition_sums_back(f in element(5, 3)) {
        let mut acc = Element::zero();
        for (_, comp) in f.degree_decompose() {
            acc = &acc + &comp;
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn printer_and_parser_are_inverse(f in element(5, 3)) {
        let printed = print_expr(&f);
        let reparsed = parse_expr(&printed).expect("printed text parses");
        prop_assert_eq!(reparsed, f);
    }

    #[test]
    fn scalars_are_central(f in element(4, 2), g in element(4, 2), k in -2i64..=2) {
        let s = Scalar::lambda_pow(k);
        let lhs = &f.scale(&s) * &g;
        let rhs = (&f * &g).scale(&s);
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(&f * &g.scale(&s), rhs);
    }

    #[test]
    fn scalars_are_a_commutative_star_ring(k1 in -3i64..=3, k2 in -3i64..=3,
                                           re in -3i64..=3, im in -3i64..=3) {
        let x = Scalar::from_gauss(GaussRat::complex_ratio(re, im, 3)).shift(k1);
        let y = &Scalar::lambda_pow(k2) + &Scalar::from_int(re);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }
}
