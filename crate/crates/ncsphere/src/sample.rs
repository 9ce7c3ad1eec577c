//! Seeded random generators shared by the verification suites and tests.
//!
//! Everything here is driven by a caller-supplied RNG so that suites are
//! reproducible from a single seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ncalg::{monomials_up_to, Element, Monomial};
use crate::scalar::{GaussRat, Scalar};
use crate::word::Gen;

/// The suite RNG for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random free word of length `0..=max_len`.
pub fn word<R: Rng>(rng: &mut R, max_len: usize) -> Vec<Gen> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| [Gen::A, Gen::AStar, Gen::B, Gen::BStar][rng.gen_range(0..4)])
        .collect()
}

/// A small exact scalar: rational or Gaussian-rational times a small power
/// of the deformation parameter.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let k = rng.gen_range(-2..=2);
    let re = rng.gen_range(-3..=3);
    let im = if rng.gen_bool(0.3) {
        rng.gen_range(-2..=2)
    } else {
        0
    };
    let den = rng.gen_range(1..=3);
    let c = GaussRat::complex_ratio(re, im, den);
    if c.is_zero() {
        return Scalar::lambda_pow(k);
    }
    Scalar::from_gauss(c).shift(k)
}

/// A nonzero scalar.
pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random element: up to `max_terms` random words with random coefficients.
pub fn element<R: Rng>(rng: &mut R, max_len: usize, max_terms: usize) -> Element {
    let n = rng.gen_range(1..=max_terms);
    let mut acc = Element::zero();
    for _ in 0..n {
        let w = word(rng, max_len);
        acc = &acc + &Element::from_word(&w, scalar(rng));
    }
    acc
}

/// A uniformly random normal monomial of length `0..=max_len`.
pub fn monomial<R: Rng>(rng: &mut R, max_len: u32) -> Monomial {
    let all = monomials_up_to(max_len);
    all[rng.gen_range(0..all.len())]
}

/// A random word in the base generators `z`, `x+`, `x-` of length
/// `0..=max_len`, multiplied out.
pub fn base_word<R: Rng>(rng: &mut R, max_len: usize) -> Element {
    let len = rng.gen_range(0..=max_len);
    let mut acc = Element::one();
    for _ in 0..len {
        let g = match rng.gen_range(0..3) {
            0 => Element::gen_z(),
            1 => Element::gen_x_plus(),
            _ => Element::gen_x_minus(),
        };
        acc = &acc * &g;
    }
    acc
}

/// A random nonzero homogeneous element of length at most `max_len`:
/// one or two normal monomials of the same degree with random coefficients.
pub fn homogeneous<R: Rng>(rng: &mut R, max_len: u32) -> Element {
    let m = monomial(rng, max_len);
    let d = m.degree();
    let mut acc = Element::monomial(m, nonzero_scalar(rng));
    if rng.gen_bool(0.5) {
        let same_degree: Vec<Monomial> = monomials_up_to(max_len)
            .into_iter()
            .filter(|m2| m2.degree() == d)
            .collect();
        let m2 = same_degree[rng.gen_range(0..same_degree.len())];
        acc = &acc + &Element::monomial(m2, nonzero_scalar(rng));
    }
    if acc.is_zero() {
        // coefficients may have cancelled; fall back to a single monomial
        acc = Element::monomial(m, Scalar::one());
    }
    acc
}
