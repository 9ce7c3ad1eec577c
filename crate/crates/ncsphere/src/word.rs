//! Free words in the four generators and the rewrite system that brings
//! them to normal form.
//!
//! The defining relations are oriented into seven rules:
//!
//! ```text
//! a'a  -> a a'          b a  -> q^-1 a b       b a' -> q a' b
//! b'a  -> q a b'        b'a' -> q^-1 a' b'
//! b b' -> 1 - a a'      b'b  -> 1 - a a'
//! ```
//!
//! Letters `a`, `a'` move left, `b`-letters collect on the right, and a
//! mixed `b b'` or `b'b` pair is eliminated through the sphere relation.
//! Normal words are exactly `a^p a'^q b^r` and `a^p a'^q b'^s`.
//!
//! Each rule strictly decreases the measure
//! `(number of b-letters, b-before-a inversions, a'-before-a inversions)`
//! in lexicographic order: the sphere rules remove two b-letters, the four
//! commutation rules remove one b-before-a inversion without touching the
//! other components, and `a'a -> a a'` removes one a'-inversion. The first
//! component is bounded by the word length `L` and the other two by `L^2`,
//! so a rewrite chain from a word of length `L` takes at most
//! `(L/2 + 1) * 2L^2 + L` steps; [`step_bound`] adds slack and the engine
//! asserts it.

use crate::ncalg::Monomial;
use crate::scalar::Scalar;

/// One generator letter. `AStar`/`BStar` are the adjoints of `A`/`B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    AStar,
    B,
    BStar,
}

impl Gen {
    /// The adjoint letter.
    pub fn star(self) -> Gen {
        match self {
            Gen::A => Gen::AStar,
            Gen::AStar => Gen::A,
            Gen::B => Gen::BStar,
            Gen::BStar => Gen::B,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Gen::A => "a",
            Gen::AStar => "a'",
            Gen::B => "b",
            Gen::BStar => "b'",
        }
    }
}

/// A free word; not necessarily in normal form.
pub type Word = Vec<Gen>;

/// What a rule does to an adjacent pair of letters.
enum RuleAction {
    /// Swap the pair and multiply the coefficient by `q^phase`.
    Commute { phase: i64 },
    /// Replace the pair by `1 - a a'` (two branches).
    Sphere,
}

fn rule_for(x: Gen, y: Gen) -> Option<RuleAction> {
    use Gen::*;
    match (x, y) {
        (AStar, A) => Some(RuleAction::Commute { phase: 0 }),
        (B, A) => Some(RuleAction::Commute { phase: -1 }),
        (B, AStar) => Some(RuleAction::Commute { phase: 1 }),
        (BStar, A) => Some(RuleAction::Commute { phase: 1 }),
        (BStar, AStar) => Some(RuleAction::Commute { phase: -1 }),
        (B, BStar) | (BStar, B) => Some(RuleAction::Sphere),
        _ => None,
    }
}

/// Positions at which a rule applies.
pub fn redexes(w: &[Gen]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| rule_for(w[i], w[i + 1]).is_some())
        .collect()
}

/// Apply the rule at position `i`, returning the branch words and the
/// coefficient multiplier of each.
fn apply_at(w: &[Gen], i: usize) -> Vec<(Word, Scalar)> {
    match rule_for(w[i], w[i + 1]).expect("no redex at position") {
        RuleAction::Commute { phase } => {
            let mut v = w.to_vec();
            v.swap(i, i + 1);
            vec![(v, Scalar::lambda_pow(phase))]
        }
        RuleAction::Sphere => {
            let mut shorter = Vec::with_capacity(w.len() - 2);
            shorter.extend_from_slice(&w[..i]);
            shorter.extend_from_slice(&w[i + 2..]);
            let mut swapped = w.to_vec();
            swapped[i] = Gen::A;
            swapped[i + 1] = Gen::AStar;
            vec![
                (shorter, Scalar::one()),
                (swapped, &Scalar::zero() - &Scalar::one()),
            ]
        }
    }
}

/// Upper bound on the number of rule applications along any rewrite chain
/// starting from a word of length `len`.
pub fn step_bound(len: usize) -> usize {
    4 * len * len * len + 64
}

/// Rewrite `coeff * word` to normal form, letting `choose` pick which redex
/// to contract at every step. Returns unmerged `(monomial, coefficient)`
/// terms. Panics if any chain exceeds [`step_bound`] (that would be a bug in
/// the rule system, not bad input).
pub fn normalize_with<F>(word: &[Gen], coeff: &Scalar, mut choose: F) -> Vec<(Monomial, Scalar)>
where
    F: FnMut(&[Gen], &[usize]) -> usize,
{
    let bound = step_bound(word.len());
    let mut out = Vec::new();
    let mut pending: Vec<(Word, Scalar, usize)> = vec![(word.to_vec(), coeff.clone(), 0)];
    while let Some((w, c, steps)) = pending.pop() {
        if c.is_zero() {
            continue;
        }
        let rs = redexes(&w);
        if rs.is_empty() {
            out.push((monomial_of_normal_word(&w), c));
            continue;
        }
        assert!(
            steps < bound,
            "rewrite exceeded step bound: bug in rule system"
        );
        let pick = choose(&w, &rs);
        for (w2, mult) in apply_at(&w, rs[pick]) {
            pending.push((w2, &c * &mult, steps + 1));
        }
    }
    out
}

/// Deterministic normalization: always contract the leftmost redex.
pub fn normalize(word: &[Gen], coeff: &Scalar) -> Vec<(Monomial, Scalar)> {
    normalize_with(word, coeff, |_, _| 0)
}

/// The word spelling of a normal monomial: `a^p a'^q b^r b'^s`.
pub fn word_of_monomial(m: &Monomial) -> Word {
    let mut w = Vec::with_capacity(m.len() as usize);
    w.extend(std::iter::repeat_n(Gen::A, m.p() as usize));
    w.extend(std::iter::repeat_n(Gen::AStar, m.q() as usize));
    w.extend(std::iter::repeat_n(Gen::B, m.r() as usize));
    w.extend(std::iter::repeat_n(Gen::BStar, m.s() as usize));
    w
}

fn monomial_of_normal_word(w: &[Gen]) -> Monomial {
    let mut counts = [0u32; 4];
    for g in w {
        counts[*g as usize] += 1;
    }
    debug_assert!(redexes(w).is_empty(), "word is not normal");
    Monomial::new(counts[0], counts[1], counts[2], counts[3])
}
