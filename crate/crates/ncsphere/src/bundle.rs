//! Charge-`n` monopole projectors from the translation map, exact
//! algebraic verification, and the numerical first Chern number on the
//! classical sphere.
//!
//! The Chern integral `(1/2pi i) Int Tr(E [dE/dtheta, dE/dpsi])` is
//! evaluated on a `grid x grid` mesh of cells: midpoint rule in `psi`
//! (exact for the trigonometric-polynomial integrand once the grid exceeds
//! its bandwidth), per-cell Simpson in `theta`, and 6th-order central
//! differences at the grid spacing for both derivatives. Entries are
//! evaluated slightly outside the fundamental square for the boundary
//! stencils; the parametrization covers the whole sphere, so this is
//! analytically harmless. The summation order is fixed (row-major,
//! pairwise), making every run bit-identical.

use num::complex::Complex64;

use crate::expr::coeff_word_text;
use crate::galois::ell_projector;
use crate::ncalg::{Element, NotCoinvariant};
use crate::report::Report;

/// A square matrix of coinvariant elements with `e^2 = e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projector {
    charge: i64,
    entries: Vec<Vec<Element>>,
}

impl Projector {
    /// The charge-`n` projector `e[i][j] = r_i * l_j` from the translation
    /// legs at `Z^n`, indexed by ascending `b`-power; size `|n| + 1`.
    pub fn new(charge: i64) -> Self {
        Projector {
            charge,
            entries: ell_projector(charge),
        }
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Element>] {
        &self.entries
    }

    /// Entrywise matrix product.
    pub fn mat_mul(&self, other: &Projector) -> Vec<Vec<Element>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Element::zero();
                        for k in 0..n {
                            acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn trace(&self) -> Element {
        let mut acc = Element::zero();
        for i in 0..self.size() {
            acc = &acc + &self.entries[i][i];
        }
        acc
    }

    /// Evaluate the projector at a classical point; entries must be
    /// coinvariant (checked on the first call path by [`chern_number`]).
    pub fn eval_at(&self, theta: f64, psi: f64) -> Vec<Complex64> {
        let m = self.size();
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = self.entries[i][j].eval_unchecked(theta, psi);
            }
        }
        out
    }

    /// Entries rendered over the base alphabet `z`, `x+`, `x-` where
    /// possible (every coinvariant monomial is a parameter-phase times
    /// `z^a x+^b` or `z^a x-^c`).
    pub fn entries_in_base_alphabet(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(base_alphabet_text).collect())
            .collect()
    }
}

/// Render a coinvariant element as a sum over the base alphabet; falls
/// back to the generator alphabet for non-coinvariant input.
pub fn base_alphabet_text(e: &Element) -> String {
    if !e.is_coinvariant() {
        return crate::expr::print_expr(e);
    }
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in e.terms().enumerate() {
        // m = a^p a'^(p+r) b^r  ->  z^p x+^r   (up to a parameter phase)
        // m = a^(q+s) a'^q b'^s ->  z^q x-^s
        let (alpha, plus_pow, minus_pow) = if m.r() > 0 {
            (m.p(), m.r(), 0)
        } else {
            (m.q(), 0, m.s())
        };
        let mut base = Element::gen_z().pow(alpha);
        if plus_pow > 0 {
            base = &base * &Element::gen_x_plus().pow(plus_pow);
        }
        if minus_pow > 0 {
            base = &base * &Element::gen_x_minus().pow(minus_pow);
        }
        let (bm, bc) = base.terms().next().expect("base word is a single monomial");
        debug_assert_eq!(bm, m, "base-alphabet support mismatch");
        let (k, unit) = bc.as_single().expect("base word has a unit coefficient");
        debug_assert!(unit.is_one());
        let shown = c.shift(-k);
        let mut word = Vec::new();
        for (sym, e) in [("z", alpha), ("x+", plus_pow), ("x-", minus_pow)] {
            match e {
                0 => {}
                1 => word.push(sym.to_string()),
                e => word.push(format!("{sym}^{e}")),
            }
        }
        let (neg, text) = coeff_word_text(&shown, word);
        if idx == 0 {
            if neg {
                out.push_str("- ");
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&text);
    }
    out
}

/// Exact verification: idempotency, coinvariant entries, unit trace, and
/// self-adjointness for unit charge.
pub fn verify_projector(charge: i64) -> Report {
    let mut report = Report::new("projector")
        .param("charge", charge)
        .dim("size", (charge.unsigned_abs() + 1) as usize);
    let e = Projector::new(charge);
    let e2 = e.mat_mul(&e);
    for i in 0..e.size() {
        for j in 0..e.size() {
            if &e2[i][j] != e.entry(i, j) {
                report.fail(format!("(e^2)[{i}][{j}] != e[{i}][{j}]"));
            }
            if !e.entry(i, j).is_coinvariant() {
                report.fail(format!("entry [{i}][{j}] is not coinvariant"));
            }
        }
    }
    if !e.trace().is_one() {
        report.fail("trace(e) != 1".to_string());
    }
    if charge.unsigned_abs() == 1 {
        for i in 0..e.size() {
            for j in 0..e.size() {
                if e.entry(i, j).star() != *e.entry(j, i) {
                    report.fail(format!("e[{i}][{j}]* != e[{j}][{i}]"));
                }
            }
        }
    }
    report
}

// -- numerical Chern number ---------------------------------------------

struct CompiledTerm {
    k: i32,
    cos_pow: i32,
    sin_pow: i32,
    coef: Complex64,
}

fn compile(e: &Element) -> Vec<CompiledTerm> {
    e.terms()
        .map(|(m, c)| CompiledTerm {
            k: m.p() as i32 - m.q() as i32,
            cos_pow: (m.p() + m.q()) as i32,
            sin_pow: (m.r() + m.s()) as i32,
            coef: c.eval_at_one().to_complex64(),
        })
        .collect()
}

/// Deterministic pairwise sum (row-major input order).
fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 8 {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in v {
            acc += x;
        }
        return acc;
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

fn mat_mul_flat(a: &[Complex64], b: &[Complex64], m: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); m * m];
    for i in 0..m {
        for k in 0..m {
            let aik = a[i * m + k];
            for j in 0..m {
                out[i * m + j] += aik * b[k * m + j];
            }
        }
    }
    out
}

/// First Chern number of the charge-`n` projector by quadrature over the
/// classical sphere with the orientation `dtheta ^ dpsi`,
/// `a = cos(theta/2) e^{i psi}`, `b = sin(theta/2)`.
pub fn chern_number(charge: i64, grid: u32) -> Result<f64, NotCoinvariant> {
    Ok(integrate(charge, grid, false)?.0)
}

/// The Berry-curvature density `Re Tr(E [dE/dtheta, dE/dpsi]) / (2 pi i)`
/// sampled at the cell midpoints of a `grid x grid` mesh, row-major in
/// `theta` then `psi`; its quadrature over the square is the Chern number.
pub fn curvature_field(charge: i64, grid: u32) -> Result<Vec<f64>, NotCoinvariant> {
    Ok(integrate(charge, grid, true)?
        .1
        .expect("field was requested"))
}

fn integrate(
    charge: i64,
    grid: u32,
    collect_field: bool,
) -> Result<(f64, Option<Vec<f64>>), NotCoinvariant> {
    assert!(grid >= 8, "grid must be at least 8");
    let p = Projector::new(charge);
    for row in p.rows() {
        for e in row {
            // surfaces the error before any numerics
            e.eval_classical(0.1, 0.2)?;
        }
    }

    let m = p.size();
    let g = grid as usize;
    let h_t = std::f64::consts::PI / g as f64; // theta cell width
    let h_p = 2.0 * std::f64::consts::PI / g as f64; // psi cell width

    let compiled: Vec<Vec<CompiledTerm>> = p
        .rows()
        .iter()
        .flat_map(|row| row.iter().map(compile))
        .collect();
    let kmax = charge.unsigned_abs() as i32;

    // phase tables e^{i k psi_j} for midpoint columns
    let phases: Vec<Vec<Complex64>> = (0..g)
        .map(|j| {
            let psi = (j as f64 + 0.5) * h_p;
            (-kmax..=kmax)
                .map(|k| Complex64::new(0.0, k as f64 * psi).exp())
                .collect()
        })
        .collect();

    // theta rows live at half-cell spacing: theta(a) = a * h_t / 2 for
    // absolute row index a in [-6, 2g+6]
    let eval_row = |a: i64| -> Vec<Complex64> {
        let theta = a as f64 * h_t / 2.0;
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        let mut row = vec![Complex64::new(0.0, 0.0); g * m * m];
        for (idx, terms) in compiled.iter().enumerate() {
            for t in terms {
                let radial = t.coef * c.powi(t.cos_pow) * s.powi(t.sin_pow);
                for (j, ph) in phases.iter().enumerate() {
                    row[j * m * m + idx] += radial * ph[(t.k + kmax) as usize];
                }
            }
        }
        row
    };

    // sliding window of 13 rows centered on the current node
    let mut window: std::collections::VecDeque<Vec<Complex64>> = (-6..=6).map(eval_row).collect();

    let stencil = [-1.0, 9.0, -45.0, 45.0, -9.0, 1.0];
    let col_off = [-3i64, -2, -1, 1, 2, 3];

    let mut weighted = Vec::with_capacity((2 * g + 1) * g);
    let mut field = if collect_field {
        Some(Vec::with_capacity(g * g))
    } else {
        None
    };
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    for t in 0..=(2 * g) {
        if t > 0 {
            window.pop_front();
            window.push_back(eval_row(t as i64 + 6));
        }
        // Simpson weights over half-cell nodes: ends 1, odd 4, even interior 2
        let w_t = if t == 0 || t == 2 * g {
            1.0
        } else if t % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let center = &window[6];
        for j in 0..g {
            let mm = m * m;
            let e_mat = &center[j * mm..(j + 1) * mm];
            // d/dtheta: rows at +-h, +-2h, +-3h are window offsets +-2, +-4, +-6
            let mut dth = vec![Complex64::new(0.0, 0.0); mm];
            for (w, off) in stencil.iter().zip([-6i64, -4, -2, 2, 4, 6]) {
                let row = &window[(6 + off) as usize];
                let slice = &row[j * mm..(j + 1) * mm];
                for (d, v) in dth.iter_mut().zip(slice) {
                    *d += *w * v;
                }
            }
            for d in dth.iter_mut() {
                *d /= 60.0 * h_t;
            }
            // d/dpsi: periodic columns
            let mut dps = vec![Complex64::new(0.0, 0.0); mm];
            for (w, off) in stencil.iter().zip(col_off) {
                let jj = (j as i64 + off).rem_euclid(g as i64) as usize;
                let slice = &center[jj * mm..(jj + 1) * mm];
                for (d, v) in dps.iter_mut().zip(slice) {
                    *d += *w * v;
                }
            }
            for d in dps.iter_mut() {
                *d /= 60.0 * h_p;
            }
            let bc = mat_mul_flat(&dth, &dps, m);
            let cb = mat_mul_flat(&dps, &dth, m);
            let mut tr = Complex64::new(0.0, 0.0);
            for i in 0..m {
                for k in 0..m {
                    tr += e_mat[i * m + k] * (bc[k * m + i] - cb[k * m + i]);
                }
            }
            weighted.push(tr * w_t);
            if t % 2 == 1 {
                if let Some(f) = field.as_mut() {
                    f.push((tr / two_pi_i).re);
                }
            }
        }
    }

    let total = pairwise_sum(&weighted) * (h_t / 6.0) * h_p;
    let c1 = (total / two_pi_i).re;
    Ok((c1, field))
}

/// Chern computation wrapped in a report: records the value, the nearest
/// integer, and the orientation convention (the global sign is reported,
/// not asserted).
pub fn chern_report(charge: i64, grid: u32) -> Result<Report, NotCoinvariant> {
    let c1 = chern_number(charge, grid)?;
    let nearest = c1.round();
    let mut report = Report::new("chern")
        .param("charge", charge)
        .param("grid", grid)
        .extra("c1", c1)
        .extra("charge_estimate", nearest as i64)
        .extra(
            "orientation",
            "dtheta ^ dpsi with a = cos(theta/2) e^{i psi}, b = sin(theta/2)",
        );
    if (c1 - nearest).abs() > 1e-4 {
        report.fail(format!("c1 = {c1} is not within 1e-4 of an integer"));
    } else if nearest.abs() as i64 != charge.abs() {
        report.fail(format!(
            "c1 rounds to {nearest} but the winding has magnitude {}",
            charge.abs()
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Monomial;
    use crate::scalar::Scalar;

    #[test]
    fn unit_charge_projector_matches_bott_matrix() {
        let e = Projector::new(1);
        assert_eq!(e.size(), 2);
        let z = Element::gen_z();
        assert_eq!(*e.entry(0, 0), z);
        assert_eq!(*e.entry(0, 1), Element::gen_x_minus());
        assert_eq!(*e.entry(1, 0), Element::gen_x_plus());
        assert_eq!(*e.entry(1, 1), &Element::one() - &z);
    }

    #[test]
    fn charge_zero_is_the_unit() {
        let e = Projector::new(0);
        assert_eq!(e.size(), 1);
        assert!(e.entry(0, 0).is_one());
    }

    #[test]
    fn verify_small_charges() {
        for n in [-2i64, -1, 0, 1, 2, 3] {
            let r = verify_projector(n);
            assert!(r.passed(), "charge {n}: {:?}", r.counterexample);
        }
    }

    #[test]
    fn charge_two_top_entries() {
        // e00 = a^2 a'^2, e01 = 2 q^-1 a^2 (a b)* up to normalization
        let e = Projector::new(2);
        assert_eq!(
            *e.entry(0, 0),
            Element::monomial(Monomial::new(2, 2, 0, 0), Scalar::one())
        );
        let ab = &Element::gen_a() * &Element::gen_b();
        let expected = (&Element::gen_a().pow(2) * &ab.star()).scale(&Scalar::from_int(2));
        assert_eq!(*e.entry(0, 1), expected);
    }

    #[test]
    fn base_alphabet_rendering() {
        let e = Projector::new(1);
        let rows = e.entries_in_base_alphabet();
        assert_eq!(rows[0][0], "z");
        assert_eq!(rows[0][1], "x-");
        assert_eq!(rows[1][0], "x+");
        assert_eq!(rows[1][1], "1 - z");
    }

    #[test]
    fn numeric_idempotency_on_a_coarse_grid() {
        let p = Projector::new(1);
        for (t, ps) in [(0.4, 0.9), (1.7, 3.3), (2.8, 5.9)] {
            let e = p.eval_at(t, ps);
            let e2 = mat_mul_flat(&e, &e, 2);
            for (x, y) in e.iter().zip(&e2) {
                assert!((x - y).norm() < 1e-12);
            }
            // hermitian at unit charge
            assert!((e[1] - e[2].conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn curvature_field_integrates_to_the_charge() {
        let g = 64u32;
        let field = curvature_field(1, g).unwrap();
        assert_eq!(field.len(), (g * g) as usize);
        let h_t = std::f64::consts::PI / g as f64;
        let h_p = 2.0 * std::f64::consts::PI / g as f64;
        let total: f64 = field.iter().sum::<f64>() * h_t * h_p;
        let c = chern_number(1, g).unwrap();
        assert!(
            (total - c).abs() < 1e-3,
            "midpoint sum {total} vs cell-Simpson {c}"
        );
    }

    #[test]
    fn chern_zero_charge_vanishes() {
        let c = chern_number(0, 64).unwrap();
        assert!(c.abs() < 1e-9, "c1(0) = {c}");
    }

    #[test]
    fn chern_unit_charge_is_a_unit_integer() {
        let c = chern_number(1, 64).unwrap();
        assert!((c.abs() - 1.0).abs() < 1e-4, "c1(1) = {c}");
        let c_neg = chern_number(-1, 64).unwrap();
        assert!((c + c_neg).abs() < 1e-9, "opposite charges must cancel");
    }
}
