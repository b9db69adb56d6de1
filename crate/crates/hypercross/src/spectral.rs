//! Hyperbolic-cross spectral approximation: coefficient-side projection onto
//! the cross with Jackson/Bernstein ratio checks, and the non-periodic
//! Jacobi apparatus (orthonormal polynomial evaluation, Gauss-Jacobi rules
//! via a Golub-Welsch tridiagonal eigensolver, projection demos).
//!
//! Functions are represented by finite coefficient maps only; the error
//! theory is entirely coefficient-side, so no sampling transform is needed.

use crate::counting::{enumerate, CrossKind, CrossParams, MultiIndex};
use crate::error::{Error, Result};
use crate::special::ln_gamma;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finite set of spectral coefficients on the s-dimensional lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCoefficients {
    pub s: u32,
    pub kind: CrossKind,
    entries: BTreeMap<MultiIndex, Complex64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CoefficientRecord {
    index: Vec<i64>,
    re: f64,
    im: f64,
}

impl SparseCoefficients {
    pub fn new(s: u32, kind: CrossKind) -> Self {
        Self {
            s,
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, index: MultiIndex, amplitude: Complex64) -> Result<()> {
        if index.len() != self.s as usize {
            return Err(Error::InvalidParameter(format!(
                "index length {} does not match dimension {}",
                index.len(),
                self.s
            )));
        }
        if self.kind == CrossKind::Corner && index.entries().iter().any(|&k| k < 0) {
            return Err(Error::InvalidParameter(
                "corner coefficients need non-negative indices".into(),
            ));
        }
        if amplitude != Complex64::new(0.0, 0.0) {
            self.entries.insert(index, amplitude);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.entries.iter()
    }

    pub fn l2_norm(&self) -> f64 {
        // empty f64 sums carry a negative zero; keep norms at +0.0
        self.entries
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .max(0.0)
            .sqrt()
    }

    /// Export as a JSON array of {index, re, im} records.
    pub fn to_json(&self) -> String {
        let records: Vec<CoefficientRecord> = self
            .entries
            .iter()
            .map(|(k, c)| CoefficientRecord {
                index: k.entries().to_vec(),
                re: c.re,
                im: c.im,
            })
            .collect();
        serde_json::to_string(&records).expect("serializable records")
    }

    pub fn from_json(s: u32, kind: CrossKind, json: &str) -> Result<Self> {
        let records: Vec<CoefficientRecord> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::new(s, kind);
        for rec in records {
            out.insert(MultiIndex(rec.index), Complex64::new(rec.re, rec.im))?;
        }
        Ok(out)
    }
}

/// Weighted norm sqrt(sum lambda_a(k)^(2r) |c_k|^2).
pub fn korobov_norm(c: &SparseCoefficients, r: f64, shift: f64) -> f64 {
    c.iter()
        .map(|(k, amp)| k.shifted_product(shift).powf(2.0 * r) * amp.norm_sqr())
        .sum::<f64>()
        .max(0.0)
        .sqrt()
}

/// Orthogonal projection onto the cross: keeps entries with
/// prod(|k_j| + a) <= T (boundary retained). Idempotent.
pub fn project(c: &SparseCoefficients, threshold: f64, shift: f64) -> SparseCoefficients {
    let mut out = SparseCoefficients::new(c.s, c.kind);
    for (k, amp) in c.iter() {
        if k.shifted_product(shift) <= threshold {
            out.entries.insert(k.clone(), *amp);
        }
    }
    out
}

fn residual_norm(c: &SparseCoefficients, threshold: f64, shift: f64) -> f64 {
    c.iter()
        .filter(|(k, _)| k.shifted_product(shift) > threshold)
        .map(|(_, amp)| amp.norm_sqr())
        .sum::<f64>()
        .max(0.0)
        .sqrt()
}

/// ||c - P_T c|| / (T^-r ||c||_{r,a}); at most 1 for T >= 1.
pub fn jackson_check(c: &SparseCoefficients, threshold: f64, r: f64, shift: f64) -> Result<f64> {
    if !(threshold >= 1.0) {
        return Err(Error::Domain("jackson ratio needs T >= 1".into()));
    }
    let norm = korobov_norm(c, r, shift);
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(residual_norm(c, threshold, shift) / (threshold.powf(-r) * norm))
}

/// ||c||_{r,a} / (T^r ||c||); at most 1 for coefficients supported in the
/// cross.
pub fn bernstein_check(c: &SparseCoefficients, threshold: f64, r: f64, shift: f64) -> Result<f64> {
    if !(threshold >= 1.0) {
        return Err(Error::Domain("bernstein ratio needs T >= 1".into()));
    }
    if let Some((k, _)) = c.iter().find(|(k, _)| k.shifted_product(shift) > threshold) {
        return Err(Error::SupportViolation(format!(
            "index {k} has product {} above threshold {threshold}",
            k.shifted_product(shift)
        )));
    }
    let l2 = c.l2_norm();
    if l2 == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(korobov_norm(c, r, shift) / (threshold.powf(r) * l2))
}

// ---------------------------------------------------------------------------
// Jacobi polynomials and Gauss-Jacobi quadrature
// ---------------------------------------------------------------------------

/// Jacobi weight exponents; the induced Korobov shift is (alpha+beta+1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "jacobi exponents must exceed -1, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Shift parameter of the induced hyperbolic cross.
    pub fn korobov_shift(&self) -> f64 {
        (self.alpha + self.beta + 1.0) / 2.0
    }

    /// ln of the weight-function mass over [-1,1].
    fn log_mass(&self) -> f64 {
        (self.alpha + self.beta + 1.0) * std::f64::consts::LN_2
            + ln_gamma(self.alpha + 1.0)
            + ln_gamma(self.beta + 1.0)
            - ln_gamma(self.alpha + self.beta + 2.0)
    }

    /// Diagonal entry a_k of the orthonormal Jacobi recurrence.
    fn recurrence_diag(&self, k: u32) -> f64 {
        let (al, be) = (self.alpha, self.beta);
        if k == 0 {
            // (b^2-a^2)/((a+b)(a+b+2)) with the a+b factor cancelled
            (be - al) / (al + be + 2.0)
        } else {
            let d = 2.0 * k as f64 + al + be;
            (be * be - al * al) / (d * (d + 2.0))
        }
    }

    /// Off-diagonal entry b_k (connecting degrees k-1 and k), k >= 1.
    fn recurrence_offdiag(&self, k: u32) -> f64 {
        let (al, be) = (self.alpha, self.beta);
        let kf = k as f64;
        let sq = if k == 1 {
            // (k+a+b) cancels against (2k+a+b-1) at k = 1
            4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be).powi(2) * (3.0 + al + be))
        } else {
            let d = 2.0 * kf + al + be;
            4.0 * kf * (kf + al) * (kf + be) * (kf + al + be) / (d * d * (d + 1.0) * (d - 1.0))
        };
        sq.sqrt()
    }
}

/// Value of the orthonormal Jacobi polynomial of degree k at x in [-1,1].
pub fn jacobi_eval(k: u32, jp: &JacobiParams, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x must lie in [-1,1], got {x}")));
    }
    let mut prev = 0.0f64;
    let mut cur = (-0.5 * jp.log_mass()).exp();
    for j in 0..k {
        let bj1 = jp.recurrence_offdiag(j + 1);
        let next = ((x - jp.recurrence_diag(j)) * cur
            - if j == 0 {
                0.0
            } else {
                jp.recurrence_offdiag(j)
            } * prev)
            / bj1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix, tracking
/// only the first row of the accumulated eigenvector matrix. `diag` holds
/// the eigenvalues on return; `first[i]` the first component of the i-th
/// eigenvector.
fn tridiag_eigen_first_row(diag: &mut [f64], off: &mut [f64], first: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    // off[i] couples i and i+1; extend with a zero sentinel
    let mut e = off.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenFailure(l));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.abs().copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                f = first[i + 1];
                first[i + 1] = s * first[i] + c * f;
                first[i] = c * first[i] - s * f;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// n-point Gauss-Jacobi rule: nodes strictly inside (-1,1) and positive
/// weights summing to the weight mass; exact for polynomial degree 2n-1.
pub fn gauss_jacobi(n: u32, jp: &JacobiParams) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "quadrature needs at least one node".into(),
        ));
    }
    let n = n as usize;
    let mut diag: Vec<f64> = (0..n).map(|k| jp.recurrence_diag(k as u32)).collect();
    let mut off: Vec<f64> = (1..n).map(|k| jp.recurrence_offdiag(k as u32)).collect();
    let mut first = vec![0.0; n];
    first[0] = 1.0;
    tridiag_eigen_first_row(&mut diag, &mut off, &mut first)?;
    let mass = jp.log_mass().exp();
    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(&first)
        .map(|(&x, &z)| (x, mass * z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs.into_iter().unzip())
}

// ---------------------------------------------------------------------------
// Non-periodic projection demo
// ---------------------------------------------------------------------------

/// Outcome of projecting a synthetic Jacobi expansion onto the corner cross.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProjectionDemoReport {
    pub shift: f64,
    pub threshold: f64,
    pub r: f64,
    pub coefficient_count: usize,
    pub retained_count: usize,
    pub l2_norm: f64,
    pub korobov_norm: f64,
    pub projection_error: f64,
    /// Error over T^-r times the norm; at most 1 when the norm is positive.
    pub jackson_ratio: Option<f64>,
    /// Which analytic width bounds apply at this shift.
    pub applicable_bounds: Vec<(String, bool)>,
}

/// Build the expansion with coefficients `coeff(k)` on the corner cross of
/// threshold `generation_threshold`, project onto threshold `threshold`,
/// and report norms, error and the Jackson ratio.
pub fn nonperiodic_projection_demo<F: FnMut(&[i64]) -> f64>(
    jp: &JacobiParams,
    s: u32,
    r: f64,
    threshold: f64,
    generation_threshold: f64,
    cap: u64,
    mut coeff: F,
) -> Result<ProjectionDemoReport> {
    let shift = jp.korobov_shift();
    if !(shift > 0.0) {
        return Err(Error::Domain(format!(
            "korobov shift (alpha+beta+1)/2 must be positive, got {shift}"
        )));
    }
    if !(threshold >= 1.0) {
        return Err(Error::Domain("projection demo needs T >= 1".into()));
    }
    let support = enumerate(&CrossParams::corner(s, generation_threshold, shift)?, cap)?;
    let mut c = SparseCoefficients::new(s, CrossKind::Corner);
    for idx in support {
        let amp = coeff(idx.entries());
        c.insert(idx, Complex64::new(amp, 0.0))?;
    }
    let projected = project(&c, threshold, shift);
    let error = residual_norm(&c, threshold, shift);
    let norm = korobov_norm(&c, r, shift);
    let jackson_ratio = if norm > 0.0 {
        Some(jackson_check(&c, threshold, r, shift)?)
    } else {
        None
    };
    Ok(ProjectionDemoReport {
        shift,
        threshold,
        r,
        coefficient_count: c.len(),
        retained_count: projected.len(),
        l2_norm: c.l2_norm(),
        korobov_norm: norm,
        projection_error: error,
        jackson_ratio,
        applicable_bounds: vec![
            ("half-shift sharp bounds (a > 1/2)".into(), shift > 0.5),
            ("unit-shift upper bound (a > 1)".into(), shift > 1.0),
            ("exponential tractability (a > 1)".into(), shift > 1.0),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::DEFAULT_CAP;

    fn unit_at(s: u32, kind: CrossKind, entries: Vec<i64>) -> SparseCoefficients {
        let mut c = SparseCoefficients::new(s, kind);
        c.insert(MultiIndex(entries), Complex64::new(1.0, 0.0))
            .unwrap();
        c
    }

    #[test]
    fn korobov_norm_examples() {
        let c = unit_at(2, CrossKind::Symmetric, vec![0, 0]);
        // lambda_a(0) = a^s
        assert!((korobov_norm(&c, 1.5, 2.0) - 4.0f64.powf(1.5)).abs() < 1e-12);
        let c2 = unit_at(1, CrossKind::Symmetric, vec![2]);
        assert!((korobov_norm(&c2, 2.0, 1.0) - 9.0).abs() < 1e-12);
        // homogeneity
        let mut c3 = SparseCoefficients::new(1, CrossKind::Symmetric);
        c3.insert(MultiIndex(vec![2]), Complex64::new(-2.5, 1.0))
            .unwrap();
        let amp = Complex64::new(-2.5, 1.0).norm();
        assert!((korobov_norm(&c3, 2.0, 1.0) - 9.0 * amp).abs() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent_and_keeps_boundary() {
        let mut c = SparseCoefficients::new(1, CrossKind::Symmetric);
        for (k, re) in [(0i64, 1.0), (1, 0.5), (-1, 0.25), (2, 0.125)] {
            c.insert(MultiIndex(vec![k]), Complex64::new(re, 0.0))
                .unwrap();
        }
        // T = 2 keeps |k| <= 1
        let p = project(&c, 2.0, 1.0);
        assert_eq!(p.len(), 3);
        let pp = project(&p, 2.0, 1.0);
        assert_eq!(p, pp);
        // boundary product exactly T is retained
        let b = unit_at(1, CrossKind::Symmetric, vec![1]);
        assert_eq!(project(&b, 2.0, 1.0).len(), 1);
    }

    #[test]
    fn orthogonal_split_of_energy() {
        let mut c = SparseCoefficients::new(2, CrossKind::Symmetric);
        for (k, re, im) in [
            (vec![0i64, 0], 1.0, 0.5),
            (vec![1, 0], -0.5, 0.25),
            (vec![2, 1], 0.1, -0.7),
        ] {
            c.insert(MultiIndex(k), Complex64::new(re, im)).unwrap();
        }
        let t = 2.5;
        let p = project(&c, t, 1.0);
        let tail = residual_norm(&c, t, 1.0);
        let total = c.l2_norm();
        assert!((total * total - (p.l2_norm().powi(2) + tail * tail)).abs() < 1e-12);
    }

    #[test]
    fn jackson_examples() {
        // unit at k=2 with T=2, r=2, a=1: error 1, bound 2^-2 * 9
        let c = unit_at(1, CrossKind::Symmetric, vec![2]);
        let ratio = jackson_check(&c, 2.0, 2.0, 1.0).unwrap();
        assert!((ratio - 4.0 / 9.0).abs() < 1e-12);
        assert!(ratio <= 1.0);
        // supported inside the cross: zero ratio
        let inside = unit_at(1, CrossKind::Symmetric, vec![0]);
        assert_eq!(jackson_check(&inside, 2.0, 2.0, 1.0).unwrap(), 0.0);
        let empty = SparseCoefficients::new(1, CrossKind::Symmetric);
        assert!(matches!(
            jackson_check(&empty, 2.0, 1.0, 1.0),
            Err(Error::ZeroNorm)
        ));
    }

    #[test]
    fn bernstein_examples() {
        let c = unit_at(2, CrossKind::Symmetric, vec![0, 0]);
        let r = 1.5;
        let t = 3.0;
        let ratio = bernstein_check(&c, t, r, 1.0).unwrap();
        assert!((ratio - (1.0f64 / 3.0f64).powf(1.5)).abs() < 1e-12);
        let outside = unit_at(1, CrossKind::Symmetric, vec![5]);
        assert!(matches!(
            bernstein_check(&outside, 2.0, 1.0, 1.0),
            Err(Error::SupportViolation(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let mut c = SparseCoefficients::new(2, CrossKind::Symmetric);
        c.insert(MultiIndex(vec![-1, 3]), Complex64::new(0.25, -1.5))
            .unwrap();
        c.insert(MultiIndex(vec![0, 0]), Complex64::new(1.0, 0.0))
            .unwrap();
        let json = c.to_json();
        let back = SparseCoefficients::from_json(2, CrossKind::Symmetric, &json).unwrap();
        assert_eq!(c, back);
        assert!(SparseCoefficients::from_json(2, CrossKind::Symmetric, "[{bad").is_err());
    }

    #[test]
    fn jacobi_low_degree_values() {
        let legendre = JacobiParams::new(0.0, 0.0).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.7, 1.0] {
            let p0 = jacobi_eval(0, &legendre, x).unwrap();
            assert!((p0 - 1.0 / 2f64.sqrt()).abs() < 1e-14);
            let p1 = jacobi_eval(1, &legendre, x).unwrap();
            assert!((p1 - (1.5f64).sqrt() * x).abs() < 1e-14);
        }
        // parity for alpha = beta
        let cheb = JacobiParams::new(-0.5, -0.5).unwrap();
        for k in [1u32, 2, 5, 8] {
            let v = jacobi_eval(k, &cheb, 0.37).unwrap();
            let w = jacobi_eval(k, &cheb, -0.37).unwrap();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v - sign * w).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_high_degree_matches_chebyshev_closed_form() {
        // orthonormal Chebyshev: sqrt(2/pi) cos(k arccos x) for k >= 1
        let cheb = JacobiParams::new(-0.5, -0.5).unwrap();
        let scale = (2.0 / std::f64::consts::PI).sqrt();
        for k in [25u32, 100, 200] {
            for x in [-0.92f64, -0.41, 0.08, 0.55, 0.971] {
                let want = scale * (k as f64 * x.acos()).cos();
                let got = jacobi_eval(k, &cheb, x).unwrap();
                assert!(
                    (got - want).abs() <= 1e-11 * want.abs().max(1.0),
                    "k={k} x={x}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn gauss_rules_low_order() {
        let legendre = JacobiParams::new(0.0, 0.0).unwrap();
        let (x1, w1) = gauss_jacobi(1, &legendre).unwrap();
        assert!(x1[0].abs() < 1e-14);
        assert!((w1[0] - 2.0).abs() < 1e-14);
        let (x2, w2) = gauss_jacobi(2, &legendre).unwrap();
        let node = 1.0 / 3f64.sqrt();
        assert!((x2[0] + node).abs() < 1e-13 && (x2[1] - node).abs() < 1e-13);
        assert!((w2[0] - 1.0).abs() < 1e-13 && (w2[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_rule_properties() {
        for (al, be) in [(0.0, 0.0), (-0.5, -0.5), (1.0, 2.0)] {
            let jp = JacobiParams::new(al, be).unwrap();
            let (x, w) = gauss_jacobi(25, &jp).unwrap();
            assert!(x.iter().all(|&xi| xi > -1.0 && xi < 1.0));
            assert!(w.iter().all(|&wi| wi > 0.0));
            let mass: f64 = w.iter().sum();
            assert!((mass - jp.log_mass().exp()).abs() < 1e-12 * mass);
            // nodes strictly increasing
            for pair in x.windows(2) {
                assert!(pair[0] < pair[1]);
            }
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        for (al, be) in [(0.0, 0.0), (-0.5, -0.5), (1.0, 2.0)] {
            let jp = JacobiParams::new(al, be).unwrap();
            let degree = 20u32;
            let (x, w) = gauss_jacobi(30, &jp).unwrap();
            let vals: Vec<Vec<f64>> = x
                .iter()
                .map(|&xi| {
                    (0..=degree)
                        .map(|k| jacobi_eval(k, &jp, xi).unwrap())
                        .collect()
                })
                .collect();
            let mut worst = 0.0f64;
            for i in 0..=degree as usize {
                for j in 0..=degree as usize {
                    let g: f64 = x
                        .iter()
                        .enumerate()
                        .map(|(q, _)| w[q] * vals[q][i] * vals[q][j])
                        .sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((g - expect).abs());
                }
            }
            assert!(worst < 1e-11, "alpha={al} beta={be}: {worst}");
        }
    }

    #[test]
    fn projection_demo_reports_ratio_below_one() {
        let jp = JacobiParams::new(1.0, 2.0).unwrap(); // a = 2
        let r = 1.0;
        let report = nonperiodic_projection_demo(&jp, 2, r, 5.0, 40.0, DEFAULT_CAP, |k| {
            let lambda: f64 = k.iter().map(|&ki| ki as f64 + 2.0).product();
            lambda.powf(-r - 1.0)
        })
        .unwrap();
        assert!(report.jackson_ratio.unwrap() <= 1.0);
        assert!(report.retained_count < report.coefficient_count);
        assert!(report.applicable_bounds.iter().all(|(_, ok)| *ok));

        // inside the span: zero error
        let inside =
            nonperiodic_projection_demo(&jp, 2, r, 40.0, 10.0, DEFAULT_CAP, |_| 1.0).unwrap();
        assert_eq!(inside.projection_error, 0.0);

        // legendre gives the half shift
        let leg = JacobiParams::new(0.0, 0.0).unwrap();
        let rep = nonperiodic_projection_demo(&leg, 1, 1.0, 3.0, 9.0, DEFAULT_CAP, |k| {
            1.0 / (1.0 + k[0] as f64)
        })
        .unwrap();
        assert!((rep.shift - 0.5).abs() < 1e-15);
        assert!(rep.applicable_bounds.iter().any(|(_, ok)| !ok));
    }
}
