//! Volume of the smooth corner hyperbolic cross
//! `P(s,T,a) = {x >= 0 : prod(x_j + a) <= T}`.
//!
//! The volume equals `T * F_s(ln T - s ln a)` above the degeneracy point
//! `T = a^s` and vanishes at or below it. An independent nested-quadrature
//! oracle and the alternating closed polynomial form are provided as
//! cross-checks.

use crate::error::{Error, Result};
use crate::remainder::{remainder_bounds, remainder_stable};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMethod {
    RemainderFormula,
    ClosedPolynomial,
    QuadratureOracle,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VolumeEval {
    pub s: u32,
    pub threshold: f64,
    pub shift: f64,
    pub value: f64,
    /// Natural log of the value; -inf for the empty cross.
    pub log_value: f64,
    pub method: VolumeMethod,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VolumeBounds {
    pub lower: f64,
    pub upper: f64,
    pub log_lower: f64,
    pub log_upper: f64,
}

fn validate(s: u32, threshold: f64, shift: f64) -> Result<()> {
    if s == 0
        || !(threshold > 0.0)
        || !(shift > 0.0)
        || !threshold.is_finite()
        || !shift.is_finite()
    {
        return Err(Error::InvalidParameter(format!(
            "volume needs s >= 1, positive finite threshold/shift (got s={s}, T={threshold}, a={shift})"
        )));
    }
    Ok(())
}

/// True when T <= a^s, deciding in log space once a^s leaves the f64 range.
fn at_or_below_degeneracy(s: u32, threshold: f64, shift: f64) -> bool {
    let pow = shift.powi(s as i32);
    if pow.is_finite() && pow > 0.0 {
        threshold <= pow
    } else {
        threshold.ln() <= s as f64 * shift.ln()
    }
}

/// ln(T / a^s), preferring the direct ratio while it is representable.
pub(crate) fn log_threshold_ratio(s: u32, threshold: f64, shift: f64) -> f64 {
    let pow = shift.powi(s as i32);
    if pow.is_finite() && pow > f64::MIN_POSITIVE {
        let ratio = threshold / pow;
        if ratio.is_finite() && ratio > 0.0 {
            return ratio.ln();
        }
    }
    threshold.ln() - s as f64 * shift.ln()
}

/// Exact volume via the remainder formula.
pub fn volume(s: u32, threshold: f64, shift: f64) -> Result<VolumeEval> {
    validate(s, threshold, shift)?;
    if at_or_below_degeneracy(s, threshold, shift) {
        return Ok(VolumeEval {
            s,
            threshold,
            shift,
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            method: VolumeMethod::RemainderFormula,
        });
    }
    let t = log_threshold_ratio(s, threshold, shift);
    let f = remainder_stable(s, t)?;
    let log_value = threshold.ln() + f.log_value;
    let linear = threshold * f.value;
    let value = if linear.is_finite() && linear > 0.0 {
        linear
    } else {
        log_value.exp()
    };
    Ok(VolumeEval {
        s,
        threshold,
        shift,
        value,
        log_value,
        method: VolumeMethod::RemainderFormula,
    })
}

/// Alternating closed form; cross-check only, guarded against cancellation.
pub fn volume_closed_polynomial(s: u32, threshold: f64, shift: f64) -> Result<VolumeEval> {
    validate(s, threshold, shift)?;
    if at_or_below_degeneracy(s, threshold, shift) {
        return Err(Error::Domain("closed polynomial form needs T > a^s".into()));
    }
    let t = log_threshold_ratio(s, threshold, shift);
    if s > 25 || t > 30.0 {
        return Err(Error::PrecisionLoss {
            achieved: f64::INFINITY,
        });
    }
    let sign_lead = if s % 2 == 1 { 1.0 } else { -1.0 };
    let mut value = sign_lead * (threshold - shift.powi(s as i32));
    let mut term = 1.0f64; // t^n / n!
    let mut sum = 0.0f64;
    for n in 1..s {
        term *= t / n as f64;
        let sign = if (s - 1 - n).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        sum += sign * term;
    }
    value += threshold * sum;
    Ok(VolumeEval {
        s,
        threshold,
        shift,
        value,
        log_value: value.ln(),
        method: VolumeMethod::ClosedPolynomial,
    })
}

/// Two-sided bounds `T t^s / ((s-1)!(t+s)) < I < T t^s / ((s-1)!(t+s-1))`
/// with t = ln T - s ln a. Requires T > a^s.
pub fn volume_bounds(s: u32, threshold: f64, shift: f64) -> Result<VolumeBounds> {
    validate(s, threshold, shift)?;
    if at_or_below_degeneracy(s, threshold, shift) {
        return Err(Error::Domain("volume bounds need T > a^s".into()));
    }
    let t = log_threshold_ratio(s, threshold, shift);
    let rb = remainder_bounds(s, t)?;
    let log_t = threshold.ln();
    Ok(VolumeBounds {
        lower: threshold * rb.lower,
        upper: threshold * rb.upper,
        log_lower: log_t + rb.log_lower,
        log_upper: log_t + rb.log_upper,
    })
}

// ---------------------------------------------------------------------------
// Quadrature oracle
// ---------------------------------------------------------------------------

/// F_2 without calling the remainder module: exp(-t) - 1 + t, series for
/// small t where the direct form cancels.
fn f2_direct(t: f64) -> f64 {
    if t >= 0.5 {
        (-t).exp() - 1.0 + t
    } else {
        let mut term = t * t / 2.0;
        let mut sum = term;
        let mut n = 2u32;
        while term.abs() > 1e-20 * sum.abs() {
            n += 1;
            term *= -t / n as f64;
            sum += term;
        }
        sum
    }
}

fn oracle_value(s: u32, threshold: f64, shift: f64, rel_tol: f64) -> Result<f64> {
    let pow = shift.powi(s as i32);
    if threshold <= pow {
        return Ok(0.0);
    }
    match s {
        1 => Ok(threshold - shift),
        2 => Ok(threshold * f2_direct((threshold / (shift * shift)).ln())),
        _ => {
            let upper = threshold / shift.powi(s as i32 - 1) - shift;
            let f = |x: f64| oracle_value(s - 1, threshold / (x + shift), shift, rel_tol / 3.0);
            // coarse pass fixes the absolute tolerance scale
            let mut coarse = 0.0;
            let panels = 16;
            for i in 0..=panels {
                let x = upper * i as f64 / panels as f64;
                let w = if i == 0 || i == panels {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                coarse += w * f(x)?;
            }
            coarse *= upper / (3.0 * panels as f64);
            let abs_tol = rel_tol * coarse.abs().max(1e-280);
            adaptive_simpson(&f, 0.0, upper, abs_tol)
        }
    }
}

fn adaptive_simpson<F>(f: &F, lo: f64, hi: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mid = 0.5 * (lo + hi);
    let flo = f(lo)?;
    let fmid = f(mid)?;
    let fhi = f(hi)?;
    let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    simpson_step(f, lo, hi, flo, fmid, fhi, whole, abs_tol, 30)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    whole: f64,
    abs_tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mid = 0.5 * (lo + hi);
    let lmid = 0.5 * (lo + mid);
    let rmid = 0.5 * (mid + hi);
    let flm = f(lmid)?;
    let frm = f(rmid)?;
    let left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    let right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * abs_tol || (hi - lo) < 1e-14 * hi.abs().max(1.0) {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "adaptive refinement exhausted on [{lo}, {hi}]"
        )));
    }
    let l = simpson_step(f, lo, mid, flo, flm, fmid, left, abs_tol / 2.0, depth - 1)?;
    let r = simpson_step(f, mid, hi, fmid, frm, fhi, right, abs_tol / 2.0, depth - 1)?;
    Ok(l + r)
}

/// Nested-quadrature evaluation of the volume, independent of the remainder
/// evaluator. Inner levels run at tolerance tol/3 per level; the recursion
/// bottoms out in the one- and two-dimensional closed forms.
pub fn volume_quadrature_oracle(
    s: u32,
    threshold: f64,
    shift: f64,
    rel_tol: f64,
) -> Result<VolumeEval> {
    validate(s, threshold, shift)?;
    if s > 5 {
        return Err(Error::Domain("quadrature oracle supports s <= 5".into()));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if at_or_below_degeneracy(s, threshold, shift) {
        return Err(Error::Domain("quadrature oracle needs T > a^s".into()));
    }
    let value = oracle_value(s, threshold, shift, rel_tol)?;
    Ok(VolumeEval {
        s,
        threshold,
        shift,
        value,
        log_value: value.ln(),
        method: VolumeMethod::QuadratureOracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn one_dimensional_volume_is_interval_length() {
        for (t, a) in [(5.0, 2.0), (1.5, 1.0), (100.0, 0.5)] {
            let v = volume(1, t, a).unwrap();
            assert!(rel(v.value, t - a) < 1e-13);
        }
    }

    #[test]
    fn unit_volume_at_t_equals_e() {
        let v = volume(2, std::f64::consts::E, 1.0).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12, "got {}", v.value);
    }

    #[test]
    fn degenerate_threshold_gives_zero() {
        let v = volume(3, 8.0, 2.0).unwrap();
        assert_eq!(v.value, 0.0);
        assert_eq!(v.log_value, f64::NEG_INFINITY);
        assert!(volume(3, 7.9, 2.0).unwrap().value == 0.0);
    }

    #[test]
    fn closed_polynomial_examples() {
        let v = volume_closed_polynomial(2, std::f64::consts::E, 1.0).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
        let v1 = volume_closed_polynomial(1, 5.0, 2.0).unwrap();
        assert!((v1.value - 3.0).abs() < 1e-13);
        let v3 = volume_closed_polynomial(3, 20.0, 1.0).unwrap();
        let w3 = volume(3, 20.0, 1.0).unwrap();
        assert!(rel(v3.value, w3.value) < 1e-9);
        // guard
        assert!(volume_closed_polynomial(30, 10.0, 1.0).is_err());
    }

    #[test]
    fn quadrature_oracle_examples() {
        let v = volume_quadrature_oracle(2, std::f64::consts::E, 1.0, 1e-8).unwrap();
        assert!((v.value - 1.0).abs() < 1e-8);
        let v1 = volume_quadrature_oracle(1, 5.0, 2.0, 1e-8).unwrap();
        assert!((v1.value - 3.0).abs() < 1e-12);
        let v3 = volume_quadrature_oracle(3, 50.0, 1.5, 1e-7).unwrap();
        let w3 = volume(3, 50.0, 1.5).unwrap();
        assert!(rel(v3.value, w3.value) < 1e-6);
        let v4 = volume_quadrature_oracle(4, 80.0, 1.0, 1e-7).unwrap();
        let w4 = volume(4, 80.0, 1.0).unwrap();
        assert!(rel(v4.value, w4.value) < 1e-6);
    }

    #[test]
    fn bounds_bracket_strictly() {
        let b = volume_bounds(2, std::f64::consts::E, 1.0).unwrap();
        let e = std::f64::consts::E;
        assert!((b.lower - e / 3.0).abs() < 1e-13);
        assert!((b.upper - e / 2.0).abs() < 1e-13);
        assert!(b.lower < 1.0 && 1.0 < b.upper);
        // large-s bracket checked in log space
        for s in [10u32, 25, 40] {
            let t = 2.0f64;
            let threshold = t.exp(); // a = 1 so ln T - s ln a = 2
            let v = volume(s, threshold, 1.0).unwrap();
            let b = volume_bounds(s, threshold, 1.0).unwrap();
            assert!(
                b.log_lower < v.log_value && v.log_value < b.log_upper,
                "s={s}"
            );
        }
    }

    #[test]
    fn volume_monotone_and_continuous_at_boundary() {
        let a: f64 = 1.5;
        let base = a.powi(3);
        let mut prev = 0.0;
        for i in (1..=8).rev() {
            let t = base * (1.0 + 10f64.powi(-i));
            let v = volume(3, t, a).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
        // tending to zero from above
        let near = volume(3, base * (1.0 + 1e-8), a).unwrap().value;
        assert!(near > 0.0 && near < 1e-20);
    }
}
