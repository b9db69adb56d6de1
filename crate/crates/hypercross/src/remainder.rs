//! Stable evaluation of the absolute Taylor remainder of exp(-t).
//!
//! `F_s(t)` is the absolute value of the s-th remainder of the Taylor series
//! of `exp(-t)`; with `p_s(t) = t^s/s!` and `h_s = F_{s+1}/p_s` the sequence
//! `h` obeys `h_s = 1 - (s/t) h_{s-1}`, `h_0 = 1 - exp(-t)`. The recurrence
//! is run forward while the step factor `k/t` contracts and backward (seeded
//! from the analytic bracket midpoint) once it would amplify. Magnitudes are
//! carried in log form so `F_s` survives over/underflow of `p_{s-1}`.

use crate::error::{Error, Result};
use crate::special::{ln_gamma, DoubleDouble};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemainderMethod {
    Series,
    ForwardRecurrence,
    BackwardRecurrence,
}

/// A remainder value together with its logarithm and analytic bracket.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RemainderEval {
    pub s: u32,
    pub t: f64,
    pub value: f64,
    pub log_value: f64,
    pub lower: f64,
    pub upper: f64,
    pub log_lower: f64,
    pub log_upper: f64,
    pub method: RemainderMethod,
}

/// Two-sided bracket `t/(t+s) p_{s-1} < F_s < t/(t+s-1) p_{s-1}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RemainderBounds {
    pub lower: f64,
    pub upper: f64,
    pub log_lower: f64,
    pub log_upper: f64,
}

/// ln p_s(t) = s ln t - ln Gamma(s+1).
pub fn power_term_log(s: u32, t: f64) -> f64 {
    if s == 0 {
        return 0.0;
    }
    s as f64 * t.ln() - ln_gamma(s as f64 + 1.0)
}

/// p_s(t) in linear form; infinite or zero outside the f64 range.
fn power_term(s: u32, t: f64) -> f64 {
    let mut p = 1.0f64;
    for k in 1..=s {
        p *= t / k as f64;
        if !p.is_finite() || p == 0.0 {
            break;
        }
    }
    p
}

pub fn remainder_bounds(s: u32, t: f64) -> Result<RemainderBounds> {
    if s == 0 || !(t > 0.0) {
        return Err(Error::InvalidParameter(
            "remainder bounds need s >= 1 and t > 0".into(),
        ));
    }
    let tf = t;
    let sf = s as f64;
    let log_p = power_term_log(s - 1, t);
    let log_lower = tf.ln() - (tf + sf).ln() + log_p;
    let log_upper = tf.ln() - (tf + sf - 1.0).ln() + log_p;
    let p = power_term(s - 1, t);
    let (lower, upper) = if p.is_finite() && p > 0.0 {
        (tf / (tf + sf) * p, tf / (tf + sf - 1.0) * p)
    } else {
        (log_lower.exp(), log_upper.exp())
    };
    Ok(RemainderBounds {
        lower,
        upper,
        log_lower,
        log_upper,
    })
}

/// Start index for the backward recurrence: enough extra steps that the
/// seed's bracket-width error is contracted below 1e-13 of the target h.
fn backward_start(m: u32, t: f64) -> u32 {
    let mf = m as f64;
    let target = 1e-13 * t / (t + mf + 1.0);
    let mut top = m + 40;
    let mut contraction = 1.0f64;
    for k in (m + 1)..=top {
        contraction *= t / k as f64;
    }
    loop {
        let tf = top as f64;
        let seed_err = t / (2.0 * (t + tf) * (t + tf + 1.0));
        if seed_err * contraction <= target || contraction == 0.0 {
            return top;
        }
        for k in (top + 1)..=(top + 8) {
            contraction *= t / k as f64;
        }
        top += 8;
    }
}

/// h_m(t) for a single index, choosing the stable recurrence direction.
fn h_single(m: u32, t: f64) -> (f64, RemainderMethod) {
    if m == 0 {
        return (-(-t).exp_m1(), RemainderMethod::ForwardRecurrence);
    }
    if m as f64 <= t {
        let mut h = -(-t).exp_m1();
        for k in 1..=m {
            h = 1.0 - (k as f64 / t) * h;
        }
        (h, RemainderMethod::ForwardRecurrence)
    } else {
        let top = backward_start(m, t);
        let mut h = t / (t + top as f64 + 0.5);
        let mut k = top;
        while k > m {
            h = (t / k as f64) * (1.0 - h);
            k -= 1;
        }
        (h, RemainderMethod::BackwardRecurrence)
    }
}

/// F_s(t) via the recurrence `F_s = p_{s-1} h_{s-1}`.
pub fn remainder_stable(s: u32, t: f64) -> Result<RemainderEval> {
    if s == 0 || !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(
            "remainder_stable needs s >= 1 and finite t >= 0".into(),
        ));
    }
    if t == 0.0 {
        return Ok(RemainderEval {
            s,
            t,
            value: 0.0,
            log_value: f64::NEG_INFINITY,
            lower: 0.0,
            upper: 0.0,
            log_lower: f64::NEG_INFINITY,
            log_upper: f64::NEG_INFINITY,
            method: RemainderMethod::ForwardRecurrence,
        });
    }
    let m = s - 1;
    let (h, method) = h_single(m, t);
    // at m = 0 the distance of h to 1 can sit below f64 resolution, so the
    // log is taken through ln_1p to keep the strict bracket representable
    let ln_h = if m == 0 {
        (-(-t).exp()).ln_1p()
    } else {
        h.ln()
    };
    let log_value = power_term_log(m, t) + ln_h;
    let p = power_term(m, t);
    let value = if p.is_finite() && p > 0.0 {
        p * h
    } else {
        log_value.exp()
    };
    let b = remainder_bounds(s, t)?;
    Ok(RemainderEval {
        s,
        t,
        value,
        log_value,
        lower: b.lower,
        upper: b.upper,
        log_lower: b.log_lower,
        log_upper: b.log_upper,
        method,
    })
}

/// h_0 .. h_smax, each entry computed in its stable regime.
pub fn h_sequence(s_max: u32, t: f64) -> Result<Vec<f64>> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter("h_sequence needs t > 0".into()));
    }
    let n = s_max as usize + 1;
    let mut h = vec![0.0f64; n];
    h[0] = -(-t).exp_m1();
    let forward_top = (s_max as u64).min(t.floor() as u64) as u32;
    for k in 1..=forward_top {
        h[k as usize] = 1.0 - (k as f64 / t) * h[k as usize - 1];
    }
    if s_max > forward_top {
        let top = backward_start(s_max, t);
        let mut cur = t / (t + top as f64 + 0.5);
        let mut k = top;
        while k > forward_top {
            if k <= s_max {
                h[k as usize] = cur;
            }
            cur = (t / k as f64) * (1.0 - cur);
            k -= 1;
        }
    }
    Ok(h)
}

/// Effective double-double epsilon used in the cancellation estimate.
const DD_EPS: f64 = 1e-30;
const SERIES_MAX_TERMS: usize = 200_000;

/// Reference evaluation of F_s(t) by direct alternating summation in
/// compensated (double-double) precision. Fails with a precision error when
/// cancellation exceeds what the working precision can absorb; callers then
/// fall back to `remainder_stable`.
pub fn remainder_series(s: u32, t: f64, target_rel_err: f64) -> Result<RemainderEval> {
    if s == 0 || !(t >= 0.0) || !t.is_finite() || !(target_rel_err > 0.0) {
        return Err(Error::InvalidParameter(
            "remainder_series needs s >= 1, finite t >= 0, positive target".into(),
        ));
    }
    if t == 0.0 {
        return remainder_stable(s, t);
    }
    // p_s(t) built term by term to keep the starting term fully accurate
    let mut term = DoubleDouble::from_f64(1.0);
    for n in 1..=s {
        term = term.mul_f64(t).div_f64(n as f64);
    }
    if !term.hi.is_finite() {
        return Err(Error::Range(format!(
            "series leading term overflows for s={s}, t={t}"
        )));
    }
    let mut sum = DoubleDouble::ZERO;
    let mut max_mag = 0.0f64;
    let mut sign = 1.0f64;
    let mut n = s as u64;
    let mut truncation;
    loop {
        sum = sum.add(term.mul_f64(sign));
        max_mag = max_mag.max(term.abs());
        if !sum.hi.is_finite() {
            return Err(Error::Range("series sum overflow".into()));
        }
        n += 1;
        term = term.mul_f64(t).div_f64(n as f64);
        sign = -sign;
        truncation = term.abs();
        let decreasing = n as f64 >= t;
        if decreasing && sum.hi > 0.0 && truncation <= 0.125 * target_rel_err * sum.hi {
            break;
        }
        if (n - s as u64) as usize > SERIES_MAX_TERMS {
            return Err(Error::PrecisionLoss {
                achieved: f64::INFINITY,
            });
        }
    }
    let value = sum.to_f64();
    if !(value > 0.0) {
        return Err(Error::PrecisionLoss {
            achieved: f64::INFINITY,
        });
    }
    let achieved = DD_EPS * max_mag / value + truncation / value;
    if achieved > target_rel_err {
        return Err(Error::PrecisionLoss { achieved });
    }
    let b = remainder_bounds(s, t)?;
    Ok(RemainderEval {
        s,
        t,
        value,
        log_value: value.ln(),
        lower: b.lower,
        upper: b.upper,
        log_lower: b.log_lower,
        log_upper: b.log_upper,
        method: RemainderMethod::Series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn power_term_log_examples() {
        assert_eq!(power_term_log(0, 7.0), 0.0);
        assert!((power_term_log(1, std::f64::consts::E) - 1.0).abs() < 1e-14);
        // -ln(170!) against a log-sum oracle
        let oracle: f64 = -(2..=170u32).map(|k| (k as f64).ln()).sum::<f64>();
        assert!(rel(power_term_log(170, 1.0), oracle) < 1e-12);
    }

    #[test]
    fn series_closed_forms() {
        let e1 = remainder_series(1, 1.0, 1e-12).unwrap();
        assert!(rel(e1.value, 1.0 - (-1.0f64).exp()) < 1e-13);
        let e2 = remainder_series(2, 1.0, 1e-12).unwrap();
        assert!(rel(e2.value, (-1.0f64).exp()) < 1e-13);
        let e0 = remainder_series(3, 0.0, 1e-12).unwrap();
        assert_eq!(e0.value, 0.0);
    }

    #[test]
    fn series_reports_cancellation() {
        // t = 300 at s = 1 cancels ~130 digits; double-double must refuse
        match remainder_series(1, 300.0, 1e-12) {
            Err(Error::PrecisionLoss { .. }) => {}
            other => panic!("expected precision loss, got {other:?}"),
        }
    }

    #[test]
    fn stable_closed_forms() {
        for t in [0.01, 0.5, 1.0, 10.0, 250.0] {
            let e = remainder_stable(1, t).unwrap();
            assert!(rel(e.value, -(-t).exp_m1()) < 1e-13, "t={t}");
            // exp(-t) - 1 + t, written to avoid cancellation in the oracle itself
            let f2 = (-t).exp_m1() + t;
            let e2 = remainder_stable(2, t).unwrap();
            assert!(rel(e2.value, f2) < 1e-12, "t={t}");
        }
    }

    #[test]
    fn bounds_example() {
        let b = remainder_bounds(2, 1.0).unwrap();
        assert!((b.lower - 1.0 / 3.0).abs() < 1e-15);
        assert!((b.upper - 0.5).abs() < 1e-15);
        let f2 = remainder_stable(2, 1.0).unwrap();
        assert!(b.lower < f2.value && f2.value < b.upper);
    }

    #[test]
    fn stable_agrees_with_series_on_grid() {
        for s in [1u32, 2, 5, 10, 30, 60] {
            for t in [0.001, 0.1, 1.0, 5.0, 20.0, 40.0] {
                let series = remainder_series(s, t, 1e-12).unwrap();
                let stable = remainder_stable(s, t).unwrap();
                assert!(
                    rel(stable.value, series.value) < 1e-10,
                    "s={s} t={t}: {} vs {}",
                    stable.value,
                    series.value
                );
            }
        }
    }

    #[test]
    fn backward_regime_inside_bracket() {
        let e = remainder_stable(50, 2.0).unwrap();
        assert_eq!(e.method, RemainderMethod::BackwardRecurrence);
        assert!(e.lower < e.value && e.value < e.upper);
    }

    #[test]
    fn h_sequence_examples_and_monotonicity() {
        let h = h_sequence(60, 1.0).unwrap();
        assert!((h[0] - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((h[1] - (-1.0f64).exp()).abs() < 1e-14);
        for (k, pair) in h.windows(2).enumerate() {
            assert!(pair[1] < pair[0], "h not decreasing at k={k}");
        }
        for (k, &hk) in h.iter().enumerate() {
            let kf = k as f64;
            assert!(hk > 1.0 / (1.0 + kf + 1.0) && hk < 1.0 / (1.0 + kf));
            assert!(hk > 0.0 && hk < 1.0);
        }
    }

    #[test]
    fn identity_p_equals_sum_of_remainders() {
        for s in [1u32, 7, 25, 60] {
            for t in [0.1, 2.0, 50.0, 200.0] {
                let fs = remainder_stable(s, t).unwrap().value;
                let fs1 = remainder_stable(s + 1, t).unwrap().value;
                let p = power_term(s, t);
                assert!(rel(fs + fs1, p) < 1e-10, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn log_form_consistent() {
        let e = remainder_stable(20, 3.0).unwrap();
        assert!(rel(e.value, e.log_value.exp()) < 1e-12);
    }
}
