//! Log-gamma and compensated (double-double) arithmetic used by the
//! remainder and spectral evaluators.

/// Lanczos coefficients, g = 7, 9 terms.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LANCZOS_G: f64 = 7.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

/// Natural log of the gamma function for positive arguments.
///
/// Relative accuracy is about 1e-14 over the range used here (x up to a few
/// hundred); small integer and half-integer arguments are exact to within a
/// few ulps.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// ln(n!) via ln_gamma; exact for n <= 1.
pub fn ln_factorial(n: u32) -> f64 {
    if n <= 1 {
        0.0
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// Binomial coefficient as f64, exact up to the f64 integer range used here.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

// ---------------------------------------------------------------------------
// Double-double arithmetic (~31 significant digits), enough for the series
// oracle on the moderate-t range.
// ---------------------------------------------------------------------------

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

#[allow(clippy::should_implement_trait)] // plain methods keep the type Copy-friendly without operator plumbing
impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }

    pub fn mul_f64(self, f: f64) -> Self {
        let (p, e) = two_prod(self.hi, f);
        let e = e + self.lo * f;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    pub fn div_f64(self, f: f64) -> Self {
        let q1 = self.hi / f;
        let (p, e) = two_prod(q1, f);
        let r = ((self.hi - p) - e) + self.lo;
        let q2 = r / f;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }

    pub fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn abs(self) -> f64 {
        self.hi.abs()
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        // ln Γ(1/2) = ln sqrt(pi)
        let expect = std::f64::consts::PI.sqrt().ln();
        assert!((ln_gamma(0.5) - expect).abs() < 1e-14);
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!(ln_gamma(2.0).abs() < 1e-14);
        // ln 5! = ln 120
        assert!((ln_gamma(6.0) - 120f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_matches_log_sum_for_factorials() {
        // independent oracle: sum of logs
        for n in [10u32, 60, 120, 170] {
            let oracle: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
            let got = ln_factorial(n);
            assert!(
                (got - oracle).abs() <= 1e-12 * oracle.abs().max(1.0),
                "n={n}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn binomial_small_table() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(12, 5), 792.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(3, 7), 0.0);
    }

    #[test]
    fn dd_recovers_cancellation() {
        // (1 + 1e-20) - 1 is lost in f64 but carried by the dd pair
        let x = DoubleDouble::from_f64(1.0).add(DoubleDouble { hi: 1e-20, lo: 0.0 });
        let y = x.add(DoubleDouble::from_f64(-1.0));
        assert!((y.to_f64() - 1e-20).abs() < 1e-33);
    }

    #[test]
    fn dd_mul_div_roundtrip() {
        let x = DoubleDouble::from_f64(std::f64::consts::PI);
        let y = x.mul_f64(7.0).div_f64(7.0);
        assert!((y.hi - x.hi).abs() < 1e-16);
        assert!((y.to_f64() - std::f64::consts::PI).abs() < 1e-30);
    }
}
