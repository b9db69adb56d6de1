//! Exact enumeration and output-sensitive exact counting of corner and
//! symmetric hyperbolic crosses.
//!
//! A corner cross is the set of non-negative integer vectors `k` with
//! `prod(k_i + a) <= T`; the symmetric cross allows signed entries and
//! uses `|k_i|` in the product. Three counters are provided: a brute-force
//! enumerator (the test oracle), a first-coordinate recursion that never
//! materializes vectors, and a support-size decomposition that reduces an
//! s-dimensional count to lower-dimensional counts with shift `a + 1`.

use crate::error::{Error, Result};
use crate::special::binomial;
use serde::{Deserialize, Serialize};

/// Default cap on enumerated/counted lattice points.
pub const DEFAULT_CAP: u64 = 10_000_000;

/// Thresholds above this are rejected rather than switching to log-space.
pub const MAX_THRESHOLD: f64 = 1e300;

/// Largest f64 with exact integer semantics; counts beyond it are refused.
const EXACT_INT_LIMIT: f64 = 9.007_199_254_740_992e15; // 2^53

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossKind {
    /// Non-negative entries only.
    Corner,
    /// Signed entries; membership uses |k_i|.
    Symmetric,
}

impl std::fmt::Display for CrossKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CrossKind::Corner => write!(f, "corner"),
            CrossKind::Symmetric => write!(f, "symmetric"),
        }
    }
}

/// Hyperbolic-cross parameters (dimension, threshold, shift, variant).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossParams {
    pub s: u32,
    pub threshold: f64,
    pub shift: f64,
    pub kind: CrossKind,
}

impl CrossParams {
    pub fn new(s: u32, threshold: f64, shift: f64, kind: CrossKind) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("dimension s must be >= 1".into()));
        }
        if !(threshold > 0.0) || !threshold.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "threshold must be positive and finite, got {threshold}"
            )));
        }
        if !(shift > 0.0) || !shift.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "shift must be positive and finite, got {shift}"
            )));
        }
        if threshold > MAX_THRESHOLD {
            return Err(Error::Range(format!(
                "threshold {threshold} above supported limit {MAX_THRESHOLD}"
            )));
        }
        Ok(Self {
            s,
            threshold,
            shift,
            kind,
        })
    }

    pub fn corner(s: u32, threshold: f64, shift: f64) -> Result<Self> {
        Self::new(s, threshold, shift, CrossKind::Corner)
    }

    pub fn symmetric(s: u32, threshold: f64, shift: f64) -> Result<Self> {
        Self::new(s, threshold, shift, CrossKind::Symmetric)
    }

    /// True when the cross contains no lattice point (T < a^s).
    pub fn is_empty(&self) -> bool {
        self.threshold < self.shift.powi(self.s as i32)
    }
}

/// Integer vector of length s; entries are non-negative for corner crosses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// prod over entries of (|k_i| + shift).
    pub fn shifted_product(&self, shift: f64) -> f64 {
        self.0
            .iter()
            .map(|&k| k.unsigned_abs() as f64 + shift)
            .product()
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Bruteforce,
    Recursive,
    Decomposition,
}

/// An exact cardinality together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub exact: u64,
    pub params: CrossParams,
    pub method: CountMethod,
}

/// Number of k in N_0 with k + shift <= threshold.
pub fn count_1d(threshold: f64, shift: f64) -> Result<u64> {
    if !(threshold > 0.0) || !(shift > 0.0) {
        return Err(Error::InvalidParameter(
            "count_1d requires positive threshold and shift".into(),
        ));
    }
    if threshold < shift {
        return Ok(0);
    }
    let x = threshold - shift;
    if x >= EXACT_INT_LIMIT {
        return Err(Error::Range(format!(
            "1-d count {x:.3e} exceeds exact integer range"
        )));
    }
    Ok(x.floor() as u64 + 1)
}

/// Number of k in N_0 with k + shift < threshold (strict).
fn count_1d_strict(threshold: f64, shift: f64) -> Result<u64> {
    if threshold <= shift {
        return Ok(0);
    }
    let x = threshold - shift;
    if x >= EXACT_INT_LIMIT {
        return Err(Error::Range(format!(
            "1-d count {x:.3e} exceeds exact integer range"
        )));
    }
    let fl = x.floor();
    Ok(if fl == x { x as u64 } else { fl as u64 + 1 })
}

/// Every member of the cross in lexicographic order of entries.
///
/// Prefixes are abandoned as soon as the partial product can no longer be
/// completed (remaining coordinates contribute at least `shift` each).
pub fn enumerate(params: &CrossParams, cap: u64) -> Result<Vec<MultiIndex>> {
    let mut out = Vec::new();
    let mut entries = Vec::with_capacity(params.s as usize);
    enumerate_walk(params, cap, 1.0, &mut entries, &mut out)?;
    Ok(out)
}

fn enumerate_walk(
    params: &CrossParams,
    cap: u64,
    prefix_product: f64,
    entries: &mut Vec<i64>,
    out: &mut Vec<MultiIndex>,
) -> Result<()> {
    let s = params.s as usize;
    let a = params.shift;
    let depth = entries.len();
    let remaining_after = (s - depth - 1) as i32;
    // (|k| + a) * a^remaining must fit under T / prefix_product
    let budget = params.threshold / (prefix_product * a.powi(remaining_after));
    let kmax = budget - a;
    if kmax < 0.0 {
        return Ok(());
    }
    let kmax = kmax.floor() as i64;
    let lo = match params.kind {
        CrossKind::Corner => 0,
        CrossKind::Symmetric => -kmax,
    };
    for k in lo..=kmax {
        let factor = k.unsigned_abs() as f64 + a;
        entries.push(k);
        if depth + 1 == s {
            if out.len() as u64 >= cap {
                entries.pop();
                return Err(Error::CapExceeded {
                    partial: out.len() as u64,
                });
            }
            out.push(MultiIndex(entries.clone()));
        } else {
            enumerate_walk(params, cap, prefix_product * factor, entries, out)?;
        }
        entries.pop();
    }
    Ok(())
}

/// Count by full enumeration; the membership of every candidate is decided
/// by a freshly multiplied complete product, making this the authoritative
/// oracle for the other counters.
pub fn count_bruteforce(params: &CrossParams, cap: u64) -> Result<CountReport> {
    let mut count = 0u64;
    let mut entries = Vec::with_capacity(params.s as usize);
    brute_walk(params, cap, &mut entries, &mut count)?;
    Ok(CountReport {
        exact: count,
        params: *params,
        method: CountMethod::Bruteforce,
    })
}

fn brute_walk(
    params: &CrossParams,
    cap: u64,
    entries: &mut Vec<i64>,
    count: &mut u64,
) -> Result<()> {
    let s = params.s as usize;
    let a = params.shift;
    let depth = entries.len();
    if depth == s {
        // full product recomputed from scratch
        let prod: f64 = entries
            .iter()
            .map(|&k| k.unsigned_abs() as f64 + a)
            .product();
        if prod <= params.threshold {
            if *count >= cap {
                return Err(Error::CapExceeded { partial: *count });
            }
            *count += 1;
        }
        return Ok(());
    }
    let prefix: f64 = entries
        .iter()
        .map(|&k| k.unsigned_abs() as f64 + a)
        .product();
    let remaining_after = (s - depth - 1) as i32;
    let kmax = params.threshold / (prefix * a.powi(remaining_after)) - a;
    if kmax < 0.0 {
        return Ok(());
    }
    let kmax = kmax.floor() as i64;
    let lo = match params.kind {
        CrossKind::Corner => 0,
        CrossKind::Symmetric => -kmax,
    };
    for k in lo..=kmax {
        entries.push(k);
        brute_walk(params, cap, entries, count)?;
        entries.pop();
    }
    Ok(())
}

/// Output-sensitive count by recursion over the first coordinate:
/// the s-dimensional count is the sum over k of the (s-1)-dimensional
/// count at threshold T/(k+a). No index vectors are materialized.
pub fn count_recursive(params: &CrossParams, cap: u64) -> Result<CountReport> {
    let exact = count_rec_impl(
        params.kind,
        params.s,
        params.threshold,
        params.shift,
        false,
        cap,
    )?;
    Ok(CountReport {
        exact,
        params: *params,
        method: CountMethod::Recursive,
    })
}

/// Strict-inequality variant: counts points with prod(|k_i| + a) < T.
/// Used by the width oracles to resolve boundary ties.
pub fn count_strict(params: &CrossParams, cap: u64) -> Result<u64> {
    count_rec_impl(
        params.kind,
        params.s,
        params.threshold,
        params.shift,
        true,
        cap,
    )
}

fn count_rec_impl(
    kind: CrossKind,
    s: u32,
    threshold: f64,
    shift: f64,
    strict: bool,
    cap: u64,
) -> Result<u64> {
    if threshold > MAX_THRESHOLD {
        return Err(Error::Range(format!(
            "threshold {threshold} above supported limit {MAX_THRESHOLD}"
        )));
    }
    if s == 1 {
        let c = if strict {
            count_1d_strict(threshold, shift)?
        } else {
            count_1d(threshold, shift)?
        };
        return Ok(match kind {
            CrossKind::Corner => c,
            // signed entries: every k >= 1 appears twice
            CrossKind::Symmetric => {
                if c == 0 {
                    0
                } else {
                    2 * c - 1
                }
            }
        });
    }
    let min_rest = shift.powi(s as i32 - 1);
    let kmax = threshold / min_rest - shift;
    if kmax < 0.0 {
        return Ok(0);
    }
    if kmax >= EXACT_INT_LIMIT {
        return Err(Error::Range("first-coordinate range too large".into()));
    }
    let kmax = kmax.floor() as u64;
    let mut total: u64 = 0;
    for k in 0..=kmax {
        let sub = threshold / (k as f64 + shift);
        let c = count_rec_impl(kind, s - 1, sub, shift, strict, cap)?;
        if c == 0 {
            break; // sub-thresholds only shrink with k
        }
        let weight = if k > 0 && kind == CrossKind::Symmetric {
            2
        } else {
            1
        };
        total = total
            .checked_add(weight * c)
            .ok_or(Error::Range("count overflow".into()))?;
        if total > cap {
            return Err(Error::CapExceeded { partial: total });
        }
    }
    Ok(total)
}

/// Count via the dimension-by-dimension support decomposition: members are
/// grouped by the size j of their support, which reduces the count to
/// j-dimensional corner counts with shift a+1 and threshold T*a^(j-s).
/// The symmetric variant weights each group by 2^j for the sign patterns.
pub fn count_by_support_decomposition(params: &CrossParams, cap: u64) -> Result<CountReport> {
    let s = params.s;
    let a = params.shift;
    let mut total: u128 = 0;
    for j in 0..=s {
        let sub_threshold = params.threshold * a.powi(j as i32 - s as i32);
        let inner = if j == 0 {
            // zero-dimensional cross: the empty product is <= T' iff T' >= 1
            u64::from(sub_threshold >= 1.0)
        } else {
            if sub_threshold > MAX_THRESHOLD {
                return Err(Error::Range(format!(
                    "decomposition sub-threshold {sub_threshold} out of range"
                )));
            }
            count_rec_impl(CrossKind::Corner, j, sub_threshold, a + 1.0, false, cap)?
        };
        let mut weight = binomial(s, j) as u128;
        if params.kind == CrossKind::Symmetric {
            weight <<= j;
        }
        total += weight * inner as u128;
        if total > cap as u128 {
            return Err(Error::CapExceeded {
                partial: total.min(u64::MAX as u128) as u64,
            });
        }
    }
    Ok(CountReport {
        exact: total as u64,
        params: *params,
        method: CountMethod::Decomposition,
    })
}

/// Visit the shifted product of every member without materializing index
/// vectors; visiting order follows the lexicographic walk.
pub(crate) fn visit_products<F: FnMut(f64)>(
    params: &CrossParams,
    cap: u64,
    visitor: &mut F,
) -> Result<u64> {
    let mut seen = 0u64;
    product_walk(params, cap, 0, 1.0, &mut seen, visitor)?;
    Ok(seen)
}

fn product_walk<F: FnMut(f64)>(
    params: &CrossParams,
    cap: u64,
    depth: usize,
    prefix: f64,
    seen: &mut u64,
    visitor: &mut F,
) -> Result<()> {
    let s = params.s as usize;
    let a = params.shift;
    let remaining_after = (s - depth - 1) as i32;
    let kmax = params.threshold / (prefix * a.powi(remaining_after)) - a;
    if kmax < 0.0 {
        return Ok(());
    }
    for k in 0..=(kmax.floor() as u64) {
        let factor = k as f64 + a;
        let weight = if k > 0 && params.kind == CrossKind::Symmetric {
            2
        } else {
            1
        };
        if depth + 1 == s {
            if *seen + weight > cap {
                return Err(Error::CapExceeded { partial: *seen });
            }
            for _ in 0..weight {
                visitor(prefix * factor);
            }
            *seen += weight;
        } else {
            // sign patterns multiply the subtree, not the product value
            for _ in 0..weight {
                product_walk(params, cap, depth + 1, prefix * factor, seen, visitor)?;
            }
        }
    }
    Ok(())
}

/// Corner count with a sqrt-range split at s = 2, for the large thresholds
/// reached by threshold searches. Not tie-safe on knife-edge products.
pub(crate) fn corner_count_fast(s: u32, threshold: f64, shift: f64) -> u64 {
    debug_assert!(s >= 1 && threshold > 0.0 && shift > 0.0);
    let a = shift;
    match s {
        1 => count_1d(threshold, a).unwrap_or(0),
        2 => {
            if threshold < a * a {
                return 0;
            }
            let u = threshold.sqrt();
            let c_u = count_1d(u, a).unwrap_or(0);
            let mut total: u64 = 0;
            for k in 0..c_u {
                total += count_1d(threshold / (k as f64 + a), a).unwrap_or(0);
            }
            2 * total - c_u * c_u
        }
        _ => {
            let kmax = threshold / a.powi(s as i32 - 1) - a;
            if kmax < 0.0 {
                return 0;
            }
            let mut total = 0u64;
            for k in 0..=(kmax.floor() as u64) {
                let c = corner_count_fast(s - 1, threshold / (k as f64 + a), a);
                if c == 0 {
                    break;
                }
                total += c;
            }
            total
        }
    }
}
