//! Hyperbolic-cross cardinalities and their use in high-dimensional
//! approximation: exact counting of corner and symmetric crosses, stable
//! evaluation of the associated smooth-cross volumes, verified analytic
//! bounds, exact Kolmogorov widths and epsilon-dimensions of modified
//! Korobov balls with a tractability classifier, and spectral projection
//! demos for the periodic Fourier and non-periodic Jacobi settings.
//!
//! ```
//! use hypercross::counting::{count_recursive, CrossParams};
//! use hypercross::volume::volume;
//! use hypercross::widths::{exact_dn, exact_n_eps, SettingKind, SmoothnessParams};
//!
//! let cross = CrossParams::corner(2, 10.0, 1.0)?;
//! assert_eq!(count_recursive(&cross, 1_000_000)?.exact, 27);
//! assert!((volume(2, 10.0, 1.0)?.value - 14.0259).abs() < 1e-3);
//!
//! let ball = SmoothnessParams::new(1, 1.0, 1.0, SettingKind::PeriodicSymmetric)?;
//! assert_eq!(exact_dn(&ball, 3, 1_000_000)?, 1.0 / 3.0);
//! assert_eq!(exact_n_eps(&ball, 0.4, 1_000_000)?, 3);
//! # Ok::<(), hypercross::Error>(())
//! ```

// validation sites use negated comparisons (`!(x > 0.0)`) so NaN inputs are
// rejected alongside out-of-range ones
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod counting;
pub mod error;
pub mod remainder;
pub mod special;
pub mod spectral;
pub mod verify;
pub mod volume;
pub mod widths;

pub use counting::{CountMethod, CountReport, CrossKind, CrossParams, MultiIndex, DEFAULT_CAP};
pub use error::{Error, Result};
pub use remainder::{RemainderBounds, RemainderEval, RemainderMethod};
pub use volume::{VolumeBounds, VolumeEval, VolumeMethod};
pub use widths::{SettingKind, SmoothnessParams, TractabilityClass, TractabilityVerdict};
