use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar used for bounds and tolerances: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an unsigned count.
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).unwrap_or_else(Self::infinity)
    }

    /// Lossy conversion from `f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Relative distance under which a real solution is treated as the integer
/// it approximates.
pub(crate) const SNAP_TOL: f64 = 1e-9;

/// Returns `Some(n)` when `x` lies within [`SNAP_TOL`] (relative) of the
/// integer `n`.
pub(crate) fn snap<F: Real>(x: F) -> Option<F> {
    let r = x.round();
    let scale = F::one().max(x.abs());
    if (x - r).abs() <= F::lit(SNAP_TOL) * scale {
        Some(r)
    } else {
        None
    }
}

/// Smallest integer `n` with `n > x` (strict) or `n ≥ x` (non-strict).
pub(crate) fn min_integer_above<F: Real>(x: F, strict: bool) -> u64 {
    if x.is_infinite() && x > F::zero() {
        return u64::MAX;
    }
    if x.is_nan() {
        return u64::MAX;
    }
    let n = match snap(x) {
        Some(r) if strict => r + F::one(),
        Some(r) => r,
        None if strict => x.floor() + F::one(),
        None => x.ceil(),
    };
    let n = n.max(F::zero());
    n.to_u64().unwrap_or(u64::MAX)
}

/// `floor(x)` with near-integer snapping.
pub(crate) fn snapped_floor<F: Real>(x: F) -> u64 {
    let y = snap(x).unwrap_or_else(|| x.floor()).max(F::zero());
    y.to_u64().unwrap_or(u64::MAX)
}

/// `ceil(x)` with near-integer snapping.
pub(crate) fn snapped_ceil<F: Real>(x: F) -> u64 {
    let y = snap(x).unwrap_or_else(|| x.ceil()).max(F::zero());
    y.to_u64().unwrap_or(u64::MAX)
}
