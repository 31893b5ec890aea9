//! The validated parameter bundle shared by bounds and builders.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameters `(t, k, v, m, ε, seed)` of a partial / almost-partial covering
/// array. Construct with [`PcaParams::new`], which validates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcaParams<F = f64> {
    /// Strength: size of the column subsets that must be covered.
    pub t: usize,
    /// Number of columns.
    pub k: usize,
    /// Alphabet size.
    pub v: u64,
    /// Required number of distinct tuples per column t-set.
    pub m: u64,
    /// Allowed fraction of defective t-sets.
    pub epsilon: F,
    pub seed: u64,
}

impl<F: Real> PcaParams<F> {
    pub fn new(t: usize, k: usize, v: u64, m: u64, epsilon: F, seed: u64) -> Result<Self> {
        validate(PcaParams {
            t,
            k,
            v,
            m,
            epsilon,
            seed,
        })
    }

    /// Covering-array parameters: `m = v^t`.
    pub fn covering(t: usize, k: usize, v: u64, epsilon: F, seed: u64) -> Result<Self> {
        let full = full_count(v, t)?;
        Self::new(t, k, v, full, epsilon, seed)
    }

    /// `v^t`, the number of distinct t-tuples. Infallible on validated params.
    pub fn full(&self) -> u64 {
        self.v.pow(self.t as u32)
    }

    /// `r = v^t − m + 1`, the number of tuples whose joint absence is a defect.
    pub fn r(&self) -> u64 {
        self.full() - self.m + 1
    }

    pub fn is_full(&self) -> bool {
        self.m == self.full()
    }

    pub fn with_m(&self, m: u64) -> Result<Self> {
        Self::new(self.t, self.k, self.v, m, self.epsilon, self.seed)
    }

    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.t, k, self.v, self.m, self.epsilon, self.seed)
    }

    pub fn with_epsilon(&self, epsilon: F) -> Result<Self> {
        Self::new(self.t, self.k, self.v, self.m, epsilon, self.seed)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        PcaParams { seed, ..*self }
    }
}

/// Checked `v^t`.
pub fn full_count(v: u64, t: usize) -> Result<u64> {
    u32::try_from(t)
        .ok()
        .and_then(|e| v.checked_pow(e))
        .ok_or(Error::Overflow { v, t })
}

/// Checks `2 ≤ t ≤ k`, `v ≥ 2`, `1 ≤ m ≤ v^t`, `0 ≤ ε ≤ 1` and that `v^t`
/// fits in 64 bits.
pub fn validate<F: Real>(params: PcaParams<F>) -> Result<PcaParams<F>> {
    let PcaParams {
        t, k, v, m, epsilon, ..
    } = params;
    if t < 2 {
        return Err(Error::StrengthTooSmall { t });
    }
    if k < t {
        return Err(Error::StrengthExceedsColumns { t, k });
    }
    if v < 2 {
        return Err(Error::AlphabetTooSmall { v });
    }
    let full = full_count(v, t)?;
    if m < 1 || m > full {
        return Err(Error::MOutOfRange { m, max: full });
    }
    if !(epsilon >= F::zero() && epsilon <= F::one()) {
        return Err(Error::EpsilonOutOfRange(epsilon.as_f64()));
    }
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid() {
        assert!(PcaParams::new(2, 4, 2, 4, 0.0f64, 0).is_ok());
    }

    #[test]
    fn rejects_m_above_full() {
        assert!(matches!(
            PcaParams::new(2, 4, 2, 5, 0.0f64, 0),
            Err(Error::MOutOfRange { m: 5, max: 4 })
        ));
        assert!(matches!(
            PcaParams::new(2, 4, 2, 0, 0.0f64, 0),
            Err(Error::MOutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_k_below_t() {
        assert!(matches!(
            PcaParams::new(3, 2, 2, 1, 0.0f64, 0),
            Err(Error::StrengthExceedsColumns { t: 3, k: 2 })
        ));
    }

    #[test]
    fn rejects_small_strength_and_alphabet() {
        assert!(matches!(
            PcaParams::new(1, 4, 2, 1, 0.0f64, 0),
            Err(Error::StrengthTooSmall { t: 1 })
        ));
        assert!(matches!(
            PcaParams::new(2, 4, 1, 1, 0.0f64, 0),
            Err(Error::AlphabetTooSmall { v: 1 })
        ));
    }

    #[test]
    fn rejects_epsilon_outside_unit_interval() {
        assert!(PcaParams::new(2, 4, 2, 4, 1.5f64, 0).is_err());
        assert!(PcaParams::new(2, 4, 2, 4, -0.1f32, 0).is_err());
        assert!(PcaParams::new(2, 4, 2, 4, f64::NAN, 0).is_err());
    }

    #[test]
    fn rejects_overflowing_power() {
        assert!(matches!(
            PcaParams::new(40, 40, 4, 1, 0.0f64, 0),
            Err(Error::Overflow { .. })
        ));
    }
}
