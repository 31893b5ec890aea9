//! Log-space binomial coefficients.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this many factors `ln C(n, r)` is summed term by term.
const DIRECT_TERMS: u64 = 256;

/// `ln C(n, r)` without forming the integer coefficient.
pub fn log_binomial<F: Real>(n: u64, r: u64) -> Result<F> {
    if r > n {
        return Err(Error::ROutOfRange { n, r });
    }
    let r = r.min(n - r);
    if r == 0 {
        return Ok(F::zero());
    }
    if r <= DIRECT_TERMS {
        // ln ∏ (n - i) / (i + 1), accumulated in f64 for the f32 case too
        let mut acc = 0.0f64;
        for i in 0..r {
            acc += ((n - i) as f64 / (i + 1) as f64).ln();
        }
        return Ok(F::lit(acc));
    }
    let (n, r) = (n as f64, r as f64);
    Ok(F::lit(
        ln_gamma(n + 1.0) - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0),
    ))
}

/// `ln Γ(x)` for `x > 0`: shift to `x ≥ 16` then Stirling's series.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut shift = 0.0;
    let mut x = x;
    while x < 16.0 {
        shift += x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Bernoulli terms B_{2j} / (2j (2j-1) x^{2j-1}), j = 1..6
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2
                                * (-1.0 / 1680.0
                                    + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0))))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln_factorial_direct(n: u64) -> f64 {
        (2..=n).map(|i| (i as f64).ln()).sum()
    }

    #[test]
    fn small_values() {
        let x: f64 = log_binomial(4, 3).unwrap();
        assert!((x - 4f64.ln()).abs() < 1e-15);
        assert_eq!(log_binomial::<f64>(17, 0).unwrap(), 0.0);
        let y: f64 = log_binomial(4096, 4095).unwrap();
        assert!((y - 4096f64.ln()).abs() < 1e-12);
        assert!((y - 8.317766).abs() < 1e-6);
    }

    #[test]
    fn rejects_r_above_n() {
        assert!(matches!(
            log_binomial::<f64>(3, 4),
            Err(Error::ROutOfRange { n: 3, r: 4 })
        ));
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        for n in [1u64, 2, 5, 10, 20, 100, 1000] {
            let expect = ln_factorial_direct(n);
            let got = ln_gamma(n as f64 + 1.0);
            assert!(
                (got - expect).abs() <= 1e-12 * expect.max(1.0),
                "n={n}: {got} vs {expect}"
            );
        }
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
    }

    #[test]
    fn symmetric_in_r() {
        for &(n, r) in &[(10u64, 3u64), (600, 290), (4096, 2048), (4096, 1000), (100000, 7)] {
            let a: f64 = log_binomial(n, r).unwrap();
            let b: f64 = log_binomial(n, n - r).unwrap();
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
        }
    }

    #[test]
    fn both_paths_agree_near_threshold() {
        // r = 256 uses the product, r = 257 the gamma route; neighbours must be consistent
        let n = 5000u64;
        let a: f64 = log_binomial(n, 256).unwrap();
        let b: f64 = log_binomial(n, 257).unwrap();
        let step = ((n - 256) as f64 / 257.0).ln();
        assert!((b - a - step).abs() < 1e-10 * b);
    }
}
