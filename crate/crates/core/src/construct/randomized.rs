use std::time::Instant;

use super::{row_budget, tset_count, BuildOptions, BuildReport};
use crate::array::Array;
use crate::bounds::bound_apca_markov;
use crate::coverage::{count_defects, defect_allowance, is_apca};
use crate::error::{Error, Result};
use crate::params::PcaParams;
use crate::rng::seeded;
use crate::scalar::Real;

const DEFAULT_CAP: u64 = 64;

/// Sample-and-check construction of an ε-almost partial m-covering array.
///
/// Rows: least N with `C(v^t, m−1) ((m−1)/v^t)^N ≤ ε/2`, so a sample is
/// rejected with probability at most 1/2. Defects are counted in
/// lexicographic t-set order and counting stops once they exceed
/// `⌊ε·C(k,t)⌋`. `iterations` is the number of samples drawn.
pub fn build_apca_randomized<F: Real>(
    params: &PcaParams<F>,
    opts: &BuildOptions,
) -> Result<BuildReport<F>> {
    let start = Instant::now();
    let bound = bound_apca_markov(params)?;
    let (t, k, v, m) = (params.t, params.k, params.v, params.m);
    let n = row_budget(bound.n_rows, k)?;
    let allowed = defect_allowance(params.epsilon, tset_count(k, t)?);
    let cap = opts.cap(DEFAULT_CAP);

    let mut rng = seeded(params.seed);
    let mut samples = 0u64;
    let a = loop {
        if samples >= cap {
            return Err(Error::IterationCap { cap });
        }
        samples += 1;
        let a = Array::random(n, k, v, &mut rng)?;
        if count_defects(&a, t, m, Some(allowed))? <= allowed {
            break a;
        }
    };

    let verdict = is_apca(&a, t, m, params.epsilon)?;
    if !verdict.holds {
        return Err(Error::VerificationFailed(format!(
            "{} defective t-sets, {} allowed",
            verdict.defects.len(),
            verdict.allowed
        )));
    }
    Ok(BuildReport {
        algorithm: "apca-randomized",
        params: *params,
        array: a,
        iterations: samples,
        rng_seed: params.seed,
        bound_used: bound,
        verifier: format!("apca(t={t}, m={m}, eps={})", params.epsilon),
        defective: verdict.defects.len() as u64,
        estimator_trace: Vec::new(),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Params;

    #[test]
    fn sizes_and_verifies() {
        let params = Params::new(2, 10, 2, 4, 0.01, 7).unwrap();
        let r = build_apca_randomized(&params, &BuildOptions::default()).unwrap();
        assert_eq!(r.array.rows(), 24);
        assert!(is_apca(&r.array, 2, 4, 0.01).unwrap().holds);
    }

    #[test]
    fn epsilon_one_accepts_first_sample() {
        for seed in 0..20 {
            let params = Params::new(3, 9, 3, 27, 1.0, seed).unwrap();
            let r = build_apca_randomized(&params, &BuildOptions::default()).unwrap();
            assert_eq!(r.iterations, 1);
        }
    }

    #[test]
    fn rejects_zero_epsilon() {
        let params = Params::new(2, 10, 2, 4, 0.0, 7).unwrap();
        assert!(matches!(
            build_apca_randomized(&params, &BuildOptions::default()),
            Err(Error::EpsilonZero)
        ));
    }
}
