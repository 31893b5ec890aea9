use std::time::Instant;

use super::group::{cyclic_with, Sizing};
use super::{build_pca_moser_tardos, BuildOptions, BuildReport};
use crate::bounds::bound_concat;
use crate::coverage::{is_apca, is_pca};
use crate::error::{Error, Result};
use crate::params::PcaParams;
use crate::scalar::Real;

/// Cap on base-array samples for the cyclic half, which is sized without the
/// factor-2 slack and so may need more than a couple of draws.
const CYCLIC_CAP: u64 = 4096;

/// Offset mixed into the seed of the cyclic half so the two halves use
/// independent streams.
const SECOND_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;

/// A partial covering array stacked over an ε-almost covering array.
///
/// The top part comes from [`build_pca_moser_tardos`] at coverage
/// `v^t − r + 1`; the bottom from cyclic development sized by the exact
/// existence inequality, so the row count equals the combined bound. The
/// stack is checked against both guarantees: every t-set covers at least `m`
/// tuples, and at most `⌊ε·C(k,t)⌋` t-sets miss any tuple.
pub fn build_concat<F: Real>(params: &PcaParams<F>, opts: &BuildOptions) -> Result<BuildReport<F>> {
    let start = Instant::now();
    let plan = bound_concat(params)?;
    let top = build_pca_moser_tardos(&params.with_m(plan.pca_m)?, opts)?;
    let cyclic_params = params
        .with_m(params.full())?
        .with_seed(params.seed ^ SECOND_STREAM);
    let cyclic_opts = BuildOptions {
        max_iterations: Some(opts.max_iterations.unwrap_or(CYCLIC_CAP)),
    };
    let bottom = cyclic_with(&cyclic_params, &cyclic_opts, Sizing::Exact)?;
    let array = top.array.vstack(&bottom.array)?;

    let (t, m) = (params.t, params.m);
    let pca = is_pca(&array, t, m)?;
    if !pca.holds {
        return Err(Error::VerificationFailed(format!("{:?}", pca.witness)));
    }
    let almost = is_apca(&array, t, params.full(), params.epsilon)?;
    if !almost.holds {
        return Err(Error::VerificationFailed(format!(
            "{} t-sets miss a tuple, {} allowed",
            almost.defects.len(),
            almost.allowed
        )));
    }
    Ok(BuildReport {
        algorithm: "concat",
        params: *params,
        array,
        iterations: top.iterations + bottom.iterations,
        rng_seed: params.seed,
        bound_used: plan.total,
        verifier: format!(
            "pca(t={t}, m={m}) and apca(t={t}, m={}, eps={})",
            params.full(),
            params.epsilon
        ),
        defective: almost.defects.len() as u64,
        estimator_trace: Vec::new(),
        elapsed: start.elapsed(),
    })
}
