use std::time::Instant;

use super::{row_budget, tset_count, BuildOptions, BuildReport};
use crate::array::Array;
use crate::bounds::{
    bound_apca_cyclic, bound_apca_frobenius, cyclic_base_rows, frobenius_base_rows, BoundResult,
};
use crate::coverage::{defect_allowance, is_apca, orbit_coverage};
use crate::error::{Error, Result};
use crate::galois::{constant_rows, develop, orbits, GroupAction};
use crate::params::{full_count, PcaParams};
use crate::rng::seeded;
use crate::scalar::Real;

const DEFAULT_CAP: u64 = 64;

/// How the base array is sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sizing {
    /// Expected bad t-sets ≤ ε/2 of all: a sample passes with probability ≥ 1/2.
    Markov,
    /// Expected bad t-sets ≤ ε of all, the existence-bound row count.
    Exact,
}

fn preconditions<F: Real>(params: &PcaParams<F>) -> Result<()> {
    if !(params.epsilon > F::zero()) {
        return Err(Error::EpsilonZero);
    }
    if !params.is_full() {
        return Err(Error::MNotFull {
            m: params.m,
            full: params.full(),
        });
    }
    Ok(())
}

fn target<F: Real>(params: &PcaParams<F>, sizing: Sizing) -> F {
    match sizing {
        Sizing::Markov => params.epsilon / F::lit(2.0),
        Sizing::Exact => params.epsilon,
    }
}

/// Samples base arrays until all non-short orbits are covered in enough
/// t-sets. Returns the base and the number of samples.
fn sample_base<F: Real>(
    params: &PcaParams<F>,
    action: &GroupAction,
    base_rows: u64,
    cap: u64,
) -> Result<(Array, u64)> {
    let (t, k, v) = (params.t, params.k, params.v);
    let structure = orbits(t, v, action)?;
    let needed = structure.full_orbit_count() as u64;
    let allowed = defect_allowance(params.epsilon, tset_count(k, t)?);
    let n = row_budget(base_rows, k)?;
    let mut rng = seeded(params.seed);
    let mut samples = 0;
    loop {
        if samples >= cap {
            return Err(Error::IterationCap { cap });
        }
        samples += 1;
        let base = Array::random(n, k, v, &mut rng)?;
        let coverage = orbit_coverage(&base, t, &structure)?;
        if coverage.short_of_full(needed) <= allowed {
            return Ok((base, samples));
        }
    }
}

fn finish<F: Real>(
    algorithm: &'static str,
    params: &PcaParams<F>,
    array: Array,
    samples: u64,
    bound: BoundResult<F>,
    start: Instant,
) -> Result<BuildReport<F>> {
    let verdict = is_apca(&array, params.t, params.m, params.epsilon)?;
    if !verdict.holds {
        return Err(Error::VerificationFailed(format!(
            "{} defective t-sets, {} allowed",
            verdict.defects.len(),
            verdict.allowed
        )));
    }
    Ok(BuildReport {
        algorithm,
        params: *params,
        array,
        iterations: samples,
        rng_seed: params.seed,
        bound_used: bound,
        verifier: format!("apca(t={}, m={}, eps={})", params.t, params.m, params.epsilon),
        defective: verdict.defects.len() as u64,
        estimator_trace: Vec::new(),
        elapsed: start.elapsed(),
    })
}

pub(crate) fn cyclic_with<F: Real>(
    params: &PcaParams<F>,
    opts: &BuildOptions,
    sizing: Sizing,
) -> Result<BuildReport<F>> {
    let start = Instant::now();
    preconditions(params)?;
    let (t, v) = (params.t, params.v);
    let n = cyclic_base_rows(t, v, target(params, sizing))?;
    let bound = match sizing {
        Sizing::Exact => bound_apca_cyclic(params)?,
        Sizing::Markov => {
            let a = F::from_count(full_count(v, t - 1)?);
            BoundResult {
                real_bound: F::from_count(params.full()) * (F::lit(2.0) * a / params.epsilon).ln(),
                n_rows: v * n,
                source: "apca-cyclic-markov",
            }
        }
    };
    let action = GroupAction::cyclic(v)?;
    let (base, samples) = sample_base(params, &action, n, opts.cap(DEFAULT_CAP))?;
    let array = develop(&base, &action)?;
    finish("apca-cyclic", params, array, samples, bound, start)
}

/// ε-almost covering array (`m = v^t`) by developing a random base over the
/// cyclic group of order `v`.
///
/// The base has the least `n` rows with `v^{t−1} (1 − 1/v^{t−1})^n ≤ ε/2`
/// and is resampled until at most `⌊ε·C(k,t)⌋` t-sets miss an orbit. The
/// result has `v·n` rows.
pub fn build_apca_cyclic<F: Real>(
    params: &PcaParams<F>,
    opts: &BuildOptions,
) -> Result<BuildReport<F>> {
    cyclic_with(params, opts, Sizing::Markov)
}

/// ε-almost covering array (`m = v^t`, `v` a prime power ≤ 64) by developing
/// a random base over the affine group of GF(v) and appending the `v`
/// constant rows, which cover the short orbit everywhere.
///
/// Only full orbits are checked on the base. Rows: `v(v−1)·n + v`.
pub fn build_apca_frobenius<F: Real>(
    params: &PcaParams<F>,
    opts: &BuildOptions,
) -> Result<BuildReport<F>> {
    let start = Instant::now();
    let (t, k, v) = (params.t, params.k, params.v);
    let action = GroupAction::frobenius(v)?;
    preconditions(params)?;
    let n = frobenius_base_rows(t, v, target(params, Sizing::Markov))?;
    let closed = bound_apca_frobenius(params)?;
    let bound = BoundResult {
        real_bound: closed.real_bound,
        n_rows: v * (v - 1) * n + v,
        source: "apca-frobenius-markov",
    };
    let (base, samples) = sample_base(params, &action, n, opts.cap(DEFAULT_CAP))?;
    let array = develop(&base, &action)?.vstack(&constant_rows(k, v)?)?;
    finish("apca-frobenius", params, array, samples, bound, start)
}
