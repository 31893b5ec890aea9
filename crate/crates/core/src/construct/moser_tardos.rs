use std::time::Instant;

use super::{row_budget, BuildOptions, BuildReport};
use crate::array::Array;
use crate::bounds::bound_pca_lll;
use crate::coverage::{is_pca, Scanner};
use crate::error::{Error, Result};
use crate::params::PcaParams;
use crate::rng::seeded;
use crate::scalar::Real;
use crate::tsets::next_tset;

const DEFAULT_CAP: u64 = 1_000_000;

/// Resampling construction of a partial m-covering array with the local
/// lemma row count.
///
/// The array starts uniformly random. Each pass scans t-sets in
/// lexicographic order; at the first one covering fewer than `m` tuples all
/// `N·t` entries of its columns are redrawn (column by column, top to
/// bottom) and the scan restarts. A clean pass ends the loop.
/// `iterations` counts resamples.
pub fn build_pca_moser_tardos<F: Real>(
    params: &PcaParams<F>,
    opts: &BuildOptions,
) -> Result<BuildReport<F>> {
    let start = Instant::now();
    let bound = bound_pca_lll(params)?;
    let (t, k, v, m) = (params.t, params.k, params.v, params.m);
    let n = row_budget(bound.n_rows, k)?;
    let cap = opts.cap(DEFAULT_CAP);

    let mut rng = seeded(params.seed);
    let mut a = Array::random(n, k, v, &mut rng)?;
    let mut scanner = Scanner::new(v, t)?;
    let mut cols: Vec<usize> = Vec::with_capacity(t);
    let mut resamples = 0u64;
    'passes: loop {
        cols.clear();
        cols.extend(0..t);
        loop {
            if scanner.distinct(&a, &cols, m) < m {
                if resamples >= cap {
                    return Err(Error::IterationCap { cap });
                }
                for &c in &cols {
                    a.resample_column(c, &mut rng);
                }
                resamples += 1;
                continue 'passes;
            }
            if !next_tset(&mut cols, k) {
                break 'passes;
            }
        }
    }

    let verdict = is_pca(&a, t, m)?;
    if !verdict.holds {
        return Err(Error::VerificationFailed(format!("{:?}", verdict.witness)));
    }
    Ok(BuildReport {
        algorithm: "moser-tardos",
        params: *params,
        array: a,
        iterations: resamples,
        rng_seed: params.seed,
        bound_used: bound,
        verifier: format!("pca(t={t}, m={m})"),
        defective: 0,
        estimator_trace: Vec::new(),
        elapsed: start.elapsed(),
    })
}
