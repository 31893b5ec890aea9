//! Column-by-column derandomization for `m = v^t`.
//!
//! The estimator is the expected number of (t-set, tuple) pairs missing from
//! the array when the fixed columns are kept and the rest are uniform. For a
//! t-set with fixed part `S` and `f` free columns, tuple `x` is missing with
//! probability `(1 − v^{−f})^c` where `c` counts rows agreeing with `x` on
//! `S`. It bounds the expected number of defective t-sets, starts at or below
//! `ε·C(k,t)` at the chosen row count, and the best next column never raises
//! it.

use std::time::Instant;

use super::{row_budget, BuildOptions, BuildReport};
use crate::array::{Array, Symbol};
use crate::bounds::bound_apca;
use crate::coverage::is_apca;
use crate::error::{Error, Result};
use crate::params::{full_count, PcaParams};
use crate::scalar::Real;
use crate::tsets::{binomial, next_tset};

/// Upper limit on `v^N`, the candidate columns examined per step.
pub const MAX_CANDIDATES: u64 = 1 << 20;

/// Relative margin a candidate must beat the incumbent by; smaller
/// differences count as ties and keep the lexicographically smaller column.
const TIE_TOL: f64 = 1e-12;

/// Deterministic ε-almost covering array (`m = v^t`) with the ε-almost
/// existence-bound row count. `iterations` is the number of columns fixed;
/// `estimator_trace` holds the estimator before any column and after each.
pub fn build_apca_derandomized<F: Real>(
    params: &PcaParams<F>,
    _opts: &BuildOptions,
) -> Result<BuildReport<F>> {
    let start = Instant::now();
    if !params.is_full() {
        return Err(Error::MNotFull {
            m: params.m,
            full: params.full(),
        });
    }
    let bound = bound_apca(params)?;
    let (t, k, v) = (params.t, params.k, params.v);
    let (array, trace) = derandomized_array::<F>(t, k, v, bound.n_rows)?;
    let verdict = is_apca(&array, t, params.m, params.epsilon)?;
    if !verdict.holds {
        return Err(Error::VerificationFailed(format!(
            "{} defective t-sets, {} allowed",
            verdict.defects.len(),
            verdict.allowed
        )));
    }
    Ok(BuildReport {
        algorithm: "derandomized",
        params: *params,
        array,
        iterations: k as u64,
        rng_seed: params.seed,
        bound_used: bound,
        verifier: format!("apca(t={t}, m={}, eps={})", params.m, params.epsilon),
        defective: verdict.defects.len() as u64,
        estimator_trace: trace,
        elapsed: start.elapsed(),
    })
}

/// Fixes the `k` columns of an `n_rows × k` array left to right, each time
/// taking the column (over all `v^n_rows`, lexicographic order) that
/// minimizes the estimator. Returns the array and the estimator trace.
pub fn derandomized_array<F: Real>(
    t: usize,
    k: usize,
    v: u64,
    n_rows: u64,
) -> Result<(Array, Vec<F>)> {
    let n = row_budget(n_rows, k)?;
    let candidates = u32::try_from(n)
        .ok()
        .and_then(|e| v.checked_pow(e))
        .filter(|&c| c <= MAX_CANDIDATES)
        .ok_or_else(|| {
            Error::CapacityExceeded(format!("{v}^{n} candidate columns per step"))
        })?;
    full_count(v, t)?;
    let est = Estimator::new(t, k, v, n);
    let mut cells = vec![0 as Symbol; n * k];
    let mut trace = vec![F::lit(est.total(&cells, 0))];
    let mut column = vec![0 as Symbol; n];
    let mut best = vec![0 as Symbol; n];
    for c in 0..k {
        let fixed = est.fixed_subsets(&cells, c);
        column.iter_mut().for_each(|s| *s = 0);
        best.iter_mut().for_each(|s| *s = 0);
        let mut best_score = est.score(&fixed, &column, c);
        for _ in 1..candidates {
            increment(&mut column, v);
            let score = est.score(&fixed, &column, c);
            if score < best_score - TIE_TOL * best_score.abs() {
                best_score = score;
                best.copy_from_slice(&column);
            }
        }
        for (i, &s) in best.iter().enumerate() {
            cells[i * k + c] = s;
        }
        trace.push(F::lit(est.total(&cells, c + 1)));
    }
    Ok((Array::from_cells(n, k, v, cells)?, trace))
}

/// Odometer step, last row least significant.
fn increment(column: &mut [Symbol], v: u64) {
    for s in column.iter_mut().rev() {
        if u64::from(*s) + 1 < v {
            *s += 1;
            return;
        }
        *s = 0;
    }
}

struct Estimator {
    t: usize,
    k: usize,
    v: u64,
    n: usize,
    /// `miss[f][c] = (1 − v^{−f})^c`, with `miss[0][c] = [c = 0]`.
    miss: Vec<Vec<f64>>,
}

/// A fixed column subset with each row's rank on it.
struct Fixed {
    size: usize,
    ranks: Vec<u64>,
}

impl Estimator {
    fn new(t: usize, k: usize, v: u64, n: usize) -> Self {
        let miss = (0..=t)
            .map(|f| {
                let q = 1.0 - (v as f64).powi(-(f as i32));
                (0..=n)
                    .map(|c| if f == 0 { f64::from(c == 0) } else { q.powi(c as i32) })
                    .collect()
            })
            .collect();
        Estimator { t, k, v, n, miss }
    }

    fn rank_rows(&self, cells: &[Symbol], cols: &[usize]) -> Vec<u64> {
        (0..self.n)
            .map(|i| {
                cols.iter()
                    .fold(0u64, |acc, &c| acc * self.v + u64::from(cells[i * self.k + c]))
            })
            .collect()
    }

    /// `Σ_y miss[f][count of rows with rank y]` over all `y ∈ [v]^size`.
    fn tuple_sum(&self, ranks: impl Iterator<Item = u64>, size: usize, f: usize, counts: &mut Vec<u32>) -> f64 {
        let slots = self.v.pow(size as u32) as usize;
        counts.clear();
        counts.resize(slots, 0);
        for r in ranks {
            counts[r as usize] += 1;
        }
        counts.iter().map(|&c| self.miss[f][c as usize]).sum()
    }

    /// Weight of a fixed subset of size `j` when `free` columns remain
    /// unfixed: number of completions to a t-set times `v^{t−j}`.
    fn weight(&self, j: usize, free: usize) -> f64 {
        let f = self.t - j;
        binomial(free as u64, f as u64).unwrap_or(u64::MAX) as f64 * (self.v as f64).powi(f as i32)
    }

    /// Estimator with columns `0..fixed` set in `cells`.
    fn total(&self, cells: &[Symbol], fixed: usize) -> f64 {
        let free = self.k - fixed;
        let mut counts = Vec::new();
        let mut sum = 0.0;
        for j in 0..=self.t.min(fixed) {
            if self.t - j > free {
                continue;
            }
            let w = self.weight(j, free);
            for_each_subset(fixed, j, |cols| {
                let ranks = self.rank_rows(cells, cols);
                sum += w * self.tuple_sum(ranks.into_iter(), j, self.t - j, &mut counts);
            });
        }
        sum
    }

    /// Subsets `S' ⊆ 0..c` that, with column `c` added, form the fixed part
    /// of some t-set.
    fn fixed_subsets(&self, cells: &[Symbol], c: usize) -> Vec<Fixed> {
        let free_after = self.k - c - 1;
        let mut out = Vec::new();
        for size in 0..self.t.min(c + 1) {
            if self.t - size - 1 > free_after {
                continue;
            }
            for_each_subset(c, size, |cols| {
                out.push(Fixed {
                    size,
                    ranks: self.rank_rows(cells, cols),
                });
            });
        }
        out
    }

    /// The part of the estimator after fixing column `c` to `column` that
    /// depends on the choice: t-sets containing `c`.
    fn score(&self, fixed: &[Fixed], column: &[Symbol], c: usize) -> f64 {
        let free_after = self.k - c - 1;
        let mut counts = Vec::new();
        let mut sum = 0.0;
        for s in fixed {
            let j = s.size + 1;
            let w = self.weight(j, free_after);
            let ranks = s
                .ranks
                .iter()
                .zip(column)
                .map(|(&r, &x)| r * self.v + u64::from(x));
            sum += w * self.tuple_sum(ranks, j, self.t - j, &mut counts);
        }
        sum
    }
}

/// Calls `f` with every `size`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        f(&cur);
        if size == 0 || !next_tset(&mut cur, n) {
            return;
        }
    }
}
