//! Builders. Every builder verifies its output with the matching predicate
//! from [`crate::coverage`] before returning; a failed check is an error.

mod concat;
mod derand;
mod group;
mod moser_tardos;
mod randomized;

pub use concat::build_concat;
pub use derand::{build_apca_derandomized, derandomized_array, MAX_CANDIDATES};
pub use group::{build_apca_cyclic, build_apca_frobenius};
pub use moser_tardos::build_pca_moser_tardos;
pub use randomized::build_apca_randomized;

use std::time::Duration;

use serde_json::{json, Value};

use crate::array::Array;
use crate::bounds::BoundResult;
use crate::error::{Error, Result};
use crate::params::PcaParams;
use crate::scalar::Real;
use crate::tsets::binomial;

/// Knobs shared by the builders.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Overrides the builder's default iteration cap.
    pub max_iterations: Option<u64>,
}

impl BuildOptions {
    fn cap(&self, default: u64) -> u64 {
        self.max_iterations.unwrap_or(default)
    }
}

/// A verified array plus how it was obtained.
#[derive(Debug, Clone)]
pub struct BuildReport<F = f64> {
    pub algorithm: &'static str,
    pub params: PcaParams<F>,
    pub array: Array,
    /// Resamples (Moser–Tardos), samples drawn (restart loops) or columns
    /// fixed (derandomized).
    pub iterations: u64,
    pub rng_seed: u64,
    pub bound_used: BoundResult<F>,
    /// Predicate the array was checked against.
    pub verifier: String,
    /// Defective t-sets under that predicate (full count).
    pub defective: u64,
    /// Pessimistic-estimator value after each fixed column (derandomized
    /// builder only), starting with the empty array.
    pub estimator_trace: Vec<F>,
    pub elapsed: Duration,
}

impl<F: Real> BuildReport<F> {
    pub fn to_json(&self) -> Value {
        let p = &self.params;
        json!({
            "algorithm": self.algorithm,
            "params": {
                "t": p.t,
                "k": p.k,
                "v": p.v,
                "m": p.m,
                "epsilon": p.epsilon.as_f64(),
            },
            "seed": self.rng_seed,
            "n_rows": self.array.rows(),
            "iterations": self.iterations,
            "verifier": self.verifier,
            "defective": self.defective,
            "bound": {
                "source": self.bound_used.source,
                "real_bound": self.bound_used.real_bound.as_f64(),
                "n_rows": self.bound_used.n_rows,
            },
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}

fn tset_count(k: usize, t: usize) -> Result<u64> {
    binomial(k as u64, t as u64)
        .ok_or_else(|| Error::CapacityExceeded(format!("C({k},{t}) column t-sets")))
}

fn row_budget(rows: u64, k: usize) -> Result<usize> {
    usize::try_from(rows)
        .ok()
        .filter(|&n| n.saturating_mul(k) <= 1 << 28)
        .ok_or_else(|| Error::CapacityExceeded(format!("{rows} x {k} array")))
}
