//! Existence bounds for partial and almost-partial covering arrays.
//!
//! Every bound is evaluated in log space. `n_rows` is the least integer that
//! satisfies the underlying expected-value inequality, honouring whether that
//! inequality is strict (union bound: expectation below 1) or not (local
//! lemma and ε-targets: `≤`).

mod lnbinom;
mod sweep;

pub use lnbinom::{ln_gamma, log_binomial};
pub use sweep::{figure_1a, figure_1b, sweep, Axis, BoundSweep, Outcome, SweepPoint};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::galois::is_prime_power;
use crate::params::{full_count, PcaParams};
use crate::scalar::{min_integer_above, snapped_floor, Real, SNAP_TOL};

/// A real-valued bound, the integer row count derived from it, and a label
/// naming the formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult<F = f64> {
    pub real_bound: F,
    pub n_rows: u64,
    pub source: &'static str,
}

impl<F: Real> BoundResult<F> {
    fn degenerate(source: &'static str) -> Self {
        BoundResult {
            real_bound: F::zero(),
            n_rows: 1,
            source,
        }
    }
}

/// Which form of the cyclic-development PCA bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CyclicVariant {
    /// `v (1 + ln{C(k,t−1) C(v^{t−1}, s)}) / ln(v^{t−1}/(v^{t−1}−s))`.
    #[default]
    AsPrinted,
    /// Same with an extra factor `t` inside the logarithm.
    WithT,
}

impl FromStr for CyclicVariant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "printed" | "as-printed" => Ok(CyclicVariant::AsPrinted),
            "with-t" => Ok(CyclicVariant::WithT),
            _ => Err(format!("unknown variant {s:?} (expected printed|with-t)")),
        }
    }
}

/// The bound formulas that can appear in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    Union,
    Lll,
    Apca,
    /// The `ε/2` sizing used by the randomized APCA builder.
    ApcaMarkov,
    ApcaCyclic,
    ApcaFrobenius,
    PcaCyclic(CyclicVariant),
    Concat,
    /// `(t−1) v^t log₂ k`, informational.
    ReferenceUpper,
    /// `v^{t−1} log₂ k`, informational.
    ReferenceLower,
}

impl Formula {
    pub const ALL: [Formula; 10] = [
        Formula::Union,
        Formula::Lll,
        Formula::Apca,
        Formula::ApcaMarkov,
        Formula::ApcaCyclic,
        Formula::ApcaFrobenius,
        Formula::PcaCyclic(CyclicVariant::AsPrinted),
        Formula::Concat,
        Formula::ReferenceUpper,
        Formula::ReferenceLower,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Formula::Union => "union",
            Formula::Lll => "lll",
            Formula::Apca => "apca",
            Formula::ApcaMarkov => "apca-markov",
            Formula::ApcaCyclic => "apca-cyclic",
            Formula::ApcaFrobenius => "apca-frobenius",
            Formula::PcaCyclic(CyclicVariant::AsPrinted) => "pca-cyclic",
            Formula::PcaCyclic(CyclicVariant::WithT) => "pca-cyclic-with-t",
            Formula::Concat => "concat",
            Formula::ReferenceUpper => "ref-upper",
            Formula::ReferenceLower => "ref-lower",
        }
    }

    pub fn evaluate<F: Real>(self, params: &PcaParams<F>) -> Result<BoundResult<F>> {
        match self {
            Formula::Union => bound_pca_union(params),
            Formula::Lll => bound_pca_lll(params),
            Formula::Apca => bound_apca(params),
            Formula::ApcaMarkov => bound_apca_markov(params),
            Formula::ApcaCyclic => bound_apca_cyclic(params),
            Formula::ApcaFrobenius => bound_apca_frobenius(params),
            Formula::PcaCyclic(variant) => bound_pca_cyclic(params, variant),
            Formula::Concat => bound_concat(params).map(|plan| plan.total),
            Formula::ReferenceUpper | Formula::ReferenceLower => {
                let (upper, lower) = bound_can_reference::<F>(params.t, params.k, params.v);
                let (real_bound, source) = if self == Formula::ReferenceUpper {
                    (upper, "ref-upper")
                } else {
                    (lower, "ref-lower")
                };
                Ok(BoundResult {
                    real_bound,
                    n_rows: min_integer_above(real_bound, false),
                    source,
                })
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Formula {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "union" | "eq5" => Formula::Union,
            "lll" | "eq6" => Formula::Lll,
            "apca" => Formula::Apca,
            "apca-markov" => Formula::ApcaMarkov,
            "apca-cyclic" => Formula::ApcaCyclic,
            "apca-frobenius" => Formula::ApcaFrobenius,
            "pca-cyclic" | "eq8" => Formula::PcaCyclic(CyclicVariant::AsPrinted),
            "pca-cyclic-with-t" => Formula::PcaCyclic(CyclicVariant::WithT),
            "concat" => Formula::Concat,
            "ref-upper" => Formula::ReferenceUpper,
            "ref-lower" => Formula::ReferenceLower,
            _ => return Err(format!("unknown formula {s:?}")),
        })
    }
}

/// `ln(v^t / (m−1))` written as `−ln(1 − r/v^t)` to keep precision when
/// `m−1` is close to `v^t`.
fn ln_shrink<F: Real>(full: u64, missing: u64) -> F {
    -(-(F::from_count(missing) / F::from_count(full))).ln_1p()
}

/// Union bound over all t-sets: least N with
/// `C(k,t) C(v^t, r) ((m−1)/v^t)^N < 1`.
pub fn bound_pca_union<F: Real>(params: &PcaParams<F>) -> Result<BoundResult<F>> {
    const SOURCE: &str = "union";
    if params.m == 1 {
        return Ok(BoundResult::degenerate(SOURCE));
    }
    let full = params.full();
    let num = log_binomial::<F>(params.k as u64, params.t as u64)?
        + log_binomial::<F>(full, params.m - 1)?;
    let x = num / ln_shrink::<F>(full, params.r());
    Ok(BoundResult {
        real_bound: x,
        n_rows: min_integer_above(x, true),
        source: SOURCE,
    })
}

/// Local lemma bound (needs `k ≥ 2t`): least N with
/// `e C(v^t, r) ((m−1)/v^t)^N t C(k, t−1) ≤ 1`.
pub fn bound_pca_lll<F: Real>(params: &PcaParams<F>) -> Result<BoundResult<F>> {
    const SOURCE: &str = "lll";
    if params.k < 2 * params.t {
        return Err(Error::KTooSmallForLll {
            k: params.k,
            t: params.t,
        });
    }
    if params.m == 1 {
        return Ok(BoundResult::degenerate(SOURCE));
    }
    let full = params.full();
    let num = F::one()
        + F::from_count(params.t as u64).ln()
        + log_binomial::<F>(params.k as u64, params.t as u64 - 1)?
        + log_binomial::<F>(full, params.m - 1)?;
    let x = num / ln_shrink::<F>(full, params.r());
    Ok(BoundResult {
        real_bound: x,
        n_rows: min_integer_above(x, false),
        source: SOURCE,
    })
}

/// Asymptotic form of the local lemma bound,
/// `(v^t (t−1) ln k / r) (1 − ln r / ln k)`, with `k` real. Informational.
pub fn pca_asymptotic<F: Real>(t: usize, v: u64, k: F, r: u64) -> Result<F> {
    let full = F::from_count(full_count(v, t)?);
    let ln_k = k.ln();
    if !(ln_k > F::zero()) {
        return Err(Error::Domain(format!("ln k = {ln_k} is not positive")));
    }
    if r == 0 || !(k > F::from_count(r)) {
        return Err(Error::Domain(format!("need 1 <= r < k, got r = {r}, k = {k}")));
    }
    let r = F::from_count(r);
    let t1 = F::from_count(t as u64 - 1);
    Ok(full * t1 * ln_k / r * (F::one() - r.ln() / ln_k))
}

/// [`pca_asymptotic`] at the parameters' `k` and `r = v^t − m + 1`.
pub fn bound_pca_asymptotic<F: Real>(params: &PcaParams<F>) -> Result<F> {
    pca_asymptotic(params.t, params.v, F::from_count(params.k as u64), params.r())
}

fn apca_at<F: Real>(params: &PcaParams<F>, target: F, source: &'static str) -> Result<BoundResult<F>> {
    if !(params.epsilon > F::zero()) {
        return Err(Error::EpsilonZero);
    }
    if params.m == 1 {
        return Ok(BoundResult::degenerate(source));
    }
    let full = params.full();
    let num = log_binomial::<F>(full, params.m - 1)? - target.ln();
    let x = num / ln_shrink::<F>(full, params.r());
    Ok(BoundResult {
        real_bound: x,
        n_rows: min_integer_above(x, false),
        source,
    })
}

/// ε-almost bound: least N with `C(v^t, r) ((m−1)/v^t)^N ≤ ε`.
pub fn bound_apca<F: Real>(params: &PcaParams<F>) -> Result<BoundResult<F>> {
    apca_at(params, params.epsilon, "apca")
}

/// The randomized builder's row count: as [`bound_apca`] with target `ε/2`.
pub fn bound_apca_markov<F: Real>(params: &PcaParams<F>) -> Result<BoundResult<F>> {
    apca_at(params, params.epsilon / F::lit(2.0), "apca-markov")
}

fn require_full<F: Real>(params: &PcaParams<F>) -> Result<()> {
    if !params.is_full() {
        return Err(Error::MNotFull {
            m: params.m,
            full: params.full(),
        });
    }
    Ok(())
}

/// Least n with `(orbits) (1 − p)^n ≤ target`, where `p` is the chance a
/// random row hits a given orbit.
fn orbit_rows<F: Real>(orbits: u64, p: F, target: F) -> u64 {
    let num = (F::from_count(orbits) / target).ln();
    if !(num > F::zero()) {
        return 0;
    }
    min_integer_above(num / -(-p).ln_1p(), false)
}

/// Base rows for cyclic development: least n with
/// `v^{t−1} (1 − 1/v^{t−1})^n ≤ target`.
pub fn cyclic_base_rows<F: Real>(t: usize, v: u64, target: F) -> Result<u64> {
    let a = full_count(v, t - 1)?;
    Ok(orbit_rows(a, F::one() / F::from_count(a), target))
}

/// Base rows for Frobenius development: least n with
/// `((v^{t−1}−1)/(v−1)) (1 − (v−1)/v^{t−1})^n ≤ target`.
pub fn frobenius_base_rows<F: Real>(t: usize, v: u64, target: F) -> Result<u64> {
    let a = full_count(v, t - 1)?;
    let full_orbits = (a - 1) / (v - 1);
    Ok(orbit_rows(
        full_orbits,
        F::from_count(v - 1) / F::from_count(a),
        target,
    ))
}

/// Cyclic development, `m = v^t`. `real_bound = v^t ln(v^{t−1}/ε)`;
/// `n_rows = v n` from the exact union-bound inequality.
pub fn bound_apca_cyclic<F: Real>(params: &PcaParams<F>) -> Result<BoundResult<F>> {
    if !(params.epsilon > F::zero()) {
        return Err(Error::EpsilonZero);
    }
    require_full(params)?;
    let (t, v) = (params.t, params.v);
    let a = F::from_count(full_count(v, t - 1)?);
    let n = cyclic_base_rows(t, v, params.epsilon)?;
    Ok(BoundResult {
        real_bound: F::from_count(params.full()) * (a / params.epsilon).ln(),
        n_rows: v * n,
        source: "apca-cyclic",
    })
}

/// Frobenius development, `m = v^t`, `v` a prime power.
/// `real_bound = v^t ln(2 v^{t−2}/ε) + v`; `n_rows = v(v−1) n + v`.
pub fn bound_apca_frobenius<F: Real>(params: &PcaParams<F>) -> Result<BoundResult<F>> {
    let (t, v) = (params.t, params.v);
    if !is_prime_power(v) {
        return Err(Error::NotPrimePower(v));
    }
    if !(params.epsilon > F::zero()) {
        return Err(Error::EpsilonZero);
    }
    require_full(params)?;
    let n = frobenius_base_rows(t, v, params.epsilon)?;
    let two_vt2 = F::lit(2.0) * F::from_count(full_count(v, t - 2)?);
    Ok(BoundResult {
        real_bound: F::from_count(params.full()) * (two_vt2 / params.epsilon).ln()
            + F::from_count(v),
        n_rows: v * (v - 1) * n + v,
        source: "apca-frobenius",
    })
}

/// Number of orbits allowed to be missed, `s = ⌈(v^t − m + 1)/v⌉`.
pub fn cyclic_missing_orbits(full: u64, m: u64, v: u64) -> u64 {
    (full - m) / v + 1
}

/// PCA via cyclic development of a local-lemma base array:
/// `v (1 + ln{C(k,t−1) C(v^{t−1}, s)}) / ln(v^{t−1}/(v^{t−1}−s))`, optionally
/// with `t` inside the logarithm. `n_rows = v ⌈·⌉` of the base count.
pub fn bound_pca_cyclic<F: Real>(
    params: &PcaParams<F>,
    variant: CyclicVariant,
) -> Result<BoundResult<F>> {
    let (t, v) = (params.t, params.v);
    let a = full_count(v, t - 1)?;
    let s = cyclic_missing_orbits(params.full(), params.m, v);
    if s < 1 || s >= a {
        return Err(Error::SOutOfRange { s, max: a });
    }
    let mut inner =
        log_binomial::<F>(params.k as u64, t as u64 - 1)? + log_binomial::<F>(a, s)?;
    let source = match variant {
        CyclicVariant::AsPrinted => "pca-cyclic",
        CyclicVariant::WithT => {
            inner = inner + F::from_count(t as u64).ln();
            "pca-cyclic-with-t"
        }
    };
    let base = (F::one() + inner) / ln_shrink::<F>(a, s);
    Ok(BoundResult {
        real_bound: F::from_count(v) * base,
        n_rows: v * min_integer_above(base, false),
        source,
    })
}

/// `r = ln k / ln(v / ε^{1/(t−1)})` from the concatenation construction.
pub fn concat_r<F: Real>(t: usize, k: usize, v: u64, epsilon: F) -> Result<F> {
    let denom = F::from_count(v).ln() - epsilon.ln() / F::from_count(t as u64 - 1);
    if !(denom > F::zero()) {
        return Err(Error::RNonPositive(denom.as_f64()));
    }
    let r = F::from_count(k as u64).ln() / denom;
    if !(r > F::zero()) {
        return Err(Error::RNonPositive(r.as_f64()));
    }
    Ok(r)
}

/// The two components of a concatenated (PCA over APCA) array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcatPlan<F = f64> {
    /// Real `r` before rounding.
    pub r_real: F,
    /// Integer `r ≥ 1` actually used.
    pub r: u64,
    /// Coverage demanded of the local-lemma component, `v^t − r + 1`.
    pub pca_m: u64,
    pub pca: BoundResult<F>,
    pub apca: BoundResult<F>,
    pub total: BoundResult<F>,
}

/// Rows for a partial m-covering array stacked over an ε-almost covering
/// array. Requires `m ≤ v^t + 1 − r`.
pub fn bound_concat<F: Real>(params: &PcaParams<F>) -> Result<ConcatPlan<F>> {
    let (t, k, v) = (params.t, params.k, params.v);
    let r_real = concat_r(t, k, v, params.epsilon)?;
    let full = params.full();
    let limit = F::from_count(full) + F::one() - r_real;
    let m = F::from_count(params.m);
    if m > limit + F::lit(SNAP_TOL) * limit.abs().max(F::one()) {
        return Err(Error::MConditionViolated {
            m: params.m,
            limit: limit.as_f64(),
        });
    }
    let r = snapped_floor(r_real).max(1);
    let pca_m = if r >= full { 1 } else { full - r + 1 };
    let pca = bound_pca_lll(&params.with_m(pca_m)?)?;
    let apca = bound_apca_cyclic(&params.with_m(full)?)?;
    Ok(ConcatPlan {
        r_real,
        r,
        pca_m,
        pca,
        apca,
        total: BoundResult {
            real_bound: pca.real_bound + apca.real_bound,
            n_rows: pca.n_rows + apca.n_rows,
            source: "concat",
        },
    })
}

/// Reference covering-array bounds `((t−1) v^t log₂ k, v^{t−1} log₂ k)` with
/// the lower-order terms dropped.
pub fn bound_can_reference<F: Real>(t: usize, k: usize, v: u64) -> (F, F) {
    let log_k = F::from_count(k as u64).log2();
    let vf = F::from_count(v);
    let vt1 = vf.powi(t as i32 - 1);
    (F::from_count(t as u64 - 1) * vt1 * vf * log_k, vt1 * log_k)
}

#[cfg(test)]
mod tests;
