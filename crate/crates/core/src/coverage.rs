//! Exhaustive coverage verification over all column t-sets.
//!
//! Each t-set is scanned with a `v^t`-bit presence set that is reused (and
//! cleared lazily) between t-sets, so memory stays `O(v^t)` per worker.
//! Results are always keyed by lexicographic t-set position.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::array::{Array, Symbol};
use crate::error::{Error, Result};
use crate::galois::OrbitStructure;
use crate::params::full_count;
use crate::scalar::{snapped_ceil, snapped_floor, Real};
use crate::tsets::{binomial, next_tset, TSets};

/// Largest `v^t` accepted for presence sets.
const MAX_TUPLES: u64 = 1 << 26;
/// Budget `C(k,t)·N·v^t` for the naive oracle.
const ORACLE_BUDGET: u128 = 100_000_000;
/// t-sets handed to the thread pool at a time.
const CHUNK: usize = 2048;

/// Distinct-tuple counts for every column t-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageProfile {
    pub t: usize,
    pub k: usize,
    pub v: u64,
    /// One count per t-set, lexicographic t-set order.
    pub counts: Vec<u64>,
    /// `u64::MAX` when there are no t-sets.
    pub min_count: u64,
}

/// A t-set covering too few tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub tset: Vec<usize>,
    /// Distinct tuples present.
    pub count: u64,
    /// Tuples of `[v]^t` absent, `v^t − count`.
    pub missing: u64,
}

impl CoverageProfile {
    pub fn tsets(&self) -> impl Iterator<Item = (Vec<usize>, u64)> + '_ {
        TSets::new(self.k, self.t).zip(self.counts.iter().copied())
    }

    /// t-sets with fewer than `m` distinct tuples, in lexicographic order.
    pub fn defective(&self, m: u64) -> Vec<Defect> {
        let full = self.v.pow(self.t as u32);
        self.tsets()
            .filter(|&(_, c)| c < m)
            .map(|(tset, count)| Defect {
                tset,
                count,
                missing: full - count,
            })
            .collect()
    }

    pub fn defective_count(&self, m: u64) -> usize {
        self.counts.iter().filter(|&&c| c < m).count()
    }
}

/// Reusable presence set over `[v]^t`.
pub(crate) struct Scanner {
    v: u64,
    bits: Vec<u64>,
    touched: Vec<usize>,
}

impl Scanner {
    pub(crate) fn new(v: u64, t: usize) -> Result<Self> {
        let full = full_count(v, t)?;
        if full > MAX_TUPLES {
            return Err(Error::CapacityExceeded(format!("{v}^{t} tuples per t-set")));
        }
        Ok(Scanner {
            v,
            bits: vec![0; full.div_ceil(64) as usize],
            touched: Vec::new(),
        })
    }

    fn clear(&mut self) {
        for w in self.touched.drain(..) {
            self.bits[w] = 0;
        }
    }

    #[inline]
    fn rank(&self, row: &[Symbol], cols: &[usize]) -> u64 {
        cols.iter()
            .fold(0u64, |acc, &c| acc * self.v + u64::from(row[c]))
    }

    /// Inserts a rank; returns whether it was new.
    #[inline]
    fn insert(&mut self, r: u64) -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let word = &mut self.bits[w];
        if *word == 0 {
            self.touched.push(w);
        }
        let fresh = *word & (1 << b) == 0;
        *word |= 1 << b;
        fresh
    }

    /// Distinct tuples of `a` on `cols`, stopping early once `stop_at` is
    /// reached.
    pub(crate) fn distinct(&mut self, a: &Array, cols: &[usize], stop_at: u64) -> u64 {
        self.clear();
        let mut count = 0;
        for row in a.iter_rows() {
            if self.insert(self.rank(row, cols)) {
                count += 1;
                if count >= stop_at {
                    break;
                }
            }
        }
        count
    }

    /// Marks every tuple of `a` on `cols`; query with [`Scanner::present`].
    fn mark(&mut self, a: &Array, cols: &[usize]) {
        self.clear();
        for row in a.iter_rows() {
            self.insert(self.rank(row, cols));
        }
    }

    fn present_ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.touched.iter().flat_map(move |&w| {
            let word = self.bits[w];
            (0..64).filter(move |b| word & (1 << b) != 0).map(move |b| w as u64 * 64 + b)
        })
    }
}

fn check_strength(a: &Array, t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::StrengthTooSmall { t });
    }
    if t > a.cols() {
        return Err(Error::StrengthExceedsColumns { t, k: a.cols() });
    }
    Ok(())
}

/// Runs `f` over every t-set in parallel chunks, results in lexicographic
/// order.
fn map_tsets<T, S, I, G>(k: usize, t: usize, init: I, f: G) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    G: Fn(&mut S, &[usize]) -> T + Sync + Send,
{
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..t).collect();
    let mut more = t <= k;
    let mut chunk = Vec::with_capacity(CHUNK * t);
    while more {
        chunk.clear();
        while more && chunk.len() < CHUNK * t {
            chunk.extend_from_slice(&cur);
            more = next_tset(&mut cur, k);
        }
        out.par_extend(chunk.par_chunks(t).map_init(&init, |s, cols| f(s, cols)));
    }
    out
}

/// Distinct-tuple count of every column t-set of `a`.
pub fn coverage_profile(a: &Array, t: usize) -> Result<CoverageProfile> {
    check_strength(a, t)?;
    Scanner::new(a.v(), t)?;
    let v = a.v();
    let counts = map_tsets(
        a.cols(),
        t,
        || Scanner::new(v, t).expect("checked"),
        |s, cols| s.distinct(a, cols, u64::MAX),
    );
    Ok(profile_from_counts(t, a.cols(), v, counts))
}

fn profile_from_counts(t: usize, k: usize, v: u64, counts: Vec<u64>) -> CoverageProfile {
    let min_count = counts.iter().copied().min().unwrap_or(u64::MAX);
    CoverageProfile {
        t,
        k,
        v,
        counts,
        min_count,
    }
}

/// Reference implementation of [`coverage_profile`] that projects every
/// t-set and counts distinct rows in a hash set. For small instances only.
pub fn naive_oracle(a: &Array, t: usize) -> Result<CoverageProfile> {
    check_strength(a, t)?;
    let k = a.cols();
    let full = full_count(a.v(), t)?;
    let tsets = binomial(k as u64, t as u64).unwrap_or(u64::MAX);
    let work = u128::from(tsets) * a.rows() as u128 * u128::from(full);
    if k >= 64 || work > ORACLE_BUDGET {
        return Err(Error::CapacityExceeded(format!(
            "naive oracle on {}x{k}, t={t}",
            a.rows()
        )));
    }
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << k)
        .filter(|mask| mask.count_ones() as usize == t)
        .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort();
    let mut counts = Vec::with_capacity(subsets.len());
    for cols in &subsets {
        let proj = a.project(cols)?;
        let seen: HashSet<&[Symbol]> = proj.iter_rows().collect();
        counts.push(if a.rows() == 0 { 0 } else { seen.len() as u64 });
    }
    Ok(profile_from_counts(t, k, a.v(), counts))
}

/// Lexicographically first t-set with fewer than `m` distinct tuples.
pub fn first_defect(a: &Array, t: usize, m: u64) -> Result<Option<Defect>> {
    check_strength(a, t)?;
    let mut scanner = Scanner::new(a.v(), t)?;
    let full = full_count(a.v(), t)?;
    let k = a.cols();
    let mut cur: Vec<usize> = (0..t).collect();
    loop {
        let count = scanner.distinct(a, &cur, m);
        if count < m {
            return Ok(Some(Defect {
                tset: cur,
                count,
                missing: full - count,
            }));
        }
        if !next_tset(&mut cur, k) {
            return Ok(None);
        }
    }
}

/// Number of t-sets with fewer than `m` tuples, scanning in lexicographic
/// order and stopping as soon as the count exceeds `limit`.
pub fn count_defects(a: &Array, t: usize, m: u64, limit: Option<u64>) -> Result<u64> {
    check_strength(a, t)?;
    let mut scanner = Scanner::new(a.v(), t)?;
    let limit = limit.unwrap_or(u64::MAX);
    let mut cur: Vec<usize> = (0..t).collect();
    let mut defects = 0;
    loop {
        if scanner.distinct(a, &cur, m) < m {
            defects += 1;
            if defects > limit {
                return Ok(defects);
            }
        }
        if !next_tset(&mut cur, a.cols()) {
            return Ok(defects);
        }
    }
}

/// Outcome of a partial-covering check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcaVerdict {
    pub holds: bool,
    /// First defective t-set when `holds` is false.
    pub witness: Option<Defect>,
}

/// Whether every t-set of `a` covers at least `m` distinct tuples.
pub fn is_pca(a: &Array, t: usize, m: u64) -> Result<PcaVerdict> {
    let witness = first_defect(a, t, m)?;
    Ok(PcaVerdict {
        holds: witness.is_none(),
        witness,
    })
}

/// Outcome of an ε-almost check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApcaVerdict {
    pub holds: bool,
    /// `⌊ε·C(k,t)⌋`.
    pub allowed: u64,
    pub defects: Vec<Defect>,
}

/// `⌊ε · tsets⌋`, tolerant of products that are integers in exact arithmetic.
pub fn defect_allowance<F: Real>(epsilon: F, tsets: u64) -> u64 {
    snapped_floor(epsilon * F::from_count(tsets))
}

/// Whether at most `⌊ε·C(k,t)⌋` t-sets cover fewer than `m` tuples.
pub fn is_apca<F: Real>(a: &Array, t: usize, m: u64, epsilon: F) -> Result<ApcaVerdict> {
    if !(epsilon >= F::zero() && epsilon <= F::one()) {
        return Err(Error::EpsilonOutOfRange(epsilon.as_f64()));
    }
    let profile = coverage_profile(a, t)?;
    let allowed = defect_allowance(epsilon, profile.counts.len() as u64);
    let defects = profile.defective(m);
    Ok(ApcaVerdict {
        holds: defects.len() as u64 <= allowed,
        allowed,
        defects,
    })
}

/// Fraction of t-sets covering at least `⌈q·v^t⌉` tuples.
pub fn completeness<F: Real>(a: &Array, q: F, t: usize) -> Result<F> {
    let profile = coverage_profile(a, t)?;
    Ok(completeness_of(&profile, q))
}

/// [`completeness`] from an existing profile.
pub fn completeness_of<F: Real>(profile: &CoverageProfile, q: F) -> F {
    let q = q.max(F::zero()).min(F::one());
    let full = profile.v.pow(profile.t as u32);
    let threshold = snapped_ceil(q * F::from_count(full));
    if profile.counts.is_empty() {
        return F::one();
    }
    let good = profile.counts.iter().filter(|&&c| c >= threshold).count();
    F::from_count(good as u64) / F::from_count(profile.counts.len() as u64)
}

/// Per-t-set orbit coverage of a base array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCoverage {
    /// Orbits with at least one member present.
    pub covered: Vec<u64>,
    /// Covered orbits other than the short orbit.
    pub covered_full: Vec<u64>,
    /// Total length of the covered orbits: the distinct-tuple count of the
    /// developed array on that t-set.
    pub covered_length: Vec<u64>,
}

impl OrbitCoverage {
    /// t-sets where fewer than `needed` non-short orbits are covered.
    pub fn short_of_full(&self, needed: u64) -> u64 {
        self.covered_full.iter().filter(|&&c| c < needed).count() as u64
    }
}

pub fn orbit_coverage(a: &Array, t: usize, structure: &OrbitStructure) -> Result<OrbitCoverage> {
    check_strength(a, t)?;
    if structure.t != t || structure.v != a.v() {
        return Err(Error::DimensionMismatch(format!(
            "orbit structure for t={}, v={} applied to t={t}, v={}",
            structure.t,
            structure.v,
            a.v()
        )));
    }
    let v = a.v();
    let orbit_count = structure.len();
    let per_tset = map_tsets(
        a.cols(),
        t,
        || {
            (
                Scanner::new(v, t).expect("orbit structure bounds v^t"),
                vec![false; orbit_count],
            )
        },
        |(scanner, hit), cols| {
            scanner.mark(a, cols);
            hit.iter_mut().for_each(|h| *h = false);
            let (mut covered, mut full, mut length) = (0, 0, 0);
            for r in scanner.present_ranks() {
                let id = structure.orbit_index[r as usize] as usize;
                if !hit[id] {
                    hit[id] = true;
                    covered += 1;
                    length += structure.lengths[id];
                    if structure.short_orbit != Some(id) {
                        full += 1;
                    }
                }
            }
            (covered, full, length)
        },
    );
    let mut out = OrbitCoverage {
        covered: Vec::with_capacity(per_tset.len()),
        covered_full: Vec::with_capacity(per_tset.len()),
        covered_length: Vec::with_capacity(per_tset.len()),
    };
    for (c, f, l) in per_tset {
        out.covered.push(c);
        out.covered_full.push(f);
        out.covered_length.push(l);
    }
    Ok(out)
}
