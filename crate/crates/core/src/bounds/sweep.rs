//! Tables of bound values along one parameter axis.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{BoundResult, CyclicVariant, Formula};
use crate::error::{Error, Result};
use crate::params::PcaParams;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    M,
    K,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::M => "m",
            Axis::K => "k",
        })
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "m" => Ok(Axis::M),
            "k" => Ok(Axis::K),
            _ => Err(format!("unknown axis {s:?} (expected m or k)")),
        }
    }
}

/// A formula's value at one point, or the reason it is undefined there.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<F = f64> {
    Feasible(BoundResult<F>),
    Gap(String),
}

impl<F> Outcome<F> {
    pub fn feasible(&self) -> Option<&BoundResult<F>> {
        match self {
            Outcome::Feasible(b) => Some(b),
            Outcome::Gap(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<F = f64> {
    pub value: u64,
    pub results: Vec<(Formula, Outcome<F>)>,
}

impl<F> SweepPoint<F> {
    pub fn get(&self, formula: Formula) -> Option<&Outcome<F>> {
        self.results
            .iter()
            .find(|(f, _)| *f == formula)
            .map(|(_, o)| o)
    }
}

/// Bound values for a fixed formula set at increasing axis values.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSweep<F = f64> {
    pub axis: Axis,
    pub formulas: Vec<Formula>,
    pub points: Vec<SweepPoint<F>>,
}

/// Evaluates `formulas` at every value of `axis` in `values`, the other
/// parameters taken from `base`. Points where a formula's preconditions fail
/// carry an [`Outcome::Gap`].
pub fn sweep<F: Real>(
    formulas: &[Formula],
    axis: Axis,
    values: &[u64],
    base: &PcaParams<F>,
) -> Result<BoundSweep<F>> {
    if values.is_empty() || formulas.is_empty() {
        return Err(Error::EmptyRange);
    }
    let mut values = values.to_vec();
    values.sort_unstable();
    values.dedup();
    let points = values
        .par_iter()
        .map(|&value| {
            let params = match axis {
                Axis::M => base.with_m(value),
                Axis::K => base.with_k(value as usize),
            };
            let results = formulas
                .iter()
                .map(|&f| {
                    let outcome = match params.as_ref() {
                        Ok(p) => match f.evaluate(p) {
                            Ok(b) => Outcome::Feasible(b),
                            Err(e) => Outcome::Gap(e.to_string()),
                        },
                        Err(e) => Outcome::Gap(e.to_string()),
                    };
                    (f, outcome)
                })
                .collect();
            SweepPoint { value, results }
        })
        .collect();
    Ok(BoundSweep {
        axis,
        formulas: formulas.to_vec(),
        points,
    })
}

/// Local-lemma vs cyclic-development bounds for `t=6, k=20, v=4` over
/// `v^t − 6v + 1 ≤ m ≤ v^t`.
pub fn figure_1a(variant: CyclicVariant) -> BoundSweep<f64> {
    let base = PcaParams::new(6, 20, 4, 4096, 0.0, 0).expect("valid preset");
    let values: Vec<u64> = (4096 - 6 * 4 + 1..=4096).collect();
    sweep(
        &[Formula::Lll, Formula::PcaCyclic(variant)],
        Axis::M,
        &values,
        &base,
    )
    .expect("non-empty preset")
}

/// The same comparison for `t=6, v=4, m=4092` over `k = 12, 16, …, 60`.
pub fn figure_1b(variant: CyclicVariant) -> BoundSweep<f64> {
    let base = PcaParams::new(6, 20, 4, 4092, 0.0, 0).expect("valid preset");
    let values: Vec<u64> = (12..=60).step_by(4).collect();
    sweep(
        &[Formula::Lll, Formula::PcaCyclic(variant)],
        Axis::K,
        &values,
        &base,
    )
    .expect("non-empty preset")
}
