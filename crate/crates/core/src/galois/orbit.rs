use crate::array::Symbol;
use crate::error::{Error, Result};
use crate::params::full_count;
use crate::tuple::unrank_into;

use super::action::{ActionKind, GroupAction};

/// Largest `v^t` whose orbit partition is materialized.
const MAX_TUPLES: u64 = 1 << 24;

/// Partition of `[v]^t` into orbits of a group action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStructure {
    pub t: usize,
    pub v: u64,
    /// Orbit id of every tuple rank.
    pub orbit_index: Vec<u32>,
    /// Minimum tuple rank in each orbit; orbit ids follow this order.
    pub representatives: Vec<u64>,
    pub lengths: Vec<u64>,
    /// Orbit of the constant tuples under the Frobenius action.
    pub short_orbit: Option<usize>,
}

impl OrbitStructure {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Orbits other than the short one.
    pub fn full_orbit_count(&self) -> usize {
        self.len() - usize::from(self.short_orbit.is_some())
    }
}

pub fn orbits(t: usize, v: u64, action: &GroupAction) -> Result<OrbitStructure> {
    if action.v() != v {
        return Err(Error::DimensionMismatch(format!(
            "group on v={} used for tuples over v={v}",
            action.v()
        )));
    }
    let total = full_count(v, t)?;
    if total > MAX_TUPLES {
        return Err(Error::CapacityExceeded(format!("{v}^{t} tuples")));
    }
    const UNSET: u32 = u32::MAX;
    let mut orbit_index = vec![UNSET; total as usize];
    let mut representatives = Vec::new();
    let mut lengths = Vec::new();
    let mut x = vec![0 as Symbol; t];
    let mut y = vec![0 as Symbol; t];
    for rank in 0..total {
        if orbit_index[rank as usize] != UNSET {
            continue;
        }
        let id = representatives.len() as u32;
        representatives.push(rank);
        unrank_into(rank, v, &mut x);
        let mut len = 0u64;
        for g in 0..action.len() {
            action.act_into(g, &x, &mut y);
            let r = y.iter().fold(0u64, |acc, &s| acc * v + u64::from(s)) as usize;
            if orbit_index[r] == UNSET {
                orbit_index[r] = id;
                len += 1;
            }
        }
        lengths.push(len);
    }
    let short_orbit = (action.kind() == ActionKind::Frobenius).then_some(0);
    Ok(OrbitStructure {
        t,
        v,
        orbit_index,
        representatives,
        lengths,
        short_orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuple::{tuple_rank, tuple_unrank};

    #[test]
    fn cyclic_binary_pairs() {
        let s = orbits(2, 2, &GroupAction::cyclic(2).unwrap()).unwrap();
        assert_eq!(s.representatives, vec![0, 1]);
        assert_eq!(s.lengths, vec![2, 2]);
        // {(0,0),(1,1)} and {(0,1),(1,0)}
        assert_eq!(s.orbit_index, vec![0, 1, 1, 0]);
        assert_eq!(s.short_orbit, None);
    }

    #[test]
    fn frobenius_ternary_pairs() {
        let s = orbits(2, 3, &GroupAction::frobenius(3).unwrap()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.short_orbit, Some(0));
        assert_eq!(s.lengths, vec![3, 6]);
        for x in 0..3 {
            let r = tuple_rank(&[x, x], 3).unwrap();
            assert_eq!(s.orbit_index[r as usize], 0);
        }
    }

    #[test]
    fn cyclic_single_coordinate_is_transitive() {
        let s = orbits(1, 5, &GroupAction::cyclic(5).unwrap()).unwrap();
        assert_eq!(s.lengths, vec![5]);
    }

    #[test]
    fn orbits_are_closed() {
        for action in [
            GroupAction::cyclic(4).unwrap(),
            GroupAction::frobenius(4).unwrap(),
            GroupAction::frobenius(5).unwrap(),
            GroupAction::cyclic(3).unwrap(),
        ] {
            let v = action.v();
            let t = if v <= 4 { 6 } else { 5 };
            let s = orbits(t, v, &action).unwrap();
            assert_eq!(s.lengths.iter().sum::<u64>(), v.pow(t as u32));
            for (rank, &id) in s.orbit_index.iter().enumerate() {
                let x: Vec<Symbol> = tuple_unrank(rank as u64, t, v)
                    .unwrap()
                    .into_iter()
                    .map(|s| s as Symbol)
                    .collect();
                for g in 0..action.len() {
                    let y: Vec<u64> = action.act(g, &x).into_iter().map(u64::from).collect();
                    let r = tuple_rank(&y, v).unwrap() as usize;
                    assert_eq!(s.orbit_index[r], id);
                }
                assert!(s.representatives[id as usize] <= rank as u64);
            }
        }
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(
            orbits(13, 4, &GroupAction::cyclic(4).unwrap()),
            Err(Error::CapacityExceeded(_))
        ));
    }
}
