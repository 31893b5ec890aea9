use crate::array::{Array, Symbol};
use crate::error::{Error, Result};

use super::field::{field_make, Field};

/// One permutation of the symbol set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupElement {
    /// `x ↦ x + c (mod v)`.
    Shift(u64),
    /// `x ↦ a·x + b` in GF(v), `a ≠ 0`.
    Affine { a: u64, b: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Cyclic,
    Frobenius,
}

/// A permutation group acting on `0..v`, applied to tuples coordinatewise.
///
/// Elements are listed in a fixed order (identity first) which determines the
/// row order of [`develop`].
#[derive(Debug, Clone)]
pub struct GroupAction {
    kind: ActionKind,
    v: u64,
    elements: Vec<GroupElement>,
    perms: Vec<Vec<Symbol>>,
}

impl GroupAction {
    /// The cyclic group of order `v` acting by addition mod `v`; exists for
    /// every `v ≥ 2`.
    pub fn cyclic(v: u64) -> Result<Self> {
        if v < 2 {
            return Err(Error::AlphabetTooSmall { v });
        }
        let elements: Vec<_> = (0..v).map(GroupElement::Shift).collect();
        let perms = (0..v)
            .map(|c| (0..v).map(|x| ((x + c) % v) as Symbol).collect())
            .collect();
        Ok(GroupAction {
            kind: ActionKind::Cyclic,
            v,
            elements,
            perms,
        })
    }

    /// The affine group `{x ↦ ax + b : a ≠ 0}` of GF(v); `v` must be a prime
    /// power no larger than 64. Elements run over `a = 1, 2, …` then `b`.
    pub fn frobenius(v: u64) -> Result<Self> {
        let field = field_make(v)?;
        Ok(Self::frobenius_over(&field))
    }

    pub fn frobenius_over(field: &Field) -> Self {
        let v = field.order();
        let mut elements = Vec::with_capacity((v * (v - 1)) as usize);
        let mut perms = Vec::with_capacity(elements.capacity());
        for a in 1..v {
            for b in 0..v {
                elements.push(GroupElement::Affine { a, b });
                perms.push(
                    (0..v)
                        .map(|x| field.add(field.mul(a, x), b) as Symbol)
                        .collect(),
                );
            }
        }
        GroupAction {
            kind: ActionKind::Frobenius,
            v,
            elements,
            perms,
        }
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    /// Group order.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// The permutation of `0..v` induced by element `g`.
    pub fn permutation(&self, g: usize) -> &[Symbol] {
        &self.perms[g]
    }

    /// Applies element `g` to each coordinate of `x`.
    pub fn act(&self, g: usize, x: &[Symbol]) -> Vec<Symbol> {
        let perm = &self.perms[g];
        x.iter().map(|&s| perm[s as usize]).collect()
    }

    pub(crate) fn act_into(&self, g: usize, x: &[Symbol], out: &mut [Symbol]) {
        let perm = &self.perms[g];
        for (o, &s) in out.iter_mut().zip(x) {
            *o = perm[s as usize];
        }
    }
}

/// Replaces each row of `base` by its images under every group element, in
/// row-major then element order: `N·|G|` rows.
pub fn develop(base: &Array, action: &GroupAction) -> Result<Array> {
    if base.v() != action.v() {
        return Err(Error::DimensionMismatch(format!(
            "array over v={} developed by a group on v={}",
            base.v(),
            action.v()
        )));
    }
    let rows = base
        .rows()
        .checked_mul(action.len())
        .filter(|&n| n.saturating_mul(base.cols()) <= 1 << 28)
        .ok_or_else(|| Error::CapacityExceeded(format!("{} developed rows", base.rows())))?;
    let k = base.cols();
    let mut cells = vec![0 as Symbol; rows * k];
    let mut out = cells.chunks_mut(k.max(1));
    for row in base.iter_rows() {
        for g in 0..action.len() {
            if let Some(dst) = out.next() {
                action.act_into(g, row, dst);
            }
        }
    }
    Array::from_cells(rows, k, base.v(), cells)
}

/// `v` rows, row `i` constant `i`.
pub fn constant_rows(k: usize, v: u64) -> Result<Array> {
    let cells = (0..v).flat_map(|i| std::iter::repeat_n(i as Symbol, k)).collect();
    Array::from_cells(v as usize, k, v, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(GroupAction::cyclic(5).unwrap().len(), 5);
        assert_eq!(GroupAction::frobenius(4).unwrap().len(), 12);
        assert!(matches!(GroupAction::frobenius(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn elements_are_permutations() {
        for action in [
            GroupAction::cyclic(6).unwrap(),
            GroupAction::frobenius(8).unwrap(),
            GroupAction::frobenius(9).unwrap(),
        ] {
            for g in 0..action.len() {
                let mut seen = action.permutation(g).to_vec();
                seen.sort_unstable();
                let id: Vec<Symbol> = (0..action.v() as Symbol).collect();
                assert_eq!(seen, id);
            }
        }
    }

    #[test]
    fn act_examples() {
        let c = GroupAction::cyclic(2).unwrap();
        assert_eq!(c.act(0, &[0, 1]), vec![0, 1]);
        assert_eq!(c.act(1, &[0, 1]), vec![1, 0]);

        let f = GroupAction::frobenius(3).unwrap();
        assert_eq!(f.elements()[0], GroupElement::Affine { a: 1, b: 0 });
        assert_eq!(f.act(0, &[0, 1, 2]), vec![0, 1, 2]);
        let g = f
            .elements()
            .iter()
            .position(|&e| e == GroupElement::Affine { a: 2, b: 1 })
            .unwrap();
        assert_eq!(f.act(g, &[0, 1, 2]), vec![1, 0, 2]);
    }

    #[test]
    fn develop_examples() {
        let base = Array::from_rows(2, 2, &[[0, 1]]).unwrap();
        let dev = develop(&base, &GroupAction::cyclic(2).unwrap()).unwrap();
        assert_eq!(dev, Array::from_rows(2, 2, &[[0, 1], [1, 0]]).unwrap());

        let base = Array::from_rows(3, 4, &[[0, 1, 2, 0], [2, 2, 1, 0]]).unwrap();
        let dev = develop(&base, &GroupAction::frobenius(3).unwrap()).unwrap();
        assert_eq!(dev.rows(), 2 * 6);
        assert_eq!(dev.cols(), 4);
        let dev = develop(&base, &GroupAction::cyclic(3).unwrap()).unwrap();
        assert_eq!(dev.rows(), 2 * 3);
    }

    #[test]
    fn constant_rows_example() {
        assert_eq!(
            constant_rows(3, 2).unwrap(),
            Array::from_rows(2, 3, &[[0, 0, 0], [1, 1, 1]]).unwrap()
        );
    }
}
