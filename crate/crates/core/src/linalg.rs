//! Sparse exact row echelon forms and quotient spaces.
//!
//! Graded pieces of Jacobian-type ideals are spanned by many very sparse
//! vectors (often single monomials), so elimination is done incrementally on
//! sparse rows: each stored row is fully reduced against earlier pivots and
//! normalized to leading coefficient one.
//!
//! Pivot priority is configurable. By default column `0` has the highest
//! priority; a custom priority order makes it possible to intersect a row
//! space with a coordinate subspace (rows whose pivot falls in the
//! lowest-priority block span the intersection).

use std::collections::{BTreeMap, HashMap};

use crate::scalar::Scalar;

/// A sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// Incrementally built echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon<S: Scalar> {
    ncols: usize,
    /// `position[col]`: pivot priority of a column (smaller = earlier).
    position: Vec<usize>,
    /// Inverse of `position`.
    column_at: Vec<usize>,
    /// Stored rows in position coordinates; first entry is `(pivot, 1)`.
    rows: Vec<SparseVec<S>>,
    pivot_row: HashMap<usize, usize>,
}

impl<S: Scalar> Echelon<S> {
    /// Empty echelon form with the natural column priority.
    pub fn new(ncols: usize) -> Self {
        Self::with_priority((0..ncols).collect())
    }

    /// Empty echelon form in which column `order[0]` is pivoted first, then
    /// `order[1]`, and so on. `order` must be a permutation of `0..ncols`.
    pub fn with_priority(order: Vec<usize>) -> Self {
        let ncols = order.len();
        let mut position = vec![usize::MAX; ncols];
        for (p, &c) in order.iter().enumerate() {
            position[c] = p;
        }
        assert!(
            position.iter().all(|&p| p != usize::MAX),
            "priority is not a permutation"
        );
        Echelon {
            ncols,
            position,
            column_at: order,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn to_positions(&self, v: &[(usize, S)]) -> BTreeMap<usize, S> {
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            let p = self.position[*c];
            match acc.get_mut(&p) {
                Some(y) => {
                    let s: S = y.plus(x);
                    if s.is_zero() {
                        acc.remove(&p);
                    } else {
                        *y = s;
                    }
                }
                None => {
                    acc.insert(p, x.clone());
                }
            }
        }
        acc
    }

    /// Fully reduces `acc` (position coordinates) against the stored rows.
    fn reduce_positions(&self, acc: &mut BTreeMap<usize, S>) {
        let mut cursor = 0;
        while let Some((&k, _)) = acc.range(cursor..).next() {
            cursor = k + 1;
            let Some(&r) = self.pivot_row.get(&k) else { continue };
            let c = acc.remove(&k).expect("present");
            for (j, v) in &self.rows[r][1..] {
                let delta = c.times(v);
                match acc.get_mut(j) {
                    Some(y) => {
                        let s = y.minus(&delta);
                        if s.is_zero() {
                            acc.remove(j);
                        } else {
                            *y = s;
                        }
                    }
                    None => {
                        acc.insert(*j, delta.negated());
                    }
                }
            }
        }
    }

    /// Adds a vector to the spanning set. Returns `true` if it was
    /// independent of the rows already present.
    pub fn insert(&mut self, v: &[(usize, S)]) -> bool {
        let mut acc = self.to_positions(v);
        self.reduce_positions(&mut acc);
        let Some((&lead, lead_val)) = acc.iter().next() else {
            return false;
        };
        let inv = lead_val.inv();
        let row: SparseVec<S> = acc.into_iter().map(|(p, x)| (p, x.times(&inv))).collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// The remainder of `v` after full reduction, in column coordinates
    /// (sorted by column). It is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = self.to_positions(v);
        self.reduce_positions(&mut acc);
        let mut out: SparseVec<S> = acc.into_iter().map(|(p, x)| (self.column_at[p], x)).collect();
        out.sort_by_key(|(c, _)| *c);
        out
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[(usize, S)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Whether `col` is a pivot column.
    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&self.position[col])
    }

    /// Pivot columns, sorted by column index.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivot_row.keys().map(|&p| self.column_at[p]).collect();
        v.sort_unstable();
        v
    }

    /// Non-pivot columns, sorted by column index.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Stored rows (column coordinates, sorted by column) whose pivot has
    /// priority position at least `threshold`. With a priority order that
    /// lists the columns of a coordinate subspace `C` last, these rows form a
    /// basis of `rowspace ∩ C` when `threshold` is the first position of `C`.
    pub fn rows_with_pivot_from(&self, threshold: usize) -> Vec<SparseVec<S>> {
        let mut leads: Vec<(usize, usize)> = self
            .pivot_row
            .iter()
            .filter(|(&p, _)| p >= threshold)
            .map(|(&p, &r)| (p, r))
            .collect();
        leads.sort_unstable();
        leads
            .into_iter()
            .map(|(_, r)| {
                let mut row: SparseVec<S> = self.rows[r]
                    .iter()
                    .map(|(p, x)| (self.column_at[*p], x.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect()
    }
}

/// The quotient of `k^ncols` by a subspace, with basis given by the
/// non-pivot columns of the subspace's echelon form.
#[derive(Clone, Debug)]
pub struct QuotientSpace<S: Scalar> {
    echelon: Echelon<S>,
    basis: Vec<usize>,
    coord_of: HashMap<usize, usize>,
}

impl<S: Scalar> QuotientSpace<S> {
    /// Builds the quotient from an echelon form of the subspace.
    pub fn new(echelon: Echelon<S>) -> Self {
        let basis = echelon.free_columns();
        let coord_of = basis.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        QuotientSpace {
            echelon,
            basis,
            coord_of,
        }
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ambient columns representing the quotient basis, ascending.
    pub fn basis_columns(&self) -> &[usize] {
        &self.basis
    }

    /// The subspace being divided out.
    pub fn subspace(&self) -> &Echelon<S> {
        &self.echelon
    }

    /// Coordinates of the class of `v` in the quotient basis (sparse, keyed
    /// by basis index).
    pub fn coordinates(&self, v: &[(usize, S)]) -> SparseVec<S> {
        self.echelon
            .reduce(v)
            .into_iter()
            .map(|(c, x)| (self.coord_of[&c], x))
            .collect()
    }

    /// Dense coordinates of the class of `v`.
    pub fn dense_coordinates(&self, v: &[(usize, S)]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (i, x) in self.coordinates(v) {
            out[i] = x;
        }
        out
    }

    /// Index of an ambient column in the quotient basis, if it is a basis
    /// column.
    pub fn coordinate_of_column(&self, col: usize) -> Option<usize> {
        self.coord_of.get(&col).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn v(entries: &[(usize, i64)]) -> SparseVec<Rational> {
        entries.iter().map(|&(c, x)| (c, rat(x))).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(4);
        assert!(e.insert(&v(&[(0, 1), (1, 1)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[(0, 2), (1, 4), (2, 2)])));
        assert!(!e.contains(&v(&[(3, 1)])));
        assert_eq!(e.free_columns(), vec![2, 3]);
    }

    #[test]
    fn custom_priority_intersects_with_coordinate_subspace() {
        // Row space spanned by e0 + e2 and e1 - e0; intersect with span(e2, e1) ∪ ...
        // Priority lists column 0 first, so rows pivoting after position 0
        // avoid column 0 entirely.
        let mut e = Echelon::with_priority(vec![0, 1, 2]);
        e.insert(&v(&[(0, 1), (2, 1)]));
        e.insert(&v(&[(0, -1), (1, 1)]));
        let inter = e.rows_with_pivot_from(1);
        assert_eq!(inter.len(), 1);
        assert!(inter[0].iter().all(|(c, _)| *c != 0));
    }

    #[test]
    fn quotient_coordinates() {
        let mut e = Echelon::new(3);
        e.insert(&v(&[(0, 1), (1, -1)]));
        let q = QuotientSpace::new(e);
        assert_eq!(q.dim(), 2);
        // e0 ≡ e1 in the quotient.
        assert_eq!(q.coordinates(&v(&[(0, 1)])), q.coordinates(&v(&[(1, 1)])));
    }
}
