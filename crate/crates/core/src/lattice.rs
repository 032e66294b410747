//! Exact integer and rational linear algebra on lattices.
//!
//! * [`IntMatrix`] — dense matrices over `Z` with arbitrary-precision entries.
//! * [`smith_normal_form`] — diagonal form `U·A·V = D` with unimodular `U`, `V`
//!   and `d_1 | d_2 | …`.
//! * [`hermite_row_basis`] — canonical echelon basis of the row lattice.
//! * [`integer_kernel`] — a `Z`-basis of `{x ∈ Z^n : A x = 0}`.
//! * [`rational_rank_and_kernel`] — rank and kernel over `Q` (or `Q(i)`).
//! * [`lattice_points_of_polyhedron`] — lattice points of
//!   `{x : ⟨a_i, x⟩ ≥ b_i}` by recursive coordinate bounding, where the
//!   bounds come from Fourier–Motzkin projection.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers; `cols` is needed when
    /// there are no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Row `i` converted to machine integers. Panics on overflow.
    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        self.row(i).iter().map(to_i64).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q * row[src]`.
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = q * self.get(src, j);
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += q * col[src]`.
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = q * self.get(i, src);
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Converts to `i64`, panicking on overflow (lattice data is small).
pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("integer does not fit in 64 bits")
}

/// Smith normal form `U · A · V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | … | d_r`, all positive.
    pub diagonal: Vec<BigInt>,
    /// Unimodular row transform (`rows × rows`).
    pub u: IntMatrix,
    /// Unimodular column transform (`cols × cols`).
    pub v: IntMatrix,
}

impl SmithForm {
    /// Rank of the original matrix.
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Product of the nonzero invariant factors: the index of the lattice
    /// spanned by the rows inside its saturation.
    pub fn index(&self) -> BigInt {
        self.diagonal.iter().fold(BigInt::one(), |acc, d| acc * d)
    }
}

/// Computes the Smith normal form of `a`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut diagonal = Vec::new();

    for t in 0..m.min(n) {
        // Choose the entry of least absolute value in the trailing block.
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by(|&(i, j), &(k, l)| d.get(i, j).abs().cmp(&d.get(k, l).abs()));
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !d.get(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                if !d.get(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(d.get(t, t)));
            match offender {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        diagonal.push(d.get(t, t).clone());
    }
    SmithForm { diagonal, u, v }
}

/// Canonical Hermite echelon basis of the lattice spanned by the rows of
/// `a`: nonzero rows with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_row_basis(a: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..a.rows).map(|i| a.row(i)).collect();
    let n = a.cols;
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        // Euclid on column c among rows r.. until a single nonzero remains.
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    rows.swap(r, i);
                }
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, best);
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        for above in rows.iter_mut().take(r) {
            let q = above[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, p) in above.iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    let mut out = IntMatrix::zeros(r, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    out
}

/// A `Z`-basis (as rows, in Hermite form) of `{x ∈ Z^n : a · x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let n = a.cols;
    let r = snf.rank();
    let mut k = IntMatrix::zeros(n - r, n);
    for (row, j) in (r..n).enumerate() {
        for i in 0..n {
            k.set(row, i, snf.v.get(i, j).clone());
        }
    }
    hermite_row_basis(&k)
}

/// An integral solution of `a · x = y`, if one exists (free coordinates in
/// the Smith basis are set to zero).
pub fn solve_integer(a: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, y.len(), "shape mismatch");
    let snf = smith_normal_form(a);
    let uy: Vec<BigInt> = (0..a.rows)
        .map(|i| (0..a.rows).map(|k| snf.u.get(i, k) * &y[k]).sum())
        .collect();
    let r = snf.rank();
    if uy[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); a.cols];
    for i in 0..r {
        if !uy[i].is_multiple_of(&snf.diagonal[i]) {
            return None;
        }
        z[i] = &uy[i] / &snf.diagonal[i];
    }
    Some(
        (0..a.cols)
            .map(|i| (0..a.cols).map(|k| snf.v.get(i, k) * &z[k]).sum())
            .collect(),
    )
}

/// Exact Gauss–Jordan reduction of a dense matrix over a field. Returns the
/// reduced row echelon form (zero rows dropped) and its pivot columns.
pub fn rref<S: Scalar>(rows: &[Vec<S>], cols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = x.times(&inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.minus(&f.times(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank and a kernel basis of `a` (as a list of row vectors), over a field.
pub fn rational_rank_and_kernel<S: Scalar>(a: &[Vec<S>], cols: usize) -> (usize, Vec<Vec<S>>) {
    let (red, pivots) = rref(a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = row[f].negated();
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// Rank over `Q` of an integer matrix.
pub fn int_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let q: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
        .collect();
    rref(&q, cols).1.len()
}

/// Solves `a · x = b` over a field; `None` if inconsistent. When the system
/// is underdetermined the free variables are set to zero.
pub fn solve_linear<S: Scalar>(a: &[Vec<S>], b: &[S], cols: usize) -> Option<Vec<S>> {
    let aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// A linear inequality `⟨coeffs, x⟩ ≥ rhs`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Inequality { coeffs, rhs }
    }

    /// Integer-coefficient constructor.
    pub fn from_ints(coeffs: &[i64], rhs: Rational) -> Self {
        Inequality {
            coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            rhs,
        }
    }

    /// Scales so that the first nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &lead;
            }
            self.rhs = &self.rhs / &lead;
        }
        self
    }
}

/// Outcome of projecting an inequality system.
enum Projection {
    Infeasible,
    Constraints(Vec<Inequality>),
}

/// Removes trivial rows and keeps only the tightest copy of each direction.
fn simplify(system: Vec<Inequality>) -> Projection {
    let mut best: HashMap<Vec<Rational>, Rational> = HashMap::new();
    for ineq in system {
        if ineq.coeffs.iter().all(|c| c.is_zero()) {
            if ineq.rhs.is_positive() {
                return Projection::Infeasible;
            }
            continue;
        }
        let ineq = ineq.normalized();
        best.entry(ineq.coeffs)
            .and_modify(|r| {
                if ineq.rhs > *r {
                    *r = ineq.rhs.clone();
                }
            })
            .or_insert(ineq.rhs);
    }
    let mut out: Vec<Inequality> = best.into_iter().map(|(c, r)| Inequality::new(c, r)).collect();
    out.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then(a.rhs.cmp(&b.rhs)));
    Projection::Constraints(out)
}

/// Fourier–Motzkin elimination of variable `k` (the variable is kept in
/// the coefficient vectors with coefficient zero).
fn eliminate(system: &[Inequality], k: usize) -> Projection {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out = Vec::new();
    for ineq in system {
        if ineq.coeffs[k].is_positive() {
            pos.push(ineq);
        } else if ineq.coeffs[k].is_negative() {
            neg.push(ineq);
        } else {
            out.push(ineq.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let a = -&n.coeffs[k];
            let b = p.coeffs[k].clone();
            let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| &a * x + &b * y).collect();
            out.push(Inequality::new(coeffs, &a * &p.rhs + &b * &n.rhs));
        }
    }
    simplify(out)
}

/// Projects onto the coordinates in `keep` by eliminating all others.
fn project(system: &[Inequality], keep: &[usize]) -> Projection {
    let dim = system.first().map_or(0, |i| i.coeffs.len());
    let mut cur = match simplify(system.to_vec()) {
        Projection::Infeasible => return Projection::Infeasible,
        Projection::Constraints(c) => c,
    };
    for k in (0..dim).rev() {
        if keep.contains(&k) {
            continue;
        }
        cur = match eliminate(&cur, k) {
            Projection::Infeasible => return Projection::Infeasible,
            Projection::Constraints(c) => c,
        };
    }
    Projection::Constraints(cur)
}

/// Whether `{x : ⟨a_i, x⟩ ≥ b_i}` is nonempty over the reals.
pub fn is_feasible(system: &[Inequality]) -> bool {
    !matches!(project(system, &[]), Projection::Infeasible)
}

/// Whether the recession cone `{y : ⟨a_i, y⟩ ≥ 0}` is `{0}`.
pub fn is_bounded(system: &[Inequality], dim: usize) -> bool {
    let homogeneous: Vec<Inequality> = system
        .iter()
        .map(|i| Inequality::new(i.coeffs.clone(), Rational::zero()))
        .collect();
    (0..dim).all(|j| match project(&homogeneous, &[j]) {
        Projection::Infeasible => true,
        Projection::Constraints(c) => {
            c.iter().any(|i| i.coeffs[j].is_positive()) && c.iter().any(|i| i.coeffs[j].is_negative())
        }
    })
}

/// Lattice points of the polyhedron `{x ∈ R^dim : ⟨a_i, x⟩ ≥ b_i}`,
/// lexicographically sorted.
///
/// # Errors
/// [`Error::UnboundedRegion`] when the polyhedron has a nonzero recession
/// cone.
pub fn lattice_points_of_polyhedron(system: &[Inequality], dim: usize) -> Result<Vec<Vec<i64>>> {
    if system.iter().any(|i| i.coeffs.len() != dim) {
        return Err(Error::InvalidInput("inequality of wrong dimension".into()));
    }
    if !is_bounded(system, dim) {
        return Err(Error::UnboundedRegion);
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(dim);
    enumerate_points(system.to_vec(), dim, &mut prefix, &mut out);
    Ok(out)
}

fn enumerate_points(system: Vec<Inequality>, dim: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    let depth = prefix.len();
    if depth == dim {
        if system.iter().all(|i| !i.rhs.is_positive()) {
            out.push(prefix.clone());
        }
        return;
    }
    let Projection::Constraints(proj) = project(&system, &[depth]) else {
        return;
    };
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for ineq in &proj {
        let c = &ineq.coeffs[depth];
        let bound = &ineq.rhs / c;
        if c.is_positive() {
            let b = bound.ceil().to_integer();
            if lo.as_ref().is_none_or(|l| b > *l) {
                lo = Some(b);
            }
        } else {
            let b = bound.floor().to_integer();
            if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        }
    }
    // Boundedness was verified up front, so both bounds exist here.
    let (Some(lo), Some(hi)) = (lo, hi) else { return };
    let mut v = lo;
    while v <= hi {
        let vq = Rational::from_integer(v.clone());
        let sub: Vec<Inequality> = system
            .iter()
            .map(|i| {
                let mut coeffs = i.coeffs.clone();
                let c = std::mem::replace(&mut coeffs[depth], Rational::zero());
                Inequality::new(coeffs, &i.rhs - &c * &vq)
            })
            .collect();
        prefix.push(to_i64(&v));
        enumerate_points(sub, dim, prefix, out);
        prefix.pop();
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_form_of_small_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(smith_normal_form(&a).diagonal, big(&[1, 6]));
        let b = IntMatrix::from_rows(&[vec![1, 0], vec![1, 2]], 2);
        assert_eq!(smith_normal_form(&b).diagonal, big(&[1, 2]));
    }

    #[test]
    fn smith_transforms_reproduce_diagonal() {
        let a = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, 8, -4], vec![6, 14, -2]], 3);
        let s = smith_normal_form(&a);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j && i < s.rank() {
                    s.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d.get(i, j), &expect);
            }
        }
        assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
    }

    #[test]
    fn rank_and_kernel_of_rank_one_matrix() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        let (r, k) = rational_rank_and_kernel(&a, 2);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 6]], 3);
        let k = integer_kernel(&a);
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            let r = k.row_i64(i);
            assert_eq!(r[0] + 2 * r[1] + 3 * r[2], 0);
        }
        // Index 1 in its saturation.
        assert!(smith_normal_form(&k).index().is_one());
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![3, 5]], 2);
        let b = IntMatrix::from_rows(&[vec![5, 9], vec![3, 5], vec![8, 14]], 2);
        assert_eq!(hermite_row_basis(&a), hermite_row_basis(&b));
    }

    #[test]
    fn triangle_has_ten_points() {
        // x ≥ 0, y ≥ 0, x + y ≤ 3.
        let sys = vec![
            Inequality::from_ints(&[1, 0], rat(0)),
            Inequality::from_ints(&[0, 1], rat(0)),
            Inequality::from_ints(&[-1, -1], rat(-3)),
        ];
        let pts = lattice_points_of_polyhedron(&sys, 2).unwrap();
        assert_eq!(pts.len(), 10);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }

    #[test]
    fn unbounded_region_is_reported() {
        let sys = vec![
            Inequality::from_ints(&[1, 0], rat(0)),
            Inequality::from_ints(&[0, 1], rat(0)),
        ];
        assert_eq!(lattice_points_of_polyhedron(&sys, 2), Err(Error::UnboundedRegion));
    }

    #[test]
    fn integer_solve_detects_non_integral_systems() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(solve_integer(&a, &big(&[4, 9])), Some(big(&[2, 3])));
        assert_eq!(solve_integer(&a, &big(&[1, 3])), None);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, -1, 4], vec![5, 2, -2]], 3);
        // Expansion along the first row; its leading entry is zero.
        let cof = -2 * (-6 - 20) + (6 + 5);
        assert_eq!(a.det(), BigInt::from(cof));
    }
}
