//! Exact matrix algebra over GF(q): reduced row echelon form, rank, kernels,
//! subspace sum/intersection, and annihilators.
//!
//! The canonical representative of a subspace is its RREF basis matrix, so
//! subspace equality is a bit-exact comparison on `entries`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldAutomorphism, FieldTable};

/// Row-major matrix over one field.  Entries are dense field indices.
#[derive(Clone)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
    field: Arc<FieldTable>,
}

impl MatrixFq {
    pub fn new(field: Arc<FieldTable>, rows: usize, cols: usize, entries: Vec<Fe>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry grid must fill the matrix");
        let q = field.order();
        assert!(
            entries.iter().all(|&x| (x as u64) < q),
            "every entry must be a valid field element"
        );
        MatrixFq {
            rows,
            cols,
            entries,
            field,
        }
    }

    pub fn zeros(field: Arc<FieldTable>, rows: usize, cols: usize) -> Self {
        MatrixFq {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: Arc<FieldTable>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Arc<FieldTable>, cols: usize, rows: &[Vec<Fe>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length must equal the column count");
            entries.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Vertical stack; both matrices must share column count and field.
    pub fn stack(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.cols, other.cols, "stack requires equal column counts");
        assert_eq!(self.field.order(), other.field.order());
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        MatrixFq {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = MatrixFq::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn multiply(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = MatrixFq::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let prod = f.mul(a, other.get(i, c));
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, prod));
                }
            }
        }
        out
    }

    /// Row vector times matrix: `v * self`.
    pub fn apply_to_row(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0 as Fe; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for (c, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(vi, self.get(i, c)));
            }
        }
        out
    }

    pub fn add_matrix(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        MatrixFq {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    pub fn sub_matrix(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        MatrixFq {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    pub fn scale(&self, c: Fe) -> MatrixFq {
        let entries = self.entries.iter().map(|&a| self.field.mul(a, c)).collect();
        MatrixFq {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    /// Applies a field automorphism entrywise.
    pub fn map_entries(&self, sigma: FieldAutomorphism) -> MatrixFq {
        let entries = self
            .entries
            .iter()
            .map(|&a| self.field.apply_automorphism(sigma, a))
            .collect();
        MatrixFq {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u8::from(r == c)))
    }
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.field.order() == other.field.order()
            && self.entries == other.entries
    }
}

impl Eq for MatrixFq {}

impl std::hash::Hash for MatrixFq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.field.order().hash(state);
        self.entries.hash(state);
    }
}

impl std::fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixFq {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of Gauss-Jordan elimination.
pub struct RrefResult {
    /// Same shape as the input, zero rows at the bottom.
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

/// Reduced row echelon form: leading entries 1, pivot columns elsewhere zero,
/// pivot columns strictly increasing, zero rows last.
pub fn rref(m: &MatrixFq) -> RrefResult {
    let mut a = m.clone();
    let f = a.field.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_columns = Vec::new();
    let mut pivot_row = 0;

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..cols {
                let tmp = a.get(src, c);
                a.set(src, c, a.get(pivot_row, c));
                a.set(pivot_row, c, tmp);
            }
        }
        let inv = f.inv(a.get(pivot_row, col));
        if inv != 1 {
            for c in 0..cols {
                a.set(pivot_row, c, f.mul(a.get(pivot_row, c), inv));
            }
        }
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in 0..cols {
                let v = f.sub(a.get(r, c), f.mul(factor, a.get(pivot_row, c)));
                a.set(r, c, v);
            }
        }
        pivot_columns.push(col);
        pivot_row += 1;
    }

    RrefResult {
        matrix: a,
        rank: pivot_row,
        pivot_columns,
    }
}

pub fn rank(m: &MatrixFq) -> usize {
    rref(m).rank
}

/// RREF with zero rows dropped: the canonical basis matrix of the row space.
pub fn row_space_basis(m: &MatrixFq) -> MatrixFq {
    let r = rref(m);
    MatrixFq {
        rows: r.rank,
        cols: m.cols,
        entries: r.matrix.entries[..r.rank * m.cols].to_vec(),
        field: m.field.clone(),
    }
}

/// Canonical basis of the right null space {x : M xᵀ = 0}.
/// Row count is always `cols - rank`.
pub fn kernel_basis(m: &MatrixFq) -> MatrixFq {
    let r = rref(m);
    let cols = m.cols;
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (row, &col) in r.pivot_columns.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut vectors: Vec<Vec<Fe>> = Vec::with_capacity(cols - r.rank);
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut x = vec![0 as Fe; cols];
        x[free] = 1;
        for (row, &pc) in r.pivot_columns.iter().enumerate() {
            x[pc] = m.field.neg(r.matrix.get(row, free));
        }
        vectors.push(x);
    }
    let raw = MatrixFq::from_rows(m.field.clone(), cols, &vectors);
    let canonical = row_space_basis(&raw);
    assert_eq!(canonical.rows, cols - r.rank, "kernel dimension must equal cols - rank");
    canonical
}

fn check_same_ambient(a: &MatrixFq, b: &MatrixFq) -> Result<()> {
    if a.cols != b.cols || a.field.order() != b.field.order() {
        return Err(Error::InvalidAmbient(format!(
            "ambient mismatch: {} cols over GF({}) vs {} cols over GF({})",
            a.cols,
            a.field.order(),
            b.cols,
            b.field.order()
        )));
    }
    Ok(())
}

/// Canonical basis of A + B (row spaces).
pub fn subspace_sum(a: &MatrixFq, b: &MatrixFq) -> Result<MatrixFq> {
    check_same_ambient(a, b)?;
    Ok(row_space_basis(&a.stack(b)))
}

/// Canonical basis of A ∩ B via the kernel construction: left null vectors
/// (λ, μ) of the stacked matrix satisfy λA = -μB, and those products span the
/// intersection.  The dimension formula is asserted on every call.
pub fn subspace_intersection(a: &MatrixFq, b: &MatrixFq) -> Result<MatrixFq> {
    check_same_ambient(a, b)?;
    let a_basis = row_space_basis(a);
    let b_basis = row_space_basis(b);
    let stacked = a_basis.stack(&b_basis);
    // Left kernel of `stacked` = right kernel of its transpose.
    let left_kernel = kernel_basis(&stacked.transpose());
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(left_kernel.rows());
    for r in 0..left_kernel.rows() {
        let lambda = &left_kernel.row(r)[..a_basis.rows()];
        rows.push(a_basis.apply_to_row(lambda));
    }
    let inter = row_space_basis(&MatrixFq::from_rows(a.field.clone(), a.cols, &rows));
    let sum_rank = rank(&stacked);
    assert_eq!(
        a_basis.rows() + b_basis.rows(),
        sum_rank + inter.rows(),
        "dim A + dim B must equal dim(A+B) + dim(A∩B)"
    );
    Ok(inter)
}

/// Canonical basis of {φ ∈ V* : φ(S) = 0} in dual coordinates.
/// Input rows must be independent (a basis, not just a spanning set).
pub fn annihilator(s: &MatrixFq) -> Result<MatrixFq> {
    if rank(s) != s.rows {
        return Err(Error::DependentRows);
    }
    Ok(kernel_basis(s))
}

/// Inverse of a square matrix, or None if it is singular.
/// Gauss-Jordan on the matrix augmented with the identity.
pub fn invert(m: &MatrixFq) -> Option<MatrixFq> {
    assert_eq!(m.rows, m.cols, "only square matrices can be inverted");
    let n = m.rows;
    let f = m.field.clone();
    let mut aug = MatrixFq::zeros(f.clone(), n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, n + r, 1);
    }
    let reduced = rref(&aug);
    // Invertible iff the left half reduces to the identity, i.e. the pivots
    // are exactly the first n columns.
    if reduced.rank != n || reduced.pivot_columns.iter().any(|&c| c >= n) {
        return None;
    }
    let mut out = MatrixFq::zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, reduced.matrix.get(r, n + c));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<FieldTable> {
        FieldTable::from_order(q, None).unwrap()
    }

    fn mat(q: u64, cols: usize, rows: &[&[Fe]]) -> MatrixFq {
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.to_vec()).collect();
        MatrixFq::from_rows(gf(q), cols, &rows)
    }

    /// Oracle: all vectors of GF(q)^n annihilated by M, found by scanning the
    /// whole space.  Independent of the elimination code.
    fn kernel_by_scan(m: &MatrixFq) -> Vec<Vec<Fe>> {
        let f = m.field();
        let q = f.order();
        let n = m.cols();
        let mut out = Vec::new();
        for idx in 0..q.pow(n as u32) {
            let mut v = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 0..n {
                v.push((rest % q) as Fe);
                rest /= q;
            }
            let annihilated = (0..m.rows()).all(|r| {
                let mut acc: Fe = 0;
                for (c, &vc) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(m.get(r, c), vc));
                }
                acc == 0
            });
            if annihilated {
                out.push(v);
            }
        }
        out
    }

    /// Oracle: membership of `v` in the row space of `basis` by scanning all
    /// coefficient combinations.
    fn spans_vector(basis: &MatrixFq, v: &[Fe]) -> bool {
        let f = basis.field();
        let q = f.order();
        let k = basis.rows();
        for idx in 0..q.pow(k as u32) {
            let mut coeffs = Vec::with_capacity(k);
            let mut rest = idx;
            for _ in 0..k {
                coeffs.push((rest % q) as Fe);
                rest /= q;
            }
            if basis.apply_to_row(&coeffs) == v {
                return true;
            }
        }
        false
    }

    #[test]
    fn rref_of_invertible_2x2_is_identity() {
        let r = rref(&mat(2, 2, &[&[1, 1], &[0, 1]]));
        assert!(r.matrix.is_identity());
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_columns, vec![0, 1]);
    }

    #[test]
    fn rref_of_zero_matrix_is_zero() {
        let r = rref(&mat(3, 3, &[&[0, 0, 0], &[0, 0, 0]]));
        assert!(r.matrix.is_zero());
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_collapses_dependent_rows_over_gf5() {
        // Row 2 = 2 * row 1 over GF(5), so the rank drops to 1.
        let r = rref(&mat(5, 2, &[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix.row(0), &[1, 2]);
        assert_eq!(r.matrix.row(1), &[0, 0], "zero rows pad the bottom");
    }

    #[test]
    fn kernel_of_sum_functional_over_gf2() {
        let k = kernel_basis(&mat(2, 2, &[&[1, 1]]));
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[1, 1]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_basis(&MatrixFq::identity(gf(3), 3));
        assert_eq!(k.rows(), 0);
    }

    #[test]
    fn kernel_matches_exhaustive_scan_over_gf3() {
        let m = mat(3, 3, &[&[1, 0, 1], &[0, 1, 1]]);
        let k = kernel_basis(&m);
        // The solution line is spanned by (2,2,1); canonical form rescales the
        // leading entry to 1, giving (1,1,2).
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[1, 1, 2]);
        let scan = kernel_by_scan(&m);
        assert_eq!(scan.len(), 3, "a 1-dimensional kernel over GF(3) has 3 vectors");
        for v in &scan {
            assert!(spans_vector(&k, v), "scan vector {v:?} must lie in the basis span");
        }
    }

    #[test]
    fn kernel_dimension_matches_rank_deficit_on_scans() {
        for q in [2u64, 3] {
            for trial in 0..40u64 {
                // Deterministic pseudo-random small matrices.
                let rows = 1 + (trial % 3) as usize;
                let cols = 2 + (trial % 3) as usize;
                let f = gf(q);
                let entries: Vec<Fe> = (0..rows * cols)
                    .map(|i| (((trial + 1) * 2654435761u64.wrapping_mul(i as u64 + 1)) % q) as Fe)
                    .collect();
                let m = MatrixFq::new(f, rows, cols, entries);
                let k = kernel_basis(&m);
                assert_eq!(k.rows(), cols - rank(&m));
                assert_eq!(
                    kernel_by_scan(&m).len() as u64,
                    q.pow(k.rows() as u32),
                    "kernel size must be q^nullity"
                );
            }
        }
    }

    #[test]
    fn sum_of_coordinate_axes_is_the_plane() {
        let e1 = mat(2, 2, &[&[1, 0]]);
        let e2 = mat(2, 2, &[&[0, 1]]);
        let s = subspace_sum(&e1, &e2).unwrap();
        assert!(s.is_identity());
    }

    #[test]
    fn intersection_is_idempotent() {
        let a = mat(3, 3, &[&[1, 0, 2], &[0, 1, 1]]);
        let a_canon = row_space_basis(&a);
        let i = subspace_intersection(&a, &a).unwrap();
        assert_eq!(i, a_canon);
    }

    #[test]
    fn intersection_matches_exhaustive_membership_oracle() {
        let a = mat(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = mat(2, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        let i = subspace_intersection(&a, &b).unwrap();
        assert_eq!(i.rows(), 1);
        assert_eq!(i.row(0), &[0, 1, 0], "span(e1,e2) ∩ span(e2,e3) = span(e2)");
        // Oracle route: every ambient vector is in the intersection iff it is
        // in both row spaces.
        let f = gf(2);
        for idx in 0..8u64 {
            let v = vec![(idx & 1) as Fe, (idx >> 1 & 1) as Fe, (idx >> 2 & 1) as Fe];
            let in_both = spans_vector(&a, &v) && spans_vector(&b, &v);
            assert_eq!(spans_vector(&i, &v), in_both, "mismatch at {v:?}");
        }
        drop(f);
    }

    #[test]
    fn intersection_agrees_with_double_annihilator_route() {
        // Independent oracle: A ∩ B = (A° + B°)° under the double-dual
        // identification.
        for q in [2u64, 3] {
            let f = gf(q);
            let a = row_space_basis(&MatrixFq::from_rows(
                f.clone(),
                4,
                &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]],
            ));
            let b = row_space_basis(&MatrixFq::from_rows(
                f.clone(),
                4,
                &[vec![1, 0, 0, 0], vec![0, 1, 1, (q - 1) as Fe]],
            ));
            let direct = subspace_intersection(&a, &b).unwrap();
            let via_duals = annihilator(
                &subspace_sum(&annihilator(&a).unwrap(), &annihilator(&b).unwrap()).unwrap(),
            )
            .unwrap();
            assert_eq!(direct, via_duals);
        }
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let a = mat(2, 2, &[&[1, 0]]);
        let b = mat(2, 3, &[&[1, 0, 0]]);
        assert!(subspace_sum(&a, &b).is_err());
        assert!(subspace_intersection(&a, &b).is_err());
        let c = mat(3, 2, &[&[1, 0]]);
        assert!(subspace_sum(&a, &c).is_err(), "different fields are a mismatch");
    }

    #[test]
    fn annihilator_examples_and_involution() {
        let f = gf(2);
        let v_full = MatrixFq::identity(f.clone(), 2);
        assert_eq!(annihilator(&v_full).unwrap().rows(), 0, "V° = 0");
        let zero = MatrixFq::zeros(f.clone(), 0, 2);
        assert!(annihilator(&zero).unwrap().is_identity(), "0° = V*");
        let diag = mat(2, 2, &[&[1, 1]]);
        let ann = annihilator(&diag).unwrap();
        assert_eq!(ann.row(0), &[1, 1], "φ = x+y kills span of (1,1) over GF(2)");
        assert_eq!(annihilator(&ann).unwrap(), diag, "involution");
    }

    #[test]
    fn annihilator_rejects_dependent_rows() {
        let m = mat(3, 2, &[&[1, 2], &[2, 1]]);
        assert!(matches!(annihilator(&m), Err(Error::DependentRows)),
            "(2,1) = 2*(1,2) over GF(3)");
    }

    #[test]
    fn annihilator_reverses_inclusion() {
        let f = gf(3);
        let small = row_space_basis(&MatrixFq::from_rows(f.clone(), 3, &[vec![1, 2, 0]]));
        let big = row_space_basis(&MatrixFq::from_rows(
            f.clone(),
            3,
            &[vec![1, 2, 0], vec![0, 0, 1]],
        ));
        let ann_small = annihilator(&small).unwrap();
        let ann_big = annihilator(&big).unwrap();
        // big ⊇ small, so big° ⊆ small°: sum with the larger annihilator is a
        // no-op.
        assert_eq!(subspace_sum(&ann_big, &ann_small).unwrap(), ann_small);
    }

    #[test]
    fn invert_round_trips_and_rejects_singular() {
        let m = mat(3, 2, &[&[1, 2], &[1, 1]]);
        let inv = invert(&m).expect("det = 1*1 - 2*1 = -1 ≠ 0 over GF(3)");
        assert!(m.multiply(&inv).is_identity());
        assert!(inv.multiply(&m).is_identity());

        let singular = mat(3, 2, &[&[1, 2], &[2, 1]]);
        assert!(invert(&singular).is_none(), "(2,1) = 2*(1,2) over GF(3)");

        let f = gf(4);
        let m4 = MatrixFq::from_rows(f, 2, &[vec![2, 1], vec![1, 1]]);
        let inv4 = invert(&m4).unwrap();
        assert!(m4.multiply(&inv4).is_identity());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_matrix() -> impl Strategy<Value = MatrixFq> {
            (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..4, 1usize..5).prop_flat_map(
                |(q, rows, cols)| {
                    proptest::collection::vec(0..q, rows * cols).prop_map(move |raw| {
                        let entries: Vec<Fe> = raw.into_iter().map(|x| x as Fe).collect();
                        MatrixFq::new(gf(q), rows, cols, entries)
                    })
                },
            )
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            /// rref is canonical: applying random invertible row operations
            /// never changes the echelon form, and rref is idempotent.
            #[test]
            fn rref_is_invariant_under_row_operations(
                m in arb_matrix(),
                ops in proptest::collection::vec((0usize..16, 0usize..16, 1u64..5), 0..12),
            ) {
                let base = rref(&m);
                let twice = rref(&base.matrix);
                prop_assert_eq!(twice.matrix.entries(), base.matrix.entries());

                let mut scrambled = m.clone();
                let f = scrambled.field().clone();
                for (src, dst, c) in ops {
                    let (src, dst) = (src % m.rows(), dst % m.rows());
                    if src == dst {
                        continue;
                    }
                    // dst += c * src, with c reduced into the field: an
                    // invertible elementary operation.
                    let c = (c % f.order()) as Fe;
                    for col in 0..m.cols() {
                        let v = f.add(scrambled.get(dst, col), f.mul(c, scrambled.get(src, col)));
                        scrambled.set(dst, col, v);
                    }
                }
                let after = rref(&scrambled);
                prop_assert_eq!(after.matrix.entries(), base.matrix.entries());
            }

            /// The dimension formula holds for arbitrary row spaces.
            #[test]
            fn dimension_formula_holds(a in arb_matrix(), b in arb_matrix()) {
                // Reshape b onto a's ambient so the pair is comparable.
                let cols = a.cols();
                let q = a.field().order();
                let entries: Vec<Fe> = b
                    .entries()
                    .iter()
                    .map(|&x| (x as u64 % q) as Fe)
                    .chain(std::iter::repeat(0))
                    .take(b.rows() * cols)
                    .collect();
                let b = MatrixFq::new(a.field().clone(), b.rows(), cols, entries);
                // subspace_intersection asserts
                // dim A + dim B = dim(A+B) + dim(A∩B) internally.
                let _ = subspace_intersection(&a, &b).unwrap();
            }
        }
    }
}
