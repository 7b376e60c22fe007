//! Grassmannians over GF(q) and the primitive relations between subspaces:
//! adjacency, incidence, complementarity, and pencils.
//!
//! Enumeration is deterministic: canonical RREF bases are generated per
//! pivot-column set, pivot sets in colexicographic order, free entries
//! counting up.  The position in that order is the subspace's dense id, which
//! every relation graph downstream indexes by.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldTable};
use crate::linalg::{rank, rref, row_space_basis, MatrixFq};

/// Default bound on the number of subspaces a single enumeration may hold.
pub const DEFAULT_SUBSPACE_CEILING: u128 = 2_000_000;

/// The ambient configuration: V = GF(q)^n with a fixed working dimension k.
#[derive(Clone)]
pub struct Ambient {
    field: Arc<FieldTable>,
    n: usize,
    k: usize,
}

impl Ambient {
    pub fn new(field: Arc<FieldTable>, n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidAmbient(format!("n must be at least 2, got {n}")));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidAmbient(format!("k must satisfy 1 <= k <= n-1, got {k}")));
        }
        Ok(Ambient { field, n, k })
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }
}

impl std::fmt::Debug for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ambient(n={}, k={}, q={})", self.n, self.k, self.q())
    }
}

/// A subspace of GF(q)^n in canonical form.
///
/// The basis matrix is the RREF representative of the row space, so equality
/// and hashing are bit-exact comparisons.  `id` is the dense index within the
/// enumerated Grassmannian that produced the subspace; ad-hoc subspaces built
/// from algebra carry no id until looked up.
#[derive(Clone)]
pub struct Subspace {
    basis: MatrixFq,
    id: Option<u32>,
}

impl Subspace {
    /// Canonicalizes an arbitrary spanning set.
    pub fn from_matrix(m: &MatrixFq) -> Subspace {
        Subspace {
            basis: row_space_basis(m),
            id: None,
        }
    }

    pub fn zero(field: Arc<FieldTable>, n: usize) -> Subspace {
        Subspace {
            basis: MatrixFq::zeros(field, 0, n),
            id: None,
        }
    }

    pub fn full(field: Arc<FieldTable>, n: usize) -> Subspace {
        Subspace {
            basis: MatrixFq::identity(field, n),
            id: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_n(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn id(&self) -> Option<u32> {
        self.id
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        self.basis.field()
    }

    /// True iff `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        assert_same_ambient(self, other);
        if other.dim() > self.dim() {
            return false;
        }
        rank(&self.basis.stack(&other.basis)) == self.dim()
    }

    pub fn contains_vector(&self, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.ambient_n());
        let row = MatrixFq::from_rows(self.field().clone(), v.len(), &[v.to_vec()]);
        rank(&self.basis.stack(&row)) == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_same_ambient(self, other);
        Subspace::from_matrix(&self.basis.stack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_same_ambient(self, other);
        let m = crate::linalg::subspace_intersection(&self.basis, &other.basis)
            .expect("same ambient was asserted");
        Subspace { basis: m, id: None }
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        // Identity is the canonical basis; ids are bookkeeping.
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of GF({})^{}: ", self.dim(), self.field().order(), self.ambient_n())?;
        for r in 0..self.basis.rows() {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.basis.row(r))?;
        }
        write!(f, ")")
    }
}

fn assert_same_ambient(a: &Subspace, b: &Subspace) {
    assert_eq!(a.ambient_n(), b.ambient_n(), "subspaces live in different ambient spaces");
    assert_eq!(
        a.field().order(),
        b.field().order(),
        "subspaces live over different fields"
    );
}

/// Gaussian binomial coefficient `[n choose i]_q` via the q-Pascal recurrence
/// `[n,i] = [n-1,i-1] + q^i [n-1,i]`, exact in u128.
pub fn gaussian_binomial(n: usize, i: usize, q: u64) -> u128 {
    if i > n {
        return 0;
    }
    let mut prev: Vec<u128> = vec![1];
    for row in 1..=n {
        let mut cur = vec![1u128; row + 1];
        for j in 1..row {
            cur[j] = prev[j - 1] + (q as u128).pow(j as u32) * prev[j];
        }
        prev = cur;
    }
    prev[i]
}

/// True iff dim P = dim T = dim(P∩T) + 1.  Anti-reflexive and symmetric.
pub fn adjacent(p: &Subspace, t: &Subspace) -> bool {
    assert_same_ambient(p, t);
    p.dim() == t.dim() && p.dim() > 0 && rank(&p.basis.stack(&t.basis)) == p.dim() + 1
}

/// True iff P ⊆ T or T ⊆ P.  Reflexive; everything is incident with 0 and V.
pub fn incident(p: &Subspace, t: &Subspace) -> bool {
    assert_same_ambient(p, t);
    p.contains(t) || t.contains(p)
}

/// True iff S + U = V and dim S + dim U = n, i.e. V = S ⊕ U.
pub fn complementary(s: &Subspace, u: &Subspace) -> bool {
    assert_same_ambient(s, u);
    let n = s.ambient_n();
    s.dim() + u.dim() == n && rank(&s.basis.stack(&u.basis)) == n
}

/// All X with P ⊂ X ⊂ T and dim X = dim P + 1; exactly q + 1 of them.
pub fn pencil(p: &Subspace, t: &Subspace) -> Result<Vec<Subspace>> {
    assert_same_ambient(p, t);
    if t.dim() != p.dim() + 2 || !t.contains(p) {
        return Err(Error::BadPencil);
    }
    let field = p.field().clone();
    let n = p.ambient_n();
    // Extend a basis of P by two rows of T's canonical basis.
    let mut ext: Vec<Vec<Fe>> = Vec::with_capacity(2);
    let mut working = p.clone();
    for r in 0..t.basis.rows() {
        if working.dim() == p.dim() + 2 {
            break;
        }
        let row = t.basis.row(r).to_vec();
        if !working.contains_vector(&row) {
            let stacked = working
                .basis
                .stack(&MatrixFq::from_rows(field.clone(), n, std::slice::from_ref(&row)));
            working = Subspace::from_matrix(&stacked);
            ext.push(row);
        }
    }
    assert_eq!(ext.len(), 2, "T/P is 2-dimensional");

    let q = field.order();
    let mut out = Vec::with_capacity(q as usize + 1);
    // The q+1 lines of the quotient T/P: span(t1) and span(c*t1 + t2).
    let mut combos: Vec<(Fe, Fe)> = vec![(1, 0)];
    combos.extend((0..q).map(|c| (c as Fe, 1)));
    for (a, b) in combos {
        let mut v = vec![0 as Fe; n];
        for (c, slot) in v.iter_mut().enumerate() {
            let va = field.mul(a, ext[0][c]);
            let vb = field.mul(b, ext[1][c]);
            *slot = field.add(va, vb);
        }
        let stacked = p
            .basis
            .stack(&MatrixFq::from_rows(field.clone(), n, &[v]));
        let x = Subspace::from_matrix(&stacked);
        assert_eq!(x.dim(), p.dim() + 1);
        out.push(x);
    }
    Ok(out)
}

/// All i-dimensional subspaces of GF(q)^n, enumerated in a fixed order and
/// indexed by dense id.
pub struct Grassmannian {
    field: Arc<FieldTable>,
    n: usize,
    dim: usize,
    subspaces: Vec<Subspace>,
    index: HashMap<Vec<Fe>, u32>,
    adjacency: OnceLock<Vec<BitSet>>,
}

impl Grassmannian {
    pub fn enumerate(ambient: &Ambient, i: usize) -> Result<Arc<Grassmannian>> {
        Self::enumerate_with_ceiling(ambient, i, DEFAULT_SUBSPACE_CEILING)
    }

    pub fn enumerate_with_ceiling(
        ambient: &Ambient,
        i: usize,
        ceiling: u128,
    ) -> Result<Arc<Grassmannian>> {
        let n = ambient.n();
        if i > n {
            return Err(Error::DimensionOutOfRange { dim: i, n });
        }
        let q = ambient.q();
        let expected = gaussian_binomial(n, i, q);
        if expected > ceiling {
            return Err(Error::SizeCeiling {
                what: "grassmannian",
                size: expected,
                ceiling,
            });
        }
        let field = ambient.field().clone();
        let mut subspaces = Vec::with_capacity(expected as usize);
        let mut index = HashMap::with_capacity(expected as usize);

        for pivots in combinations_colex(n, i) {
            // Free positions: non-pivot columns to the right of each pivot,
            // walked row-major.
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..n {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let combos = (q as u128).pow(free.len() as u32);
            for m in 0..combos {
                let mut mat = MatrixFq::zeros(field.clone(), i, n);
                for (r, &p) in pivots.iter().enumerate() {
                    mat.set(r, p, 1);
                }
                // Base-q digits of m, first free position most significant.
                let mut rest = m;
                for t in (0..free.len()).rev() {
                    let (r, c) = free[t];
                    mat.set(r, c, (rest % q as u128) as Fe);
                    rest /= q as u128;
                }
                debug_assert_eq!(rref(&mat).matrix.entries(), mat.entries(), "construction is already RREF");
                let id = subspaces.len() as u32;
                let sub = Subspace {
                    basis: mat,
                    id: Some(id),
                };
                let dup = index.insert(sub.basis.entries().to_vec(), id);
                assert!(dup.is_none(), "enumeration must not produce duplicates");
                subspaces.push(sub);
            }
        }
        assert_eq!(
            subspaces.len() as u128,
            expected,
            "enumeration count must match the Gaussian binomial"
        );
        Ok(Arc::new(Grassmannian {
            field,
            n,
            dim: i,
            subspaces,
            index,
            adjacency: OnceLock::new(),
        }))
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldTable> {
        &self.field
    }

    pub fn get(&self, id: u32) -> &Subspace {
        &self.subspaces[id as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subspace> {
        self.subspaces.iter()
    }

    /// Dense id of a subspace, by canonical-basis lookup.
    pub fn id_of(&self, s: &Subspace) -> Option<u32> {
        if s.dim() != self.dim || s.ambient_n() != self.n {
            return None;
        }
        self.index.get(s.basis.entries()).copied()
    }

    /// Pairwise adjacency between members, one bitset row per id.
    /// Computed once on first use.
    pub fn adjacency_sets(&self) -> &[BitSet] {
        self.adjacency.get_or_init(|| {
            let m = self.len();
            let mut rows = vec![BitSet::new(m); m];
            for a in 0..m {
                for b in a + 1..m {
                    if adjacent(&self.subspaces[a], &self.subspaces[b]) {
                        rows[a].insert(b);
                        rows[b].insert(a);
                    }
                }
            }
            rows
        })
    }
}

impl std::fmt::Debug for Grassmannian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Grassmannian(dim {} of GF({})^{}, {} subspaces)",
            self.dim,
            self.field.order(),
            self.n,
            self.len()
        )
    }
}

/// All i-element subsets of 0..n in colexicographic order.
fn combinations_colex(n: usize, i: usize) -> Vec<Vec<usize>> {
    if i == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for max in i - 1..n {
        for mut rest in combinations_colex(max, i - 1) {
            rest.push(max);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ambient(n: usize, k: usize, q: u64) -> Ambient {
        Ambient::new(FieldTable::from_order(q, None).unwrap(), n, k).unwrap()
    }

    fn span(q: u64, n: usize, rows: &[&[Fe]]) -> Subspace {
        let rows: Vec<Vec<Fe>> = rows.iter().map(|r| r.to_vec()).collect();
        Subspace::from_matrix(&MatrixFq::from_rows(
            FieldTable::from_order(q, None).unwrap(),
            n,
            &rows,
        ))
    }

    /// Independent oracle for the Gaussian binomial: the product formula
    /// evaluated as exact integer division of full products.
    fn gaussian_by_product(n: usize, i: usize, q: u64) -> u128 {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for j in 0..i {
            num *= (q as u128).pow((n - j) as u32) - 1;
            den *= (q as u128).pow((j + 1) as u32) - 1;
        }
        assert_eq!(num % den, 0);
        num / den
    }

    #[test]
    fn line_of_gf2_squared_has_three_points_in_frozen_order() {
        let g = Grassmannian::enumerate(&ambient(2, 1, 2), 1).unwrap();
        assert_eq!(g.len(), 3);
        // Pivot set {0} first (free entry counting 0 then 1), then {1}.
        assert_eq!(g.get(0).basis().row(0), &[1, 0]);
        assert_eq!(g.get(1).basis().row(0), &[1, 1]);
        assert_eq!(g.get(2).basis().row(0), &[0, 1]);
        let expected: std::collections::HashSet<Subspace> = [
            span(2, 2, &[&[1, 0]]),
            span(2, 2, &[&[0, 1]]),
            span(2, 2, &[&[1, 1]]),
        ]
        .into_iter()
        .collect();
        let actual: std::collections::HashSet<Subspace> = g.iter().cloned().collect();
        assert_eq!(actual, expected);
    }

    #[test]
    fn enumeration_counts_match_both_count_formulas() {
        for n in 2..=5usize {
            for q in [2u64, 3] {
                let amb = ambient(n, 1, q);
                for i in 0..=n {
                    let g = Grassmannian::enumerate(&amb, i).unwrap();
                    let expected = gaussian_binomial(n, i, q);
                    assert_eq!(g.len() as u128, expected, "n={n} i={i} q={q}");
                    assert_eq!(expected, gaussian_by_product(n, i, q), "n={n} i={i} q={q}");
                }
            }
        }
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
    }

    #[test]
    fn extreme_dimensions_are_representable() {
        let amb = ambient(3, 1, 2);
        let zero = Grassmannian::enumerate(&amb, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero.get(0).dim(), 0);
        let full = Grassmannian::enumerate(&amb, 3).unwrap();
        assert_eq!(full.len(), 1);
        assert_eq!(full.get(0).dim(), 3);
        assert!(Grassmannian::enumerate(&amb, 4).is_err());
    }

    #[test]
    fn ids_are_dense_and_looked_up_by_canonical_basis() {
        let g = Grassmannian::enumerate(&ambient(4, 2, 2), 2).unwrap();
        for (i, s) in g.iter().enumerate() {
            assert_eq!(s.id(), Some(i as u32));
            let fresh = Subspace::from_matrix(s.basis());
            assert_eq!(g.id_of(&fresh), Some(i as u32));
        }
        let foreign = span(2, 4, &[&[1, 0, 0, 0]]);
        assert_eq!(g.id_of(&foreign), None, "wrong dimension has no id here");
    }

    #[test]
    fn enumeration_ceiling_is_enforced() {
        let amb = ambient(5, 2, 3);
        assert!(matches!(
            Grassmannian::enumerate_with_ceiling(&amb, 2, 100),
            Err(Error::SizeCeiling { size: 1210, .. })
        ));
    }

    #[test]
    fn adjacency_examples() {
        let p = span(2, 3, &[&[1, 0, 0]]);
        let t = span(2, 3, &[&[0, 1, 0]]);
        assert!(adjacent(&p, &t), "distinct points are adjacent");
        assert!(!adjacent(&p, &p), "anti-reflexive");
        let a = span(2, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let b = span(2, 4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!adjacent(&a, &b), "trivial intersection of planes is not adjacency");
        assert!(adjacent(&b, &a) == adjacent(&a, &b));
    }

    #[test]
    fn adjacency_is_distinctness_in_extreme_dimensions() {
        for (n, i, q) in [(3usize, 1usize, 2u64), (3, 2, 2), (4, 3, 2), (3, 1, 3)] {
            let g = Grassmannian::enumerate(&ambient(n, 1, q), i).unwrap();
            for a in g.iter() {
                for b in g.iter() {
                    assert_eq!(adjacent(a, b), a != b, "n={n} i={i} q={q}");
                }
            }
        }
    }

    #[test]
    fn incidence_includes_zero_and_full_space() {
        let amb = ambient(3, 1, 2);
        let zero = Subspace::zero(amb.field().clone(), 3);
        let full = Subspace::full(amb.field().clone(), 3);
        for i in 0..=3usize {
            for s in Grassmannian::enumerate(&amb, i).unwrap().iter() {
                assert!(incident(s, &zero));
                assert!(incident(s, &full));
                assert!(incident(s, s), "incidence is reflexive");
            }
        }
        let e1 = span(2, 3, &[&[1, 0, 0]]);
        let e2 = span(2, 3, &[&[0, 1, 0]]);
        assert!(!incident(&e1, &e2));
    }

    #[test]
    fn complement_counts_match_the_closed_form() {
        for n in 2..=4usize {
            for q in [2u64, 3] {
                for k in 1..n {
                    let amb = ambient(n, k, q);
                    let gk = Grassmannian::enumerate(&amb, k).unwrap();
                    let gnk = Grassmannian::enumerate(&amb, n - k).unwrap();
                    let expected = (q as u128).pow((k * (n - k)) as u32);
                    for s in gk.iter() {
                        let count = gnk.iter().filter(|u| complementary(s, u)).count();
                        assert_eq!(count as u128, expected, "n={n} k={k} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn complementary_examples() {
        let e1 = span(2, 2, &[&[1, 0]]);
        let e2 = span(2, 2, &[&[0, 1]]);
        assert!(complementary(&e1, &e2));
        assert!(!complementary(&e1, &e1));
        let plane = span(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(!complementary(&plane, &plane));
    }

    #[test]
    fn pencil_of_the_origin_inside_the_plane_is_the_three_lines() {
        let f = FieldTable::from_order(2, None).unwrap();
        let zero = Subspace::zero(f.clone(), 2);
        let full = Subspace::full(f.clone(), 2);
        let pts = pencil(&zero, &full).unwrap();
        assert_eq!(pts.len(), 3);
        let as_set: std::collections::HashSet<Subspace> = pts.into_iter().collect();
        let expected: std::collections::HashSet<Subspace> = [
            span(2, 2, &[&[1, 0]]),
            span(2, 2, &[&[0, 1]]),
            span(2, 2, &[&[1, 1]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(as_set, expected);
    }

    #[test]
    fn pencil_size_is_q_plus_one() {
        for q in [2u64, 3] {
            let amb = ambient(3, 1, q);
            let p = span(q, 3, &[&[1, 0, 0]]);
            let full = Subspace::full(amb.field().clone(), 3);
            let pts = pencil(&p, &full).unwrap();
            assert_eq!(pts.len() as u64, q + 1);
            for x in &pts {
                assert_eq!(x.dim(), 2);
                assert!(x.contains(&p));
            }
            // Members are pairwise adjacent and pairwise distinct.
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    assert!(adjacent(a, b));
                }
            }
        }
    }

    #[test]
    fn pencil_preconditions_are_enforced() {
        let p = span(2, 3, &[&[1, 0, 0]]);
        let t_bad_gap = span(2, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(pencil(&p, &t_bad_gap).is_err(), "gap of 1 is rejected");
        let t_not_containing = span(2, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert!(pencil(&p, &t_not_containing).is_err());
    }

    #[test]
    fn adjacent_pairs_lie_on_their_pencil() {
        let amb = ambient(3, 2, 2);
        let g = Grassmannian::enumerate(&amb, 2).unwrap();
        for a in g.iter() {
            for b in g.iter() {
                if !adjacent(a, b) {
                    continue;
                }
                let pts = pencil(&a.intersection(b), &a.sum(b)).unwrap();
                assert!(pts.contains(a) && pts.contains(b));
            }
        }
    }

    #[test]
    #[should_panic(expected = "different ambient")]
    fn relation_predicates_require_matching_ambients() {
        let a = span(2, 2, &[&[1, 0]]);
        let b = span(2, 3, &[&[1, 0, 0]]);
        let _ = adjacent(&a, &b);
    }

    #[test]
    fn ambient_validation() {
        let f = FieldTable::from_order(2, None).unwrap();
        assert!(Ambient::new(f.clone(), 1, 1).is_err());
        assert!(Ambient::new(f.clone(), 3, 0).is_err());
        assert!(Ambient::new(f.clone(), 3, 3).is_err());
        assert!(Ambient::new(f, 3, 2).is_ok());
    }
}
