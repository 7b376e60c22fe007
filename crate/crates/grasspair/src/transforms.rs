//! The transformation catalog: semilinear maps and the Grassmannian actions
//! they induce, dualities V -> V*, product / swap-product pair maps, and the
//! involution correspondence u <-> (U+, U-).
//!
//! Component maps are materialized as explicit action tables on enumerated
//! Grassmannians, so equality of transformations is table equality and the
//! catalog deduplicates by action.

use std::collections::HashSet;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldAutomorphism, FieldTable};
use crate::grassmann::{adjacent, Ambient, Grassmannian, Subspace};
use crate::linalg::{invert, kernel_basis, rank, MatrixFq};
use crate::pairs::{PairSpace, SpaceKind};

/// Default bound on the (pre-deduplication) size of a transformation catalog.
pub const DEFAULT_CATALOG_CEILING: u128 = 200_000;

/// Default bound on the q^(n*n) matrix scan behind involution enumeration.
pub const DEFAULT_INVOLUTION_SCAN_CEILING: u128 = 20_000_000;

/// A semilinear bijection V -> V: v |-> sigma(v) . A with A invertible,
/// sigma applied entrywise.  (A, sigma) composes like a group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    matrix: MatrixFq,
    sigma: FieldAutomorphism,
}

impl SemilinearMap {
    pub fn new(matrix: MatrixFq, sigma: FieldAutomorphism) -> Result<SemilinearMap> {
        assert_eq!(matrix.rows(), matrix.cols(), "the matrix must be square");
        if rank(&matrix) != matrix.rows() {
            return Err(Error::NotInvertible);
        }
        Ok(SemilinearMap { matrix, sigma })
    }

    pub fn identity(field: Arc<FieldTable>, n: usize) -> SemilinearMap {
        SemilinearMap {
            matrix: MatrixFq::identity(field, n),
            sigma: FieldAutomorphism::identity(),
        }
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.matrix
    }

    pub fn sigma(&self) -> FieldAutomorphism {
        self.sigma
    }

    pub fn apply_vector(&self, v: &[Fe]) -> Vec<Fe> {
        let f = self.matrix.field();
        let mapped: Vec<Fe> = v.iter().map(|&x| f.apply_automorphism(self.sigma, x)).collect();
        self.matrix.apply_to_row(&mapped)
    }

    /// The canonical representative of l(S); dimension is preserved.
    pub fn induce_subspace(&self, s: &Subspace) -> Subspace {
        let image = s.basis().map_entries(self.sigma).multiply(&self.matrix);
        let out = Subspace::from_matrix(&image);
        assert_eq!(out.dim(), s.dim(), "invertible maps preserve dimension");
        out
    }

    /// `other` applied first, then `self`.
    pub fn compose(&self, other: &SemilinearMap) -> SemilinearMap {
        let f = self.matrix.field();
        SemilinearMap {
            matrix: other.matrix.map_entries(self.sigma).multiply(&self.matrix),
            sigma: f.compose_automorphisms(self.sigma, other.sigma),
        }
    }

    pub fn inverse(&self) -> SemilinearMap {
        let f = self.matrix.field();
        let tau = f.invert_automorphism(self.sigma);
        let a_inv = invert(&self.matrix).expect("the matrix is invertible by construction");
        SemilinearMap {
            matrix: a_inv.map_entries(tau),
            sigma: tau,
        }
    }
}

/// A semilinear bijection V -> V* in dual coordinates: v |-> sigma(v) . A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityMap {
    matrix: MatrixFq,
    sigma: FieldAutomorphism,
}

impl DualityMap {
    pub fn new(matrix: MatrixFq, sigma: FieldAutomorphism) -> Result<DualityMap> {
        assert_eq!(matrix.rows(), matrix.cols(), "the matrix must be square");
        if rank(&matrix) != matrix.rows() {
            return Err(Error::NotInvertible);
        }
        Ok(DualityMap { matrix, sigma })
    }

    /// n = 2: the duality of the non-degenerate alternating form
    /// <x, y> = x0*y1 - x1*y0.  Its induced map on lines is the identity.
    pub fn alternating(field: Arc<FieldTable>) -> DualityMap {
        let neg1 = field.neg(1);
        let matrix = MatrixFq::from_rows(field, 2, &[vec![0, 1], vec![neg1, 0]]);
        DualityMap {
            matrix,
            sigma: FieldAutomorphism::identity(),
        }
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.matrix
    }

    pub fn sigma(&self) -> FieldAutomorphism {
        self.sigma
    }

    /// The annihilator of s(S): dimension n - dim S, inclusion-reversing.
    pub fn induce_subspace(&self, s: &Subspace) -> Subspace {
        let n = s.ambient_n();
        assert!(
            s.dim() >= 1 && s.dim() < n,
            "dualities act on proper nonzero subspaces"
        );
        let image = s.basis().map_entries(self.sigma).multiply(&self.matrix);
        // Rows of `image` span s(S) in dual coordinates; its annihilator in V
        // is the right kernel.
        let out = Subspace::from_matrix(&kernel_basis(&image));
        assert_eq!(out.dim(), n - s.dim(), "dualities complement the dimension");
        out
    }
}

/// |GL(n, q)| = prod_{i<n} (q^n - q^i).
pub fn gl_order(n: usize, q: u64) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

/// All invertible n x n matrices, in depth-first row order (each row ranges
/// over vector codes 0..q^n, least significant digit first).
pub fn enumerate_gl(field: &Arc<FieldTable>, n: usize, ceiling: u128) -> Result<Vec<MatrixFq>> {
    let q = field.order();
    let total = gl_order(n, q);
    if total > ceiling {
        return Err(Error::SizeCeiling {
            what: "general linear group",
            size: total,
            ceiling,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(n);
    // Echelonized copies of the chosen rows, each normalized to pivot 1.
    let mut echelon: Vec<(usize, Vec<Fe>)> = Vec::with_capacity(n);
    build_gl(field, n, &mut rows, &mut echelon, &mut out);
    assert_eq!(out.len() as u128, total, "row-building must hit the group order");
    Ok(out)
}

fn build_gl(
    field: &Arc<FieldTable>,
    n: usize,
    rows: &mut Vec<Vec<Fe>>,
    echelon: &mut Vec<(usize, Vec<Fe>)>,
    out: &mut Vec<MatrixFq>,
) {
    if rows.len() == n {
        out.push(MatrixFq::from_rows(field.clone(), n, rows));
        return;
    }
    let q = field.order();
    let codes = q.pow(n as u32);
    for code in 0..codes {
        let mut v = Vec::with_capacity(n);
        let mut rest = code;
        for _ in 0..n {
            v.push((rest % q) as Fe);
            rest /= q;
        }
        // Reduce against the echelon rows; survivors are independent.
        let mut red = v.clone();
        for (pivot, e) in echelon.iter() {
            let c = red[*pivot];
            if c != 0 {
                for j in 0..n {
                    red[j] = field.sub(red[j], field.mul(c, e[j]));
                }
            }
        }
        let Some(pivot) = red.iter().position(|&x| x != 0) else {
            continue;
        };
        let inv = field.inv(red[pivot]);
        let norm: Vec<Fe> = red.iter().map(|&x| field.mul(inv, x)).collect();
        rows.push(v);
        echelon.push((pivot, norm));
        build_gl(field, n, rows, echelon, out);
        echelon.pop();
        rows.pop();
    }
}

/// All pairs (A, sigma): the semilinear group as matrix-major, automorphism-
/// minor list.
pub fn enumerate_semilinear(
    field: &Arc<FieldTable>,
    n: usize,
    ceiling: u128,
) -> Result<Vec<SemilinearMap>> {
    let e = field.e() as u128;
    let matrices = enumerate_gl(field, n, ceiling / e.max(1))?;
    let autos = field.automorphisms();
    let mut out = Vec::with_capacity(matrices.len() * autos.len());
    for m in &matrices {
        for &sigma in &autos {
            out.push(SemilinearMap {
                matrix: m.clone(),
                sigma,
            });
        }
    }
    Ok(out)
}

/// Action table of l on an enumerated Grassmannian: table[id] = id of l(S).
pub fn grass_action(g: &Grassmannian, l: &SemilinearMap) -> Vec<u32> {
    let table: Vec<u32> = (0..g.len() as u32)
        .map(|id| {
            let image = l.induce_subspace(g.get(id));
            g.id_of(&image).expect("the image has equal dimension, hence is enumerated")
        })
        .collect();
    debug_assert_bijective(&table, g.len());
    table
}

/// Action table of a duality from one Grassmannian onto the complementary-
/// dimension one: table[id] = id of (s(S))° in `to`.
pub fn duality_action(from: &Grassmannian, to: &Grassmannian, s: &DualityMap) -> Vec<u32> {
    assert_eq!(from.ambient_n(), to.ambient_n());
    assert_eq!(to.dim(), from.ambient_n() - from.dim(), "codomain dimension is complemented");
    let table: Vec<u32> = (0..from.len() as u32)
        .map(|id| {
            let image = s.induce_subspace(from.get(id));
            to.id_of(&image).expect("the annihilator has the complementary dimension")
        })
        .collect();
    debug_assert_bijective(&table, to.len());
    table
}

fn debug_assert_bijective(table: &[u32], codomain: usize) {
    debug_assert!(
        {
            let mut seen = vec![false; codomain];
            table.iter().all(|&t| {
                let fresh = !seen[t as usize];
                seen[t as usize] = true;
                fresh
            }) && table.len() == codomain
        },
        "induced action tables are bijections"
    );
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// (S, U) |-> (f'(S), f''(U)).
    Product,
    /// (S, U) |-> (g''(U), g'(S)) with g': G_k -> G_{n-k}, g'': G_{n-k} -> G_k.
    Swap,
}

/// A pair transformation as two explicit component tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairTransformation {
    shape: Shape,
    /// Product: f' on the first Grassmannian.  Swap: g' (first -> second ids).
    first: Vec<u32>,
    /// Product: f'' on the second Grassmannian.  Swap: g'' (second -> first).
    second: Vec<u32>,
}

impl PairTransformation {
    pub fn new(shape: Shape, first: Vec<u32>, second: Vec<u32>) -> PairTransformation {
        PairTransformation { shape, first, second }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn first(&self) -> &[u32] {
        &self.first
    }

    pub fn second(&self) -> &[u32] {
        &self.second
    }

    /// Image of a point id, or an error if the image pair is not a point of
    /// the space (possible only for non-catalog tables on the complementary
    /// kind).
    pub fn apply(&self, space: &PairSpace, id: u32) -> Result<u32> {
        let p = space.point(id);
        debug_assert_eq!(self.first.len(), space.s_space().len());
        debug_assert_eq!(self.second.len(), space.u_space().len());
        let (s2, u2) = match self.shape {
            Shape::Product => (self.first[p.s as usize], self.second[p.u as usize]),
            Shape::Swap => (self.second[p.u as usize], self.first[p.s as usize]),
        };
        space.point_id(s2, u2).ok_or(Error::ImageNotInSpace(s2, u2))
    }

    /// The whole action as a point permutation, or the first failing image.
    pub fn as_permutation(&self, space: &PairSpace) -> Result<Vec<u32>> {
        let perm: Vec<u32> = (0..space.len() as u32)
            .map(|id| self.apply(space, id))
            .collect::<Result<_>>()?;
        debug_assert_bijective(&perm, space.len());
        Ok(perm)
    }
}

fn bounded_factorial(m: usize, bound: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 2..=m as u128 {
        acc = acc.checked_mul(i)?;
        if acc > bound {
            return None;
        }
    }
    Some(acc)
}

fn push_dedup(
    out: &mut Vec<PairTransformation>,
    seen: &mut HashSet<(u8, Vec<u32>, Vec<u32>)>,
    t: PairTransformation,
) {
    let key = (t.shape as u8, t.first.clone(), t.second.clone());
    if seen.insert(key) {
        out.push(t);
    }
}

/// The transformation catalog of a pair space, deduplicated by action.
///
/// Complementary kind: for n = 2 all f x f and f >< f over arbitrary
/// bijections f of the line set; for n > 2 the semilinear products
/// G_k(l) x G_{n-k}(l), the duality swaps D_k(s) >< D_{n-k}(s), and for
/// n = 2k additionally G_k(l) >< G_k(l) and D_k(s) x D_k(s).
///
/// Full product: for extreme k both components range over arbitrary
/// bijections independently; for 1 < k < n-1 they range independently over
/// the semilinear- and (when applicable) duality-induced tables.
pub fn catalog(space: &Arc<PairSpace>, ceiling: u128) -> Result<Vec<PairTransformation>> {
    let amb = space.ambient();
    let (n, k) = (amb.n(), amb.k());
    let field = amb.field();
    let s_space = space.s_space();
    let u_space = space.u_space();
    let mut out = Vec::new();
    let mut seen = HashSet::new();

    let over = |size: u128| Error::SizeCeiling {
        what: "transformation catalog",
        size,
        ceiling,
    };

    match (space.kind(), n == 2, 1 < k && k < n - 1) {
        (SpaceKind::Complementary, true, _) => {
            // Example for n = 2: arbitrary bijections, same f on both sides.
            let m = s_space.len();
            let count = bounded_factorial(m, ceiling / 2)
                .and_then(|f| f.checked_mul(2))
                .ok_or_else(|| over(u128::MAX))?;
            if count > ceiling {
                return Err(over(count));
            }
            for f in (0..m as u32).permutations(m) {
                push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Product, f.clone(), f.clone()));
                push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Swap, f.clone(), f));
            }
        }
        (SpaceKind::Complementary, false, _) => {
            let families = if n == 2 * k { 4u128 } else { 2 };
            let pre = families
                .checked_mul(gl_order(n, amb.q()))
                .and_then(|x| x.checked_mul(field.e() as u128))
                .ok_or_else(|| over(u128::MAX))?;
            if pre > ceiling {
                return Err(over(pre));
            }
            let maps = enumerate_semilinear(field, n, ceiling)?;
            let products: Vec<(Vec<u32>, Vec<u32>)> = maps
                .par_iter()
                .map(|l| (grass_action(s_space, l), grass_action(u_space, l)))
                .collect();
            let swaps: Vec<(Vec<u32>, Vec<u32>)> = maps
                .par_iter()
                .map(|l| {
                    let s = DualityMap {
                        matrix: l.matrix.clone(),
                        sigma: l.sigma,
                    };
                    (
                        duality_action(s_space, u_space, &s),
                        duality_action(u_space, s_space, &s),
                    )
                })
                .collect();
            for (f1, f2) in &products {
                push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Product, f1.clone(), f2.clone()));
            }
            for (g1, g2) in &swaps {
                push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Swap, g1.clone(), g2.clone()));
            }
            if n == 2 * k {
                // G_k and G_{n-k} coincide, so the semilinear tables double as
                // swap components and the duality tables as product components.
                for (f1, f2) in &products {
                    push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Swap, f1.clone(), f2.clone()));
                }
                for (g1, g2) in &swaps {
                    push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Product, g1.clone(), g2.clone()));
                }
            }
        }
        (SpaceKind::FullProduct, _, false) => {
            // Extreme k: any bijections, independent on the two sides.
            let (ms, mu) = (s_space.len(), u_space.len());
            let count = bounded_factorial(ms, ceiling)
                .and_then(|a| bounded_factorial(mu, ceiling).and_then(|b| a.checked_mul(b)))
                .and_then(|x| x.checked_mul(2))
                .ok_or_else(|| over(u128::MAX))?;
            if count > ceiling {
                return Err(over(count));
            }
            let s_perms: Vec<Vec<u32>> = (0..ms as u32).permutations(ms).collect();
            let u_perms: Vec<Vec<u32>> = (0..mu as u32).permutations(mu).collect();
            for f1 in &s_perms {
                for f2 in &u_perms {
                    push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Product, f1.clone(), f2.clone()));
                }
            }
            // Swap components are bijections across the two sides; ids line
            // up because both Grassmannians have the same size here.
            assert_eq!(ms, mu, "dual dimensions give equally sized Grassmannians");
            for g1 in &s_perms {
                for g2 in &u_perms {
                    push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Swap, g1.clone(), g2.clone()));
                }
            }
        }
        (SpaceKind::FullProduct, _, true) => {
            // Middle k: components range over induced collineations only.
            let maps = enumerate_semilinear(field, n, ceiling)?;
            let mut f1_family: Vec<Vec<u32>> = Vec::new();
            let mut f2_family: Vec<Vec<u32>> = Vec::new();
            let mut g1_family: Vec<Vec<u32>> = Vec::new();
            let mut g2_family: Vec<Vec<u32>> = Vec::new();
            let (mut f1_seen, mut f2_seen, mut g1_seen, mut g2_seen) =
                (HashSet::new(), HashSet::new(), HashSet::new(), HashSet::new());
            for l in &maps {
                let d = DualityMap {
                    matrix: l.matrix.clone(),
                    sigma: l.sigma,
                };
                let g1 = duality_action(s_space, u_space, &d);
                if g1_seen.insert(g1.clone()) {
                    g1_family.push(g1);
                }
                let g2 = duality_action(u_space, s_space, &d);
                if g2_seen.insert(g2.clone()) {
                    g2_family.push(g2);
                }
                let f1 = grass_action(s_space, l);
                if f1_seen.insert(f1.clone()) {
                    f1_family.push(f1);
                }
                let f2 = grass_action(u_space, l);
                if f2_seen.insert(f2.clone()) {
                    f2_family.push(f2);
                }
                if n == 2 * k {
                    // Dualities also act within one side when k = n - k.
                    let d1 = duality_action(s_space, s_space, &d);
                    if f1_seen.insert(d1.clone()) {
                        f1_family.push(d1);
                    }
                    let d2 = duality_action(u_space, u_space, &d);
                    if f2_seen.insert(d2.clone()) {
                        f2_family.push(d2);
                    }
                    let l1 = grass_action(s_space, l);
                    if g1_seen.insert(l1.clone()) {
                        g1_family.push(l1);
                    }
                    let l2 = grass_action(u_space, l);
                    if g2_seen.insert(l2.clone()) {
                        g2_family.push(l2);
                    }
                }
            }
            let count = (f1_family.len() as u128)
                .checked_mul(f2_family.len() as u128)
                .and_then(|p| {
                    (g1_family.len() as u128)
                        .checked_mul(g2_family.len() as u128)
                        .and_then(|s| p.checked_add(s))
                })
                .ok_or_else(|| over(u128::MAX))?;
            if count > ceiling {
                return Err(over(count));
            }
            for f1 in &f1_family {
                for f2 in &f2_family {
                    push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Product, f1.clone(), f2.clone()));
                }
            }
            for g1 in &g1_family {
                for g2 in &g2_family {
                    push_dedup(&mut out, &mut seen, PairTransformation::new(Shape::Swap, g1.clone(), g2.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// An involutory matrix u (u^2 = 1) over odd characteristic, with
/// r = dim U+(u); V = U+(u) + U-(u) directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    matrix: MatrixFq,
    r: usize,
}

impl Involution {
    pub fn from_matrix(matrix: MatrixFq, expected_r: usize) -> Result<Involution> {
        let field = matrix.field().clone();
        if field.p() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        assert_eq!(matrix.rows(), matrix.cols(), "involutions are square matrices");
        if !matrix.multiply(&matrix).is_identity() {
            return Err(Error::NotInvolution);
        }
        let n = matrix.rows();
        let ident = MatrixFq::identity(field, n);
        let r = n - rank(&matrix.sub_matrix(&ident));
        if r != expected_r {
            return Err(Error::WrongInvolutionType {
                got: r,
                expected: expected_r,
            });
        }
        Ok(Involution { matrix, r })
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.matrix
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// U+(u): the fixed space ker(u - 1).
    pub fn plus_space(&self) -> Subspace {
        let ident = MatrixFq::identity(self.matrix.field().clone(), self.matrix.rows());
        Subspace::from_matrix(&kernel_basis(&self.matrix.sub_matrix(&ident).transpose()))
    }

    /// U-(u): ker(u + 1).
    pub fn minus_space(&self) -> Subspace {
        let ident = MatrixFq::identity(self.matrix.field().clone(), self.matrix.rows());
        Subspace::from_matrix(&kernel_basis(&self.matrix.add_matrix(&ident).transpose()))
    }

    /// -u: an (n-r, r)-involution with the eigenspaces swapped.
    pub fn negated(&self) -> Involution {
        let neg1 = self.matrix.field().neg(1);
        Involution {
            matrix: self.matrix.scale(neg1),
            r: self.matrix.rows() - self.r,
        }
    }

    /// gamma(u) = (U+(u), U-(u)) as a point id of the complementary space.
    pub fn gamma(&self, space: &PairSpace) -> Result<u32> {
        if space.kind() != SpaceKind::Complementary {
            return Err(Error::WrongSpaceKind { expected: "complementary" });
        }
        if space.ambient().k() != self.r {
            return Err(Error::WrongInvolutionType {
                got: self.r,
                expected: space.ambient().k(),
            });
        }
        let plus = self.plus_space();
        let minus = self.minus_space();
        let s_id = space
            .s_space()
            .id_of(&plus)
            .expect("U+ has dimension r = k");
        let u_id = space
            .u_space()
            .id_of(&minus)
            .expect("U- has dimension n - r");
        Ok(space
            .point_id(s_id, u_id)
            .expect("the eigenspaces are complementary in odd characteristic"))
    }
}

/// All (k, n-k)-involutions, by ascending matrix code (row-major digits,
/// entry (0,0) least significant).
pub fn enumerate_involutions(ambient: &Ambient) -> Result<Vec<Involution>> {
    enumerate_involutions_with_ceiling(ambient, DEFAULT_INVOLUTION_SCAN_CEILING)
}

pub fn enumerate_involutions_with_ceiling(
    ambient: &Ambient,
    ceiling: u128,
) -> Result<Vec<Involution>> {
    let field = ambient.field();
    if field.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let (n, k, q) = (ambient.n(), ambient.k(), ambient.q());
    let total = (q as u128).pow((n * n) as u32);
    if total > ceiling {
        return Err(Error::SizeCeiling {
            what: "involution matrix scan",
            size: total,
            ceiling,
        });
    }
    let ident = MatrixFq::identity(field.clone(), n);
    let out: Vec<Involution> = (0..total as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut entries = Vec::with_capacity(n * n);
            let mut rest = code;
            for _ in 0..n * n {
                entries.push((rest % q) as Fe);
                rest /= q;
            }
            let m = MatrixFq::new(field.clone(), n, n, entries);
            if !m.multiply(&m).is_identity() {
                return None;
            }
            let r = n - rank(&m.sub_matrix(&ident));
            (r == k).then_some(Involution { matrix: m, r })
        })
        .collect();
    Ok(out)
}

/// True iff w - 1 has rank one and squares to zero: w fixes a hyperplane
/// pointwise and induces the identity modulo it.
pub fn is_transvection(w: &MatrixFq) -> bool {
    assert_eq!(w.rows(), w.cols());
    let ident = MatrixFq::identity(w.field().clone(), w.rows());
    let d = w.sub_matrix(&ident);
    rank(&d) == 1 && d.multiply(&d).is_zero()
}

/// Adjacency of involutions, defined through their eigenspace pairs.
pub fn involutions_adjacent(u: &Involution, v: &Involution) -> bool {
    let (up, um) = (u.plus_space(), u.minus_space());
    let (vp, vm) = (v.plus_space(), v.minus_space());
    (up == vp && adjacent(&um, &vm)) || (um == vm && adjacent(&up, &vp))
}

/// The matrix-side criterion: both products uv and vu are transvections
/// (necessarily != 1).
pub fn transvection_products(u: &Involution, v: &Involution) -> bool {
    is_transvection(&u.matrix.multiply(&v.matrix)) && is_transvection(&v.matrix.multiply(&u.matrix))
}
