//! The space G of complementary subspace pairs, the full product
//! G_k x G_{n-k}, pair adjacency and closeness, G(P,T) subsets, the
//! constructive connectedness algorithm, and perp-sets / Segre lines.
//!
//! Points carry dense ids (s-id major, u-id minor), and both relations are
//! materialized as symmetric bitset graphs over those ids.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{Fe, FieldTable};
use crate::grassmann::{complementary, pencil, Ambient, Grassmannian, Subspace};
use crate::linalg::MatrixFq;

/// Default bound on the number of points a pair space may hold.
pub const DEFAULT_PAIR_CEILING: u128 = 2_000_000;

/// Default bound on the vertex count of a materialized relation graph
/// (memory grows quadratically in it).
pub const DEFAULT_GRAPH_VERTEX_CEILING: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// G: only pairs with S + U = V.
    Complementary,
    /// The whole cartesian product G_k x G_{n-k}.
    FullProduct,
}

impl SpaceKind {
    pub fn label(&self) -> &'static str {
        match self {
            SpaceKind::Complementary => "g",
            SpaceKind::FullProduct => "full",
        }
    }
}

/// One point (S, U), stored as component ids into the two Grassmannians.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairPoint {
    pub id: u32,
    pub s: u32,
    pub u: u32,
    pub complementary: bool,
}

/// An enumerated pair space over a fixed ambient.
pub struct PairSpace {
    ambient: Ambient,
    kind: SpaceKind,
    s_space: Arc<Grassmannian>,
    u_space: Arc<Grassmannian>,
    points: Vec<PairPoint>,
    index: HashMap<(u32, u32), u32>,
    /// Per s-id: the u-ids complementary to it (independent of `kind`).
    complements: Vec<BitSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Adjacency,
    Closeness,
}

impl Relation {
    pub fn label(&self) -> &'static str {
        match self {
            Relation::Adjacency => "adj",
            Relation::Closeness => "close",
        }
    }
}

impl PairSpace {
    pub fn enumerate(ambient: &Ambient, kind: SpaceKind) -> Result<Arc<PairSpace>> {
        Self::enumerate_with_ceiling(ambient, kind, DEFAULT_PAIR_CEILING)
    }

    pub fn enumerate_with_ceiling(
        ambient: &Ambient,
        kind: SpaceKind,
        ceiling: u128,
    ) -> Result<Arc<PairSpace>> {
        let (n, k, q) = (ambient.n(), ambient.k(), ambient.q());
        let gk = crate::grassmann::gaussian_binomial(n, k, q);
        let expected: u128 = match kind {
            SpaceKind::Complementary => gk * (q as u128).pow((k * (n - k)) as u32),
            SpaceKind::FullProduct => gk * crate::grassmann::gaussian_binomial(n, n - k, q),
        };
        if expected > ceiling {
            return Err(Error::SizeCeiling {
                what: "pair space",
                size: expected,
                ceiling,
            });
        }

        let s_space = Grassmannian::enumerate(ambient, k)?;
        let u_space = Grassmannian::enumerate(ambient, n - k)?;
        let field = ambient.field().clone();

        // Complement bitsets per s-id, computed by a rank scan over all
        // (s, u) pairs; parallel over s.
        let complements: Vec<BitSet> = (0..s_space.len())
            .into_par_iter()
            .map_init(
                || vec![0 as Fe; n * n],
                |scratch, s_id| {
                    let s_basis = s_space.get(s_id as u32).basis();
                    let mut row = BitSet::new(u_space.len());
                    for u_id in 0..u_space.len() {
                        let u_basis = u_space.get(u_id as u32).basis();
                        if stacked_rank(&field, scratch, n, s_basis, u_basis) == n {
                            row.insert(u_id);
                        }
                    }
                    row
                },
            )
            .collect();

        let mut points = Vec::with_capacity(expected as usize);
        let mut index = HashMap::with_capacity(expected as usize);
        for s_id in 0..s_space.len() as u32 {
            for u_id in 0..u_space.len() as u32 {
                let is_compl = complements[s_id as usize].contains(u_id as usize);
                if kind == SpaceKind::Complementary && !is_compl {
                    continue;
                }
                let id = points.len() as u32;
                points.push(PairPoint {
                    id,
                    s: s_id,
                    u: u_id,
                    complementary: is_compl,
                });
                index.insert((s_id, u_id), id);
            }
        }
        assert_eq!(points.len() as u128, expected, "pair count must match the closed form");

        Ok(Arc::new(PairSpace {
            ambient: ambient.clone(),
            kind,
            s_space,
            u_space,
            points,
            index,
            complements,
        }))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: u32) -> &PairPoint {
        &self.points[id as usize]
    }

    pub fn points(&self) -> &[PairPoint] {
        &self.points
    }

    pub fn point_id(&self, s: u32, u: u32) -> Option<u32> {
        self.index.get(&(s, u)).copied()
    }

    /// The Grassmannian of first components (dimension k).
    pub fn s_space(&self) -> &Arc<Grassmannian> {
        &self.s_space
    }

    /// The Grassmannian of second components (dimension n - k).
    pub fn u_space(&self) -> &Arc<Grassmannian> {
        &self.u_space
    }

    /// u-ids complementary to the given s-id.
    pub fn complements_of(&self, s_id: u32) -> &BitSet {
        &self.complements[s_id as usize]
    }

    pub fn s_subspace(&self, id: u32) -> &Subspace {
        self.s_space.get(self.points[id as usize].s)
    }

    pub fn u_subspace(&self, id: u32) -> &Subspace {
        self.u_space.get(self.points[id as usize].u)
    }

    /// Pair adjacency: (S=S' and U~U') or (S~S' and U=U').
    /// Symmetric and anti-reflexive.
    pub fn pair_adjacent(&self, a: u32, b: u32) -> bool {
        let (pa, pb) = (&self.points[a as usize], &self.points[b as usize]);
        if pa.s == pb.s {
            self.u_space.adjacency_sets()[pa.u as usize].contains(pb.u as usize)
        } else if pa.u == pb.u {
            self.s_space.adjacency_sets()[pa.s as usize].contains(pb.s as usize)
        } else {
            false
        }
    }

    /// Closeness: the pairs agree in exactly one component.
    pub fn pair_close(&self, a: u32, b: u32) -> bool {
        let (pa, pb) = (&self.points[a as usize], &self.points[b as usize]);
        (pa.s == pb.s) != (pa.u == pb.u)
    }

    /// G(P, T): the points (S, U) with S incident P and U incident T.
    pub fn sub_g(&self, p: &Subspace, t: &Subspace) -> Vec<u32> {
        let s_hits: Vec<bool> = self
            .s_space
            .iter()
            .map(|s| crate::grassmann::incident(s, p))
            .collect();
        let u_hits: Vec<bool> = self
            .u_space
            .iter()
            .map(|u| crate::grassmann::incident(u, t))
            .collect();
        self.points
            .iter()
            .filter(|pt| s_hits[pt.s as usize] && u_hits[pt.u as usize])
            .map(|pt| pt.id)
            .collect()
    }

    /// All points adjacent-or-equal to every member of `set`.
    /// Defined on the full product (the perp relation lives there).
    pub fn perp(&self, set: &[u32]) -> Result<Vec<u32>> {
        if self.kind != SpaceKind::FullProduct {
            return Err(Error::WrongSpaceKind { expected: "full product" });
        }
        for &m in set {
            if m as usize >= self.points.len() {
                return Err(Error::PointNotInSpace(m));
            }
        }
        Ok((0..self.points.len() as u32)
            .filter(|&p| set.iter().all(|&m| p == m || self.pair_adjacent(p, m)))
            .collect())
    }

    /// perp(perp({a, b})) for two adjacent points: the Segre line through
    /// them ({S} x pencil or pencil x {U}).
    pub fn double_perp(&self, a: u32, b: u32) -> Result<Vec<u32>> {
        if self.kind != SpaceKind::FullProduct {
            return Err(Error::WrongSpaceKind { expected: "full product" });
        }
        if a as usize >= self.points.len() || b as usize >= self.points.len() {
            return Err(Error::PointNotInSpace(a.max(b)));
        }
        if !self.pair_adjacent(a, b) {
            return Err(Error::NotAdjacent);
        }
        let first = self.perp(&[a, b])?;
        self.perp(&first)
    }

    /// Path a = p0 ~ p1 ~ ... ~ pi = b inside G, following the constructive
    /// connectedness argument: when the first components agree the second is
    /// walked through hyperplane-controlled neighbors (W with
    /// U∩U' ⊂ W ⊂ U, H = W ⊕ S, U'' = P' ⊕ W); otherwise the path detours
    /// through a common complement of both first components.
    ///
    /// Returns the full vertex sequence; `a == b` yields the single-vertex
    /// sequence (a path of zero steps).
    pub fn connect_path(&self, a: u32, b: u32) -> Result<Vec<u32>> {
        if self.kind != SpaceKind::Complementary {
            return Err(Error::WrongSpaceKind { expected: "complementary" });
        }
        if a as usize >= self.points.len() {
            return Err(Error::PointNotInSpace(a));
        }
        if b as usize >= self.points.len() {
            return Err(Error::PointNotInSpace(b));
        }
        if a == b {
            return Ok(vec![a]);
        }
        let (pa, pb) = (self.points[a as usize], self.points[b as usize]);
        if pa.s == pb.s {
            return Ok(self.walk_second(pa.s, pa.u, pb.u));
        }
        if pa.u == pb.u {
            return Ok(self.walk_first(pa.u, pa.s, pb.s));
        }
        // Common complement of S and S': both component walks can pass
        // through it.  The least such u-id keeps the output deterministic.
        let common = self.complements[pa.s as usize]
            .intersection(&self.complements[pb.s as usize])
            .first()
            .expect("two subspaces of equal dimension always share a complement") as u32;

        let mut path = self.walk_second(pa.s, pa.u, common);
        let mid = self.walk_first(common, pa.s, pb.s);
        path.extend_from_slice(&mid[1..]);
        let tail = self.walk_second(pb.s, common, pb.u);
        path.extend_from_slice(&tail[1..]);
        Ok(path)
    }

    /// Fixed first component `s_id`: walk the second from `from` to `to`.
    fn walk_second(&self, s_id: u32, from: u32, to: u32) -> Vec<u32> {
        let fixed = self.s_space.get(s_id);
        let chain = complement_chain(fixed, self.u_space.get(from), self.u_space.get(to));
        chain
            .iter()
            .map(|u| {
                let u_id = self.u_space.id_of(u).expect("chain members are enumerated subspaces");
                self.point_id(s_id, u_id).expect("chain members are complements of S")
            })
            .collect()
    }

    /// Fixed second component `u_id`: walk the first from `from` to `to`.
    fn walk_first(&self, u_id: u32, from: u32, to: u32) -> Vec<u32> {
        let fixed = self.u_space.get(u_id);
        let chain = complement_chain(fixed, self.s_space.get(from), self.s_space.get(to));
        chain
            .iter()
            .map(|s| {
                let s_id = self.s_space.id_of(s).expect("chain members are enumerated subspaces");
                self.point_id(s_id, u_id).expect("chain members are complements of U")
            })
            .collect()
    }
}

impl std::fmt::Debug for PairSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PairSpace({:?}, kind {:?}, {} points)",
            self.ambient,
            self.kind,
            self.len()
        )
    }
}

/// Chain of complements of `fixed` from `start` to `target`, consecutive
/// members adjacent.  Each step picks W ⊇ start∩target inside the current
/// subspace by extending with its first suitable canonical basis rows, forms
/// the hyperplane H = W ⊕ fixed, and replaces the current subspace by
/// P' ⊕ W where P' is spanned by the first basis row of `target` outside H.
fn complement_chain(fixed: &Subspace, start: &Subspace, target: &Subspace) -> Vec<Subspace> {
    let d = start.dim();
    let field = fixed.field().clone();
    let n = fixed.ambient_n();
    debug_assert!(complementary(fixed, start) && complementary(fixed, target));

    let mut chain = vec![start.clone()];
    let mut cur = start.clone();
    let mut guard = 0;
    while cur != *target {
        guard += 1;
        assert!(guard <= n + 1, "chain length is bounded by the dimension");

        let inter = cur.intersection(target);
        // W: extend the intersection to dimension d-1 inside `cur`.
        let mut w = inter.clone();
        for r in 0..cur.basis().rows() {
            if w.dim() == d - 1 {
                break;
            }
            let row = cur.basis().row(r).to_vec();
            if !w.contains_vector(&row) {
                w = w.sum(&Subspace::from_matrix(&MatrixFq::from_rows(
                    field.clone(),
                    n,
                    &[row],
                )));
            }
        }
        assert_eq!(w.dim(), d - 1);

        let h = w.sum(fixed);
        assert_eq!(h.dim(), n - 1, "W ⊕ fixed is a hyperplane");

        let p_row = (0..target.basis().rows())
            .map(|r| target.basis().row(r).to_vec())
            .find(|row| !h.contains_vector(row))
            .expect("target is a complement of `fixed`, hence not inside H");
        let p_prime = Subspace::from_matrix(&MatrixFq::from_rows(field.clone(), n, &[p_row]));

        let next = w.sum(&p_prime);
        assert_eq!(next.dim(), d);
        assert!(complementary(fixed, &next), "P' ⊕ W is a complement of the fixed side");
        assert!(crate::grassmann::adjacent(&cur, &next));
        debug_assert!(next.intersection(target).dim() > inter.dim(), "progress toward the target");
        chain.push(next.clone());
        cur = next;
    }
    chain
}

/// Rank of the two bases stacked, computed in a caller-provided scratch
/// buffer to keep pair enumeration allocation-free.
fn stacked_rank(
    field: &Arc<FieldTable>,
    scratch: &mut [Fe],
    n: usize,
    a: &MatrixFq,
    b: &MatrixFq,
) -> usize {
    let rows = a.rows() + b.rows();
    debug_assert!(rows * n <= scratch.len());
    scratch[..a.rows() * n].copy_from_slice(a.entries());
    scratch[a.rows() * n..rows * n].copy_from_slice(b.entries());

    let m = &mut scratch[..rows * n];
    let mut rank = 0;
    for col in 0..n {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in 0..n {
                m.swap(pivot * n + c, rank * n + c);
            }
        }
        let inv = field.inv(m[rank * n + col]);
        for r in rank + 1..rows {
            let factor = m[r * n + col];
            if factor == 0 {
                continue;
            }
            let scale = field.mul(factor, inv);
            for c in col..n {
                let sub = field.mul(scale, m[rank * n + c]);
                m[r * n + c] = field.sub(m[r * n + c], sub);
            }
        }
        rank += 1;
    }
    rank
}

/// A symmetric, loop-free relation graph over the points of one space.
pub struct RelationGraph {
    space: Arc<PairSpace>,
    relation: Relation,
    rows: Vec<BitSet>,
    edge_count: u64,
}

impl RelationGraph {
    pub fn space(&self) -> &Arc<PairSpace> {
        &self.space
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn linked(&self, a: u32, b: u32) -> bool {
        self.rows[a as usize].contains(b as usize)
    }

    pub fn neighbors(&self, a: u32) -> &BitSet {
        &self.rows[a as usize]
    }

    pub fn degree(&self, a: u32) -> usize {
        self.rows[a as usize].count()
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// Edges as (a, b) with a < b, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count as usize);
        for a in 0..self.rows.len() {
            for b in self.rows[a].iter() {
                if b > a {
                    out.push((a as u32, b as u32));
                }
            }
        }
        out
    }
}

pub fn build_graph(space: &Arc<PairSpace>, relation: Relation) -> Result<RelationGraph> {
    build_graph_with_ceiling(space, relation, DEFAULT_GRAPH_VERTEX_CEILING)
}

pub fn build_graph_with_ceiling(
    space: &Arc<PairSpace>,
    relation: Relation,
    vertex_ceiling: usize,
) -> Result<RelationGraph> {
    let m = space.len();
    if m > vertex_ceiling {
        return Err(Error::VertexCeiling {
            vertices: m,
            ceiling: vertex_ceiling,
        });
    }
    if relation == Relation::Adjacency {
        // Force the component adjacency caches before the parallel region.
        space.s_space().adjacency_sets();
        space.u_space().adjacency_sets();
    }
    let rows: Vec<BitSet> = (0..m as u32)
        .into_par_iter()
        .map(|a| {
            let mut row = BitSet::new(m);
            match relation {
                Relation::Closeness => {
                    for b in 0..m as u32 {
                        if b != a && space.pair_close(a, b) {
                            row.insert(b as usize);
                        }
                    }
                }
                Relation::Adjacency => {
                    let pa = *space.point(a);
                    for u in space.u_space().adjacency_sets()[pa.u as usize].iter() {
                        if let Some(b) = space.point_id(pa.s, u as u32) {
                            row.insert(b as usize);
                        }
                    }
                    for s in space.s_space().adjacency_sets()[pa.s as usize].iter() {
                        if let Some(b) = space.point_id(s as u32, pa.u) {
                            row.insert(b as usize);
                        }
                    }
                }
            }
            row
        })
        .collect();

    let degree_total: u64 = rows.iter().map(|r| r.count() as u64).sum();
    debug_assert!(
        (0..m).all(|a| rows[a].iter().all(|b| rows[b].contains(a))),
        "relation rows must be symmetric"
    );
    debug_assert!((0..m).all(|a| !rows[a].contains(a)), "no self-loops");
    Ok(RelationGraph {
        space: space.clone(),
        relation,
        rows,
        edge_count: degree_total / 2,
    })
}

/// Members of the pencil between `bottom` and `top`, paired with a fixed
/// component: the Segre line {S} x pencil (when `fix_first`) or pencil x {U}.
/// Used as the closed-form oracle for double_perp.
pub fn segre_line(
    space: &PairSpace,
    fixed_id: u32,
    bottom: &Subspace,
    top: &Subspace,
    fix_first: bool,
) -> Result<Vec<u32>> {
    let members = pencil(bottom, top)?;
    let mut out = Vec::with_capacity(members.len());
    for m in &members {
        let id = if fix_first {
            let u_id = space
                .u_space()
                .id_of(m)
                .ok_or(Error::PointNotInSpace(fixed_id))?;
            space.point_id(fixed_id, u_id)
        } else {
            let s_id = space
                .s_space()
                .id_of(m)
                .ok_or(Error::PointNotInSpace(fixed_id))?;
            space.point_id(s_id, fixed_id)
        };
        out.push(id.ok_or(Error::PointNotInSpace(fixed_id))?);
    }
    out.sort_unstable();
    Ok(out)
}
