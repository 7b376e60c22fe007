//! Exact graph-automorphism enumeration: equitable-partition refinement with
//! individualization backtracking, run over paired ordered partitions so the
//! search produces mappings rather than canonical labels.  Every leaf is
//! verified explicitly, so pruning only affects speed, never soundness.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::pairs::RelationGraph;

/// Default bound on vertices for full group enumeration; the search is
/// worst-case exponential and meant for small certified cases.
pub const DEFAULT_AUTOMORPHISM_VERTEX_CEILING: usize = 64;

/// Closure of the returned group is asserted exhaustively only up to this
/// group order (the check is quadratic in the order).
const CLOSURE_ASSERT_BOUND: usize = 1_000;

type Partition = Vec<Vec<usize>>;

/// The full automorphism group of the graph as point permutations, sorted
/// lexicographically.  Identity membership and inverse closure are always
/// asserted; composition closure for small groups.
pub fn graph_automorphisms(graph: &RelationGraph, vertex_ceiling: usize) -> Result<Vec<Vec<u32>>> {
    if graph.len() > vertex_ceiling {
        return Err(Error::VertexCeiling {
            vertices: graph.len(),
            ceiling: vertex_ceiling,
        });
    }
    Ok(graph_automorphisms_rows(graph.rows()))
}

/// Core enumeration over raw symmetric neighbor rows.
pub fn graph_automorphisms_rows(rows: &[BitSet]) -> Vec<Vec<u32>> {
    let m = rows.len();
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let all: Vec<usize> = (0..m).collect();
    search(rows, vec![all.clone()], vec![all], &mut out);
    out.sort_unstable();

    let identity: Vec<u32> = (0..m as u32).collect();
    assert!(
        out.binary_search(&identity).is_ok(),
        "the automorphism group contains the identity"
    );
    for p in &out {
        let mut inv = vec![0u32; m];
        for (i, &x) in p.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        assert!(out.binary_search(&inv).is_ok(), "closed under inverses");
    }
    if out.len() <= CLOSURE_ASSERT_BOUND {
        for p in &out {
            for q in &out {
                let composed: Vec<u32> = q.iter().map(|&x| p[x as usize]).collect();
                assert!(
                    out.binary_search(&composed).is_ok(),
                    "closed under composition"
                );
            }
        }
    }
    out
}

fn search(rows: &[BitSet], mut p1: Partition, mut p2: Partition, out: &mut Vec<Vec<u32>>) {
    if !refine_pair(rows, &mut p1, &mut p2) {
        return;
    }
    match p1.iter().position(|c| c.len() > 1) {
        None => {
            // Both partitions are discrete; cells pair up by position.
            let m = rows.len();
            let mut perm = vec![0u32; m];
            for (c1, c2) in p1.iter().zip(p2.iter()) {
                perm[c1[0]] = c2[0] as u32;
            }
            if is_automorphism(rows, &perm) {
                out.push(perm);
            }
        }
        Some(i) => {
            // Map the first vertex of the chosen source cell to every vertex
            // of the positionally matching target cell.  Each automorphism
            // consistent with the current pairing picks exactly one branch,
            // so no duplicates arise.
            let v = p1[i][0];
            let targets = p2[i].clone();
            for w in targets {
                let mut q1 = p1.clone();
                let mut q2 = p2.clone();
                individualize(&mut q1, i, v);
                individualize(&mut q2, i, w);
                search(rows, q1, q2, out);
            }
        }
    }
}

/// Splits cell `i` into [v] followed by the remaining members.
fn individualize(p: &mut Partition, i: usize, v: usize) {
    let rest: Vec<usize> = p[i].iter().copied().filter(|&x| x != v).collect();
    p.splice(i..=i, [vec![v], rest]);
}

/// Refines both partitions to the common equitable refinement, keeping their
/// cell structures in lockstep.  Returns false if the neighbor-count shapes
/// diverge, which no automorphism consistent with the pairing can survive.
fn refine_pair(rows: &[BitSet], p1: &mut Partition, p2: &mut Partition) -> bool {
    debug_assert_eq!(p1.len(), p2.len());
    'restart: loop {
        for t in 0..p1.len() {
            for s in 0..p1.len() {
                let frag1 = fragment(rows, &p1[t], &p1[s]);
                let frag2 = fragment(rows, &p2[t], &p2[s]);
                if frag1.len() != frag2.len()
                    || frag1
                        .iter()
                        .zip(frag2.iter())
                        .any(|((k1, c1), (k2, c2))| k1 != k2 || c1.len() != c2.len())
                {
                    return false;
                }
                if frag1.len() > 1 {
                    p1.splice(t..=t, frag1.into_iter().map(|(_, c)| c));
                    p2.splice(t..=t, frag2.into_iter().map(|(_, c)| c));
                    continue 'restart;
                }
            }
        }
        return true;
    }
}

/// Members of `cell` grouped by neighbor count into `splitter`, ordered by
/// ascending count, preserving in-cell order within a group.
fn fragment(rows: &[BitSet], cell: &[usize], splitter: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let mut splitter_set = BitSet::new(rows.len());
    for &v in splitter {
        splitter_set.insert(v);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for &v in cell {
        let key = rows[v].intersection_count(&splitter_set);
        groups.entry(key).or_default().push(v);
    }
    groups.into_iter().collect()
}

fn is_automorphism(rows: &[BitSet], perm: &[u32]) -> bool {
    // perm is bijective by construction (target cells partition the
    // vertices), so forward edge preservation already forces equality of the
    // edge sets.
    for v in 0..rows.len() {
        for w in rows[v].iter() {
            if !rows[perm[v] as usize].contains(perm[w] as usize) {
                return false;
            }
        }
    }
    true
}
