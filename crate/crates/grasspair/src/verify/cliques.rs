//! Maximal-clique enumeration over bitset adjacency rows: Bron–Kerbosch with
//! pivoting, seeded by a degeneracy order.  Output is fully sorted so runs
//! are reproducible byte for byte.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::pairs::RelationGraph;

/// Default bound on the vertex count fed to the clique search.
pub const DEFAULT_CLIQUE_VERTEX_CEILING: usize = 5_000;

/// All maximal cliques of a relation graph, each sorted ascending, the list
/// sorted lexicographically.
pub fn maximal_cliques(graph: &RelationGraph, vertex_ceiling: usize) -> Result<Vec<Vec<u32>>> {
    if graph.len() > vertex_ceiling {
        return Err(Error::VertexCeiling {
            vertices: graph.len(),
            ceiling: vertex_ceiling,
        });
    }
    Ok(maximal_cliques_rows(graph.rows()))
}

/// Core search over raw neighbor rows (rows[v] must exclude v itself and be
/// symmetric).
pub fn maximal_cliques_rows(rows: &[BitSet]) -> Vec<Vec<u32>> {
    let m = rows.len();
    debug_assert!(rows.iter().all(|r| r.universe() == m));
    let order = degeneracy_order(rows);
    // position[v] = index of v in the degeneracy order.
    let mut position = vec![0usize; m];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }

    let mut out = Vec::new();
    let mut r = Vec::new();
    for &v in &order {
        let mut p = BitSet::new(m);
        let mut x = BitSet::new(m);
        for w in rows[v].iter() {
            if position[w] > position[v] {
                p.insert(w);
            } else {
                x.insert(w);
            }
        }
        r.push(v as u32);
        expand(rows, &mut r, p, x, &mut out);
        r.pop();
    }
    for clique in &mut out {
        clique.sort_unstable();
    }
    out.sort_unstable();
    out
}

fn expand(rows: &[BitSet], r: &mut Vec<u32>, mut p: BitSet, mut x: BitSet, out: &mut Vec<Vec<u32>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    // Pivot from P ∪ X with the most neighbors in P; ties to the smallest
    // vertex for determinism.
    let mut pivot = usize::MAX;
    let mut best = usize::MAX;
    for u in p.iter().chain(x.iter()) {
        let gain = rows[u].intersection_count(&p);
        if pivot == usize::MAX || gain > best {
            pivot = u;
            best = gain;
        }
    }
    let candidates: Vec<usize> = p.iter().filter(|&v| !rows[pivot].contains(v)).collect();
    for v in candidates {
        let np = p.intersection(&rows[v]);
        let nx = x.intersection(&rows[v]);
        r.push(v as u32);
        expand(rows, r, np, nx, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Vertices in degeneracy order: repeatedly remove a minimum-degree vertex
/// (ties to the smallest id).
fn degeneracy_order(rows: &[BitSet]) -> Vec<usize> {
    let m = rows.len();
    let mut remaining = BitSet::new(m);
    for v in 0..m {
        remaining.insert(v);
    }
    let mut degree: Vec<usize> = rows.iter().map(|r| r.count()).collect();
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let v = remaining
            .iter()
            .min_by_key(|&v| degree[v])
            .expect("vertices remain");
        remaining.remove(v);
        order.push(v);
        for w in rows[v].iter() {
            if remaining.contains(w) {
                degree[w] -= 1;
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(m: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut rows = vec![BitSet::new(m); m];
        for &(a, b) in edges {
            rows[a].insert(b);
            rows[b].insert(a);
        }
        rows
    }

    /// Oracle: scan all 2^m subsets for maximal cliques.  Only for tiny m.
    fn cliques_by_scan(rows: &[BitSet]) -> Vec<Vec<u32>> {
        let m = rows.len();
        assert!(m <= 15);
        let is_clique = |mask: u32| -> bool {
            for (a, row) in rows.iter().enumerate() {
                if mask >> a & 1 == 0 {
                    continue;
                }
                for b in a + 1..m {
                    if mask >> b & 1 == 1 && !row.contains(b) {
                        return false;
                    }
                }
            }
            true
        };
        let mut out = Vec::new();
        for mask in 1u32..1 << m {
            if !is_clique(mask) {
                continue;
            }
            let maximal = (0..m).all(|v| mask >> v & 1 == 1 || !is_clique(mask | 1 << v));
            if maximal {
                let mut c: Vec<u32> = (0..m as u32).filter(|&v| mask >> v & 1 == 1).collect();
                c.sort_unstable();
                out.push(c);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn single_vertex_graph_has_one_clique() {
        assert_eq!(maximal_cliques_rows(&graph(1, &[])), vec![vec![0]]);
    }

    #[test]
    fn edgeless_graph_yields_singletons() {
        let got = maximal_cliques_rows(&graph(4, &[]));
        assert_eq!(got, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn complete_graph_yields_one_clique() {
        let edges: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        assert_eq!(maximal_cliques_rows(&graph(5, &edges)), vec![vec![0, 1, 2, 3, 4]]);
    }

    #[test]
    fn hexagon_cliques_are_its_edges() {
        let rows = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let got = maximal_cliques_rows(&rows);
        assert_eq!(
            got,
            vec![vec![0, 1], vec![0, 5], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]]
        );
    }

    #[test]
    fn triangle_with_pendant() {
        let rows = graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert_eq!(maximal_cliques_rows(&rows), vec![vec![0, 1, 2], vec![2, 3]]);
    }

    #[test]
    fn matches_the_subset_scan_oracle_on_pseudorandom_graphs() {
        // Deterministic LCG-driven dense and sparse graphs on 11 vertices.
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for density in [4u64, 8, 12] {
            for _ in 0..6 {
                let m = 11;
                let mut edges = Vec::new();
                for a in 0..m {
                    for b in a + 1..m {
                        if next() % 16 < density {
                            edges.push((a, b));
                        }
                    }
                }
                let rows = graph(m, &edges);
                assert_eq!(maximal_cliques_rows(&rows), cliques_by_scan(&rows));
            }
        }
    }
}
