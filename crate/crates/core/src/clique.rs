//! Maximal clique enumeration (Bron–Kerbosch with pivoting) on bitmask rows.

use crate::graph::{BitIter, Graph, VertexSet};

/// Maximal cliques of a graph with up to 32 vertices given as neighbor masks,
/// sorted by (cardinality, mask value). The 0-vertex graph has none.
pub(crate) fn maximal_clique_masks(rows: &[u32]) -> Vec<u32> {
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    expand(rows, 0, all, 0, &mut out);
    out.sort_by_key(|&c| (c.count_ones(), c));
    out
}

fn expand(rows: &[u32], clique: u32, mut candidates: u32, mut excluded: u32, out: &mut Vec<u32>) {
    if candidates == 0 {
        if excluded == 0 {
            out.push(clique);
        }
        return;
    }
    let pivot = BitIter(candidates | excluded)
        .max_by_key(|&u| (candidates & rows[u]).count_ones())
        .expect("candidates are nonempty");
    for v in BitIter(candidates & !rows[pivot]) {
        let bit = 1u32 << v;
        expand(rows, clique | bit, candidates & rows[v], excluded & rows[v], out);
        candidates &= !bit;
        excluded |= bit;
    }
}

pub(crate) fn widen(g: &Graph) -> Vec<u32> {
    g.rows().iter().map(|&r| r as u32).collect()
}

/// All inclusion-maximal cliques, sorted by (cardinality, bitset value).
pub fn maximal_cliques(g: &Graph) -> Vec<VertexSet> {
    maximal_clique_masks(&widen(g))
        .into_iter()
        .map(|c| VertexSet::from_bits(c as u16))
        .collect()
}

/// The clique number ω(G); 1 for edgeless graphs with `n >= 1`, 0 for `n = 0`.
pub fn clique_number(g: &Graph) -> usize {
    clique_number_of_masks(&widen(g))
}

pub(crate) fn clique_number_of_masks(rows: &[u32]) -> usize {
    maximal_clique_masks(rows)
        .last()
        .map_or(0, |c| c.count_ones() as usize)
}
