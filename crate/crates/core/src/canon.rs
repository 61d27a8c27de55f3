//! Canonical labeling for graphs with at most 16 vertices.
//!
//! Individualization-refinement search: the unit partition is refined to an
//! equitable ordered partition (degrees first, then counts into every cell),
//! the first non-singleton cell is split by individualizing each of its
//! vertices in turn, and every discrete leaf yields a vertex ordering. The
//! canonical form is the lexicographically smallest upper-triangle adjacency
//! string over all leaves. Children are skipped when they are twins of, or
//! in the same orbit as, an explored sibling under automorphisms found so far
//! that fix the current path.

use std::fmt;

use crate::graph::{pair_count, BitIter, Graph, Permutation};

/// Relabeling-invariant byte string: `n`, then the upper triangle of the
/// canonically relabeled adjacency matrix (row-major, MSB first, zero padded).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    fn from_code(n: usize, code: u128) -> Self {
        let m = pair_count(n);
        let mut bytes = vec![0u8; 1 + m.div_ceil(8)];
        bytes[0] = n as u8;
        for i in 0..m {
            let bit = (code >> (m - 1 - i) & 1) as u8;
            bytes[1 + i / 8] |= bit << (7 - i % 8);
        }
        CanonicalForm(bytes)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

/// Stored automorphisms beyond this count are dropped; pruning gets weaker
/// but stays sound.
const MAX_STORED_AUTOMORPHISMS: usize = 256;

struct Search<'a> {
    rows: &'a [u16],
    n: usize,
    twins: Vec<u16>,
    best: Option<(u128, Vec<u8>)>,
    automorphisms: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, cells: Vec<u16>, path: &mut Vec<u8>) {
        if cells.len() == self.n {
            self.leaf(&cells);
            return;
        }
        let target = cells
            .iter()
            .position(|c| c.count_ones() > 1)
            .expect("a non-discrete partition has a non-singleton cell");
        let cell = cells[target];
        let mut explored: u16 = 0;
        for v in BitIter(cell as u32) {
            if explored & self.twins[v] != 0 || self.same_orbit(v, explored, path) {
                continue;
            }
            explored |= 1 << v;
            let mut child = cells.clone();
            child[target] = cell & !(1 << v);
            child.insert(target, 1 << v);
            refine(self.rows, &mut child);
            path.push(v as u8);
            self.run(child, path);
            path.pop();
        }
    }

    fn leaf(&mut self, cells: &[u16]) {
        let order: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let code = leaf_code(self.rows, &order);
        match &self.best {
            Some((best, _)) if code > *best => {}
            Some((best, best_order)) if code == *best => {
                if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                    let mut images = vec![0u8; self.n];
                    for (&from, &to) in best_order.iter().zip(&order) {
                        images[from as usize] = to;
                    }
                    self.automorphisms.push(images);
                }
            }
            _ => self.best = Some((code, order)),
        }
    }

    /// Whether `v` shares an orbit with an explored vertex under the group
    /// generated by the stored automorphisms that fix `path` pointwise.
    fn same_orbit(&self, v: usize, explored: u16, path: &[u8]) -> bool {
        if explored == 0 || self.automorphisms.is_empty() {
            return false;
        }
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x as u8), find(&mut parent, y));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v as u8);
        BitIter(explored as u32).any(|u| find(&mut parent, u as u8) == root)
    }
}

/// Upper-triangle adjacency string of the ordering, first pair most significant.
fn leaf_code(rows: &[u16], order: &[u8]) -> u128 {
    let mut code = 0u128;
    for (i, &u) in order.iter().enumerate() {
        let row = rows[u as usize];
        for &w in &order[i + 1..] {
            code = code << 1 | (row >> w & 1) as u128;
        }
    }
    code
}

/// Refines an ordered partition until every cell is equitable: all vertices
/// of a cell have the same number of neighbors in every cell. Fragments of a
/// split cell are ordered by increasing neighbor count.
fn refine(rows: &[u16], cells: &mut Vec<u16>) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell & cell.wrapping_sub(1) == 0 {
                    continue;
                }
                let mut by_count = [0u16; 17];
                for v in BitIter(cell as u32) {
                    by_count[(rows[v] & splitter).count_ones() as usize] |= 1 << v;
                }
                if by_count.iter().filter(|&&f| f != 0).count() == 1 {
                    continue;
                }
                let fragments: Vec<u16> = by_count.into_iter().filter(|&f| f != 0).collect();
                cells.splice(c..=c, fragments);
                continue 'restart;
            }
        }
        return;
    }
}

fn twin_masks(rows: &[u16]) -> Vec<u16> {
    let n = rows.len();
    let mut twins = vec![0u16; n];
    for u in 0..n {
        for v in u + 1..n {
            if rows[u] & !(1 << v) == rows[v] & !(1 << u) {
                twins[u] |= 1 << v;
                twins[v] |= 1 << u;
            }
        }
    }
    twins
}

/// Returns the canonical code and the ordering realizing it
/// (`order[position] = vertex`).
fn canonical_labeling(g: &Graph) -> (u128, Vec<u8>) {
    let rows = g.rows();
    let n = g.n();
    let mut cells = if n == 0 { Vec::new() } else { vec![g.vertices().bits()] };
    refine(rows, &mut cells);
    let mut search = Search {
        rows,
        n,
        twins: twin_masks(rows),
        best: None,
        automorphisms: Vec::new(),
    };
    search.run(cells, &mut Vec::with_capacity(n));
    search.best.expect("the search visits at least one leaf")
}

/// The canonical form of `g`; equal forms exactly for isomorphic graphs.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (code, _) = canonical_labeling(g);
    CanonicalForm::from_code(g.n(), code)
}

/// If `g ≅ h`, a permutation σ with `g.permute(σ) == h`.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (code_g, order_g) = canonical_labeling(g);
    let (code_h, order_h) = canonical_labeling(h);
    if code_g != code_h {
        return None;
    }
    let mut images = vec![0; g.n()];
    for (&u, &v) in order_g.iter().zip(&order_h) {
        images[u as usize] = v as usize;
    }
    let sigma = Permutation::from_images(images).expect("orderings are bijections");
    debug_assert_eq!(g.permute(&sigma), *h);
    Some(sigma)
}
