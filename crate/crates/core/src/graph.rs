//! Simple undirected graphs on at most 16 vertices, stored as one `u16`
//! neighbor mask per vertex, together with the switching operations.
//!
//! Vertices are 0-based here; the text format and every `Display` impl use
//! 1-based labels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 16;

/// Largest graph whose switching graph still fits in [`MAX_VERTICES`].
pub const MAX_SWITCHING_INPUT: usize = MAX_VERTICES / 2;

/// A set of vertices as a bitmask; bit `v` stands for vertex `v`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u16) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet(low_mask(n))
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & low_mask(n))
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0 as u32)
    }

    /// Sorted 1-based labels.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Builds a set from 1-based labels, rejecting labels outside `1..=n`.
    pub fn from_one_based(labels: &[usize], n: usize) -> Result<Self> {
        let mut set = VertexSet::EMPTY;
        for &label in labels {
            if label == 0 || label > n {
                return Err(Error::VertexOutOfRange { vertex: label, n });
            }
            set.insert(label - 1);
        }
        Ok(set)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Renders 1-based, e.g. `{1,2,4}`.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the set bits of a mask, lowest first.
pub(crate) struct BitIter(pub(crate) u32);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

pub(crate) fn low_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

/// A bijection of `{0, .., n-1}`; `image(v)` is where `v` goes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Validates that `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    pub fn apply_set(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.0[v]).collect()
    }
}

/// 1-based cycle-free image list, e.g. `[3,4,1,2]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// Bit position of the pair `{i, j}` in [`Graph::code`]: pairs are ordered
/// `(0,1), (0,2), (1,2), (0,3), ..`, so codes of a graph and of the same graph
/// with extra isolated vertices agree.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

/// Number of vertex pairs, `n choose 2`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A simple undirected graph on vertices `0..n`, `n <= 16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        check_vertex_count(n, MAX_VERTICES)?;
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let full = low_mask(n);
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        Ok(g)
    }

    /// Builds a graph from 0-based unordered pairs. Duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w + 1, n });
                }
            }
            if u == v {
                return Err(Error::Loop { vertex: u + 1 });
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] but with 1-based labels.
    pub fn from_edges_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut shifted = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            shifted.push((u - 1, v - 1));
        }
        Graph::from_edges(n, &shifted)
    }

    /// `K_{r_1} ⊔ K_{r_2} ⊔ ..` with the blocks laid out on consecutive vertices.
    pub fn complete_union(parts: &[usize]) -> Result<Self> {
        let n: usize = parts.iter().sum();
        let mut g = Graph::empty(n)?;
        let mut start = 0;
        for &r in parts {
            let block = low_mask(start + r) & !low_mask(start);
            for v in start..start + r {
                g.adj[v] = block & !(1 << v);
            }
            start += r;
        }
        Ok(g)
    }

    /// Decodes a code produced by [`Graph::code`]; bits above the pair count are ignored.
    pub fn from_code(n: usize, code: u128) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for j in 1..n {
            for i in 0..j {
                if code >> pair_index(i, j) & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency(n: usize, rows: &[u16]) -> Self {
        debug_assert!(n <= MAX_VERTICES && rows.len() >= n);
        let mut adj = [0; MAX_VERTICES];
        adj[..n].copy_from_slice(&rows[..n]);
        Graph { n: n as u8, adj }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub(crate) fn rows(&self) -> &[u16] {
        &self.adj[..self.n()]
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in VertexSet(self.adj[u] & !low_mask(u + 1)).iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// The adjacency code: bit [`pair_index`]`(i, j)` is set iff `ij` is an edge.
    pub fn code(&self) -> u128 {
        let mut code = 0u128;
        for j in 1..self.n() {
            for i in VertexSet(self.adj[j] & low_mask(j)).iter() {
                code |= 1 << pair_index(i, j);
            }
        }
        code
    }

    /// Whether the vertices of `set` are pairwise adjacent.
    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.difference(self.neighbors(v)).bits() == 1 << v)
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n());
        let mut g = *self;
        for v in 0..self.n() {
            g.adj[v] = !self.adj[v] & full & !(1 << v);
        }
        g
    }

    /// The relabeled graph with edge `σ(u)σ(v)` for every edge `uv`.
    pub fn permute(&self, sigma: &Permutation) -> Graph {
        assert_eq!(sigma.len(), self.n(), "permutation size must match the graph");
        let mut g = Graph::empty(self.n()).expect("same size as an existing graph");
        for u in 0..self.n() {
            g.adj[sigma.image(u)] = sigma.apply_set(self.neighbors(u)).bits();
        }
        g
    }

    /// Mutation at `v`: every pair `{v, w}`, `w != v`, flips between edge and non-edge.
    pub fn mutate(&self, v: usize) -> Result<Graph> {
        let n = self.n();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v + 1, n });
        }
        let mut g = *self;
        g.mutate_in_place(v);
        Ok(g)
    }

    pub(crate) fn mutate_in_place(&mut self, v: usize) {
        let others = low_mask(self.n()) & !(1 << v);
        self.adj[v] ^= others;
        for w in VertexSet(others).iter() {
            self.adj[w] ^= 1 << v;
        }
    }

    /// Switching on `set`: pairs with exactly one end in `set` flip.
    pub fn switch(&self, set: VertexSet) -> Graph {
        let full = low_mask(self.n());
        let inside = set.bits() & full;
        let outside = !inside & full;
        let mut g = *self;
        for v in 0..self.n() {
            let across = if inside >> v & 1 == 1 { outside } else { inside };
            g.adj[v] ^= across;
        }
        g
    }

    /// The switching graph on `2n` vertices; vertex `(u, layer)` is index
    /// `u + layer * n`. Same-layer pairs copy `G`, cross-layer pairs copy the
    /// complement of `G` with every `(u,0)(u,1)` present.
    pub fn switching_graph(&self) -> Result<Graph> {
        let n = self.n();
        check_vertex_count(n, MAX_SWITCHING_INPUT)?;
        let rows = switching_rows(self);
        let narrowed: Vec<u16> = rows.iter().map(|&r| r as u16).collect();
        Ok(Graph::from_adjacency(2 * n, &narrowed))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n();
        let mut g = Graph::empty(n + other.n())?;
        g.adj[..n].copy_from_slice(self.rows());
        for v in 0..other.n() {
            g.adj[n + v] = other.adj[v] << n;
        }
        Ok(g)
    }

    /// Serializes to the text format: vertex count, then one 1-based edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// Switching-graph adjacency as `u32` rows, valid for any `n <= 16`.
pub(crate) fn switching_rows(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let full = low_mask(n) as u32;
    let mut rows = vec![0u32; 2 * n];
    for u in 0..n {
        let same = g.adj[u] as u32;
        let cross = (!same & full) | (1 << u);
        rows[u] = same | cross << n;
        rows[u + n] = cross | same << n;
    }
    rows
}

fn check_vertex_count(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooManyVertices { n, cap })
    } else {
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (k, (u, v)) in self.edges().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        write!(f, "])")
    }
}

/// Strips `#` comments and blank lines, yielding `(line number, content)`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let content = line.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((k + 1, content))
    })
}

pub(crate) fn parse_count(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a vertex count, got {token:?}"),
    })
}

impl FromStr for Graph {
    type Err = Error;

    /// Parses the text format: first line `n`, then `u v` edge lines (1-based).
    fn from_str(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (first, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n = parse_count(first, header)?;
        check_vertex_count(n, MAX_VERTICES)?;
        let mut edges = Vec::new();
        for (line, content) in lines {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let [a, b] = tokens[..] else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two vertex labels, got {content:?}"),
                });
            };
            let parse = |t: &str| -> Result<usize> {
                t.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("vertex label {t:?} is not a positive integer"),
                })
            };
            edges.push((parse(a)?, parse(b)?));
        }
        Graph::from_edges_one_based(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn construction() {
        let single = g(3, &[(0, 1)]);
        assert_eq!(single.edges(), vec![(0, 1)]);
        assert_eq!(g(3, &[]).edge_count(), 0);
        assert_eq!(g(3, &[(0, 1), (1, 0), (0, 1)]), single);
        let sample = g(5, &[(0, 2), (0, 4), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(sample.edge_count(), 5);
        assert_eq!(sample.degree(2), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::Loop { vertex: 2 }));
        assert_eq!(
            Graph::empty(17),
            Err(Error::TooManyVertices { n: 17, cap: 16 })
        );
        assert!(Graph::complete(16).is_ok());
    }

    #[test]
    fn mutation_example() {
        let before = g(5, &[(0, 2), (0, 4), (1, 2), (2, 3), (2, 4)]);
        let after = g(5, &[(0, 1), (0, 3), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(before.mutate(0).unwrap(), after);
        assert!(before.mutate(5).is_err());
    }

    #[test]
    fn mutation_of_empty_is_star() {
        for n in 1..=6 {
            for v in 0..n {
                let star = Graph::empty(n).unwrap().mutate(v).unwrap();
                assert_eq!(star.neighbors(v), VertexSet::full(n).difference([v].into_iter().collect()));
                assert_eq!(star.edge_count(), n - 1);
            }
        }
    }

    #[test]
    fn switching_examples() {
        let before = g(5, &[(0, 1), (0, 4), (1, 2), (1, 3), (4, 2), (4, 3)]);
        let star = g(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let set: VertexSet = [2, 3].into_iter().collect();
        assert_eq!(before.switch(set), star);
        assert_eq!(before.switch(VertexSet::EMPTY), before);
        assert_eq!(before.switch(before.vertices()), before);
    }

    #[test]
    fn switching_graph_of_path() {
        let path = g(3, &[(0, 1), (1, 2)]);
        let sw = path.switching_graph().unwrap();
        let v = |u: usize, layer: usize| u + 3 * layer;
        let expected = g(
            6,
            &[
                (v(0, 0), v(1, 0)),
                (v(1, 0), v(2, 0)),
                (v(0, 1), v(1, 1)),
                (v(1, 1), v(2, 1)),
                (v(0, 0), v(0, 1)),
                (v(1, 0), v(1, 1)),
                (v(2, 0), v(2, 1)),
                (v(0, 0), v(2, 1)),
                (v(0, 1), v(2, 0)),
            ],
        );
        assert_eq!(sw, expected);
    }

    #[test]
    fn switching_graph_small_cases() {
        assert_eq!(Graph::empty(1).unwrap().switching_graph().unwrap(), Graph::complete(2).unwrap());
        // (0,0)=0, (1,0)=1, (0,1)=2, (1,1)=3: cycle 0-2-1-3-0
        let c4 = g(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]);
        assert_eq!(Graph::empty(2).unwrap().switching_graph().unwrap(), c4);
        assert_eq!(
            Graph::empty(9).unwrap().switching_graph(),
            Err(Error::TooManyVertices { n: 9, cap: 8 })
        );
        assert_eq!(Graph::empty(0).unwrap().switching_graph().unwrap().n(), 0);
    }

    #[test]
    fn code_round_trip_and_order() {
        let path = g(4, &[(0, 1), (1, 2)]);
        assert_eq!(path.code(), 0b101);
        assert_eq!(Graph::from_code(4, path.code()).unwrap(), path);
        assert_eq!(pair_index(2, 3), 5);
        assert_eq!(pair_count(16), 120);
        assert_eq!(Graph::complete(16).unwrap().code(), (1u128 << 120) - 1);
    }

    #[test]
    fn text_format() {
        let text = "# a path\n4\n\n1 2\n2 3  # middle\n";
        let parsed: Graph = text.parse().unwrap();
        assert_eq!(parsed, g(4, &[(0, 1), (1, 2)]));
        assert_eq!(parsed.to_text().parse::<Graph>().unwrap(), parsed);
        assert!(matches!("3\n1 4\n".parse::<Graph>(), Err(Error::VertexOutOfRange { vertex: 4, n: 3 })));
        assert!(matches!("3\n0 1\n".parse::<Graph>(), Err(Error::VertexOutOfRange { vertex: 0, .. })));
        assert!(matches!("3\n1 2 3\n".parse::<Graph>(), Err(Error::Parse { line: 2, .. })));
        assert!(matches!("".parse::<Graph>(), Err(Error::Parse { .. })));
        assert!(matches!("x\n".parse::<Graph>(), Err(Error::Parse { line: 1, .. })));
        assert!(matches!("17\n".parse::<Graph>(), Err(Error::TooManyVertices { .. })));
        assert_eq!("0\n".parse::<Graph>().unwrap().n(), 0);
    }

    #[test]
    fn complete_union_layout() {
        let g = Graph::complete_union(&[1, 2, 3]).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edges(), vec![(1, 2), (3, 4), (3, 5), (4, 5)]);
    }

    #[test]
    fn permutation_helpers() {
        let sigma = Permutation::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(sigma.inverse().as_slice(), &[1, 2, 0]);
        assert!(Permutation::from_images(vec![0, 0]).is_none());
        let path = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(path.permute(&sigma), g(3, &[(2, 0), (0, 1)]));
        assert_eq!(sigma.to_string(), "[3,1,2]");
    }
}
