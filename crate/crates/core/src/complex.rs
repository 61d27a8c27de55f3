//! The simplicial complex Δ of a graph and the point variety it describes.
//!
//! A vertex set is a face when each of its 3-subsets spans exactly one or
//! exactly three edges. Equivalently it is a disjoint union of two cliques
//! with no edge between them (the second clique may be empty), and also
//! equivalently the projection of a clique of the switching graph. Facets
//! are computed from maximal cliques of the switching graph; the brute-force
//! filter and the clique-pair construction are kept as independent routes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clique::{clique_number_of_masks, maximal_clique_masks};
use crate::error::{Error, Result};
use crate::graph::{low_mask, switching_rows, BitIter, Graph, Permutation, VertexSet};

/// The facets of Δ, kept in canonical order: descending cardinality, then
/// ascending lexicographic order of the sorted labels.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FacetFamily {
    n: usize,
    facets: Vec<VertexSet>,
}

fn canonical_order(a: &VertexSet, b: &VertexSet) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.iter().cmp(b.iter()))
}

impl FacetFamily {
    /// Checks the antichain and covering conditions and sorts canonically.
    pub fn new(n: usize, mut facets: Vec<VertexSet>) -> Result<Self> {
        facets.sort_by(canonical_order);
        facets.dedup();
        for (k, a) in facets.iter().enumerate() {
            if let Some(b) = facets.iter().skip(k + 1).find(|b| b.is_subset(*a)) {
                return Err(Error::NotAntichain(format!("{b} lies inside {a}")));
            }
            if let Some(v) = a.iter().find(|&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex: v + 1, n });
            }
        }
        let covered = facets.iter().fold(VertexSet::EMPTY, |acc, f| acc.union(*f));
        if let Some(v) = VertexSet::full(n).difference(covered).iter().next() {
            return Err(Error::NotCovering { vertex: v + 1 });
        }
        Ok(FacetFamily { n, facets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// The image family under σ.
    pub fn permute(&self, sigma: &Permutation) -> FacetFamily {
        let facets = self.facets.iter().map(|&f| sigma.apply_set(f)).collect();
        FacetFamily::new(self.n, facets).expect("a relabeled antichain is an antichain")
    }

    /// 1-based coordinate lists of the components `P(F)`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_one_based()).collect()
    }

    fn max_cardinality(&self) -> usize {
        self.facets.first().map_or(0, |f| f.len())
    }
}

/// The face condition on triples: every 3-subset spans one or three edges.
pub fn is_face(g: &Graph, face: VertexSet) -> bool {
    let members: Vec<usize> = face.iter().collect();
    for (x, &a) in members.iter().enumerate() {
        for (y, &b) in members.iter().enumerate().skip(x + 1) {
            for &c in &members[y + 1..] {
                let edges = g.has_edge(a, b) as u8 + g.has_edge(a, c) as u8 + g.has_edge(b, c) as u8;
                if edges != 1 && edges != 3 {
                    return false;
                }
            }
        }
    }
    true
}

/// Every face of Δ, found by testing all `2^n` subsets, in increasing bitmask order.
pub fn faces_bruteforce(g: &Graph) -> Vec<VertexSet> {
    (0..1u32 << g.n())
        .map(|bits| VertexSet::from_bits(bits as u16))
        .filter(|&f| is_face(g, f))
        .collect()
}

/// The inclusion-maximal members of `sets`.
pub fn maximal_elements(sets: &[VertexSet]) -> Vec<VertexSet> {
    let mut sorted: Vec<VertexSet> = sets.to_vec();
    sorted.sort_by(canonical_order);
    sorted.dedup();
    let mut maximal: Vec<VertexSet> = Vec::new();
    for s in sorted {
        if !maximal.iter().any(|m| s.is_subset(*m)) {
            maximal.push(s);
        }
    }
    maximal
}

/// Facets as projections of maximal cliques of the switching graph, with
/// non-maximal projections removed. Works for every `n <= 16`.
///
/// For `n >= 2` the cliques `{(u,0), (u,1)}` project to singletons, which are
/// never facets; every surviving facet is hit by a pair of cliques exchanged
/// by the layer swap, so it must occur an even number of times.
pub fn facets(g: &Graph) -> FacetFamily {
    let n = g.n();
    if n == 0 {
        return FacetFamily {
            n,
            facets: vec![VertexSet::EMPTY],
        };
    }
    let low = low_mask(n) as u32;
    let mut multiplicity: BTreeMap<u16, usize> = BTreeMap::new();
    for clique in maximal_clique_masks(&switching_rows(g)) {
        let projected = ((clique & low) | (clique >> n)) as u16;
        *multiplicity.entry(projected).or_default() += 1;
    }
    let projected: Vec<VertexSet> = multiplicity.keys().map(|&b| VertexSet::from_bits(b)).collect();
    let maximal = maximal_elements(&projected);
    if n >= 2 {
        for f in &maximal {
            let count = multiplicity[&f.bits()];
            assert!(count.is_multiple_of(2), "facet {f} of {g:?} projected {count} times");
        }
    }
    FacetFamily::new(n, maximal).expect("maximal projections form a covering antichain")
}

/// All cliques of `g` inside `allowed`, including the empty clique.
fn cliques_within(g: &Graph, allowed: u16, out: &mut Vec<u16>) {
    fn grow(g: &Graph, current: u16, candidates: u16, out: &mut Vec<u16>) {
        out.push(current);
        for v in BitIter(candidates as u32) {
            let later = candidates & !low_mask(v + 1);
            grow(g, current | 1 << v, later & g.neighbors(v).bits(), out);
        }
    }
    grow(g, 0, allowed, out);
}

/// Facets as maximal unions `C1 ⊔ C2` of cliques with no edge between them.
pub fn facets_by_clique_pairs(g: &Graph) -> FacetFamily {
    let n = g.n();
    let all = low_mask(n);
    let mut firsts = Vec::new();
    cliques_within(g, all, &mut firsts);
    let mut unions: BTreeSet<u16> = BTreeSet::new();
    let mut seconds = Vec::new();
    for &first in &firsts {
        let touched = BitIter(first as u32).fold(first, |acc, v| acc | g.neighbors(v).bits());
        seconds.clear();
        cliques_within(g, all & !touched, &mut seconds);
        unions.extend(seconds.iter().map(|&second| first | second));
    }
    let sets: Vec<VertexSet> = unions.into_iter().map(VertexSet::from_bits).collect();
    FacetFamily::new(n, maximal_elements(&sets)).expect("maximal faces form a covering antichain")
}

/// Degree-3 generators `x_a x_b x_c` of the Stanley–Reisner ideal: triples
/// spanning zero or two edges.
pub fn stanley_reisner_generators(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let triple: VertexSet = [a, b, c].into_iter().collect();
                if !is_face(g, triple) {
                    out.push(triple);
                }
            }
        }
    }
    out
}

/// `dim Γ = dim Δ`, the largest facet size minus one. Needs `n >= 1`.
pub fn dimension(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    let dim = facets(g).max_cardinality() - 1;
    if cfg!(debug_assertions) && n >= 2 {
        debug_assert_eq!(dim + 1, clique_number_of_masks(&switching_rows(g)));
        debug_assert_eq!(dim + 1, facets_by_clique_pairs(g).max_cardinality());
    }
    Ok(dim)
}

/// `(t_{n-1}, .., t_1)`, where `t_i` counts facets of cardinality `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeVector(Vec<usize>);

impl TypeVector {
    /// Wraps entries listed from `t_{n-1}` down to `t_1`.
    pub fn from_entries(entries: Vec<usize>) -> Self {
        TypeVector(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// The ambient vertex count `n`.
    pub fn n(&self) -> usize {
        self.0.len() + 1
    }

    /// `t_i` for `1 <= i <= n - 1`.
    pub fn t(&self, i: usize) -> usize {
        self.0[self.0.len() - i]
    }

    pub fn component_count(&self) -> usize {
        self.0.iter().sum()
    }

    fn from_cardinalities(n: usize, sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut entries = vec![0; n - 1];
        for size in sizes {
            entries[n - size] += 1;
        }
        TypeVector(entries)
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn type_of_family(family: &FacetFamily) -> Result<TypeVector> {
    let n = family.n();
    if n < 2 {
        return Err(Error::TypeUndefined { n });
    }
    Ok(TypeVector::from_cardinalities(n, family.facets().iter().map(|f| f.len())))
}

/// The type vector of the point variety. Undefined for `n < 2`.
pub fn type_vector(g: &Graph) -> Result<TypeVector> {
    type_of_family(&facets(g))
}

/// Type of `K_{r_1} ⊔ .. ⊔ K_{r_l}` from part sizes alone: `t_i` counts
/// pairs `a < b` with `r_a + r_b - 1 = i`. Requires at least two parts; a
/// single complete graph has type `(1, 0, .., 0)`, which the pair count misses.
pub fn type_formula_complete_union(parts: &[usize]) -> Result<TypeVector> {
    if parts.len() < 2 {
        return Err(Error::TooFewParts { parts: parts.len() });
    }
    if parts.contains(&0) {
        return Err(Error::ZeroPart);
    }
    let n: usize = parts.iter().sum();
    let mut sizes = Vec::new();
    for (a, &ra) in parts.iter().enumerate() {
        for &rb in &parts[a + 1..] {
            sizes.push(ra + rb);
        }
    }
    Ok(TypeVector::from_cardinalities(n, sizes))
}

/// `Γ = ∪ P(F)` over the facets, with its type and dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PointVariety {
    pub n: usize,
    pub components: Vec<Vec<usize>>,
    #[serde(rename = "type")]
    pub type_vector: Vec<usize>,
    pub dimension: usize,
}

impl PointVariety {
    pub fn from_family(family: &FacetFamily) -> Result<Self> {
        let n = family.n();
        if n == 0 {
            return Err(Error::TooFewVertices { n, min: 1 });
        }
        let type_vector = if n >= 2 {
            type_of_family(family)?.0
        } else {
            Vec::new()
        };
        Ok(PointVariety {
            n,
            components: family.components(),
            type_vector,
            dimension: family.max_cardinality() - 1,
        })
    }

    /// `P(1,2,3) <sep> P(1,2,4) ..` with the given union separator.
    pub fn render(&self, union: &str) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let labels: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("P({})", labels.join(","))
            })
            .collect();
        parts.join(union)
    }
}

/// ASCII rendering with ` u ` between components.
impl fmt::Display for PointVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" u "))
    }
}

/// The point variety of the algebra whose associated graph is `g`. Needs `n >= 1`.
pub fn point_variety(g: &Graph) -> Result<PointVariety> {
    PointVariety::from_family(&facets(g))
}

/// A permutation σ with `σ(A) = B` as facet sets, when one exists.
///
/// Backtracking over vertex images; a vertex may only map to one with the same
/// profile (sorted sizes of the facets through it), and every partial map must
/// send the traces of `A` on the assigned vertices onto the traces of `B`.
pub fn facet_families_isomorphic(a: &FacetFamily, b: &FacetFamily) -> Option<Permutation> {
    let n = a.n();
    if n != b.n() || a.len() != b.len() {
        return None;
    }
    let sizes = |f: &FacetFamily| {
        let mut s: Vec<usize> = f.facets().iter().map(|x| x.len()).collect();
        s.sort_unstable();
        s
    };
    if sizes(a) != sizes(b) {
        return None;
    }
    let profile = |f: &FacetFamily, v: usize| {
        let mut p: Vec<usize> = f.facets().iter().filter(|x| x.contains(v)).map(|x| x.len()).collect();
        p.sort_unstable();
        p
    };
    let profiles_b: Vec<Vec<usize>> = (0..n).map(|w| profile(b, w)).collect();
    let mut candidates: Vec<(usize, u16)> = (0..n)
        .map(|v| {
            let pv = profile(a, v);
            let mask = (0..n).filter(|&w| profiles_b[w] == pv).fold(0u16, |m, w| m | 1 << w);
            (v, mask)
        })
        .collect();
    if candidates.iter().any(|&(_, mask)| mask == 0) {
        return None;
    }
    candidates.sort_by_key(|&(v, mask)| (mask.count_ones(), v));

    let mut matcher = FacetMatcher {
        a: a.facets().iter().map(|f| f.bits()).collect(),
        b: b.facets().iter().map(|f| f.bits()).collect(),
        images: vec![0; a.len()],
        assignment: vec![usize::MAX; n],
        order: candidates,
    };
    if matcher.extend(0, 0) {
        Permutation::from_images(matcher.assignment)
    } else {
        None
    }
}

struct FacetMatcher {
    a: Vec<u16>,
    b: Vec<u16>,
    /// Image of each `A` facet restricted to the assigned vertices.
    images: Vec<u16>,
    assignment: Vec<usize>,
    order: Vec<(usize, u16)>,
}

impl FacetMatcher {
    fn extend(&mut self, depth: usize, used: u16) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let (v, mask) = self.order[depth];
        for w in BitIter((mask & !used) as u32) {
            let saved = self.images.clone();
            for (img, &f) in self.images.iter_mut().zip(&self.a) {
                if f >> v & 1 == 1 {
                    *img |= 1 << w;
                }
            }
            self.assignment[v] = w;
            let used = used | 1 << w;
            if self.traces_match(used) && self.extend(depth + 1, used) {
                return true;
            }
            self.images = saved;
            self.assignment[v] = usize::MAX;
        }
        false
    }

    fn traces_match(&self, used: u16) -> bool {
        let mut left = self.images.clone();
        let mut right: Vec<u16> = self.b.iter().map(|&f| f & used).collect();
        left.sort_unstable();
        right.sort_unstable();
        left == right
    }
}
