//! Switching classes: certificates, the equivalence decision, class
//! enumeration per order and mutation paths between class members.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, is_isomorphic, CanonicalForm};
use crate::complex::{facets, FacetFamily, TypeVector};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph, Permutation, MAX_SWITCHING_INPUT, MAX_VERTICES};

/// Default cap for [`certificate`].
pub const MAX_CERTIFICATE_VERTICES: usize = 12;
/// Default cap for [`enumerate_classes`].
pub const MAX_ENUMERATION_VERTICES: usize = 8;
/// Enumeration keeps one bit per labeled graph; past this order the bitmap
/// alone outgrows any desk machine, so no override goes higher.
pub const ABSOLUTE_ENUMERATION_LIMIT: usize = 9;
/// Default cap for [`mutation_path`].
pub const MAX_MUTATION_VERTICES: usize = 8;

/// The smallest canonical form among all switches of a graph; equal exactly
/// for switching-equivalent graphs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassCertificate(CanonicalForm);

impl ClassCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    pub fn canonical_form(&self) -> &CanonicalForm {
        &self.0
    }
}

impl fmt::Debug for ClassCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassCertificate({})", self.to_hex())
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::TooManyVertices { n, cap })
    } else {
        Ok(())
    }
}

/// Class certificate for graphs with at most [`MAX_CERTIFICATE_VERTICES`] vertices.
pub fn certificate(g: &Graph) -> Result<ClassCertificate> {
    certificate_with_cap(g, MAX_CERTIFICATE_VERTICES)
}

/// Class certificate under a caller-chosen size cap.
///
/// Only switches on sets avoiding vertex 0 are visited, since `G^S = G^{V∖S}`.
/// They are walked in Gray-code order so consecutive switches differ by one
/// mutation.
pub fn certificate_with_cap(g: &Graph, cap: usize) -> Result<ClassCertificate> {
    check_cap(g.n(), cap)?;
    let n = g.n();
    let mut current = *g;
    let mut best = canonical_form(&current);
    for step in 1..1u32 << n.saturating_sub(1) {
        current.mutate_in_place(step.trailing_zeros() as usize + 1);
        let form = canonical_form(&current);
        if form < best {
            best = form;
        }
    }
    Ok(ClassCertificate(best))
}

fn check_same_size(g: &Graph, h: &Graph) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: h.n(),
        });
    }
    Ok(())
}

/// Switching equivalence. Decided by certificates; for `n <= 8` the
/// switching graphs are compared as well and the two answers must agree.
pub fn switching_equivalent(g: &Graph, h: &Graph) -> Result<bool> {
    switching_equivalent_with_cap(g, h, MAX_CERTIFICATE_VERTICES)
}

pub fn switching_equivalent_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    check_same_size(g, h)?;
    let by_certificate = certificate_with_cap(g, cap)? == certificate_with_cap(h, cap)?;
    if g.n() <= MAX_SWITCHING_INPUT {
        let by_switching_graph = is_isomorphic(&g.switching_graph()?, &h.switching_graph()?).is_some();
        if by_certificate != by_switching_graph {
            return Err(Error::RouteDisagreement {
                certificate: by_certificate,
                switching_graph: by_switching_graph,
            });
        }
    }
    Ok(by_certificate)
}

/// One switching class of a catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    /// Member with the smallest adjacency code.
    pub representative: Graph,
    pub certificate: ClassCertificate,
    /// Number of labeled graphs in the class.
    pub labeled_count: u64,
    /// Absent for `n = 1`.
    pub type_vector: Option<TypeVector>,
    pub dimension: usize,
    pub facets: FacetFamily,
}

impl ClassRecord {
    fn describe(representative: Graph, labeled_count: u64, cap: usize) -> Result<Self> {
        let facets = facets(&representative);
        let dimension = facets.facets()[0].len() - 1;
        let type_vector = (representative.n() >= 2)
            .then(|| crate::complex::type_vector(&representative))
            .transpose()?;
        Ok(ClassRecord {
            representative,
            certificate: certificate_with_cap(&representative, cap)?,
            labeled_count,
            type_vector,
            dimension,
            facets,
        })
    }
}

/// All switching classes of graphs on `n` labeled vertices, ordered by
/// representative code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCatalog {
    pub n: usize,
    pub classes: Vec<ClassRecord>,
}

impl ClassCatalog {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn labeled_total(&self) -> u64 {
        self.classes.iter().map(|c| c.labeled_count).sum()
    }

    pub fn to_document(&self) -> CatalogDocument {
        CatalogDocument {
            n: self.n,
            class_count: self.classes.len(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassEntry {
                    representative_edges: c
                        .representative
                        .edges()
                        .into_iter()
                        .map(|(u, v)| [u + 1, v + 1])
                        .collect(),
                    certificate_hex: c.certificate.to_hex(),
                    labeled_count: c.labeled_count,
                    type_vector: c.type_vector.as_ref().map_or_else(Vec::new, |t| t.entries().to_vec()),
                    dimension: c.dimension,
                    components: c.facets.components(),
                })
                .collect(),
        }
    }
}

/// JSON shape of a catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub n: usize,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub representative_edges: Vec<[usize; 2]>,
    pub certificate_hex: String,
    pub labeled_count: u64,
    #[serde(rename = "type")]
    pub type_vector: Vec<usize>,
    pub dimension: usize,
    pub components: Vec<Vec<usize>>,
}

/// Permutes the bits of adjacency codes, one lookup table per code byte.
struct CodePermuter {
    tables: Vec<[u64; 256]>,
}

impl CodePermuter {
    fn new(n: usize, images: &[usize]) -> Self {
        let mut target = Vec::with_capacity(pair_count(n));
        for j in 1..n {
            for i in 0..j {
                target.push(crate::graph::pair_index(images[i], images[j]));
            }
        }
        let tables = target
            .chunks(8)
            .map(|chunk| {
                let mut table = [0u64; 256];
                for (byte, slot) in table.iter_mut().enumerate() {
                    for (t, &bit) in chunk.iter().enumerate() {
                        if byte >> t & 1 == 1 {
                            *slot |= 1 << bit;
                        }
                    }
                }
                table
            })
            .collect();
        CodePermuter { tables }
    }

    fn apply(&self, code: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (k, table)| acc | table[(code >> (8 * k)) as usize & 0xff])
    }
}

/// Generators of the group of relabelings and switchings acting on codes:
/// the transposition (0 1), the cycle (0 1 .. n-1) and mutation at vertex 0.
struct OrbitGenerators {
    permuters: Vec<CodePermuter>,
    mutation_mask: u64,
}

impl OrbitGenerators {
    fn new(n: usize) -> Self {
        let mut permuters = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            permuters.push(CodePermuter::new(n, &swap));
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).map(|v| (v + 1) % n).collect();
            permuters.push(CodePermuter::new(n, &cycle));
        }
        let mutation_mask = (1..n).fold(0u64, |m, j| m | 1 << crate::graph::pair_index(0, j));
        OrbitGenerators {
            permuters,
            mutation_mask,
        }
    }

    fn neighbors(&self, code: u64) -> impl Iterator<Item = u64> + '_ {
        self.permuters
            .iter()
            .map(move |p| p.apply(code))
            .chain(std::iter::once(code ^ self.mutation_mask))
    }
}

/// Switching classes on `n <= 8` vertices.
pub fn enumerate_classes(n: usize) -> Result<ClassCatalog> {
    enumerate_classes_with_cap(n, MAX_ENUMERATION_VERTICES)
}

/// Flood fill over labeled graphs: codes are scanned in increasing order and
/// every code not yet seen starts a new class, whose members are collected by
/// closing under the orbit generators. The first code of a class is its
/// smallest, and class sizes always add up to `2^(n choose 2)`.
pub fn enumerate_classes_with_cap(n: usize, cap: usize) -> Result<ClassCatalog> {
    check_cap(n, cap.min(ABSOLUTE_ENUMERATION_LIMIT))?;
    if n == 0 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    let total = 1u64 << pair_count(n);
    let generators = OrbitGenerators::new(n);
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mut stack = Vec::new();
    let mut found: Vec<(u64, u64)> = Vec::new();
    for word in 0..seen.len() {
        while seen[word] != u64::MAX {
            let start = word as u64 * 64 + (!seen[word]).trailing_zeros() as u64;
            if start >= total {
                break;
            }
            seen[word] |= 1 << (start % 64);
            stack.push(start);
            let mut members = 0u64;
            while let Some(code) = stack.pop() {
                members += 1;
                for next in generators.neighbors(code) {
                    let (w, bit) = ((next / 64) as usize, 1u64 << (next % 64));
                    if seen[w] & bit == 0 {
                        seen[w] |= bit;
                        stack.push(next);
                    }
                }
            }
            found.push((start, members));
        }
    }
    build_catalog(n, found, cap)
}

/// Same catalog by the definition: a certificate for every labeled graph,
/// bucketed in parallel over disjoint code ranges and merged in code order.
pub fn enumerate_classes_bucketed(n: usize) -> Result<ClassCatalog> {
    check_cap(n, MAX_ENUMERATION_VERTICES)?;
    if n == 0 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    let total = 1u64 << pair_count(n);
    let chunk = (total / 256).max(1);
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let partials: Vec<HashMap<ClassCertificate, (u64, u64)>> = chunks
        .par_iter()
        .map(|&k| {
            let mut local: HashMap<ClassCertificate, (u64, u64)> = HashMap::new();
            for code in k * chunk..((k + 1) * chunk).min(total) {
                let g = Graph::from_code(n, code as u128).expect("n is capped");
                let cert = certificate(&g).expect("n is capped");
                let slot = local.entry(cert).or_insert((code, 0));
                slot.0 = slot.0.min(code);
                slot.1 += 1;
            }
            local
        })
        .collect();
    let mut merged: HashMap<ClassCertificate, (u64, u64)> = HashMap::new();
    for partial in partials {
        for (cert, (rep, count)) in partial {
            let slot = merged.entry(cert).or_insert((rep, 0));
            slot.0 = slot.0.min(rep);
            slot.1 += count;
        }
    }
    let mut found: Vec<(u64, u64)> = merged.into_values().collect();
    found.sort_unstable();
    build_catalog(n, found, MAX_CERTIFICATE_VERTICES)
}

fn build_catalog(n: usize, found: Vec<(u64, u64)>, cap: usize) -> Result<ClassCatalog> {
    let classes = found
        .into_par_iter()
        .map(|(code, count)| {
            let representative = Graph::from_code(n, code as u128)?;
            ClassRecord::describe(representative, count, cap.max(n))
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(
        classes.iter().map(|c| c.labeled_count).sum::<u64>(),
        1u64 << pair_count(n)
    );
    Ok(ClassCatalog { n, classes })
}

/// A mutation sequence and relabeling taking one graph to another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationPath {
    /// 0-based vertices, applied left to right.
    pub vertices: Vec<usize>,
    pub permutation: Permutation,
}

impl MutationPath {
    /// `σ(μ_{v_m}(..μ_{v_1}(g)..))`.
    pub fn replay(&self, g: &Graph) -> Result<Graph> {
        let mut current = *g;
        for &v in &self.vertices {
            current = current.mutate(v)?;
        }
        Ok(current.permute(&self.permutation))
    }
}

/// The isomorphism classes (as canonical forms) reachable from `g` by single
/// vertex mutations.
pub fn mutation_class(g: &Graph) -> Result<BTreeSet<CanonicalForm>> {
    check_cap(g.n(), MAX_VERTICES)?;
    let mut seen = BTreeSet::new();
    seen.insert(canonical_form(g));
    let mut queue = VecDeque::from([*g]);
    while let Some(current) = queue.pop_front() {
        for v in 0..current.n() {
            let next = current.mutate(v)?;
            if seen.insert(canonical_form(&next)) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Shortest mutation sequence from `g` to a graph isomorphic to `h`, if any.
pub fn mutation_path(g: &Graph, h: &Graph) -> Result<Option<MutationPath>> {
    mutation_path_with_cap(g, h, MAX_MUTATION_VERTICES)
}

pub fn mutation_path_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<Option<MutationPath>> {
    check_same_size(g, h)?;
    check_cap(g.n(), cap.min(MAX_VERTICES))?;
    let target = canonical_form(h);
    // Breadth-first over isomorphism classes; each stored graph is the exact
    // labeled result of replaying its path from `g`.
    let mut nodes: Vec<(Graph, usize, usize)> = vec![(*g, usize::MAX, usize::MAX)];
    let mut seen = BTreeSet::from([canonical_form(g)]);
    let mut hit = (canonical_form(g) == target).then_some(0);
    let mut head = 0;
    while hit.is_none() && head < nodes.len() {
        let current = nodes[head].0;
        for v in 0..current.n() {
            let next = current.mutate(v)?;
            let form = canonical_form(&next);
            if seen.insert(form.clone()) {
                nodes.push((next, head, v));
                if form == target {
                    hit = Some(nodes.len() - 1);
                    break;
                }
            }
        }
        head += 1;
    }
    let Some(mut at) = hit else {
        return Ok(None);
    };
    let reached = nodes[at].0;
    let mut vertices = Vec::new();
    while nodes[at].1 != usize::MAX {
        vertices.push(nodes[at].2);
        at = nodes[at].1;
    }
    vertices.reverse();
    let permutation = is_isomorphic(&reached, h).expect("canonical forms agree");
    Ok(Some(MutationPath {
        vertices,
        permutation,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    fn one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges_one_based(n, edges).unwrap()
    }

    /// The six-vertex switching example and its switch at {1,2,3}.
    fn hexagon_pair() -> (Graph, Graph) {
        let g = one_based(6, &[(1, 2), (1, 4), (1, 6), (6, 5), (6, 3), (2, 3), (2, 5), (3, 4), (5, 4)]);
        let h = one_based(6, &[(1, 2), (2, 4), (4, 5), (1, 5), (2, 3), (3, 5), (5, 6), (6, 2)]);
        (g, h)
    }

    #[test]
    fn hexagon_example() {
        let (g, h) = hexagon_pair();
        let first: VertexSet = [0, 1, 2].into_iter().collect();
        let second: VertexSet = [3, 4, 5].into_iter().collect();
        assert_eq!(g.switch(first), h);
        assert_eq!(g.switch(second), h);
        assert!(switching_equivalent(&g, &h).unwrap());
    }

    #[test]
    fn three_vertex_certificates() {
        let path = one_based(3, &[(1, 2), (2, 3)]);
        let empty = Graph::empty(3).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let edge = one_based(3, &[(1, 2)]);
        assert_eq!(certificate(&path).unwrap(), certificate(&empty).unwrap());
        assert_eq!(certificate(&k3).unwrap(), certificate(&edge).unwrap());
        assert_ne!(certificate(&k3).unwrap(), certificate(&empty).unwrap());
        let distinct: BTreeSet<ClassCertificate> = (0..8)
            .map(|c| certificate(&Graph::from_code(3, c).unwrap()).unwrap())
            .collect();
        assert_eq!(distinct.len(), 2);
    }

    #[test]
    fn certificate_caps() {
        assert!(certificate(&Graph::empty(13).unwrap()).is_err());
        assert!(certificate_with_cap(&Graph::empty(13).unwrap(), 16).is_ok());
        assert_eq!(certificate(&Graph::empty(0).unwrap()).unwrap().as_bytes(), &[0]);
    }

    #[test]
    fn equivalence_errors() {
        let err = switching_equivalent(&Graph::empty(3).unwrap(), &Graph::empty(4).unwrap());
        assert_eq!(err, Err(Error::VertexCountMismatch { left: 3, right: 4 }));
        let g = one_based(4, &[(1, 2)]);
        assert!(switching_equivalent(&g, &g).unwrap());
    }

    #[test]
    fn small_catalogs() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_classes(n).unwrap().class_count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 7]);
        let four = enumerate_classes(4).unwrap();
        assert_eq!(four.labeled_total(), 64);
        let types: BTreeSet<Vec<usize>> = four
            .classes
            .iter()
            .map(|c| c.type_vector.clone().unwrap().entries().to_vec())
            .collect();
        assert_eq!(types, BTreeSet::from([vec![1, 0, 0], vec![0, 2, 1], vec![0, 0, 6]]));
        assert!(enumerate_classes(9).is_err());
        assert!(enumerate_classes(0).is_err());
    }

    #[test]
    fn flood_fill_matches_bucketing() {
        for n in 1..=5 {
            assert_eq!(enumerate_classes(n).unwrap(), enumerate_classes_bucketed(n).unwrap());
        }
    }

    #[test]
    fn catalog_json_round_trip() {
        let doc = enumerate_classes(3).unwrap().to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: CatalogDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        assert!(json.starts_with(r#"{"n":3,"class_count":2,"classes":[{"representative_edges":[]"#));
    }

    #[test]
    fn code_permuter_matches_graph_permute() {
        let n = 6;
        let images = vec![3, 0, 5, 1, 2, 4];
        let sigma = Permutation::from_images(images.clone()).unwrap();
        let permuter = CodePermuter::new(n, &images);
        for code in (0..1u64 << 15).step_by(97) {
            let g = Graph::from_code(n, code as u128).unwrap();
            assert_eq!(permuter.apply(code) as u128, g.permute(&sigma).code());
        }
    }

    #[test]
    fn single_mutation_paths() {
        let g = one_based(5, &[(1, 2), (2, 3), (4, 5)]);
        for v in 0..5 {
            let h = g.mutate(v).unwrap();
            let path = mutation_path(&g, &h).unwrap().unwrap();
            assert_eq!(path.replay(&g).unwrap(), h);
            assert!(path.vertices.len() <= 1);
        }
    }

    #[test]
    fn hexagon_path_replays() {
        let (g, h) = hexagon_pair();
        let path = mutation_path(&g, &h).unwrap().unwrap();
        assert!(path.vertices.len() <= 3);
        assert_eq!(path.replay(&g).unwrap(), h);
    }

    #[test]
    fn mutation_path_absent_between_classes() {
        let g = Graph::complete(4).unwrap();
        let h = Graph::empty(4).unwrap();
        assert_eq!(mutation_path(&g, &h).unwrap(), None);
        assert!(mutation_path(&g, &Graph::empty(3).unwrap()).is_err());
    }
}
