//! Exhaustive check that the combinatorial classification criteria agree.
//!
//! For every checked pair `(G, H)` on `n` vertices the following predicates are
//! evaluated, and each is compared with certificate equality:
//!
//! * `definition`: some switch `G^S` is isomorphic to `H`
//! * `switching-graph`: `Sw(G) ≅ Sw(H)`
//! * `doubled-algebra`: the doubled algebras are isomorphic as graded algebras
//! * `facet-family`: the facet families (equivalently the point varieties) match under a relabeling
//! * `mutation`: `H` is reachable from `G` by mutations up to isomorphism
//!
//! Pairs are all labeled pairs for `n <= 4`, and class representatives
//! against every labeled graph for `n = 5`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algebra::{doubled_algebra, epsilon_of_graph, graph_of_epsilon};
use crate::canon::{canonical_form, CanonicalForm};
use crate::classify::{certificate, enumerate_classes, mutation_class, ClassCertificate};
use crate::complex::{facet_families_isomorphic, facets, FacetFamily};
use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph, VertexSet};

/// Largest order accepted by [`verify_main_theorem`].
pub const MAX_VERIFY_VERTICES: usize = 5;
/// Orders up to this one compare every labeled pair.
pub const ALL_PAIRS_UP_TO: usize = 4;

pub const PREDICATES: [&str; 5] = [
    "definition",
    "switching-graph",
    "doubled-algebra",
    "facet-family",
    "mutation",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub left: Graph,
    pub right: Graph,
    pub certificates_equal: bool,
    pub predicate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biconditional {
    pub predicate: &'static str,
    pub pairs: usize,
    pub violations: Vec<Violation>,
}

impl Biconditional {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub exhaustive_pairs: bool,
    pub pairs: usize,
    pub classes: usize,
    pub checks: Vec<Biconditional>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Biconditional::passed)
    }

    /// One `PASS`/`FAIL` line per biconditional, then counterexamples.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let scope = if self.exhaustive_pairs {
            "all labeled pairs"
        } else {
            "representatives x labeled graphs"
        };
        for check in &self.checks {
            let _ = writeln!(
                out,
                "{} n={} certificate <=> {} ({} pairs, {scope})",
                if check.passed() { "PASS" } else { "FAIL" },
                self.n,
                check.predicate,
                check.pairs,
            );
            for v in check.violations.iter().take(5) {
                let _ = writeln!(
                    out,
                    "  counterexample: {:?} vs {:?}: certificates {}, {} {}",
                    v.left,
                    v.right,
                    if v.certificates_equal { "equal" } else { "differ" },
                    check.predicate,
                    v.predicate,
                );
            }
        }
        let _ = writeln!(out, "classes n={}: {}", self.n, self.classes);
        out
    }
}

/// Left index, predicate values, certificate equality, right index.
type PairOutcome = (usize, [bool; 5], bool, usize);

struct Profile {
    graph: Graph,
    form: CanonicalForm,
    certificate: ClassCertificate,
    switch_forms: BTreeSet<CanonicalForm>,
    switching_graph: CanonicalForm,
    doubled: CanonicalForm,
    facets: FacetFamily,
}

impl Profile {
    fn of(graph: Graph) -> Result<Self> {
        let n = graph.n();
        let switch_forms = (0..1u32 << n)
            .map(|s| canonical_form(&graph.switch(VertexSet::from_bits(s as u16))))
            .collect();
        Ok(Profile {
            graph,
            form: canonical_form(&graph),
            certificate: certificate(&graph)?,
            switch_forms,
            switching_graph: canonical_form(&graph.switching_graph()?),
            doubled: canonical_form(&graph_of_epsilon(&doubled_algebra(&epsilon_of_graph(&graph))?)),
            facets: facets(&graph),
        })
    }
}

/// Runs every biconditional at order `n` (`2 <= n <= 5`).
pub fn verify_main_theorem(n: usize) -> Result<VerifyReport> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    if n > MAX_VERIFY_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            cap: MAX_VERIFY_VERTICES,
        });
    }
    let profiles: Vec<Profile> = (0..1u128 << pair_count(n))
        .into_par_iter()
        .map(|code| Profile::of(Graph::from_code(n, code)?))
        .collect::<Result<_>>()?;

    let mut reach: HashMap<CanonicalForm, BTreeSet<CanonicalForm>> = HashMap::new();
    for p in &profiles {
        if !reach.contains_key(&p.form) {
            reach.insert(p.form.clone(), mutation_class(&p.graph)?);
        }
    }

    let catalog = enumerate_classes(n)?;
    let exhaustive_pairs = n <= ALL_PAIRS_UP_TO;
    let lefts: Vec<usize> = if exhaustive_pairs {
        (0..profiles.len()).collect()
    } else {
        catalog
            .classes
            .iter()
            .map(|c| c.representative.code() as usize)
            .collect()
    };

    let per_left: Vec<Vec<PairOutcome>> = lefts
        .par_iter()
        .map(|&i| {
            let g = &profiles[i];
            profiles
                .iter()
                .enumerate()
                .map(|(j, h)| {
                    let values = [
                        g.switch_forms.contains(&h.form),
                        g.switching_graph == h.switching_graph,
                        g.doubled == h.doubled,
                        facet_families_isomorphic(&g.facets, &h.facets).is_some(),
                        reach[&g.form].contains(&h.form),
                    ];
                    (i, values, g.certificate == h.certificate, j)
                })
                .collect()
        })
        .collect();

    let mut checks: Vec<Biconditional> = PREDICATES
        .iter()
        .map(|&predicate| Biconditional {
            predicate,
            pairs: 0,
            violations: Vec::new(),
        })
        .collect();
    for (i, values, certificates_equal, j) in per_left.into_iter().flatten() {
        for (check, &value) in checks.iter_mut().zip(&values) {
            check.pairs += 1;
            if value != certificates_equal {
                check.violations.push(Violation {
                    left: profiles[i].graph,
                    right: profiles[j].graph,
                    certificates_equal,
                    predicate: value,
                });
            }
        }
    }
    let pairs = checks[0].pairs;
    Ok(VerifyReport {
        n,
        exhaustive_pairs,
        pairs,
        classes: catalog.class_count(),
        checks,
    })
}
