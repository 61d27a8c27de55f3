use std::fmt;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skewproj::classify::{
    certificate_with_cap, enumerate_classes_bucketed, enumerate_classes_with_cap, mutation_path_with_cap,
    switching_equivalent_with_cap, ABSOLUTE_ENUMERATION_LIMIT, MAX_CERTIFICATE_VERTICES, MAX_ENUMERATION_VERTICES,
    MAX_MUTATION_VERTICES,
};
use skewproj::graph::MAX_VERTICES;
use skewproj::verify::MAX_VERIFY_VERTICES;
use skewproj::{
    dimension, doubled_algebra, epsilon_of_graph, facets, graph_of_epsilon, point_variety, stanley_reisner_generators,
    type_formula_complete_union, type_vector, verify_main_theorem, EpsilonMatrix, Graph, VertexSet,
};

#[derive(Parser, Debug)]
#[command(name = "skewproj", version, about = "Invariants of (±1)-skew polynomial algebras")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Raise the vertex cap of certificate, equivalent, path and enumerate (unsupported above the defaults).
    #[arg(long, global = true, value_name = "N")]
    pub limit_n: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Where a graph or ε-matrix comes from.
#[derive(Args, Debug)]
pub struct Source {
    /// Input file, or `-` for standard input.
    #[arg(value_name = "FILE", conflicts_with = "inline")]
    pub file: Option<String>,
    /// Input text given directly, with `;` standing for a line break.
    #[arg(long, value_name = "TEXT")]
    pub inline: Option<String>,
}

/// Two inputs: two files (or `-`), or `--inline` given twice.
#[derive(Args, Debug)]
pub struct Pair {
    #[arg(value_name = "FILE", num_args = 0..=2, conflicts_with = "inline")]
    pub files: Vec<String>,
    #[arg(long, value_name = "TEXT", num_args = 1)]
    pub inline: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Method {
    /// Flood fill over switching and relabeling orbits.
    Flood,
    /// Bucket every labeled graph by its class certificate.
    Bucket,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Associated graph of an ε-matrix.
    Graph(Source),
    /// ε-matrix of a graph.
    Epsilon(Source),
    /// Mutation at one vertex.
    Mutate {
        #[command(flatten)]
        source: Source,
        /// 1-based vertex.
        #[arg(long)]
        vertex: usize,
    },
    /// Switching with respect to a vertex set.
    Switch {
        #[command(flatten)]
        source: Source,
        /// Comma-separated 1-based vertices, e.g. `1,2,3`; empty for the empty set.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<usize>,
    },
    /// Switching graph on 2n vertices; (u, layer) is vertex u + layer*n (1-based on output).
    SwGraph(Source),
    /// Doubled ε-matrix on x_1..x_n, y_1..y_n.
    Double(Source),
    /// Facets of the simplicial complex.
    Facets(Source),
    /// Point variety as a union of coordinate subspaces.
    Variety {
        #[command(flatten)]
        source: Source,
        /// Join components with the Unicode union sign.
        #[arg(long)]
        unicode: bool,
    },
    /// Type vector (t_{n-1}, ..., t_1).
    Type {
        #[command(flatten)]
        source: Source,
        /// Sizes of complete graphs in a disjoint union, instead of an input graph.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["file", "inline"])]
        parts: Option<Vec<usize>>,
    },
    /// Dimension of the point variety.
    Dim(Source),
    /// Cubic generators of the Stanley-Reisner ideal.
    SrIdeal(Source),
    /// Switching equivalence of two graphs; exit status 0 if equivalent, 1 if not.
    Equivalent(Pair),
    /// Switching-class certificate.
    Certificate(Source),
    /// Mutation sequence and relabeling from the first graph to the second; exit status 1 if none.
    Path(Pair),
    /// Catalog of switching classes on n vertices.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value = "flood")]
        method: Method,
    },
    /// Check every classification criterion against certificates; exit status 0 only if all agree.
    Verify {
        /// Orders to check (default 2 3 4 5).
        orders: Vec<usize>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Library(skewproj::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(message) => write!(f, "error: {message}"),
            Failure::Library(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<skewproj::Error> for Failure {
    fn from(e: skewproj::Error) -> Self {
        Failure::Library(e)
    }
}

pub struct Outcome {
    pub output: String,
    pub status: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: 0 }
    }
}

fn read_text(file: Option<&str>, inline: Option<&str>) -> Result<String, Failure> {
    if let Some(text) = inline {
        return Ok(text.replace(';', "\n"));
    }
    match file {
        None | Some("-") => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}"))),
    }
}

fn read_graph(source: &Source) -> Result<Graph, Failure> {
    Ok(read_text(source.file.as_deref(), source.inline.as_deref())?.parse()?)
}

fn read_epsilon(source: &Source) -> Result<EpsilonMatrix, Failure> {
    Ok(read_text(source.file.as_deref(), source.inline.as_deref())?.parse()?)
}

fn read_pair(pair: &Pair) -> Result<(Graph, Graph), Failure> {
    let texts: Vec<String> = if pair.inline.is_empty() {
        if pair.files.len() != 2 {
            return Err(Failure::Input(format!("expected two input files, got {}", pair.files.len())));
        }
        if pair.files.iter().all(|f| f == "-") {
            return Err(Failure::Input("standard input can supply only one of the two graphs".into()));
        }
        pair.files
            .iter()
            .map(|f| read_text(Some(f), None))
            .collect::<Result<_, _>>()?
    } else {
        if pair.inline.len() != 2 {
            return Err(Failure::Input(format!("expected --inline twice, got {}", pair.inline.len())));
        }
        pair.inline.iter().map(|t| t.replace(';', "\n")).collect()
    };
    Ok((texts[0].parse()?, texts[1].parse()?))
}

fn emit_json(value: &Value) -> String {
    // Through `Value`, whose maps are sorted, so re-serializing parsed output is byte-identical.
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn to_value<T: serde::Serialize>(item: &T) -> Value {
    serde_json::to_value(item).expect("library types serialize")
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect();
    json!({ "n": g.n(), "edges": edges })
}

fn epsilon_json(e: &EpsilonMatrix) -> Value {
    json!({ "n": e.n(), "matrix": e.rows() })
}

fn graph_output(g: &Graph, as_json: bool) -> String {
    if as_json {
        emit_json(&graph_json(g))
    } else {
        g.to_text()
    }
}

fn epsilon_output(e: &EpsilonMatrix, as_json: bool) -> String {
    if as_json {
        emit_json(&epsilon_json(e))
    } else {
        e.to_string()
    }
}

fn sets_json(sets: &[VertexSet]) -> Value {
    to_value(&sets.iter().map(|s| s.to_one_based()).collect::<Vec<_>>())
}

fn cap(cli: &Cli, default: usize) -> usize {
    cli.limit_n.unwrap_or(default).clamp(default, MAX_VERTICES)
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let as_json = cli.json;
    let outcome = match &cli.command {
        Command::Graph(source) => Outcome::ok(graph_output(&graph_of_epsilon(&read_epsilon(source)?), as_json)),
        Command::Epsilon(source) => Outcome::ok(epsilon_output(&epsilon_of_graph(&read_graph(source)?), as_json)),
        Command::Mutate { source, vertex } => {
            let g = read_graph(source)?;
            if *vertex == 0 || *vertex > g.n() {
                return Err(skewproj::Error::VertexOutOfRange { vertex: *vertex, n: g.n() }.into());
            }
            Outcome::ok(graph_output(&g.mutate(vertex - 1)?, as_json))
        }
        Command::Switch { source, set } => {
            let g = read_graph(source)?;
            let s = VertexSet::from_one_based(set, g.n())?;
            Outcome::ok(graph_output(&g.switch(s), as_json))
        }
        Command::SwGraph(source) => Outcome::ok(graph_output(&read_graph(source)?.switching_graph()?, as_json)),
        Command::Double(source) => Outcome::ok(epsilon_output(&doubled_algebra(&read_epsilon(source)?)?, as_json)),
        Command::Facets(source) => {
            let family = facets(&read_graph(source)?);
            Outcome::ok(if as_json {
                emit_json(&json!({ "n": family.n(), "facets": sets_json(family.facets()) }))
            } else {
                family.facets().iter().map(|f| format!("{f}\n")).collect()
            })
        }
        Command::Variety { source, unicode } => {
            let variety = point_variety(&read_graph(source)?)?;
            Outcome::ok(if as_json {
                emit_json(&to_value(&variety))
            } else {
                format!("{}\n", variety.render(if *unicode { " ∪ " } else { " u " }))
            })
        }
        Command::Type { source, parts } => {
            let t = match parts {
                // A single complete graph is outside the pair-count formula.
                Some(parts) if parts.len() == 1 => type_vector(&Graph::complete_union(parts)?)?,
                Some(parts) => type_formula_complete_union(parts)?,
                None => type_vector(&read_graph(source)?)?,
            };
            Outcome::ok(if as_json {
                emit_json(&json!({ "type": t.entries() }))
            } else {
                format!("{t}\n")
            })
        }
        Command::Dim(source) => {
            let d = dimension(&read_graph(source)?)?;
            Outcome::ok(if as_json {
                emit_json(&json!({ "dimension": d }))
            } else {
                format!("{d}\n")
            })
        }
        Command::SrIdeal(source) => {
            let gens = stanley_reisner_generators(&read_graph(source)?);
            Outcome::ok(if as_json {
                emit_json(&json!({ "generators": sets_json(&gens) }))
            } else {
                gens.iter()
                    .map(|s| {
                        let vars: Vec<String> = s.to_one_based().iter().map(|v| format!("x{v}")).collect();
                        format!("{}\n", vars.join("*"))
                    })
                    .collect()
            })
        }
        Command::Equivalent(pair) => {
            let (g, h) = read_pair(pair)?;
            let limit = cap(cli, MAX_CERTIFICATE_VERTICES);
            let equivalent = switching_equivalent_with_cap(&g, &h, limit)?;
            let output = if as_json {
                emit_json(&json!({
                    "equivalent": equivalent,
                    "certificates": [
                        certificate_with_cap(&g, limit)?.to_hex(),
                        certificate_with_cap(&h, limit)?.to_hex(),
                    ],
                }))
            } else if equivalent {
                "equivalent\n".to_string()
            } else {
                "not equivalent\n".to_string()
            };
            Outcome {
                output,
                status: u8::from(!equivalent),
            }
        }
        Command::Certificate(source) => {
            let g = read_graph(source)?;
            let c = certificate_with_cap(&g, cap(cli, MAX_CERTIFICATE_VERTICES))?;
            Outcome::ok(if as_json {
                emit_json(&json!({ "n": g.n(), "certificate": c.to_hex() }))
            } else {
                format!("{}\n", c.to_hex())
            })
        }
        Command::Path(pair) => {
            let (g, h) = read_pair(pair)?;
            let path = mutation_path_with_cap(&g, &h, cap(cli, MAX_MUTATION_VERTICES))?;
            let status = u8::from(path.is_none());
            let output = match (&path, as_json) {
                (Some(p), true) => emit_json(&json!({
                    "mutations": p.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "permutation": p.permutation.as_slice().iter().map(|v| v + 1).collect::<Vec<_>>(),
                })),
                (None, true) => emit_json(&Value::Null),
                (Some(p), false) => {
                    let vertices: Vec<String> = p.vertices.iter().map(|v| (v + 1).to_string()).collect();
                    format!("mutations: {}\npermutation: {}\n", vertices.join(" "), p.permutation)
                }
                (None, false) => "no mutation path\n".to_string(),
            };
            Outcome { output, status }
        }
        Command::Enumerate { n, method } => {
            let limit = cap(cli, MAX_ENUMERATION_VERTICES).min(ABSOLUTE_ENUMERATION_LIMIT);
            let catalog = match method {
                Method::Flood => enumerate_classes_with_cap(*n, limit)?,
                Method::Bucket if *n > limit => {
                    return Err(skewproj::Error::TooManyVertices { n: *n, cap: limit }.into())
                }
                Method::Bucket => enumerate_classes_bucketed(*n)?,
            };
            let document = catalog.to_document();
            Outcome::ok(if as_json {
                emit_json(&to_value(&document))
            } else {
                let mut out = format!("n={} classes={}\n", document.n, document.class_count);
                for (k, class) in document.classes.iter().enumerate() {
                    let edges: Vec<String> = class.representative_edges.iter().map(|[u, v]| format!("{u}{v}")).collect();
                    let t: Vec<String> = class.type_vector.iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        out,
                        "{}\tedges [{}]\tsize {}\ttype ({})\tdim {}\t{}",
                        k + 1,
                        edges.join(" "),
                        class.labeled_count,
                        t.join(","),
                        class.dimension,
                        class.certificate_hex,
                    );
                }
                out
            })
        }
        Command::Verify { orders } => {
            let orders: Vec<usize> = if orders.is_empty() {
                (2..=MAX_VERIFY_VERTICES).collect()
            } else {
                orders.clone()
            };
            let reports = orders
                .iter()
                .map(|&n| verify_main_theorem(n))
                .collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(|r| r.passed());
            let output = if as_json {
                let items: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "pairs": r.pairs,
                            "classes": r.classes,
                            "all_labeled_pairs": r.exhaustive_pairs,
                            "checks": r.checks.iter().map(|c| json!({
                                "predicate": c.predicate,
                                "pairs": c.pairs,
                                "violations": c.violations.len(),
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit_json(&json!({ "passed": passed, "reports": items }))
            } else {
                reports.iter().map(|r| r.render()).collect()
            };
            Outcome {
                output,
                status: u8::from(!passed),
            }
        }
    };
    Ok(outcome)
}
