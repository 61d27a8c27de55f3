//! Sign matrices of (±1)-skew polynomial algebras `x_i x_j = ε_ij x_j x_i`,
//! their associated graphs, and the doubled algebra on `x_1..x_n, y_1..y_n`.

use std::fmt;
use std::str::FromStr;

use crate::canon::is_isomorphic;
use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_count, Graph, MAX_SWITCHING_INPUT, MAX_VERTICES};

/// A symmetric `n × n` matrix over `{+1, -1}` with unit diagonal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EpsilonMatrix {
    n: usize,
    signs: Vec<i8>,
}

impl EpsilonMatrix {
    /// Validates rows of `±1` entries. Diagnostics use 1-based `(i,j)`.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, cap: MAX_VERTICES });
        }
        let mut signs = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: i + 2,
                    message: format!("row {} has {} entries, expected {n}", i + 1, row.len()),
                });
            }
            for (j, &e) in row.iter().enumerate() {
                if e != 1 && e != -1 {
                    return Err(Error::InvalidEntry {
                        i: i + 1,
                        j: j + 1,
                        value: e.to_string(),
                    });
                }
                signs.push(e);
            }
        }
        let eps = EpsilonMatrix { n, signs };
        eps.validate()?;
        Ok(eps)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.get(i, i) != 1 {
                return Err(Error::NonUnitDiagonal { i: i + 1 });
            }
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::Asymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(())
    }

    /// The commutative case, every entry `+1`.
    pub fn commutative(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, cap: MAX_VERTICES });
        }
        Ok(EpsilonMatrix {
            n,
            signs: vec![1; n * n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `ε_ij` (0-based indices).
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.signs[i * self.n + j]
    }

    fn set_pair(&mut self, i: usize, j: usize, sign: i8) {
        self.signs[i * self.n + j] = sign;
        self.signs[j * self.n + i] = sign;
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.signs.chunks(self.n.max(1)).take(self.n).map(<[i8]>::to_vec).collect()
    }

    /// Simultaneous row/column relabeling: the result has `ε'_{σ(i)σ(j)} = ε_ij`.
    pub fn permute(&self, sigma: &crate::graph::Permutation) -> EpsilonMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.signs[sigma.image(i) * self.n + sigma.image(j)] = self.get(i, j);
            }
        }
        out
    }
}

/// The associated graph: `ij` is an edge iff `i != j` and `ε_ij = +1`.
pub fn graph_of_epsilon(eps: &EpsilonMatrix) -> Graph {
    let mut edges = Vec::new();
    for i in 0..eps.n {
        for j in i + 1..eps.n {
            if eps.get(i, j) == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(eps.n, &edges).expect("sizes are validated on construction")
}

/// The sign matrix whose associated graph is `g`.
pub fn epsilon_of_graph(g: &Graph) -> EpsilonMatrix {
    let n = g.n();
    let mut eps = EpsilonMatrix::commutative(n).expect("graphs respect the vertex cap");
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                eps.set_pair(i, j, -1);
            }
        }
    }
    eps
}

/// Sign matrix of the doubled algebra, ordered `x_1..x_n, y_1..y_n`.
///
/// The `x`-`x` and `y`-`y` blocks repeat `ε`. The relations `x_i y_j + ε_ij y_j x_i`
/// (`i != j`) and `x_i y_i - y_i x_i` give the cross block `-ε_ij` off the
/// diagonal and `+1` on it.
pub fn doubled_algebra(eps: &EpsilonMatrix) -> Result<EpsilonMatrix> {
    let n = eps.n;
    if n > MAX_SWITCHING_INPUT {
        return Err(Error::TooManyVertices {
            n,
            cap: MAX_SWITCHING_INPUT,
        });
    }
    let mut doubled = EpsilonMatrix::commutative(2 * n)?;
    for i in 0..n {
        for j in 0..n {
            let e = eps.get(i, j);
            doubled.set_pair(i, j, e);
            doubled.set_pair(n + i, n + j, e);
            doubled.set_pair(i, n + j, if i == j { 1 } else { -e });
        }
    }
    Ok(doubled)
}

/// Graded-algebra isomorphism: the associated graphs are isomorphic.
pub fn algebras_isomorphic(e1: &EpsilonMatrix, e2: &EpsilonMatrix) -> bool {
    e1.n == e2.n && is_isomorphic(&graph_of_epsilon(e1), &graph_of_epsilon(e2)).is_some()
}

impl FromStr for EpsilonMatrix {
    type Err = Error;

    /// First line `n`, then `n` rows of `n` entries from `+1`, `-1`, `1`.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing dimension".into(),
        })?;
        let n = parse_count(first, header)?;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, cap: MAX_VERTICES });
        }
        let mut rows = Vec::with_capacity(n);
        for (line, content) in lines.by_ref().take(n) {
            let mut row = Vec::with_capacity(n);
            for (j, token) in content.split_whitespace().enumerate() {
                let sign = match token {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    other => {
                        return Err(Error::InvalidEntry {
                            i: rows.len() + 1,
                            j: j + 1,
                            value: other.to_string(),
                        })
                    }
                };
                row.push(sign);
            }
            if row.len() != n {
                return Err(Error::Parse {
                    line,
                    message: format!("row {} has {} entries, expected {n}", rows.len() + 1, row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Parse {
                line: first,
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse {
                line,
                message: "trailing content after the matrix".into(),
            });
        }
        EpsilonMatrix::from_rows(&rows)
    }
}

/// Text format, entries written `+1` / `-1`.
impl fmt::Display for EpsilonMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            let row: Vec<&str> = (0..self.n)
                .map(|j| if self.get(i, j) == 1 { "+1" } else { "-1" })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Permutation;

    fn skew_all(n: usize) -> EpsilonMatrix {
        let g = Graph::empty(n).unwrap();
        epsilon_of_graph(&g)
    }

    #[test]
    fn associated_graphs() {
        assert_eq!(
            graph_of_epsilon(&EpsilonMatrix::commutative(4).unwrap()),
            Graph::complete(4).unwrap()
        );
        assert_eq!(graph_of_epsilon(&skew_all(3)), Graph::empty(3).unwrap());
        let eps: EpsilonMatrix = "3\n1 1 -1\n1 1 -1\n-1 -1 1\n".parse().unwrap();
        assert_eq!(graph_of_epsilon(&eps), Graph::from_edges(3, &[(0, 1)]).unwrap());
    }

    #[test]
    fn inverse_maps() {
        assert_eq!(
            epsilon_of_graph(&Graph::complete(2).unwrap()),
            EpsilonMatrix::commutative(2).unwrap()
        );
        assert_eq!(skew_all(2).rows(), vec![vec![1, -1], vec![-1, 1]]);
        for code in 0..1u128 << 10 {
            let g = Graph::from_code(5, code).unwrap();
            assert_eq!(graph_of_epsilon(&epsilon_of_graph(&g)), g);
        }
    }

    #[test]
    fn validation_names_offending_entry() {
        assert_eq!(
            EpsilonMatrix::from_rows(&[vec![1, 1], vec![-1, 1]]),
            Err(Error::Asymmetric { i: 1, j: 2 })
        );
        assert_eq!(
            EpsilonMatrix::from_rows(&[vec![1, 1], vec![1, -1]]),
            Err(Error::NonUnitDiagonal { i: 2 })
        );
        assert!(matches!(
            "2\n1 0\n0 1\n".parse::<EpsilonMatrix>(),
            Err(Error::InvalidEntry { i: 1, j: 2, .. })
        ));
        assert!(matches!("2\n1 1\n".parse::<EpsilonMatrix>(), Err(Error::Parse { .. })));
        assert!(matches!("2\n1 1 1\n1 1\n".parse::<EpsilonMatrix>(), Err(Error::Parse { line: 2, .. })));
        assert!("2\n+1 -1\n-1 +1\n".parse::<EpsilonMatrix>().is_ok());
    }

    #[test]
    fn text_round_trip() {
        let eps = epsilon_of_graph(&Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap());
        assert_eq!(eps.to_string().parse::<EpsilonMatrix>().unwrap(), eps);
        assert_eq!(EpsilonMatrix::commutative(0).unwrap().to_string(), "0\n");
    }

    #[test]
    fn doubling_small_cases() {
        let one = doubled_algebra(&EpsilonMatrix::commutative(1).unwrap()).unwrap();
        assert_eq!(one, EpsilonMatrix::commutative(2).unwrap());
        let two = doubled_algebra(&EpsilonMatrix::commutative(2).unwrap()).unwrap();
        let minus: Vec<(usize, usize)> = (0..2)
            .flat_map(|i| (2..4).map(move |j| (i, j)))
            .filter(|&(i, j)| two.get(i, j) == -1)
            .collect();
        assert_eq!(minus, vec![(0, 3), (1, 2)]);
        assert!(doubled_algebra(&EpsilonMatrix::commutative(9).unwrap()).is_err());
    }

    #[test]
    fn doubling_matches_switching_graph_exhaustively() {
        for n in 0..=5 {
            for code in 0..1u128 << crate::graph::pair_count(n) {
                let g = Graph::from_code(n, code).unwrap();
                let doubled = doubled_algebra(&epsilon_of_graph(&g)).unwrap();
                assert_eq!(graph_of_epsilon(&doubled), g.switching_graph().unwrap());
            }
        }
    }

    #[test]
    fn doubling_commutes_with_relabeling() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let eps = epsilon_of_graph(&g);
        let sigma = Permutation::from_images(vec![2, 0, 3, 1]).unwrap();
        let mut doubled_images: Vec<usize> = sigma.as_slice().to_vec();
        doubled_images.extend(sigma.as_slice().iter().map(|v| v + 4));
        let doubled_sigma = Permutation::from_images(doubled_images).unwrap();
        assert_eq!(
            doubled_algebra(&eps).unwrap().permute(&doubled_sigma),
            doubled_algebra(&eps.permute(&sigma)).unwrap()
        );
    }

    #[test]
    fn isomorphism_examples() {
        let edge12 = epsilon_of_graph(&Graph::from_edges(3, &[(0, 1)]).unwrap());
        let edge13 = epsilon_of_graph(&Graph::from_edges(3, &[(0, 2)]).unwrap());
        let k3 = EpsilonMatrix::commutative(3).unwrap();
        assert!(algebras_isomorphic(&edge12, &edge13));
        assert!(!algebras_isomorphic(&edge12, &k3));
        assert!(!algebras_isomorphic(&k3, &EpsilonMatrix::commutative(4).unwrap()));
        let sigma = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert!(algebras_isomorphic(&edge12, &edge12.permute(&sigma)));
    }
}
