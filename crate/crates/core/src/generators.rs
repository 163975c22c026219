//! Named graph families and the cage fixtures.
//!
//! Canonical labelings:
//! - `complete(n)`: vertices `0..n`, edges `(i, j)` for `i < j` in lexicographic order.
//! - `complete_bipartite(a, b)`: part A is `0..a`, part B is `a..a+b`.
//! - `complete_multipartite(sizes)`: parts are consecutive blocks of labels.
//! - `circulant(n, S)`: vertex `i` is joined to `i + s mod n` for each `s` in `S`;
//!   `s` and `n - s` denote the same edges and `s = n/2` contributes a single edge.
//! - `cycle(n)`: `i -- i+1 mod n`. `path(n)`: `i -- i+1` for `i < n-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::GraphError;
use crate::graph::Graph;
use crate::parse::parse_graph6;

/// Cubic cages shipped as graph6 strings, keyed by girth.
pub const CAGE_FIXTURES: &[(&str, usize, &str)] = &[
    ("k4", 3, "C~"),
    ("k33", 4, "EFz_"),
    ("petersen", 5, "IheA@GUAo"),
    ("heawood", 6, "MhEGHC@AI?_PC@_G_"),
    ("mcgee", 7, "WhCGGD@?G?`@_@??_GG_@??C?GGC?H??C?@@?C?GG??o?@@"),
    (
        "tutte-coxeter",
        8,
        "]hCGGC@GG?_@?@A?_?G@@??E??GG?G?OC??@??GI???_O?@?@?@??A?a???G??@@?O??E?A??G",
    ),
    ("benson", 12, BENSON_GRAPH6),
];

/// The unique (3,12) cage: point-line incidence graph of the split Cayley
/// hexagon of order 2.
const BENSON_GRAPH6: &str = "~?@}iAGGA@?G??@?@?@???OB????@G??G?????@???G??@@??A???@???C????G???A??????A??G????G?????_???B???O?_?????_?????G????@??????_?@???_?????@????G@???????G????????C????C??????@?O?????_???????_???C??O???????@???O????????????G???????A??A?????G????????GA??????@?????????C?G????????????????G????????@?@?????????????????@?????????@????@???????????????@??????????G????G????????????????G??????????G???????_??????????????G??????????@???????C???????????????@???????????@?????????????????A??????@????????????C??_?????????_????????????G???????O???@?????????????@?????A?????????????????????_????????????A??G??????????@??????????????_???????O?????_?????????????@???????????????????@?????????G??????????????G??C???????????C??????????????@????????_??????_???????????????_????@?????????????????????????@???????????????@???????????????????C????????????B????????????????????????G???????@G_????????O????_??_??????????A???@??????@?????G?@?????????O???_?????A?C?????????_????O???????A???A??C?????_?????????C????_???????@??C??????_??A?????????G???C?????????G???A?C??????C????????O??A???????????O????A?G????????O?????O??@?????????O???????O??@????????????O??@A??????????????C?_????A???????C???????C??O?????????????I????@?????????_??????_????A???????????@??_??C?????????A?????G?@????????????????G??_O???????????C?????A?????G????????????@?G??@???????";

/// Looks up a cubic cage fixture by girth.
pub fn cubic_cage(girth: usize) -> Result<Graph, GraphError> {
    CAGE_FIXTURES
        .iter()
        .find(|(_, g, _)| *g == girth)
        .ok_or_else(|| GraphError::InvalidParameters(format!("no (3,{girth}) cage fixture")))
        .and_then(|(_, _, g6)| parse_graph6(g6))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    Circulant(usize, Vec<usize>),
    Cycle(usize),
    Path(usize),
    /// A shipped fixture, by name (`petersen`) or as `cage:3:<girth>`.
    Fixture(String),
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid("complete graph needs n >= 2"));
    }
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::new(n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    complete_multipartite(&[a, b])
}

pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
    if sizes.len() < 2 || sizes.contains(&0) {
        return Err(invalid("multipartite graph needs at least two nonempty parts"));
    }
    let mut part = Vec::new();
    for (p, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(p, s));
    }
    let n = part.len();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| part[i] != part[j])
        .collect();
    Graph::new(n, edges)
}

pub fn circulant(n: usize, connections: &[usize]) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("circulant needs n >= 3"));
    }
    let mut steps = BTreeSet::new();
    for &s in connections {
        if s == 0 || s >= n {
            return Err(invalid(format!("connection {s} not in 1..{n}")));
        }
        steps.insert(s.min(n - s));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for &s in &steps {
            let j = (i + s) % n;
            // s = n/2 reaches each antipodal pair from both ends
            if 2 * s == n && j < i {
                continue;
            }
            edges.push((i, j));
        }
    }
    Graph::new(n, edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid("path needs n >= 2"));
    }
    Graph::new(n, (0..n - 1).map(|i| (i, i + 1)).collect())
}

impl Family {
    pub fn generate(&self) -> Result<Graph, GraphError> {
        match self {
            Family::Complete(n) => complete(*n),
            Family::CompleteBipartite(a, b) => complete_bipartite(*a, *b),
            Family::CompleteMultipartite(sizes) => complete_multipartite(sizes),
            Family::Circulant(n, s) => circulant(*n, s),
            Family::Cycle(n) => cycle(*n),
            Family::Path(n) => path(*n),
            Family::Fixture(name) => {
                if let Some(girth) = name.strip_prefix("cage:3:") {
                    let girth = girth
                        .parse()
                        .map_err(|_| invalid(format!("bad cage girth `{girth}`")))?;
                    return cubic_cage(girth);
                }
                CAGE_FIXTURES
                    .iter()
                    .find(|(key, _, _)| *key == name)
                    .ok_or_else(|| invalid(format!("unknown fixture `{name}`")))
                    .and_then(|(_, _, g6)| parse_graph6(g6))
            }
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>, GraphError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| invalid(format!("bad integer `{t}`")))
        })
        .collect()
}

fn parse_one(text: &str) -> Result<usize, GraphError> {
    text.trim()
        .parse()
        .map_err(|_| invalid(format!("bad integer `{text}`")))
}

impl FromStr for Family {
    type Err = GraphError;

    /// Accepts `complete:7`, `bipartite:3,3`, `multipartite:2,2,2,2`,
    /// `circulant:14:1,2,3,6`, `cycle:6`, `path:4`, `cage:3:8` or a fixture name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.splitn(2, ':');
        let kind = parts.next().unwrap_or_default();
        let rest = parts.next();
        let need = || rest.ok_or_else(|| invalid(format!("`{kind}` needs parameters")));
        match kind {
            "complete" => Ok(Family::Complete(parse_one(need()?)?)),
            "bipartite" | "complete_bipartite" => {
                let v = parse_list(need()?)?;
                match v.as_slice() {
                    [a, b] => Ok(Family::CompleteBipartite(*a, *b)),
                    _ => Err(invalid("bipartite takes exactly two part sizes")),
                }
            }
            "multipartite" | "complete_multipartite" => {
                Ok(Family::CompleteMultipartite(parse_list(need()?)?))
            }
            "circulant" => {
                let body = need()?;
                let (n, conn) = body
                    .split_once(':')
                    .ok_or_else(|| invalid("circulant expects `n:s1,s2,...`"))?;
                Ok(Family::Circulant(parse_one(n)?, parse_list(conn)?))
            }
            "cycle" => Ok(Family::Cycle(parse_one(need()?)?)),
            "path" => Ok(Family::Path(parse_one(need()?)?)),
            "cage" => Ok(Family::Fixture(s.to_string())),
            name if CAGE_FIXTURES.iter().any(|(k, _, _)| *k == name) && rest.is_none() => {
                Ok(Family::Fixture(name.to_string()))
            }
            _ => Err(invalid(format!("unknown generator `{s}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            Family::CompleteMultipartite(s) => write!(f, "multipartite:{}", join(s)),
            Family::Circulant(n, s) => write!(f, "circulant:{n}:{}", join(s)),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Fixture(name) => write!(f, "{name}"),
        }
    }
}

/// Parses a generator string and builds the graph.
pub fn generate(spec: &str) -> Result<Graph, GraphError> {
    spec.parse::<Family>()?.generate()
}
