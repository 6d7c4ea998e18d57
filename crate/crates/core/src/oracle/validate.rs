use std::fmt;

use super::{required_nodes, Node, WarehouseGraph};
use crate::model::{tour_length, EdgeMultiset, Instance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An edge that does not exist in the warehouse graph.
    UnknownEdge(String),
    /// A required point (depot or pick) with no incident edge.
    MissingRequired(Node),
    /// The edges form more than one component; one witness node per component.
    Disconnected(Vec<Node>),
    OddDegree { node: Node, degree: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownEdge(e) => write!(f, "unknown edge {e}"),
            Violation::MissingRequired((a, p)) => write!(f, "required point ({a}, {p}) not visited"),
            Violation::Disconnected(w) => write!(f, "{} components, witnesses {w:?}", w.len()),
            Violation::OddDegree { node: (a, p), degree } => write!(f, "odd degree {degree} at ({a}, {p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks that `edges` covers the depot and every pick, is connected, and
/// has only even degrees. An empty multiset is the trivial tour when there
/// are no picks.
pub fn validate_tour_subgraph(instance: &Instance, edges: &EdgeMultiset) -> Verdict {
    if let Err(e) = tour_length(instance, edges) {
        return Verdict { violations: vec![Violation::UnknownEdge(e.to_string())] };
    }
    let graph = WarehouseGraph::build(instance);
    let size = graph.nodes.len();
    let mut degree = vec![0u32; size];
    let mut links: Vec<(usize, usize)> = Vec::new();
    let layout = instance.layout();
    for ((g, j), m) in edges.horizontal() {
        let pos = layout.vertex_position(j);
        let (a, b) = (graph.index[&(g, pos)], graph.index[&(g + 1, pos)]);
        degree[a] += m;
        degree[b] += m;
        links.push((a, b));
    }
    for ((aisle, lo, hi), m) in edges.vertical() {
        let (a, b) = (graph.index[&(aisle, lo)], graph.index[&(aisle, hi)]);
        degree[a] += m;
        degree[b] += m;
        links.push((a, b));
    }

    let mut violations = Vec::new();
    let required = required_nodes(instance);
    let trivial = edges.is_empty() && required.len() == 1;
    if !trivial {
        for node in &required {
            if degree[graph.index[node]] == 0 {
                violations.push(Violation::MissingRequired(*node));
            }
        }
    }

    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in &links {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut witnesses: Vec<(usize, Node)> = Vec::new();
    for (v, &d) in degree.iter().enumerate() {
        if d > 0 {
            let r = find(&mut parent, v);
            if !witnesses.iter().any(|(root, _)| *root == r) {
                witnesses.push((r, graph.nodes[v]));
            }
        }
    }
    if witnesses.len() > 1 {
        violations.push(Violation::Disconnected(witnesses.into_iter().map(|(_, n)| n).collect()));
    }

    for (v, &d) in degree.iter().enumerate() {
        if d % 2 == 1 {
            violations.push(Violation::OddDegree { node: graph.nodes[v], degree: d });
        }
    }
    Verdict { violations }
}
