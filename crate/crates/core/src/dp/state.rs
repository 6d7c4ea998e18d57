//! Frontier states: degree parity and connectivity of one aisle's vertices.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mark {
    Zero,
    Even,
    Uneven,
}

impl Mark {
    pub fn from_degree(d: u32) -> Mark {
        match d {
            0 => Mark::Zero,
            d if d % 2 == 1 => Mark::Uneven,
            _ => Mark::Even,
        }
    }

    /// Mark after adding `d` edges to a vertex currently marked `self`.
    pub fn with_edges(self, d: u32) -> Mark {
        match (self, d) {
            (m, 0) => m,
            (Mark::Zero, d) | (Mark::Even, d) => {
                if d % 2 == 1 {
                    Mark::Uneven
                } else {
                    Mark::Even
                }
            }
            (Mark::Uneven, d) => {
                if d % 2 == 1 {
                    Mark::Even
                } else {
                    Mark::Uneven
                }
            }
        }
    }

    fn symbol(self) -> char {
        match self {
            Mark::Zero => '0',
            Mark::Even => 'E',
            Mark::Uneven => 'U',
        }
    }
}

/// Parity and component partition of the frontier aisle's vertices.
///
/// `comp[j]` is `None` exactly when `marks[j]` is `Zero`; component labels
/// are numbered in order of first appearance from the bottom vertex. A
/// `closed` state holds one finished component that touches no frontier
/// vertex; all its marks are `Zero`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrontierState {
    marks: Vec<Mark>,
    comp: Vec<Option<u8>>,
    closed: bool,
}

impl FrontierState {
    /// The empty state before any edge is placed.
    pub fn empty(n: usize) -> Self {
        Self { marks: vec![Mark::Zero; n], comp: vec![None; n], closed: false }
    }

    pub fn closed(n: usize) -> Self {
        Self { marks: vec![Mark::Zero; n], comp: vec![None; n], closed: true }
    }

    /// Builds a canonical state from raw marks and arbitrary component keys.
    pub fn new(marks: Vec<Mark>, keys: &[Option<usize>], closed: bool) -> Self {
        assert_eq!(marks.len(), keys.len());
        let mut seen: Vec<usize> = Vec::new();
        let comp = keys
            .iter()
            .zip(&marks)
            .map(|(k, m)| {
                assert_eq!(k.is_some(), *m != Mark::Zero, "component keys must match nonzero marks");
                k.map(|k| match seen.iter().position(|&s| s == k) {
                    Some(i) => i as u8,
                    None => {
                        seen.push(k);
                        (seen.len() - 1) as u8
                    }
                })
            })
            .collect();
        Self { marks, comp, closed }
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn comp(&self) -> &[Option<u8>] {
        &self.comp
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn components(&self) -> usize {
        self.comp.iter().flatten().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// Short label: marks from the top vertex down, then the component count
    /// (a closed state counts its finished component), then `C`.
    pub fn label(&self) -> String {
        let mut s: String = self.marks.iter().rev().map(|m| m.symbol()).collect();
        s.push_str(&(self.components() + usize::from(self.closed)).to_string());
        s.push('C');
        s
    }
}

impl fmt::Display for FrontierState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Everything placed on the current aisle before moving the frontier on.
pub(crate) struct AisleWork<'a> {
    /// Vertex has any incident edge (left, vertical or right).
    pub in_graph: &'a [bool],
    /// Vertex pairs joined by vertical edges on this aisle.
    pub joins: &'a [(usize, usize)],
    /// Right-hand horizontal counts toward the next aisle.
    pub right: &'a [u8],
    /// A vertex that must belong to the tour (the depot), if on this aisle.
    pub required_vertex: Option<usize>,
}

/// Moves the frontier from the current aisle to the next one. `current`
/// carries the components already attached to the current aisle. Returns
/// `None` when a component is stranded away from the frontier while
/// others remain.
pub(crate) fn advance(current: &FrontierState, work: &AisleWork<'_>) -> Option<FrontierState> {
    let n = current.marks.len();
    let k = current.components();
    // nodes: component labels 0..k, then vertices k..k+n
    let mut uf = UnionFind::new(k + n);
    for (j, c) in current.comp.iter().enumerate() {
        if let Some(c) = c {
            uf.union(*c as usize, k + j);
        }
    }
    for &(a, b) in work.joins {
        uf.union(k + a, k + b);
    }

    let mut finished = usize::from(current.closed);
    if let Some(v) = work.required_vertex {
        if !work.in_graph[v] {
            finished += 1;
        }
    }
    let mut roots: Vec<(usize, bool)> = Vec::new();
    for j in 0..n {
        if !work.in_graph[j] {
            continue;
        }
        let r = uf.find(k + j);
        let frontier = work.right[j] > 0;
        match roots.iter_mut().find(|(root, _)| *root == r) {
            Some(entry) => entry.1 |= frontier,
            None => roots.push((r, frontier)),
        }
    }
    finished += roots.iter().filter(|(_, f)| !f).count();
    let live = roots.iter().filter(|(_, f)| *f).count();

    match (finished, live) {
        (0, _) => {
            let marks: Vec<Mark> = work.right.iter().map(|&c| Mark::from_degree(c as u32)).collect();
            let keys: Vec<Option<usize>> = (0..n)
                .map(|j| (work.right[j] > 0).then(|| uf.find(k + j)))
                .collect();
            Some(FrontierState::new(marks, &keys, false))
        }
        (1, 0) => Some(FrontierState::closed(n)),
        _ => None,
    }
}
