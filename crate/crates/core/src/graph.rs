//! The auxiliary graph on the twist boxes: one edge per outer band and one
//! per central band.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::pairing::{pair_iterative, Direction, Pair};
use crate::partition::UnionFind;
use crate::sequence::{Mode, SignSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeSet {
    A,
    B,
}

/// Outer-band edges run minus -> plus, central-band edges plus -> minus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DirectedEdge {
    pub set: EdgeSet,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxGraph {
    pub seq: SignSeq,
    pub edges_a: Vec<Pair>,
    pub edges_b: Vec<Pair>,
}

/// Result of [`AuxGraph::is_path`] with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum PathVerdict {
    /// Vertex order along the path.
    Path(Vec<usize>),
    /// Vertices of a cycle in order; the last is joined back to the first.
    Cycle(Vec<usize>),
    /// The connected components.
    Disconnected(Vec<Vec<usize>>),
    /// A vertex of degree three or more.
    Branching { vertex: usize, degree: usize },
}

impl PathVerdict {
    pub fn is_path(&self) -> bool {
        matches!(self, PathVerdict::Path(_))
    }
}

impl AuxGraph {
    /// Build the graph of an odd-knot sequence from both pairings.
    pub fn build(seq: &SignSeq) -> Result<AuxGraph> {
        seq.validate(Mode::OddKnot)?;
        Self::build_any(seq)
    }

    /// Same construction without the knot check; even sequences give the
    /// full graph of the link case.
    pub fn build_any(seq: &SignSeq) -> Result<AuxGraph> {
        Ok(AuxGraph {
            seq: seq.clone(),
            edges_a: pair_iterative(seq, Direction::Ccw)?.pairs,
            edges_b: pair_iterative(seq, Direction::Cw)?.pairs,
        })
    }

    /// An arbitrary graph, for negative controls.
    pub fn from_parts(seq: SignSeq, edges_a: Vec<Pair>, edges_b: Vec<Pair>) -> AuxGraph {
        AuxGraph {
            seq,
            edges_a,
            edges_b,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.seq.len()
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        let a = self.edges_a.iter().map(|p| DirectedEdge {
            set: EdgeSet::A,
            tail: p.minus,
            head: p.plus,
        });
        let b = self.edges_b.iter().map(|p| DirectedEdge {
            set: EdgeSet::B,
            tail: p.plus,
            head: p.minus,
        });
        a.chain(b)
    }

    fn undirected(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges_a
            .iter()
            .chain(&self.edges_b)
            .map(|p| (p.minus, p.plus))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for (u, v) in self.undirected() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Vertices strictly between tail and head, counterclockwise from the
    /// tail.
    pub fn gap_set(&self, edge: DirectedEdge) -> Vec<usize> {
        let m = self.vertex_count();
        let dist = (edge.head + m - edge.tail) % m;
        (1..dist).map(|k| (edge.tail + k) % m).collect()
    }

    /// Connected, acyclic and of maximum degree two.
    pub fn is_path(&self) -> PathVerdict {
        let m = self.vertex_count();
        let deg = self.degrees();
        if let Some((vertex, &degree)) = deg.iter().enumerate().find(|(_, &d)| d > 2) {
            return PathVerdict::Branching { vertex, degree };
        }

        let mut uf = UnionFind::new(m);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (u, v) in self.undirected() {
            if !uf.union(u, v) {
                let mut cycle = forest_path(&adj, u, v);
                if cycle.is_empty() {
                    cycle = vec![u];
                }
                return PathVerdict::Cycle(cycle);
            }
            adj[u].push(v);
            adj[v].push(u);
        }

        if uf.sets() > 1 {
            let mut comps: Vec<Vec<usize>> = Vec::new();
            let mut index = std::collections::HashMap::new();
            for v in 0..m {
                let root = uf.find(v);
                let k = *index.entry(root).or_insert_with(|| {
                    comps.push(Vec::new());
                    comps.len() - 1
                });
                comps[k].push(v);
            }
            return PathVerdict::Disconnected(comps);
        }

        // a tree with max degree 2: walk it from its first leaf
        let start = (0..m).find(|&v| deg[v] <= 1).unwrap_or(0);
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        PathVerdict::Path(order)
    }

    /// Graphviz rendering: vertices labelled by sign, outer-band edges
    /// solid and central-band edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph \"G({})\" {{", self.seq).unwrap();
        writeln!(out, "  node [shape=circle];").unwrap();
        for v in 0..self.vertex_count() {
            writeln!(out, "  {v} [label=\"{}\"];", self.seq.sign(v).symbol()).unwrap();
        }
        for e in &self.edges_a {
            writeln!(out, "  {} -- {} [style=solid];", e.minus, e.plus).unwrap();
        }
        for e in &self.edges_b {
            writeln!(out, "  {} -- {} [style=dashed];", e.plus, e.minus).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Path from `from` to `to` in a forest given by `adj`, or empty if they
/// are the same vertex.
fn forest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    if from == to {
        return Vec::new();
    }
    let mut parent = vec![usize::MAX; adj.len()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &adj[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> SignSeq {
        s.parse().unwrap()
    }

    fn pairs(v: &[(usize, usize)]) -> Vec<Pair> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn model_knot_graph() {
        let g = AuxGraph::build(&seq("+-+-+")).unwrap();
        assert_eq!(g.edges_a, pairs(&[(1, 2), (3, 4)]));
        assert_eq!(g.edges_b, pairs(&[(1, 0), (3, 2)]));
        assert_eq!(g.is_path(), PathVerdict::Path(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn second_figure_graph() {
        let g = AuxGraph::build(&seq("+++--")).unwrap();
        assert_eq!(g.edges_a, pairs(&[(3, 1), (4, 0)]));
        assert_eq!(g.edges_b, pairs(&[(3, 2), (4, 1)]));
        assert_eq!(g.is_path(), PathVerdict::Path(vec![0, 4, 1, 3, 2]));
    }

    #[test]
    fn single_vertex_is_a_path() {
        let g = AuxGraph::build(&seq("+")).unwrap();
        assert!(g.edges_a.is_empty() && g.edges_b.is_empty());
        assert_eq!(g.is_path(), PathVerdict::Path(vec![0]));
    }

    #[test]
    fn build_rejects_links() {
        assert!(AuxGraph::build(&seq("+-")).is_err());
        assert_eq!(
            AuxGraph::build_any(&seq("+-")).unwrap().edges_a,
            pairs(&[(1, 0)])
        );
    }

    #[test]
    fn negative_controls() {
        let g = AuxGraph::from_parts(seq("-++"), pairs(&[(0, 1)]), pairs(&[(0, 1)]));
        assert_eq!(g.is_path(), PathVerdict::Cycle(vec![0, 1]));

        let g = AuxGraph::from_parts(seq("+-+-+"), pairs(&[(1, 2)]), pairs(&[(3, 4)]));
        assert!(matches!(g.is_path(), PathVerdict::Disconnected(c) if c.len() == 3));

        let g = AuxGraph::from_parts(
            seq("+-+-+"),
            pairs(&[(1, 2), (3, 4)]),
            pairs(&[(1, 4), (3, 2)]),
        );
        assert!(matches!(g.is_path(), PathVerdict::Cycle(c) if c.len() == 4));

        let g = AuxGraph::from_parts(seq("+-+-+"), pairs(&[(1, 0), (3, 0)]), pairs(&[(1, 0)]));
        assert_eq!(
            g.is_path(),
            PathVerdict::Branching {
                vertex: 0,
                degree: 3
            }
        );
    }

    #[test]
    fn gap_sets() {
        let g = AuxGraph::build(&seq("++--+")).unwrap();
        let e = g
            .directed_edges()
            .find(|e| e.set == EdgeSet::A && e.tail == 2)
            .unwrap();
        assert_eq!(e.head, 0);
        assert_eq!(g.gap_set(e), [3, 4]);

        let g = AuxGraph::build(&seq("+-+-+")).unwrap();
        assert!(g
            .gap_set(DirectedEdge {
                set: EdgeSet::A,
                tail: 1,
                head: 2
            })
            .is_empty());

        let g = AuxGraph::build(&seq("+++--")).unwrap();
        let e = g
            .directed_edges()
            .find(|e| e.set == EdgeSet::B && e.tail == 1)
            .unwrap();
        assert_eq!(e.head, 4);
        assert_eq!(g.gap_set(e), [2, 3]);
    }

    #[test]
    fn edge_orientation() {
        let g = AuxGraph::build(&seq("+-++--+")).unwrap();
        for e in g.directed_edges() {
            let (t, h) = (g.seq.sign(e.tail), g.seq.sign(e.head));
            match e.set {
                EdgeSet::A => assert!(t.is_minus() && h.is_plus()),
                EdgeSet::B => assert!(t.is_plus() && h.is_minus()),
            }
        }
    }

    #[test]
    fn dot_output() {
        let dot = AuxGraph::build(&seq("+-+")).unwrap().to_dot();
        let expected = "\
graph \"G(+-+)\" {
  node [shape=circle];
  0 [label=\"+\"];
  1 [label=\"-\"];
  2 [label=\"+\"];
  1 -- 2 [style=solid];
  0 -- 1 [style=dashed];
}
";
        assert_eq!(dot, expected);
    }
}
