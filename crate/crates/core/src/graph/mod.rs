//! Finite undirected graphs with optional loops, their Cartesian, strong and
//! direct products, and the dictionary between disconnected graphs and
//! polynomials in `N[X_1, ..., X_m]`.
//!
//! A disconnected graph is a [`GraphSum`]: a multiset of connected components.
//! Fixing a list of irreducible connected graphs `G_1, ..., G_m`, each
//! component `G_1^{e_1} ⊙ … ⊙ G_m^{e_m}` becomes the monomial
//! `X_1^{e_1}·…·X_m^{e_m}` and disjoint union becomes addition, so graph
//! factorizations are polynomial factorizations.

mod bridge;
mod canon;
mod factor;
mod io;
mod products;

pub use bridge::{graph_factorizations, graph_to_poly, poly_to_graph, GraphFactorization, VariableDictionary};
pub use canon::{canonical_form, is_isomorphic, DEFAULT_CANON_CAP};
pub use factor::{connected_factor_pairs, connected_graphs, prime_factorizations, FactorLimits};
pub use io::{format_graph, format_graph_sum, parse_graph_file};
pub use products::{cartesian, direct, strong, Product, DEFAULT_VERTEX_CAP};

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorizer::FactorError;
use crate::poly::PolyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph with {vertices} vertices exceeds the vertex cap {cap}")]
    VertexCap { vertices: usize, cap: usize },
    #[error("factor search needs candidates on {vertices} vertices, cap is {cap}")]
    FactorCap { vertices: usize, cap: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("expected a connected graph")]
    Disconnected,
    #[error("component {component} is bipartite, which the direct product cannot represent")]
    Bipartite { component: String },
    #[error("component {component} carries loops and has no unique factorization under this product")]
    LoopAmbiguity { component: String },
    #[error("component {component} has {count} inequivalent prime factorizations")]
    Inconsistent { component: String, count: usize },
    #[error("dictionary has no graph for variable X{index}")]
    MissingVariable { index: usize },
    #[error("invalid dictionary entry: {0}")]
    Dictionary(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Undirected graph on vertices `0..n`. Neighbor lists are sorted and never
/// contain the vertex itself; loops are recorded separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

impl Graph {
    /// `n` isolated vertices without loops.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            loops: vec![false; n],
        }
    }

    /// Builds a graph from an edge list; `(v, v)` is a loop and repeated
    /// edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            self.loops[u] = true;
            return Ok(());
        }
        for (a, b) in [(u, v), (v, u)] {
            if let Err(pos) = self.adj[a].binary_search(&b) {
                self.adj[a].insert(pos, b);
            }
        }
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("in range")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("in range")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).expect("in range");
        }
        g
    }

    /// The same graph with a loop on every vertex.
    pub fn with_all_loops(mut self) -> Self {
        self.loops.iter_mut().for_each(|l| *l = true);
        self
    }

    /// `K_1`, the neutral element of the Cartesian and strong products.
    pub fn k1() -> Self {
        Graph::empty(1)
    }

    /// `K_1^*`, one looped vertex, the neutral element of the direct product.
    pub fn k1_star() -> Self {
        Graph::k1().with_all_loops()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges, loops included.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2 + self.loop_count()
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.adj[u].binary_search(&v).is_ok()
        }
    }

    /// Degree not counting the loop.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u ≤ v`, loops as `(v, v)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            if self.loops[u] {
                out.push((u, u));
            }
            out.extend(self.adj[u].iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.loops.iter().all(|&l| !l)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n > 0 && self.component_labels().1 == 1
    }

    /// Component index of every vertex, and the number of components.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected components as induced subgraphs, in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Graph> {
        let (label, count) = self.component_labels();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            members[c].push(v);
        }
        members.iter().map(|vs| self.induced(vs)).collect()
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            g.loops[i] = self.loops[v];
            g.adj[i] = self.adj[v].iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect();
            g.adj[i].sort_unstable();
        }
        g
    }

    /// Disjoint union, with the vertices of `other` shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut g = self.clone();
        g.adj.extend(other.adj.iter().map(|nb| nb.iter().map(|v| v + shift).collect()));
        g.loops.extend_from_slice(&other.loops);
        g
    }

    pub(crate) fn from_parts(adj: Vec<Vec<usize>>, loops: Vec<bool>) -> Graph {
        Graph { adj, loops }
    }

    pub(crate) fn parts(&self) -> (&[Vec<usize>], &[bool]) {
        (&self.adj, &self.loops)
    }
}

/// Two-colorability of a connected graph. A loop is an odd closed walk, so
/// any graph with a loop is not bipartite.
pub fn is_bipartite(g: &Graph) -> Result<bool, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if !g.is_simple() {
        return Ok(false);
    }
    let mut color = vec![u8::MAX; g.vertex_count()];
    color[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if color[v] == u8::MAX {
                color[v] = 1 - color[u];
                queue.push_back(v);
            } else if color[v] == color[u] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A graph as a multiset of canonical connected components.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphSum {
    /// Sorted by component, multiplicities positive.
    entries: Vec<(Graph, usize)>,
}

impl GraphSum {
    pub fn new() -> Self {
        GraphSum::default()
    }

    /// Components of `g`, canonicalized and counted.
    pub fn from_graph(g: &Graph) -> Result<Self, GraphError> {
        GraphSum::from_components(g.components().into_iter().map(|c| (c, 1)))
    }

    /// Collects `(connected graph, multiplicity)` pairs; zero multiplicities
    /// are dropped.
    pub fn from_components<I>(items: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Graph, usize)>,
    {
        let mut map: BTreeMap<Graph, usize> = BTreeMap::new();
        for (g, k) in items {
            if !g.is_connected() {
                return Err(GraphError::Disconnected);
            }
            if k > 0 {
                *map.entry(canonical_form(&g)?).or_insert(0) += k;
            }
        }
        Ok(GraphSum {
            entries: map.into_iter().collect(),
        })
    }

    pub fn entries(&self) -> &[(Graph, usize)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of components, counted with multiplicity.
    pub fn component_count(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.entries.iter().map(|(g, k)| g.vertex_count() * k).sum()
    }

    /// The disjoint union of all components as one graph.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(0);
        for (c, k) in &self.entries {
            for _ in 0..*k {
                g = g.disjoint_union(c);
            }
        }
        g
    }

    pub fn union(&self, other: &GraphSum) -> GraphSum {
        let mut map: BTreeMap<Graph, usize> = self.entries.iter().cloned().collect();
        for (g, k) in &other.entries {
            *map.entry(g.clone()).or_insert(0) += k;
        }
        GraphSum {
            entries: map.into_iter().collect(),
        }
    }

    /// The product distributes over disjoint union.
    pub fn product(&self, other: &GraphSum, product: Product) -> Result<GraphSum, GraphError> {
        let mut items = Vec::new();
        for (g, j) in &self.entries {
            for (h, k) in &other.entries {
                let gh = product.apply(g, h)?;
                items.extend(gh.components().into_iter().map(|c| (c, j * k)));
            }
        }
        GraphSum::from_components(items)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(Graph::cycle(4).edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(Graph::k1_star().edges(), vec![(0, 0)]);
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_simple());
    }

    #[test]
    fn components_are_counted() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2)).disjoint_union(&Graph::k1());
        let sum = GraphSum::from_graph(&g).unwrap();
        assert_eq!(sum.entries().len(), 2);
        assert_eq!(sum.component_count(), 3);
        let counts: Vec<(usize, usize)> = sum.entries().iter().map(|(c, k)| (c.vertex_count(), *k)).collect();
        assert!(counts.contains(&(2, 2)) && counts.contains(&(1, 1)));
        assert_eq!(GraphSum::from_graph(&Graph::cycle(5)).unwrap().component_count(), 1);
        assert!(GraphSum::from_graph(&Graph::empty(0)).unwrap().is_empty());
    }

    #[test]
    fn bipartiteness() {
        assert_eq!(is_bipartite(&Graph::path(2)), Ok(true));
        assert_eq!(is_bipartite(&Graph::complete(3)), Ok(false));
        assert_eq!(is_bipartite(&Graph::k1_star()), Ok(false));
        assert_eq!(is_bipartite(&Graph::cycle(6)), Ok(true));
        assert_eq!(is_bipartite(&Graph::empty(2)), Err(GraphError::Disconnected));
    }

    #[test]
    fn sums_round_trip_through_graphs() {
        let sum = GraphSum::from_components([(Graph::complete(3), 2), (Graph::path(3), 1)]).unwrap();
        assert_eq!(GraphSum::from_graph(&sum.to_graph()).unwrap(), sum);
        assert_eq!(sum.vertex_count(), 9);
        assert_eq!(sum.union(&sum).component_count(), 6);
    }
}
