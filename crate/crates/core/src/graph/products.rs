//! The three graph products on the vertex set `V(G) × V(H)`, with `(u, v)`
//! numbered `u·|V(H)| + v`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Largest vertex count a product may produce.
pub const DEFAULT_VERTEX_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    Cartesian,
    Strong,
    Direct,
}

impl Product {
    pub const ALL: [Product; 3] = [Product::Cartesian, Product::Strong, Product::Direct];

    pub fn apply(self, g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
        match self {
            Product::Cartesian => cartesian(g, h),
            Product::Strong => strong(g, h),
            Product::Direct => direct(g, h),
        }
    }

    /// `K_1` for the Cartesian and strong products, `K_1^*` for the direct one.
    pub fn neutral(self) -> Graph {
        match self {
            Product::Direct => Graph::k1_star(),
            _ => Graph::k1(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Product::Cartesian => "□",
            Product::Strong => "⊠",
            Product::Direct => "×",
        }
    }

    /// `k`-fold product of `g` with itself; the neutral element for `k = 0`.
    pub fn power(self, g: &Graph, k: u64) -> Result<Graph, GraphError> {
        let mut acc = self.neutral();
        for _ in 0..k {
            acc = self.apply(&acc, g)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::Cartesian => "cartesian",
            Product::Strong => "strong",
            Product::Direct => "direct",
        })
    }
}

impl FromStr for Product {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" => Ok(Product::Cartesian),
            "strong" => Ok(Product::Strong),
            "direct" | "tensor" => Ok(Product::Direct),
            other => Err(format!("unknown product {other:?}")),
        }
    }
}

fn check_cap(g: &Graph, h: &Graph) -> Result<usize, GraphError> {
    let vertices = g.vertex_count() * h.vertex_count();
    if vertices > DEFAULT_VERTEX_CAP {
        return Err(GraphError::VertexCap {
            vertices,
            cap: DEFAULT_VERTEX_CAP,
        });
    }
    Ok(vertices)
}

/// Builds the product from a rule deciding adjacency of two distinct pairs
/// and a rule deciding the loop on a pair.
fn build(
    g: &Graph,
    h: &Graph,
    adjacent: impl Fn((usize, usize), (usize, usize)) -> bool,
    looped: impl Fn(usize, usize) -> bool,
) -> Result<Graph, GraphError> {
    let n = check_cap(g, h)?;
    let m = h.vertex_count();
    let mut adj = vec![Vec::new(); n];
    let mut loops = vec![false; n];
    for x in 0..n {
        let (u, v) = (x / m, x % m);
        loops[x] = looped(u, v);
        for y in 0..n {
            if x != y && adjacent((u, v), (y / m, y % m)) {
                adj[x].push(y);
            }
        }
    }
    Ok(Graph::from_parts(adj, loops))
}

/// `(u,v) ~ (u',v')` when one coordinate is equal and the other adjacent; a
/// loop on `(u,v)` when `u` or `v` has one.
pub fn cartesian(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    build(
        g,
        h,
        |(u, v), (x, y)| (u == x && h.has_edge(v, y)) || (v == y && g.has_edge(u, x)),
        |u, v| g.has_loop(u) || h.has_loop(v),
    )
}

/// Distinct pairs are adjacent when each coordinate is equal or adjacent;
/// loops as in the Cartesian product.
pub fn strong(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    build(
        g,
        h,
        |(u, v), (x, y)| (u == x || g.has_edge(u, x)) && (v == y || h.has_edge(v, y)),
        |u, v| g.has_loop(u) || h.has_loop(v),
    )
}

/// `(u,v) ~ (u',v')` when `u ~ u'` and `v ~ v'`, loops included on both sides.
pub fn direct(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    build(
        g,
        h,
        |(u, v), (x, y)| g.has_edge(u, x) && h.has_edge(v, y),
        |u, v| g.has_loop(u) && h.has_loop(v),
    )
}
