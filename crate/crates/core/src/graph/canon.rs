//! Canonical labeling via the `canonical-form` search, with loops and
//! degrees as vertex colors.

use canonical_form::Canonize;

use super::{Graph, GraphError};

/// Largest graph accepted for canonical labeling.
pub const DEFAULT_CANON_CAP: usize = 64;

impl Canonize for Graph {
    fn size(&self) -> usize {
        self.vertex_count()
    }

    fn apply_morphism(&self, perm: &[usize]) -> Self {
        let (adj, loops) = self.parts();
        let n = adj.len();
        let mut new_adj = vec![Vec::new(); n];
        let mut new_loops = vec![false; n];
        for (u, nb) in adj.iter().enumerate() {
            let mut mapped: Vec<usize> = nb.iter().map(|&v| perm[v]).collect();
            mapped.sort_unstable();
            new_adj[perm[u]] = mapped;
            new_loops[perm[u]] = loops[u];
        }
        Graph::from_parts(new_adj, new_loops)
    }

    fn invariant_color(&self, u: usize) -> u64 {
        ((self.degree(u) as u64) << 1) | self.has_loop(u) as u64
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        self.neighbors(u).iter().map(|&v| (v, 0))
    }
}

/// The representative of the isomorphism class of `g`. Two graphs are
/// isomorphic exactly when their canonical forms are equal.
pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    if g.vertex_count() > DEFAULT_CANON_CAP {
        return Err(GraphError::VertexCap {
            vertices: g.vertex_count(),
            cap: DEFAULT_CANON_CAP,
        });
    }
    Ok(g.canonical())
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() || g.loop_count() != h.loop_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}
