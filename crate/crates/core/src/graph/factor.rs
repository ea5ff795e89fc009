//! Brute-force factorization of connected graphs.
//!
//! Candidate factors are all connected graphs on a few vertices, generated by
//! edge-subset enumeration and deduplicated through canonical forms. A pair
//! of candidates is only multiplied out when its edge count and its multiset
//! of vertex degrees already agree with the target.
//!
//! Factors larger than the pool cap are read off the target instead: in
//! `H ⊙ L` the layer `{u} × L` through a vertex without a loop (Cartesian,
//! strong) or with one (direct) is an induced copy of `L`, so every
//! connected induced subgraph of the right size through such a vertex is a
//! candidate.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{canonical_form, Graph, GraphError, Product};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorLimits {
    /// Largest candidate factor generated.
    pub max_factor_vertices: usize,
    /// Largest number of vertex subsets visited when reading larger
    /// candidates off the target.
    pub layer_budget: usize,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits {
            max_factor_vertices: 6,
            layer_budget: 1 << 18,
        }
    }
}

type Pool = Arc<Vec<Graph>>;

fn pool_cache() -> &'static Mutex<HashMap<(usize, bool), Pool>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Pool>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every connected graph on `k` vertices up to isomorphism, in canonical
/// form and sorted. With `loops` set, graphs with any set of loops are
/// included as well.
pub fn connected_graphs(k: usize, loops: bool) -> Pool {
    if let Some(hit) = pool_cache().lock().expect("pool cache").get(&(k, loops)) {
        return Arc::clone(hit);
    }
    let pool = Arc::new(generate(k, loops));
    pool_cache()
        .lock()
        .expect("pool cache")
        .entry((k, loops))
        .or_insert(pool)
        .clone()
}

fn generate(k: usize, loops: bool) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    let mut simple = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(k, &edges).expect("in range");
        if g.is_connected() {
            simple.insert(canonical_unchecked(&g));
        }
    }
    if !loops {
        return simple.into_iter().collect();
    }
    let mut all = BTreeSet::new();
    for g in &simple {
        for mask in 0u64..(1u64 << k) {
            let mut h = g.clone();
            for v in (0..k).filter(|v| mask >> v & 1 == 1) {
                h.add_edge(v, v).expect("in range");
            }
            all.insert(canonical_unchecked(&h));
        }
    }
    all.into_iter().collect()
}

fn canonical_unchecked(g: &Graph) -> Graph {
    canonical_form(g).expect("small graph")
}

/// Sorted `(degree, loop)` of every vertex.
fn degree_profile(g: &Graph) -> Vec<(usize, bool)> {
    let mut v: Vec<(usize, bool)> = (0..g.vertex_count()).map(|u| (g.degree(u), g.has_loop(u))).collect();
    v.sort_unstable();
    v
}

/// Degree profile of `product(h, l)` computed from the factors alone.
fn product_profile(product: Product, h: &[(usize, bool)], l: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut out = Vec::with_capacity(h.len() * l.len());
    for &(du, lu) in h {
        for &(dv, lv) in l {
            out.push(match product {
                Product::Cartesian => (du + dv, lu || lv),
                Product::Strong => ((du + 1) * (dv + 1) - 1, lu || lv),
                Product::Direct => {
                    let closed = (du + lu as usize) * (dv + lv as usize);
                    (closed - (lu && lv) as usize, lu && lv)
                }
            });
        }
    }
    out.sort_unstable();
    out
}

fn non_loop_edges(g: &Graph) -> usize {
    g.edge_count() - g.loop_count()
}

/// The bucket key of a candidate: non-loop edges for the Cartesian and strong
/// products, nonzero adjacency-matrix entries for the direct product.
fn bucket_key(product: Product, g: &Graph) -> usize {
    match product {
        Product::Direct => 2 * non_loop_edges(g) + g.loop_count(),
        _ => non_loop_edges(g),
    }
}

/// The key a partner of `h` (on `m` vertices) must have for the product to
/// reach the target `g`, if any.
fn required_key(product: Product, g: &Graph, h: &Graph, m: usize) -> Option<usize> {
    let k = h.vertex_count();
    let (eg, eh) = (non_loop_edges(g), non_loop_edges(h));
    match product {
        Product::Cartesian => {
            let rest = eg.checked_sub(m * eh)?;
            (rest % k == 0).then(|| rest / k)
        }
        Product::Strong => {
            let rest = eg.checked_sub(m * eh)?;
            let div = k + 2 * eh;
            (rest % div == 0).then(|| rest / div)
        }
        Product::Direct => {
            let (og, oh) = (bucket_key(product, g), bucket_key(product, h));
            (oh > 0 && og % oh == 0).then(|| og / oh)
        }
    }
}

/// All unordered pairs `(H, L)` of connected, non-neutral graphs with
/// `product(H, L) ≅ g`, each in canonical form, smaller first.
pub fn connected_factor_pairs(
    g: &Graph,
    product: Product,
    limits: &FactorLimits,
) -> Result<Vec<(Graph, Graph)>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let target = canonical_form(g)?;
    let n = target.vertex_count();
    let mut found = BTreeSet::new();
    // K_1^* is idempotent under the Cartesian and strong products and
    // divides every graph with loops on all vertices.
    if product != Product::Direct && target.loop_count() == n {
        found.insert((Graph::k1_star(), target.clone()));
    }
    let profile = degree_profile(&target);
    let loops = product == Product::Direct || target.loop_count() > 0;
    for k in (2..=n).take_while(|k| k * k <= n).filter(|k| n % k == 0) {
        let m = n / k;
        let small = candidates(&target, product, k, loops, limits)?;
        let large = candidates(&target, product, m, loops, limits)?;
        let mut buckets: HashMap<usize, Vec<(&Graph, Vec<(usize, bool)>)>> = HashMap::new();
        for l in large.iter() {
            buckets.entry(bucket_key(product, l)).or_default().push((l, degree_profile(l)));
        }
        for h in small.iter() {
            let Some(key) = required_key(product, &target, h, m) else {
                continue;
            };
            let h_profile = degree_profile(h);
            for (l, l_profile) in buckets.get(&key).into_iter().flatten() {
                if product_profile(product, &h_profile, l_profile) != profile {
                    continue;
                }
                if canonical_form(&product.apply(h, l)?)? == target {
                    let pair = if h <= *l { (h.clone(), (*l).clone()) } else { ((*l).clone(), h.clone()) };
                    found.insert(pair);
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Connected graphs on `k` vertices that may divide `g`: the whole pool up
/// to the cap, layers of `g` beyond it.
fn candidates(g: &Graph, product: Product, k: usize, loops: bool, limits: &FactorLimits) -> Result<Pool, GraphError> {
    if k <= limits.max_factor_vertices {
        return Ok(connected_graphs(k, loops));
    }
    let cap_error = GraphError::FactorCap {
        vertices: k,
        cap: limits.max_factor_vertices,
    };
    let root = (0..g.vertex_count()).find(|&v| g.has_loop(v) == (product == Product::Direct));
    let Some(root) = root else {
        return Err(cap_error);
    };
    let subsets = connected_subsets(g, root, k, limits.layer_budget).ok_or(cap_error)?;
    let mut out = BTreeSet::new();
    for mask in subsets {
        let vertices: Vec<usize> = (0..g.vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
        out.insert(canonical_form(&g.induced(&vertices))?);
    }
    Ok(Arc::new(out.into_iter().collect()))
}

/// Vertex sets of size `k` containing `root` that induce a connected
/// subgraph, as bit masks; `None` once more than `budget` search nodes have
/// been visited.
fn connected_subsets(g: &Graph, root: usize, k: usize, budget: usize) -> Option<Vec<u64>> {
    let neighbors: Vec<u64> = (0..g.vertex_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| w != v)
                .fold(0u64, |m, &w| m | 1 << w)
        })
        .collect();
    struct Search<'a> {
        neighbors: &'a [u64],
        k: u32,
        visited: usize,
        budget: usize,
        out: Vec<u64>,
    }
    // Each branch either takes the lowest frontier vertex or bans it for
    // good, so every set is reached exactly once.
    fn rec(s: &mut Search, set: u64, frontier: u64, banned: u64) -> bool {
        s.visited += 1;
        if s.visited > s.budget {
            return false;
        }
        if set.count_ones() == s.k {
            s.out.push(set);
            return true;
        }
        if frontier == 0 {
            return true;
        }
        let w = frontier.trailing_zeros() as usize;
        let bit = 1u64 << w;
        let grown = set | bit;
        let next = (frontier | s.neighbors[w]) & !grown & !banned;
        rec(s, grown, next, banned) && rec(s, set, frontier & !bit, banned | bit)
    }
    if g.vertex_count() > 64 {
        return None;
    }
    let mut s = Search {
        neighbors: &neighbors,
        k: k as u32,
        visited: 0,
        budget,
        out: Vec::new(),
    };
    let root_bit = 1u64 << root;
    rec(&mut s, root_bit, neighbors[root] & !root_bit, 0).then_some(s.out)
}

/// Every multiset of irreducible connected graphs whose product is `g`,
/// each factor canonical and each list sorted. The neutral element has the
/// single empty factorization.
///
/// Fails with [`GraphError::LoopAmbiguity`] for graphs that carry a loop on
/// every vertex under the Cartesian or strong product, since those absorb
/// any number of `K_1^*` factors.
pub fn prime_factorizations(
    g: &Graph,
    product: Product,
    limits: &FactorLimits,
) -> Result<Vec<Vec<Graph>>, GraphError> {
    let mut memo = HashMap::new();
    let out = factor_rec(&canonical_form(g)?, product, limits, &mut memo)?;
    Ok(out.into_iter().collect())
}

fn factor_rec(
    g: &Graph,
    product: Product,
    limits: &FactorLimits,
    memo: &mut HashMap<Graph, BTreeSet<Vec<Graph>>>,
) -> Result<BTreeSet<Vec<Graph>>, GraphError> {
    if let Some(hit) = memo.get(g) {
        return Ok(hit.clone());
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if *g == product.neutral() {
        return Ok([Vec::new()].into_iter().collect());
    }
    if product != Product::Direct && g.loop_count() == g.vertex_count() {
        return Err(GraphError::LoopAmbiguity {
            component: super::format_graph(g).replace('\n', "; "),
        });
    }
    let pairs = connected_factor_pairs(g, product, limits)?;
    let mut out = BTreeSet::new();
    if pairs.is_empty() {
        out.insert(vec![g.clone()]);
    }
    for (h, l) in pairs {
        let left = factor_rec(&h, product, limits, memo)?;
        let right = factor_rec(&l, product, limits, memo)?;
        for f in &left {
            for r in &right {
                let mut merged: Vec<Graph> = f.iter().chain(r).cloned().collect();
                merged.sort();
                out.insert(merged);
            }
        }
    }
    memo.insert(g.clone(), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn pool_sizes() {
        // Connected simple graphs on 1..=5 vertices: 1, 1, 2, 6, 21.
        let sizes: Vec<usize> = (1..=5).map(|k| connected_graphs(k, false).len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 6, 21]);
        assert_eq!(connected_graphs(6, false).len(), 112);
        // One vertex with or without a loop; an edge with 0, 1 or 2 loops.
        assert_eq!(connected_graphs(1, true).len(), 2);
        assert_eq!(connected_graphs(2, true).len(), 3);
    }

    #[test]
    fn profiles_predict_products() {
        let pool = connected_graphs(3, true);
        for product in Product::ALL {
            for h in pool.iter() {
                for l in pool.iter() {
                    let p = product.apply(h, l).unwrap();
                    assert_eq!(
                        product_profile(product, &degree_profile(h), &degree_profile(l)),
                        degree_profile(&p)
                    );
                    assert_eq!(required_key(product, &p, h, 3), Some(bucket_key(product, l)));
                }
            }
        }
    }

    #[test]
    fn factor_pairs_examples() {
        let limits = FactorLimits::default();
        let k2 = Graph::complete(2);
        let c4 = connected_factor_pairs(&Graph::cycle(4), Product::Cartesian, &limits).unwrap();
        assert_eq!(c4.len(), 1);
        assert!(is_isomorphic(&c4[0].0, &k2).unwrap() && is_isomorphic(&c4[0].1, &k2).unwrap());
        let k4 = connected_factor_pairs(&Graph::complete(4), Product::Strong, &limits).unwrap();
        assert_eq!(k4.len(), 1);
        for p in Product::ALL {
            assert!(connected_factor_pairs(&k2, p, &limits).unwrap().is_empty());
        }
        assert_eq!(
            connected_factor_pairs(&Graph::empty(2), Product::Strong, &limits),
            Err(GraphError::Disconnected)
        );
        assert!(connected_factor_pairs(&Graph::path(14), Product::Cartesian, &limits)
            .unwrap()
            .is_empty());
        // Without a loop there is no layer to read a direct factor from.
        assert!(matches!(
            connected_factor_pairs(&Graph::cycle(14), Product::Direct, &limits),
            Err(GraphError::FactorCap { vertices: 7, cap: 6 })
        ));
        let starved = FactorLimits {
            layer_budget: 10,
            ..limits
        };
        assert!(matches!(
            connected_factor_pairs(&Graph::path(14), Product::Cartesian, &starved),
            Err(GraphError::FactorCap { vertices: 7, cap: 6 })
        ));
    }

    #[test]
    fn large_factors_come_from_layers() {
        let limits = FactorLimits::default();
        let k2 = Graph::complete(2);
        let q4 = Product::Cartesian.power(&k2, 4).unwrap();
        let fs = prime_factorizations(&q4, Product::Cartesian, &limits).unwrap();
        assert_eq!(fs, vec![vec![canonical_form(&k2).unwrap(); 4]]);

        let k2_star = k2.clone().with_all_loops();
        let k16_star = Product::Direct.power(&k2_star, 4).unwrap();
        let fs = prime_factorizations(&k16_star, Product::Direct, &limits).unwrap();
        assert_eq!(fs, vec![vec![canonical_form(&k2_star).unwrap(); 4]]);

        let c7 = Graph::cycle(7);
        let prism = Product::Strong.apply(&c7, &k2).unwrap();
        let fs = prime_factorizations(&prism, Product::Strong, &limits).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(fs[0].contains(&canonical_form(&c7).unwrap()));
    }

    #[test]
    fn cube_has_one_prime_factorization() {
        let k2 = Graph::complete(2);
        let cube = Product::Cartesian.power(&k2, 3).unwrap();
        let fs = prime_factorizations(&cube, Product::Cartesian, &FactorLimits::default()).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].len(), 3);
    }

    #[test]
    fn looped_graphs_are_ambiguous_under_cartesian() {
        let k2_star = Graph::complete(2).with_all_loops();
        assert!(matches!(
            prime_factorizations(&k2_star, Product::Cartesian, &FactorLimits::default()),
            Err(GraphError::LoopAmbiguity { .. })
        ));
        let direct = prime_factorizations(&k2_star, Product::Direct, &FactorLimits::default()).unwrap();
        assert_eq!(direct, vec![vec![canonical_form(&k2_star).unwrap()]]);
    }
}
