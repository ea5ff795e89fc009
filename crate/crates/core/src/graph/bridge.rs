//! Translation between graph sums and polynomials.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{
    canonical_form, connected_factor_pairs, is_bipartite, prime_factorizations, FactorLimits, Graph, GraphError,
    GraphSum, Product,
};
use crate::factorizer::{all_factorizations, Factorization};
use crate::poly::{ExponentVector, SparsePoly};

/// The irreducible connected graphs standing for `X_1, X_2, ...` under one
/// product. Entries are canonical and pairwise non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDictionary {
    product: Product,
    graphs: Vec<Graph>,
}

impl VariableDictionary {
    pub fn new(product: Product) -> Self {
        VariableDictionary {
            product,
            graphs: Vec::new(),
        }
    }

    /// Validates and stores the given graphs in order.
    pub fn from_graphs(product: Product, graphs: &[Graph], limits: &FactorLimits) -> Result<Self, GraphError> {
        let mut dict = VariableDictionary::new(product);
        for g in graphs {
            let c = canonical_form(g)?;
            let reject = |why: &str| Err(GraphError::Dictionary(format!("{}: {why}", super::format_graph(&c).trim())));
            if !c.is_connected() {
                return reject("not connected");
            }
            if c == product.neutral() {
                return reject("neutral element");
            }
            if product == Product::Direct && is_bipartite(&c)? {
                return reject("bipartite");
            }
            if !connected_factor_pairs(&c, product, limits)?.is_empty() {
                return reject("reducible");
            }
            if dict.index_of(&c).is_some() {
                return reject("repeated");
            }
            dict.graphs.push(c);
        }
        Ok(dict)
    }

    pub fn product(&self) -> Product {
        self.product
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// 0-based variable index of a canonical graph.
    pub fn index_of(&self, canonical: &Graph) -> Option<usize> {
        self.graphs.iter().position(|g| g == canonical)
    }

    fn index_or_insert(&mut self, canonical: Graph) -> usize {
        self.index_of(&canonical).unwrap_or_else(|| {
            self.graphs.push(canonical);
            self.graphs.len() - 1
        })
    }

    /// The connected graph of a monomial.
    pub fn evaluate(&self, exponents: &[u64]) -> Result<Graph, GraphError> {
        let mut acc = self.product.neutral();
        for (i, &e) in exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = self.graphs.get(i).ok_or(GraphError::MissingVariable { index: i + 1 })?;
            acc = self.product.apply(&acc, &self.product.power(g, e)?)?;
        }
        canonical_form(&acc)
    }

    /// A monomial as text, `K1` (or `K1*`) for the neutral element.
    pub fn monomial_text(&self, exponents: &[u64]) -> String {
        let parts: Vec<String> = exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("G{}", i + 1) } else { format!("G{}^{e}", i + 1) })
            .collect();
        if parts.is_empty() {
            match self.product {
                Product::Direct => "K1*".to_string(),
                _ => "K1".to_string(),
            }
        } else {
            parts.join(&format!(" {} ", self.product.symbol()))
        }
    }

    /// A polynomial as a disjoint union of monomial graphs.
    pub fn sum_text(&self, p: &SparsePoly) -> String {
        let mut counts: BTreeMap<&ExponentVector, usize> = BTreeMap::new();
        for t in p.terms() {
            *counts.entry(t).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return "0".to_string();
        }
        counts
            .into_iter()
            .map(|(t, k)| {
                let m = self.monomial_text(t.as_slice());
                if k == 1 {
                    m
                } else {
                    format!("{k}*{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Monomials over the dictionary whose graph has `vertices` vertices.
    fn monomials_with_vertices(&self, vertices: usize) -> Vec<Vec<u64>> {
        fn rec(sizes: &[usize], i: usize, left: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == sizes.len() {
                if left == 1 {
                    out.push(acc.clone());
                }
                return;
            }
            let mut rest = left;
            let mut e = 0;
            loop {
                acc[i] = e;
                rec(sizes, i + 1, rest, acc, out);
                if sizes[i] < 2 || rest % sizes[i] != 0 {
                    break;
                }
                rest /= sizes[i];
                e += 1;
            }
            acc[i] = 0;
        }
        let sizes: Vec<usize> = self.graphs.iter().map(Graph::vertex_count).collect();
        let mut out = Vec::new();
        rec(&sizes, 0, vertices, &mut vec![0; sizes.len()], &mut out);
        out.retain(|e| e.iter().any(|&x| x > 0));
        out
    }
}

/// Maps every component to its monomial of irreducible factors, extending
/// the dictionary with newly found irreducibles; multiplicities become
/// repeated terms.
///
/// A component is first matched against monomials over the current
/// dictionary, and only factored by brute force when no monomial fits.
/// Components are visited by increasing size.
pub fn graph_to_poly(
    gs: &GraphSum,
    dict: &mut VariableDictionary,
    limits: &FactorLimits,
) -> Result<SparsePoly, GraphError> {
    let product = dict.product();
    let mut monomials: Vec<(BTreeMap<usize, u64>, usize)> = Vec::new();
    // Smaller components first, so their irreducibles are known by the time
    // larger components are matched against monomials.
    let mut order: Vec<&(Graph, usize)> = gs.entries().iter().collect();
    order.sort_by_key(|(g, _)| g.vertex_count());
    for (component, multiplicity) in order {
        let describe = || super::format_graph(component).trim().replace('\n', "; ");
        if product == Product::Direct && is_bipartite(component)? {
            return Err(GraphError::Bipartite { component: describe() });
        }
        let mut exps = BTreeMap::new();
        if *component != product.neutral() {
            let matches: Vec<Vec<u64>> = dict
                .monomials_with_vertices(component.vertex_count())
                .into_iter()
                .filter(|e| dict.evaluate(e).as_ref() == Ok(component))
                .collect();
            match matches.len() {
                0 => {
                    let fs = prime_factorizations(component, product, limits)?;
                    if fs.len() > 1 {
                        return Err(if product != Product::Direct && !component.is_simple() {
                            GraphError::LoopAmbiguity { component: describe() }
                        } else {
                            GraphError::Inconsistent {
                                component: describe(),
                                count: fs.len(),
                            }
                        });
                    }
                    for factor in fs.into_iter().next().unwrap_or_default() {
                        *exps.entry(dict.index_or_insert(factor)).or_insert(0) += 1;
                    }
                }
                1 => {
                    exps.extend(matches[0].iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)));
                }
                count => {
                    return Err(GraphError::Inconsistent {
                        component: describe(),
                        count,
                    })
                }
            }
        }
        monomials.push((exps, *multiplicity));
    }
    let vars = dict.len().max(1);
    let mut terms = Vec::new();
    for (exps, k) in monomials {
        let mut v = vec![0u64; vars];
        for (i, e) in exps {
            v[i] = e;
        }
        let ev = ExponentVector::new(v);
        terms.extend(std::iter::repeat(ev).take(k));
    }
    Ok(SparsePoly::new(vars, terms)?.into_normalized())
}

/// Evaluates every monomial at the dictionary graphs.
pub fn poly_to_graph(p: &SparsePoly, dict: &VariableDictionary) -> Result<GraphSum, GraphError> {
    let mut cache: HashMap<&ExponentVector, Graph> = HashMap::new();
    let mut items = Vec::with_capacity(p.term_count());
    for t in p.terms() {
        let g = match cache.get(t) {
            Some(g) => g.clone(),
            None => {
                let g = dict.evaluate(t.as_slice())?;
                cache.insert(t, g.clone());
                g
            }
        };
        items.extend(g.components().into_iter().map(|c| (c, 1)));
    }
    GraphSum::from_components(items)
}

/// A factorization of a graph sum, both as polynomials and as graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFactorization {
    pub polynomial: Factorization,
    /// The common connected factor of every component.
    pub content: GraphSum,
    pub factors: Vec<GraphSum>,
}

/// Every factorization of `gs` into irreducible graph sums, together with
/// the dictionary used to name the irreducible connected graphs.
pub fn graph_factorizations(
    gs: &GraphSum,
    product: Product,
    limits: &FactorLimits,
) -> Result<(VariableDictionary, Vec<GraphFactorization>), GraphError> {
    let mut dict = VariableDictionary::new(product);
    let p = graph_to_poly(gs, &mut dict, limits)?;
    let mut out = Vec::new();
    for f in all_factorizations(&p)? {
        let content = poly_to_graph(&SparsePoly::monomial(f.content.clone()), &dict)?;
        let factors = f
            .factors
            .iter()
            .map(|q| poly_to_graph(q, &dict))
            .collect::<Result<_, _>>()?;
        out.push(GraphFactorization {
            polynomial: f,
            content,
            factors,
        });
    }
    Ok((dict, out))
}
