//! Complete factorizations into irreducibles of `N[X_1, ..., X_m]`.
//!
//! A primitive polynomial with `t` terms splits only into factors whose term
//! counts multiply to `t`. For each split `t = r·s` the grid bijections are
//! walked with pruning (a cell `(i,j)` may take term `k` only if
//! `c_k + c_{ρ(1,1)} = c_{ρ(i,1)} + c_{ρ(1,j)}`), each surviving bijection
//! determines at most one factor pair, and the pairs are refined recursively.

mod oracle;

pub use oracle::{oracle_factorizations, OracleLimits};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gridorder::{for_each_bijection_filtered, GridShape};
use crate::poly::{format, ExponentVector, PolyError, SparsePoly};
use crate::solver::reconstruct_factors;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("polynomial has {terms} terms, more than the cap {cap}")]
    TooManyTerms { terms: usize, cap: usize },
    #[error("the zero polynomial has no factorization")]
    Empty,
    #[error("expected a primitive polynomial (no monomial content)")]
    NotPrimitive,
    #[error("monomials are units times content and are not classified")]
    Monomial,
    #[error("the oracle only handles univariate polynomials")]
    NotUnivariate,
    #[error("oracle size guard exceeded: {0}")]
    SizeGuard(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `content · ∏ factors`, with every factor primitive, non-monomial and
/// irreducible. Factors are kept sorted by term count, then canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    pub content: ExponentVector,
    pub factors: Vec<SparsePoly>,
}

impl Factorization {
    pub fn new(content: ExponentVector, mut factors: Vec<SparsePoly>) -> Self {
        sort_factors(&mut factors);
        Factorization { content, factors }
    }

    /// Number of irreducible factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> Result<SparsePoly, PolyError> {
        self.factors
            .iter()
            .try_fold(SparsePoly::monomial(self.content.clone()), |acc, f| acc.multiply(f))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.content.is_zero() || self.factors.is_empty() {
            parts.push(format(&SparsePoly::monomial(self.content.clone())));
        }
        for factor in &self.factors {
            parts.push(format!("({})", format(factor)));
        }
        f.write_str(&parts.join(" * "))
    }
}

pub(crate) fn sort_factors(factors: &mut [SparsePoly]) {
    factors.sort_by_cached_key(|f| (f.term_count(), format(f), f.clone()));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorizerConfig {
    /// Largest term count accepted.
    pub max_terms: usize,
}

impl Default for FactorizerConfig {
    fn default() -> Self {
        FactorizerConfig { max_terms: 64 }
    }
}

type FactorSets = Arc<Vec<Vec<SparsePoly>>>;

/// Factorization engine with a memo of complete factorizations of
/// primitive polynomials. One instance per thread; results do not depend on
/// what the memo already holds.
#[derive(Debug, Default)]
pub struct Factorizer {
    config: FactorizerConfig,
    memo: HashMap<SparsePoly, FactorSets>,
}

impl Factorizer {
    pub fn new(config: FactorizerConfig) -> Self {
        Factorizer {
            config,
            memo: HashMap::new(),
        }
    }

    pub fn config(&self) -> FactorizerConfig {
        self.config
    }

    /// Every unordered pair `(S, T)` of non-monomial primitive polynomials
    /// with `S·T = p`, smaller factor first, sorted.
    pub fn binary_splits(&self, p: &SparsePoly) -> Result<Vec<(SparsePoly, SparsePoly)>, FactorError> {
        self.check(p)?;
        if !p.is_primitive() {
            return Err(FactorError::NotPrimitive);
        }
        let p = p.normalize();
        let c = p.terms();
        let mut found = BTreeSet::new();
        for shape in GridShape::splits_of(p.term_count()) {
            let symmetric = shape.rows == shape.cols;
            let accept = |prefix: &[usize], node: usize| {
                let cell = shape.cell(node);
                if cell.row == 0 || cell.col == 0 {
                    return true;
                }
                let pos = |n: usize| prefix.iter().position(|&x| x == n).expect("dominating cells placed");
                let row_head = &c[pos(shape.node(crate::Cell::new(cell.row, 0)))];
                let col_head = &c[pos(shape.node(crate::Cell::new(0, cell.col)))];
                rectangle_holds(&c[prefix.len()], &c[0], row_head, col_head)
            };
            for_each_bijection_filtered(shape, symmetric, accept, |rho| {
                if let Ok(Some(res)) = reconstruct_factors(c, &rho) {
                    found.insert(res.unordered());
                }
                ControlFlow::Continue(())
            });
        }
        Ok(found.into_iter().collect())
    }

    /// `p` is primitive, non-monomial and has no binary split.
    pub fn is_irreducible(&self, p: &SparsePoly) -> Result<bool, FactorError> {
        if p.is_empty() {
            return Err(FactorError::Empty);
        }
        if p.is_monomial() {
            return Err(FactorError::Monomial);
        }
        Ok(self.binary_splits(p)?.is_empty())
    }

    /// All complete factorizations of `p`, sorted.
    pub fn all_factorizations(&mut self, p: &SparsePoly) -> Result<Vec<Factorization>, FactorError> {
        self.check(p)?;
        let (content, primitive) = p.strip_content().map_err(|_| FactorError::Empty)?;
        let sets = self.complete(&primitive.into_normalized())?;
        Ok(sets
            .iter()
            .map(|factors| Factorization {
                content: content.clone(),
                factors: factors.clone(),
            })
            .collect())
    }

    fn check(&self, p: &SparsePoly) -> Result<(), FactorError> {
        if p.is_empty() {
            return Err(FactorError::Empty);
        }
        if p.term_count() > self.config.max_terms {
            return Err(FactorError::TooManyTerms {
                terms: p.term_count(),
                cap: self.config.max_terms,
            });
        }
        Ok(())
    }

    fn complete(&mut self, q: &SparsePoly) -> Result<FactorSets, FactorError> {
        if let Some(hit) = self.memo.get(q) {
            return Ok(Arc::clone(hit));
        }
        let result = if q.term_count() == 1 {
            vec![Vec::new()]
        } else {
            let splits = self.binary_splits(q)?;
            if splits.is_empty() {
                vec![vec![q.clone()]]
            } else {
                let mut all = BTreeSet::new();
                for (s, t) in splits {
                    let left = self.complete(&s)?;
                    let right = self.complete(&t)?;
                    for f in left.iter() {
                        for g in right.iter() {
                            let mut merged: Vec<SparsePoly> = f.iter().chain(g).cloned().collect();
                            sort_factors(&mut merged);
                            all.insert(merged);
                        }
                    }
                }
                all.into_iter().collect()
            }
        };
        let result = Arc::new(result);
        self.memo.insert(q.clone(), Arc::clone(&result));
        Ok(result)
    }
}

fn rectangle_holds(cell: &ExponentVector, origin: &ExponentVector, row: &ExponentVector, col: &ExponentVector) -> bool {
    cell.as_slice()
        .iter()
        .zip(origin.as_slice())
        .zip(row.as_slice().iter().zip(col.as_slice()))
        .all(|((&x, &o), (&r, &c))| x as u128 + o as u128 == r as u128 + c as u128)
}

pub fn binary_splits(p: &SparsePoly) -> Result<Vec<(SparsePoly, SparsePoly)>, FactorError> {
    Factorizer::default().binary_splits(p)
}

pub fn all_factorizations(p: &SparsePoly) -> Result<Vec<Factorization>, FactorError> {
    Factorizer::default().all_factorizations(p)
}

pub fn is_irreducible(p: &SparsePoly) -> Result<bool, FactorError> {
    Factorizer::default().is_irreducible(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use proptest::prelude::*;

    fn p(s: &str) -> SparsePoly {
        parse(s).unwrap()
    }

    fn texts(fs: &[Factorization]) -> Vec<Vec<String>> {
        fs.iter()
            .map(|f| f.factors.iter().map(format).collect())
            .collect()
    }

    #[test]
    fn splits_of_the_sextic() {
        let splits = binary_splits(&p("1+X+X^2+X^3+X^4+X^5")).unwrap();
        let as_text: BTreeSet<(String, String)> = splits.iter().map(|(a, b)| (format(a), format(b))).collect();
        let expected: BTreeSet<(String, String)> = [
            ("1 + X".to_string(), "1 + X^2 + X^4".to_string()),
            ("1 + X^3".to_string(), "1 + X + X^2".to_string()),
        ]
        .into_iter()
        .collect();
        assert_eq!(as_text, expected);
        assert!(binary_splits(&p("1+X+X^2")).unwrap().is_empty());
        let cubic = binary_splits(&p("1+X+X^2+X^3")).unwrap();
        assert_eq!(cubic, vec![(p("1+X"), p("1+X^2"))]);
        assert_eq!(binary_splits(&p("X+X^2")), Err(FactorError::NotPrimitive));
    }

    #[test]
    fn twelve_term_witness_has_two_factorizations() {
        let f = all_factorizations(&p("4 + 4*X + X^2 + 2*X^3 + X^4")).unwrap();
        assert_eq!(f[0].product().unwrap().term_count(), 12);
        let set: BTreeSet<Vec<String>> = texts(&f).into_iter().collect();
        assert!(set.contains(&vec!["2 + X".to_string(), "2 + X + X^3".to_string()]));
        assert!(set.contains(&vec!["1 + X".to_string(), "4 + X^2 + X^3".to_string()]));
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn monomials_have_one_empty_factorization() {
        let f = all_factorizations(&p("X^5")).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].content, ExponentVector::univariate(5));
        assert!(f[0].is_empty());
        assert_eq!(f[0].to_string(), "X^5");
        assert_eq!(all_factorizations(&SparsePoly::zero(1)), Err(FactorError::Empty));
    }

    #[test]
    fn sixteen_term_witness_is_not_half_factorial() {
        let lhs = p("1+X^3+X^5+X^6").multiply(&p("1+X+X^2+X^4")).unwrap();
        let rhs = p("1+X").multiply(&p("1+X^2")).unwrap().multiply(&p("1+2*X^4+X^7")).unwrap();
        assert_eq!(lhs, rhs);
        let f = all_factorizations(&lhs).unwrap();
        let lengths: BTreeSet<usize> = f.iter().map(|x| x.len()).collect();
        assert_eq!(f.len(), 2);
        assert_eq!(lengths, [2, 3].into_iter().collect());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p("4+X^2+X^3")).unwrap());
        assert!(is_irreducible(&p("1+X^2+X^4")).unwrap());
        assert!(!is_irreducible(&p("1+X+X^2+X^3")).unwrap());
        assert!(is_irreducible(&p("2")).unwrap());
        assert_eq!(is_irreducible(&p("X^3")), Err(FactorError::Monomial));
    }

    #[test]
    fn constants_and_content() {
        let f = all_factorizations(&p("4*X^2")).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].to_string(), "X^2 * (2) * (2)");
        assert_eq!(f[0].product().unwrap(), p("4*X^2"));
    }

    #[test]
    fn multivariate_split() {
        let poly = p("X1^2 + 2*X1*X2 + X2^2");
        let f = all_factorizations(&poly).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].factors, vec![p("X1 + X2"), p("X1 + X2")]);
        let g = all_factorizations(&p("1 + X1 + X2 + X1*X2")).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].len(), 2);
    }

    #[test]
    fn term_cap_is_enforced() {
        let mut fz = Factorizer::new(FactorizerConfig { max_terms: 4 });
        assert!(matches!(
            fz.all_factorizations(&p("1+X+X^2+X^3+X^4")),
            Err(FactorError::TooManyTerms { terms: 5, cap: 4 })
        ));
    }

    #[test]
    fn display_lists_factors() {
        let f = all_factorizations(&p("1+X+X^2+X^3")).unwrap();
        assert_eq!(f[0].to_string(), "(1 + X) * (1 + X^2)");
    }

    fn arb_primitive(max_terms: usize, max_exp: u64) -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(0..=max_exp, 1..max_terms).prop_map(|mut v| {
            v.push(0);
            SparsePoly::univariate(v).into_normalized()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn factorizations_multiply_back(s in arb_primitive(4, 6), t in arb_primitive(4, 6)) {
            let prod = s.multiply(&t).unwrap();
            let fs = all_factorizations(&prod).unwrap();
            prop_assert!(!fs.is_empty());
            for f in &fs {
                prop_assert_eq!(f.product().unwrap(), prod.clone());
                for factor in &f.factors {
                    prop_assert!(is_irreducible(factor).unwrap());
                }
            }
        }

        #[test]
        fn cancellation(s in arb_primitive(4, 5), t1 in arb_primitive(4, 5), t2 in arb_primitive(4, 5)) {
            let a = s.multiply(&t1).unwrap();
            let b = s.multiply(&t2).unwrap();
            prop_assert_eq!(a == b, t1 == t2);
        }
    }
}
