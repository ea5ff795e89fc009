//! Polynomials with nonnegative integer coefficients in the very sparse form.
//!
//! A polynomial `P = X^{c_1} + ... + X^{c_t}` is stored as the list of its
//! exponent vectors. A coefficient `k` is encoded by repeating the vector `k`
//! times, so the number of stored terms equals `P(1, ..., 1)`.

mod text;

pub use text::{format, parse, parse_with, parse_with_vars, ParseOptions};

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Exponent = u64;

/// Default upper bound on exponents accepted from text input.
pub const DEFAULT_EXPONENT_CAP: Exponent = (1 << 31) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative coefficient at position {position}: only nonnegative coefficients are allowed")]
    NegativeCoefficient { position: usize },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("exponent at position {position} exceeds the cap {cap}")]
    ExponentCap { position: usize, cap: Exponent },
    #[error("polynomial would have more than {cap} terms")]
    TooManyTerms { cap: usize },
    #[error("exponent arithmetic overflow")]
    Overflow,
    #[error("operation requires a nonempty polynomial")]
    Empty,
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {vars} variables")]
    IndexOutOfRange { index: usize, vars: usize },
}

/// The exponent vector of a monomial `X^γ = ∏ X_j^{γ_j}`.
///
/// Ordered graded-lexicographically: total degree first, lexicographic
/// tiebreak. This order extends componentwise dominance and is compatible
/// with addition, which the grid search relies on.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<Exponent>);

impl ExponentVector {
    pub fn new(exponents: Vec<Exponent>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(vars: usize) -> Self {
        ExponentVector(vec![0; vars])
    }

    pub fn univariate(exponent: Exponent) -> Self {
        ExponentVector(vec![exponent])
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Exponent] {
        &self.0
    }

    pub fn get(&self, var: usize) -> Option<Exponent> {
        self.0.get(var).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u128 {
        self.0.iter().map(|&e| e as u128).sum()
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector, PolyError> {
        if self.vars() != other.vars() {
            return Err(PolyError::VariableMismatch {
                left: self.vars(),
                right: other.vars(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(PolyError::Overflow))
            .collect::<Result<Vec<_>, _>>()
            .map(ExponentVector)
    }

    /// Componentwise difference, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if self.vars() != other.vars() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `true` if every component of `self` is at most the matching one of `other`.
    pub fn dominated_by(&self, other: &ExponentVector) -> bool {
        self.vars() == other.vars() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn padded(&self, vars: usize) -> ExponentVector {
        let mut v = self.0.clone();
        v.resize(vars, 0);
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Exponent>> for ExponentVector {
    fn from(v: Vec<Exponent>) -> Self {
        ExponentVector(v)
    }
}

/// A polynomial in `N[X_1, ..., X_m]` as an ordered list of exponent vectors.
///
/// The term order is significant: [`SparsePoly::project`] keeps it and the
/// solver addresses terms by position. Most constructors and every
/// arithmetic result are normalized (graded-lex nondecreasing).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SparsePoly {
    vars: usize,
    terms: Vec<ExponentVector>,
}

impl SparsePoly {
    /// Builds a polynomial from terms in the given order.
    pub fn new(vars: usize, terms: Vec<ExponentVector>) -> Result<Self, PolyError> {
        if let Some(bad) = terms.iter().find(|t| t.vars() != vars) {
            return Err(PolyError::VariableMismatch {
                left: vars,
                right: bad.vars(),
            });
        }
        Ok(SparsePoly { vars, terms })
    }

    /// Univariate polynomial with one term per listed exponent, order kept.
    pub fn univariate<I: IntoIterator<Item = Exponent>>(exponents: I) -> Self {
        SparsePoly {
            vars: 1,
            terms: exponents.into_iter().map(ExponentVector::univariate).collect(),
        }
    }

    /// Univariate polynomial from dense coefficients, `coeffs[k]` of `X^k`.
    pub fn from_coefficients(coeffs: &[u64]) -> Self {
        let exps = coeffs
            .iter()
            .enumerate()
            .flat_map(|(k, &c)| std::iter::repeat(k as Exponent).take(c as usize));
        SparsePoly::univariate(exps)
    }

    pub fn zero(vars: usize) -> Self {
        SparsePoly { vars, terms: Vec::new() }
    }

    pub fn one(vars: usize) -> Self {
        SparsePoly::monomial(ExponentVector::zero(vars))
    }

    pub fn monomial(exponent: ExponentVector) -> Self {
        SparsePoly {
            vars: exponent.vars(),
            terms: vec![exponent],
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &[ExponentVector] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<ExponentVector> {
        self.terms
    }

    /// Number of terms counted with multiplicity, i.e. `P(1, ..., 1)`.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn normalize(&self) -> SparsePoly {
        self.clone().into_normalized()
    }

    pub fn into_normalized(mut self) -> SparsePoly {
        self.terms.sort_unstable();
        self
    }

    /// Product in the semiring. The result keeps all `s·t` terms and is normalized.
    pub fn multiply(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch {
                left: self.vars,
                right: other.vars,
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.checked_add(b)?);
            }
        }
        Ok(SparsePoly { vars: self.vars, terms }.into_normalized())
    }

    /// Multiplies by the monomial `X^by`.
    pub fn shift(&self, by: &ExponentVector) -> Result<SparsePoly, PolyError> {
        self.multiply(&SparsePoly::monomial(by.clone()))
    }

    /// Componentwise minimum exponent over all terms, the largest monomial divisor.
    pub fn content(&self) -> Option<ExponentVector> {
        let mut it = self.terms.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, t| acc.meet(t)))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().map_or(false, |c| c.is_zero())
    }

    /// Splits `P = X^g · Q` with `Q` primitive; the term order of `Q` follows `P`.
    pub fn strip_content(&self) -> Result<(ExponentVector, SparsePoly), PolyError> {
        let content = self.content().ok_or(PolyError::Empty)?;
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_sub(&content).expect("content divides every term"))
            .collect();
        Ok((
            content,
            SparsePoly {
                vars: self.vars,
                terms,
            },
        ))
    }

    /// Univariate image in `X_var` (0-based): term `i` becomes `X^{c_{i,var}}`.
    /// The term order is kept, not re-sorted.
    pub fn project(&self, var: usize) -> Result<SparsePoly, PolyError> {
        if var >= self.vars {
            return Err(PolyError::IndexOutOfRange {
                index: var,
                vars: self.vars,
            });
        }
        Ok(SparsePoly::univariate(self.terms.iter().map(|t| t.0[var])))
    }

    /// Embeds into a ring with more variables.
    pub fn pad_vars(&self, vars: usize) -> Result<SparsePoly, PolyError> {
        if vars < self.vars {
            return Err(PolyError::VariableMismatch {
                left: self.vars,
                right: vars,
            });
        }
        Ok(SparsePoly {
            vars,
            terms: self.terms.iter().map(|t| t.padded(vars)).collect(),
        })
    }

    /// Exponents of a univariate polynomial in stored order.
    pub fn exponents(&self) -> Option<Vec<Exponent>> {
        (self.vars == 1).then(|| self.terms.iter().map(|t| t.0[0]).collect())
    }

    /// Dense coefficient list of a univariate polynomial.
    pub fn coefficients(&self) -> Option<Vec<u64>> {
        let exps = self.exponents()?;
        let Some(&deg) = exps.iter().max() else {
            return Some(Vec::new());
        };
        let mut coeffs = vec![0u64; deg as usize + 1];
        for e in exps {
            coeffs[e as usize] += 1;
        }
        Some(coeffs)
    }

    pub fn degree(&self) -> Option<Exponent> {
        self.exponents()?.into_iter().max()
    }

    /// Coefficient reversal `X^d P(1/X)` of a univariate polynomial of degree `d`.
    pub fn reciprocal(&self) -> Option<SparsePoly> {
        let exps = self.exponents()?;
        let deg = exps.iter().copied().max().unwrap_or(0);
        Some(SparsePoly::univariate(exps.into_iter().map(|e| deg - e)).into_normalized())
    }

    /// gcd of all exponents of all terms (0 for constants).
    pub fn exponent_gcd(&self) -> Exponent {
        self.terms
            .iter()
            .flat_map(|t| t.0.iter())
            .fold(0, |g, &e| g.gcd(&e))
    }

    /// Divides every exponent by their gcd, undoing a substitution `X ↦ X^g`.
    pub fn compress(&self) -> (Exponent, SparsePoly) {
        let g = self.exponent_gcd();
        if g <= 1 {
            return (g.max(1), self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| ExponentVector(t.0.iter().map(|e| e / g).collect()))
            .collect();
        (
            g,
            SparsePoly {
                vars: self.vars,
                terms,
            },
        )
    }

    /// Substitutes `X_j ↦ X_j^k` for every variable.
    pub fn inflate(&self, k: Exponent) -> Result<SparsePoly, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.0.iter()
                    .map(|e| e.checked_mul(k).ok_or(PolyError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
                    .map(ExponentVector)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparsePoly {
            vars: self.vars,
            terms,
        })
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl Ord for SparsePoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .cmp(&other.vars)
            .then_with(|| self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl PartialOrd for SparsePoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uni(exps: &[Exponent]) -> SparsePoly {
        SparsePoly::univariate(exps.iter().copied())
    }

    fn multi(terms: &[&[Exponent]]) -> SparsePoly {
        let vars = terms.first().map_or(1, |t| t.len());
        SparsePoly::new(vars, terms.iter().map(|t| ExponentVector::new(t.to_vec())).collect()).unwrap()
    }

    #[test]
    fn normalize_sorts_and_keeps_repeats() {
        assert_eq!(uni(&[3, 0, 1]).normalize(), uni(&[0, 1, 3]));
        assert_eq!(uni(&[0, 1, 1]).normalize(), uni(&[0, 1, 1]));
        assert_eq!(
            multi(&[&[1, 0], &[0, 1], &[0, 0]]).normalize(),
            multi(&[&[0, 0], &[0, 1], &[1, 0]])
        );
    }

    #[test]
    fn grlex_matches_brute_force_order() {
        // Brute force: rank every vector of total degree <= 3 in two variables
        // by (degree, lexicographic) and compare with the Ord impl pairwise.
        let mut all = Vec::new();
        for a in 0..4u64 {
            for b in 0..4u64 {
                all.push(vec![a, b]);
            }
        }
        for x in &all {
            for y in &all {
                let key = |v: &Vec<u64>| (v[0] + v[1], v[0], v[1]);
                let expected = key(x).cmp(&key(y));
                let got = ExponentVector::new(x.clone()).cmp(&ExponentVector::new(y.clone()));
                assert_eq!(expected, got, "{x:?} vs {y:?}");
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let p = uni(&[0, 1, 2]).multiply(&uni(&[0, 3])).unwrap();
        assert_eq!(p, uni(&[0, 1, 2, 3, 4, 5]));

        // (2 + X + X^3)(2 + X) = 4 + 4X + X^2 + 2X^3 + X^4
        let lhs = uni(&[0, 0, 1, 3]).multiply(&uni(&[0, 0, 1])).unwrap();
        assert_eq!(lhs.term_count(), 12);
        assert_eq!(lhs.coefficients().unwrap(), vec![4, 4, 1, 2, 1]);
        let rhs = uni(&[0, 1]).multiply(&uni(&[0, 0, 0, 0, 2, 3])).unwrap();
        assert_eq!(lhs, rhs);

        let p = uni(&[0, 2, 2, 7]);
        assert_eq!(p.multiply(&SparsePoly::one(1)).unwrap(), p);
    }

    #[test]
    fn multiply_overflow_is_an_error() {
        let big = uni(&[u64::MAX]);
        assert_eq!(big.multiply(&uni(&[1])), Err(PolyError::Overflow));
        assert!(matches!(
            uni(&[0]).multiply(&multi(&[&[0, 0]])),
            Err(PolyError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn term_count_examples() {
        assert_eq!(uni(&[0, 1, 2]).term_count(), 3);
        assert_eq!(SparsePoly::zero(1).term_count(), 0);
    }

    #[test]
    fn strip_content_examples() {
        let (m, q) = uni(&[2, 3]).strip_content().unwrap();
        assert_eq!(m, ExponentVector::univariate(2));
        assert_eq!(q, uni(&[0, 1]));

        let family: Vec<_> = (0..6).map(|k| 4 + 3 * k).collect();
        let (m, q) = uni(&family).strip_content().unwrap();
        assert_eq!(m, ExponentVector::univariate(4));
        assert_eq!(q, uni(&[0, 3, 6, 9, 12, 15]));

        let (m, q) = multi(&[&[1, 1], &[1, 0]]).strip_content().unwrap();
        assert_eq!(m, ExponentVector::new(vec![1, 0]));
        assert_eq!(q, multi(&[&[0, 1], &[0, 0]]));

        assert_eq!(SparsePoly::zero(2).strip_content(), Err(PolyError::Empty));
    }

    #[test]
    fn project_keeps_term_order() {
        // XY + 1 -> (X + 1, Y + 1); X + Y -> (X + 1, 1 + Y)
        let p = multi(&[&[1, 1], &[0, 0]]);
        assert_eq!(p.project(0).unwrap(), uni(&[1, 0]));
        assert_eq!(p.project(1).unwrap(), uni(&[1, 0]));
        let q = multi(&[&[1, 0], &[0, 1]]);
        assert_eq!(q.project(0).unwrap(), uni(&[1, 0]));
        assert_eq!(q.project(1).unwrap(), uni(&[0, 1]));

        let u = uni(&[0, 4, 4]);
        assert_eq!(u.project(0).unwrap(), u);
        assert!(matches!(u.project(1), Err(PolyError::IndexOutOfRange { index: 1, vars: 1 })));
    }

    #[test]
    fn reciprocal_and_compress() {
        let p = uni(&[0, 2, 3, 4, 5, 6, 7, 8, 9, 11]);
        assert_eq!(p.reciprocal().unwrap(), p);
        assert_ne!(uni(&[0, 1, 1]).reciprocal().unwrap(), uni(&[0, 1, 1]));
        let (g, q) = uni(&[0, 3, 6, 9]).compress();
        assert_eq!(g, 3);
        assert_eq!(q, uni(&[0, 1, 2, 3]));
        assert_eq!(q.inflate(3).unwrap(), uni(&[0, 3, 6, 9]));
    }

    fn arb_poly(vars: usize, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
        prop::collection::vec(prop::collection::vec(0u64..6, vars), 1..=max_terms).prop_map(
            move |terms| {
                SparsePoly::new(vars, terms.into_iter().map(ExponentVector::new).collect())
                    .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn term_count_is_multiplicative(s in arb_poly(2, 6), t in arb_poly(2, 6)) {
            let p = s.multiply(&t).unwrap();
            prop_assert_eq!(p.term_count(), s.term_count() * t.term_count());
        }

        #[test]
        fn multiply_commutes_and_associates(a in arb_poly(2, 4), b in arb_poly(2, 4), c in arb_poly(2, 4)) {
            prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn normalize_is_idempotent(p in arb_poly(3, 8)) {
            let once = p.normalize();
            prop_assert!(once.is_normalized());
            prop_assert_eq!(once.normalize(), once);
        }

        #[test]
        fn strip_content_multiplies_back(p in arb_poly(3, 8)) {
            let (m, q) = p.strip_content().unwrap();
            prop_assert!(q.is_primitive());
            prop_assert_eq!(q.shift(&m).unwrap(), p.normalize());
        }

        #[test]
        fn project_preserves_term_count(p in arb_poly(3, 8), j in 0usize..3) {
            prop_assert_eq!(p.project(j).unwrap().term_count(), p.term_count());
        }
    }
}
