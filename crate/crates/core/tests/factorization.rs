use proptest::prelude::*;

use semifactor::factorizer::{oracle_factorizations, Factorizer, OracleLimits};
use semifactor::poly::{ExponentVector, SparsePoly};

fn univariate(max_terms: usize, max_exp: u64) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(0..=max_exp, 1..max_terms).prop_map(|mut v| {
        v.push(0);
        SparsePoly::univariate(v).normalize()
    })
}

fn bivariate(max_terms: usize, max_exp: u64) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((0..=max_exp, 0..=max_exp), 1..max_terms).prop_map(|pairs| {
        let terms: Vec<ExponentVector> = pairs.iter().map(|&(a, b)| ExponentVector::new(vec![a, b])).collect();
        let p = SparsePoly::new(2, terms).unwrap().normalize();
        p.strip_content().unwrap().1
    })
}

fn product_of(factors: &[SparsePoly], vars: usize) -> SparsePoly {
    factors
        .iter()
        .fold(SparsePoly::one(vars), |acc, f| acc.multiply(f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factorizations_multiply_back(p in univariate(9, 14)) {
        prop_assume!(!p.is_monomial());
        let mut fz = Factorizer::default();
        for f in fz.all_factorizations(&p).unwrap() {
            prop_assert_eq!(f.product().unwrap(), p.clone());
            for q in &f.factors {
                prop_assert!(fz.is_irreducible(q).unwrap());
            }
        }
    }

    #[test]
    fn bivariate_factorizations_multiply_back(p in bivariate(8, 5)) {
        prop_assume!(!p.is_monomial());
        let mut fz = Factorizer::default();
        let fs = fz.all_factorizations(&p).unwrap();
        prop_assert!(!fs.is_empty());
        for f in fs {
            prop_assert_eq!(f.product().unwrap(), p.clone());
        }
    }

    /// Multiplying two polynomials yields at least the concatenation of
    /// their factorizations.
    #[test]
    fn products_contain_the_joined_factorizations(p in univariate(5, 8), q in univariate(5, 8)) {
        prop_assume!(!p.is_monomial() && !q.is_monomial());
        let mut fz = Factorizer::default();
        let pq = p.multiply(&q).unwrap();
        let all = fz.all_factorizations(&pq).unwrap();
        for f in fz.all_factorizations(&p).unwrap() {
            for g in fz.all_factorizations(&q).unwrap() {
                let mut joined: Vec<SparsePoly> = f.factors.iter().chain(&g.factors).cloned().collect();
                joined.sort();
                let found = all.iter().any(|h| {
                    let mut v = h.factors.clone();
                    v.sort();
                    v == joined
                });
                prop_assert!(found, "missing refinement of {:?}", joined);
            }
        }
        for h in &all {
            prop_assert_eq!(product_of(&h.factors, 1), pq.clone());
        }
    }

    #[test]
    fn reciprocal_has_as_many_factorizations(p in univariate(9, 12)) {
        prop_assume!(!p.is_monomial());
        let mut fz = Factorizer::default();
        let r = p.reciprocal().unwrap();
        prop_assert_eq!(
            fz.all_factorizations(&p).unwrap().len(),
            fz.all_factorizations(&r).unwrap().len()
        );
    }

    #[test]
    fn inflation_keeps_every_factorization(p in univariate(7, 6), k in 2u64..4) {
        prop_assume!(!p.is_monomial());
        let mut fz = Factorizer::default();
        let before = fz.all_factorizations(&p).unwrap();
        let after = fz.all_factorizations(&p.inflate(k).unwrap()).unwrap();
        prop_assert!(after.len() >= before.len());
    }

    #[test]
    fn agrees_with_the_divisor_oracle(p in univariate(11, 12)) {
        prop_assume!(!p.is_monomial());
        let mut fast = Factorizer::default().all_factorizations(&p).unwrap();
        let mut slow = oracle_factorizations(&p, &OracleLimits::default()).unwrap();
        fast.sort();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }
}
