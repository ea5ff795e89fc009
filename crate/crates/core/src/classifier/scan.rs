//! Brute-force cross-check: factor every small primitive polynomial.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ClassificationReport, ClassifierConfig, ClassifyError};
use crate::factorizer::Factorizer;
use crate::poly::SparsePoly;
use crate::solver::bounded_instances;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanHit {
    /// Sorted exponents, first entry 0.
    pub exponents: Vec<u64>,
    pub poly: SparsePoly,
    pub factorizations: usize,
}

/// Number of nondecreasing tuples `0 = c_1 ≤ … ≤ c_t ≤ max_exp`, that is
/// `C(max_exp + t − 1, t − 1)`.
pub fn scan_tuple_count(t: usize, max_exp: u64) -> u128 {
    if t == 0 {
        return 0;
    }
    let k = (t - 1) as u128;
    let n = max_exp as u128 + k;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Every primitive univariate polynomial with `t` terms and degree at most
/// `max_exp` that has two or more complete factorizations, in lexicographic
/// order of exponent tuples.
pub fn exhaustive_scan(t: usize, max_exp: u64, config: &ClassifierConfig) -> Result<Vec<ScanHit>, ClassifyError> {
    if t == 0 {
        return Err(ClassifyError::ZeroTerms);
    }
    let needed = scan_tuple_count(t, max_exp);
    if needed > config.scan_budget {
        return Err(ClassifyError::ScanBudget {
            needed,
            budget: config.scan_budget,
        });
    }
    let mut tuples = Vec::with_capacity(needed as usize);
    let mut current = vec![0u64; t];
    collect_tuples(&mut current, 1, max_exp, &mut tuples);

    let hits: Vec<Option<ScanHit>> = tuples
        .into_par_iter()
        .map_init(
            || Factorizer::new(config.factorizer),
            |fz, exponents| -> Result<Option<ScanHit>, ClassifyError> {
                let poly = SparsePoly::univariate(exponents.iter().copied());
                let count = fz.all_factorizations(&poly)?.len();
                Ok((count >= 2).then(|| ScanHit {
                    exponents,
                    poly,
                    factorizations: count,
                }))
            },
        )
        .collect::<Result<_, _>>()?;
    Ok(hits.into_iter().flatten().collect())
}

fn collect_tuples(current: &mut Vec<u64>, pos: usize, max_exp: u64, out: &mut Vec<Vec<u64>>) {
    if pos == current.len() {
        out.push(current.clone());
        return;
    }
    for v in current[pos - 1]..=max_exp {
        current[pos] = v;
        collect_tuples(current, pos + 1, max_exp, out);
    }
}

/// Outcome of matching scan hits against a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCheck {
    pub t: usize,
    pub max_exp: u64,
    pub hits: usize,
    pub matched: usize,
    pub unmatched: Vec<Vec<u64>>,
}

impl ScanCheck {
    pub fn consistent(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// Checks that every hit is an instance of some non-unique pair of the
/// report, that is, of a family or one of its specializations.
pub fn match_hits(
    report: &ClassificationReport,
    hits: &[ScanHit],
    max_exp: u64,
    config: &ClassifierConfig,
) -> Result<ScanCheck, ClassifyError> {
    let sets: Vec<BTreeSet<Vec<u64>>> = report
        .non_unique_pairs()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|p| bounded_instances(&p.solution, max_exp, config.instance_budget))
        .collect::<Result<_, _>>()?;
    let known: BTreeSet<&Vec<u64>> = sets.iter().flatten().collect();
    let unmatched: Vec<Vec<u64>> = hits
        .iter()
        .filter(|h| !known.contains(&h.exponents))
        .map(|h| h.exponents.clone())
        .collect();
    Ok(ScanCheck {
        t: report.t,
        max_exp,
        hits: hits.len(),
        matched: hits.len() - unmatched.len(),
        unmatched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_count_matches_enumeration() {
        for (t, e) in [(1, 5), (3, 4), (4, 0), (5, 3)] {
            let mut out = Vec::new();
            collect_tuples(&mut vec![0; t], 1, e, &mut out);
            assert_eq!(out.len() as u128, scan_tuple_count(t, e), "t={t} e={e}");
        }
        assert_eq!(scan_tuple_count(10, 9), 48620);
    }

    #[test]
    fn budget_is_enforced() {
        let config = ClassifierConfig {
            scan_budget: 10,
            ..ClassifierConfig::default()
        };
        assert!(matches!(
            exhaustive_scan(6, 15, &config),
            Err(ClassifyError::ScanBudget { needed: 15504, budget: 10 })
        ));
    }

    #[test]
    fn sextic_scan_finds_the_family() {
        let hits = exhaustive_scan(6, 5, &ClassifierConfig::default()).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].exponents, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(hits[0].factorizations, 2);
    }
}
