//! Independent reference factorizer for univariate polynomials.
//!
//! Works on dense coefficient lists and knows nothing about grids. If
//! `Q = D·E` with `D, E` primitive, then `D(0)·E(0) = Q(0) ≥ 1` and
//! `Q_i ≥ D_i·E(0) ≥ D_i`, so every divisor is found among the coefficient
//! vectors bounded by `Q` itself. Each candidate is tested by exact long
//! division over the integers.

use std::collections::{BTreeSet, HashMap};

use super::{sort_factors, FactorError, Factorization};
use crate::poly::SparsePoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_degree: u64,
    /// Upper bound on the number of candidate divisors of one polynomial.
    pub max_candidates: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_degree: 64,
            max_candidates: 1 << 22,
        }
    }
}

type Dense = Vec<u64>;

/// All complete factorizations of a univariate polynomial, sorted.
pub fn oracle_factorizations(p: &SparsePoly, limits: &OracleLimits) -> Result<Vec<Factorization>, FactorError> {
    if p.vars() != 1 {
        return Err(FactorError::NotUnivariate);
    }
    if p.is_empty() {
        return Err(FactorError::Empty);
    }
    let (content, primitive) = p.strip_content()?;
    let dense = primitive.coefficients().expect("univariate");
    if dense.len() as u64 > limits.max_degree + 1 {
        return Err(FactorError::SizeGuard(format!(
            "degree {} exceeds {}",
            dense.len() - 1,
            limits.max_degree
        )));
    }
    let mut oracle = Oracle {
        limits: *limits,
        memo: HashMap::new(),
    };
    let sets = oracle.factor(&dense)?;
    let mut out: Vec<Factorization> = sets
        .into_iter()
        .map(|factors| {
            let mut polys: Vec<SparsePoly> = factors.iter().map(|d| SparsePoly::from_coefficients(d)).collect();
            sort_factors(&mut polys);
            Factorization {
                content: content.clone(),
                factors: polys,
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

struct Oracle {
    limits: OracleLimits,
    memo: HashMap<Dense, BTreeSet<Vec<Dense>>>,
}

impl Oracle {
    fn factor(&mut self, q: &Dense) -> Result<BTreeSet<Vec<Dense>>, FactorError> {
        if let Some(hit) = self.memo.get(q) {
            return Ok(hit.clone());
        }
        let mut out = BTreeSet::new();
        if q.iter().sum::<u64>() == 1 {
            out.insert(Vec::new());
        } else {
            for (d, e) in self.proper_divisors(q)? {
                if !self.proper_divisors(&d)?.is_empty() {
                    continue;
                }
                for mut rest in self.factor(&e)? {
                    rest.push(d.clone());
                    rest.sort();
                    out.insert(rest);
                }
            }
            if out.is_empty() {
                out.insert(vec![q.clone()]);
            }
        }
        self.memo.insert(q.clone(), out.clone());
        Ok(out)
    }

    /// Pairs `(D, Q/D)` with both sides having at least two terms.
    fn proper_divisors(&self, q: &Dense) -> Result<Vec<(Dense, Dense)>, FactorError> {
        let total: u64 = q.iter().sum();
        let candidates: u128 = q
            .iter()
            .map(|&x| x as u128 + 1)
            .try_fold(1u128, |acc, x| acc.checked_mul(x))
            .unwrap_or(u128::MAX);
        if candidates > self.limits.max_candidates {
            return Err(FactorError::SizeGuard(format!(
                "{candidates} candidate divisors exceed {}",
                self.limits.max_candidates
            )));
        }
        let mut found = Vec::new();
        let mut d = vec![0u64; q.len()];
        d[0] = 1;
        loop {
            let weight: u64 = d.iter().sum();
            if weight >= 2 && weight < total && total % weight == 0 {
                let trimmed = trim(&d);
                if let Some(e) = exact_quotient(q, &trimmed) {
                    found.push((trimmed, e));
                }
            }
            // Odometer over 1..=q_0 for the constant term and 0..=q_i above it.
            let mut i = 0;
            loop {
                if i == q.len() {
                    return Ok(found);
                }
                if d[i] < q[i] {
                    d[i] += 1;
                    break;
                }
                d[i] = if i == 0 { 1 } else { 0 };
                i += 1;
            }
        }
    }
}

fn trim(d: &[u64]) -> Dense {
    let len = d.iter().rposition(|&x| x != 0).map_or(1, |k| k + 1);
    d[..len].to_vec()
}

/// `Q / D` when it is exact with nonnegative integer coefficients.
fn exact_quotient(q: &[u64], d: &[u64]) -> Option<Dense> {
    if d.len() > q.len() {
        return None;
    }
    let e_len = q.len() - d.len() + 1;
    let mut e = vec![0i128; e_len];
    let d0 = d[0] as i128;
    for k in 0..q.len() {
        let mut acc = q[k] as i128;
        for i in 1..d.len().min(k + 1) {
            if k - i < e_len {
                acc -= d[i] as i128 * e[k - i];
            }
        }
        if k < e_len {
            if acc < 0 || acc % d0 != 0 {
                return None;
            }
            e[k] = acc / d0;
        } else if acc != 0 {
            return None;
        }
    }
    let e: Dense = e.into_iter().map(|x| x as u64).collect();
    (e.iter().sum::<u64>() >= 2).then_some(e)
}
