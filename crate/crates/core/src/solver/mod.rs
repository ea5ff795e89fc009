//! Factor reconstruction from a grid bijection, and the linear systems that
//! describe polynomials admitting two given bijections at once.
//!
//! Term labels are 0-based throughout: label `k` is the `(k+1)`-th term, and
//! label 0 always belongs to the cell `(1,1)`, so `c_0 = 0` for primitive
//! univariate polynomials.

mod linalg;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gridorder::GridBijection;
use crate::poly::{Exponent, ExponentVector, SparsePoly};
use linalg::{gcd_all, kernel_line, rref, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("expected {expected} terms for the grid, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("bijections target different term counts ({left} vs {right})")]
    TermMismatch { left: usize, right: usize },
    #[error("solution still carries sign constraints on {0} forms")]
    Constrained(usize),
    #[error("arithmetic overflow while evaluating a generic instance")]
    Overflow,
    #[error("the bijection does not reconstruct a factorization of this sequence")]
    Reconstruction,
    #[error("bounded instance enumeration needs {needed} points, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
}

/// The two factors `a` (rows) and `b` (columns) recovered from a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionResult {
    pub a: Vec<ExponentVector>,
    pub b: Vec<ExponentVector>,
}

impl ReconstructionResult {
    /// Both factors as normalized polynomials.
    pub fn factors(&self) -> (SparsePoly, SparsePoly) {
        let vars = self.a[0].vars();
        let make = |v: &[ExponentVector]| {
            SparsePoly::new(vars, v.to_vec())
                .expect("uniform width")
                .into_normalized()
        };
        (make(&self.a), make(&self.b))
    }

    /// The factors as an unordered pair, smaller one first.
    pub fn unordered(&self) -> (SparsePoly, SparsePoly) {
        let (s, t) = self.factors();
        if s <= t {
            (s, t)
        } else {
            (t, s)
        }
    }
}

/// Recovers `a_i = c_{ρ(i,1)}` and `b_j = c_{ρ(1,j)}` (shifted so both are
/// primitive) and checks `a_i + b_j = c_{ρ(i,j)}` on every cell.
///
/// `c` is indexed by term label and need not be sorted. For a primitive `c`
/// the factors are unique when they exist. Returns `Ok(None)` when some cell
/// check fails.
pub fn reconstruct_factors(
    c: &[ExponentVector],
    rho: &GridBijection,
) -> Result<Option<ReconstructionResult>, SolverError> {
    let shape = rho.shape();
    if c.len() != shape.size() {
        return Err(SolverError::ShapeMismatch {
            expected: shape.size(),
            found: c.len(),
        });
    }
    let rows: Vec<&ExponentVector> = (0..shape.rows).map(|i| &c[rho.label(i, 0)]).collect();
    let cols: Vec<&ExponentVector> = (0..shape.cols).map(|j| &c[rho.label(0, j)]).collect();
    let meet = |v: &[&ExponentVector]| v.iter().skip(1).fold(v[0].clone(), |m, x| m.meet(x));
    let (row_min, col_min) = (meet(&rows), meet(&cols));
    let shift = |v: &[&ExponentVector], m: &ExponentVector| -> Vec<ExponentVector> {
        v.iter().map(|x| x.checked_sub(m).expect("meet is below")).collect()
    };
    let result = ReconstructionResult {
        a: shift(&rows, &row_min),
        b: shift(&cols, &col_min),
    };
    for (i, ai) in result.a.iter().enumerate() {
        for (j, bj) in result.b.iter().enumerate() {
            match ai.checked_add(bj) {
                Ok(sum) if sum == c[rho.label(i, j)] => {}
                _ => return Ok(None),
            }
        }
    }
    Ok(Some(result))
}

/// `c_sum = c_left + c_right`, labels 0-based with `left ≤ right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Equation {
    pub sum: usize,
    pub left: usize,
    pub right: usize,
}

impl Equation {
    pub fn new(sum: usize, left: usize, right: usize) -> Self {
        Equation {
            sum,
            left: left.min(right),
            right: left.max(right),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{} = c{} + c{}", self.sum + 1, self.left + 1, self.right + 1)
    }
}

/// Homogeneous equations on the labels `0..terms`, with `c_0 = 0` implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystem {
    pub terms: usize,
    pub equations: Vec<Equation>,
    /// Side conditions `c_p ≤ c_q` that hold on sorted instances. They are
    /// kept for checking concrete points, not imposed by the solver.
    pub ordering: Vec<(usize, usize)>,
}

impl LinearSystem {
    pub fn new(terms: usize) -> Self {
        LinearSystem {
            terms,
            equations: Vec::new(),
            ordering: (0..terms.saturating_sub(1)).map(|k| (k, k + 1)).collect(),
        }
    }

    pub fn extend<I: IntoIterator<Item = Equation>>(&mut self, eqs: I) {
        self.equations.extend(eqs);
        self.equations.sort_unstable();
        self.equations.dedup();
    }

    pub fn is_satisfied_by(&self, c: &[i128]) -> bool {
        c.len() == self.terms
            && c.first().map_or(true, |&x| x == 0)
            && self.equations.iter().all(|e| c[e.sum] == c[e.left] + c[e.right])
    }

    pub fn ordering_holds(&self, c: &[i128]) -> bool {
        self.ordering.iter().all(|&(p, q)| c[p] <= c[q])
    }
}

/// The equations `c_{ρ(i,j)} = c_{ρ(i,1)} + c_{ρ(1,j)}` for `i, j ≥ 2`.
pub fn implicit_equations(rho: &GridBijection) -> Vec<Equation> {
    let shape = rho.shape();
    let mut eqs = Vec::new();
    for i in 1..shape.rows {
        for j in 1..shape.cols {
            eqs.push(Equation::new(rho.label(i, j), rho.label(i, 0), rho.label(0, j)));
        }
    }
    eqs
}

pub fn system_for(rho: &GridBijection) -> LinearSystem {
    let mut sys = LinearSystem::new(rho.shape().size());
    sys.extend(implicit_equations(rho));
    sys
}

/// Union of the equation sets of both bijections.
pub fn pair_system(rho1: &GridBijection, rho2: &GridBijection) -> Result<LinearSystem, SolverError> {
    let (t1, t2) = (rho1.shape().size(), rho2.shape().size());
    if t1 != t2 {
        return Err(SolverError::TermMismatch { left: t1, right: t2 });
    }
    let mut sys = LinearSystem::new(t1);
    sys.extend(implicit_equations(rho1));
    sys.extend(implicit_equations(rho2));
    Ok(sys)
}

/// Meaning of one parameter of a [`ParametricSolution`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    /// The label `index` is free, with `c_index = scale · p`.
    Free { index: usize, scale: i64 },
    /// An extreme ray of the nonnegative solutions; `direction[k]` is its
    /// contribution to `c_k`.
    Ray { direction: Vec<i64> },
}

/// Each `c_k` as an integer linear form in the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParametricSolution {
    pub terms: usize,
    pub params: Vec<Parameter>,
    /// `forms[k][p]` is the coefficient of parameter `p` in `c_k`.
    pub forms: Vec<Vec<i64>>,
    /// Labels whose form has a negative coefficient.
    pub constraints: Vec<usize>,
}

impl ParametricSolution {
    pub fn dimension(&self) -> usize {
        self.params.len()
    }

    pub fn is_constrained(&self) -> bool {
        !self.constraints.is_empty()
    }

    pub fn free_indices(&self) -> Vec<usize> {
        self.params
            .iter()
            .filter_map(|p| match p {
                Parameter::Free { index, .. } => Some(*index),
                Parameter::Ray { .. } => None,
            })
            .collect()
    }

    pub fn max_coefficient(&self) -> i64 {
        self.forms
            .iter()
            .flatten()
            .map(|x| x.abs())
            .max()
            .unwrap_or(0)
    }

    /// Dimension of the span of the solution set.
    pub fn rank(&self) -> usize {
        let d = self.dimension();
        let rows: Vec<Vec<Q>> = self
            .forms
            .iter()
            .map(|f| f.iter().map(|&a| Q::from_integer(a as i128)).collect())
            .collect();
        let order: Vec<usize> = (0..d).collect();
        rref(rows, &order).1.len()
    }

    /// Evaluates every form at the given parameter values.
    pub fn evaluate(&self, values: &[i128]) -> Result<Vec<i128>, SolverError> {
        assert_eq!(values.len(), self.dimension(), "one value per parameter");
        self.forms
            .iter()
            .map(|form| {
                form.iter().zip(values).try_fold(0i128, |acc, (&a, &v)| {
                    (a as i128)
                        .checked_mul(v)
                        .and_then(|x| acc.checked_add(x))
                        .ok_or(SolverError::Overflow)
                })
            })
            .collect()
    }

    /// The form of `c_k` as readable text in parameters `p1, p2, ...`.
    pub fn form_text(&self, k: usize) -> String {
        linear_form_text(&self.forms[k])
    }
}

pub fn linear_form_text(form: &[i64]) -> String {
    let mut out = String::new();
    for (p, &a) in form.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let sign = if a < 0 { "-" } else { "+" };
        if out.is_empty() {
            if a < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if a.abs() != 1 {
            out.push_str(&format!("{}*", a.abs()));
        }
        out.push_str(&format!("p{}", p + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Solves the system over the rationals. Pivots are taken from the highest
/// label down, so the free labels are the lowest unpivoted ones. Denominators
/// are cleared by scaling all free labels by one common factor.
pub fn solve_parametric(sys: &LinearSystem) -> ParametricSolution {
    let t = sys.terms;
    let unit = |k: usize| -> Vec<Q> {
        let mut r = vec![Q::from_integer(0); t];
        r[k] = Q::from_integer(1);
        r
    };
    let mut rows = Vec::with_capacity(sys.equations.len() + 1);
    if t > 0 {
        rows.push(unit(0));
    }
    for e in &sys.equations {
        let mut r = vec![Q::from_integer(0); t];
        r[e.sum] += Q::from_integer(1);
        r[e.left] -= Q::from_integer(1);
        r[e.right] -= Q::from_integer(1);
        rows.push(r);
    }
    let order: Vec<usize> = (0..t).rev().collect();
    let (reduced, pivots) = rref(rows, &order);
    let free: Vec<usize> = (0..t).filter(|k| !pivots.contains(k)).collect();

    // Rational forms: c_k = Σ coef · c_free.
    let mut rational = vec![vec![Q::from_integer(0); free.len()]; t];
    for (p, &f) in free.iter().enumerate() {
        rational[f][p] = Q::from_integer(1);
    }
    for (row, &k) in reduced.iter().zip(&pivots) {
        for (p, &f) in free.iter().enumerate() {
            rational[k][p] = -row[f];
        }
    }
    let scale = rational
        .iter()
        .flatten()
        .fold(1i128, |acc, x| acc.lcm(x.denom()));
    let forms: Vec<Vec<i64>> = rational
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| i64::try_from((x * scale).to_integer()).expect("small coefficients"))
                .collect()
        })
        .collect();
    let scale = i64::try_from(scale).expect("small denominators");
    let params = free
        .iter()
        .map(|&index| Parameter::Free { index, scale })
        .collect();
    with_constraints(t, params, forms)
}

fn with_constraints(terms: usize, params: Vec<Parameter>, forms: Vec<Vec<i64>>) -> ParametricSolution {
    let constraints = forms
        .iter()
        .enumerate()
        .filter(|(_, f)| f.iter().any(|&a| a < 0))
        .map(|(k, _)| k)
        .collect();
    ParametricSolution {
        terms,
        params,
        forms,
        constraints,
    }
}

/// Restricts a solution to nonnegative values of every `c_k`.
///
/// The set of parameter points with all forms nonnegative is a polyhedral
/// cone. It is re-parametrized by its extreme rays, found as the
/// one-dimensional kernels of `d − 1` tight forms that keep every form
/// nonnegative. The result has nonnegative coefficients and no constraints.
/// When the cone is `{0}` every `c_k` is forced to vanish and the result has
/// no parameters.
pub fn propagate_nonnegative(sol: &ParametricSolution) -> ParametricSolution {
    let d = sol.dimension();
    let t = sol.terms;
    if d == 0 {
        return with_constraints(t, Vec::new(), vec![Vec::new(); t]);
    }
    let mut distinct: Vec<Vec<i64>> = sol
        .forms
        .iter()
        .filter(|f| f.iter().any(|&a| a != 0))
        .cloned()
        .collect();
    distinct.sort();
    distinct.dedup();

    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut try_line = |v: Vec<i64>| {
        for sign in [1i64, -1] {
            let w: Vec<i64> = v.iter().map(|x| x * sign).collect();
            let image: Vec<i64> = sol
                .forms
                .iter()
                .map(|f| f.iter().zip(&w).map(|(a, b)| a * b).sum())
                .collect();
            if image.iter().all(|&x| x >= 0) && image.iter().any(|&x| x != 0) {
                let g = gcd_all(&image);
                rays.insert(image.iter().map(|x| x / g).collect());
            }
        }
    };
    for_each_subset(distinct.len(), d - 1, |subset| {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&k| distinct[k].clone()).collect();
        if let Some(v) = kernel_line(&rows, d) {
            try_line(v);
        }
    });

    let rays: Vec<Vec<i64>> = rays.into_iter().collect();
    let forms = (0..t).map(|k| rays.iter().map(|r| r[k]).collect()).collect();
    let params = rays
        .into_iter()
        .map(|direction| Parameter::Ray { direction })
        .collect();
    with_constraints(t, params, forms)
}

fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if acc.len() == k {
            visit(acc);
            return;
        }
        for x in start..n {
            if n - x < k - acc.len() {
                break;
            }
            acc.push(x);
            rec(x + 1, n, k, acc, visit);
            acc.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut visit);
    }
}

/// The smallest power of 10 exceeding `t · max|coefficient| · parameters`.
///
/// Two distinct forms differ in some coefficient by at most twice the largest
/// coefficient, and at `p ↦ base^p` the highest differing power dominates
/// every lower contribution, so distinct forms evaluate to distinct values.
pub fn default_base(sol: &ParametricSolution) -> i128 {
    let bound = (sol.terms.max(1) as i128) * (sol.max_coefficient().max(1) as i128) * (sol.dimension().max(1) as i128);
    let mut base = 10i128;
    while base <= bound {
        base *= 10;
    }
    base
}

/// Parameter values `base^1, base^2, ..., base^d`.
pub fn generic_parameters(dimension: usize, base: i128) -> Result<Vec<i128>, SolverError> {
    let mut out = Vec::with_capacity(dimension);
    let mut power = 1i128;
    for _ in 0..dimension {
        power = power.checked_mul(base).ok_or(SolverError::Overflow)?;
        out.push(power);
    }
    Ok(out)
}

/// Values of `c_k` by label at the generic point `p ↦ base^p`.
pub fn generic_values(sol: &ParametricSolution, base: i128) -> Result<Vec<Exponent>, SolverError> {
    if sol.is_constrained() {
        return Err(SolverError::Constrained(sol.constraints.len()));
    }
    let values = sol.evaluate(&generic_parameters(sol.dimension(), base)?)?;
    values
        .into_iter()
        .map(|v| Exponent::try_from(v).map_err(|_| SolverError::Overflow))
        .collect()
}

/// The generic point as a sorted univariate polynomial.
pub fn generic_instance(sol: &ParametricSolution, base: i128) -> Result<SparsePoly, SolverError> {
    Ok(SparsePoly::univariate(generic_values(sol, base)?).into_normalized())
}

/// Univariate labeled values as exponent vectors.
pub fn labeled(values: &[Exponent]) -> Vec<ExponentVector> {
    values.iter().map(|&v| ExponentVector::univariate(v)).collect()
}

/// Whether both bijections reconstruct the same unordered factor pair from
/// the labeled sequence `c`.
pub fn equivalent_under(
    c: &[ExponentVector],
    rho1: &GridBijection,
    rho2: &GridBijection,
) -> Result<bool, SolverError> {
    let first = reconstruct_factors(c, rho1)?.ok_or(SolverError::Reconstruction)?;
    let second = reconstruct_factors(c, rho2)?.ok_or(SolverError::Reconstruction)?;
    Ok(first.unordered() == second.unordered())
}

/// Exponent forms of the two factors under `rho`: sorted multisets of the
/// forms of `c_{ρ(i,1)}` and `c_{ρ(1,j)}`.
pub fn factor_forms(sol: &ParametricSolution, rho: &GridBijection) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let shape = rho.shape();
    let mut a: Vec<Vec<i64>> = (0..shape.rows).map(|i| sol.forms[rho.label(i, 0)].clone()).collect();
    let mut b: Vec<Vec<i64>> = (0..shape.cols).map(|j| sol.forms[rho.label(0, j)].clone()).collect();
    a.sort();
    b.sort();
    (a, b)
}

/// Formal equivalence: the two bijections give the same factor exponent
/// forms, as an unordered pair when the factors have equal term counts.
pub fn formally_equivalent(sol: &ParametricSolution, rho1: &GridBijection, rho2: &GridBijection) -> bool {
    let (a1, b1) = factor_forms(sol, rho1);
    let (a2, b2) = factor_forms(sol, rho2);
    (a1 == a2 && b1 == b2) || (a1 == b2 && b1 == a2)
}

/// Every sorted exponent tuple of the family with all `c_k ≤ bound`, found by
/// running each free label through `0..=bound`. The all-zero tuple is left
/// out. Needs a solution parametrized by free labels.
pub fn bounded_instances(
    sol: &ParametricSolution,
    bound: u64,
    budget: u128,
) -> Result<BTreeSet<Vec<u64>>, SolverError> {
    let d = sol.dimension();
    let needed = (bound as u128 + 1).checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(SolverError::Budget { needed, budget });
    }
    let scale = sol
        .params
        .iter()
        .map(|p| match p {
            Parameter::Free { scale, .. } => *scale as i128,
            Parameter::Ray { .. } => 1,
        })
        .max()
        .unwrap_or(1);
    let mut out = BTreeSet::new();
    let mut values = vec![0i128; d];
    loop {
        let mut tuple = Vec::with_capacity(sol.terms);
        let mut ok = true;
        for form in &sol.forms {
            let num: i128 = form.iter().zip(&values).map(|(&a, &v)| a as i128 * v).sum();
            if num.rem_euclid(scale) != 0 {
                ok = false;
                break;
            }
            let v = num / scale;
            if v < 0 || v > bound as i128 {
                ok = false;
                break;
            }
            tuple.push(v as u64);
        }
        if ok && tuple.iter().any(|&v| v != 0) {
            tuple.sort_unstable();
            out.insert(tuple);
        }
        // Odometer step over [0, bound]^d.
        let mut p = 0;
        loop {
            if p == d {
                return Ok(out);
            }
            if values[p] < bound as i128 {
                values[p] += 1;
                break;
            }
            values[p] = 0;
            p += 1;
        }
    }
}

/// Divides a tuple by the gcd of its entries, undoing `X ↦ X^g`.
pub fn gcd_normalize(tuple: &[u64]) -> Vec<u64> {
    let g = tuple.iter().fold(0u64, |acc, x| acc.gcd(x));
    if g <= 1 {
        tuple.to_vec()
    } else {
        tuple.iter().map(|x| x / g).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridorder::{enumerate_bijections, GridShape};
    use proptest::prelude::*;

    fn uni(v: &[u64]) -> Vec<ExponentVector> {
        labeled(v)
    }

    fn table(r: usize, s: usize) -> Vec<GridBijection> {
        enumerate_bijections(GridShape::new(r, s), false)
    }

    fn eq1(sum: usize, l: usize, r: usize) -> Equation {
        Equation::new(sum - 1, l - 1, r - 1)
    }

    #[test]
    fn reconstructs_both_sextic_factorizations() {
        let rhos = table(3, 2);
        let c = uni(&[0, 1, 2, 3, 4, 5]);
        let first = reconstruct_factors(&c, &rhos[0]).unwrap().unwrap();
        assert_eq!(first.a, uni(&[0, 2, 4]));
        assert_eq!(first.b, uni(&[0, 1]));
        let fifth = reconstruct_factors(&c, &rhos[4]).unwrap().unwrap();
        assert_eq!(fifth.a, uni(&[0, 1, 2]));
        assert_eq!(fifth.b, uni(&[0, 3]));
    }

    #[test]
    fn reconstruction_failures() {
        let c = uni(&[0, 1, 2, 4]);
        for rho in table(2, 2) {
            assert_eq!(reconstruct_factors(&c, &rho).unwrap(), None);
        }
        assert!(matches!(
            reconstruct_factors(&uni(&[0, 1]), &table(2, 2)[0]),
            Err(SolverError::ShapeMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn reconstructs_separable_multivariate() {
        let c: Vec<ExponentVector> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|v| ExponentVector::new(v.to_vec()))
            .collect();
        let rho = &table(2, 2)[1]; // (1,1) (2,1) (1,2) (2,2)
        let res = reconstruct_factors(&c, rho).unwrap().unwrap();
        assert_eq!(res.a, vec![ExponentVector::new(vec![0, 0]), ExponentVector::new(vec![0, 1])]);
        assert_eq!(res.b, vec![ExponentVector::new(vec![0, 0]), ExponentVector::new(vec![1, 0])]);
        let other = reconstruct_factors(&c, &table(2, 2)[0]).unwrap().unwrap();
        assert_eq!(other.unordered(), res.unordered());
    }

    #[test]
    fn reconstructs_without_constant_term() {
        // (X1 + X2)^2 = X1^2 + 2 X1 X2 + X2^2: no term is the componentwise minimum.
        let p = crate::poly::parse("X1^2 + 2*X1*X2 + X2^2").unwrap();
        let found = table(2, 2)
            .iter()
            .filter_map(|rho| reconstruct_factors(p.terms(), rho).unwrap())
            .map(|r| r.unordered())
            .collect::<BTreeSet<_>>();
        let x = crate::poly::parse("X1 + X2").unwrap();
        assert_eq!(found.into_iter().collect::<Vec<_>>(), vec![(x.clone(), x)]);
    }

    #[test]
    fn pair_system_for_sextic_cases() {
        let rhos = table(3, 2);
        let sys = pair_system(&rhos[0], &rhos[4]).unwrap();
        let mut expected = vec![eq1(4, 2, 3), eq1(6, 2, 5), eq1(5, 2, 4), eq1(6, 3, 4)];
        expected.sort();
        assert_eq!(sys.equations, expected);
        assert_eq!(pair_system(&rhos[2], &rhos[2]).unwrap().equations, implicit_equations(&rhos[2]));
        assert!(matches!(
            pair_system(&rhos[0], &table(2, 2)[0]),
            Err(SolverError::TermMismatch { left: 6, right: 4 })
        ));
    }

    #[test]
    fn pair_system_for_octic_cases() {
        let rhos = table(2, 4);
        let sys = pair_system(&rhos[0], &rhos[7]).unwrap();
        let mut expected = vec![
            eq1(6, 2, 5),
            eq1(7, 3, 5),
            eq1(8, 4, 5),
            eq1(4, 2, 3),
            eq1(8, 3, 6),
        ];
        expected.sort();
        assert_eq!(sys.equations, expected);
    }

    #[test]
    fn solves_sextic_family() {
        let rhos = table(3, 2);
        let sol = solve_parametric(&pair_system(&rhos[0], &rhos[4]).unwrap());
        assert_eq!(sol.free_indices(), vec![1]);
        let forms: Vec<i64> = sol.forms.iter().map(|f| f[0]).collect();
        assert_eq!(forms, vec![0, 1, 2, 3, 4, 5]);
        assert!(!sol.is_constrained());
        assert_eq!(generic_instance(&sol, 10).unwrap(), SparsePoly::univariate([0, 10, 20, 30, 40, 50]));
    }

    #[test]
    fn solves_octic_system_with_three_free_labels() {
        let rhos = table(2, 4);
        let sol = solve_parametric(&pair_system(&rhos[0], &rhos[7]).unwrap());
        assert_eq!(sol.free_indices(), vec![1, 2, 4]);
        assert_eq!(sol.forms[3], vec![1, 1, 0]);
        assert_eq!(sol.forms[5], vec![1, 0, 1]);
        assert_eq!(sol.forms[6], vec![0, 1, 1]);
        assert_eq!(sol.forms[7], vec![1, 1, 1]);
    }

    #[test]
    fn empty_system_leaves_everything_free() {
        let sol = solve_parametric(&LinearSystem::new(4));
        assert_eq!(sol.free_indices(), vec![1, 2, 3]);
        assert_eq!(sol.forms[0], vec![0, 0, 0]);
    }

    #[test]
    fn generic_parameters_are_powers() {
        assert_eq!(generic_parameters(2, 100).unwrap(), vec![100, 10000]);
        assert!(generic_parameters(40, 10).is_err());
        let sol = ParametricSolution {
            terms: 2,
            params: vec![Parameter::Free { index: 1, scale: 1 }],
            forms: vec![vec![1], vec![2]],
            constraints: vec![],
        };
        assert_eq!(generic_values(&sol, 3).unwrap(), vec![3, 6]);
        assert_eq!(default_base(&sol), 10);
    }

    #[test]
    fn constrained_solutions_are_rejected() {
        let sol = with_constraints(2, vec![Parameter::Free { index: 1, scale: 1 }], vec![vec![0], vec![-1]]);
        assert_eq!(sol.constraints, vec![1]);
        assert!(matches!(generic_values(&sol, 10), Err(SolverError::Constrained(1))));
        let fixed = propagate_nonnegative(&sol);
        assert_eq!(fixed.dimension(), 1);
        assert_eq!(fixed.forms, vec![vec![0], vec![1]]);
    }

    #[test]
    fn nonnegativity_can_force_zero() {
        // c1 = a, c2 = -a: only a = 0 keeps both nonnegative.
        let sol = with_constraints(3, vec![Parameter::Free { index: 1, scale: 1 }], vec![vec![0], vec![1], vec![-1]]);
        let fixed = propagate_nonnegative(&sol);
        assert_eq!(fixed.dimension(), 0);
        assert!(fixed.forms.iter().all(|f| f.is_empty()));
    }

    #[test]
    fn rays_of_a_wedge() {
        // c = (0, x, y, x - y, 2y - x): the cone y ≤ x ≤ 2y has rays (1,1) and (2,1).
        let sol = with_constraints(
            5,
            vec![Parameter::Free { index: 1, scale: 1 }, Parameter::Free { index: 2, scale: 1 }],
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, -1], vec![-1, 2]],
        );
        let fixed = propagate_nonnegative(&sol);
        let dirs: BTreeSet<Vec<i64>> = fixed
            .params
            .iter()
            .map(|p| match p {
                Parameter::Ray { direction } => direction.clone(),
                _ => unreachable!(),
            })
            .collect();
        let expected: BTreeSet<Vec<i64>> = [vec![0, 1, 1, 0, 1], vec![0, 2, 1, 1, 0]].into_iter().collect();
        assert_eq!(dirs, expected);
        assert!(fixed.forms.iter().flatten().all(|&a| a >= 0));
        assert_eq!((sol.rank(), fixed.rank()), (2, 2));
    }

    #[test]
    fn equivalence_under_generic_sequences() {
        let rhos = table(3, 2);
        let c = uni(&[0, 1, 2, 3, 4, 5]);
        assert!(!equivalent_under(&c, &rhos[0], &rhos[4]).unwrap());
        assert!(equivalent_under(&c, &rhos[0], &rhos[0]).unwrap());

        let octic = table(2, 4);
        let sol = solve_parametric(&pair_system(&octic[0], &octic[7]).unwrap());
        let c = labeled(&generic_values(&sol, default_base(&sol)).unwrap());
        assert!(!equivalent_under(&c, &octic[0], &octic[7]).unwrap());
        assert!(!formally_equivalent(&sol, &octic[0], &octic[7]));
    }

    #[test]
    fn bounded_instances_of_sextic_family() {
        let rhos = table(3, 2);
        let sol = solve_parametric(&pair_system(&rhos[0], &rhos[4]).unwrap());
        let inst = bounded_instances(&sol, 15, 1 << 20).unwrap();
        let expected: BTreeSet<Vec<u64>> = (1..=3).map(|b| (0..6).map(|k| k * b).collect()).collect();
        assert_eq!(inst, expected);
        assert!(matches!(bounded_instances(&sol, 15, 4), Err(SolverError::Budget { .. })));
        assert_eq!(gcd_normalize(&[0, 3, 6]), vec![0, 1, 2]);
        assert_eq!(gcd_normalize(&[0, 0]), vec![0, 0]);
    }

    #[test]
    fn form_text_is_readable() {
        assert_eq!(linear_form_text(&[1, 0, 3]), "p1 + 3*p3");
        assert_eq!(linear_form_text(&[-1, 2]), "-p1 + 2*p2");
        assert_eq!(linear_form_text(&[0, 0]), "0");
    }

    fn arb_factor(len: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0u64..20, len - 1).prop_map(|mut v| {
            v.push(0);
            v
        })
    }

    proptest! {
        #[test]
        fn reconstruction_multiplies_back(a in arb_factor(3), b in arb_factor(3)) {
            let s = SparsePoly::univariate(a.clone());
            let t = SparsePoly::univariate(b.clone());
            let p = s.multiply(&t).unwrap();
            let mut found = 0;
            for rho in enumerate_bijections(GridShape::new(3, 3), false) {
                if let Some(res) = reconstruct_factors(p.terms(), &rho).unwrap() {
                    let (x, y) = res.factors();
                    prop_assert_eq!(x.multiply(&y).unwrap(), p.clone());
                    found += 1;
                }
            }
            prop_assert!(found >= 1);
        }

        #[test]
        fn generic_solutions_satisfy_both_bijections(x in 0usize..42, y in 0usize..42) {
            let rhos = table(2, 5);
            let sol = solve_parametric(&pair_system(&rhos[x], &rhos[y]).unwrap());
            let ray = propagate_nonnegative(&sol);
            if ray.dimension() > 0 {
                let values = generic_values(&ray, default_base(&ray)).unwrap();
                let c = labeled(&values);
                prop_assert!(reconstruct_factors(&c, &rhos[x]).unwrap().is_some());
                prop_assert!(reconstruct_factors(&c, &rhos[y]).unwrap().is_some());
                let wide: Vec<i128> = values.iter().map(|&v| v as i128).collect();
                prop_assert!(pair_system(&rhos[x], &rhos[y]).unwrap().is_satisfied_by(&wide));
            }
            if !sol.is_constrained() {
                let values = generic_values(&sol, default_base(&sol)).unwrap();
                let c = labeled(&values);
                prop_assert!(reconstruct_factors(&c, &rhos[x]).unwrap().is_some());
                prop_assert!(reconstruct_factors(&c, &rhos[y]).unwrap().is_some());
            }
        }
    }
}
