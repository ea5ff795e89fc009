//! Classification of non-unique factorizations by term count.
//!
//! For a term count `t`, every way to write `t = r·s` gives a grid shape, and
//! every unordered pair of grid bijections of that shape gives a linear
//! system whose solutions are the polynomials admitting both. Each pair is
//! pushed through three filters:
//!
//! 1. the two factor pairs have identical exponent forms ([`Verdict::Equivalent`]);
//! 2. they become identical once every exponent is forced nonnegative
//!    ([`Verdict::ForcedEquivalent`]);
//! 3. at a generic nonnegative point both sides refine to a common complete
//!    factorization ([`Verdict::EquivalentAfterRefinement`]).
//!
//! Pairs surviving all three are [`Verdict::NonUnique`] and are grouped into
//! families by comparing their bounded instance sets.

mod known;
mod scan;

pub use known::{verify_known_cases, KnownCase};
pub use scan::{exhaustive_scan, match_hits, scan_tuple_count, ScanCheck, ScanHit};

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factorizer::{FactorError, Factorizer, FactorizerConfig};
use crate::gridorder::{enumerate_bijections, GridBijection, GridShape};
use crate::poly::{PolyError, SparsePoly};
use crate::solver::{
    bounded_instances, default_base, factor_forms, formally_equivalent, gcd_normalize, generic_values, labeled,
    linear_form_text, pair_system, propagate_nonnegative, reconstruct_factors, solve_parametric, Parameter,
    ParametricSolution, SolverError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("term count {t} exceeds the configured cap {cap}")]
    TermCap { t: usize, cap: usize },
    #[error("term count must be positive")]
    ZeroTerms,
    #[error("scan needs {needed} tuples, budget is {budget}")]
    ScanBudget { needed: u128, budget: u128 },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifierConfig {
    pub max_t: usize,
    /// Largest exponent used when comparing families by their instances.
    pub family_bound: u64,
    /// Cap on the parameter points visited per bounded instance set.
    pub instance_budget: u128,
    /// Cap on the number of tuples visited by [`exhaustive_scan`].
    pub scan_budget: u128,
    pub factorizer: FactorizerConfig,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            max_t: 11,
            family_bound: 16,
            instance_budget: 1 << 24,
            scan_budget: 1 << 22,
            factorizer: FactorizerConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Equivalent,
    ForcedEquivalent,
    EquivalentAfterRefinement,
    NonUnique,
}

impl Verdict {
    /// One-character cell for verdict matrices.
    pub fn symbol(self) -> char {
        match self {
            Verdict::Equivalent => '.',
            Verdict::ForcedEquivalent => 'f',
            Verdict::EquivalentAfterRefinement => 'r',
            Verdict::NonUnique => 'N',
        }
    }
}

/// Factor exponents of one bijection as linear forms in the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorPattern {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl FactorPattern {
    fn of(sol: &ParametricSolution, rho: &GridBijection) -> Self {
        let (a, b) = factor_forms(sol, rho);
        let text = |v: Vec<Vec<i64>>| v.iter().map(|f| linear_form_text(f)).collect();
        FactorPattern {
            left: text(a),
            right: text(b),
        }
    }
}

/// Identifies a pair of bijections by shape and 1-based case numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairKey {
    pub shape: GridShape,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub key: PairKey,
    pub verdict: Verdict,
    /// Solution in free labels, before nonnegativity is imposed.
    pub solution: ParametricSolution,
    /// Extreme-ray parametrization of the nonnegative solutions.
    pub rays: Option<ParametricSolution>,
    pub patterns: Option<(FactorPattern, FactorPattern)>,
    /// For two-row shapes: the nonzero exponents of the two-term factors at a
    /// generic point, divided by their gcd, smaller first.
    pub left_ratio: Option<(u64, u64)>,
    /// The polynomial at a generic nonnegative point.
    pub generic: Option<SparsePoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShapeSummary {
    pub shape: GridShape,
    pub symmetric: bool,
    pub bijections: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    /// A single identity up to `X ↦ X^g`.
    Sporadic,
    Parametric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub kind: FamilyKind,
    pub dimension: usize,
    /// Sorted exponents of a representative instance (gcd 1 for sporadic
    /// families).
    pub representative: Vec<u64>,
    pub solution: ParametricSolution,
    pub patterns: (FactorPattern, FactorPattern),
    /// Pairs producing exactly this family.
    pub pairs: Vec<PairKey>,
    /// Pairs producing a proper specialization of it.
    pub specializations: Vec<PairKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub t: usize,
    pub shapes: Vec<ShapeSummary>,
    pub pairs: Vec<PairRecord>,
    pub families: Vec<Family>,
    pub unique: bool,
}

impl ClassificationReport {
    /// Pairs whose factorizations differ before nonnegativity or refinement.
    pub fn inequivalent_pairs(&self) -> usize {
        self.pairs.iter().filter(|p| p.verdict != Verdict::Equivalent).count()
    }

    pub fn non_unique_pairs(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|p| p.verdict == Verdict::NonUnique)
    }

    pub fn families_of(&self, kind: FamilyKind) -> impl Iterator<Item = &Family> {
        self.families.iter().filter(move |f| f.kind == kind)
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.pairs.iter().filter(|p| p.verdict == verdict).count()
    }

    /// Non-unique pairs of two-row shapes grouped by the exponent ratio of
    /// their two-term factors.
    pub fn ratio_buckets(&self) -> BTreeMap<(u64, u64), Vec<PairKey>> {
        let mut out: BTreeMap<(u64, u64), Vec<PairKey>> = BTreeMap::new();
        for p in self.non_unique_pairs() {
            if let Some(ratio) = p.left_ratio {
                out.entry(ratio).or_default().push(p.key);
            }
        }
        out
    }

    /// Rows of symbols, one matrix per shape, with the lower triangle blank.
    pub fn verdict_matrix(&self, shape: GridShape) -> Vec<String> {
        let n = self
            .shapes
            .iter()
            .find(|s| s.shape == shape)
            .map_or(0, |s| s.bijections);
        let mut grid = vec![vec![' '; n]; n];
        for (i, row) in grid.iter_mut().enumerate() {
            row[i] = '-';
        }
        for p in self.pairs.iter().filter(|p| p.key.shape == shape) {
            grid[p.key.first - 1][p.key.second - 1] = p.verdict.symbol();
        }
        grid.into_iter().map(|r| r.into_iter().collect()).collect()
    }
}

/// Runs the full classification for term count `t`.
pub fn classify(t: usize, config: &ClassifierConfig) -> Result<ClassificationReport, ClassifyError> {
    if t == 0 {
        return Err(ClassifyError::ZeroTerms);
    }
    if t > config.max_t {
        return Err(ClassifyError::TermCap { t, cap: config.max_t });
    }
    let mut shapes = Vec::new();
    let mut jobs = Vec::new();
    let mut tables = BTreeMap::new();
    for shape in GridShape::splits_of(t) {
        let symmetric = shape.rows == shape.cols;
        let table = enumerate_bijections(shape, symmetric);
        shapes.push(ShapeSummary {
            shape,
            symmetric,
            bijections: table.len(),
        });
        for x in 0..table.len() {
            for y in x + 1..table.len() {
                jobs.push(PairKey {
                    shape,
                    first: x + 1,
                    second: y + 1,
                });
            }
        }
        tables.insert(shape, table);
    }

    let pairs: Vec<PairRecord> = jobs
        .par_iter()
        .map_init(
            || Factorizer::new(config.factorizer),
            |fz, key| {
                let table = &tables[&key.shape];
                analyze_pair(fz, *key, &table[key.first - 1], &table[key.second - 1])
            },
        )
        .collect::<Result<_, _>>()?;

    let families = group_families(&pairs, config)?;
    Ok(ClassificationReport {
        t,
        shapes,
        unique: families.is_empty(),
        pairs,
        families,
    })
}

fn analyze_pair(
    fz: &mut Factorizer,
    key: PairKey,
    rho1: &GridBijection,
    rho2: &GridBijection,
) -> Result<PairRecord, ClassifyError> {
    let solution = solve_parametric(&pair_system(rho1, rho2)?);
    let mut record = PairRecord {
        key,
        verdict: Verdict::Equivalent,
        solution,
        rays: None,
        patterns: None,
        left_ratio: None,
        generic: None,
    };
    if formally_equivalent(&record.solution, rho1, rho2) {
        return Ok(record);
    }
    let rays = propagate_nonnegative(&record.solution);
    record.patterns = Some((FactorPattern::of(&rays, rho1), FactorPattern::of(&rays, rho2)));
    if rays.dimension() == 0 || formally_equivalent(&rays, rho1, rho2) {
        record.verdict = Verdict::ForcedEquivalent;
        record.rays = Some(rays);
        return Ok(record);
    }

    let c = labeled(&generic_values(&rays, default_base(&rays))?);
    let first = reconstruct_factors(&c, rho1)?.ok_or(SolverError::Reconstruction)?;
    let second = reconstruct_factors(&c, rho2)?.ok_or(SolverError::Reconstruction)?;
    let (s1, t1) = first.factors();
    let (s2, t2) = second.factors();
    if key.shape.rows == 2 {
        let x = first.a.iter().map(|e| e.as_slice()[0]).max().unwrap_or(0);
        let y = second.a.iter().map(|e| e.as_slice()[0]).max().unwrap_or(0);
        let g = gcd_normalize(&[x, y]);
        record.left_ratio = Some((g[0].min(g[1]), g[0].max(g[1])));
    }
    let refined = |fz: &mut Factorizer, s: &SparsePoly, t: &SparsePoly| -> Result<BTreeSet<Vec<SparsePoly>>, ClassifyError> {
        let mut out = BTreeSet::new();
        for f in fz.all_factorizations(s)? {
            for g in fz.all_factorizations(t)? {
                let mut all: Vec<SparsePoly> = f.factors.iter().chain(&g.factors).cloned().collect();
                all.sort();
                out.insert(all);
            }
        }
        Ok(out)
    };
    let left = refined(fz, &s1, &t1)?;
    let right = refined(fz, &s2, &t2)?;
    record.verdict = if left.is_disjoint(&right) {
        Verdict::NonUnique
    } else {
        Verdict::EquivalentAfterRefinement
    };
    record.generic = Some(s1.multiply(&t1)?);
    record.rays = Some(rays);
    Ok(record)
}

fn ray_directions(sol: &ParametricSolution) -> Vec<&[i64]> {
    sol.params
        .iter()
        .filter_map(|p| match p {
            Parameter::Ray { direction } => Some(direction.as_slice()),
            Parameter::Free { .. } => None,
        })
        .collect()
}

fn sorted_normalized(direction: &[i64]) -> Vec<u64> {
    let mut v: Vec<u64> = direction.iter().map(|&x| x as u64).collect();
    v.sort_unstable();
    gcd_normalize(&v)
}

fn rays_of(p: &PairRecord) -> &ParametricSolution {
    p.rays.as_ref().expect("non-unique pairs carry rays")
}

fn group_families(pairs: &[PairRecord], config: &ClassifierConfig) -> Result<Vec<Family>, ClassifyError> {
    let non_unique: Vec<&PairRecord> = pairs.iter().filter(|p| p.verdict == Verdict::NonUnique).collect();
    let (multi, single): (Vec<&PairRecord>, Vec<&PairRecord>) =
        non_unique.into_iter().partition(|p| rays_of(p).dimension() >= 2);

    let instance_sets: Vec<BTreeSet<Vec<u64>>> = multi
        .par_iter()
        .map(|p| bounded_instances(&p.solution, config.family_bound, config.instance_budget))
        .collect::<Result<_, _>>()?;
    let mut groups: BTreeMap<&BTreeSet<Vec<u64>>, Vec<&PairRecord>> = BTreeMap::new();
    for (p, set) in multi.iter().zip(&instance_sets) {
        groups.entry(set).or_default().push(p);
    }
    let sets: Vec<&BTreeSet<Vec<u64>>> = groups.keys().copied().collect();
    let is_maximal = |s: &BTreeSet<Vec<u64>>| !sets.iter().any(|o| *o != s && s.is_subset(o));

    let mut families: Vec<Family> = Vec::new();
    let mut maximal_sets: Vec<&BTreeSet<Vec<u64>>> = Vec::new();
    for (set, members) in &groups {
        if !is_maximal(set) {
            continue;
        }
        let lead = members[0];
        let rays = rays_of(lead);
        families.push(Family {
            kind: FamilyKind::Parametric,
            dimension: rays.rank(),
            representative: lead.generic.as_ref().and_then(|g| g.exponents()).unwrap_or_default(),
            solution: rays.clone(),
            patterns: lead.patterns.clone().expect("non-unique pairs carry patterns"),
            pairs: members.iter().map(|p| p.key).collect(),
            specializations: Vec::new(),
        });
        maximal_sets.push(set);
    }
    for (set, members) in &groups {
        if is_maximal(set) {
            continue;
        }
        if let Some(k) = maximal_sets.iter().position(|m| set.is_subset(m)) {
            families[k].specializations.extend(members.iter().map(|p| p.key));
        }
    }

    // One-ray pairs: a single identity up to scaling, unless some parametric
    // family already contains it.
    let tuples: Vec<Vec<u64>> = single
        .iter()
        .map(|p| sorted_normalized(ray_directions(rays_of(p))[0]))
        .collect();
    let reach = tuples.iter().flatten().copied().max().unwrap_or(0).max(config.family_bound);
    let leads: Vec<&PairRecord> = groups
        .iter()
        .filter(|(set, _)| is_maximal(set))
        .map(|(_, members)| members[0])
        .collect();
    let reach_sets: Vec<BTreeSet<Vec<u64>>> = leads
        .par_iter()
        .map(|p| bounded_instances(&p.solution, reach, config.instance_budget))
        .collect::<Result<_, _>>()?;
    let sporadic_start = families.len();
    for (p, tuple) in single.iter().zip(&tuples) {
        if let Some(k) = reach_sets.iter().position(|s| s.contains(tuple)) {
            families[k].specializations.push(p.key);
            continue;
        }
        if let Some(f) = families[sporadic_start..]
            .iter_mut()
            .find(|f| &f.representative == tuple)
        {
            f.pairs.push(p.key);
            continue;
        }
        let rays = rays_of(p);
        families.push(Family {
            kind: FamilyKind::Sporadic,
            dimension: 1,
            representative: tuple.clone(),
            solution: rays.clone(),
            patterns: p.patterns.clone().expect("non-unique pairs carry patterns"),
            pairs: vec![p.key],
            specializations: Vec::new(),
        });
    }
    families.sort_by(|a, b| (a.kind, &a.representative).cmp(&(b.kind, &b.representative)));
    Ok(families)
}
