//! The JSON-lines schema behind `--json`.
//!
//! Every line is one object with a `kind` field naming the variant below,
//! in snake case; the remaining fields are the variant's fields. Polynomials
//! are written in the text syntax accepted by `factor`, grid cells as
//! 1-based `[row, col]` pairs, and pairs of bijections by 1-based case
//! numbers.

use serde::{Deserialize, Serialize};

use semifactor::classifier::{FactorPattern, FamilyKind, PairKey, Verdict};
use semifactor::graph::Product;
use semifactor::GridShape;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    /// One complete factorization; `content` is the monomial factor.
    Factorization {
        polynomial: String,
        content: String,
        factors: Vec<String>,
    },
    FactorSummary {
        polynomial: String,
        factorizations: usize,
    },
    /// One row of a bijection table: `cells[k]` carries term `k + 1`.
    Bijection {
        shape: GridShape,
        case: usize,
        cells: Vec<(usize, usize)>,
    },
    Shape {
        shape: GridShape,
        symmetric: bool,
        bijections: usize,
    },
    /// A pair of bijections that is not formally equivalent.
    Pair {
        key: PairKey,
        verdict: Verdict,
        patterns: Option<(FactorPattern, FactorPattern)>,
        left_ratio: Option<(u64, u64)>,
    },
    Family {
        family: FamilyKind,
        dimension: usize,
        representative: Vec<u64>,
        patterns: (FactorPattern, FactorPattern),
        pairs: Vec<PairKey>,
        specializations: Vec<PairKey>,
    },
    /// A polynomial with several factorizations found by exhaustive search.
    ScanHit {
        t: usize,
        exponents: Vec<u64>,
        factorizations: usize,
    },
    ScanSummary {
        t: usize,
        max_exp: u64,
        hits: usize,
        matched: Option<usize>,
        unmatched: Vec<Vec<u64>>,
    },
    ClassifySummary {
        t: usize,
        unique: bool,
        inequivalent_pairs: usize,
        non_unique_pairs: usize,
        sporadic_families: usize,
        parametric_families: usize,
    },
    /// One factorization of a graph; factors are written over the
    /// dictionary variables `G1, G2, ...`.
    GraphFactorization {
        product: Product,
        index: usize,
        content: String,
        factors: Vec<String>,
    },
    /// A dictionary variable as a connected graph with 0-based vertices.
    GraphVariable {
        name: String,
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    GraphSummary {
        product: Product,
        factorizations: usize,
    },
    Check {
        name: String,
        passed: bool,
        detail: String,
    },
    VerifySummary {
        passed: usize,
        failed: usize,
    },
}
