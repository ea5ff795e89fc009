//! Checks of the classical identities with non-unique factorization.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::factorizer::{is_irreducible, Factorizer};
use crate::poly::{format, parse, SparsePoly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownCase {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn poly(s: &str) -> SparsePoly {
    parse(s).expect("built-in identity parses")
}

fn mul(a: &str, b: &str) -> SparsePoly {
    poly(a).multiply(&poly(b)).expect("small exponents")
}

/// Exponents of the first two-parameter family at `(a, b)`. Both products
/// end in `X^(a+5b)`.
fn family_one(a: u64, b: u64) -> Vec<u64> {
    sorted(vec![0, a, b, a + b, a + 2 * b, 3 * b, a + 3 * b, 4 * b, a + 4 * b, a + 5 * b])
}

fn family_two(a: u64, b: u64) -> Vec<u64> {
    sorted(vec![0, a, b, a + b, 2 * b, 3 * b, a + 3 * b, 4 * b, a + 4 * b, 5 * b])
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

fn factor_texts(fz: &mut Factorizer, p: &SparsePoly) -> BTreeSet<Vec<String>> {
    match fz.all_factorizations(p) {
        Ok(fs) => fs.iter().map(|f| f.factors.iter().map(format).collect()).collect(),
        Err(_) => BTreeSet::new(),
    }
}

struct Identity {
    name: &'static str,
    left: [&'static str; 2],
    right: [&'static str; 2],
    expansion: Option<&'static str>,
}

const IDENTITIES: [Identity; 5] = [
    Identity {
        name: "six-term identity",
        left: ["1+X+X^2", "1+X^3"],
        right: ["1+X^2+X^4", "1+X"],
        expansion: Some("1+X+X^2+X^3+X^4+X^5"),
    },
    Identity {
        name: "ten-term identity 1",
        left: ["1+X", "1+X^2+X^4+X^6+X^8"],
        right: ["1+X^5", "1+X+X^2+X^3+X^4"],
        expansion: Some("1+X+X^2+X^3+X^4+X^5+X^6+X^7+X^8+X^9"),
    },
    Identity {
        name: "ten-term identity 2",
        left: ["1+X", "1+X^4+X^6+X^8+X^12"],
        right: ["1+X^5", "1+X+X^4+X^7+X^8"],
        expansion: Some("1+X+X^4+X^5+X^6+X^7+X^8+X^9+X^12+X^13"),
    },
    Identity {
        name: "ten-term identity 3",
        left: ["1+X^3", "1+X^2+X^4+X^6+X^8"],
        right: ["1+X^5", "1+X^2+X^3+X^4+X^6"],
        expansion: Some("1+X^2+X^3+X^4+X^5+X^6+X^7+X^8+X^9+X^11"),
    },
    Identity {
        name: "twelve-term identity with coefficients",
        left: ["2+X+X^3", "2+X"],
        right: ["1+X", "4+X^2+X^3"],
        expansion: None,
    },
];

fn check_identity(fz: &mut Factorizer, id: &Identity) -> KnownCase {
    let lhs = mul(id.left[0], id.left[1]);
    let rhs = mul(id.right[0], id.right[1]);
    let mut problems = Vec::new();
    if lhs != rhs {
        problems.push(format!("sides differ: {} vs {}", format(&lhs), format(&rhs)));
    }
    if let Some(e) = id.expansion {
        if lhs != poly(e).normalize() {
            problems.push(format!("expansion is {}", format(&lhs)));
        }
    }
    for f in id.left.iter().chain(&id.right) {
        if is_irreducible(&poly(f)) != Ok(true) {
            problems.push(format!("{f} is reducible"));
        }
    }
    let expected: BTreeSet<Vec<String>> = [id.left, id.right]
        .iter()
        .map(|side| {
            let mut v: Vec<SparsePoly> = side.iter().map(|s| poly(s)).collect();
            v.sort_by_cached_key(|p| (p.term_count(), format(p)));
            v.iter().map(format).collect()
        })
        .collect();
    let found = factor_texts(fz, &lhs);
    if found != expected {
        problems.push(format!("factorizations found: {found:?}"));
    }
    KnownCase {
        name: id.name.to_string(),
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} has exactly two factorizations", format(&lhs))
        } else {
            problems.join("; ")
        },
    }
}

fn check_family(fz: &mut Factorizer, name: &str, which: usize, a: u64, b: u64) -> KnownCase {
    let (left, right) = if which == 1 {
        (
            vec![0, a, b, a + b, a + 2 * b],
            vec![0, a, a + 2 * b, 3 * b, a + 4 * b],
        )
    } else {
        (vec![0, a, b, a + b, 2 * b], vec![0, a, 2 * b, a + 3 * b, 4 * b])
    };
    let lhs = SparsePoly::univariate([0, 3 * b]).multiply(&SparsePoly::univariate(left)).expect("small");
    let rhs = SparsePoly::univariate([0, b]).multiply(&SparsePoly::univariate(right)).expect("small");
    let expansion = if which == 1 { family_one(a, b) } else { family_two(a, b) };
    let mut problems = Vec::new();
    if lhs != rhs || lhs.exponents() != Some(expansion) {
        problems.push("expansion mismatch".to_string());
    }
    let count = fz.all_factorizations(&lhs).map(|f| f.len()).unwrap_or(0);
    if count != 2 {
        problems.push(format!("{count} factorizations"));
    }
    // The reciprocal lies in one of the two families again.
    let rev = lhs.reciprocal().and_then(|r| r.exponents()).unwrap_or_default();
    let deg = rev.last().copied().unwrap_or(0);
    let closed = (0..=deg).any(|a2| (1..=deg).any(|b2| family_one(a2, b2) == rev || family_two(a2, b2) == rev));
    if !closed {
        problems.push("reciprocal leaves both families".to_string());
    }
    KnownCase {
        name: format!("{name} at a={a}, b={b}"),
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} has exactly two factorizations", format(&lhs))
        } else {
            problems.join("; ")
        },
    }
}

/// Runs every built-in check; failures are reported, never raised.
pub fn verify_known_cases() -> Vec<KnownCase> {
    let mut fz = Factorizer::default();
    let mut out: Vec<KnownCase> = IDENTITIES.iter().map(|id| check_identity(&mut fz, id)).collect();
    for (a, b) in [(1, 3), (2, 5)] {
        out.push(check_family(&mut fz, "first two-parameter family", 1, a, b));
        out.push(check_family(&mut fz, "second two-parameter family", 2, a, b));
    }

    let palindromes = IDENTITIES[1..4]
        .iter()
        .all(|id| id.expansion.map(poly).map(|p| p.reciprocal() == Some(p.normalize())) == Some(true));
    out.push(KnownCase {
        name: "sporadic ten-term products are self-reciprocal".to_string(),
        passed: palindromes,
        detail: String::new(),
    });

    let lhs = mul("1+X^3+X^5+X^6", "1+X+X^2+X^4");
    let rhs = mul("1+X", "1+X^2").multiply(&poly("1+2*X^4+X^7")).expect("small");
    let lengths: BTreeSet<usize> = fz
        .all_factorizations(&lhs)
        .map(|fs| fs.iter().map(|f| f.len()).collect())
        .unwrap_or_default();
    out.push(KnownCase {
        name: "sixteen-term identity with lengths 2 and 3".to_string(),
        passed: lhs == rhs && lengths == [2, 3].into_iter().collect(),
        detail: format!("factorization lengths {lengths:?}"),
    });
    out
}
