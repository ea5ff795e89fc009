//! Inputs shared by the benchmarks.

use semifactor::graph::{poly_to_graph, FactorLimits, GraphSum, Product, VariableDictionary};
use semifactor::poly::{parse, parse_with_vars};
use semifactor::{Graph, SparsePoly};

/// The polynomials timed by the factorization benchmarks, each given as a
/// product of factors over two variables at most.
pub fn polynomials() -> Vec<(&'static str, SparsePoly)> {
    let cases: [(&str, usize, &[&str]); 4] = [
        ("six-term", 1, &["1+X+X^2", "1+X^3"]),
        ("ten-term", 1, &["1+X", "1+X^4+X^6+X^8+X^12"]),
        ("sixteen-term", 1, &["1+X^3+X^5+X^6", "1+X+X^2+X^4"]),
        ("bivariate", 2, &["1+X1", "1+X2^2", "1+X1*X2+X2^3"]),
    ];
    cases
        .into_iter()
        .map(|(name, vars, factors)| {
            let p = factors
                .iter()
                .map(|f| parse_with_vars(f, vars).expect("benchmark factor"))
                .fold(SparsePoly::one(vars), |acc, f| acc.multiply(&f).expect("small exponents"));
            (name, p)
        })
        .collect()
}

/// `1 + X + ... + X^5` evaluated at `K_2` (or `K_2^*` for the direct
/// product).
pub fn six_term_graph(product: Product) -> GraphSum {
    let x = match product {
        Product::Direct => Graph::complete(2).with_all_loops(),
        _ => Graph::complete(2),
    };
    let dict = VariableDictionary::from_graphs(product, &[x], &FactorLimits::default()).expect("irreducible");
    poly_to_graph(&parse("1+X+X^2+X^3+X^4+X^5").expect("valid"), &dict).expect("within caps")
}
