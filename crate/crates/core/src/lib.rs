//! Factorization in the semiring `N[X_1, ..., X_m]` of polynomials with
//! nonnegative integer coefficients, and its application to disconnected
//! graphs under the Cartesian, strong and direct products.
//!
//! Modules build on each other bottom-up: [`poly`] holds the arithmetic,
//! [`gridorder`] enumerates term matchings, [`solver`] reconstructs factors
//! and solves the linear systems behind two competing factorizations,
//! [`factorizer`] lists every complete factorization, [`classifier`] searches
//! for all non-unique factorizations with a given term count, and [`graph`]
//! transports everything to graphs.

pub mod classifier;
pub mod factorizer;
pub mod graph;
pub mod gridorder;
pub mod poly;
pub mod solver;

pub use classifier::{classify, ClassificationReport, ClassifierConfig, ClassifyError, Verdict};
pub use factorizer::{all_factorizations, binary_splits, is_irreducible, FactorError, Factorization, Factorizer};
pub use graph::{Graph, GraphError, GraphSum, Product, VariableDictionary};
pub use gridorder::{Cell, GridBijection, GridShape};
pub use poly::{Exponent, ExponentVector, PolyError, SparsePoly};
