//! Cluster algebras of geometric type: exchange matrices and their
//! mutations, seeds whose cluster variables are stored as exact Laurent
//! polynomials in the initial cluster, exchange-graph enumeration,
//! finite-type classification and the Grassmannian model.

mod finite;
mod graph;
pub mod grassmannian;
mod laurent;
mod matrix;
mod seed;

pub use finite::{canonical_form, is_finite_type, is_finite_type_with_cap, FiniteTypeVerdict, DEFAULT_CLASS_CAP};
pub use graph::{
    cyclic_mutation_values, enumerate_exchange_graph, enumerate_from_seed, laurent_check, ExchangeCaps,
    ExchangeGraph, LaurentReport,
};
pub use grassmannian::{grassmannian_seed, verify_grassmannian, GrassmannianReport, GrassmannianSeed};
pub use laurent::LaurentPoly;
pub use matrix::{cartan_companion, is_skew_symmetrizable, mutate_matrix, ExchangeMatrix};
pub use seed::{default_names, mutate_seed, ones, Seed};
