//! Problems as conditions over universes of expressions, the ways of
//! resolving them, and fuel-bounded Turing machinery to test the claims.

pub mod expr;
pub mod machine;
pub mod problem;
pub mod resolution;
pub mod resolver;
pub mod suites;
pub mod sweep;
pub mod topology;
