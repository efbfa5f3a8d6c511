//! Exact arithmetic: rationals, polynomials over Q, rational functions and a
//! small linear solver.

pub mod linalg;
pub mod poly;
pub mod rat;
pub mod ratfn;

pub use poly::Poly;
pub use rat::Rat;
pub use ratfn::RatFn;
