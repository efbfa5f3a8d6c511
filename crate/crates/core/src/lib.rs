//! Exact tools for rational elliptic surfaces `y^2 = x^3 + a2(t) x^2 + a4(t) x + a6(t)`:
//! symbolic verification of sections and bisections, Weierstrass invariants,
//! specialization to fibers, canonical heights with rigorous error bounds,
//! Pell/conic fiber selection, and fiber scans reporting certified rank lower
//! bounds.

pub mod conics;
pub mod constraints;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod heights;
pub mod scan;
pub mod weierstrass;

pub use error::{Error, Result};
pub use exactmath::{Poly, Rat, RatFn};
