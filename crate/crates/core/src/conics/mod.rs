//! Fiber-selection conics and Pell equations.

pub mod conic;
pub mod pell;

pub use conic::{slopes, ConicParametrization, ConicQ, SearchOutcome};
pub use pell::{pell_base_solution, pell_fundamental, pell_next, PellIter, PellSolution};
