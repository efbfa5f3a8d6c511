//! Short Weierstrass surfaces over Q[t], their fibers, and sections.

pub mod curve;
pub mod section;
pub mod sieve;
pub mod surface;

pub use curve::{CurveQ, PointQ};
pub use section::{
    add_sections, bisection_on_surface, double_section, section_on_surface, specialize_section,
    BaseChanged, Bisection, SectionQt, VerificationVerdict,
};
pub use sieve::{nontorsion_sieve, ExceptionalSet};
pub use surface::{invariants_of, Invariants, SurfaceQt};
