//! Torsion tests, canonical heights, and independence certificates on fibers.

pub mod canonical;
pub mod certificate;
pub mod interval;
pub mod search;
pub mod torsion;

pub use canonical::{canonical_height, height_pairing, pairing_in, HeightContext, HeightValue};
pub use certificate::{
    independence_certificate, independence_certificate_cached, independence_certificate_in, HeightCache,
    IndependenceCertificate, Verdict,
};
pub use interval::Interval;
pub use search::point_search;
pub use torsion::{is_torsion, torsion_bound, torsion_order, IntegralModel};
