//! Fiber enumeration: integer ranges and points of the fiber-selection conic.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::conics::{pell_base_solution, slopes, ConicQ, PellIter, SearchOutcome};
use crate::error::{Error, Result};
use crate::exactmath::rat::{int, isqrt_exact, rat_text};
use crate::exactmath::Rat;
use crate::families::FamilySpec;

/// Which coordinate of a conic point `(X, T)` was used as the fiber parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicOrdering {
    /// `t0 = T`
    T,
    /// `t0 = X`
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConicMethod {
    /// Composition with the fundamental unit when the conic is a Pell
    /// equation with an integral point, chord slopes otherwise.
    Auto,
    Pell,
    Chord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicOrigin {
    #[serde(with = "rat_text")]
    pub x: Rat,
    #[serde(with = "rat_text")]
    pub t: Rat,
    /// `None` when neither coordinate makes a bisection specialize.
    pub ordering: Option<ConicOrdering>,
}

/// A fiber to scan together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberSeed {
    pub t0: Rat,
    pub origin: Option<ConicOrigin>,
}

const BASE_SEARCH_BOUND: u64 = 200;
const PELL_DIGIT_BUDGET: usize = 40;

pub(crate) fn range_seeds(lo: i64, hi: i64) -> Vec<FiberSeed> {
    (lo..=hi).map(|t| FiberSeed { t0: int(t), origin: None }).collect()
}

/// `Some((D, N))` when `X^2 = A T^2 + B` is `X^2 - D T^2 = N` with `D >= 2`
/// a non-square integer.
fn pell_shape(c: &ConicQ) -> Option<(BigInt, BigInt)> {
    if !c.a.is_integer() || !c.b.is_integer() {
        return None;
    }
    let d = c.a.to_integer();
    if d < BigInt::from(2) || isqrt_exact(&d).is_some() {
        return None;
    }
    Some((d, c.b.to_integer()))
}

fn conic_points(c: &ConicQ, method: ConicMethod) -> Result<Box<dyn Iterator<Item = (Rat, Rat)>>> {
    let pell = match (method, pell_shape(c)) {
        (ConicMethod::Chord, _) => None,
        (_, Some((d, n))) => pell_base_solution(&d, &n, BASE_SEARCH_BOUND)?.map(|base| (d, base)),
        (ConicMethod::Pell, None) => {
            return Err(Error::Config(format!(
                "conic X^2 = {} T^2 + {} is not a Pell equation",
                c.a, c.b
            )))
        }
        (ConicMethod::Auto, None) => None,
    };
    if let Some((d, base)) = pell {
        let it = PellIter::new(&d, base, PELL_DIGIT_BUDGET)?;
        return Ok(Box::new(it.map(|s| (Rat::from_integer(s.x), Rat::from_integer(s.t)))));
    }
    if method == ConicMethod::Pell {
        return Err(Error::Config("no integral point on the Pell conic below the search bound".into()));
    }
    let base = match c.small_search(BASE_SEARCH_BOUND) {
        SearchOutcome::Found(x, t) => (x, t),
        SearchOutcome::Obstructed => {
            return Err(Error::Config(format!("conic X^2 = {} T^2 + {} has no real points", c.a, c.b)))
        }
        SearchOutcome::NotFoundBelowBound => {
            return Err(Error::Config(format!(
                "no rational point on X^2 = {} T^2 + {} below height {BASE_SEARCH_BOUND}",
                c.a, c.b
            )))
        }
    };
    let par = c.parametrize(base.clone())?;
    Ok(Box::new(std::iter::once(base).chain(slopes().filter_map(move |m| par.point_at(&m)))))
}

fn bisection_specializes(spec: &FamilySpec, t0: &Rat) -> bool {
    spec.claimed_bisections.iter().any(|b| !b.item.points_at(t0).is_empty())
}

/// The first `count` distinct fibers obtained from conic points, trying
/// `t0 = T` before `t0 = X`.
pub(crate) fn conic_seeds(spec: &FamilySpec, count: usize, method: ConicMethod) -> Result<Vec<FiberSeed>> {
    let Some(conic) = &spec.conic else {
        return Err(Error::Config(format!("family {} has no fiber-selection conic", spec.name)));
    };
    let mut out: Vec<FiberSeed> = Vec::new();
    let mut attempts = 0usize;
    let budget = count.saturating_mul(50).max(100);
    for (x, t) in conic_points(conic, method)? {
        if out.len() >= count || attempts >= budget {
            break;
        }
        attempts += 1;
        debug_assert!(conic.contains(&x, &t));
        let ordering = [(ConicOrdering::T, &t), (ConicOrdering::X, &x)]
            .into_iter()
            .find(|(_, v)| bisection_specializes(spec, v));
        let (t0, ordering) = match ordering {
            Some((o, v)) => (v.clone(), Some(o)),
            None => (t.clone(), None),
        };
        if out.iter().any(|s| s.t0 == t0) {
            continue;
        }
        out.push(FiberSeed {
            t0,
            origin: Some(ConicOrigin { x, t, ordering }),
        });
    }
    Ok(out)
}
