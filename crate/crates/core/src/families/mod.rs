//! Named surface families, each bundling a surface with its claimed
//! sections, bisections, fiber-selection conic, and checkable claims.
//!
//! Families implement [`Family`] and live in a name-keyed [`Registry`]; the
//! CLI picks one at runtime with `--family NAME --params k=v,...`.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::conics::ConicQ;
use crate::error::{Error, Result};
use crate::exactmath::rat::{int, parse_rat, rat_map_text, rat_text};
use crate::exactmath::{Poly, Rat};
use crate::weierstrass::{Bisection, SectionQt, SurfaceQt};

mod check;
mod classic;
mod formula;
mod lw;
mod sextic;

pub use check::{ansatz_checks, check_family, AnsatzCheck, CheckOutcome, CheckStatus, FamilyReport, SieveEntry};
pub use sextic::{d_ext_coefficients, DExtCoefficients};

/// Parameter values by symbol name.
pub type Params = BTreeMap<String, Rat>;

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    /// `None` marks a parameter the constructor derives when absent.
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

const fn param(name: &'static str, default: &'static str, doc: &'static str) -> ParamSpec {
    ParamSpec { name, default: Some(default), doc }
}

pub trait Family: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn params(&self) -> &'static [ParamSpec];
    /// Builds the family; `p` holds every parameter that has a default.
    fn construct(&self, p: &Params) -> Result<FamilySpec>;
}

/// A section or bisection with the label it carries in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeled<T> {
    pub label: String,
    #[serde(flatten)]
    pub item: T,
}

impl<T> Labeled<T> {
    pub fn new(label: &str, item: T) -> Labeled<T> {
        Labeled { label: label.to_string(), item }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    C4Equals {
        poly: Poly,
    },
    C6Equals {
        poly: Poly,
    },
    DiscriminantEquals {
        poly: Poly,
    },
    DiscriminantDegree {
        degree: usize,
    },
    SquarefreeDiscriminant,
    /// An additional section that must lie on the surface.
    SectionOnSurface {
        label: String,
        section: SectionQt,
    },
    /// Coefficients `(a2, a4, a6)` of the fiber at `t`.
    FiberEquals {
        #[serde(with = "rat_text")]
        t: Rat,
        #[serde(with = "rat_triple")]
        coeffs: [Rat; 3],
    },
    /// The surface coincides with another registered family.
    SurfaceEquals {
        family: String,
        #[serde(with = "rat_map_text")]
        params: Params,
    },
    /// The surface is the base change of another family under `t -> phi(t)`.
    BaseChangeOf {
        family: String,
        #[serde(with = "rat_map_text")]
        params: Params,
        phi: Poly,
    },
    /// `c4` and the discriminant do not change when `symbol` varies over
    /// `samples` distinct values, all other parameters fixed.
    ParameterIndependence {
        symbol: String,
        samples: u32,
    },
    /// The constant term of `x(2 S)` (reduced, monic denominator) for the
    /// section at `section`.
    DoubledXConstant {
        section: usize,
        #[serde(with = "rat_text")]
        expected: Rat,
    },
    /// A statement recorded for the report that no exact check covers.
    Unverifiable {
        statement: String,
    },
}

mod rat_triple {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactmath::rat::{parse_rat, rat_to_string};
    use crate::exactmath::Rat;

    pub fn serialize<S: Serializer>(v: &[Rat; 3], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rat_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rat; 3], D::Error> {
        let raw = <[String; 3]>::deserialize(d)?;
        let mut out = Vec::with_capacity(3);
        for s in &raw {
            out.push(parse_rat(s).map_err(serde::de::Error::custom)?);
        }
        Ok(out.try_into().expect("three entries"))
    }
}

/// A published rank for one fiber, kept for display next to certified bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRank {
    #[serde(with = "crate::exactmath::rat::rat_text")]
    pub t: Rat,
    pub rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: String,
    #[serde(with = "rat_map_text")]
    pub params: Params,
    pub surface: SurfaceQt,
    pub claimed_sections: Vec<Labeled<SectionQt>>,
    pub claimed_bisections: Vec<Labeled<Bisection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conic: Option<ConicQ>,
    #[serde(default)]
    pub claims: Vec<Claim>,
    /// Free-form remarks carried into reports.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reference_ranks: Vec<ReferenceRank>,
}

impl FamilySpec {
    fn new(name: &str, params: &Params, surface: SurfaceQt) -> FamilySpec {
        FamilySpec {
            name: name.to_string(),
            params: params.clone(),
            surface,
            claimed_sections: Vec::new(),
            claimed_bisections: Vec::new(),
            conic: None,
            claims: Vec::new(),
            notes: Vec::new(),
            reference_ranks: Vec::new(),
        }
    }

    fn section(mut self, label: &str, x: Poly, y: Poly) -> FamilySpec {
        self.claimed_sections.push(Labeled::new(label, SectionQt::from_polys(x, y)));
        self
    }

    /// Attaches `[x, c sqrt(d)]`; when `d` is a square in Q[t] the bisection
    /// is a section and is attached as one.
    fn bisection(mut self, label: &str, x: Poly, c: Poly, d: Poly) -> Result<FamilySpec> {
        use crate::exactmath::RatFn;
        match Bisection::new(RatFn::from_poly(x.clone()), RatFn::from_poly(c.clone()), d.clone()) {
            Ok(b) => self.claimed_bisections.push(Labeled::new(label, b)),
            Err(Error::SplitBisection) => {
                let root = d.sqrt_exact().ok_or(Error::SplitBisection)?;
                self.claimed_sections.push(Labeled::new(label, SectionQt::from_polys(x, &c * &root)));
                self.notes.push(format!("{label}: radicand {} is a square, attached as a section", d.display_in("t")));
            }
            Err(e) => return Err(e),
        }
        Ok(self)
    }

    fn conic(mut self, a: Rat, b: Rat) -> Result<FamilySpec> {
        self.conic = Some(ConicQ::new(a, b)?);
        Ok(self)
    }

    fn claim(mut self, c: Claim) -> FamilySpec {
        self.claims.push(c);
        self
    }

    fn note(mut self, text: &str) -> FamilySpec {
        self.notes.push(text.to_string());
        self
    }

    /// Records published ranks for consecutive integer fibers from `first`.
    fn reference_ranks(mut self, first: i64, ranks: &[u32]) -> FamilySpec {
        for (i, &rank) in ranks.iter().enumerate() {
            self.reference_ranks.push(ReferenceRank { t: int(first + i as i64), rank });
        }
        self
    }

    pub fn reference_rank(&self, t0: &Rat) -> Option<u32> {
        self.reference_ranks.iter().find(|r| &r.t == t0).map(|r| r.rank)
    }
}

/// A family defined by a plain constructor function.
pub(crate) struct FnFamily {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub build: fn(&Params) -> Result<FamilySpec>,
}

impl Family for FnFamily {
    fn name(&self) -> &'static str {
        self.name
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn params(&self) -> &'static [ParamSpec] {
        self.params
    }

    fn construct(&self, p: &Params) -> Result<FamilySpec> {
        (self.build)(p)
    }
}

pub struct Registry {
    families: Vec<Box<dyn Family>>,
}

impl Registry {
    pub fn get(&self, name: &str) -> Result<&dyn Family> {
        self.families
            .iter()
            .find(|f| f.name() == name)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Family> {
        self.families.iter().map(|f| f.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    /// Fills defaults, rejects unknown parameter names, and constructs.
    pub fn build(&self, name: &str, overrides: &Params) -> Result<FamilySpec> {
        let fam = self.get(name)?;
        let specs = fam.params();
        if let Some(bad) = overrides.keys().find(|k| !specs.iter().any(|s| s.name == k.as_str())) {
            let known: Vec<_> = specs.iter().map(|s| s.name).collect();
            return Err(Error::InvalidParams(format!(
                "family {name} has no parameter {bad:?} (known: {known:?})"
            )));
        }
        let mut p = Params::new();
        for s in specs {
            if let Some(d) = s.default {
                p.insert(s.name.to_string(), parse_rat(d).expect("default parses"));
            }
        }
        p.extend(overrides.iter().map(|(k, v)| (k.clone(), v.clone())));
        fam.construct(&p)
    }
}

static REGISTRY: LazyLock<Registry> = LazyLock::new(|| {
    let mut families: Vec<Box<dyn Family>> = Vec::new();
    classic::register(&mut families);
    sextic::register(&mut families);
    lw::register(&mut families);
    Registry { families }
});

pub fn registry() -> &'static Registry {
    &REGISTRY
}

/// Builds a registered family with the given parameter overrides.
pub fn build(name: &str, overrides: &Params) -> Result<FamilySpec> {
    registry().build(name, overrides)
}

/// Parses `k=v,k=v` (values as `p` or `p/q`).
pub fn parse_params(text: &str) -> Result<Params> {
    let mut out = Params::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got {item:?}")))?;
        out.insert(k.trim().to_string(), parse_rat(v)?);
    }
    Ok(out)
}

/// Shorthand used by the constructors: `p` is the filled parameter map.
fn get(p: &Params, name: &str) -> Rat {
    p.get(name).cloned().unwrap_or_else(|| panic!("parameter {name} has a default"))
}

#[cfg(test)]
mod tests {
    use super::*;


    #[test]
    fn params_parse() {
        let p = parse_params("s=4, w=-1,u=-5/12").unwrap();
        assert_eq!(p["u"], crate::exactmath::rat::frac(-5, 12));
        assert!(parse_params("s").is_err());
        assert!(parse_params("s=x").is_err());
    }

    #[test]
    fn registry_lookup() {
        let names = registry().names();
        for n in ["walsh", "D", "D.printed", "D_ext", "L", "lw", "H", "jump2"] {
            assert!(names.contains(&n), "{n}");
        }
        assert!(matches!(build("nope", &Params::new()), Err(Error::UnknownFamily(_))));
        let mut p = Params::new();
        p.insert("zz".into(), int(1));
        assert!(matches!(build("D", &p), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn every_family_builds_with_defaults() {
        for f in registry().iter() {
            let spec = build(f.name(), &Params::new()).unwrap_or_else(|e| panic!("{}: {e}", f.name()));
            assert_eq!(spec.name, f.name());
        }
    }

    #[test]
    fn spec_json_round_trip() {
        for name in ["D", "jump2", "H"] {
            let spec = build(name, &Params::new()).unwrap();
            let text = serde_json::to_string(&spec).unwrap();
            let back: FamilySpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec);
        }
    }
}
