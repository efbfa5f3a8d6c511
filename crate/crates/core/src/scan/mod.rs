//! Fiber scans.
//!
//! A scan builds one family, enumerates fibers, specializes every claimed
//! section and every bisection whose radicand is a square at `t0`, and
//! certifies a rank lower bound from the Gram matrix of those points. An
//! optional naive search then offers further points; each is kept only if it
//! raises the certified bound. Fibers are independent, so they run on a rayon
//! pool and are merged back in `t0` order.

mod report;
mod source;

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::emit_report;
pub use source::{ConicMethod, ConicOrdering, ConicOrigin, FiberSeed};

use crate::error::{Error, Result};
use crate::exactmath::rat::{rat_map_text, rat_text, rat_vec_text};
use crate::exactmath::Rat;
use crate::families::{self, FamilySpec, Params};
use crate::heights::{independence_certificate_cached, point_search, HeightCache, HeightContext, IndependenceCertificate};
use crate::weierstrass::{CurveQ, PointQ};

/// Environment variable overriding [`ScanConfig::parallelism`].
pub const THREADS_ENV: &str = "RANKSURF_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberSource {
    /// Integer fibers `lo..=hi`.
    Range { lo: i64, hi: i64 },
    /// The first `count` fibers read off points of the family's conic.
    Conic { count: usize, method: ConicMethod },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub family: String,
    #[serde(with = "rat_map_text", default)]
    pub params: Params,
    pub source: FiberSource,
    pub target_error: f64,
    /// Naive search bound; `0` disables the search.
    pub search_height: u64,
    /// Worker threads; `0` lets rayon decide.
    pub parallelism: usize,
    pub format: OutputFormat,
}

impl ScanConfig {
    pub fn new(family: &str, params: Params, source: FiberSource) -> ScanConfig {
        ScanConfig {
            family: family.to_string(),
            params,
            source,
            target_error: 1e-3,
            search_height: 0,
            parallelism: 1,
            format: OutputFormat::Text,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_error > 0.0 && self.target_error.is_finite()) {
            return Err(Error::Config(format!(
                "target error must be positive and finite, got {}",
                self.target_error
            )));
        }
        match self.source {
            FiberSource::Range { lo, hi } if lo > hi => Err(Error::Config(format!("empty range {lo}..{hi}"))),
            FiberSource::Conic { count: 0, .. } => Err(Error::Config("conic count must be positive".into())),
            _ => Ok(()),
        }
    }

    /// Worker count after applying [`THREADS_ENV`].
    pub fn threads(&self) -> Result<usize> {
        match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))),
            Err(_) => Ok(self.parallelism),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPoint {
    /// Section or bisection label, `label-` for the negated bisection point,
    /// or `search`.
    pub label: String,
    pub point: PointQ,
    pub torsion: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberRow {
    #[serde(with = "rat_text")]
    pub t0: Rat,
    pub curve: CurveQ,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conic: Option<ConicOrigin>,
    pub points: Vec<FiberPoint>,
    pub certificate: IndependenceCertificate,
    /// Affine points returned by the naive search (one per `+-P`).
    pub searched_points: usize,
    /// Bound from the specialized claims alone.
    pub claimed_bound: usize,
    pub rank_lower_bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_rank: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub family: String,
    #[serde(with = "rat_map_text")]
    pub params: Params,
    pub rows: Vec<FiberRow>,
    #[serde(with = "rat_vec_text")]
    pub singular: Vec<Rat>,
    /// One line per skipped item, in fiber order.
    #[serde(default)]
    pub log: Vec<String>,
}

impl ScanReport {
    /// A report with no fibers, e.g. for header-only output.
    pub fn empty(family: &str, params: Params) -> ScanReport {
        ScanReport {
            family: family.to_string(),
            params,
            rows: Vec::new(),
            singular: Vec::new(),
            log: Vec::new(),
        }
    }
}

enum FiberOutcome {
    Row(Box<FiberRow>, Vec<String>),
    Singular,
}

pub fn scan(cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let spec = families::build(&cfg.family, &cfg.params)?;
    scan_spec(&spec, cfg)
}

/// Scans an already constructed family; `cfg.family` and `cfg.params` are
/// not consulted.
pub fn scan_spec(spec: &FamilySpec, cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let seeds = match cfg.source {
        FiberSource::Range { lo, hi } => source::range_seeds(lo, hi),
        FiberSource::Conic { count, method } => source::conic_seeds(spec, count, method)?,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads()?)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let outcomes: Vec<Result<FiberOutcome>> =
        pool.install(|| seeds.par_iter().map(|s| scan_fiber(spec, s, cfg)).collect());

    let mut report = ScanReport::empty(&spec.name, spec.params.clone());
    let mut keyed: Vec<(Rat, FiberOutcome)> = Vec::with_capacity(outcomes.len());
    for (seed, o) in seeds.iter().zip(outcomes) {
        keyed.push((seed.t0.clone(), o?));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (t0, o) in keyed {
        match o {
            FiberOutcome::Row(row, log) => {
                report.log.extend(log);
                report.rows.push(*row);
            }
            FiberOutcome::Singular => {
                report.log.push(format!("t = {t0}: singular fiber skipped"));
                report.singular.push(t0);
            }
        }
    }
    Ok(report)
}

fn scan_fiber(spec: &FamilySpec, seed: &FiberSeed, cfg: &ScanConfig) -> Result<FiberOutcome> {
    let t0 = &seed.t0;
    let curve = match spec.surface.specialize(t0) {
        Ok(c) => c,
        Err(Error::SingularFiber(_)) => return Ok(FiberOutcome::Singular),
        Err(e) => return Err(e),
    };
    let mut log = Vec::new();
    let mut labeled: Vec<(String, PointQ)> = Vec::new();
    for s in &spec.claimed_sections {
        labeled.push((s.label.clone(), s.item.at(t0)));
    }
    for b in &spec.claimed_bisections {
        for (i, p) in b.item.points_at(t0).into_iter().enumerate() {
            let label = if i == 0 { b.label.clone() } else { format!("{}-", b.label) };
            labeled.push((label, p));
        }
    }
    labeled.retain(|(label, p)| {
        let ok = curve.contains(p);
        if !ok {
            log.push(format!("t = {t0}: {label} = {p} is not on the fiber; dropped"));
        }
        ok
    });

    let ctx = HeightContext::new(&curve);
    let mut cache = HeightCache::new(&ctx, cfg.target_error);
    let mut points = Vec::with_capacity(labeled.len());
    for (label, p) in labeled {
        let torsion = cache.is_torsion(&p)?;
        points.push(FiberPoint { label, point: p, torsion });
    }
    let mut kept: Vec<PointQ> = points.iter().map(|p| p.point.clone()).collect();
    let mut cert = independence_certificate_cached(&mut cache, &kept)?;
    let claimed_bound = cert.rank_lower_bound;

    let found = if cfg.search_height > 0 {
        point_search(&curve, cfg.search_height)
    } else {
        Vec::new()
    };
    let mut extra_torsion = Vec::new();
    for p in &found {
        let neg = curve.neg(p);
        if kept.iter().any(|q| q == p || q == &neg) {
            continue;
        }
        if cache.is_torsion(p)? {
            extra_torsion.push(p.clone());
            continue;
        }
        let mut trial = kept.clone();
        trial.push(p.clone());
        let c = independence_certificate_cached(&mut cache, &trial)?;
        if c.rank_lower_bound > cert.rank_lower_bound {
            kept = trial;
            cert = c;
            points.push(FiberPoint {
                label: "search".into(),
                point: p.clone(),
                torsion: false,
            });
        }
    }
    if !extra_torsion.is_empty() {
        for p in &extra_torsion {
            points.push(FiberPoint {
                label: "search".into(),
                point: p.clone(),
                torsion: true,
            });
        }
        kept.extend(extra_torsion);
        cert = independence_certificate_cached(&mut cache, &kept)?;
    }

    Ok(FiberOutcome::Row(
        Box::new(FiberRow {
            t0: t0.clone(),
            curve,
            conic: seed.origin.clone(),
            points,
            rank_lower_bound: cert.rank_lower_bound,
            certificate: cert,
            searched_points: found.len(),
            claimed_bound,
            paper_rank: spec.reference_rank(t0),
        }),
        log,
    ))
}
