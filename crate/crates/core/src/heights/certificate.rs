//! Independence certificates from interval Gram matrices.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::canonical::{combine_pairing, HeightContext, HeightValue};
use super::interval::Interval;
use super::torsion::is_torsion;
use crate::error::Result;
use crate::weierstrass::{CurveQ, PointQ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
}

/// `points` are the non-torsion inputs in canonical order and index `gram`;
/// `selected` lists the points whose Gram minor is certified positive.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub points: Vec<PointQ>,
    pub torsion: Vec<PointQ>,
    pub gram: Vec<Vec<HeightValue>>,
    pub selected: Vec<usize>,
    pub determinant: HeightValue,
    pub rank_lower_bound: usize,
    pub verdict: Verdict,
}

/// Total order used before any height work, so certificates do not depend on
/// the order points are supplied in: naive size of x, then x, then y.
pub fn canonical_cmp(p: &PointQ, q: &PointQ) -> Ordering {
    match (p, q) {
        (PointQ::Infinity, PointQ::Infinity) => Ordering::Equal,
        (PointQ::Infinity, _) => Ordering::Less,
        (_, PointQ::Infinity) => Ordering::Greater,
        (PointQ::Affine { x: x1, y: y1 }, PointQ::Affine { x: x2, y: y2 }) => {
            let size = |x: &crate::exactmath::Rat| x.numer().abs().max(x.denom().clone());
            size(x1)
                .cmp(&size(x2))
                .then_with(|| x1.cmp(x2))
                .then_with(|| y1.cmp(y2))
        }
    }
}

/// LDL^T of the principal submatrix on `idx`; returns the determinant
/// interval when every pivot is certified positive.
fn certified_minor(gram: &[Vec<Interval>], idx: &[usize]) -> Option<Interval> {
    let n = idx.len();
    let mut l = vec![vec![Interval::point(0.0); n]; n];
    let mut d: Vec<Interval> = Vec::with_capacity(n);
    let mut det = Interval::point(1.0);
    for k in 0..n {
        let mut dk = gram[idx[k]][idx[k]];
        for j in 0..k {
            dk = dk - l[k][j] * l[k][j] * d[j];
        }
        if !dk.is_positive() {
            return None;
        }
        for i in (k + 1)..n {
            let mut s = gram[idx[i]][idx[k]];
            for j in 0..k {
                s = s - l[i][j] * l[k][j] * d[j];
            }
            l[i][k] = s.checked_div(&dk)?;
        }
        det = det * dk;
        d.push(dk);
    }
    Some(det)
}

pub fn independence_certificate(c: &CurveQ, pts: &[PointQ], target_error: f64) -> Result<IndependenceCertificate> {
    independence_certificate_in(&HeightContext::new(c), pts, target_error)
}

pub fn independence_certificate_in(
    ctx: &HeightContext,
    pts: &[PointQ],
    target_error: f64,
) -> Result<IndependenceCertificate> {
    independence_certificate_cached(&mut HeightCache::new(ctx, target_error), pts)
}

/// Heights and torsion verdicts of points on one curve, memoized so that
/// repeated certificates over growing point sets only pay for new pairs.
#[derive(Debug)]
pub struct HeightCache<'a> {
    ctx: &'a HeightContext,
    target_error: f64,
    heights: HashMap<PointQ, HeightValue>,
    torsion: HashMap<PointQ, bool>,
}

impl<'a> HeightCache<'a> {
    pub fn new(ctx: &'a HeightContext, target_error: f64) -> HeightCache<'a> {
        HeightCache {
            ctx,
            target_error,
            heights: HashMap::new(),
            torsion: HashMap::new(),
        }
    }

    pub fn height(&mut self, p: &PointQ) -> Result<HeightValue> {
        if let Some(h) = self.heights.get(p) {
            return Ok(*h);
        }
        let h = self.ctx.height(p, self.target_error)?;
        self.heights.insert(p.clone(), h);
        Ok(h)
    }

    pub fn is_torsion(&mut self, p: &PointQ) -> Result<bool> {
        if let Some(&b) = self.torsion.get(p) {
            return Ok(b);
        }
        let b = is_torsion(self.ctx.curve(), p)?;
        self.torsion.insert(p.clone(), b);
        Ok(b)
    }
}

pub fn independence_certificate_cached(cache: &mut HeightCache<'_>, pts: &[PointQ]) -> Result<IndependenceCertificate> {
    let c = cache.ctx.curve().clone();
    let mut sorted: Vec<PointQ> = pts.to_vec();
    sorted.sort_by(canonical_cmp);
    sorted.dedup();
    let mut points = Vec::new();
    let mut torsion = Vec::new();
    for p in sorted {
        if cache.is_torsion(&p)? {
            torsion.push(p);
        } else {
            points.push(p);
        }
    }
    let n = points.len();
    let diag: Vec<HeightValue> = points.iter().map(|p| cache.height(p)).collect::<Result<_>>()?;
    let mut gram = vec![vec![HeightValue::exact_zero(); n]; n];
    for i in 0..n {
        gram[i][i] = diag[i];
        for j in (i + 1)..n {
            let sum = c.add(&points[i], &points[j])?;
            let hs = cache.height(&sum)?;
            let v = combine_pairing(&hs, &diag[i], &diag[j]);
            gram[i][j] = v;
            gram[j][i] = v;
        }
    }
    let g: Vec<Vec<Interval>> = gram.iter().map(|r| r.iter().map(HeightValue::interval).collect()).collect();

    let mut selected: Vec<usize> = Vec::new();
    let mut det = Interval::point(1.0);
    for k in 0..n {
        let mut trial = selected.clone();
        trial.push(k);
        match certified_minor(&g, &trial) {
            Some(d) => {
                selected = trial;
                det = d;
            }
            None => break,
        }
    }
    let mut rest: Vec<usize> = (selected.len()..n).collect();
    rest.sort_by(|&a, &b| diag[b].value.total_cmp(&diag[a].value).then(a.cmp(&b)));
    for k in rest {
        let mut trial = selected.clone();
        trial.push(k);
        if let Some(d) = certified_minor(&g, &trial) {
            selected = trial;
            det = d;
        }
    }
    let verdict = if selected.is_empty() && n > 0 {
        Verdict::Inconclusive
    } else {
        Verdict::Certified
    };
    Ok(IndependenceCertificate {
        rank_lower_bound: selected.len(),
        points,
        torsion,
        gram,
        selected,
        determinant: HeightValue::from_interval(det, false),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::int;

    fn pt(x: i64, y: i64) -> PointQ {
        PointQ::affine(int(x), int(y))
    }

    #[test]
    fn two_independent_points() {
        let c = CurveQ::from_ints(-6, 11, 58).unwrap();
        let cert = independence_certificate(&c, &[pt(3, 8), pt(1, 8)], 1e-3).unwrap();
        assert_eq!(cert.rank_lower_bound, 2);
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!(cert.determinant.interval().is_positive());
    }

    #[test]
    fn dependent_points_detected() {
        let c = CurveQ::from_ints(-3, 2, 1).unwrap();
        let cert = independence_certificate(&c, &[pt(2, 1), pt(0, 1)], 1e-3).unwrap();
        assert_eq!(cert.rank_lower_bound, 1);
    }

    #[test]
    fn torsion_only() {
        let c = CurveQ::from_ints(10, 9, 0).unwrap();
        let cert = independence_certificate(&c, &[pt(0, 0)], 1e-3).unwrap();
        assert_eq!(cert.rank_lower_bound, 0);
        assert_eq!(cert.torsion, vec![pt(0, 0)]);
    }

    #[test]
    fn reorder_invariant_and_json() {
        let c = CurveQ::from_ints(-6, 11, 58).unwrap();
        let a = independence_certificate(&c, &[pt(3, 8), pt(1, 8), pt(3, -8)], 1e-3).unwrap();
        let b = independence_certificate(&c, &[pt(3, -8), pt(1, 8), pt(3, 8)], 1e-3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rank_lower_bound, 2);
        let text = serde_json::to_string(&a).unwrap();
        let back: IndependenceCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back.rank_lower_bound, 2);
        assert_eq!(back.points, a.points);
    }
}
