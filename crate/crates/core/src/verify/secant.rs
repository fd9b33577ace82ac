//! Secant lines through an external point, counted over F_q.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{inv_mod, mul_mod, rational_mod};
use crate::exact::matrix::rank;
use crate::exact::poly::compile_all;
use crate::exact::sampling::stream_rng;
use crate::exact::{Matrix, PrimeField, QuadraticExtension};
use crate::varieties::ParamVariety;

/// Default cap on the number of chart points q^n enumerated per variety.
pub const DEFAULT_CHART_BUDGET: u64 = 200_000;

/// Retries per trial when the sampled point lands on the variety.
const PLACEMENT_RETRIES: usize = 20;

/// The F_q-points of X reachable from the chart, normalized and deduplicated,
/// plus (for curves) the F_q-lines spanned by conjugate pairs over F_{q²}.
#[derive(Clone, Debug)]
pub struct ChartImages {
    field: PrimeField,
    ambient: usize,
    points: Vec<Vec<u64>>,
    conjugate_lines: Vec<(Vec<u64>, Vec<u64>)>,
}

/// q^n, if within the budget.
pub fn chart_size(n: usize, q: u64, budget: u64) -> Result<u64> {
    let needed = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget: budget as u128 });
    }
    Ok(needed as u64)
}

/// Chart point with index `idx` in base-q digits, lowest digit first.
pub(crate) fn chart_point(mut idx: u64, n: usize, q: u64) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = idx % q;
            idx /= q;
            d
        })
        .collect()
}

impl ChartImages {
    pub fn new(x: &ParamVariety, q: u64, budget: u64) -> Result<Self> {
        let field = PrimeField::new(q)?;
        let n = x.dim();
        let total = chart_size(n, q, budget)?;
        let comps = compile_all(&field, x.components()).ok_or(Error::BadReduction(q))?;
        let mut points: Vec<Vec<u64>> = (0..total)
            .into_par_iter()
            .filter_map(|i| {
                let a = chart_point(i, n, q);
                let mut v: Vec<u64> = comps.iter().map(|c| c.eval(&a)).collect();
                field.normalize(&mut v).then_some(v)
            })
            .collect();
        let mut conjugate_lines = Vec::new();
        if n == 1 {
            if let Some(inf) = point_at_infinity(x, &field) {
                points.push(inf);
            }
            conjugate_lines = conjugate_pair_lines(x, q)?;
        }
        points.sort_unstable();
        points.dedup();
        Ok(ChartImages { field, ambient: x.ambient_dim() + 1, points, conjugate_lines })
    }

    pub fn q(&self) -> u64 {
        self.field.modulus()
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn conjugate_lines(&self) -> usize {
        self.conjugate_lines.len()
    }

    /// Number of distinct lines through p containing two distinct points of
    /// X(F_q), or spanned by a conjugate pair.
    pub fn count_through(&self, p: &[u64]) -> Result<usize> {
        if p.len() != self.ambient {
            return Err(Error::LengthMismatch { expected: self.ambient, got: p.len() });
        }
        let proj = Projection::new(&self.field, p).ok_or_else(|| Error::Invalid("zero point".into()))?;
        let mut buckets: HashMap<Vec<u64>, u32> = HashMap::with_capacity(self.points.len());
        for v in &self.points {
            let key = proj.apply(v).ok_or(Error::PointOnVariety)?;
            *buckets.entry(key).or_insert(0) += 1;
        }
        // p lies on the line ⟨re, im⟩ iff both project to the same point
        for (re, im) in &self.conjugate_lines {
            let key = match (proj.apply(re), proj.apply(im)) {
                (Some(a), Some(b)) if a == b => a,
                (Some(a), None) | (None, Some(a)) => a,
                _ => continue,
            };
            *buckets.entry(key).or_insert(0) += 2;
        }
        Ok(buckets.values().filter(|&&c| c >= 2).count())
    }

    #[cfg(test)]
    fn in_span(&self, p: &[u64], a: &[u64], b: &[u64]) -> bool {
        let m = Matrix::from_rows(self.ambient, vec![p.to_vec(), a.to_vec(), b.to_vec()]);
        rank(&self.field, &m) == 2
    }
}

/// Projection from p to P^{N−1}: subtract the multiple of p that clears the
/// first nonzero coordinate of p, drop that coordinate, normalize.
struct Projection<'a> {
    field: &'a PrimeField,
    p: &'a [u64],
    pivot: usize,
    pivot_inv: u64,
}

impl<'a> Projection<'a> {
    fn new(field: &'a PrimeField, p: &'a [u64]) -> Option<Self> {
        let pivot = p.iter().position(|&c| c != 0)?;
        let pivot_inv = inv_mod(p[pivot], field.modulus())?;
        Some(Projection { field, p, pivot, pivot_inv })
    }

    fn apply(&self, v: &[u64]) -> Option<Vec<u64>> {
        let q = self.field.modulus();
        let s = mul_mod(v[self.pivot], self.pivot_inv, q);
        let mut out: Vec<u64> = v
            .iter()
            .zip(self.p)
            .enumerate()
            .filter(|&(i, _)| i != self.pivot)
            .map(|(_, (&a, &b))| (a + q - mul_mod(s, b, q)) % q)
            .collect();
        self.field.normalize(&mut out).then_some(out)
    }
}

/// Leading coefficients of a curve parametrization: the image of t = ∞.
fn point_at_infinity(x: &ParamVariety, field: &PrimeField) -> Option<Vec<u64>> {
    let d = x.components().iter().filter_map(|c| c.total_degree()).max()?;
    let mut v: Vec<u64> = x
        .components()
        .iter()
        .map(|c| c.homogeneous_part(d).terms().map(|(_, r)| rational_mod(r, field.modulus())).sum::<Option<u64>>().map(|s| s % field.modulus()))
        .collect::<Option<Vec<_>>>()?;
    field.normalize(&mut v).then_some(v)
}

/// For each conjugate pair {α, ᾱ} ⊂ F_{q²} \ F_q, the F_q-basis (Re, Im) of
/// the line through P(α) and P(ᾱ), when these are distinct points.
fn conjugate_pair_lines(x: &ParamVariety, q: u64) -> Result<Vec<(Vec<u64>, Vec<u64>)>> {
    if q == 2 {
        return Ok(Vec::new());
    }
    let ext = QuadraticExtension::new(q)?;
    let base = ext.base();
    let comps = compile_all(&ext, x.components()).ok_or(Error::BadReduction(q))?;
    let amb = x.ambient_dim() + 1;
    let lines = (0..q)
        .into_par_iter()
        .flat_map_iter(|a| {
            let comps = &comps;
            (1..=(q - 1) / 2).filter_map(move |s| {
                let v: Vec<(u64, u64)> = comps.iter().map(|c| c.eval(&[(a, s)])).collect();
                let re: Vec<u64> = v.iter().map(|e| e.0).collect();
                let im: Vec<u64> = v.iter().map(|e| e.1).collect();
                let m = Matrix::from_rows(amb, vec![re.clone(), im.clone()]);
                (rank(&base, &m) == 2).then_some((re, im))
            })
        })
        .collect();
    Ok(lines)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantSample {
    pub p: Vec<u64>,
    pub count: usize,
    /// p was placed on the secant through two known points of X.
    pub on_rational_secant: bool,
}

/// Brute-force count of secant lines through p, enumerating the full chart.
pub fn secant_count_through(x: &ParamVariety, p: &[u64], q: u64, budget: u64) -> Result<usize> {
    ChartImages::new(x, q, budget)?.count_through(p)
}

/// Place p on the secant through two random distinct points of X(F_q).
pub fn sample_on_secant<R: Rng>(images: &ChartImages, r: &mut R) -> Result<SecantSample> {
    let pts = images.points();
    if pts.len() < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: pts.len() });
    }
    let q = images.q();
    for _ in 0..PLACEMENT_RETRIES {
        let i = r.gen_range(0..pts.len());
        let mut j = r.gen_range(0..pts.len() - 1);
        if j >= i {
            j += 1;
        }
        let lambda = r.gen_range(1..q);
        let p: Vec<u64> = pts[i].iter().zip(&pts[j]).map(|(&a, &b)| (a + mul_mod(lambda, b, q)) % q).collect();
        match images.count_through(&p) {
            Ok(count) => return Ok(SecantSample { p, count, on_rational_secant: true }),
            Err(Error::PointOnVariety) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotGeneral("every sampled secant point lay on the variety".into()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OadpStatistic {
    pub q: u64,
    pub trials: usize,
    pub chart_points: usize,
    /// Secant-line count through p ↦ number of trials.
    pub histogram: BTreeMap<usize, usize>,
    pub multi_secant_fraction: f64,
}

/// Secant-line counts through points placed on random rational secants, one
/// RNG stream per trial.
pub fn oadp_statistic(x: &ParamVariety, q: u64, trials: usize, seed: u64, budget: u64) -> Result<OadpStatistic> {
    let images = ChartImages::new(x, q, budget)?;
    let samples: Vec<SecantSample> =
        (0..trials).into_par_iter().map(|t| sample_on_secant(&images, &mut stream_rng(seed, t as u64))).collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    for s in &samples {
        *histogram.entry(s.count).or_insert(0) += 1;
    }
    let multi = samples.iter().filter(|s| s.count >= 2).count();
    let multi_secant_fraction = if trials == 0 { 0.0 } else { multi as f64 / trials as f64 };
    Ok(OadpStatistic { q, trials, chart_points: images.points().len(), histogram, multi_secant_fraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::exact::sampling::rng;
    use crate::varieties::{quartic_curve, twisted_cubic_curve};

    /// Independent oracle: all unordered pairs of distinct points, lines
    /// through p deduplicated by their reduced row-echelon form.
    fn pair_oracle(images: &ChartImages, p: &[u64]) -> usize {
        let f = &images.field;
        let pts = images.points();
        let mut lines = std::collections::HashSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if images.in_span(p, &pts[i], &pts[j]) {
                    lines.insert(line_signature(f, images.ambient, &pts[i], &pts[j]));
                }
            }
        }
        for (re, im) in &images.conjugate_lines {
            if images.in_span(p, re, im) {
                lines.insert(line_signature(f, images.ambient, re, im));
            }
        }
        lines.len()
    }

    fn line_signature(f: &PrimeField, cols: usize, a: &[u64], b: &[u64]) -> Vec<Vec<u64>> {
        let mut m = Matrix::from_rows(cols, vec![a.to_vec(), b.to_vec()]);
        crate::exact::matrix::gauss_jordan(f, &mut m);
        m.into_rows()
    }

    #[test]
    fn hashed_count_matches_pair_oracle() {
        for (x, q) in [(twisted_cubic_curve(), 13), (quartic_curve(), 13), (crate::varieties::build_scroll(&[1, 3]).unwrap(), 5)] {
            let images = ChartImages::new(&x, q, DEFAULT_CHART_BUDGET).unwrap();
            let mut r = rng(3);
            for _ in 0..15 {
                let s = sample_on_secant(&images, &mut r).unwrap();
                assert_eq!(s.count, pair_oracle(&images, &s.p));
                assert!(s.count >= 1);
            }
        }
    }

    #[test]
    fn point_on_variety_is_rejected() {
        let x = twisted_cubic_curve();
        let p: Vec<u64> = x.eval(&[rat(4)]).iter().map(|v| rational_mod(v, 101).unwrap()).collect();
        assert_eq!(secant_count_through(&x, &p, 101, DEFAULT_CHART_BUDGET), Err(Error::PointOnVariety));
    }

    #[test]
    fn budget_is_enforced() {
        let x = crate::varieties::build_twisted_cubic(&crate::jordan::build_catalog("sym3").unwrap()).unwrap();
        assert!(matches!(ChartImages::new(&x, 11, DEFAULT_CHART_BUDGET), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn conjugate_lines_cover_the_remaining_secants() {
        // every point off a twisted cubic lies on exactly one secant or tangent
        let x = twisted_cubic_curve();
        let images = ChartImages::new(&x, 7, DEFAULT_CHART_BUDGET).unwrap();
        assert_eq!(images.points().len(), 8);
        assert_eq!(images.conjugate_lines(), 7 * 3);
    }
}
