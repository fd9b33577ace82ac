//! Fibers of the tangential projection over F_q.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::secant::{chart_point, chart_size};
use crate::error::{Error, Result};
use crate::exact::poly::compile_all;
use crate::exact::{PrimeField, Rational};
use crate::varieties::{tangential_projection, ParamVariety};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberStatistic {
    pub q: u64,
    pub chart_points: u64,
    /// Chart points where the projection is undefined.
    pub indeterminate: u64,
    pub images: u64,
    /// Fiber size ↦ number of image points with that fiber size.
    pub histogram: BTreeMap<u64, u64>,
    pub singleton_fraction: f64,
}

/// Tabulates τ∘P over the whole chart F_q^n, τ the projection from the
/// tangent space at P(x₀), and groups chart points by image in P^n(F_q).
pub fn bronowski_fiber_statistic(x: &ParamVariety, x0: &[Rational], q: u64, budget: u64) -> Result<FiberStatistic> {
    let field = PrimeField::new(q)?;
    let n = x.dim();
    let total = chart_size(n, q, budget)?;
    let tau = tangential_projection(x, x0)?;
    let tau = compile_all(&field, &tau).ok_or(Error::BadReduction(q))?;
    let keys: Vec<Option<Vec<u64>>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let a = chart_point(i, n, q);
            let mut v: Vec<u64> = tau.iter().map(|c| c.eval(&a)).collect();
            field.normalize(&mut v).then_some(v)
        })
        .collect();
    let mut fibers: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut indeterminate = 0;
    for k in keys {
        match k {
            Some(v) => *fibers.entry(v).or_insert(0) += 1,
            None => indeterminate += 1,
        }
    }
    let mut histogram = BTreeMap::new();
    for &size in fibers.values() {
        *histogram.entry(size).or_insert(0) += 1;
    }
    let images = fibers.len() as u64;
    let singles = histogram.get(&1).copied().unwrap_or(0);
    let singleton_fraction = if images == 0 { 0.0 } else { singles as f64 / images as f64 };
    Ok(FiberStatistic { q, chart_points: total, indeterminate, images, histogram, singleton_fraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::varieties::{build_veronese, twisted_cubic_curve};

    #[test]
    fn twisted_cubic_projection_is_injective_off_the_center() {
        let x = twisted_cubic_curve();
        let s = bronowski_fiber_statistic(&x, &[rat(3)], 31, 1000).unwrap();
        // τ is [(t−3)² : (t−3)³] up to frame, i.e. t ↦ t − 3 on P¹
        assert_eq!(s.indeterminate, 1);
        assert_eq!(s.histogram, BTreeMap::from([(1, 30)]));
    }

    #[test]
    fn veronese_projection_is_not_dominant() {
        let x = build_veronese();
        let s = bronowski_fiber_statistic(&x, &[rat(2), rat(5)], 31, 10_000).unwrap();
        assert!(s.singleton_fraction < 0.5);
        assert!(s.images <= 32);
    }
}
