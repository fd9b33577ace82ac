//! Fundamental hypersurface, hyperplane-case classification and the cubic
//! invariant at a chart point.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::frame::point_frame;
use super::ParamVariety;
use crate::cremona::{coefficient_matrix, common_linear_factor, quadratic_rank};
use crate::error::{Error, Result};
use crate::exact::field::rational_vec;
use crate::exact::interpolate::interpolate_vanishing;
use crate::exact::matrix::{kernel_basis, Matrix};
use crate::exact::poly::{linear_combination, monomials_of_degree};
use crate::exact::sampling::{rng, small_int_vec};
use crate::exact::{MultiPoly, Rational, Rationals};

/// Degree δ of the image of the projectivized tangent space under the second
/// fundamental form, with a vanishing form of that degree.
///
/// Samples the n + 1 quadrics of II at seeded integer points, interpolates
/// vanishing forms of increasing degree and confirms any hit on a fresh batch;
/// a failed confirmation doubles the sample count once.
pub fn fundamental_hypersurface(x: &ParamVariety, x0: &[Rational], max_degree: u32, seed: u64) -> Result<(u32, MultiPoly)> {
    if max_degree == 0 {
        return Err(Error::Invalid("max_degree must be at least 1".into()));
    }
    let frame = point_frame(x, x0)?;
    let ii = &frame.ii;
    let n = x.dim();
    let mut r = rng(seed);
    let mut sample = |count: usize| -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let t = small_int_vec(&mut r, n, 12);
            let img: Vec<Rational> = ii.iter().map(|q| q.eval(&t)).collect();
            if img.iter().any(|v| !v.is_zero()) {
                out.push(img);
            }
        }
        out
    };
    for k in 1..=max_degree {
        let needed = 2 * monomials_of_degree(n + 1, k).len();
        let mut count = needed;
        for attempt in 0..2 {
            let basis = interpolate_vanishing(&sample(count), k)?;
            let Some(form) = basis.into_iter().next() else {
                break;
            };
            let fresh = sample(needed);
            if fresh.iter().all(|p| form.eval(p).is_zero()) {
                return Ok((k, form));
            }
            if attempt == 0 {
                count *= 2;
            }
        }
    }
    Err(Error::NoHypersurfaceFound(max_degree as usize))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HyperplaneCase {
    H1,
    H2,
    NotHyperplane,
}

impl std::fmt::Display for HyperplaneCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HyperplaneCase::H1 => "H1",
            HyperplaneCase::H2 => "H2",
            HyperplaneCase::NotHyperplane => "NotHyperplane",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneCaseResult {
    pub tag: HyperplaneCase,
    /// Linear relation among the II quadrics (hyperplane case only).
    #[serde(with = "rational_vec", default, skip_serializing_if = "Vec::is_empty")]
    pub relation: Vec<Rational>,
    /// The n quadrics left after eliminating the relation (hyperplane case only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau_bar: Vec<MultiPoly>,
    /// Degree of the fundamental hypersurface, when found.
    pub delta: Option<u32>,
}

/// Largest δ searched for outside the hyperplane case.
pub fn max_delta(n: usize) -> u32 {
    1u32 << (n.max(1) - 1).min(2)
}

/// H1/H2/NotHyperplane from the linear relations among the II quadrics.
pub fn classify_hyperplane_case(x: &ParamVariety, x0: &[Rational]) -> Result<HyperplaneCaseResult> {
    classify_hyperplane_case_seeded(x, x0, 0)
}

pub fn classify_hyperplane_case_seeded(x: &ParamVariety, x0: &[Rational], seed: u64) -> Result<HyperplaneCaseResult> {
    let frame = point_frame(x, x0)?;
    let n = x.dim();
    let relations = quadric_relations(&frame.ii);
    let Some(relation) = relations.into_iter().next() else {
        let delta = match fundamental_hypersurface(x, x0, max_delta(n), seed) {
            Ok((d, _)) => Some(d),
            Err(Error::NoHypersurfaceFound(_)) => None,
            Err(e) => return Err(e),
        };
        return Ok(HyperplaneCaseResult { tag: HyperplaneCase::NotHyperplane, relation: vec![], tau_bar: vec![], delta });
    };
    let k = (0..relation.len()).rev().find(|&i| !relation[i].is_zero()).expect("nonzero relation");
    let tau_bar: Vec<MultiPoly> = frame.ii.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, q)| q.clone()).collect();
    let h1 = tau_bar.iter().all(|q| q.is_zero() || quadratic_rank(q) <= 2) && common_linear_factor(&tau_bar).is_some();
    let tag = if h1 { HyperplaneCase::H1 } else { HyperplaneCase::H2 };
    Ok(HyperplaneCaseResult { tag, relation, tau_bar, delta: Some(1) })
}

/// Basis of the linear relations Σ rᵢ qᵢ = 0.
pub fn quadric_relations(quadrics: &[MultiPoly]) -> Vec<Vec<Rational>> {
    let (m, _) = coefficient_matrix(quadrics);
    if m.cols() == 0 {
        return (0..quadrics.len())
            .map(|i| (0..quadrics.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
    }
    kernel_basis(&Rationals, &m.transpose())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicInvariant {
    /// Ambient hyperplane with a triple point at P(x₀), first nonzero entry 1.
    #[serde(with = "rational_vec")]
    pub hyperplane: Vec<Rational>,
    /// Degree-3 part of h·P(x₀ + t), in the chart directions t.
    pub cubic: MultiPoly,
}

impl CubicInvariant {
    /// Some direction v with Σ vᵢ ∂C/∂tᵢ ≡ 0, i.e. C is a cone.
    pub fn is_cone(&self) -> bool {
        is_cone(&self.cubic)
    }
}

pub fn is_cone(c: &MultiPoly) -> bool {
    let partials = c.gradient();
    !quadric_relations(&partials).is_empty()
}

/// The hyperplane h with h·P(x₀ + t) = O(t³), required to be unique, and the
/// cubic term of the restriction.
pub fn cubic_invariant(x: &ParamVariety, x0: &[Rational]) -> Result<CubicInvariant> {
    let frame = point_frame(x, x0)?;
    let n = x.dim();
    let amb = 2 * n + 2;
    // one equation per monomial of degree ≤ 2 in t
    let mut rows = Vec::new();
    for d in 0..=2 {
        for m in monomials_of_degree(n, d) {
            rows.push(frame.shifted.iter().map(|p| p.coefficient(&m)).collect::<Vec<_>>());
        }
    }
    let solutions = kernel_basis(&Rationals, &Matrix::from_rows(amb, rows));
    match solutions.len() {
        0 => return Err(Error::NotHyperplaneCase),
        1 => {}
        k => return Err(Error::NonUnique(k)),
    }
    let mut h = solutions.into_iter().next().unwrap();
    let lead = h.iter().find(|v| !v.is_zero()).expect("nonzero kernel vector").clone();
    for v in h.iter_mut() {
        *v = &*v / &lead;
    }
    let cubic = linear_combination(&frame.taylor_part(3), &h, n);
    Ok(CubicInvariant { hyperplane: h, cubic })
}
