//! Parametrized varieties X ⊂ P^{2n+1} given by 2n+2 polynomials in n affine
//! parameters, their constructors, and local differential geometry at a
//! chart point.

pub mod frame;
pub mod hyperplane;
pub mod jordan_geom;

use std::fmt;

use num::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{inv_mod, mul_mod, rational_mod};
use crate::exact::matrix::{rank, Matrix};
use crate::exact::sampling::{rng, small_int_vec};
use crate::exact::{rat, MultiPoly, Rational, Rationals};
use crate::jordan::{build_catalog, CubicJordanAlgebra};

pub use frame::{point_frame, tangential_projection, PointFrame};
pub use hyperplane::{classify_hyperplane_case, cubic_invariant, fundamental_hypersurface, CubicInvariant, HyperplaneCase, HyperplaneCaseResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VarietyKind {
    Jordan { algebra: String },
    Scroll { blocks: Vec<u32> },
    Verra { core: Box<VarietyKind>, n: usize },
    #[serde(rename = "delpezzo5")]
    DelPezzo5,
    #[serde(rename = "segre12")]
    Segre12 { n: usize },
    Curve { exponents: Vec<u32> },
    /// Veronese surface in P⁵; secant defective, used as a negative control.
    Veronese,
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            VarietyKind::Jordan { algebra } => write!(f, "jordan({algebra})"),
            VarietyKind::Scroll { blocks } => write!(f, "scroll({})", list(blocks)),
            VarietyKind::Verra { core, n } => write!(f, "verra({core},{n})"),
            VarietyKind::DelPezzo5 => write!(f, "delpezzo5"),
            VarietyKind::Segre12 { n } => write!(f, "segre12({n})"),
            VarietyKind::Curve { exponents } => write!(f, "curve({})", list(exponents)),
            VarietyKind::Veronese => write!(f, "veronese"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamVariety {
    kind: VarietyKind,
    n: usize,
    components: Vec<MultiPoly>,
}

#[derive(Deserialize)]
struct VarietyDoc {
    kind: VarietyKind,
    n: usize,
    components: Vec<MultiPoly>,
}

impl<'de> Deserialize<'de> for ParamVariety {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = VarietyDoc::deserialize(d)?;
        let comps = doc.components.into_iter().map(|p| p.with_nvars(doc.n)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        ParamVariety::new(doc.kind, doc.n, comps).map_err(serde::de::Error::custom)
    }
}

/// Prime for the common-factor test on random lines.
const GCD_PRIME: u64 = 2_147_483_647;

impl ParamVariety {
    /// Validates component count, common factors and generic jacobian rank.
    pub fn new(kind: VarietyKind, n: usize, components: Vec<MultiPoly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("dimension must be positive".into()));
        }
        if components.len() != 2 * n + 2 {
            return Err(Error::LengthMismatch { expected: 2 * n + 2, got: components.len() });
        }
        if let Some(p) = components.iter().find(|p| p.nvars() != n) {
            return Err(Error::LengthMismatch { expected: n, got: p.nvars() });
        }
        let x = ParamVariety { kind, n, components };
        if x.has_common_factor() {
            return Err(Error::Invalid("components share a common factor".into()));
        }
        let mut r = rng(0x9e37_79b9);
        let ok = (0..5).any(|_| {
            let pt = small_int_vec(&mut r, n, 50);
            x.frame_rank(&pt) == n + 1
        });
        if !ok {
            return Err(Error::Invalid("parametrization is degenerate (jacobian rank < n)".into()));
        }
        Ok(x)
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.n + 1
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    /// Total degree of each component (0 for the zero polynomial).
    pub fn component_degrees(&self) -> Vec<u32> {
        self.components.iter().map(|p| p.total_degree().unwrap_or(0)).collect()
    }

    pub fn algebra(&self) -> Option<CubicJordanAlgebra> {
        match &self.kind {
            VarietyKind::Jordan { algebra } => build_catalog(algebra).ok(),
            _ => None,
        }
    }

    /// Rank of [P(x); ∂P/∂x₁(x); …; ∂P/∂x_n(x)].
    pub fn frame_rank(&self, x: &[Rational]) -> usize {
        let mut rows = vec![self.eval(x)];
        for i in 0..self.n {
            rows.push(self.components.iter().map(|p| p.derivative(i).eval(x)).collect());
        }
        rank(&Rationals, &Matrix::from_rows(2 * self.n + 2, rows))
    }

    /// Seeded chart point with small integer coordinates at which the
    /// parametrization is immersive and `accept` holds; up to 20 attempts.
    pub fn general_point_with(&self, seed: u64, accept: impl Fn(&[Rational]) -> bool) -> Result<Vec<Rational>> {
        let mut r = rng(seed);
        for _ in 0..20 {
            let x = small_int_vec(&mut r, self.n, 9 + (self.n * self.n) as i64);
            if self.frame_rank(&x) == self.n + 1 && accept(&x) {
                return Ok(x);
            }
        }
        Err(Error::NotGeneral("no acceptable point in 20 attempts".into()))
    }

    /// Also avoids the special loci x_i ∈ {0, ±1} and x_i = ±x_j, which
    /// contain the exceptional lines of the catalog surfaces.
    pub fn general_point(&self, seed: u64) -> Result<Vec<Rational>> {
        self.general_point_with(seed, avoids_coincidences)
    }

    /// A common factor restricts to a common root on every line; two random
    /// lines over a large prime field make false positives negligible.
    fn has_common_factor(&self) -> bool {
        let nonzero: Vec<&MultiPoly> = self.components.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.iter().any(|p| p.total_degree() == Some(0)) {
            return false;
        }
        let mut r = rng(0xfac7);
        (0..2).all(|_| {
            let a: Vec<Rational> = small_int_vec(&mut r, self.n, 1000);
            let b: Vec<Rational> = small_int_vec(&mut r, self.n, 1000);
            let line: Vec<MultiPoly> = (0..self.n)
                .map(|i| &MultiPoly::constant(1, a[i].clone()) + &MultiPoly::var(1, 0).scale(&b[i]))
                .collect();
            let mut g: Option<Vec<u64>> = None;
            for p in &nonzero {
                let u = univariate_mod(&p.compose(&line), GCD_PRIME);
                let next = match g {
                    None => u,
                    Some(prev) => poly_gcd_mod(prev, u, GCD_PRIME),
                };
                if next.len() == 1 {
                    return false;
                }
                g = Some(next);
            }
            g.is_some_and(|g| g.len() > 1)
        })
    }
}

fn avoids_coincidences(x: &[Rational]) -> bool {
    let small = |v: &Rational| v.is_zero() || v.abs().is_one();
    x.iter().all(|v| !small(v))
        && x.iter().enumerate().all(|(i, a)| x[i + 1..].iter().all(|b| a.abs() != b.abs()))
}

/// Coefficients (ascending) of a univariate polynomial reduced mod q; the
/// zero polynomial is empty.
fn univariate_mod(p: &MultiPoly, q: u64) -> Vec<u64> {
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut c = vec![0u64; deg + 1];
    for (m, v) in p.terms() {
        c[m.exps()[0] as usize] = rational_mod(v, q).unwrap_or(0);
    }
    trim(c)
}

fn trim(mut c: Vec<u64>) -> Vec<u64> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

fn rem_mod(mut a: Vec<u64>, b: &[u64], q: u64) -> Vec<u64> {
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), q).expect("prime modulus");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let factor = mul_mod(*a.last().unwrap(), lead_inv, q);
        for (i, &bv) in b.iter().enumerate() {
            a[i + shift] = (a[i + shift] + q - mul_mod(factor, bv, q)) % q;
        }
        a = trim(a);
    }
    a
}

fn poly_gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem_mod(a, &b, q);
        a = b;
        b = r;
    }
    a
}

/// x ↦ [1, x, x♯, N(x)].
pub fn build_twisted_cubic(j: &CubicJordanAlgebra) -> Result<ParamVariety> {
    let n = j.dim();
    let mut comps = vec![MultiPoly::one(n)];
    comps.extend((0..n).map(|i| MultiPoly::var(n, i)));
    comps.extend(j.adjoint_forms().iter().cloned());
    comps.push(j.norm_form().clone());
    ParamVariety::new(VarietyKind::Jordan { algebra: j.name().to_string() }, n, comps)
}

/// Rational normal scroll S(a₁, …, a_n) ⊂ P^{2n+1}, Σaᵢ = n + 2.
pub fn build_scroll(blocks: &[u32]) -> Result<ParamVariety> {
    let n = blocks.len();
    if n == 0 || blocks.contains(&0) {
        return Err(Error::Invalid("scroll blocks must be positive".into()));
    }
    if blocks.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Invalid("scroll blocks must be non-decreasing".into()));
    }
    let total: u32 = blocks.iter().sum();
    if total as usize != n + 2 {
        return Err(Error::Invalid(format!("scroll blocks sum to {total}, need n + 2 = {}", n + 2)));
    }
    let t = MultiPoly::var(n, 0);
    let mut comps = Vec::new();
    for (i, &a) in blocks.iter().enumerate() {
        let coeff = if i == 0 { MultiPoly::one(n) } else { MultiPoly::var(n, i) };
        for k in 0..=a {
            comps.push(&coeff * &t.pow(k));
        }
    }
    ParamVariety::new(VarietyKind::Scroll { blocks: blocks.to_vec() }, n, comps)
}

/// Monomial curve t ↦ (t^{e₀}, …, t^{e₃}) ⊂ P³.
pub fn build_curve(exponents: &[u32]) -> Result<ParamVariety> {
    if exponents.len() != 4 {
        return Err(Error::LengthMismatch { expected: 4, got: exponents.len() });
    }
    if exponents[0] != 0 || exponents.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("exponents must start at 0 and increase strictly".into()));
    }
    let comps = exponents.iter().map(|&e| MultiPoly::var(1, 0).pow(e)).collect();
    ParamVariety::new(VarietyKind::Curve { exponents: exponents.to_vec() }, 1, comps)
}

pub fn twisted_cubic_curve() -> ParamVariety {
    build_curve(&[0, 1, 2, 3]).expect("valid exponents")
}

pub fn quartic_curve() -> ParamVariety {
    build_curve(&[0, 1, 3, 4]).expect("valid exponents")
}

/// Cubics through (1:0:0), (0:1:0), (0:0:1), (1:1:1), in the chart z = 1.
pub fn build_delpezzo5() -> ParamVariety {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let xy = &x * &y;
    let comps = [&(&x * &x) * &y, &x * &x, &(&x * &y) * &y, &y * &y, x.clone(), y.clone()]
        .iter()
        .map(|m| m - &xy)
        .collect::<Vec<_>>();
    ParamVariety::new(VarietyKind::DelPezzo5, 2, comps).expect("valid construction")
}

/// The (1,2) divisor Q₀(y)·s₀ + Q₁(y)·s₁ = 0 in P¹ × Pⁿ ⊂ P^{2n+1}, with
/// Q₀ = Σ yᵢ², Q₁ = Σ i·yᵢ², in the chart y₀ = 1.
pub fn build_segre12_divisor(n: usize) -> Result<ParamVariety> {
    if n < 2 {
        return Err(Error::Invalid("segre12 needs n >= 2".into()));
    }
    let y: Vec<MultiPoly> = std::iter::once(MultiPoly::one(n)).chain((0..n).map(|i| MultiPoly::var(n, i))).collect();
    let q0 = y.iter().fold(MultiPoly::zero(n), |acc, v| &acc + &(v * v));
    let q1 = y.iter().enumerate().fold(MultiPoly::zero(n), |acc, (i, v)| &acc + &(v * v).scale(&rat(i as i64)));
    let mut comps: Vec<MultiPoly> = y.iter().map(|v| &q1 * v).collect();
    comps.extend(y.iter().map(|v| -&(&q0 * v)));
    ParamVariety::new(VarietyKind::Segre12 { n }, n, comps)
}

/// Veronese surface (1, x, y, x², xy, y²).
pub fn build_veronese() -> ParamVariety {
    let x = MultiPoly::var(2, 0);
    let y = MultiPoly::var(2, 1);
    let comps = vec![MultiPoly::one(2), x.clone(), y.clone(), &x * &x, &x * &y, &y * &y];
    ParamVariety::new(VarietyKind::Veronese, 2, comps).expect("valid construction")
}

/// Verra variety over a core X ⊂ P^{2m+1}: the union of spans ⟨x, f(x)⟩
/// where f sends x to the (k−1)-plane of W = P^{2k−1}, k = n − m, spanned by
/// the blocks (1, t) in coordinate pairs, t the first core parameter. Core
/// coordinates come first, W coordinates last.
pub fn build_verra(core: &ParamVariety, n: usize) -> Result<ParamVariety> {
    let m = core.dim();
    if n <= m {
        return Err(Error::Invalid(format!("verra dimension {n} must exceed core dimension {m}")));
    }
    if secant_defective(core) {
        return Err(Error::Invalid("core is secant defective".into()));
    }
    let k = n - m;
    let t = MultiPoly::var(n, 0);
    let mut comps: Vec<MultiPoly> = core.components().iter().map(|p| p.embed(n, 0)).collect();
    for j in 0..k {
        let s = MultiPoly::var(n, m + j);
        comps.push(s.clone());
        comps.push(&s * &t);
    }
    ParamVariety::new(VarietyKind::Verra { core: Box::new(core.kind().clone()), n }, n, comps)
}

/// Terracini: the spans of the tangent cones at two general points fill the
/// ambient space iff the secant variety has the expected dimension.
pub fn secant_defective(x: &ParamVariety) -> bool {
    let n = x.dim();
    let mut r = rng(0x7e77);
    let expected = 2 * n + 2;
    let best = (0..3)
        .map(|_| {
            let mut rows = Vec::new();
            for _ in 0..2 {
                let pt = small_int_vec(&mut r, n, 50);
                rows.push(x.eval(&pt));
                for i in 0..n {
                    rows.push(x.components().iter().map(|p| p.derivative(i).eval(&pt)).collect());
                }
            }
            rank(&Rationals, &Matrix::from_rows(2 * n + 2, rows))
        })
        .max()
        .unwrap_or(0);
    best < expected
}

/// Build a variety from its kind.
pub fn build_kind(kind: &VarietyKind) -> Result<ParamVariety> {
    match kind {
        VarietyKind::Jordan { algebra } => build_twisted_cubic(&build_catalog(algebra)?),
        VarietyKind::Scroll { blocks } => build_scroll(blocks),
        VarietyKind::Verra { core, n } => build_verra(&build_kind(core)?, *n),
        VarietyKind::DelPezzo5 => Ok(build_delpezzo5()),
        VarietyKind::Segre12 { n } => build_segre12_divisor(*n),
        VarietyKind::Curve { exponents } => build_curve(exponents),
        VarietyKind::Veronese => Ok(build_veronese()),
    }
}

/// Random chart point with entries in [-h, h].
pub fn random_chart_point<R: Rng>(x: &ParamVariety, r: &mut R, h: i64) -> Vec<Rational> {
    small_int_vec(r, x.dim(), h)
}

/// True if all coordinates are zero.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_component_degrees() {
        let x = build_twisted_cubic(&build_catalog("diag3").unwrap()).unwrap();
        assert_eq!(x.component_degrees(), vec![0, 1, 1, 1, 2, 2, 2, 3]);
        assert_eq!(x.ambient_dim(), 7);
        let s = build_twisted_cubic(&build_catalog("sym3").unwrap()).unwrap();
        assert_eq!(s.ambient_dim(), 13);
    }

    #[test]
    fn scroll_constraints() {
        assert!(build_scroll(&[1, 3]).is_ok());
        assert!(build_scroll(&[2, 2]).is_ok());
        assert!(build_scroll(&[1, 1, 3]).is_ok());
        assert!(matches!(build_scroll(&[1, 1]), Err(Error::Invalid(_))));
        assert!(matches!(build_scroll(&[3, 1]), Err(Error::Invalid(_))));
    }

    #[test]
    fn delpezzo_base_points_and_generic_values() {
        let x = build_delpezzo5();
        for p in [[0, 0], [1, 1]] {
            assert!(is_zero_vector(&x.eval(&[rat(p[0]), rat(p[1])])));
        }
        let v = x.eval(&[rat(2), rat(-3)]);
        assert!(v.iter().all(|c| !c.is_zero()));
        assert_eq!(x.frame_rank(&[rat(2), rat(-3)]), 3);
    }

    #[test]
    fn segre12_lives_in_p5() {
        let x = build_segre12_divisor(2).unwrap();
        assert_eq!(x.ambient_dim(), 5);
        assert!(build_segre12_divisor(1).is_err());
    }

    #[test]
    fn verra_constructions() {
        let core = twisted_cubic_curve();
        let s = build_verra(&core, 2).unwrap();
        assert_eq!(s.ambient_dim(), 5);
        let t = build_verra(&core, 3).unwrap();
        assert_eq!(t.ambient_dim(), 7);
        assert!(matches!(build_verra(&build_veronese(), 3), Err(Error::Invalid(_))));
        assert!(secant_defective(&build_veronese()));
        assert!(!secant_defective(&core));
    }

    #[test]
    fn common_factor_rejected() {
        let t = MultiPoly::var(1, 0);
        let comps = vec![t.clone(), t.pow(2), t.pow(3), t.pow(4)];
        assert!(matches!(ParamVariety::new(VarietyKind::Curve { exponents: vec![1, 2, 3, 4] }, 1, comps), Err(Error::Invalid(_))));
    }

    #[test]
    fn serde_round_trip() {
        let x = build_scroll(&[1, 3]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"kind\":{\"type\":\"scroll\""));
        let back: ParamVariety = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn kinds_display() {
        assert_eq!(build_verra(&twisted_cubic_curve(), 2).unwrap().kind().to_string(), "verra(curve(0,1,2,3),2)");
    }
}
