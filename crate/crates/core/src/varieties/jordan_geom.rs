//! Projective geometry of X_J = closure of {[1 : x : x♯ : N(x)]} ⊂ P^{2n+1}:
//! membership, the translation group, the swap σ and twisted cubics through
//! three general points.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cremona::coefficient_matrix;
use crate::error::{Error, Result};
use crate::exact::field::rational_vec;
use crate::exact::matrix::{mat_mul, mat_vec, rank, solve, Matrix};
use crate::exact::poly::CompiledPoly;
use crate::exact::{Field, MultiPoly, Rational, Rationals};
use crate::jordan::CubicJordanAlgebra;

/// Adjoint and norm compiled for one field, for repeated membership tests.
#[derive(Clone, Debug)]
pub struct JordanEquations<F: Field> {
    field: F,
    adjoint: Vec<CompiledPoly<F>>,
    norm: CompiledPoly<F>,
}

impl<F: Field> JordanEquations<F> {
    pub fn new(field: F, j: &CubicJordanAlgebra) -> Option<Self> {
        let adjoint = j.adjoint_forms().iter().map(|p| p.compile(&field)).collect::<Option<Vec<_>>>()?;
        let norm = j.norm_form().compile(&field)?;
        Some(JordanEquations { field, adjoint, norm })
    }

    fn n(&self) -> usize {
        self.adjoint.len()
    }

    /// In the chart u ≠ 0: y·u = x♯ and v·u² = N(x), homogenized.
    fn chart_check(&self, u: &F::Elem, x: &[F::Elem], y: &[F::Elem], v: &F::Elem) -> bool {
        let f = &self.field;
        let ys = self.adjoint.iter().map(|p| p.eval(x));
        let ok = ys.zip(y).all(|(xs, yi)| f.mul(yi, u) == xs);
        ok && f.mul(v, &f.mul(u, u)) == self.norm.eval(x)
    }

    /// Membership of [u : x : y : v], using the σ-swapped chart when u = 0.
    pub fn contains(&self, p: &[F::Elem]) -> Result<bool> {
        let n = self.n();
        if p.len() != 2 * n + 2 {
            return Err(Error::LengthMismatch { expected: 2 * n + 2, got: p.len() });
        }
        let f = &self.field;
        let (u, x, y, v) = (&p[0], &p[1..=n], &p[n + 1..=2 * n], &p[2 * n + 1]);
        if !f.is_zero(u) {
            return Ok(self.chart_check(u, x, y, v));
        }
        if !f.is_zero(v) {
            // σ[u : x : y : v] = [v : y : x : u]
            return Ok(self.chart_check(v, y, x, u));
        }
        Err(Error::ChartMiss)
    }
}

pub fn membership(j: &CubicJordanAlgebra, p: &[Rational]) -> Result<bool> {
    JordanEquations::new(Rationals, j).expect("rational compilation").contains(p)
}

/// The linear involution [u : x : y : v] ↦ [v : y : x : u].
pub fn sigma_matrix(n: usize) -> Matrix<Rational> {
    let amb = 2 * n + 2;
    let mut m = Matrix::filled(amb, amb, Rational::zero());
    let target = |i: usize| -> usize {
        match i {
            0 => 2 * n + 1,
            i if i <= n => i + n,
            i if i <= 2 * n => i - n,
            _ => 0,
        }
    };
    for i in 0..amb {
        m.set(target(i), i, Rational::one());
    }
    m
}

/// The projective transformation extending x ↦ x + c on the chart:
/// u' = u, x' = x + u·c, y' = y + x×c + u·c♯, v' = v + ℓ(y) + ∇N(c)·x + u·N(c),
/// where ℓ(x♯) equals the derivative of N at x in the direction c.
pub fn translation_matrix(j: &CubicJordanAlgebra, c: &[Rational]) -> Result<Matrix<Rational>> {
    let n = j.dim();
    if c.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: c.len() });
    }
    let amb = 2 * n + 2;
    let mut m = Matrix::filled(amb, amb, Rational::zero());
    for i in 0..amb {
        m.set(i, i, Rational::one());
    }
    let c_sharp = j.adjoint(c)?;
    let norm_grad: Vec<Rational> = j.norm_form().gradient().iter().map(|p| p.eval(c)).collect();
    for i in 0..n {
        m.set(1 + i, 0, c[i].clone());
        m.set(n + 1 + i, 0, c_sharp[i].clone());
    }
    for k in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        let col = j.cross(&e, c)?;
        for i in 0..n {
            m.set(n + 1 + i, 1 + k, col[i].clone());
        }
        m.set(2 * n + 1, 1 + k, norm_grad[k].clone());
    }
    m.set(2 * n + 1, 0, j.norm(c)?);
    let ell = directional_norm_in_adjoint(j, c)?;
    for k in 0..n {
        m.set(2 * n + 1, n + 1 + k, ell[k].clone());
    }
    Ok(m)
}

/// ℓ with Σ ℓ_k (x♯)_k = Σ cᵢ ∂N/∂xᵢ(x) as polynomials in x.
fn directional_norm_in_adjoint(j: &CubicJordanAlgebra, c: &[Rational]) -> Result<Vec<Rational>> {
    let n = j.dim();
    let target = j
        .norm_form()
        .gradient()
        .iter()
        .zip(c)
        .fold(MultiPoly::zero(n), |acc, (d, ci)| &acc + &d.scale(ci));
    let mut forms = j.adjoint_forms().to_vec();
    forms.push(target);
    let (coeffs, _) = coefficient_matrix(&forms);
    // columns: adjoint forms; right-hand side: the target form
    let cols = coeffs.cols();
    let a = Matrix::from_rows(n, (0..cols).map(|mo| (0..n).map(|k| coeffs.get(k, mo).clone()).collect()).collect());
    let b: Vec<Rational> = (0..cols).map(|mo| coeffs.get(n, mo).clone()).collect();
    solve(&Rationals, &a, &b).ok_or_else(|| Error::Invalid("norm derivative is not in the span of the adjoint".into()))
}

/// Point [1 : x : x♯ : N(x)].
pub fn jordan_point(j: &CubicJordanAlgebra, x: &[Rational]) -> Result<Vec<Rational>> {
    let mut p = vec![Rational::one()];
    p.extend_from_slice(x);
    p.extend(j.adjoint(x)?);
    p.push(j.norm(x)?);
    Ok(p)
}

/// Nonzero vectors spanning the same point of projective space.
pub fn projectively_equal(a: &[Rational], b: &[Rational]) -> bool {
    let nonzero = |v: &[Rational]| v.iter().any(|c| !c.is_zero());
    nonzero(a) && nonzero(b) && rank(&Rationals, &Matrix::from_rows(a.len(), vec![a.to_vec(), b.to_vec()])) == 1
}

/// t ↦ Σ t^k·C_k, k = 0..3; t = ∞ gives C₃.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedCubicCurve {
    pub coefficients: Vec<CurveCoefficient>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveCoefficient(#[serde(with = "rational_vec")] pub Vec<Rational>);

impl TwistedCubicCurve {
    pub fn eval(&self, t: &Rational) -> Vec<Rational> {
        let len = self.coefficients[0].0.len();
        let mut out = vec![Rational::zero(); len];
        let mut pow = Rational::one();
        for c in &self.coefficients {
            for (o, v) in out.iter_mut().zip(&c.0) {
                *o += &pow * v;
            }
            pow *= t;
        }
        out
    }

    pub fn at_infinity(&self) -> Vec<Rational> {
        self.coefficients.last().expect("nonempty").0.clone()
    }

    /// The coordinate functions as polynomials in t.
    pub fn components(&self) -> Vec<MultiPoly> {
        let len = self.coefficients[0].0.len();
        (0..len)
            .map(|i| {
                self.coefficients
                    .iter()
                    .enumerate()
                    .fold(MultiPoly::zero(1), |acc, (k, c)| &acc + &MultiPoly::var(1, 0).pow(k as u32).scale(&c.0[i]))
            })
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.components().iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0)
    }
}

/// A twisted cubic on X_J through P(x₁) (t = 0), P(x₂) (t = 1) and P(x₃) (t = ∞).
///
/// g = T(−(x₁−x₃)⁻¹) ∘ σ ∘ T(−x₃) sends the three points to [1:0:0:0], the
/// image w = (x₂−x₃)⁻¹ − (x₁−x₃)⁻¹ of x₂, and [0:0:0:1]; the curve
/// [1 : tw : t²w♯ : t³N(w)] through these is pulled back by g⁻¹.
pub fn three_point_cubic(j: &CubicJordanAlgebra, x1: &[Rational], x2: &[Rational], x3: &[Rational]) -> Result<TwistedCubicCurve> {
    let n = j.dim();
    for x in [x1, x2, x3] {
        if x.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: x.len() });
        }
    }
    let diff = |a: &[Rational], b: &[Rational]| -> Vec<Rational> { a.iter().zip(b).map(|(p, q)| p - q).collect() };
    let inv = |v: &[Rational], what: &str| j.inverse(v).map_err(|_| Error::NotGeneral(format!("{what} is not invertible")));
    let a = inv(&diff(x1, x3), "x1 - x3")?;
    let b = inv(&diff(x2, x3), "x2 - x3")?;
    let w = diff(&b, &a);
    let nw = j.norm(&w)?;
    if nw.is_zero() {
        return Err(Error::NotGeneral("the image of x2 is not invertible".into()));
    }
    let g_inv = mat_mul(&Rationals, &mat_mul(&Rationals, &translation_matrix(j, x3)?, &sigma_matrix(n)), &translation_matrix(j, &a)?);
    let amb = 2 * n + 2;
    let mut local = vec![vec![Rational::zero(); amb]; 4];
    local[0][0] = Rational::one();
    for i in 0..n {
        local[1][1 + i] = w[i].clone();
    }
    for (i, v) in j.adjoint(&w)?.into_iter().enumerate() {
        local[2][n + 1 + i] = v;
    }
    local[3][2 * n + 1] = nw;
    let coefficients = local.iter().map(|c| CurveCoefficient(mat_vec(&Rationals, &g_inv, c))).collect();
    Ok(TwistedCubicCurve { coefficients })
}

/// The cubics [u³ : u²x : u·x♯ : N(x)] on P^n defining the inverse of the
/// tangential projection from the point [0 : … : 0 : 1].
pub fn sigma_cubics(j: &CubicJordanAlgebra) -> Vec<MultiPoly> {
    let n = j.dim();
    let u = MultiPoly::var(n + 1, 0);
    let mut out = vec![u.pow(3)];
    let u2 = u.pow(2);
    out.extend((0..n).map(|i| &u2 * &MultiPoly::var(n + 1, 1 + i)));
    out.extend(j.adjoint_forms().iter().map(|p| &u * &p.embed(n + 1, 1)));
    out.push(j.norm_form().embed(n + 1, 1));
    out
}

/// All first partials of every σ-cubic vanish at (0, x).
pub fn sigma_cubics_singular_at(cubics: &[MultiPoly], x: &[Rational]) -> bool {
    let mut p = vec![Rational::zero()];
    p.extend_from_slice(x);
    cubics.iter().all(|c| c.gradient().iter().all(|d| d.eval(&p).is_zero()))
}

/// [N(y) : v·y♯ : v²·y : v³] ∘ [x♯ : N(x)] = N(x)²·[1 : x : x♯ : N(x)] exactly.
pub fn inverse_projection_identity(j: &CubicJordanAlgebra) -> bool {
    let n = j.dim();
    let y: Vec<MultiPoly> = j.adjoint_forms().to_vec();
    let v = j.norm_form().clone();
    let n2 = v.pow(2);
    let mut lhs = vec![j.norm_form().compose(&y)];
    lhs.extend(j.adjoint_forms().iter().map(|p| &v * &p.compose(&y)));
    lhs.extend(y.iter().map(|yi| &n2 * yi));
    lhs.push(v.pow(3));
    let mut rhs = vec![MultiPoly::one(n)];
    rhs.extend((0..n).map(|i| MultiPoly::var(n, i)));
    rhs.extend(j.adjoint_forms().iter().cloned());
    rhs.push(j.norm_form().clone());
    lhs.iter().zip(&rhs).all(|(l, r)| *l == &n2 * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sampling::{rng, small_int_vec};
    use crate::exact::rat;
    use crate::jordan::{build_catalog, CatalogKey};

    #[test]
    fn membership_examples() {
        let j = build_catalog("diag3").unwrap();
        let x = vec![rat(2), rat(-1), rat(3)];
        let p = jordan_point(&j, &x).unwrap();
        assert!(membership(&j, &p).unwrap());
        let mut q = p.clone();
        *q.last_mut().unwrap() += rat(1);
        assert!(!membership(&j, &q).unwrap());
        let mut inf = vec![rat(0); 8];
        inf[7] = rat(1);
        assert!(membership(&j, &inf).unwrap());
        let mut miss = vec![rat(0); 8];
        miss[1] = rat(1);
        assert_eq!(membership(&j, &miss), Err(Error::ChartMiss));
    }

    #[test]
    fn translations_act_on_the_chart() {
        for key in ["diag3", "sym3", "spin(4)", "x3", "alt6"] {
            let j = build_catalog(key).unwrap();
            let mut r = rng(5);
            let c = small_int_vec(&mut r, j.dim(), 4);
            let x = small_int_vec(&mut r, j.dim(), 4);
            let t = translation_matrix(&j, &c).unwrap();
            let moved = mat_vec(&Rationals, &t, &jordan_point(&j, &x).unwrap());
            let xc: Vec<Rational> = x.iter().zip(&c).map(|(a, b)| a + b).collect();
            assert_eq!(moved, jordan_point(&j, &xc).unwrap(), "{key}");
        }
    }

    #[test]
    fn sigma_preserves_the_variety() {
        let j = build_catalog("sym3").unwrap();
        let s = sigma_matrix(6);
        let mut r = rng(9);
        for _ in 0..20 {
            let x = small_int_vec(&mut r, 6, 5);
            let p = jordan_point(&j, &x).unwrap();
            assert!(membership(&j, &mat_vec(&Rationals, &s, &p)).unwrap());
        }
    }

    #[test]
    fn three_points_on_diag3() {
        let j = build_catalog("diag3").unwrap();
        let x1 = vec![rat(1), rat(2), rat(3)];
        let x2 = vec![rat(-1), rat(5), rat(0)];
        let x3 = vec![rat(4), rat(-2), rat(7)];
        let c = three_point_cubic(&j, &x1, &x2, &x3).unwrap();
        assert!(c.max_degree() <= 3);
        assert!(projectively_equal(&c.eval(&rat(0)), &jordan_point(&j, &x1).unwrap()));
        assert!(projectively_equal(&c.eval(&rat(1)), &jordan_point(&j, &x2).unwrap()));
        assert!(projectively_equal(&c.at_infinity(), &jordan_point(&j, &x3).unwrap()));
        for t in -3..=3 {
            assert!(membership(&j, &c.eval(&rat(t))).unwrap());
        }
        assert!(matches!(three_point_cubic(&j, &x1, &x2, &x1), Err(Error::NotGeneral(_))));
    }

    #[test]
    fn collinear_points_give_the_line_curve() {
        let j = build_catalog("diag3").unwrap();
        let w0 = vec![rat(1), rat(2), rat(-1)];
        let pts: Vec<Vec<Rational>> = [1, 3, -2].iter().map(|&t| w0.iter().map(|v| v * rat(t)).collect()).collect();
        let c = three_point_cubic(&j, &pts[0], &pts[1], &pts[2]).unwrap();
        for t in [2, 5, -7] {
            let p = c.eval(&rat(t));
            if p[0].is_zero() {
                continue;
            }
            let x: Vec<Rational> = p[1..4].iter().map(|v| v / &p[0]).collect();
            assert!(projectively_equal(&x, &w0));
        }
    }

    #[test]
    fn doubling_along_base_locus() {
        for key in [CatalogKey::Diag3, CatalogKey::Sym3] {
            let j = crate::jordan::catalog::build(key).unwrap();
            let cubics = sigma_cubics(&j);
            let mut r = rng(2);
            for _ in 0..10 {
                let x = key.rank_one_point(&mut r, 5);
                assert!(sigma_cubics_singular_at(&cubics, &x));
            }
            assert!(inverse_projection_identity(&j));
        }
    }
}
