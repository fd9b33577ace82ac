//! Quadratic rational maps of projective space: construction, involutory
//! certificates A·f(f(x)) = g(x)·x, jacobians, base loci and sampled support
//! comparison.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{rational_mod, rational_sqrt, rational_string, parse_rational};
use crate::exact::matrix::{determinant, kernel_basis, rank, Matrix};
use crate::exact::poly::{compile_all, linear_combination, CompiledPoly};
use crate::exact::sampling::stream_rng;
use crate::exact::{rat, Field, Monomial, MultiPoly, PrimeField, Rational, Rationals};

/// m quadratic forms in m variables, linearly independent and without a
/// common factor.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct QuadraticMap {
    components: Vec<MultiPoly>,
}

impl<'de> Deserialize<'de> for QuadraticMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<MultiPoly>::deserialize(d)?;
        let m = comps.len();
        let comps = comps.into_iter().map(|p| p.with_nvars(m)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        QuadraticMap::new(comps).map_err(serde::de::Error::custom)
    }
}

impl QuadraticMap {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let m = components.len();
        if m == 0 {
            return Err(Error::Invalid("empty quadratic map".into()));
        }
        for p in &components {
            if p.nvars() != m {
                return Err(Error::LengthMismatch { expected: m, got: p.nvars() });
            }
            if p.is_zero() || !p.is_homogeneous() || p.total_degree() != Some(2) {
                return Err(Error::Invalid("components must be nonzero quadratic forms".into()));
            }
        }
        if form_rank(&components) < m {
            return Err(Error::Invalid("components are linearly dependent".into()));
        }
        if m > 1 && common_linear_factor(&components).is_some() {
            return Err(Error::Invalid("components share a common factor".into()));
        }
        Ok(QuadraticMap { components })
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    /// f(f(x)), m quartic forms.
    pub fn self_composition(&self) -> Vec<MultiPoly> {
        self.components.iter().map(|p| p.compose(&self.components)).collect()
    }

    pub fn jacobian_matrix(&self) -> Vec<Vec<MultiPoly>> {
        self.components.iter().map(MultiPoly::gradient).collect()
    }
}

/// Rank of the coefficient matrix of a family of polynomials.
pub fn form_rank(forms: &[MultiPoly]) -> usize {
    let (matrix, _) = coefficient_matrix(forms);
    rank(&Rationals, &matrix)
}

/// Rows = forms, columns = the union of their monomials (ascending order).
pub fn coefficient_matrix(forms: &[MultiPoly]) -> (Matrix<Rational>, Vec<Monomial>) {
    let monos: Vec<Monomial> = forms.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect::<BTreeSet<_>>().into_iter().collect();
    let rows = forms.iter().map(|p| monos.iter().map(|m| p.coefficient(m)).collect()).collect();
    (Matrix::from_rows(monos.len(), rows), monos)
}

/// Symmetric matrix S of a quadratic form, q(x) = xᵀ S x.
pub fn quadratic_form_matrix(q: &MultiPoly) -> Matrix<Rational> {
    let n = q.nvars();
    let mut s = Matrix::filled(n, n, Rational::zero());
    let half = Rational::new(1.into(), 2.into());
    for (m, c) in q.terms() {
        let idx: Vec<usize> = m.exps().iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        match idx.as_slice() {
            [i, j] if i == j => s.set(*i, *i, c.clone()),
            [i, j] => {
                s.set(*i, *j, c * &half);
                s.set(*j, *i, c * &half);
            }
            _ => panic!("not a quadratic form"),
        }
    }
    s
}

pub fn quadratic_rank(q: &MultiPoly) -> usize {
    rank(&Rationals, &quadratic_form_matrix(q))
}

/// Linear factors of a quadratic form of rank ≤ 2 over ℚ, `None` if the form
/// has rank > 2 or is irreducible over ℚ.
pub fn linear_factors(q: &MultiPoly) -> Option<(MultiPoly, MultiPoly)> {
    let n = q.nvars();
    let s = quadratic_form_matrix(q);
    let mut work = s.clone();
    let pivots = Rationals.rref(&mut work);
    match pivots.len() {
        1 => {
            // S = c·ℓℓᵀ; any row with nonzero diagonal is c·ℓᵢ·ℓ
            let i = (0..n).find(|&i| !s.get(i, i).is_zero())?;
            let l = MultiPoly::linear(s.row(i));
            let c = s.get(i, i).recip();
            Some((l.scale(&c), l))
        }
        2 => {
            // q factors through x ↦ (u·x, v·x) with u, v the first two RREF rows
            let u = MultiPoly::linear(work.row(0));
            let v = MultiPoly::linear(work.row(1));
            // on the pivot coordinates U is the identity, so M = S restricted to them
            let (p0, p1) = (pivots[0], pivots[1]);
            let a = s.get(p0, p0).clone();
            let b = s.get(p0, p1).clone();
            let c = s.get(p1, p1).clone();
            let disc = &b * &b - &a * &c;
            let root = rational_sqrt(&disc)?;
            if a.is_zero() {
                // 2b·u·v + c·v² = v·(2b·u + c·v)
                let other = &u.scale(&(&b * rat(2))) + &v.scale(&c);
                return Some((v, other));
            }
            let r1 = (-&b + &root) / &a;
            let r2 = (-&b - &root) / &a;
            let f1 = &u - &v.scale(&r1);
            let f2 = &u - &v.scale(&r2);
            Some((f1.scale(&a), f2))
        }
        _ => None,
    }
}

/// A linear form dividing every form in the family, if one exists over ℚ.
/// Irrational factors are impossible for two or more independent forms, so
/// they are not searched for.
pub fn common_linear_factor(forms: &[MultiPoly]) -> Option<MultiPoly> {
    let first = forms.iter().find(|p| !p.is_zero())?;
    let (l1, l2) = linear_factors(first)?;
    [l1, l2].into_iter().find(|l| forms.iter().all(|p| p.div_exact(l).is_some()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvolutoryCertificate {
    pub a: Matrix<Rational>,
    pub g: MultiPoly,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    m: usize,
    #[serde(rename = "A")]
    a: Vec<String>,
    g: MultiPoly,
}

impl Serialize for InvolutoryCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let a = (0..self.a.rows()).flat_map(|r| self.a.row(r).iter().map(rational_string).collect::<Vec<_>>()).collect();
        CertificateDoc { m: self.a.rows(), a, g: self.g.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvolutoryCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = CertificateDoc::deserialize(d)?;
        if doc.a.len() != doc.m * doc.m {
            return Err(D::Error::custom("A must have m*m entries"));
        }
        let vals = doc.a.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        let rows = vals.chunks(doc.m.max(1)).map(<[Rational]>::to_vec).collect();
        let g = doc.g.with_nvars(doc.m).map_err(D::Error::custom)?;
        Ok(InvolutoryCertificate { a: Matrix::from_rows(doc.m, rows), g })
    }
}

impl InvolutoryCertificate {
    pub fn is_identity(&self) -> bool {
        let m = self.a.rows();
        (0..m).all(|i| (0..m).all(|j| *self.a.get(i, j) == if i == j { Rational::one() } else { Rational::zero() }))
    }

    /// A·F(x) − g(x)·x at a point, exactly.
    pub fn residual_at(&self, f: &QuadraticMap, x: &[Rational]) -> Vec<Rational> {
        let ffx = f.eval(&f.eval(x));
        let gx = self.g.eval(x);
        (0..self.a.rows())
            .map(|i| {
                let lhs: Rational = self.a.row(i).iter().zip(&ffx).map(|(a, v)| a * v).sum();
                lhs - &gx * &x[i]
            })
            .collect()
    }
}

/// Finds (A, g) with A·f(f(x)) = g(x)·x, det A ≠ 0 and g ≠ 0.
///
/// Row i of the identity says Σⱼ A_ij F_j is divisible by x_i with quotient g.
/// For each row the admissible rows of A form the kernel Vᵢ of the map
/// k ↦ (Σ k_j F_j)|_{x_i = 0}; the quotients must then agree across rows.
/// Among solutions the one with fewest nonzero entries of A is returned (ties
/// broken lexicographically), scaled so the leading coefficient of g is 1.
pub fn involutory_certificate(f: &QuadraticMap) -> Option<InvolutoryCertificate> {
    let m = f.m();
    let ff = f.self_composition();
    // per-row kernels and the cubic quotients of their basis vectors
    let mut blocks: Vec<(Vec<Vec<Rational>>, Vec<MultiPoly>)> = Vec::with_capacity(m);
    for i in 0..m {
        let restricted: Vec<MultiPoly> = ff.iter().map(|p| restrict_to_hyperplane(p, i)).collect();
        let (mat, _) = coefficient_matrix(&restricted);
        let basis = if mat.cols() == 0 { identity_rows(m) } else { kernel_basis(&Rationals, &mat.transpose()) };
        if basis.is_empty() {
            return None;
        }
        let xi = MultiPoly::var(m, i);
        let quotients = basis
            .iter()
            .map(|k| linear_combination(&ff, k, m).div_exact(&xi).expect("restriction vanishes, so x_i divides"))
            .collect();
        blocks.push((basis, quotients));
    }
    // unknowns: coefficients c_{i,b}; equations: Σ_b c_{i,b} h_{i,b} = Σ_b c_{0,b} h_{0,b} for i ≥ 1
    let offsets: Vec<usize> = blocks.iter().scan(0, |acc, (b, _)| {
        let o = *acc;
        *acc += b.len();
        Some(o)
    }).collect();
    let total: usize = blocks.iter().map(|(b, _)| b.len()).sum();
    let all_quotients: Vec<&MultiPoly> = blocks.iter().flat_map(|(_, h)| h.iter()).collect();
    let monos: Vec<Monomial> = all_quotients.iter().flat_map(|p| p.terms().map(|(mo, _)| mo.clone())).collect::<BTreeSet<_>>().into_iter().collect();
    let mut rows = Vec::new();
    for i in 1..m {
        for mo in &monos {
            let mut row = vec![Rational::zero(); total];
            for (b, h) in blocks[i].1.iter().enumerate() {
                row[offsets[i] + b] = h.coefficient(mo);
            }
            for (b, h) in blocks[0].1.iter().enumerate() {
                row[offsets[0] + b] -= h.coefficient(mo);
            }
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    let solutions = if rows.is_empty() { identity_rows(total) } else { kernel_basis(&Rationals, &Matrix::from_rows(total, rows)) };
    if solutions.is_empty() {
        return None;
    }
    let assemble = |c: &[Rational]| -> (Matrix<Rational>, MultiPoly) {
        let mut a = Matrix::filled(m, m, Rational::zero());
        for (i, (basis, _)) in blocks.iter().enumerate() {
            for (b, k) in basis.iter().enumerate() {
                let coeff = &c[offsets[i] + b];
                if coeff.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let v = a.get(i, j) + coeff * &k[j];
                    a.set(i, j, v);
                }
            }
        }
        let g = linear_combination(&blocks[0].1, &c[offsets[0]..offsets[0] + blocks[0].0.len()], m);
        (a, g)
    };
    let admissible = |(a, g): &(Matrix<Rational>, MultiPoly)| !g.is_zero() && !determinant(&Rationals, a).is_zero();
    let mut candidates: Vec<(Matrix<Rational>, MultiPoly)> = solutions.iter().map(|c| assemble(c)).filter(admissible).collect();
    if candidates.is_empty() {
        for weights in combination_weights(solutions.len()) {
            let c: Vec<Rational> = (0..total).map(|k| solutions.iter().zip(&weights).map(|(s, w)| &s[k] * w).sum()).collect();
            let cand = assemble(&c);
            if admissible(&cand) {
                candidates.push(cand);
                break;
            }
        }
    }
    let normalized: Vec<InvolutoryCertificate> = candidates
        .into_iter()
        .map(|(a, g)| {
            let lead = g.first_coefficient().expect("g is nonzero").recip();
            let a_rows: Vec<Vec<Rational>> = (0..m).map(|r| a.row(r).iter().map(|v| v * &lead).collect()).collect();
            InvolutoryCertificate { a: Matrix::from_rows(m, a_rows), g: g.scale(&lead) }
        })
        .collect();
    normalized.into_iter().min_by(|x, y| {
        let nnz = |c: &InvolutoryCertificate| (0..m).flat_map(|r| c.a.row(r).to_vec()).filter(|v| !v.is_zero()).count();
        let flat = |c: &InvolutoryCertificate| (0..m).flat_map(|r| c.a.row(r).to_vec()).collect::<Vec<_>>();
        nnz(x).cmp(&nnz(y)).then_with(|| flat(x).cmp(&flat(y)))
    })
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// Deterministic sequence of weight vectors: all ones, then 1, 2, 3, ….
fn combination_weights(k: usize) -> Vec<Vec<Rational>> {
    vec![vec![Rational::one(); k], (1..=k as i64).map(rat).collect(), (1..=k as i64).map(|i| rat(i * i)).collect()]
}

/// p with x_i set to zero.
fn restrict_to_hyperplane(p: &MultiPoly, i: usize) -> MultiPoly {
    MultiPoly::from_terms(p.nvars(), p.terms().filter(|(m, _)| m.exps()[i] == 0).map(|(m, c)| (m.clone(), c.clone())))
}

/// Largest matrix size for the symbolic determinant.
pub const MAX_SYMBOLIC_JACOBIAN: usize = 16;

/// Determinant of the jacobian matrix, expanded symbolically (Laplace
/// expansion over column subsets).
pub fn jacobian_det(f: &QuadraticMap) -> Result<MultiPoly> {
    let m = f.m();
    if m > MAX_SYMBOLIC_JACOBIAN {
        return Err(Error::TermBudget(1 << MAX_SYMBOLIC_JACOBIAN));
    }
    Ok(symbolic_det(&f.jacobian_matrix()))
}

/// Determinant of a square polynomial matrix; rows are expanded one at a time
/// over subsets of used columns.
pub fn symbolic_det(j: &[Vec<MultiPoly>]) -> MultiPoly {
    let m = j.len();
    let nvars = j.first().and_then(|r| r.first()).map(MultiPoly::nvars).unwrap_or(0);
    let mut dp: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    dp.insert(0, MultiPoly::one(nvars));
    for row in j {
        let mut next: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (mask, val) in &dp {
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let after = (mask >> (c + 1)).count_ones();
                let term = val * entry;
                let slot = next.entry(mask | (1 << c)).or_insert_with(|| MultiPoly::zero(nvars));
                *slot = if after % 2 == 0 { &*slot + &term } else { &*slot - &term };
            }
        }
        next.retain(|_, v| !v.is_zero());
        dp = next;
    }
    dp.remove(&((1u32 << m) - 1)).unwrap_or_else(|| MultiPoly::zero(nvars))
}

/// Jacobian determinant at a point of any field, by elimination.
pub fn jacobian_det_at<F: Field>(field: &F, jac: &[Vec<CompiledPoly<F>>], x: &[F::Elem]) -> F::Elem {
    let rows = jac.iter().map(|r| r.iter().map(|p| p.eval(x)).collect()).collect();
    determinant(field, &Matrix::from_rows(jac.len(), rows))
}

pub fn base_locus_member(f: &QuadraticMap, p: &[Rational]) -> bool {
    f.components.iter().all(|c| c.eval(p).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportStats {
    pub q: u64,
    pub points: u64,
    pub exhaustive: bool,
    pub exactly_one: u64,
    pub both: u64,
    pub neither: u64,
}

/// Compares the zero sets of two forms on points of P^{m−1}(F_q): every point
/// when there are at most `trials` of them, otherwise `trials` seeded samples.
pub fn support_equal_sampled(h1: &MultiPoly, h2: &MultiPoly, q: u64, trials: u64, seed: u64) -> Result<SupportStats> {
    if h1.nvars() != h2.nvars() {
        return Err(Error::LengthMismatch { expected: h1.nvars(), got: h2.nvars() });
    }
    let f = PrimeField::new(q)?;
    let c = compile_all(&f, &[h1.clone(), h2.clone()]).ok_or(Error::BadReduction(q))?;
    support_compare(&f, h1.nvars(), trials, seed, |x| (f.is_zero(&c[0].eval(x)), f.is_zero(&c[1].eval(x))))
}

/// As [`support_equal_sampled`], with the two vanishing tests supplied as a closure.
pub fn support_compare(f: &PrimeField, m: usize, trials: u64, seed: u64, vanish: impl Fn(&[u64]) -> (bool, bool)) -> Result<SupportStats> {
    let q = f.modulus();
    let count = projective_point_count(q, m);
    let mut stats = SupportStats { q, points: 0, exhaustive: false, exactly_one: 0, both: 0, neither: 0 };
    let mut tally = |x: &[u64]| {
        stats.points += 1;
        match vanish(x) {
            (true, true) => stats.both += 1,
            (false, false) => stats.neither += 1,
            _ => stats.exactly_one += 1,
        }
    };
    if count.is_some_and(|c| c <= trials as u128) {
        for_each_projective_point(q, m, &mut tally);
        stats.exhaustive = true;
    } else {
        let mut r = stream_rng(seed, 0);
        let mut x = vec![0u64; m];
        for _ in 0..trials {
            loop {
                for v in x.iter_mut() {
                    *v = r.gen_range(0..q);
                }
                if f.normalize(&mut x) {
                    break;
                }
            }
            tally(&x);
        }
    }
    Ok(stats)
}

/// (q^m − 1)/(q − 1), if it fits.
pub fn projective_point_count(q: u64, m: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..m {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(q as u128)?;
    }
    Some(total)
}

/// Visits each point of P^{m−1}(F_q) once, normalized with first nonzero
/// coordinate 1.
pub fn for_each_projective_point(q: u64, m: usize, mut visit: impl FnMut(&[u64])) {
    let mut x = vec![0u64; m];
    for lead in 0..m {
        x.iter_mut().for_each(|v| *v = 0);
        x[lead] = 1;
        let tail = m - lead - 1;
        loop {
            visit(&x);
            // odometer over the coordinates after `lead`
            let mut k = 0;
            while k < tail {
                let idx = m - 1 - k;
                x[idx] += 1;
                if x[idx] < q {
                    break;
                }
                x[idx] = 0;
                k += 1;
            }
            if k == tail {
                break;
            }
        }
    }
}

/// Does the gradient of `g` vanish at `x` (a singular point of {g = 0})?
pub fn is_singular_point(g: &MultiPoly, x: &[Rational]) -> bool {
    g.eval(x).is_zero() && g.gradient().iter().all(|d| d.eval(x).is_zero())
}

/// Reduce a rational point modulo q.
pub fn reduce_point(x: &[Rational], q: u64) -> Option<Vec<u64>> {
    x.iter().map(|v| rational_mod(v, q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::build_catalog;

    fn v(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn plane_involution() -> QuadraticMap {
        QuadraticMap::new(vec![&v(3, 1) * &v(3, 2), &v(3, 0) * &v(3, 2), &v(3, 0) * &v(3, 1)]).unwrap()
    }

    #[test]
    fn plane_involution_certificate() {
        let f = plane_involution();
        let cert = involutory_certificate(&f).unwrap();
        assert!(cert.is_identity());
        assert_eq!(cert.g, &(&v(3, 0) * &v(3, 1)) * &v(3, 2));
    }

    #[test]
    fn non_involution_has_no_certificate() {
        let f = QuadraticMap::new(vec![v(3, 0).pow(2), &v(3, 0) * &v(3, 1), &v(3, 1) * &v(3, 2)]).unwrap();
        assert!(involutory_certificate(&f).is_none());
    }

    #[test]
    fn jacobians() {
        let sq = QuadraticMap::new(vec![v(3, 0).pow(2), v(3, 1).pow(2), v(3, 2).pow(2)]).unwrap();
        let xyz = &(&v(3, 0) * &v(3, 1)) * &v(3, 2);
        assert_eq!(jacobian_det(&sq).unwrap(), xyz.scale(&rat(8)));
        assert_eq!(jacobian_det(&plane_involution()).unwrap(), xyz.scale(&rat(2)));
    }

    #[test]
    fn construction_rejects_degenerate_maps() {
        let dep = QuadraticMap::new(vec![v(2, 0).pow(2), v(2, 0).pow(2).scale(&rat(3))]);
        assert!(matches!(dep, Err(Error::Invalid(_))));
        let common = QuadraticMap::new(vec![&v(2, 0) * &v(2, 1), v(2, 0).pow(2)]);
        assert!(matches!(common, Err(Error::Invalid(_))));
    }

    #[test]
    fn base_locus_of_plane_involution() {
        let f = plane_involution();
        assert!(base_locus_member(&f, &[rat(1), rat(0), rat(0)]));
        assert!(!base_locus_member(&f, &[rat(1), rat(1), rat(0)]));
    }

    #[test]
    fn supports() {
        let h = &(&v(3, 0) * &v(3, 1)) * &v(3, 2);
        let s = support_equal_sampled(&h, &h.pow(2), 7, 1000, 0).unwrap();
        assert!(s.exhaustive);
        assert_eq!(s.points, 57);
        assert_eq!(s.exactly_one, 0);
        let t = support_equal_sampled(&v(3, 0), &v(3, 1), 7, 1000, 0).unwrap();
        assert!(t.exactly_one > 0);
        assert!(matches!(support_equal_sampled(&h, &h, 9, 10, 0), Err(Error::NotPrime(9))));
    }

    #[test]
    fn diag3_cubic_and_jacobian_share_support() {
        let j = build_catalog("diag3").unwrap();
        let f = QuadraticMap::new(j.adjoint_forms().to_vec()).unwrap();
        let jd = jacobian_det(&f).unwrap();
        let s = support_equal_sampled(j.norm_form(), &jd, 11, 10_000, 0).unwrap();
        assert_eq!(s.exactly_one, 0);
    }

    #[test]
    fn factoring_quadrics() {
        let x = |i| v(3, i);
        let q = &(&x(0) + &x(1)) * &(&x(0) - &x(2).scale(&rat(2)));
        let (a, b) = linear_factors(&q).unwrap();
        assert_eq!(&a * &b, q);
        let sq = (&x(0) - &x(1)).pow(2).scale(&rat(3));
        let (a, b) = linear_factors(&sq).unwrap();
        assert_eq!(&a * &b, sq);
        let irreducible = &x(0).pow(2) - &x(1).pow(2).scale(&rat(2));
        assert!(linear_factors(&irreducible).is_none());
        let cross = &x(1) * &x(2);
        let (a, b) = linear_factors(&cross).unwrap();
        assert_eq!(&a * &b, cross);
    }

    #[test]
    fn projective_enumeration_counts() {
        let mut n = 0;
        for_each_projective_point(5, 3, |_| n += 1);
        assert_eq!(n as u128, projective_point_count(5, 3).unwrap());
    }

    #[test]
    fn certificate_serde() {
        let cert = involutory_certificate(&plane_involution()).unwrap();
        let s = serde_json::to_string(&cert).unwrap();
        assert!(s.contains("\"A\""));
        let back: InvolutoryCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cert);
    }
}
