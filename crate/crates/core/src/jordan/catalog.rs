use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use rand::Rng;

use super::octonion::{half, Octonion};
use super::symbolic::{adjugate3, det3, pfaffian, PolyMatrix};
use super::CubicJordanAlgebra;
use crate::error::{Error, Result};
use crate::exact::sampling::small_int;
use crate::exact::{rat, ratio, MultiPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogKey {
    Diag3,
    CX2,
    X3,
    Sym3,
    M3,
    Alt6,
    H3O,
    /// ℂ ⊕ spin factor, total dimension n.
    Spin(usize),
}

impl CatalogKey {
    /// The catalog in listing order; `spin(n)` is represented by n = 4.
    pub fn listing() -> [CatalogKey; 8] {
        use CatalogKey::*;
        [Diag3, CX2, X3, Sym3, M3, Alt6, H3O, Spin(4)]
    }

    pub fn dim(self) -> usize {
        match self {
            CatalogKey::Diag3 | CatalogKey::CX2 | CatalogKey::X3 => 3,
            CatalogKey::Sym3 => 6,
            CatalogKey::M3 => 9,
            CatalogKey::Alt6 => 15,
            CatalogKey::H3O => 27,
            CatalogKey::Spin(n) => n,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            CatalogKey::Diag3 => "C x C x C",
            CatalogKey::CX2 => "C x C[x]/(x^2)",
            CatalogKey::X3 => "C[x]/(x^3)",
            CatalogKey::Sym3 => "symmetric 3x3 matrices",
            CatalogKey::M3 => "3x3 matrices",
            CatalogKey::Alt6 => "alternating 6x6 matrices",
            CatalogKey::H3O => "hermitian 3x3 octonionic matrices",
            CatalogKey::Spin(_) => "C + spin factor",
        }
    }

    /// Simple algebras whose adjoint base locus is a Severi variety.
    pub fn is_simple(self) -> bool {
        matches!(self, CatalogKey::Sym3 | CatalogKey::M3 | CatalogKey::Alt6 | CatalogKey::H3O)
    }

    /// A random nonzero element with x♯ = 0 (a point of the adjoint's base locus).
    pub fn rank_one_point<R: Rng>(self, r: &mut R, height: i64) -> Vec<Rational> {
        let nonzero = |r: &mut R| loop {
            let v = small_int(r, height);
            if !v.is_zero() {
                return v;
            }
        };
        let vec3 = |r: &mut R| loop {
            let v: Vec<Rational> = (0..3).map(|_| small_int(r, height)).collect();
            if v.iter().any(|a| !a.is_zero()) {
                return v;
            }
        };
        match self {
            CatalogKey::Diag3 => {
                let mut x = vec![Rational::zero(); 3];
                x[r.gen_range(0..3)] = nonzero(r);
                x
            }
            CatalogKey::CX2 | CatalogKey::X3 => vec![Rational::zero(), Rational::zero(), nonzero(r)],
            CatalogKey::Sym3 => {
                let (l, v) = (nonzero(r), vec3(r));
                sym3_coords(|i, j| &l * &v[i] * &v[j])
            }
            CatalogKey::M3 => {
                let (u, v) = (vec3(r), vec3(r));
                (0..9).map(|k| &u[k / 3] * &v[k % 3]).collect()
            }
            CatalogKey::Alt6 => loop {
                let u: Vec<Rational> = (0..6).map(|_| small_int(r, height)).collect();
                let v: Vec<Rational> = (0..6).map(|_| small_int(r, height)).collect();
                let x: Vec<Rational> = alt6_pairs().iter().map(|&(i, j)| &u[i] * &v[j] - &u[j] * &v[i]).collect();
                if x.iter().any(|a| !a.is_zero()) {
                    return x;
                }
            },
            CatalogKey::H3O => {
                let v = vec3(r);
                let mut x = vec![Rational::zero(); 27];
                for i in 0..3 {
                    x[i] = &v[i] * &v[i];
                }
                // c1 at (1,2), c2 at (2,0), c3 at (0,1); real parts only
                x[3] = &v[1] * &v[2];
                x[11] = &v[2] * &v[0];
                x[19] = &v[0] * &v[1];
                x
            }
            CatalogKey::Spin(n) => {
                let m = n - 2;
                if r.gen_bool(0.5) {
                    let mut x = vec![Rational::zero(); n];
                    x[0] = nonzero(r);
                    x
                } else {
                    // (0, |w|²+1, 2w, |w|²−1) with w ∈ ℚ^{m−1}: isotropic for a² − v·v
                    let w: Vec<Rational> = (0..m.saturating_sub(1)).map(|_| small_int(r, height)).collect();
                    let s: Rational = w.iter().map(|a| a * a).sum();
                    let mut x = vec![Rational::zero(), &s + rat(1)];
                    x.extend(w.iter().map(|a| a * rat(2)));
                    if m >= 1 {
                        x.push(&s - rat(1));
                    }
                    x
                }
            }
        }
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKey::Diag3 => write!(f, "diag3"),
            CatalogKey::CX2 => write!(f, "c_x2"),
            CatalogKey::X3 => write!(f, "x3"),
            CatalogKey::Sym3 => write!(f, "sym3"),
            CatalogKey::M3 => write!(f, "m3"),
            CatalogKey::Alt6 => write!(f, "alt6"),
            CatalogKey::H3O => write!(f, "h3o"),
            CatalogKey::Spin(n) => write!(f, "spin({n})"),
        }
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        Ok(match key {
            "diag3" => CatalogKey::Diag3,
            "c_x2" => CatalogKey::CX2,
            "x3" => CatalogKey::X3,
            "sym3" => CatalogKey::Sym3,
            "m3" => CatalogKey::M3,
            "alt6" => CatalogKey::Alt6,
            "h3o" => CatalogKey::H3O,
            _ => {
                let digits = key
                    .strip_prefix("spin(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| key.strip_prefix("spin"))
                    .ok_or_else(|| Error::UnknownKey(s.to_string()))?;
                let n: usize = digits.parse().map_err(|_| Error::UnknownKey(s.to_string()))?;
                if n < 3 {
                    return Err(Error::UnknownKey(s.to_string()));
                }
                CatalogKey::Spin(n)
            }
        })
    }
}

pub fn build_catalog(key: &str) -> Result<CubicJordanAlgebra> {
    build(key.parse()?)
}

pub fn build(key: CatalogKey) -> Result<CubicJordanAlgebra> {
    let name = key.to_string();
    match key {
        CatalogKey::Diag3 => {
            let y = |i| MultiPoly::var(2, i);
            let q = &y(0) * &y(1);
            from_quadratic(name, q, &[1, 0], &[1, 1], &[rat(1), rat(1)])
        }
        CatalogKey::CX2 => {
            let q = MultiPoly::var(2, 0).pow(2);
            from_quadratic(name, q, &[0, 1], &[1, -1], &[rat(1), rat(0)])
        }
        CatalogKey::Spin(n) => {
            let m = n - 1;
            let mut q = MultiPoly::var(m, 0).pow(2);
            for i in 1..m {
                q = &q - &MultiPoly::var(m, i).pow(2);
            }
            let perm: Vec<usize> = (0..m).collect();
            let mut signs = vec![-1; m];
            signs[0] = 1;
            let mut unit = vec![rat(0); m];
            unit[0] = rat(1);
            from_quadratic(name, q, &perm, &signs, &unit)
        }
        CatalogKey::X3 => {
            let v = |i| MultiPoly::var(3, i);
            let adjoint = vec![v(0).pow(2), -&(&v(0) * &v(1)), &v(1).pow(2) - &(&v(0) * &v(2))];
            CubicJordanAlgebra::new(name, vec![rat(1), rat(0), rat(0)], adjoint, v(0).pow(3))
        }
        CatalogKey::Sym3 => {
            let m: PolyMatrix = (0..3).map(|i| (0..3).map(|j| MultiPoly::var(6, sym3_index(i, j))).collect()).collect();
            let adj = adjugate3(&m);
            let adjoint = sym3_coords(|i, j| adj[i][j].clone());
            let unit = sym3_coords(|i, j| if i == j { rat(1) } else { rat(0) });
            CubicJordanAlgebra::new(name, unit, adjoint, det3(&m))
        }
        CatalogKey::M3 => {
            let m: PolyMatrix = (0..3).map(|i| (0..3).map(|j| MultiPoly::var(9, 3 * i + j)).collect()).collect();
            let adj = adjugate3(&m);
            let adjoint = (0..9).map(|k| adj[k / 3][k % 3].clone()).collect();
            let unit = (0..9).map(|k| if k / 3 == k % 3 { rat(1) } else { rat(0) }).collect();
            CubicJordanAlgebra::new(name, unit, adjoint, det3(&m))
        }
        CatalogKey::Alt6 => build_alt6(name),
        CatalogKey::H3O => build_h3o(name),
    }
}

/// Cubic norm N(λ, y) = λ·Q(y) with adjoint (λ, y)♯ = (Q(y), λ·ȳ), where
/// ȳ is the signed permutation `ȳ_i = signs[i]·y_{perm[i]}`; requires
/// Q(ȳ) = Q(y) and ȳ̄ = y. The unit is (1, `unit_y`).
fn from_quadratic(name: String, q: MultiPoly, perm: &[usize], signs: &[i64], unit_y: &[Rational]) -> Result<CubicJordanAlgebra> {
    let m = q.nvars();
    let n = m + 1;
    let lambda = MultiPoly::var(n, 0);
    let qe = q.embed(n, 1);
    let mut adjoint = vec![qe.clone()];
    for i in 0..m {
        adjoint.push(&lambda * &MultiPoly::var(n, 1 + perm[i]).scale(&rat(signs[i])));
    }
    let mut unit = vec![rat(1)];
    unit.extend_from_slice(unit_y);
    CubicJordanAlgebra::new(name, unit, adjoint, &lambda * &qe)
}

/// Coordinate order for symmetric 3×3 matrices: (00, 01, 02, 11, 12, 22).
pub fn sym3_index(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        _ => 5,
    }
}

fn sym3_coords<T>(entry: impl Fn(usize, usize) -> T) -> Vec<T> {
    [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)].iter().map(|&(i, j)| entry(i, j)).collect()
}

/// Coordinate order for alternating 6×6 matrices: pairs i < j, lexicographic.
pub fn alt6_pairs() -> Vec<(usize, usize)> {
    (0..6).flat_map(|i| ((i + 1)..6).map(move |j| (i, j))).collect()
}

fn build_alt6(name: String) -> Result<CubicJordanAlgebra> {
    let pairs = alt6_pairs();
    let entry = |i: usize, j: usize| MultiPoly::var(15, pairs.iter().position(|&p| p == (i, j)).unwrap());
    let pf = pfaffian(&[0, 1, 2, 3, 4, 5], &entry, 15);
    let adjoint = pf.gradient();
    let unit = pairs.iter().map(|&p| if matches!(p, (0, 1) | (2, 3) | (4, 5)) { rat(1) } else { rat(0) }).collect();
    CubicJordanAlgebra::new(name, unit, adjoint, pf)
}

/// Octonion offsets of c1, c2, c3 within the 27 coordinates (α1, α2, α3, c1, c2, c3).
const H3O_OFFSETS: [usize; 3] = [3, 11, 19];

/// Hermitian matrix [[α1, c3, c̄2], [c̄3, α2, c1], [c2, c̄1, α3]] with polynomial entries.
fn h3o_matrix() -> Vec<Vec<Octonion>> {
    let n = 27;
    let alpha = |i: usize| Octonion::real(MultiPoly::var(n, i));
    let c = |k: usize| Octonion::variables(n, H3O_OFFSETS[k - 1]);
    vec![
        vec![alpha(0), c(3), c(2).conj()],
        vec![c(3).conj(), alpha(1), c(1)],
        vec![c(2), c(1).conj(), alpha(2)],
    ]
}

fn mat_mul_oct(a: &[Vec<Octonion>], b: &[Vec<Octonion>]) -> Vec<Vec<Octonion>> {
    let n = a[0][0].re().nvars();
    (0..3)
        .map(|i| (0..3).map(|j| (0..3).fold(Octonion::zero(n), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))).collect())
        .collect()
}

fn h3o_coords(m: &[Vec<Octonion>]) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = (0..3).map(|i| m[i][i].re().clone()).collect();
    for &(i, j) in &[(1usize, 2usize), (2, 0), (0, 1)] {
        out.extend(m[i][j].0.iter().cloned());
    }
    out
}

fn build_h3o(name: String) -> Result<CubicJordanAlgebra> {
    let n = 27;
    let x = h3o_matrix();
    let x2 = mat_mul_oct(&x, &x);
    let t = &(&MultiPoly::var(n, 0) + &MultiPoly::var(n, 1)) + &MultiPoly::var(n, 2);
    let tr_x2 = &(&x2[0][0].re().clone() + x2[1][1].re()) + x2[2][2].re();
    let c = half(&(&t.pow(2) - &tr_x2));
    let sharp: Vec<Vec<Octonion>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut e = x2[i][j].sub(&x[i][j].scale(&t));
                    if i == j {
                        e = e.add(&Octonion::real(c.clone()));
                    }
                    e
                })
                .collect()
        })
        .collect();
    let adjoint = h3o_coords(&sharp);
    // N = ⅓ tr(x ∘ x♯); the trace of the Jordan product equals the real trace of x·x♯
    let prod = mat_mul_oct(&x, &sharp);
    let tr = &(&prod[0][0].re().clone() + prod[1][1].re()) + prod[2][2].re();
    let norm = tr.scale(&ratio(1, 3));
    let mut unit = vec![rat(0); n];
    for u in unit.iter_mut().take(3) {
        *u = Rational::one();
    }
    CubicJordanAlgebra::new(name, unit, adjoint, norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sampling::rng;
    use crate::jordan::DEFAULT_TERM_BUDGET;

    #[test]
    fn keys_parse_and_print() {
        for k in CatalogKey::listing() {
            assert_eq!(k.to_string().parse::<CatalogKey>().unwrap(), k);
        }
        assert_eq!("spin7".parse::<CatalogKey>().unwrap(), CatalogKey::Spin(7));
        assert!(matches!("nosuch".parse::<CatalogKey>(), Err(Error::UnknownKey(_))));
        assert!("spin(2)".parse::<CatalogKey>().is_err());
    }

    #[test]
    fn dimensions() {
        for k in CatalogKey::listing() {
            if k == CatalogKey::H3O {
                continue;
            }
            assert_eq!(build(k).unwrap().dim(), k.dim());
        }
    }

    #[test]
    fn diag3_is_a_quadratic_extension_of_a_line() {
        let j = build(CatalogKey::Diag3).unwrap();
        let v = |i| MultiPoly::var(3, i);
        assert_eq!(j.adjoint_forms(), &[&v(1) * &v(2), &v(0) * &v(2), &v(0) * &v(1)]);
        assert_eq!(j.norm_form(), &(&(&v(0) * &v(1)) * &v(2)));
    }

    #[test]
    fn spin4_formulas() {
        let j = build(CatalogKey::Spin(4)).unwrap();
        // (λ, a, v1, v2) = (2, 3, 1, 1): ♯ = (9−2, 6, −2, −2), N = 2·7
        let x = vec![rat(2), rat(3), rat(1), rat(1)];
        assert_eq!(j.adjoint(&x).unwrap(), vec![rat(7), rat(6), rat(-2), rat(-2)]);
        assert_eq!(j.norm(&x).unwrap(), rat(14));
        assert!(j.validate_axioms(DEFAULT_TERM_BUDGET).all_passed());
    }

    #[test]
    fn m3_norm_is_determinant() {
        let j = build(CatalogKey::M3).unwrap();
        let x: Vec<Rational> = [2, 0, 1, 1, 3, 0, 0, 1, 4].iter().map(|&a| rat(a)).collect();
        assert_eq!(j.norm(&x).unwrap(), rat(25));
    }

    #[test]
    fn alt6_unit_and_norm() {
        let j = build(CatalogKey::Alt6).unwrap();
        assert_eq!(j.norm_form().num_terms(), 15);
        assert!(j.validate_axioms(DEFAULT_TERM_BUDGET).all_passed());
    }

    #[test]
    fn rank_one_points_are_base_points() {
        let mut r = rng(3);
        for k in [CatalogKey::Diag3, CatalogKey::CX2, CatalogKey::X3, CatalogKey::Sym3, CatalogKey::M3, CatalogKey::Alt6, CatalogKey::Spin(5)] {
            let j = build(k).unwrap();
            for _ in 0..20 {
                let x = k.rank_one_point(&mut r, 5);
                assert!(x.iter().any(|a| !a.is_zero()));
                assert!(j.adjoint(&x).unwrap().iter().all(Zero::is_zero), "{k}");
            }
        }
    }

    #[test]
    fn h3o_closed_form_norm() {
        let j = build(CatalogKey::H3O).unwrap();
        assert_eq!(j.dim(), 27);
        let n = 27;
        let a = |i| MultiPoly::var(n, i);
        let c = |k: usize| Octonion::variables(n, H3O_OFFSETS[k - 1]);
        let base = &(&(&a(0) * &a(1)) * &a(2))
            - &(&(&(&a(0) * &c(1).norm()) + &(&a(1) * &c(2).norm())) + &(&a(2) * &c(3).norm()));
        let t123 = c(1).mul(&c(2)).mul(&c(3)).re().scale(&rat(2));
        let t321 = c(3).mul(&c(2)).mul(&c(1)).re().scale(&rat(2));
        let n_form = j.norm_form();
        assert!(*n_form == &base + &t123 || *n_form == &base + &t321);
        let e = j.unit().to_vec();
        assert_eq!(j.norm(&e).unwrap(), rat(1));
        let mut r = rng(1);
        for _ in 0..3 {
            let x = CatalogKey::H3O.rank_one_point(&mut r, 4);
            assert!(j.adjoint(&x).unwrap().iter().all(Zero::is_zero));
        }
    }
}
