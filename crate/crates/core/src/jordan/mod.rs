//! Cubic Jordan algebras given extensionally by their adjoint x ↦ x♯ (n
//! quadratic forms) and norm N (one cubic form), together with a catalog of
//! the algebras used throughout the crate.

pub mod catalog;
pub mod octonion;
pub mod symbolic;

use num::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::field::{is_prime, rational_vec};
use crate::exact::poly::compile_all;
use crate::exact::sampling::{fq_vec, rng};
use crate::exact::{Field, MultiPoly, PrimeField, Rational};

pub use catalog::{build_catalog, CatalogKey};

/// Prime used when symbolic expansion exceeds the term budget.
pub const FALLBACK_PRIME: u64 = 4_294_967_291;
pub const FALLBACK_SAMPLES: usize = 500;
/// Default cap on estimated term products in one symbolic composition.
pub const DEFAULT_TERM_BUDGET: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicJordanAlgebra {
    name: String,
    n: usize,
    #[serde(with = "rational_vec")]
    unit: Vec<Rational>,
    adjoint: Vec<MultiPoly>,
    norm: MultiPoly,
}

#[derive(Deserialize)]
struct AlgebraDoc {
    name: String,
    n: usize,
    #[serde(with = "rational_vec")]
    unit: Vec<Rational>,
    adjoint: Vec<MultiPoly>,
    norm: MultiPoly,
}

impl<'de> Deserialize<'de> for CubicJordanAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = AlgebraDoc::deserialize(d)?;
        let fix = |p: MultiPoly| p.with_nvars(doc.n).map_err(serde::de::Error::custom);
        let adjoint = doc.adjoint.into_iter().map(fix).collect::<std::result::Result<Vec<_>, _>>()?;
        let norm = fix(doc.norm)?;
        CubicJordanAlgebra::new(doc.name, doc.unit, adjoint, norm).map_err(serde::de::Error::custom)
    }
}

impl CubicJordanAlgebra {
    /// Checks shapes and homogeneity only; use [`validate_axioms`](Self::validate_axioms)
    /// for the algebraic identities.
    pub fn new(name: impl Into<String>, unit: Vec<Rational>, adjoint: Vec<MultiPoly>, norm: MultiPoly) -> Result<Self> {
        let n = unit.len();
        if adjoint.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: adjoint.len() });
        }
        for p in adjoint.iter().chain(std::iter::once(&norm)) {
            if p.nvars() != n {
                return Err(Error::LengthMismatch { expected: n, got: p.nvars() });
            }
        }
        if adjoint.iter().any(|p| !p.is_zero() && (!p.is_homogeneous() || p.total_degree() != Some(2))) {
            return Err(Error::Invalid("adjoint components must be quadratic forms".into()));
        }
        if !norm.is_homogeneous() || norm.total_degree() != Some(3) {
            return Err(Error::Invalid("norm must be a nonzero cubic form".into()));
        }
        Ok(CubicJordanAlgebra { name: name.into(), n, unit, adjoint, norm })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn adjoint_forms(&self) -> &[MultiPoly] {
        &self.adjoint
    }

    pub fn norm_form(&self) -> &MultiPoly {
        &self.norm
    }

    fn check_len(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    pub fn adjoint(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        Ok(self.adjoint.iter().map(|p| p.eval(x)).collect())
    }

    pub fn norm(&self, x: &[Rational]) -> Result<Rational> {
        self.check_len(x)?;
        Ok(self.norm.eval(x))
    }

    /// x × y = (x+y)♯ − x♯ − y♯.
    pub fn cross(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let s: Vec<Rational> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let (sx, xx, yy) = (self.adjoint(&s)?, self.adjoint(x)?, self.adjoint(y)?);
        Ok(sx.iter().zip(xx.iter().zip(&yy)).map(|(a, (b, c))| a - b - c).collect())
    }

    /// x⁻¹ = x♯ / N(x).
    pub fn inverse(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let nx = self.norm(x)?;
        if nx.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.adjoint(x)?.into_iter().map(|v| v / &nx).collect())
    }

    /// Adjoint with a modified coefficient; for negative tests.
    pub fn with_adjoint(&self, adjoint: Vec<MultiPoly>) -> Result<Self> {
        Self::new(self.name.clone(), self.unit.clone(), adjoint, self.norm.clone())
    }

    /// Checks N(e) = 1, e♯ = e, (x♯)♯ = N(x)·x and N(x♯) = N(x)² as polynomial
    /// identities. Expansions whose estimated size exceeds `term_budget` are
    /// checked instead at seeded random points over a prime above 2³¹.
    pub fn validate_axioms(&self, term_budget: usize) -> AxiomReport {
        let mut checks = Vec::new();
        let ne = self.norm.eval(&self.unit);
        checks.push(AxiomCheck::exact("norm_of_unit", ne.is_one(), (!ne.is_one()).then(|| format!("N(e) = {ne}"))));
        let esharp: Vec<Rational> = self.adjoint.iter().map(|p| p.eval(&self.unit)).collect();
        let bad = (0..self.n).find(|&i| esharp[i] != self.unit[i]);
        checks.push(AxiomCheck::exact("adjoint_of_unit", bad.is_none(), bad.map(|i| format!("coordinate {i}: {} != {}", esharp[i], self.unit[i]))));

        let x: Vec<MultiPoly> = (0..self.n).map(|i| MultiPoly::var(self.n, i)).collect();
        let adjoint_identity = self.adjoint.iter().map(|p| p.compose_with_budget(&self.adjoint, term_budget)).collect::<Result<Vec<_>>>();
        checks.push(match adjoint_identity {
            Ok(lhs) => {
                let witness = lhs.iter().zip(&x).enumerate().find_map(|(i, (l, xi))| {
                    let r = &self.norm * xi;
                    l.first_difference(&r).map(|m| format!("component {i}, monomial {:?}", m.exps()))
                });
                AxiomCheck::exact("adjoint_identity", witness.is_none(), witness)
            }
            Err(_) => self.sampled_check("adjoint_identity", |f, pt, adj, norm| {
                let xs: Vec<u64> = adj.iter().map(|p| p.eval(pt)).collect();
                let xss: Vec<u64> = adj.iter().map(|p| p.eval(&xs)).collect();
                let nx = norm.eval(pt);
                xss.iter().zip(pt).all(|(a, b)| *a == f.mul(&nx, b))
            }),
        });
        checks.push(match self.norm.compose_with_budget(&self.adjoint, term_budget) {
            Ok(lhs) => {
                let rhs = self.norm.pow(2);
                let witness = lhs.first_difference(&rhs).map(|m| format!("monomial {:?}", m.exps()));
                AxiomCheck::exact("norm_of_adjoint", witness.is_none(), witness)
            }
            Err(_) => self.sampled_check("norm_of_adjoint", |f, pt, adj, norm| {
                let xs: Vec<u64> = adj.iter().map(|p| p.eval(pt)).collect();
                let nx = norm.eval(pt);
                norm.eval(&xs) == f.mul(&nx, &nx)
            }),
        });
        AxiomReport { algebra: self.name.clone(), checks }
    }

    fn sampled_check(
        &self,
        name: &str,
        check: impl Fn(&PrimeField, &[u64], &[crate::exact::CompiledPoly<PrimeField>], &crate::exact::CompiledPoly<PrimeField>) -> bool,
    ) -> AxiomCheck {
        debug_assert!(is_prime(FALLBACK_PRIME));
        let f = PrimeField::new(FALLBACK_PRIME).expect("fallback modulus is prime");
        let (adj, norm) = match (compile_all(&f, &self.adjoint), self.norm.compile(&f)) {
            (Some(a), Some(n)) => (a, n),
            _ => {
                return AxiomCheck {
                    name: name.into(),
                    passed: false,
                    method: CheckMethod::Sampled { prime: FALLBACK_PRIME, samples: 0 },
                    witness: Some("coefficients do not reduce modulo the fallback prime".into()),
                }
            }
        };
        let mut r = rng(0x5eed_a1e6);
        let mut witness = None;
        for k in 0..FALLBACK_SAMPLES {
            let pt = fq_vec(&mut r, self.n, FALLBACK_PRIME);
            if !check(&f, &pt, &adj, &norm) {
                witness = Some(format!("sample {k}: {pt:?}"));
                break;
            }
        }
        AxiomCheck {
            name: name.into(),
            passed: witness.is_none(),
            method: CheckMethod::Sampled { prime: FALLBACK_PRIME, samples: FALLBACK_SAMPLES },
            witness,
        }
    }

    /// Random point with small integer coordinates, `height` bounding |xᵢ|.
    pub fn random_point<R: Rng>(&self, r: &mut R, height: i64) -> Vec<Rational> {
        crate::exact::sampling::small_int_vec(r, self.n, height)
    }

    pub fn is_invertible(&self, x: &[Rational]) -> bool {
        !self.norm.eval(x).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckMethod {
    Exact,
    Sampled { prime: u64, samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub method: CheckMethod,
    pub witness: Option<String>,
}

impl AxiomCheck {
    fn exact(name: &str, passed: bool, witness: Option<String>) -> Self {
        AxiomCheck { name: name.into(), passed, method: CheckMethod::Exact, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn diag3_operations() {
        let j = build_catalog("diag3").unwrap();
        assert_eq!(j.adjoint(&q(&[2, 3, 5])).unwrap(), q(&[15, 10, 6]));
        assert_eq!(j.norm(&q(&[2, 3, 5])).unwrap(), rat(30));
        assert_eq!(j.cross(&q(&[1, 0, 0]), &q(&[0, 1, 0])).unwrap(), q(&[0, 0, 1]));
        assert_eq!(j.inverse(&q(&[2, 1, 1])).unwrap(), vec![ratio(1, 2), rat(1), rat(1)]);
        assert_eq!(j.inverse(&q(&[0, 1, 1])), Err(Error::NotInvertible));
        assert!(matches!(j.adjoint(&q(&[1, 2])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn cross_of_unit_is_twice_unit() {
        for key in ["diag3", "x3", "sym3", "m3", "spin(5)"] {
            let j = build_catalog(key).unwrap();
            let e = j.unit().to_vec();
            let two_e: Vec<Rational> = e.iter().map(|v| v * rat(2)).collect();
            assert_eq!(j.cross(&e, &e).unwrap(), two_e, "{key}");
            assert_eq!(j.inverse(&e).unwrap(), e, "{key}");
        }
    }

    #[test]
    fn x3_adjoint_formula() {
        let j = build_catalog("x3").unwrap();
        // (a, b, c) = (2, 3, 5): (a², −ab, b²−ac) = (4, −6, −1)
        assert_eq!(j.adjoint(&q(&[2, 3, 5])).unwrap(), q(&[4, -6, -1]));
    }

    #[test]
    fn sym3_identity_is_fixed() {
        let j = build_catalog("sym3").unwrap();
        let id = q(&[1, 0, 0, 1, 0, 1]);
        assert_eq!(j.adjoint(&id).unwrap(), id);
    }

    #[test]
    fn perturbed_adjoint_fails_with_witness() {
        let j = build_catalog("diag3").unwrap();
        let mut adj = j.adjoint_forms().to_vec();
        adj[0] = &adj[0] + &(&MultiPoly::var(3, 0) * &MultiPoly::var(3, 1));
        let bad = j.with_adjoint(adj).unwrap();
        let report = bad.validate_axioms(DEFAULT_TERM_BUDGET);
        let c = report.checks.iter().find(|c| c.name == "adjoint_identity").unwrap();
        assert!(!c.passed);
        assert!(c.witness.as_deref().unwrap().contains("monomial"));
    }

    #[test]
    fn sampled_fallback_agrees() {
        let j = build_catalog("m3").unwrap();
        let report = j.validate_axioms(1);
        assert!(report.all_passed());
        assert!(report.checks.iter().any(|c| matches!(c.method, CheckMethod::Sampled { .. })));
    }

    #[test]
    fn serde_round_trip() {
        let j = build_catalog("c_x2").unwrap();
        let s = serde_json::to_string(&j).unwrap();
        let back: CubicJordanAlgebra = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
    }
}
