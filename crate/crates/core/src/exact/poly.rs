//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every form in the library (adjoints, norms, second fundamental forms,
//! parametrizations) is a `MultiPoly` over ℚ. Finite-field work never builds
//! polynomials over F_q; it compiles a `MultiPoly` once into a
//! [`CompiledPoly`] for the target field and evaluates that.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{parse_rational, rational_string, Field, FieldKind, FieldScalar, PrimeField, QuadraticExtension, Rational, Rationals};
use crate::error::{Error, Result};

/// Exponent vector; `Ord` is lexicographic with x0 most significant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    /// Graded lexicographic comparison.
    fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// All monomials of total degree `d` in `nvars` variables, in descending lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(nvars, Monomial::var(nvars, i), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Linear form Σ cᵢ xᵢ.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        Self::from_terms(n, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.eval_in(&Rationals, point).expect("rational evaluation cannot fail")
    }

    /// Value in another field; `None` if a coefficient does not reduce.
    pub fn eval_in<F: Field>(&self, f: &F, point: &[F::Elem]) -> Option<F::Elem> {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut v = f.from_rational(c)?;
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v = f.mul(&v, x);
                }
            }
            acc = f.add(&acc, &v);
        }
        Some(acc)
    }

    pub fn compile<F: Field>(&self, f: &F) -> Option<CompiledPoly<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let coeff = f.from_rational(c)?;
            let factors = m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i as u32, e as u32)).collect();
            terms.push((coeff, factors));
        }
        Some(CompiledPoly { field: f.clone(), nvars: self.nvars, terms })
    }

    /// Substitute `subs[i]` for variable i. All substitutes share one variable count.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        self.compose_with_budget(subs, usize::MAX).expect("unbounded budget")
    }

    /// As [`compose`](Self::compose), failing once the estimated number of
    /// term products exceeds `budget`.
    pub fn compose_with_budget(&self, subs: &[MultiPoly], budget: usize) -> Result<MultiPoly> {
        assert_eq!(subs.len(), self.nvars, "substitution arity");
        let target = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut estimate = 0usize;
        for m in self.terms.keys() {
            let mut prod = 1usize;
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.saturating_mul(subs[i].num_terms().max(1));
                }
            }
            estimate = estimate.saturating_add(prod);
        }
        if estimate > budget {
            return Err(Error::TermBudget(budget));
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(target)]; self.nvars];
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// p(x + c), same variables.
    pub fn shift(&self, c: &[Rational]) -> MultiPoly {
        let n = self.nvars;
        let subs: Vec<MultiPoly> = (0..n)
            .map(|i| &MultiPoly::var(n, i) + &MultiPoly::constant(n, c[i].clone()))
            .collect();
        self.compose(&subs)
    }

    /// Re-embed into `nvars` variables, mapping variable i to `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MultiPoly {
        assert!(offset + self.nvars <= nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            e[offset..offset + self.nvars].copy_from_slice(&m.0);
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(nvars, terms)
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    /// Division by a single polynomial: remainder zero iff divisible.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = d.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c / &lc;
            let t = MultiPoly::monomial(self.nvars, qm.clone(), qc.clone());
            rem = &rem - &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// λ with `self = λ·other`, if one exists (λ may be zero only when self is zero).
    pub fn proportional_to(&self, other: &MultiPoly) -> Option<Rational> {
        if other.is_zero() {
            return self.is_zero().then(Rational::zero);
        }
        let (m, c) = other.terms.iter().next().unwrap();
        let lambda = self.coefficient(m) / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    /// Largest term in the canonical (lex) order, if any.
    pub fn first_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// The first monomial (in canonical order) where `self` and `other` differ.
    pub fn first_difference(&self, other: &MultiPoly) -> Option<Monomial> {
        let diff = self - other;
        diff.terms.keys().next_back().cloned()
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

/// Σ cᵢ pᵢ.
pub fn linear_combination(polys: &[MultiPoly], coeffs: &[Rational], nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    for (p, c) in polys.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        out = &out + &p.scale(c);
    }
    out
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let is_const = m.degree() == 0;
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc: Vec<(&[u16], String)> = self.terms.iter().map(|(m, c)| (m.exps(), rational_string(c))).collect();
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    /// The variable count is the exponent-tuple length; an empty list is the
    /// zero polynomial in 0 variables (containers fix it up with `with_nvars`).
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = Vec::<(Vec<u16>, String)>::deserialize(d)?;
        let nvars = doc.first().map(|(e, _)| e.len()).unwrap_or(0);
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in doc {
            if e.len() != nvars {
                return Err(D::Error::custom("inconsistent exponent tuple lengths"));
            }
            p.add_term(Monomial(e), parse_rational(&c).map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

impl MultiPoly {
    /// Sets the variable count of a deserialized zero polynomial; errors if a
    /// nonzero polynomial has a different count.
    pub fn with_nvars(self, nvars: usize) -> Result<Self> {
        if self.nvars == nvars {
            Ok(self)
        } else if self.is_zero() {
            Ok(MultiPoly::zero(nvars))
        } else {
            Err(Error::LengthMismatch { expected: nvars, got: self.nvars })
        }
    }
}

/// A polynomial with coefficients pre-reduced into a field, for fast
/// repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(F::Elem, Vec<(u32, u32)>)>,
}

impl<F: Field> CompiledPoly<F> {
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        debug_assert_eq!(point.len(), self.nvars);
        let f = &self.field;
        let mut acc = f.zero();
        for (c, factors) in &self.terms {
            let mut v = c.clone();
            for &(i, e) in factors {
                let x = &point[i as usize];
                for _ in 0..e {
                    v = f.mul(&v, x);
                }
            }
            acc = f.add(&acc, &v);
        }
        acc
    }
}

/// Compile a list of polynomials; fails if some coefficient does not reduce.
pub fn compile_all<F: Field>(f: &F, polys: &[MultiPoly]) -> Option<Vec<CompiledPoly<F>>> {
    polys.iter().map(|p| p.compile(f)).collect()
}

/// Evaluate at a point given as self-describing scalars.
pub fn poly_eval(p: &MultiPoly, point: &[FieldScalar]) -> Result<FieldScalar> {
    if point.len() != p.nvars() {
        return Err(Error::LengthMismatch { expected: p.nvars(), got: point.len() });
    }
    let kind = match point.first() {
        Some(s) => s.kind(),
        None => FieldKind::Rational,
    };
    if point.iter().any(|s| s.kind() != kind) {
        return Err(Error::FieldMismatch);
    }
    match kind {
        FieldKind::Rational => {
            let xs: Vec<Rational> = point
                .iter()
                .map(|s| match s {
                    FieldScalar::Rational(r) => r.clone(),
                    _ => unreachable!(),
                })
                .collect();
            Ok(FieldScalar::Rational(p.eval(&xs)))
        }
        FieldKind::Fq(q) => {
            let f = PrimeField::new(q)?;
            let xs: Vec<u64> = point
                .iter()
                .map(|s| match s {
                    FieldScalar::Fq { value, .. } => *value,
                    _ => unreachable!(),
                })
                .collect();
            let v = p.eval_in(&f, &xs).ok_or(Error::BadReduction(q))?;
            Ok(FieldScalar::Fq { value: v, q })
        }
        FieldKind::Fq2(q) => {
            let f = QuadraticExtension::new(q)?;
            let xs: Vec<(u64, u64)> = point
                .iter()
                .map(|s| match s {
                    FieldScalar::Fq2 { re, im, .. } => (*re, *im),
                    _ => unreachable!(),
                })
                .collect();
            let (re, im) = p.eval_in(&f, &xs).ok_or(Error::BadReduction(q))?;
            Ok(FieldScalar::Fq2 { re, im, q })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{rat, ratio};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn eval_examples() {
        let p = &(&x(3, 0) * &x(3, 1)) * &x(3, 2);
        let one = FieldScalar::Rational(rat(1));
        assert_eq!(poly_eval(&p, &[one.clone(), one.clone(), one.clone()]).unwrap(), one);
        let z = MultiPoly::zero(2);
        assert_eq!(z.eval(&[rat(5), ratio(1, 3)]), rat(0));
        let p = &x(2, 0).pow(2) + &x(2, 1);
        let pt = [FieldScalar::fq(3, 7).unwrap(), FieldScalar::fq(5, 7).unwrap()];
        assert_eq!(poly_eval(&p, &pt).unwrap(), FieldScalar::fq(0, 7).unwrap());
    }

    #[test]
    fn eval_errors() {
        let p = x(2, 0);
        assert!(matches!(poly_eval(&p, &[FieldScalar::Rational(rat(1))]), Err(Error::LengthMismatch { .. })));
        let mixed = [FieldScalar::Rational(rat(1)), FieldScalar::fq(1, 5).unwrap()];
        assert_eq!(poly_eval(&p, &mixed), Err(Error::FieldMismatch));
    }

    #[test]
    fn exact_division() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &MultiPoly::constant(2, rat(3));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&b), None);
    }

    #[test]
    fn shift_and_compose() {
        let p = &x(1, 0).pow(2) + &x(1, 0);
        let s = p.shift(&[rat(1)]);
        // (x+1)^2 + (x+1) = x^2 + 3x + 2
        let expected = &(&x(1, 0).pow(2) + &x(1, 0).scale(&rat(3))) + &MultiPoly::constant(1, rat(2));
        assert_eq!(s, expected);
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(27, 4).len(), 27405);
        assert_eq!(monomials_of_degree(1, 3), vec![Monomial::new(vec![3])]);
    }

    #[test]
    fn serde_format() {
        let p = &x(2, 0).scale(&ratio(1, 2)) - &x(2, 1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[[0,1],"-1/1"],[[1,0],"1/2"]]"#);
        let back: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_is_readable() {
        let p = &(&x(2, 0).pow(2).scale(&rat(3)) - &x(2, 1)) + &MultiPoly::constant(2, ratio(1, 2));
        assert_eq!(p.to_string(), "3*x0^2 - x1 + 1/2");
    }
}
