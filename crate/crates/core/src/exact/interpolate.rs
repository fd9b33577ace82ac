use super::field::{Field, Rational, Rationals};
use super::matrix::{kernel_basis, Matrix};
use super::poly::{monomials_of_degree, Monomial, MultiPoly};
use crate::error::{Error, Result};

/// Degree-`k` forms vanishing on every sample (affine representatives of
/// points of P^m). Refuses to run with fewer than twice as many samples as
/// there are monomials.
pub fn interpolate_vanishing(samples: &[Vec<Rational>], k: u32) -> Result<Vec<MultiPoly>> {
    let dim = match samples.first() {
        Some(s) => s.len(),
        None => return Err(Error::InsufficientSamples { needed: 1, got: 0 }),
    };
    if samples.iter().any(|s| s.len() != dim) {
        return Err(Error::LengthMismatch { expected: dim, got: samples.iter().map(Vec::len).find(|&l| l != dim).unwrap() });
    }
    let monos = monomials_of_degree(dim, k);
    let needed = 2 * monos.len();
    if samples.len() < needed {
        return Err(Error::InsufficientSamples { needed, got: samples.len() });
    }
    let kernel = vanishing_kernel(&Rationals, samples, &monos);
    Ok(kernel.into_iter().map(|v| MultiPoly::from_terms(dim, monos.iter().cloned().zip(v))).collect())
}

/// Kernel of the evaluation matrix (rows = samples, columns = monomials).
pub fn vanishing_kernel<F: Field>(f: &F, samples: &[Vec<F::Elem>], monos: &[Monomial]) -> Vec<Vec<F::Elem>> {
    let rows = samples.iter().map(|s| monos.iter().map(|m| eval_monomial(f, m, s)).collect()).collect();
    kernel_basis(f, &Matrix::from_rows(monos.len(), rows))
}

pub fn eval_monomial<F: Field>(f: &F, m: &Monomial, x: &[F::Elem]) -> F::Elem {
    let mut v = f.one();
    for (xi, &e) in x.iter().zip(m.exps()) {
        for _ in 0..e {
            v = f.mul(&v, xi);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::rat;

    #[test]
    fn points_on_a_line() {
        let samples: Vec<_> = (0..8).map(|i| vec![rat(i), rat(i * i - 3), rat(0)]).collect();
        let basis = interpolate_vanishing(&samples, 1).unwrap();
        assert_eq!(basis, vec![MultiPoly::var(3, 2)]);
    }

    #[test]
    fn conic_through_veronese() {
        let samples: Vec<_> = (0..12).map(|i| vec![rat(1), rat(i - 5), rat((i - 5) * (i - 5))]).collect();
        let basis = interpolate_vanishing(&samples, 2).unwrap();
        assert_eq!(basis.len(), 1);
        let conic = &(&MultiPoly::var(3, 0) * &MultiPoly::var(3, 2)) - &MultiPoly::var(3, 1).pow(2);
        assert!(basis[0].proportional_to(&conic).is_some());
    }

    #[test]
    fn generic_points_span() {
        let samples: Vec<_> = (0..6i64).map(|i| vec![rat(1), rat(i), rat(i * i * i + 2)]).collect();
        assert!(interpolate_vanishing(&samples, 1).unwrap().is_empty());
    }

    #[test]
    fn too_few_samples() {
        let samples = vec![vec![rat(1), rat(2)]; 3];
        assert_eq!(interpolate_vanishing(&samples, 1), Err(Error::InsufficientSamples { needed: 4, got: 3 }));
    }
}
