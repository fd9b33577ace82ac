use num::Zero;

use super::ParamVariety;
use crate::error::{Error, Result};
use crate::exact::matrix::{inverse, Matrix, RowSpace};
use crate::exact::{Monomial, MultiPoly, Rational, Rationals};

/// Local data of X at P(x₀): Taylor expansion, an adapted basis of the
/// ambient space, and the second fundamental form.
#[derive(Clone, Debug)]
pub struct PointFrame {
    pub x0: Vec<Rational>,
    pub point: Vec<Rational>,
    /// P(x₀) followed by the n first-order Taylor coefficient vectors.
    pub tangent: Vec<Vec<Rational>>,
    /// n + 1 standard basis vectors completing the tangent frame.
    pub complement: Vec<Vec<Rational>>,
    /// n + 1 quadratic forms in the n tangent coordinates t.
    pub ii: Vec<MultiPoly>,
    /// Components of P(x₀ + t), polynomials in t.
    pub shifted: Vec<MultiPoly>,
    /// Inverse of the frame matrix whose columns are tangent ∪ complement.
    basis_inverse: Matrix<Rational>,
}

impl PointFrame {
    /// Coordinates of an ambient vector in the complement part of the frame.
    pub fn complement_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        let n1 = self.tangent.len();
        (0..n1).map(|k| dot(self.basis_inverse.row(n1 + k), v)).collect()
    }

    /// Rows of the inverse frame matrix that read off complement coordinates.
    pub fn complement_functionals(&self) -> Vec<Vec<Rational>> {
        let n1 = self.tangent.len();
        (0..n1).map(|k| self.basis_inverse.row(n1 + k).to_vec()).collect()
    }

    /// Homogeneous part of degree d of each shifted component.
    pub fn taylor_part(&self, d: u32) -> Vec<MultiPoly> {
        self.shifted.iter().map(|p| p.homogeneous_part(d)).collect()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

pub fn point_frame(x: &ParamVariety, x0: &[Rational]) -> Result<PointFrame> {
    let n = x.dim();
    if x0.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x0.len() });
    }
    let amb = 2 * n + 2;
    let shifted: Vec<MultiPoly> = x.components().iter().map(|p| p.shift(x0)).collect();
    let one = Monomial::one(n);
    let point: Vec<Rational> = shifted.iter().map(|p| p.coefficient(&one)).collect();
    let mut tangent = vec![point.clone()];
    for i in 0..n {
        let m = Monomial::var(n, i);
        tangent.push(shifted.iter().map(|p| p.coefficient(&m)).collect());
    }
    let mut span = RowSpace::new(Rationals, amb);
    for v in &tangent {
        span.insert(v.clone());
    }
    if span.rank() < n + 1 {
        return Err(Error::SingularPoint { rank: span.rank(), expected: n + 1 });
    }
    let mut complement = Vec::new();
    for i in 0..amb {
        if span.is_full() {
            break;
        }
        let mut e = vec![Rational::zero(); amb];
        e[i] = Rational::from_integer(1.into());
        if span.insert(e.clone()) {
            complement.push(e);
        }
    }
    // columns: tangent then complement
    let cols: Vec<&Vec<Rational>> = tangent.iter().chain(complement.iter()).collect();
    let b = Matrix::from_rows(amb, (0..amb).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect());
    let basis_inverse = inverse(&Rationals, &b).expect("frame is a basis");
    let quad: Vec<MultiPoly> = shifted.iter().map(|p| p.homogeneous_part(2)).collect();
    let ii = (0..n + 1)
        .map(|k| {
            let row = basis_inverse.row(n + 1 + k);
            combine(row, &quad, n)
        })
        .collect();
    Ok(PointFrame { x0: x0.to_vec(), point, tangent, complement, ii, shifted, basis_inverse })
}

fn combine(coeffs: &[Rational], polys: &[MultiPoly], nvars: usize) -> MultiPoly {
    crate::exact::poly::linear_combination(polys, coeffs, nvars)
}

/// Projection from the embedded tangent space at P(x₀): the complement
/// coordinates of P(x), n + 1 polynomials in the chart parameters.
pub fn tangential_projection(x: &ParamVariety, x0: &[Rational]) -> Result<Vec<MultiPoly>> {
    let frame = point_frame(x, x0)?;
    Ok(frame.complement_functionals().iter().map(|row| combine(row, x.components(), x.dim())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::jordan::build_catalog;
    use crate::varieties::{build_delpezzo5, build_twisted_cubic};

    #[test]
    fn diag3_frame_at_origin() {
        let j = build_catalog("diag3").unwrap();
        let x = build_twisted_cubic(&j).unwrap();
        let f = point_frame(&x, &[rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(f.ii.len(), 4);
        assert_eq!(&f.ii[..3], j.adjoint_forms());
        assert!(f.ii[3].is_zero());
        let tau = tangential_projection(&x, &[rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(&tau[..3], j.adjoint_forms());
        assert_eq!(&tau[3], j.norm_form());
    }

    #[test]
    fn base_point_is_singular() {
        let x = build_delpezzo5();
        assert!(matches!(point_frame(&x, &[rat(0), rat(0)]), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn projection_vanishes_to_order_two_at_center() {
        let j = build_catalog("sym3").unwrap();
        let x = build_twisted_cubic(&j).unwrap();
        let x0 = x.general_point(1).unwrap();
        let tau = tangential_projection(&x, &x0).unwrap();
        for p in &tau {
            let s = p.shift(&x0);
            assert!(s.homogeneous_part(0).is_zero() && s.homogeneous_part(1).is_zero());
        }
    }
}
