//! Octonions with polynomial components, from the Cayley table
//! e_i e_{i+1} = e_{i+3} (indices mod 7 in 1..=7), e_i² = −1.

use std::sync::OnceLock;

use crate::exact::MultiPoly;

/// `TABLE[i][j] = (sign, k)` with e_i e_j = sign · e_k.
fn table() -> &'static [[(i8, usize); 8]; 8] {
    static TABLE: OnceLock<[[(i8, usize); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i8, 0usize); 8]; 8];
        for i in 0..8 {
            t[0][i] = (1, i);
            t[i][0] = (1, i);
        }
        for i in 1..8 {
            t[i][i] = (-1, 0);
        }
        let wrap = |k: usize| (k - 1) % 7 + 1;
        for i in 1..=7 {
            let (a, b, c) = (i, wrap(i + 1), wrap(i + 3));
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                t[x][y] = (1, z);
                t[y][x] = (-1, z);
            }
        }
        t
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion(pub [MultiPoly; 8]);

impl Octonion {
    pub fn zero(nvars: usize) -> Self {
        Octonion(std::array::from_fn(|_| MultiPoly::zero(nvars)))
    }

    /// Octonion whose 8 components are the variables `offset..offset + 8`.
    pub fn variables(nvars: usize, offset: usize) -> Self {
        Octonion(std::array::from_fn(|i| MultiPoly::var(nvars, offset + i)))
    }

    pub fn real(r: MultiPoly) -> Self {
        let n = r.nvars();
        let mut o = Self::zero(n);
        o.0[0] = r;
        o
    }

    pub fn conj(&self) -> Self {
        Octonion(std::array::from_fn(|i| if i == 0 { self.0[0].clone() } else { -&self.0[i] }))
    }

    pub fn add(&self, other: &Self) -> Self {
        Octonion(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Octonion(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        Octonion(std::array::from_fn(|i| &self.0[i] * c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = table();
        let n = self.0[0].nvars();
        let mut out = Self::zero(n);
        for i in 0..8 {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if other.0[j].is_zero() {
                    continue;
                }
                let (s, k) = t[i][j];
                let prod = &self.0[i] * &other.0[j];
                out.0[k] = if s > 0 { &out.0[k] + &prod } else { &out.0[k] - &prod };
            }
        }
        out
    }

    /// Quadratic norm x x̄ = Σ xᵢ².
    pub fn norm(&self) -> MultiPoly {
        let n = self.0[0].nvars();
        self.0.iter().fold(MultiPoly::zero(n), |acc, c| &acc + &(c * c))
    }

    pub fn re(&self) -> &MultiPoly {
        &self.0[0]
    }
}

/// Half of a polynomial; used for Jordan products.
pub(crate) fn half(p: &MultiPoly) -> MultiPoly {
    p.scale(&crate::exact::ratio(1, 2))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternative_laws_hold_symbolically() {
        let n = 16;
        let x = Octonion::variables(n, 0);
        let y = Octonion::variables(n, 8);
        let xx_y = x.mul(&x).mul(&y);
        let x_xy = x.mul(&x.mul(&y));
        assert_eq!(xx_y, x_xy);
        let yx_x = y.mul(&x).mul(&x);
        let y_xx = y.mul(&x.mul(&x));
        assert_eq!(yx_x, y_xx);
    }

    #[test]
    fn norm_is_multiplicative() {
        let n = 16;
        let x = Octonion::variables(n, 0);
        let y = Octonion::variables(n, 8);
        assert_eq!(x.mul(&y).norm(), &x.norm() * &y.norm());
    }

    #[test]
    fn not_associative() {
        let n = 24;
        let x = Octonion::variables(n, 0);
        let y = Octonion::variables(n, 8);
        let z = Octonion::variables(n, 16);
        assert_ne!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn conjugate_reverses_products() {
        let n = 16;
        let x = Octonion::variables(n, 0);
        let y = Octonion::variables(n, 8);
        assert_eq!(x.mul(&y).conj(), y.conj().mul(&x.conj()));
    }
}
