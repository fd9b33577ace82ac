//! Symbolic determinants, adjugates and Pfaffians of small polynomial matrices.

use crate::exact::MultiPoly;

pub type PolyMatrix = Vec<Vec<MultiPoly>>;

pub fn det3(m: &PolyMatrix) -> MultiPoly {
    let adj = adjugate3(m);
    (0..3).fold(MultiPoly::zero(m[0][0].nvars()), |acc, j| &acc + &(&m[0][j] * &adj[j][0]))
}

/// Classical adjugate (transpose of the cofactor matrix).
pub fn adjugate3(m: &PolyMatrix) -> PolyMatrix {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
    let others = |i: usize| match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mut adj = vec![vec![MultiPoly::zero(m[0][0].nvars()); 3]; 3];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // adj[i][j] = (-1)^{i+j} · minor of m with row j, column i removed
            let (r0, r1) = others(j);
            let (c0, c1) = others(i);
            let c = minor(r0, r1, c0, c1);
            *slot = if (i + j) % 2 == 0 { c } else { -&c };
        }
    }
    adj
}

/// Pfaffian of the alternating matrix whose (i, j) entry, i < j, is `entry(i, j)`,
/// restricted to the rows/columns in `idx` (even length).
pub fn pfaffian(idx: &[usize], entry: &dyn Fn(usize, usize) -> MultiPoly, nvars: usize) -> MultiPoly {
    if idx.is_empty() {
        return MultiPoly::one(nvars);
    }
    assert!(idx.len().is_multiple_of(2), "Pfaffian of odd size");
    let first = idx[0];
    let mut out = MultiPoly::zero(nvars);
    for m in 1..idx.len() {
        let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(k, _)| k + 1 != m).map(|(_, &v)| v).collect();
        let term = &entry(first, idx[m]) * &pfaffian(&rest, entry, nvars);
        out = if m % 2 == 1 { &out + &term } else { &out - &term };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn generic3() -> PolyMatrix {
        (0..3).map(|i| (0..3).map(|j| MultiPoly::var(9, 3 * i + j)).collect()).collect()
    }

    #[test]
    fn adjugate_times_matrix_is_det() {
        let m = generic3();
        let adj = adjugate3(&m);
        let d = det3(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(MultiPoly::zero(9), |acc, k| &acc + &(&m[i][k] * &adj[k][j]));
                let expected = if i == j { d.clone() } else { MultiPoly::zero(9) };
                assert_eq!(s, expected);
            }
        }
        assert_eq!(d.num_terms(), 6);
    }

    #[test]
    fn pfaffian_squared_is_determinant_4x4() {
        // entries a01..a23 as 6 variables
        let index = |i: usize, j: usize| -> usize {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            pairs.iter().position(|&p| p == (i, j)).unwrap()
        };
        let entry = |i: usize, j: usize| MultiPoly::var(6, index(i, j));
        let pf = pfaffian(&[0, 1, 2, 3], &entry, 6);
        // a01 a23 - a02 a13 + a03 a12
        let v = |k| MultiPoly::var(6, k);
        let expected = &(&(&v(0) * &v(5)) - &(&v(1) * &v(4))) + &(&v(2) * &v(3));
        assert_eq!(pf, expected);
        let e = pf.eval(&[rat(1), rat(0), rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(e, rat(1));
    }
}
