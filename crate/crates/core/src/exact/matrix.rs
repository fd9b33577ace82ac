//! Dense exact matrices and elimination.

use num::{BigInt, Integer, One, Signed, Zero};

use super::field::{common_denominator, Field, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type ExactMatrix = Matrix<Rational>;

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn push_row(&mut self, row: Vec<E>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

pub fn mat_vec<F: Field>(f: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|r| dot(f, m.row(r), v))
        .collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| {
        if f.is_zero(x) || f.is_zero(y) {
            acc
        } else {
            f.add(&acc, &f.mul(x, y))
        }
    })
}

pub fn mat_mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows());
    let mut out = Matrix::zeros(f, a.rows(), b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols() {
                let v = f.add(out.get(i, j), &f.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Plain Gauss-Jordan elimination to reduced row echelon form.
pub fn gauss_jordan<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !f.is_zero(m.get(r, col))) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in col..m.cols() {
            let v = f.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows() {
            if r == row || f.is_zero(m.get(r, col)) {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in col..m.cols() {
                let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Fraction-free elimination over the integers, normalized to the exact
/// rational RREF at the end. Rows are cleared of denominators first and kept
/// primitive (content divided out) after every update.
pub fn fraction_free_rref(m: &mut Matrix<Rational>) -> Vec<usize> {
    let cols = m.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let den = common_denominator(row.iter());
            let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &den).to_integer()).collect();
            make_primitive(&mut ints);
            ints
        })
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();

    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows.len() {
            break;
        }
        // smallest nonzero pivot keeps the numbers down
        let Some(p) = (prow..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(prow, p);
        let (head, rest) = rows.split_at_mut(prow);
        let (piv, tail) = rest.split_at_mut(1);
        let pivot_row = &piv[0];
        let pv = pivot_row[col].clone();
        let update = |row: &mut Vec<BigInt>| {
            if row[col].is_zero() {
                return;
            }
            let g = pv.gcd(&row[col]);
            let a = &pv / &g;
            let b = &row[col] / &g;
            for c in 0..cols {
                if pivot_row[c].is_zero() {
                    if !row[c].is_zero() {
                        row[c] = &row[c] * &a;
                    }
                } else {
                    row[c] = &row[c] * &a - &b * &pivot_row[c];
                }
            }
            make_primitive(row);
        };
        for row in head.iter_mut() {
            update(row);
        }
        for row in tail.iter_mut() {
            update(row);
        }
        pivots.push(col);
        prow += 1;
    }

    let zero = Rational::zero();
    for r in 0..m.rows() {
        if r < pivots.len() {
            let pv = rows[r][pivots[r]].clone();
            let out = m.row_mut(r);
            for (c, x) in rows[r].iter().enumerate() {
                out[c] = Rational::new(x.clone(), pv.clone());
            }
        } else {
            for x in m.row_mut(r) {
                *x = zero.clone();
            }
        }
    }
    pivots
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x / &g;
        }
    }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut work = m.clone();
    f.rref(&mut work).len()
}

/// Basis of the right kernel, one vector per free column, read off the RREF.
pub fn kernel_basis<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = f.rref(&mut work);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols()];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(work.get(r, free));
        }
        basis.push(v);
    }
    basis
}

pub fn determinant<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = f.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !f.is_zero(a.get(r, col))) else {
            return f.zero();
        };
        if p != col {
            a.swap_rows(p, col);
            det = f.neg(&det);
        }
        let pv = a.get(col, col).clone();
        det = f.mul(&det, &pv);
        let inv = f.inv(&pv).expect("nonzero pivot");
        for r in col + 1..n {
            if f.is_zero(a.get(r, col)) {
                continue;
            }
            let factor = f.mul(a.get(r, col), &inv);
            for c in col..n {
                let v = f.sub(a.get(r, c), &f.mul(&factor, a.get(col, c)));
                a.set(r, c, v);
            }
        }
    }
    det
}

pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut aug = Matrix::zeros(f, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, f.one());
    }
    let pivots = f.rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut out = Matrix::zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, aug.get(r, n + c).clone());
        }
    }
    Some(out)
}

/// One solution of `m x = b`, if any.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows(), b.len());
    let cols = m.cols();
    let mut aug = Matrix::zeros(f, m.rows(), cols + 1);
    for r in 0..m.rows() {
        for c in 0..cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, cols, b[r].clone());
    }
    let pivots = f.rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(r, cols).clone();
    }
    Some(x)
}

/// Incremental row space over a field: rows are reduced against the current
/// echelon basis as they arrive. Used for tall systems where only the row
/// space matters.
#[derive(Clone, Debug)]
pub struct RowSpace<F: Field> {
    field: F,
    cols: usize,
    // (pivot column, row with 1 at pivot)
    basis: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: F, cols: usize) -> Self {
        RowSpace { field, cols, basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.cols
    }

    fn reduce(&self, row: &mut [F::Elem]) {
        let f = &self.field;
        for (p, b) in &self.basis {
            if f.is_zero(&row[*p]) {
                continue;
            }
            let factor = row[*p].clone();
            for c in 0..self.cols {
                if !f.is_zero(&b[c]) {
                    row[c] = f.sub(&row[c], &f.mul(&factor, &b[c]));
                }
            }
        }
    }

    /// Adds a row; returns true when it raised the rank.
    pub fn insert(&mut self, mut row: Vec<F::Elem>) -> bool {
        assert_eq!(row.len(), self.cols);
        self.reduce(&mut row);
        let f = self.field.clone();
        let Some(p) = row.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&row[p]).expect("nonzero");
        for x in row.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep the basis fully reduced
        for (_, b) in self.basis.iter_mut() {
            if f.is_zero(&b[p]) {
                continue;
            }
            let factor = b[p].clone();
            for c in 0..self.cols {
                if !f.is_zero(&row[c]) {
                    b[c] = f.sub(&b[c], &f.mul(&factor, &row[c]));
                }
            }
        }
        self.basis.push((p, row));
        true
    }

    pub fn contains(&self, row: &[F::Elem]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Kernel of the matrix whose rows were inserted.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let mut rows: Vec<&(usize, Vec<F::Elem>)> = self.basis.iter().collect();
        rows.sort_by_key(|(p, _)| *p);
        let mut m = Matrix::zeros(&self.field, rows.len(), self.cols);
        for (i, (_, r)) in rows.iter().enumerate() {
            m.row_mut(i).clone_from_slice(r);
        }
        kernel_basis(&self.field, &m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{rat, PrimeField, Rationals};

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows[0].len(), rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::identity(&Rationals, 3);
        assert!(kernel_basis(&Rationals, &m).is_empty());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let m = Matrix::zeros(&Rationals, 2, 3);
        assert_eq!(kernel_basis(&Rationals, &m).len(), 3);
    }

    #[test]
    fn kernel_hand_example() {
        let m = qm(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = kernel_basis(&Rationals, &m);
        assert_eq!(k, vec![vec![rat(-1), rat(1), rat(0)]]);
    }

    #[test]
    fn fraction_free_matches_plain_elimination() {
        let m = qm(&[&[2, 4, -2, 6], &[3, 6, 1, 1], &[5, 10, -1, 7], &[1, 0, 1, 0]]);
        let mut a = m.clone();
        let mut b = m.clone();
        let pa = fraction_free_rref(&mut a);
        let pb = gauss_jordan(&Rationals, &mut b);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&Rationals, &m), rat(18));
        let inv = inverse(&Rationals, &m).unwrap();
        assert_eq!(mat_mul(&Rationals, &m, &inv), Matrix::identity(&Rationals, 3));
        let singular = qm(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&Rationals, &singular).is_none());
        assert_eq!(determinant(&Rationals, &singular), rat(0));
    }

    #[test]
    fn row_space_kernel_over_fp() {
        let f = PrimeField::new(7).unwrap();
        let mut rs = RowSpace::new(f, 3);
        assert!(rs.insert(vec![1, 1, 0]));
        assert!(!rs.insert(vec![2, 2, 0]));
        assert!(rs.insert(vec![0, 0, 1]));
        assert_eq!(rs.kernel(), vec![vec![6, 1, 0]]);
    }
}
