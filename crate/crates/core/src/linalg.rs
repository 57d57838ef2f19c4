//! Dense linear algebra over `F_p`: Gaussian elimination and incremental
//! echelon spans for membership and closure computations.

use crate::fppoly::PrimeField;
use crate::{Error, Result};

/// Row-major dense matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(v);
            }
        }
        Ok(m)
    }

    /// Matrix whose `j`-th column is `columns[j]`; all columns of length `rows`.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = field.reduce(v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = self.field;
        Ok((0..self.rows).map(|i| (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))).collect())
    }

    pub fn rank(&self) -> usize {
        let mut span = EchelonSpan::new(self.field, self.cols);
        (0..self.rows).filter(|&i| span.insert(&self.data[i * self.cols..(i + 1) * self.cols])).count()
    }
}

/// Solves `a x = rhs`; `Ok(None)` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &Matrix, rhs: &[u64]) -> Result<Option<Vec<u64>>> {
    if rhs.len() != a.rows {
        return Err(Error::DimensionMismatch { expected: a.rows, found: rhs.len() });
    }
    let f = a.field;
    let (rows, cols) = (a.rows, a.cols);
    let width = cols + 1;
    let mut m = vec![0u64; rows * width];
    for i in 0..rows {
        m[i * width..i * width + cols].copy_from_slice(&a.data[i * cols..(i + 1) * cols]);
        m[i * width + cols] = f.reduce(rhs[i]);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i * width + c] != 0) else {
            continue;
        };
        if pr != r {
            for k in 0..width {
                m.swap(pr * width + k, r * width + k);
            }
        }
        let inv = f.inv(m[r * width + c]);
        for k in c..width {
            m[r * width + k] = f.mul(m[r * width + k], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * width + c];
            if factor == 0 {
                continue;
            }
            for k in c..width {
                let v = f.mul(factor, m[r * width + k]);
                m[i * width + k] = f.sub(m[i * width + k], v);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| m[i * width + cols] != 0) {
        return Ok(None);
    }
    let mut x = vec![0u64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i * width + cols];
    }
    Ok(Some(x))
}

/// A subspace of `F_p^dim` held in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    field: PrimeField,
    dim: usize,
    /// `(pivot column, row)`; each row has a 1 at its pivot and zeros at
    /// every other row's pivot.
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonSpan {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        EchelonSpan { field, dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the span.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduced basis vectors.
    pub fn basis(&self) -> impl Iterator<Item = &[u64]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// The residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.dim, "vector length");
        let f = self.field;
        let mut w: Vec<u64> = v.iter().map(|&c| f.reduce(c)).collect();
        for (pc, row) in &self.rows {
            let c = w[*pc];
            if c == 0 {
                continue;
            }
            for (wk, &rk) in w.iter_mut().zip(row) {
                *wk = f.sub(*wk, f.mul(c, rk));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        for c in w.iter_mut() {
            *c = f.mul(*c, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            for (rk, &wk) in row.iter_mut().zip(&w) {
                *rk = f.sub(*rk, f.mul(c, wk));
            }
        }
        self.rows.push((pc, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_system_returns_rhs() {
        let f = fp(7);
        let id = Matrix::from_rows(f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(solve_linear(&id, &[3, 5, 6]).unwrap(), Some(vec![3, 5, 6]));
    }

    #[test]
    fn small_system_over_f3() {
        let a = Matrix::from_rows(fp(3), &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(solve_linear(&a, &[1, 2]).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn inconsistent_system() {
        let a = Matrix::from_rows(fp(5), &[vec![0]]).unwrap();
        assert_eq!(solve_linear(&a, &[1]).unwrap(), None);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::from_rows(fp(5), &[vec![1, 2]]).unwrap();
        assert_eq!(solve_linear(&a, &[1, 2]), Err(Error::DimensionMismatch { expected: 1, found: 2 }));
        assert!(Matrix::from_rows(fp(5), &[vec![1, 2], vec![1]]).is_err());
    }

    #[test]
    fn span_membership() {
        let mut s = EchelonSpan::new(fp(3), 3);
        assert!(s.insert(&[1, 1, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 2, 1]));
        assert!(s.contains(&[2, 0, 1]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.len(), 2);
    }

    fn arb_system() -> impl Strategy<Value = (u64, Vec<Vec<u64>>, Vec<u64>)> {
        (prop_oneof![Just(2u64), Just(3u64), Just(5u64)], 1usize..6, 1usize..6).prop_flat_map(|(p, r, c)| {
            (Just(p), prop::collection::vec(prop::collection::vec(0..p, c), r), prop::collection::vec(0..p, r))
        })
    }

    proptest! {
        #[test]
        fn solutions_verify_and_no_solution_matches_rank((p, rows, rhs) in arb_system()) {
            let f = fp(p);
            let a = Matrix::from_rows(f, &rows).unwrap();
            let aug: Vec<Vec<u64>> = rows.iter().zip(&rhs).map(|(r, &b)| {
                let mut r = r.clone();
                r.push(b);
                r
            }).collect();
            let rank_aug = Matrix::from_rows(f, &aug).unwrap().rank();
            match solve_linear(&a, &rhs).unwrap() {
                Some(x) => {
                    prop_assert_eq!(a.mul_vec(&x).unwrap(), rhs);
                    prop_assert_eq!(rank_aug, a.rank());
                }
                None => prop_assert!(rank_aug > a.rank()),
            }
        }
    }
}
