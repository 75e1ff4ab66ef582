use super::{ExactError, Field};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ExactError::ShapeMismatch);
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn zero(rows: usize, cols: usize, exemplar: &F) -> Self {
        Mat { rows, cols, data: vec![exemplar.zero_like(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc: Option<F> = None;
            for j in 0..self.cols {
                let t = self.at(i, j).mul(&v[j]);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t),
                });
            }
            out.push(acc.expect("empty matrix row"));
        }
        out
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let a = m.at(r, j).clone();
                let b = m.at(pr, j).clone();
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let inv = m.at(r, c).inv().expect("pivot nonzero");
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// Basis of the right kernel of `m`, in reduced echelon-normal form:
/// one vector per free column (ascending), with entry 1 at its free
/// column and zeros at the other free columns.
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    if m.cols == 0 {
        return Vec::new();
    }
    let exemplar = m.at(0, 0);
    let (r, pivots) = m.rref();
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![exemplar.zero_like(); m.cols];
        v[free] = exemplar.one_like();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = r.at(row, free).neg();
        }
        basis.push(v);
    }
    basis
}

/// Echelonize a list of vectors; returns a canonical reduced-echelon
/// basis of their span.
pub fn echelon_basis<F: Field>(vecs: &[Vec<F>]) -> Vec<Vec<F>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(vecs.to_vec()).expect("uniform vector lengths");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Integer matrix with arbitrary-precision entries; carrier for the
/// support lattices whose rank feeds torus-centralizer dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(ExactError::ShapeMismatch);
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("uniform row lengths")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    /// Rank over Z (equivalently over Q) via the Smith-form pivot process:
    /// repeatedly pick a nonzero pivot of minimal absolute value, reduce
    /// its row and column by exact Euclidean steps, and split it off.
    pub fn smith_rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect()).collect();
        let mut rank = 0;
        let mut top = 0;
        let (nr, nc) = (self.rows, self.cols);
        while top < nr && top < nc {
            // Find a minimal-magnitude nonzero entry in the working block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in top..nr {
                for j in top..nc {
                    if !m[i][j].is_zero()
                        && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            m.swap(top, pi);
            for row in m.iter_mut() {
                row.swap(top, pj);
            }
            // Reduce column and row against the pivot until both clear.
            loop {
                let mut dirty = false;
                for i in top + 1..nr {
                    if !m[i][top].is_zero() {
                        let q = &m[i][top] / &m[top][top];
                        for j in top..nc {
                            let t = &m[top][j] * &q;
                            m[i][j] -= t;
                        }
                        if !m[i][top].is_zero() {
                            m.swap(top, i);
                            dirty = true;
                        }
                    }
                }
                for j in top + 1..nc {
                    if !m[top][j].is_zero() {
                        let q = &m[top][j] / &m[top][top];
                        for i in top..nr {
                            let t = &m[i][top] * &q;
                            m[i][j] -= t;
                        }
                        if !m[top][j].is_zero() {
                            for row in m.iter_mut() {
                                row.swap(top, j);
                            }
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            rank += 1;
            top += 1;
        }
        rank
    }

    /// Independent oracle: rank over Q by plain Gaussian elimination on
    /// rationals.
    pub fn rank_q(&self) -> usize {
        let rows: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| BigRational::from(self.at(i, j).clone())).collect())
            .collect();
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        Mat::from_rows(rows).expect("rectangular").rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn smith_rank_examples() {
        assert_eq!(IntMatrix::from_i64_rows(&[vec![1, 0], vec![1, 2]]).smith_rank(), 2);
        let id4: Vec<Vec<i64>> =
            (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
        assert_eq!(IntMatrix::from_i64_rows(&id4).smith_rank(), 4);
        assert_eq!(
            IntMatrix::from_i64_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]).smith_rank(),
            2
        );
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let z: Mat<BigRational> = Mat::zero(3, 3, &qi(0));
        assert_eq!(kernel_basis(&z).len(), 3);
        let mut id = Mat::zero(4, 4, &qi(0));
        for i in 0..4 {
            id.set(i, i, qi(1));
        }
        assert!(kernel_basis(&id).is_empty());
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Mat::from_rows(vec![
            vec![qi(1), qi(2), qi(3)],
            vec![qi(2), qi(4), qi(6)],
        ])
        .unwrap();
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            assert!(m.apply(v).iter().all(|x| Field::is_zero(x)));
        }
    }
}
