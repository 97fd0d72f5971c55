//! Dense exact linear algebra over the rationals.
//!
//! Truncated cochain spaces at desk scale stay small, so a dense matrix of
//! `Rational` entries with plain reduced-row-echelon elimination is both the
//! simplest and a fast enough backend for rank, kernel and column-span
//! queries.  The pivot rule is fixed (first nonzero entry in a left-to-right
//! column scan) so identical inputs always produce byte-identical output.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::Error;
use crate::ratpoly::Rational;

/// Dense rational matrix with opaque row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl LabeledMatrix {
    /// Zero matrix with the given labels.
    pub fn zeros(row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        let rows = row_labels.len();
        let cols = col_labels.len();
        LabeledMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
            row_labels,
            col_labels,
        }
    }

    /// Builds a matrix from dense rows with positional labels.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix construction"
        );
        LabeledMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
            row_labels: (0..nrows).map(|i| format!("r{i}")).collect(),
            col_labels: (0..ncols).map(|j| format!("c{j}")).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    acc += self.entry(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    fn to_row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// Exact rank via reduced-row-echelon elimination.
    pub fn rank(&self) -> usize {
        let mut data = self.to_row_vecs();
        rref(&mut data).len()
    }

    /// Deterministic basis of the right null space.  Free columns are taken
    /// in ascending column order; each vector is scaled so its first nonzero
    /// coordinate is `1`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut data = self.to_row_vecs();
        let pivots = rref(&mut data);
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &pivot_col) in pivots.iter().enumerate() {
                v[pivot_col] = -data[row][free].clone();
            }
            let leading = v
                .iter()
                .find(|x| !x.is_zero())
                .expect("kernel vector is nonzero by construction")
                .clone();
            for x in &mut v {
                *x /= &leading;
            }
            basis.push(v);
        }
        basis
    }

    /// Whether `v` lies in the column span, decided by comparing the rank of
    /// the matrix with the rank of the augmented matrix.
    pub fn image_membership(&self, v: &[Rational]) -> Result<bool, Error> {
        if v.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut augmented = self.to_row_vecs();
        for (row, value) in augmented.iter_mut().zip(v) {
            row.push(value.clone());
        }
        let mut plain = self.to_row_vecs();
        Ok(rref(&mut plain).len() == rref(&mut augmented).len())
    }
}

/// In-place reduced row echelon form; returns the pivot columns in
/// ascending order.
fn rref(data: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = data.len();
    let cols = data.first().map(Vec::len).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !data[i][c].is_zero()) else {
            continue;
        };
        data.swap(r, pivot_row);
        let pivot = data[r][c].clone();
        for x in &mut data[r] {
            *x /= &pivot;
        }
        for i in 0..rows {
            if i != r && !data[i][c].is_zero() {
                let factor = data[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &data[r][j];
                    data[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incremental builder for constraint matrices whose rows are discovered
/// while images of basis columns are expanded.  Row keys are kept sorted so
/// the resulting matrix is independent of discovery order.
#[derive(Debug)]
pub(crate) struct ConstraintBuilder<K: Ord + Clone> {
    ncols: usize,
    rows: BTreeMap<K, Vec<Rational>>,
}

impl<K: Ord + Clone> ConstraintBuilder<K> {
    pub(crate) fn new(ncols: usize) -> Self {
        ConstraintBuilder {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub(crate) fn add(&mut self, key: K, col: usize, value: Rational) {
        assert!(col < self.ncols);
        let row = self
            .rows
            .entry(key)
            .or_insert_with(|| vec![Rational::zero(); self.ncols]);
        row[col] += value;
    }

    pub(crate) fn build(
        self,
        col_labels: Vec<String>,
        label: impl Fn(&K) -> String,
    ) -> LabeledMatrix {
        assert_eq!(col_labels.len(), self.ncols);
        let mut matrix =
            LabeledMatrix::from_rows(self.rows.values().cloned().collect::<Vec<_>>());
        if matrix.rows == 0 {
            // keep the column count even when no constraint rows appeared
            matrix.cols = self.ncols;
        }
        matrix.row_labels = self.rows.keys().map(|k| label(k)).collect();
        matrix.col_labels = col_labels;
        matrix
    }
}

#[cfg(test)]
mod tests {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::ratpoly::rat;

    fn m(rows: &[&[i64]]) -> LabeledMatrix {
        LabeledMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(1, 1), rat(-1, 1)]]);

        assert!(m(&[&[2, 1], &[1, 1]]).kernel_basis().is_empty());

        let a = m(&[&[1, 0, -1], &[0, 1, -1]]);
        let k = a.kernel_basis();
        assert_eq!(k, vec![vec![rat(1, 1), rat(1, 1), rat(1, 1)]]);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn membership_examples() {
        let a = m(&[&[1, 3], &[0, 2]]);
        assert!(a.image_membership(&[rat(0, 1), rat(0, 1)]).unwrap());
        assert!(m(&[&[1, 0], &[0, 1]])
            .image_membership(&[rat(5, 2), rat(-3, 1)])
            .unwrap());
        assert!(!m(&[&[1], &[0]])
            .image_membership(&[rat(0, 1), rat(1, 1)])
            .unwrap());
        assert!(matches!(
            m(&[&[1], &[0]]).image_membership(&[rat(1, 1)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rank_nullity_and_exact_kernel_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let rows = rng.random_range(1..=5);
            let cols = rng.random_range(1..=5);
            let data: Vec<Vec<Rational>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| rat(rng.random_range(-4..=4), rng.random_range(1..=3)))
                        .collect()
                })
                .collect();
            let a = LabeledMatrix::from_rows(data);
            let kernel = a.kernel_basis();
            assert_eq!(a.rank() + kernel.len(), cols);
            for v in &kernel {
                assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let first = format!("{:?}", a.kernel_basis());
        let second = format!("{:?}", a.kernel_basis());
        assert_eq!(first, second);
    }

    #[test]
    fn empty_constraint_builder_keeps_columns() {
        let builder: ConstraintBuilder<usize> = ConstraintBuilder::new(3);
        let matrix = builder.build(vec!["a".into(), "b".into(), "c".into()], |k| {
            format!("{k}")
        });
        assert_eq!(matrix.rows(), 0);
        assert_eq!(matrix.cols(), 3);
        assert_eq!(matrix.kernel_basis().len(), 3);
        assert_eq!(matrix.rank(), 0);
    }
}
