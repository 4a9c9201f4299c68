//! Dense exact linear algebra: determinants, minors, rank, kernels.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::IndexSet;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(height: usize, columns: &[Vec<E>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != height) {
            return Err(Error::Shape(format!(
                "column {} has length {}, expected {height}",
                bad + 1,
                columns[bad].len()
            )));
        }
        let width = columns.len();
        let data = (0..height)
            .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
            .collect();
        Matrix::new(height, width, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let data = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Submatrix on the given 0-based rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn map<T>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(rows, cols, |_, _| field.zero())
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
}

pub fn is_zero_matrix<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    m.data.iter().all(|x| field.is_zero(x))
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    m.map(|x| field.mul(c, x))
}

pub fn mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        (0..a.cols).fold(field.zero(), |acc, k| {
            field.add(&acc, &field.mul(&a[(i, k)], &b[(k, j)]))
        })
    }))
}

pub fn mul_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.cols != v.len() {
        return Err(Error::Shape(format!(
            "cannot apply {}x{} matrix to vector of length {}",
            a.rows,
            a.cols,
            v.len()
        )));
    }
    Ok((0..a.rows)
        .map(|i| {
            a.row(i).iter().zip(v).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
        })
        .collect())
}

/// Exact determinant. Over ℚ this is fraction-free Bareiss elimination,
/// elsewhere ordinary Gaussian elimination.
pub fn det<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    Ok(field.determinant(m))
}

pub(crate) fn det_by_elimination<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut acc = field.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !field.is_zero(&a[(i, k)])) else {
            return field.zero();
        };
        if p != k {
            a.swap_rows(p, k);
            acc = field.neg(&acc);
        }
        let pivot = a[(k, k)].clone();
        acc = field.mul(&acc, &pivot);
        let pinv = field.inv(&pivot).expect("nonzero pivot");
        for i in k + 1..n {
            if field.is_zero(&a[(i, k)]) {
                continue;
            }
            let factor = field.mul(&a[(i, k)], &pinv);
            for j in k + 1..n {
                let v = field.sub(&a[(i, j)], &field.mul(&factor, &a[(k, j)]));
                a[(i, j)] = v;
            }
        }
    }
    acc
}

/// Determinant of the submatrix on the given rows and columns.
pub fn minor<F: Field>(field: &F, m: &Matrix<F::Elem>, rows: &IndexSet, cols: &IndexSet) -> Result<F::Elem> {
    if rows.len() != cols.len() {
        return Err(Error::Shape(format!(
            "minor needs as many rows as columns, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    if rows.ground() != m.rows || cols.ground() != m.cols {
        return Err(Error::Shape(format!(
            "index sets over [{}]x[{}] for a {}x{} matrix",
            rows.ground(),
            cols.ground(),
            m.rows,
            m.cols
        )));
    }
    det(field, &m.submatrix(&rows.zero_based(), &cols.zero_based()))
}

/// Maximal minor on the columns `cols` (all rows).
pub fn maximal_minor<F: Field>(field: &F, m: &Matrix<F::Elem>, cols: &IndexSet) -> Result<F::Elem> {
    minor(field, m, &IndexSet::full(m.rows), cols)
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !field.is_zero(&a[(i, c)])) else {
            continue;
        };
        a.swap_rows(p, r);
        let pinv = field.inv(&a[(r, c)]).expect("nonzero pivot");
        for j in c..a.cols {
            a[(r, j)] = field.mul(&a[(r, j)], &pinv);
        }
        for i in 0..a.rows {
            if i == r || field.is_zero(&a[(i, c)]) {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..a.cols {
                let v = field.sub(&a[(i, j)], &field.mul(&factor, &a[(r, j)]));
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

/// Basis of the right kernel `{v : M v = 0}` as the rows of the result,
/// for `M` of full row rank `a < b`. The basis is the canonical one read off
/// the reduced echelon form: one row per free column `f`, with a 1 in
/// position `f`, zeros at the other free columns.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let (r, pivots) = rref(field, m);
    if pivots.len() != m.rows {
        return Err(Error::RankDeficient {
            expected: m.rows,
            found: pivots.len(),
        });
    }
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = zeros(field, free.len(), m.cols);
    for (k, &f) in free.iter().enumerate() {
        out[(k, f)] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            out[(k, p)] = field.neg(&r[(i, f)]);
        }
    }
    Ok(out)
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if !m.is_square() {
        return Err(Error::Shape(format!("inverse of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let (r, pivots) = rref(field, &m.hstack(&identity(field, n))?);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (n..2 * n).collect();
    Ok(r.submatrix(&rows, &cols))
}

/// Whether two row spaces coincide.
pub fn same_row_space<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let (ra, pa) = rref(field, a);
    let (rb, pb) = rref(field, b);
    if pa != pb {
        return false;
    }
    let k = pa.len();
    (0..k).all(|i| ra.row(i) == rb.row(i))
}

/// Uniformly random matrix with entries from [`Field::sample`].
pub fn random_matrix<F: Field, R: rand::Rng + ?Sized>(
    field: &F,
    rng: &mut R,
    rows: usize,
    cols: usize,
    height: u64,
) -> Matrix<F::Elem> {
    Matrix::from_fn(rows, cols, |_, _| field.sample(rng, height))
}

/// Random invertible square matrix (rejection sampling).
pub fn random_invertible<F: Field, R: rand::Rng + ?Sized>(
    field: &F,
    rng: &mut R,
    n: usize,
    height: u64,
) -> Matrix<F::Elem> {
    loop {
        let g = random_matrix(field, rng, n, n, height);
        if !field.is_zero(&field.determinant(&g)) {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Cofactor expansion along the first row; the independent oracle for
    /// determinants.
    fn cofactor_det<F: Field>(f: &F, m: &Matrix<F::Elem>) -> F::Elem {
        let n = m.rows();
        if n == 0 {
            return f.one();
        }
        let mut acc = f.zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let sub = cofactor_det(f, &m.submatrix(&rows, &cols));
            let term = f.mul(&f.mul(&f.sign(j), &m[(0, j)]), &sub);
            acc = f.add(&acc, &term);
        }
        acc
    }

    fn int_matrix<F: Field>(f: &F, rows: &[&[i64]]) -> Matrix<F::Elem> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_and_repeated_columns() {
        let q = Rationals;
        assert_eq!(det(&q, &identity(&q, 6)).unwrap(), q.one());
        let m = int_matrix(&q, &[&[1, 1, 2], &[3, 3, 5], &[-2, -2, 7]]);
        assert!(q.is_zero(&det(&q, &m).unwrap()));
        assert!(det(&q, &zeros(&q, 2, 3)).is_err());
    }

    #[test]
    fn random_5x5_over_fp_matches_cofactor_oracle() {
        let f = PrimeField::new(65521).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_matrix(&f, &mut rng, 5, 5, 0);
            assert_eq!(det(&f, &m).unwrap(), cofactor_det(&f, &m));
        }
    }

    #[test]
    fn bareiss_matches_cofactor_oracle_with_fractions() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = Matrix::from_fn(5, 5, |_, _| {
                let num = q.sample(&mut rng, 30);
                let den = q.sample_nonzero(&mut rng, 7);
                q.div(&num, &den).unwrap()
            });
            assert_eq!(det(&q, &m).unwrap(), cofactor_det(&q, &m));
        }
    }

    #[test]
    fn minors_of_identity() {
        let q = Rationals;
        let id = identity(&q, 4);
        let s = |m: &[usize]| IndexSet::new(4, m.to_vec()).unwrap();
        assert_eq!(minor(&q, &id, &s(&[1, 2]), &s(&[1, 2])).unwrap(), q.one());
        assert_eq!(minor(&q, &id, &s(&[1, 2]), &s(&[3, 4])).unwrap(), q.zero());
        assert!(minor(&q, &id, &s(&[1, 2]), &s(&[3])).is_err());
    }

    #[test]
    fn maximal_minor_of_3x7_matches_oracle() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&f, &mut rng, 3, 7, 0);
        let cols = IndexSet::new(7, vec![2, 5, 7]).unwrap();
        let expect = cofactor_det(&f, &m.select_columns(&[1, 4, 6]));
        assert_eq!(maximal_minor(&f, &m, &cols).unwrap(), expect);
    }

    #[test]
    fn rank_examples() {
        let q = Rationals;
        assert_eq!(rank(&q, &zeros(&q, 3, 4)), 0);
        let id3 = identity(&q, 3);
        assert_eq!(rank(&q, &id3.hstack(&id3).unwrap()), 3);
    }

    #[test]
    fn kernel_of_one_one() {
        let q = Rationals;
        let m = int_matrix(&q, &[&[1, 1]]);
        let k = kernel_basis(&q, &m).unwrap();
        assert!(same_row_space(&q, &k, &int_matrix(&q, &[&[1, -1]])));
        assert!(matches!(
            kernel_basis(&q, &int_matrix(&q, &[&[1, 1], &[2, 2]])),
            Err(Error::RankDeficient { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn kernel_of_standard_form_is_transpose_block() {
        // [Id | A] has kernel spanned by the rows of [A^t | -Id]
        let q = Rationals;
        let a = int_matrix(&q, &[&[2, -1, 4], &[0, 3, 1], &[5, 5, -2]]);
        let m = identity(&q, 3).hstack(&a).unwrap();
        let expected = a.transpose().hstack(&scale(&q, &q.from_i64(-1), &identity(&q, 3))).unwrap();
        assert!(same_row_space(&q, &kernel_basis(&q, &m).unwrap(), &expected));
    }

    #[test]
    fn random_full_rank_4x7_kernel_is_orthogonal() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_matrix(&q, &mut rng, 4, 7, 100);
        let b = kernel_basis(&q, &m).unwrap();
        assert_eq!((b.rows(), b.cols()), (3, 7));
        assert_eq!(rank(&q, &b), 3);
        assert!(is_zero_matrix(&q, &mul(&q, &m, &b.transpose()).unwrap()));
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = random_invertible(&f, &mut rng, 5, 0);
        let gi = inverse(&f, &g).unwrap();
        assert_eq!(mul(&f, &g, &gi).unwrap(), identity(&f, 5));
        assert_eq!(inverse(&f, &zeros(&f, 2, 2)), Err(Error::Singular));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn column_swap_negates_det(seed in any::<u64>(), n in 4usize..=6, a in 0usize..6, b in 0usize..6) {
            prop_assume!(a < n && b < n && a != b);
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, &mut rng, n, n, 0);
            let mut s = m.clone();
            s.swap_columns(a, b);
            prop_assert_eq!(det(&f, &s).unwrap(), f.neg(&det(&f, &m).unwrap()));
        }

        #[test]
        fn det_is_linear_in_a_column(seed in any::<u64>(), n in 2usize..=5) {
            let q = Rationals;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&q, &mut rng, n, n, 20);
            let extra = random_matrix(&q, &mut rng, n, 1, 20);
            let c = q.sample(&mut rng, 9);
            let mut sum = m.clone();
            let mut alt = m.clone();
            for i in 0..n {
                sum[(i, 0)] = q.add(&m[(i, 0)], &q.mul(&c, &extra[(i, 0)]));
                alt[(i, 0)] = extra[(i, 0)].clone();
            }
            let lhs = det(&q, &sum).unwrap();
            let rhs = q.add(&det(&q, &m).unwrap(), &q.mul(&c, &det(&q, &alt).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn rank_of_transpose(seed in any::<u64>(), r in 1usize..6, c in 1usize..8, k in 0usize..6) {
            let f = PrimeField::new(101).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // low-rank product plus noise-free structure
            let k = k.min(r).min(c);
            let m = mul(&f, &random_matrix(&f, &mut rng, r, k, 0), &random_matrix(&f, &mut rng, k, c, 0)).unwrap();
            prop_assert_eq!(rank(&f, &m), rank(&f, &m.transpose()));
            prop_assert!(rank(&f, &m) <= k);
        }

        #[test]
        fn kernel_rows_annihilate(seed in any::<u64>(), a in 1usize..5, extra in 1usize..5) {
            let f = PrimeField::default();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_matrix(&f, &mut rng, a, a + extra, 0);
            prop_assume!(rank(&f, &m) == a);
            let k = kernel_basis(&f, &m).unwrap();
            prop_assert_eq!(k.rows(), extra);
            prop_assert!(is_zero_matrix(&f, &mul(&f, &m, &k.transpose()).unwrap()));
        }
    }
}
