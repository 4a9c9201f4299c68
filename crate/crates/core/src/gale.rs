//! Gale duality between `n` points of ℙ^d and `n` points of ℙ^{n−d−2}.
//!
//! For a full-rank `(d+1) × n` matrix `A`, a Gale dual is any full-rank
//! `(n−d−1) × n` matrix `B` with `A Bᵗ = 0`. The maximal minors of the two
//! are related by `m_I(A) = (−1)^{S_I + n−d−1} λ m_{I^c}(B)` for one nonzero
//! constant `λ` and every `(d+1)`-subset `I`.
//!
//! A configuration determines its dual only up to projective equivalence;
//! [`affine_gale`] returns the representative read off the reduced echelon
//! form of `A`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::MinorTable;
use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::IndexSet;
use crate::linalg::{self, Matrix};

/// Rows spanning the kernel of `A`, as an `(n−d−1) × n` matrix.
pub fn affine_gale<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.rows() >= a.cols() {
        return Err(Error::Shape(format!("a {}x{} matrix has no Gale dual", a.rows(), a.cols())));
    }
    linalg::kernel_basis(field, a)
}

/// `([Id | A̲], [A̲ᵗ | −Id])` with `[Id | A̲] = L⁻¹ A` for the leading square
/// block `L` of `A`. Columns are never permuted.
pub fn standard_gale_pair<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<(Matrix<F::Elem>, Matrix<F::Elem>)> {
    let (r, n) = (a.rows(), a.cols());
    if r >= n {
        return Err(Error::Shape(format!("a {r}x{n} matrix has no Gale dual")));
    }
    let leading: Vec<usize> = (0..r).collect();
    let block = a.select_columns(&leading);
    let inv = match linalg::inverse(field, &block) {
        Ok(inv) => inv,
        Err(Error::Singular) => {
            let (_, pivots) = linalg::rref(field, a);
            if pivots.len() < r {
                return Err(Error::RankDeficient {
                    expected: r,
                    found: pivots.len(),
                });
            }
            let witness = IndexSet::new(n, pivots.iter().map(|c| c + 1).collect())?;
            return Err(Error::SingularLeadingBlock {
                size: r,
                witness: witness.to_string(),
            });
        }
        Err(e) => return Err(e),
    };
    let a_std = linalg::mul(field, &inv, a)?;
    let rest: Vec<usize> = (r..n).collect();
    let under = a_std.submatrix(&(0..r).collect::<Vec<_>>(), &rest);
    let minus_id = linalg::scale(field, &field.from_i64(-1), &linalg::identity(field, n - r));
    let b_std = under.transpose().hstack(&minus_id)?;
    Ok((a_std, b_std))
}

/// Record of checking the minor identity for a pair `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaleDualityCertificate<E> {
    pub lambda: E,
    /// Index sets `I` checked: all of `C([n], d+1)`.
    pub checked_sets: usize,
    /// The `I` where the identity fails, in lexicographic order.
    pub failures: Vec<IndexSet>,
}

impl<E> GaleDualityCertificate<E> {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(−1)^{S_I + n−d−1} m_{I^c}(B)`, the right-hand side without `λ`.
fn signed_dual_minor<F: Field>(field: &F, tb: &MinorTable<F>, i: &IndexSet, shift: usize) -> F::Elem {
    field.mul(&field.sign(i.s_index() + shift), tb.get(&i.complement()))
}

/// Determines `λ` from the lexicographically first `I` with `m_I(A) ≠ 0`
/// and checks the identity on every `I`.
pub fn duality_certificate<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Result<GaleDualityCertificate<F::Elem>> {
    let n = a.cols();
    let r = a.rows();
    if b.cols() != n || r + b.rows() != n || r == 0 || b.rows() == 0 {
        return Err(Error::Shape(format!(
            "{}x{} and {}x{} matrices cannot be Gale dual",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !linalg::is_zero_matrix(field, &linalg::mul(field, a, &b.transpose())?) {
        return Err(Error::NotAGalePair("A Bᵗ is not zero".into()));
    }
    let ta = MinorTable::new(field, a)?;
    let tb = MinorTable::new(field, b)?;
    let shift = n - r;
    let sets: Vec<IndexSet> = IndexSet::subsets(n, r).collect();
    let first = sets
        .iter()
        .find(|i| !field.is_zero(ta.get(i)))
        .ok_or_else(|| Error::Internal("every maximal minor of A vanishes; A is not of full rank".into()))?;
    let rhs = signed_dual_minor(field, &tb, first, shift);
    let inv = field
        .inv(&rhs)
        .ok_or_else(|| Error::NotAGalePair(format!("m_{{{}}}(B) vanishes while m_{first}(A) does not", first.complement())))?;
    let lambda = field.mul(ta.get(first), &inv);
    let failures: Vec<IndexSet> = sets
        .par_iter()
        .filter(|i| *ta.get(i) != field.mul(&lambda, &signed_dual_minor(field, &tb, i, shift)))
        .cloned()
        .collect();
    Ok(GaleDualityCertificate {
        lambda,
        checked_sets: sets.len(),
        failures,
    })
}

/// The Gale transform of a strongly non-degenerate configuration, as `n`
/// points of ℙ^{n−d−2}.
pub fn gale_of_config<F: Field>(p: &PointConfiguration<F>) -> Result<PointConfiguration<F>> {
    if p.n() < p.d() + 2 {
        return Err(Error::Precondition(format!("{} points of ℙ^{} have no Gale transform", p.n(), p.d())));
    }
    if let Some(point) = p.strong_nondegeneracy_violation() {
        return Err(Error::NotStronglyNondegenerate { point });
    }
    let b = affine_gale(p.field(), p.coords())?;
    PointConfiguration::from_matrix(p.field(), b).map_err(|e| Error::Internal(format!("Gale transform has a zero column: {e}")))
}

/// All maximal minors, in lexicographic order of the column sets.
pub fn minor_vector<F: Field>(p: &PointConfiguration<F>) -> Result<Vec<F::Elem>> {
    let t = MinorTable::new(p.field(), p.coords())?;
    Ok(IndexSet::subsets(p.n(), p.d() + 1).map(|i| t.get(&i).clone()).collect())
}

/// The `c ≠ 0` with `a = c · b`, if the vectors are proportional and
/// nonzero.
pub fn proportionality<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Option<F::Elem> {
    if a.len() != b.len() {
        return None;
    }
    let k = b.iter().position(|x| !field.is_zero(x))?;
    let c = field.div(&a[k], &b[k])?;
    if field.is_zero(&c) {
        return None;
    }
    a.iter().zip(b).all(|(x, y)| *x == field.mul(&c, y)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{SampleRecipe, Sampler};
    use crate::field::{PrimeField, Rationals};

    fn ints(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        let q = Rationals;
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn dual_of_all_ones_augmentation() {
        let q = Rationals;
        let a = ints(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]);
        let b = affine_gale(&q, &a).unwrap();
        assert!(linalg::same_row_space(&q, &b, &ints(&[&[1, 1, 1, -1]])));
    }

    #[test]
    fn standard_pair_has_lambda_one() {
        let f = PrimeField::default();
        let mut s = Sampler::new(&f, SampleRecipe::new(1));
        for (d, n) in [(2, 6), (3, 7), (3, 8), (4, 8), (2, 8)] {
            let a = s.matrix(d + 1, n);
            let (a_std, b_std) = standard_gale_pair(&f, &a).unwrap();
            assert!(linalg::is_zero_matrix(&f, &linalg::mul(&f, &a_std, &b_std.transpose()).unwrap()));
            assert!(linalg::same_row_space(&f, &a, &a_std));
            let cert = duality_certificate(&f, &a_std, &b_std).unwrap();
            assert!(cert.holds());
            assert_eq!(cert.lambda, f.one());
            // already standard: unchanged
            let (again, _) = standard_gale_pair(&f, &a_std).unwrap();
            assert_eq!(again, a_std);
        }
    }

    #[test]
    fn standard_form_block_matches_kernel_formula() {
        let q = Rationals;
        let a = ints(&[&[1, 0, 0, 2, -1, 4], &[0, 1, 0, 0, 3, 1], &[0, 0, 1, 5, 5, -2]]);
        let (a_std, b_std) = standard_gale_pair(&q, &a).unwrap();
        assert_eq!(a_std, a);
        assert_eq!(b_std, ints(&[&[2, 0, 5, -1, 0, 0], &[-1, 3, 5, 0, -1, 0], &[4, 1, -2, 0, 0, -1]]));
        assert!(linalg::same_row_space(&q, &affine_gale(&q, &a).unwrap(), &b_std));
    }

    #[test]
    fn singular_leading_block_names_independent_columns() {
        let q = Rationals;
        let a = ints(&[&[1, 2, 0, 1], &[2, 4, 1, 0]]);
        match standard_gale_pair(&q, &a) {
            Err(Error::SingularLeadingBlock { size: 2, witness }) => assert_eq!(witness, "{1 3}"),
            other => panic!("{other:?}"),
        }
        let low = ints(&[&[1, 2, 3], &[2, 4, 6]]);
        assert!(matches!(standard_gale_pair(&q, &low), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn certificate_on_random_pairs() {
        let q = Rationals;
        let mut s = Sampler::new(&q, SampleRecipe::new(2));
        let a = s.matrix(4, 7);
        let b = affine_gale(&q, &a).unwrap();
        let cert = duality_certificate(&q, &a, &b).unwrap();
        assert_eq!(cert.checked_sets, 35);
        assert!(cert.holds());
        // rescaling B changes λ by c^{-(n-d-1)} and keeps the identity
        let c = q.from_i64(3);
        let scaled = duality_certificate(&q, &a, &linalg::scale(&q, &c, &b)).unwrap();
        assert!(scaled.holds());
        assert_eq!(scaled.lambda, q.div(&cert.lambda, &q.pow(&c, 3)).unwrap());
    }

    #[test]
    fn non_pairs_are_rejected() {
        let q = Rationals;
        let a = ints(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(matches!(duality_certificate(&q, &a, &ints(&[&[1, 1, 1]])), Err(Error::NotAGalePair(_))));
        assert!(matches!(duality_certificate(&q, &a, &ints(&[&[1, 1]])), Err(Error::Shape(_))));
    }

    #[test]
    fn gale_transform_requires_strong_nondegeneracy() {
        let q = Rationals;
        let p = PointConfiguration::from_matrix(&q, ints(&[&[1, 0, 1, 0], &[0, 1, 1, 0], &[0, 0, 0, 1]])).unwrap();
        assert_eq!(gale_of_config(&p).unwrap_err(), Error::NotStronglyNondegenerate { point: 4 });
    }

    #[test]
    fn double_gale_and_invariance() {
        let f = PrimeField::default();
        let mut s = Sampler::new(&f, SampleRecipe::new(3));
        for (d, n) in [(2, 6), (3, 7), (3, 8), (4, 8), (2, 8)] {
            let p = s.generic(d, n);
            let g = gale_of_config(&p).unwrap();
            assert_eq!((g.d(), g.n()), (n - d - 2, n));
            assert!(g.is_strongly_nondegenerate());
            let gg = gale_of_config(&g).unwrap();
            assert!(proportionality(&f, &minor_vector(&gg).unwrap(), &minor_vector(&p).unwrap()).is_some());
            let moved = p.transform(&s.invertible(d + 1)).unwrap();
            let gm = gale_of_config(&moved).unwrap();
            assert!(proportionality(&f, &minor_vector(&gm).unwrap(), &minor_vector(&g).unwrap()).is_some());
        }
    }

    #[test]
    fn proportionality_detects_mismatch() {
        let f = PrimeField::default();
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(proportionality(&f, &v(&[2, 4, 0]), &v(&[1, 2, 0])), Some(f.from_i64(2)));
        assert_eq!(proportionality(&f, &v(&[2, 4, 1]), &v(&[1, 2, 0])), None);
        assert_eq!(proportionality(&f, &v(&[0, 0]), &v(&[1, 2])), None);
        assert_eq!(proportionality(&f, &v(&[0, 0]), &v(&[0, 0])), None);
    }
}
