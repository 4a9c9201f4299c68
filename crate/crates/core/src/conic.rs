//! Equations for `n` points of ℙ² lying on a conic.
//!
//! Six points lie on a (possibly singular) conic exactly when their images
//! under the quadratic Veronese map are linearly dependent, that is when
//! the 6×6 determinant φ of those images vanishes. For `n > 6` points the
//! equations are the pullbacks `φ_I`, one for every six-element `I ⊆ [n]`.

use rayon::prelude::*;

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::IndexSet;
use crate::linalg::{self, Matrix};
use crate::transversal::Hypergraph;

/// `[z₀² : z₁² : z₂² : z₀z₁ : z₀z₂ : z₁z₂]`, in exactly this order.
pub fn veronese_lift<F: Field>(field: &F, pt: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if pt.len() != 3 {
        return Err(Error::Shape(format!("a point of the plane has 3 coordinates, got {}", pt.len())));
    }
    if pt.iter().all(|x| field.is_zero(x)) {
        return Err(Error::Precondition("the zero vector is not a point".into()));
    }
    let m = |a: usize, b: usize| field.mul(&pt[a], &pt[b]);
    Ok(vec![m(0, 0), m(1, 1), m(2, 2), m(0, 1), m(0, 2), m(1, 2)])
}

fn six_points<F: Field>(p: &PointConfiguration<F>) -> Result<()> {
    if p.d() != 2 || p.n() != 6 {
        return Err(Error::Shape(format!("φ needs six points of ℙ², got {} points of ℙ^{}", p.n(), p.d())));
    }
    Ok(())
}

/// Determinant of the matrix whose columns are the Veronese lifts of the
/// six points.
pub fn phi_det<F: Field>(p: &PointConfiguration<F>) -> Result<F::Elem> {
    six_points(p)?;
    let f = p.field();
    let lifts = p.points().iter().map(|c| veronese_lift(f, c)).collect::<Result<Vec<_>>>()?;
    linalg::det(f, &Matrix::from_columns(6, &lifts)?)
}

/// φ as a polynomial in the 3×3 minors `|ijk|` of the six points:
/// `|124||135||236||456| − |123||145||246||356|`.
///
/// The classical way of writing this identity has the two terms the other
/// way round; with the monomial order of [`veronese_lift`] the determinant
/// equals the expression above, i.e. minus the classical one.
pub fn phi_bracket<F: Field>(p: &PointConfiguration<F>) -> Result<F::Elem> {
    six_points(p)?;
    let f = p.field();
    let b = |m: [usize; 3]| p.bracket(&IndexSet::new(6, m.to_vec()).expect("valid triple"));
    let product = |ts: [[usize; 3]; 4]| -> Result<F::Elem> {
        ts.iter().try_fold(f.one(), |acc, &t| Ok(f.mul(&acc, &b(t)?)))
    };
    let plus = product([[1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6]])?;
    let minus = product([[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]])?;
    Ok(f.sub(&plus, &minus))
}

/// `φ_I`: φ of the six points indexed by `I`.
pub fn phi_pullback_eval<F: Field>(p: &PointConfiguration<F>, i: &IndexSet) -> Result<F::Elem> {
    if i.len() != 6 {
        return Err(Error::Shape(format!("φ_I needs |I| = 6, got {i}")));
    }
    phi_det(&p.restrict(i)?)
}

/// Outcome of evaluating a set of `φ_I` on a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicEquationReport<E> {
    pub all_vanish: bool,
    /// Number of equations evaluated.
    pub checked: usize,
    /// The `I` with `φ_I ≠ 0`, in lexicographic order.
    pub nonvanishing_sets: Vec<IndexSet>,
    /// Every evaluated `(I, φ_I)`, when requested.
    pub values: Option<Vec<(IndexSet, E)>>,
}

impl<E> ConicEquationReport<E> {
    /// The lexicographically first nonvanishing `I`.
    pub fn witness(&self) -> Option<&IndexSet> {
        self.nonvanishing_sets.first()
    }
}

fn evaluate<F: Field>(
    p: &PointConfiguration<F>,
    sets: Vec<IndexSet>,
    keep_values: bool,
) -> Result<ConicEquationReport<F::Elem>> {
    if p.d() != 2 {
        return Err(Error::Shape(format!("conic equations need points of ℙ², got ℙ^{}", p.d())));
    }
    let values: Vec<(IndexSet, F::Elem)> = sets
        .into_par_iter()
        .map(|i| phi_pullback_eval(p, &i).map(|v| (i, v)))
        .collect::<Result<Vec<_>>>()?;
    let f = p.field();
    let nonvanishing_sets: Vec<IndexSet> = values.iter().filter(|(_, v)| !f.is_zero(v)).map(|(i, _)| i.clone()).collect();
    Ok(ConicEquationReport {
        all_vanish: nonvanishing_sets.is_empty(),
        checked: values.len(),
        nonvanishing_sets,
        values: keep_values.then_some(values),
    })
}

/// Evaluates every `φ_I`. They all vanish exactly when the configuration is
/// a limit of points on smooth conics. With fewer than six points there is
/// nothing to check.
pub fn w2n_membership<F: Field>(p: &PointConfiguration<F>, keep_values: bool) -> Result<ConicEquationReport<F::Elem>> {
    evaluate(p, IndexSet::subsets(p.n(), 6).collect(), keep_values)
}

/// Evaluates only the `φ_H` for the edges `H` of a 6-uniform hypergraph.
pub fn v2n_subset_membership<F: Field>(
    p: &PointConfiguration<F>,
    t: &Hypergraph,
    keep_values: bool,
) -> Result<ConicEquationReport<F::Elem>> {
    if t.k() != 6 || t.n() != p.n() {
        return Err(Error::InvalidHypergraph(format!(
            "expected 6-subsets of [{}], got {}-subsets of [{}]",
            p.n(),
            t.k(),
            t.n()
        )));
    }
    evaluate(p, t.edges().to_vec(), keep_values)
}
