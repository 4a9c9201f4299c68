//! Point configurations in ℙ^d and the ways of producing them.

mod dimension;
mod json;
mod quasi;
mod sampling;

pub use dimension::{dimension_estimate, expected_dimension};
pub use json::{AnyConfiguration, ConfigDocument, SCHEMA};
pub use quasi::{sample_quasi_veronese_chain, ComponentShape, CurveComponent, NodeChoice, QuasiVeroneseDescriptor};
pub use sampling::{SampleRecipe, Sampler, MAX_ATTEMPTS};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::IndexSet;
use crate::linalg::{self, Matrix};

/// `n` points of ℙ^d, stored as the columns of a `(d+1) × n` matrix.
///
/// A configuration is a choice of representatives; two configurations are
/// the same point of (ℙ^d)^n when [`PointConfiguration::same_points`] holds.
#[derive(Debug, Clone)]
pub struct PointConfiguration<F: Field> {
    field: F,
    d: usize,
    coords: Matrix<F::Elem>,
}

/// Validates and packages `n` columns of length `d + 1`.
pub fn make_config<F: Field>(field: &F, d: usize, n: usize, columns: Vec<Vec<F::Elem>>) -> Result<PointConfiguration<F>> {
    if columns.len() != n {
        return Err(Error::Shape(format!("expected {n} columns, got {}", columns.len())));
    }
    PointConfiguration::new(field, d, columns)
}

impl<F: Field> PointConfiguration<F> {
    pub fn new(field: &F, d: usize, columns: Vec<Vec<F::Elem>>) -> Result<Self> {
        let coords = Matrix::from_columns(d + 1, &columns)?;
        PointConfiguration::from_matrix(field, coords)
    }

    /// Takes the columns of `coords` as the points; `d = rows − 1`.
    pub fn from_matrix(field: &F, coords: Matrix<F::Elem>) -> Result<Self> {
        if coords.rows() == 0 {
            return Err(Error::Shape("points need at least one coordinate".into()));
        }
        for j in 0..coords.cols() {
            if (0..coords.rows()).all(|i| field.is_zero(&coords[(i, j)])) {
                return Err(Error::DegeneratePoint { index: j + 1 });
            }
        }
        Ok(PointConfiguration {
            field: field.clone(),
            d: coords.rows() - 1,
            coords,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.coords.cols()
    }

    pub fn coords(&self) -> &Matrix<F::Elem> {
        &self.coords
    }

    /// Coordinates of the `i`-th point (0-based).
    pub fn point(&self, i: usize) -> Vec<F::Elem> {
        self.coords.column(i)
    }

    pub fn points(&self) -> Vec<Vec<F::Elem>> {
        self.coords.columns()
    }

    /// The points indexed by `I`, in order.
    pub fn restrict(&self, indices: &IndexSet) -> Result<Self> {
        if indices.ground() != self.n() {
            return Err(Error::Shape(format!(
                "index set over [{}] for {} points",
                indices.ground(),
                self.n()
            )));
        }
        Ok(PointConfiguration {
            field: self.field.clone(),
            d: self.d,
            coords: self.coords.select_columns(&indices.zero_based()),
        })
    }

    /// `g · p` for a square matrix `g` of size `d + 1`.
    pub fn transform(&self, g: &Matrix<F::Elem>) -> Result<Self> {
        if !g.is_square() || g.rows() != self.d + 1 {
            return Err(Error::Shape(format!("transform must be {0}x{0}", self.d + 1)));
        }
        if self.field.is_zero(&linalg::det(&self.field, g)?) {
            return Err(Error::Singular);
        }
        Ok(PointConfiguration {
            field: self.field.clone(),
            d: self.d,
            coords: linalg::mul(&self.field, g, &self.coords)?,
        })
    }

    /// Multiplies column `j` by `scales[j]`; every scale must be nonzero.
    pub fn rescale(&self, scales: &[F::Elem]) -> Result<Self> {
        if scales.len() != self.n() {
            return Err(Error::Shape(format!("{} scales for {} points", scales.len(), self.n())));
        }
        let f = &self.field;
        if let Some(j) = scales.iter().position(|s| f.is_zero(s)) {
            return Err(Error::DegeneratePoint { index: j + 1 });
        }
        let coords = Matrix::from_fn(self.d + 1, self.n(), |i, j| f.mul(&self.coords[(i, j)], &scales[j]));
        Ok(PointConfiguration {
            field: f.clone(),
            d: self.d,
            coords,
        })
    }

    /// Reorders the points: the `j`-th new point is old point `order[j]`
    /// (0-based).
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n()];
        if order.len() != self.n() || order.iter().any(|&i| i >= self.n() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Shape(format!("{order:?} is not a permutation of {} points", self.n())));
        }
        Ok(PointConfiguration {
            field: self.field.clone(),
            d: self.d,
            coords: self.coords.select_columns(order),
        })
    }

    /// Each column scaled so its first nonzero coordinate is 1.
    pub fn normalized(&self) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut m = self.coords.clone();
        for j in 0..m.cols() {
            let lead = (0..m.rows())
                .map(|i| m[(i, j)].clone())
                .find(|x| !f.is_zero(x))
                .expect("columns are nonzero");
            let inv = f.inv(&lead).expect("nonzero");
            for i in 0..m.rows() {
                m[(i, j)] = f.mul(&m[(i, j)], &inv);
            }
        }
        m
    }

    /// Equality as points of (ℙ^d)^n.
    pub fn same_points(&self, other: &Self) -> bool {
        self.d == other.d && self.n() == other.n() && self.normalized() == other.normalized()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, &self.coords)
    }

    /// Whether all points lie on a hyperplane.
    pub fn is_degenerate(&self) -> bool {
        self.rank() <= self.d
    }

    /// First point (1-based) whose removal leaves the others on a
    /// hyperplane, if any.
    pub fn strong_nondegeneracy_violation(&self) -> Option<usize> {
        (0..self.n()).find_map(|skip| {
            let keep: Vec<usize> = (0..self.n()).filter(|&j| j != skip).collect();
            let rest = self.coords.select_columns(&keep);
            (linalg::rank(&self.field, &rest) <= self.d).then_some(skip + 1)
        })
    }

    /// No hyperplane contains `n − 1` of the points.
    pub fn is_strongly_nondegenerate(&self) -> bool {
        self.strong_nondegeneracy_violation().is_none()
    }

    /// The maximal minor `|J|` on the columns `J`.
    pub fn bracket(&self, cols: &IndexSet) -> Result<F::Elem> {
        linalg::maximal_minor(&self.field, &self.coords, cols)
    }
}

/// `(t₀^d, t₀^{d−1} t₁, …, t₁^d)`.
pub fn rnc_point<F: Field>(field: &F, d: usize, t: &(F::Elem, F::Elem)) -> Result<Vec<F::Elem>> {
    let (t0, t1) = t;
    if field.is_zero(t0) && field.is_zero(t1) {
        return Err(Error::Precondition("parameter [0:0] is not a point of the line".into()));
    }
    Ok((0..=d)
        .map(|k| field.mul(&field.pow(t0, (d - k) as u32), &field.pow(t1, k as u32)))
        .collect())
}

/// The points `g · ν_d(tᵢ)` on the rational normal curve `g(ν_d(ℙ¹))`.
pub fn sample_on_rnc<F: Field>(
    field: &F,
    d: usize,
    params: &[(F::Elem, F::Elem)],
    g: &Matrix<F::Elem>,
) -> Result<PointConfiguration<F>> {
    for (a, s) in params.iter().enumerate() {
        for (b, t) in params.iter().enumerate().skip(a + 1) {
            let cross = field.sub(&field.mul(&s.0, &t.1), &field.mul(&s.1, &t.0));
            if field.is_zero(&cross) {
                return Err(Error::DuplicatePoint { first: a + 1, second: b + 1 });
            }
        }
    }
    let columns = params.iter().map(|t| rnc_point(field, d, t)).collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(field, d, columns)?.transform(g)
}
