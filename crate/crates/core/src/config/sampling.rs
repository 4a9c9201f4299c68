//! Seeded random configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sample_on_rnc, PointConfiguration};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

/// How many times a sampler redraws before reporting failure.
pub const MAX_ATTEMPTS: usize = 32;

/// Seed and coefficient height for a sampler. The same recipe over the same
/// field always produces the same sequence of configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleRecipe {
    pub seed: u64,
    /// Random rational coordinates are integers in `[-height, height]`.
    pub height: u64,
}

impl SampleRecipe {
    pub fn new(seed: u64) -> Self {
        SampleRecipe { seed, height: 100 }
    }
}

/// A seeded stream of random scalars, matrices and configurations.
#[derive(Debug, Clone)]
pub struct Sampler<F: Field> {
    field: F,
    rng: ChaCha8Rng,
    height: u64,
}

impl<F: Field> Sampler<F> {
    pub fn new(field: &F, recipe: SampleRecipe) -> Self {
        Sampler {
            field: field.clone(),
            rng: ChaCha8Rng::seed_from_u64(recipe.seed),
            height: recipe.height,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> F::Elem {
        self.field.sample(&mut self.rng, self.height)
    }

    pub fn nonzero_scalar(&mut self) -> F::Elem {
        self.field.sample_nonzero(&mut self.rng, self.height)
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix<F::Elem> {
        linalg::random_matrix(&self.field, &mut self.rng, rows, cols, self.height)
    }

    pub fn invertible(&mut self, n: usize) -> Matrix<F::Elem> {
        linalg::random_invertible(&self.field, &mut self.rng, n, self.height)
    }

    /// A random nonzero vector.
    pub fn vector(&mut self, len: usize) -> Vec<F::Elem> {
        loop {
            let v: Vec<F::Elem> = (0..len).map(|_| self.scalar()).collect();
            if v.iter().any(|x| !self.field.is_zero(x)) {
                return v;
            }
        }
    }

    /// `count` pairwise distinct affine parameters `[1 : s]`.
    pub fn distinct_params(&mut self, count: usize) -> Vec<(F::Elem, F::Elem)> {
        let mut seen: Vec<F::Elem> = Vec::with_capacity(count);
        while seen.len() < count {
            let s = self.scalar();
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen.into_iter().map(|s| (self.field.one(), s)).collect()
    }

    /// `n` independent uniformly random points of ℙ^d.
    pub fn generic(&mut self, d: usize, n: usize) -> PointConfiguration<F> {
        let columns = (0..n).map(|_| self.vector(d + 1)).collect();
        PointConfiguration::new(&self.field, d, columns).expect("nonzero columns")
    }

    /// `n` points on the rational normal curve `g(ν_d(ℙ¹))` for a random
    /// invertible `g`.
    pub fn rnc(&mut self, d: usize, n: usize) -> Result<PointConfiguration<F>> {
        let g = self.invertible(d + 1);
        let params = self.distinct_params(n);
        sample_on_rnc(&self.field, d, &params, &g)
    }

    /// `n` points on a random smooth conic of ℙ².
    pub fn conic(&mut self, n: usize) -> Result<PointConfiguration<F>> {
        self.rnc(2, n)
    }

    /// `n` random points of a random hyperplane of ℙ^d (a point of Y).
    pub fn degenerate(&mut self, d: usize, n: usize) -> PointConfiguration<F> {
        self.in_subspace(d, n, d)
    }

    /// `n` random points of a random `dim`-dimensional linear subspace
    /// (`dim ≤ d`); the subspace has full dimension with high probability.
    pub fn in_subspace(&mut self, d: usize, n: usize, dim: usize) -> PointConfiguration<F> {
        let basis = self.matrix(d + 1, dim);
        loop {
            let coeffs = self.matrix(dim, n);
            let coords = linalg::mul(&self.field, &basis, &coeffs).expect("shapes agree");
            if let Ok(p) = PointConfiguration::from_matrix(&self.field, coords) {
                return p;
            }
        }
    }

    /// Points on a union of lines of ℙ^d: `counts[l]` random points on the
    /// `l`-th random line.
    pub fn on_lines(&mut self, d: usize, counts: &[usize]) -> PointConfiguration<F> {
        let mut columns = Vec::new();
        for &c in counts {
            let a = self.vector(d + 1);
            let b = self.vector(d + 1);
            let mut produced = 0;
            while produced < c {
                let (s, t) = (self.scalar(), self.scalar());
                let v: Vec<F::Elem> = a
                    .iter()
                    .zip(&b)
                    .map(|(x, y)| self.field.add(&self.field.mul(&s, x), &self.field.mul(&t, y)))
                    .collect();
                if v.iter().any(|x| !self.field.is_zero(x)) {
                    columns.push(v);
                    produced += 1;
                }
            }
        }
        PointConfiguration::new(&self.field, d, columns).expect("nonzero columns")
    }

    /// `n` points of ℙ² split between two random lines (a nodal conic).
    pub fn two_lines(&mut self, n: usize) -> PointConfiguration<F> {
        let first = 1 + self.index(n.max(2) - 1);
        self.on_lines(2, &[first, n - first])
    }

    /// `n − 1` points on a line of ℙ² and one point off it.
    pub fn line_plus_point(&mut self, n: usize) -> PointConfiguration<F> {
        let line = self.on_lines(2, &[n - 1]);
        let base = line.rank();
        let mut columns = line.points();
        loop {
            columns.push(self.vector(3));
            let p = PointConfiguration::new(&self.field, 2, columns.clone()).expect("nonzero columns");
            if p.rank() > base {
                return p;
            }
            columns.pop();
        }
    }

    /// Repeats `draw` until `accept` holds, at most [`MAX_ATTEMPTS`] times.
    pub fn retry<T>(
        &mut self,
        what: &str,
        mut draw: impl FnMut(&mut Self) -> Result<T>,
        accept: impl Fn(&T) -> bool,
    ) -> Result<T> {
        let mut last = String::from("no attempt made");
        for attempt in 1..=MAX_ATTEMPTS {
            match draw(self) {
                Ok(v) if accept(&v) => {
                    if attempt > 1 {
                        log::debug!("{what}: accepted after {attempt} attempts");
                    }
                    return Ok(v);
                }
                Ok(_) => last = "sample rejected".into(),
                Err(e) => last = e.to_string(),
            }
        }
        log::warn!("{what}: giving up after {MAX_ATTEMPTS} attempts");
        Err(Error::SamplingFailed {
            attempts: MAX_ATTEMPTS,
            reason: format!("{what}: {last}"),
        })
    }

    /// A generic configuration that avoids the given locus, e.g. one for
    /// which some equation is nonzero.
    pub fn generic_where(
        &mut self,
        d: usize,
        n: usize,
        accept: impl Fn(&PointConfiguration<F>) -> bool,
    ) -> Result<PointConfiguration<F>> {
        self.retry("generic configuration", |s| Ok(s.generic(d, n)), accept)
    }
}
