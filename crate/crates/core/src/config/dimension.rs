//! Dimension of the closure of the space of `n` points on rational normal
//! curves, from the exact rank of a Jacobian at a random point.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Jet, JetArith};
use crate::linalg::{self, Matrix};

/// `d² + 2d + n − 3`.
pub fn expected_dimension(d: usize, n: usize) -> usize {
    d * d + 2 * d + n - 3
}

/// Rank of the Jacobian of
/// `(g, [t₀ᵢ : t₁ᵢ]) ↦ (g · ν_d(tᵢ))ᵢ ∈ (ℙ^d)^n`
/// at a random point, with each output point written in the affine chart
/// of its first nonzero coordinate. The variables are the `(d+1)²` entries
/// of `g` and the `2n` homogeneous parameters. Scaling `g`, scaling each
/// parameter pair and reparametrizing ℙ¹ all lie in the kernel, so the rank
/// is the dimension of the image itself.
///
/// A draw where some column of `g` vanishes identically or some point lands
/// on zero is redrawn from a derived seed.
pub fn dimension_estimate<F: Field>(field: &F, d: usize, n: usize, seed: u64) -> Result<usize> {
    if d == 0 {
        return Err(Error::Precondition("ambient dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=super::MAX_ATTEMPTS {
        if let Some(j) = jacobian(field, d, n, &mut rng) {
            if attempt > 1 {
                log::debug!("dimension estimate: usable point after {attempt} draws");
            }
            return Ok(linalg::rank(field, &j));
        }
    }
    Err(Error::SamplingFailed {
        attempts: super::MAX_ATTEMPTS,
        reason: "no random point with all images in an affine chart".into(),
    })
}

fn jacobian<F: Field>(field: &F, d: usize, n: usize, rng: &mut ChaCha8Rng) -> Option<Matrix<F::Elem>> {
    let m = d + 1;
    let nvars = m * m + 2 * n;
    let jets = JetArith::new(field, nvars);
    let g: Vec<Jet<F::Elem>> = (0..m * m).map(|k| jets.variable(k, field.sample(rng, 100))).collect();
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n * d);
    for i in 0..n {
        let t0 = jets.variable(m * m + 2 * i, field.sample(rng, 100));
        let t1 = jets.variable(m * m + 2 * i + 1, field.sample(rng, 100));
        let nu: Vec<Jet<F::Elem>> = (0..m)
            .map(|k| jets.mul(&jets.pow(&t0, (d - k) as u32), &jets.pow(&t1, k as u32)))
            .collect();
        let x: Vec<Jet<F::Elem>> = (0..m)
            .map(|r| {
                (0..m).fold(jets.constant(field.zero()), |acc, c| jets.add(&acc, &jets.mul(&g[r * m + c], &nu[c])))
            })
            .collect();
        let chart = x.iter().position(|v| !field.is_zero(&v.value))?;
        for (r, xr) in x.iter().enumerate() {
            if r != chart {
                rows.push(jets.div(xr, &x[chart])?.partials);
            }
        }
    }
    Some(Matrix::from_rows(rows).expect("uniform row length"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn plane_and_space_values() {
        let f = PrimeField::default();
        assert_eq!(dimension_estimate(&f, 2, 6, 1).unwrap(), 11);
        assert_eq!(dimension_estimate(&f, 3, 7, 1).unwrap(), 19);
    }

    #[test]
    fn lines_fill_their_product() {
        let f = PrimeField::default();
        for n in 3..7 {
            assert_eq!(dimension_estimate(&f, 1, n, 2).unwrap(), n);
        }
    }

    #[test]
    fn rational_run_agrees() {
        assert_eq!(dimension_estimate(&Rationals, 2, 7, 3).unwrap(), 12);
    }

    #[test]
    fn few_points_are_unconstrained() {
        // with n ≤ d + 3 the points are arbitrary
        let f = PrimeField::default();
        assert_eq!(dimension_estimate(&f, 3, 5, 4).unwrap(), 15);
        assert_eq!(dimension_estimate(&f, 2, 4, 4).unwrap(), 8);
    }
}
