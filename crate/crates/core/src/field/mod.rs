//! Exact scalar fields.
//!
//! A [`Field`] is a small context object that performs arithmetic on its
//! element type. The two concrete fields are [`Rationals`] (arbitrary
//! precision ℚ) and [`PrimeField`] (ℤ/pℤ for a runtime prime `p`). Every
//! equality test in the crate is exact; there is no tolerance anywhere.

mod jet;
mod prime;
mod rational;

pub use jet::{Jet, JetArith};
pub use prime::{PrimeField, Residue, DEFAULT_PRIME};
pub use rational::Rationals;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Runtime description of a field, as it appears in JSON documents:
/// `"Q"` or `{"Fp": p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::PrimeField(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("fp:"))
            .ok_or_else(|| Error::InvalidField(format!("expected Q or Fp:<prime>, got {s:?}")))?;
        let p: u64 = rest
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad characteristic {rest:?}")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::PrimeField(p))
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform random element. Over ℚ this is an integer in `[-height, height]`;
    /// prime fields ignore `height` and draw a uniform residue.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Self::Elem;

    fn to_text(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Determinant of a square matrix. Callers go through [`linalg::det`],
    /// which checks the shape.
    fn determinant(&self, m: &Matrix<Self::Elem>) -> Self::Elem {
        linalg::det_by_elimination(self, m)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// `(-1)^k`
    fn sign(&self, k: usize) -> Self::Elem {
        if k.is_multiple_of(2) {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Random element that is not zero.
    fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> Self::Elem {
        loop {
            let x = self.sample(rng, height);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}
