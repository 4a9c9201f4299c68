use std::fmt;

use rand::Rng;

use super::{Field, FieldSpec};
use crate::error::{Error, Result};

/// Largest prime below 2^16.
pub const DEFAULT_PRIME: u64 = 65521;

/// ℤ/pℤ for a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// A residue in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u64);

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p < 20_000 {
            log::warn!("small characteristic {p}: random vanishing tests lose power");
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> Residue {
        Residue(v.rem_euclid(self.p as i128) as u64)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = Residue;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }

    fn zero(&self) -> Residue {
        Residue(0)
    }

    fn one(&self) -> Residue {
        Residue(1 % self.p)
    }

    fn from_i64(&self, v: i64) -> Residue {
        self.reduce_i128(v as i128)
    }

    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        let s = a.0 + b.0;
        Residue(if s >= self.p { s - self.p } else { s })
    }

    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    fn neg(&self, a: &Residue) -> Residue {
        Residue(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64)
    }

    fn inv(&self, a: &Residue) -> Option<Residue> {
        if a.0 == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, a.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(t0))
    }

    fn is_zero(&self, a: &Residue) -> bool {
        a.0 == 0
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _height: u64) -> Residue {
        Residue(rng.random_range(0..self.p))
    }

    fn to_text(&self, a: &Residue) -> String {
        a.0.to_string()
    }

    fn parse(&self, s: &str) -> Result<Residue> {
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let n = self.parse(num)?;
            let d = self.parse(den)?;
            return self.div(&n, &d).ok_or_else(|| Error::ParseScalar(s.to_string()));
        }
        let v: i128 = t.parse().map_err(|_| Error::ParseScalar(s.to_string()))?;
        Ok(self.reduce_i128(v))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub(crate) fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
