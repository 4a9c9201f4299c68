//! Polynomials in the maximal minors ("brackets") `|J|` of a matrix.
//!
//! A [`BracketPolynomial`] over ground set `[n]` with width `w` is an integer
//! combination of products of brackets `|J|`, `J ⊆ [n]`, `|J| = w`. Evaluated
//! on a `w × n` matrix, `|J|` is the minor on the columns `J`.
//!
//! Text form: one or more terms, each a sign, an optional positive integer
//! coefficient and one or more bars, e.g. `+|1 2 4 7||1 3 5 7| -2|1 2 3 7||4 5 6 7|`.
//! Inside a bar, indices are separated by spaces; a bar without spaces is
//! read digit by digit (`|4567|`) when the ground set has at most 9 elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::{binomial, IndexSet};
use crate::linalg::{self, Matrix};

/// One product of brackets with its integer coefficient. Factors are kept
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub factors: Vec<IndexSet>,
    pub coeff: i64,
}

/// An integer polynomial in brackets, in canonical form: every factor is an
/// increasing index set, the factors of a term are sorted, terms are sorted
/// by their factor lists, and no two terms share a factor list or have
/// coefficient zero. Two polynomials are equal as polynomials in the bracket
/// symbols exactly when they are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketPolynomial {
    ground: usize,
    width: usize,
    terms: Vec<Term>,
}

impl BracketPolynomial {
    /// Builds a polynomial from terms whose factors are arbitrary index
    /// lists. A factor listed out of order picks up the sign of the sorting
    /// permutation; a factor with a repeated index is zero.
    pub fn from_terms(ground: usize, width: usize, terms: Vec<(i64, Vec<Vec<usize>>)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<IndexSet>, i64> = BTreeMap::new();
        for (coeff, factors) in terms {
            let mut sign = coeff;
            let mut sets = Vec::with_capacity(factors.len());
            let mut vanishes = false;
            for f in factors {
                if f.len() != width {
                    return Err(Error::Shape(format!("bracket {f:?} has width {}, expected {width}", f.len())));
                }
                match IndexSet::sorted_with_parity(ground, f)? {
                    Some((set, odd)) => {
                        if odd {
                            sign = -sign;
                        }
                        sets.push(set);
                    }
                    None => vanishes = true,
                }
            }
            if vanishes {
                continue;
            }
            sets.sort();
            let slot = merged.entry(sets).or_insert(0);
            *slot = slot
                .checked_add(sign)
                .ok_or_else(|| Error::Internal("bracket coefficient overflow".into()))?;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(factors, coeff)| Term { factors, coeff })
            .collect();
        Ok(BracketPolynomial { ground, width, terms })
    }

    pub fn zero(ground: usize, width: usize) -> Self {
        BracketPolynomial {
            ground,
            width,
            terms: Vec::new(),
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn rebuild(&self, ground: usize, width: usize, f: impl Fn(&Term) -> (i64, Vec<Vec<usize>>)) -> Result<Self> {
        BracketPolynomial::from_terms(ground, width, self.terms.iter().map(f).collect())
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> Self {
        self.rebuild(self.ground, self.width, |t| (c * t.coeff, t.factors.iter().map(|s| s.members().to_vec()).collect()))
            .expect("same shape")
    }

    /// Sends index `k` to `map[k − 1]` in a new ground set of size
    /// `new_ground`. The map must be injective; it need not be increasing.
    pub fn relabel_by(&self, map: &[usize], new_ground: usize) -> Result<Self> {
        if map.len() != self.ground {
            return Err(Error::Shape(format!("relabeling map has {} entries, ground is {}", map.len(), self.ground)));
        }
        let mut sorted = map.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("relabeling map {map:?} is not injective")));
        }
        self.rebuild(new_ground, self.width, |t| {
            (t.coeff, t.factors.iter().map(|s| s.members().iter().map(|&k| map[k - 1]).collect()).collect())
        })
    }

    /// Pulls back along the increasing inclusion `[|I|] → I ⊆ [m]`:
    /// index `k` becomes the `k`-th element of `I`.
    pub fn relabel(&self, i: &IndexSet) -> Result<Self> {
        if i.len() != self.ground {
            return Err(Error::Shape(format!("relabeling by {} elements, ground is {}", i.len(), self.ground)));
        }
        self.relabel_by(i.members(), i.ground())
    }

    /// Replaces each bracket `|J|` by `(−1)^{S_J + n − w} |J^c|`, where `n`
    /// is the ground size and `w` the width.
    pub fn dualize(&self) -> Result<Self> {
        if self.width >= self.ground {
            return Err(Error::Shape(format!(
                "cannot dualize width {} over ground {}",
                self.width, self.ground
            )));
        }
        let shift = self.ground - self.width;
        self.rebuild(self.ground, shift, |t| {
            let exponent: usize = t.factors.iter().map(|s| s.s_index() + shift).sum();
            let sign = if exponent.is_multiple_of(2) { 1 } else { -1 };
            (sign * t.coeff, t.factors.iter().map(|s| s.complement().members().to_vec()).collect())
        })
    }

    /// For each ground index, its degree in each term; all terms of a
    /// homogeneous polynomial share it.
    pub fn multidegree(&self) -> Option<Vec<usize>> {
        let degrees: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|t| {
                let mut deg = vec![0; self.ground];
                for s in &t.factors {
                    for &k in s.members() {
                        deg[k - 1] += 1;
                    }
                }
                deg
            })
            .collect();
        let first = degrees.first()?.clone();
        degrees.iter().all(|d| *d == first).then_some(first)
    }

    /// Evaluates on a configuration of `ground` points in ℙ^{width−1}.
    pub fn eval<F: Field>(&self, p: &PointConfiguration<F>) -> Result<F::Elem> {
        self.eval_with(&MinorTable::new(p.field(), p.coords())?)
    }

    pub fn eval_with<F: Field>(&self, table: &MinorTable<F>) -> Result<F::Elem> {
        if table.width != self.width || table.ground != self.ground {
            return Err(Error::Shape(format!(
                "polynomial in width-{} brackets over [{}] evaluated on a {}x{} matrix",
                self.width, self.ground, table.width, table.ground
            )));
        }
        let f = &table.field;
        Ok(self.terms.iter().fold(f.zero(), |acc, t| {
            let prod = t.factors.iter().fold(f.from_i64(t.coeff), |p, s| f.mul(&p, table.get(s)));
            f.add(&acc, &prod)
        }))
    }

    /// Parses the text form over the ground set `[ground]`.
    pub fn parse(ground: usize, text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Precondition(format!("bracket text {text:?}: {msg}"));
        let mut terms: Vec<(i64, Vec<Vec<usize>>)> = Vec::new();
        let mut width = None;
        let mut chars = text.trim().chars().peekable();
        while chars.peek().is_some() {
            while chars.peek().is_some_and(|c| c.is_whitespace()) {
                chars.next();
            }
            if chars.peek().is_none() {
                break;
            }
            let sign = match chars.next() {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Err(bad("each term starts with + or -")),
            };
            let mut digits = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit() || c.is_whitespace()) {
                let c = chars.next().unwrap();
                if c.is_ascii_digit() {
                    digits.push(c);
                }
            }
            let coeff: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad("coefficient out of range"))?
            };
            let mut factors = Vec::new();
            while chars.peek() == Some(&'|') {
                chars.next();
                let body: String = chars.by_ref().take_while(|&c| c != '|').collect();
                let members = parse_bar(ground, body.trim()).ok_or_else(|| bad("malformed bar"))?;
                if *width.get_or_insert(members.len()) != members.len() {
                    return Err(bad("brackets of different widths"));
                }
                factors.push(members);
                while chars.peek().is_some_and(|c| c.is_whitespace()) {
                    chars.next();
                }
            }
            if factors.is_empty() {
                return Err(bad("term without brackets"));
            }
            terms.push((sign * coeff, factors));
        }
        let width = width.ok_or_else(|| bad("no terms"))?;
        BracketPolynomial::from_terms(ground, width, terms)
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            ground: self.ground,
            width: self.width,
            terms: self
                .terms
                .iter()
                .map(|t| TermJson {
                    coeff: t.coeff,
                    factors: t.factors.iter().map(|s| s.members().to_vec()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &PolynomialJson) -> Result<Self> {
        BracketPolynomial::from_terms(
            doc.ground,
            doc.width,
            doc.terms.iter().map(|t| (t.coeff, t.factors.clone())).collect(),
        )
    }
}

fn parse_bar(ground: usize, body: &str) -> Option<Vec<usize>> {
    if body.is_empty() {
        return None;
    }
    if body.contains(char::is_whitespace) {
        return body.split_whitespace().map(|t| t.parse().ok()).collect();
    }
    if ground <= 9 {
        return body.chars().map(|c| c.to_digit(10).map(|v| v as usize)).collect();
    }
    body.parse().ok().map(|v| vec![v])
}

impl fmt::Display for BracketPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", if t.coeff < 0 { '-' } else { '+' })?;
            if t.coeff.abs() != 1 {
                write!(f, "{}", t.coeff.abs())?;
            }
            for s in &t.factors {
                write!(f, "|")?;
                for (k, m) in s.members().iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "|")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: i64,
    pub factors: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub ground: usize,
    pub width: usize,
    pub terms: Vec<TermJson>,
}

/// All maximal minors of a `w × n` matrix, indexed by colex rank.
#[derive(Debug, Clone)]
pub struct MinorTable<F: Field> {
    field: F,
    width: usize,
    ground: usize,
    minors: Vec<F::Elem>,
}

impl<F: Field> MinorTable<F> {
    pub fn new(field: &F, m: &Matrix<F::Elem>) -> Result<Self> {
        let (width, ground) = (m.rows(), m.cols());
        if width > ground {
            return Err(Error::Shape(format!("{width}x{ground} matrix has no maximal minors")));
        }
        let mut minors = vec![field.zero(); binomial(ground, width)];
        for s in IndexSet::subsets(ground, width) {
            minors[s.colex_rank()] = linalg::det(field, &m.select_columns(&s.zero_based()))?;
        }
        Ok(MinorTable {
            field: field.clone(),
            width,
            ground,
            minors,
        })
    }

    pub fn get(&self, cols: &IndexSet) -> &F::Elem {
        &self.minors[cols.colex_rank()]
    }

    /// Whether every maximal minor vanishes, i.e. the columns do not span.
    pub fn all_zero(&self) -> bool {
        self.minors.iter().all(|x| self.field.is_zero(x))
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}
