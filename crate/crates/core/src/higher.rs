//! Equations for `n` points of ℙ^d, `d ≥ 3`, lying on rational normal
//! curves or their degenerations.
//!
//! For `n = d + 4` the Gale transform lands in `(ℙ²)^{d+4}`, where the
//! conic conditions `φ_I` apply. Rewriting `φ_I` through the minor duality
//! (`|J| ↦ (−1)^{S_J+d+1} |J^c|`) gives the equations `ψ_I` directly in the
//! minors of the original points. For larger `n`, the equations are the
//! pullbacks `ψ_{I,J}` of `ψ_I` along every `(d+4)`-subset `J ⊆ [n]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::{BracketPolynomial, MinorTable};
use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::IndexSet;

/// φ written in brackets, `|123||145||246||356| − |124||135||236||456|`.
///
/// This is the classical form. It is the negative of
/// [`crate::conic::phi_det`]; both vanish on the same configurations.
pub fn phi_as_bracket_poly() -> BracketPolynomial {
    BracketPolynomial::parse(6, "+|1 2 3||1 4 5||2 4 6||3 5 6| -|1 2 4||1 3 5||2 3 6||4 5 6|").expect("valid literal")
}

/// `ψ_I = dualize(φ relabeled along I)` for every six-element
/// `I ⊆ [d+4]`, in lexicographic order of `I`. Each has width `d + 1`.
pub fn psi_generators(d: usize) -> Result<Vec<(IndexSet, BracketPolynomial)>> {
    if d < 3 {
        return Err(Error::Precondition(format!("ψ equations are defined for d ≥ 3, got {d}")));
    }
    let phi = phi_as_bracket_poly();
    IndexSet::subsets(d + 4, 6)
        .map(|i| Ok((i.clone(), phi.relabel(&i)?.dualize()?)))
        .collect()
}

/// One equation of a generator set: `φ_I` (`support` absent) or `ψ_{I,J}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    /// Six-element pattern `I`.
    pub pattern: IndexSet,
    /// The `d+4` points `J` the equation involves, for `d ≥ 3`.
    pub support: Option<IndexSet>,
    #[serde(skip)]
    pub poly: BracketPolynomial,
}

impl Generator {
    /// `[I]` or `[I] [J]`, with space-separated members.
    pub fn label(&self) -> String {
        let show = |s: &IndexSet| format!("[{}]", s.members().iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "));
        match &self.support {
            None => show(&self.pattern),
            Some(j) => format!("{} {}", show(&self.pattern), show(j)),
        }
    }
}

type Cache = Mutex<HashMap<(usize, usize), Arc<Vec<Generator>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Every defining equation for `n` points of ℙ^d (`d ≥ 2`): the `φ_I` for
/// `d = 2`, the `ψ_{I,J}` for `d ≥ 3`, ordered by `J` and then by `I`.
/// Empty when there are too few points for any equation. Built once per
/// `(d, n)` and shared afterwards.
pub fn generator_set(d: usize, n: usize) -> Result<Arc<Vec<Generator>>> {
    if d < 2 {
        return Err(Error::Precondition(format!("no equations are needed in ℙ^{d}")));
    }
    if let Some(g) = cache().lock().expect("cache lock").get(&(d, n)) {
        return Ok(Arc::clone(g));
    }
    let built = if d == 2 {
        let phi = phi_as_bracket_poly();
        IndexSet::subsets(n, 6)
            .map(|i| {
                Ok(Generator {
                    poly: phi.relabel(&i)?,
                    pattern: i,
                    support: None,
                })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let base = psi_generators(d)?;
        let mut out = Vec::new();
        for j in IndexSet::subsets(n, d + 4) {
            for (i, psi) in &base {
                out.push(Generator {
                    pattern: i.clone(),
                    support: Some(j.clone()),
                    poly: psi.relabel(&j)?,
                });
            }
        }
        out
    };
    log::debug!("built {} equations for d = {d}, n = {n}", built.len());
    let built = Arc::new(built);
    cache().lock().expect("cache lock").insert((d, n), Arc::clone(&built));
    Ok(built)
}

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    /// All points lie on a hyperplane.
    InY,
    /// Every equation vanishes and the points span.
    InW_NotY,
    /// Some equation is nonzero.
    NotInW,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::InY => "InY",
            Classification::InW_NotY => "InW_NotY",
            Classification::NotInW => "NotInW",
        })
    }
}

/// Outcome of evaluating every `ψ_{I,J}` on a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherEquationReport<E> {
    pub degenerate: bool,
    pub all_vanish: bool,
    pub checked: usize,
    /// First `(I, J)` with `ψ_{I,J} ≠ 0`, in the generator order.
    pub witness: Option<(IndexSet, IndexSet)>,
    pub witness_value: Option<E>,
    pub classification: Classification,
}

/// Evaluates every `ψ_{I,J}`. With fewer than `d + 4` points there are no
/// equations and everything is reported as vanishing.
pub fn wdn_membership<F: Field>(p: &PointConfiguration<F>) -> Result<HigherEquationReport<F::Elem>> {
    let (d, n) = (p.d(), p.n());
    if d < 3 {
        return Err(Error::Precondition(format!("ψ equations are defined for d ≥ 3, got {d}")));
    }
    let field = p.field();
    let degenerate = p.is_degenerate();
    let gens = if n >= d + 4 { generator_set(d, n)? } else { Arc::new(Vec::new()) };
    let table = if n > d { Some(MinorTable::new(field, p.coords())?) } else { None };
    let first = match &table {
        Some(t) => gens
            .par_iter()
            .map(|g| g.poly.eval_with(t))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .enumerate()
            .find(|(_, v)| !field.is_zero(v)),
        None => None,
    };
    let all_vanish = first.is_none();
    if degenerate && !all_vanish {
        return Err(Error::Internal("an equation is nonzero on points spanning a hyperplane".into()));
    }
    let classification = match (degenerate, all_vanish) {
        (true, _) => Classification::InY,
        (false, true) => Classification::InW_NotY,
        (false, false) => Classification::NotInW,
    };
    let (witness, witness_value) = match first {
        Some((k, v)) => {
            let g = &gens[k];
            (Some((g.pattern.clone(), g.support.clone().expect("d ≥ 3"))), Some(v))
        }
        None => (None, None),
    };
    Ok(HigherEquationReport {
        degenerate,
        all_vanish,
        checked: gens.len(),
        witness,
        witness_value,
        classification,
    })
}

/// What the equations say about membership in the closure `V_{d,n}` of
/// configurations on rational normal curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InVStatus {
    Yes,
    No,
    Conjectural,
    Unknown(&'static str),
}

impl fmt::Display for InVStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InVStatus::Yes => f.write_str("true"),
            InVStatus::No => f.write_str("false"),
            InVStatus::Conjectural => f.write_str("conjecturally true"),
            InVStatus::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

/// Membership in `V_{d,n}` as far as it follows from the equations:
///
/// * a nonzero equation rules membership out;
/// * up to `d + 3` points (and every configuration of ℙ¹) are always in;
/// * in the plane, the conic equations cut out `V_{2,n}` exactly;
/// * for `d + 4` points, and for `d = 3` and any `n`, the zero set is
///   `V ∪ Y`, so a spanning configuration is in;
/// * for `(d, n) ∈ {(3,7), (3,8), (4,8)}` the hyperplane locus `Y` lies in
///   `V` as well;
/// * for `d ≥ 4`, `n ≥ d + 5` spanning zeros are only expected to be in.
pub fn in_v_status(d: usize, n: usize, classification: Classification) -> InVStatus {
    use Classification::*;
    if d <= 1 || n <= d + 3 {
        return InVStatus::Yes;
    }
    match classification {
        NotInW => InVStatus::No,
        _ if d == 2 => InVStatus::Yes,
        _ if matches!((d, n), (3, 7) | (3, 8) | (4, 8)) => InVStatus::Yes,
        InW_NotY if d == 3 || n == d + 4 => InVStatus::Yes,
        InW_NotY => InVStatus::Conjectural,
        InY if d == 3 => InVStatus::Unknown("n≥9"),
        InY => InVStatus::Unknown("degenerate"),
    }
}

/// Whether `dim Y_{d,n} = nd − n + d` is below `dim V_{d,n} = d² + 2d + n − 3`,
/// which `Y ⊆ V` requires. Meaningful for `d ≥ 3`, `n ≥ d + 4`.
pub fn y_in_v_dimension_test(d: usize, n: usize) -> bool {
    n * d + d < d * d + 2 * d + 2 * n - 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ComponentShape, SampleRecipe, Sampler};
    use crate::conic;
    use crate::field::{PrimeField, Rationals};
    use crate::gale;
    use crate::linalg;

    #[test]
    fn phi_in_brackets_is_minus_the_determinant() {
        let f = PrimeField::default();
        let phi = phi_as_bracket_poly();
        assert_eq!(phi.terms().len(), 2);
        assert!(phi.terms().iter().all(|t| t.factors.len() == 4 && t.factors.iter().all(|s| s.len() == 3)));
        let mut s = Sampler::new(&f, SampleRecipe::new(1));
        for _ in 0..50 {
            let p = s.generic(2, 6);
            assert_eq!(phi.eval(&p).unwrap(), f.neg(&conic::phi_det(&p).unwrap()));
        }
        assert_eq!(phi.eval(&s.conic(6).unwrap()).unwrap(), f.zero());
    }

    #[test]
    fn psi_of_first_six_in_space() {
        let gens = psi_generators(3).unwrap();
        assert_eq!(gens.len(), 7);
        let expected = BracketPolynomial::parse(7, "+|4567||2367||1357||1247| -|3567||2467||1457||1237|").unwrap();
        assert_eq!(gens[0].0, IndexSet::new(7, (1..=6).collect()).unwrap());
        assert_eq!(gens[0].1, expected);
    }

    #[test]
    fn generator_counts_and_multidegrees() {
        assert_eq!(psi_generators(4).unwrap().len(), 28);
        assert!(psi_generators(2).is_err());
        for d in 3..=5 {
            for (i, psi) in psi_generators(d).unwrap() {
                assert_eq!(psi.width(), d + 1);
                let expect: Vec<usize> = (1..=d + 4).map(|k| if i.contains(k) { 2 } else { 4 }).collect();
                assert_eq!(psi.multidegree().unwrap(), expect);
            }
        }
        assert_eq!(generator_set(2, 8).unwrap().len(), 28);
        assert_eq!(generator_set(3, 8).unwrap().len(), 8 * 7);
        assert_eq!(generator_set(3, 6).unwrap().len(), 0);
    }

    #[test]
    fn relabeled_phi_matches_pullback() {
        let f = PrimeField::default();
        let p = Sampler::new(&f, SampleRecipe::new(2)).generic(2, 7);
        for g in generator_set(2, 7).unwrap().iter() {
            let direct = conic::phi_pullback_eval(&p, &g.pattern).unwrap();
            assert_eq!(g.poly.eval(&p).unwrap(), f.neg(&direct));
        }
    }

    /// Through the minor duality, `ψ_I(A) = λ⁴ φ_I(B)` for a Gale pair
    /// `(A, B)`: each bracket of `ψ_I` turns into `−λ` times a bracket of B.
    #[test]
    fn psi_is_phi_of_the_gale_dual() {
        for d in [3, 4] {
            let f = PrimeField::default();
            let mut s = Sampler::new(&f, SampleRecipe::new(3 + d as u64));
            let phi = phi_as_bracket_poly();
            for _ in 0..5 {
                let p = s.generic(d, d + 4);
                let b = gale::affine_gale(&f, p.coords()).unwrap();
                let lambda = gale::duality_certificate(&f, p.coords(), &b).unwrap().lambda;
                let dual = PointConfiguration::from_matrix(&f, b).unwrap();
                for (i, psi) in psi_generators(d).unwrap() {
                    let rhs = f.mul(&f.pow(&lambda, 4), &phi.relabel(&i).unwrap().eval(&dual).unwrap());
                    assert_eq!(psi.eval(&p).unwrap(), rhs);
                }
            }
        }
    }

    #[test]
    fn vanishing_on_curves_and_hyperplanes() {
        let f = PrimeField::default();
        let mut s = Sampler::new(&f, SampleRecipe::new(4));
        for (d, n) in [(3, 7), (3, 8), (3, 9), (4, 8), (4, 9), (5, 9)] {
            let r = wdn_membership(&s.rnc(d, n).unwrap()).unwrap();
            assert!(r.all_vanish && r.classification == Classification::InW_NotY, "({d},{n})");
            let r = wdn_membership(&s.degenerate(d, n)).unwrap();
            assert!(r.all_vanish && r.classification == Classification::InY);
            let r = wdn_membership(&s.generic(d, n)).unwrap();
            assert_eq!(r.classification, Classification::NotInW);
            assert!(r.witness.is_some() && r.witness_value.is_some());
        }
        for (_, shape) in ComponentShape::space_cubic_types() {
            let (_, p) = s.quasi_veronese(3, &shape, 9).unwrap();
            assert_eq!(wdn_membership(&p).unwrap().classification, Classification::InW_NotY);
        }
        for degrees in [[2, 2], [1, 3], [3, 1]] {
            let (_, p) = s.quasi_veronese(4, &ComponentShape::chain(&degrees), 9).unwrap();
            assert!(wdn_membership(&p).unwrap().all_vanish);
        }
        let (_, p) = s.quasi_veronese(4, &ComponentShape::chain(&[1, 1, 1, 1]), 9).unwrap();
        assert!(wdn_membership(&p).unwrap().all_vanish);
    }

    #[test]
    fn planar_points_in_space() {
        let q = Rationals;
        let p = Sampler::new(&q, SampleRecipe::new(5)).degenerate(3, 9);
        let r = wdn_membership(&p).unwrap();
        assert_eq!(r.classification, Classification::InY);
        assert_eq!(in_v_status(3, 9, r.classification).to_string(), "unknown (n≥9)");
    }

    #[test]
    fn scaling_law_for_pulled_back_equations() {
        let f = PrimeField::default();
        let mut s = Sampler::new(&f, SampleRecipe::new(6));
        let p = s.generic(3, 8);
        let c = s.nonzero_scalar();
        let gens = generator_set(3, 8).unwrap();
        for col in 1..=8 {
            let mut scales = vec![f.one(); 8];
            scales[col - 1] = c;
            let scaled = p.rescale(&scales).unwrap();
            for g in gens.iter().step_by(5) {
                let j = g.support.as_ref().unwrap();
                let image = j.compose(&g.pattern).unwrap();
                let e = if image.contains(col) { 2 } else if j.contains(col) { 4 } else { 0 };
                let expect = f.mul(&f.pow(&c, e), &g.poly.eval(&p).unwrap());
                assert_eq!(g.poly.eval(&scaled).unwrap(), expect);
            }
        }
    }

    #[test]
    fn too_few_points_are_trivially_in() {
        let f = PrimeField::default();
        let r = wdn_membership(&Sampler::new(&f, SampleRecipe::new(7)).generic(3, 6)).unwrap();
        assert!(r.all_vanish && r.checked == 0);
        assert_eq!(in_v_status(3, 6, r.classification), InVStatus::Yes);
    }

    #[test]
    fn witness_is_first_in_generator_order() {
        let f = PrimeField::default();
        let mut s = Sampler::new(&f, SampleRecipe::new(8));
        // points 1..7 on a twisted cubic, point 8 generic
        let mut cols = s.rnc(3, 7).unwrap().points();
        cols.push(s.vector(4));
        let p = PointConfiguration::new(&f, 3, cols).unwrap();
        let r = wdn_membership(&p).unwrap();
        let (i, j) = r.witness.unwrap();
        assert!(j.contains(8));
        let gens = generator_set(3, 8).unwrap();
        let pos = gens.iter().position(|g| g.pattern == i && g.support.as_ref() == Some(&j)).unwrap();
        assert!(gens[..pos].iter().all(|g| f.is_zero(&g.poly.eval(&p).unwrap())));
        assert!(!linalg::is_zero_matrix(&f, p.coords()));
    }

    #[test]
    fn status_table() {
        use Classification::*;
        assert_eq!(in_v_status(3, 7, InY), InVStatus::Yes);
        assert_eq!(in_v_status(4, 8, InY), InVStatus::Yes);
        assert_eq!(in_v_status(3, 10, InW_NotY), InVStatus::Yes);
        assert_eq!(in_v_status(5, 9, InW_NotY), InVStatus::Yes);
        assert_eq!(in_v_status(5, 9, InY), InVStatus::Unknown("degenerate"));
        assert_eq!(in_v_status(4, 9, InW_NotY), InVStatus::Conjectural);
        assert_eq!(in_v_status(4, 9, NotInW), InVStatus::No);
        assert_eq!(in_v_status(2, 9, InY), InVStatus::Yes);
    }

    #[test]
    fn exceptional_pairs() {
        assert!(y_in_v_dimension_test(3, 7));
        assert!(y_in_v_dimension_test(3, 8));
        assert!(y_in_v_dimension_test(4, 8));
        assert!(!y_in_v_dimension_test(3, 9));
        assert!(!y_in_v_dimension_test(4, 9));
        assert!(!y_in_v_dimension_test(5, 9));
    }
}
