//! Seeded end-to-end checks of the main identities, grouped into suites.
//!
//! Every check draws its randomness from a seed derived from the suite seed
//! and its own number, so a single check can be rerun in isolation.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::bracket::BracketPolynomial;
use crate::config::{dimension_estimate, expected_dimension, ComponentShape, PointConfiguration, SampleRecipe, Sampler};
use crate::conic::{phi_bracket, phi_det, v2n_subset_membership, w2n_membership};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::gale::{affine_gale, duality_certificate, gale_of_config, minor_vector, proportionality, standard_gale_pair};
use crate::higher::{psi_generators, wdn_membership, y_in_v_dimension_test, Classification};
use crate::index_set::{binomial, IndexSet};
use crate::linalg;
use crate::transversal::{min_transversal, v2n_witness, ydn_witness, Hypergraph, SearchMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Suite {
    Conic,
    Gale,
    Higher,
    Transversal,
    Dimension,
    All,
}

impl Suite {
    /// Check numbers belonging to the suite.
    pub fn checks(self) -> Vec<u8> {
        match self {
            Suite::Conic => vec![1, 2],
            Suite::Gale => vec![3, 6],
            Suite::Higher => vec![4, 5, 10],
            Suite::Transversal => vec![7, 8],
            Suite::Dimension => vec![9],
            Suite::All => (1..=10).collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "conic" => Suite::Conic,
            "gale" => Suite::Gale,
            "higher" => Suite::Higher,
            "transversal" => Suite::Transversal,
            "dimension" => Suite::Dimension,
            "all" => Suite::All,
            _ => return Err(Error::Precondition(format!("unknown suite {s:?}"))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub field: String,
    pub seed: u64,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {} over {} (seed {}, {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.field,
            self.seed,
            self.millis,
            self.detail
        )
    }
}

pub fn check_name(id: u8) -> &'static str {
    match id {
        1 => "phi determinant and bracket forms",
        2 => "plane configurations on conics",
        3 => "Gale minor duality",
        4 => "psi for six of seven points in space",
        5 => "psi equations on curves, hyperplanes and generic points",
        6 => "Gale transforms of curve configurations",
        7 => "transversal edge sets and witnesses",
        8 => "smallest transversal hypergraphs",
        9 => "dimension of the curve configuration space",
        10 => "exceptional pairs by dimension count",
        _ => "unknown check",
    }
}

/// Runs one check over the given field.
pub fn run_check(id: u8, field: FieldSpec, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let result = match field {
        FieldSpec::Rationals => dispatch(id, &Rationals, seed),
        FieldSpec::PrimeField(p) => PrimeField::new(p).and_then(|f| dispatch(id, &f, seed)),
    };
    let (passed, detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome {
        id,
        name: check_name(id),
        field: field.to_string(),
        seed,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_suite(suite: Suite, field: FieldSpec, seed: u64) -> Vec<CheckOutcome> {
    suite.checks().into_iter().map(|id| run_check(id, field, seed)).collect()
}

type Verdict = Result<(bool, String)>;

fn dispatch<F: Field>(id: u8, f: &F, seed: u64) -> Verdict {
    let s = seed.wrapping_add(u64::from(id).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    match id {
        1 => phi_forms(f, s),
        2 => plane_membership(f, s),
        3 => gale_duality(f, s),
        4 => psi_six_of_seven(),
        5 => psi_containments(f, s),
        6 => gale_compatibility(f, s),
        7 => transversal_agreement(f, s),
        8 => smallest_transversals(),
        9 => dimensions(f, s),
        10 => exceptional_pairs(),
        _ => Err(Error::Precondition(format!("there is no check {id}"))),
    }
}

fn sampler<F: Field>(f: &F, seed: u64) -> Sampler<F> {
    Sampler::new(f, SampleRecipe::new(seed))
}

fn phi_forms<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut s = sampler(f, seed);
    let mut conic_zero = 0;
    let mut generic_nonzero = 0;
    let mut agree = 0;
    for _ in 0..100 {
        conic_zero += f.is_zero(&phi_det(&s.conic(6)?)?) as usize;
        generic_nonzero += !f.is_zero(&phi_det(&s.generic(2, 6))?) as usize;
    }
    for _ in 0..1000 {
        let p = s.generic(2, 6);
        agree += (phi_det(&p)? == phi_bracket(&p)?) as usize;
    }
    Ok((
        conic_zero == 100 && generic_nonzero >= 99 && agree == 1000,
        format!("conic samples with φ = 0: {conic_zero}/100; generic samples with φ ≠ 0: {generic_nonzero}/100 (need 99); det = bracket: {agree}/1000"),
    ))
}

fn plane_membership<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut s = sampler(f, seed);
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 7..=9 {
        let (mut conic, mut lines, mut witnessed) = (0, 0, 0);
        for _ in 0..50 {
            conic += w2n_membership(&s.conic(n)?, false)?.all_vanish as usize;
            lines += w2n_membership(&s.two_lines(n), false)?.all_vanish as usize;
            witnessed += w2n_membership(&s.generic(2, n), false)?.witness().is_some() as usize;
        }
        ok &= conic == 50 && lines == 50 && witnessed == 50;
        parts.push(format!("n={n}: conic {conic}/50, two lines {lines}/50, generic witnessed {witnessed}/50"));
    }
    Ok((ok, parts.join("; ")))
}

fn gale_duality<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut s = sampler(f, seed);
    let shapes = [(2, 6), (3, 7), (3, 8), (4, 8), (2, 8)];
    let (mut instances, mut failures, mut lambda_one) = (0, 0, 0);
    for k in 0..100 {
        let (d, n) = shapes[k % shapes.len()];
        let a = loop {
            let a = s.matrix(d + 1, n);
            let leading = a.select_columns(&(0..=d).collect::<Vec<_>>());
            if !f.is_zero(&linalg::det(f, &leading)?) {
                break a;
            }
        };
        let b = affine_gale(f, &a)?;
        instances += 1;
        failures += duality_certificate(f, &a, &b)?.failures.len();
        let (a_std, b_std) = standard_gale_pair(f, &a)?;
        let cert = duality_certificate(f, &a_std, &b_std)?;
        lambda_one += (cert.holds() && cert.lambda == f.one()) as usize;
    }
    Ok((
        failures == 0 && lambda_one == instances,
        format!("{instances} instances, {failures} failing index sets; standard pairs with λ = 1: {lambda_one}/{instances}"),
    ))
}

fn psi_six_of_seven() -> Verdict {
    let shown = "+|4567||2367||1357||1247| -|3567||2467||1457||1237|";
    let expected = BracketPolynomial::parse(7, shown)?;
    let gens = psi_generators(3)?;
    let first = IndexSet::new(7, (1..=6).collect())?;
    let found = gens.iter().find(|(i, _)| *i == first).map(|(_, p)| p.clone());
    let ok = found.as_ref() == Some(&expected) && gens.len() == 7;
    Ok((
        ok,
        format!(
            "{} generators; ψ_{{1..6}} = {}",
            gens.len(),
            found.map_or("missing".to_string(), |p| p.to_string())
        ),
    ))
}

fn curve_shapes(d: usize) -> Vec<Vec<ComponentShape>> {
    if d == 3 {
        return ComponentShape::space_cubic_types().into_iter().map(|(_, s)| s).collect();
    }
    let mut shapes = vec![ComponentShape::chain(&[d])];
    for k in 1..d {
        shapes.push(ComponentShape::chain(&[k, d - k]));
    }
    shapes.push(ComponentShape::chain(&vec![1; d]));
    shapes.push(ComponentShape::concurrent_lines(d));
    shapes.push(ComponentShape::comb(&[2, 1, 1]));
    shapes
}

fn psi_containments<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut s = sampler(f, seed);
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, n) in [(3, 7), (3, 8), (3, 9), (4, 8)] {
        let shapes = curve_shapes(d);
        let (mut rnc, mut chains, mut flat, mut witnessed) = (0, 0, 0, 0);
        for k in 0..30 {
            rnc += wdn_membership(&s.rnc(d, n)?)?.all_vanish as usize;
            let (_, p) = s.quasi_veronese(d, &shapes[k % shapes.len()], n)?;
            chains += wdn_membership(&p)?.all_vanish as usize;
            let r = wdn_membership(&s.degenerate(d, n))?;
            flat += (r.all_vanish && r.classification == Classification::InY) as usize;
            witnessed += wdn_membership(&s.generic(d, n))?.witness.is_some() as usize;
        }
        ok &= rnc == 30 && chains == 30 && flat == 30 && witnessed == 30;
        parts.push(format!(
            "({d},{n}): curve {rnc}/30, reducible curve {chains}/30 over {} shapes, hyperplane {flat}/30, generic witnessed {witnessed}/30",
            shapes.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn gale_compatibility<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut s = sampler(f, seed);
    let (mut strong, mut vanish, mut involutive) = (0, 0, 0);
    for _ in 0..30 {
        let p = s.rnc(3, 7)?;
        strong += p.is_strongly_nondegenerate() as usize;
        let g = gale_of_config(&p)?;
        vanish += w2n_membership(&g, false)?.all_vanish as usize;
        let gg = gale_of_config(&g)?;
        involutive += proportionality(f, &minor_vector(&gg)?, &minor_vector(&p)?).is_some() as usize;
    }
    Ok((
        strong == 30 && vanish == 30 && involutive == 30,
        format!("strongly non-degenerate {strong}/30; φ vanishes on the transform {vanish}/30; double transform proportional {involutive}/30"),
    ))
}

/// Random edge set: a uniformly random size, then a random subset.
fn random_edges<F: Field>(s: &mut Sampler<F>, n: usize, k: usize) -> Result<Hypergraph> {
    use rand::seq::index::sample;
    let all: Vec<IndexSet> = IndexSet::subsets(n, k).collect();
    let size = 1 + s.index(all.len());
    let picks = sample(s.rng(), all.len(), size);
    Hypergraph::new(n, k, picks.into_iter().map(|i| all[i].clone()).collect())
}

fn random_labels<F: Field>(s: &mut Sampler<F>, n: usize, k: usize) -> Vec<usize> {
    // a random surjection [n] → [k]
    loop {
        let labels: Vec<usize> = (0..n).map(|_| s.index(k)).collect();
        let mut used = vec![false; k];
        labels.iter().for_each(|&l| used[l] = true);
        if used.iter().all(|&u| u) {
            return labels;
        }
    }
}

fn spanning_basis<F: Field>(s: &mut Sampler<F>, k: usize) -> Vec<Vec<F::Elem>> {
    s.invertible(k).columns()
}

/// Full-rank configurations likely to defeat a small edge set: generic
/// ones and ones with repeated points.
fn span_probe<F: Field>(s: &mut Sampler<F>, n: usize, k: usize) -> Result<PointConfiguration<F>> {
    let f = s.field().clone();
    s.retry(
        "spanning probe",
        |s| match s.index(2) {
            0 => Ok(s.generic(k - 1, n)),
            _ => {
                let labels = random_labels(s, n, k);
                let basis = spanning_basis(s, k);
                PointConfiguration::new(&f, k - 1, labels.iter().map(|&l| basis[l].clone()).collect())
            }
        },
        |p| !p.is_degenerate(),
    )
}

/// Plane configurations off every conic: generic ones, ones with repeated
/// points, and a conic with one stray point.
fn conic_probe<F: Field>(s: &mut Sampler<F>, n: usize) -> Result<PointConfiguration<F>> {
    s.retry(
        "non-conic probe",
        |s| match s.index(3) {
            0 => Ok(s.generic(2, n)),
            1 => {
                let labels = random_labels(s, n, 6);
                let base = s.generic(2, 6).points();
                PointConfiguration::new(s.field(), 2, labels.iter().map(|&l| base[l].clone()).collect())
            }
            _ => {
                let mut cols = s.conic(n - 1)?.points();
                cols.push(s.vector(3));
                PointConfiguration::new(s.field(), 2, cols)
            }
        },
        |p| !w2n_membership(p, false).map(|r| r.all_vanish).unwrap_or(true),
    )
}

fn minors_vanish_on<F: Field>(p: &PointConfiguration<F>, t: &Hypergraph) -> Result<bool> {
    for e in t.edges() {
        if !p.field().is_zero(&p.bracket(e)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn transversal_agreement<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut s = sampler(f, seed);
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, k) in [(6, 3), (7, 4), (7, 6), (8, 6)] {
        let (mut transversal, mut separated, mut contradicted, mut probes) = (0, 0, 0, 0);
        for _ in 0..50 {
            let t = random_edges(&mut s, n, k)?;
            match t.failing_partition() {
                Some(part) => {
                    // minors: points of block j at the j-th basis vector
                    let basis = spanning_basis(&mut s, k);
                    let w = ydn_witness(f, &part, &basis)?;
                    let mut sep = !w.is_degenerate() && minors_vanish_on(&w, &t)?;
                    if k == 6 {
                        let q = s.generic_where(2, 6, |q| phi_det(q).map(|v| !f.is_zero(&v)).unwrap_or(false))?;
                        let w = v2n_witness(&part, &q)?;
                        sep &= v2n_subset_membership(&w, &t, false)?.all_vanish && !w2n_membership(&w, false)?.all_vanish;
                    }
                    separated += sep as usize;
                    ok &= sep;
                }
                None => {
                    transversal += 1;
                    for _ in 0..200 {
                        let p = span_probe(&mut s, n, k)?;
                        let mut bad = minors_vanish_on(&p, &t)?;
                        if k == 6 {
                            let p = conic_probe(&mut s, n)?;
                            bad |= v2n_subset_membership(&p, &t, false)?.all_vanish;
                        }
                        probes += 1;
                        contradicted += bad as usize;
                    }
                }
            }
        }
        ok &= contradicted == 0;
        parts.push(format!(
            "(n,k)=({n},{k}): {transversal} transversal with {probes} probes, {contradicted} contradicted; {} non-transversal, {separated} separated",
            50 - transversal
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn smallest_transversals() -> Verdict {
    let all: Vec<IndexSet> = IndexSet::subsets(5, 3).collect();
    let mut candidates = 0;
    let mut small_transversal = 0;
    for size in 1..=4 {
        for pick in itertools::Itertools::combinations(0..all.len(), size) {
            candidates += 1;
            let h = Hypergraph::new(5, 3, pick.iter().map(|&i| all[i].clone()).collect())?;
            small_transversal += h.is_transversal() as usize;
        }
    }
    let pentagon = Hypergraph::from_lists(5, 3, &[vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2]])?;
    let pentagon_ok = pentagon.is_transversal();
    let five_three = min_transversal(5, 3, SearchMode::Exact)?.size;

    let six: Vec<IndexSet> = IndexSet::subsets(7, 6).collect();
    let mut five_edge_sets = 0;
    let mut five_transversal = 0;
    for pick in itertools::Itertools::combinations(0..7, 5) {
        five_edge_sets += 1;
        let h = Hypergraph::new(7, 6, pick.iter().map(|&i| six[i].clone()).collect())?;
        five_transversal += h.is_transversal() as usize;
    }
    let every_six = itertools::Itertools::combinations(0..7, 6)
        .all(|pick| Hypergraph::new(7, 6, pick.iter().map(|&i| six[i].clone()).collect()).map(|h| h.is_transversal()).unwrap_or(false));
    let seven_six = min_transversal(7, 6, SearchMode::Exact)?.size;
    let ok = candidates == 385
        && small_transversal == 0
        && pentagon_ok
        && five_three == 5
        && five_edge_sets == binomial(7, 5)
        && five_transversal == 0
        && every_six
        && seven_six == 6;
    Ok((
        ok,
        format!(
            "[5] 3-sets: {candidates} sets of ≤ 4 edges, {small_transversal} transversal; pentagon transversal: {pentagon_ok}; minimum {five_three}. \
             [7] 6-sets: {five_edge_sets} five-edge sets, {five_transversal} transversal; every six-edge set transversal: {every_six}; minimum {seven_six}"
        ),
    ))
}

fn dimensions<F: Field>(f: &F, seed: u64) -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for (d, n) in [(2, 6), (2, 7), (3, 7), (3, 8), (4, 8)] {
        let expected = expected_dimension(d, n);
        let mut hits = 0;
        let mut seen = Vec::new();
        for k in 0..10u64 {
            let r = dimension_estimate(f, d, n, seed.wrapping_add(k))?;
            hits += (r == expected) as usize;
            seen.push(r);
        }
        ok &= hits >= 9;
        parts.push(format!("({d},{n}): expected {expected}, matched {hits}/10, ranks {seen:?}"));
    }
    Ok((ok, parts.join("; ")))
}

fn exceptional_pairs() -> Verdict {
    let mut hits = Vec::new();
    for d in 3..=8 {
        for n in d + 4..=d + 8 {
            if y_in_v_dimension_test(d, n) {
                hits.push((d, n));
            }
        }
    }
    Ok((hits == [(3, 7), (3, 8), (4, 8)], format!("pairs passing: {hits:?}")))
}
