//! Nodal unions of rational normal curves of lower degree ("quasi-Veronese"
//! curves) built by attaching components one at a time.
//!
//! The first component of degree δ₀ is the moment curve in the coordinates
//! `e₀ … e_{δ₀}`. Every later component of degree δ is attached at a point
//! `q` of an earlier one and uses δ fresh coordinates: it is the curve
//! `[t₀ : t₁] ↦ t₀^δ q + Σ_k t₀^{δ−k} t₁^k e_{j_k}`, which passes through `q`
//! at `[1 : 0]`. The degrees sum to `d`, so the fresh coordinates run out
//! exactly when the union spans ℙ^d. A random projectivity is applied last.

use super::{PointConfiguration, Sampler};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::index_set::IndexSet;
use crate::linalg::{self, Matrix};

/// Where an attached component meets its parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeChoice {
    /// A random point of the parent.
    Random,
    /// The same point as the given earlier component, which must have the
    /// same parent. Used for concurrent lines.
    SameAs(usize),
}

/// Combinatorial shape of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentShape {
    pub degree: usize,
    /// Earlier component this one is attached to; `None` only for the first.
    pub parent: Option<usize>,
    pub node: NodeChoice,
    /// Number of configuration points on this component; distributed
    /// automatically when `None`.
    pub points: Option<usize>,
}

impl ComponentShape {
    /// Each component attached to the previous one.
    pub fn chain(degrees: &[usize]) -> Vec<ComponentShape> {
        Self::attached(degrees, |i| i - 1)
    }

    /// Every component attached to the first one at its own random point.
    pub fn comb(degrees: &[usize]) -> Vec<ComponentShape> {
        Self::attached(degrees, |_| 0)
    }

    /// `d` lines through one common point.
    pub fn concurrent_lines(d: usize) -> Vec<ComponentShape> {
        let mut shape = Self::comb(&vec![1; d]);
        for c in shape.iter_mut().skip(2) {
            c.node = NodeChoice::SameAs(1);
        }
        shape
    }

    fn attached(degrees: &[usize], parent: impl Fn(usize) -> usize) -> Vec<ComponentShape> {
        degrees
            .iter()
            .enumerate()
            .map(|(i, &degree)| ComponentShape {
                degree,
                parent: (i > 0).then(|| parent(i)),
                node: NodeChoice::Random,
                points: None,
            })
            .collect()
    }

    /// The four kinds of degree-3 curves spanning ℙ³: twisted cubic, conic
    /// plus a line, chain of three lines, three concurrent lines.
    pub fn space_cubic_types() -> Vec<(&'static str, Vec<ComponentShape>)> {
        vec![
            ("twisted cubic", Self::chain(&[3])),
            ("conic and line", Self::chain(&[2, 1])),
            ("chain of three lines", Self::chain(&[1, 1, 1])),
            ("three concurrent lines", Self::concurrent_lines(3)),
        ]
    }
}

/// One realized component, in coordinates before the final projectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveComponent<E> {
    pub degree: usize,
    /// Coordinates (1-based) that the component's span involves.
    pub span: IndexSet,
    /// Parent component and the node point shared with it.
    pub attachment: Option<(usize, Vec<E>)>,
    /// Columns `b₀ … b_δ` of the embedding `[t₀:t₁] ↦ Σ t₀^{δ−k} t₁^k b_k`.
    pub embedding: Vec<Vec<E>>,
    /// Parameters `[1 : s]` of the configuration points on this component.
    pub params: Vec<(E, E)>,
}

/// A sampled quasi-Veronese curve together with the projectivity `g`
/// applied to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiVeroneseDescriptor<E> {
    pub d: usize,
    pub components: Vec<CurveComponent<E>>,
    pub g: Matrix<E>,
}

impl<E: Clone> QuasiVeroneseDescriptor<E> {
    /// Point of component `c` at parameter `t`, after applying `g`.
    pub fn point<F: Field<Elem = E>>(&self, field: &F, c: usize, t: &(E, E)) -> Vec<E> {
        let comp = &self.components[c];
        let local = component_point(field, &comp.embedding, t);
        linalg::mul_vec(field, &self.g, &local).expect("g is square of size d+1")
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.degree).collect()
    }
}

fn component_point<F: Field>(field: &F, embedding: &[Vec<F::Elem>], t: &(F::Elem, F::Elem)) -> Vec<F::Elem> {
    let delta = embedding.len() - 1;
    let len = embedding[0].len();
    let mut out = vec![field.zero(); len];
    for (k, b) in embedding.iter().enumerate() {
        let w = field.mul(&field.pow(&t.0, (delta - k) as u32), &field.pow(&t.1, k as u32));
        for (o, x) in out.iter_mut().zip(b) {
            *o = field.add(o, &field.mul(&w, x));
        }
    }
    out
}

fn validate(d: usize, shape: &[ComponentShape]) -> Result<()> {
    let bad = |msg: String| Err(Error::Precondition(msg));
    if shape.is_empty() {
        return bad("a curve needs at least one component".into());
    }
    if shape.iter().any(|c| c.degree == 0) {
        return bad("component degrees must be positive".into());
    }
    let total: usize = shape.iter().map(|c| c.degree).sum();
    if total != d {
        return bad(format!("component degrees sum to {total}, not {d}"));
    }
    for (i, c) in shape.iter().enumerate() {
        match (i, c.parent) {
            (0, None) => {}
            (0, Some(_)) => return bad("the first component has no parent".into()),
            (_, None) => return bad(format!("component {i} needs a parent")),
            (_, Some(p)) if p >= i => return bad(format!("component {i} attaches to later component {p}")),
            _ => {}
        }
        if let NodeChoice::SameAs(o) = c.node {
            if o == 0 || o >= i || shape[o].parent != c.parent {
                return bad(format!("component {i} cannot share the node of component {o}"));
            }
        }
    }
    Ok(())
}

/// Points per component: enough to span it first, the rest round-robin.
fn allocate(shape: &[ComponentShape], n: usize) -> Result<Vec<usize>> {
    if shape.iter().all(|c| c.points.is_some()) {
        let counts: Vec<usize> = shape.iter().map(|c| c.points.unwrap()).collect();
        let total: usize = counts.iter().sum();
        if total != n {
            return Err(Error::Precondition(format!("component point counts sum to {total}, not {n}")));
        }
        return Ok(counts);
    }
    let mut counts = vec![0; shape.len()];
    let mut left = n;
    for (i, c) in shape.iter().enumerate() {
        let want = c.points.unwrap_or(if i == 0 { c.degree + 1 } else { c.degree });
        counts[i] = want.min(left);
        left -= counts[i];
    }
    let flexible: Vec<usize> = (0..shape.len()).filter(|&i| shape[i].points.is_none()).collect();
    for k in 0..left {
        counts[flexible[k % flexible.len()]] += 1;
    }
    Ok(counts)
}

impl<F: Field> Sampler<F> {
    /// `n` points on a random quasi-Veronese curve of the given shape in
    /// ℙ^d. Redraws until the points span ℙ^d.
    pub fn quasi_veronese(
        &mut self,
        d: usize,
        shape: &[ComponentShape],
        n: usize,
    ) -> Result<(QuasiVeroneseDescriptor<F::Elem>, PointConfiguration<F>)> {
        validate(d, shape)?;
        let counts = allocate(shape, n)?;
        self.retry(
            "quasi-Veronese sample",
            |s| s.draw_quasi_veronese(d, shape, &counts),
            |(_, p)| !p.is_degenerate(),
        )
    }

    fn draw_quasi_veronese(
        &mut self,
        d: usize,
        shape: &[ComponentShape],
        counts: &[usize],
    ) -> Result<(QuasiVeroneseDescriptor<F::Elem>, PointConfiguration<F>)> {
        let f = self.field().clone();
        let unit = |k: usize| (0..=d).map(|i| if i == k { f.one() } else { f.zero() }).collect::<Vec<_>>();
        let mut components: Vec<CurveComponent<F::Elem>> = Vec::with_capacity(shape.len());
        let mut next = 0;
        for (i, c) in shape.iter().enumerate() {
            let (attachment, mut embedding, mut support) = match c.parent {
                None => {
                    next = c.degree + 1;
                    (None, (0..=c.degree).map(unit).collect::<Vec<_>>(), (1..=c.degree + 1).collect::<Vec<_>>())
                }
                Some(p) => {
                    let node = match c.node {
                        NodeChoice::SameAs(o) => components[o].attachment.clone().expect("attached").1,
                        NodeChoice::Random => {
                            let s = self.nonzero_scalar();
                            component_point(&f, &components[p].embedding, &(f.one(), s))
                        }
                    };
                    let support = (0..=d).filter(|&k| !f.is_zero(&node[k])).map(|k| k + 1).collect();
                    (Some((p, node.clone())), vec![node], support)
                }
            };
            if c.parent.is_some() {
                for k in next..next + c.degree {
                    embedding.push(unit(k));
                    support.push(k + 1);
                }
                next += c.degree;
            }
            support.sort_unstable();
            support.dedup();
            let params: Vec<_> = (0..counts[i])
                .map(|_| (f.one(), self.nonzero_scalar()))
                .collect();
            components.push(CurveComponent {
                degree: c.degree,
                span: IndexSet::new(d + 1, support)?,
                attachment,
                embedding,
                params,
            });
        }
        let g = self.invertible(d + 1);
        let desc = QuasiVeroneseDescriptor { d, components, g };
        let columns = desc
            .components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| comp.params.iter().map(move |t| (c, t)))
            .map(|(c, t)| desc.point(&f, c, t))
            .collect();
        let p = PointConfiguration::new(&f, d, columns)?;
        Ok((desc, p))
    }
}

/// Seeded sample of `n` points on a chain of rational normal curves of the
/// given degrees.
pub fn sample_quasi_veronese_chain<F: Field>(
    field: &F,
    degrees: &[usize],
    n: usize,
    seed: u64,
) -> Result<(QuasiVeroneseDescriptor<F::Elem>, PointConfiguration<F>)> {
    let d = degrees.iter().sum();
    Sampler::new(field, super::SampleRecipe::new(seed)).quasi_veronese(d, &ComponentShape::chain(degrees), n)
}
