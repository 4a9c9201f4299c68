//! Configurations that expose a non-transversal edge set.
//!
//! Given a partition of `[n]` into blocks, placing every point of block `j`
//! at a common point `q_j` makes every equation indexed by an edge that
//! misses some block, or meets one twice, vanish: two equal columns kill a
//! minor, and the conic condition holds for six points with a repeat.

use super::BlockPartition;
use crate::config::PointConfiguration;
use crate::conic;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};

fn place<F: Field>(field: &F, d: usize, p: &BlockPartition, points: &[Vec<F::Elem>]) -> Result<PointConfiguration<F>> {
    let columns = p.labels().iter().map(|&b| points[b].clone()).collect();
    PointConfiguration::new(field, d, columns)
}

/// Point `i` is `basis[j]` for `i` in block `j`. The result spans ℙ^{k−1}
/// while every minor on an edge failing the partition vanishes.
pub fn ydn_witness<F: Field>(field: &F, p: &BlockPartition, basis: &[Vec<F::Elem>]) -> Result<PointConfiguration<F>> {
    let k = p.block_count();
    if basis.len() != k {
        return Err(Error::Shape(format!("{} basis vectors for {k} blocks", basis.len())));
    }
    let m = Matrix::from_columns(k, basis)?;
    let r = linalg::rank(field, &m);
    if r < k {
        return Err(Error::RankDeficient { expected: k, found: r });
    }
    place(field, k - 1, p, basis)
}

/// Point `i` is `q_j` for `i` in block `j`, where the six points `q` lie on
/// no conic. Every `φ_H` with `H` failing the partition vanishes, but the
/// configuration is not a limit of points on conics.
pub fn v2n_witness<F: Field>(p: &BlockPartition, q: &PointConfiguration<F>) -> Result<PointConfiguration<F>> {
    if p.block_count() != 6 {
        return Err(Error::Precondition(format!("need 6 blocks, got {}", p.block_count())));
    }
    if q.field().is_zero(&conic::phi_det(q)?) {
        return Err(Error::Precondition("the six base points lie on a conic".into()));
    }
    place(q.field(), 2, p, &q.points())
}
