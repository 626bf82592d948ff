use serde::{Deserialize, Serialize};

use super::transport::{hat, TransportError};
use super::KernelModule;
use crate::exactlin::QMat;
use crate::fincat::{MorId, ObjId};
use crate::functors::{AdditiveFunctor, PointedFunctor};

fn block_starts(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &k in sizes {
        out.push(acc);
        acc += k;
    }
    out
}

/// Block `(V, U)` is `T(n_V* ∘ m_U)` when that composite lies in `M` and zero
/// otherwise, with rows and columns both in subobject listing order.
pub fn theta_of(km: &KernelModule, t: &AdditiveFunctor, a: ObjId) -> QMat {
    let s = km.setting();
    let c = s.cat();
    let classes = s.sub_poset(a).classes();
    let sizes: Vec<usize> = classes.iter().map(|cl| t.dims[cl.source.0]).collect();
    let starts = block_starts(&sizes);
    let total = sizes.iter().sum();
    let mut m = QMat::zeros(total, total);
    for (v, nv) in classes.iter().enumerate() {
        for (u, mu) in classes.iter().enumerate() {
            let x = c.comp(s.star(nv.rep), mu.rep);
            if s.in_m(x) {
                m.set_block(starts[v], starts[u], t.mat(x));
            }
        }
    }
    m
}

/// `Θ` at `a` for the additive functor `hat(f)` restricted to `M`.
pub fn theta_matrix(km: &KernelModule, f: &PointedFunctor, a: ObjId) -> Result<QMat, TransportError> {
    Ok(theta_of(km, &hat(km, f)?, a))
}

/// First block `(V, U)` breaking block unitriangularity: diagonal blocks
/// must be identities and a non-zero block `(V, U)` needs `U` listed
/// before `V`.
pub fn unitriangular_violation(block_sizes: &[usize], m: &QMat) -> Option<(usize, usize)> {
    let starts = block_starts(block_sizes);
    for v in 0..block_sizes.len() {
        for u in 0..block_sizes.len() {
            let b = m.submatrix(starts[v]..starts[v] + block_sizes[v], starts[u]..starts[u] + block_sizes[u]);
            let ok = match u.cmp(&v) {
                std::cmp::Ordering::Equal => b.is_identity(),
                std::cmp::Ordering::Greater => b.is_zero(),
                std::cmp::Ordering::Less => true,
            };
            if !ok {
                return Some((v, u));
            }
        }
    }
    None
}

/// `Θ` at one object with its triangularity and inversion checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaEntry {
    pub object: ObjId,
    /// Canonical representatives in listing order.
    pub classes: Vec<MorId>,
    pub block_sizes: Vec<usize>,
    pub matrix: QMat,
    pub inverse: Option<QMat>,
    /// First offending `(row block, column block)` of `Θ`, then of `Θ⁻¹`.
    pub violation: Option<(usize, usize)>,
    pub inverse_violation: Option<(usize, usize)>,
    /// `Θ Θ⁻¹ = Θ⁻¹ Θ = I`.
    pub inverse_exact: bool,
}

impl ThetaEntry {
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.inverse_violation.is_none() && self.inverse_exact
    }
}

pub fn theta_entries(km: &KernelModule, f: &PointedFunctor) -> Result<Vec<ThetaEntry>, TransportError> {
    let t = hat(km, f)?;
    let s = km.setting();
    Ok(s.cat()
        .objects()
        .map(|a| {
            let classes = s.sub_poset(a).classes();
            let block_sizes: Vec<usize> = classes.iter().map(|cl| t.dims[cl.source.0]).collect();
            let matrix = theta_of(km, &t, a);
            let inverse = matrix.inverse().ok();
            let n = matrix.rows();
            let inverse_exact = inverse
                .as_ref()
                .is_some_and(|i| matrix.dot(i) == QMat::identity(n) && i.dot(&matrix) == QMat::identity(n));
            ThetaEntry {
                object: a,
                classes: classes.iter().map(|cl| cl.rep).collect(),
                violation: unitriangular_violation(&block_sizes, &matrix),
                inverse_violation: inverse.as_ref().map_or(Some((0, 0)), |i| unitriangular_violation(&block_sizes, i)),
                block_sizes,
                matrix,
                inverse,
                inverse_exact,
            }
        })
        .collect())
}
