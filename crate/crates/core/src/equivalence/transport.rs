use std::collections::BTreeMap;

use rayon::prelude::*;

use super::KernelModule;
use crate::exactlin::{kernel, restrict, LinError, QMat, Subspace};
use crate::fincat::{MorId, ObjId};
use crate::functors::{compose_nat, AdditiveFunctor, NatError, NatTransform, PointedFunctor};
use crate::structure::FactorError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("{mor} does not carry the kernel intersection at its source into the one at its target")]
    Restriction { mor: MorId },
    #[error("component at {object} does not land in the kernel intersection")]
    NotInKernel { object: ObjId },
    #[error("functor has {found} objects, expected {expected}")]
    Objects { expected: usize, found: usize },
    #[error(transparent)]
    Nat(#[from] NatError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// Start of each summand of `hat(F) B`, in subobject listing order, with the
/// total at the end.
pub fn offsets(km: &KernelModule, dims: &[usize], b: ObjId) -> Vec<usize> {
    let mut out = vec![0];
    for cl in km.setting().sub_poset(b).classes() {
        out.push(out.last().unwrap() + dims[cl.source.0]);
    }
    out
}

fn check_objects(km: &KernelModule, dims: &[usize]) -> Result<(), TransportError> {
    let expected = km.setting().cat().n_objects();
    if dims.len() != expected {
        return Err(TransportError::Objects { expected, found: dims.len() });
    }
    Ok(())
}

/// `hat(F) B = ⊕_{U ⪯ B} F(dom m_U)`. For `g: A -> B` and a subobject `m`
/// of `A`, factor `g ∘ m = n ∘ r ∘ m'*`; the `(n, m)` block is `F r` when
/// `m'` is the identity and zero otherwise.
pub fn hat(km: &KernelModule, f: &PointedFunctor) -> Result<AdditiveFunctor, TransportError> {
    check_objects(km, &f.dims)?;
    let s = km.setting();
    let c = s.cat();
    let offs: Vec<Vec<usize>> = c.objects().map(|b| offsets(km, &f.dims, b)).collect();
    let dims: Vec<usize> = offs.iter().map(|o| *o.last().unwrap()).collect();
    let ids: Vec<MorId> = c.morphism_ids().collect();
    let mats = ids
        .par_iter()
        .map(|&g| {
            let (a, b) = (c.dom(g), c.cod(g));
            let mut m = QMat::zeros(dims[b.0], dims[a.0]);
            for (j, cl) in s.sub_poset(a).classes().iter().enumerate() {
                let fz = s.factorize(c.comp(g, cl.rep))?;
                if c.is_identity(fz.m) {
                    let i = s.class_index(fz.n);
                    m.set_block(offs[b.0][i], offs[a.0][j], &f.mats[&fz.r]);
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>, TransportError>>()?;
    Ok(AdditiveFunctor { dims, mats })
}

/// `tilde(T) A = ⋂_{U ≺ A} ker T(m_U*)` as a subspace of `T A`.
pub fn kernel_spaces(km: &KernelModule, t: &AdditiveFunctor) -> Result<Vec<Subspace>, TransportError> {
    check_objects(km, &t.dims)?;
    let s = km.setting();
    let c = s.cat();
    c.objects()
        .map(|a| {
            let sp = s.sub_poset(a);
            let mut stacked = QMat::zeros(0, t.dims[a.0]);
            for i in sp.proper() {
                stacked = stacked.vstack(t.mat(s.star(sp.classes()[i].rep)))?;
            }
            Ok(kernel(&stacked))
        })
        .collect()
}

/// `tilde(T)` together with the subspaces it lives on. Each `r ∈ R` acts by
/// restricting `T r`.
pub fn tilde_with_spaces(
    km: &KernelModule,
    t: &AdditiveFunctor,
) -> Result<(PointedFunctor, Vec<Subspace>), TransportError> {
    let spaces = kernel_spaces(km, t)?;
    let s = km.setting();
    let c = s.cat();
    let rs: Vec<MorId> = s.r_ids().collect();
    let mats = rs
        .par_iter()
        .map(|&r| {
            let m = restrict(t.mat(r), &spaces[c.dom(r).0], &spaces[c.cod(r).0]).map_err(|e| match e {
                LinError::NotContained => TransportError::Restriction { mor: r },
                e => e.into(),
            })?;
            Ok((r, m))
        })
        .collect::<Result<BTreeMap<_, _>, TransportError>>()?;
    let dims = spaces.iter().map(Subspace::dim).collect();
    Ok((PointedFunctor { dims, mats }, spaces))
}

pub fn tilde(km: &KernelModule, t: &AdditiveFunctor) -> Result<PointedFunctor, TransportError> {
    Ok(tilde_with_spaces(km, t)?.0)
}

/// Inclusion of `F A` as the summand of the whole object in `hat(F) A`.
fn top_inclusion(km: &KernelModule, dims: &[usize], a: ObjId) -> QMat {
    let offs = offsets(km, dims, a);
    let top = km.setting().sub_poset(a).top();
    let mut m = QMat::zeros(*offs.last().unwrap(), dims[a.0]);
    m.set_block(offs[top], 0, &QMat::identity(dims[a.0]));
    m
}

/// `η_F: F => tilde(hat(F))`: the top summand inclusion, written in the basis
/// of the kernel intersection.
pub fn unit(km: &KernelModule, f: &PointedFunctor) -> Result<NatTransform, TransportError> {
    let h = hat(km, f)?;
    let spaces = kernel_spaces(km, &h)?;
    unit_in(km, f, &spaces)
}

fn unit_in(km: &KernelModule, f: &PointedFunctor, spaces: &[Subspace]) -> Result<NatTransform, TransportError> {
    let components = km
        .setting()
        .cat()
        .objects()
        .map(|a| spaces[a.0].coordinates(&top_inclusion(km, &f.dims, a)).ok_or(TransportError::NotInKernel { object: a }))
        .collect::<Result<_, _>>()?;
    Ok(NatTransform { components })
}

/// `ε_T: hat(tilde(T)) => T`, whose block at the subobject `m` of `B` is
/// `T m` applied to the kernel basis at `dom m`.
pub fn counit(km: &KernelModule, t: &AdditiveFunctor) -> Result<NatTransform, TransportError> {
    let spaces = kernel_spaces(km, t)?;
    counit_in(km, t, &spaces)
}

fn counit_in(km: &KernelModule, t: &AdditiveFunctor, spaces: &[Subspace]) -> Result<NatTransform, TransportError> {
    let s = km.setting();
    let components = s
        .cat()
        .objects()
        .map(|b| {
            let mut row = QMat::zeros(t.dims[b.0], 0);
            for cl in s.sub_poset(b).classes() {
                row = row.hstack(&t.mat(cl.rep).mul(spaces[cl.source.0].basis())?)?;
            }
            Ok(row)
        })
        .collect::<Result<_, TransportError>>()?;
    Ok(NatTransform { components })
}

/// `hat(α)`: block diagonal, the `U`-block being `α` at `dom m_U`.
pub fn hat_nat(km: &KernelModule, alpha: &NatTransform) -> NatTransform {
    let s = km.setting();
    let components = s
        .cat()
        .objects()
        .map(|b| QMat::diagonal_sum(s.sub_poset(b).classes().iter().map(|cl| &alpha.components[cl.source.0])))
        .collect();
    NatTransform { components }
}

/// `tilde(β)` for `β: T => T'`: each component restricted to the kernel
/// intersections.
pub fn tilde_nat(
    km: &KernelModule,
    beta: &NatTransform,
    src: &AdditiveFunctor,
    tgt: &AdditiveFunctor,
) -> Result<NatTransform, TransportError> {
    let (ks, kt) = (kernel_spaces(km, src)?, kernel_spaces(km, tgt)?);
    let components = km
        .setting()
        .cat()
        .objects()
        .map(|a| {
            restrict(&beta.components[a.0], &ks[a.0], &kt[a.0]).map_err(|e| match e {
                LinError::NotContained => TransportError::NotInKernel { object: a },
                e => e.into(),
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(NatTransform { components })
}

/// Objects at which `ε_{hat F} ∘ hat(η_F)` is not the identity.
pub fn triangle_left(km: &KernelModule, f: &PointedFunctor) -> Result<Vec<ObjId>, TransportError> {
    let h = hat(km, f)?;
    let eta = unit(km, f)?;
    let eps = counit(km, &h)?;
    let composite = compose_nat(&eps, &hat_nat(km, &eta))?;
    Ok(non_identity(&composite))
}

/// Objects at which `tilde(ε_T) ∘ η_{tilde T}` is not the identity.
pub fn triangle_right(km: &KernelModule, t: &AdditiveFunctor) -> Result<Vec<ObjId>, TransportError> {
    let tt = tilde(km, t)?;
    let eta = unit(km, &tt)?;
    let eps = counit(km, t)?;
    let hat_tt = hat(km, &tt)?;
    let tilde_eps = tilde_nat(km, &eps, &hat_tt, t)?;
    let composite = compose_nat(&tilde_eps, &eta)?;
    Ok(non_identity(&composite))
}

fn non_identity(n: &NatTransform) -> Vec<ObjId> {
    n.components.iter().enumerate().filter(|(_, c)| !c.is_identity()).map(|(i, _)| ObjId(i)).collect()
}
