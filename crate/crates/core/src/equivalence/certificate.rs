use serde::{Deserialize, Serialize};

use super::transport::{counit, hat, tilde, triangle_left, triangle_right, unit, TransportError};
use super::KernelModule;
use crate::fincat::{MorId, ObjId};
use crate::functors::{naturality_additive, naturality_pointed, AdditiveFunctor, NatTransform, PointedFunctor};

/// How the classes of the comparison coends are formed.
pub const COEND_RELATIONS: &str = "union-find over the generating relations: (m∘i, r) ~ (m, i∘r) for isomorphisms i on \
the right; (g∘k, m) ~ (g, k∘m) when k∘m ∈ M and (g∘k, m) ~ 0 otherwise, for k ∈ K, on the left";

/// Evidence for `F => tilde(hat(F))` on one zero-preserving functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointedCase {
    pub index: usize,
    pub dims: Vec<usize>,
    pub hat_dims: Vec<usize>,
    pub roundtrip_dims: Vec<usize>,
    pub unit: Option<NatTransform>,
    pub unit_iso: bool,
    /// Morphisms whose naturality square fails.
    pub unit_not_natural: Vec<MorId>,
    /// Objects where `ε_{hat F} ∘ hat(η_F)` is not the identity.
    pub triangle_failures: Vec<ObjId>,
    pub error: Option<String>,
    pub passed: bool,
}

/// Evidence for `hat(tilde(T)) => T` on one additive functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveCase {
    pub index: usize,
    pub dims: Vec<usize>,
    pub tilde_dims: Vec<usize>,
    pub counit: Option<NatTransform>,
    pub counit_iso: bool,
    pub counit_not_natural: Vec<MorId>,
    /// Objects where `tilde(ε_T) ∘ η_{tilde T}` is not the identity.
    pub triangle_failures: Vec<ObjId>,
    pub error: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceCertificate {
    pub coend_relations: String,
    pub pointed: Vec<PointedCase>,
    pub additive: Vec<AdditiveCase>,
    pub passed: bool,
}

fn pointed_case(km: &KernelModule, index: usize, f: &PointedFunctor) -> PointedCase {
    let mut case = PointedCase {
        index,
        dims: f.dims.clone(),
        hat_dims: Vec::new(),
        roundtrip_dims: Vec::new(),
        unit: None,
        unit_iso: false,
        unit_not_natural: Vec::new(),
        triangle_failures: Vec::new(),
        error: None,
        passed: false,
    };
    let run = |case: &mut PointedCase| -> Result<(), TransportError> {
        let h = hat(km, f)?;
        case.hat_dims = h.dims.clone();
        let back = tilde(km, &h)?;
        case.roundtrip_dims = back.dims.clone();
        let eta = unit(km, f)?;
        case.unit_iso = eta.is_iso();
        case.unit_not_natural = naturality_pointed(km.d(), &eta, f, &back)?;
        case.unit = Some(eta);
        case.triangle_failures = triangle_left(km, f)?;
        Ok(())
    };
    if let Err(e) = run(&mut case) {
        case.error = Some(e.to_string());
    }
    case.passed = case.error.is_none()
        && case.unit_iso
        && case.unit_not_natural.is_empty()
        && case.triangle_failures.is_empty()
        && case.roundtrip_dims == case.dims;
    case
}

fn additive_case(km: &KernelModule, index: usize, t: &AdditiveFunctor) -> AdditiveCase {
    let mut case = AdditiveCase {
        index,
        dims: t.dims.clone(),
        tilde_dims: Vec::new(),
        counit: None,
        counit_iso: false,
        counit_not_natural: Vec::new(),
        triangle_failures: Vec::new(),
        error: None,
        passed: false,
    };
    let run = |case: &mut AdditiveCase| -> Result<(), TransportError> {
        let tt = tilde(km, t)?;
        case.tilde_dims = tt.dims.clone();
        let eps = counit(km, t)?;
        case.counit_iso = eps.is_iso();
        case.counit_not_natural = naturality_additive(km.setting().cat(), &eps, &hat(km, &tt)?, t)?;
        case.counit = Some(eps);
        case.triangle_failures = triangle_right(km, t)?;
        Ok(())
    };
    if let Err(e) = run(&mut case) {
        case.error = Some(e.to_string());
    }
    case.passed =
        case.error.is_none() && case.counit_iso && case.counit_not_natural.is_empty() && case.triangle_failures.is_empty();
    case
}

/// Checks the unit on every `pointed` functor and the counit on every
/// `additive` one, each with its triangle identity.
pub fn certify_equivalence(
    km: &KernelModule,
    pointed: &[PointedFunctor],
    additive: &[AdditiveFunctor],
) -> EquivalenceCertificate {
    let pointed: Vec<PointedCase> = pointed.iter().enumerate().map(|(i, f)| pointed_case(km, i, f)).collect();
    let additive: Vec<AdditiveCase> = additive.iter().enumerate().map(|(i, t)| additive_case(km, i, t)).collect();
    let passed = pointed.iter().all(|c| c.passed) && additive.iter().all(|c| c.passed);
    EquivalenceCertificate { coend_relations: COEND_RELATIONS.into(), pointed, additive, passed }
}
