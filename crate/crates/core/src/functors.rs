//! Matrix-valued functors on a finite category and on its pointed
//! counterpart, natural transformations between them, and a seeded
//! generator of pointed functors.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactlin::{LinError, Q, QMat};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::structure::DCat;

/// A functor `P -> Mat(Q)`: a dimension per object and a matrix of shape
/// `dims[cod] x dims[dom]` per morphism, indexed by morphism id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveFunctor {
    pub dims: Vec<usize>,
    pub mats: Vec<QMat>,
}

/// A zero-preserving functor on the pointed category of `R`: matrices are
/// attached to the ambient ids of `R`-morphisms, and every formal zero acts
/// as the zero matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedFunctor {
    pub dims: Vec<usize>,
    pub mats: BTreeMap<MorId, QMat>,
}

/// On-disk form shared by both kinds of functor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    pub dims: Vec<usize>,
    pub mats: BTreeMap<MorId, QMat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorShapeError {
    #[error("expected {expected} dimensions, found {found}")]
    Dims { expected: usize, found: usize },
    #[error("no matrix for {mor}")]
    MissingMatrix { mor: MorId },
    #[error("matrix given for {mor}, which is not a morphism of the category")]
    UnexpectedMatrix { mor: MorId },
    #[error("matrix for {mor} has shape {found:?}, expected {expected:?}")]
    MatrixShape { mor: MorId, expected: (usize, usize), found: (usize, usize) },
}

/// A failed functor law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum FunctorViolation {
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
    /// `g ∘ f` is zero in the pointed category but the matrices multiply to
    /// a non-zero matrix.
    ZeroComposite { g: MorId, f: MorId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl FunctorReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Brings a deserialized matrix with an empty side to its expected shape.
fn conform(mor: MorId, m: QMat, expected: (usize, usize)) -> Result<QMat, FunctorShapeError> {
    if m.shape() == expected {
        Ok(m)
    } else if m.rows() * m.cols() == 0 && expected.0 * expected.1 == 0 {
        Ok(QMat::zeros(expected.0, expected.1))
    } else {
        Err(FunctorShapeError::MatrixShape { mor, expected, found: m.shape() })
    }
}

fn check_dims(n: usize, dims: &[usize]) -> Result<(), FunctorShapeError> {
    if dims.len() != n {
        return Err(FunctorShapeError::Dims { expected: n, found: dims.len() });
    }
    Ok(())
}

impl AdditiveFunctor {
    pub fn new(cat: &FinCat, dims: Vec<usize>, mats: Vec<QMat>) -> Result<Self, FunctorShapeError> {
        check_dims(cat.n_objects(), &dims)?;
        if mats.len() != cat.n_morphisms() {
            let mor = MorId(mats.len().min(cat.n_morphisms()));
            return Err(if mats.len() < cat.n_morphisms() {
                FunctorShapeError::MissingMatrix { mor }
            } else {
                FunctorShapeError::UnexpectedMatrix { mor }
            });
        }
        let mats = cat
            .morphism_ids()
            .zip(mats)
            .map(|(f, m)| conform(f, m, (dims[cat.cod(f).0], dims[cat.dom(f).0])))
            .collect::<Result<_, _>>()?;
        Ok(AdditiveFunctor { dims, mats })
    }

    pub fn zero(cat: &FinCat) -> Self {
        let dims = vec![0; cat.n_objects()];
        AdditiveFunctor { mats: vec![QMat::zeros(0, 0); cat.n_morphisms()], dims }
    }

    /// Every object to `Q`, every morphism to `[1]`.
    pub fn constant(cat: &FinCat) -> Self {
        AdditiveFunctor { dims: vec![1; cat.n_objects()], mats: vec![QMat::identity(1); cat.n_morphisms()] }
    }

    pub fn mat(&self, f: MorId) -> &QMat {
        &self.mats[f.0]
    }

    pub fn from_data(cat: &FinCat, data: FunctorData) -> Result<Self, FunctorShapeError> {
        let mut mats = vec![None; cat.n_morphisms()];
        for (f, m) in data.mats {
            let slot = mats.get_mut(f.0).ok_or(FunctorShapeError::UnexpectedMatrix { mor: f })?;
            *slot = Some(m);
        }
        let mats = mats
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.ok_or(FunctorShapeError::MissingMatrix { mor: MorId(i) }))
            .collect::<Result<_, _>>()?;
        AdditiveFunctor::new(cat, data.dims, mats)
    }

    pub fn to_data(&self) -> FunctorData {
        FunctorData {
            category: None,
            dims: self.dims.clone(),
            mats: self.mats.iter().enumerate().map(|(i, m)| (MorId(i), m.clone())).collect(),
        }
    }
}

impl PointedFunctor {
    pub fn new(d: &DCat, dims: Vec<usize>, mats: BTreeMap<MorId, QMat>) -> Result<Self, FunctorShapeError> {
        check_dims(d.cat().n_objects(), &dims)?;
        let mut out = BTreeMap::new();
        let mut given = mats;
        for r in d.nonzero() {
            let f = d.to_p(r).expect("non-zero morphisms have ambient ids");
            let m = given.remove(&f).ok_or(FunctorShapeError::MissingMatrix { mor: f })?;
            let expected = (dims[d.cat().cod(r).0], dims[d.cat().dom(r).0]);
            out.insert(f, conform(f, m, expected)?);
        }
        if let Some((&mor, _)) = given.iter().next() {
            return Err(FunctorShapeError::UnexpectedMatrix { mor });
        }
        Ok(PointedFunctor { dims, mats: out })
    }

    pub fn zero(d: &DCat) -> Self {
        let mats = d.nonzero().map(|r| (d.to_p(r).unwrap(), QMat::zeros(0, 0))).collect();
        PointedFunctor { dims: vec![0; d.cat().n_objects()], mats }
    }

    /// Matrix of an ambient `R`-morphism; `None` outside `R`.
    pub fn mat(&self, f: MorId) -> Option<&QMat> {
        self.mats.get(&f)
    }

    /// Matrix of a morphism of the pointed category, zero included.
    pub fn mat_d(&self, d: &DCat, r: MorId) -> QMat {
        match d.to_p(r) {
            Some(f) => self.mats[&f].clone(),
            None => QMat::zeros(self.dims[d.cat().cod(r).0], self.dims[d.cat().dom(r).0]),
        }
    }

    pub fn from_data(d: &DCat, data: FunctorData) -> Result<Self, FunctorShapeError> {
        PointedFunctor::new(d, data.dims, data.mats)
    }

    pub fn to_data(&self) -> FunctorData {
        FunctorData { category: None, dims: self.dims.clone(), mats: self.mats.clone() }
    }
}

fn check_shapes(cat: &FinCat, dims: &[usize], mat: impl Fn(MorId) -> QMat) -> Result<(), FunctorShapeError> {
    check_dims(cat.n_objects(), dims)?;
    for f in cat.morphism_ids() {
        let expected = (dims[cat.cod(f).0], dims[cat.dom(f).0]);
        let found = mat(f).shape();
        if found != expected {
            return Err(FunctorShapeError::MatrixShape { mor: f, expected, found });
        }
    }
    Ok(())
}

/// Exhaustively checks identities and every composable pair.
pub fn validate_additive(cat: &FinCat, t: &AdditiveFunctor) -> Result<FunctorReport, FunctorShapeError> {
    if t.mats.len() != cat.n_morphisms() {
        return Err(FunctorShapeError::MissingMatrix { mor: MorId(t.mats.len().min(cat.n_morphisms())) });
    }
    check_shapes(cat, &t.dims, |f| t.mat(f).clone())?;
    let mut violations: Vec<FunctorViolation> = cat
        .objects()
        .filter(|&a| !t.mat(cat.id(a)).is_identity())
        .map(|object| FunctorViolation::Identity { object })
        .collect();
    let pairs: Vec<FunctorViolation> = cat
        .morphism_ids()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&f| {
            cat.out_of_object(cat.cod(f))
                .filter(move |&g| t.mat(g).dot(t.mat(f)) != *t.mat(cat.comp(g, f)))
                .map(move |g| FunctorViolation::Composition { g, f })
                .collect::<Vec<_>>()
        })
        .collect();
    violations.extend(pairs);
    Ok(FunctorReport { violations })
}

/// Exhaustively checks identities, composites inside `R`, and that pairs
/// composing to zero multiply to zero. Violations name the ambient ids.
pub fn validate_pointed(d: &DCat, f: &PointedFunctor) -> Result<FunctorReport, FunctorShapeError> {
    let dc = d.cat();
    for r in d.nonzero() {
        let p = d.to_p(r).unwrap();
        if !f.mats.contains_key(&p) {
            return Err(FunctorShapeError::MissingMatrix { mor: p });
        }
    }
    if let Some(&mor) = f.mats.keys().find(|&&p| d.of_p(p).is_none()) {
        return Err(FunctorShapeError::UnexpectedMatrix { mor });
    }
    check_shapes(dc, &f.dims, |r| f.mat_d(d, r))?;
    let mut violations: Vec<FunctorViolation> = dc
        .objects()
        .filter(|&a| !f.mat_d(d, dc.id(a)).is_identity())
        .map(|object| FunctorViolation::Identity { object })
        .collect();
    let nonzero: Vec<MorId> = d.nonzero().collect();
    let pairs: Vec<FunctorViolation> = nonzero
        .par_iter()
        .flat_map_iter(|&r| {
            let fr = &f.mats[&d.to_p(r).unwrap()];
            let mut out = Vec::new();
            for s in dc.out_of_object(dc.cod(r)).filter(|&s| !d.is_zero(s)) {
                let (gp, fp) = (d.to_p(s).unwrap(), d.to_p(r).unwrap());
                let product = f.mats[&gp].dot(fr);
                let sr = dc.comp(s, r);
                match d.to_p(sr) {
                    Some(c) if product != f.mats[&c] => out.push(FunctorViolation::Composition { g: gp, f: fp }),
                    None if !product.is_zero() => out.push(FunctorViolation::ZeroComposite { g: gp, f: fp }),
                    _ => {}
                }
            }
            out
        })
        .collect();
    violations.extend(pairs);
    Ok(FunctorReport { violations })
}

/// Components of a natural transformation, one per object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatTransform {
    pub components: Vec<QMat>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NatError {
    #[error("expected {expected} components, found {found}")]
    Count { expected: usize, found: usize },
    #[error("component at {object} has shape {found:?}, expected {expected:?}")]
    Shape { object: ObjId, expected: (usize, usize), found: (usize, usize) },
    #[error(transparent)]
    Lin(#[from] LinError),
}

impl NatTransform {
    pub fn identity(dims: &[usize]) -> Self {
        NatTransform { components: dims.iter().map(|&n| QMat::identity(n)).collect() }
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| c.is_square() && c.rank() == c.rows())
    }

    pub fn inverse(&self) -> Result<NatTransform, LinError> {
        Ok(NatTransform { components: self.components.iter().map(QMat::inverse).collect::<Result<_, _>>()? })
    }

    fn check(&self, src: &[usize], tgt: &[usize]) -> Result<(), NatError> {
        if self.components.len() != src.len() || src.len() != tgt.len() {
            return Err(NatError::Count { expected: src.len(), found: self.components.len() });
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.shape() != (tgt[i], src[i]) {
                return Err(NatError::Shape { object: ObjId(i), expected: (tgt[i], src[i]), found: c.shape() });
            }
        }
        Ok(())
    }
}

/// Componentwise `after ∘ before`.
pub fn compose_nat(after: &NatTransform, before: &NatTransform) -> Result<NatTransform, NatError> {
    if after.components.len() != before.components.len() {
        return Err(NatError::Count { expected: before.components.len(), found: after.components.len() });
    }
    let components =
        after.components.iter().zip(&before.components).map(|(a, b)| a.mul(b)).collect::<Result<_, _>>()?;
    Ok(NatTransform { components })
}

/// Morphisms `f` whose naturality square `tgt(f) α_A = α_B src(f)` fails.
pub fn naturality_additive(
    cat: &FinCat,
    alpha: &NatTransform,
    src: &AdditiveFunctor,
    tgt: &AdditiveFunctor,
) -> Result<Vec<MorId>, NatError> {
    alpha.check(&src.dims, &tgt.dims)?;
    let ids: Vec<MorId> = cat.morphism_ids().collect();
    Ok(ids
        .into_par_iter()
        .filter(|&f| {
            let (a, b) = (cat.dom(f).0, cat.cod(f).0);
            tgt.mat(f).dot(&alpha.components[a]) != alpha.components[b].dot(src.mat(f))
        })
        .collect())
}

/// Ambient ids of `R`-morphisms whose naturality square fails. Zero
/// morphisms commute with everything.
pub fn naturality_pointed(
    d: &DCat,
    alpha: &NatTransform,
    src: &PointedFunctor,
    tgt: &PointedFunctor,
) -> Result<Vec<MorId>, NatError> {
    alpha.check(&src.dims, &tgt.dims)?;
    let ids: Vec<MorId> = d.nonzero().collect();
    Ok(ids
        .into_par_iter()
        .filter_map(|r| {
            let (a, b) = (d.cat().dom(r).0, d.cat().cod(r).0);
            let f = d.to_p(r).unwrap();
            (tgt.mats[&f].dot(&alpha.components[a]) != alpha.components[b].dot(&src.mats[&f])).then_some(f)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("no zero-preserving functor assembled from the available pieces has dimensions {dims:?}")]
    InfeasibleRelations { dims: Vec<usize> },
    #[error(transparent)]
    Shape(#[from] FunctorShapeError),
}

/// The linearization of `D(s, -)` with the zero morphisms identified to 0.
pub fn representable(d: &DCat, s: ObjId) -> PointedFunctor {
    let dc = d.cat();
    let basis: Vec<Vec<MorId>> =
        dc.objects().map(|x| dc.hom(s, x).iter().copied().filter(|&u| !d.is_zero(u)).collect()).collect();
    let mats = d
        .nonzero()
        .map(|r| {
            let (x, y) = (dc.dom(r).0, dc.cod(r).0);
            let mut m = QMat::zeros(basis[y].len(), basis[x].len());
            for (j, &u) in basis[x].iter().enumerate() {
                let ru = dc.comp(r, u);
                if let Some(i) = basis[y].iter().position(|&v| v == ru) {
                    m[(i, j)] = Q::one();
                }
            }
            (d.to_p(r).unwrap(), m)
        })
        .collect();
    PointedFunctor { dims: basis.iter().map(Vec::len).collect(), mats }
}

/// `Q` at `s` with every non-zero endomorphism acting as 1 and everything
/// else as 0, if that is a functor.
pub fn singleton(d: &DCat, s: ObjId) -> Option<PointedFunctor> {
    let dc = d.cat();
    let dims: Vec<usize> = dc.objects().map(|x| usize::from(x == s)).collect();
    let mats = d
        .nonzero()
        .map(|r| {
            let (x, y) = (dc.dom(r), dc.cod(r));
            let m = if x == s && y == s { QMat::identity(1) } else { QMat::zeros(dims[y.0], dims[x.0]) };
            (d.to_p(r).unwrap(), m)
        })
        .collect();
    let f = PointedFunctor { dims, mats };
    validate_pointed(d, &f).ok()?.is_valid().then_some(f)
}

/// Objectwise direct sum.
pub fn direct_sum(parts: &[PointedFunctor]) -> Option<PointedFunctor> {
    let first = parts.first()?;
    let dims = (0..first.dims.len()).map(|i| parts.iter().map(|p| p.dims[i]).sum()).collect();
    let mats = first.mats.keys().map(|&f| (f, QMat::diagonal_sum(parts.iter().map(|p| &p.mats[&f])))).collect();
    Some(PointedFunctor { dims, mats })
}

/// Transports `f` along the isomorphisms `p_x: F x -> F' x`.
pub fn conjugate(d: &DCat, f: &PointedFunctor, p: &[QMat]) -> Result<PointedFunctor, LinError> {
    let inv: Vec<QMat> = p.iter().map(QMat::inverse).collect::<Result<_, _>>()?;
    let dc = d.cat();
    let mut mats = BTreeMap::new();
    for r in d.nonzero() {
        let fp = d.to_p(r).unwrap();
        let m = p[dc.cod(r).0].mul(&f.mats[&fp])?.mul(&inv[dc.dom(r).0])?;
        mats.insert(fp, m);
    }
    Ok(PointedFunctor { dims: f.dims.clone(), mats })
}

/// Lower times upper unitriangular, with small integer entries.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> QMat {
    let mut l = QMat::identity(n);
    let mut u = QMat::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = Q::from_int(rng.random_range(-2..=2));
            u[(j, i)] = Q::from_int(rng.random_range(-2..=2));
        }
    }
    l.dot(&u)
}

const SEARCH_BUDGET: usize = 100_000;

/// Depth-first search for a multiset of pieces whose dimensions add up to
/// `rem`, covering the lowest uncovered object first.
fn cover(
    pieces: &[(PointedFunctor, bool)],
    rem: &mut [usize],
    chosen: &mut Vec<usize>,
    rng: &mut ChaCha8Rng,
    budget: &mut usize,
) -> bool {
    let Some(i) = rem.iter().position(|&x| x > 0) else {
        return true;
    };
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let mut candidates: Vec<usize> = (0..pieces.len())
        .filter(|&k| pieces[k].0.dims[i] > 0 && pieces[k].0.dims.iter().zip(rem.iter()).all(|(a, b)| a <= b))
        .collect();
    candidates.shuffle(rng);
    if rng.random_bool(0.75) {
        // representables first
        candidates.sort_by_key(|&k| !pieces[k].1);
    }
    for k in candidates {
        for (r, a) in rem.iter_mut().zip(&pieces[k].0.dims) {
            *r -= a;
        }
        chosen.push(k);
        if cover(pieces, rem, chosen, rng, budget) {
            return true;
        }
        chosen.pop();
        for (r, a) in rem.iter_mut().zip(&pieces[k].0.dims) {
            *r += a;
        }
    }
    false
}

/// A seeded zero-preserving functor with the requested dimensions.
///
/// The functor is a direct sum of representables and one-dimensional
/// pieces, which satisfy every relation of `d` by construction, transported
/// along random integer changes of basis at each object.
pub fn random_pointed_functor(d: &DCat, dims: &[usize], seed: u64) -> Result<PointedFunctor, GenerateError> {
    check_dims(d.cat().n_objects(), dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces: Vec<(PointedFunctor, bool)> = Vec::new();
    for s in d.cat().objects() {
        pieces.push((representable(d, s), true));
        if let Some(f) = singleton(d, s) {
            pieces.push((f, false));
        }
    }
    let mut rem = dims.to_vec();
    let mut chosen = Vec::new();
    let mut budget = SEARCH_BUDGET;
    if !cover(&pieces, &mut rem, &mut chosen, &mut rng, &mut budget) {
        return Err(GenerateError::InfeasibleRelations { dims: dims.to_vec() });
    }
    let parts: Vec<PointedFunctor> = chosen.iter().map(|&k| pieces[k].0.clone()).collect();
    let sum = direct_sum(&parts).unwrap_or_else(|| PointedFunctor::zero(d));
    let p: Vec<QMat> = dims.iter().map(|&n| random_unimodular(&mut rng, n)).collect();
    Ok(conjugate(d, &sum, &p).expect("unitriangular products are invertible"))
}

/// `count` seeded functors whose dimensions are drawn from `0..=max_dim`
/// per object, redrawing dimensions the relations cannot realize.
pub fn seeded_family(d: &DCat, count: usize, seed: u64, max_dim: usize) -> Vec<PointedFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = d.cat().n_objects();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let dims: Vec<usize> = (0..n).map(|_| rng.random_range(0..=max_dim)).collect();
        if let Ok(f) = random_pointed_functor(d, &dims, rng.random()) {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{delta_bt, fi_sharp};
    use crate::structure::{build_d, Setting};

    fn d_of(s: crate::structure::MRStructure) -> DCat {
        build_d(&Setting::analyze(s).unwrap())
    }

    #[test]
    fn constant_functor_is_valid() {
        let s = delta_bt(3).unwrap();
        let t = AdditiveFunctor::constant(s.cat());
        assert!(validate_additive(s.cat(), &t).unwrap().is_valid());
    }

    #[test]
    fn nonzero_double_differential_is_reported() {
        let d = d_of(delta_bt(3).unwrap());
        let mut f = representable(&d, ObjId(2));
        // Q everywhere, with both differentials the identity
        f.dims = vec![1, 1, 1];
        for m in f.mats.values_mut() {
            *m = QMat::identity(1);
        }
        let report = validate_pointed(&d, &f).unwrap();
        assert!(report.violations.iter().any(|v| matches!(v, FunctorViolation::ZeroComposite { .. })));
    }

    #[test]
    fn wrong_shape_is_an_error() {
        let s = delta_bt(2).unwrap();
        let mut t = AdditiveFunctor::constant(s.cat());
        t.mats[0] = QMat::identity(2);
        assert!(matches!(validate_additive(s.cat(), &t), Err(FunctorShapeError::MatrixShape { .. })));
    }

    #[test]
    fn generator_respects_dims_and_relations() {
        let d = d_of(delta_bt(4).unwrap());
        for seed in 0..5 {
            let f = random_pointed_functor(&d, &[1, 2, 2, 3], seed).unwrap();
            assert_eq!(f.dims, vec![1, 2, 2, 3]);
            assert!(validate_pointed(&d, &f).unwrap().is_valid());
        }
        let z = random_pointed_functor(&d, &[0; 4], 0).unwrap();
        assert_eq!(z, PointedFunctor::zero(&d));
        assert_eq!(random_pointed_functor(&d, &[1, 2, 2, 3], 9), random_pointed_functor(&d, &[1, 2, 2, 3], 9));
    }

    #[test]
    fn symmetric_group_actions_are_involutions() {
        let d = d_of(fi_sharp(2).unwrap());
        let f = random_pointed_functor(&d, &[1, 1, 2], 3).unwrap();
        assert!(validate_pointed(&d, &f).unwrap().is_valid());
        for (&p, m) in &f.mats {
            let r = d.of_p(p).unwrap();
            if d.cat().dom(r) == ObjId(2) && d.cat().cod(r) == ObjId(2) {
                assert!(m.dot(m).is_identity());
            }
        }
    }

    #[test]
    fn nat_transform_basics() {
        let id = NatTransform::identity(&[2, 0, 1]);
        assert!(id.is_iso());
        let mut singular = id.clone();
        singular.components[0] = QMat::from_ints(&[[1, 1], [1, 1]]);
        assert!(!singular.is_iso());
        assert_eq!(compose_nat(&id, &singular).unwrap(), singular);
    }

    #[test]
    fn functor_json_round_trip() {
        let d = d_of(delta_bt(3).unwrap());
        let f = random_pointed_functor(&d, &[1, 2, 1], 1).unwrap();
        let text = serde_json::to_string(&f.to_data()).unwrap();
        let back = PointedFunctor::from_data(&d, serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
