//! A finite category with a subcategory `M` of split monomorphisms and a
//! chosen retraction `m*` for each `m ∈ M`, together with everything derived
//! from that data: the classes `R`, `S`, `K`, the factorization
//! `f = n ∘ r ∘ m*`, subobject posets, and the zero-morphism category `D`.

mod assumptions;
mod coend;
mod dcat;
mod subposet;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fincat::{check_category, FinCat, FinCatData, LawViolation, MorId, Morphism, ObjId, ShapeError};

pub use assumptions::{
    check_assumptions, factorization_properties, idempotent_ordering, AssumptionCheck, AssumptionReport, OrderingError,
    PropertyViolation, Witness,
};
pub use coend::{verify_twocoends, CoendPairReport, CoendReport};
pub use dcat::{build_d, DCat};
pub use subposet::{SubClass, SubPoset};

/// A finite category together with `M` and the star assignment. Only the
/// shape is checked on construction; [`MRStructure::validate`] checks the
/// axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MRStructureData", into = "MRStructureData")]
pub struct MRStructure {
    cat: FinCat,
    m_class: Vec<bool>,
    star: Vec<Option<MorId>>,
}

/// Interchange form: the category tables plus `m_class` and `star`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MRStructureData {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<MorId>,
    pub comp: Vec<Vec<i64>>,
    pub m_class: Vec<MorId>,
    pub star: BTreeMap<MorId, MorId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureShapeError {
    #[error(transparent)]
    Category(#[from] ShapeError),
    #[error("m_class lists morphism {0} which does not exist")]
    DanglingM(usize),
    #[error("star maps {0} to {1}, one of which does not exist")]
    DanglingStar(usize, usize),
}

/// A failed axiom of the `(M, star)` data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureViolation {
    Category { violation: LawViolation },
    IdentityNotInM { object: ObjId },
    IsoNotInM { f: MorId },
    /// `g ∘ f` leaves `M` although `g, f ∈ M`.
    NotClosed { g: MorId, f: MorId },
    StarMissing { m: MorId },
    StarOutsideM { f: MorId },
    StarEndpoints { m: MorId, star: MorId },
    /// `star(m) ∘ m` is not the identity.
    StarNotRetraction { m: MorId, star: MorId },
    StarOfIdentity { object: ObjId },
    /// `star(g ∘ f) != star(f) ∘ star(g)`.
    StarNotFunctorial { g: MorId, f: MorId },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("structure violates {} axiom instance(s); first: {:?}", .0.len(), .0.first())]
    Invalid(Vec<StructureViolation>),
}

impl MRStructure {
    pub fn new(
        cat: FinCat,
        m_ids: impl IntoIterator<Item = MorId>,
        star: impl IntoIterator<Item = (MorId, MorId)>,
    ) -> Result<MRStructure, StructureShapeError> {
        let n = cat.n_morphisms();
        let mut m_class = vec![false; n];
        for m in m_ids {
            if m.0 >= n {
                return Err(StructureShapeError::DanglingM(m.0));
            }
            m_class[m.0] = true;
        }
        let mut st = vec![None; n];
        for (m, s) in star {
            if m.0 >= n || s.0 >= n {
                return Err(StructureShapeError::DanglingStar(m.0, s.0));
            }
            st[m.0] = Some(s);
        }
        Ok(MRStructure { cat, m_class, star: st })
    }

    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn in_m(&self, f: MorId) -> bool {
        self.m_class[f.0]
    }

    pub fn m_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        self.cat.morphism_ids().filter(|&f| self.m_class[f.0])
    }

    /// The assigned retraction, if any.
    pub fn try_star(&self, m: MorId) -> Option<MorId> {
        self.star[m.0]
    }

    /// The assigned retraction; panics when `m` has none.
    pub fn star(&self, m: MorId) -> MorId {
        self.star[m.0].unwrap_or_else(|| panic!("{m} has no star"))
    }

    /// Replaces one star entry; used to build negative controls.
    pub fn with_star(&self, m: MorId, s: MorId) -> MRStructure {
        let mut out = self.clone();
        out.star[m.0] = Some(s);
        out
    }

    /// Every failed axiom instance. Category law failures are reported alone,
    /// since the remaining checks compose morphisms.
    pub fn validate(&self) -> Vec<StructureViolation> {
        let report = check_category(&self.cat);
        if !report.is_valid() {
            return report.violations.into_iter().map(|violation| StructureViolation::Category { violation }).collect();
        }
        let c = &self.cat;
        let mut out = Vec::new();
        for a in c.objects() {
            if !self.in_m(c.id(a)) {
                out.push(StructureViolation::IdentityNotInM { object: a });
            }
        }
        for f in c.morphism_ids() {
            if c.is_iso(f) && !self.in_m(f) {
                out.push(StructureViolation::IsoNotInM { f });
            }
        }
        for g in self.m_ids() {
            for f in self.m_ids() {
                if c.cod(f) == c.dom(g) && !self.in_m(c.comp(g, f)) {
                    out.push(StructureViolation::NotClosed { g, f });
                }
            }
        }
        let mut star_ok = vec![false; c.n_morphisms()];
        for f in c.morphism_ids() {
            match (self.in_m(f), self.star[f.0]) {
                (true, None) => out.push(StructureViolation::StarMissing { m: f }),
                (false, Some(_)) => out.push(StructureViolation::StarOutsideM { f }),
                (true, Some(s)) => {
                    if c.dom(s) != c.cod(f) || c.cod(s) != c.dom(f) {
                        out.push(StructureViolation::StarEndpoints { m: f, star: s });
                    } else if c.comp(s, f) != c.id(c.dom(f)) {
                        out.push(StructureViolation::StarNotRetraction { m: f, star: s });
                        star_ok[f.0] = true;
                    } else {
                        star_ok[f.0] = true;
                    }
                }
                (false, None) => {}
            }
        }
        for a in c.objects() {
            let i = c.id(a);
            if star_ok[i.0] && self.star(i) != i {
                out.push(StructureViolation::StarOfIdentity { object: a });
            }
        }
        for g in self.m_ids() {
            for f in self.m_ids() {
                if c.cod(f) != c.dom(g) {
                    continue;
                }
                let gf = c.comp(g, f);
                if !(star_ok[g.0] && star_ok[f.0] && self.in_m(gf) && star_ok[gf.0]) {
                    continue;
                }
                if self.star(gf) != c.comp(self.star(f), self.star(g)) {
                    out.push(StructureViolation::StarNotFunctorial { g, f });
                }
            }
        }
        out
    }
}

impl TryFrom<MRStructureData> for MRStructure {
    type Error = StructureShapeError;

    fn try_from(d: MRStructureData) -> Result<MRStructure, StructureShapeError> {
        let cat = FinCat::try_from(FinCatData {
            objects: d.objects,
            morphisms: d.morphisms,
            identities: d.identities,
            comp: d.comp,
        })?;
        MRStructure::new(cat, d.m_class, d.star)
    }
}

impl From<MRStructure> for MRStructureData {
    fn from(s: MRStructure) -> MRStructureData {
        let m_class = s.m_ids().collect();
        let star = s.cat.morphism_ids().filter_map(|m| s.star[m.0].map(|t| (m, t))).collect();
        let cat = FinCatData::from(s.cat);
        MRStructureData {
            objects: cat.objects,
            morphisms: cat.morphisms,
            identities: cat.identities,
            comp: cat.comp,
            m_class,
            star,
        }
    }
}

/// A triple with `f = n ∘ r ∘ star(m)`, `n, m ∈ M`, `r ∈ R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    pub n: MorId,
    pub r: MorId,
    pub m: MorId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum FactorError {
    #[error("{f} does not factor as n ∘ r ∘ m*")]
    NoFactorization { f: MorId },
    #[error("{f} has two factorizations not related by isomorphisms: {first:?} and {second:?}")]
    AmbiguousFactorization { f: MorId, first: Factorization, second: Factorization },
}

/// The sets derived from an `(M, star)` structure, as sorted id lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedClasses {
    pub r_class: Vec<MorId>,
    pub s_class: Vec<MorId>,
    pub k_class: Vec<MorId>,
    pub i_class: Vec<MorId>,
}

/// `R`: the `r` such that `r = m ∘ x ∘ n*` with `m, n ∈ M` forces `m, n`
/// invertible. Such a decomposition with `m` or `n` non-invertible exists
/// exactly when `r = m ∘ x` or `r = y ∘ n*` for a non-invertible `m` or `n`,
/// which is what is searched.
pub fn compute_r(s: &MRStructure) -> Vec<bool> {
    let c = s.cat();
    let isos = c.isos();
    let mut in_r = vec![true; c.n_morphisms()];
    for m in s.m_ids().filter(|m| !isos[m.0]) {
        for x in c.into_object(c.dom(m)) {
            in_r[c.comp(m, x).0] = false;
        }
        let ms = s.star(m);
        for y in c.out_of_object(c.cod(ms)) {
            in_r[c.comp(y, ms).0] = false;
        }
    }
    in_r
}

/// An `(M, star)` structure that has passed validation, with all derived
/// data computed once.
#[derive(Clone, Debug)]
pub struct Setting {
    base: MRStructure,
    isos: Vec<bool>,
    r: Vec<bool>,
    s: Vec<bool>,
    k: Vec<bool>,
    /// `R`-morphisms by `(dom, cod)`.
    r_homs: Vec<Vec<MorId>>,
    /// Canonical member of the subobject class of each `m ∈ M`.
    class_rep: Vec<Option<MorId>>,
    /// Index of the class of each `m ∈ M` in the subobject poset of `cod m`.
    class_index: Vec<Option<usize>>,
    subs: Vec<SubPoset>,
    factors: Vec<Result<Factorization, FactorError>>,
}

impl Setting {
    pub fn analyze(base: MRStructure) -> Result<Setting, StructureError> {
        let violations = base.validate();
        if !violations.is_empty() {
            return Err(StructureError::Invalid(violations));
        }
        let c = base.cat();
        let n = c.n_morphisms();
        let n_obj = c.n_objects();
        let isos = c.isos();
        let r = compute_r(&base);
        let mut s = vec![false; n];
        let mut k = vec![false; n];
        for m in base.m_ids() {
            let ms = base.star(m);
            for x in c.out_of_object(c.cod(ms)) {
                if r[x.0] {
                    s[c.comp(x, ms).0] = true;
                }
                if base.in_m(x) {
                    k[c.comp(x, ms).0] = true;
                }
            }
        }
        let mut r_homs = vec![Vec::new(); n_obj * n_obj];
        for f in c.morphism_ids().filter(|f| r[f.0]) {
            r_homs[c.dom(f).0 * n_obj + c.cod(f).0].push(f);
        }

        let mut class_rep = vec![None; n];
        for m in base.m_ids() {
            if class_rep[m.0].is_some() {
                continue;
            }
            let mut orbit: Vec<MorId> = c
                .into_object(c.dom(m))
                .filter(|i| isos[i.0])
                .map(|i| c.comp(m, i))
                .collect();
            orbit.sort();
            orbit.dedup();
            let id = c.id(c.cod(m));
            let rep = if orbit.contains(&id) { id } else { orbit[0] };
            for x in orbit {
                class_rep[x.0] = Some(rep);
            }
        }

        let subs: Vec<SubPoset> = c.objects().map(|a| SubPoset::build(&base, &class_rep, a)).collect();
        let mut class_index = vec![None; n];
        for sp in &subs {
            for (i, cl) in sp.classes().iter().enumerate() {
                for &m in &cl.members {
                    class_index[m.0] = Some(i);
                }
            }
        }

        let mut setting =
            Setting { base, isos, r, s, k, r_homs, class_rep, class_index, subs, factors: Vec::new() };
        setting.factors = setting.compute_factors();
        Ok(setting)
    }

    fn compute_factors(&self) -> Vec<Result<Factorization, FactorError>> {
        let c = self.cat();
        let mut found: Vec<Vec<Factorization>> = vec![Vec::new(); c.n_morphisms()];
        let reps: Vec<MorId> = self.subs.iter().flat_map(|sp| sp.classes().iter().map(|cl| cl.rep)).collect();
        for &m in &reps {
            let ms = self.base.star(m);
            for &n in &reps {
                for &r in self.r_hom(c.dom(m), c.dom(n)) {
                    let f = c.comp3(n, r, ms);
                    found[f.0].push(Factorization { n, r, m });
                }
            }
        }
        found
            .into_iter()
            .enumerate()
            .map(|(i, cands)| {
                let f = MorId(i);
                let first = *cands.first().ok_or(FactorError::NoFactorization { f })?;
                for &second in &cands[1..] {
                    if self.conjugating_isos(&first, &second).is_none() {
                        return Err(FactorError::AmbiguousFactorization { f, first, second });
                    }
                }
                Ok(first)
            })
            .collect()
    }

    pub fn structure(&self) -> &MRStructure {
        &self.base
    }

    pub fn cat(&self) -> &FinCat {
        self.base.cat()
    }

    pub fn in_m(&self, f: MorId) -> bool {
        self.base.in_m(f)
    }

    pub fn star(&self, m: MorId) -> MorId {
        self.base.star(m)
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.isos[f.0]
    }

    pub fn in_r(&self, f: MorId) -> bool {
        self.r[f.0]
    }

    pub fn in_s(&self, f: MorId) -> bool {
        self.s[f.0]
    }

    pub fn in_k(&self, f: MorId) -> bool {
        self.k[f.0]
    }

    pub fn r_hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.r_homs[a.0 * self.cat().n_objects() + b.0]
    }

    pub fn r_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        self.cat().morphism_ids().filter(|f| self.r[f.0])
    }

    pub fn derived(&self) -> DerivedClasses {
        let pick = |v: &[bool]| self.cat().morphism_ids().filter(|f| v[f.0]).collect();
        DerivedClasses { r_class: pick(&self.r), s_class: pick(&self.s), k_class: pick(&self.k), i_class: pick(&self.isos) }
    }

    /// Canonical member of the subobject class of `m ∈ M`: the identity for
    /// the whole object, otherwise the least id in the class.
    pub fn class_rep(&self, m: MorId) -> MorId {
        self.class_rep[m.0].unwrap_or_else(|| panic!("{m} is not in M"))
    }

    /// Position of the class of `m ∈ M` in the subobject poset of `cod m`.
    pub fn class_index(&self, m: MorId) -> usize {
        self.class_index[m.0].unwrap_or_else(|| panic!("{m} is not in M"))
    }

    pub fn sub_poset(&self, a: ObjId) -> &SubPoset {
        &self.subs[a.0]
    }

    /// The factorization `f = n ∘ r ∘ m*` with `n` and `m` canonical class
    /// members.
    pub fn factorize(&self, f: MorId) -> Result<Factorization, FactorError> {
        self.factors[f.0].clone()
    }

    /// Isos `(α, β)` with `b.n ∘ α = a.n`, `b.m ∘ β = a.m` and
    /// `b.r ∘ β = α ∘ a.r`, if they exist.
    pub fn conjugating_isos(&self, a: &Factorization, b: &Factorization) -> Option<(MorId, MorId)> {
        let c = self.cat();
        if c.cod(a.n) != c.cod(b.n) || c.cod(a.m) != c.cod(b.m) {
            return None;
        }
        let alpha = c.comp(self.star(b.n), a.n);
        let beta = c.comp(self.star(b.m), a.m);
        let ok = self.isos[alpha.0]
            && self.isos[beta.0]
            && c.comp(b.n, alpha) == a.n
            && c.comp(b.m, beta) == a.m
            && c.comp(b.r, beta) == c.comp(alpha, a.r);
        ok.then_some((alpha, beta))
    }

    /// `s_u = r ∘ m*` from the factorization of `u`, so that `u = m_u ∘ s_u`.
    pub fn s_u(&self, u: MorId) -> Result<MorId, FactorError> {
        let fz = self.factorize(u)?;
        Ok(self.cat().comp(fz.r, self.star(fz.m)))
    }

    /// `m_u = n` from the factorization of `u`.
    pub fn m_u(&self, u: MorId) -> Result<MorId, FactorError> {
        Ok(self.factorize(u)?.n)
    }

    /// Whether `s_u ∈ R`, which holds exactly when the `M*`-part of the
    /// factorization is invertible (canonically, an identity).
    pub fn s_u_in_r(&self, u: MorId) -> Result<bool, FactorError> {
        let fz = self.factorize(u)?;
        Ok(self.cat().is_identity(fz.m))
    }
}
