//! Finite categories stored extensionally: every morphism listed, every
//! composite tabulated.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorId(pub usize);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for MorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub dom: ObjId,
    pub cod: ObjId,
    #[serde(default)]
    pub label: String,
}

/// Malformed tables: ids out of range or wrong table dimensions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("{what} {index} refers to morphism {id} but only {count} exist")]
    DanglingMorphism { what: &'static str, index: usize, id: usize, count: usize },
    #[error("morphism {index} refers to object {id} but only {count} exist")]
    DanglingObject { index: usize, id: usize, count: usize },
    #[error("expected {expected} identities, found {found}")]
    IdentityCount { expected: usize, found: usize },
    #[error("composition table must be {n} x {n}; row {row} has length {len}")]
    CompShape { n: usize, row: usize, len: usize },
    #[error("composition table has {found} rows, expected {n}")]
    CompRows { n: usize, found: usize },
    #[error("invalid composition entry {value} at [{g}][{f}]")]
    CompEntry { g: usize, f: usize, value: i64 },
}

/// A failed instance of a category law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawViolation {
    /// The identity assigned to an object does not go from it to itself.
    IdentityEndpoints { object: ObjId, identity: MorId },
    /// `comp[g][f]` is defined although `cod f != dom g`, or undefined although they match.
    Definedness { g: MorId, f: MorId },
    /// `comp[g][f]` does not go from `dom f` to `cod g`.
    CompositeEndpoints { g: MorId, f: MorId, composite: MorId },
    LeftIdentity { f: MorId },
    RightIdentity { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<LawViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinCatData", into = "FinCatData")]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    /// `comp[g * n + f]` is `g ∘ f`.
    comp: Vec<Option<MorId>>,
    /// Morphisms from `a` to `b` at `homs[a * n_objects + b]`, in index order.
    homs: Vec<Vec<MorId>>,
}

impl FinCat {
    /// Builds a category from raw tables. Only the shape is checked here;
    /// the category laws are checked by [`check_category`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        comp: Vec<Vec<Option<MorId>>>,
    ) -> Result<FinCat, ShapeError> {
        let n_obj = objects.len();
        let n = morphisms.len();
        for (index, m) in morphisms.iter().enumerate() {
            for id in [m.dom.0, m.cod.0] {
                if id >= n_obj {
                    return Err(ShapeError::DanglingObject { index, id, count: n_obj });
                }
            }
        }
        if identities.len() != n_obj {
            return Err(ShapeError::IdentityCount { expected: n_obj, found: identities.len() });
        }
        for (index, id) in identities.iter().enumerate() {
            if id.0 >= n {
                return Err(ShapeError::DanglingMorphism { what: "identity", index, id: id.0, count: n });
            }
        }
        if comp.len() != n {
            return Err(ShapeError::CompRows { n, found: comp.len() });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, r) in comp.into_iter().enumerate() {
            if r.len() != n {
                return Err(ShapeError::CompShape { n, row, len: r.len() });
            }
            for (f, e) in r.iter().enumerate() {
                if let Some(id) = e {
                    if id.0 >= n {
                        return Err(ShapeError::DanglingMorphism { what: "composite", index: row * n + f, id: id.0, count: n });
                    }
                }
            }
            flat.extend(r);
        }
        Ok(Self::from_flat(objects, morphisms, identities, flat))
    }

    fn from_flat(objects: Vec<String>, morphisms: Vec<Morphism>, identities: Vec<MorId>, comp: Vec<Option<MorId>>) -> FinCat {
        let n_obj = objects.len();
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.dom.0 * n_obj + m.cod.0].push(MorId(i));
        }
        FinCat { objects, morphisms, identities, comp, homs }
    }

    /// Builds the full table from a composition function, which is only
    /// called on composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> MorId,
    ) -> FinCat {
        let n = morphisms.len();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if morphisms[f].cod == morphisms[g].dom {
                    comp[g * n + f] = Some(compose(MorId(g), MorId(f)));
                }
            }
        }
        Self::from_flat(objects, morphisms, identities, comp)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_label(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn object_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.0]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn label(&self, f: MorId) -> &str {
        &self.morphisms[f.0].label
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].cod
    }

    pub fn id(&self, a: ObjId) -> MorId {
        self.identities[a.0]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identities
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.dom(f).0] == f
    }

    /// `g ∘ f` when tabulated.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.comp[g.0 * self.morphisms.len() + f.0]
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| panic!("{g} ∘ {f} is not defined"))
    }

    /// `h ∘ g ∘ f`; panics if not composable.
    pub fn comp3(&self, h: MorId, g: MorId, f: MorId) -> MorId {
        self.comp(h, self.comp(g, f))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    /// Morphisms with the given codomain, by increasing domain then index.
    pub fn into_object(&self, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.objects().flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn out_of_object(&self, a: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.objects().flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom(f), self.cod(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == self.id(a) && self.comp(f, g) == self.id(b))
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Membership table of the invertible morphisms.
    pub fn isos(&self) -> Vec<bool> {
        self.morphism_ids().map(|f| self.is_iso(f)).collect()
    }

    pub fn opposite(&self) -> FinCat {
        let n = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { dom: m.cod, cod: m.dom, label: m.label.clone() })
            .collect();
        let mut comp = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                comp[g * n + f] = self.comp[f * n + g];
            }
        }
        Self::from_flat(self.objects.clone(), morphisms, self.identities.clone(), comp)
    }

    /// Structural equality of the tables, ignoring labels.
    pub fn same_tables(&self, other: &FinCat) -> bool {
        self.objects.len() == other.objects.len()
            && self.identities == other.identities
            && self.comp == other.comp
            && self.morphisms.iter().zip(&other.morphisms).all(|(a, b)| a.dom == b.dom && a.cod == b.cod)
            && self.morphisms.len() == other.morphisms.len()
    }
}

/// Interchange form of a [`FinCat`]; `-1` marks an undefined composite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatData {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<MorId>,
    pub comp: Vec<Vec<i64>>,
}

impl TryFrom<FinCatData> for FinCat {
    type Error = ShapeError;

    fn try_from(d: FinCatData) -> Result<FinCat, ShapeError> {
        let mut comp = Vec::with_capacity(d.comp.len());
        for (g, row) in d.comp.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (f, &v) in row.iter().enumerate() {
                out.push(match v {
                    -1 => None,
                    v if v >= 0 => Some(MorId(v as usize)),
                    value => return Err(ShapeError::CompEntry { g, f, value }),
                });
            }
            comp.push(out);
        }
        FinCat::new(d.objects, d.morphisms, d.identities, comp)
    }
}

impl From<FinCat> for FinCatData {
    fn from(c: FinCat) -> FinCatData {
        let n = c.n_morphisms();
        let comp = (0..n)
            .map(|g| (0..n).map(|f| c.comp[g * n + f].map_or(-1, |k| k.0 as i64)).collect())
            .collect();
        FinCatData { objects: c.objects, morphisms: c.morphisms, identities: c.identities, comp }
    }
}

/// Checks the category laws at every instance.
pub fn check_category(c: &FinCat) -> ValidationReport {
    let mut violations = Vec::new();
    for a in c.objects() {
        let i = c.id(a);
        if c.dom(i) != a || c.cod(i) != a {
            violations.push(LawViolation::IdentityEndpoints { object: a, identity: i });
        }
    }
    let n = c.n_morphisms();
    for g in c.morphism_ids() {
        for f in c.morphism_ids() {
            let composable = c.cod(f) == c.dom(g);
            match c.compose(g, f) {
                Some(k) if composable => {
                    if c.dom(k) != c.dom(f) || c.cod(k) != c.cod(g) {
                        violations.push(LawViolation::CompositeEndpoints { g, f, composite: k });
                    }
                }
                None if !composable => {}
                _ => violations.push(LawViolation::Definedness { g, f }),
            }
        }
    }
    if !violations.is_empty() {
        // Identity and associativity instances are meaningless on a table
        // whose definedness pattern is broken.
        return ValidationReport { violations };
    }
    for f in c.morphism_ids() {
        if c.comp(c.id(c.cod(f)), f) != f {
            violations.push(LawViolation::LeftIdentity { f });
        }
        if c.comp(f, c.id(c.dom(f))) != f {
            violations.push(LawViolation::RightIdentity { f });
        }
    }
    let assoc: Vec<LawViolation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|fi| {
            let f = MorId(fi);
            let mut out = Vec::new();
            let b = c.cod(f);
            for gc in c.objects() {
                for &g in c.hom(b, gc) {
                    let gf = c.comp(g, f);
                    for d in c.objects() {
                        for &h in c.hom(gc, d) {
                            if c.comp(h, gf) != c.comp(c.comp(h, g), f) {
                                out.push(LawViolation::Associativity { h, g, f });
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    violations.extend(assoc);
    ValidationReport { violations }
}

/// Helper for builders of categories whose morphisms are concrete values
/// (functions, spans, matrices) with a known composition.
pub struct ConcreteCat<T> {
    pub cat: FinCat,
    pub values: Vec<T>,
    index: HashMap<(ObjId, ObjId, T), MorId>,
}

impl<T: Clone + Eq + Hash> ConcreteCat<T> {
    /// `homs(a, b)` lists the values of all morphisms `a -> b` without
    /// duplicates; `identity(a)` must be one of them; `compose(g, f)` is
    /// `g ∘ f` and must land in the listed values. Identities are numbered
    /// first (morphism `i` is the identity of object `i`), then the
    /// remaining morphisms by `(dom, cod)` and listing order.
    pub fn build(
        objects: Vec<String>,
        mut homs: impl FnMut(ObjId, ObjId) -> Vec<T>,
        mut identity: impl FnMut(ObjId) -> T,
        mut compose: impl FnMut(&T, &T) -> T,
        mut label: impl FnMut(ObjId, ObjId, &T) -> String,
    ) -> ConcreteCat<T> {
        let n_obj = objects.len();
        let mut morphisms = Vec::new();
        let mut values = Vec::new();
        let mut index = HashMap::new();
        for a in (0..n_obj).map(ObjId) {
            let v = identity(a);
            index.insert((a, a, v.clone()), MorId(morphisms.len()));
            morphisms.push(Morphism { dom: a, cod: a, label: label(a, a, &v) });
            values.push(v);
        }
        for a in (0..n_obj).map(ObjId) {
            for b in (0..n_obj).map(ObjId) {
                for v in homs(a, b) {
                    if index.contains_key(&(a, b, v.clone())) {
                        continue;
                    }
                    index.insert((a, b, v.clone()), MorId(morphisms.len()));
                    morphisms.push(Morphism { dom: a, cod: b, label: label(a, b, &v) });
                    values.push(v);
                }
            }
        }
        let identities = (0..n_obj).map(MorId).collect();
        let cat = {
            let values = &values;
            let index = &index;
            let morphisms_ref = morphisms.clone();
            FinCat::from_fn(objects, morphisms, identities, |g, f| {
                let v = compose(&values[g.0], &values[f.0]);
                let key = (morphisms_ref[f.0].dom, morphisms_ref[g.0].cod, v);
                *index.get(&key).expect("composite of listed morphisms is listed")
            })
        };
        ConcreteCat { cat, values, index }
    }

    pub fn lookup(&self, dom: ObjId, cod: ObjId, value: &T) -> Option<MorId> {
        self.index.get(&(dom, cod, value.clone())).copied()
    }
}

/// The one-object, one-morphism category.
pub fn terminal() -> FinCat {
    FinCat::from_fn(
        vec!["*".into()],
        vec![Morphism { dom: ObjId(0), cod: ObjId(0), label: "id".into() }],
        vec![MorId(0)],
        |_, _| MorId(0),
    )
}

/// The category `0 -> 1` with a single non-identity arrow.
pub fn arrow() -> FinCat {
    let morphisms = vec![
        Morphism { dom: ObjId(0), cod: ObjId(0), label: "id0".into() },
        Morphism { dom: ObjId(1), cod: ObjId(1), label: "id1".into() },
        Morphism { dom: ObjId(0), cod: ObjId(1), label: "a".into() },
    ];
    FinCat::from_fn(vec!["0".into(), "1".into()], morphisms, vec![MorId(0), MorId(1)], |g, f| {
        if g.0 < 2 {
            f
        } else {
            g
        }
    })
}
