use super::Setting;
use crate::fincat::{FinCat, MorId, Morphism, ObjId};

/// `R` with one formal zero adjoined per ordered pair of objects. Composition
/// is the ambient composite when that lies in `R` and zero otherwise.
///
/// Morphism ids of the underlying [`FinCat`] list the `R`-morphisms first, in
/// ambient id order, then the zeros by `(dom, cod)`.
#[derive(Clone, Debug)]
pub struct DCat {
    cat: FinCat,
    to_p: Vec<MorId>,
    of_p: Vec<Option<MorId>>,
    zero_base: usize,
}

pub fn build_d(s: &Setting) -> DCat {
    let p = s.cat();
    let n_obj = p.n_objects();
    let to_p: Vec<MorId> = s.r_ids().collect();
    let mut of_p = vec![None; p.n_morphisms()];
    for (d, &f) in to_p.iter().enumerate() {
        of_p[f.0] = Some(MorId(d));
    }
    let zero_base = to_p.len();
    let mut morphisms: Vec<Morphism> = to_p.iter().map(|&f| p.morphism(f).clone()).collect();
    for a in p.objects() {
        for b in p.objects() {
            morphisms.push(Morphism { dom: a, cod: b, label: "0".into() });
        }
    }
    let identities = p.objects().map(|a| of_p[p.id(a).0].expect("identities lie in R")).collect();
    let zero = |a: ObjId, b: ObjId| MorId(zero_base + a.0 * n_obj + b.0);
    let dom_cod: Vec<(ObjId, ObjId)> = morphisms.iter().map(|m| (m.dom, m.cod)).collect();
    let cat = FinCat::from_fn(p.object_labels().to_vec(), morphisms, identities, |g, f| {
        let (a, c) = (dom_cod[f.0].0, dom_cod[g.0].1);
        if g.0 >= zero_base || f.0 >= zero_base {
            return zero(a, c);
        }
        let pc = p.comp(to_p[g.0], to_p[f.0]);
        of_p[pc.0].unwrap_or(zero(a, c))
    });
    DCat { cat, to_p, of_p, zero_base }
}

impl DCat {
    pub fn cat(&self) -> &FinCat {
        &self.cat
    }

    pub fn is_zero(&self, d: MorId) -> bool {
        d.0 >= self.zero_base
    }

    pub fn zero(&self, a: ObjId, b: ObjId) -> MorId {
        MorId(self.zero_base + a.0 * self.cat.n_objects() + b.0)
    }

    /// Ambient id of a non-zero morphism.
    pub fn to_p(&self, d: MorId) -> Option<MorId> {
        self.to_p.get(d.0).copied()
    }

    /// Id in this category of an ambient `R`-morphism.
    pub fn of_p(&self, f: MorId) -> Option<MorId> {
        self.of_p[f.0]
    }

    pub fn nonzero(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.zero_base).map(MorId)
    }

    /// Composite of ambient `R`-morphisms `g ∘ f` in this category, as an
    /// ambient id; `None` for zero.
    pub fn compose_p(&self, g: MorId, f: MorId) -> Option<MorId> {
        let d = self.cat.comp(self.of_p(g)?, self.of_p(f)?);
        self.to_p(d)
    }
}
