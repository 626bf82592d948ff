use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fincat::{MorId, ObjId};
use crate::structure::{build_d, DCat, FactorError, Setting};

/// The pointed sets `M(A, B) = {u ∈ P(A, B) : s_u ∈ R} ∪ {0}` with the
/// action `M(r, f) u = f ∘ u ∘ r` when `s_{fur} ∈ R` and `0` otherwise.
#[derive(Clone, Debug)]
pub struct KernelModule {
    setting: Setting,
    d: DCat,
    member: Vec<bool>,
}

/// A failed instance of the module laws. `u` is the element acted on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum KernelLawViolation {
    Identity { u: MorId },
    /// `M(r ∘ r1, 1) != M(r1, 1) M(r, 1)`, zero composites included.
    Restriction { r: MorId, r1: MorId, u: MorId },
    /// `M(1, f1 ∘ f) != M(1, f1) M(1, f)`.
    Extension { f: MorId, f1: MorId, u: MorId },
    /// `M(r, 1) M(1, f)`, `M(1, f) M(r, 1)` and `M(r, f)` disagree.
    Interchange { r: MorId, f: MorId, u: MorId },
}

impl KernelModule {
    pub fn build(setting: Setting) -> Result<KernelModule, FactorError> {
        let member = setting.cat().morphism_ids().map(|u| setting.s_u_in_r(u)).collect::<Result<_, _>>()?;
        let d = build_d(&setting);
        Ok(KernelModule { setting, d, member })
    }

    pub fn setting(&self) -> &Setting {
        &self.setting
    }

    pub fn d(&self) -> &DCat {
        &self.d
    }

    /// Whether `u` is a non-zero element of `M(dom u, cod u)`.
    pub fn contains(&self, u: MorId) -> bool {
        self.member[u.0]
    }

    /// Non-zero elements of `M(a, b)`.
    pub fn elements(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.setting.cat().hom(a, b).iter().copied().filter(|&u| self.member[u.0]).collect()
    }

    /// `M(r, f) u` for `r ∈ R` into `dom u` and `f` out of `cod u`; `None` is
    /// the basepoint.
    pub fn act(&self, r: MorId, f: MorId, u: Option<MorId>) -> Option<MorId> {
        let c = self.setting.cat();
        let v = c.comp3(f, u?, r);
        self.member[v.0].then_some(v)
    }

    /// `M(r, 1)` for `r` a morphism of `D` given by ambient id, `None` being a
    /// zero morphism.
    fn restrict(&self, r: Option<MorId>, u: Option<MorId>) -> Option<MorId> {
        let u = u?;
        self.act(r?, self.setting.cat().id(self.setting.cat().cod(u)), Some(u))
    }

    /// Checks the module laws one variable at a time plus interchange, over
    /// every element and every composable pair of actions. Together these
    /// imply `M(r ∘ r1, f1 ∘ f) = M(r1, f1) M(r, f)`.
    pub fn check_laws(&self) -> Vec<KernelLawViolation> {
        let c = self.setting.cat();
        let elements: Vec<MorId> = c.morphism_ids().filter(|&u| self.member[u.0]).collect();
        elements
            .par_iter()
            .flat_map_iter(|&u| {
                let mut out = Vec::new();
                let (a, b) = (c.dom(u), c.cod(u));
                if self.act(c.id(a), c.id(b), Some(u)) != Some(u) {
                    out.push(KernelLawViolation::Identity { u });
                }
                let r_into = |x: ObjId| {
                    c.objects().flat_map(move |y| self.setting.r_hom(y, x).iter().copied())
                };
                for r in r_into(a) {
                    let once = self.restrict(Some(r), Some(u));
                    for r1 in r_into(c.dom(r)) {
                        let lhs = self.restrict(self.d.compose_p(r, r1), Some(u));
                        if lhs != self.restrict(Some(r1), once) {
                            out.push(KernelLawViolation::Restriction { r, r1, u });
                        }
                    }
                    for f in c.out_of_object(b) {
                        let direct = self.act(r, f, Some(u));
                        let ext_first = self.restrict(Some(r), self.act(c.id(a), f, Some(u)));
                        let res_first = once.and_then(|v| self.act(c.id(c.dom(v)), f, Some(v)));
                        if direct != ext_first || direct != res_first {
                            out.push(KernelLawViolation::Interchange { r, f, u });
                        }
                    }
                }
                for f in c.out_of_object(b) {
                    let once = self.act(c.id(a), f, Some(u));
                    for f1 in c.out_of_object(c.cod(f)) {
                        let twice = once.and_then(|v| self.act(c.id(a), f1, Some(v)));
                        if self.act(c.id(a), c.comp(f1, f), Some(u)) != twice {
                            out.push(KernelLawViolation::Extension { f, f1, u });
                        }
                    }
                }
                out
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{delta_bt_concrete, fi_sharp};
    use crate::fincat::terminal;
    use crate::structure::MRStructure;

    #[test]
    fn terminal_module_has_one_element() {
        let c = terminal();
        let s = MRStructure::new(c, vec![MorId(0)], vec![(MorId(0), MorId(0))]).unwrap();
        let km = KernelModule::build(Setting::analyze(s).unwrap()).unwrap();
        assert_eq!(km.elements(ObjId(0), ObjId(0)), vec![MorId(0)]);
        assert!(km.check_laws().is_empty());
    }

    #[test]
    fn fi_sharp_elements_are_total_injections() {
        let km = KernelModule::build(Setting::analyze(fi_sharp(3).unwrap()).unwrap()).unwrap();
        assert_eq!(km.elements(ObjId(2), ObjId(3)).len(), 6);
        assert!(km.check_laws().is_empty());
    }

    #[test]
    fn delta_elements() {
        let c = delta_bt_concrete(3).unwrap();
        let km = KernelModule::build(Setting::analyze(c.structure.clone()).unwrap()).unwrap();
        let names: Vec<&Vec<usize>> = km.elements(ObjId(2), ObjId(1)).iter().map(|u| &c.values[u.0]).collect();
        // σ0 and σ1 from 3 to 2 elements: only σ0 has its degeneracy in R
        assert_eq!(names, vec![&vec![0, 0, 1]]);
        assert!(km.check_laws().is_empty());
    }
}
