use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FactorError, Setting};
use crate::fincat::{MorId, ObjId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub morphisms: Vec<MorId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub checks: Vec<AssumptionCheck>,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &str, witness: Option<Witness>) -> AssumptionCheck {
    AssumptionCheck { name: name.into(), passed: witness.is_none(), witness }
}

fn witness(morphisms: Vec<MorId>, detail: impl Into<String>) -> Option<Witness> {
    Some(Witness { morphisms, detail: detail.into() })
}

/// First composable pair `(g, f)` of members of `class` (by `g`, then `f`)
/// for which `bad(g, f)` holds.
fn first_pair(s: &Setting, class: &dyn Fn(MorId) -> bool, bad: &(dyn Fn(MorId, MorId) -> bool + Sync)) -> Option<(MorId, MorId)> {
    let c = s.cat();
    let members: Vec<MorId> = c.morphism_ids().filter(|&f| class(f)).collect();
    members.par_iter().find_map_first(|&g| {
        members.iter().copied().filter(|&f| c.cod(f) == c.dom(g)).find(|&f| bad(g, f)).map(|f| (g, f))
    })
}

/// Named checks of the standing assumptions, plus one derived consequence,
/// each with the first failing instance as witness.
///
/// - `unique_factorization`: every `f` is `n ∘ r ∘ m*` uniquely up to isos;
/// - `composites_of_r_in_s`: `r' ∘ r ∈ S` for composable `r, r' ∈ R`;
/// - `retraction_reflects_r`: `r, m* ∘ r ∈ R` with `m ∈ M` forces `m` invertible;
/// - `k_closed`: `M ∘ M*` is closed under composition;
/// - `finite_subobjects`: every subobject poset is finite;
/// - `s_composites_in_mr_lie_in_r`: `t ∘ s = m ∘ r` with `s, t ∈ S` forces `s, t ∈ R`.
pub fn check_assumptions(s: &Setting) -> AssumptionReport {
    let c = s.cat();
    let mut checks = Vec::new();

    let fact = c.morphism_ids().find_map(|f| s.factorize(f).err());
    checks.push(check(
        "unique_factorization",
        fact.map(|e| match e {
            FactorError::NoFactorization { f } => Witness { morphisms: vec![f], detail: e.to_string() },
            FactorError::AmbiguousFactorization { f, first, second } => Witness {
                morphisms: vec![f, first.n, first.r, first.m, second.n, second.r, second.m],
                detail: e.to_string(),
            },
        }),
    ));

    let rr = first_pair(s, &|f| s.in_r(f), &|g, f| !s.in_s(c.comp(g, f)));
    checks.push(check(
        "composites_of_r_in_s",
        rr.and_then(|(g, f)| witness(vec![g, f], format!("{g} ∘ {f} is not of the form r ∘ m*"))),
    ));

    let refl = s.structure().m_ids().filter(|&m| !s.is_iso(m)).find_map(|m| {
        let ms = s.star(m);
        c.into_object(c.cod(m)).find(|&r| s.in_r(r) && s.in_r(c.comp(ms, r))).map(|r| (m, r))
    });
    checks.push(check(
        "retraction_reflects_r",
        refl.and_then(|(m, r)| witness(vec![m, r], format!("{r} and star({m}) ∘ {r} lie in R but {m} is not invertible"))),
    ));

    let kk = first_pair(s, &|f| s.in_k(f), &|g, f| !s.in_k(c.comp(g, f)));
    checks.push(check(
        "k_closed",
        kk.and_then(|(g, f)| witness(vec![g, f], format!("{g} ∘ {f} is not of the form m ∘ n*"))),
    ));

    let empty = c.objects().find(|&a| s.sub_poset(a).is_empty());
    checks.push(check(
        "finite_subobjects",
        empty.and_then(|a| witness(vec![c.id(a)], format!("object {a} has no subobject classes"))),
    ));

    let mr = mr_class(s);
    let st = first_pair(s, &|f| s.in_s(f), &|t, sm| mr[c.comp(t, sm).0] && !(s.in_r(t) && s.in_r(sm)));
    checks.push(check(
        "s_composites_in_mr_lie_in_r",
        st.and_then(|(t, sm)| witness(vec![t, sm], format!("{t} ∘ {sm} = m ∘ r but the factors are not both in R"))),
    ));

    AssumptionReport { checks }
}

/// Membership table of `{m ∘ r : m ∈ M, r ∈ R}`.
fn mr_class(s: &Setting) -> Vec<bool> {
    let c = s.cat();
    let mut out = vec![false; c.n_morphisms()];
    for r in s.r_ids() {
        for m in c.out_of_object(c.cod(r)).filter(|&m| s.in_m(m)) {
            out[c.comp(m, r).0] = true;
        }
    }
    out
}

/// A failed instance of a consequence of the factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum PropertyViolation {
    /// `s_u, r, s_{ur} ∈ R` but `s_{ur} != s_u ∘ r`.
    SuNotEquivariant { u: MorId, r: MorId },
    /// `s_{vu} ∈ R` but `s_u ∉ R`.
    PrefixNotInR { u: MorId, v: MorId },
    /// `s_{vu} ∈ R` and `u ∈ S` but `u ∉ R` or `s_v ∉ R`.
    SPrefixNotInR { u: MorId, v: MorId },
    /// `t ∘ s = m ∘ r` for `s, t ∈ S` but not both lie in `R`.
    SCompositeNotR { t: MorId, s: MorId },
    /// `i ∘ r ∘ j ∉ R` for `r ∈ R` and isos `i, j`.
    RNotIsoInvariant { i: MorId, r: MorId, j: MorId },
}

/// Exhaustively checks the consequences of unique factorization over all
/// composable pairs.
pub fn factorization_properties(s: &Setting) -> Result<Vec<PropertyViolation>, FactorError> {
    let c = s.cat();
    let mut s_in_r = Vec::with_capacity(c.n_morphisms());
    let mut s_of = Vec::with_capacity(c.n_morphisms());
    for u in c.morphism_ids() {
        s_in_r.push(s.s_u_in_r(u)?);
        s_of.push(s.s_u(u)?);
    }
    let mr = mr_class(s);
    let objects: Vec<ObjId> = c.objects().collect();
    let out: Vec<PropertyViolation> = objects
        .par_iter()
        .flat_map_iter(|&b| {
            let mut out = Vec::new();
            for u in c.into_object(b) {
                for v in c.out_of_object(b) {
                    let vu = c.comp(v, u);
                    if s_in_r[vu.0] {
                        if !s_in_r[u.0] {
                            out.push(PropertyViolation::PrefixNotInR { u, v });
                        }
                        if s.in_s(u) && !(s.in_r(u) && s_in_r[v.0]) {
                            out.push(PropertyViolation::SPrefixNotInR { u, v });
                        }
                    }
                    if s.in_r(u) && s_in_r[v.0] && s_in_r[vu.0] && s_of[vu.0] != c.comp(s_of[v.0], u) {
                        out.push(PropertyViolation::SuNotEquivariant { u: v, r: u });
                    }
                    if s.in_s(u) && s.in_s(v) && mr[vu.0] && !(s.in_r(u) && s.in_r(v)) {
                        out.push(PropertyViolation::SCompositeNotR { t: v, s: u });
                    }
                }
            }
            out
        })
        .collect();
    let mut out = out;
    for r in s.r_ids() {
        let (a, b) = (c.dom(r), c.cod(r));
        for j in c.into_object(a).filter(|&j| s.is_iso(j)) {
            let rj = c.comp(r, j);
            for i in c.out_of_object(b).filter(|&i| s.is_iso(i)) {
                if !s.in_r(c.comp(i, rj)) {
                    out.push(PropertyViolation::RNotIsoInvariant { i, r, j });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderingError {
    #[error("{count} maximal proper subobjects exceed the search cap of {cap}")]
    TooMany { count: usize, cap: usize },
}

/// Searches for an ordering `m_1, ..., m_k` of the maximal proper subobjects
/// of `a` whose idempotents `c_i = m_i ∘ m_i*` satisfy
/// `c_j ∘ c_i ∘ c_j = c_j ∘ c_i` for all `i < j`. Returns the ordered
/// representatives, or `None` when no ordering works.
pub fn idempotent_ordering(s: &Setting, a: ObjId, cap: usize) -> Result<Option<Vec<MorId>>, OrderingError> {
    let c = s.cat();
    let sp = s.sub_poset(a);
    let reps: Vec<MorId> = sp.maximal_proper().into_iter().map(|i| sp.classes()[i].rep).collect();
    if reps.len() > cap {
        return Err(OrderingError::TooMany { count: reps.len(), cap });
    }
    let idem: Vec<MorId> = reps.iter().map(|&m| c.comp(m, s.star(m))).collect();
    let k = reps.len();
    // ok[i * k + j]: c_i may precede c_j
    let mut ok = vec![true; k * k];
    for i in 0..k {
        for j in 0..k {
            let (ci, cj) = (idem[i], idem[j]);
            ok[i * k + j] = c.comp3(cj, ci, cj) == c.comp(cj, ci);
        }
    }
    fn extend(k: usize, ok: &[bool], used: &mut Vec<bool>, order: &mut Vec<usize>) -> bool {
        if order.len() == k {
            return true;
        }
        for j in 0..k {
            if used[j] || !order.iter().all(|&i| ok[i * k + j]) {
                continue;
            }
            used[j] = true;
            order.push(j);
            if extend(k, ok, used, order) {
                return true;
            }
            order.pop();
            used[j] = false;
        }
        false
    }
    let mut order = Vec::new();
    let found = extend(k, &ok, &mut vec![false; k], &mut order);
    Ok(found.then(|| order.into_iter().map(|i| reps[i]).collect()))
}
