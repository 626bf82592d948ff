use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MRStructure;
use crate::fincat::{MorId, ObjId};

/// One isomorphism class of `M`-morphisms into an object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubClass {
    pub rep: MorId,
    /// Domain of `rep`.
    pub source: ObjId,
    /// Every `M`-morphism in the class, ascending.
    pub members: Vec<MorId>,
}

/// Subobjects of an object, listed in a fixed linear order compatible with
/// the subobject order: `classes()[i] ⪯ classes()[j]` implies `i <= j`. The
/// listing also places `U` before `V` whenever `star(n_V) ∘ m_U ∈ M`, so the
/// comparison matrix indexed by it is triangular. The whole object is last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubPoset {
    object: ObjId,
    classes: Vec<SubClass>,
    /// `leq[i * k + j]` iff class `i ⪯` class `j`.
    leq: Vec<bool>,
    /// Whether the listing also respects the comparison-matrix support. When
    /// false the listing refines the order only.
    support_compatible: bool,
}

impl SubPoset {
    pub(super) fn build(s: &MRStructure, class_rep: &[Option<MorId>], a: ObjId) -> SubPoset {
        let c = s.cat();
        let mut groups: BTreeMap<MorId, Vec<MorId>> = BTreeMap::new();
        for m in c.into_object(a).filter(|&m| s.in_m(m)) {
            groups.entry(class_rep[m.0].expect("class computed for M")).or_default().push(m);
        }
        let raw: Vec<SubClass> = groups
            .into_iter()
            .map(|(rep, mut members)| {
                members.sort();
                SubClass { rep, source: c.dom(rep), members }
            })
            .collect();
        let k = raw.len();
        let below = |m: MorId, n: MorId| c.comp3(n, s.star(n), m) == m;
        let supported = |m: MorId, n: MorId| c.cod(m) == c.cod(n) && s.in_m(c.comp(s.star(n), m));
        let mut order = vec![false; k * k];
        let mut support = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                order[i * k + j] = below(raw[i].rep, raw[j].rep);
                support[i * k + j] = order[i * k + j] || supported(raw[i].rep, raw[j].rep);
            }
        }
        let (perm, support_compatible) = match topo_sort(k, &support) {
            Some(p) => (p, true),
            None => (topo_sort(k, &order).expect("subobject order is antisymmetric"), false),
        };
        let classes: Vec<SubClass> = perm.iter().map(|&i| raw[i].clone()).collect();
        let mut leq = vec![false; k * k];
        for (ni, &i) in perm.iter().enumerate() {
            for (nj, &j) in perm.iter().enumerate() {
                leq[ni * k + nj] = order[i * k + j];
            }
        }
        SubPoset { object: a, classes, leq, support_compatible }
    }

    pub fn object(&self) -> ObjId {
        self.object
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubClass] {
        &self.classes
    }

    /// Class `i ⪯` class `j`, by position.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.classes.len() + j]
    }

    /// Position of the whole object.
    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// Positions of the proper subobjects.
    pub fn proper(&self) -> std::ops::Range<usize> {
        0..self.top()
    }

    /// Proper subobjects with no proper subobject strictly above them.
    pub fn maximal_proper(&self) -> Vec<usize> {
        self.proper()
            .filter(|&i| !self.proper().any(|j| j != i && self.leq(i, j) && !self.leq(j, i)))
            .collect()
    }

    pub fn support_compatible(&self) -> bool {
        self.support_compatible
    }

    /// Position of the class with the given canonical representative.
    pub fn position(&self, rep: MorId) -> Option<usize> {
        self.classes.iter().position(|cl| cl.rep == rep)
    }
}

/// Kahn's algorithm on the relation `rel[i * k + j]` (self-loops ignored),
/// taking the least available index first. `None` when the relation has a
/// cycle.
fn topo_sort(k: usize, rel: &[bool]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && rel[i * k + j] {
                indeg[j] += 1;
            }
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..k).filter(|&j| indeg[j] == 0).collect();
    let mut out = Vec::with_capacity(k);
    while let Some(i) = ready.pop_first() {
        out.push(i);
        for j in 0..k {
            if i != j && rel[i * k + j] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.insert(j);
                }
            }
        }
    }
    (out.len() == k).then_some(out)
}
