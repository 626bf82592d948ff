use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FactorError, Setting};
use crate::fincat::{MorId, ObjId};

/// Outcome of comparing one coend with its pointed target set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoendPairReport {
    /// `"right"` for `∫^C M(C, D) ∧ D(A, C)`, `"left"` for `∫^D P(D, B) ∧ M(C, D)`.
    pub side: String,
    pub source: ObjId,
    pub target: ObjId,
    /// Equivalence classes other than the basepoint.
    pub classes: usize,
    /// `|{u : s_u ∈ R}|` for the pair.
    pub expected: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
    /// Offending representatives when a check fails.
    pub witness: Option<Vec<MorId>>,
}

impl CoendPairReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoendReport {
    pub pairs: Vec<CoendPairReport>,
}

impl CoendReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(CoendPairReport::passed)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller root wins so that the basepoint (index 0) stays a root
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// Compares the classes of `elements` under `uf` with their images under
/// `value` (`None` is the zero of the target) and checks that the induced
/// map is a bijection onto `targets`, or onto `targets` plus zero when
/// `pointed`, in which case element 0 is the basepoint.
#[allow(clippy::too_many_arguments)]
fn compare(
    side: &str,
    source: ObjId,
    target: ObjId,
    elements: &[(MorId, MorId)],
    uf: &mut UnionFind,
    value: &[Option<MorId>],
    targets: &[MorId],
    pointed: bool,
) -> CoendPairReport {
    let mut witness: Option<Vec<MorId>> = None;
    let mut flag = |w: Vec<MorId>| {
        witness.get_or_insert(w);
    };
    let pair = |i: usize| vec![elements[i].0, elements[i].1];
    let mut well_defined = true;
    let mut injective = true;
    // first element of each class, in element order
    let mut first: HashMap<usize, usize> = HashMap::new();
    for i in 0..value.len() {
        let root = uf.find(i);
        let j = *first.entry(root).or_insert(i);
        if value[j] != value[i] {
            well_defined = false;
            flag([pair(i), pair(j)].concat());
        }
    }
    let base_root = pointed.then(|| uf.find(0));
    let mut reps: Vec<usize> = first.values().copied().collect();
    reps.sort();
    let mut hit: HashMap<MorId, usize> = HashMap::new();
    let mut classes = 0;
    for i in reps {
        if Some(uf.find(i)) == base_root {
            if value[i].is_some() {
                well_defined = false;
                flag(pair(i));
            }
            continue;
        }
        classes += 1;
        match value[i] {
            None if pointed => {
                injective = false;
                flag(pair(i));
            }
            None => {
                well_defined = false;
                flag(pair(i));
            }
            Some(u) if !targets.contains(&u) => {
                well_defined = false;
                flag(pair(i));
            }
            Some(u) => {
                if let Some(&j) = hit.get(&u) {
                    injective = false;
                    flag([pair(i), pair(j)].concat());
                } else {
                    hit.insert(u, i);
                }
            }
        }
    }
    let missing = targets.iter().find(|u| !hit.contains_key(u)).copied();
    if let Some(u) = missing {
        flag(vec![u]);
    }
    CoendPairReport {
        side: side.into(),
        source,
        target,
        classes,
        expected: targets.len(),
        well_defined,
        injective,
        surjective: missing.is_none(),
        witness,
    }
}

fn targets(s: &Setting, a: ObjId, b: ObjId, s_in_r: &[bool]) -> Vec<MorId> {
    s.cat().hom(a, b).iter().copied().filter(|u| s_in_r[u.0]).collect()
}

fn right_side(s: &Setting, a: ObjId, d: ObjId, s_in_r: &[bool]) -> CoendPairReport {
    let c = s.cat();
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for mid in c.objects() {
        for &r in s.r_hom(a, mid) {
            for &m in c.hom(mid, d).iter().filter(|&&m| s.in_m(m)) {
                index.insert((m, r), elements.len());
                elements.push((m, r));
            }
        }
    }
    let mut uf = UnionFind::new(elements.len());
    // (m' ∘ i, r) ~ (m', i ∘ r) for isos i
    for &(m2, r) in &elements {
        let cm = c.cod(r);
        for i in c.out_of_object(cm).filter(|&i| s.is_iso(i)) {
            for &m1 in c.hom(c.cod(i), d).iter().filter(|&&m| s.in_m(m)) {
                if c.comp(m1, i) == m2 {
                    let other = index[&(m1, c.comp(i, r))];
                    let here = index[&(m2, r)];
                    uf.union(here, other);
                }
            }
        }
    }
    let value: Vec<Option<MorId>> = elements.iter().map(|&(m, r)| Some(c.comp(m, r))).collect();
    let tg = targets(s, a, d, s_in_r);
    compare("right", a, d, &elements, &mut uf, &value, &tg, false)
}

fn left_side(s: &Setting, cc: ObjId, b: ObjId, s_in_r: &[bool]) -> CoendPairReport {
    let c = s.cat();
    // element 0 is the basepoint
    let mut elements = vec![(MorId(usize::MAX), MorId(usize::MAX))];
    let mut index = HashMap::new();
    for d in c.objects() {
        for &m in c.hom(cc, d).iter().filter(|&&m| s.in_m(m)) {
            for &g in c.hom(d, b) {
                index.insert((g, m), elements.len());
                elements.push((g, m));
            }
        }
    }
    let mut uf = UnionFind::new(elements.len());
    // (g ∘ k, m) ~ (g, k ∘ m) when k ∘ m ∈ M, else (g ∘ k, m) ~ 0
    for d in c.objects() {
        for &m in c.hom(cc, d).iter().filter(|&&m| s.in_m(m)) {
            for k in c.out_of_object(d).filter(|&k| s.in_k(k)) {
                let km = c.comp(k, m);
                for &g in c.hom(c.cod(k), b) {
                    let here = index[&(c.comp(g, k), m)];
                    if s.in_m(km) {
                        uf.union(here, index[&(g, km)]);
                    } else {
                        uf.union(here, 0);
                    }
                }
            }
        }
    }
    let mut value = vec![None];
    value.extend(elements[1..].iter().map(|&(g, m)| {
        let gm = c.comp(g, m);
        s_in_r[gm.0].then_some(gm)
    }));
    let tg = targets(s, cc, b, s_in_r);
    compare("left", cc, b, &elements, &mut uf, &value, &tg, true)
}

/// Enumerates, at every ordered pair of objects, the classes of both coends
/// comparing the `I`-restricted kernel module with the full one, and checks
/// that the induced maps onto `{u : s_u ∈ R}` are bijections (pointed, for
/// the left coend).
pub fn verify_twocoends(s: &Setting) -> Result<CoendReport, FactorError> {
    let c = s.cat();
    let s_in_r: Vec<bool> = c.morphism_ids().map(|u| s.s_u_in_r(u)).collect::<Result<_, _>>()?;
    let pairs: Vec<(ObjId, ObjId)> = c.objects().flat_map(|a| c.objects().map(move |b| (a, b))).collect();
    let mut out: Vec<CoendPairReport> = pairs.par_iter().map(|&(a, b)| right_side(s, a, b, &s_in_r)).collect();
    out.extend(pairs.par_iter().map(|&(a, b)| left_side(s, a, b, &s_in_r)).collect::<Vec<_>>());
    Ok(CoendReport { pairs: out })
}
