use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{assemble, BuildError, Concrete};
use crate::fincat::{check_category, ConcreteCat, FinCat, MorId, ObjId};
use crate::structure::MRStructure;

/// A category with a factorization system `(E, M)`, the input for the
/// category of partial maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParInput {
    pub base: FinCat,
    pub e_class: Vec<MorId>,
    pub m_class: Vec<MorId>,
}

/// A partial map `X <- U -> Y` as its two legs `(domain leg ∈ M, value leg)`.
pub type Span = (MorId, MorId);

struct Checked<'a> {
    base: &'a FinCat,
    in_m: Vec<bool>,
    isos: Vec<MorId>,
    /// `(f, m) -> (p1, p2)` with `f ∘ p1 = m ∘ p2` a pullback.
    pullbacks: HashMap<(MorId, MorId), (MorId, MorId)>,
}

fn membership(c: &FinCat, ids: &[MorId]) -> Vec<bool> {
    let mut out = vec![false; c.n_morphisms()];
    for &f in ids {
        if f.0 < out.len() {
            out[f.0] = true;
        }
    }
    out
}

fn check_class(c: &FinCat, class: &'static str, member: &[bool]) -> Result<(), BuildError> {
    for a in c.objects() {
        if !member[c.id(a).0] {
            return Err(BuildError::MissingIdentity { class, id: c.id(a) });
        }
    }
    for g in c.morphism_ids().filter(|g| member[g.0]) {
        for f in c.into_object(c.dom(g)).filter(|f| member[f.0]) {
            if !member[c.comp(g, f).0] {
                return Err(BuildError::NotClosed { class, g, f });
            }
        }
    }
    Ok(())
}

/// The universal cone over `Y -f-> Z <-m- V`, if one exists.
fn pullback(c: &FinCat, f: MorId, m: MorId) -> Option<(MorId, MorId)> {
    let (y, v) = (c.dom(f), c.dom(m));
    let cones: Vec<(MorId, MorId)> = c
        .objects()
        .flat_map(|q| {
            c.hom(q, y).iter().flat_map(move |&q1| c.hom(q, v).iter().map(move |&q2| (q1, q2)))
        })
        .filter(|&(q1, q2)| c.comp(f, q1) == c.comp(m, q2))
        .collect();
    cones.iter().copied().find(|&(p1, p2)| {
        let p = c.dom(p1);
        cones.iter().all(|&(q1, q2)| {
            c.hom(c.dom(q1), p).iter().filter(|&&h| c.comp(p1, h) == q1 && c.comp(p2, h) == q2).count() == 1
        })
    })
}

fn check_input(input: &ParInput) -> Result<Checked<'_>, BuildError> {
    let c = &input.base;
    let report = check_category(c);
    if let Some(v) = report.violations.first() {
        return Err(BuildError::BaseNotCategory(format!("{v:?}")));
    }
    let in_e = membership(c, &input.e_class);
    let in_m = membership(c, &input.m_class);
    check_class(c, "E", &in_e)?;
    check_class(c, "M", &in_m)?;
    for m in c.morphism_ids().filter(|m| in_m[m.0]) {
        for a in c.objects() {
            let hs = c.hom(a, c.dom(m));
            for (i, &x) in hs.iter().enumerate() {
                for &y in &hs[i + 1..] {
                    if c.comp(m, x) == c.comp(m, y) {
                        return Err(BuildError::NotMonic { m, x, y });
                    }
                }
            }
        }
    }
    let isos: Vec<MorId> = c.morphism_ids().filter(|&f| c.is_iso(f)).collect();
    for f in c.morphism_ids() {
        let facts: Vec<(MorId, MorId)> = c
            .into_object(c.cod(f))
            .filter(|m| in_m[m.0])
            .flat_map(|m| c.hom(c.dom(f), c.dom(m)).iter().map(move |&e| (m, e)))
            .filter(|&(m, e)| in_e[e.0] && c.comp(m, e) == f)
            .collect();
        let Some(&(m0, e0)) = facts.first() else {
            return Err(BuildError::NoFactorization { f });
        };
        for &(m1, e1) in &facts[1..] {
            let related = c
                .hom(c.dom(m0), c.dom(m1))
                .iter()
                .any(|&phi| isos.contains(&phi) && c.comp(phi, e0) == e1 && c.comp(m1, phi) == m0);
            if !related {
                return Err(BuildError::AmbiguousFactorization { f });
            }
        }
    }
    let mut pullbacks = HashMap::new();
    for m in c.morphism_ids().filter(|m| in_m[m.0]) {
        for f in c.into_object(c.cod(m)) {
            let (p1, p2) = pullback(c, f, m).ok_or(BuildError::MissingPullback { f, m })?;
            if !in_m[p1.0] {
                return Err(BuildError::PullbackNotInM { f, m });
            }
            pullbacks.insert((f, m), (p1, p2));
        }
    }
    Ok(Checked { base: c, in_m, isos, pullbacks })
}

impl Checked<'_> {
    /// Least representative of the isomorphism class of a span.
    fn canonical(&self, (f0, f1): Span) -> Span {
        let c = self.base;
        self.isos
            .iter()
            .filter(|&&phi| c.cod(phi) == c.dom(f0))
            .map(|&phi| (c.comp(f0, phi), c.comp(f1, phi)))
            .min()
            .expect("identity is an iso")
    }

    fn spans(&self, x: ObjId, y: ObjId) -> Vec<Span> {
        let c = self.base;
        let mut out: Vec<Span> = c
            .into_object(x)
            .filter(|f0| self.in_m[f0.0])
            .flat_map(|f0| c.hom(c.dom(f0), y).iter().map(move |&f1| (f0, f1)))
            .map(|s| self.canonical(s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn compose(&self, (g0, g1): Span, (f0, f1): Span) -> Span {
        let c = self.base;
        let (p1, p2) = self.pullbacks[&(f1, g0)];
        self.canonical((c.comp(f0, p1), c.comp(g1, p2)))
    }
}

/// The category of partial maps: morphisms are isomorphism classes of
/// spans `X <- U -> Y` with left leg in `M`, composed by pullback. `M`
/// embeds as `[1, X, m]`, with star `[m, U, 1]`.
pub fn par_concrete(input: &ParInput) -> Result<Concrete<Span>, BuildError> {
    let ck = check_input(input)?;
    let c = ck.base;
    let cc = ConcreteCat::build(
        c.object_labels().to_vec(),
        |x, y| ck.spans(x, y),
        |x| ck.canonical((c.id(x), c.id(x))),
        |&g, &f| ck.compose(g, f),
        |_, _, &(f0, f1)| format!("[{}|{}]", c.label(f0), c.label(f1)),
    );
    assemble(
        cc,
        |&(f0, f1)| c.is_iso(f0) && ck.in_m[f1.0],
        |&(f0, f1), _, _| ck.canonical((f1, f0)),
    )
}

pub fn par(input: &ParInput) -> Result<MRStructure, BuildError> {
    par_concrete(input).map(|c| c.structure)
}

/// Finite sets `{0..k-1}`, `k <= n_max`, with all functions; `E` the
/// surjections and `M` the injections.
pub fn finset_base(n_max: usize) -> ParInput {
    fn functions(a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..a {
            out = out.into_iter().flat_map(|v| (0..b).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }
    let cc = ConcreteCat::build(
        (0..=n_max).map(|k| k.to_string()).collect(),
        |a, b| functions(a.0, b.0),
        |a| (0..a.0).collect(),
        |g, f| f.iter().map(|&x| g[x]).collect(),
        |a, b, v| super::table_label(a.0, b.0, v),
    );
    let cat = &cc.cat;
    let surj = |f: MorId| (0..cat.cod(f).0).all(|y| cc.values[f.0].contains(&y));
    let inj = |f: MorId| {
        let v = &cc.values[f.0];
        (0..v.len()).all(|i| !v[i + 1..].contains(&v[i]))
    };
    let e_class = cat.morphism_ids().filter(|&f| surj(f)).collect();
    let m_class = cat.morphism_ids().filter(|&f| inj(f)).collect();
    ParInput { base: cc.cat.clone(), e_class, m_class }
}

/// Finite sets `{0..k-1}`, `k <= n_max`, with injections; `E` the
/// bijections and `M` everything.
pub fn fi_base(n_max: usize) -> ParInput {
    fn injections(a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..a {
            out = out
                .into_iter()
                .flat_map(|v: Vec<usize>| (0..b).filter(|x| !v.contains(x)).map(|x| [v.clone(), vec![x]].concat()).collect::<Vec<_>>())
                .collect();
        }
        out
    }
    let cc = ConcreteCat::build(
        (0..=n_max).map(|k| k.to_string()).collect(),
        |a, b| injections(a.0, b.0),
        |a| (0..a.0).collect(),
        |g, f| f.iter().map(|&x| g[x]).collect(),
        |a, b, v| super::table_label(a.0, b.0, v),
    );
    let cat = &cc.cat;
    let e_class = cat.morphism_ids().filter(|&f| cat.dom(f) == cat.cod(f)).collect();
    let m_class = cat.morphism_ids().collect();
    ParInput { base: cc.cat.clone(), e_class, m_class }
}

fn f2_rank(cols: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &v in cols {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Vector spaces `F_2^k`, `k <= n_max`, with injective linear maps, stored
/// as the images of the standard basis as bitmasks; `E` the isomorphisms
/// and `M` everything.
pub fn f2_injective_base(n_max: usize) -> ParInput {
    fn injective(a: usize, b: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..a {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| (1..1u32 << b).map(move |x| [v.clone(), vec![x]].concat()).collect::<Vec<_>>())
                .filter(|v| f2_rank(v) == v.len())
                .collect();
        }
        out
    }
    let apply = |g: &[u32], x: u32| (0..g.len()).filter(|&i| x >> i & 1 == 1).fold(0, |acc, i| acc ^ g[i]);
    let cc = ConcreteCat::build(
        (0..=n_max).map(|k| format!("F2^{k}")).collect(),
        |a, b| injective(a.0, b.0),
        |a| (0..a.0).map(|i| 1u32 << i).collect(),
        |g, f| f.iter().map(|&x| apply(g, x)).collect(),
        |a, b, v| super::table_label(a.0, b.0, v),
    );
    let cat = &cc.cat;
    let e_class = cat.morphism_ids().filter(|&f| cat.dom(f) == cat.cod(f)).collect();
    let m_class = cat.morphism_ids().collect();
    ParInput { base: cc.cat.clone(), e_class, m_class }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_rank_basic() {
        assert_eq!(f2_rank(&[1, 2, 3]), 2);
        assert_eq!(f2_rank(&[3, 1]), 2);
        assert_eq!(f2_rank(&[]), 0);
    }

    #[test]
    fn f2_base_counts() {
        let b = f2_injective_base(2);
        // 1 + 1 + 1 from the zero space, 1 + 3 from F2^1, 6 automorphisms of F2^2
        assert_eq!(b.base.n_morphisms(), 3 + 1 + 3 + 6);
    }

    #[test]
    fn finset_par_hom_counts() {
        let p = par(&finset_base(2)).unwrap();
        for x in p.cat().objects() {
            for y in p.cat().objects() {
                assert_eq!(p.cat().hom(x, y).len(), (y.0 + 1).pow(x.0 as u32));
            }
        }
    }

    #[test]
    fn missing_pullback_reported() {
        use crate::fincat::Morphism;
        // U -f-> Y <-g- V with nothing mapping to both U and V
        let (u, v, y) = (ObjId(0), ObjId(1), ObjId(2));
        let mk = |dom, cod| Morphism { dom, cod, label: String::new() };
        let morphisms = vec![mk(u, u), mk(v, v), mk(y, y), mk(u, y), mk(v, y)];
        let base = FinCat::from_fn(vec!["U".into(), "V".into(), "Y".into()], morphisms, vec![MorId(0), MorId(1), MorId(2)], |g, f| {
            if g.0 < 3 {
                f
            } else {
                g
            }
        });
        let input = ParInput {
            base,
            e_class: vec![MorId(0), MorId(1), MorId(2), MorId(3)],
            m_class: vec![MorId(0), MorId(1), MorId(2), MorId(4)],
        };
        assert_eq!(par(&input).unwrap_err(), BuildError::MissingPullback { f: MorId(3), m: MorId(4) });
    }
}
