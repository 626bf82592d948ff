//! Brute-force oracles shared by the integration tests. Everything here works
//! from raw tables and public accessors only, never from derived data the
//! library caches.

#![allow(dead_code)]

use splitequiv::fincat::{FinCat, FinCatData};
use splitequiv::structure::MRStructure;

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Isomorphisms found by searching for a two-sided inverse.
pub fn brute_isos(c: &FinCat) -> Vec<bool> {
    c.morphism_ids()
        .map(|f| {
            c.hom(c.cod(f), c.dom(f))
                .iter()
                .any(|&g| c.comp(g, f) == c.id(c.dom(f)) && c.comp(f, g) == c.id(c.cod(f)))
        })
        .collect()
}

/// `r ∈ R` iff every `r = m ∘ x ∘ n*` with `m, n ∈ M` has `m` and `n`
/// invertible, searched over every triple.
pub fn brute_r(s: &MRStructure) -> Vec<bool> {
    let c = s.cat();
    let isos = brute_isos(c);
    c.morphism_ids()
        .map(|r| {
            !s.m_ids().filter(|&m| c.cod(m) == c.cod(r)).any(|m| {
                s.m_ids().filter(|&n| c.cod(n) == c.dom(r)).any(|n| {
                    !(isos[m.0] && isos[n.0]) && c.hom(c.dom(n), c.dom(m)).iter().any(|&x| c.comp3(m, x, s.star(n)) == r)
                })
            })
        })
        .collect()
}

/// `S = {r ∘ m* : r ∈ R, m ∈ M}`.
pub fn brute_s(s: &MRStructure, r: &[bool]) -> Vec<bool> {
    let c = s.cat();
    let mut out = vec![false; c.n_morphisms()];
    for m in s.m_ids() {
        for rr in c.out_of_object(c.dom(m)).filter(|x| r[x.0]) {
            out[c.comp(rr, s.star(m)).0] = true;
        }
    }
    out
}

/// `MR = {m ∘ r : m ∈ M, r ∈ R}`, the `u` whose `s_u` lies in `R`.
pub fn brute_mr(s: &MRStructure, r: &[bool]) -> Vec<bool> {
    let c = s.cat();
    let mut out = vec![false; c.n_morphisms()];
    for rr in c.morphism_ids().filter(|x| r[x.0]) {
        for m in s.m_ids().filter(|&m| c.dom(m) == c.cod(rr)) {
            out[c.comp(m, rr).0] = true;
        }
    }
    out
}

/// Category laws on raw tables; returns the first failing instance.
pub fn brute_category_violation(d: &FinCatData) -> Option<String> {
    let n = d.morphisms.len();
    if d.comp.len() != n || d.comp.iter().any(|row| row.len() != n) || d.identities.len() != d.objects.len() {
        return Some("table shape".into());
    }
    let dom = |f: usize| d.morphisms[f].dom;
    let cod = |f: usize| d.morphisms[f].cod;
    let comp = |g: usize, f: usize| -> Option<usize> { usize::try_from(d.comp[g][f]).ok() };
    for g in 0..n {
        for f in 0..n {
            match (cod(f) == dom(g), comp(g, f)) {
                (true, Some(k)) if k < n && dom(k) == dom(f) && cod(k) == cod(g) => {}
                (false, None) => {}
                _ => return Some(format!("composite m{g} ∘ m{f}")),
            }
        }
    }
    for (a, i) in d.identities.iter().enumerate() {
        if dom(i.0).0 != a || cod(i.0).0 != a {
            return Some(format!("identity of {a}"));
        }
    }
    for f in 0..n {
        if comp(d.identities[cod(f).0].0, f) != Some(f) || comp(f, d.identities[dom(f).0].0) != Some(f) {
            return Some(format!("unit law at m{f}"));
        }
    }
    for f in 0..n {
        for g in (0..n).filter(|&g| dom(g) == cod(f)) {
            for h in (0..n).filter(|&h| dom(h) == cod(g)) {
                let left = comp(h, comp(g, f).unwrap()).unwrap();
                let right = comp(comp(h, g).unwrap(), f).unwrap();
                if left != right {
                    return Some(format!("associativity at m{h}, m{g}, m{f}"));
                }
            }
        }
    }
    None
}

/// Structure axioms on a lawful category: identities and isos in `M`, `M`
/// closed under composition, and star an identity-preserving functor of
/// retractions.
pub fn brute_structure_violation(s: &MRStructure) -> Option<String> {
    let c = s.cat();
    if let Some(v) = brute_category_violation(&FinCatData::from(c.clone())) {
        return Some(v);
    }
    let isos = brute_isos(c);
    for f in c.morphism_ids() {
        if (c.is_identity(f) || isos[f.0]) && !s.in_m(f) {
            return Some(format!("{f} should be in M"));
        }
        if s.in_m(f) != s.try_star(f).is_some() {
            return Some(format!("star defined exactly on M fails at {f}"));
        }
    }
    for m in s.m_ids() {
        let st = s.star(m);
        if c.dom(st) != c.cod(m) || c.cod(st) != c.dom(m) || c.comp(st, m) != c.id(c.dom(m)) {
            return Some(format!("star of {m} is no retraction"));
        }
        if c.is_identity(m) && st != m {
            return Some(format!("star of {m} is not the identity"));
        }
    }
    for g in s.m_ids() {
        for f in s.m_ids().filter(|&f| c.cod(f) == c.dom(g)) {
            let gf = c.comp(g, f);
            if !s.in_m(gf) {
                return Some(format!("M not closed at {g} ∘ {f}"));
            }
            if s.star(gf) != c.comp(s.star(f), s.star(g)) {
                return Some(format!("star not functorial at {g} ∘ {f}"));
            }
        }
    }
    None
}

/// Violations of the three exhaustive composite properties, as strings.
/// With `S`, `R` and `MR` from the oracles above:
/// `t ∘ s ∈ MR` with `s, t ∈ S` forces `s, t ∈ R`;
/// `v ∘ u ∈ MR` forces `u ∈ MR`;
/// `v ∘ u ∈ MR` with `u ∈ S` forces `u ∈ R` and `v ∈ MR`.
pub fn brute_composite_properties(s: &MRStructure) -> Vec<String> {
    let c = s.cat();
    let r = brute_r(s);
    let sc = brute_s(s, &r);
    let mr = brute_mr(s, &r);
    let mut out = Vec::new();
    for u in c.morphism_ids() {
        for v in c.out_of_object(c.cod(u)) {
            let vu = c.comp(v, u);
            if !mr[vu.0] {
                continue;
            }
            if sc[u.0] && sc[v.0] && !(r[u.0] && r[v.0]) {
                out.push(format!("S composite: {v} ∘ {u}"));
            }
            if !mr[u.0] {
                out.push(format!("prefix not in MR: {v} ∘ {u}"));
            }
            if sc[u.0] && !(r[u.0] && mr[v.0]) {
                out.push(format!("S prefix: {v} ∘ {u}"));
            }
        }
    }
    out
}
