//! Constructions of concrete categories with their `(M, star)` data.

mod cube;
mod delta;
mod fisharp;
mod par;
mod pt;

pub use cube::{cube, cube_concrete};
pub use delta::{delta_bt, delta_bt_concrete};
pub use fisharp::{fi_sharp, fi_sharp_concrete, PartialInjection};
pub use par::{f2_injective_base, fi_base, finset_base, par, par_concrete, ParInput, Span};
pub use pt::pt;

use crate::fincat::{ConcreteCat, MorId, ObjId};
use crate::structure::MRStructure;

/// A built structure together with the concrete value behind each morphism
/// id.
#[derive(Clone, Debug)]
pub struct Concrete<T> {
    pub structure: MRStructure,
    pub values: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("size {size} is below the minimum {min}")]
    Size { size: usize, min: usize },
    #[error("base category is not a category: {0}")]
    BaseNotCategory(String),
    #[error("{class} is not closed under composition: {g} ∘ {f}")]
    NotClosed { class: &'static str, g: MorId, f: MorId },
    #[error("{class} does not contain identity {id}")]
    MissingIdentity { class: &'static str, id: MorId },
    #[error("{m} is in M but not monic: {m} ∘ {x} = {m} ∘ {y}")]
    NotMonic { m: MorId, x: MorId, y: MorId },
    #[error("{f} has no (E, M) factorization")]
    NoFactorization { f: MorId },
    #[error("{f} has two (E, M) factorizations not related by an isomorphism")]
    AmbiguousFactorization { f: MorId },
    #[error("no pullback of {m} along {f}")]
    MissingPullback { f: MorId, m: MorId },
    #[error("the pullback of {m} along {f} has a projection outside M")]
    PullbackNotInM { f: MorId, m: MorId },
    #[error("builder produced an invalid structure: {0}")]
    Internal(String),
}

/// Packages a concrete category with `M` given by a predicate and star by a
/// function of the value and its endpoints.
fn assemble<T: Clone + Eq + std::hash::Hash>(
    cc: ConcreteCat<T>,
    in_m: impl Fn(&T) -> bool,
    star: impl Fn(&T, ObjId, ObjId) -> T,
) -> Result<Concrete<T>, BuildError> {
    let c = &cc.cat;
    let m_ids: Vec<MorId> = c.morphism_ids().filter(|&f| in_m(&cc.values[f.0])).collect();
    let mut stars = Vec::with_capacity(m_ids.len());
    for &m in &m_ids {
        let v = star(&cc.values[m.0], c.dom(m), c.cod(m));
        let s = cc
            .lookup(c.cod(m), c.dom(m), &v)
            .ok_or_else(|| BuildError::Internal(format!("star of {m} is not a listed morphism")))?;
        stars.push((m, s));
    }
    let structure = MRStructure::new(cc.cat.clone(), m_ids, stars).map_err(|e| BuildError::Internal(e.to_string()))?;
    Ok(Concrete { structure, values: cc.values })
}

/// Renders a function table such as `[0,1,1]`.
fn table_label<T: std::fmt::Display>(dom: usize, cod: usize, t: &[T]) -> String {
    let body: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("{dom}>{cod}:[{}]", body.join(","))
}
