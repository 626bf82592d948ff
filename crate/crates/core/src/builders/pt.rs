use crate::fincat::{FinCat, MorId, Morphism, ObjId};
use crate::structure::MRStructure;

/// The free split of an idempotent: objects `A` and `X`, morphisms
/// `μ: A -> X` and `μ*: X -> A` with `μ* ∘ μ = 1`, and `e = μ ∘ μ*`.
/// `M = {1_A, 1_X, μ}`.
///
/// Ids: 0 `1_A`, 1 `1_X`, 2 `μ`, 3 `μ*`, 4 `e`.
pub fn pt() -> MRStructure {
    let (a, x) = (ObjId(0), ObjId(1));
    let mk = |dom, cod, label: &str| Morphism { dom, cod, label: label.into() };
    let morphisms = vec![mk(a, a, "1A"), mk(x, x, "1X"), mk(a, x, "mu"), mk(x, a, "mu*"), mk(x, x, "e")];
    let cat = FinCat::from_fn(vec!["A".into(), "X".into()], morphisms, vec![MorId(0), MorId(1)], |g, f| {
        match (g.0, f.0) {
            (0 | 1, _) => f,
            (_, 0 | 1) => g,
            (3, 2) => MorId(0),
            (2, 3) | (4, 4) => MorId(4),
            (4, 2) => MorId(2),
            (3, 4) => MorId(3),
            _ => unreachable!("composable pairs are listed"),
        }
    });
    MRStructure::new(cat, [MorId(0), MorId(1), MorId(2)], [(MorId(0), MorId(0)), (MorId(1), MorId(1)), (MorId(2), MorId(3))])
        .expect("ids in range")
}
