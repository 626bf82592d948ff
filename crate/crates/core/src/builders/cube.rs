use super::{assemble, table_label, BuildError, Concrete};
use crate::fincat::{ConcreteCat, ObjId};
use crate::structure::MRStructure;

/// Maps `⟨a⟩ -> ⟨b⟩` encoded on `{0, ..., a+1}` with `0` the bottom and
/// `a+1` the top: both ends are fixed, and the middle elements sent to the
/// middle keep their strict order.
fn cube_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, a: usize, b: usize, last: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > a {
            cur.push(b + 1);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in [0, b + 1].into_iter().chain(last + 1..=b) {
            cur.push(v);
            let next = if v == 0 || v == b + 1 { last } else { v };
            go(i + 1, a, b, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, a, b, 0, &mut vec![0], &mut out);
    out
}

/// The cubical category: objects `⟨0⟩..⟨k_max⟩` with `⟨k⟩ = {-, 1..k, +}`.
/// `M` is the injective maps; star sends `m(i)` to `i` and everything else
/// to the top.
pub fn cube_concrete(k_max: usize) -> Result<Concrete<Vec<usize>>, BuildError> {
    let size = |a: ObjId| a.0;
    let cc = ConcreteCat::build(
        (0..=k_max).map(|k| format!("<{k}>")).collect(),
        |a, b| cube_maps(size(a), size(b)),
        |a| (0..size(a) + 2).collect(),
        |g, f| f.iter().map(|&x| g[x]).collect(),
        |a, b, v| table_label(size(a), size(b), v),
    );
    assemble(
        cc,
        |v: &Vec<usize>| {
            let mut seen = v.clone();
            seen.sort();
            seen.windows(2).all(|w| w[0] != w[1])
        },
        |v, _, b| {
            let top = v.len() - 1;
            let mut out = vec![top; size(b) + 2];
            for (i, &x) in v.iter().enumerate() {
                out[x] = i;
            }
            out
        },
    )
}

pub fn cube(k_max: usize) -> Result<MRStructure, BuildError> {
    cube_concrete(k_max).map(|c| c.structure)
}
