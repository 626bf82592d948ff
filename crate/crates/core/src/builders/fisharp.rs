use super::{assemble, BuildError, Concrete};
use crate::fincat::{ConcreteCat, ObjId};
use crate::structure::MRStructure;

/// A partial injection `{0..a-1} -> {0..b-1}`; entry `i` is the image of `i`.
pub type PartialInjection = Vec<Option<usize>>;

fn partial_injections(a: usize, b: usize) -> Vec<PartialInjection> {
    fn go(i: usize, a: usize, b: usize, used: &mut [bool], cur: &mut PartialInjection, out: &mut Vec<PartialInjection>) {
        if i == a {
            out.push(cur.clone());
            return;
        }
        cur.push(None);
        go(i + 1, a, b, used, cur, out);
        cur.pop();
        for v in 0..b {
            if !used[v] {
                used[v] = true;
                cur.push(Some(v));
                go(i + 1, a, b, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, a, b, &mut vec![false; b], &mut Vec::with_capacity(a), &mut out);
    out
}

fn label(a: usize, b: usize, f: &PartialInjection) -> String {
    let body: Vec<String> = f.iter().map(|x| x.map_or("-".to_string(), |v| v.to_string())).collect();
    format!("{a}>{b}:[{}]", body.join(","))
}

/// Finite sets `{0..k-1}`, `k <= n_max`, with partial injections. `M` is the
/// total injections, with star the partial inverse.
pub fn fi_sharp_concrete(n_max: usize) -> Result<Concrete<PartialInjection>, BuildError> {
    let size = |a: ObjId| a.0;
    let cc = ConcreteCat::build(
        (0..=n_max).map(|k| k.to_string()).collect(),
        |a, b| partial_injections(size(a), size(b)),
        |a| (0..size(a)).map(Some).collect(),
        |g, f| f.iter().map(|x| x.and_then(|j| g[j])).collect(),
        |a, b, v| label(size(a), size(b), v),
    );
    assemble(
        cc,
        |v| v.iter().all(Option::is_some),
        |v, _, b| {
            let mut inv = vec![None; size(b)];
            for (i, x) in v.iter().enumerate() {
                inv[x.expect("total")] = Some(i);
            }
            inv
        },
    )
}

pub fn fi_sharp(n_max: usize) -> Result<MRStructure, BuildError> {
    fi_sharp_concrete(n_max).map(|c| c.structure)
}
