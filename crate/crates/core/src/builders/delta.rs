use super::{assemble, table_label, BuildError, Concrete};
use crate::fincat::{ConcreteCat, ObjId};
use crate::structure::MRStructure;

/// Order-preserving maps `{0..a-1} -> {0..b-1}` keeping first and last
/// elements, as function tables.
fn endpoint_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, a: usize, b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == a {
            if cur[a - 1] == b - 1 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = if i == 0 { 0 } else { cur[i - 1] };
        let hi = if i == 0 { 0 } else { b - 1 };
        for v in lo..=hi {
            cur.push(v);
            go(i + 1, a, b, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, a, b, &mut Vec::with_capacity(a), &mut out);
    out
}

/// Left adjoint of an injection: `j ↦ min{i : m(i) >= j}`.
fn left_adjoint(m: &[usize], b: usize) -> Vec<usize> {
    (0..b).map(|j| m.iter().position(|&x| x >= j).expect("last element is hit")).collect()
}

/// Non-empty finite ordinals `1..=n_max` with maps preserving order, first
/// and last element. Object `i` is the ordinal with `i + 1` elements.
/// `M` is the injections, with star the left adjoint.
pub fn delta_bt_concrete(n_max: usize) -> Result<Concrete<Vec<usize>>, BuildError> {
    if n_max < 1 {
        return Err(BuildError::Size { size: n_max, min: 1 });
    }
    let size = |a: ObjId| a.0 + 1;
    let cc = ConcreteCat::build(
        (1..=n_max).map(|k| k.to_string()).collect(),
        |a, b| endpoint_maps(size(a), size(b)),
        |a| (0..size(a)).collect(),
        |g, f| f.iter().map(|&x| g[x]).collect(),
        |a, b, v| table_label(size(a), size(b), v),
    );
    assemble(cc, |v| v.windows(2).all(|w| w[0] < w[1]), |v, _, b| left_adjoint(v, size(b)))
}

pub fn delta_bt(n_max: usize) -> Result<MRStructure, BuildError> {
    delta_bt_concrete(n_max).map(|c| c.structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::check_category;

    #[test]
    fn small_homs() {
        assert_eq!(endpoint_maps(2, 2), vec![vec![0, 1]]);
        assert_eq!(endpoint_maps(3, 2).len(), 2);
        assert_eq!(endpoint_maps(1, 2).len(), 0);
        assert_eq!(endpoint_maps(3, 1), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn one_object_at_size_one() {
        let s = delta_bt(1).unwrap();
        assert_eq!(s.cat().n_objects(), 1);
        assert_eq!(s.cat().n_morphisms(), 1);
        assert!(delta_bt(0).is_err());
    }

    #[test]
    fn valid_category() {
        let s = delta_bt(4).unwrap();
        assert!(check_category(s.cat()).is_valid());
        assert!(s.validate().is_empty());
        assert_eq!(s.cat().hom(ObjId(1), ObjId(1)).len(), 1);
    }
}
