mod common;

use splitequiv::builders::{cube, delta_bt, fi_sharp, pt};
use splitequiv::equivalence::{counit, hat, tilde, unit, KernelModule};
use splitequiv::exactlin::{kernel, QMat, Q};
use splitequiv::fincat::{check_category, FinCat, FinCatData};
use splitequiv::functors::{random_pointed_functor, validate_additive, validate_pointed, AdditiveFunctor};
use splitequiv::structure::{MRStructure, Setting};
use proptest::prelude::*;

use common::{brute_category_violation, brute_structure_violation};

fn q() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Q::new(n, d))
}

fn qmat(rows: usize, cols: usize) -> impl Strategy<Value = QMat> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| QMat::from_fn(rows, cols, |i, j| Q::from_int(v[i * cols + j])))
}

fn km(s: MRStructure) -> KernelModule {
    KernelModule::build(Setting::analyze(s).unwrap()).unwrap()
}

fn small_structure(which: usize, size: usize) -> MRStructure {
    match which {
        0 => delta_bt(2 + size % 3).unwrap(),
        1 => fi_sharp(1 + size % 2).unwrap(),
        2 => cube(1 + size % 2).unwrap(),
        _ => pt(),
    }
}

/// Functoriality of an additive functor checked at every composable pair.
fn brute_additive_ok(cat: &FinCat, t: &AdditiveFunctor) -> bool {
    cat.objects().all(|a| t.mat(cat.id(a)).is_identity())
        && cat.morphism_ids().all(|f| {
            cat.out_of_object(cat.cod(f)).all(|g| *t.mat(cat.comp(g, f)) == t.mat(g).dot(t.mat(f)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_form_a_field(a in q(), b in q(), c in q()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Q::one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Q>().unwrap(), a);
    }

    #[test]
    fn matrix_product_is_associative(a in qmat(2, 3), b in qmat(3, 4), c in qmat(4, 2)) {
        prop_assert_eq!(a.dot(&b).dot(&c), a.dot(&b.dot(&c)));
        prop_assert_eq!(a.dot(&b).transpose(), b.transpose().dot(&a.transpose()));
    }

    #[test]
    fn rank_and_kernel_are_complementary(m in qmat(4, 5)) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), 5);
        prop_assert!(m.dot(k.basis()).is_zero());
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn inverses_are_two_sided(m in qmat(3, 3)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert_eq!(m.dot(&inv), QMat::identity(3));
                prop_assert_eq!(inv.dot(&m), QMat::identity(3));
            }
            Err(_) => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn generated_functors_round_trip(which in 0usize..4, size in 0usize..3, seed in any::<u64>(), dims_seed in prop::collection::vec(0usize..=2, 5)) {
        let km = km(small_structure(which, size));
        let n = km.setting().cat().n_objects();
        let dims: Vec<usize> = dims_seed[..n].to_vec();
        let f = random_pointed_functor(km.d(), &dims, seed).unwrap();
        prop_assert_eq!(&f.dims, &dims);
        prop_assert!(validate_pointed(km.d(), &f).unwrap().is_valid());
        let h = hat(&km, &f).unwrap();
        prop_assert!(validate_additive(km.setting().cat(), &h).unwrap().is_valid());
        prop_assert!(brute_additive_ok(km.setting().cat(), &h));
        // hat(F)(B) is the sum of F over the classes of subobjects of B
        for b in km.setting().cat().objects() {
            let total: usize = km.setting().sub_poset(b).classes().iter().map(|c| dims[km.setting().cat().dom(c.rep).0]).sum();
            prop_assert_eq!(h.dims[b.0], total);
        }
        prop_assert_eq!(&tilde(&km, &h).unwrap().dims, &dims);
        prop_assert!(unit(&km, &f).unwrap().is_iso());
        prop_assert!(counit(&km, &h).unwrap().is_iso());
    }

    #[test]
    fn additive_validation_matches_brute_force(which in 0usize..4, seed in any::<u64>(), pick in any::<prop::sample::Index>(), delta in 1i64..=3) {
        let km = km(small_structure(which, 1));
        let cat = km.setting().cat();
        let dims = vec![1; cat.n_objects()];
        let f = random_pointed_functor(km.d(), &dims, seed).unwrap();
        let h = hat(&km, &f).unwrap();
        let mut mats: Vec<QMat> = cat.morphism_ids().map(|g| h.mat(g).clone()).collect();
        let g = pick.index(mats.len());
        if mats[g].rows() > 0 && mats[g].cols() > 0 {
            mats[g][(0, 0)] = &mats[g][(0, 0)] + &Q::from_int(delta);
        }
        let t = AdditiveFunctor::new(cat, h.dims.clone(), mats).unwrap();
        prop_assert_eq!(validate_additive(cat, &t).unwrap().is_valid(), brute_additive_ok(cat, &t));
    }

    #[test]
    fn category_checker_matches_brute_force(which in 0usize..4, edits in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), any::<prop::sample::Index>()), 1..3)) {
        let s = small_structure(which, 0);
        let mut data = FinCatData::from(s.cat().clone());
        let n = data.morphisms.len();
        for (g, f, v) in edits {
            data.comp[g.index(n)][f.index(n)] = v.index(n + 1) as i64 - 1;
        }
        let oracle = brute_category_violation(&data);
        let cat = FinCat::try_from(data).unwrap();
        prop_assert_eq!(check_category(&cat).is_valid(), oracle.is_none());
    }

    #[test]
    fn structure_checker_matches_brute_force(which in 0usize..4, size in 0usize..3, m in any::<prop::sample::Index>(), x in any::<prop::sample::Index>()) {
        let s = small_structure(which, size);
        let ms: Vec<_> = s.m_ids().collect();
        let m = ms[m.index(ms.len())];
        let x = splitequiv::fincat::MorId(x.index(s.cat().n_morphisms()));
        let mutated = s.with_star(m, x);
        prop_assert_eq!(mutated.validate().is_empty(), brute_structure_violation(&mutated).is_none());
    }

    #[test]
    fn kernel_module_laws_hold(which in 0usize..4, size in 0usize..3) {
        let km = km(small_structure(which, size));
        prop_assert!(km.check_laws().is_empty());
    }
}
