mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use obcalc_core::surface::{class_from, unit_class, CombSurface, CurveName, Foot, Side, TwistWord};
use proptest::prelude::*;
use rand::Rng;

fn big(v: &[i64]) -> Vec<BigInt> {
    class_from(v)
}

fn rank_law(s: &CombSurface) -> bool {
    let comps = s.components();
    s.rank() as i64 == comps.len() as i64 - s.euler_characteristic()
        && comps.iter().all(|c| c.boundary_count() >= 1)
}

/// Grows a surface from a standard page by `steps` random handles.
fn grown(seed: u64, steps: usize) -> CombSurface {
    let mut rng = common::rng(seed);
    let (g, b) = common::SHAPES[rng.gen_range(0..4)];
    let mut s = CombSurface::standard(g, b).unwrap();
    for _ in 0..steps {
        let foot = |rng: &mut rand_chacha::ChaCha8Rng, s: &CombSurface| {
            let halves = 2 * s.n_edges();
            if halves == 0 || rng.gen_bool(0.5) {
                let ls = s.labels();
                Foot::Marked(ls[rng.gen_range(0..ls.len())].clone())
            } else {
                let side = if rng.gen_bool(0.5) { Side::Before } else { Side::After };
                Foot::Flank { half_edge: rng.gen_range(0..halves), side }
            }
        };
        let a = foot(&mut rng, &s);
        let b = foot(&mut rng, &s);
        let chi = s.euler_characteristic();
        let (next, _) = s.attach_one_handle(&a, &b).unwrap();
        assert_eq!(next.euler_characteristic(), chi - 1);
        assert!(rank_law(&next));
        s = next;
    }
    s
}

#[test]
fn intersection_examples() {
    let t = CombSurface::standard(1, 1).unwrap();
    let (a, b) = (big(&[1, 0]), big(&[0, 1]));
    assert_eq!(t.intersection(&a, &b).unwrap(), BigInt::from(1));
    assert_eq!(t.intersection(&a, &a).unwrap(), BigInt::zero());
    assert_eq!(t.intersection(&big(&[1, 1]), &b).unwrap(), BigInt::from(1));
}

#[test]
fn twist_examples() {
    let t = CombSurface::standard(1, 2).unwrap();
    let a = unit_class(3, 0);
    let b = unit_class(3, 1);
    assert_eq!(t.twist(&a, 1, &b), big(&[1, 1, 0]));
    assert_eq!(t.twist(&b, 1, &b), b);
    let d = t.boundary_class("1").unwrap();
    assert_eq!(t.twist(&d, 5, &a), a);
}

#[test]
fn arc_examples() {
    let ann = CombSurface::annulus();
    let core = ann.resolve(&CurveName::Core).unwrap();
    let arc = ann.arc("1", "2").unwrap();
    assert_eq!(TwistWord::identity().apply_arc(&ann, &arc).unwrap(), arc);
    for k in [-3i64, 1, 4] {
        let w = TwistWord::resolve(&ann, &[(CurveName::Core, k)]).unwrap();
        let moved = w.apply_arc(&ann, &arc).unwrap();
        let shift: Vec<BigInt> = moved.offset.iter().zip(&arc.offset).map(|(x, y)| x - y).collect();
        let expect: Vec<BigInt> = core.iter().map(|c| c * arc.pair_with(&ann, &core) * k).collect();
        assert_eq!(shift, expect);
    }
    let t = CombSurface::standard(1, 2).unwrap();
    let arc = t.arc("1", "2").unwrap();
    let w = TwistWord::resolve(&t, &[(CurveName::A(1), 2), (CurveName::B(1), -1)]).unwrap();
    assert_eq!(w.apply_arc(&t, &arc).unwrap(), arc);
}

#[test]
fn handle_examples() {
    let disc = CombSurface::disc();
    let two = disc.disjoint_union("0", &disc, "1").unwrap();
    let (s, rec) = two.attach_one_handle(&Foot::Marked("0.1".into()), &Foot::Marked("1.1".into())).unwrap();
    assert_eq!((s.boundary_count(), s.euler_characteristic()), (1, 1));
    assert!(rec.removed_label.is_some());

    let (s, rec) = disc.attach_one_handle(&Foot::Marked("1".into()), &Foot::Marked("1".into())).unwrap();
    assert_eq!((s.boundary_count(), s.euler_characteristic()), (2, 0));
    assert!(rec.new_label.is_some());

    let ann = CombSurface::annulus();
    let two = ann.disjoint_union("0", &ann, "1").unwrap();
    let (s, _) = two.attach_one_handle(&Foot::Marked("0.1".into()), &Foot::Marked("1.2".into())).unwrap();
    assert_eq!((s.boundary_count(), s.euler_characteristic()), (3, -1));
    assert_eq!(s.components().len(), 1);
}

#[test]
fn glue_double_examples() {
    let pairs = |ls: &[&str]| ls.iter().map(|l| (l.to_string(), l.to_string())).collect::<Vec<_>>();
    let disc = CombSurface::disc();
    assert_eq!(CombSurface::glue_double(&disc, &disc, &pairs(&["1"])).unwrap().genus, 0);
    let ann = CombSurface::annulus();
    assert_eq!(CombSurface::glue_double(&ann, &ann, &pairs(&["1", "2"])).unwrap().genus, 1);
    let t = CombSurface::standard(1, 1).unwrap();
    let d = CombSurface::glue_double(&t, &t, &pairs(&["1"])).unwrap();
    assert_eq!(d.genus, 2);
    assert_eq!(d.h1().free_rank(), 4);
}

#[test]
fn curve_names_print_and_resolve() {
    let t = CombSurface::standard(1, 2).unwrap();
    assert_eq!(CurveName::Vec(big(&[1, -2, 0])).to_string(), "vec[1,-2,0]");
    assert!(t.resolve(&CurveName::Vec(big(&[2, 4, 0]))).is_err());
    assert_eq!(t.name_class(&big(&[0, -1, 0])), CurveName::B(1));
    assert_eq!(t.name_class(&t.boundary_class("2").unwrap()), CurveName::D("1".into()));
    let t3 = CombSurface::standard(1, 3).unwrap();
    assert_eq!(t3.name_class(&t3.boundary_class("3").unwrap()), CurveName::D("3".into()));
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn random_handles_keep_euler_and_rank_laws(seed in any::<u64>(), steps in 1usize..6) {
        let s = grown(seed, steps);
        let labels = s.labels();
        for l in &labels {
            let c = s.boundary_class(l).unwrap();
            for i in 0..s.rank() {
                prop_assert!(s.intersection(&c, &unit_class(s.rank(), i)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn transvections_preserve_pairing(seed in any::<u64>(), k in -3i64..=3) {
        let s = grown(seed, 2);
        let mut rng = common::rng(seed.rotate_left(7));
        let n = s.rank();
        let (c, x, y) = (common::random_class(&mut rng, n, 4), common::random_class(&mut rng, n, 4), common::random_class(&mut rng, n, 4));
        let before = s.intersection(&x, &y).unwrap();
        let after = s.intersection(&s.twist(&c, k, &x), &s.twist(&c, k, &y)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn word_then_inverse_is_identity(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let shape = common::SHAPES[rng.gen_range(0..4)];
        let ob = common::random_book(&mut rng, shape);
        let n = ob.page.rank();
        let x = common::random_class(&mut rng, n, 5);
        let w = &ob.monodromy;
        let y = w.apply(&ob.page, &x).unwrap();
        prop_assert_eq!(w.inverse().apply(&ob.page, &y).unwrap(), x.clone());
        prop_assert_eq!(w.compose(&w.inverse()).apply(&ob.page, &x).unwrap(), x);
    }

    #[test]
    fn glue_double_euler_law(i in 0usize..4, j in 0usize..4) {
        let (s0, s1) = (common::SHAPES[i], common::SHAPES[j]);
        prop_assume!(s0.1 == s1.1);
        let p0 = CombSurface::standard(s0.0, s0.1).unwrap();
        let p1 = CombSurface::standard(s1.0, s1.1).unwrap();
        let m: Vec<(String, String)> = p0.labels().into_iter().zip(p1.labels()).collect();
        let d = CombSurface::glue_double(&p0, &p1, &m).unwrap();
        let chi = p0.euler_characteristic() + p1.euler_characteristic();
        prop_assert_eq!(2 - 2 * d.genus as i64, chi);
        prop_assert_eq!(d.h1().free_rank() as i64, 2 - chi);
    }
}
