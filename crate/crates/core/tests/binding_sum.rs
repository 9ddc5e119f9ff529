mod common;

use obcalc_core::binding_sum::{
    binding_sum_3d, binding_sum_3d_with, binding_sum_symbolic, calibrate_signs, sum_all_pairs, SumSite, WordVariant,
    SUM_SIGN,
};
use obcalc_core::openbook::{fibration_oracle_h1, Descriptor, OpenBook3, SymbolicOpenBook};
use obcalc_core::surface::{CombSurface, CurveName, TwistWord};
use obcalc_core::zmodule::AbelianGroup;
use proptest::prelude::*;

fn pairs(ls: &[(&str, &str)]) -> Vec<(String, String)> {
    ls.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn annulus(k: i64) -> OpenBook3 {
    let page = CombSurface::annulus();
    let w = TwistWord::resolve(&page, &[(CurveName::Core, k)]).unwrap();
    OpenBook3::new(page, w).unwrap()
}

fn symbolic(dim: usize, page: &str, binding: &str) -> SymbolicOpenBook {
    SymbolicOpenBook::new(dim, Descriptor { name: page.into(), chi: 1 }, Descriptor { name: binding.into(), chi: 1 })
        .unwrap()
}

#[test]
fn disc_pair_gives_annulus_with_trivial_word() {
    let disc = OpenBook3::trivial(CombSurface::disc());
    let two = disc.disjoint_union("0", &disc, "1").unwrap();
    let (sum, cert) = binding_sum_3d(&two, &SumSite::new("0.1", "1.1")).unwrap();
    let comps = sum.page.components();
    assert_eq!((comps.len(), comps[0].genus, sum.page.boundary_count()), (1, 0, 2));
    assert_eq!((cert.chi_before, cert.chi_after), (2, 0));
    assert_eq!(sum.manifold_h1().unwrap(), AbelianGroup::free(1));
    let word = OpenBook3::new(sum.page.clone(), cert.word.clone()).unwrap();
    assert_eq!(word.monodromy_matrix().unwrap(), obcalc_core::zmodule::IntMatrix::identity(1));
    assert!(word.section_defects().unwrap().entries.iter().all(|(_, d)| d.iter().all(|x| x == &0.into())));
}

#[test]
fn annulus_pair_along_one_circle_is_four_holed_sphere() {
    let ann = OpenBook3::trivial(CombSurface::annulus());
    let two = ann.disjoint_union("0", &ann, "1").unwrap();
    let (once, cert) = binding_sum_3d(&two, &SumSite::new("0.1", "1.1")).unwrap();
    let comps = once.page.components();
    assert_eq!((comps.len(), comps[0].genus), (1, 0));
    assert_eq!((once.page.boundary_count(), once.euler_characteristic()), (4, -2));
    assert_eq!(cert.chi_after, cert.chi_before - 2);
    let (twice, _) = binding_sum_3d(&once, &SumSite::new("0.2", "1.2")).unwrap();
    let oracle = fibration_oracle_h1(&ann, &ann, &pairs(&[("1", "1"), ("2", "2")])).unwrap();
    assert_eq!(oracle, AbelianGroup::free(3));
    assert_eq!(twice.manifold_h1().unwrap(), oracle);
}

#[test]
fn sum_keeps_boundary_count_and_drops_euler_by_two() {
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let (a, b, m) = common::random_pair(&mut rng);
        let mut ob = a.disjoint_union("0", &b, "1").unwrap();
        for (x, y) in &m {
            let chi = ob.euler_characteristic();
            let count = ob.page.boundary_count();
            ob = binding_sum_3d(&ob, &SumSite::new(format!("0.{x}"), format!("1.{y}"))).unwrap().0;
            assert_eq!(ob.euler_characteristic(), chi - 2);
            assert_eq!(ob.page.boundary_count(), count);
        }
    }
}

#[test]
fn calibration_prefers_positive_sign_and_rejects_bare_word() {
    let c = calibrate_signs().unwrap();
    assert_eq!(c.sign, SUM_SIGN);
    assert_eq!(c.consistent, vec![1, -1]);
    assert!(c.log.iter().any(|l| l.contains("without old-boundary parallels: rejected")));
}

#[test]
fn bare_word_fails_the_torus_anchor() {
    let ann = OpenBook3::trivial(CombSurface::annulus());
    let m = pairs(&[("1", "1"), ("2", "2")]);
    let h = sum_all_pairs(&ann, &ann, &m, SUM_SIGN, WordVariant::BoundaryAndGlue).unwrap().manifold_h1().unwrap();
    assert_ne!(h, AbelianGroup::free(3));
}

#[test]
fn lens_pairs_match_oracle() {
    let m = pairs(&[("1", "1"), ("2", "2")]);
    for p in -4i64..=4 {
        for q in -4i64..=4 {
            let (a, b) = (annulus(p), annulus(q));
            let s = sum_all_pairs(&a, &b, &m, SUM_SIGN, WordVariant::WithOldParallels).unwrap();
            assert_eq!(s.manifold_h1().unwrap(), fibration_oracle_h1(&a, &b, &m).unwrap(), "p = {p}, q = {q}");
        }
    }
}

#[test]
fn symbolic_examples() {
    let s = binding_sum_symbolic(&symbolic(4, "D^3", "S^2"), &symbolic(4, "D^3", "S^2")).unwrap();
    assert_eq!((s.page.chi, s.page.name.as_str()), (0, "S¹×D²"));
    assert_eq!(s.manifold.as_deref(), Some("S³×S¹"));
    let s = binding_sum_symbolic(&symbolic(5, "D^4", "S^3"), &symbolic(5, "D^4", "S^3")).unwrap();
    assert_eq!((s.page.chi, s.page.name.as_str()), (0, "D³×S¹"));
    assert_eq!(s.manifold.as_deref(), Some("S⁴×S¹"));
    assert_eq!(s.binding.name, "S²×S¹");
}

#[test]
fn symbolic_point_binding_page_reduces_to_three_dimensional_law() {
    let a = SymbolicOpenBook::new(3, Descriptor { name: "Σ0".into(), chi: -1 }, Descriptor { name: "S^1".into(), chi: 1 }).unwrap();
    let b = SymbolicOpenBook::new(3, Descriptor { name: "Σ1".into(), chi: 0 }, Descriptor { name: "S^1".into(), chi: 1 }).unwrap();
    assert_eq!(binding_sum_symbolic(&a, &b).unwrap().page.chi, -1 + 0 - 2);
}

#[test]
fn symbolic_mismatch_is_an_error() {
    assert!(binding_sum_symbolic(&symbolic(4, "D^3", "S^2"), &symbolic(5, "D^4", "S^3")).is_err());
}

proptest! {
    #![proptest_config(common::config(48))]

    #[test]
    fn sum_is_symmetric(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b, m) = common::random_pair(&mut rng);
        let ob = a.disjoint_union("0", &b, "1").unwrap();
        let (x, y) = &m[0];
        let (l0, l1) = (format!("0.{x}"), format!("1.{y}"));
        let fwd = binding_sum_3d(&ob, &SumSite::new(l0.clone(), l1.clone())).unwrap().0;
        let bwd = binding_sum_3d(&ob, &SumSite::new(l1, l0)).unwrap().0;
        prop_assert_eq!(fwd.manifold_h1().unwrap(), bwd.manifold_h1().unwrap());
    }

    #[test]
    fn sequential_sums_match_oracle(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b, m) = common::random_pair(&mut rng);
        let s = sum_all_pairs(&a, &b, &m, SUM_SIGN, WordVariant::WithOldParallels).unwrap();
        prop_assert_eq!(s.manifold_h1().unwrap(), fibration_oracle_h1(&a, &b, &m).unwrap());
    }

    #[test]
    fn both_signs_agree_on_h1(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b, m) = common::random_pair(&mut rng);
        let ob = a.disjoint_union("0", &b, "1").unwrap();
        let site = SumSite::new(format!("0.{}", m[0].0), format!("1.{}", m[0].1));
        let plus = binding_sum_3d_with(&ob, &site, 1, WordVariant::WithOldParallels).unwrap().0;
        let minus = binding_sum_3d_with(&ob, &site, -1, WordVariant::WithOldParallels).unwrap().0;
        prop_assert_eq!(plus.manifold_h1().unwrap(), minus.manifold_h1().unwrap());
    }
}
