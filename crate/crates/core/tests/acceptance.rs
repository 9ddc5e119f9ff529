//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use obcalc_core::binding_sum::{binding_sum_3d, binding_sum_symbolic, sum_all_pairs, SumSite, WordVariant, SUM_SIGN};
use obcalc_core::contact_verify::{
    default_lutz_pair, verify_framing_homotopy, verify_pushoff_contact, FramingGrid, PushOffProfile,
};
use obcalc_core::openbook::{fibration_oracle_h1, Descriptor, OpenBook3, SymbolicOpenBook};
use obcalc_core::surface::{CombSurface, CurveName, TwistWord};
use obcalc_core::zmodule::{smith_normal_form, AbelianGroup, IntMatrix};
use rand::Rng;

const TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass: ok, detail: detail.into() }
}

fn run(id: u32, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let pass = out.pass && took < limit;
    println!(
        "criterion {id} {}: {title} ({:.3}s, limit {}s) {}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs(),
        out.detail
    );
    pass
}

fn disc_pair() -> Outcome {
    let disc = OpenBook3::trivial(CombSurface::disc());
    let two = disc.disjoint_union("0", &disc, "1").unwrap();
    let (sum, cert) = binding_sum_3d(&two, &SumSite::new("0.1", "1.1")).unwrap();
    let comps = sum.page.components();
    let annulus = comps.len() == 1 && comps[0].genus == 0 && sum.page.boundary_count() == 2;
    let chi = (cert.chi_before, cert.chi_after) == (2, 0);
    let h1 = sum.manifold_h1().unwrap();
    let word = OpenBook3::new(sum.page.clone(), cert.word.clone()).unwrap();
    let trivial = word.monodromy_matrix().unwrap() == IntMatrix::identity(sum.page.rank())
        && word.section_defects().unwrap().entries.iter().all(|(_, d)| d.iter().all(Zero::is_zero));
    check(
        annulus && chi && h1 == AbelianGroup::free(1) && trivial,
        format!("page annulus {annulus}, chi {} -> {}, H1 = {h1}, word trivial {trivial}", cert.chi_before, cert.chi_after),
    )
}

fn lens_family() -> Outcome {
    let mut bad = Vec::new();
    for k in 0i64..=12 {
        let page = CombSurface::annulus();
        let w = TwistWord::resolve(&page, &[(CurveName::Core, k)]).unwrap();
        let h1 = OpenBook3::new(page, w).unwrap().manifold_h1().unwrap();
        let expect = if k == 0 { AbelianGroup::free(1) } else { AbelianGroup::from_orders(0, &[k]) };
        if h1 != expect || (k == 1 && !h1.is_trivial()) {
            bad.push(format!("k={k}: {h1}"));
        }
    }
    check(bad.is_empty(), format!("k = 0..12, mismatches: {}", if bad.is_empty() { "none".into() } else { bad.join(", ") }))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = common::rng(3);
    let mut mismatches = 0;
    let mut first = String::new();
    const N: usize = 200;
    for i in 0..N {
        let (a, b, m) = common::random_pair(&mut rng);
        let lhs = sum_all_pairs(&a, &b, &m, SUM_SIGN, WordVariant::WithOldParallels).unwrap().manifold_h1().unwrap();
        let rhs = fibration_oracle_h1(&a, &b, &m).unwrap();
        if lhs != rhs {
            mismatches += 1;
            if first.is_empty() {
                first = format!(", first at pair {i}: {lhs} vs {rhs}");
            }
        }
    }
    check(mismatches == 0, format!("{N} random pairs, {mismatches} mismatches{first}"))
}

fn symbolic_examples() -> Outcome {
    let book = |dim, page: &str, binding: &str| {
        SymbolicOpenBook::new(dim, Descriptor { name: page.into(), chi: 1 }, Descriptor { name: binding.into(), chi: 1 })
            .unwrap()
    };
    let a = binding_sum_symbolic(&book(4, "D^3", "S^2"), &book(4, "D^3", "S^2")).unwrap();
    let b = binding_sum_symbolic(&book(5, "D^4", "S^3"), &book(5, "D^4", "S^3")).unwrap();
    let ok_a = a.page.chi == 0 && a.page.name == "S¹×D²" && a.manifold.as_deref() == Some("S³×S¹");
    let ok_b = b.page.chi == 0
        && b.page.name == "D³×S¹"
        && b.manifold.as_deref() == Some("S⁴×S¹")
        && b.binding.name == "S²×S¹";
    check(
        ok_a && ok_b,
        format!(
            "dim 4: page {} (chi {}), {}; dim 5: page {} (chi {}), {}, binding {}",
            a.page.name,
            a.page.chi,
            a.manifold.clone().unwrap_or_default(),
            b.page.name,
            b.page.chi,
            b.manifold.clone().unwrap_or_default(),
            b.binding.name
        ),
    )
}

fn contact_positivity() -> Outcome {
    let l = default_lutz_pair();
    let r = verify_pushoff_contact(&l, &l, &PushOffProfile::default(), 2, 10_000, TOL).unwrap();
    let by_name = |p: &str| r.checks.iter().find(|c| c.name.starts_with(p)).map_or(false, |c| c.pass);
    let reduction = by_name("r' <= eps1 reduction");
    let abc = by_name("A, B, C");
    check(
        r.points >= 10_000 && r.pass && reduction && abc && r.all_pass(),
        format!("{} points, min {:.3e}, margin {:.3e}, reduction {reduction}, A/B/C {abc}", r.points, r.min, r.margin),
    )
}

fn framing_homotopy() -> Outcome {
    let r = verify_framing_homotopy(&PushOffProfile::default(), &FramingGrid::default(), TOL).unwrap();
    let find = |p: &str| r.checks.iter().find(|c| c.name.starts_with(p)).expect("check present");
    let ob = find("theta = pi/2");
    let br = find("sin(theta) = 0");
    check(
        r.points >= 100_000 && r.all_pass(),
        format!(
            "{} points, min distance {:.3e}, obstruction min {:.3e} at theta={:.4}, bracket {:.1} (never 0)",
            r.points, r.min, ob.value, ob.location[0].1, br.value
        ),
    )
}

fn property_suites() -> Outcome {
    let mut rng = common::rng(7);
    let mut snf_fail = 0;
    for _ in 0..1000 {
        let m = common::random_matrix(&mut rng, 5, 20);
        let s = smith_normal_form(&m);
        let f = s.invariant_factors();
        let ok = s.u.mul(&m).mul(&s.v) == s.d
            && s.d.is_diagonal()
            && s.u.determinant().abs().is_one()
            && s.v.determinant().abs().is_one()
            && f.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
            && f.iter().all(Signed::is_positive);
        snf_fail += usize::from(!ok);
    }
    let mut pair_fail = 0;
    for _ in 0..1000 {
        let (g, b) = common::SHAPES[rng.gen_range(0..4)];
        let s = CombSurface::standard(g + rng.gen_range(0..2), b + 1).unwrap();
        let n = s.rank();
        let (c, x, y) = (common::random_class(&mut rng, n, 5), common::random_class(&mut rng, n, 5), common::random_class(&mut rng, n, 5));
        let k = rng.gen_range(-3..=3);
        let before: BigInt = s.intersection(&x, &y).unwrap();
        let after = s.intersection(&s.twist(&c, k, &x), &s.twist(&c, k, &y)).unwrap();
        pair_fail += usize::from(before != after);
    }
    let mut arc_fail = 0;
    for _ in 0..200 {
        let shape = common::SHAPES[rng.gen_range(0..4)];
        let ob = common::random_book(&mut rng, shape);
        let n = ob.page.rank();
        let shifts: Vec<(String, Vec<BigInt>)> =
            ob.labels().into_iter().map(|l| (l, common::random_class(&mut rng, n, 3))).collect();
        let d = ob
            .section_defects_perturbed(&|l: &str| shifts.iter().find(|(x, _)| x == l).unwrap().1.clone())
            .unwrap();
        arc_fail += usize::from(ob.manifold_h1_with(&d).unwrap() != ob.manifold_h1().unwrap());
    }
    check(
        snf_fail + pair_fail + arc_fail == 0,
        format!("SNF 1000 matrices: {snf_fail} failures; pairing 1000 triples: {pair_fail} failures; arcs 200 books: {arc_fail} failures"),
    )
}

fn main() {
    println!("acceptance (seed {})", obcalc_core::seed_from_env(common::DEFAULT_SEED));
    let secs = Duration::from_secs;
    let results = [
        run(1, "disc pair sums to annulus open book of S2xS1", secs(1), disc_pair),
        run(2, "annulus with T(core)^k has H1 = Z/k", secs(1), lens_family),
        run(3, "sequential sums agree with the fibration oracle", secs(30), oracle_equivalence),
        run(4, "symbolic sphere sums", secs(1), symbolic_examples),
        run(5, "push-off contact positivity", secs(10), contact_positivity),
        run(6, "framing homotopy avoids tangency", secs(30), framing_homotopy),
        run(7, "property suites", secs(60), property_suites),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
