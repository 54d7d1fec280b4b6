use proptest::prelude::*;

use hfree::cartan::Gcm;
use hfree::classify::{decide, search_rank2, DecideOptions, Rank2Verdict, Verdict};
use hfree::exactpoly::{q, Ctx, Monomial, MultiPoly, VarContext, VarKind};
use hfree::exec::Exec;
use hfree::modfam::{build_a, build_b2, build_c, HFreeModule, Param};
use hfree::twistop::TwistedOp;
use hfree::verify::relation_residuals;

fn ctx(n: usize) -> Ctx {
    let names: Vec<String> = (1..=n).map(|i| format!("H_{i}")).collect();
    VarContext::uniform(&names, VarKind::Cartan)
}

fn poly_from(c: &Ctx, terms: &[(Vec<u32>, i64, i64)]) -> MultiPoly {
    let mut p = MultiPoly::zero(c);
    for (e, num, den) in terms {
        let mut m = Monomial::one(c.len());
        for (v, x) in e.iter().enumerate().take(c.len()) {
            m.0[v] = *x;
        }
        p = &p + &MultiPoly::monomial(c, m, q(*num, *den));
    }
    p
}

fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -6i64..=6, 1i64..=4), 0..=max_terms)
}

fn poly(n: usize) -> impl Strategy<Value = MultiPoly> {
    terms(n, 3, 5).prop_map(move |t| poly_from(&ctx(n), &t))
}

fn op(n: usize) -> impl Strategy<Value = TwistedOp> {
    prop::collection::vec((terms(n, 2, 3), prop::collection::vec(-1i64..=1, n)), 1..=3).prop_map(move |parts| {
        let c = ctx(n);
        parts.iter().fold(TwistedOp::zero(&c), |acc, (t, v)| acc.try_add(&TwistedOp::term(poly_from(&c, t), v.clone()).unwrap()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn render_parse_round_trip(a in poly(3)) {
        let back = MultiPoly::parse(a.ctx(), &a.render()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn shift_is_a_ring_automorphism(a in poly(2), b in poly(2), k in -3i64..=3) {
        let s = |p: &MultiPoly| p.shift(0, k).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&a).shift(0, -k).unwrap(), a);
    }

    #[test]
    fn shift_lowers_degree_by_one(a in poly(3), i in 0usize..3, k in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])) {
        prop_assume!(!a.is_zero());
        let d = a.degree_in(i).unwrap();
        let diff = &a.shift(i, k).unwrap() - &a;
        prop_assert_eq!(diff.degree_in(i).unwrap(), d - 1);
    }

    #[test]
    fn iterated_difference_degree(a in poly(2), m in 0u32..=7) {
        prop_assume!(!a.is_zero());
        let d = a.degree_in(0).unwrap();
        let mut it = a.clone();
        for _ in 0..m {
            it = &it.shift(0, 1).unwrap() - &it;
        }
        let want = if i64::from(m) <= d { d - i64::from(m) } else { -1 };
        prop_assert_eq!(it.degree_in(0).unwrap(), want);
    }

    #[test]
    fn composition_is_associative(x in op(2), y in op(2), z in op(2)) {
        let l = x.compose(&y).unwrap().compose(&z).unwrap();
        let r = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn composition_matches_application(x in op(2), y in op(2), g in poly(2)) {
        let xy = x.compose(&y).unwrap();
        prop_assert_eq!(xy.apply(&g).unwrap(), x.apply(&y.apply(&g).unwrap()).unwrap());
    }

    #[test]
    fn jacobi_identity(x in op(2), y in op(2), z in op(2)) {
        let b = |p: &TwistedOp, r: &TwistedOp| p.bracket(r).unwrap();
        let sum = b(&x, &b(&y, &z)).try_add(&b(&y, &b(&z, &x))).unwrap().try_add(&b(&z, &b(&x, &y))).unwrap();
        prop_assert!(sum.is_zero());
    }
}

fn nonzero_rational() -> impl Strategy<Value = hfree::Rational> {
    (prop::sample::select(vec![-5i64, -3, -2, -1, 1, 2, 3, 7]), 1i64..=5).prop_map(|(n, d)| q(n, d))
}

fn subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), n).prop_map(|bits| bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i + 1).collect())
}

fn holds(m: &HFreeModule) -> bool {
    relation_residuals(m, Exec::Sequential).unwrap().failures().is_empty()
}

/// Adds `delta` to one coefficient of `E_i` or `F_i`.
fn mutate(m: &HFreeModule, gen: usize, on_e: bool, pick: usize, delta: &hfree::Rational) -> HFreeModule {
    let mut es: Vec<MultiPoly> = (0..m.rank()).map(|i| m.e_poly(i)).collect();
    let mut fs: Vec<MultiPoly> = (0..m.rank()).map(|i| m.f_poly(i)).collect();
    let target = if on_e { &mut es[gen] } else { &mut fs[gen] };
    let keys: Vec<Monomial> = target.terms().keys().cloned().collect();
    let mono = keys[pick % keys.len()].clone();
    *target = &*target + &MultiPoly::monomial(m.ctx(), mono, delta.clone());
    if target.is_zero() {
        *target = MultiPoly::constant(m.ctx(), delta.clone());
    }
    HFreeModule::from_polys(m.gcm.clone(), m.basis.clone(), es, fs, &m.family, m.parameters.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn a_family_random_parameters(a in prop::collection::vec(nonzero_rational(), 2), b in nonzero_rational(), s in subset(3)) {
        let m = build_a(2, &[Param::Value(a[0].clone()), Param::Value(a[1].clone())], &[], &hfree::exactpoly::render_rational(&b), &s).unwrap();
        prop_assert!(holds(&m));
    }

    #[test]
    fn b2_and_c_families_random_units(a in prop::collection::vec(nonzero_rational(), 3), s2 in subset(2), s3 in subset(3)) {
        let b2 = build_b2(&[Param::Value(a[0].clone()), Param::Value(a[1].clone())], &s2).unwrap();
        prop_assert!(holds(&b2));
        let c3 = build_c(3, &a.iter().cloned().map(Param::Value).collect::<Vec<_>>(), &s3).unwrap();
        prop_assert!(holds(&c3));
    }

    #[test]
    fn single_coefficient_mutation_is_detected(which in 0usize..3, gen in 0usize..2, on_e in any::<bool>(), pick in 0usize..8, delta in nonzero_rational(), s in subset(2)) {
        let m = match which {
            0 => build_a(2, &Param::ones(2), &[], "1/3", &s).unwrap(),
            1 => build_b2(&Param::ones(2), &s).unwrap(),
            _ => build_c(2, &Param::ones(2), &s).unwrap(),
        };
        prop_assert!(holds(&m));
        let bad = mutate(&m, gen, on_e, pick, &delta);
        prop_assert!(!holds(&bad));
    }
}

#[test]
fn rank2_search_agrees_with_decide() {
    for r in 1..=3 {
        for s in 1..=3 {
            let g = Gcm::rank2(r, s).unwrap();
            let d = decide(&g, DecideOptions { certify: false, exec: Exec::best() }).unwrap();
            let res = search_rank2(r, s, 2, Exec::best()).unwrap();
            let refuted = matches!(res.verdict, Rank2Verdict::Unsat);
            assert_eq!(refuted, d.verdict == Verdict::Empty, "A({r},{s})");
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let a = search_rank2(2, 2, 3, Exec::Parallel).unwrap().to_json();
    let b = search_rank2(2, 2, 3, Exec::Sequential).unwrap().to_json();
    assert_eq!(a, b);
}
