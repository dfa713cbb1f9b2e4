use std::sync::Arc;
use tangentlab::catcore::{Category, FiniteCategory};
use tangentlab::tangent::{verify_indexing_functor, verify_tangent_structure};
use tangentlab::zariski::algebra::{t2_pushout, tangent_hom};
use tangentlab::zariski::lemmas::{omega_hom, omega_inverse, sigma_hom, theta_hom, theta_inverse};
use tangentlab::zariski::maps::{add_hom, flip_hom, lift_hom, zero_hom};
use tangentlab::zariski::*;
use tangentlab::{CatError, Rational, VerificationReport};

type A = FpAlgebra<Rational>;

fn alg(gens: &[&str], rels: &[&str]) -> QAlg {
    A::parse(None, gens, rels).unwrap()
}

fn over(base: &QAlg, gens: &[&str], rels: &[&str]) -> QAlg {
    A::parse(Some(base.clone()), gens, rels).unwrap()
}

fn hom(src: &QAlg, tgt: &QAlg, images: &[(&str, &str)]) -> QHom {
    AlgebraHom::parse(src.clone(), tgt.clone(), images).unwrap()
}

fn assert_pass(r: &VerificationReport) {
    assert!(r.passed(), "{}", r.to_text());
}

fn el(a: &QAlg, p: &Poly<Rational>) -> String {
    a.render(p)
}

#[test]
fn normal_forms() {
    let qx = alg(&["x"], &[]);
    let e = qx.parse_element("x^2 - x^2").unwrap();
    assert!(qx.nf(&e).unwrap().is_zero());

    let sq = alg(&["x", "dx"], &["dx^2"]);
    assert!(sq.nf(&sq.parse_element("dx*dx").unwrap()).unwrap().is_zero());

    let dual = alg(&["x", "dx"], &["x^2", "2*x*dx", "dx^2"]);
    assert!(dual.nf(&dual.parse_element("x*dx").unwrap()).unwrap().is_zero());
    assert!(!dual.nf(&dual.parse_element("dx").unwrap()).unwrap().is_zero());
}

#[test]
fn tangent_presentations() {
    let sq = A::parse_with_mode(None, &["x"], &[], Mode::SquareZero).unwrap();
    let t = tangent_algebra(&sq).unwrap();
    assert_eq!(t.gens(), ["x", "dx"]);
    assert_eq!(t.rels().iter().map(|r| el(&t, r)).collect::<Vec<_>>(), ["dx^2"]);

    let dual = A::parse_with_mode(None, &["x"], &["x^2"], Mode::SquareZero).unwrap();
    let t = tangent_algebra(&dual).unwrap();
    let oracle = alg(&["x", "dx"], &["x^2", "2*x*dx", "dx^2"]);
    for p in ["x*dx", "x^2", "dx^2"] {
        assert!(t.nf(&t.parse_element(p).unwrap()).unwrap().is_zero());
        assert!(oracle.nf(&oracle.parse_element(p).unwrap()).unwrap().is_zero());
    }
    assert!(!t.nf(&t.parse_element("x + dx").unwrap()).unwrap().is_zero());

    let t2 = tangent_algebra(&tangent_algebra(&alg(&["x"], &[])).unwrap()).unwrap();
    assert_eq!(t2.gens(), ["x", "dx", "delta_x", "delta_dx"]);
}

#[test]
fn second_differentials_are_not_written_ddx() {
    let t = tangent_algebra(&alg(&["x"], &[])).unwrap();
    assert!(matches!(t.parse_element("ddx"), Err(CatError::Parse(_))));
}

#[test]
fn structure_map_tables() {
    let b = alg(&["x"], &[]);
    let z = zero_hom(&b).unwrap();
    assert!(z.image_of("dx").unwrap().is_zero());
    let add = add_hom(&b).unwrap();
    let t2 = t2_pushout(&b).unwrap();
    let tb = tangent_algebra(&b).unwrap();
    let dx = tb.gen("dx").unwrap();
    let expected = t2.inj_a.apply(&dx).unwrap().add(&t2.inj_b.apply(&dx).unwrap());
    assert_eq!(add.image_of("dx").unwrap(), &expected);
    let g = flip_hom(&b).unwrap();
    assert_eq!(g.compose(&g).unwrap().image_of("dx").unwrap(), &g.target.gen("dx").unwrap());
    let v = lift_hom(&b).unwrap();
    assert_eq!(el(&v.target, v.image_of("delta_dx").unwrap()), "dx");
}

#[test]
fn pushout_presentations() {
    let q = A::ground();
    let qx = alg(&["x"], &[]);
    let qt = alg(&["t"], &[]);
    let po = tensor_pushout(&Cospan::new(AlgebraHom::structure(&qx).unwrap(), AlgebraHom::structure(&qt).unwrap()).unwrap()).unwrap();
    assert_eq!(po.algebra.gens(), ["x", "t"]);
    assert!(po.algebra.rels().is_empty());

    let dual = alg(&["x"], &["x^2"]);
    let po = tensor_pushout(&Cospan::new(AlgebraHom::structure(&dual).unwrap(), AlgebraHom::structure(&qt).unwrap()).unwrap()).unwrap();
    let oracle = alg(&["x", "t"], &["x^2"]);
    assert_eq!(po.algebra.basis().unwrap(), oracle.basis().unwrap());

    // B ⊗_C C ≅ B
    let id = AlgebraHom::identity(&q);
    let (fb, unit) = base_change(&dual, &id).unwrap();
    assert_eq!(fb, dual);
    assert_eq!(unit, AlgebraHom::identity(&dual));
}

#[test]
fn theta_examples() {
    let q = A::ground();
    let qt = alg(&["t"], &[]);
    let f = hom(&q, &qt, &[]);
    let th = theta_hom(&alg(&["x"], &[]), &f).unwrap();
    assert_eq!(el(&th.target, th.image_of("dx").unwrap()), "dx");
    assert_eq!(th.compose(&theta_inverse(&alg(&["x"], &[]), &f).unwrap()).unwrap(), AlgebraHom::identity(&th.target));
    let cube = alg(&["x"], &["x^3"]);
    let th = theta_hom(&cube, &f).unwrap();
    assert_eq!(th.source.rels().len(), 2);
    assert_eq!(theta_inverse(&cube, &f).unwrap().compose(&th).unwrap(), AlgebraHom::identity(&th.source));
}

#[test]
fn sigma_and_omega_examples() {
    let q = A::ground();
    let qt = alg(&["t"], &[]);
    let s = sigma_hom(&alg(&["x"], &[]), &hom(&q, &qt, &[])).unwrap();
    assert_eq!(el(&s.target, s.image_of("delta_dx").unwrap()), "delta_dx");

    let qu = alg(&["u"], &[]);
    let quv = over(&qu, &["v"], &[]).flatten().unwrap();
    let g = hom(&q, &qu, &[]);
    let f = hom(&qu, &quv, &[("u", "u")]);
    let d = alg(&["r"], &[]);
    let w = omega_hom(&d, &g, &f).unwrap();
    assert_eq!(el(&w.target, w.image_of("r").unwrap()), "r");
    let back = omega_inverse(&d, &g, &f).unwrap();
    assert_eq!(w.compose(&back).unwrap(), AlgebraHom::identity(&w.target));
    assert_eq!(back.compose(&w).unwrap(), AlgebraHom::identity(&w.source));
}

#[test]
fn affine_lemma_examples() {
    let q = A::ground();
    let qt = alg(&["t"], &[]);
    let qx = alg(&["x"], &[]);
    let cs = Cospan::new(hom(&q, &qt, &[]), hom(&q, &qx, &[])).unwrap();
    let r = check_affine_lemmas(&cs).unwrap();
    assert_pass(&r);
    for anchor in ["bundle", "zero", "addition", "lift", "flip"] {
        assert!(r.checks.iter().any(|c| c.anchor == format!("zariski.lemma.{anchor}")), "{anchor}");
    }
    let id = AlgebraHom::identity(&q);
    assert_pass(&check_affine_lemmas(&Cospan::new(id.clone(), id).unwrap()).unwrap());
}

#[test]
fn addition_lemma_instance() {
    // both paths send d(x⊗1) to (dx⊗1)⊗1 + (1⊗dx)⊗1
    let q = A::ground();
    let qt = alg(&["t"], &[]);
    let qx = alg(&["x"], &[]);
    let f = hom(&q, &qt, &[]);
    let (fb, _) = base_change(&qx, &f).unwrap();
    let add = add_hom(&fb).unwrap();
    assert_eq!(el(&add.target, add.image_of("dx").unwrap()), "dx_2 + dx");
    let tb = tangent_algebra(&qx).unwrap();
    let (ftb, _) = base_change(&tb, &f).unwrap();
    assert_eq!(ftb.gens(), ["x", "dx"]);
}

#[test]
fn pseudonaturality_examples() {
    let q = A::ground();
    let qb = alg(&["b"], &[]);
    let qa = over(&qb, &["a"], &[]).flatten().unwrap();
    let g = hom(&q, &qb, &[]);
    let f = hom(&qb, &qa, &[("b", "b")]);
    for d in [alg(&["r"], &[]), alg(&["r"], &["r^2"])] {
        let rep = check_pseudonaturality(&g, &f, &d).unwrap();
        assert_pass(&rep);
    }
    let id = AlgebraHom::identity(&q);
    assert_pass(&check_pseudonaturality(&id, &id, &alg(&["r"], &[])).unwrap());
}

#[test]
fn square_zero_mode_breaks_addition() {
    let b = A::parse_with_mode(None, &["x"], &[], Mode::SquareZero).unwrap();
    match add_hom(&b) {
        Err(CatError::Hypothesis(m)) => assert!(m.contains("dx^2"), "{m}"),
        other => panic!("expected a relation failure, got {other:?}"),
    }
}

#[test]
fn tangent_map_is_functorial() {
    let qx = alg(&["x"], &[]);
    let qy = alg(&["y"], &[]);
    let h = hom(&qx, &qy, &[("x", "y^2")]);
    let th = tangent_hom(&h, &tangent_algebra(&qx).unwrap(), &tangent_algebra(&qy).unwrap()).unwrap();
    assert_eq!(el(&th.target, th.image_of("dx").unwrap()), "2*y*dy");
}

#[test]
fn zariski_fibre_tangent_structure_on_samples() {
    let q = A::ground();
    let c = ZariskiCategory::new(q.clone());
    let ts = zariski_tangent(c);
    let qx = alg(&["x"], &[]);
    let dual = alg(&["x"], &["x^2"]);
    let h = SchemeMap(hom(&qx, &dual, &[("x", "x")]));
    let samples = tangent_samples(vec![qx, dual], vec![h]);
    let rep = verify_tangent_structure(&ts, Some(&samples)).unwrap();
    for c in rep.failures() {
        panic!("{}", serde_json::to_string_pretty(&c).unwrap());
    }
}

fn tangent_samples(objs: Vec<QAlg>, mors: Vec<SchemeMap>) -> tangentlab::catcore::Samples<ZariskiCategory> {
    zariski_samples(vec![objs], vec![mors.into_iter().map(|m| m.0).collect()]).remove(0)
}

#[test]
fn one_object_diagram() {
    let q = A::ground();
    let d = ZariskiDiagram::single(q).unwrap();
    let ix = build_zariski_indexing(&d).unwrap();
    let samples = zariski_samples(vec![vec![alg(&["x"], &[])]], vec![]);
    assert_pass(&verify_indexing_functor(&ix, Some(&samples)).unwrap());
}

#[test]
fn walking_arrow_diagram() {
    let q = A::ground();
    let qt = alg(&["t"], &[]);
    let base = FiniteCategory::poset("arrow", &["1", "0"], |a, b| a == b || (a == "1" && b == "0")).unwrap();
    let m = base.morphism_ids().into_iter().find(|m| !base.is_identity(m)).unwrap();
    // the morphism 1 → 0 carries the ring map A_0 = ℚ → A_1 = ℚ[t]
    let d = ZariskiDiagram::new(Arc::new(base), vec![qt.clone(), q.clone()], vec![(m, hom(&q, &qt, &[]))]).unwrap();
    let ix = build_zariski_indexing(&d).unwrap();
    let x_over_t = over(&qt, &["x"], &[]);
    let samples = zariski_samples(
        vec![vec![x_over_t], vec![alg(&["x"], &[]), alg(&["x"], &["x^2"])]],
        vec![vec![], vec![hom(&alg(&["x"], &[]), &alg(&["x"], &["x^2"]), &[("x", "x")])]],
    );
    assert_pass(&verify_indexing_functor(&ix, Some(&samples)).unwrap());
}

#[test]
fn composable_chain_diagram() {
    let q = A::ground();
    let qu = alg(&["u"], &[]);
    let quv = over(&qu, &["v"], &[]).flatten().unwrap();
    let base = FiniteCategory::poset("chain", &["2", "1", "0"], |a, b| a >= b).unwrap();
    let find = |s: &str, t: &str| {
        base.morphism_ids()
            .into_iter()
            .find(|m| base.source(m) == s && base.target(m) == t)
            .unwrap()
    };
    let maps = vec![
        (find("2", "1"), hom(&qu, &quv, &[("u", "u")])),
        (find("1", "0"), hom(&q, &qu, &[])),
        (find("2", "0"), hom(&q, &quv, &[])),
    ];
    let d = ZariskiDiagram::new(Arc::new(base.clone()), vec![quv.clone(), qu.clone(), q.clone()], maps).unwrap();
    let ix = build_zariski_indexing(&d).unwrap();
    let samples = zariski_samples(
        vec![vec![], vec![over(&qu, &["x"], &[])], vec![alg(&["r"], &[]), alg(&["r"], &["r^2"])]],
        vec![],
    );
    assert_pass(&verify_indexing_functor(&ix, Some(&samples)).unwrap());
    assert_pass(&tangentlab::pseudo::verify_pseudofunctor(&ix.pf, Some(&samples)).unwrap());
}
