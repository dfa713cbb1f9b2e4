use std::sync::Arc;
use tangentlab::catcore::{is_pullback, Category, FiniteCategory};
use tangentlab::demos;
use tangentlab::pc::{pc_category, tabulate};
use tangentlab::tangent::*;
use tangentlab::VerificationReport;

fn assert_pass(r: &VerificationReport) {
    assert!(r.passed(), "{}", r.to_text());
}

fn pc_suite(ix: &TangentIndexingFunctor<FiniteCategory>) -> Arc<TangentStructure<tangentlab::pc::PcCategory<FiniteCategory>>> {
    assert_pass(&verify_indexing_functor(ix, None).unwrap());
    let pc = pc_category(ix.pf.clone());
    let ts = Arc::new(pc_tangent_structure(ix, &pc).unwrap());
    assert_pass(&verify_tangent_structure(&ts, None).unwrap());
    assert_pass(&verify_t2_agreement(ix, &ts, None).unwrap());
    assert_pass(&verify_projection_strictness(ix, &ts, None).unwrap());
    ts
}

#[test]
fn bg_trivial_pc_tangent_is_identity() {
    let ix = demos::bg_trivial().unwrap();
    let ts = pc_suite(&ix);
    let pc = &ts.carrier;
    let objs = pc.objects().unwrap();
    assert_eq!(objs.len(), 2);
    assert_eq!(pc.morphisms().unwrap().len(), 4);
    for a in &objs {
        assert_eq!(ts.t.obj(a).unwrap(), *a);
        assert_eq!(ts.p.at(a).unwrap(), pc.identity(a).unwrap());
        assert_eq!(ts.lift.at(a).unwrap(), pc.identity(a).unwrap());
        let t2 = ts.t2_cert(a).unwrap();
        assert_eq!(t2.apex, *a);
        assert!(is_pullback(&**pc, &t2).unwrap());
    }
}

#[test]
fn bg_swap_pc_tangent_swaps_objects() {
    let ix = demos::bg_swap().unwrap();
    let ts = pc_suite(&ix);
    let objs = ts.carrier.objects().unwrap();
    assert_eq!(objs.len(), 2);
    let images: Vec<_> = objs.iter().map(|a| ts.t.obj(a).unwrap()).collect();
    assert_eq!(images[0], objs[1]);
    assert_eq!(images[1], objs[0]);
}

#[test]
fn product_demo_pc_tangent() {
    let ix = demos::product_demo().unwrap();
    let ts = pc_suite(&ix);
    let (cat, _, _) = tabulate(&ts.carrier).unwrap();
    assert_eq!(cat.object_count(), 8);
}

#[test]
fn discrete_demo_has_empty_pc() {
    let pc = pc_category(demos::discrete_pseudofunctor().unwrap());
    assert!(pc.objects().unwrap().is_empty());
}

#[test]
fn round_trip_is_identity_on_demos() {
    for ix in [demos::bg_trivial().unwrap(), demos::bg_swap().unwrap(), demos::product_demo().unwrap()] {
        let obj = indexing_to_tangent_object(&ix).unwrap();
        assert_pass(&verify_tangent_object(&obj, None).unwrap());
        let back = tangent_object_to_indexing(&obj).unwrap();
        assert_pass(&compare_indexing(&ix, &back, None).unwrap());
        let again = indexing_to_tangent_object(&back).unwrap();
        assert_pass(&compare_tangent_objects(&obj, &again, None).unwrap());
    }
}

#[test]
fn transposed_distributor_fails_as_strong_morphism() {
    let ix = demos::transposed_distributor(2).unwrap();
    let r = verify_indexing_functor(&ix, None).unwrap();
    assert!(!r.passed());
    let bad: Vec<_> = r.failures().collect();
    assert!(bad.iter().any(|c| c.anchor.starts_with("transition[s]/") && c.witness.is_some()), "{}", r.to_text());
}
