use proptest::prelude::*;
use std::sync::Arc;
use tangentlab::catcore::{find_pullback, is_pullback, verify_category, Category, FiniteCategory, Functor, LimitCertificate};
use tangentlab::demos;
use tangentlab::pc::{induced_functor, pc_category, projection, PcCategory};
use tangentlab::pseudo::{vertical_compose, verify_pseudonatural, Pseudofunctor, Pseudonatural};

type Fin = FiniteCategory;

fn same_functor(a: &Functor<Fin, Fin>, b: &Functor<Fin, Fin>, dom: &Fin) -> bool {
    dom.objects().unwrap().iter().all(|o| a.obj(o).unwrap() == b.obj(o).unwrap())
        && dom.morphisms().unwrap().iter().all(|m| a.mor(m).unwrap() == b.mor(m).unwrap())
}

fn same_pseudonatural(a: &Pseudonatural<Fin, Fin>, b: &Pseudonatural<Fin, Fin>) -> bool {
    let pf = &a.source;
    let fibre = pf.fibre_at(0);
    let comps = same_functor(a.component_at(0), b.component_at(0), fibre);
    let base = &pf.base;
    let witnesses = base.morphism_ids().iter().filter(|m| !base.is_identity(m)).all(|m| {
        let (wa, wb) = (a.witness(m).unwrap(), b.witness(m).unwrap());
        fibre.objects().unwrap().iter().all(|o| wa.at(o).unwrap() == wb.at(o).unwrap())
    });
    comps && witnesses
}

/// Bℤ/2 acting on `K₃ × Bℤ/4` by swapping two objects, compositor `(id, 2)`.
fn action() -> (Arc<Pseudofunctor<Fin>>, Arc<PcCategory<Fin>>) {
    let pf = demos::g_action(3, 4, &[1, 0, 2], 1, 2).unwrap();
    let pc = pc_category(pf.clone());
    (pf, pc)
}

fn endo(pf: &Arc<Pseudofunctor<Fin>>, perm: &[usize], unit: usize, k: usize) -> Option<Pseudonatural<Fin, Fin>> {
    let g = pf.fibre_at(0).clone();
    let h = demos::g_automorphism(&g, 3, 4, perm, unit).unwrap();
    let t = pf.transition("s").unwrap();
    let cell = demos::g_constant_cell(4, t.then(&h), h.then(t), k);
    let alpha = Pseudonatural::new(format!("α{perm:?}{unit}{k}"), pf.clone(), pf.clone(), vec![h], vec![("s".into(), cell)]).ok()?;
    verify_pseudonatural(&alpha, None).unwrap().passed().then_some(alpha)
}

fn transformation() -> impl Strategy<Value = (Vec<usize>, usize, usize)> {
    (Just(vec![0usize, 1, 2]).prop_shuffle(), prop_oneof![Just(1usize), Just(3usize)], 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn divisibility_posets_are_categories(keep in proptest::collection::vec(any::<bool>(), 12)) {
        let names: Vec<String> = (1..=12).zip(&keep).filter(|(_, k)| **k).map(|(i, _)| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let c = FiniteCategory::poset("div", &refs, |a, b| b.parse::<u32>().unwrap() % a.parse::<u32>().unwrap() == 0).unwrap();
        let r = verify_category(&c, None).unwrap();
        prop_assert!(r.passed(), "{}", r.to_text());
        for f in c.morphisms().unwrap() {
            for g in c.hom(&c.target(&f), &c.target(&f)).unwrap() {
                prop_assert!(c.compose(&g, &f).is_ok());
            }
        }
    }

    #[test]
    fn pullbacks_are_stable_under_apex_isomorphism(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let c = demos::group_fibre(2, 3).unwrap();
        let mors = c.morphisms().unwrap();
        let f = &mors[i % mors.len()];
        let into: Vec<String> = mors.iter().filter(|g| c.target(g) == c.target(f)).cloned().collect();
        let g = &into[j % into.len()];
        let cert = find_pullback(&c, f, g).unwrap().expect("groupoids have pullbacks");
        prop_assert!(is_pullback(&c, &cert).unwrap());
        let isos: Vec<String> = mors.iter().filter(|u| c.target(u) == cert.apex).cloned().collect();
        let u = &isos[k % isos.len()];
        let moved = LimitCertificate {
            kind: cert.kind,
            diagram: cert.diagram.clone(),
            apex: c.source(u),
            legs: cert.legs.iter().map(|l| c.compose(l, u).unwrap()).collect(),
        };
        prop_assert!(is_pullback(&c, &moved).unwrap());
    }

    #[test]
    fn vertical_composition_is_associative_and_unital(a in transformation(), b in transformation(), c in transformation()) {
        let (pf, _) = action();
        let (Some(a), Some(b), Some(c)) = (endo(&pf, &a.0, a.1, a.2), endo(&pf, &b.0, b.1, b.2), endo(&pf, &c.0, c.1, c.2)) else {
            return Err(TestCaseError::reject("not pseudonatural"));
        };
        let left = vertical_compose(&c, &vertical_compose(&b, &a).unwrap()).unwrap();
        let right = vertical_compose(&vertical_compose(&c, &b).unwrap(), &a).unwrap();
        prop_assert!(same_pseudonatural(&left, &right));
        let id = Pseudonatural::identity(&pf);
        prop_assert!(same_pseudonatural(&vertical_compose(&id, &a).unwrap(), &a));
        prop_assert!(same_pseudonatural(&vertical_compose(&a, &id).unwrap(), &a));
    }

    #[test]
    fn induced_functors_commute_with_projections(a in transformation()) {
        let (pf, pc) = action();
        let Some(alpha) = endo(&pf, &a.0, a.1, a.2) else {
            return Err(TestCaseError::reject("not pseudonatural"));
        };
        let f = induced_functor(&alpha, &pc, &pc).unwrap();
        let x = pf.base.objects().unwrap().remove(0);
        let pr = projection(&pc, &x).unwrap();
        let h = alpha.component_at(0);
        for o in pc.objects().unwrap() {
            prop_assert_eq!(pr.obj(&f.obj(&o).unwrap()).unwrap(), h.obj(&pr.obj(&o).unwrap()).unwrap());
        }
        for m in pc.morphisms().unwrap() {
            prop_assert_eq!(pr.mor(&f.mor(&m).unwrap()).unwrap(), h.mor(&pr.mor(&m).unwrap()).unwrap());
        }
    }
}
