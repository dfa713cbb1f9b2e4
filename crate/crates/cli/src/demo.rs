use crate::output::Output;
use clap::ValueEnum;
use serde_json::json;
use std::path::Path;
use std::sync::Arc;
use tangentlab::catcore::FiniteCategory;
use tangentlab::demos;
use tangentlab::io::{algebra_doc, indexing_doc, pseudofunctor_doc, TabulatedPc};
use tangentlab::pc::pc_category;
use tangentlab::tangent::{
    compare_indexing, indexing_to_tangent_object, pc_tangent_structure, tangent_object_to_indexing, verify_indexing_functor,
    verify_projection_strictness, verify_t2_agreement, verify_tangent_object, verify_tangent_structure, TangentIndexingFunctor,
};
use tangentlab::zariski::etale::LineOverPoint;
use tangentlab::zariski::fixtures::{chain_fixtures, chain_indexing, fixture_algebras, lemma_fixtures};
use tangentlab::zariski::{check_affine_lemmas, check_pseudonaturality, check_ring_coherences};
use tangentlab::{CatError, Result, VerificationReport};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    /// Bℤ/2 acting on the walking isomorphism, trivial tangent structure.
    Bg,
    /// Bℤ/2 acting on the walking isomorphism, swap as tangent functor.
    BgSwap,
    /// A product fibre with a nontrivial tangent structure.
    Product,
    /// Affine schemes over `ℚ → ℚ[u] → ℚ[u,v]` and the lemma fixtures.
    Zariski,
}

pub fn run(name: DemoName, check_all: bool, write: Option<&Path>) -> Result<Output> {
    match name {
        DemoName::Bg => finite(demos::bg_trivial()?, check_all, write),
        DemoName::BgSwap => finite(demos::bg_swap()?, check_all, write),
        DemoName::Product => finite(demos::product_demo()?, check_all, write),
        DemoName::Zariski => zariski(check_all, write),
    }
}

fn write_json(dir: &Path, file: &str, v: &impl serde::Serialize) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CatError::Parse(format!("{}: {e}", dir.display())))?;
    let path = dir.join(file);
    let mut text = serde_json::to_string_pretty(v).expect("json serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CatError::Parse(format!("{}: {e}", path.display())))
}

fn finite(ix: TangentIndexingFunctor<FiniteCategory>, check_all: bool, write: Option<&Path>) -> Result<Output> {
    let mut report = VerificationReport::new(format!("demo {}", ix.name));
    report.absorb("indexing", verify_indexing_functor(&ix, None)?);
    if let Some(dir) = write {
        write_json(dir, "pseudofunctor.json", &pseudofunctor_doc(&ix.pf)?)?;
        write_json(dir, "indexing.json", &indexing_doc(&ix)?)?;
    }
    if !check_all {
        return Ok(Output::report(report));
    }
    let obj = indexing_to_tangent_object(&ix)?;
    report.absorb("tangent-object", verify_tangent_object(&obj, None)?);
    let back = tangent_object_to_indexing(&obj)?;
    report.absorb("round-trip", compare_indexing(&ix, &back, None)?);

    let pc = pc_category(ix.pf.clone());
    let ts = Arc::new(pc_tangent_structure(&ix, &pc)?);
    report.absorb("pc", verify_tangent_structure(&ts, None)?);
    report.absorb("pc", verify_t2_agreement(&ix, &ts, None)?);
    report.absorb("pc", verify_projection_strictness(&ix, &ts, None)?);
    let tab = TabulatedPc::new(&pc)?;
    let tangent = tab.tangent_doc(&ts)?;
    if let Some(dir) = write {
        write_json(dir, "pc.json", &tab.to_json(&pc))?;
        write_json(dir, "pc-tangent.json", &tangent)?;
    }
    let (n, m) = (tab.objects.len(), tab.morphisms.len());
    Ok(Output::report(report)
        .summary(format!("PC(F): {n} objects, {m} morphisms"))
        .artifact(json!({"pc": {"objects": n, "morphisms": m}})))
}

const ALGEBRA_FILES: [&str; 6] = ["q.json", "q_t.json", "q_x.json", "q_xy.json", "q_x_mod_x2.json", "q_x_mod_x3.json"];

fn zariski(check_all: bool, write: Option<&Path>) -> Result<Output> {
    let (ix, samples) = chain_indexing()?;
    let mut report = VerificationReport::new("demo Zariski");
    report.absorb("indexing", verify_indexing_functor(&ix, Some(&samples))?);
    let algebras = fixture_algebras()?;
    if let Some(dir) = write {
        for ((_, a), file) in algebras.iter().zip(ALGEBRA_FILES) {
            write_json(dir, file, &algebra_doc(a))?;
        }
    }
    if !check_all {
        return Ok(Output::report(report));
    }
    for (name, a) in &algebras {
        report.absorb(&format!("ring[{name}]"), check_ring_coherences(a)?);
    }
    for fx in lemma_fixtures()? {
        report.absorb(&format!("lemmas[{}]", fx.name), check_affine_lemmas(&fx.cospan)?);
    }
    for ch in chain_fixtures()? {
        report.absorb(&format!("pseudonat[{}]", ch.name), check_pseudonaturality(&ch.g, &ch.f, &ch.d)?);
    }
    let line = LineOverPoint::new()?;
    let etale = line.is_etale()?;
    let chk = line.pullback_iso_check()?;
    if !etale && chk.consistent() && !chk.theta_invertible && !chk.projection_etale {
        report.pass("Spec ℚ[x] → Spec ℚ is not étale, and θ and pr₂ agree", "etale.line-over-point", 1);
    } else {
        report.fail(
            "Spec ℚ[x] → Spec ℚ is not étale, and θ and pr₂ agree",
            "etale.line-over-point",
            json!({"etale": etale, "theta_invertible": chk.theta_invertible, "projection_etale": chk.projection_etale}),
        );
    }
    Ok(Output::report(report))
}
