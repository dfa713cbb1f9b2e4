//! Bundled algebras, cospans, chains and diagrams over ℚ.

use super::algebra::{AlgebraHom, Cospan, FpAlgebra};
use super::category::{build_zariski_indexing, zariski_samples, QAlg, QHom, ZariskiCategory, ZariskiDiagram};
use crate::catcore::{Category, FiniteCategory};
use crate::error::Result;
use crate::field::Rational;
use crate::pseudo::FibreSamples;
use crate::tangent::TangentIndexingFunctor;
use std::sync::Arc;

type A = FpAlgebra<Rational>;

/// `ℚ[gens]/(rels)` over ℚ.
pub fn poly(gens: &[&str], rels: &[&str]) -> Result<QAlg> {
    A::parse(None, gens, rels)
}

fn hom(src: &QAlg, tgt: &QAlg, images: &[(&str, &str)]) -> Result<QHom> {
    AlgebraHom::parse(src.clone(), tgt.clone(), images)
}

/// The fixture algebras `ℚ, ℚ[t], ℚ[x], ℚ[x,y], ℚ[x]/(x²), ℚ[x]/(x³)`.
pub fn fixture_algebras() -> Result<Vec<(&'static str, QAlg)>> {
    Ok(vec![
        ("Q", A::ground()),
        ("Q[t]", poly(&["t"], &[])?),
        ("Q[x]", poly(&["x"], &[])?),
        ("Q[x,y]", poly(&["x", "y"], &[])?),
        ("Q[x]/(x^2)", poly(&["x"], &["x^2"])?),
        ("Q[x]/(x^3)", poly(&["x"], &["x^3"])?),
    ])
}

/// A named cospan `A ← C → B`: base change along `C → A` of `B` over `C`.
pub struct LemmaFixture {
    pub name: String,
    pub cospan: Cospan<Rational>,
}

fn fixture(a: &QAlg, b: &QAlg, c: &QAlg, leg_a: &[(&str, &str)], leg_b: &[(&str, &str)]) -> Result<LemmaFixture> {
    let cospan = Cospan::new(hom(c, a, leg_a)?, hom(c, b, leg_b)?)?;
    Ok(LemmaFixture {
        name: format!("A={a}, B={b}, C={c}, C→A {}, C→B {}", cospan.leg_a, cospan.leg_b),
        cospan,
    })
}

/// Cospans over the fixture algebras with explicit structure maps.
pub fn lemma_fixtures() -> Result<Vec<LemmaFixture>> {
    let q = A::ground();
    let qt = poly(&["t"], &[])?;
    let qx = poly(&["x"], &[])?;
    let qxy = poly(&["x", "y"], &[])?;
    let dual = poly(&["x"], &["x^2"])?;
    let cube = poly(&["x"], &["x^3"])?;
    Ok(vec![
        fixture(&q, &q, &q, &[], &[])?,
        fixture(&qt, &qx, &q, &[], &[])?,
        fixture(&qt, &dual, &q, &[], &[])?,
        fixture(&qt, &cube, &q, &[], &[])?,
        fixture(&qxy, &dual, &q, &[], &[])?,
        fixture(&dual, &qxy, &q, &[], &[])?,
        fixture(&qx, &qxy, &qt, &[("t", "x^2")], &[("t", "x*y")])?,
        fixture(&cube, &qx, &qt, &[("t", "x")], &[("t", "x^2")])?,
        fixture(&qxy, &dual, &qt, &[("t", "x + y")], &[("t", "x")])?,
        fixture(&q, &qx, &qt, &[("t", "0")], &[("t", "x")])?,
        fixture(&dual, &cube, &qt, &[("t", "x")], &[("t", "x")])?,
        fixture(&qt, &qxy, &qt, &[("t", "t")], &[("t", "y")])?,
    ])
}

/// A chain `C →g B →f A` with a test algebra `D` over `C`.
pub struct ChainFixture {
    pub name: String,
    pub g: QHom,
    pub f: QHom,
    pub d: QAlg,
}

fn chain(g: QHom, f: QHom, d: QAlg) -> ChainFixture {
    ChainFixture {
        name: format!("{} → {} → {} at D={d}", g.source, g.target, f.target),
        g,
        f,
        d,
    }
}

/// Chains for the pseudonaturality of `θ`.
pub fn chain_fixtures() -> Result<Vec<ChainFixture>> {
    let q = A::ground();
    let qu = poly(&["u"], &[])?;
    let quv = poly(&["u", "v"], &[])?;
    let qb = poly(&["b"], &[])?;
    let qab = poly(&["a", "b"], &[])?;
    let qt = poly(&["t"], &[])?;
    let qx = poly(&["x"], &[])?;
    let cube = poly(&["x"], &["x^3"])?;
    let g = hom(&q, &qu, &[])?;
    let f = hom(&qu, &quv, &[])?;
    Ok(vec![
        chain(g.clone(), f.clone(), poly(&["r"], &[])?),
        chain(g, f, poly(&["r"], &["r^2"])?),
        chain(hom(&q, &qb, &[])?, hom(&qb, &qab, &[])?, poly(&["r"], &[])?),
        chain(
            hom(&qt, &qx, &[("t", "x^2")])?,
            hom(&qx, &cube, &[])?,
            A::parse(Some(qt.clone()), &["r"], &["r^2 - t"])?,
        ),
        chain(AlgebraHom::identity(&q), AlgebraHom::identity(&q), poly(&["r"], &[])?),
    ])
}

/// The base chain `2 → 1 → 0` with ring maps `ℚ → ℚ[u] → ℚ[u,v]`, and
/// samples `ℚ[r], ℚ[r]/(r²)` over ℚ and `ℚ[u][x]` over `ℚ[u]`.
pub fn chain_indexing() -> Result<(TangentIndexingFunctor<ZariskiCategory>, FibreSamples<ZariskiCategory>)> {
    let q = A::ground();
    let qu = poly(&["u"], &[])?;
    let quv = poly(&["u", "v"], &[])?;
    let base = FiniteCategory::poset("2→1→0", &["2", "1", "0"], |a, b| a >= b)?;
    let find = |s: &str, t: &str| {
        base.morphism_ids()
            .into_iter()
            .find(|m| base.source(m) == s && base.target(m) == t)
            .expect("poset arrow")
    };
    let maps = vec![
        (find("2", "1"), hom(&qu, &quv, &[])?),
        (find("1", "0"), hom(&q, &qu, &[])?),
        (find("2", "0"), hom(&q, &quv, &[])?),
    ];
    let d = ZariskiDiagram::new(Arc::new(base), vec![quv, qu.clone(), q], maps)?;
    let ix = build_zariski_indexing(&d)?;
    let r = poly(&["r"], &[])?;
    let r2 = poly(&["r"], &["r^2"])?;
    let samples = zariski_samples(
        vec![vec![], vec![A::parse(Some(qu), &["x"], &[])?], vec![r.clone(), r2.clone()]],
        vec![vec![], vec![], vec![hom(&r, &r2, &[])?]],
    );
    Ok((ix, samples))
}
