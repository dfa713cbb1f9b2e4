//! The category of affine schemes over a fixed base, presented by finitely
//! presented algebras, with its tangent structure and the indexing functor
//! of a diagram of bases.

use super::algebra::{
    base_change, base_change_hom, mediate_by_generators, t2_pushout, tangent_algebra, tensor_pushout, Alg, AlgebraHom,
    Cospan, Pushout,
};
use super::lemmas::{omega_hom, omega_inverse, theta_hom, theta_inverse};
use super::maps::{add_hom_into, bundle_hom, flip_hom, lift_hom, tangent_map, zero_hom};
use crate::catcore::{Category, FiniteCategory, Functor, LimitCertificate, LimitKind, NatTrans, Samples};
use crate::error::{capability, structural, CatError, Result};
use crate::field::Rational;
use crate::pseudo::{Cell, FibreSamples, Pseudofunctor};
use crate::tangent::{PullbackProvider, TangentIndexingFunctor, TangentStructure};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub type QAlg = Alg<Rational>;
pub type QHom = AlgebraHom<Rational>;

/// `Spec(h): Spec(h.target) → Spec(h.source)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SchemeMap(pub QHom);

impl SchemeMap {
    pub fn ring(&self) -> &QHom {
        &self.0
    }
}

impl fmt::Display for SchemeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spec{}", self.0)
    }
}

/// Affine schemes over `Spec(base)`: objects are algebras over `base`,
/// morphisms are opposite ring maps over `base`.
pub struct ZariskiCategory {
    base: QAlg,
}

impl ZariskiCategory {
    pub fn new(base: QAlg) -> Arc<Self> {
        Arc::new(ZariskiCategory { base })
    }

    pub fn base(&self) -> &QAlg {
        &self.base
    }

    fn check(&self, a: &QAlg) -> Result<()> {
        if a.base_or_ground() != self.base {
            return structural(format!("{a} is not an algebra over {}", self.base));
        }
        Ok(())
    }
}

impl Category for ZariskiCategory {
    type Obj = QAlg;
    type Mor = SchemeMap;

    fn label(&self) -> String {
        format!("Aff/{}", self.base)
    }

    fn source(&self, f: &SchemeMap) -> QAlg {
        f.0.target.clone()
    }

    fn target(&self, f: &SchemeMap) -> QAlg {
        f.0.source.clone()
    }

    fn identity(&self, a: &QAlg) -> Result<SchemeMap> {
        self.check(a)?;
        Ok(SchemeMap(AlgebraHom::identity(a)))
    }

    fn compose(&self, f: &SchemeMap, g: &SchemeMap) -> Result<SchemeMap> {
        if f.0.target != g.0.source {
            return structural(format!("{}: {f} ∘ {g} is not composable", self.label()));
        }
        Ok(SchemeMap(g.0.compose(&f.0)?))
    }

    /// Pullbacks by generator matching against the pushout injections.
    fn mediate(&self, cert: &LimitCertificate<Self>, cone: &[SchemeMap]) -> Result<SchemeMap> {
        if cert.kind != LimitKind::Pullback {
            return capability(format!("{}: only pullbacks have computed mediators", self.label()));
        }
        if cone.len() != 2 {
            return structural("pullback cone needs two legs");
        }
        let inj: Vec<&QHom> = cert.legs.iter().map(|m| &m.0).collect();
        let cocone: Vec<&QHom> = cone.iter().map(|m| &m.0).collect();
        Ok(SchemeMap(mediate_by_generators(&cert.apex, &inj, &cocone)?))
    }

    fn mor_json(&self, f: &SchemeMap) -> Value {
        let h = &f.0;
        let names = h.source.var_names();
        let images: serde_json::Map<String, Value> = h
            .own_images()
            .iter()
            .enumerate()
            .map(|(i, p)| (names[h.source.own(i)].clone(), json!(h.target.render(p))))
            .collect();
        json!({"spec_of": {"source": h.source.to_string(), "target": h.target.to_string(), "images": images}})
    }
}

/// The pullback of `f: X → Z ← Y: g` as `Spec` of the pushout of rings.
pub fn zariski_pullbacks(carrier: Arc<ZariskiCategory>) -> PullbackProvider<ZariskiCategory> {
    let cache: Mutex<HashMap<(SchemeMap, SchemeMap), LimitCertificate<ZariskiCategory>>> = Mutex::new(HashMap::new());
    Arc::new(move |f: &SchemeMap, g: &SchemeMap| {
        let key = (f.clone(), g.clone());
        if let Some(c) = cache.lock().expect("pullback cache").get(&key) {
            return Ok(c.clone());
        }
        carrier.check(&f.0.target)?;
        let po: Pushout<Rational> = if f == g && is_bundle(&f.0)? {
            t2_pushout(&f.0.source)?
        } else {
            tensor_pushout(&Cospan::new(f.0.clone(), g.0.clone())?)?
        };
        let cert = LimitCertificate::pullback(
            f.clone(),
            g.clone(),
            po.algebra.clone(),
            SchemeMap(po.inj_a.clone()),
            SchemeMap(po.inj_b.clone()),
        );
        cache.lock().expect("pullback cache").insert(key, cert.clone());
        Ok(cert)
    })
}

fn is_bundle(h: &QHom) -> Result<bool> {
    Ok(h.target == tangent_algebra(&h.source)? && *h == bundle_hom(&h.source)?)
}

/// The Zariski tangent structure: `T = Spec` of the tangent presentation,
/// with `p, 0, +, ℓ, c` opposite to `q, ζ, add, v, γ`.
pub fn zariski_tangent(carrier: Arc<ZariskiCategory>) -> TangentStructure<ZariskiCategory> {
    let c1 = carrier.clone();
    let t = Functor::new(
        "T",
        carrier.clone(),
        carrier.clone(),
        move |a: &QAlg| {
            c1.check(a)?;
            tangent_algebra(a)
        },
        |m: &SchemeMap| Ok(SchemeMap(tangent_map(&m.0)?)),
    );
    let id = Functor::identity(carrier.clone());
    let tt = t.then(&t);
    let p = NatTrans::new("p", t.clone(), id.clone(), |a: &QAlg| Ok(SchemeMap(bundle_hom(a)?)));
    let zero = NatTrans::new("0", id, t.clone(), |a: &QAlg| Ok(SchemeMap(zero_hom(a)?)));
    let lift = NatTrans::new("ℓ", t.clone(), tt.clone(), |a: &QAlg| Ok(SchemeMap(lift_hom(a)?)));
    let flip = NatTrans::new("c", tt.clone(), tt, |a: &QAlg| Ok(SchemeMap(flip_hom(a)?)));
    let provider = zariski_pullbacks(carrier.clone());
    let prov = provider.clone();
    let add = move |a: &QAlg| {
        let q = SchemeMap(bundle_hom(a)?);
        let cert = prov(&q, &q)?;
        let po = Pushout {
            algebra: cert.apex.clone(),
            inj_a: cert.legs[0].0.clone(),
            inj_b: cert.legs[1].0.clone(),
        };
        Ok(SchemeMap(add_hom_into(a, &po)?))
    };
    TangentStructure::new("Zariski", carrier, t, p, zero, add, lift, flip, provider)
}

type UnitCache = Arc<Mutex<HashMap<QAlg, QHom>>>;

fn unit_of(cache: &UnitCache, b: &QAlg, f: &QHom) -> Result<QHom> {
    if let Some(u) = cache.lock().expect("base change cache").get(b) {
        return Ok(u.clone());
    }
    let (_, u) = base_change(b, f)?;
    cache.lock().expect("base change cache").insert(b.clone(), u.clone());
    Ok(u)
}

/// Base change along a ring map `f: A_Y → A_X`, from `Aff/A_Y` to `Aff/A_X`.
pub fn base_change_functor(
    label: impl Into<String>,
    src: Arc<ZariskiCategory>,
    tgt: Arc<ZariskiCategory>,
    f: QHom,
) -> Result<Functor<ZariskiCategory, ZariskiCategory>> {
    if f.source != src.base || f.target != tgt.base {
        return structural(format!("{f} does not run from {} to {}", src.base, tgt.base));
    }
    let cache: UnitCache = Arc::new(Mutex::new(HashMap::new()));
    let (c1, c2, f1, f2) = (cache.clone(), cache, f.clone(), f);
    Ok(Functor::new(
        label,
        src,
        tgt,
        move |b: &QAlg| Ok(unit_of(&c1, b, &f1)?.target),
        move |m: &SchemeMap| {
            // m: Spec B → Spec B' with ring h: B' → B
            let h = &m.0;
            let us = unit_of(&c2, &h.source, &f2)?;
            let ut = unit_of(&c2, &h.target, &f2)?;
            Ok(SchemeMap(base_change_hom(h, &us, &ut)?))
        },
    ))
}

/// A finite diagram of base algebras: one algebra per base object and, for
/// each morphism `f: X → Y`, a ring map `A_Y → A_X`.
pub struct ZariskiDiagram {
    pub base: Arc<FiniteCategory>,
    pub algebras: Vec<QAlg>,
    rings: Vec<QHom>,
}

impl ZariskiDiagram {
    /// Ring maps are given for non-identity morphisms; functoriality is
    /// checked by normal forms.
    pub fn new(base: Arc<FiniteCategory>, algebras: Vec<QAlg>, maps: Vec<(String, QHom)>) -> Result<Self> {
        if algebras.len() != base.object_count() {
            return structural("need one algebra per base object");
        }
        let mut given: HashMap<String, QHom> = maps.into_iter().collect();
        let mut rings = Vec::new();
        for m in base.morphism_ids() {
            let x = base.object_position(&base.source(&m))?;
            let y = base.object_position(&base.target(&m))?;
            let h = if base.is_identity(&m) {
                AlgebraHom::identity(&algebras[x])
            } else {
                given.remove(&m).ok_or_else(|| CatError::Structural(format!("no ring map for {m}")))?
            };
            if h.source != algebras[y] || h.target != algebras[x] {
                return structural(format!("ring map for {m} must run from A_{} to A_{}", base.target(&m), base.source(&m)));
            }
            rings.push(h);
        }
        if let Some(m) = given.keys().next() {
            return structural(format!("ring map for unknown morphism {m}"));
        }
        let d = ZariskiDiagram { base, algebras, rings };
        for f in d.base.morphism_ids() {
            for g in d.base.morphism_ids() {
                if d.base.source(&g) != d.base.target(&f) {
                    continue;
                }
                let gf = d.base.compose(&g, &f)?;
                if *d.ring(&gf)? != d.ring(&f)?.compose(d.ring(&g)?)? {
                    return structural(format!("ring maps are not functorial at {g}∘{f}"));
                }
            }
        }
        Ok(d)
    }

    pub fn ring(&self, m: &str) -> Result<&QHom> {
        Ok(&self.rings[self.base.morphism_position(m)?])
    }

    /// The one-object diagram on `a`.
    pub fn single(a: QAlg) -> Result<Self> {
        ZariskiDiagram::new(Arc::new(FiniteCategory::terminal()), vec![a], vec![])
    }
}

/// The tangent indexing functor of a diagram of bases: fibres `Aff/A_X`,
/// transitions by base change, compositors `ω` and distributors `θ`.
pub fn build_zariski_indexing(diagram: &ZariskiDiagram) -> Result<TangentIndexingFunctor<ZariskiCategory>> {
    let base = diagram.base.clone();
    let fibres: Vec<Arc<ZariskiCategory>> = diagram.algebras.iter().map(|a| ZariskiCategory::new(a.clone())).collect();
    let mut transitions = Vec::new();
    let mut cells = Vec::new();
    for m in base.morphism_ids() {
        if base.is_identity(&m) {
            continue;
        }
        let x = base.object_position(&base.source(&m))?;
        let y = base.object_position(&base.target(&m))?;
        let f = diagram.ring(&m)?.clone();
        let func = base_change_functor(format!("{m}*"), fibres[y].clone(), fibres[x].clone(), f.clone())?;
        transitions.push((m.clone(), func.clone()));
        // T_m at B: F(TB) → T(FB), ring θ: T(FB) → F(TB)
        let (f1, f2) = (f.clone(), f);
        let cell = Cell::new(move |b: &QAlg| Ok(SchemeMap(theta_hom(b, &f1)?)))
            .with_inverse(move |b: &QAlg| Ok(SchemeMap(theta_inverse(b, &f2)?)));
        cells.push((m, cell));
    }
    let mut compositors = Vec::new();
    for f in base.morphism_ids() {
        for g in base.morphism_ids() {
            if base.is_identity(&f) || base.is_identity(&g) || base.source(&g) != base.target(&f) {
                continue;
            }
            // φ_{f,g} at D: F(f)F(g)D → F(gf)D, ring ω: F(gf)D → F(f)F(g)D
            let (rf, rg) = (diagram.ring(&f)?.clone(), diagram.ring(&g)?.clone());
            let (rf2, rg2) = (rf.clone(), rg.clone());
            let cell = Cell::new(move |d: &QAlg| Ok(SchemeMap(omega_hom(d, &rg, &rf)?)))
                .with_inverse(move |d: &QAlg| Ok(SchemeMap(omega_inverse(d, &rg2, &rf2)?)));
            compositors.push(((f.clone(), g.clone()), cell));
        }
    }
    let pf = Arc::new(Pseudofunctor::new("Zariski", base, fibres.clone(), transitions, compositors)?);
    let tangents = fibres.iter().map(|c| Arc::new(zariski_tangent(c.clone()))).collect();
    TangentIndexingFunctor::new("Zariski", pf, tangents, cells)
}

/// Samples for every fibre: `per_fibre[X]` are algebras over `A_X`.
pub fn zariski_samples(per_fibre: Vec<Vec<QAlg>>, morphisms: Vec<Vec<QHom>>) -> FibreSamples<ZariskiCategory> {
    let mut out = Vec::new();
    for (k, objs) in per_fibre.into_iter().enumerate() {
        let ms = morphisms.get(k).cloned().unwrap_or_default().into_iter().map(SchemeMap).collect();
        out.push(Samples::new(objs, ms));
    }
    out
}
