use super::indexing::{indexing_to_tangent_object, TangentIndexingFunctor};
use super::morphism::{compose_tangent_morphisms, verify_tangent_morphism, verify_tangent_transformation, TangentMorphism};
use super::structure::{PullbackProvider, TangentStructure};
use crate::catcore::{Category, LimitCertificate, LimitKind, NatTrans, Samples, Scope};
use crate::error::{structural, CatError, Result};
use crate::pc::{
    factor_cone, induced_functor, induced_object, induced_transformation, pc_limit, projection, validate_morphism, verify_factorization,
    Cone, PcCategory, PcMor, PcObj, PseudoconeMorphism,
};
use crate::pseudo::{fibre_scope, vertical_compose, FibreSamples, Modification, Pseudonatural};
use crate::report::{LawTally, VerificationReport};
use serde_json::json;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

const MAP_NAMES: [&str; 5] = ["p", "0", "+", "ℓ", "c"];

/// Pullbacks in `PC(F)` assembled by `pc_limit` from the fibre providers of
/// an indexing functor, cached per cospan.
pub fn pc_pullbacks<C: Category>(ix: &TangentIndexingFunctor<C>, pc: &Arc<PcCategory<C>>) -> PullbackProvider<PcCategory<C>> {
    let providers: Vec<PullbackProvider<C>> = ix.fibre_tangents().iter().map(|t| t.pullback_provider()).collect();
    let pc = pc.clone();
    type Key<C> = (PcMor<C>, PcMor<C>);
    let cache: Mutex<HashMap<Key<C>, LimitCertificate<PcCategory<C>>>> = Mutex::new(HashMap::new());
    Arc::new(move |f: &PcMor<C>, g: &PcMor<C>| {
        let key = (f.clone(), g.clone());
        if let Some(cert) = cache.lock().expect("pullback cache").get(&key) {
            return Ok(cert.clone());
        }
        let fibre = providers
            .iter()
            .enumerate()
            .map(|(x, p)| p(&f.components[x], &g.components[x]))
            .collect::<Result<Vec<_>>>()?;
        let cert = pc_limit(&pc, LimitKind::Pullback, &[f.clone(), g.clone()], &fibre)?;
        cache.lock().expect("pullback cache").insert(key, cert.clone());
        Ok(cert)
    })
}

/// The tangent structure `(T̲, p̲, 0̲, +̲, ℓ̲, c̲)` on `PC(F)` induced by a tangent
/// indexing functor. `+̲` at `A` has components `+_X` at `A_X`, read against
/// the pullback `T̲₂A` produced by `pc_limit`.
pub fn pc_tangent_structure<C: Category>(
    ix: &TangentIndexingFunctor<C>,
    pc: &Arc<PcCategory<C>>,
) -> Result<TangentStructure<PcCategory<C>>> {
    if !Arc::ptr_eq(&pc.pf, &ix.pf) {
        return structural("PC(F) is not over the indexing functor's pseudofunctor");
    }
    let obj = indexing_to_tangent_object(ix)?;
    let t = induced_functor(&obj.t, pc, pc)?;
    let p = induced_transformation(&obj.p, pc, pc)?;
    let zero = induced_transformation(&obj.zero, pc, pc)?;
    let lift = induced_transformation(&obj.lift, pc, pc)?;
    let flip = induced_transformation(&obj.flip, pc, pc)?;
    let provider = pc_pullbacks(ix, pc);
    let (prov, pa, ta, tangents) = (provider.clone(), p.clone(), t.clone(), ix.fibre_tangents().to_vec());
    let add = move |a: &PcObj<C>| -> Result<PcMor<C>> {
        let pm = pa.at(a)?;
        let cert = prov(&pm, &pm)?;
        let comps = a
            .components
            .iter()
            .zip(&tangents)
            .map(|(o, ts)| ts.add_at(o))
            .collect::<Result<_>>()?;
        Ok(PseudoconeMorphism {
            source: cert.apex,
            target: ta.obj(a)?,
            components: comps,
        })
    };
    Ok(TangentStructure::new(
        format!("{}̲", ix.name),
        pc.clone(),
        t,
        p.relabel("p̲"),
        zero.relabel("0̲"),
        add,
        lift.relabel("ℓ̲"),
        flip.relabel("c̲"),
        provider,
    ))
}

/// `T̲₂A` from `pc_limit` agrees with the object induced by the pseudonatural
/// `T₂`, and its legs are the fibre projections.
pub fn verify_t2_agreement<C: Category>(
    ix: &TangentIndexingFunctor<C>,
    pc_ts: &TangentStructure<PcCategory<C>>,
    samples: Option<&Samples<PcCategory<C>>>,
) -> Result<VerificationReport> {
    let obj = indexing_to_tangent_object(ix)?;
    let pc = &*pc_ts.carrier;
    let scope = Scope::of(pc, samples)?;
    let mut report = VerificationReport::new("T̲₂ agreement");
    let mut apex = LawTally::new("T̲₂A equals the object induced by T₂", "pc-tangent.t2.apex");
    let mut legs = LawTally::new("legs of T̲₂A are the fibre projections", "pc-tangent.t2.legs");
    for a in &scope.objects {
        let cert = pc_ts.t2_cert(a)?;
        let induced = induced_object(&obj.t2, a)?;
        apex.record(cert.apex == induced, || json!({"object": pc.obj_json(a), "limit": pc.obj_json(&cert.apex), "induced": pc.obj_json(&induced)}));
        for (x, ts) in ix.fibre_tangents().iter().enumerate() {
            let fc = ts.t2_cert(&a.components[x])?;
            let ok = cert.legs.iter().zip(&fc.legs).all(|(l, f)| l.components[x] == *f);
            legs.record(ok, || json!({"object": pc.obj_json(a), "fibre": x}));
        }
    }
    apex.finish(&mut report);
    legs.finish(&mut report);
    Ok(report)
}

/// `pr_X∘T̲ = T_X∘pr_X` on objects and morphisms, and `pr_X` carries every
/// structure map of `PC(F)` to the fibre structure map; then `(pr_X, id)`
/// verifies as a strict tangent morphism.
pub fn verify_projection_strictness<C: Category>(
    ix: &TangentIndexingFunctor<C>,
    pc_ts: &Arc<TangentStructure<PcCategory<C>>>,
    samples: Option<&Samples<PcCategory<C>>>,
) -> Result<VerificationReport> {
    let pc = pc_ts.carrier.clone();
    let base = pc.base().clone();
    let scope = Scope::of(&*pc, samples)?;
    let mut report = VerificationReport::new("strictness of projections");
    for (x, name) in base.object_list().iter().enumerate() {
        let ts = ix.fibre_tangent_at(x);
        let pr = projection(&pc, name)?;
        let mut tally = LawTally::new("pr_X∘T̲ = T_X∘pr_X", "pc-tangent.projection.strict");
        let mut maps = LawTally::new("pr_X preserves p, 0, +, ℓ, c", "pc-tangent.projection.structure-maps");
        for a in &scope.objects {
            let ax = &a.components[x];
            tally.record(pr.obj(&pc_ts.t.obj(a)?)? == ts.t.obj(ax)?, || json!({"fibre": name, "object": pc.obj_json(a)}));
            let pairs = [
                (pc_ts.p.at(a)?, ts.p.at(ax)?),
                (pc_ts.zero.at(a)?, ts.zero.at(ax)?),
                (pc_ts.add_at(a)?, ts.add_at(ax)?),
                (pc_ts.lift.at(a)?, ts.lift.at(ax)?),
                (pc_ts.flip.at(a)?, ts.flip.at(ax)?),
            ];
            for (k, (l, r)) in pairs.iter().enumerate() {
                maps.record(pr.mor(l)? == *r, || json!({"fibre": name, "object": pc.obj_json(a), "map": MAP_NAMES[k]}));
            }
        }
        for m in &scope.morphisms {
            tally.record(pr.mor(&pc_ts.t.mor(m)?)? == ts.t.mor(&m.components[x])?, || json!({"fibre": name, "morphism": pc.mor_json(m)}));
        }
        let strict = tally.failures() == 0;
        tally.finish(&mut report);
        maps.finish(&mut report);
        if strict {
            let tm = TangentMorphism::strict(format!("pr_{name}"), pc_ts.clone(), ts.clone(), pr);
            report.absorb(&format!("pr_{name}"), verify_tangent_morphism(&tm, samples)?);
        }
    }
    Ok(report)
}

/// The tangent morphism `(h̲, α̲): PC(F) → PC(G)` induced by a pseudonatural
/// `h: F ⇒ G` and a modification `α: h∘T ⇛ T'∘h` whose components
/// `(h_X, α_X)` are lax tangent morphisms.
pub fn induced_pc_tangent_morphism<C: Category>(
    src: (&TangentIndexingFunctor<C>, &Arc<TangentStructure<PcCategory<C>>>),
    tgt: (&TangentIndexingFunctor<C>, &Arc<TangentStructure<PcCategory<C>>>),
    h: &Arc<Pseudonatural<C, C>>,
    alpha: &Modification<C, C>,
    strong: bool,
    samples: Option<&FibreSamples<C>>,
) -> Result<TangentMorphism<PcCategory<C>, PcCategory<C>>> {
    let (six, sts) = src;
    let (tix, tts) = tgt;
    let base = &six.pf.base;
    for x in 0..base.object_count() {
        let comp = TangentMorphism::lax(
            format!("({}_{x}, {}_{x})", h.name, alpha.name),
            six.fibre_tangent_at(x).clone(),
            tix.fibre_tangent_at(x).clone(),
            h.component_at(x).clone(),
            alpha.component_at(x).clone(),
            strong,
        );
        let fib = six.pf.fibre_at(x);
        let scope = fibre_scope(&**fib, samples, x)?;
        let sample = Samples {
            objects: scope.objects,
            morphisms: scope.morphisms,
        };
        let r = verify_tangent_morphism(&comp, if fib.is_finite() { None } else { Some(&sample) })?;
        if !r.passed() {
            return Err(CatError::Hypothesis(format!(
                "component at {} is not a tangent morphism",
                base.object_list()[x]
            )));
        }
    }
    let (spc, tpc) = (&sts.carrier, &tts.carrier);
    let functor = induced_functor(h, spc, tpc)?;
    let a = induced_transformation(alpha, spc, tpc)?;
    Ok(TangentMorphism::lax(format!("({}̲, {}̲)", h.name, alpha.name), sts.clone(), tts.clone(), functor, a, strong))
}

/// The modification `h∘T ⇛ T'∘h` given componentwise, with the boundaries
/// built from the indexing functors.
pub fn distributor_modification<C: Category>(
    src: &TangentIndexingFunctor<C>,
    tgt: &TangentIndexingFunctor<C>,
    h: &Arc<Pseudonatural<C, C>>,
    components: Vec<crate::pseudo::Cell<C, C>>,
) -> Result<Modification<C, C>> {
    let t = Arc::new(src.tangent_pseudonatural()?);
    let t2 = Arc::new(tgt.tangent_pseudonatural()?);
    let ht = Arc::new(vertical_compose(h, &t)?);
    let th = Arc::new(vertical_compose(&t2, h)?);
    Modification::new("α", ht, th, components)
}

/// A pseudocone over `F` from a tangent category `𝒟`: lax tangent morphisms
/// `(G_X, α_X): 𝒟 → F(X)` whose underlying functors are the cone legs, and
/// cone witnesses `β_f` that are tangent transformations.
pub struct TangentCone<K: Category, C: Category> {
    pub cone: Cone<K, C>,
    pub source: Arc<TangentStructure<K>>,
    pub distributors: Vec<NatTrans<K, C>>,
}

impl<K: Category, C: Category> TangentCone<K, C> {
    pub fn leg(&self, ix: &TangentIndexingFunctor<C>, x: usize) -> TangentMorphism<K, C> {
        TangentMorphism::lax(
            format!("G_{x}"),
            self.source.clone(),
            ix.fibre_tangent_at(x).clone(),
            self.cone.legs[x].clone(),
            self.distributors[x].clone(),
            false,
        )
    }
}

/// The comparison tangent morphism `(G, α̲): 𝒟 → PC(F)` of a tangent cone,
/// with `G` from `factor_cone` and `α̲_d = {(α_X)_d}`. Rejects a cone whose
/// legs are not tangent morphisms or whose witnesses are not tangent
/// transformations, naming the offending object or morphism.
pub fn pc_tangent_universal<K: Category, C: Category>(
    ix: &TangentIndexingFunctor<C>,
    pc_ts: &Arc<TangentStructure<PcCategory<C>>>,
    tc: &TangentCone<K, C>,
    samples: Option<&Samples<K>>,
) -> Result<TangentMorphism<K, PcCategory<C>>> {
    let pc = pc_ts.carrier.clone();
    let pf = &ix.pf;
    let base = &pf.base;
    if !Arc::ptr_eq(&tc.cone.pf, pf) {
        return structural("cone is over a different pseudofunctor");
    }
    let legs: Vec<_> = (0..base.object_count()).map(|x| tc.leg(ix, x)).collect();
    for (x, leg) in legs.iter().enumerate() {
        if !verify_tangent_morphism(leg, samples)?.passed() {
            return Err(CatError::Hypothesis(format!("cone leg at {} is not a tangent morphism", base.object_list()[x])));
        }
    }
    for (i, m) in base.morphism_ids().iter().enumerate() {
        if base.is_identity(m) {
            continue;
        }
        let (x, y) = (pf.src_pos(m)?, pf.tgt_pos(m)?);
        let via = compose_tangent_morphisms(&ix.transition_morphism(m)?, &legs[y])?;
        let r = verify_tangent_transformation(tc.cone.witness_at(i), &via, &legs[x], samples)?;
        if !r.passed() {
            return Err(CatError::Hypothesis(format!("cone witness at {m} is not a tangent transformation")));
        }
    }
    let g = factor_cone(&pc, &tc.cone)?;
    let tg = tc.source.t.then(&g);
    let gt = g.then(&pc_ts.t);
    let (gg, t_pc, ds, vt) = (g.clone(), pc_ts.t.clone(), tc.distributors.clone(), tc.source.t.clone());
    let alpha = NatTrans::new("α̲", tg, gt, move |d: &K::Obj| {
        Ok(PseudoconeMorphism {
            source: gg.obj(&vt.obj(d)?)?,
            target: t_pc.obj(&gg.obj(d)?)?,
            components: ds.iter().map(|a| a.at(d)).collect::<Result<_>>()?,
        })
    });
    Ok(TangentMorphism::lax("(G, α̲)", tc.source.clone(), pc_ts.clone(), g, alpha, false))
}

/// The comparison factors the cone, each `α̲_d` is a pseudocone morphism (the
/// pasting condition), `pr_X∗α̲ = α_X`, and `(G, α̲)` is a tangent morphism.
pub fn verify_pc_tangent_universal<K: Category, C: Category>(
    tc: &TangentCone<K, C>,
    comparison: &TangentMorphism<K, PcCategory<C>>,
    samples: Option<&Samples<K>>,
) -> Result<VerificationReport> {
    let pc = comparison.target.carrier.clone();
    let k = &*tc.source.carrier;
    let scope = Scope::of(k, samples)?;
    let mut report = VerificationReport::new("tangent pseudolimit comparison");
    report.absorb("factorization", verify_factorization(&pc, &tc.cone, &comparison.functor, samples)?);
    let mut paste = LawTally::new("α̲_d is a pseudocone morphism", "pc-universal.pasting");
    let mut proj = LawTally::new("pr_X∗α̲ = α_X", "pc-universal.projection");
    for d in &scope.objects {
        let a = comparison.alpha.at(d)?;
        paste.record(validate_morphism(&pc.pf, &a)?.passed(), || json!({"object": k.obj_json(d)}));
        for (x, dx) in tc.distributors.iter().enumerate() {
            proj.record(a.components[x] == dx.at(d)?, || json!({"object": k.obj_json(d), "leg": x}));
        }
    }
    paste.finish(&mut report);
    proj.finish(&mut report);
    report.absorb("comparison", verify_tangent_morphism(comparison, samples)?);
    Ok(report)
}
