use super::structure::{record_eq, record_limit, TangentStructure};
use crate::catcore::{chain, verify_naturality, Category, Functor, LimitCertificate, NatTrans, Samples, Scope};
use crate::error::{structural, Result};
use crate::report::{LawTally, VerificationReport};
use serde_json::json;
use std::sync::Arc;

/// Lax: `α: F∘T ⇒ S∘F`. Colax: `α: S∘F ⇒ F∘T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lax,
    Colax,
}

/// A morphism of tangent categories `(F, α)`.
pub struct TangentMorphism<C: Category, D: Category> {
    pub name: String,
    pub source: Arc<TangentStructure<C>>,
    pub target: Arc<TangentStructure<D>>,
    pub functor: Functor<C, D>,
    pub alpha: NatTrans<C, D>,
    pub direction: Direction,
    pub strong: bool,
}

impl<C: Category, D: Category> Clone for TangentMorphism<C, D> {
    fn clone(&self) -> Self {
        TangentMorphism {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            functor: self.functor.clone(),
            alpha: self.alpha.clone(),
            direction: self.direction,
            strong: self.strong,
        }
    }
}

impl<C: Category, D: Category> TangentMorphism<C, D> {
    /// A lax morphism; `alpha` must run `F∘T ⇒ S∘F`.
    pub fn lax(
        name: impl Into<String>,
        source: Arc<TangentStructure<C>>,
        target: Arc<TangentStructure<D>>,
        functor: Functor<C, D>,
        alpha: NatTrans<C, D>,
        strong: bool,
    ) -> Self {
        TangentMorphism {
            name: name.into(),
            source,
            target,
            functor,
            alpha,
            direction: Direction::Lax,
            strong,
        }
    }

    /// `(F, id)` where `F∘T = S∘F` on the nose.
    pub fn strict(
        name: impl Into<String>,
        source: Arc<TangentStructure<C>>,
        target: Arc<TangentStructure<D>>,
        functor: Functor<C, D>,
    ) -> Self {
        let ft = source.t.then(&functor);
        let sf = functor.then(&target.t);
        let (a, b) = (ft.clone(), ft.clone());
        let alpha = NatTrans::new("id", ft, sf, move |x| a.target.identity(&a.obj(x)?))
            .with_inverse(move |x| b.target.identity(&b.obj(x)?));
        TangentMorphism::lax(name, source, target, functor, alpha, true)
    }

    /// The same functor with the inverse distributive law and the opposite
    /// direction: a strong lax morphism becomes a strong colax one and back.
    pub fn flipped(&self) -> Self {
        TangentMorphism {
            name: format!("{}⁻¹", self.name),
            source: self.source.clone(),
            target: self.target.clone(),
            functor: self.functor.clone(),
            alpha: self.alpha.inverse(),
            direction: match self.direction {
                Direction::Lax => Direction::Colax,
                Direction::Colax => Direction::Lax,
            },
            strong: self.strong,
        }
    }

    /// `F∘T` and `S∘F` in the order dictated by the direction.
    fn boundary(&self) -> (Functor<C, D>, Functor<C, D>) {
        let ft = self.source.t.then(&self.functor);
        let sf = self.functor.then(&self.target.t);
        match self.direction {
            Direction::Lax => (ft, sf),
            Direction::Colax => (sf, ft),
        }
    }
}

/// The five diagrams of a tangent morphism, naturality of `α`, and for
/// strong morphisms invertibility of `α` and preservation of the tangent
/// pullbacks and the vertical-lift equalizer.
pub fn verify_tangent_morphism<C: Category, D: Category>(
    m: &TangentMorphism<C, D>,
    samples: Option<&Samples<C>>,
) -> Result<VerificationReport> {
    let (src, tgt) = (&m.source, &m.target);
    if !Arc::ptr_eq(&m.functor.source, &src.carrier) || !Arc::ptr_eq(&m.functor.target, &tgt.carrier) {
        return structural(format!("{}: functor does not run between the tangent carriers", m.name));
    }
    let c = &*src.carrier;
    let d = &*tgt.carrier;
    let f = &m.functor;
    let scope = Scope::of(c, samples)?;
    let (want_src, want_tgt) = m.boundary();
    for x in &scope.objects {
        let a = m.alpha.at(x)?;
        if d.source(&a) != want_src.obj(x)? || d.target(&a) != want_tgt.obj(x)? {
            return structural(format!("{}: distributive law at {x} has the wrong boundary", m.name));
        }
    }
    let kind = match m.direction {
        Direction::Lax => "lax",
        Direction::Colax => "colax",
    };
    let mut report = VerificationReport::new(format!("{kind} tangent morphism {}", m.name));
    report.absorb("naturality/α", verify_naturality(&m.alpha, samples)?);

    let obj = |x: &C::Obj| json!({"object": c.obj_json(x)});
    let mut bundle = LawTally::new("distributive law respects p", "tangent-morphism.projection");
    let mut zero = LawTally::new("distributive law respects 0", "tangent-morphism.zero");
    let mut add = LawTally::new("distributive law respects +", "tangent-morphism.addition");
    let mut lift = LawTally::new("distributive law respects ℓ", "tangent-morphism.lift");
    let mut flip = LawTally::new("distributive law respects c", "tangent-morphism.flip");
    for x in &scope.objects {
        let fx = f.obj(x)?;
        let tx = src.t.obj(x)?;
        let a = m.alpha.at(x)?;
        let a_t = m.alpha.at(&tx)?;
        let s_a = tgt.t.mor(&a)?;
        let fp = f.mor(&src.p.at(x)?)?;
        let q = tgt.p.at(&fx)?;
        let f0 = f.mor(&src.zero.at(x)?)?;
        let z = tgt.zero.at(&fx)?;
        let fl = f.mor(&src.lift.at(x)?)?;
        let l = tgt.lift.at(&fx)?;
        let fc = f.mor(&src.flip.at(x)?)?;
        let cc = tgt.flip.at(&fx)?;
        let t2 = src.t2_cert(x)?;
        let s2 = tgt.t2_cert(&fx)?;
        let fadd = f.mor(&src.add_at(x)?)?;
        let sadd = tgt.add_at(&fx)?;
        match m.direction {
            Direction::Lax => {
                record_eq(d, &mut bundle, d.compose(&q, &a), Ok(fp), || obj(x))?;
                record_eq(d, &mut zero, d.compose(&a, &f0), Ok(z), || obj(x))?;
                let lhs = (|| {
                    let a2 = d.mediate(&s2, &[d.compose(&a, &f.mor(&t2.legs[0])?)?, d.compose(&a, &f.mor(&t2.legs[1])?)?])?;
                    d.compose(&sadd, &a2)
                })();
                record_eq(d, &mut add, lhs, d.compose(&a, &fadd), || obj(x))?;
                // α² = S(α)∘α_T : F T² ⇒ S² F
                let a2 = d.compose(&s_a, &a_t)?;
                record_eq(d, &mut lift, d.compose(&l, &a), d.compose(&a2, &fl), || obj(x))?;
                record_eq(d, &mut flip, d.compose(&cc, &a2), d.compose(&a2, &fc), || obj(x))?;
            }
            Direction::Colax => {
                record_eq(d, &mut bundle, d.compose(&fp, &a), Ok(q), || obj(x))?;
                record_eq(d, &mut zero, d.compose(&a, &z), Ok(f0), || obj(x))?;
                let lhs = (|| {
                    let ft2 = t2.map_by(f)?;
                    let a2 = d.mediate(&ft2, &[d.compose(&a, &s2.legs[0])?, d.compose(&a, &s2.legs[1])?])?;
                    d.compose(&fadd, &a2)
                })();
                record_eq(d, &mut add, lhs, d.compose(&a, &sadd), || obj(x))?;
                // α² = α_T∘S(α) : S² F ⇒ F T²
                let a2 = d.compose(&a_t, &s_a)?;
                record_eq(d, &mut lift, d.compose(&fl, &a), d.compose(&a2, &l), || obj(x))?;
                record_eq(d, &mut flip, d.compose(&fc, &a2), d.compose(&a2, &cc), || obj(x))?;
            }
        }
    }
    for t in [bundle, zero, add, lift, flip] {
        t.finish(&mut report);
    }

    if m.strong {
        let mut inv = LawTally::new("distributive law is invertible", "tangent-morphism.strong.invertible");
        let mut undecided = 0usize;
        for x in &scope.objects {
            let a = m.alpha.at(x)?;
            let explicit = if m.alpha.has_explicit_inverse() { Some(m.alpha.inverse_at(x)?) } else { None };
            match crate::pseudo::invertible(d, &a, explicit)? {
                Some(ok) => inv.record(ok, || obj(x)),
                None => undecided += 1,
            }
        }
        inv.finish(&mut report);
        if undecided > 0 {
            report.certified("distributive law invertibility", "tangent-morphism.strong.invertible", "backend cannot decide invertibility");
        }
        let mut pres = LawTally::new("F preserves tangent pullbacks and the lift equalizer", "tangent-morphism.strong.preservation");
        let mut certified = 0usize;
        for x in &scope.objects {
            let certs: Vec<Result<LimitCertificate<C>>> = vec![src.t2_cert(x), src.t3_cert(x), src.lift_fork(x)];
            for cert in certs {
                let image = cert.and_then(|k| k.map_by(f));
                record_limit(d, &mut pres, &mut certified, image, || obj(x))?;
            }
        }
        pres.finish(&mut report);
        if certified > 0 {
            report.certified("preservation of tangent limits", "tangent-morphism.strong.preservation", "target is symbolic; images commute and universality is certified");
        }
    }
    if !scope.exhaustive {
        report.certified("tangent morphism laws", "tangent-morphism.scope", "checked on supplied samples only");
    }
    Ok(report)
}

/// `S(ρ)∘α = β∘ρ_T` for a transformation `ρ: F ⇒ G` between lax morphisms
/// `(F, α)` and `(G, β)`.
pub fn verify_tangent_transformation<C: Category, D: Category>(
    rho: &NatTrans<C, D>,
    m1: &TangentMorphism<C, D>,
    m2: &TangentMorphism<C, D>,
    samples: Option<&Samples<C>>,
) -> Result<VerificationReport> {
    if !Arc::ptr_eq(&m1.source, &m2.source) || !Arc::ptr_eq(&m1.target, &m2.target) {
        return structural("tangent morphisms are not parallel");
    }
    if m1.direction != Direction::Lax || m2.direction != Direction::Lax {
        return structural("tangent transformations are checked between lax morphisms");
    }
    let c = &*m1.source.carrier;
    let d = &*m1.target.carrier;
    let scope = Scope::of(c, samples)?;
    for x in &scope.objects {
        let r = rho.at(x)?;
        if d.source(&r) != m1.functor.obj(x)? || d.target(&r) != m2.functor.obj(x)? {
            return structural(format!("{}: component at {x} does not run F(X) → G(X)", rho.label));
        }
    }
    let mut report = VerificationReport::new(format!("tangent transformation {}", rho.label));
    report.absorb("naturality", verify_naturality(rho, samples)?);
    let mut eq = LawTally::new("S(ρ)∘α = β∘ρ_T", "tangent-transformation.equation");
    for x in &scope.objects {
        let tx = m1.source.t.obj(x)?;
        let lhs = (|| d.compose(&m1.target.t.mor(&rho.at(x)?)?, &m1.alpha.at(x)?))();
        let rhs = (|| d.compose(&m2.alpha.at(x)?, &rho.at(&tx)?))();
        record_eq(d, &mut eq, lhs, rhs, || json!({"object": c.obj_json(x)}))?;
    }
    eq.finish(&mut report);
    Ok(report)
}

/// Composite `(G, β)∘(F, α) = (G∘F, G(α)·β_F)` of lax morphisms.
pub fn compose_tangent_morphisms<C: Category, D: Category, E: Category>(
    g: &TangentMorphism<D, E>,
    f: &TangentMorphism<C, D>,
) -> Result<TangentMorphism<C, E>> {
    if f.direction != Direction::Lax || g.direction != Direction::Lax {
        return structural("composition is defined for lax morphisms");
    }
    if !Arc::ptr_eq(&f.target, &g.source) {
        return structural("tangent morphisms are not composable");
    }
    let func = f.functor.then(&g.functor);
    let src_b = f.source.t.then(&func);
    let tgt_b = func.then(&g.target.t);
    let (fa, ga, gf) = (f.alpha.clone(), g.alpha.clone(), g.functor.clone());
    let e = g.target.carrier.clone();
    let ffun = f.functor.clone();
    let alpha = NatTrans::new(format!("{}·{}", g.alpha.label, f.alpha.label), src_b, tgt_b, move |x| {
        chain(&*e, &[ga.at(&ffun.obj(x)?)?, gf.mor(&fa.at(x)?)?])
    });
    Ok(TangentMorphism::lax(
        format!("{}∘{}", g.name, f.name),
        f.source.clone(),
        g.target.clone(),
        func,
        alpha,
        f.strong && g.strong,
    ))
}
