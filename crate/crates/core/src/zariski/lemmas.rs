//! Base change and the comparison maps `θ`, `σ`, `ω`, with mechanical checks
//! that base change is a strong tangent morphism and that the comparisons
//! are pseudonatural.

use super::algebra::{
    base_change, base_change_hom, t2_pushout, tangent_algebra, transport, transport_back, Alg, AlgebraHom, Cospan,
    FpAlgebra,
};
use super::maps::{add_hom, bundle_hom, flip_hom, lift_hom, record_hom, tangent_map, zero_hom};
use crate::error::{structural, CatError, Result};
use crate::field::Field;
use crate::report::{LawTally, VerificationReport};
use serde_json::{json, Value};

/// `θ_B: T(B ⊗_C A) → T(B) ⊗_C A`, `b⊗a ↦ b⊗a`, `d(b⊗a) ↦ db⊗a`.
pub fn theta_hom<F: Field>(b: &Alg<F>, f: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let (fb, _) = base_change(b, f)?;
    let (_, unit_tb) = base_change(&tangent_algebra(b)?, f)?;
    transport(&tangent_algebra(&fb)?, &unit_tb)
}

/// `θ_B⁻¹: db⊗a ↦ d(b⊗a)`.
pub fn theta_inverse<F: Field>(b: &Alg<F>, f: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let (fb, _) = base_change(b, f)?;
    let (_, unit_tb) = base_change(&tangent_algebra(b)?, f)?;
    transport_back(&tangent_algebra(&fb)?, &unit_tb)
}

/// `σ_B: T²(B ⊗_C A) → T²(B) ⊗_C A` on the four generator blocks.
pub fn sigma_hom<F: Field>(b: &Alg<F>, f: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let (fb, _) = base_change(b, f)?;
    let ttb = tangent_algebra(&tangent_algebra(b)?)?;
    let (_, unit) = base_change(&ttb, f)?;
    transport(&tangent_algebra(&tangent_algebra(&fb)?)?, &unit)
}

/// `ω_D: D ⊗_C A → (D ⊗_C B) ⊗_B A`, `d⊗a ↦ (d⊗1_B)⊗a`, for ring maps
/// `g: C → B`, `f: B → A` and `D` over `C`.
pub fn omega_hom<F: Field>(d: &Alg<F>, g: &AlgebraHom<F>, f: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let gf = f.compose(g)?;
    let (gd, ug) = base_change(d, g)?;
    let (_, uf) = base_change(&gd, f)?;
    let (gfd, _) = base_change(d, &gf)?;
    transport(&gfd, &uf.compose(&ug)?)
}

/// The inverse of [`omega_hom`].
pub fn omega_inverse<F: Field>(d: &Alg<F>, g: &AlgebraHom<F>, f: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let gf = f.compose(g)?;
    let (gd, ug) = base_change(d, g)?;
    let (_, uf) = base_change(&gd, f)?;
    let (gfd, _) = base_change(d, &gf)?;
    transport_back(&gfd, &uf.compose(&ug)?)
}

fn named<T>(stage: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        CatError::Budget(m) => CatError::Budget(format!("{stage}: {m}")),
        e => e,
    })
}

/// Base-change data for one algebra along `f`.
struct Changed<F: Field> {
    unit: AlgebraHom<F>,
}

impl<F: Field> Changed<F> {
    fn of(b: &Alg<F>, f: &AlgebraHom<F>) -> Result<Self> {
        let (_, unit) = base_change(b, f)?;
        Ok(Changed { unit })
    }

    fn alg(&self) -> &Alg<F> {
        &self.unit.target
    }
}

fn push<F: Field>(h: &AlgebraHom<F>, src: &Changed<F>, tgt: &Changed<F>) -> Result<AlgebraHom<F>> {
    base_change_hom(h, &src.unit, &tgt.unit)
}

/// The five squares saying that base change along `leg_a` with `θ` is a
/// strong tangent morphism, at `B` viewed over `C` through `leg_b`;
/// plus invertibility of `θ` and `σ = θ_T∘T(θ)`.
pub fn check_affine_lemmas<F: Field>(cs: &Cospan<F>) -> Result<VerificationReport> {
    let b = FpAlgebra::relative(&cs.leg_b.target, &cs.leg_b)?;
    check_base_change_lemmas(&b, &cs.leg_a)
}

/// [`check_affine_lemmas`] for `b` already presented over `f.source`.
pub fn check_base_change_lemmas<F: Field>(b: &Alg<F>, f: &AlgebraHom<F>) -> Result<VerificationReport> {
    if b.base_or_ground() != f.source {
        return structural(format!("{b} is not an algebra over {}", f.source));
    }
    let subject = format!("base change of {b} along {} → {}", f.source, f.target);
    let mut report = VerificationReport::new(format!("affine lemmas: {subject}"));
    let ctx = |lemma: &str| -> Value { json!({"lemma": lemma, "algebra": b.to_string(), "along": f.to_string()}) };

    let tb = named("setup", tangent_algebra(b))?;
    let ttb = named("setup", tangent_algebra(&tb))?;
    let t2 = named("setup", t2_pushout(b))?;
    let cb = named("setup", Changed::of(b, f))?;
    let ctb = named("setup", Changed::of(&tb, f))?;
    let cttb = named("setup", Changed::of(&ttb, f))?;
    let ct2 = named("setup", Changed::of(&t2.algebra, f))?;
    let fb = cb.alg().clone();
    let tfb = named("setup", tangent_algebra(&fb))?;
    let theta = named("setup", transport(&tfb, &ctb.unit))?;
    let sigma = named("setup", transport(&tangent_algebra(&tfb)?, &cttb.unit))?;

    let mut bundle = LawTally::new("θ∘q_{B⊗A} = q_B ⊗ id_A", "zariski.lemma.bundle");
    let lhs = bundle_hom(&fb).and_then(|q| theta.compose(&q));
    let rhs = bundle_hom(b).and_then(|q| push(&q, &cb, &ctb));
    named("bundle", record_hom(&mut bundle, lhs, rhs, || ctx("bundle")))?;

    let mut zero = LawTally::new("(ζ_B ⊗ id_A)∘θ = ζ_{B⊗A}", "zariski.lemma.zero");
    let lhs = zero_hom(b).and_then(|z| push(&z, &ctb, &cb)?.compose(&theta));
    named("zero", record_hom(&mut zero, lhs, zero_hom(&fb), || ctx("zero")))?;

    let mut addition = LawTally::new("θ₂∘add_{B⊗A} = (add_B ⊗ id_A)∘θ", "zariski.lemma.addition");
    let lhs = (|| {
        let t2f = t2_pushout(&fb)?;
        let a1 = push(&t2.inj_a, &ctb, &ct2)?.compose(&theta)?;
        let a2 = push(&t2.inj_b, &ctb, &ct2)?.compose(&theta)?;
        t2f.mediate(&a1, &a2)?.compose(&add_hom(&fb)?)
    })();
    let rhs = add_hom(b).and_then(|a| push(&a, &ctb, &ct2)?.compose(&theta));
    named("addition", record_hom(&mut addition, lhs, rhs, || ctx("addition")))?;

    let mut lift = LawTally::new("θ∘v_{B⊗A} = (v_B ⊗ id_A)∘σ", "zariski.lemma.lift");
    let lhs = lift_hom(&fb).and_then(|v| theta.compose(&v));
    let rhs = lift_hom(b).and_then(|v| push(&v, &cttb, &ctb)?.compose(&sigma));
    named("lift", record_hom(&mut lift, lhs, rhs, || ctx("lift")))?;

    let mut flip = LawTally::new("σ∘γ_{B⊗A} = (γ_B ⊗ id_A)∘σ", "zariski.lemma.flip");
    let lhs = flip_hom(&fb).and_then(|g| sigma.compose(&g));
    let rhs = flip_hom(b).and_then(|g| push(&g, &cttb, &cttb)?.compose(&sigma));
    named("flip", record_hom(&mut flip, lhs, rhs, || ctx("flip")))?;

    let mut inv = LawTally::new("θ is invertible", "zariski.lemma.theta-invertible");
    let back = named("theta", transport_back(&tfb, &ctb.unit));
    match back {
        Ok(back) => {
            named("theta", record_hom(&mut inv, theta.compose(&back), Ok(AlgebraHom::identity(ctb.alg())), || ctx("theta")))?;
            named("theta", record_hom(&mut inv, back.compose(&theta), Ok(AlgebraHom::identity(&tfb)), || ctx("theta")))?;
        }
        Err(e @ CatError::Budget(_)) => return Err(e),
        Err(e) => inv.fail(json!({"lemma": "theta", "error": e.to_string()})),
    }

    let mut sig = LawTally::new("σ = θ_T∘T(θ)", "zariski.lemma.sigma-composite");
    let rhs = (|| {
        let theta_t = transport(&tangent_algebra(ctb.alg())?, &cttb.unit)?;
        theta_t.compose(&tangent_map(&theta)?)
    })();
    named("sigma", record_hom(&mut sig, Ok(sigma.clone()), rhs, || ctx("sigma")))?;

    for t in [bundle, zero, addition, lift, flip, inv, sig] {
        t.finish(&mut report);
    }
    Ok(report)
}

/// The pseudonaturality condition for `θ` along the chain `C →g B →f A`
/// at `d` over `C`: `ω_T∘θ^{gf} = F(f)(θ^g)∘θ^f∘T(ω)` as maps
/// `T(D ⊗_C A) → ((T D) ⊗_C B) ⊗_B A`, and the common value on generators
/// is the transported generator, `d(r⊗a) ↦ (dr⊗1_B)⊗a`.
pub fn check_pseudonaturality<F: Field>(
    g: &AlgebraHom<F>,
    f: &AlgebraHom<F>,
    d: &Alg<F>,
) -> Result<VerificationReport> {
    if d.base_or_ground() != g.source {
        return structural(format!("{d} is not an algebra over {}", g.source));
    }
    let gf = named("setup", f.compose(g))?;
    let mut report = VerificationReport::new(format!("pseudonaturality of θ at {d} along {} → {} → {}", g.source, g.target, f.target));
    let ctx = || json!({"algebra": d.to_string(), "g": g.to_string(), "f": f.to_string()});

    let td = named("setup", tangent_algebra(d))?;
    let (gd, ug) = named("setup", base_change(d, g))?;
    let (_, uf) = named("setup", base_change(&gd, f))?;
    let (gfd, _) = named("setup", base_change(d, &gf))?;
    let (gtd, ug_t) = named("setup", base_change(&td, g))?;
    let (_, uf_t) = named("setup", base_change(&gtd, f))?;
    let (gftd, ugf_t) = named("setup", base_change(&td, &gf))?;
    let chain_t = named("setup", uf_t.compose(&ug_t))?;

    let omega = named("omega", transport(&gfd, &uf.compose(&ug)?))?;
    let omega_t = named("omega", transport(&gftd, &chain_t))?;
    let tgfd = named("setup", tangent_algebra(&gfd))?;

    let alpha = (|| omega_t.compose(&transport(&tgfd, &ugf_t)?))();
    let beta = (|| {
        let theta_g = transport(&tangent_algebra(&gd)?, &ug_t)?;
        let (_, uf_tgd) = base_change(&tangent_algebra(&gd)?, f)?;
        let f_theta_g = base_change_hom(&theta_g, &uf_tgd, &uf_t)?;
        let theta_f = transport(&tangent_algebra(&uf.target)?, &uf_tgd)?;
        f_theta_g.compose(&theta_f)?.compose(&tangent_map(&omega)?)
    })();

    let mut comp = LawTally::new("ω_T∘θ^{gf} = F(f)(θ^g)∘θ^f∘T(ω)", "zariski.pseudonat.composites");
    let mut common = LawTally::new("common value is the transported generator", "zariski.pseudonat.common-value");
    let expected = named("common", transport(&tgfd, &chain_t));
    named("composites", record_hom(&mut comp, alpha.clone(), beta, ctx))?;
    named("common", record_hom(&mut common, alpha, expected, ctx))?;

    let mut inv = LawTally::new("ω is invertible", "zariski.pseudonat.omega-invertible");
    match transport_back(&gfd, &uf.compose(&ug)?) {
        Ok(back) => {
            record_hom(&mut inv, omega.compose(&back), Ok(AlgebraHom::identity(&omega.target)), ctx)?;
            record_hom(&mut inv, back.compose(&omega), Ok(AlgebraHom::identity(&gfd)), ctx)?;
        }
        Err(e @ CatError::Budget(_)) => return Err(e),
        Err(e) => inv.fail(json!({"error": e.to_string()})),
    }
    for t in [comp, common, inv] {
        t.finish(&mut report);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::zariski::algebra::FpAlgebra;

    type A = FpAlgebra<Rational>;

    #[test]
    fn theta_on_a_differential() {
        let q = A::ground();
        let qt = A::parse(None, &["t"], &[]).unwrap();
        let b = A::parse(None, &["x"], &[]).unwrap();
        let f = AlgebraHom::parse(q, qt, &[]).unwrap();
        let th = theta_hom(&b, &f).unwrap();
        assert_eq!(th.target.render(th.image_of("dx").unwrap()), "dx");
        assert_eq!(th.compose(&theta_inverse(&b, &f).unwrap()).unwrap(), AlgebraHom::identity(&th.target));
    }
}
