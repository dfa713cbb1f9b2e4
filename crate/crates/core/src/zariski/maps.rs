//! The ring maps underlying the Zariski tangent structure and their
//! ring-level coherences.
//!
//! Ring maps point opposite to scheme maps: `q_B: B → T(B)` underlies
//! `p: T(X) → X`, `ζ_B` underlies `0`, `add_B: T(B) → T₂(B)` underlies `+`,
//! `v_B: T²(B) → T(B)` underlies `ℓ` and `γ_B` underlies `c`.

use super::algebra::{t2_pushout, tangent_algebra, tangent_hom, tensor_pushout, Alg, AlgebraHom, Cospan, Pushout};
use crate::error::{CatError, Result};
use crate::field::Field;
use crate::report::{LawTally, VerificationReport};
use serde_json::{json, Value};

/// `q_B: b ↦ b`.
pub fn bundle_hom<F: Field>(b: &Alg<F>) -> Result<AlgebraHom<F>> {
    let tb = tangent_algebra(b)?;
    let own = (0..b.gens().len()).map(|i| tb.var(b.own(i))).collect();
    AlgebraHom::over_base(b.clone(), tb, own)
}

/// `ζ_B: b ↦ b, db ↦ 0`.
pub fn zero_hom<F: Field>(b: &Alg<F>) -> Result<AlgebraHom<F>> {
    let tb = tangent_algebra(b)?;
    let k = b.gens().len();
    let own = (0..2 * k).map(|i| if i < k { b.var(b.own(i)) } else { b.zero() }).collect();
    AlgebraHom::over_base(tb, b.clone(), own)
}

/// `add_B: b ↦ b, db ↦ db⊗1 + 1⊗db` into `T₂B`.
pub fn add_hom<F: Field>(b: &Alg<F>) -> Result<AlgebraHom<F>> {
    add_hom_into(b, &t2_pushout(b)?)
}

/// `add_B` into a given presentation of `T(B) ⊗_B T(B)`.
pub fn add_hom_into<F: Field>(b: &Alg<F>, t2: &Pushout<F>) -> Result<AlgebraHom<F>> {
    let tb = tangent_algebra(b)?;
    let k = b.gens().len();
    let mut own = Vec::with_capacity(2 * k);
    for i in 0..2 * k {
        let v = tb.var(tb.own(i));
        let img = if i < k { t2.inj_a.apply(&v)? } else { t2.inj_a.apply(&v)?.add(&t2.inj_b.apply(&v)?) };
        own.push(img);
    }
    AlgebraHom::over_base(tb, t2.algebra.clone(), own)
}

/// Own generators of `T²B` come in four blocks of `k`: `b`, `db`, `δb`, `δdb`.
fn second_order<F: Field>(b: &Alg<F>) -> Result<(Alg<F>, Alg<F>, usize)> {
    let tb = tangent_algebra(b)?;
    let ttb = tangent_algebra(&tb)?;
    Ok((tb, ttb, b.gens().len()))
}

/// `v_B: b ↦ b, db ↦ 0, δb ↦ 0, δdb ↦ db`, from `T²B` to `T(B)`.
pub fn lift_hom<F: Field>(b: &Alg<F>) -> Result<AlgebraHom<F>> {
    let (tb, ttb, k) = second_order(b)?;
    let own = (0..4 * k)
        .map(|i| match i / k {
            0 => tb.var(tb.own(i)),
            3 => tb.var(tb.own(k + i % k)),
            _ => tb.zero(),
        })
        .collect();
    AlgebraHom::over_base(ttb, tb, own)
}

/// `γ_B: b ↦ b, db ↦ δb, δb ↦ db, δdb ↦ δdb` on `T²B`.
pub fn flip_hom<F: Field>(b: &Alg<F>) -> Result<AlgebraHom<F>> {
    let (_, ttb, k) = second_order(b)?;
    let own = (0..4 * k)
        .map(|i| {
            let j = match i / k {
                1 => i + k,
                2 => i - k,
                _ => i,
            };
            ttb.var(ttb.own(j))
        })
        .collect();
    AlgebraHom::over_base(ttb.clone(), ttb, own)
}

/// `T₃B = T₂B ⊗_B T(B)` along `ι1∘q_B` and `q_B`.
pub fn t3_pushout<F: Field>(b: &Alg<F>) -> Result<Pushout<F>> {
    let t2 = t2_pushout(b)?;
    let q = bundle_hom(b)?;
    tensor_pushout(&Cospan::new(t2.inj_a.compose(&q)?, q)?)
}

/// `T(h)` with the tangent presentations looked up.
pub fn tangent_map<F: Field>(h: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    tangent_hom(h, &tangent_algebra(&h.source)?, &tangent_algebra(&h.target)?)
}

pub(crate) fn hom_witness<F: Field>(l: &AlgebraHom<F>, r: &AlgebraHom<F>) -> Value {
    match l.first_difference(r) {
        Some((g, a, b)) => json!({
            "generator": g,
            "left": l.target.render(&a),
            "right": r.target.render(&b),
        }),
        None => json!({"left": l.to_string(), "right": r.to_string()}),
    }
}

/// Records `lhs = rhs` between ring maps; construction errors other than an
/// exhausted budget count as failures.
pub(crate) fn record_hom<F: Field>(
    tally: &mut LawTally,
    lhs: Result<AlgebraHom<F>>,
    rhs: Result<AlgebraHom<F>>,
    context: impl FnOnce() -> Value,
) -> Result<()> {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            tally.record(l == r, || {
                let mut w = context();
                for (k, v) in hom_witness(&l, &r).as_object().expect("object").iter() {
                    w[k] = v.clone();
                }
                w
            });
            Ok(())
        }
        (Err(e @ CatError::Budget(_)), _) | (_, Err(e @ CatError::Budget(_))) => Err(e),
        (Err(e), _) | (_, Err(e)) => {
            let mut w = context();
            w["error"] = json!(e.to_string());
            tally.fail(w);
            Ok(())
        }
    }
}

/// Ring-level transposes of the tangent axioms at `b`: section, additive
/// bundle, involution and the lift/flip coherences.
pub fn check_ring_coherences<F: Field>(b: &Alg<F>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("ring-level tangent coherences of {b}"));
    let ctx = || json!({"algebra": b.to_string()});
    let mut section = LawTally::new("ζ∘q = id", "zariski.ring.section");
    let mut fibre = LawTally::new("add∘q = ι1∘q", "zariski.ring.fibrewise");
    let mut unit = LawTally::new("⟨q∘ζ, id⟩∘add = id", "zariski.ring.unit");
    let mut comm = LawTally::new("⟨ι2, ι1⟩∘add = add", "zariski.ring.commutativity");
    let mut assoc = LawTally::new("additive associativity through T₃", "zariski.ring.associativity");
    let mut invol = LawTally::new("γ∘γ = id", "zariski.ring.involution");
    let mut fl = LawTally::new("v∘γ = v", "zariski.ring.flip-lift");
    let mut ll = LawTally::new("v∘T(v) = v∘v_T", "zariski.ring.lift-lift");
    let mut lf = LawTally::new("v_T∘T(γ)∘γ_T = γ∘T(v)", "zariski.ring.lift-flip");
    let mut yb = LawTally::new("γ_T∘T(γ)∘γ_T = T(γ)∘γ_T∘T(γ)", "zariski.ring.yang-baxter");

    let tb = tangent_algebra(b)?;
    let q = bundle_hom(b)?;
    let z = zero_hom(b)?;
    record_hom(&mut section, z.compose(&q), Ok(AlgebraHom::identity(b)), ctx)?;

    let add = add_hom(b);
    let t2 = t2_pushout(b)?;
    match &add {
        Ok(add) => {
            record_hom(&mut fibre, add.compose(&q), t2.inj_a.compose(&q), ctx)?;
            let lhs = (|| t2.mediate(&q.compose(&z)?, &AlgebraHom::identity(&tb))?.compose(add))();
            record_hom(&mut unit, lhs, Ok(AlgebraHom::identity(&tb)), ctx)?;
            let lhs = (|| t2.mediate(&t2.inj_b, &t2.inj_a)?.compose(add))();
            record_hom(&mut comm, lhs, Ok(add.clone()), ctx)?;
            let t3 = t3_pushout(b)?;
            let (j1, j2) = (&t3.inj_a, &t3.inj_b);
            let left = (|| t2.mediate(&j1.compose(add)?, j2)?.compose(add))();
            let right = (|| {
                let inner = t2.mediate(&j1.compose(&t2.inj_b)?, j2)?;
                t2.mediate(&j1.compose(&t2.inj_a)?, &inner.compose(add)?)?.compose(add)
            })();
            record_hom(&mut assoc, left, right, ctx)?;
        }
        Err(e @ CatError::Budget(_)) => return Err(e.clone()),
        Err(e) => {
            for t in [&mut fibre, &mut unit, &mut comm, &mut assoc] {
                t.fail(json!({"algebra": b.to_string(), "error": e.to_string()}));
            }
        }
    }

    let v = lift_hom(b)?;
    let g = flip_hom(b)?;
    let ttb = &g.source;
    record_hom(&mut invol, g.compose(&g), Ok(AlgebraHom::identity(ttb)), ctx)?;
    record_hom(&mut fl, v.compose(&g), Ok(v.clone()), ctx)?;
    let tv = tangent_map(&v)?;
    let vt = lift_hom(&tb)?;
    record_hom(&mut ll, v.compose(&tv), v.compose(&vt), ctx)?;
    let tg = tangent_map(&g)?;
    let gt = flip_hom(&tb)?;
    let lhs = (|| vt.compose(&tg)?.compose(&gt))();
    record_hom(&mut lf, lhs, g.compose(&tv), ctx)?;
    let lhs = (|| gt.compose(&tg)?.compose(&gt))();
    let rhs = (|| tg.compose(&gt)?.compose(&tg))();
    record_hom(&mut yb, lhs, rhs, ctx)?;

    for t in [section, fibre, unit, comm, assoc, invol, fl, ll, lf, yb] {
        t.finish(&mut report);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::zariski::algebra::{FpAlgebra, Mode};

    type A = FpAlgebra<Rational>;

    #[test]
    fn generator_tables() {
        let b = A::parse(None, &["x"], &[]).unwrap();
        let z = zero_hom(&b).unwrap();
        assert!(z.image_of("dx").unwrap().is_zero());
        let add = add_hom(&b).unwrap();
        assert_eq!(add.target.render(add.image_of("dx").unwrap()), "dx_2 + dx");
        let g = flip_hom(&b).unwrap();
        assert_eq!(g.target.render(g.image_of("dx").unwrap()), "delta_x");
        let v = lift_hom(&b).unwrap();
        assert_eq!(v.target.render(v.image_of("delta_dx").unwrap()), "dx");
    }

    #[test]
    fn coherences_hold_in_sym_mode() {
        for (g, r) in [(vec!["x"], vec![]), (vec!["x"], vec!["x^3"]), (vec!["x", "y"], vec!["x*y"])] {
            let b = A::parse(None, &g, &r).unwrap();
            let rep = check_ring_coherences(&b).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn square_zero_addition_is_not_a_ring_map() {
        let b = A::parse_with_mode(None, &["x"], &[], Mode::SquareZero).unwrap();
        let err = add_hom(&b).unwrap_err();
        assert!(matches!(err, CatError::Hypothesis(ref m) if m.contains("dx^2")), "{err}");
    }
}
