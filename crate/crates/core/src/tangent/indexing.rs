use super::morphism::{verify_tangent_morphism, TangentMorphism};
use super::structure::{finite_pullbacks, record_eq, record_limit, PullbackProvider, TangentStructure};
use crate::catcore::{chain, Category, LimitCertificate, NatTrans};
use crate::error::{structural, CatError, Result};
use crate::pseudo::{
    fibre_scope, vertical_compose, verify_modification, verify_pseudonatural, Cell, FibreSamples, Modification,
    Pseudofunctor, Pseudonatural,
};
use crate::report::{LawTally, VerificationReport};
use serde_json::json;
use std::collections::HashMap;
use std::sync::Arc;

/// A pseudofunctor with a tangent structure on every fibre and invertible
/// distributors `T_f: F(f)∘T_Y ⇒ T_X∘F(f)`.
pub struct TangentIndexingFunctor<C: Category> {
    pub name: String,
    pub pf: Arc<Pseudofunctor<C>>,
    fibre_tangent: Vec<Arc<TangentStructure<C>>>,
    distributors: Vec<NatTrans<C, C>>,
}

impl<C: Category> Clone for TangentIndexingFunctor<C> {
    fn clone(&self) -> Self {
        TangentIndexingFunctor {
            name: self.name.clone(),
            pf: self.pf.clone(),
            fibre_tangent: self.fibre_tangent.clone(),
            distributors: self.distributors.clone(),
        }
    }
}

impl<C: Category> TangentIndexingFunctor<C> {
    /// Distributors are given for non-identity morphisms; `T_id` is the identity.
    pub fn new(
        name: impl Into<String>,
        pf: Arc<Pseudofunctor<C>>,
        fibre_tangent: Vec<Arc<TangentStructure<C>>>,
        distributors: Vec<(String, Cell<C, C>)>,
    ) -> Result<Self> {
        let name = name.into();
        let base = pf.base.clone();
        if fibre_tangent.len() != base.object_count() {
            return structural(format!("{name}: need one tangent structure per fibre"));
        }
        for (x, ts) in fibre_tangent.iter().enumerate() {
            if !Arc::ptr_eq(&ts.carrier, pf.fibre_at(x)) {
                return structural(format!("{name}: tangent structure at {} is not on the fibre", base.object_list()[x]));
            }
        }
        let mut given: HashMap<usize, Cell<C, C>> = HashMap::new();
        for (m, cell) in distributors {
            if base.is_identity(&m) {
                return structural(format!("{name}: the distributor at {m} is fixed to the identity"));
            }
            given.insert(base.morphism_position(&m)?, cell);
        }
        let mut ds = Vec::new();
        for (i, m) in base.morphism_ids().iter().enumerate() {
            let x = pf.src_pos(m)?;
            let y = pf.tgt_pos(m)?;
            let ff = pf.transition_at(i);
            let src = fibre_tangent[y].t.then(ff);
            let tgt = ff.then(&fibre_tangent[x].t);
            let nat = if base.is_identity(m) {
                let (t1, t2) = (tgt.clone(), tgt.clone());
                NatTrans::new(format!("T_{m}"), src, tgt, move |a| t1.target.identity(&t1.obj(a)?))
                    .with_inverse(move |a| t2.target.identity(&t2.obj(a)?))
            } else {
                let cell = given
                    .remove(&i)
                    .ok_or_else(|| CatError::Structural(format!("{name}: no distributor for {m}")))?;
                cell.into_nat(format!("T_{m}"), src, tgt)
            };
            ds.push(nat);
        }
        Ok(TangentIndexingFunctor {
            name,
            pf,
            fibre_tangent,
            distributors: ds,
        })
    }

    /// Every fibre carries 𝕀 and every distributor is the identity.
    pub fn trivial(pf: Arc<Pseudofunctor<C>>) -> Result<Self> {
        let ts = pf
            .fibres()
            .iter()
            .map(|f| {
                let provider = if f.is_finite() { Some(finite_pullbacks(f.clone())) } else { None };
                Arc::new(TangentStructure::identity(f.clone(), provider))
            })
            .collect();
        let ds = pf
            .base
            .morphism_ids()
            .into_iter()
            .filter(|m| !pf.base.is_identity(m))
            .map(|m| {
                let t = pf.transition(&m).expect("transition").clone();
                let t2 = t.clone();
                (
                    m,
                    Cell::new(move |a| t.target.identity(&t.obj(a)?)).with_inverse(move |a| t2.target.identity(&t2.obj(a)?)),
                )
            })
            .collect();
        TangentIndexingFunctor::new(format!("𝕀[{}]", pf.name), pf, ts, ds)
    }

    pub fn fibre_tangent_at(&self, x: usize) -> &Arc<TangentStructure<C>> {
        &self.fibre_tangent[x]
    }

    pub fn fibre_tangents(&self) -> &[Arc<TangentStructure<C>>] {
        &self.fibre_tangent
    }

    pub fn distributor_at(&self, i: usize) -> &NatTrans<C, C> {
        &self.distributors[i]
    }

    pub fn distributor(&self, f: &str) -> Result<&NatTrans<C, C>> {
        Ok(&self.distributors[self.pf.base.morphism_position(f)?])
    }

    /// The strong lax tangent morphism `(F(f), T_f): F(Y) → F(X)`.
    pub fn transition_morphism(&self, f: &str) -> Result<TangentMorphism<C, C>> {
        let i = self.pf.base.morphism_position(f)?;
        let x = self.pf.src_pos(f)?;
        let y = self.pf.tgt_pos(f)?;
        Ok(TangentMorphism::lax(
            format!("(F({f}), T_{f})"),
            self.fibre_tangent[y].clone(),
            self.fibre_tangent[x].clone(),
            self.pf.transition_at(i).clone(),
            self.distributors[i].clone(),
            true,
        ))
    }

    /// The pseudonatural `T: F ⇒ F` with components `T_X` and witnesses `T_f⁻¹`.
    pub fn tangent_pseudonatural(&self) -> Result<Pseudonatural<C, C>> {
        let base = &self.pf.base;
        let comps = self.fibre_tangent.iter().map(|t| t.t.clone()).collect();
        let ws = base
            .morphism_ids()
            .iter()
            .enumerate()
            .filter(|(_, m)| !base.is_identity(m))
            .map(|(i, m)| (m.clone(), Cell::from_nat(&self.distributors[i].inverse())))
            .collect();
        Pseudonatural::new("T", self.pf.clone(), self.pf.clone(), comps, ws)
    }
}

/// Fibre tangent structures, each `(F(f), T_f)` as a strong tangent
/// morphism, and pseudonaturality of `(T_X, T_f⁻¹)`.
pub fn verify_indexing_functor<C: Category>(
    ix: &TangentIndexingFunctor<C>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    let pf = &ix.pf;
    let base = &pf.base;
    let mut report = VerificationReport::new(format!("tangent indexing functor {}", ix.name));
    for (x, ts) in ix.fibre_tangent.iter().enumerate() {
        let name = &base.object_list()[x];
        report.absorb(
            &format!("fibre[{name}]"),
            super::structure::verify_tangent_structure(ts, samples.and_then(|s| s.get(x)))?,
        );
    }
    for m in base.morphism_ids() {
        if base.is_identity(&m) {
            continue;
        }
        let y = pf.tgt_pos(&m)?;
        let tm = ix.transition_morphism(&m)?;
        let mut sub = verify_tangent_morphism(&tm, samples.and_then(|s| s.get(y)))?;
        for c in sub.checks.iter_mut() {
            if let Some(w) = c.witness.as_mut() {
                w["morphism"] = json!(m);
            }
        }
        report.absorb(&format!("transition[{m}]"), sub);
    }
    report.absorb("pseudonatural T", verify_pseudonatural(&ix.tangent_pseudonatural()?, samples)?);
    Ok(report)
}

/// The tangent object in the hom-category of pseudofunctors determined by
/// an indexing functor: a pseudonatural `T` with modifications
/// `p: T ⇛ Id`, `0: Id ⇛ T`, `add: T₂ ⇛ T`, `ℓ: T ⇛ T²`, `c: T² ⇛ T²`.
pub struct TangentObjectData<C: Category> {
    pub pf: Arc<Pseudofunctor<C>>,
    pub t: Arc<Pseudonatural<C, C>>,
    pub t2: Arc<Pseudonatural<C, C>>,
    pub t_sq: Arc<Pseudonatural<C, C>>,
    pub id: Arc<Pseudonatural<C, C>>,
    pub p: Modification<C, C>,
    pub zero: Modification<C, C>,
    pub add: Modification<C, C>,
    pub lift: Modification<C, C>,
    pub flip: Modification<C, C>,
    pullbacks: Vec<PullbackProvider<C>>,
}

impl<C: Category> TangentObjectData<C> {
    pub fn pullbacks_at(&self, x: usize) -> &PullbackProvider<C> {
        &self.pullbacks[x]
    }

    /// The fibre tangent structure at `X` read off from the components.
    pub fn fibre_structure(&self, x: usize) -> TangentStructure<C> {
        let fib = self.pf.fibre_at(x).clone();
        let add = self.add.component_at(x).clone();
        TangentStructure::new(
            format!("𝕋[{}]", self.pf.base.object_list()[x]),
            fib,
            self.t.component_at(x).clone(),
            self.p.component_at(x).clone().relabel("p"),
            self.zero.component_at(x).clone().relabel("0"),
            move |a| add.at(a),
            self.lift.component_at(x).clone().relabel("ℓ"),
            self.flip.component_at(x).clone().relabel("c"),
            self.pullbacks[x].clone(),
        )
    }
}

/// The witness `(T₂)_f` at `a ∈ F(Y)`: the map `T₂X(F(f)a) → F(f)(T₂Y a)`
/// induced by `T_f⁻¹` on both legs.
fn t2_witness<C: Category>(
    ix: &TangentIndexingFunctor<C>,
    i: usize,
    x: usize,
    y: usize,
    a: &C::Obj,
    inverse: bool,
) -> Result<C::Mor> {
    let pf = &ix.pf;
    let fib = pf.fibre_at(x);
    let ff = pf.transition_at(i);
    let (tx, ty) = (&ix.fibre_tangent[x], &ix.fibre_tangent[y]);
    let d = &ix.distributors[i];
    let cy = ty.t2_cert(a)?;
    let fa = ff.obj(a)?;
    let cx = tx.t2_cert(&fa)?;
    let image = cy.map_by(ff)?;
    if !inverse {
        let legs = cx
            .legs
            .iter()
            .map(|l| fib.compose(&d.inverse_at(a)?, l))
            .collect::<Result<Vec<_>>>()?;
        fib.mediate(&image, &legs)
    } else {
        let legs = cy
            .legs
            .iter()
            .map(|l| fib.compose(&d.at(a)?, &ff.mor(l)?))
            .collect::<Result<Vec<_>>>()?;
        fib.mediate(&cx, &legs)
    }
}

/// The pseudonatural `T₂: F ⇒ F` with components the fibre `T₂` functors.
pub fn t2_pseudonatural<C: Category>(ix: &TangentIndexingFunctor<C>) -> Result<Pseudonatural<C, C>> {
    let pf = &ix.pf;
    let base = &pf.base;
    let comps = ix.fibre_tangent.iter().map(|t| t.t2_functor()).collect();
    let mut ws = Vec::new();
    for (i, m) in base.morphism_ids().iter().enumerate() {
        if base.is_identity(m) {
            continue;
        }
        let (x, y) = (pf.src_pos(m)?, pf.tgt_pos(m)?);
        let (a, b) = (ix.clone(), ix.clone());
        let cell = Cell::new(move |o| t2_witness(&a, i, x, y, o, false)).with_inverse(move |o| t2_witness(&b, i, x, y, o, true));
        ws.push((m.clone(), cell));
    }
    Pseudonatural::new("T₂", pf.clone(), pf.clone(), comps, ws)
}

/// The tangent object of an indexing functor. The pseudonatural `T` carries
/// the witnesses `T_f⁻¹`.
pub fn indexing_to_tangent_object<C: Category>(ix: &TangentIndexingFunctor<C>) -> Result<TangentObjectData<C>> {
    let pf = ix.pf.clone();
    let t = Arc::new(ix.tangent_pseudonatural()?);
    let t2 = Arc::new(t2_pseudonatural(ix)?);
    let t_sq = Arc::new(vertical_compose(&t, &t)?);
    let id = Arc::new(Pseudonatural::identity(&pf));
    let cells = |pick: &dyn Fn(&TangentStructure<C>) -> NatTrans<C, C>| -> Vec<Cell<C, C>> {
        ix.fibre_tangent.iter().map(|ts| Cell::from_nat(&pick(ts))).collect()
    };
    let p = Modification::new("p", t.clone(), id.clone(), cells(&|ts| ts.p.clone()))?;
    let zero = Modification::new("0", id.clone(), t.clone(), cells(&|ts| ts.zero.clone()))?;
    let add = Modification::new("add", t2.clone(), t.clone(), cells(&|ts| ts.add_nat()))?;
    let lift = Modification::new("ℓ", t.clone(), t_sq.clone(), cells(&|ts| ts.lift.clone()))?;
    let flip = Modification::new("c", t_sq.clone(), t_sq.clone(), cells(&|ts| ts.flip.clone()))?;
    Ok(TangentObjectData {
        pf,
        t,
        t2,
        t_sq,
        id,
        p,
        zero,
        add,
        lift,
        flip,
        pullbacks: ix.fibre_tangent.iter().map(|ts| ts.pullback_provider()).collect(),
    })
}

/// The indexing functor of a tangent object: fibre structures from the
/// components, distributors `T_f` the inverses of the witnesses of `T`.
pub fn tangent_object_to_indexing<C: Category>(obj: &TangentObjectData<C>) -> Result<TangentIndexingFunctor<C>> {
    let base = &obj.pf.base;
    let ts = (0..base.object_count()).map(|x| Arc::new(obj.fibre_structure(x))).collect();
    let ds = base
        .morphism_ids()
        .iter()
        .enumerate()
        .filter(|(_, m)| !base.is_identity(m))
        .map(|(i, m)| (m.clone(), Cell::from_nat(&obj.t.witness_at(i).inverse())))
        .collect();
    TangentIndexingFunctor::new("indexing of tangent object", obj.pf.clone(), ts, ds)
}

/// Descriptor-level agreement of two indexing functors over the same
/// pseudofunctor: tangent functors on objects and morphisms, every structure
/// map, and every distributor and its inverse.
pub fn compare_indexing<C: Category>(
    a: &TangentIndexingFunctor<C>,
    b: &TangentIndexingFunctor<C>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    if !Arc::ptr_eq(&a.pf, &b.pf) {
        return structural("indexing functors over different pseudofunctors");
    }
    let pf = &a.pf;
    let base = &pf.base;
    let mut report = VerificationReport::new("indexing functor round trip");
    let mut tf = LawTally::new("tangent functors agree", "round-trip.tangent-functor");
    let mut maps = LawTally::new("structure maps agree", "round-trip.structure-maps");
    let mut dist = LawTally::new("distributors agree", "round-trip.distributors");
    for x in 0..base.object_count() {
        let fib = pf.fibre_at(x);
        let scope = fibre_scope(&**fib, samples, x)?;
        let (sa, sb) = (&a.fibre_tangent[x], &b.fibre_tangent[x]);
        let w = |o: &C::Obj| json!({"fibre": base.object_list()[x], "object": fib.obj_json(o)});
        for o in &scope.objects {
            tf.record(sa.t.obj(o)? == sb.t.obj(o)?, || w(o));
            let pairs = [
                (sa.p.at(o)?, sb.p.at(o)?),
                (sa.zero.at(o)?, sb.zero.at(o)?),
                (sa.add_at(o)?, sb.add_at(o)?),
                (sa.lift.at(o)?, sb.lift.at(o)?),
                (sa.flip.at(o)?, sb.flip.at(o)?),
            ];
            for (k, (l, r)) in pairs.iter().enumerate() {
                maps.record(l == r, || {
                    let mut v = w(o);
                    v["map"] = json!(["p", "0", "+", "ℓ", "c"][k]);
                    v
                });
            }
        }
        for m in &scope.morphisms {
            tf.record(sa.t.mor(m)? == sb.t.mor(m)?, || json!({"fibre": base.object_list()[x], "morphism": fib.mor_json(m)}));
        }
    }
    for (i, m) in base.morphism_ids().iter().enumerate() {
        let y = pf.tgt_pos(m)?;
        let fib = pf.fibre_at(y);
        let scope = fibre_scope(&**fib, samples, y)?;
        for o in &scope.objects {
            let (da, db) = (&a.distributors[i], &b.distributors[i]);
            dist.record(da.at(o)? == db.at(o)? && da.inverse_at(o)? == db.inverse_at(o)?, || {
                json!({"morphism": m, "object": fib.obj_json(o)})
            });
        }
    }
    tf.finish(&mut report);
    maps.finish(&mut report);
    dist.finish(&mut report);
    Ok(report)
}

/// Descriptor-level agreement of two tangent objects over the same
/// pseudofunctor: components and witnesses of `T`, and every modification.
pub fn compare_tangent_objects<C: Category>(
    a: &TangentObjectData<C>,
    b: &TangentObjectData<C>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    if !Arc::ptr_eq(&a.pf, &b.pf) {
        return structural("tangent objects over different pseudofunctors");
    }
    let pf = &a.pf;
    let base = &pf.base;
    let mut report = VerificationReport::new("tangent object round trip");
    let mut comps = LawTally::new("components of T and the modifications agree", "round-trip.components");
    let mut wit = LawTally::new("witnesses of T agree", "round-trip.witnesses");
    for x in 0..base.object_count() {
        let fib = pf.fibre_at(x);
        let scope = fibre_scope(&**fib, samples, x)?;
        for o in &scope.objects {
            let ok = a.t.component_at(x).obj(o)? == b.t.component_at(x).obj(o)?
                && a.p.component_at(x).at(o)? == b.p.component_at(x).at(o)?
                && a.zero.component_at(x).at(o)? == b.zero.component_at(x).at(o)?
                && a.add.component_at(x).at(o)? == b.add.component_at(x).at(o)?
                && a.lift.component_at(x).at(o)? == b.lift.component_at(x).at(o)?
                && a.flip.component_at(x).at(o)? == b.flip.component_at(x).at(o)?;
            comps.record(ok, || json!({"fibre": base.object_list()[x], "object": fib.obj_json(o)}));
        }
    }
    for (i, m) in base.morphism_ids().iter().enumerate() {
        let y = pf.tgt_pos(m)?;
        let fib = pf.fibre_at(y);
        let scope = fibre_scope(&**fib, samples, y)?;
        for o in &scope.objects {
            wit.record(a.t.witness_at(i).at(o)? == b.t.witness_at(i).at(o)?, || json!({"morphism": m, "object": fib.obj_json(o)}));
        }
    }
    comps.finish(&mut report);
    wit.finish(&mut report);
    Ok(report)
}

/// Pseudonaturality of `T` and `T₂`, the modification squares, and at each
/// fibre object the commutative-monoid laws, the pasting equations of a
/// tangent object (with whiskering read componentwise), and the
/// lift-universality square as a pointwise pullback.
pub fn verify_tangent_object<C: Category>(
    obj: &TangentObjectData<C>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    let pf = &obj.pf;
    let base = &pf.base;
    let mut report = VerificationReport::new("tangent object");
    report.absorb("T", verify_pseudonatural(&obj.t, samples)?);
    report.absorb("T₂", verify_pseudonatural(&obj.t2, samples)?);
    for m in [&obj.p, &obj.zero, &obj.add, &obj.lift, &obj.flip] {
        report.absorb(&m.name, verify_modification(m, samples)?);
    }
    let mut monoid = LawTally::new("(T, add, 0) is a commutative monoid over p", "tangent-object.monoid");
    let mut l1a = LawTally::new("ℓ∘add = T(add)∘(ℓ×ℓ)", "tangent-object.line1.lift-add");
    let mut l1b = LawTally::new("c∘add_T = T(add)∘(c×c)", "tangent-object.line1.flip-add");
    let mut l2a = LawTally::new("T(p) = p_T∘c", "tangent-object.line2.projection");
    let mut l2b = LawTally::new("T(0) = c∘0_T", "tangent-object.line2.zero");
    let mut l3a = LawTally::new("c∘ℓ = ℓ", "tangent-object.line3.flip-lift");
    let mut l3b = LawTally::new("c∘c = id", "tangent-object.line3.involution");
    let mut l4a = LawTally::new("ℓ_T∘ℓ = T(ℓ)∘ℓ", "tangent-object.line4.lift-lift");
    let mut l4b = LawTally::new("T(ℓ)∘c = c_T∘T(c)∘ℓ_T", "tangent-object.line4.lift-flip");
    let mut l5 = LawTally::new("c_T∘T(c)∘c_T = T(c)∘c_T∘T(c)", "tangent-object.line5.yang-baxter");
    let mut uni = LawTally::new("add∘(ℓ×0) and p∘π1 form a pointwise pullback over T(p), 0", "tangent-object.lift-universality");
    let mut certified = 0usize;
    for x in 0..base.object_count() {
        let ts = obj.fibre_structure(x);
        let c = &*ts.carrier;
        let scope = fibre_scope(c, samples, x)?;
        for a in &scope.objects {
            let w = || json!({"fibre": base.object_list()[x], "object": c.obj_json(a)});
            let ta = ts.t.obj(a)?;
            let (p, z, add, l, fl) = (ts.p.at(a)?, ts.zero.at(a)?, ts.add_at(a)?, ts.lift.at(a)?, ts.flip.at(a)?);
            let t2 = ts.t2_cert(a)?;
            let (pi1, pi2) = (t2.legs[0].clone(), t2.legs[1].clone());
            // commutative monoid in the slice over a
            record_eq(c, &mut monoid, c.compose(&p, &z), c.identity(a), w)?;
            record_eq(c, &mut monoid, c.compose(&p, &add), c.compose(&p, &pi1), w)?;
            let unit = ts.pair(a, &c.compose(&z, &p)?, &c.identity(&ta)?).and_then(|m| c.compose(&add, &m));
            record_eq(c, &mut monoid, unit, c.identity(&ta), w)?;
            let swap = ts.pair(a, &pi2, &pi1).and_then(|m| c.compose(&add, &m));
            record_eq(c, &mut monoid, swap, Ok(add.clone()), w)?;
            let t3 = ts.t3_cert(a)?;
            let (q1, q2) = (&t3.legs[0], &t3.legs[1]);
            let left = (|| c.compose(&add, &ts.pair(a, &c.compose(&add, q1)?, q2)?))();
            let right = (|| {
                let bc = ts.pair(a, &c.compose(&pi2, q1)?, q2)?;
                c.compose(&add, &ts.pair(a, &c.compose(&pi1, q1)?, &c.compose(&add, &bc)?)?)
            })();
            record_eq(c, &mut monoid, left, right, w)?;

            let tt2 = t2.map_by(&ts.t)?;
            let lhs = (|| {
                let m = c.mediate(&tt2, &[c.compose(&l, &pi1)?, c.compose(&l, &pi2)?])?;
                c.compose(&ts.t.mor(&add)?, &m)
            })();
            record_eq(c, &mut l1a, c.compose(&l, &add), lhs, w)?;
            let rhs = (|| {
                let m = c.mediate(&tt2, &[c.compose(&fl, &ts.t2_cert(&ta)?.legs[0])?, c.compose(&fl, &ts.t2_cert(&ta)?.legs[1])?])?;
                c.compose(&ts.t.mor(&add)?, &m)
            })();
            record_eq(c, &mut l1b, c.compose(&fl, &ts.add_at(&ta)?), rhs, w)?;
            record_eq(c, &mut l2a, ts.t.mor(&p), c.compose(&ts.p.at(&ta)?, &fl), w)?;
            record_eq(c, &mut l2b, ts.t.mor(&z), c.compose(&fl, &ts.zero.at(&ta)?), w)?;
            record_eq(c, &mut l3a, c.compose(&fl, &l), Ok(l.clone()), w)?;
            record_eq(c, &mut l3b, c.compose(&fl, &fl), c.identity(&ts.t.obj(&ta)?), w)?;
            let (lt, tl, ct, tc) = (ts.lift.at(&ta)?, ts.t.mor(&l)?, ts.flip.at(&ta)?, ts.t.mor(&fl)?);
            record_eq(c, &mut l4a, c.compose(&lt, &l), c.compose(&tl, &l), w)?;
            record_eq(c, &mut l4b, c.compose(&tl, &fl), chain(c, &[ct.clone(), tc.clone(), lt.clone()]), w)?;
            record_eq(c, &mut l5, chain(c, &[ct.clone(), tc.clone(), ct.clone()]), chain(c, &[tc, ct.clone(), ts.t.mor(&fl)?]), w)?;

            let square = (|| {
                let inner = c.mediate(&tt2, &[c.compose(&l, &pi1)?, c.compose(&ts.zero.at(&ta)?, &pi2)?])?;
                let nu = c.compose(&ts.t.mor(&add)?, &inner)?;
                Ok(LimitCertificate::pullback(ts.t.mor(&p)?, z.clone(), t2.apex.clone(), nu, c.compose(&p, &pi1)?))
            })();
            record_limit(c, &mut uni, &mut certified, square, w)?;
        }
    }
    for t in [monoid, l1a, l1b, l2a, l2b, l3a, l3b, l4a, l4b, l5, uni] {
        t.finish(&mut report);
    }
    if certified > 0 {
        report.certified("lift universality", "tangent-object.lift-universality", "symbolic fibres: square commutes, universality certified");
    }
    Ok(report)
}
