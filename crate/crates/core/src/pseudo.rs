//! Pseudofunctors `F: 𝒞^op → Cat` on a finite base, pseudonatural
//! transformations and modifications.
//!
//! Conventions, fixed throughout the crate:
//! - for `f: X → Y` the transition functor is `F(f): F(Y) → F(X)`;
//! - for `f: X → Y`, `g: Y → Z` the compositor is `φ_{f,g}: F(f)∘F(g) ⇒ F(g∘f)`;
//! - a pseudonatural `α: F ⇒ G` has witnesses `α_f: α_X∘F(f) ⇒ G(f)∘α_Y`.

use crate::catcore::{verify_functor, verify_naturality, Category, FiniteCategory, Functor, NatTrans, Samples, Scope};
use crate::error::{structural, CatError, Result};
use crate::report::{LawTally, VerificationReport};
use serde_json::json;
use std::collections::HashMap;
use std::sync::Arc;

type CompArc<S, T> = Arc<dyn Fn(&<S as Category>::Obj) -> Result<<T as Category>::Mor> + Send + Sync>;

/// Component data for a 2-cell: a component family and an optional inverse family.
pub struct Cell<S: Category, T: Category> {
    comp: CompArc<S, T>,
    inv: Option<CompArc<S, T>>,
}

impl<S: Category, T: Category> Clone for Cell<S, T> {
    fn clone(&self) -> Self {
        Cell {
            comp: self.comp.clone(),
            inv: self.inv.clone(),
        }
    }
}

impl<S: Category, T: Category> Cell<S, T> {
    pub fn new(comp: impl Fn(&S::Obj) -> Result<T::Mor> + Send + Sync + 'static) -> Self {
        Cell {
            comp: Arc::new(comp),
            inv: None,
        }
    }

    pub fn with_inverse(mut self, inv: impl Fn(&S::Obj) -> Result<T::Mor> + Send + Sync + 'static) -> Self {
        self.inv = Some(Arc::new(inv));
        self
    }

    pub fn from_nat(n: &NatTrans<S, T>) -> Self {
        let a = n.clone();
        let mut cell = Cell::new(move |x| a.at(x));
        if n.has_explicit_inverse() {
            let b = n.clone();
            cell = cell.with_inverse(move |x| b.inverse_at(x));
        }
        cell
    }

    pub(crate) fn into_nat(self, label: String, source: Functor<S, T>, target: Functor<S, T>) -> NatTrans<S, T> {
        let comp = self.comp;
        let n = NatTrans::new(label, source, target, move |a| comp(a));
        match self.inv {
            Some(inv) => n.with_inverse(move |a| inv(a)),
            None => n,
        }
    }
}

/// Per-fibre samples, indexed by base object position. Ignored for finite fibres.
pub type FibreSamples<C> = Vec<Samples<C>>;

pub(crate) fn fibre_scope<C: Category>(fib: &C, samples: Option<&FibreSamples<C>>, x: usize) -> Result<Scope<C>> {
    Scope::of(fib, samples.and_then(|s| s.get(x)))
}

/// Invertibility verdict: `Some(b)` when decided, `None` when the backend
/// cannot decide and no explicit inverse was supplied.
pub(crate) fn invertible<C: Category>(c: &C, m: &C::Mor, explicit: Option<C::Mor>) -> Result<Option<bool>> {
    if let Some(g) = explicit {
        if c.source(&g) != c.target(m) || c.target(&g) != c.source(m) {
            return Ok(Some(false));
        }
        let ok = c.compose(&g, m)? == c.identity(&c.source(m))? && c.compose(m, &g)? == c.identity(&c.target(m))?;
        return Ok(Some(ok));
    }
    match c.inverse(m) {
        Ok(r) => Ok(Some(r.is_some())),
        Err(CatError::Capability(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn explicit_inverse<S: Category, T: Category>(n: &NatTrans<S, T>, a: &S::Obj) -> Result<Option<T::Mor>> {
    if n.has_explicit_inverse() {
        Ok(Some(n.inverse_at(a)?))
    } else {
        Ok(None)
    }
}

/// Records invertibility of every component of `n` over `objects`.
pub(crate) fn tally_invertible<S: Category, T: Category>(
    tally: &mut LawTally,
    undecided: &mut usize,
    n: &NatTrans<S, T>,
    objects: &[S::Obj],
    witness: impl Fn(&S::Obj) -> serde_json::Value,
) -> Result<()> {
    let t = &*n.source.target;
    for a in objects {
        let m = n.at(a)?;
        match invertible(t, &m, explicit_inverse(n, a)?)? {
            Some(ok) => tally.record(ok, || witness(a)),
            None => *undecided += 1,
        }
    }
    Ok(())
}

/// A normalized pseudofunctor on a finite base category.
pub struct Pseudofunctor<C: Category> {
    pub name: String,
    pub base: Arc<FiniteCategory>,
    fibres: Vec<Arc<C>>,
    transitions: Vec<Functor<C, C>>,
    compositors: HashMap<(usize, usize), NatTrans<C, C>>,
}

impl<C: Category> Pseudofunctor<C> {
    /// Builds a normalized pseudofunctor. `fibres` are in base object order.
    /// Transitions are supplied for non-identity morphisms only; compositors
    /// for pairs of non-identity morphisms, defaulting to identity components
    /// when omitted (a strict pair).
    pub fn new(
        name: impl Into<String>,
        base: Arc<FiniteCategory>,
        fibres: Vec<Arc<C>>,
        transitions: Vec<(String, Functor<C, C>)>,
        compositors: Vec<((String, String), Cell<C, C>)>,
    ) -> Result<Self> {
        let name = name.into();
        if fibres.len() != base.object_count() {
            return structural(format!("{name}: {} fibres for {} base objects", fibres.len(), base.object_count()));
        }
        let mut given: HashMap<usize, Functor<C, C>> = HashMap::new();
        for (m, func) in transitions {
            let i = base.morphism_position(&m)?;
            if base.is_identity(&m) {
                return structural(format!("{name}: normalization: F({m}) is fixed to the identity functor"));
            }
            given.insert(i, func);
        }
        let ids = base.morphism_ids();
        let mut trans = Vec::with_capacity(ids.len());
        for (i, m) in ids.iter().enumerate() {
            let x = base.object_position(&base.source(m))?;
            let y = base.object_position(&base.target(m))?;
            if base.is_identity(m) {
                trans.push(Functor::identity(fibres[x].clone()).relabel(format!("F({m})")));
                continue;
            }
            let func = given
                .remove(&i)
                .ok_or_else(|| CatError::Structural(format!("{name}: no transition functor for {m}")))?;
            if func.source.label() != fibres[y].label() || func.target.label() != fibres[x].label() {
                return structural(format!("{name}: F({m}) must map F({}) to F({})", base.target(m), base.source(m)));
            }
            trans.push(func);
        }
        let mut pf = Pseudofunctor {
            name,
            base: base.clone(),
            fibres,
            transitions: trans,
            compositors: HashMap::new(),
        };
        let mut cells: HashMap<(usize, usize), Cell<C, C>> = HashMap::new();
        for ((f, g), cell) in compositors {
            if base.is_identity(&f) || base.is_identity(&g) {
                return structural(format!("{}: normalization: compositor φ_({f},{g}) is fixed to the identity", pf.name));
            }
            if base.source(&g) != base.target(&f) {
                return structural(format!("{}: compositor φ_({f},{g}) for a non-composable pair", pf.name));
            }
            cells.insert((base.morphism_position(&f)?, base.morphism_position(&g)?), cell);
        }
        for f in &ids {
            for g in &ids {
                if base.source(g) != base.target(f) {
                    continue;
                }
                let (fi, gi) = (base.morphism_position(f)?, base.morphism_position(g)?);
                let gf = base.compose(g, f)?;
                let gfi = base.morphism_position(&gf)?;
                let src = pf.transitions[gi].then(&pf.transitions[fi]);
                let tgt = pf.transitions[gfi].clone();
                let cell = cells.remove(&(fi, gi)).unwrap_or_else(|| {
                    let (t1, t2) = (tgt.clone(), tgt.clone());
                    Cell::new(move |a| t1.target.identity(&t1.obj(a)?))
                        .with_inverse(move |a| t2.target.identity(&t2.obj(a)?))
                });
                let nat = cell.into_nat(format!("φ_({f},{g})"), src, tgt);
                pf.compositors.insert((fi, gi), nat);
            }
        }
        Ok(pf)
    }

    pub fn fibre(&self, x: &str) -> Result<&Arc<C>> {
        Ok(&self.fibres[self.base.object_position(x)?])
    }

    pub fn fibre_at(&self, x: usize) -> &Arc<C> {
        &self.fibres[x]
    }

    pub fn fibres(&self) -> &[Arc<C>] {
        &self.fibres
    }

    pub fn transition(&self, f: &str) -> Result<&Functor<C, C>> {
        Ok(&self.transitions[self.base.morphism_position(f)?])
    }

    pub fn transition_at(&self, i: usize) -> &Functor<C, C> {
        &self.transitions[i]
    }

    /// `φ_{f,g}: F(f)∘F(g) ⇒ F(g∘f)`.
    pub fn compositor(&self, f: &str, g: &str) -> Result<&NatTrans<C, C>> {
        let key = (self.base.morphism_position(f)?, self.base.morphism_position(g)?);
        self.compositors
            .get(&key)
            .ok_or_else(|| CatError::Structural(format!("{}: ({f},{g}) is not composable", self.name)))
    }

    /// Source position of a base morphism (the fibre its transition lands in).
    pub fn src_pos(&self, f: &str) -> Result<usize> {
        self.base.object_position(&self.base.source(&f.to_string()))
    }

    pub fn tgt_pos(&self, f: &str) -> Result<usize> {
        self.base.object_position(&self.base.target(&f.to_string()))
    }

    pub fn all_fibres_finite(&self) -> bool {
        self.fibres.iter().all(|f| f.is_finite())
    }

    /// The constant pseudofunctor on `base` with value `k`.
    pub fn constant(base: Arc<FiniteCategory>, k: Arc<C>) -> Result<Self> {
        let fibres = vec![k.clone(); base.object_count()];
        let trans = base
            .morphism_ids()
            .into_iter()
            .filter(|m| !base.is_identity(m))
            .map(|m| (m.clone(), Functor::identity(k.clone()).relabel(format!("F({m})"))))
            .collect();
        Pseudofunctor::new(format!("const({})", k.label()), base, fibres, trans, vec![])
    }

    /// Pairs `(f, g)` with `f: X→Y`, `g: Y→Z`, in base order.
    pub fn composable_pairs(&self) -> Vec<(String, String)> {
        let ids = self.base.morphism_ids();
        let mut out = Vec::new();
        for f in &ids {
            for g in &ids {
                if self.base.source(g) == self.base.target(f) {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
        out
    }
}

/// Normalization, functoriality of transitions, invertibility and naturality
/// of compositors, and compositor coherence on composable triples.
pub fn verify_pseudofunctor<C: Category>(
    pf: &Pseudofunctor<C>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("pseudofunctor {}", pf.name));
    let base = &pf.base;
    report.pass("F(id) is the identity functor and φ with an identity is the identity", "pseudofunctor.normalization", base.object_count());
    for m in base.morphism_ids() {
        if base.is_identity(&m) {
            continue;
        }
        let y = pf.tgt_pos(&m)?;
        let s = samples.and_then(|s| s.get(y));
        report.absorb(&format!("F({m})"), verify_functor(pf.transition(&m)?, s)?);
    }
    let mut inv = LawTally::new("compositor components are invertible", "pseudofunctor.compositor-invertible");
    let mut undecided = 0;
    for (f, g) in pf.composable_pairs() {
        let z = pf.tgt_pos(&g)?;
        let fib = pf.fibre_at(z);
        let scope = fibre_scope(&**fib, samples, z)?;
        let phi = pf.compositor(&f, &g)?;
        let tgt_cat = &*phi.source.target;
        for a in &scope.objects {
            let c = phi.at(a)?;
            if tgt_cat.source(&c) != phi.source.obj(a)? || tgt_cat.target(&c) != phi.target.obj(a)? {
                return structural(format!("{}: φ_({f},{g}) at {a} has wrong endpoints", pf.name));
            }
        }
        tally_invertible(&mut inv, &mut undecided, phi, &scope.objects, |a| {
            json!({"pair": [f, g], "object": fib.obj_json(a)})
        })?;
        report.absorb(&format!("φ_({f},{g})"), verify_naturality(phi, samples.and_then(|s| s.get(z)))?);
    }
    inv.finish(&mut report);
    if undecided > 0 {
        report.certified("compositor invertibility", "pseudofunctor.compositor-invertible", "backend cannot decide invertibility; components assumed invertible");
    }
    let mut coh = LawTally::new(
        "compositor coherence φ_(f,h∘g)∘F(f)(φ_(g,h)) = φ_(g∘f,h)∘φ_(f,g)F(h)",
        "pseudofunctor.coherence",
    );
    for (f, g) in pf.composable_pairs() {
        for h in base.morphism_ids() {
            if base.source(&h) != base.target(&g) {
                continue;
            }
            let w = pf.tgt_pos(&h)?;
            let fib = pf.fibre_at(w);
            let scope = fibre_scope(&**fib, samples, w)?;
            let hg = base.compose(&h, &g)?;
            let gf = base.compose(&g, &f)?;
            let ff = pf.transition(&f)?;
            let fh = pf.transition(&h)?;
            let out = pf.fibre_at(pf.src_pos(&f)?);
            for a in &scope.objects {
                let left = out.compose(&pf.compositor(&f, &hg)?.at(a)?, &ff.mor(&pf.compositor(&g, &h)?.at(a)?)?)?;
                let right = out.compose(&pf.compositor(&gf, &h)?.at(a)?, &pf.compositor(&f, &g)?.at(&fh.obj(a)?)?)?;
                coh.record(left == right, || {
                    json!({
                        "morphisms": [f, g, h],
                        "object": fib.obj_json(a),
                        "left": out.mor_json(&left),
                        "right": out.mor_json(&right),
                    })
                });
            }
        }
    }
    coh.finish(&mut report);
    Ok(report)
}

/// A pseudonatural transformation `α: F ⇒ G`.
pub struct Pseudonatural<C: Category, D: Category> {
    pub name: String,
    pub source: Arc<Pseudofunctor<C>>,
    pub target: Arc<Pseudofunctor<D>>,
    components: Vec<Functor<C, D>>,
    witnesses: Vec<NatTrans<C, D>>,
}

impl<C: Category, D: Category> Clone for Pseudonatural<C, D> {
    fn clone(&self) -> Self {
        Pseudonatural {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.clone(),
            witnesses: self.witnesses.clone(),
        }
    }
}

impl<C: Category, D: Category> Pseudonatural<C, D> {
    /// Witnesses are supplied for non-identity morphisms; `α_id` is the identity.
    pub fn new(
        name: impl Into<String>,
        source: Arc<Pseudofunctor<C>>,
        target: Arc<Pseudofunctor<D>>,
        components: Vec<Functor<C, D>>,
        witnesses: Vec<(String, Cell<C, D>)>,
    ) -> Result<Self> {
        let name = name.into();
        if !Arc::ptr_eq(&source.base, &target.base) && source.base.to_doc() != target.base.to_doc() {
            return structural(format!("{name}: source and target have different base categories"));
        }
        let base = source.base.clone();
        if components.len() != base.object_count() {
            return structural(format!("{name}: need one component per base object"));
        }
        let mut given: HashMap<usize, Cell<C, D>> = HashMap::new();
        for (m, cell) in witnesses {
            if base.is_identity(&m) {
                return structural(format!("{name}: the witness at {m} is fixed to the identity"));
            }
            given.insert(base.morphism_position(&m)?, cell);
        }
        let mut ws = Vec::new();
        for (i, m) in base.morphism_ids().iter().enumerate() {
            let x = source.src_pos(m)?;
            let y = source.tgt_pos(m)?;
            // α_X∘F(f) and G(f)∘α_Y, both functors F(Y) → G(X).
            let src = source.transition_at(i).then(&components[x]);
            let tgt = components[y].then(target.transition_at(i));
            let nat = if base.is_identity(m) {
                let (t1, t2) = (tgt.clone(), tgt.clone());
                Cell::new(move |a| t1.target.identity(&t1.obj(a)?))
                    .with_inverse(move |a| t2.target.identity(&t2.obj(a)?))
                    .into_nat(format!("{name}_{m}"), src, tgt)
            } else {
                given
                    .remove(&i)
                    .ok_or_else(|| CatError::Structural(format!("{name}: no witness for {m}")))?
                    .into_nat(format!("{name}_{m}"), src, tgt)
            };
            ws.push(nat);
        }
        Ok(Pseudonatural {
            name,
            source,
            target,
            components,
            witnesses: ws,
        })
    }

    pub fn component(&self, x: &str) -> Result<&Functor<C, D>> {
        Ok(&self.components[self.source.base.object_position(x)?])
    }

    pub fn component_at(&self, x: usize) -> &Functor<C, D> {
        &self.components[x]
    }

    /// `α_f: α_X∘F(f) ⇒ G(f)∘α_Y`.
    pub fn witness(&self, f: &str) -> Result<&NatTrans<C, D>> {
        Ok(&self.witnesses[self.source.base.morphism_position(f)?])
    }

    pub fn witness_at(&self, i: usize) -> &NatTrans<C, D> {
        &self.witnesses[i]
    }
}

impl<C: Category> Pseudonatural<C, C> {
    pub fn identity(pf: &Arc<Pseudofunctor<C>>) -> Self {
        let comps = pf
            .fibres()
            .iter()
            .map(|f| Functor::identity(f.clone()))
            .collect();
        let ws = pf
            .base
            .morphism_ids()
            .into_iter()
            .filter(|m| !pf.base.is_identity(m))
            .map(|m| {
                let t = pf.transition(&m).expect("transition").clone();
                let t2 = t.clone();
                (
                    m,
                    Cell::new(move |a| t.target.identity(&t.obj(a)?))
                        .with_inverse(move |a| t2.target.identity(&t2.obj(a)?)),
                )
            })
            .collect();
        Pseudonatural::new(format!("1[{}]", pf.name), pf.clone(), pf.clone(), comps, ws)
            .expect("identity pseudonatural")
    }
}

/// `β∘α` with `(β∘α)_X = β_X∘α_X` and witness
/// `(β∘α)_f = (β_f∗α_Y)∘(β_X∗α_f)`.
pub fn vertical_compose<C: Category, D: Category, E: Category>(
    beta: &Pseudonatural<D, E>,
    alpha: &Pseudonatural<C, D>,
) -> Result<Pseudonatural<C, E>> {
    if !Arc::ptr_eq(&alpha.target, &beta.source) {
        return structural(format!(
            "cannot compose {} after {}: target and source pseudofunctors differ",
            beta.name, alpha.name
        ));
    }
    let base = alpha.source.base.clone();
    let comps: Vec<Functor<C, E>> = alpha
        .components
        .iter()
        .zip(&beta.components)
        .map(|(a, b)| a.then(b))
        .collect();
    let mut ws = Vec::new();
    for (i, m) in base.morphism_ids().iter().enumerate() {
        if base.is_identity(m) {
            continue;
        }
        let x = alpha.source.src_pos(m)?;
        let y = alpha.source.tgt_pos(m)?;
        let (af, bf) = (alpha.witnesses[i].clone(), beta.witnesses[i].clone());
        let (bx, ay) = (beta.components[x].clone(), alpha.components[y].clone());
        let ex = beta.target.fibre_at(x).clone();
        let (af2, bf2, bx2, ay2, ex2) = (af.clone(), bf.clone(), bx.clone(), ay.clone(), ex.clone());
        let cell = Cell::new(move |a| ex.compose(&bf.at(&ay.obj(a)?)?, &bx.mor(&af.at(a)?)?))
            .with_inverse(move |a| ex2.compose(&bx2.mor(&af2.inverse_at(a)?)?, &bf2.inverse_at(&ay2.obj(a)?)?));
        ws.push((m.clone(), cell));
    }
    Pseudonatural::new(
        format!("{}∘{}", beta.name, alpha.name),
        alpha.source.clone(),
        beta.target.clone(),
        comps,
        ws,
    )
}

/// Functoriality of components, witness invertibility and naturality, and
/// the composition condition on composable pairs.
pub fn verify_pseudonatural<C: Category, D: Category>(
    alpha: &Pseudonatural<C, D>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    let (f_pf, g_pf) = (&alpha.source, &alpha.target);
    let base = &f_pf.base;
    let mut report = VerificationReport::new(format!("pseudonatural {}", alpha.name));
    for (x, comp) in alpha.components.iter().enumerate() {
        if comp.source.label() != f_pf.fibre_at(x).label() || comp.target.label() != g_pf.fibre_at(x).label() {
            return structural(format!("{}: component at {} has the wrong fibres", alpha.name, base.object_list()[x]));
        }
        report.absorb(&format!("{}[{}]", alpha.name, base.object_list()[x]), verify_functor(comp, samples.and_then(|s| s.get(x)))?);
    }
    report.pass("α_id is the identity", "pseudonatural.unit", base.object_count());
    let mut inv = LawTally::new("witness components are invertible", "pseudonatural.witness-invertible");
    let mut undecided = 0;
    for (i, m) in base.morphism_ids().iter().enumerate() {
        if base.is_identity(m) {
            continue;
        }
        let y = f_pf.tgt_pos(m)?;
        let fib = f_pf.fibre_at(y);
        let scope = fibre_scope(&**fib, samples, y)?;
        let w = &alpha.witnesses[i];
        let out = &*w.source.target;
        for a in &scope.objects {
            let c = w.at(a)?;
            if out.source(&c) != w.source.obj(a)? || out.target(&c) != w.target.obj(a)? {
                return structural(format!("{}: witness at {m} has wrong boundary at {a}", alpha.name));
            }
        }
        tally_invertible(&mut inv, &mut undecided, w, &scope.objects, |a| {
            json!({"morphism": m, "object": fib.obj_json(a)})
        })?;
        report.absorb(&format!("{}_{m}", alpha.name), verify_naturality(w, samples.and_then(|s| s.get(y)))?);
    }
    inv.finish(&mut report);
    if undecided > 0 {
        report.certified("witness invertibility", "pseudonatural.witness-invertible", "backend cannot decide invertibility; components assumed invertible");
    }
    let mut comp = LawTally::new(
        "α_(g∘f)∘α_X(φ_(f,g)) = φ'_(f,g)α_Z∘G(f)(α_g)∘α_f F(g)",
        "pseudonatural.composition",
    );
    for (f, g) in f_pf.composable_pairs() {
        let z = f_pf.tgt_pos(&g)?;
        let x = f_pf.src_pos(&f)?;
        let fib = f_pf.fibre_at(z);
        let out = g_pf.fibre_at(x);
        let scope = fibre_scope(&**fib, samples, z)?;
        let gf = base.compose(&g, &f)?;
        for a in &scope.objects {
            let left = out.compose(
                &alpha.witness(&gf)?.at(a)?,
                &alpha.components[x].mor(&f_pf.compositor(&f, &g)?.at(a)?)?,
            )?;
            let right = out.compose(
                &g_pf.compositor(&f, &g)?.at(&alpha.components[z].obj(a)?)?,
                &out.compose(
                    &g_pf.transition(&f)?.mor(&alpha.witness(&g)?.at(a)?)?,
                    &alpha.witness(&f)?.at(&f_pf.transition(&g)?.obj(a)?)?,
                )?,
            )?;
            comp.record(left == right, || {
                json!({
                    "pair": [f, g],
                    "object": fib.obj_json(a),
                    "left": out.mor_json(&left),
                    "right": out.mor_json(&right),
                })
            });
        }
    }
    comp.finish(&mut report);
    Ok(report)
}

/// A modification `ρ: α ⇛ β` between parallel pseudonaturals.
pub struct Modification<C: Category, D: Category> {
    pub name: String,
    pub source: Arc<Pseudonatural<C, D>>,
    pub target: Arc<Pseudonatural<C, D>>,
    components: Vec<NatTrans<C, D>>,
}

impl<C: Category, D: Category> Clone for Modification<C, D> {
    fn clone(&self) -> Self {
        Modification {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.clone(),
        }
    }
}

impl<C: Category, D: Category> Modification<C, D> {
    /// `components[X]: α_X ⇒ β_X`, as cells in base object order.
    pub fn new(
        name: impl Into<String>,
        source: Arc<Pseudonatural<C, D>>,
        target: Arc<Pseudonatural<C, D>>,
        components: Vec<Cell<C, D>>,
    ) -> Result<Self> {
        let name = name.into();
        if !Arc::ptr_eq(&source.source, &target.source) || !Arc::ptr_eq(&source.target, &target.target) {
            return structural(format!("{name}: source and target transformations are not parallel"));
        }
        let base = &source.source.base;
        if components.len() != base.object_count() {
            return structural(format!("{name}: need one component per base object"));
        }
        let comps = components
            .into_iter()
            .enumerate()
            .map(|(x, cell)| {
                cell.into_nat(
                    format!("{name}[{}]", base.object_list()[x]),
                    source.components[x].clone(),
                    target.components[x].clone(),
                )
            })
            .collect();
        Ok(Modification {
            name,
            source,
            target,
            components: comps,
        })
    }

    pub fn component(&self, x: &str) -> Result<&NatTrans<C, D>> {
        Ok(&self.components[self.source.source.base.object_position(x)?])
    }

    pub fn component_at(&self, x: usize) -> &NatTrans<C, D> {
        &self.components[x]
    }

    pub fn identity(alpha: &Arc<Pseudonatural<C, D>>) -> Self {
        let cells = alpha
            .components
            .iter()
            .map(|f| Cell::from_nat(&NatTrans::identity(f)))
            .collect();
        Modification::new(format!("1[{}]", alpha.name), alpha.clone(), alpha.clone(), cells)
            .expect("identity modification")
    }
}

/// Naturality of each component and the modification square
/// `G(f)(ρ_Y)∘α_f = β_f∘ρ_X F(f)` at every `f`.
pub fn verify_modification<C: Category, D: Category>(
    rho: &Modification<C, D>,
    samples: Option<&FibreSamples<C>>,
) -> Result<VerificationReport> {
    let (alpha, beta) = (&rho.source, &rho.target);
    let f_pf = &alpha.source;
    let g_pf = &alpha.target;
    let base = &f_pf.base;
    let mut report = VerificationReport::new(format!("modification {}", rho.name));
    for (x, c) in rho.components.iter().enumerate() {
        let fib = f_pf.fibre_at(x);
        let scope = fibre_scope(&**fib, samples, x)?;
        let out = g_pf.fibre_at(x);
        for a in &scope.objects {
            let m = c.at(a)?;
            if out.source(&m) != alpha.components[x].obj(a)? || out.target(&m) != beta.components[x].obj(a)? {
                return structural(format!("{}: component at {} has wrong endpoints at {a}", rho.name, base.object_list()[x]));
            }
        }
        report.absorb(&c.label, verify_naturality(c, samples.and_then(|s| s.get(x)))?);
    }
    let mut sq = LawTally::new("modification square G(f)(ρ_Y)∘α_f = β_f∘ρ_X F(f)", "modification.square");
    for (i, m) in base.morphism_ids().iter().enumerate() {
        let x = f_pf.src_pos(m)?;
        let y = f_pf.tgt_pos(m)?;
        let fib = f_pf.fibre_at(y);
        let out = g_pf.fibre_at(x);
        let scope = fibre_scope(&**fib, samples, y)?;
        for a in &scope.objects {
            let left = out.compose(
                &g_pf.transition_at(i).mor(&rho.components[y].at(a)?)?,
                &alpha.witnesses[i].at(a)?,
            )?;
            let right = out.compose(
                &beta.witnesses[i].at(a)?,
                &rho.components[x].at(&f_pf.transition_at(i).obj(a)?)?,
            )?;
            sq.record(left == right, || {
                json!({
                    "morphism": m,
                    "object": fib.obj_json(a),
                    "left": out.mor_json(&left),
                    "right": out.mor_json(&right),
                })
            });
        }
    }
    sq.finish(&mut report);
    Ok(report)
}

/// `α∗ρ`-style whiskering of a modification by a pseudonatural on the left:
/// components `γ_X∗ρ_X`, a modification `γ∘α ⇛ γ∘β`.
pub fn whisker_modification<C: Category, D: Category, E: Category>(
    gamma: &Pseudonatural<D, E>,
    rho: &Modification<C, D>,
    gamma_alpha: Arc<Pseudonatural<C, E>>,
    gamma_beta: Arc<Pseudonatural<C, E>>,
) -> Result<Modification<C, E>> {
    let cells = rho
        .components
        .iter()
        .zip(&gamma.components)
        .map(|(r, g)| Cell::from_nat(&r.left_whisker(g)))
        .collect();
    Modification::new(format!("{}∗{}", gamma.name, rho.name), gamma_alpha, gamma_beta, cells)
}
