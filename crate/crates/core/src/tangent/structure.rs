use crate::catcore::{
    chain, find_pullback, limit_diagnostic, verify_functor, verify_naturality, Category, Functor, LimitCertificate,
    NatTrans, Samples, Scope,
};
use crate::error::{capability, CatError, Result};
use crate::report::{LawTally, VerificationReport};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Produces a pullback certificate for a cospan `f: A → C ← B: g`.
pub type PullbackProvider<C> =
    Arc<dyn Fn(&<C as Category>::Mor, &<C as Category>::Mor) -> Result<LimitCertificate<C>> + Send + Sync>;

type ObjMor<C> = Arc<dyn Fn(&<C as Category>::Obj) -> Result<<C as Category>::Mor> + Send + Sync>;

/// A tangent structure `(T, p, 0, +, ℓ, c)` on a carrier category, with a
/// pullback provider realizing the pullback powers of `p`.
pub struct TangentStructure<C: Category> {
    pub name: String,
    pub carrier: Arc<C>,
    pub t: Functor<C, C>,
    pub p: NatTrans<C, C>,
    pub zero: NatTrans<C, C>,
    pub lift: NatTrans<C, C>,
    pub flip: NatTrans<C, C>,
    add: ObjMor<C>,
    pullbacks: PullbackProvider<C>,
}

impl<C: Category> Clone for TangentStructure<C> {
    fn clone(&self) -> Self {
        TangentStructure {
            name: self.name.clone(),
            carrier: self.carrier.clone(),
            t: self.t.clone(),
            p: self.p.clone(),
            zero: self.zero.clone(),
            lift: self.lift.clone(),
            flip: self.flip.clone(),
            add: self.add.clone(),
            pullbacks: self.pullbacks.clone(),
        }
    }
}

/// Pullbacks by exhaustive search, with the canonical answer when one leg
/// is an identity.
pub fn finite_pullbacks<C: Category>(carrier: Arc<C>) -> PullbackProvider<C> {
    let cache: Mutex<HashMap<(C::Mor, C::Mor), LimitCertificate<C>>> = Mutex::new(HashMap::new());
    Arc::new(move |f: &C::Mor, g: &C::Mor| {
        let c = &*carrier;
        if let Some(cert) = trivial_pullback(c, f, g)? {
            return Ok(cert);
        }
        let key = (f.clone(), g.clone());
        if let Some(cert) = cache.lock().expect("pullback cache").get(&key) {
            return Ok(cert.clone());
        }
        let cert = find_pullback(c, f, g)?
            .ok_or_else(|| CatError::Hypothesis(format!("{}: no pullback of {f} and {g}", c.label())))?;
        cache.lock().expect("pullback cache").insert(key, cert.clone());
        Ok(cert)
    })
}

/// The pullback of `f` along an identity (or of an identity along `g`).
pub fn trivial_pullback<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<Option<LimitCertificate<C>>> {
    if *g == c.identity(&c.source(g))? {
        let a = c.source(f);
        return Ok(Some(LimitCertificate::pullback(f.clone(), g.clone(), a.clone(), c.identity(&a)?, f.clone())));
    }
    if *f == c.identity(&c.source(f))? {
        let b = c.source(g);
        return Ok(Some(LimitCertificate::pullback(f.clone(), g.clone(), b.clone(), g.clone(), c.identity(&b)?)));
    }
    Ok(None)
}

impl<C: Category> TangentStructure<C> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        carrier: Arc<C>,
        t: Functor<C, C>,
        p: NatTrans<C, C>,
        zero: NatTrans<C, C>,
        add: impl Fn(&C::Obj) -> Result<C::Mor> + Send + Sync + 'static,
        lift: NatTrans<C, C>,
        flip: NatTrans<C, C>,
        pullbacks: PullbackProvider<C>,
    ) -> Self {
        TangentStructure {
            name: name.into(),
            carrier,
            t,
            p,
            zero,
            lift,
            flip,
            add: Arc::new(add),
            pullbacks,
        }
    }

    /// The identity tangent structure 𝕀: `T = Id` and every structure map an
    /// identity, with `T₂X = X`.
    pub fn identity(carrier: Arc<C>, pullbacks: Option<PullbackProvider<C>>) -> Self {
        let id = Functor::identity(carrier.clone());
        let unit = NatTrans::identity(&id);
        let c1 = carrier.clone();
        let fallback = pullbacks;
        let c2 = carrier.clone();
        let provider: PullbackProvider<C> = Arc::new(move |f: &C::Mor, g: &C::Mor| {
            if let Some(cert) = trivial_pullback(&*c2, f, g)? {
                return Ok(cert);
            }
            match &fallback {
                Some(p) => p(f, g),
                None if c2.is_finite() => finite_pullbacks(c2.clone())(f, g),
                None => capability(format!("{}: no pullback provider for {f}, {g}", c2.label())),
            }
        });
        TangentStructure::new(
            "𝕀",
            carrier,
            id,
            unit.clone().relabel("p"),
            unit.clone().relabel("0"),
            move |a| c1.identity(a),
            unit.clone().relabel("ℓ"),
            unit.relabel("c"),
            provider,
        )
    }

    pub fn relabel(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn pullback(&self, f: &C::Mor, g: &C::Mor) -> Result<LimitCertificate<C>> {
        (self.pullbacks)(f, g)
    }

    pub fn pullback_provider(&self) -> PullbackProvider<C> {
        self.pullbacks.clone()
    }

    /// `T₂X`, the pullback of `p_X` against itself.
    pub fn t2_cert(&self, x: &C::Obj) -> Result<LimitCertificate<C>> {
        let p = self.p.at(x)?;
        self.pullback(&p, &p)
    }

    /// `T₃X`, the pullback of `p_X∘π1: T₂X → X` against `p_X`, with legs
    /// `q1: T₃X → T₂X` and `q2: T₃X → TX`.
    pub fn t3_cert(&self, x: &C::Obj) -> Result<LimitCertificate<C>> {
        let c = &*self.carrier;
        let t2 = self.t2_cert(x)?;
        let p = self.p.at(x)?;
        self.pullback(&c.compose(&p, &t2.legs[0])?, &p)
    }

    /// The unique map into `T₂X` with legs `a` and `b`.
    pub fn pair(&self, x: &C::Obj, a: &C::Mor, b: &C::Mor) -> Result<C::Mor> {
        self.carrier.mediate(&self.t2_cert(x)?, &[a.clone(), b.clone()])
    }

    pub fn add_at(&self, x: &C::Obj) -> Result<C::Mor> {
        (self.add)(x)
    }

    /// `T₂(f) = ⟨T(f)∘π1, T(f)∘π2⟩`.
    pub fn t2_mor(&self, f: &C::Mor) -> Result<C::Mor> {
        let c = &*self.carrier;
        let (x, y) = (c.source(f), c.target(f));
        let src = self.t2_cert(&x)?;
        let tf = self.t.mor(f)?;
        let a = c.compose(&tf, &src.legs[0])?;
        let b = c.compose(&tf, &src.legs[1])?;
        self.pair(&y, &a, &b)
    }

    pub fn t2_functor(&self) -> Functor<C, C> {
        let (a, b) = (self.clone(), self.clone());
        Functor::new(
            format!("{}₂", self.t.label),
            self.carrier.clone(),
            self.carrier.clone(),
            move |x| Ok(a.t2_cert(x)?.apex),
            move |f| b.t2_mor(f),
        )
    }

    /// `+: T₂ ⇒ T` as a natural transformation.
    pub fn add_nat(&self) -> NatTrans<C, C> {
        let add = self.add.clone();
        NatTrans::new("+", self.t2_functor(), self.t.clone(), move |x| add(x))
    }

    pub fn t_squared(&self) -> Functor<C, C> {
        self.t.then(&self.t)
    }

    /// The vertical-lift fork `ν: T₂X → T²X ⇉ TX` with
    /// `ν = T(+)∘⟨ℓ∘π1, 0_T∘π2⟩` and parallel pair `T(p)`, `0∘p∘p_T`.
    pub fn lift_fork(&self, x: &C::Obj) -> Result<LimitCertificate<C>> {
        let c = &*self.carrier;
        let t2 = self.t2_cert(x)?;
        let tx = self.t.obj(x)?;
        let tt2 = t2.map_by(&self.t)?;
        let a = c.compose(&self.lift.at(x)?, &t2.legs[0])?;
        let b = c.compose(&self.zero.at(&tx)?, &t2.legs[1])?;
        let inner = c.mediate(&tt2, &[a, b])?;
        let nu = c.compose(&self.t.mor(&self.add_at(x)?)?, &inner)?;
        let tp = self.t.mor(&self.p.at(x)?)?;
        let other = chain(c, &[self.zero.at(x)?, self.p.at(x)?, self.p.at(&tx)?])?;
        Ok(LimitCertificate::equalizer(tp, other, t2.apex, nu))
    }
}

/// Records `lhs = rhs`, treating a construction failure on either side as a
/// law failure with the error as witness. Resource errors propagate.
pub(crate) fn record_eq<C: Category>(
    c: &C,
    tally: &mut LawTally,
    lhs: Result<C::Mor>,
    rhs: Result<C::Mor>,
    witness: impl FnOnce() -> Value,
) -> Result<()> {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            tally.record(l == r, || {
                let mut w = witness();
                w["left"] = c.mor_json(&l);
                w["right"] = c.mor_json(&r);
                w
            });
            Ok(())
        }
        (Err(e @ CatError::Budget(_)), _) | (_, Err(e @ CatError::Budget(_))) => Err(e),
        (Err(e), _) | (_, Err(e)) => {
            let mut w = witness();
            w["error"] = json!(e.to_string());
            tally.fail(w);
            Ok(())
        }
    }
}

/// Checks a limit certificate: the cone must commute; universality is
/// decided exhaustively on finite carriers and certified otherwise.
pub(crate) fn record_limit<C: Category>(
    c: &C,
    tally: &mut LawTally,
    certified: &mut usize,
    cert: Result<LimitCertificate<C>>,
    witness: impl Fn() -> Value,
) -> Result<()> {
    let cert = match cert {
        Ok(cert) => cert,
        Err(e @ CatError::Budget(_)) => return Err(e),
        Err(e) => {
            let mut w = witness();
            w["error"] = json!(e.to_string());
            tally.fail(w);
            return Ok(());
        }
    };
    if c.is_finite() {
        let diag = limit_diagnostic(c, &cert)?;
        tally.record(diag.is_none(), || {
            let mut w = witness();
            w["diagnostic"] = diag.unwrap_or(Value::Null);
            w
        });
    } else {
        let cone = cert.is_cone(c, &cert.legs).unwrap_or(false);
        tally.record(cone, || {
            let mut w = witness();
            w["diagnostic"] = json!("legs do not commute with the diagram");
            w
        });
        *certified += 1;
    }
    Ok(())
}

/// The six axiom groups of a tangent structure plus naturality of the
/// structure maps. Finite carriers are checked exhaustively; symbolic
/// carriers on the supplied samples, with universality certified.
pub fn verify_tangent_structure<C: Category>(
    ts: &TangentStructure<C>,
    samples: Option<&Samples<C>>,
) -> Result<VerificationReport> {
    let c = &*ts.carrier;
    let scope = Scope::of(c, samples)?;
    let mut report = VerificationReport::new(format!("tangent structure {} on {}", ts.name, c.label()));

    report.absorb("naturality/T", verify_functor(&ts.t, samples)?);
    for n in [&ts.p, &ts.zero, &ts.lift, &ts.flip] {
        report.absorb(&format!("naturality/{}", n.label), verify_naturality(n, samples)?);
    }
    match verify_naturality(&ts.add_nat(), samples) {
        Ok(r) => report.absorb("naturality/+", r),
        Err(e @ CatError::Budget(_)) => return Err(e),
        Err(e) => report.fail("naturality of +", "tangent.naturality", json!({"error": e.to_string()})),
    }

    let obj = |x: &C::Obj| json!({"object": c.obj_json(x)});
    let mut certified = 0usize;

    // Part 1: pullback powers of p exist and are preserved by T and T².
    let mut pb = LawTally::new("pullback powers T₂X, T₃X of p_X exist", "tangent.part1.powers");
    let mut pres = LawTally::new("T and T² preserve the pullback powers", "tangent.part1.preservation");
    let tt = ts.t_squared();
    for x in &scope.objects {
        for cert in [ts.t2_cert(x), ts.t3_cert(x)] {
            let cert2 = cert.as_ref().cloned().map_err(|e| CatError::Hypothesis(e.to_string()));
            record_limit(c, &mut pb, &mut certified, cert, || obj(x))?;
            if let Ok(cert) = cert2 {
                record_limit(c, &mut pres, &mut certified, cert.map_by(&ts.t), || json!({"object": c.obj_json(x), "functor": "T"}))?;
                record_limit(c, &mut pres, &mut certified, cert.map_by(&tt), || json!({"object": c.obj_json(x), "functor": "T²"}))?;
            }
        }
    }
    pb.finish(&mut report);
    pres.finish(&mut report);

    // Part 2: (p, +, 0) is an additive bundle.
    let mut p0 = LawTally::new("p∘0 = id", "tangent.part2.section");
    let mut padd = LawTally::new("p∘+ = p∘π1", "tangent.part2.fibrewise");
    let mut unit = LawTally::new("+∘⟨0∘p, id⟩ = id", "tangent.part2.unit");
    let mut comm = LawTally::new("+∘⟨π2, π1⟩ = +", "tangent.part2.commutativity");
    let mut assoc = LawTally::new("+∘(+ × id) = +∘(id × +)", "tangent.part2.associativity");
    for x in &scope.objects {
        let tx = ts.t.obj(x)?;
        let p = ts.p.at(x)?;
        let z = ts.zero.at(x)?;
        record_eq(c, &mut p0, c.compose(&p, &z), c.identity(x), || obj(x))?;
        let t2 = ts.t2_cert(x)?;
        let add = ts.add_at(x)?;
        let (pi1, pi2) = (t2.legs[0].clone(), t2.legs[1].clone());
        record_eq(c, &mut padd, c.compose(&p, &add), c.compose(&p, &pi1), || obj(x))?;
        let zp = c.compose(&z, &p)?;
        let l = ts.pair(x, &zp, &c.identity(&tx)?).and_then(|m| c.compose(&add, &m));
        record_eq(c, &mut unit, l, c.identity(&tx), || obj(x))?;
        let l = ts.pair(x, &pi2, &pi1).and_then(|m| c.compose(&add, &m));
        record_eq(c, &mut comm, l, Ok(add.clone()), || obj(x))?;
        let t3 = ts.t3_cert(x)?;
        let (q1, q2) = (&t3.legs[0], &t3.legs[1]);
        let left = (|| {
            let ab = c.compose(&add, q1)?;
            c.compose(&add, &ts.pair(x, &ab, q2)?)
        })();
        let right = (|| {
            let bc = ts.pair(x, &c.compose(&pi2, q1)?, q2)?;
            let a = c.compose(&pi1, q1)?;
            c.compose(&add, &ts.pair(x, &a, &c.compose(&add, &bc)?)?)
        })();
        record_eq(c, &mut assoc, left, right, || obj(x))?;
    }
    for t in [p0, padd, unit, comm, assoc] {
        t.finish(&mut report);
    }

    // Part 3: (ℓ, 0) is a bundle morphism from p to T(p).
    let mut l1 = LawTally::new("T(p)∘ℓ = 0∘p", "tangent.part3.projection");
    let mut l2 = LawTally::new("T(+)∘⟨ℓ∘π1, ℓ∘π2⟩ = ℓ∘+", "tangent.part3.addition");
    let mut l3 = LawTally::new("ℓ∘0 = 0_T∘0", "tangent.part3.zero");
    // Part 4: (c, id) is a bundle morphism from T(p) to p_T.
    let mut c1 = LawTally::new("p_T∘c = T(p)", "tangent.part4.projection");
    let mut c2 = LawTally::new("+_T∘⟨c∘T(π1), c∘T(π2)⟩ = c∘T(+)", "tangent.part4.addition");
    let mut c3 = LawTally::new("0_T = c∘T(0)", "tangent.part4.zero");
    // Part 5: coherences of ℓ and c.
    let mut invol = LawTally::new("c∘c = id", "tangent.part5.involution");
    let mut cl = LawTally::new("c∘ℓ = ℓ", "tangent.part5.flip-lift");
    let mut ll = LawTally::new("T(ℓ)∘ℓ = ℓ_T∘ℓ", "tangent.part5.lift-lift");
    let mut yb = LawTally::new("c_T∘T(c)∘c_T = T(c)∘c_T∘T(c)", "tangent.part5.yang-baxter");
    let mut lc = LawTally::new("c_T∘T(c)∘ℓ_T = T(ℓ)∘c", "tangent.part5.lift-flip");
    // Part 6: universality of the vertical lift.
    let mut uni = LawTally::new("the vertical-lift fork is an equalizer", "tangent.part6.equalizer");
    for x in &scope.objects {
        let tx = ts.t.obj(x)?;
        let p = ts.p.at(x)?;
        let z = ts.zero.at(x)?;
        let l = ts.lift.at(x)?;
        let fl = ts.flip.at(x)?;
        let t2 = ts.t2_cert(x)?;
        let add = ts.add_at(x)?;
        let tt2 = t2.map_by(&ts.t)?;

        record_eq(c, &mut l1, c.compose(&ts.t.mor(&p)?, &l), c.compose(&z, &p), || obj(x))?;
        let lhs = (|| {
            let m = c.mediate(&tt2, &[c.compose(&l, &t2.legs[0])?, c.compose(&l, &t2.legs[1])?])?;
            c.compose(&ts.t.mor(&add)?, &m)
        })();
        record_eq(c, &mut l2, lhs, c.compose(&l, &add), || obj(x))?;
        record_eq(c, &mut l3, c.compose(&l, &z), c.compose(&ts.zero.at(&tx)?, &z), || obj(x))?;

        record_eq(c, &mut c1, c.compose(&ts.p.at(&tx)?, &fl), ts.t.mor(&p), || obj(x))?;
        let lhs = (|| {
            let m = ts.pair(&tx, &c.compose(&fl, &tt2.legs[0])?, &c.compose(&fl, &tt2.legs[1])?)?;
            c.compose(&ts.add_at(&tx)?, &m)
        })();
        record_eq(c, &mut c2, lhs, c.compose(&fl, &ts.t.mor(&add)?), || obj(x))?;
        record_eq(c, &mut c3, ts.zero.at(&tx), c.compose(&fl, &ts.t.mor(&z)?), || obj(x))?;

        let ttx = ts.t.obj(&tx)?;
        record_eq(c, &mut invol, c.compose(&fl, &fl), c.identity(&ttx), || obj(x))?;
        record_eq(c, &mut cl, c.compose(&fl, &l), Ok(l.clone()), || obj(x))?;
        let tl = ts.t.mor(&l)?;
        let lt = ts.lift.at(&tx)?;
        record_eq(c, &mut ll, c.compose(&tl, &l), c.compose(&lt, &l), || obj(x))?;
        let ct = ts.flip.at(&tx)?;
        let tc = ts.t.mor(&fl)?;
        record_eq(c, &mut yb, chain(c, &[ct.clone(), tc.clone(), ct.clone()]), chain(c, &[tc.clone(), ct.clone(), tc.clone()]), || obj(x))?;
        record_eq(c, &mut lc, chain(c, &[ct, tc, lt]), c.compose(&tl, &fl), || obj(x))?;

        record_limit(c, &mut uni, &mut certified, ts.lift_fork(x), || obj(x))?;
    }
    for t in [l1, l2, l3, c1, c2, c3, invol, cl, ll, yb, lc, uni] {
        t.finish(&mut report);
    }
    if certified > 0 {
        report.certified(
            "universality of tangent limits",
            "tangent.limits",
            &format!("{certified} limit certificates commute but universality is certified by construction, not decided"),
        );
    }
    if !scope.exhaustive {
        report.certified("tangent axioms", "tangent.scope", "equations checked on supplied samples only");
    }
    Ok(report)
}
