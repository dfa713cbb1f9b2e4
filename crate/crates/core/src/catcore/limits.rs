use super::{Category, Functor};
use crate::error::{capability, structural, CatError, Result};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LimitKind {
    Pullback,
    Equalizer,
}

/// A candidate limit cone.
///
/// Pullback: `diagram = [f: A→C, g: B→C]`, `legs = [π1: P→A, π2: P→B]`.
/// Equalizer: `diagram = [f, g: A→B]`, `legs = [e: E→A]`.
pub struct LimitCertificate<C: Category> {
    pub kind: LimitKind,
    pub diagram: Vec<C::Mor>,
    pub apex: C::Obj,
    pub legs: Vec<C::Mor>,
}

impl<C: Category> Clone for LimitCertificate<C> {
    fn clone(&self) -> Self {
        LimitCertificate {
            kind: self.kind,
            diagram: self.diagram.clone(),
            apex: self.apex.clone(),
            legs: self.legs.clone(),
        }
    }
}

impl<C: Category> std::fmt::Debug for LimitCertificate<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LimitCertificate")
            .field("kind", &self.kind)
            .field("diagram", &self.diagram)
            .field("apex", &self.apex)
            .field("legs", &self.legs)
            .finish()
    }
}

impl<C: Category> LimitCertificate<C> {
    pub fn pullback(f: C::Mor, g: C::Mor, apex: C::Obj, p1: C::Mor, p2: C::Mor) -> Self {
        LimitCertificate {
            kind: LimitKind::Pullback,
            diagram: vec![f, g],
            apex,
            legs: vec![p1, p2],
        }
    }

    pub fn equalizer(f: C::Mor, g: C::Mor, apex: C::Obj, e: C::Mor) -> Self {
        LimitCertificate {
            kind: LimitKind::Equalizer,
            diagram: vec![f, g],
            apex,
            legs: vec![e],
        }
    }

    /// The image certificate under a functor.
    pub fn map_by<D: Category>(&self, f: &Functor<C, D>) -> Result<LimitCertificate<D>> {
        Ok(LimitCertificate {
            kind: self.kind,
            diagram: self.diagram.iter().map(|m| f.mor(m)).collect::<Result<_>>()?,
            apex: f.obj(&self.apex)?,
            legs: self.legs.iter().map(|m| f.mor(m)).collect::<Result<_>>()?,
        })
    }

    /// Whether `cone` (legs out of a common apex) commutes with the diagram.
    pub fn is_cone(&self, c: &C, cone: &[C::Mor]) -> Result<bool> {
        match self.kind {
            LimitKind::Pullback => {
                if cone.len() != 2 {
                    return structural("pullback cone needs two legs");
                }
                if c.source(&cone[0]) != c.source(&cone[1]) {
                    return Ok(false);
                }
                Ok(c.compose(&self.diagram[0], &cone[0])? == c.compose(&self.diagram[1], &cone[1])?)
            }
            LimitKind::Equalizer => {
                if cone.len() != 1 {
                    return structural("equalizer cone needs one leg");
                }
                Ok(c.compose(&self.diagram[0], &cone[0])? == c.compose(&self.diagram[1], &cone[0])?)
            }
        }
    }

    pub fn check_shape(&self, c: &C) -> Result<()> {
        match self.kind {
            LimitKind::Pullback => {
                if self.diagram.len() != 2 || self.legs.len() != 2 {
                    return structural("pullback certificate needs a cospan and two legs");
                }
                if c.target(&self.diagram[0]) != c.target(&self.diagram[1]) {
                    return structural("pullback diagram is not a cospan");
                }
                for i in 0..2 {
                    if c.source(&self.legs[i]) != self.apex
                        || c.target(&self.legs[i]) != c.source(&self.diagram[i])
                    {
                        return structural(format!("pullback leg {} has wrong endpoints", i + 1));
                    }
                }
            }
            LimitKind::Equalizer => {
                if self.diagram.len() != 2 || self.legs.len() != 1 {
                    return structural("equalizer certificate needs a parallel pair and one leg");
                }
                let (f, g) = (&self.diagram[0], &self.diagram[1]);
                if c.source(f) != c.source(g) || c.target(f) != c.target(g) {
                    return structural("equalizer diagram is not a parallel pair");
                }
                if c.source(&self.legs[0]) != self.apex || c.target(&self.legs[0]) != c.source(f) {
                    return structural("equalizer leg has wrong endpoints");
                }
            }
        }
        Ok(())
    }

    /// Whether `m: Z → apex` factors `cone` through the legs.
    pub fn factors(&self, c: &C, m: &C::Mor, cone: &[C::Mor]) -> Result<bool> {
        if c.target(m) != self.apex {
            return Ok(false);
        }
        for (leg, want) in self.legs.iter().zip(cone) {
            if c.source(m) != c.source(want) || c.compose(leg, m)? != *want {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn need_finite<C: Category>(c: &C) -> Result<()> {
    if c.is_finite() {
        Ok(())
    } else {
        capability(format!(
            "{}: universal properties are decided only on finite backends",
            c.label()
        ))
    }
}

/// Every cone over the certificate's diagram with apex `z`.
fn cones_from<C: Category>(c: &C, cert: &LimitCertificate<C>, z: &C::Obj) -> Result<Vec<Vec<C::Mor>>> {
    let mut out = Vec::new();
    match cert.kind {
        LimitKind::Pullback => {
            let a = c.source(&cert.diagram[0]);
            let b = c.source(&cert.diagram[1]);
            let hb = c.hom(z, &b)?;
            for x in c.hom(z, &a)? {
                let fx = c.compose(&cert.diagram[0], &x)?;
                for y in &hb {
                    if fx == c.compose(&cert.diagram[1], y)? {
                        out.push(vec![x.clone(), y.clone()]);
                    }
                }
            }
        }
        LimitKind::Equalizer => {
            let a = c.source(&cert.diagram[0]);
            for x in c.hom(z, &a)? {
                if c.compose(&cert.diagram[0], &x)? == c.compose(&cert.diagram[1], &x)? {
                    out.push(vec![x]);
                }
            }
        }
    }
    Ok(out)
}

/// `None` when the certificate is a limit; otherwise a witness of the failure.
/// Exhaustive; finite backends only.
pub fn limit_diagnostic<C: Category>(c: &C, cert: &LimitCertificate<C>) -> Result<Option<Value>> {
    need_finite(c)?;
    cert.check_shape(c)?;
    if !cert.is_cone(c, &cert.legs)? {
        return Ok(Some(json!({
            "reason": "legs do not commute with the diagram",
            "apex": c.obj_json(&cert.apex),
        })));
    }
    for z in c.objects()? {
        let into_apex = c.hom(&z, &cert.apex)?;
        for cone in cones_from(c, cert, &z)? {
            let mut hits = Vec::new();
            for m in &into_apex {
                if cert.factors(c, m, &cone)? {
                    hits.push(m.clone());
                }
            }
            if hits.len() != 1 {
                return Ok(Some(json!({
                    "reason": if hits.is_empty() { "cone has no mediating morphism" } else { "mediating morphism is not unique" },
                    "cone_apex": c.obj_json(&z),
                    "cone_legs": cone.iter().map(|m| c.mor_json(m)).collect::<Vec<_>>(),
                    "mediators": hits.iter().map(|m| c.mor_json(m)).collect::<Vec<_>>(),
                })));
            }
        }
    }
    Ok(None)
}

pub fn is_pullback<C: Category>(c: &C, cert: &LimitCertificate<C>) -> Result<bool> {
    if cert.kind != LimitKind::Pullback {
        return structural("certificate is not a pullback");
    }
    Ok(limit_diagnostic(c, cert)?.is_none())
}

pub fn is_equalizer<C: Category>(c: &C, cert: &LimitCertificate<C>) -> Result<bool> {
    if cert.kind != LimitKind::Equalizer {
        return structural("certificate is not an equalizer");
    }
    Ok(limit_diagnostic(c, cert)?.is_none())
}

/// Certificate-based check for symbolic backends: the legs commute and each
/// supplied competing cone is factored by the backend's mediator. Returns a
/// failure witness, or `None`.
pub fn certify_limit<C: Category>(
    c: &C,
    cert: &LimitCertificate<C>,
    cones: &[Vec<C::Mor>],
) -> Result<Option<Value>> {
    cert.check_shape(c)?;
    if !cert.is_cone(c, &cert.legs)? {
        return Ok(Some(json!({
            "reason": "legs do not commute with the diagram",
            "apex": c.obj_json(&cert.apex),
        })));
    }
    for cone in cones {
        if !cert.is_cone(c, cone)? {
            continue;
        }
        let m = c.mediate(cert, cone)?;
        if !cert.factors(c, &m, cone)? {
            return Ok(Some(json!({
                "reason": "mediator does not factor the cone",
                "cone_legs": cone.iter().map(|m| c.mor_json(m)).collect::<Vec<_>>(),
                "mediator": c.mor_json(&m),
            })));
        }
    }
    Ok(None)
}

/// The unique mediating morphism, found exhaustively.
pub fn mediate_exhaustive<C: Category>(c: &C, cert: &LimitCertificate<C>, cone: &[C::Mor]) -> Result<C::Mor> {
    need_finite(c)?;
    let z = cone
        .first()
        .map(|m| c.source(m))
        .ok_or_else(|| CatError::Structural("empty cone".into()))?;
    let mut found = None;
    for m in c.hom(&z, &cert.apex)? {
        if cert.factors(c, &m, cone)? {
            if found.is_some() {
                return Err(CatError::Hypothesis(format!(
                    "{}: mediating morphism into {} is not unique",
                    c.label(),
                    cert.apex
                )));
            }
            found = Some(m);
        }
    }
    found.ok_or_else(|| {
        CatError::Hypothesis(format!(
            "{}: no mediating morphism into {} for the given cone",
            c.label(),
            cert.apex
        ))
    })
}

/// The first pullback of `f` and `g` in enumeration order, if any.
pub fn find_pullback<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<Option<LimitCertificate<C>>> {
    need_finite(c)?;
    if c.target(f) != c.target(g) {
        return structural(format!("{f} and {g} do not form a cospan"));
    }
    let probe = LimitCertificate::pullback(f.clone(), g.clone(), c.target(f), f.clone(), g.clone());
    for p in c.objects()? {
        for cone in cones_from(c, &probe, &p)? {
            let cert = LimitCertificate::pullback(f.clone(), g.clone(), p.clone(), cone[0].clone(), cone[1].clone());
            if limit_diagnostic(c, &cert)?.is_none() {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

/// The first equalizer of `f` and `g` in enumeration order, if any.
pub fn find_equalizer<C: Category>(c: &C, f: &C::Mor, g: &C::Mor) -> Result<Option<LimitCertificate<C>>> {
    need_finite(c)?;
    let probe = LimitCertificate::equalizer(f.clone(), g.clone(), c.source(f), c.identity(&c.source(f))?);
    for e in c.objects()? {
        for cone in cones_from(c, &probe, &e)? {
            let cert = LimitCertificate::equalizer(f.clone(), g.clone(), e.clone(), cone[0].clone());
            if limit_diagnostic(c, &cert)?.is_none() {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::FiniteCategory;

    fn lattice() -> FiniteCategory {
        let leq = |x: &str, y: &str| x == y || x == "0" || y == "1";
        FiniteCategory::poset("P", &["0", "x", "y", "1"], leq).unwrap()
    }

    #[test]
    fn meet_is_pullback_over_top() {
        let p = lattice();
        let cert = LimitCertificate::pullback(
            "x≤1".to_string(),
            "y≤1".to_string(),
            "0".to_string(),
            "0≤x".to_string(),
            "0≤y".to_string(),
        );
        assert!(is_pullback(&p, &cert).unwrap());
    }

    #[test]
    fn wrong_apex_is_not_pullback() {
        let p = lattice();
        let cert = LimitCertificate::pullback(
            "x≤1".to_string(),
            "id_1".to_string(),
            "0".to_string(),
            "0≤x".to_string(),
            "0≤1".to_string(),
        );
        assert!(!is_pullback(&p, &cert).unwrap());
    }

    #[test]
    fn equalizer_of_equal_pair_is_identity() {
        let c = FiniteCategory::walking_iso();
        let cert = LimitCertificate::equalizer("u".to_string(), "u".to_string(), "a".to_string(), "id_a".to_string());
        assert!(is_equalizer(&c, &cert).unwrap());
        let found = find_equalizer(&c, &"u".to_string(), &"u".to_string()).unwrap().unwrap();
        assert!(is_equalizer(&c, &found).unwrap());
    }
}
