use super::structure::TangentStructure;
use crate::catcore::{is_pullback, Category, LimitCertificate};
use crate::error::{capability, CatError, Result};

/// Evidence for a limit question on a carrier that cannot be searched.
pub enum Evidence<C: Category> {
    /// For étaleness: the square certified as a pullback. For invertibility:
    /// a two-sided inverse.
    Certified(Option<LimitCertificate<C>>, Option<C::Mor>),
    /// Two distinct maps that agree after the map (or after both legs of the
    /// square), refuting monicity and hence the claim.
    Collapse(C::Mor, C::Mor),
}

impl<C: Category> Evidence<C> {
    pub fn pullback(cert: LimitCertificate<C>) -> Self {
        Evidence::Certified(Some(cert), None)
    }

    pub fn inverse(m: C::Mor) -> Self {
        Evidence::Certified(None, Some(m))
    }
}

/// The naturality square of `p` at `f`, as a candidate pullback of `f` and
/// `p_Y` with apex `TX` and legs `p_X`, `T(f)`.
pub fn etale_square<C: Category>(ts: &TangentStructure<C>, f: &C::Mor) -> Result<LimitCertificate<C>> {
    let c = &*ts.carrier;
    let (x, y) = (c.source(f), c.target(f));
    Ok(LimitCertificate::pullback(
        f.clone(),
        ts.p.at(&y)?,
        ts.t.obj(&x)?,
        ts.p.at(&x)?,
        ts.t.mor(f)?,
    ))
}

/// Whether `f` is étale, by exhaustive search. Needs a finite carrier.
pub fn is_etale<C: Category>(ts: &TangentStructure<C>, f: &C::Mor) -> Result<bool> {
    let c = &*ts.carrier;
    if !c.is_finite() {
        return capability(format!("{}: étaleness needs a finite carrier or evidence", c.label()));
    }
    is_pullback(c, &etale_square(ts, f)?)
}

/// Whether `f` is étale, decided from evidence on any carrier.
pub fn is_etale_with<C: Category>(ts: &TangentStructure<C>, f: &C::Mor, ev: &Evidence<C>) -> Result<bool> {
    let c = &*ts.carrier;
    let sq = etale_square(ts, f)?;
    match ev {
        Evidence::Certified(Some(cert), _) => {
            if cert.diagram != sq.diagram || cert.apex != sq.apex || cert.legs != sq.legs {
                return Err(CatError::Hypothesis("certificate is not the naturality square of p".into()));
            }
            if !sq.is_cone(c, &sq.legs)? {
                return Err(CatError::Hypothesis("naturality square of p does not commute".into()));
            }
            Ok(true)
        }
        Evidence::Certified(None, _) => Err(CatError::Hypothesis("étaleness evidence needs a pullback certificate".into())),
        Evidence::Collapse(a, b) => {
            let apex = &sq.apex;
            if a == b || c.target(a) != *apex || c.target(b) != *apex {
                return Err(CatError::Hypothesis("collapse evidence needs two distinct maps into TX".into()));
            }
            for leg in &sq.legs {
                if c.compose(leg, a)? != c.compose(leg, b)? {
                    return Err(CatError::Hypothesis("collapse evidence is not a common factorization".into()));
                }
            }
            Ok(false)
        }
    }
}

/// Whether `m` is invertible, exhaustively or from evidence.
pub fn is_iso_with<C: Category>(c: &C, m: &C::Mor, ev: Option<&Evidence<C>>) -> Result<bool> {
    match ev {
        None => {
            if !c.is_finite() {
                return capability(format!("{}: invertibility needs a finite carrier or evidence", c.label()));
            }
            Ok(c.inverse(m)?.is_some())
        }
        Some(Evidence::Certified(_, Some(inv))) => {
            let ok = c.compose(inv, m)? == c.identity(&c.source(m))? && c.compose(m, inv)? == c.identity(&c.target(m))?;
            if !ok {
                return Err(CatError::Hypothesis("supplied inverse is not two-sided".into()));
            }
            Ok(true)
        }
        Some(Evidence::Certified(_, None)) => Err(CatError::Hypothesis("invertibility evidence needs an inverse".into())),
        Some(Evidence::Collapse(a, b)) => {
            if a == b || c.target(a) != c.source(m) || c.target(b) != c.source(m) || c.compose(m, a)? != c.compose(m, b)? {
                return Err(CatError::Hypothesis("collapse evidence does not refute monicity".into()));
            }
            Ok(false)
        }
    }
}

/// Both sides of the biconditional for a pullback `P = X ×_Y Z` of a display
/// map `f` along `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleIsoCheck<M> {
    pub theta: M,
    pub theta_invertible: bool,
    pub projection_etale: bool,
}

impl<M> EtaleIsoCheck<M> {
    pub fn consistent(&self) -> bool {
        self.theta_invertible == self.projection_etale
    }
}

/// Builds `θ: T(X ×_Y Z) → X ×_Y TZ` from `pr1∘p_P` and `T(pr2)` and decides
/// both `θ` invertible and `pr2` étale. `pb` is the pullback of `f` and `g`;
/// `q` the pullback of `f` and `g∘p_Z`. Evidence is required for
/// non-finite carriers.
pub fn etale_pullback_iso_check<C: Category>(
    ts: &TangentStructure<C>,
    pb: &LimitCertificate<C>,
    q: &LimitCertificate<C>,
    theta_ev: Option<&Evidence<C>>,
    pr2_ev: Option<&Evidence<C>>,
) -> Result<EtaleIsoCheck<C::Mor>> {
    let c = &*ts.carrier;
    let (f, g) = (&pb.diagram[0], &pb.diagram[1]);
    let z = c.source(g);
    if q.diagram[0] != *f || q.diagram[1] != c.compose(g, &ts.p.at(&z)?)? {
        return Err(CatError::Hypothesis("second certificate is not the pullback of f and g∘p_Z".into()));
    }
    let (pr1, pr2) = (&pb.legs[0], &pb.legs[1]);
    let p_p = ts.p.at(&pb.apex)?;
    let theta = c.mediate(q, &[c.compose(pr1, &p_p)?, ts.t.mor(pr2)?])?;
    let theta_invertible = is_iso_with(c, &theta, theta_ev)?;
    let projection_etale = match pr2_ev {
        Some(ev) => is_etale_with(ts, pr2, ev)?,
        None => is_etale(ts, pr2)?,
    };
    Ok(EtaleIsoCheck {
        theta,
        theta_invertible,
        projection_etale,
    })
}
