//! The affine line over a point is not étale: its tangent bundle has more
//! sections than the pullback of the point's.

use super::algebra::{tangent_algebra, AlgebraHom, FpAlgebra};
use super::category::{zariski_tangent, QAlg, SchemeMap, ZariskiCategory};
use super::maps::zero_hom;
use crate::catcore::Category;
use crate::error::Result;
use crate::field::Rational;
use crate::tangent::{etale_pullback_iso_check, is_etale_with, EtaleIsoCheck, Evidence, TangentStructure};

/// `Spec ℚ[x] → Spec ℚ` with two distinct sections of `T(Spec ℚ[x])`:
/// the zero section and the unit vector field `dx ↦ 1`.
pub struct LineOverPoint {
    pub tangent: TangentStructure<ZariskiCategory>,
    pub line: QAlg,
    pub map: SchemeMap,
    pub zero_section: SchemeMap,
    pub unit_field: SchemeMap,
}

impl LineOverPoint {
    pub fn new() -> Result<Self> {
        let point = FpAlgebra::<Rational>::ground();
        let tangent = zariski_tangent(ZariskiCategory::new(point));
        let line = FpAlgebra::parse(None, &["x"], &[])?;
        let map = SchemeMap(AlgebraHom::structure(&line)?);
        let zero_section = SchemeMap(zero_hom(&line)?);
        let unit_field = SchemeMap(AlgebraHom::parse(tangent_algebra(&line)?, line.clone(), &[("x", "x"), ("dx", "1")])?);
        Ok(LineOverPoint {
            tangent,
            line,
            map,
            zero_section,
            unit_field,
        })
    }

    fn collapse(&self) -> Evidence<ZariskiCategory> {
        Evidence::Collapse(self.zero_section.clone(), self.unit_field.clone())
    }

    /// Whether the map is étale, decided by the two sections.
    pub fn is_etale(&self) -> Result<bool> {
        is_etale_with(&self.tangent, &self.map, &self.collapse())
    }

    /// The comparison `θ: T(P) → P ×_Y TY` for the pullback `P` of the map
    /// along the identity of the point. The same two sections, moved to `P`,
    /// refute both invertibility of `θ` and étaleness of `pr2`.
    pub fn pullback_iso_check(&self) -> Result<EtaleIsoCheck<SchemeMap>> {
        let ts = &self.tangent;
        let c = &*ts.carrier;
        let point = c.target(&self.map);
        let id = c.identity(&point)?;
        let pb = ts.pullback(&self.map, &id)?;
        let q = ts.pullback(&self.map, &ts.p.at(&point)?)?;
        // j: line → P and its inverse, matching generators by name
        let j = SchemeMap(AlgebraHom::parse(pb.apex.clone(), self.line.clone(), &[])?);
        let j_inv = SchemeMap(AlgebraHom::parse(self.line.clone(), pb.apex.clone(), &[])?);
        let tj = ts.t.mor(&j)?;
        let moved = |s: &SchemeMap| c.compose(&tj, &c.compose(s, &j_inv)?);
        let ev = Evidence::Collapse(moved(&self.zero_section)?, moved(&self.unit_field)?);
        etale_pullback_iso_check(ts, &pb, &q, Some(&ev), Some(&ev))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_over_point_is_not_etale() {
        let l = LineOverPoint::new().unwrap();
        assert!(!l.is_etale().unwrap());
        let chk = l.pullback_iso_check().unwrap();
        assert!(!chk.theta_invertible && !chk.projection_etale);
    }
}
