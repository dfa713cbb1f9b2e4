use super::{Category, Functor, NatTrans, Samples, Scope};
use crate::error::{structural, Result};
use crate::report::{LawTally, VerificationReport};
use serde_json::json;

/// Unit and associativity laws, exhaustively on finite backends and over the
/// sampled morphisms otherwise. Missing composites are reported as totality
/// failures.
pub fn verify_category<C: Category>(c: &C, samples: Option<&Samples<C>>) -> Result<VerificationReport> {
    let scope = Scope::of(c, samples)?;
    let mut report = VerificationReport::new(format!("category {}", c.label()));
    let mut ids = LawTally::new("identity morphism is an endomorphism", "category.identity-type");
    for a in &scope.objects {
        let i = c.identity(a)?;
        ids.record(c.source(&i) == *a && c.target(&i) == *a, || {
            json!({"object": c.obj_json(a), "identity": c.mor_json(&i)})
        });
    }
    ids.finish(&mut report);

    let mut total = LawTally::new("composition is total on composable pairs", "category.totality");
    let mut unit = LawTally::new("unit laws id∘f = f = f∘id", "category.unit");
    let mut assoc = LawTally::new("associativity (h∘g)∘f = h∘(g∘f)", "category.associativity");
    let ms = &scope.morphisms;
    for f in ms {
        let lid = c.identity(&c.target(f))?;
        let rid = c.identity(&c.source(f))?;
        match (c.compose(&lid, f), c.compose(f, &rid)) {
            (Ok(l), Ok(r)) => {
                unit.record(l == *f, || json!({"pair": [c.mor_json(&lid), c.mor_json(f)], "got": c.mor_json(&l)}));
                unit.record(r == *f, || json!({"pair": [c.mor_json(f), c.mor_json(&rid)], "got": c.mor_json(&r)}));
            }
            _ => total.fail(json!({"morphism": c.mor_json(f), "missing": "identity composite"})),
        }
    }
    for f in ms {
        for g in ms {
            if c.source(g) != c.target(f) {
                continue;
            }
            let gf = match c.compose(g, f) {
                Ok(x) => {
                    total.record(true, || json!(null));
                    x
                }
                Err(_) => {
                    total.fail(json!({"pair": [c.mor_json(g), c.mor_json(f)]}));
                    continue;
                }
            };
            if c.source(&gf) != c.source(f) || c.target(&gf) != c.target(g) {
                return structural(format!("{}: composite {g}∘{f} has wrong endpoints", c.label()));
            }
            for h in ms {
                if c.source(h) != c.target(g) {
                    continue;
                }
                let (Ok(hg), Ok(hg_f_l)) = (c.compose(h, g), c.compose(h, &gf)) else {
                    total.fail(json!({"triple": [c.mor_json(h), c.mor_json(g), c.mor_json(f)]}));
                    continue;
                };
                match c.compose(&hg, f) {
                    Ok(r) => assoc.record(r == hg_f_l, || {
                        json!({
                            "triple": [c.mor_json(h), c.mor_json(g), c.mor_json(f)],
                            "left": c.mor_json(&r),
                            "right": c.mor_json(&hg_f_l),
                        })
                    }),
                    Err(_) => total.fail(json!({"pair": [c.mor_json(&hg), c.mor_json(f)]})),
                }
            }
        }
    }
    total.finish(&mut report);
    unit.finish(&mut report);
    assoc.finish(&mut report);
    if !scope.exhaustive {
        report.certified("category laws", "category.scope", "checked on supplied samples only");
    }
    Ok(report)
}

/// Preservation of endpoints, identities and composition.
pub fn verify_functor<S: Category, T: Category>(
    f: &Functor<S, T>,
    samples: Option<&Samples<S>>,
) -> Result<VerificationReport> {
    let (s, t) = (&*f.source, &*f.target);
    let scope = Scope::of(s, samples)?;
    let mut report = VerificationReport::new(format!("functor {}", f.label));
    for m in &scope.morphisms {
        let fm = f.mor(m)?;
        if t.source(&fm) != f.obj(&s.source(m))? || t.target(&fm) != f.obj(&s.target(m))? {
            return structural(format!("{}: image of {m} has wrong endpoints", f.label));
        }
    }
    let mut ids = LawTally::new("F(id_A) = id_F(A)", "functor.identity");
    for a in &scope.objects {
        let lhs = f.mor(&s.identity(a)?)?;
        let rhs = t.identity(&f.obj(a)?)?;
        ids.record(lhs == rhs, || json!({"object": s.obj_json(a), "got": t.mor_json(&lhs)}));
    }
    ids.finish(&mut report);
    let mut comp = LawTally::new("F(g∘f) = F(g)∘F(f)", "functor.composition");
    for m in &scope.morphisms {
        for g in &scope.morphisms {
            if s.source(g) != s.target(m) {
                continue;
            }
            let lhs = f.mor(&s.compose(g, m)?)?;
            let rhs = t.compose(&f.mor(g)?, &f.mor(m)?)?;
            comp.record(lhs == rhs, || {
                json!({
                    "pair": [s.mor_json(g), s.mor_json(m)],
                    "image_of_composite": t.mor_json(&lhs),
                    "composite_of_images": t.mor_json(&rhs),
                })
            });
        }
    }
    comp.finish(&mut report);
    if !scope.exhaustive {
        report.certified("functor laws", "functor.scope", "checked on supplied samples only");
    }
    Ok(report)
}

/// Component typing and naturality squares `η_B∘F(m) = G(m)∘η_A`.
pub fn verify_naturality<S: Category, T: Category>(
    eta: &NatTrans<S, T>,
    samples: Option<&Samples<S>>,
) -> Result<VerificationReport> {
    let (s, t) = (&*eta.source.source, &*eta.source.target);
    let scope = Scope::of(s, samples)?;
    let mut report = VerificationReport::new(format!("natural transformation {}", eta.label));
    for a in &scope.objects {
        let c = eta.at(a)?;
        if t.source(&c) != eta.source.obj(a)? || t.target(&c) != eta.target.obj(a)? {
            return structural(format!("{}: component at {a} has wrong endpoints", eta.label));
        }
    }
    let mut nat = LawTally::new("naturality η_B∘F(m) = G(m)∘η_A", "natural.square");
    for m in &scope.morphisms {
        let (a, b) = (s.source(m), s.target(m));
        let lhs = t.compose(&eta.at(&b)?, &eta.source.mor(m)?)?;
        let rhs = t.compose(&eta.target.mor(m)?, &eta.at(&a)?)?;
        nat.record(lhs == rhs, || {
            json!({"morphism": s.mor_json(m), "left": t.mor_json(&lhs), "right": t.mor_json(&rhs)})
        });
    }
    nat.finish(&mut report);
    if !scope.exhaustive {
        report.certified("naturality", "natural.scope", "checked on supplied samples only");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::FiniteCategory;

    #[test]
    fn terminal_and_group_are_categories() {
        assert!(verify_category(&FiniteCategory::terminal(), None).unwrap().passed());
        assert!(verify_category(&FiniteCategory::cyclic_group(2), None).unwrap().passed());
    }

    #[test]
    fn corrupted_unit_is_reported() {
        let g = FiniteCategory::cyclic_group(2).with_composite("s", "e", "e").unwrap();
        let r = verify_category(&g, None).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.iter().any(|c| c.anchor == "category.unit"
            && c.witness.as_ref().unwrap()["pair"] == json!(["s", "e"])));
    }

    #[test]
    fn idempotent_corruption_is_still_a_monoid() {
        // s∘s = s turns {e, s} into the two-element idempotent monoid.
        let g = FiniteCategory::cyclic_group(2).with_composite("s", "s", "s").unwrap();
        assert!(verify_category(&g, None).unwrap().passed());
    }
}
