use proptest::prelude::*;
use tangentlab::zariski::algebra::{base_change_hom, differential};
use tangentlab::zariski::lemmas::theta_hom;
use tangentlab::zariski::maps::{flip_hom, lift_hom, tangent_map};
use tangentlab::zariski::*;
use tangentlab::Rational;

type A = FpAlgebra<Rational>;
type P = Poly<Rational>;

/// Polynomial text in the given variables: up to four terms with small
/// integer coefficients and exponents at most 2.
fn poly_text(vars: &'static [&'static str]) -> impl Strategy<Value = String> {
    let term = (-3i32..=3, proptest::collection::vec(0u32..=2, vars.len()));
    proptest::collection::vec(term, 0..4).prop_map(move |terms| {
        let parts: Vec<String> = terms
            .into_iter()
            .filter(|(c, _)| *c != 0)
            .map(|(c, es)| {
                let mut s = format!("({c})");
                for (v, e) in vars.iter().zip(es) {
                    if e > 0 {
                        s.push_str(&format!("*{v}^{e}"));
                    }
                }
                s
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    })
}

fn parse(names: &[&str], s: &str) -> P {
    let names: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    parse_poly(s, &names).unwrap()
}

/// `ℚ[x,y]/(r)` for a nonconstant relation `r`, else `ℚ[x,y]`.
fn quotient(rel: &str) -> QAlg {
    let r = parse(&["x", "y"], rel);
    if r.degree() == 0 {
        A::parse(None, &["x", "y"], &[]).unwrap()
    } else {
        A::parse(None, &["x", "y"], &[rel]).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in poly_text(&["x", "y", "z"]), b in poly_text(&["x", "y", "z"]), c in poly_text(&["x", "y", "z"])) {
        let v = ["x", "y", "z"];
        let (a, b, c) = (parse(&v, &a), parse(&v, &b), parse(&v, &c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&P::one(3)), a.clone());
        prop_assert_eq!(a.pow(2), a.mul(&a));
    }

    #[test]
    fn normal_forms_are_idempotent_and_multiplicative(rel in poly_text(&["x", "y"]), p in poly_text(&["x", "y"]), q in poly_text(&["x", "y"]), h in poly_text(&["x", "y"])) {
        let b = quotient(&rel);
        let (p, q, h) = (b.parse_element(&p).unwrap(), b.parse_element(&q).unwrap(), b.parse_element(&h).unwrap());
        let np = b.nf(&p).unwrap();
        prop_assert_eq!(b.nf(&np).unwrap(), np.clone());
        prop_assert_eq!(b.nf(&p.mul(&q)).unwrap(), b.nf(&np.mul(&b.nf(&q).unwrap())).unwrap());
        for r in b.rels() {
            prop_assert_eq!(b.nf(&p.add(&r.mul(&h))).unwrap(), np.clone());
        }
    }

    #[test]
    fn leibniz_rule_is_sound(rel in poly_text(&["x", "y"]), e in poly_text(&["x", "y"]), e2 in poly_text(&["x", "y"]), h in poly_text(&["x", "y"])) {
        let b = quotient(&rel);
        let tb = tangent_algebra(&b).unwrap();
        let n = tb.nvars();
        let (e, e2, h) = (b.parse_element(&e).unwrap(), b.parse_element(&e2).unwrap(), b.parse_element(&h).unwrap());
        let lhs = differential(&b, &e.mul(&e2));
        let rhs = e2.extend(n).mul(&differential(&b, &e)).add(&e.extend(n).mul(&differential(&b, &e2)));
        prop_assert!(tb.nf(&lhs.sub(&rhs)).unwrap().is_zero());
        // d is well defined on the quotient
        for r in b.rels() {
            prop_assert!(tb.nf(&differential(&b, &r.mul(&h))).unwrap().is_zero());
        }
    }

    #[test]
    fn flip_is_an_involution_and_fixes_the_lift(rel in poly_text(&["x", "y"])) {
        let b = quotient(&rel);
        let tt = tangent_algebra(&tangent_algebra(&b).unwrap()).unwrap();
        let g = flip_hom(&b).unwrap();
        prop_assert_eq!(g.compose(&g).unwrap(), AlgebraHom::identity(&tt));
        let v = lift_hom(&b).unwrap();
        prop_assert_eq!(v.compose(&g).unwrap(), v);
    }

    #[test]
    fn theta_is_natural(p in poly_text(&["s"]), img in poly_text(&["t", "x", "y"]), rel in poly_text(&["t", "y"])) {
        // f: ℚ[t] → ℚ[s], t ↦ p; g: ℚ[t][x] → ℚ[t][x,y]/(rel), x ↦ img
        let qt = A::parse(None, &["t"], &[]).unwrap();
        let qs = A::parse(None, &["s"], &[]).unwrap();
        let f = AlgebraHom::parse(qt.clone(), qs, &[("t", p.as_str())]).unwrap();
        let b = A::parse(Some(qt.clone()), &["x"], &[]).unwrap();
        let rels: Vec<&str> = if parse(&["t", "y"], &rel).uses(1) { vec![rel.as_str()] } else { vec![] };
        let b2 = A::parse(Some(qt), &["x", "y"], &rels).unwrap();
        let g = AlgebraHom::parse(b.clone(), b2.clone(), &[("x", img.as_str())]).unwrap();

        let (_, unit_b) = base_change(&b, &f).unwrap();
        let (_, unit_b2) = base_change(&b2, &f).unwrap();
        let fg = base_change_hom(&g, &unit_b, &unit_b2).unwrap();
        let (_, unit_tb) = base_change(&tangent_algebra(&b).unwrap(), &f).unwrap();
        let (_, unit_tb2) = base_change(&tangent_algebra(&b2).unwrap(), &f).unwrap();
        let ftg = base_change_hom(&tangent_map(&g).unwrap(), &unit_tb, &unit_tb2).unwrap();

        let left = theta_hom(&b2, &f).unwrap().compose(&tangent_map(&fg).unwrap()).unwrap();
        let right = ftg.compose(&theta_hom(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn base_change_is_pseudofunctorial(p in poly_text(&["x"]), q in poly_text(&["x", "y"]), squared in any::<bool>()) {
        // ℚ[t] →g ℚ[x] →f ℚ[x,y] with t ↦ p, x ↦ q, at ℚ[t][r] or ℚ[t][r]/(r² − t)
        let qt = A::parse(None, &["t"], &[]).unwrap();
        let qx = A::parse(None, &["x"], &[]).unwrap();
        let qxy = A::parse(None, &["x", "y"], &[]).unwrap();
        let g = AlgebraHom::parse(qt.clone(), qx.clone(), &[("t", p.as_str())]).unwrap();
        let f = AlgebraHom::parse(qx, qxy, &[("x", q.as_str())]).unwrap();
        let rels: &[&str] = if squared { &["r^2 - t"] } else { &[] };
        let d = A::parse(Some(qt), &["r"], rels).unwrap();
        let r = check_pseudonaturality(&g, &f, &d).unwrap();
        prop_assert!(r.passed(), "{}", r.to_text());
    }
}
