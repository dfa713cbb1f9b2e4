//! Bundled finite fixtures: the BG demo, a product demo with genuine
//! pullbacks, group-valued fibres, and deliberately broken variants.

use crate::catcore::{Category, FiniteCategory, Functor, NatTrans};
use crate::error::{CatError, Result};
use crate::pc::{PcCategory, PseudoconeObject};
use crate::pseudo::{Cell, Pseudofunctor};
use crate::tangent::{finite_pullbacks, TangentIndexingFunctor, TangentStructure};
use std::collections::BTreeMap;
use std::sync::Arc;

type Fin = FiniteCategory;

/// The only morphism `a → b` in a thin category.
pub fn unique_mor(c: &Fin, a: &str, b: &str) -> Result<String> {
    let h = c.hom(&a.to_string(), &b.to_string())?;
    match h.as_slice() {
        [m] => Ok(m.clone()),
        _ => Err(CatError::Hypothesis(format!("{}: {} morphisms {a} → {b}", c.name(), h.len()))),
    }
}

/// The involution `a ↔ b`, `u ↔ u⁻¹` of the walking isomorphism.
pub fn swap_functor(i: &Arc<Fin>) -> Result<Functor<Fin, Fin>> {
    let om = [("a", "b"), ("b", "a")];
    let mm = [("id_a", "id_b"), ("id_b", "id_a"), ("u", "u⁻¹"), ("u⁻¹", "u")];
    Functor::from_tables("swap", i.clone(), i.clone(), table(&om), table(&mm))
}

fn table(rows: &[(&str, &str)]) -> BTreeMap<String, String> {
    rows.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// `Bℤ/2` acting on `fibre` through the involution `act`, strictly.
pub fn z2_action(name: &str, fibre: Arc<Fin>, act: Functor<Fin, Fin>) -> Result<Arc<Pseudofunctor<Fin>>> {
    let base = Arc::new(Fin::cyclic_group(2));
    Ok(Arc::new(Pseudofunctor::new(name, base, vec![fibre], vec![("s".into(), act)], vec![])?))
}

/// The BG demo: `Bℤ/2` acting on the walking isomorphism by swapping.
pub fn bg_pseudofunctor() -> Result<Arc<Pseudofunctor<Fin>>> {
    let i = Arc::new(Fin::walking_iso());
    z2_action("BG", i.clone(), swap_functor(&i)?)
}

/// The BG demo with `𝕀` on the fibre.
pub fn bg_trivial() -> Result<TangentIndexingFunctor<Fin>> {
    TangentIndexingFunctor::trivial(bg_pseudofunctor()?)
}

/// A tangent structure on a thin category whose structure maps are the
/// unique morphisms between the required endpoints.
pub fn thin_tangent(name: &str, carrier: Arc<Fin>, t: Functor<Fin, Fin>) -> Result<TangentStructure<Fin>> {
    let provider = finite_pullbacks(carrier.clone());
    let tt = t.then(&t);
    let id = Functor::identity(carrier.clone());
    let nat = |label: &str, src: &Functor<Fin, Fin>, tgt: &Functor<Fin, Fin>| {
        let (c, s, g) = (carrier.clone(), src.clone(), tgt.clone());
        NatTrans::new(label, src.clone(), tgt.clone(), move |x: &String| unique_mor(&c, &s.obj(x)?, &g.obj(x)?))
    };
    let p = nat("p", &t, &id);
    let zero = nat("0", &id, &t);
    let lift = nat("ℓ", &t, &tt);
    let flip = nat("c", &tt, &tt);
    for x in carrier.object_list() {
        p.at(x)?;
        zero.at(x)?;
        lift.at(x)?;
        flip.at(x)?;
    }
    let (c, pp, tf, prov) = (carrier.clone(), p.clone(), t.clone(), provider.clone());
    let add = move |x: &String| {
        let px = pp.at(x)?;
        let cert = prov(&px, &px)?;
        unique_mor(&c, &cert.apex, &tf.obj(x)?)
    };
    Ok(TangentStructure::new(name, carrier, t, p, zero, add, lift, flip, provider))
}

/// Distributors `F(f)∘T_Y ⇒ T_X∘F(f)` of a pseudofunctor with thin fibres.
pub fn thin_distributors(pf: &Pseudofunctor<Fin>, tangents: &[Arc<TangentStructure<Fin>>]) -> Result<Vec<(String, Cell<Fin, Fin>)>> {
    let base = &pf.base;
    let mut out = Vec::new();
    for m in base.morphism_ids() {
        if base.is_identity(&m) {
            continue;
        }
        let (x, y) = (pf.src_pos(&m)?, pf.tgt_pos(&m)?);
        let ff = pf.transition(&m)?.clone();
        let (ty, tx) = (tangents[y].t.clone(), tangents[x].t.clone());
        let fib = pf.fibre_at(x).clone();
        let (ff2, ty2, tx2, fib2) = (ff.clone(), ty.clone(), tx.clone(), fib.clone());
        let cell = Cell::new(move |a: &String| unique_mor(&fib, &ff.obj(&ty.obj(a)?)?, &tx.obj(&ff.obj(a)?)?))
            .with_inverse(move |a: &String| unique_mor(&fib2, &tx2.obj(&ff2.obj(a)?)?, &ff2.obj(&ty2.obj(a)?)?));
        out.push((m, cell));
    }
    Ok(out)
}

/// The BG demo with the swap tangent structure on the fibre: `T = swap`,
/// `p_a = u⁻¹`, `p_b = u`.
pub fn bg_swap() -> Result<TangentIndexingFunctor<Fin>> {
    let pf = bg_pseudofunctor()?;
    let i = pf.fibre_at(0).clone();
    let ts = vec![Arc::new(thin_tangent("swap tangent", i.clone(), swap_functor(&i)?)?)];
    let ds = thin_distributors(&pf, &ts)?;
    TangentIndexingFunctor::new("BG/swap", pf, ts, ds)
}

/// The commutative square poset `0 ≤ l, r ≤ 1`.
pub fn square_poset() -> Result<Fin> {
    Fin::poset("P", &["0", "l", "r", "1"], |a, b| a == b || a == "0" || b == "1")
}

/// `id × swap` on `P × I`.
pub fn product_swap(pi: &Arc<Fin>, p: &Fin, i: &Fin) -> Result<Functor<Fin, Fin>> {
    let swap_o = |o: &str| if o == "a" { "b" } else { "a" };
    let swap_m = |m: &str| match m {
        "id_a" => "id_b",
        "id_b" => "id_a",
        "u" => "u⁻¹",
        _ => "u",
    };
    let mut om = BTreeMap::new();
    for x in p.object_list() {
        for o in i.object_list() {
            om.insert(format!("({x},{o})"), format!("({x},{})", swap_o(o)));
        }
    }
    let mut mm = BTreeMap::new();
    for f in p.morphism_ids() {
        for g in i.morphism_ids() {
            mm.insert(format!("({f},{g})"), format!("({f},{})", swap_m(&g)));
        }
    }
    Functor::from_tables("id×swap", pi.clone(), pi.clone(), om, mm)
}

/// `Bℤ/2` acting on `P × I` by `id × swap`, with the thin tangent structure
/// `T = id × swap`. Fibre pullbacks are genuine meets in `P`; `PC(F)` has
/// eight objects.
pub fn product_demo() -> Result<TangentIndexingFunctor<Fin>> {
    let p = square_poset()?;
    let i = Fin::walking_iso();
    let pi = Arc::new(Fin::product(&p, &i)?);
    let act = product_swap(&pi, &p, &i)?;
    let pf = z2_action("P×I", pi.clone(), act.clone())?;
    let ts = vec![Arc::new(thin_tangent("id×swap tangent", pi, act)?)];
    let ds = thin_distributors(&pf, &ts)?;
    TangentIndexingFunctor::new("P×I/swap", pf, ts, ds)
}

/// `Bℤ/2` swapping the two objects of a discrete category; `PC(F)` is empty.
pub fn discrete_pseudofunctor() -> Result<Arc<Pseudofunctor<Fin>>> {
    let d = Arc::new(Fin::discrete("D", &["a", "b"]));
    let act = Functor::from_tables(
        "swap",
        d.clone(),
        d.clone(),
        table(&[("a", "b"), ("b", "a")]),
        table(&[("id_a", "id_b"), ("id_b", "id_a")]),
    )?;
    z2_action("discrete BG", d, act)
}

/// The codiscrete category on `0..n`: one morphism `i→j` for every pair.
pub fn codiscrete(n: usize) -> Fin {
    let objs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let name = |i: usize, j: usize| if i == j { format!("id_{i}") } else { format!("{i}→{j}") };
    let mut mors = Vec::new();
    let mut comp = Vec::new();
    for i in 0..n {
        for j in 0..n {
            mors.push((name(i, j), i.to_string(), j.to_string()));
            for k in 0..n {
                if i != j && j != k {
                    comp.push((name(j, k), name(i, j), name(i, k)));
                }
            }
        }
    }
    let ids = (0..n).map(|i| (i.to_string(), name(i, i))).collect();
    Fin::new(format!("K{n}"), objs, mors, ids, comp).expect("codiscrete category")
}

fn cyclic_name(k: usize, m: usize) -> String {
    match (k % m, m) {
        (0, _) => "e".into(),
        (1, 2) => "s".into(),
        (k, _) => format!("s{k}"),
    }
}

/// `G_{n,m} = K_n × Bℤ/m`.
pub fn group_fibre(n: usize, m: usize) -> Result<Fin> {
    Fin::product(&codiscrete(n), &Fin::cyclic_group(m))
}

/// The object `(x,•)` of `G_{n,m}`.
pub fn g_obj(x: usize) -> String {
    format!("({x},•)")
}

/// The morphism `(x→y, k)` of `G_{n,m}`.
pub fn g_mor(x: usize, y: usize, k: usize, m: usize) -> String {
    let first = if x == y { format!("id_{x}") } else { format!("{x}→{y}") };
    format!("({first},{})", cyclic_name(k, m))
}

/// Decodes a `G_{n,m}` morphism into `(x, y, k)`.
pub fn g_parts(g: &Fin, f: &str, m: usize) -> Result<(usize, usize, usize)> {
    let pos = |o: String| -> Result<usize> {
        o.trim_start_matches('(')
            .split(',')
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CatError::Parse(format!("bad object {o}")))
    };
    let f = f.to_string();
    let (x, y) = (pos(g.source(&f))?, pos(g.target(&f))?);
    let tail = f.rsplit(',').next().unwrap_or("").trim_end_matches(')');
    let k = (0..m)
        .find(|&k| cyclic_name(k, m) == tail)
        .ok_or_else(|| CatError::Parse(format!("bad morphism {f}")))?;
    Ok((x, y, k))
}

/// The automorphism `(x, k) ↦ (perm[x], unit·k)` of `G_{n,m}`.
pub fn g_automorphism(g: &Arc<Fin>, n: usize, m: usize, perm: &[usize], unit: usize) -> Result<Functor<Fin, Fin>> {
    let mut om = BTreeMap::new();
    let mut mm = BTreeMap::new();
    for x in 0..n {
        om.insert(g_obj(x), g_obj(perm[x]));
        for y in 0..n {
            for k in 0..m {
                mm.insert(g_mor(x, y, k, m), g_mor(perm[x], perm[y], unit * k % m, m));
            }
        }
    }
    Functor::from_tables(format!("⟨{perm:?},{unit}⟩"), g.clone(), g.clone(), om, mm)
}

/// A cell on `G_{n,m}` whose component at `(x,•)` is the unique codiscrete
/// arrow between the boundary objects, paired with the group element `k`.
pub fn g_constant_cell(m: usize, src: Functor<Fin, Fin>, tgt: Functor<Fin, Fin>, k: usize) -> Cell<Fin, Fin> {
    let pos = |o: &str| -> Result<usize> {
        o.trim_start_matches('(')
            .split(',')
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CatError::Parse(format!("bad object {o}")))
    };
    let (s1, t1, s2, t2) = (src.clone(), tgt.clone(), src, tgt);
    Cell::new(move |a: &String| Ok(g_mor(pos(&s1.obj(a)?)?, pos(&t1.obj(a)?)?, k % m, m)))
        .with_inverse(move |a: &String| Ok(g_mor(pos(&t2.obj(a)?)?, pos(&s2.obj(a)?)?, (m - k % m) % m, m)))
}

/// `Bℤ/2` acting on `G_{n,m}` by `⟨perm, unit⟩` with constant compositor
/// `φ_{s,s} = (id, c)`. A pseudofunctor when `perm² = id`, `unit² ≡ 1` and
/// `unit·c ≡ c (mod m)`.
pub fn g_action(n: usize, m: usize, perm: &[usize], unit: usize, c: usize) -> Result<Arc<Pseudofunctor<Fin>>> {
    let g = Arc::new(group_fibre(n, m)?);
    let act = g_automorphism(&g, n, m, perm, unit)?;
    let ss = act.then(&act);
    let id = Functor::identity(g.clone());
    let phi = g_constant_cell(m, ss, id, c);
    let base = Arc::new(Fin::cyclic_group(2));
    Ok(Arc::new(Pseudofunctor::new(
        format!("G{n},{m}⟨{perm:?},{unit},{c}⟩"),
        base,
        vec![g],
        vec![("s".into(), act)],
        vec![(("s".into(), "s".into()), phi)],
    )?))
}

/// `Bℤ/3` as a one-object category acted on by inversion, with the
/// compositor `φ_{s,s}` set to the generator: natural but incoherent.
pub fn corrupted_compositor() -> Result<Pseudofunctor<Fin>> {
    let z3 = Arc::new(Fin::cyclic_group(3));
    let inv = Functor::from_tables(
        "inversion",
        z3.clone(),
        z3.clone(),
        table(&[("•", "•")]),
        table(&[("e", "e"), ("s1", "s2"), ("s2", "s1")]),
    )?;
    let phi = Cell::new(|_: &String| Ok("s1".to_string())).with_inverse(|_: &String| Ok("s2".to_string()));
    Pseudofunctor::new(
        "corrupted compositor",
        Arc::new(Fin::cyclic_group(2)),
        vec![z3],
        vec![("s".into(), inv)],
        vec![(("s".into(), "s".into()), phi)],
    )
}

/// The trivial `Bℤ/2` action on `Bℤ/3` with a candidate pseudocone whose
/// transition `τ_s = s1` violates the cocycle `τ_s∘F(s)(τ_s) = id`.
pub fn broken_cocycle() -> Result<(Arc<Pseudofunctor<Fin>>, PseudoconeObject<String, String>)> {
    let z3 = Arc::new(Fin::cyclic_group(3));
    let pf = z2_action("trivial action on Bℤ/3", z3.clone(), Functor::identity(z3))?;
    let obj = PseudoconeObject {
        components: vec!["•".to_string()],
        transitions: vec!["e".to_string(), "s1".to_string()],
    };
    Ok((pf, obj))
}

/// The trivial indexing functor on the identity action over `G_{n,2}` with
/// the distributor `T_s` replaced by the sheet swap `(id, s)`.
pub fn transposed_distributor(n: usize) -> Result<TangentIndexingFunctor<Fin>> {
    let g = Arc::new(group_fibre(n, 2)?);
    let id: Vec<usize> = (0..n).collect();
    let act = g_automorphism(&g, n, 2, &id, 1)?;
    let pf = z2_action("G/identity", g.clone(), act.clone())?;
    let ts = Arc::new(TangentStructure::identity(g.clone(), Some(finite_pullbacks(g.clone()))));
    let t = ts.t.clone();
    let cell = g_constant_cell(2, t.then(&act), act.then(&t), 1);
    TangentIndexingFunctor::new("transposed distributor", pf, vec![ts], vec![("s".into(), cell)])
}

/// The PC category of a demo.
pub fn pc_of(ix: &TangentIndexingFunctor<Fin>) -> Arc<PcCategory<Fin>> {
    crate::pc::pc_category(ix.pf.clone())
}
