use super::Category;
use crate::error::{structural, CatError, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// JSON form of a finite category. `compose` rows are `[g, f, g∘f]`.
/// Composites with an identity may be omitted; they default to the unit law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    pub identities: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
struct MorInfo {
    id: String,
    src: usize,
    tgt: usize,
}

/// A tabulated category with string descriptors.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    morphisms: Vec<MorInfo>,
    mor_index: HashMap<String, usize>,
    identities: Vec<usize>,
    table: HashMap<(usize, usize), usize>,
    homs: HashMap<(usize, usize), Vec<usize>>,
}

impl FiniteCategory {
    /// Builds and structurally validates a category. Composition rows are
    /// `(g, f, g∘f)`.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> Result<Self> {
        let name = name.into();
        let mut obj_index = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return structural(format!("{name}: duplicate object {o}"));
            }
        }
        let mut infos = Vec::new();
        let mut mor_index = HashMap::new();
        for (id, s, t) in morphisms {
            let src = *obj_index
                .get(&s)
                .ok_or_else(|| CatError::Structural(format!("{name}: {id} has unknown source {s}")))?;
            let tgt = *obj_index
                .get(&t)
                .ok_or_else(|| CatError::Structural(format!("{name}: {id} has unknown target {t}")))?;
            if mor_index.insert(id.clone(), infos.len()).is_some() {
                return structural(format!("{name}: duplicate morphism {id}"));
            }
            infos.push(MorInfo { id, src, tgt });
        }
        let mut ids = vec![usize::MAX; objects.len()];
        for (o, m) in identities {
            let oi = *obj_index
                .get(&o)
                .ok_or_else(|| CatError::Structural(format!("{name}: identity for unknown object {o}")))?;
            let mi = *mor_index
                .get(&m)
                .ok_or_else(|| CatError::Structural(format!("{name}: unknown identity morphism {m}")))?;
            if infos[mi].src != oi || infos[mi].tgt != oi {
                return structural(format!("{name}: identity {m} is not an endomorphism of {o}"));
            }
            ids[oi] = mi;
        }
        if let Some(i) = ids.iter().position(|&m| m == usize::MAX) {
            return structural(format!("{name}: object {} has no identity", objects[i]));
        }
        let mut table = HashMap::new();
        for (g, f, gf) in compose {
            let look = |m: &str| {
                mor_index
                    .get(m)
                    .copied()
                    .ok_or_else(|| CatError::Structural(format!("{name}: unknown morphism {m} in composition table")))
            };
            let (gi, fi, gfi) = (look(&g)?, look(&f)?, look(&gf)?);
            if infos[gi].src != infos[fi].tgt {
                return structural(format!("{name}: composite {g}∘{f} is not composable"));
            }
            if infos[gfi].src != infos[fi].src || infos[gfi].tgt != infos[gi].tgt {
                return structural(format!(
                    "{name}: composite {g}∘{f} = {gf} has mismatched endpoints"
                ));
            }
            if table.insert((gi, fi), gfi).is_some() {
                return structural(format!("{name}: composite {g}∘{f} given twice"));
            }
        }
        for (mi, m) in infos.iter().enumerate() {
            table.entry((ids[m.tgt], mi)).or_insert(mi);
            table.entry((mi, ids[m.src])).or_insert(mi);
        }
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (mi, m) in infos.iter().enumerate() {
            homs.entry((m.src, m.tgt)).or_default().push(mi);
        }
        Ok(FiniteCategory {
            name,
            objects,
            obj_index,
            morphisms: infos,
            mor_index,
            identities: ids,
            table,
            homs,
        })
    }

    pub fn from_doc(doc: &CategoryDoc) -> Result<Self> {
        FiniteCategory::new(
            doc.name.clone().unwrap_or_else(|| "category".into()),
            doc.objects.clone(),
            doc.morphisms
                .iter()
                .map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone()))
                .collect(),
            doc.identities
                .iter()
                .map(|(o, m)| (o.clone(), m.clone()))
                .collect(),
            doc.compose
                .iter()
                .map(|[g, f, gf]| (g.clone(), f.clone(), gf.clone()))
                .collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CategoryDoc =
            serde_json::from_str(text).map_err(|e| CatError::Parse(e.to_string()))?;
        FiniteCategory::from_doc(&doc)
    }

    /// Full tabulation, identity composites included, in deterministic order.
    pub fn to_doc(&self) -> CategoryDoc {
        let mut compose = Vec::new();
        for (gi, g) in self.morphisms.iter().enumerate() {
            for (fi, f) in self.morphisms.iter().enumerate() {
                if g.src == f.tgt {
                    if let Some(&gf) = self.table.get(&(gi, fi)) {
                        compose.push([g.id.clone(), f.id.clone(), self.morphisms[gf].id.clone()]);
                    }
                }
            }
        }
        CategoryDoc {
            name: Some(self.name.clone()),
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| MorphismDoc {
                    id: m.id.clone(),
                    src: self.objects[m.src].clone(),
                    tgt: self.objects[m.tgt].clone(),
                })
                .collect(),
            compose,
            identities: self
                .objects
                .iter()
                .zip(&self.identities)
                .map(|(o, &m)| (o.clone(), self.morphisms[m].id.clone()))
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_list(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_ids(&self) -> Vec<String> {
        self.morphisms.iter().map(|m| m.id.clone()).collect()
    }

    pub fn has_object(&self, o: &str) -> bool {
        self.obj_index.contains_key(o)
    }

    pub fn has_morphism(&self, m: &str) -> bool {
        self.mor_index.contains_key(m)
    }

    pub fn object_position(&self, o: &str) -> Result<usize> {
        self.obj_index
            .get(o)
            .copied()
            .ok_or_else(|| CatError::Structural(format!("{}: unknown object {o}", self.name)))
    }

    pub fn morphism_position(&self, m: &str) -> Result<usize> {
        self.mor_index
            .get(m)
            .copied()
            .ok_or_else(|| CatError::Structural(format!("{}: unknown morphism {m}", self.name)))
    }

    pub fn is_identity(&self, m: &str) -> bool {
        self.mor_index
            .get(m)
            .map(|&i| self.identities[self.morphisms[i].src] == i)
            .unwrap_or(false)
    }

    /// Whether the table has an entry for the composable pair `(g, f)`.
    pub fn has_composite(&self, g: &str, f: &str) -> bool {
        match (self.mor_index.get(g), self.mor_index.get(f)) {
            (Some(&gi), Some(&fi)) => self.table.contains_key(&(gi, fi)),
            _ => false,
        }
    }

    /// The terminal category `1`.
    pub fn terminal() -> Self {
        FiniteCategory::new(
            "1",
            vec!["*".into()],
            vec![("id_*".into(), "*".into(), "*".into())],
            vec![("*".into(), "id_*".into())],
            vec![],
        )
        .expect("terminal category")
    }

    /// The cyclic group of order `n` as a one-object category. Element `k`
    /// is named `e` for `k = 0`, `s` for `n = 2`, and `s{k}` otherwise.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let name = |k: usize| match (k, n) {
            (0, _) => "e".to_string(),
            (1, 2) => "s".to_string(),
            (k, _) => format!("s{k}"),
        };
        let mors = (0..n).map(|k| (name(k), "•".into(), "•".into())).collect();
        let mut comp = Vec::new();
        for a in 1..n {
            for b in 1..n {
                comp.push((name(a), name(b), name((a + b) % n)));
            }
        }
        FiniteCategory::new(
            format!("BZ/{n}"),
            vec!["•".into()],
            mors,
            vec![("•".into(), "e".into())],
            comp,
        )
        .expect("cyclic group")
    }

    /// The walking isomorphism `u: a ≅ b` with inverse `u⁻¹`.
    pub fn walking_iso() -> Self {
        FiniteCategory::new(
            "I",
            vec!["a".into(), "b".into()],
            vec![
                ("id_a".into(), "a".into(), "a".into()),
                ("id_b".into(), "b".into(), "b".into()),
                ("u".into(), "a".into(), "b".into()),
                ("u⁻¹".into(), "b".into(), "a".into()),
            ],
            vec![("a".into(), "id_a".into()), ("b".into(), "id_b".into())],
            vec![
                ("u⁻¹".into(), "u".into(), "id_a".into()),
                ("u".into(), "u⁻¹".into(), "id_b".into()),
            ],
        )
        .expect("walking isomorphism")
    }

    /// The discrete category on the given objects.
    pub fn discrete(name: &str, objects: &[&str]) -> Self {
        FiniteCategory::new(
            name,
            objects.iter().map(|o| o.to_string()).collect(),
            objects
                .iter()
                .map(|o| (format!("id_{o}"), o.to_string(), o.to_string()))
                .collect(),
            objects.iter().map(|o| (o.to_string(), format!("id_{o}"))).collect(),
            vec![],
        )
        .expect("discrete category")
    }

    /// The poset on `elements` with `leq` as order relation. The morphism
    /// `x ≤ y` is named `x≤y`; identities are `id_x`.
    pub fn poset(name: &str, elements: &[&str], leq: impl Fn(&str, &str) -> bool) -> Result<Self> {
        let mname = |x: &str, y: &str| {
            if x == y {
                format!("id_{x}")
            } else {
                format!("{x}≤{y}")
            }
        };
        let mut mors = Vec::new();
        for x in elements {
            for y in elements {
                if leq(x, y) {
                    mors.push((mname(x, y), x.to_string(), y.to_string()));
                }
            }
        }
        let mut comp = Vec::new();
        for x in elements {
            for y in elements {
                for z in elements {
                    if x != y && y != z && leq(x, y) && leq(y, z) {
                        if !leq(x, z) {
                            return structural(format!("{name}: order relation is not transitive"));
                        }
                        comp.push((mname(y, z), mname(x, y), mname(x, z)));
                    }
                }
            }
        }
        FiniteCategory::new(
            name,
            elements.iter().map(|e| e.to_string()).collect(),
            mors,
            elements.iter().map(|e| (e.to_string(), mname(e, e))).collect(),
            comp,
        )
    }

    /// The product category. Objects are `(x,y)`; morphisms `(f,g)`.
    pub fn product(a: &FiniteCategory, b: &FiniteCategory) -> Result<Self> {
        let pair = |x: &str, y: &str| format!("({x},{y})");
        let mut objects = Vec::new();
        for x in &a.objects {
            for y in &b.objects {
                objects.push(pair(x, y));
            }
        }
        let mut mors = Vec::new();
        for f in &a.morphisms {
            for g in &b.morphisms {
                mors.push((
                    pair(&f.id, &g.id),
                    pair(&a.objects[f.src], &b.objects[g.src]),
                    pair(&a.objects[f.tgt], &b.objects[g.tgt]),
                ));
            }
        }
        let mut ids = Vec::new();
        for (xi, x) in a.objects.iter().enumerate() {
            for (yi, y) in b.objects.iter().enumerate() {
                ids.push((
                    pair(x, y),
                    pair(&a.morphisms[a.identities[xi]].id, &b.morphisms[b.identities[yi]].id),
                ));
            }
        }
        let mut comp = Vec::new();
        for (&(g1, f1), &h1) in &a.table {
            for (&(g2, f2), &h2) in &b.table {
                comp.push((
                    pair(&a.morphisms[g1].id, &b.morphisms[g2].id),
                    pair(&a.morphisms[f1].id, &b.morphisms[f2].id),
                    pair(&a.morphisms[h1].id, &b.morphisms[h2].id),
                ));
            }
        }
        comp.sort();
        FiniteCategory::new(format!("{}×{}", a.name, b.name), objects, mors, ids, comp)
    }

    /// A copy with one composition entry overwritten; used to build broken fixtures.
    pub fn with_composite(&self, g: &str, f: &str, gf: &str) -> Result<Self> {
        let mut doc = self.to_doc();
        match doc.compose.iter_mut().find(|r| r[0] == g && r[1] == f) {
            Some(row) => row[2] = gf.to_string(),
            None => doc.compose.push([g.into(), f.into(), gf.into()]),
        }
        FiniteCategory::from_doc(&doc)
    }
}

impl Category for FiniteCategory {
    type Obj = String;
    type Mor = String;

    fn label(&self) -> String {
        self.name.clone()
    }

    fn source(&self, f: &String) -> String {
        match self.mor_index.get(f) {
            Some(&i) => self.objects[self.morphisms[i].src].clone(),
            None => String::new(),
        }
    }

    fn target(&self, f: &String) -> String {
        match self.mor_index.get(f) {
            Some(&i) => self.objects[self.morphisms[i].tgt].clone(),
            None => String::new(),
        }
    }

    fn identity(&self, a: &String) -> Result<String> {
        let i = self.object_position(a)?;
        Ok(self.morphisms[self.identities[i]].id.clone())
    }

    fn compose(&self, f: &String, g: &String) -> Result<String> {
        let fi = self.morphism_position(f)?;
        let gi = self.morphism_position(g)?;
        if self.morphisms[fi].src != self.morphisms[gi].tgt {
            return structural(format!("{}: {f}∘{g} is not composable", self.name));
        }
        match self.table.get(&(fi, gi)) {
            Some(&h) => Ok(self.morphisms[h].id.clone()),
            None => structural(format!("{}: composition table has no entry for {f}∘{g}", self.name)),
        }
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn objects(&self) -> Result<Vec<String>> {
        Ok(self.objects.clone())
    }

    fn hom(&self, a: &String, b: &String) -> Result<Vec<String>> {
        let ai = self.object_position(a)?;
        let bi = self.object_position(b)?;
        Ok(self
            .homs
            .get(&(ai, bi))
            .map(|v| v.iter().map(|&m| self.morphisms[m].id.clone()).collect())
            .unwrap_or_default())
    }

    fn morphisms(&self) -> Result<Vec<String>> {
        Ok(self.morphism_ids())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_composes_mod_n() {
        let g = FiniteCategory::cyclic_group(3);
        assert_eq!(g.compose(&"s2".into(), &"s2".into()).unwrap(), "s1");
        assert_eq!(g.compose(&"e".into(), &"s1".into()).unwrap(), "s1");
    }

    #[test]
    fn mismatched_composite_is_structural() {
        let err = FiniteCategory::new(
            "bad",
            vec!["a".into(), "b".into()],
            vec![
                ("id_a".into(), "a".into(), "a".into()),
                ("id_b".into(), "b".into(), "b".into()),
                ("f".into(), "a".into(), "b".into()),
            ],
            vec![("a".into(), "id_a".into()), ("b".into(), "id_b".into())],
            vec![("f".into(), "id_a".into(), "id_b".into())],
        )
        .unwrap_err();
        assert!(matches!(err, CatError::Structural(_)));
    }

    #[test]
    fn doc_round_trip() {
        let c = FiniteCategory::walking_iso();
        let d = c.to_doc();
        let text = serde_json::to_string(&d).unwrap();
        let back = FiniteCategory::from_json(&text).unwrap();
        assert_eq!(back.to_doc(), d);
    }
}
