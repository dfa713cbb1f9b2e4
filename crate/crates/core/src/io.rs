//! JSON documents for finite categories, pseudofunctors, tangent structures,
//! indexing functors, pseudocone objects and presented algebras.
//!
//! Documents may reference other documents by path; paths resolve against
//! the directory of the referring file.

use crate::catcore::{Category, CategoryDoc, FiniteCategory, Functor, LimitCertificate, NatTrans, Samples};
use crate::error::{structural, CatError, Result};
use crate::field::Rational;
use crate::pc::{tabulate, PcCategory, PcMor, PcObj};
use crate::pseudo::{Cell, FibreSamples, Pseudofunctor};
use crate::tangent::{finite_pullbacks, PullbackProvider, TangentIndexingFunctor, TangentStructure};
use crate::zariski::{AlgebraHom, FpAlgebra, Mode, QAlg, QHom};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

type Fin = FiniteCategory;
type Table = BTreeMap<String, String>;

/// A document given inline or by path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DocRef<T> {
    Path(String),
    Inline(T),
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub objects: Table,
    #[serde(default)]
    pub morphisms: Table,
}

/// `components[X]` is the component at object `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositorDoc {
    pub f: String,
    pub g: String,
    pub components: Table,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Table>,
}

/// Fibres keyed by base object; transitions keyed by non-identity base
/// morphism; compositors for pairs `(f, g)` with `g∘f` defined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudofunctorDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub base: DocRef<CategoryDoc>,
    pub fibres: BTreeMap<String, DocRef<CategoryDoc>>,
    #[serde(default)]
    pub transitions: BTreeMap<String, FunctorDoc>,
    #[serde(default)]
    pub compositors: Vec<CompositorDoc>,
}

/// A pinned pullback `f: A → C ← B: g` with apex and legs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackDoc {
    pub f: String,
    pub g: String,
    pub apex: String,
    pub p1: String,
    pub p2: String,
}

/// A tangent structure on a finite category by component tables. `add[X]`
/// has source the pullback `T₂X`; pullbacks not pinned are found by search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentDoc {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<DocRef<CategoryDoc>>,
    pub t: FunctorDoc,
    pub p: Table,
    pub zero: Table,
    pub add: Table,
    pub lift: Table,
    pub flip: Table,
    #[serde(default)]
    pub pullbacks: Vec<PullbackDoc>,
}

/// Fibres without an entry in `tangents` carry `𝕀`; distributors default
/// to identities only where both fibre tangents are `𝕀`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexingDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub pseudofunctor: DocRef<PseudofunctorDoc>,
    #[serde(default)]
    pub tangents: BTreeMap<String, DocRef<TangentDoc>>,
    #[serde(default)]
    pub distributors: BTreeMap<String, DistributorDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributorDoc {
    pub components: Table,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Table>,
}

/// A pseudocone object: components by base object, transitions by
/// non-identity base morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoconeDoc {
    pub components: Table,
    #[serde(default)]
    pub transitions: Table,
}

/// A finitely presented algebra; `base` is `"Q"`, a path, or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    #[serde(default = "ground_ref")]
    pub base: DocRef<Box<AlgebraDoc>>,
    pub gens: Vec<String>,
    #[serde(default)]
    pub rels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

fn ground_ref() -> DocRef<Box<AlgebraDoc>> {
    DocRef::Path("Q".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub images: Table,
}

/// Sampled objects and morphisms of a finite category, by id.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SamplesDoc {
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<String>,
}

/// Per-fibre samples keyed by base object; unlisted fibres are enumerated.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FibreSamplesDoc {
    pub fibres: BTreeMap<String, SamplesDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleHomDoc {
    pub source: DocRef<Box<AlgebraDoc>>,
    pub target: DocRef<Box<AlgebraDoc>>,
    #[serde(default)]
    pub images: Table,
}

/// Sample algebras and homomorphisms for a Zariski fibre.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSamplesDoc {
    #[serde(default)]
    pub objects: Vec<DocRef<Box<AlgebraDoc>>>,
    #[serde(default)]
    pub morphisms: Vec<SampleHomDoc>,
}

pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CatError::Parse(format!("{what}: {e}")))
}

/// Reads documents, resolving relative paths and sharing repeated loads.
#[derive(Default)]
pub struct Loader {
    categories: HashMap<PathBuf, Arc<Fin>>,
    algebras: HashMap<PathBuf, QAlg>,
}

impl Loader {
    pub fn new() -> Self {
        Loader::default()
    }

    fn read(&self, path: &Path) -> Result<String> {
        std::fs::read_to_string(path).map_err(|e| CatError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn read_doc<T: DeserializeOwned>(&self, path: &Path) -> Result<T> {
        parse_json(&self.read(path)?, &path.display().to_string())
    }

    fn resolve<T: DeserializeOwned + Clone>(&self, r: &DocRef<T>, dir: &Path) -> Result<(T, PathBuf)> {
        match r {
            DocRef::Inline(t) => Ok((t.clone(), dir.to_path_buf())),
            DocRef::Path(p) => {
                let path = dir.join(p);
                let doc = self.read_doc(&path)?;
                Ok((doc, parent(&path)))
            }
        }
    }

    pub fn category_file(&mut self, path: &Path) -> Result<Arc<Fin>> {
        self.category(&DocRef::Path(path.display().to_string()), Path::new(""))
    }

    fn category(&mut self, r: &DocRef<CategoryDoc>, dir: &Path) -> Result<Arc<Fin>> {
        match r {
            DocRef::Inline(doc) => Ok(Arc::new(Fin::from_doc(doc)?)),
            DocRef::Path(p) => {
                let path = dir.join(p);
                if let Some(c) = self.categories.get(&path) {
                    return Ok(c.clone());
                }
                let c = Arc::new(Fin::from_doc(&self.read_doc(&path)?)?);
                self.categories.insert(path, c.clone());
                Ok(c)
            }
        }
    }

    pub fn pseudofunctor_file(&mut self, path: &Path) -> Result<Arc<Pseudofunctor<Fin>>> {
        let doc: PseudofunctorDoc = self.read_doc(path)?;
        self.pseudofunctor(&doc, &parent(path))
    }

    pub fn pseudofunctor(&mut self, doc: &PseudofunctorDoc, dir: &Path) -> Result<Arc<Pseudofunctor<Fin>>> {
        let base = self.category(&doc.base, dir)?;
        let mut fibres = Vec::new();
        for x in base.object_list() {
            let r = doc
                .fibres
                .get(x)
                .ok_or_else(|| CatError::Structural(format!("no fibre for base object {x}")))?;
            fibres.push(self.category(r, dir)?);
        }
        for x in doc.fibres.keys() {
            base.object_position(x)?;
        }
        let mut transitions = Vec::new();
        for (m, t) in &doc.transitions {
            let (x, y) = (base.object_position(&base.source(m))?, base.object_position(&base.target(m))?);
            let f = Functor::from_tables(format!("F({m})"), fibres[y].clone(), fibres[x].clone(), t.objects.clone(), t.morphisms.clone())?;
            transitions.push((m.clone(), f));
        }
        let compositors = doc
            .compositors
            .iter()
            .map(|c| ((c.f.clone(), c.g.clone()), table_cell(&c.components, c.inverse.as_ref())))
            .collect();
        let name = doc.name.clone().unwrap_or_else(|| "F".into());
        Ok(Arc::new(Pseudofunctor::new(name, base, fibres, transitions, compositors)?))
    }

    pub fn tangent_file(&mut self, path: &Path) -> Result<TangentStructure<Fin>> {
        let doc: TangentDoc = self.read_doc(path)?;
        let dir = parent(path);
        let r = doc
            .category
            .clone()
            .ok_or_else(|| CatError::Structural("tangent document names no category".into()))?;
        let c = self.category(&r, &dir)?;
        tangent_from_doc(&doc, c)
    }

    pub fn indexing_file(&mut self, path: &Path) -> Result<TangentIndexingFunctor<Fin>> {
        let doc: IndexingDoc = self.read_doc(path)?;
        self.indexing(&doc, &parent(path))
    }

    pub fn indexing(&mut self, doc: &IndexingDoc, dir: &Path) -> Result<TangentIndexingFunctor<Fin>> {
        let (pdoc, pdir) = self.resolve(&doc.pseudofunctor, dir)?;
        let pf = self.pseudofunctor(&pdoc, &pdir)?;
        let base = pf.base.clone();
        let mut tangents = Vec::new();
        for (x, o) in base.object_list().iter().enumerate() {
            let fib = pf.fibre_at(x).clone();
            let ts = match doc.tangents.get(o) {
                Some(r) => tangent_from_doc(&self.resolve(r, dir)?.0, fib)?,
                None => TangentStructure::identity(fib, None),
            };
            tangents.push(Arc::new(ts));
        }
        for o in doc.tangents.keys() {
            base.object_position(o)?;
        }
        let mut distributors = Vec::new();
        for m in base.morphism_ids() {
            if base.is_identity(&m) {
                continue;
            }
            let cell = match doc.distributors.get(&m) {
                Some(d) => table_cell(&d.components, d.inverse.as_ref()),
                None => {
                    let (x, y) = (pf.src_pos(&m)?, pf.tgt_pos(&m)?);
                    if doc.tangents.contains_key(&base.object_list()[x]) || doc.tangents.contains_key(&base.object_list()[y]) {
                        return structural(format!("no distributor for {m}"));
                    }
                    let (f1, f2) = (pf.transition(&m)?.clone(), pf.transition(&m)?.clone());
                    Cell::new(move |a| f1.target.identity(&f1.obj(a)?)).with_inverse(move |a| f2.target.identity(&f2.obj(a)?))
                }
            };
            distributors.push((m, cell));
        }
        for m in doc.distributors.keys() {
            base.morphism_position(m)?;
        }
        let name = doc.name.clone().unwrap_or_else(|| pf.name.clone());
        TangentIndexingFunctor::new(name, pf, tangents, distributors)
    }

    pub fn pseudocone(&self, pc: &PcCategory<Fin>, path: &Path) -> Result<PcObj<Fin>> {
        let doc: PseudoconeDoc = self.read_doc(path)?;
        pseudocone_from_doc(pc, &doc)
    }

    pub fn algebra_file(&mut self, path: &Path) -> Result<QAlg> {
        self.algebra_ref(&DocRef::Path(path.display().to_string()), Path::new(""))
    }

    fn algebra_ref(&mut self, r: &DocRef<Box<AlgebraDoc>>, dir: &Path) -> Result<QAlg> {
        match r {
            DocRef::Path(p) if p == "Q" => Ok(FpAlgebra::ground()),
            DocRef::Inline(doc) => self.algebra(doc, dir),
            DocRef::Path(p) => {
                let path = dir.join(p);
                if let Some(a) = self.algebras.get(&path) {
                    return Ok(a.clone());
                }
                let doc: AlgebraDoc = self.read_doc(&path)?;
                let a = self.algebra(&doc, &parent(&path))?;
                self.algebras.insert(path, a.clone());
                Ok(a)
            }
        }
    }

    pub fn algebra(&mut self, doc: &AlgebraDoc, dir: &Path) -> Result<QAlg> {
        let base = self.algebra_ref(&doc.base, dir)?;
        let base = if base.is_ground() { None } else { Some(base) };
        let gens: Vec<&str> = doc.gens.iter().map(String::as_str).collect();
        let rels: Vec<&str> = doc.rels.iter().map(String::as_str).collect();
        FpAlgebra::parse_with_mode(base, &gens, &rels, doc.mode.unwrap_or_default())
    }

    pub fn hom_file(&self, path: &Path, source: &QAlg, target: &QAlg) -> Result<QHom> {
        let doc: HomDoc = self.read_doc(path)?;
        hom_from_doc(&doc, source, target)
    }
}

impl Loader {
    /// Samples of `c`; every id must name an object or morphism of `c`.
    pub fn samples(&self, path: &Path, c: &Fin) -> Result<Samples<Fin>> {
        let doc: SamplesDoc = self.read_doc(path)?;
        samples_from_doc(&doc, c)
    }

    /// One sample set per fibre of `pf`, in base-object order.
    pub fn fibre_samples(&self, path: &Path, pf: &Pseudofunctor<Fin>) -> Result<FibreSamples<Fin>> {
        let doc: FibreSamplesDoc = self.read_doc(path)?;
        for x in doc.fibres.keys() {
            pf.base.object_position(x)?;
        }
        pf.base
            .object_list()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let fib = pf.fibre_at(i);
                match doc.fibres.get(x) {
                    Some(d) => samples_from_doc(d, fib),
                    None => Ok(Samples {
                        objects: fib.object_list().to_vec(),
                        morphisms: fib.morphism_ids(),
                    }),
                }
            })
            .collect()
    }

    /// Sample algebras and homomorphisms.
    pub fn algebra_samples(&mut self, path: &Path) -> Result<(Vec<QAlg>, Vec<QHom>)> {
        let doc: AlgebraSamplesDoc = self.read_doc(path)?;
        let dir = parent(path);
        let objects = doc.objects.iter().map(|r| self.algebra_ref(r, &dir)).collect::<Result<Vec<_>>>()?;
        let mut morphisms = Vec::new();
        for m in &doc.morphisms {
            let (s, t) = (self.algebra_ref(&m.source, &dir)?, self.algebra_ref(&m.target, &dir)?);
            morphisms.push(hom_from_doc(&HomDoc { images: m.images.clone() }, &s, &t)?);
        }
        Ok((objects, morphisms))
    }
}

fn samples_from_doc(doc: &SamplesDoc, c: &Fin) -> Result<Samples<Fin>> {
    for o in &doc.objects {
        c.object_position(o)?;
    }
    for m in &doc.morphisms {
        c.morphism_position(m)?;
    }
    Ok(Samples {
        objects: doc.objects.clone(),
        morphisms: doc.morphisms.clone(),
    })
}

fn parent(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn lookup(t: &Table, a: &str, what: &str) -> Result<String> {
    t.get(a).cloned().ok_or_else(|| CatError::Structural(format!("{what}: no component at {a}")))
}

fn table_cell(comp: &Table, inv: Option<&Table>) -> Cell<Fin, Fin> {
    let c = comp.clone();
    let cell = Cell::new(move |a: &String| lookup(&c, a, "component"));
    match inv {
        Some(i) => {
            let i = i.clone();
            cell.with_inverse(move |a: &String| lookup(&i, a, "inverse component"))
        }
        None => cell,
    }
}

fn table_nat(label: &str, source: Functor<Fin, Fin>, target: Functor<Fin, Fin>, t: &Table) -> NatTrans<Fin, Fin> {
    let t = t.clone();
    let l = label.to_string();
    NatTrans::new(label, source, target, move |a: &String| lookup(&t, a, &l))
}

/// A tangent structure on `c` from component tables.
pub fn tangent_from_doc(doc: &TangentDoc, c: Arc<Fin>) -> Result<TangentStructure<Fin>> {
    let t = Functor::from_tables("T", c.clone(), c.clone(), doc.t.objects.clone(), doc.t.morphisms.clone())?;
    let id = Functor::identity(c.clone());
    let tt = t.then(&t);
    let p = table_nat("p", t.clone(), id.clone(), &doc.p);
    let zero = table_nat("0", id, t.clone(), &doc.zero);
    let lift = table_nat("ℓ", t.clone(), tt.clone(), &doc.lift);
    let flip = table_nat("c", tt.clone(), tt, &doc.flip);
    let add = doc.add.clone();
    let mut pinned = HashMap::new();
    for pb in &doc.pullbacks {
        for m in [&pb.f, &pb.g, &pb.p1, &pb.p2] {
            c.morphism_position(m)?;
        }
        c.object_position(&pb.apex)?;
        let cert = LimitCertificate::pullback(pb.f.clone(), pb.g.clone(), pb.apex.clone(), pb.p1.clone(), pb.p2.clone());
        pinned.insert((pb.f.clone(), pb.g.clone()), cert);
    }
    let search = finite_pullbacks(c.clone());
    let provider: PullbackProvider<Fin> = Arc::new(move |f: &String, g: &String| match pinned.get(&(f.clone(), g.clone())) {
        Some(cert) => Ok(cert.clone()),
        None => search(f, g),
    });
    let name = doc.name.clone().unwrap_or_else(|| "T".into());
    Ok(TangentStructure::new(name, c, t, p, zero, move |a: &String| lookup(&add, a, "+"), lift, flip, provider))
}

pub fn pseudocone_from_doc(pc: &PcCategory<Fin>, doc: &PseudoconeDoc) -> Result<PcObj<Fin>> {
    let base = pc.base();
    let comps = base
        .object_list()
        .iter()
        .map(|x| lookup(&doc.components, x, "pseudocone"))
        .collect::<Result<Vec<_>>>()?;
    let ts: Vec<(&str, String)> = doc.transitions.iter().map(|(m, t)| (m.as_str(), t.clone())).collect();
    pc.object(comps, &ts)
}

pub fn hom_from_doc(doc: &HomDoc, source: &QAlg, target: &QAlg) -> Result<QHom> {
    let pairs: Vec<(&str, &str)> = doc.images.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    AlgebraHom::parse(source.clone(), target.clone(), &pairs)
}

/// Tabulates a pseudofunctor with finite fibres, inlining every category.
pub fn pseudofunctor_doc(pf: &Pseudofunctor<Fin>) -> Result<PseudofunctorDoc> {
    let base = &pf.base;
    let mut fibres = BTreeMap::new();
    for (x, o) in base.object_list().iter().enumerate() {
        fibres.insert(o.clone(), DocRef::Inline(pf.fibre_at(x).to_doc()));
    }
    let mut transitions = BTreeMap::new();
    for m in base.morphism_ids() {
        if base.is_identity(&m) {
            continue;
        }
        transitions.insert(m.clone(), functor_doc(pf.transition(&m)?)?);
    }
    let mut compositors = Vec::new();
    for (f, g) in pf.composable_pairs() {
        if base.is_identity(&f) || base.is_identity(&g) {
            continue;
        }
        let phi = pf.compositor(&f, &g)?;
        let y = pf.tgt_pos(&g)?;
        let mut components = BTreeMap::new();
        for a in pf.fibre_at(y).object_list() {
            components.insert(a.clone(), phi.at(a)?);
        }
        compositors.push(CompositorDoc { f, g, components, inverse: None });
    }
    Ok(PseudofunctorDoc {
        name: Some(pf.name.clone()),
        base: DocRef::Inline(base.to_doc()),
        fibres,
        transitions,
        compositors,
    })
}

fn functor_doc(f: &Functor<Fin, Fin>) -> Result<FunctorDoc> {
    let mut objects = BTreeMap::new();
    for a in f.source.object_list() {
        objects.insert(a.clone(), f.obj(a)?);
    }
    let mut morphisms = BTreeMap::new();
    for m in f.source.morphism_ids() {
        if !f.source.is_identity(&m) {
            morphisms.insert(m.clone(), f.mor(&m)?);
        }
    }
    Ok(FunctorDoc { objects, morphisms })
}

/// Tabulates a tangent structure on a finite category, pinning `T₂X` and
/// `T₃X` as the structure computes them.
pub fn tangent_doc(ts: &TangentStructure<Fin>) -> Result<TangentDoc> {
    let c = &*ts.carrier;
    let mut doc = TangentDoc {
        name: Some(ts.name.clone()),
        category: Some(DocRef::Inline(c.to_doc())),
        t: functor_doc(&ts.t)?,
        p: BTreeMap::new(),
        zero: BTreeMap::new(),
        add: BTreeMap::new(),
        lift: BTreeMap::new(),
        flip: BTreeMap::new(),
        pullbacks: Vec::new(),
    };
    for x in c.object_list() {
        doc.p.insert(x.clone(), ts.p.at(x)?);
        doc.zero.insert(x.clone(), ts.zero.at(x)?);
        doc.add.insert(x.clone(), ts.add_at(x)?);
        doc.lift.insert(x.clone(), ts.lift.at(x)?);
        doc.flip.insert(x.clone(), ts.flip.at(x)?);
        for cert in [ts.t2_cert(x)?, ts.t3_cert(x)?] {
            let pb = PullbackDoc {
                f: cert.diagram[0].clone(),
                g: cert.diagram[1].clone(),
                apex: cert.apex.clone(),
                p1: cert.legs[0].clone(),
                p2: cert.legs[1].clone(),
            };
            if !doc.pullbacks.contains(&pb) {
                doc.pullbacks.push(pb);
            }
        }
    }
    Ok(doc)
}

/// Tabulates an indexing functor with finite fibres, inlining everything.
pub fn indexing_doc(ix: &TangentIndexingFunctor<Fin>) -> Result<IndexingDoc> {
    let pf = &ix.pf;
    let base = &pf.base;
    let mut tangents = BTreeMap::new();
    for (x, o) in base.object_list().iter().enumerate() {
        let mut t = tangent_doc(ix.fibre_tangent_at(x))?;
        t.category = None;
        tangents.insert(o.clone(), DocRef::Inline(t));
    }
    let mut distributors = BTreeMap::new();
    for m in base.morphism_ids() {
        if base.is_identity(&m) {
            continue;
        }
        let d = ix.distributor(&m)?;
        let y = pf.tgt_pos(&m)?;
        let mut components = BTreeMap::new();
        for a in pf.fibre_at(y).object_list() {
            components.insert(a.clone(), d.at(a)?);
        }
        distributors.insert(m, DistributorDoc { components, inverse: None });
    }
    Ok(IndexingDoc {
        name: Some(ix.name.clone()),
        pseudofunctor: DocRef::Inline(pseudofunctor_doc(pf)?),
        tangents,
        distributors,
    })
}

pub fn algebra_doc(a: &FpAlgebra<Rational>) -> AlgebraDoc {
    let base = match a.base() {
        Some(b) => DocRef::Inline(Box::new(algebra_doc(b))),
        None => ground_ref(),
    };
    let names = a.var_names();
    AlgebraDoc {
        base,
        gens: a.gens().to_vec(),
        rels: a.rels().iter().map(|r| r.render(&names)).collect(),
        mode: (a.mode() != Mode::default()).then_some(a.mode()),
    }
}

/// `PC(F)` tabulated with generated ids, and the pseudocone behind each id.
pub struct TabulatedPc {
    pub category: Fin,
    pub objects: Vec<PcObj<Fin>>,
    pub morphisms: Vec<PcMor<Fin>>,
    obj_ids: HashMap<PcObj<Fin>, String>,
    mor_ids: HashMap<PcMor<Fin>, String>,
}

impl TabulatedPc {
    pub fn new(pc: &PcCategory<Fin>) -> Result<Self> {
        let (category, objects, morphisms) = tabulate(pc)?;
        let obj_ids = objects.iter().enumerate().map(|(i, a)| (a.clone(), format!("A{i}"))).collect();
        let mor_ids = morphisms.iter().enumerate().map(|(i, m)| (m.clone(), format!("m{i}"))).collect();
        Ok(TabulatedPc {
            category,
            objects,
            morphisms,
            obj_ids,
            mor_ids,
        })
    }

    pub fn obj_id(&self, a: &PcObj<Fin>) -> Result<String> {
        self.obj_ids
            .get(a)
            .cloned()
            .ok_or_else(|| CatError::Invariant("pseudocone outside the tabulation".into()))
    }

    pub fn mor_id(&self, m: &PcMor<Fin>) -> Result<String> {
        self.mor_ids
            .get(m)
            .cloned()
            .ok_or_else(|| CatError::Invariant("pseudocone morphism outside the tabulation".into()))
    }

    /// The category document with a legend from ids to pseudocone data.
    pub fn to_json(&self, pc: &PcCategory<Fin>) -> Value {
        let legend: BTreeMap<String, Value> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, a)| (format!("A{i}"), pc.obj_json(a)))
            .collect();
        serde_json::json!({"category": self.category.to_doc(), "pseudocones": legend})
    }

    /// A tangent structure on `PC(F)` as tables over the generated ids.
    pub fn tangent_doc(&self, ts: &TangentStructure<PcCategory<Fin>>) -> Result<TangentDoc> {
        let mut t = FunctorDoc::default();
        for a in &self.objects {
            t.objects.insert(self.obj_id(a)?, self.obj_id(&ts.t.obj(a)?)?);
        }
        for m in &self.morphisms {
            if m.source == m.target && ts.carrier.identity(&m.source)? == *m {
                continue;
            }
            t.morphisms.insert(self.mor_id(m)?, self.mor_id(&ts.t.mor(m)?)?);
        }
        let mut doc = TangentDoc {
            name: Some(ts.name.clone()),
            category: Some(DocRef::Inline(self.category.to_doc())),
            t,
            p: BTreeMap::new(),
            zero: BTreeMap::new(),
            add: BTreeMap::new(),
            lift: BTreeMap::new(),
            flip: BTreeMap::new(),
            pullbacks: Vec::new(),
        };
        for a in &self.objects {
            let x = self.obj_id(a)?;
            doc.p.insert(x.clone(), self.mor_id(&ts.p.at(a)?)?);
            doc.zero.insert(x.clone(), self.mor_id(&ts.zero.at(a)?)?);
            doc.add.insert(x.clone(), self.mor_id(&ts.add_at(a)?)?);
            doc.lift.insert(x.clone(), self.mor_id(&ts.lift.at(a)?)?);
            doc.flip.insert(x, self.mor_id(&ts.flip.at(a)?)?);
            for cert in [ts.t2_cert(a)?, ts.t3_cert(a)?] {
                let pb = PullbackDoc {
                    f: self.mor_id(&cert.diagram[0])?,
                    g: self.mor_id(&cert.diagram[1])?,
                    apex: self.obj_id(&cert.apex)?,
                    p1: self.mor_id(&cert.legs[0])?,
                    p2: self.mor_id(&cert.legs[1])?,
                };
                if !doc.pullbacks.contains(&pb) {
                    doc.pullbacks.push(pb);
                }
            }
        }
        Ok(doc)
    }
}
