use super::{Category, FiniteCategory};
use crate::error::{CatError, Result};
use std::collections::BTreeMap;
use std::sync::Arc;

type ObjFn<S, T> = Arc<dyn Fn(&<S as Category>::Obj) -> Result<<T as Category>::Obj> + Send + Sync>;
type MorFn<S, T> = Arc<dyn Fn(&<S as Category>::Mor) -> Result<<T as Category>::Mor> + Send + Sync>;
type CompFn<S, T> = Arc<dyn Fn(&<S as Category>::Obj) -> Result<<T as Category>::Mor> + Send + Sync>;

/// A functor given by its object and morphism maps.
pub struct Functor<S: Category, T: Category> {
    pub label: String,
    pub source: Arc<S>,
    pub target: Arc<T>,
    on_obj: ObjFn<S, T>,
    on_mor: MorFn<S, T>,
}

impl<S: Category, T: Category> Clone for Functor<S, T> {
    fn clone(&self) -> Self {
        Functor {
            label: self.label.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            on_obj: self.on_obj.clone(),
            on_mor: self.on_mor.clone(),
        }
    }
}

impl<S: Category, T: Category> Functor<S, T> {
    pub fn new(
        label: impl Into<String>,
        source: Arc<S>,
        target: Arc<T>,
        on_obj: impl Fn(&S::Obj) -> Result<T::Obj> + Send + Sync + 'static,
        on_mor: impl Fn(&S::Mor) -> Result<T::Mor> + Send + Sync + 'static,
    ) -> Self {
        Functor {
            label: label.into(),
            source,
            target,
            on_obj: Arc::new(on_obj),
            on_mor: Arc::new(on_mor),
        }
    }

    pub fn obj(&self, a: &S::Obj) -> Result<T::Obj> {
        (self.on_obj)(a)
    }

    pub fn mor(&self, f: &S::Mor) -> Result<T::Mor> {
        (self.on_mor)(f)
    }

    /// `g∘self`.
    pub fn then<U: Category>(&self, g: &Functor<T, U>) -> Functor<S, U> {
        let (f1, g1) = (self.clone(), g.clone());
        let (f2, g2) = (self.clone(), g.clone());
        Functor::new(
            format!("{}∘{}", g.label, self.label),
            self.source.clone(),
            g.target.clone(),
            move |a| g1.obj(&f1.obj(a)?),
            move |m| g2.mor(&f2.mor(m)?),
        )
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl<C: Category> Functor<C, C> {
    pub fn identity(c: Arc<C>) -> Self {
        Functor::new(
            format!("Id[{}]", c.label()),
            c.clone(),
            c,
            |a| Ok(a.clone()),
            |f| Ok(f.clone()),
        )
    }
}

/// `g∘f` as functors.
pub fn compose_functors<S: Category, T: Category, U: Category>(
    g: &Functor<T, U>,
    f: &Functor<S, T>,
) -> Functor<S, U> {
    f.then(g)
}

impl Functor<FiniteCategory, FiniteCategory> {
    /// A functor between finite categories from lookup tables. Identity
    /// morphisms may be omitted from `mor_map`; they go to identities.
    pub fn from_tables(
        label: impl Into<String>,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        obj_map: BTreeMap<String, String>,
        mor_map: BTreeMap<String, String>,
    ) -> Result<Self> {
        let label = label.into();
        for o in source.object_list() {
            let img = obj_map
                .get(o)
                .ok_or_else(|| CatError::Structural(format!("{label}: object {o} unmapped")))?;
            target.object_position(img)?;
        }
        let mut mm = mor_map;
        for m in source.morphism_ids() {
            if !mm.contains_key(&m) {
                if source.is_identity(&m) {
                    let img = target.identity(&obj_map[&source.source(&m)])?;
                    mm.insert(m.clone(), img);
                } else {
                    return Err(CatError::Structural(format!("{label}: morphism {m} unmapped")));
                }
            }
            target.morphism_position(&mm[&m])?;
        }
        let (om, lo, lm) = (Arc::new(obj_map), label.clone(), label.clone());
        let mm = Arc::new(mm);
        Ok(Functor::new(
            label,
            source,
            target,
            move |a| {
                om.get(a)
                    .cloned()
                    .ok_or_else(|| CatError::Structural(format!("{lo}: object {a} unmapped")))
            },
            move |f| {
                mm.get(f)
                    .cloned()
                    .ok_or_else(|| CatError::Structural(format!("{lm}: morphism {f} unmapped")))
            },
        ))
    }
}

/// A natural transformation `source ⇒ target`, given by components, with an
/// optional explicit inverse family.
pub struct NatTrans<S: Category, T: Category> {
    pub label: String,
    pub source: Functor<S, T>,
    pub target: Functor<S, T>,
    comp: CompFn<S, T>,
    inv: Option<CompFn<S, T>>,
}

impl<S: Category, T: Category> Clone for NatTrans<S, T> {
    fn clone(&self) -> Self {
        NatTrans {
            label: self.label.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            comp: self.comp.clone(),
            inv: self.inv.clone(),
        }
    }
}

impl<S: Category, T: Category> NatTrans<S, T> {
    pub fn new(
        label: impl Into<String>,
        source: Functor<S, T>,
        target: Functor<S, T>,
        comp: impl Fn(&S::Obj) -> Result<T::Mor> + Send + Sync + 'static,
    ) -> Self {
        NatTrans {
            label: label.into(),
            source,
            target,
            comp: Arc::new(comp),
            inv: None,
        }
    }

    /// Attaches an explicit inverse family.
    pub fn with_inverse(
        mut self,
        inv: impl Fn(&S::Obj) -> Result<T::Mor> + Send + Sync + 'static,
    ) -> Self {
        self.inv = Some(Arc::new(inv));
        self
    }

    pub fn has_explicit_inverse(&self) -> bool {
        self.inv.is_some()
    }

    pub fn at(&self, a: &S::Obj) -> Result<T::Mor> {
        (self.comp)(a)
    }

    /// Inverse of the component at `a`: the explicit family if attached,
    /// otherwise the target category's inverse search.
    pub fn inverse_at(&self, a: &S::Obj) -> Result<T::Mor> {
        if let Some(inv) = &self.inv {
            return inv(a);
        }
        let m = self.at(a)?;
        self.source
            .target
            .inverse(&m)?
            .ok_or_else(|| CatError::Hypothesis(format!("{}: component at {a} is not invertible", self.label)))
    }

    pub fn inverse(&self) -> NatTrans<S, T> {
        let me = self.clone();
        let fwd = self.comp.clone();
        NatTrans {
            label: format!("{}⁻¹", self.label),
            source: self.target.clone(),
            target: self.source.clone(),
            comp: Arc::new(move |a| me.inverse_at(a)),
            inv: Some(fwd),
        }
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `β∘α` with components `β_a∘α_a`.
    pub fn vertical(beta: &NatTrans<S, T>, alpha: &NatTrans<S, T>) -> NatTrans<S, T> {
        let (b, a) = (beta.clone(), alpha.clone());
        let tgt = alpha.source.target.clone();
        let t2 = tgt.clone();
        let mut out = NatTrans::new(
            format!("{}∘{}", beta.label, alpha.label),
            alpha.source.clone(),
            beta.target.clone(),
            move |x| tgt.compose(&b.at(x)?, &a.at(x)?),
        );
        if beta.inv.is_some() && alpha.inv.is_some() {
            let (b, a) = (beta.clone(), alpha.clone());
            out.inv = Some(Arc::new(move |x| t2.compose(&a.inverse_at(x)?, &b.inverse_at(x)?)));
        }
        out
    }

    /// Right whiskering `η∗F`, with components `η_{F(r)}`.
    pub fn right_whisker<R: Category>(&self, f: &Functor<R, S>) -> NatTrans<R, T> {
        let (e, f1) = (self.clone(), f.clone());
        let mut out = NatTrans::new(
            format!("{}∗{}", self.label, f.label),
            f.then(&self.source),
            f.then(&self.target),
            move |r| e.at(&f1.obj(r)?),
        );
        if self.inv.is_some() {
            let (e, f1) = (self.clone(), f.clone());
            out.inv = Some(Arc::new(move |r| e.inverse_at(&f1.obj(r)?)));
        }
        out
    }

    /// Left whiskering `G∗η`, with components `G(η_x)`.
    pub fn left_whisker<U: Category>(&self, g: &Functor<T, U>) -> NatTrans<S, U> {
        let (e, g1) = (self.clone(), g.clone());
        let mut out = NatTrans::new(
            format!("{}∗{}", g.label, self.label),
            self.source.then(g),
            self.target.then(g),
            move |x| g1.mor(&e.at(x)?),
        );
        if self.inv.is_some() {
            let (e, g1) = (self.clone(), g.clone());
            out.inv = Some(Arc::new(move |x| g1.mor(&e.inverse_at(x)?)));
        }
        out
    }

    /// Re-types the boundary functors; components are unchanged.
    pub fn retype(mut self, source: Functor<S, T>, target: Functor<S, T>) -> Self {
        self.source = source;
        self.target = target;
        self
    }
}

impl<S: Category, T: Category> NatTrans<S, T> {
    pub fn identity(f: &Functor<S, T>) -> Self {
        let (f1, f2) = (f.clone(), f.clone());
        NatTrans::new(format!("1[{}]", f.label), f.clone(), f.clone(), move |a| {
            f1.target.identity(&f1.obj(a)?)
        })
        .with_inverse(move |a| f2.target.identity(&f2.obj(a)?))
    }
}
