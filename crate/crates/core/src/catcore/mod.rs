//! Computable categories, functors, natural transformations and limit
//! certificates.
//!
//! Composition is written `compose(f, g) = f∘g`: `g` is applied first.

mod finite;
mod functor;
mod limits;
mod verify;

pub use finite::{CategoryDoc, FiniteCategory, MorphismDoc};
pub use functor::{compose_functors, Functor, NatTrans};
pub use limits::{
    certify_limit, find_equalizer, find_pullback, is_equalizer, is_pullback, limit_diagnostic,
    mediate_exhaustive, LimitCertificate, LimitKind,
};
pub use verify::{verify_category, verify_functor, verify_naturality};

use crate::error::{capability, CatError, Result};
use serde_json::Value;
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// A category whose morphism equality is decidable.
///
/// Finite backends answer [`Category::objects`] and [`Category::hom`];
/// symbolic backends refuse them with a capability error and are checked on
/// supplied samples instead. Descriptors are canonical: two morphisms are
/// equal iff their descriptors are equal.
pub trait Category: Send + Sync + 'static {
    type Obj: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static;
    type Mor: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static;

    fn label(&self) -> String;
    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// `f∘g`; fails with a structural error unless `target(g) = source(f)`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    fn is_finite(&self) -> bool {
        false
    }

    fn objects(&self) -> Result<Vec<Self::Obj>> {
        capability(format!("{} is not enumerable", self.label()))
    }

    fn hom(&self, _a: &Self::Obj, _b: &Self::Obj) -> Result<Vec<Self::Mor>> {
        capability(format!("{} has no enumerable hom-sets", self.label()))
    }

    /// All morphisms, grouped by (source, target) in object order.
    fn morphisms(&self) -> Result<Vec<Self::Mor>> {
        let objs = self.objects()?;
        let mut out = Vec::new();
        for a in &objs {
            for b in &objs {
                out.extend(self.hom(a, b)?);
            }
        }
        Ok(out)
    }

    /// Two-sided inverse, if one exists. Finite backends search exhaustively.
    fn inverse(&self, f: &Self::Mor) -> Result<Option<Self::Mor>> {
        if !self.is_finite() {
            return capability(format!(
                "{}: cannot decide invertibility of {f}",
                self.label()
            ));
        }
        let (a, b) = (self.source(f), self.target(f));
        let ida = self.identity(&a)?;
        let idb = self.identity(&b)?;
        for g in self.hom(&b, &a)? {
            if self.compose(&g, f)? == ida && self.compose(f, &g)? == idb {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// The unique morphism into `cert.apex` whose composites with the legs are
    /// `cone`. The default searches exhaustively.
    fn mediate(&self, cert: &LimitCertificate<Self>, cone: &[Self::Mor]) -> Result<Self::Mor>
    where
        Self: Sized,
    {
        mediate_exhaustive(self, cert, cone)
    }

    fn obj_json(&self, a: &Self::Obj) -> Value {
        Value::String(a.to_string())
    }

    fn mor_json(&self, f: &Self::Mor) -> Value {
        Value::String(f.to_string())
    }
}

/// Composes a non-empty chain right to left: `chain(c, [f, g, h]) = f∘g∘h`.
pub fn chain<C: Category>(c: &C, ms: &[C::Mor]) -> Result<C::Mor> {
    let (last, rest) = ms
        .split_last()
        .ok_or_else(|| CatError::Structural("empty composite".into()))?;
    let mut acc = last.clone();
    for m in rest.iter().rev() {
        acc = c.compose(m, &acc)?;
    }
    Ok(acc)
}

/// Objects and morphisms over which a law is checked.
#[derive(Debug, Clone)]
pub struct Samples<C: Category> {
    pub objects: Vec<C::Obj>,
    pub morphisms: Vec<C::Mor>,
}

impl<C: Category> Default for Samples<C> {
    fn default() -> Self {
        Samples {
            objects: Vec::new(),
            morphisms: Vec::new(),
        }
    }
}

impl<C: Category> Samples<C> {
    pub fn new(objects: Vec<C::Obj>, morphisms: Vec<C::Mor>) -> Self {
        Samples { objects, morphisms }
    }
}

/// The checking scope: everything on a finite backend, the samples otherwise.
#[derive(Debug, Clone)]
pub struct Scope<C: Category> {
    pub objects: Vec<C::Obj>,
    pub morphisms: Vec<C::Mor>,
    pub exhaustive: bool,
}

impl<C: Category> Scope<C> {
    pub fn of(c: &C, samples: Option<&Samples<C>>) -> Result<Self> {
        if c.is_finite() {
            return Ok(Scope {
                objects: c.objects()?,
                morphisms: c.morphisms()?,
                exhaustive: true,
            });
        }
        match samples {
            Some(s) => Ok(Scope {
                objects: s.objects.clone(),
                morphisms: s.morphisms.clone(),
                exhaustive: false,
            }),
            None => capability(format!(
                "{} is symbolic and no samples were supplied",
                c.label()
            )),
        }
    }
}
