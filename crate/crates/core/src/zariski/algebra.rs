//! Finitely presented algebras, their homomorphisms, tangent presentations
//! and pushouts.

use super::groebner::{groebner_basis, normal_form, step_budget};
use super::poly::{is_identifier, parse_poly, Poly};
use crate::error::{structural, CatError, Result};
use crate::field::Field;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

/// Which relations a tangent presentation imposes on differentials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `T(B) = Sym_B(Ω¹_{B/A})`: no relations between differentials.
    #[default]
    Sym,
    /// Adds `dxᵢ·dxⱼ = 0` for the differentials of each tangent level.
    SquareZero,
}

/// `base[gens]/(rels)`. Relations are polynomials in the base variables
/// followed by the own generators, stored monic, reduced modulo the base
/// ideal, sorted and deduplicated, so equal presentations compare equal.
pub struct FpAlgebra<F: Field> {
    base: Option<Arc<FpAlgebra<F>>>,
    gens: Vec<String>,
    rels: Vec<Poly<F>>,
    marks: Vec<bool>,
    depth: usize,
    mode: Mode,
    basis: OnceLock<Result<Vec<Poly<F>>>>,
    tangent: OnceLock<Result<Alg<F>>>,
    t2: OnceLock<Result<Pushout<F>>>,
}

pub type Alg<F> = Arc<FpAlgebra<F>>;

impl<F: Field> PartialEq for FpAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.gens == other.gens
            && self.rels == other.rels
            && self.marks == other.marks
            && self.depth == other.depth
            && self.mode == other.mode
    }
}

impl<F: Field> Eq for FpAlgebra<F> {}

impl<F: Field> Hash for FpAlgebra<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.gens.hash(state);
        self.rels.hash(state);
        self.marks.hash(state);
        self.depth.hash(state);
        self.mode.hash(state);
    }
}

impl<F: Field> fmt::Debug for FpAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for FpAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.base {
            Some(b) => write!(f, "({b})")?,
            None => write!(f, "Q")?,
        }
        if !self.gens.is_empty() {
            write!(f, "[{}]", self.gens.join(","))?;
        }
        if !self.rels.is_empty() {
            let names = self.var_names();
            let rs: Vec<String> = self.rels.iter().map(|r| r.render(&names)).collect();
            write!(f, "/({})", rs.join(", "))?;
        }
        Ok(())
    }
}

/// Name of the differential of `g` at tangent depth `depth`.
pub fn differential_name(depth: usize, g: &str) -> String {
    match depth {
        0 => format!("d{g}"),
        1 => format!("delta_{g}"),
        n => format!("d{}_{g}", n + 1),
    }
}

impl<F: Field> FpAlgebra<F> {
    /// The ground field as an algebra.
    pub fn ground() -> Alg<F> {
        Arc::new(FpAlgebra {
            base: None,
            gens: Vec::new(),
            rels: Vec::new(),
            marks: Vec::new(),
            depth: 0,
            mode: Mode::Sym,
            basis: OnceLock::new(),
            tangent: OnceLock::new(),
            t2: OnceLock::new(),
        })
    }

    pub fn new(base: Option<Alg<F>>, gens: Vec<String>, rels: Vec<Poly<F>>) -> Result<Alg<F>> {
        let n = gens.len();
        FpAlgebra::build(base, gens, rels, vec![false; n], 0, Mode::Sym)
    }

    pub fn with_mode(base: Option<Alg<F>>, gens: Vec<String>, rels: Vec<Poly<F>>, mode: Mode) -> Result<Alg<F>> {
        let n = gens.len();
        FpAlgebra::build(base, gens, rels, vec![false; n], 0, mode)
    }

    /// Parses generators and relations over an optional base.
    pub fn parse(base: Option<Alg<F>>, gens: &[&str], rels: &[&str]) -> Result<Alg<F>> {
        FpAlgebra::parse_with_mode(base, gens, rels, Mode::Sym)
    }

    pub fn parse_with_mode(base: Option<Alg<F>>, gens: &[&str], rels: &[&str], mode: Mode) -> Result<Alg<F>> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let mut names = base.as_ref().map(|b| b.var_names()).unwrap_or_default();
        names.extend(gens.iter().cloned());
        let rels = rels.iter().map(|r| parse_poly(r, &names)).collect::<Result<Vec<_>>>()?;
        FpAlgebra::with_mode(base, gens, rels, mode)
    }

    pub(crate) fn build(
        base: Option<Alg<F>>,
        gens: Vec<String>,
        rels: Vec<Poly<F>>,
        marks: Vec<bool>,
        depth: usize,
        mode: Mode,
    ) -> Result<Alg<F>> {
        let base = base.filter(|b| !(b.base.is_none() && b.gens.is_empty()));
        let mut names = base.as_ref().map(|b| b.var_names()).unwrap_or_default();
        for g in &gens {
            if !is_identifier(g) {
                return structural(format!("invalid generator name {g:?}"));
            }
            if names.contains(g) {
                return structural(format!("generator {g} is already defined"));
            }
            names.push(g.clone());
        }
        let n = names.len();
        let base_basis = match &base {
            Some(b) => b.basis()?.iter().map(|p| p.extend(n)).collect(),
            None => Vec::new(),
        };
        let mut out = Vec::new();
        for r in rels {
            if r.nvars() != n {
                return structural(format!("relation over {} variables in an algebra with {n}", r.nvars()));
            }
            let r = normal_form(&r, &base_basis);
            if !r.is_zero() {
                out.push(r.monic());
            }
        }
        out.sort_by(|a, b| a.leading().map(|l| l.0).cmp(&b.leading().map(|l| l.0)).then_with(|| a.render(&names).cmp(&b.render(&names))));
        out.dedup();
        Ok(Arc::new(FpAlgebra {
            base,
            gens,
            rels: out,
            marks,
            depth,
            mode,
            basis: OnceLock::new(),
            tangent: OnceLock::new(),
            t2: OnceLock::new(),
        }))
    }

    pub fn base(&self) -> Option<&Alg<F>> {
        self.base.as_ref()
    }

    /// The base, with the ground field standing in for `None`.
    pub fn base_or_ground(&self) -> Alg<F> {
        self.base.clone().unwrap_or_else(FpAlgebra::ground)
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn rels(&self) -> &[Poly<F>] {
        &self.rels
    }

    pub fn marks(&self) -> &[bool] {
        &self.marks
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_ground(&self) -> bool {
        self.base.is_none() && self.gens.is_empty() && self.rels.is_empty()
    }

    /// Number of base variables (all ancestors).
    pub fn base_vars(&self) -> usize {
        self.base.as_ref().map_or(0, |b| b.nvars())
    }

    pub fn nvars(&self) -> usize {
        self.base_vars() + self.gens.len()
    }

    /// Base variable names followed by the own generators.
    pub fn var_names(&self) -> Vec<String> {
        let mut names = self.base.as_ref().map(|b| b.var_names()).unwrap_or_default();
        names.extend(self.gens.iter().cloned());
        names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names().iter().position(|v| v == name)
    }

    /// Position of own generator `i` among all variables.
    pub fn own(&self, i: usize) -> usize {
        self.base_vars() + i
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::var(self.nvars(), i)
    }

    pub fn gen(&self, name: &str) -> Result<Poly<F>> {
        match self.var_index(name) {
            Some(i) => Ok(self.var(i)),
            None => structural(format!("{self}: no generator {name}")),
        }
    }

    pub fn zero(&self) -> Poly<F> {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly<F> {
        Poly::one(self.nvars())
    }

    pub fn parse_element(&self, s: &str) -> Result<Poly<F>> {
        parse_poly(s, &self.var_names())
    }

    pub fn render(&self, p: &Poly<F>) -> String {
        p.render(&self.var_names())
    }

    /// All defining relations, the base's included, over all variables.
    pub fn ideal_generators(&self) -> Vec<Poly<F>> {
        let n = self.nvars();
        let mut out: Vec<Poly<F>> = match &self.base {
            Some(b) => b.ideal_generators().iter().map(|p| p.extend(n)).collect(),
            None => Vec::new(),
        };
        out.extend(self.rels.iter().cloned());
        out
    }

    /// Reduced Gröbner basis of the relation ideal, computed once.
    pub fn basis(&self) -> Result<&[Poly<F>]> {
        let b = self.basis.get_or_init(|| groebner_basis(&self.ideal_generators(), step_budget()));
        match b {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn nf(&self, p: &Poly<F>) -> Result<Poly<F>> {
        if p.nvars() != self.nvars() {
            return structural(format!("{self}: element over {} variables, expected {}", p.nvars(), self.nvars()));
        }
        Ok(normal_form(p, self.basis()?))
    }

    pub fn equal(&self, a: &Poly<F>, b: &Poly<F>) -> Result<bool> {
        Ok(self.nf(&a.sub(b))?.is_zero())
    }

    /// Whether the relation ideal is the unit ideal.
    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.nf(&self.one())?.is_zero())
    }

    /// The algebra viewed over its base's base, with the base generators
    /// becoming own generators.
    pub fn flatten(self: &Arc<Self>) -> Result<Alg<F>> {
        let Some(b) = &self.base else { return Ok(self.clone()) };
        let mut gens = b.gens.clone();
        gens.extend(self.gens.iter().cloned());
        let mut marks = b.marks.clone();
        marks.extend(self.marks.iter().copied());
        let n = self.nvars();
        let mut rels: Vec<Poly<F>> = b.rels.iter().map(|r| r.extend(n)).collect();
        rels.extend(self.rels.iter().cloned());
        FpAlgebra::build(b.base.clone(), gens, rels, marks, self.depth, self.mode)
    }

    /// Re-reads an algebra whose variables begin with those of `base` as an
    /// algebra over `base`.
    pub fn rebase(self: &Arc<Self>, base: &Alg<F>) -> Result<Alg<F>> {
        let names = self.var_names();
        let bn = base.var_names();
        if names.len() < bn.len() || names[..bn.len()] != bn[..] {
            return structural(format!("{self} does not extend {base}"));
        }
        let own = self.nvars() - base.nvars();
        let start = self.gens.len() - own;
        FpAlgebra::build(
            Some(base.clone()),
            self.gens[start..].to_vec(),
            self.ideal_generators(),
            self.marks[start..].to_vec(),
            self.depth,
            self.mode,
        )
    }

    /// `B` presented over `C` through a structure map `s: C → B` of algebras
    /// over a common base: `C[gens B]/(rels B, c − s(c))`.
    pub fn relative(b: &Alg<F>, s: &AlgebraHom<F>) -> Result<Alg<F>> {
        let c = &s.source;
        if s.target != *b {
            return structural("structure map does not land in the algebra");
        }
        if c.base_or_ground() != b.base_or_ground() {
            return structural(format!("{c} and {b} do not share a base"));
        }
        let (cn, kb) = (c.nvars(), b.base_vars());
        let n = cn + b.gens.len();
        // B-variables in the relative presentation: base vars, then own gens after C's own gens.
        let b_to_rel: Vec<Poly<F>> = (0..b.nvars())
            .map(|i| if i < kb { Poly::var(n, i) } else { Poly::var(n, cn + i - kb) })
            .collect();
        let mut rels: Vec<Poly<F>> = b.rels.iter().map(|r| r.substitute(&b_to_rel, n)).collect();
        for i in 0..c.gens.len() {
            let img = s.images[c.own(i)].substitute(&b_to_rel, n);
            rels.push(Poly::var(n, c.own(i)).sub(&img));
        }
        let mut gens = b.gens.clone();
        let names = c.var_names();
        for g in gens.iter_mut() {
            while names.contains(g) {
                g.push_str("_2");
            }
        }
        FpAlgebra::build(Some(c.clone()), gens, rels, b.marks.clone(), b.depth, b.mode)
    }
}

/// A ring homomorphism, given by the normal forms of the images of all
/// source variables (base variables included).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraHom<F: Field> {
    pub source: Alg<F>,
    pub target: Alg<F>,
    images: Vec<Poly<F>>,
}

impl<F: Field> fmt::Debug for AlgebraHom<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for AlgebraHom<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = self.source.var_names();
        let parts: Vec<String> = self
            .own_images()
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{}↦{}", src[self.source.own(i)], self.target.render(p)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl<F: Field> AlgebraHom<F> {
    /// Builds and verifies a homomorphism from images of every source
    /// variable. Fails with the offending relation if one is not sent to 0.
    pub fn new(source: Alg<F>, target: Alg<F>, images: Vec<Poly<F>>) -> Result<Self> {
        if images.len() != source.nvars() {
            return structural(format!("{} images for {} variables of {source}", images.len(), source.nvars()));
        }
        let n = target.nvars();
        let images = images
            .into_iter()
            .map(|p| if p.nvars() == n { target.nf(&p) } else { structural(format!("image not in {target}")) })
            .collect::<Result<Vec<_>>>()?;
        let h = AlgebraHom { source, target, images };
        let names = h.source.var_names();
        for r in h.source.ideal_generators() {
            if !h.apply_unchecked(&r)?.is_zero() {
                return Err(CatError::Hypothesis(format!(
                    "relation {} of {} is not sent to zero in {}",
                    r.render(&names),
                    h.source,
                    h.target
                )));
            }
        }
        Ok(h)
    }

    /// A homomorphism over the shared base: base variables map to
    /// themselves and `own[i]` is the image of own generator `i`.
    pub fn over_base(source: Alg<F>, target: Alg<F>, own: Vec<Poly<F>>) -> Result<Self> {
        if source.base_or_ground() != target.base_or_ground() {
            return structural(format!("{source} and {target} do not share a base"));
        }
        if own.len() != source.gens.len() {
            return structural(format!("{} images for {} generators of {source}", own.len(), source.gens.len()));
        }
        let n = target.nvars();
        let mut images: Vec<Poly<F>> = (0..source.base_vars()).map(|i| Poly::var(n, i)).collect();
        images.extend(own);
        AlgebraHom::new(source, target, images)
    }

    /// Parses `(generator, image)` pairs; unnamed own generators map to the
    /// same-named target variable.
    pub fn parse(source: Alg<F>, target: Alg<F>, images: &[(&str, &str)]) -> Result<Self> {
        let tn = target.var_names();
        let mut own = Vec::new();
        for g in source.gens.iter() {
            let p = match images.iter().find(|(k, _)| k == g) {
                Some((_, s)) => parse_poly(s, &tn)?,
                None => match tn.iter().position(|v| v == g) {
                    Some(i) => Poly::var(tn.len(), i),
                    None => return structural(format!("no image given for {g}")),
                },
            };
            own.push(p);
        }
        for (k, _) in images {
            if !source.gens.iter().any(|g| g == k) {
                return structural(format!("{k} is not a generator of {source}"));
            }
        }
        AlgebraHom::over_base(source, target, own)
    }

    pub fn identity(a: &Alg<F>) -> Self {
        let n = a.nvars();
        AlgebraHom {
            source: a.clone(),
            target: a.clone(),
            // normal forms keep images canonical; without a basis the bare
            // variable denotes the same map
            images: (0..n).map(|i| a.nf(&a.var(i)).unwrap_or_else(|_| a.var(i))).collect(),
        }
    }

    /// The structure map from the base: base variables to themselves.
    pub fn structure(a: &Alg<F>) -> Result<Self> {
        let base = a.base_or_ground();
        let n = a.nvars();
        AlgebraHom::new(base.clone(), a.clone(), (0..base.nvars()).map(|i| Poly::var(n, i)).collect())
    }

    pub fn images(&self) -> &[Poly<F>] {
        &self.images
    }

    pub fn own_images(&self) -> &[Poly<F>] {
        &self.images[self.source.base_vars()..]
    }

    pub fn image_of(&self, name: &str) -> Result<&Poly<F>> {
        match self.source.var_index(name) {
            Some(i) => Ok(&self.images[i]),
            None => structural(format!("{}: no generator {name}", self.source)),
        }
    }

    fn apply_unchecked(&self, p: &Poly<F>) -> Result<Poly<F>> {
        self.target.nf(&p.substitute(&self.images, self.target.nvars()))
    }

    pub fn apply(&self, p: &Poly<F>) -> Result<Poly<F>> {
        if p.nvars() != self.source.nvars() {
            return structural(format!("element is not in {}", self.source));
        }
        self.apply_unchecked(p)
    }

    /// `self∘other`.
    pub fn compose(&self, other: &AlgebraHom<F>) -> Result<Self> {
        if other.target != self.source {
            return structural(format!("cannot compose {self} after {other}: {} ≠ {}", other.target, self.source));
        }
        let images = other.images.iter().map(|p| self.apply_unchecked(p)).collect::<Result<Vec<_>>>()?;
        Ok(AlgebraHom {
            source: other.source.clone(),
            target: self.target.clone(),
            images,
        })
    }

    /// First generator (own, then base) on which two parallel maps differ.
    pub fn first_difference(&self, other: &AlgebraHom<F>) -> Option<(String, Poly<F>, Poly<F>)> {
        let names = self.source.var_names();
        (0..self.images.len())
            .rev()
            .find(|&i| self.images[i] != other.images[i])
            .map(|i| (names[i].clone(), self.images[i].clone(), other.images[i].clone()))
    }
}

/// Own generator name `g`, renamed away from `taken` by suffixing `_2`, `_3`, ...
fn fresh(g: &str, taken: &[String]) -> String {
    if !taken.iter().any(|t| t == g) {
        return g.to_string();
    }
    (2..).map(|k| format!("{g}_{k}")).find(|c| !taken.contains(c)).expect("unbounded")
}

/// The tangent presentation of `b` over its base: generators `xᵢ, dxᵢ`,
/// relations `r` and `d(r)` (Leibniz, `d` vanishing on the base), plus
/// `dxᵢ·dxⱼ` in square-zero mode.
pub fn tangent_algebra<F: Field>(b: &Alg<F>) -> Result<Alg<F>> {
    b.tangent.get_or_init(|| build_tangent(b)).clone()
}

fn build_tangent<F: Field>(b: &Alg<F>) -> Result<Alg<F>> {
    let k = b.gens.len();
    let n = b.nvars() + k;
    let mut gens = b.gens.clone();
    let names = b.var_names();
    for g in &b.gens {
        let dg = differential_name(b.depth, g);
        if names.contains(&dg) || gens.contains(&dg) {
            return structural(format!("{b}: differential {dg} collides with an existing generator"));
        }
        gens.push(dg);
    }
    let mut marks = b.marks.clone();
    marks.extend(std::iter::repeat(true).take(k));
    let mut rels = Vec::new();
    for r in &b.rels {
        rels.push(r.extend(n));
        rels.push(differential(b, r));
    }
    if b.mode == Mode::SquareZero {
        for i in 0..k {
            for j in i..k {
                let (di, dj) = (b.nvars() + i, b.nvars() + j);
                rels.push(Poly::var(n, di).mul(&Poly::var(n, dj)));
            }
        }
    }
    FpAlgebra::build(b.base.clone(), gens, rels, marks, b.depth + 1, b.mode)
}

/// `T₂B = T(B) ⊗_B T(B)`, the pushout of the bundle map against itself,
/// computed once per algebra.
pub fn t2_pushout<F: Field>(b: &Alg<F>) -> Result<Pushout<F>> {
    b.t2.get_or_init(|| {
        let tb = tangent_algebra(b)?;
        let q = AlgebraHom::over_base(b.clone(), tb.clone(), (0..b.gens.len()).map(|i| tb.var(b.own(i))).collect())?;
        tensor_pushout(&Cospan::new(q.clone(), q)?)
    })
    .clone()
}

/// `d(p) = Σ ∂p/∂xᵢ · dxᵢ` over the own generators, as an element of the
/// tangent presentation.
pub fn differential<F: Field>(b: &FpAlgebra<F>, p: &Poly<F>) -> Poly<F> {
    let n = b.nvars() + b.gens.len();
    let mut out = Poly::zero(n);
    for i in 0..b.gens.len() {
        let v = b.own(i);
        let dp = p.derivative(v);
        if !dp.is_zero() {
            out = out.add(&dp.extend(n).mul(&Poly::var(n, b.nvars() + i)));
        }
    }
    out
}

/// `T(h): T(B) → T(B')` for `h: B → B'` over a common base:
/// `x ↦ h(x)`, `dx ↦ d(h(x))`.
pub fn tangent_hom<F: Field>(h: &AlgebraHom<F>, tb: &Alg<F>, tb2: &Alg<F>) -> Result<AlgebraHom<F>> {
    let (b, b2) = (&h.source, &h.target);
    let n2 = tb2.nvars();
    let mut own: Vec<Poly<F>> = h.own_images().iter().map(|p| p.extend(n2)).collect();
    for p in h.own_images() {
        own.push(tb2.nf(&differential(b2, p))?);
    }
    if tb.gens.len() != 2 * b.gens.len() {
        return structural(format!("{tb} is not the tangent presentation of {b}"));
    }
    AlgebraHom::over_base(tb.clone(), tb2.clone(), own)
}

/// A cospan `A ← C → B` of algebras over a common base.
#[derive(Debug, Clone)]
pub struct Cospan<F: Field> {
    pub leg_a: AlgebraHom<F>,
    pub leg_b: AlgebraHom<F>,
}

impl<F: Field> Cospan<F> {
    pub fn new(leg_a: AlgebraHom<F>, leg_b: AlgebraHom<F>) -> Result<Self> {
        if leg_a.source != leg_b.source {
            return structural("cospan legs must share their source");
        }
        let k = leg_a.source.base_or_ground();
        if leg_a.target.base_or_ground() != k || leg_b.target.base_or_ground() != k {
            return structural("cospan algebras must share a base");
        }
        Ok(Cospan { leg_a, leg_b })
    }

    pub fn apex(&self) -> &Alg<F> {
        &self.leg_a.source
    }
}

/// `A ⊗_C B` with its two injections.
#[derive(Debug, Clone)]
pub struct Pushout<F: Field> {
    pub algebra: Alg<F>,
    pub inj_a: AlgebraHom<F>,
    pub inj_b: AlgebraHom<F>,
}

/// `A ⊗_C B`: generators of `A` and `B` renamed apart, relations of both and
/// `leg_a(c) − leg_b(c)` for each generator `c` of `C`. When `leg_b(c)` is a
/// bare generator of `B` not yet used, that generator is identified with
/// `leg_a(c)` instead of adding the relation.
pub fn tensor_pushout<F: Field>(cs: &Cospan<F>) -> Result<Pushout<F>> {
    let (c, a, b) = (cs.apex(), &cs.leg_a.target, &cs.leg_b.target);
    let kv = a.base_vars();
    let (na, nb) = (a.nvars(), b.nvars());
    // identified[j] = image in A for own generator j of B
    let mut identified: Vec<Option<Poly<F>>> = vec![None; b.gens.len()];
    let mut pending: Vec<usize> = Vec::new();
    for i in 0..c.gens.len() {
        let gi = c.own(i);
        let img_b = &cs.leg_b.images[gi];
        match img_b.as_var() {
            Some(v) if v >= kv && identified[v - kv].is_none() => {
                identified[v - kv] = Some(cs.leg_a.images[gi].clone());
            }
            _ => pending.push(gi),
        }
    }
    let mut taken = a.var_names();
    let mut gens = a.gens.clone();
    let mut marks = a.marks.clone();
    let mut slot: Vec<Option<usize>> = vec![None; b.gens.len()];
    for (j, g) in b.gens.iter().enumerate() {
        if identified[j].is_none() {
            let name = fresh(g, &taken);
            taken.push(name.clone());
            gens.push(name);
            marks.push(b.marks[j]);
            slot[j] = Some(kv + gens.len() - 1);
        }
    }
    let n = kv + gens.len();
    let a_img: Vec<Poly<F>> = (0..na).map(|i| Poly::var(n, i)).collect();
    let mut b_img: Vec<Poly<F>> = (0..kv).map(|i| Poly::var(n, i)).collect();
    for j in 0..b.gens.len() {
        b_img.push(match (&identified[j], slot[j]) {
            (Some(p), _) => p.substitute(&a_img, n),
            (None, Some(s)) => Poly::var(n, s),
            (None, None) => unreachable!("every generator is placed"),
        });
    }
    let mut rels: Vec<Poly<F>> = a.rels.iter().map(|r| r.extend(n)).collect();
    rels.extend(b.rels.iter().map(|r| r.substitute(&b_img, n)));
    for gi in pending {
        let la = cs.leg_a.images[gi].substitute(&a_img, n);
        let lb = cs.leg_b.images[gi].substitute(&b_img, n);
        rels.push(la.sub(&lb));
    }
    debug_assert_eq!(b_img.len(), nb);
    let p = FpAlgebra::build(a.base.clone(), gens, rels, marks, a.depth.max(b.depth), a.mode.max(b.mode))?;
    let inj_a = AlgebraHom::new(a.clone(), p.clone(), a_img)?;
    let inj_b = AlgebraHom::new(b.clone(), p.clone(), b_img)?;
    Ok(Pushout { algebra: p, inj_a, inj_b })
}

/// The map out of `apex` determined by generator matching: each own
/// generator of `apex` that some injection hits as a bare variable is sent
/// where the matching cocone map sends the preimage. Verified afterwards.
pub fn mediate_by_generators<F: Field>(
    apex: &Alg<F>,
    injections: &[&AlgebraHom<F>],
    cocone: &[&AlgebraHom<F>],
) -> Result<AlgebraHom<F>> {
    let target = cocone.first().map(|h| h.target.clone()).ok_or_else(|| CatError::Structural("empty cocone".into()))?;
    let kv = apex.base_vars();
    let mut images: Vec<Option<Poly<F>>> = vec![None; apex.nvars()];
    for (inj, k) in injections.iter().zip(cocone) {
        if inj.target != *apex || inj.source != k.source {
            return structural("cocone does not match the injections");
        }
        for (v, img) in inj.images.iter().enumerate() {
            if let Some(w) = img.as_var() {
                if images[w].is_none() {
                    images[w] = Some(k.images[v].clone());
                }
            }
        }
    }
    let n = target.nvars();
    for (w, img) in images.iter_mut().enumerate().take(kv.min(n)) {
        if img.is_none() {
            *img = Some(Poly::var(n, w));
        }
    }
    let images = fill_reducible(apex, images, n, |w| {
        CatError::Structural(format!("generator {} of {apex} is not hit by an injection", apex.var_names()[w]))
    })?;
    let m = AlgebraHom::new(apex.clone(), target, images)?;
    for (inj, k) in injections.iter().zip(cocone) {
        if m.compose(inj)? != **k {
            return Err(CatError::Hypothesis("cocone maps do not factor through the pushout".into()));
        }
    }
    Ok(m)
}

impl<F: Field> Pushout<F> {
    /// The unique map `A ⊗_C B → D` restricting to `to_a` and `to_b`.
    pub fn mediate(&self, to_a: &AlgebraHom<F>, to_b: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
        mediate_by_generators(&self.algebra, &[&self.inj_a, &self.inj_b], &[to_a, to_b])
    }
}

/// Base change of `b` (over `f.source`) along `f`, as the pushout of the
/// flattened `b` and `f`, re-read over `f.target`. Returns the algebra and
/// the unit `b → F(f)(b)`.
pub fn base_change<F: Field>(b: &Alg<F>, f: &AlgebraHom<F>) -> Result<(Alg<F>, AlgebraHom<F>)> {
    if b.base_or_ground() != f.source {
        return structural(format!("{b} is not an algebra over {}", f.source));
    }
    let flat = b.flatten()?;
    let s = AlgebraHom::new(f.source.clone(), flat.clone(), (0..f.source.nvars()).map(|i| Poly::var(flat.nvars(), i)).collect())?;
    let po = tensor_pushout(&Cospan::new(f.clone(), s)?)?;
    let out = po.algebra.rebase(&f.target)?;
    let unit = AlgebraHom::new(b.clone(), out.clone(), po.inj_b.images.clone())?;
    Ok((out, unit))
}

/// `F(f)(h)` for `h: B → B'` over `f.source`, given both units.
pub fn base_change_hom<F: Field>(h: &AlgebraHom<F>, unit_src: &AlgebraHom<F>, unit_tgt: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    if unit_src.source != h.source || unit_tgt.source != h.target {
        return structural("units do not match the homomorphism");
    }
    let own = h
        .own_images()
        .iter()
        .map(|p| unit_tgt.apply(p))
        .collect::<Result<Vec<_>>>()?;
    AlgebraHom::over_base(unit_src.target.clone(), unit_tgt.target.clone(), own)
}

/// Transports own generators by position: own generator `i` of `src` goes to
/// `unit` applied to own generator `i` of `unit.source`.
pub fn transport<F: Field>(src: &Alg<F>, unit: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let x = &unit.source;
    if src.gens.len() != x.gens.len() {
        return structural(format!("{src} and {x} have different numbers of generators"));
    }
    let own = (0..x.gens.len()).map(|i| unit.apply(&x.var(x.own(i)))).collect::<Result<Vec<_>>>()?;
    AlgebraHom::over_base(src.clone(), unit.target.clone(), own)
}

/// The inverse of [`transport`] when `unit` sends own generators to own
/// generators: own generator of `unit.target` hit by generator `i` goes to
/// own generator `i` of `src`.
pub fn transport_back<F: Field>(src: &Alg<F>, unit: &AlgebraHom<F>) -> Result<AlgebraHom<F>> {
    let (x, y) = (&unit.source, &unit.target);
    let mut own: Vec<Option<Poly<F>>> = vec![None; y.gens.len()];
    for i in 0..x.gens.len() {
        if let Some(w) = unit.images[x.own(i)].as_var() {
            if w >= y.base_vars() {
                own[w - y.base_vars()] = Some(src.var(src.own(i)));
            }
        }
    }
    let n = src.nvars();
    let mut images: Vec<Option<Poly<F>>> = (0..y.base_vars()).map(|i| Some(Poly::var(n, i))).collect();
    images.extend(own);
    let images = fill_reducible(y, images, n, |w| {
        CatError::Invariant(format!("generator {} of {y} is not transported", y.var_names()[w]))
    })?;
    AlgebraHom::new(y.clone(), src.clone(), images)
}

/// Completes images of the variables of `a`: a variable left open must be
/// congruent to a polynomial in earlier variables, whose image it takes.
fn fill_reducible<F: Field>(
    a: &FpAlgebra<F>,
    images: Vec<Option<Poly<F>>>,
    n: usize,
    missing: impl Fn(usize) -> CatError,
) -> Result<Vec<Poly<F>>> {
    let mut out: Vec<Poly<F>> = Vec::with_capacity(images.len());
    for (w, img) in images.into_iter().enumerate() {
        let p = match img {
            Some(p) => p,
            None => {
                let r = a.nf(&a.var(w))?;
                if r.uses(w) {
                    return Err(missing(w));
                }
                let mut known = out.clone();
                known.resize(a.nvars(), Poly::zero(n));
                r.substitute(&known, n)
            }
        };
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type A = FpAlgebra<Rational>;

    #[test]
    fn tangent_of_dual_numbers() {
        let b = A::parse(None, &["x"], &["x^2"]).unwrap();
        let tb = tangent_algebra(&b).unwrap();
        assert_eq!(tb.gens(), ["x", "dx"]);
        let rels: Vec<String> = tb.rels().iter().map(|r| tb.render(r)).collect();
        assert_eq!(rels, ["x^2", "x*dx"]);
    }

    #[test]
    fn pushout_renames_apart() {
        let b = A::parse(None, &["x"], &[]).unwrap();
        let tb = tangent_algebra(&b).unwrap();
        let q = AlgebraHom::parse(b.clone(), tb.clone(), &[]).unwrap();
        let po = tensor_pushout(&Cospan::new(q.clone(), q).unwrap()).unwrap();
        assert_eq!(po.algebra.gens(), ["x", "dx", "dx_2"]);
    }

    #[test]
    fn base_change_substitutes_the_base() {
        let qt = A::parse(None, &["t"], &[]).unwrap();
        let qu = A::parse(None, &["u"], &[]).unwrap();
        let f = AlgebraHom::parse(qt.clone(), qu.clone(), &[("t", "u^2")]).unwrap();
        let b = A::parse(Some(qt.clone()), &["x"], &["x^2 - t"]).unwrap();
        let (fb, unit) = base_change(&b, &f).unwrap();
        assert_eq!(fb.to_string(), "(Q[u])[x]/(x^2 - u^2)");
        assert_eq!(unit.target, fb);
    }
}
