//! Formal linear combinations of diagrams with exact coefficients, in a
//! parameter context.
//!
//! Three contexts share one composition engine. Stacking two diagrams and
//! tracing strands through the interface yields a zig-zag count `Z` and a
//! loop count `L`; the coefficient picked up by the composite term is
//!
//! * `Generic`      : `q^Z * (q^2+1)^L`   (renormalized relations, symbolic q)
//! * `BarAt(a)`     : `a^Z * (a^2+1)^L`   (so at `a = 0` a term survives iff `Z = 0`)
//! * `TildeAt(a)`   : `(a + 1/a)^L`       (classical relations, `a` invertible)

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{stack, Diagram};
use crate::{Rat, Scalar};

/// Which category the coefficients live in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamContext {
    /// The renormalized category over exact polynomials in `q`.
    Generic,
    /// The renormalized category specialized at `q = a` (any rational `a`).
    BarAt(Rat),
    /// The classical category specialized at `q = a`, `a != 0`.
    TildeAt(Rat),
}

impl ParamContext {
    pub fn bar_zero() -> Self {
        ParamContext::BarAt(Rat::zero())
    }

    /// Tilde contexts need `q` invertible.
    pub fn tilde_at(a: Rat) -> Result<Self, MorphismError> {
        if a.is_zero() {
            Err(MorphismError::ZeroParameter)
        } else {
            Ok(ParamContext::TildeAt(a))
        }
    }

    fn is_specialized(&self) -> bool {
        !matches!(self, ParamContext::Generic)
    }
}

impl fmt::Display for ParamContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamContext::Generic => write!(f, "generic"),
            ParamContext::BarAt(a) => write!(f, "bar({a})"),
            ParamContext::TildeAt(a) => write!(f, "tilde({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("domain mismatch: composing {g_dom} <- {f_cod}")]
    DomainMismatch { g_dom: usize, f_cod: usize },
    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("operation requires context {expected}, morphism is in {found}")]
    ContextError { expected: String, found: String },
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("term diagram has shape {0}x{1}, morphism has shape {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("specialized contexts only carry constant coefficients, got {0}")]
    NonConstantCoefficient(String),
}

/// Direction of the renormalization isomorphism between the classical and
/// renormalized categories at an invertible parameter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RenormDir {
    /// Tilde to Bar: `cap` picks up `1/a` per cap.
    N,
    /// Bar to Tilde: `cap` picks up `a` per cap.
    D,
}

/// A finitely supported exact linear combination of diagrams `m -> n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    dom: usize,
    cod: usize,
    ctx: ParamContext,
    terms: BTreeMap<Diagram, Scalar>,
}

impl Morphism {
    pub fn zero(dom: usize, cod: usize, ctx: ParamContext) -> Self {
        Morphism {
            dom,
            cod,
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn diagram(d: Diagram, ctx: ParamContext) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(d.clone(), Scalar::one());
        Morphism {
            dom: d.dom(),
            cod: d.cod(),
            ctx,
            terms,
        }
    }

    pub fn identity(n: usize, ctx: ParamContext) -> Self {
        Self::diagram(Diagram::id(n), ctx)
    }

    pub fn from_terms<I>(
        dom: usize,
        cod: usize,
        ctx: ParamContext,
        terms: I,
    ) -> Result<Self, MorphismError>
    where
        I: IntoIterator<Item = (Diagram, Scalar)>,
    {
        let mut map = BTreeMap::new();
        for (d, c) in terms {
            if d.dom() != dom || d.cod() != cod {
                return Err(MorphismError::ShapeMismatch(d.dom(), d.cod(), dom, cod));
            }
            if ctx.is_specialized() && !c.is_constant() {
                return Err(MorphismError::NonConstantCoefficient(c.to_string()));
            }
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(d).or_insert_with(Scalar::zero);
            *entry = entry.add(&c);
        }
        map.retain(|_, c: &mut Scalar| !c.is_zero());
        Ok(Morphism {
            dom,
            cod,
            ctx,
            terms: map,
        })
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn context(&self) -> &ParamContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, d: &Diagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Through-strand grading: max over terms, `None` for the zero morphism
    /// (the minus-infinity sentinel).
    pub fn th(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.th()).max()
    }

    fn check_ctx(&self, other: &Self) -> Result<(), MorphismError> {
        if self.ctx != other.ctx {
            return Err(MorphismError::ContextMismatch(
                self.ctx.to_string(),
                other.ctx.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MorphismError> {
        self.check_ctx(other)?;
        if (self.dom, self.cod) != (other.dom, other.cod) {
            return Err(MorphismError::ShapeMismatch(
                other.dom, other.cod, self.dom, self.cod,
            ));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            let entry = out.terms.entry(d.clone()).or_insert_with(Scalar::zero);
            *entry = entry.add(c);
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MorphismError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, by: &Scalar) -> Result<Self, MorphismError> {
        if self.ctx.is_specialized() && !by.is_constant() {
            return Err(MorphismError::NonConstantCoefficient(by.to_string()));
        }
        if by.is_zero() {
            return Ok(Self::zero(self.dom, self.cod, self.ctx.clone()));
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.mul(by);
        }
        Ok(out)
    }

    pub fn scale_rat(&self, by: &Rat) -> Self {
        self.scale(&Scalar::constant(by.clone()))
            .expect("constant scalar is valid in every context")
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self, MorphismError> {
        self.check_ctx(other)?;
        if self.dom != other.cod {
            return Err(MorphismError::DomainMismatch {
                g_dom: self.dom,
                f_cod: other.cod,
            });
        }
        let mut terms: BTreeMap<Diagram, Scalar> = BTreeMap::new();
        for (dg, cg) in &self.terms {
            for (df, cf) in &other.terms {
                let st = stack(dg, df);
                let Some(factor) = stack_factor(&self.ctx, st.zigzags, st.loops) else {
                    continue;
                };
                let coeff = cg.mul(cf).mul(&factor);
                if coeff.is_zero() {
                    continue;
                }
                let entry = terms.entry(st.diagram).or_insert_with(Scalar::zero);
                *entry = entry.add(&coeff);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Morphism {
            dom: other.dom,
            cod: self.cod,
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Horizontal juxtaposition `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Result<Self, MorphismError> {
        self.check_ctx(other)?;
        let mut terms: BTreeMap<Diagram, Scalar> = BTreeMap::new();
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                let d = da.tensor(db);
                let coeff = ca.mul(cb);
                let entry = terms.entry(d).or_insert_with(Scalar::zero);
                *entry = entry.add(&coeff);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Morphism {
            dom: self.dom + other.dom,
            cod: self.cod + other.cod,
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Contravariant involution: flip every diagram, keep coefficients.
    pub fn bar(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| (d.bar(), c.clone()))
            .collect();
        Morphism {
            dom: self.cod,
            cod: self.dom,
            ctx: self.ctx.clone(),
            terms,
        }
    }

    /// Evaluate a generic morphism at `q = a`, dropping vanishing terms.
    pub fn specialize(&self, a: &Rat) -> Result<Self, MorphismError> {
        if self.ctx != ParamContext::Generic {
            return Err(MorphismError::ContextError {
                expected: "generic".into(),
                found: self.ctx.to_string(),
            });
        }
        let mut terms = BTreeMap::new();
        for (d, c) in &self.terms {
            let v = c.eval(a);
            if !v.is_zero() {
                terms.insert(d.clone(), Scalar::constant(v));
            }
        }
        Ok(Morphism {
            dom: self.dom,
            cod: self.cod,
            ctx: ParamContext::BarAt(a.clone()),
            terms,
        })
    }

    /// The renormalization isomorphisms `N_a` (Tilde to Bar) and `D_a`
    /// (Bar to Tilde): each term's coefficient is multiplied by
    /// `a^{-|K|}` resp. `a^{+|K|}` where `|K|` is its number of caps.
    pub fn renormalize(&self, a: &Rat, dir: RenormDir) -> Result<Self, MorphismError> {
        if a.is_zero() {
            return Err(MorphismError::ZeroParameter);
        }
        let (expected, new_ctx) = match dir {
            RenormDir::N => (ParamContext::TildeAt(a.clone()), ParamContext::BarAt(a.clone())),
            RenormDir::D => (ParamContext::BarAt(a.clone()), ParamContext::TildeAt(a.clone())),
        };
        if self.ctx != expected {
            return Err(MorphismError::ContextError {
                expected: expected.to_string(),
                found: self.ctx.to_string(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| {
                let ncaps = d.caps().len() as i64;
                let e = match dir {
                    RenormDir::N => -ncaps,
                    RenormDir::D => ncaps,
                };
                let factor = rat_pow(a, e);
                (d.clone(), c.mul(&Scalar::constant(factor)))
            })
            .collect();
        Ok(Morphism {
            dom: self.dom,
            cod: self.cod,
            ctx: new_ctx,
            terms,
        })
    }
}

fn rat_pow(a: &Rat, e: i64) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e.unsigned_abs() {
        out *= a.clone();
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// The coefficient a stacked diagram pair picks up; `None` means the term
/// vanishes (only at `BarAt(0)` with a positive zig-zag count).
fn stack_factor(ctx: &ParamContext, zigzags: u64, loops: u64) -> Option<Scalar> {
    match ctx {
        ParamContext::Generic => {
            let circle = Scalar::monomial(Rat::one(), 2).add(&Scalar::one());
            Some(Scalar::q().pow(zigzags as u32).mul(&circle.pow(loops as u32)))
        }
        ParamContext::BarAt(a) => {
            if a.is_zero() && zigzags > 0 {
                return None;
            }
            let circle = a.clone() * a.clone() + Rat::one();
            let mut f = rat_pow(a, zigzags as i64);
            if a.is_zero() && zigzags == 0 {
                f = Rat::one();
            }
            for _ in 0..loops {
                f *= circle.clone();
            }
            Some(Scalar::constant(f))
        }
        ParamContext::TildeAt(a) => {
            let circle = a.clone() + Rat::one() / a.clone();
            let mut f = Rat::one();
            for _ in 0..loops {
                f *= circle.clone();
            }
            Some(Scalar::constant(f))
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 [{}->{}; {}]", self.dom, self.cod, self.ctx);
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{d}")?;
        }
        write!(f, " [{}]", self.ctx)
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Point::{Src, Tgt};

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn cup_cap() -> Diagram {
        Diagram::new(2, 2, &[(Src(1), Src(2)), (Tgt(1), Tgt(2))]).unwrap()
    }

    #[test]
    fn circle_at_zero_and_at_two() {
        let cap = Morphism::diagram(Diagram::cap(), ParamContext::bar_zero());
        let cup = Morphism::diagram(Diagram::cup(), ParamContext::bar_zero());
        let circ = cap.compose(&cup).unwrap();
        assert_eq!(circ, Morphism::identity(0, ParamContext::bar_zero()));

        let ctx = ParamContext::tilde_at(rat(2, 1)).unwrap();
        let cap = Morphism::diagram(Diagram::cap(), ctx.clone());
        let cup = Morphism::diagram(Diagram::cup(), ctx.clone());
        let circ = cap.compose(&cup).unwrap();
        let expected = Morphism::identity(0, ctx).scale_rat(&rat(5, 2));
        assert_eq!(circ, expected);
    }

    #[test]
    fn zigzag_generic_is_q() {
        let g = Morphism::diagram(Diagram::placed_cap(1, 0), ParamContext::Generic);
        let f = Morphism::diagram(Diagram::placed_cup(0, 1), ParamContext::Generic);
        let z = g.compose(&f).unwrap();
        let expected = Morphism::identity(1, ParamContext::Generic)
            .scale(&Scalar::q())
            .unwrap();
        assert_eq!(z, expected);
    }

    #[test]
    fn zigzag_vanishes_at_zero() {
        let g = Morphism::diagram(Diagram::placed_cap(1, 0), ParamContext::bar_zero());
        let f = Morphism::diagram(Diagram::placed_cup(0, 1), ParamContext::bar_zero());
        let z = g.compose(&f).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.th(), None);
    }

    #[test]
    fn double_reduction_generic() {
        // (cap (x) cap) . nested cups -> q(q^2+1) id_0
        let g = Morphism::diagram(
            Diagram::cap().tensor(&Diagram::cap()),
            ParamContext::Generic,
        );
        let f = Morphism::diagram(Diagram::nested_cups(2), ParamContext::Generic);
        let got = g.compose(&f).unwrap();
        let coeff = Scalar::q().mul(&Scalar::monomial(Rat::one(), 2).add(&Scalar::one()));
        let expected = Morphism::identity(0, ParamContext::Generic)
            .scale(&coeff)
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn shape_and_context_errors() {
        let cap = Morphism::diagram(Diagram::cap(), ParamContext::bar_zero());
        let id3 = Morphism::identity(3, ParamContext::bar_zero());
        assert!(matches!(
            cap.compose(&id3).unwrap_err(),
            MorphismError::DomainMismatch { .. }
        ));
        let generic = Morphism::identity(2, ParamContext::Generic);
        let bar = Morphism::identity(2, ParamContext::bar_zero());
        assert!(matches!(
            generic.compose(&bar).unwrap_err(),
            MorphismError::ContextMismatch(..)
        ));
        assert!(matches!(
            generic.tensor(&bar).unwrap_err(),
            MorphismError::ContextMismatch(..)
        ));
    }

    #[test]
    fn specialize_examples() {
        let q_id1 = Morphism::identity(1, ParamContext::Generic)
            .scale(&Scalar::q())
            .unwrap();
        assert!(q_id1.specialize(&Rat::zero()).unwrap().is_zero());

        let circle = Morphism::identity(0, ParamContext::Generic)
            .scale(&Scalar::monomial(Rat::one(), 2).add(&Scalar::one()))
            .unwrap();
        assert_eq!(
            circle.specialize(&Rat::zero()).unwrap(),
            Morphism::identity(0, ParamContext::bar_zero())
        );

        let f = Morphism::identity(2, ParamContext::Generic)
            .scale(&Scalar::q())
            .unwrap()
            .add(&Morphism::diagram(cup_cap(), ParamContext::Generic))
            .unwrap();
        let at5 = f.specialize(&rat(5, 1)).unwrap();
        let expected = Morphism::identity(2, ParamContext::BarAt(rat(5, 1)))
            .scale_rat(&rat(5, 1))
            .add(&Morphism::diagram(
                cup_cap(),
                ParamContext::BarAt(rat(5, 1)),
            ))
            .unwrap();
        assert_eq!(at5, expected);

        let bar = Morphism::identity(1, ParamContext::bar_zero());
        assert!(bar.specialize(&Rat::zero()).is_err());
    }

    #[test]
    fn renormalize_examples() {
        let a = rat(2, 1);
        let tilde = ParamContext::tilde_at(a.clone()).unwrap();
        let n_cap = Morphism::diagram(Diagram::cap(), tilde.clone())
            .renormalize(&a, RenormDir::N)
            .unwrap();
        let expected = Morphism::diagram(Diagram::cap(), ParamContext::BarAt(a.clone()))
            .scale_rat(&rat(1, 2));
        assert_eq!(n_cap, expected);

        // D . N is the identity
        let cc = Morphism::diagram(cup_cap(), tilde.clone());
        let round = cc
            .renormalize(&a, RenormDir::N)
            .unwrap()
            .renormalize(&a, RenormDir::D)
            .unwrap();
        assert_eq!(round, cc);

        // N_3(id_n) = id_n
        let a3 = rat(3, 1);
        let t3 = ParamContext::tilde_at(a3.clone()).unwrap();
        let id = Morphism::identity(4, t3);
        let n = id.renormalize(&a3, RenormDir::N).unwrap();
        assert_eq!(n.num_terms(), 1);
        assert_eq!(n.coeff_of(&Diagram::id(4)), Scalar::one());

        assert!(Morphism::identity(1, ParamContext::bar_zero())
            .renormalize(&Rat::zero(), RenormDir::D)
            .is_err());
    }

    #[test]
    fn bar_is_contravariant_involution() {
        let ctx = ParamContext::bar_zero();
        let f = Morphism::diagram(Diagram::placed_cup(1, 0), ctx.clone());
        let g = Morphism::diagram(Diagram::placed_cap(0, 1), ctx.clone());
        let lhs = g.compose(&f).unwrap().bar();
        let rhs = f.bar().compose(&g.bar()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(f.bar().bar(), f);
        assert_eq!(Morphism::diagram(cup_cap(), ctx).bar().num_terms(), 1);
    }

    #[test]
    fn cup_after_its_bar_is_identity() {
        // u-bar . u = id_th(u) for cup diagrams
        let ctx = ParamContext::bar_zero();
        for u in crate::diagram::enumerate_cup_diagrams(2, 4) {
            let m = Morphism::diagram(u.clone(), ctx.clone());
            let composite = m.bar().compose(&m).unwrap();
            assert_eq!(composite, Morphism::identity(2, ctx.clone()));
        }
    }
}
