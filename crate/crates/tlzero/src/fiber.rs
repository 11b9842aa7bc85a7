//! Fiber functor data for the `q = 0` category: triples `(V, b, t)` of a
//! bilinear form `b` and a 2-tensor `t` supported in the product of the
//! radicals with full contraction `b(t) = 1`.
//!
//! Such a triple determines a monoidal functor to vector spaces sending
//! `cap` to `b` and `cup` to `t`; the support conditions make both zig-zags
//! vanish and the trace condition evaluates the circle to `1`, so the
//! functor is well defined. Everything runs over exact rationals.

use thiserror::Error;

use num::traits::{One, Zero};

use crate::diagram::{Diagram, Point};
use crate::morphism::{Morphism, ParamContext};
use crate::{QMat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("matrix shapes disagree: b is {0}x{1}, t is {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("t is not supported in R(b) (x) L(b): contraction {side} at ({i}, {j}) is {value}")]
    NotInRadicalProduct {
        side: &'static str,
        i: usize,
        j: usize,
        value: String,
    },
    #[error("b(t) = {0}, expected 1")]
    TraceNotOne(String),
    #[error("outer tensor must contract to zero, got b'(t') = {0}")]
    OuterTraceNotZero(String),
    #[error("fiber evaluation needs the q = 0 context, got {0}")]
    ContextError(String),
    #[error("form is not the canonical J_2-block form (homogeneous even type)")]
    NotHomogeneousEvenType,
}

/// A bilinear form on `k^dim`, `b(v, w) = v^T M w`. Degeneracy welcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    matrix: QMat,
}

impl BilinearForm {
    pub fn new(matrix: QMat) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "bilinear form must be square");
        BilinearForm { matrix }
    }

    /// The nilpotent 2x2 Jordan block form: `b(e1, e2) = 1`, all else zero.
    pub fn j2() -> Self {
        let mut m = QMat::zero(2, 2);
        m.set(0, 1, Rat::one());
        BilinearForm { matrix: m }
    }

    /// Orthogonal sum `J_2 (perp) ... (perp) J_2`, `m` blocks.
    pub fn j2_blocks(m: usize) -> Self {
        let mut mat = QMat::zero(2 * m, 2 * m);
        for i in 0..m {
            mat.set(2 * i, 2 * i + 1, Rat::one());
        }
        BilinearForm { matrix: mat }
    }

    /// The zero form on `k^dim`.
    pub fn zero_form(dim: usize) -> Self {
        BilinearForm {
            matrix: QMat::zero(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    /// Orthogonal sum (block diagonal).
    pub fn perp(&self, other: &BilinearForm) -> BilinearForm {
        let d1 = self.dim();
        let d2 = other.dim();
        let mut m = QMat::zero(d1 + d2, d1 + d2);
        for i in 0..d1 {
            for j in 0..d1 {
                m.set(i, j, self.matrix.get(i, j).clone());
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                m.set(d1 + i, d1 + j, other.matrix.get(i, j).clone());
            }
        }
        BilinearForm { matrix: m }
    }
}

/// Reduced-echelon bases of the left radical `{v : b(v, -) = 0}` (the null
/// space of the transpose) and the right radical `{w : b(-, w) = 0}` (the
/// null space of the matrix).
pub fn radicals(b: &BilinearForm) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let left = b.matrix.transpose().nullspace();
    let right = b.matrix.nullspace();
    (left, right)
}

/// A validated fiber functor datum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberTriple {
    b: BilinearForm,
    t: QMat,
}

/// Full contraction `b(t) = sum t_ij b(e_i, e_j)`.
pub fn contract(b: &BilinearForm, t: &QMat) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            acc += t.get(i, j).clone() * b.matrix.get(i, j).clone();
        }
    }
    acc
}

/// Check the two zig-zag contractions `T B = 0` and `B T = 0`; these say
/// exactly that the rows of `t` lie in `L(b)` and its columns in `R(b)`.
fn check_support(b: &BilinearForm, t: &QMat) -> Result<(), FiberError> {
    let tb = t.mul(&b.matrix);
    for i in 0..tb.rows() {
        for j in 0..tb.cols() {
            if !tb.get(i, j).is_zero() {
                return Err(FiberError::NotInRadicalProduct {
                    side: "(id (x) b)(t (x) id)",
                    i: i + 1,
                    j: j + 1,
                    value: tb.get(i, j).to_string(),
                });
            }
        }
    }
    let bt = b.matrix.mul(t);
    for i in 0..bt.rows() {
        for j in 0..bt.cols() {
            if !bt.get(i, j).is_zero() {
                return Err(FiberError::NotInRadicalProduct {
                    side: "(b (x) id)(id (x) t)",
                    i: i + 1,
                    j: j + 1,
                    value: bt.get(i, j).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Validate a candidate `(b, t)` pair: support in the radical product and
/// unit contraction.
pub fn validate_triple(b: BilinearForm, t: QMat) -> Result<FiberTriple, FiberError> {
    if t.rows() != b.dim() || t.cols() != b.dim() {
        return Err(FiberError::ShapeMismatch(
            b.dim(),
            b.dim(),
            t.rows(),
            t.cols(),
        ));
    }
    check_support(&b, &t)?;
    let tr = contract(&b, &t);
    if !tr.is_one() {
        return Err(FiberError::TraceNotOne(tr.to_string()));
    }
    Ok(FiberTriple { b, t })
}

impl FiberTriple {
    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    pub fn form(&self) -> &BilinearForm {
        &self.b
    }

    pub fn tensor(&self) -> &QMat {
        &self.t
    }

    /// The canonical triple on `J_2`: `t = e_1 (x) e_2`.
    pub fn canonical_j2() -> FiberTriple {
        let mut t = QMat::zero(2, 2);
        t.set(0, 1, Rat::one());
        validate_triple(BilinearForm::j2(), t).expect("the J_2 triple validates")
    }

    /// Build a triple over `J_2^(perp m)` from the `m x m` coefficient
    /// matrix `A`: `t = sum A_ij e^R_i (x) e^L_j`. Requires `Tr(A) = 1`.
    pub fn from_block_matrix(a: &QMat) -> Result<FiberTriple, FiberError> {
        let m = a.rows();
        assert_eq!(m, a.cols());
        let mut t = QMat::zero(2 * m, 2 * m);
        for i in 0..m {
            for j in 0..m {
                t.set(2 * i, 2 * j + 1, a.get(i, j).clone());
            }
        }
        validate_triple(BilinearForm::j2_blocks(m), t)
    }
}

fn cap_row(b: &BilinearForm) -> QMat {
    let d = b.dim();
    let mut m = QMat::zero(1, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(0, i * d + j, b.matrix.get(i, j).clone());
        }
    }
    m
}

fn cup_col(t: &QMat) -> QMat {
    let d = t.rows();
    let mut m = QMat::zero(d * d, 1);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + j, 0, t.get(i, j).clone());
        }
    }
    m
}

fn dim_pow(d: usize, k: usize) -> usize {
    d.pow(k as u32)
}

fn layer(d: usize, a: usize, b: usize, gen: &QMat) -> QMat {
    QMat::identity(dim_pow(d, a))
        .kron(gen)
        .kron(&QMat::identity(dim_pow(d, b)))
}

fn eval_cap_diagram(triple: &FiberTriple, v: &Diagram) -> QMat {
    let d = triple.dim();
    let caps = v.caps();
    let Some(&(i, _)) = caps.iter().find(|&&(i, j)| j == i + 1) else {
        return QMat::identity(dim_pow(d, v.dom()));
    };
    let first = layer(d, i - 1, v.dom() - i - 1, &cap_row(&triple.b));
    eval_cap_diagram(triple, &peel(v, i)).mul(&first)
}

fn eval_cup_diagram(triple: &FiberTriple, u: &Diagram) -> QMat {
    let d = triple.dim();
    let cups = u.cups();
    let Some(&(i, _)) = cups.iter().find(|&&(i, j)| j == i + 1) else {
        return QMat::identity(dim_pow(d, u.dom()));
    };
    let last = layer(d, i - 1, u.cod() - i - 1, &cup_col(&triple.t));
    last.mul(&eval_cup_diagram(triple, &peel(&u.bar(), i).bar()))
}

/// Remove the adjacent cap `(i, i+1)` from a cap diagram.
fn peel(v: &Diagram, i: usize) -> Diagram {
    let pairs: Vec<(Point, Point)> = v
        .pairs()
        .iter()
        .filter(|&&(a, b)| (a, b) != (Point::Src(i), Point::Src(i + 1)))
        .map(|&(a, b)| (shift(a, i), shift(b, i)))
        .collect();
    Diagram::new(v.dom() - 2, v.cod(), &pairs).expect("peeling preserves planarity")
}

fn shift(p: Point, i: usize) -> Point {
    match p {
        Point::Src(j) if j > i + 1 => Point::Src(j - 2),
        other => other,
    }
}

/// Evaluate the induced monoidal functor on a morphism at `q = 0`: the
/// result is a `dim^cod x dim^dom` exact matrix.
pub fn evaluate_fiber(triple: &FiberTriple, f: &Morphism) -> Result<QMat, FiberError> {
    if *f.context() != ParamContext::bar_zero() {
        return Err(FiberError::ContextError(f.context().to_string()));
    }
    let d = triple.dim();
    let mut acc = QMat::zero(dim_pow(d, f.cod()), dim_pow(d, f.dom()));
    for (diag, c) in f.terms() {
        let (u, v) = diag.factorize();
        let img = eval_cup_diagram(triple, &u).mul(&eval_cap_diagram(triple, &v));
        acc = acc.add(&img.scale(&c.constant_term()));
    }
    Ok(acc)
}

/// Inflate a triple by an outer pair `(b', t')` with zero contraction:
/// the result is `(b' perp b, t' + t)` in block form, again a valid triple.
pub fn inflate(
    outer_b: &BilinearForm,
    outer_t: &QMat,
    inner: &FiberTriple,
) -> Result<FiberTriple, FiberError> {
    if outer_t.rows() != outer_b.dim() || outer_t.cols() != outer_b.dim() {
        return Err(FiberError::ShapeMismatch(
            outer_b.dim(),
            outer_b.dim(),
            outer_t.rows(),
            outer_t.cols(),
        ));
    }
    check_support(outer_b, outer_t)?;
    let tr = contract(outer_b, outer_t);
    if !tr.is_zero() {
        return Err(FiberError::OuterTraceNotZero(tr.to_string()));
    }
    let b = outer_b.perp(&inner.b);
    let dp = outer_b.dim();
    let d = inner.dim();
    let mut t = QMat::zero(dp + d, dp + d);
    for i in 0..dp {
        for j in 0..dp {
            t.set(i, j, outer_t.get(i, j).clone());
        }
    }
    for i in 0..d {
        for j in 0..d {
            t.set(dp + i, dp + j, inner.t.get(i, j).clone());
        }
    }
    validate_triple(b, t)
}

/// The projection `V' (+) V -> V` out of an inflation.
pub fn inflation_projection(outer_dim: usize, inner_dim: usize) -> QMat {
    let mut p = QMat::zero(inner_dim, outer_dim + inner_dim);
    for i in 0..inner_dim {
        p.set(i, outer_dim + i, Rat::one());
    }
    p
}

/// Is `f : V -> V'` a morphism of triples? Needs `b'(f v, f w) = b(v, w)`
/// (that is `f^T B' f = B`) and `(f (x) f)(t) = t'` (that is `f T f^T = T'`).
pub fn triple_morphism_check(f: &QMat, from: &FiberTriple, to: &FiberTriple) -> bool {
    if f.rows() != to.dim() || f.cols() != from.dim() {
        return false;
    }
    let pulled = f.transpose().mul(to.b.matrix()).mul(f);
    if pulled != *from.b.matrix() {
        return false;
    }
    let pushed = f.mul(&from.t).mul(&f.transpose());
    pushed == to.t
}

/// Characteristic-polynomial invariants of a triple over the canonical
/// homogeneous-even form `J_2^(perp m)`: coefficients `(c_1, ..., c_m)` of
/// the matrix of `t` in the paired radical bases. `c_1 = -Tr = -1` always.
pub fn orbit_invariant(triple: &FiberTriple) -> Result<Vec<Rat>, FiberError> {
    let dim = triple.dim();
    if dim % 2 != 0 {
        return Err(FiberError::NotHomogeneousEvenType);
    }
    let m = dim / 2;
    if *triple.b.matrix() != *BilinearForm::j2_blocks(m).matrix() {
        return Err(FiberError::NotHomogeneousEvenType);
    }
    let mut a = QMat::zero(m, m);
    for i in 0..m {
        for j in 0..m {
            a.set(i, j, triple.t.get(2 * i, 2 * j + 1).clone());
        }
    }
    Ok(a.charpoly())
}
