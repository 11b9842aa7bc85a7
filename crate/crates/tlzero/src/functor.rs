//! The monoidal functor from the `q = 0` diagram category to sl2-crystals,
//! realized as exact rational matrices on the bitstring bases.
//!
//! On generators, `cup` goes to the embedding `alpha` of the trivial
//! component into `B (x) B` and `cap` to the projection `beta` back; a
//! diagram is evaluated through its canonical cup/cap factorization, each
//! basic cup or cap contributing a Kronecker layer `id (x) alpha (x) id` or
//! `id (x) beta (x) id`. The defining relations hold for these matrices, so
//! the value does not depend on the factorization.

use thiserror::Error;

use crate::crystal::{self, Component, TensorElement};
use crate::diagram::{enumerate, Diagram, EnumMode, Point};
use crate::jw::jw;
use crate::linalg::rank_of_span;
use crate::morphism::{Morphism, ParamContext};
use crate::{QMat, Rat};

use num::traits::One;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("functor is defined on the q = 0 category; morphism context is {0}")]
    ContextError(String),
}

/// An exact matrix between tensor powers of the defining crystal, rows and
/// columns indexed by bitstrings in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrystalMatrix {
    /// Tensor exponent of the domain: the matrix has `2^dom` columns.
    pub dom: usize,
    /// Tensor exponent of the codomain: the matrix has `2^cod` rows.
    pub cod: usize,
    pub mat: QMat,
}

impl CrystalMatrix {
    pub fn identity(n: usize) -> Self {
        CrystalMatrix {
            dom: n,
            cod: n,
            mat: QMat::identity(1 << n),
        }
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        CrystalMatrix {
            dom,
            cod,
            mat: QMat::zero(1 << cod, 1 << dom),
        }
    }

    pub fn mul(&self, other: &CrystalMatrix) -> CrystalMatrix {
        assert_eq!(self.dom, other.cod);
        CrystalMatrix {
            dom: other.dom,
            cod: self.cod,
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn kron(&self, other: &CrystalMatrix) -> CrystalMatrix {
        CrystalMatrix {
            dom: self.dom + other.dom,
            cod: self.cod + other.cod,
            mat: self.mat.kron(&other.mat),
        }
    }

    /// Image of a basis element: `Some((element, coefficient))` when the
    /// column has a single entry, `None` when it is zero. Columns of diagram
    /// images always have at most one entry.
    pub fn column_image(&self, x: &TensorElement) -> Vec<(TensorElement, Rat)> {
        use num::traits::Zero;
        let mut out = Vec::new();
        for row in 0..self.mat.rows() {
            let v = self.mat.get(row, x.index());
            if !v.is_zero() {
                out.push((TensorElement::new(self.cod, row as u32), v.clone()));
            }
        }
        out
    }
}

/// The generator images: `alpha : B_0 -> B (x) B` (a 4x1 column hitting
/// `01`) and `beta : B (x) B -> B_0` (a 1x4 row reading `01`).
pub fn generator_matrices() -> (CrystalMatrix, CrystalMatrix) {
    let mut alpha = QMat::zero(4, 1);
    alpha.set(0b01, 0, Rat::one());
    let mut beta = QMat::zero(1, 4);
    beta.set(0, 0b01, Rat::one());
    (
        CrystalMatrix {
            dom: 0,
            cod: 2,
            mat: alpha,
        },
        CrystalMatrix {
            dom: 2,
            cod: 0,
            mat: beta,
        },
    )
}

fn layer(a: usize, b: usize, gen: &CrystalMatrix) -> CrystalMatrix {
    CrystalMatrix::identity(a)
        .kron(gen)
        .kron(&CrystalMatrix::identity(b))
}

/// Remove the cap `(i, i+1)` from a cap diagram, shifting higher sources.
fn peel_cap(v: &Diagram, i: usize) -> Diagram {
    let pairs: Vec<(Point, Point)> = v
        .pairs()
        .iter()
        .filter(|&&(a, b)| (a, b) != (Point::Src(i), Point::Src(i + 1)))
        .map(|&(a, b)| (shift_src(a, i), shift_src(b, i)))
        .collect();
    Diagram::new(v.dom() - 2, v.cod(), &pairs).expect("peeling preserves planarity")
}

fn shift_src(p: Point, i: usize) -> Point {
    match p {
        Point::Src(j) if j > i + 1 => Point::Src(j - 2),
        other => other,
    }
}

fn f_of_cap_diagram(v: &Diagram) -> CrystalMatrix {
    let caps = v.caps();
    let Some(&(i, j)) = caps.iter().find(|&&(i, j)| j == i + 1) else {
        debug_assert!(caps.is_empty());
        return CrystalMatrix::identity(v.dom());
    };
    debug_assert_eq!(j, i + 1);
    let (_, beta) = generator_matrices();
    let first = layer(i - 1, v.dom() - i - 1, &beta);
    f_of_cap_diagram(&peel_cap(v, i)).mul(&first)
}

fn f_of_cup_diagram(u: &Diagram) -> CrystalMatrix {
    let cups = u.cups();
    let Some(&(i, j)) = cups.iter().find(|&&(i, j)| j == i + 1) else {
        debug_assert!(cups.is_empty());
        return CrystalMatrix::identity(u.dom());
    };
    debug_assert_eq!(j, i + 1);
    let (alpha, _) = generator_matrices();
    let last = layer(i - 1, u.cod() - i - 1, &alpha);
    last.mul(&f_of_cup_diagram(&peel_cap(&u.bar(), i).bar()))
}

/// The functor on a single diagram, through the cup/cap factorization.
pub fn apply_f_diagram(d: &Diagram) -> CrystalMatrix {
    let (u, v) = d.factorize();
    f_of_cup_diagram(&u).mul(&f_of_cap_diagram(&v))
}

/// The functor on a morphism at `q = 0`: linear extension over terms.
pub fn apply_f(f: &Morphism) -> Result<CrystalMatrix, FunctorError> {
    if *f.context() != ParamContext::bar_zero() {
        return Err(FunctorError::ContextError(f.context().to_string()));
    }
    let mut out = CrystalMatrix::zero(f.dom(), f.cod());
    for (d, c) in f.terms() {
        let img = apply_f_diagram(d);
        out.mat = out.mat.add(&img.mat.scale(&c.constant_term()));
    }
    Ok(out)
}

/// The branching bijection on a cap diagram: the bitstring with `(0, 1)` on
/// every cap `(r, s)` and `0` on through strands; it is the highest weight
/// element of the component the diagram names.
pub fn phi_branching(x: &Diagram) -> TensorElement {
    debug_assert!(x.is_cap_diagram());
    let n = x.dom();
    let mut bits = vec![0u8; n];
    for (_, s) in x.caps() {
        bits[s - 1] = 1;
    }
    TensorElement::from_bits(&bits)
}

/// The `+/-` sequence of a cap diagram: `+` where the branching bitstring
/// has `0`, `-` where it has `1`.
pub fn sign_sequence(x: &Diagram) -> String {
    let h = phi_branching(x);
    (1..=h.len())
        .map(|i| if h.bit(i) == 0 { '+' } else { '-' })
        .collect()
}

/// The component of `B^{(x)n}` a cap diagram corresponds to.
pub fn component_of_diagram(x: &Diagram) -> Component {
    crystal::component_of(&phi_branching(x))
}

/// Check that `F(j_k . x)` projects `B^{(x)n}` onto the component named by
/// `x` (mapping its chain onto the top component of `B^{(x)k}` in order and
/// killing all other components), and dually that `F(bar(x) . j_k)` embeds
/// the top component back onto it.
pub fn verify_projection(x: &Diagram) -> bool {
    let n = x.dom();
    let k = x.th();
    let ctx = ParamContext::bar_zero();
    let proj = jw(k)
        .compose(&Morphism::diagram(x.clone(), ctx.clone()))
        .expect("shapes agree");
    let emb = Morphism::diagram(x.bar(), ctx)
        .compose(&jw(k))
        .expect("shapes agree");
    let p = apply_f(&proj).expect("q = 0 context");
    let e = apply_f(&emb).expect("q = 0 context");

    let target = component_of_diagram(x);
    let top = crystal::component_of(&TensorElement::new(k, 0));
    debug_assert_eq!(top.highest_weight(), k);
    if target.highest_weight() != k {
        return false;
    }

    // p kills everything outside the target component and carries its chain
    // onto the top chain of B^(x)k in order
    for bits in 0..(1u32 << n) {
        let y = TensorElement::new(n, bits);
        let image = p.column_image(&y);
        match target.chain.iter().position(|c| *c == y) {
            Some(i) => {
                if image.len() != 1 || image[0].0 != top.chain[i] || !image[0].1.is_one() {
                    return false;
                }
            }
            None => {
                if !image.is_empty() {
                    return false;
                }
            }
        }
    }
    // e embeds the top chain onto the target chain and kills the rest
    for bits in 0..(1u32 << k) {
        let y = TensorElement::new(k, bits);
        let image = e.column_image(&y);
        match top.chain.iter().position(|c| *c == y) {
            Some(i) => {
                if image.len() != 1 || image[0].0 != target.chain[i] || !image[0].1.is_one() {
                    return false;
                }
            }
            None => {
                if !image.is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// Rank of the span of the functor images of the diagram basis of
/// `Hom(m, n)`; equals the Catalan dimension when the functor is faithful.
pub fn rank_of_hom_span(m: usize, n: usize) -> usize {
    let diagrams = enumerate(EnumMode::Hom(m, n)).expect("even parity");
    let vectors: Vec<Vec<Rat>> = diagrams
        .iter()
        .map(|d| apply_f_diagram(d).mat.flatten())
        .collect();
    rank_of_span(&vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Point::{Src, Tgt};
    use num::traits::Zero;

    fn te(s: &str) -> TensorElement {
        TensorElement::parse(s).unwrap()
    }

    #[test]
    fn generator_relations() {
        let (alpha, beta) = generator_matrices();
        // circle at q = 0: beta . alpha = id_0
        assert_eq!(beta.mul(&alpha), CrystalMatrix::identity(0));
        // both zig-zags vanish
        let idm = CrystalMatrix::identity(1);
        let z1 = idm.kron(&beta).mul(&alpha.kron(&idm));
        assert!(z1.mat.is_zero());
        let z2 = beta.kron(&idm).mul(&idm.kron(&alpha));
        assert!(z2.mat.is_zero());
        // alpha has a single entry, at the row of 01
        assert_eq!(alpha.column_image(&te("")), vec![(te("01"), Rat::one())]);
    }

    #[test]
    fn cap_image() {
        let cap = apply_f_diagram(&Diagram::cap());
        assert!(cap.column_image(&te("00")).is_empty());
        assert!(cap.column_image(&te("10")).is_empty());
        assert!(cap.column_image(&te("11")).is_empty());
        assert_eq!(cap.column_image(&te("01")), vec![(te(""), Rat::one())]);
    }

    #[test]
    fn functoriality_spot_checks() {
        let ctx = ParamContext::bar_zero();
        // F(id_n) is the identity matrix
        for n in 0..=4 {
            assert_eq!(
                apply_f(&Morphism::identity(n, ctx.clone())).unwrap(),
                CrystalMatrix::identity(n)
            );
        }
        // F(g . f) = F(g) F(f) on a sample
        let f = Morphism::diagram(Diagram::placed_cup(1, 0), ctx.clone());
        let g = Morphism::diagram(Diagram::placed_cap(0, 1), ctx.clone());
        let lhs = apply_f(&g.compose(&f).unwrap()).unwrap();
        let rhs = apply_f(&g).unwrap().mul(&apply_f(&f).unwrap());
        assert_eq!(lhs, rhs);
        // F(f (x) g) = F(f) (x) F(g)
        let t = f.tensor(&g).unwrap();
        assert_eq!(
            apply_f(&t).unwrap(),
            apply_f(&f).unwrap().kron(&apply_f(&g).unwrap())
        );
        // wrong context is rejected
        assert!(apply_f(&Morphism::identity(1, ParamContext::Generic)).is_err());
    }

    #[test]
    fn zigzag_becomes_zero_matrix() {
        let ctx = ParamContext::bar_zero();
        let f = apply_f(&Morphism::diagram(Diagram::placed_cup(0, 1), ctx.clone())).unwrap();
        let g = apply_f(&Morphism::diagram(Diagram::placed_cap(1, 0), ctx)).unwrap();
        let z = g.mul(&f);
        assert!(z.mat.is_zero());
    }

    #[test]
    fn branching_examples() {
        assert_eq!(phi_branching(&Diagram::id(3)), te("000"));
        assert_eq!(phi_branching(&Diagram::cap()), te("01"));
        let capcap = Diagram::cap().tensor(&Diagram::cap());
        assert_eq!(phi_branching(&capcap), te("0101"));
        assert_eq!(sign_sequence(&capcap), "+-+-");
        assert_eq!(sign_sequence(&Diagram::id(3)), "+++");
        // cap(2,3) in D_3: strand 3 capped onto 2
        let d = Diagram::new(3, 1, &[(Src(1), Tgt(1)), (Src(2), Src(3))]).unwrap();
        assert_eq!(sign_sequence(&d), "++-");
    }

    #[test]
    fn branching_is_bijective_onto_components() {
        for n in 0..=6 {
            let caps = enumerate(EnumMode::CapDiagrams(n)).unwrap();
            let comps = crystal::components(n).unwrap();
            assert_eq!(caps.len(), comps.len());
            let mut seen = std::collections::BTreeSet::new();
            for x in &caps {
                let h = phi_branching(x);
                // the image is a highest weight element
                assert!(crystal::kashiwara(crystal::Op::E, &h).is_none());
                // weight matches the through-count
                assert_eq!(h.weight(), x.th() as i64);
                seen.insert(h);
            }
            assert_eq!(seen.len(), comps.len());
        }
    }

    #[test]
    fn projection_examples() {
        // x = id_n: F(jw(n)) projects onto the top component
        assert!(verify_projection(&Diagram::id(3)));
        // x = cap: projection onto the 01 singleton
        assert!(verify_projection(&Diagram::cap()));
        // all of D_4
        for x in enumerate(EnumMode::CapDiagrams(4)).unwrap() {
            assert!(verify_projection(&x), "x = {x}");
        }
    }

    #[test]
    fn rank_matches_catalan_small() {
        assert_eq!(rank_of_hom_span(2, 2), 2);
        assert_eq!(rank_of_hom_span(1, 3), 2);
        assert_eq!(rank_of_hom_span(3, 3), 5);
        assert_eq!(rank_of_hom_span(0, 4), 2);
    }

    #[test]
    fn jw_image_is_idempotent_projection() {
        for k in 0..=4 {
            let p = apply_f(&jw(k)).unwrap();
            assert_eq!(p.mul(&p), p, "k={k}");
            // image is the top component chain, identically
            let top = crystal::component_of(&TensorElement::new(k, 0));
            for bits in 0..(1u32 << k) {
                let y = TensorElement::new(k, bits);
                let img = p.column_image(&y);
                if top.chain.contains(&y) {
                    assert_eq!(img, vec![(y, Rat::one())]);
                } else {
                    assert!(
                        img.is_empty() || img.iter().all(|(_, c)| c.is_zero()),
                        "k={k} y={y}"
                    );
                }
            }
        }
    }
}
