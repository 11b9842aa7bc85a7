//! The diagrammatic commutor and the cactus-group action.
//!
//! Splitting a cap diagram at position `m` and re-hooking the two halves in
//! the other order defines the permutation `kappa` of cap diagrams; the
//! commutor is the sum of the max-summand morphisms carrying each summand
//! named by `x` onto the one named by `kappa(x)`:
//!
//! `sigma(m, n) = sum over x in D_{m+n} of bar(kappa(x)) . j_{th(x)} . x`.
//!
//! Interval reversals use the horizontal mirror instead of `kappa` and
//! generate the cactus-group action on `End(n)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::crystal::{hk_commutor, TensorElement};
use crate::diagram::{enumerate, Diagram, EnumMode, Point};
use crate::functor::apply_f;
use crate::jw::jw;
use crate::morphism::{Morphism, ParamContext};

use num::traits::One;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommutorError {
    #[error("hooking number {l} exceeds min(th) = {max}")]
    HookTooLarge { l: usize, max: usize },
    #[error("interval ({p}, {q}) invalid for n = {n}; need 1 <= p < q <= n")]
    BadInterval { p: usize, q: usize, n: usize },
    #[error("expected a cap diagram, got one with cups")]
    NotCapDiagram,
}

/// A cap diagram split at position `m`: the two restrictions (straddling
/// caps turned into through strands) and the hooking number that rebuilds
/// the original.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HookSplit {
    pub m: usize,
    pub left: Diagram,
    pub right: Diagram,
    pub l: usize,
}

/// Restrict a cap diagram to the strand interval `lo..=hi` (1-based),
/// turning half-caps into through strands.
fn restrict(x: &Diagram, lo: usize, hi: usize) -> Diagram {
    let width = hi + 1 - lo;
    let in_range = |i: usize| lo <= i && i <= hi;
    // sources that remain through strands, in order
    let mut through_sources: Vec<usize> = Vec::new();
    for i in lo..=hi {
        let is_capped_inside = x
            .caps()
            .iter()
            .any(|&(a, b)| (a == i && in_range(b)) || (b == i && in_range(a)));
        if !is_capped_inside {
            through_sources.push(i);
        }
    }
    let mut pairs: Vec<(Point, Point)> = x
        .caps()
        .iter()
        .filter(|&&(a, b)| in_range(a) && in_range(b))
        .map(|&(a, b)| (Point::Src(a + 1 - lo), Point::Src(b + 1 - lo)))
        .collect();
    for (t, &s) in through_sources.iter().enumerate() {
        pairs.push((Point::Src(s + 1 - lo), Point::Tgt(t + 1)));
    }
    Diagram::new(width, through_sources.len(), &pairs)
        .expect("restriction of a planar cap diagram is planar")
}

/// Split a cap diagram on `m + n` strands at position `m`.
pub fn split_at(x: &Diagram, m: usize) -> Result<HookSplit, CommutorError> {
    if !x.is_cap_diagram() {
        return Err(CommutorError::NotCapDiagram);
    }
    let total = x.dom();
    debug_assert!(m <= total);
    let left = restrict(x, 1, m);
    let right = restrict(x, m + 1, total);
    let l = (left.th() + right.th() - x.th()) / 2;
    Ok(HookSplit { m, left, right, l })
}

/// `l`-hooking: concatenate two cap diagrams and join the rightmost through
/// strand of the first to the leftmost through strand of the second, `l`
/// times.
pub fn hook(y: &Diagram, yp: &Diagram, l: usize) -> Result<Diagram, CommutorError> {
    if !y.is_cap_diagram() || !yp.is_cap_diagram() {
        return Err(CommutorError::NotCapDiagram);
    }
    let max = y.th().min(yp.th());
    if l > max {
        return Err(CommutorError::HookTooLarge { l, max });
    }
    let m = y.dom();
    let y_through: Vec<usize> = y.throughs().iter().map(|&(s, _)| s).collect();
    let yp_through: Vec<usize> = yp.throughs().iter().map(|&(s, _)| s + m).collect();
    let mut pairs: Vec<(Point, Point)> = Vec::new();
    for &(a, b) in &y.caps() {
        pairs.push((Point::Src(a), Point::Src(b)));
    }
    for &(a, b) in &yp.caps() {
        pairs.push((Point::Src(a + m), Point::Src(b + m)));
    }
    // nested joins: y's last through strands to yp's first ones
    for t in 0..l {
        let a = y_through[y_through.len() - 1 - t];
        let b = yp_through[t];
        pairs.push((Point::Src(a), Point::Src(b)));
    }
    let mut remaining: Vec<usize> = y_through[..y_through.len() - l].to_vec();
    remaining.extend(&yp_through[l..]);
    remaining.sort_unstable();
    for (t, &s) in remaining.iter().enumerate() {
        pairs.push((Point::Src(s), Point::Tgt(t + 1)));
    }
    Ok(Diagram::new(m + yp.dom(), remaining.len(), &pairs)
        .expect("hooked caps nest, so the diagram stays planar"))
}

/// The commutor permutation of cap diagrams: swap the two halves of the
/// split at `m` and re-hook. Preserves `th`; `kappa(n, m)` inverts it.
pub fn kappa(m: usize, n: usize, x: &Diagram) -> Result<Diagram, CommutorError> {
    debug_assert_eq!(x.dom(), m + n);
    let split = split_at(x, m)?;
    hook(&split.right, &split.left, split.l)
}

/// Vertical reflection of a cap diagram about its center.
pub fn theta(x: &Diagram) -> Diagram {
    x.mirror()
}

/// The commutor `sigma(m, n) : m + n -> n + m` at `q = 0`.
pub fn sigma(m: usize, n: usize) -> Morphism {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Morphism>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(m, n)) {
        return hit.clone();
    }
    let ctx = ParamContext::bar_zero();
    let mut acc = Morphism::zero(m + n, n + m, ctx.clone());
    for x in enumerate(EnumMode::CapDiagrams(m + n)).expect("cap diagrams exist") {
        let kx = kappa(m, n, &x).expect("kappa is defined on all of D_{m+n}");
        let tau = Morphism::diagram(kx.bar(), ctx.clone())
            .compose(&jw(x.th()))
            .and_then(|t| t.compose(&Morphism::diagram(x, ctx.clone())))
            .expect("shapes agree");
        acc = acc.add(&tau).expect("shapes agree");
    }
    cache
        .lock()
        .unwrap()
        .entry((m, n))
        .or_insert(acc)
        .clone()
}

/// The interval reversal `s_{p,q}` on `End(n)`: identity outside the
/// interval, and inside it the mirror-based sum
/// `sum over x in D_k of bar(theta(x)) . j_{th(x)} . x`, `k = q - p + 1`.
pub fn interval_reversal(p: usize, q: usize, n: usize) -> Result<Morphism, CommutorError> {
    if p < 1 || q <= p || q > n {
        return Err(CommutorError::BadInterval { p, q, n });
    }
    let k = q - p + 1;
    let ctx = ParamContext::bar_zero();
    let mut mid = Morphism::zero(k, k, ctx.clone());
    for x in enumerate(EnumMode::CapDiagrams(k)).expect("cap diagrams exist") {
        let term = Morphism::diagram(theta(&x).bar(), ctx.clone())
            .compose(&jw(x.th()))
            .and_then(|t| t.compose(&Morphism::diagram(x, ctx.clone())))
            .expect("shapes agree");
        mid = mid.add(&term).expect("shapes agree");
    }
    Morphism::identity(p - 1, ctx.clone())
        .tensor(&mid)
        .and_then(|t| t.tensor(&Morphism::identity(n - q, ctx)))
        .map_err(|_| CommutorError::BadInterval { p, q, n })
}

/// The permutation underlying `s_{p,q}`: positions inside the interval are
/// reversed. Returned as the image list `perm[i-1] = image of i`.
pub fn cactus_permutation(p: usize, q: usize, n: usize) -> Vec<usize> {
    (1..=n)
        .map(|i| if p <= i && i <= q { p + q - i } else { i })
        .collect()
}

/// Apply a word of interval reversals left to right; returns the composite
/// morphism together with the tracked strand permutation (a strand at
/// position `i` ends at `perm[i-1]`).
pub fn cactus_apply(
    word: &[(usize, usize)],
    n: usize,
) -> Result<(Morphism, Vec<usize>), CommutorError> {
    let mut morphism = Morphism::identity(n, ParamContext::bar_zero());
    let mut perm: Vec<usize> = (1..=n).collect();
    for &(p, q) in word {
        let s = interval_reversal(p, q, n)?;
        morphism = s.compose(&morphism).expect("shapes agree");
        let sp = cactus_permutation(p, q, n);
        perm = perm.iter().map(|&i| sp[i - 1]).collect();
    }
    Ok((morphism, perm))
}

/// Check the coboundary-functor square at `(m, n)`: the functor image of
/// the diagrammatic commutor equals the permutation matrix of the crystal
/// commutor on bitstrings.
pub fn verify_coboundary_equivalence(m: usize, n: usize) -> bool {
    let f_sigma = apply_f(&sigma(m, n)).expect("sigma lives at q = 0");
    let total = m + n;
    for bits in 0..(1u32 << total) {
        let x = TensorElement::new(total, bits);
        let expected = hk_commutor(m, n, &x);
        let image = f_sigma.column_image(&x);
        if image.len() != 1 || image[0].0 != expected || !image[0].1.is_one() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Point::{Src, Tgt};

    fn cap23() -> Diagram {
        // cap(2,3) in D_3
        Diagram::new(3, 1, &[(Src(1), Tgt(1)), (Src(2), Src(3))]).unwrap()
    }

    fn cap12_id() -> Diagram {
        // cap(1,2) (x) id in D_3
        Diagram::new(3, 1, &[(Src(1), Src(2)), (Src(3), Tgt(1))]).unwrap()
    }

    #[test]
    fn split_examples() {
        let s = split_at(&Diagram::id(5), 2).unwrap();
        assert_eq!(s.left, Diagram::id(2));
        assert_eq!(s.right, Diagram::id(3));
        assert_eq!(s.l, 0);

        let s = split_at(&cap23(), 2).unwrap();
        assert_eq!(s.left, Diagram::id(2));
        assert_eq!(s.right, Diagram::id(1));
        assert_eq!(s.l, 1);

        let s = split_at(&cap12_id(), 2).unwrap();
        assert_eq!(s.left, Diagram::cap());
        assert_eq!(s.right, Diagram::id(1));
        assert_eq!(s.l, 0);

        assert!(split_at(&Diagram::cup().tensor(&Diagram::id(1)), 1).is_err());
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook(&Diagram::id(1), &Diagram::id(1), 1).unwrap(), Diagram::cap());
        // 0-hooking is plain tensor
        let y = cap12_id();
        assert_eq!(
            hook(&y, &Diagram::id(1), 0).unwrap(),
            y.tensor(&Diagram::id(1))
        );
        assert_eq!(hook(&Diagram::id(2), &Diagram::id(1), 1).unwrap(), cap23().tensor(&Diagram::id(0)).tensor(&Diagram::id(0)).tensor(&Diagram::id(0)));
        assert!(matches!(
            hook(&Diagram::id(1), &Diagram::id(1), 2),
            Err(CommutorError::HookTooLarge { .. })
        ));
    }

    #[test]
    fn hook_inverts_split() {
        for total in 0..=6usize {
            for x in enumerate(EnumMode::CapDiagrams(total)).unwrap() {
                for m in 0..=total {
                    let s = split_at(&x, m).unwrap();
                    assert_eq!(hook(&s.left, &s.right, s.l).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn kappa_examples_and_involution() {
        assert_eq!(kappa(2, 3, &Diagram::id(5)).unwrap(), Diagram::id(5));
        assert_eq!(kappa(1, 1, &Diagram::cap()).unwrap(), Diagram::cap());
        assert_eq!(kappa(2, 1, &cap12_id()).unwrap(), cap23());

        for total in 0..=6usize {
            for m in 0..=total {
                let n = total - m;
                let mut images = std::collections::BTreeSet::new();
                for x in enumerate(EnumMode::CapDiagrams(total)).unwrap() {
                    let kx = kappa(m, n, &x).unwrap();
                    assert_eq!(kx.th(), x.th());
                    assert_eq!(kappa(n, m, &kx).unwrap(), x);
                    images.insert(kx);
                }
                assert_eq!(
                    images.len(),
                    enumerate(EnumMode::CapDiagrams(total)).unwrap().len()
                );
            }
        }
    }

    #[test]
    fn kappa_worked_example() {
        // D_7 diagram with caps (3,4), (2,5), (6,7): strands 2 and 3 are
        // half-capped across the split at 3, so both halves gain through
        // strands and the split is 2-hooked
        let x = Diagram::new(
            7,
            1,
            &[
                (Src(3), Src(4)),
                (Src(2), Src(5)),
                (Src(6), Src(7)),
                (Src(1), Tgt(1)),
            ],
        )
        .unwrap();
        let s = split_at(&x, 3).unwrap();
        assert_eq!(s.l, 2);
        assert_eq!(s.left, Diagram::id(3));
        assert_eq!(s.right.caps(), vec![(3, 4)]);
        assert_eq!(s.right.th(), 2);
        let kx = kappa(3, 4, &x).unwrap();
        assert_eq!(kx.th(), 1);
        // re-hooked: right's cap lands at (3,4), the two joins nest around it
        assert_eq!(kx.caps(), vec![(1, 6), (2, 5), (3, 4)]);
        assert_eq!(kx.throughs(), vec![(7, 1)]);
        assert_eq!(kappa(4, 3, &kx).unwrap(), x);
    }

    #[test]
    fn sigma_small() {
        let ctx = ParamContext::bar_zero();
        for n in 0..=4 {
            assert_eq!(sigma(0, n), Morphism::identity(n, ctx.clone()));
            assert_eq!(sigma(n, 0), Morphism::identity(n, ctx.clone()));
        }
        assert_eq!(sigma(1, 1), Morphism::identity(2, ctx));
    }

    #[test]
    fn sigma_one_three_expansion() {
        // seven basis terms, signs +,-,-,-,+,+,+ as in the displayed
        // expansion: two tau cross-terms cancel against the c_{1,3} term of
        // j_4 and the two through-count-zero tau terms cancel pairwise
        let s = sigma(1, 3);
        assert_eq!(s.num_terms(), 7);
        let mut plus = 0;
        let mut minus = 0;
        for (_, c) in s.terms() {
            if c.is_one() {
                plus += 1;
            } else if c.neg().is_one() {
                minus += 1;
            } else {
                panic!("unexpected coefficient {c}");
            }
        }
        assert_eq!((plus, minus), (4, 3));
        // the negative terms are exactly the three single-c_{i} terms of j_4
        for i in 1..=3usize {
            let c = crate::jw::c_diagram(&crate::jw::AptSubset::new(4, vec![i]).unwrap());
            let (d, _) = c.terms().next().unwrap();
            assert_eq!(s.coeff_of(d), crate::Scalar::one().neg());
        }
    }

    #[test]
    fn sigma_symmetry() {
        for total in 0..=5usize {
            for m in 0..=total {
                let n = total - m;
                let round = sigma(n, m).compose(&sigma(m, n)).unwrap();
                assert_eq!(
                    round,
                    Morphism::identity(total, ParamContext::bar_zero()),
                    "m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&Diagram::id(4)), Diagram::id(4));
        assert_eq!(theta(&cap12_id()), cap23());
        for x in enumerate(EnumMode::CapDiagrams(5)).unwrap() {
            assert_eq!(theta(&theta(&x)), x);
        }
    }

    #[test]
    fn theta_is_kappa_chain() {
        // theta as the kappa chain of the interval-reversal factorization
        // s_{1,n} = sigma_{1,1,n} . sigma_{2,2,n} . ... : each level applies
        // kappa_{1,n-i} under the strands already peeled off, i.e.
        // theta_n(x) = kappa_{1,n-1}( id_1 (.)_h theta_{n-1}(x_{>1}) )
        // with h the hooking number of x at 1. (The flat composite of
        // global kappas collapses to the identity already at n = 3, since
        // adjacent kappas are mutually inverse.)
        fn chain(x: &Diagram) -> Diagram {
            let n = x.dom();
            if n <= 1 {
                return x.clone();
            }
            let s = split_at(x, 1).unwrap();
            let inner = chain(&s.right);
            let rebuilt = hook(&s.left, &inner, s.l).unwrap();
            kappa(1, n - 1, &rebuilt).unwrap()
        }
        for n in 1..=7usize {
            for x in enumerate(EnumMode::CapDiagrams(n)).unwrap() {
                assert_eq!(chain(&x), theta(&x), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn interval_reversal_basics() {
        let ctx = ParamContext::bar_zero();
        // adjacent reversals are the identity morphism (sigma(1,1) = id)
        for n in 2..=5 {
            for p in 1..n {
                assert_eq!(
                    interval_reversal(p, p + 1, n).unwrap(),
                    Morphism::identity(n, ctx.clone())
                );
            }
        }
        // involution
        for n in 2..=5 {
            for p in 1..=n {
                for q in p + 1..=n {
                    let s = interval_reversal(p, q, n).unwrap();
                    assert_eq!(
                        s.compose(&s).unwrap(),
                        Morphism::identity(n, ctx.clone()),
                        "s_{p},{q} on {n}"
                    );
                }
            }
        }
        assert!(interval_reversal(2, 2, 3).is_err());
        assert!(interval_reversal(1, 4, 3).is_err());
        assert!(interval_reversal(0, 2, 3).is_err());
    }

    #[test]
    fn interval_reversal_matches_recursion() {
        // s_{p,q} = sigma_{p,p,q} . s_{p+1,q}
        for n in 2..=5usize {
            for p in 1..=n {
                for q in p + 1..=n {
                    // s_{p,q} = sigma_{p,p,q} . s_{p+1,q} with s_{q,q} = id
                    let mut rec = Morphism::identity(n, ParamContext::bar_zero());
                    for r in (p..q).rev() {
                        // sigma_{r,r,q} = id (x) sigma(1, q - r) (x) id
                        let block = Morphism::identity(r - 1, ParamContext::bar_zero())
                            .tensor(&sigma(1, q - r))
                            .and_then(|t| {
                                t.tensor(&Morphism::identity(n - q, ParamContext::bar_zero()))
                            })
                            .unwrap();
                        rec = block.compose(&rec).unwrap();
                    }
                    assert_eq!(
                        rec,
                        interval_reversal(p, q, n).unwrap(),
                        "recursion at ({p},{q}) n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn cactus_apply_examples() {
        let ctx = ParamContext::bar_zero();
        let (m, perm) = cactus_apply(&[], 4).unwrap();
        assert_eq!(m, Morphism::identity(4, ctx.clone()));
        assert_eq!(perm, vec![1, 2, 3, 4]);

        let (m, perm) = cactus_apply(&[(1, 2), (1, 2)], 4).unwrap();
        assert_eq!(m, Morphism::identity(4, ctx.clone()));
        assert_eq!(perm, vec![1, 2, 3, 4]);

        // disjoint intervals commute
        let (a, pa) = cactus_apply(&[(1, 2), (3, 4)], 4).unwrap();
        let (b, pb) = cactus_apply(&[(3, 4), (1, 2)], 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(pa, pb);

        let (_, perm) = cactus_apply(&[(1, 3)], 4).unwrap();
        assert_eq!(perm, vec![3, 2, 1, 4]);
    }

    #[test]
    fn coboundary_equivalence_smallest() {
        assert!(verify_coboundary_equivalence(1, 1));
        assert!(verify_coboundary_equivalence(1, 2));
        assert!(verify_coboundary_equivalence(2, 1));
    }
}
