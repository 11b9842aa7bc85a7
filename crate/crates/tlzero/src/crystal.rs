//! sl2-crystal combinatorics on tensor powers of the two-element crystal
//! `B = {b_0, b_1}`.
//!
//! Elements of `B^{(x)n}` are bitstrings `h_1...h_n` (0 for the highest
//! element). Kashiwara operators follow the tensor rule with the n-fold
//! product associated to the left; `e` moves to the left factor when
//! `phi(a) >= eps(b)` and `f` moves left when `phi(a) > eps(b)`.
//!
//! This module is the independent oracle for the diagram side: component
//! multiplicities match the semisimple block sizes, and the reversal-based
//! commutor here is the target of the diagrammatic one under the functor.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("n = {0} exceeds the configured bound {1} (set TL_MAX_N to raise it)")]
    BoundExceeded(usize, usize),
}

/// A basis element `b_{h_1} (x) ... (x) b_{h_n}` of `B^{(x)n}`, packed as a
/// bitstring with `h_1` the most significant bit.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorElement {
    n: usize,
    bits: u32,
}

impl TensorElement {
    pub fn new(n: usize, bits: u32) -> Self {
        assert!(n <= 31, "tensor power too large");
        assert!(n == 0 || bits < (1 << n), "bits out of range");
        TensorElement { n, bits }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let n = bits.len();
        let mut packed = 0u32;
        for &b in bits {
            packed = (packed << 1) | u32::from(b != 0);
        }
        TensorElement { n, bits: packed }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if !s.chars().all(|c| c == '0' || c == '1') {
            return None;
        }
        Some(Self::from_bits(
            &s.chars().map(|c| (c == '1') as u8).collect::<Vec<_>>(),
        ))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `h_i`, 1-based.
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!(1 <= i && i <= self.n);
        ((self.bits >> (self.n - i)) & 1) as u8
    }

    /// Index in the lexicographic basis ordering of `B^{(x)n}`.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn concat(&self, other: &TensorElement) -> TensorElement {
        TensorElement {
            n: self.n + other.n,
            bits: (self.bits << other.n) | other.bits,
        }
    }

    /// Split into the first `m` and the remaining `n - m` tensor factors.
    pub fn split(&self, m: usize) -> (TensorElement, TensorElement) {
        assert!(m <= self.n);
        let right_len = self.n - m;
        let mask = if right_len == 0 {
            0
        } else {
            (1u32 << right_len) - 1
        };
        let left = TensorElement {
            n: m,
            bits: self.bits >> right_len,
        };
        let right = TensorElement {
            n: right_len,
            bits: self.bits & mask,
        };
        (left, right)
    }

    pub fn weight(&self) -> i64 {
        let ones = self.bits.count_ones() as i64;
        self.n as i64 - 2 * ones
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{self}|")
    }
}

/// Kashiwara operator choice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Op {
    E,
    F,
}

/// String statistics `(eps, phi)` of a bitstring, folded left to right via
/// the tensor-product formulas.
fn stats(x: &TensorElement) -> (i64, i64) {
    let mut eps = 0i64;
    let mut phi = 0i64;
    let mut wt = 0i64;
    for i in 1..=x.n {
        let (be, bp, bw) = if x.bit(i) == 0 { (0, 1, 1) } else { (1, 0, -1) };
        // (a) (x) (b): eps = max(eps_a, eps_b - wt_a), phi = max(phi_b, phi_a + wt_b)
        eps = eps.max(be - wt);
        phi = (phi + bw).max(bp);
        wt += bw;
    }
    (eps, phi)
}

pub fn epsilon(x: &TensorElement) -> i64 {
    stats(x).0
}

pub fn phi(x: &TensorElement) -> i64 {
    stats(x).1
}

/// Apply a Kashiwara operator; `None` encodes the crystal zero.
pub fn kashiwara(op: Op, x: &TensorElement) -> Option<TensorElement> {
    if x.n == 0 {
        return None;
    }
    if x.n == 1 {
        return match (op, x.bits) {
            (Op::F, 0) => Some(TensorElement::new(1, 1)),
            (Op::E, 1) => Some(TensorElement::new(1, 0)),
            _ => None,
        };
    }
    let (a, b) = x.split(x.n - 1);
    let (phi_a, eps_b) = (phi(&a), epsilon(&b));
    match op {
        Op::E => {
            if phi_a >= eps_b {
                kashiwara(op, &a).map(|ea| ea.concat(&b))
            } else {
                kashiwara(op, &b).map(|eb| a.concat(&eb))
            }
        }
        Op::F => {
            if phi_a > eps_b {
                kashiwara(op, &a).map(|fa| fa.concat(&b))
            } else {
                kashiwara(op, &b).map(|fb| a.concat(&fb))
            }
        }
    }
}

/// A connected component of `B^{(x)n}`: the chain `c_0, ..., c_lambda` with
/// `f(c_i) = c_{i+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Component {
    pub ambient: usize,
    pub chain: Vec<TensorElement>,
}

impl Component {
    pub fn highest_weight(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn head(&self) -> TensorElement {
        self.chain[0]
    }
}

/// The connected component containing `x`, built by walking to the head
/// with `e` and back down with `f`.
pub fn component_of(x: &TensorElement) -> Component {
    let mut head = *x;
    while let Some(up) = kashiwara(Op::E, &head) {
        head = up;
    }
    let mut chain = vec![head];
    let mut cur = head;
    while let Some(down) = kashiwara(Op::F, &cur) {
        chain.push(down);
        cur = down;
    }
    Component {
        ambient: x.n,
        chain,
    }
}

/// Decompose `B^{(x)n}` into connected components, ordered by highest
/// weight descending then by the head bitstring.
pub fn components(n: usize) -> Result<Vec<Component>, CrystalError> {
    let bound = crate::default_max_n();
    if n > bound {
        return Err(CrystalError::BoundExceeded(n, bound));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<Component>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let mut comps: Vec<Component> = Vec::new();
    for bits in 0..(1u32 << n) {
        let x = TensorElement::new(n, bits);
        if kashiwara(Op::E, &x).is_none() {
            comps.push(component_of(&x));
        }
    }
    comps.sort_by_key(|c| (std::cmp::Reverse(c.highest_weight()), c.head().index()));
    // the chains partition the basis
    debug_assert_eq!(
        comps.iter().map(|c| c.chain.len()).sum::<usize>(),
        1usize << n
    );
    cache.lock().unwrap().entry(n).or_insert_with(|| comps.clone());
    Ok(comps)
}

/// Highest weights of the components of `B_lambda (x) B_mu`, via the tensor
/// rule on a product of two path crystals.
pub fn tensor_decompose(lambda: usize, mu: usize) -> Vec<usize> {
    // elements are pairs (i, j): b_i (x) b_j with phi(b_i) = lambda - i,
    // eps(b_j) = j
    let phi_left = |i: usize| (lambda - i) as i64;
    let e = |i: usize, j: usize| -> Option<(usize, usize)> {
        if phi_left(i) >= j as i64 {
            (i > 0).then(|| (i - 1, j))
        } else {
            (j > 0).then(|| (i, j - 1))
        }
    };
    let f = |i: usize, j: usize| -> Option<(usize, usize)> {
        if phi_left(i) > j as i64 {
            (i < lambda).then(|| (i + 1, j))
        } else {
            (j < mu).then(|| (i, j + 1))
        }
    };
    let mut weights = Vec::new();
    for i in 0..=lambda {
        for j in 0..=mu {
            if e(i, j).is_none() {
                // head of a component; its chain length is the weight
                let mut len = 0usize;
                let (mut ci, mut cj) = (i, j);
                while let Some((ni, nj)) = f(ci, cj) {
                    len += 1;
                    ci = ni;
                    cj = nj;
                }
                weights.push(len);
            }
        }
    }
    weights.sort_by(|a, b| b.cmp(a));
    weights
}

/// The per-component reversal `b_k -> b_{lambda - k}`; an involution fixing
/// each component setwise.
pub fn xi(x: &TensorElement) -> TensorElement {
    let comp = component_of(x);
    let k = comp.chain.iter().position(|c| c == x).expect("in chain");
    comp.chain[comp.chain.len() - 1 - k]
}

/// The commutor on basis elements: split `x = a (x) b` with `|a| = m`,
/// return `xi( xi(b) (x) xi(a) )`. A weight-preserving bijection
/// `B^{(x)m+n} -> B^{(x)n+m}`.
pub fn hk_commutor(m: usize, n: usize, x: &TensorElement) -> TensorElement {
    assert_eq!(x.n, m + n);
    let (a, b) = x.split(m);
    let swapped = xi(&b).concat(&xi(&a));
    xi(&swapped)
}
