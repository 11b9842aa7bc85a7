//! Jones-Wenzl projectors at `q = 0`, in closed form.
//!
//! `jw(n)` is the signed sum of the idempotents `c_{I,n} = cup_I . cap_I`
//! over apt subsets `I` of `{1..n}`: a subset is apt when it avoids `n` and
//! contains no two consecutive integers. There are `Fibonacci(n+1)` of them,
//! so the projectors stay small far beyond the sizes the verification suites
//! use.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::diagram::{Diagram, Point};
use crate::morphism::{Morphism, ParamContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AptError {
    #[error("{i} is not in 1..={n}")]
    OutOfRange { i: usize, n: usize },
    #[error("subset of {{1..{n}}} is not apt: contains {0} and {1}", .pair.0, .pair.1)]
    NotApt { n: usize, pair: (usize, usize) },
    #[error("subset of {{1..{n}}} is not apt: contains n = {n}")]
    ContainsLast { n: usize },
}

/// An apt subset of `{1..n}`: no `n`, no two consecutive members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AptSubset {
    n: usize,
    members: Vec<usize>,
}

impl AptSubset {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self, AptError> {
        members.sort_unstable();
        members.dedup();
        for &i in &members {
            if i < 1 || i > n {
                return Err(AptError::OutOfRange { i, n });
            }
            if i == n {
                return Err(AptError::ContainsLast { n });
            }
        }
        for w in members.windows(2) {
            if w[1] == w[0] + 1 {
                return Err(AptError::NotApt {
                    n,
                    pair: (w[0], w[1]),
                });
            }
        }
        Ok(AptSubset { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All apt subsets of `{1..n}`, ordered by size then lexicographically.
/// There are `Fibonacci(n+1)` of them.
pub fn apt_subsets(n: usize) -> Vec<AptSubset> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    let mut previous: Vec<Vec<usize>> = vec![vec![]];
    loop {
        let mut next = Vec::new();
        for base in &previous {
            let start = base.last().map_or(1, |&l| l + 2);
            for i in start..n {
                let mut grown = base.clone();
                grown.push(i);
                next.push(grown);
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        previous = next;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|members| AptSubset { n, members })
        .collect()
}

/// The cap diagram `cap_{I,n} : n -> n - 2|I|` with caps in positions
/// `(i, i+1)` for `i` in `I`.
pub fn cap_of(subset: &AptSubset) -> Diagram {
    let n = subset.n;
    let capped: Vec<usize> = subset.members.clone();
    let mut pairs: Vec<(Point, Point)> = capped
        .iter()
        .map(|&i| (Point::Src(i), Point::Src(i + 1)))
        .collect();
    let mut tgt = 0;
    for s in 1..=n {
        if capped.contains(&s) || (s > 1 && capped.contains(&(s - 1))) {
            continue;
        }
        tgt += 1;
        pairs.push((Point::Src(s), Point::Tgt(tgt)));
    }
    Diagram::new(n, n - 2 * subset.len(), &pairs).expect("apt subsets give planar cap diagrams")
}

/// The idempotent `c_{I,n} = cup_{I,n} . cap_{I,n}` in `End(n)` at `q = 0`,
/// as a single diagram with coefficient `+1`.
pub fn c_diagram(subset: &AptSubset) -> Morphism {
    let n = subset.n;
    let mut pairs: Vec<(Point, Point)> = Vec::with_capacity(n);
    for &i in &subset.members {
        pairs.push((Point::Src(i), Point::Src(i + 1)));
        pairs.push((Point::Tgt(i), Point::Tgt(i + 1)));
    }
    for s in 1..=n {
        if subset.members.contains(&s) || (s > 1 && subset.members.contains(&(s - 1))) {
            continue;
        }
        pairs.push((Point::Src(s), Point::Tgt(s)));
    }
    let d = Diagram::new(n, n, &pairs).expect("apt subsets give planar diagrams");
    Morphism::diagram(d, ParamContext::bar_zero())
}

/// The n-th Jones-Wenzl projector at `q = 0`:
/// the sum of `(-1)^{|I|} c_{I,n}` over apt subsets `I`.
pub fn jw(n: usize) -> Morphism {
    static CACHE: OnceLock<Mutex<HashMap<usize, Morphism>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let value = jw_uncached(n);
    cache.lock().unwrap().entry(n).or_insert(value).clone()
}

fn jw_uncached(n: usize) -> Morphism {
    let mut acc = Morphism::zero(n, n, ParamContext::bar_zero());
    for subset in apt_subsets(n) {
        let term = c_diagram(&subset);
        acc = if subset.len() % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        }
        .expect("terms share the End(n) shape");
    }
    acc
}

/// The projectors built by the Jones-Wenzl recursion
/// `j_{n+1} = j_n (x) id - (j_n (x) id) . c_{{n}, n+1} . (j_n (x) id)`;
/// equal to [`jw`] term by term.
pub fn jw_recursive(n: usize) -> Morphism {
    let ctx = ParamContext::bar_zero();
    let mut current = Morphism::identity(0, ctx.clone());
    for m in 0..n {
        let widened = current
            .tensor(&Morphism::identity(1, ctx.clone()))
            .expect("same context");
        current = if m == 0 {
            // j_1 = id_1: there is no cap on strands (0, 1)
            widened
        } else {
            let hook = c_diagram(&AptSubset::new(m + 1, vec![m]).unwrap());
            let correction = widened
                .compose(&hook)
                .and_then(|t| t.compose(&widened))
                .expect("shapes agree");
            widened.sub(&correction).expect("shapes agree")
        };
    }
    current
}
