//! Temperley-Lieb diagrams: planar crossingless perfect matchings between
//! `m` source points (bottom) and `n` target points (top).
//!
//! Composition `g . f` stacks `f` below `g`. The boundary walk order used for
//! the planarity test is `s1 < ... < sm < tn < ... < t1` (around the
//! rectangle), so a diagram is planar iff no two pairs interleave in that
//! order.

use std::cmp::Reverse;
use std::fmt;

use thiserror::Error;

/// A boundary point, 1-based. `Src` points sit on the bottom (domain),
/// `Tgt` points on the top (codomain).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Src(usize),
    Tgt(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Src(i) => write!(f, "s{i}"),
            Point::Tgt(j) => write!(f, "t{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("m + n must be even, got m={0}, n={1}")]
    ParityViolation(usize, usize),
    #[error("point {0} out of range for domain {1}, codomain {2}")]
    LabelOutOfRange(Point, usize, usize),
    #[error("pairing is not a perfect matching of the boundary points")]
    NotPerfectMatching,
    #[error("pairing is not planar: {0} and {1} interleave")]
    NotPlanar(String, String),
}

/// A Temperley-Lieb basis diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    dom: usize,
    cod: usize,
    /// Canonical: each pair ordered by `Point` order, list sorted.
    pairs: Vec<(Point, Point)>,
}

impl Diagram {
    /// Validate and build a diagram from an explicit pairing.
    pub fn new(m: usize, n: usize, pairs: &[(Point, Point)]) -> Result<Self, DiagramError> {
        if (m + n) % 2 != 0 {
            return Err(DiagramError::ParityViolation(m, n));
        }
        let mut seen = vec![false; m + n];
        let idx = |p: Point| -> Result<usize, DiagramError> {
            match p {
                Point::Src(i) if 1 <= i && i <= m => Ok(i - 1),
                Point::Tgt(j) if 1 <= j && j <= n => Ok(m + j - 1),
                other => Err(DiagramError::LabelOutOfRange(other, m, n)),
            }
        };
        let mut canon: Vec<(Point, Point)> = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let (ia, ib) = (idx(a)?, idx(b)?);
            if ia == ib || seen[ia] || seen[ib] {
                return Err(DiagramError::NotPerfectMatching);
            }
            seen[ia] = true;
            seen[ib] = true;
            canon.push(if a < b { (a, b) } else { (b, a) });
        }
        if seen.iter().any(|&s| !s) {
            return Err(DiagramError::NotPerfectMatching);
        }
        canon.sort();
        let d = Diagram {
            dom: m,
            cod: n,
            pairs: canon,
        };
        d.check_planar()?;
        Ok(d)
    }

    /// Walk position along the boundary rectangle: `s1..sm` then `tn..t1`.
    fn walk_pos(&self, p: Point) -> usize {
        match p {
            Point::Src(i) => i - 1,
            Point::Tgt(j) => self.dom + (self.cod - j),
        }
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let arcs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.walk_pos(a), self.walk_pos(b));
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[i + 1..] {
                let inside_c = a < c && c < b;
                let inside_d = a < d && d < b;
                if inside_c != inside_d {
                    return Err(DiagramError::NotPlanar(
                        format!("{}-{}", self.pairs[i].0, self.pairs[i].1),
                        format!("({a},{b}) vs ({c},{d})"),
                    ));
                }
            }
        }
        Ok(())
    }

    fn from_canonical(dom: usize, cod: usize, mut pairs: Vec<(Point, Point)>) -> Self {
        for p in pairs.iter_mut() {
            if p.1 < p.0 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort();
        Diagram { dom, cod, pairs }
    }

    pub fn id(n: usize) -> Self {
        Self::from_canonical(
            n,
            n,
            (1..=n).map(|i| (Point::Src(i), Point::Tgt(i))).collect(),
        )
    }

    /// `cup : 0 -> 2`.
    pub fn cup() -> Self {
        Self::from_canonical(0, 2, vec![(Point::Tgt(1), Point::Tgt(2))])
    }

    /// `cap : 2 -> 0`.
    pub fn cap() -> Self {
        Self::from_canonical(2, 0, vec![(Point::Src(1), Point::Src(2))])
    }

    /// Basic cup `(a, cup, b) = id_a (x) cup (x) id_b : a+b -> a+2+b`.
    pub fn placed_cup(a: usize, b: usize) -> Self {
        let mut pairs: Vec<(Point, Point)> = Vec::with_capacity(a + b + 1);
        for i in 1..=a {
            pairs.push((Point::Src(i), Point::Tgt(i)));
        }
        pairs.push((Point::Tgt(a + 1), Point::Tgt(a + 2)));
        for i in 1..=b {
            pairs.push((Point::Src(a + i), Point::Tgt(a + 2 + i)));
        }
        Self::from_canonical(a + b, a + 2 + b, pairs)
    }

    /// Basic cap `(a, cap, b) = id_a (x) cap (x) id_b : a+2+b -> a+b`.
    pub fn placed_cap(a: usize, b: usize) -> Self {
        Self::placed_cup(a, b).bar()
    }

    /// Nested cups `0 -> 2k`, pairing targets `(i, 2k+1-i)`.
    pub fn nested_cups(k: usize) -> Self {
        let pairs = (1..=k)
            .map(|i| (Point::Tgt(i), Point::Tgt(2 * k + 1 - i)))
            .collect();
        Self::from_canonical(0, 2 * k, pairs)
    }

    /// Nested caps `2k -> 0`, pairing sources `(i, 2k+1-i)`.
    pub fn nested_caps(k: usize) -> Self {
        Self::nested_cups(k).bar()
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.pairs
    }

    /// Number of through-strands.
    pub fn th(&self) -> usize {
        self.pairs
            .iter()
            .filter(|(a, b)| matches!((a, b), (Point::Src(_), Point::Tgt(_))))
            .count()
    }

    /// `K(x)`: caps, as sorted source index pairs `(i, j)` with `i < j`.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter_map(|&(a, b)| match (a, b) {
                (Point::Src(i), Point::Src(j)) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// `K-bar(x)`: cups, as sorted target index pairs.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter_map(|&(a, b)| match (a, b) {
                (Point::Tgt(i), Point::Tgt(j)) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// Through pairs `(source index, target index)`, in source order.
    pub fn throughs(&self) -> Vec<(usize, usize)> {
        let mut t: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .filter_map(|&(a, b)| match (a, b) {
                (Point::Src(i), Point::Tgt(j)) => Some((i, j)),
                _ => None,
            })
            .collect();
        t.sort();
        t
    }

    pub fn is_cap_diagram(&self) -> bool {
        self.cups().is_empty()
    }

    pub fn is_cup_diagram(&self) -> bool {
        self.caps().is_empty()
    }

    /// Vertical flip: sources and targets exchanged, indices preserved.
    pub fn bar(&self) -> Self {
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (flip(a), flip(b)))
            .collect();
        Self::from_canonical(self.cod, self.dom, pairs)
    }

    /// Horizontal mirror: strand `i` relabeled to `m+1-i` / `n+1-i`.
    pub fn mirror(&self) -> Self {
        let m = self.dom;
        let n = self.cod;
        let pairs = self
            .pairs
            .iter()
            .map(|&(a, b)| (mirror_pt(a, m, n), mirror_pt(b, m, n)))
            .collect();
        Self::from_canonical(m, n, pairs)
    }

    /// Horizontal concatenation.
    pub fn tensor(&self, other: &Self) -> Self {
        let shift = |p: Point| match p {
            Point::Src(i) => Point::Src(i + self.dom),
            Point::Tgt(j) => Point::Tgt(j + self.cod),
        };
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().map(|&(a, b)| (shift(a), shift(b))));
        Self::from_canonical(self.dom + other.dom, self.cod + other.cod, pairs)
    }

    /// The unique cup/cap factorization `x = u . v` with `u` a cup diagram,
    /// `v` a cap diagram and the middle object `th(x)`.
    pub fn factorize(&self) -> (Diagram, Diagram) {
        let k = self.th();
        let throughs = self.throughs();
        let mut v_pairs: Vec<(Point, Point)> = self
            .caps()
            .iter()
            .map(|&(i, j)| (Point::Src(i), Point::Src(j)))
            .collect();
        for (a, &(src, _)) in throughs.iter().enumerate() {
            v_pairs.push((Point::Src(src), Point::Tgt(a + 1)));
        }
        let mut u_pairs: Vec<(Point, Point)> = self
            .cups()
            .iter()
            .map(|&(i, j)| (Point::Tgt(i), Point::Tgt(j)))
            .collect();
        let mut tgt_order: Vec<usize> = throughs.iter().map(|&(_, t)| t).collect();
        tgt_order.sort();
        for (a, &tgt) in tgt_order.iter().enumerate() {
            u_pairs.push((Point::Src(a + 1), Point::Tgt(tgt)));
        }
        let v = Self::from_canonical(self.dom, k, v_pairs);
        let u = Self::from_canonical(k, self.cod, u_pairs);
        (u, v)
    }

    /// Enumeration sort key: through-strand count descending, then the
    /// canonical pair list lexicographically.
    fn sort_key(&self) -> (Reverse<usize>, Vec<(Point, Point)>) {
        (Reverse(self.th()), self.pairs.clone())
    }
}

fn flip(p: Point) -> Point {
    match p {
        Point::Src(i) => Point::Tgt(i),
        Point::Tgt(j) => Point::Src(j),
    }
}

fn mirror_pt(p: Point, m: usize, n: usize) -> Point {
    match p {
        Point::Src(i) => Point::Src(m + 1 - i),
        Point::Tgt(j) => Point::Tgt(n + 1 - j),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}->{};", self.dom, self.cod)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {a}-{b}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of stacking two bare diagrams: the underlying matching plus the
/// interface statistics that determine the composition coefficient.
/// `zigzags` counts superfluous interface crossings in pairs (each worth `q`
/// in the renormalized category) and `loops` counts closed circles (each
/// worth `q^2 + 1`).
pub struct Stacked {
    pub diagram: Diagram,
    pub zigzags: u64,
    pub loops: u64,
}

/// Stack `f : m -> n` below `g : n -> p` and trace strands through the
/// interface. Panics if the middle objects disagree; morphism-level
/// composition checks shapes first.
pub fn stack(g: &Diagram, f: &Diagram) -> Stacked {
    assert_eq!(f.cod, g.dom, "interface mismatch");
    let m = f.dom;
    let n = f.cod;
    let p = g.cod;
    // node ids: 0..m = f sources, m..m+n = interface, m+n..m+n+p = g targets
    let f_node = |pt: Point| match pt {
        Point::Src(i) => i - 1,
        Point::Tgt(j) => m + j - 1,
    };
    let g_node = |pt: Point| match pt {
        Point::Src(i) => m + i - 1,
        Point::Tgt(j) => m + n + j - 1,
    };
    let total = m + n + p;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(f.pairs.len() + g.pairs.len());
    for &(a, b) in &f.pairs {
        edges.push((f_node(a), f_node(b)));
    }
    for &(a, b) in &g.pairs {
        edges.push((g_node(a), g_node(b)));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::with_capacity(2); total];
    for (e, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(e);
        incident[b].push(e);
    }
    let is_mid = |v: usize| v >= m && v < m + n;
    let mut used = vec![false; edges.len()];
    let mut pairs: Vec<(Point, Point)> = Vec::new();
    let mut zigzags = 0u64;
    let mut loops = 0u64;

    let to_point = |v: usize| -> Point {
        if v < m {
            Point::Src(v + 1)
        } else {
            Point::Tgt(v - m - n + 1)
        }
    };

    // open paths, from each boundary node
    for start in (0..m).chain(m + n..total) {
        let first_edge = incident[start][0];
        if used[first_edge] {
            continue;
        }
        let mut crossings = 0u64;
        let mut edge = first_edge;
        let mut node = start;
        loop {
            used[edge] = true;
            let (a, b) = edges[edge];
            let next = if a == node { b } else { a };
            if !is_mid(next) {
                let end = next;
                let through = (start < m) != (end < m); // one source, one target
                let cmin = if through {
                    1
                } else if crossings == 0 {
                    0
                } else {
                    2
                };
                zigzags += (crossings - cmin) / 2;
                pairs.push((to_point(start), to_point(end)));
                break;
            }
            crossings += 1;
            let nexts = &incident[next];
            edge = if nexts[0] == edge { nexts[1] } else { nexts[0] };
            node = next;
        }
    }
    // closed loops: whatever is left lives entirely in the interface
    for e0 in 0..edges.len() {
        if used[e0] {
            continue;
        }
        let mut crossings = 0u64;
        let mut edge = e0;
        let mut node = edges[e0].0;
        loop {
            used[edge] = true;
            let (a, b) = edges[edge];
            let next = if a == node { b } else { a };
            crossings += 1;
            let nexts = &incident[next];
            let follow = if nexts[0] == edge { nexts[1] } else { nexts[0] };
            if used[follow] {
                break;
            }
            edge = follow;
            node = next;
        }
        loops += 1;
        zigzags += (crossings - 2) / 2;
    }
    Stacked {
        diagram: Diagram::from_canonical(m, p, pairs),
        zigzags,
        loops,
    }
}

/// Enumeration modes for [`enumerate`].
pub enum EnumMode {
    /// All diagrams in `Hom(m, n)`; Catalan number `C_{(m+n)/2}` of them.
    Hom(usize, usize),
    /// All cap diagrams with domain `n` (any codomain), the set `D_n`;
    /// central binomial coefficient `C(n, floor(n/2))` of them.
    CapDiagrams(usize),
}

/// Enumerate diagrams in a deterministic order: through-strand count
/// descending, then lexicographic (pair lists for hom mode, cap sets for cap
/// mode).
pub fn enumerate(mode: EnumMode) -> Result<Vec<Diagram>, DiagramError> {
    match mode {
        EnumMode::Hom(m, n) => {
            if (m + n) % 2 != 0 {
                return Err(DiagramError::ParityViolation(m, n));
            }
            let mut out = enumerate_hom(m, n);
            out.sort_by_key(|d| d.sort_key());
            Ok(out)
        }
        EnumMode::CapDiagrams(n) => {
            let mut out = Vec::new();
            let mut k = n;
            loop {
                let mut layer: Vec<Diagram> = enumerate_hom(n, k)
                    .into_iter()
                    .filter(|d| d.is_cap_diagram())
                    .collect();
                layer.sort_by_key(|d| d.caps());
                out.extend(layer);
                if k < 2 {
                    break;
                }
                k -= 2;
            }
            Ok(out)
        }
    }
}

/// All cup diagrams `k -> m`, in the order induced by [`enumerate`] on
/// `Hom(k, m)`. These index the matrix units of the semisimple blocks.
pub fn enumerate_cup_diagrams(k: usize, m: usize) -> Vec<Diagram> {
    match enumerate(EnumMode::Hom(k, m)) {
        Ok(all) => all.into_iter().filter(|d| d.is_cup_diagram()).collect(),
        Err(_) => Vec::new(),
    }
}

fn enumerate_hom(m: usize, n: usize) -> Vec<Diagram> {
    let w = m + n;
    let mut results = Vec::new();
    let positions: Vec<usize> = (0..w).collect();
    let mut current: Vec<(usize, usize)> = Vec::new();
    gen_matchings(&positions, &mut current, &mut results);
    results
        .into_iter()
        .map(|pairing| {
            let pairs: Vec<(Point, Point)> = pairing
                .iter()
                .map(|&(a, b)| (walk_to_point(a, m, n), walk_to_point(b, m, n)))
                .collect();
            Diagram::from_canonical(m, n, pairs)
        })
        .collect()
}

fn walk_to_point(pos: usize, m: usize, n: usize) -> Point {
    if pos < m {
        Point::Src(pos + 1)
    } else {
        Point::Tgt(n - (pos - m))
    }
}

/// Generate all noncrossing perfect matchings of the given walk positions.
fn gen_matchings(
    positions: &[usize],
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if positions.is_empty() {
        out.push(current.clone());
        return;
    }
    let first = positions[0];
    for k in (1..positions.len()).step_by(2) {
        current.push((first, positions[k]));
        let inner: Vec<usize> = positions[1..k].to_vec();
        let outer: Vec<usize> = positions[k + 1..].to_vec();
        // recurse on inner, then continue with outer within each completion
        let mut inner_results = Vec::new();
        let mut scratch = Vec::new();
        gen_matchings(&inner, &mut scratch, &mut inner_results);
        for inner_match in inner_results {
            let before = current.len();
            current.extend(inner_match);
            gen_matchings(&outer, current, out);
            current.truncate(before);
        }
        current.pop();
    }
}
