//! Exact diagram calculus for the Temperley-Lieb category at `q = 0`, an
//! sl2-crystal engine, and the monoidal functor relating them.
//!
//! Everything is computed in exact arithmetic: scalars are Laurent
//! polynomials in `q` with arbitrary-precision rational coefficients, and
//! linear algebra (functor matrices, fiber functor data, radicals) runs over
//! the rationals. The crystal side and the diagram side verify each other:
//! connected components of `B^{(x)n}` match the semisimple blocks of
//! `End(n)`, and the diagrammatic commutor maps to the crystal commutor
//! under the functor.
//!
//! Module map:
//! * [`scalar`], [`linalg`] - exact arithmetic building blocks, generic over
//!   the coefficient ring via `num-traits`; the crate-root aliases pin the
//!   concrete instantiation.
//! * [`diagram`], [`morphism`] - diagrams, contexts, composition, tensor,
//!   involution, renormalization.
//! * [`jw`] - closed-form Jones-Wenzl projectors at `q = 0`.
//! * [`semisimple`] - the max-summand basis, matrix-unit blocks, simple
//!   modules, the diagram monoid and its Moebius inversion.
//! * [`crystal`] - path crystals, Kashiwara operators, components, and the
//!   Henriques-Kamnitzer commutor.
//! * [`functor`] - the equivalence as exact matrices, plus the branching
//!   bijection between cap diagrams and components.
//! * [`commutor`] - hooking calculus, the diagrammatic commutor, interval
//!   reversals and the cactus action.
//! * [`fiber`] - fiber functor triples `(V, b, t)`, validation, evaluation,
//!   inflation, and orbit invariants.
//! * [`json`] - the serialization schemas used by the CLI.
//! * [`checks`] - the verification suites behind `tl verify`.

pub mod checks;
pub mod commutor;
pub mod crystal;
pub mod diagram;
pub mod fiber;
pub mod functor;
pub mod json;
pub mod jw;
pub mod linalg;
pub mod morphism;
pub mod scalar;
pub mod semisimple;

/// Arbitrary-precision rational numbers, the concrete coefficient ring.
pub type Rat = num::BigRational;

/// The scalar ring of the generic category: Laurent polynomials in `q`.
pub type Scalar = scalar::Laurent<Rat>;

/// Dense exact rational matrices.
pub type QMat = linalg::Mat<Rat>;

pub use diagram::{Diagram, Point};
pub use morphism::{Morphism, ParamContext};

/// Catalan number `C_k` (exact, panics on overflow well past desk scale).
pub fn catalan(k: usize) -> u128 {
    binomial(2 * k, k) / (k as u128 + 1)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Fibonacci with `F(1) = F(2) = 1`; counts apt subsets as `F(n+1)`.
pub fn fibonacci(n: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

/// Default size bound for crystal component tables and verification suites;
/// the `TL_MAX_N` environment variable overrides it.
pub fn default_max_n() -> usize {
    std::env::var("TL_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(14)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sequences() {
        assert_eq!(
            (0..=7).map(catalan).collect::<Vec<_>>(),
            vec![1, 1, 2, 5, 14, 42, 132, 429]
        );
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(
            (1..=8).map(fibonacci).collect::<Vec<_>>(),
            vec![1, 1, 2, 3, 5, 8, 13, 21]
        );
    }
}
