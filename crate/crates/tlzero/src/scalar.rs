//! Exact scalars: Laurent polynomials in `q` over an arbitrary coefficient ring.
//!
//! The diagram calculus never touches floating point. Generic morphisms carry
//! coefficients in `Laurent<Rat>`; specialized contexts carry constants, which
//! are just degree-zero Laurent polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::traits::{One, Zero};

use crate::Rat;

/// Coefficient ring bound used throughout the crate.
///
/// `Rat` (arbitrary-precision rationals) is the instantiation everything in
/// the library runs on; the bound exists so the scalar and matrix machinery
/// stay independent of that choice.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Eq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A Laurent polynomial in one variable `q`.
///
/// Zero coefficients are never stored; equality is coefficient-wise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<T> {
    terms: BTreeMap<i64, T>,
}

impl<T: Coeff> Laurent<T> {
    pub fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// The variable `q` itself.
    pub fn q() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: T, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True if the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> T {
        self.terms.get(&0).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeff(&self, e: i64) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    fn insert(&mut self, e: i64, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            None => {
                self.terms.insert(e, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.insert(e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &other.terms {
                out.insert(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl<T: Coeff + Div<Output = T>> Laurent<T> {
    /// Evaluate at `q = a`. Negative exponents require `a != 0`; at `a = 0`
    /// they are rejected by the caller (specialization is only defined on
    /// polynomial scalars there).
    pub fn eval(&self, a: &T) -> T {
        let mut acc = T::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                pow_t(a, e as u32)
            } else {
                assert!(!a.is_zero(), "negative exponent evaluated at 0");
                T::one() / pow_t(a, (-e) as u32)
            };
            acc = acc + c.clone() * p;
        }
        acc
    }
}

fn pow_t<T: Coeff>(a: &T, k: u32) -> T {
    let mut out = T::one();
    for _ in 0..k {
        out = out * a.clone();
    }
    out
}

impl<T: Coeff + fmt::Display> fmt::Display for Laurent<T> {
    /// Canonical sparse form, ascending exponents, e.g. `3/2*q^-1 + 1 - q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            let s = c.to_string();
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if e == 0 {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "{abs}*q^{e}")?;
            }
        }
        Ok(())
    }
}

impl<T: Coeff + fmt::Display> fmt::Debug for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Errors from parsing scalar strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar string: {0}")]
pub struct ParseScalarError(pub String);

/// Parse a rational "p/q" (or plain integer) string.
pub fn parse_rat(s: &str) -> Result<Rat, ParseScalarError> {
    use num::BigInt;
    let err = || ParseScalarError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let numer: BigInt = p.trim().parse().map_err(|_| err())?;
            let denom: BigInt = q.trim().parse().map_err(|_| err())?;
            if denom.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(numer, denom))
        }
        None => {
            let numer: BigInt = t.parse().map_err(|_| err())?;
            Ok(Rat::from_integer(numer))
        }
    }
}

impl Laurent<Rat> {
    /// Parse a canonical sparse Laurent string such as `3/2*q^-1 + 1 - q^2`.
    /// Accepts `q`, `q^e`, `c`, `c*q^e` pieces joined by `+`/`-`.
    pub fn parse(s: &str) -> Result<Self, ParseScalarError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseScalarError(s.to_string()));
        }
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        // Split into signed pieces without breaking on the '-' in `q^-1`
        // or in a leading coefficient sign.
        let bytes = s.as_bytes();
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut cur_neg = false;
        let mut started = false;
        let mut i = 0;
        while i < bytes.len() {
            let ch = bytes[i] as char;
            if (ch == '+' || ch == '-') && started && !cur.trim().is_empty() {
                // a sign splits terms only when surrounded by whitespace
                let prev_space = i > 0 && (bytes[i - 1] as char).is_whitespace();
                let next_space = i + 1 < bytes.len() && (bytes[i + 1] as char).is_whitespace();
                if prev_space && next_space {
                    pieces.push((cur_neg, cur.trim().to_string()));
                    cur = String::new();
                    cur_neg = ch == '-';
                    i += 1;
                    continue;
                }
            }
            if !started && ch == '-' && cur.trim().is_empty() {
                cur_neg = true;
                started = true;
                i += 1;
                continue;
            }
            if !ch.is_whitespace() {
                started = true;
            }
            cur.push(ch);
            i += 1;
        }
        if !cur.trim().is_empty() {
            pieces.push((cur_neg, cur.trim().to_string()));
        }
        for (neg, piece) in pieces {
            let (c, e) = parse_piece(&piece)?;
            let c = if neg { -c } else { c };
            out.insert(e, c);
        }
        Ok(out)
    }
}

fn parse_piece(piece: &str) -> Result<(Rat, i64), ParseScalarError> {
    let err = || ParseScalarError(piece.to_string());
    if let Some((coeff, mono)) = piece.split_once('*') {
        let c = parse_rat(coeff)?;
        let e = parse_mono(mono.trim()).ok_or_else(err)?;
        Ok((c, e))
    } else if let Some(e) = parse_mono(piece) {
        Ok((Rat::one(), e))
    } else {
        Ok((parse_rat(piece)?, 0))
    }
}

fn parse_mono(s: &str) -> Option<i64> {
    if s == "q" {
        return Some(1);
    }
    let rest = s.strip_prefix("q^")?;
    rest.parse::<i64>().ok()
}
