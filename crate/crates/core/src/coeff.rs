//! Lazy coefficients for the F slot of F ⊗ (…) tensors.
//!
//! A coefficient is a ℚ-combination of symbols that stand for elements of F.
//! Symbolic cancellation is tried first; anything left over is realized.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::factored::Factored;
use crate::field::AtomId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    One,
    /// D(atom)/atom.
    Dlog(AtomId),
    /// An interned element of F.
    Value(u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coeff {
    terms: SmallVec<[(Sym, BigRational); 2]>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::sym(Sym::One, q)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn sym(s: Sym, q: BigRational) -> Self {
        let mut terms = SmallVec::new();
        if !q.is_zero() {
            terms.push((s, q));
        }
        Coeff { terms }
    }

    /// Dlog of a factored element; constants contribute nothing.
    pub fn dlog(x: &Factored) -> Self {
        Coeff {
            terms: x
                .powers()
                .iter()
                .map(|&(a, e)| (Sym::Dlog(a), BigRational::from_integer(e.into())))
                .collect(),
        }
    }

    pub fn terms(&self) -> &[(Sym, BigRational)] {
        &self.terms
    }

    /// Syntactic zero. Use `Context::coeff_is_zero` to decide equality in F.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(Sym::One, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Coeff { terms: self.terms.iter().map(|(s, q)| (*s, q * k)).collect() }
    }

    pub fn neg(&self) -> Self {
        Coeff { terms: self.terms.iter().map(|(s, q)| (*s, -q)).collect() }
    }

    /// self += k·other.
    pub fn add_scaled(&mut self, other: &Coeff, k: &BigRational) {
        if k.is_zero() || other.terms.is_empty() {
            return;
        }
        let a = std::mem::take(&mut self.terms);
        let b = &other.terms;
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * k));
                j += 1;
            } else {
                let q = &a[i].1 + &b[j].1 * k;
                if !q.is_zero() {
                    out.push((a[i].0, q));
                }
                i += 1;
                j += 1;
            }
        }
        self.terms = out;
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        let mut c = self.clone();
        c.add_scaled(o, &BigRational::one());
        c
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        let mut c = self.clone();
        c.add_scaled(o, &-BigRational::one());
        c
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match s {
                Sym::One => write!(f, "{q}")?,
                Sym::Dlog(a) => write!(f, "{q}*dlog(a{a})")?,
                Sym::Value(v) => write!(f, "{q}*v{v}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn symbolic_cancellation() {
        let mut c = Coeff::sym(Sym::Dlog(2), q(3));
        c.add_scaled(&Coeff::sym(Sym::One, q(1)), &q(1));
        c.add_scaled(&Coeff::sym(Sym::Dlog(2), q(1)), &q(-3));
        assert_eq!(c, Coeff::one());
        c.add_scaled(&Coeff::one(), &q(-1));
        assert!(c.is_empty());
    }

    #[test]
    fn rational_view() {
        assert_eq!(Coeff::from_int(4).scale(&q(2)).as_rational(), Some(q(8)));
        assert_eq!(Coeff::sym(Sym::Value(0), q(1)).as_rational(), None);
        assert_eq!(Coeff::zero().as_rational(), Some(q(0)));
    }
}
