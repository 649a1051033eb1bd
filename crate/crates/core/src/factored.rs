//! Elements of F^× written over the atoms of a coprime base.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{AtomId, Powers};

/// `constant · ∏ atomᵉ`, with only polynomial atoms in `powers`.
///
/// Two values built against the same base compare equal iff they are the same
/// element of F, once both have been passed through `Context::canonical`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factored {
    pub(crate) constant: BigRational,
    pub(crate) powers: Powers,
}

pub(crate) fn merge(a: &[(AtomId, i64)], b: &[(AtomId, i64)], kb: i64) -> Powers {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1 * kb));
            j += 1;
        } else {
            let e = a[i].1 + b[j].1 * kb;
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Factored {
    pub fn one() -> Self {
        Factored { constant: BigRational::one(), powers: Vec::new() }
    }

    /// Panics on zero: F^× has no zero.
    pub fn from_constant(c: BigRational) -> Self {
        assert!(!c.is_zero(), "zero is not in F^×");
        Factored { constant: c, powers: Vec::new() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant(&self) -> &BigRational {
        &self.constant
    }

    pub fn powers(&self) -> &[(AtomId, i64)] {
        &self.powers
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty() && self.constant.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Factored { constant: &self.constant * &o.constant, powers: merge(&self.powers, &o.powers, 1) }
    }

    pub fn div(&self, o: &Self) -> Self {
        Factored { constant: &self.constant / &o.constant, powers: merge(&self.powers, &o.powers, -1) }
    }

    pub fn inv(&self) -> Self {
        Factored {
            constant: self.constant.recip(),
            powers: self.powers.iter().map(|&(a, e)| (a, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let c = num_traits::pow(self.constant.clone(), k.unsigned_abs() as usize);
        Factored {
            constant: if k < 0 { c.recip() } else { c },
            powers: self.powers.iter().map(|&(a, e)| (a, e * k)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Factored { constant: -&self.constant, powers: self.powers.clone() }
    }

    /// Same element up to sign.
    pub fn abs(&self) -> Self {
        Factored { constant: self.constant.abs(), powers: self.powers.clone() }
    }

    pub fn product<'a>(it: impl IntoIterator<Item = &'a Factored>) -> Self {
        it.into_iter().fold(Self::one(), |acc, f| acc.mul(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: i64, p: &[(AtomId, i64)]) -> Factored {
        Factored { constant: BigRational::from_integer(c.into()), powers: p.to_vec() }
    }

    #[test]
    fn group_laws() {
        let a = f(2, &[(0, 1), (3, -2)]);
        let b = f(-3, &[(0, -1), (1, 4)]);
        assert_eq!(a.mul(&b), f(-6, &[(1, 4), (3, -2)]));
        assert!(a.div(&a).is_one());
        assert_eq!(a.mul(&a.inv()), Factored::one());
        assert_eq!(a.pow(-2), a.mul(&a).inv());
        assert_eq!(b.neg().abs(), b.neg().neg().abs());
    }
}
