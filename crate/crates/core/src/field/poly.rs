//! Sparse multivariate polynomials, terms kept in descending graded-lex order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

pub type Exps = SmallVec<[u32; 4]>;

/// Exponent vector. Ordered by total degree, ties broken lexicographically
/// with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) Exps);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn checked_div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Exps::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(o.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Coefficient rings: ℤ for gcd work, ℚ for the field.
pub trait Coefficient:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Zero + One + Signed + Send + Sync
{
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    /// Exact quotient, `None` when it does not exist in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn from_u64(n: u64) -> Self;
}

impl Coefficient for BigInt {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o);
        r.is_zero().then_some(q)
    }
    fn from_u64(n: u64) -> Self {
        BigInt::from(n)
    }
}

impl Coefficient for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: Vec<(Monomial, C)>,
}

/// Polynomial over ℚ, the numerator/denominator type of the field.
pub type Polynomial = Poly<BigRational>;
/// Polynomial over ℤ, used by gcd and the coprime base.
pub type IntPoly = Poly<BigInt>;

impl<C: Coefficient> Ord for Poly<C> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.nvars
            .cmp(&o.nvars)
            .then_with(|| self.terms.cmp(&o.terms))
    }
}

impl<C: Coefficient> PartialOrd for Poly<C> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Poly { nvars, terms: vec![(Monomial::var(nvars, i), C::one())] }
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let nvars = m.0.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(m, c)] }
    }

    /// Builds from arbitrary terms; sorts and merges duplicates.
    pub fn from_terms(nvars: usize, mut terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.iter().all(|(m, _)| m.0.len() == nvars));
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
        Poly { nvars, terms: out }
    }

    /// Terms must already be strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Monomial, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> C {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0 .0[v]).max().unwrap_or(0)
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u64 {
        let mut mask = 0u64;
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(k))).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.mul_ref(k))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.nvars, o.nvars);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                prods.push((ma.mul(mb), ca.mul_ref(cb)));
            }
        }
        Self::from_terms(self.nvars, prods)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient by sparse division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (dm, dc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, a) in &self.terms {
                terms.push((m.clone(), a.div_exact(&c)?));
            }
            return Some(Poly { nvars: self.nvars, terms });
        }
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.leading() {
            let m = rm.checked_div(dm)?;
            let c = rc.div_exact(dc)?;
            r = r.sub(&d.mul_term(&m, &c));
            q.push((m, c));
        }
        Some(Poly::from_sorted(self.nvars, q))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            terms.push((m2, c.mul_ref(&C::from_u64(e as u64))));
        }
        // Lowering one exponent can break the order, so re-sort.
        Self::from_terms(self.nvars, terms)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = f(c);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// Writes the polynomial with the given variable names.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("t{i}")).collect()
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars)))
    }
}

impl IntPoly {
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), self.clone());
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        let p = if g.is_one() {
            self.clone()
        } else {
            self.map_coeffs(|c| c / &g)
        };
        (g, p)
    }

    pub fn to_rational(&self) -> Polynomial {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Value mod a word-sized prime at a point given mod the same prime.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = bigint_mod(c, p);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = mulmod(t, powmod(point[i], e as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

impl Polynomial {
    /// Splits `self = c · p` with `p` integral, primitive, positive leading coefficient.
    pub fn to_primitive_integer(&self) -> (BigRational, IntPoly) {
        if self.is_zero() {
            return (BigRational::zero(), IntPoly::zero(self.nvars));
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let ints: IntPoly = self.map_coeffs(|c| (c * BigRational::from_integer(den.clone())).to_integer());
        let (g, p) = ints.primitive();
        (BigRational::new(g, den), p)
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "point arity mismatch");
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn from_int(n: i64, nvars: usize) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(n)))
    }
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits a word")
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn t(i: usize) -> Polynomial {
        Polynomial::var(2, i)
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Monomial::from_exps(&[2, 0]);
        let b = Monomial::from_exps(&[1, 1]);
        let c = Monomial::from_exps(&[0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = t(0).add(&t(1));
        assert!(p.sub(&p).is_zero());
        let sq = p.mul(&p);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_string(), "t1^2 + 2*t1*t2 + t2^2");
    }

    #[test]
    fn exact_division() {
        let one = Polynomial::one(2);
        let num = t(0).mul(&t(0)).sub(&one);
        let den = t(0).sub(&one);
        assert_eq!(num.div_exact(&den).unwrap(), t(0).add(&one));
        assert!(num.div_exact(&t(1)).is_none());
    }

    #[test]
    fn integer_division_respects_ring() {
        let two_t = Polynomial::var(1, 0).scale(&q(2));
        let (_, p) = two_t.to_primitive_integer();
        let three = IntPoly::constant(1, BigInt::from(3));
        assert!(p.scale(&BigInt::from(2)).div_exact(&three).is_none());
    }

    #[test]
    fn primitive_integer_split() {
        let p = t(0).scale(&BigRational::new(2.into(), 3.into())).sub(&Polynomial::from_int(4, 2));
        let (c, z) = p.to_primitive_integer();
        assert_eq!(c, BigRational::new(2.into(), 3.into()));
        assert_eq!(z.to_string(), "t1 - 6");
        let neg = p.neg().to_primitive_integer();
        assert_eq!(neg.0, -c);
        assert_eq!(neg.1, z);
    }

    #[test]
    fn derivative_power_rule() {
        let p = t(0).pow(3).mul(&t(1));
        assert_eq!(p.derivative(0).to_string(), "3*t1^2*t2");
        assert!(t(0).derivative(1).is_zero());
    }
}
