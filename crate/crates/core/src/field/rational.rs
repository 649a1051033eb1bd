//! Elements of F = ℚ(t₁,…,t_k) as reduced fractions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{default_names, Polynomial};
use crate::error::{Error, Result};

/// Canonical fraction: coprime parts, denominator with leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl Ord for RationalFunction {
    fn cmp(&self, o: &Self) -> Ordering {
        self.num.cmp(&o.num).then_with(|| self.den.cmp(&o.den))
    }
}

impl PartialOrd for RationalFunction {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Reduces `num/den` and fixes the scalar so the denominator is monic.
pub fn normalize(num: &Polynomial, den: &Polynomial) -> Result<RationalFunction> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = num.nvars();
    if num.is_zero() {
        return Ok(RationalFunction::zero(n));
    }
    if let Some(c) = den.as_constant() {
        return Ok(RationalFunction { num: num.scale(&c.recip()), den: Polynomial::one(n) });
    }
    let (cn, zn) = num.to_primitive_integer();
    let (cd, zd) = den.to_primitive_integer();
    let g = gcd(&zn, &zd);
    let (zn, zd) = if g.is_constant() {
        (zn, zd)
    } else {
        (
            zn.div_exact(&g).expect("gcd divides numerator"),
            zd.div_exact(&g).expect("gcd divides denominator"),
        )
    };
    Ok(RationalFunction::from_coprime_parts(&zn.to_rational().scale(&(cn / cd)), &zd.to_rational()))
}

impl RationalFunction {
    /// Caller guarantees gcd(num, den) = 1 and den ≠ 0; only the scalar is fixed here.
    pub(crate) fn from_coprime_parts(num: &Polynomial, den: &Polynomial) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RationalFunction { num: num.clone(), den: den.clone() };
        }
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction { num: Polynomial::zero(nvars), den: Polynomial::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(n) }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Polynomial::var(nvars, i))
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return normalize(&self.num.add(&o.num), &self.den).expect("nonzero denominator");
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        normalize(&num, &self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        normalize(&self.num.mul(&o.num), &self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading_coeff();
        let s = lc.recip();
        Ok(RationalFunction { num: self.den.scale(&s), den: self.num.scale(&s) })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // Powers of coprime parts stay coprime.
        Ok(Self::from_coprime_parts(&base.num.pow(k), &base.den.pow(k)))
    }

    /// 1 − self.
    pub fn one_minus(&self) -> Self {
        Self::one(self.nvars()).sub(self)
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.nvars() {
            return Err(Error::VariableIndex { index: i, nvars: self.nvars() });
        }
        if self.den.is_one() {
            return Ok(Self::from_poly(self.num.derivative(i)));
        }
        let num = self.num.derivative(i).mul(&self.den).sub(&self.num.mul(&self.den.derivative(i)));
        normalize(&num, &self.den.mul(&self.den))
    }

    /// Exact value at a rational point.
    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval_rational(point);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_rational(point) / d)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let wrap = |p: &Polynomial| {
            let s = p.fmt_with(names);
            if p.len() > 1 || (p.len() == 1 && s.contains(['*', '/'])) {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            return self.num.fmt_with(names);
        }
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }

    /// Sign of the leading numerator coefficient, used to pick orientations.
    pub fn leading_sign_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_rational_function;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s, &default_names(2)).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let one = Polynomial::one(2);
        let t1 = Polynomial::var(2, 0);
        let r = normalize(&t1.mul(&t1).sub(&one), &t1.sub(&one)).unwrap();
        assert_eq!(r, rf("t1 + 1"));
        assert!(r.is_polynomial());
    }

    #[test]
    fn normalize_zero_numerator() {
        let r = normalize(&Polynomial::zero(2), &Polynomial::var(2, 0)).unwrap();
        assert!(r.is_zero());
        assert!(r.denom().is_one());
    }

    #[test]
    fn normalize_content() {
        let t1 = Polynomial::var(2, 0);
        let r = normalize(&t1.scale(&BigRational::from_integer(2.into())), &Polynomial::from_int(4, 2)).unwrap();
        assert_eq!(r, rf("t1/2"));
        assert_eq!(r.to_string(), "1/2*t1");
    }

    #[test]
    fn zero_denominator_rejected() {
        let e = normalize(&Polynomial::one(2), &Polynomial::zero(2)).unwrap_err();
        assert_eq!(e.to_string(), "division by zero in F");
    }

    #[test]
    fn denominators_are_monic() {
        let r = rf("1/(2 - 2*t1)");
        assert!(r.denom().leading_coeff().is_one());
        assert_eq!(r, rf("-1/2/(t1 - 1)"));
    }

    #[test]
    fn evaluation() {
        let f = rf("t1/(1 - t1)");
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.eval_rational(&[half.clone(), half]).unwrap(), BigRational::one());
        let g = rf("1/(t1 - 1)");
        let one = BigRational::one();
        assert!(matches!(g.eval_rational(&[one.clone(), one]), Err(Error::Pole)));
    }

    #[test]
    fn derivatives() {
        assert_eq!(rf("t1^2").partial_derivative(0).unwrap(), rf("2*t1"));
        assert_eq!(rf("1/(1 - t1)").partial_derivative(0).unwrap(), rf("1/(1 - t1)^2"));
        assert!(rf("t1").partial_derivative(1).unwrap().is_zero());
        assert!(rf("t1").partial_derivative(2).is_err());
    }

    #[test]
    fn inverse_and_powers() {
        let a = rf("(t1 + t2)/(t1 - 3)");
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(a.pow(-2).unwrap(), a.mul(&a).inv().unwrap());
    }
}
