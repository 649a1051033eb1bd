//! Per-run state: variable names, the chosen derivation, and a shared
//! coprime base with its caches.

use std::collections::HashMap;
use std::sync::{Mutex, MutexGuard};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coeff::{Coeff, Sym};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::factored::{merge, Factored};
use crate::field::{
    default_names, parse_rational_function, AtomId, CoprimeBase, Polynomial, Powers, RationalFunction,
};

#[derive(Debug)]
struct Registry {
    base: CoprimeBase,
    dlog: HashMap<AtomId, RationalFunction>,
    one_minus: HashMap<Factored, Option<Factored>>,
    values: Vec<RationalFunction>,
    value_ids: HashMap<RationalFunction, u32>,
}

#[derive(Debug)]
pub struct Context {
    names: Vec<String>,
    derivation: Derivation,
    reg: Mutex<Registry>,
}

impl Context {
    pub fn new(derivation: Derivation) -> Self {
        let names = default_names(derivation.nvars());
        Self::build(names, derivation)
    }

    pub fn with_names(names: Vec<String>, derivation: Derivation) -> Result<Self> {
        if names.len() != derivation.nvars() {
            return Err(Error::Arity { expected: names.len(), found: derivation.nvars() });
        }
        Ok(Self::build(names, derivation))
    }

    fn build(names: Vec<String>, derivation: Derivation) -> Self {
        let n = names.len();
        Context {
            names,
            derivation,
            reg: Mutex::new(Registry {
                base: CoprimeBase::new(n),
                dlog: HashMap::new(),
                one_minus: HashMap::new(),
                values: Vec::new(),
                value_ids: HashMap::new(),
            }),
        }
    }

    fn reg(&self) -> MutexGuard<'_, Registry> {
        self.reg.lock().expect("registry lock poisoned")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }

    pub fn parse(&self, s: &str) -> Result<RationalFunction> {
        parse_rational_function(s, &self.names)
    }

    pub fn parse_factored(&self, s: &str) -> Result<Factored> {
        self.factor(&self.parse(s)?)
    }

    pub fn fmt(&self, f: &RationalFunction) -> String {
        f.fmt_with(&self.names)
    }

    /// Number of atoms registered so far.
    pub fn atom_count(&self) -> usize {
        self.reg().base.len()
    }

    pub fn atom_poly(&self, id: AtomId) -> Polynomial {
        self.reg().base.rational(id)
    }

    pub fn factor_poly(&self, p: &Polynomial) -> Result<Factored> {
        self.factor(&RationalFunction::from_poly(p.clone()))
    }

    pub fn factor(&self, f: &RationalFunction) -> Result<Factored> {
        if f.is_zero() {
            return Err(Error::ZeroInMultiplicativeGroup);
        }
        let (cn, pn) = f.numer().to_primitive_integer();
        let (cd, pd) = f.denom().to_primitive_integer();
        let mut reg = self.reg();
        let top = reg.base.factor_poly(&pn);
        let bottom = reg.base.factor_poly(&pd);
        let powers = reg.base.canonical(&merge(&top, &bottom, -1));
        Ok(Factored { constant: cn / cd, powers })
    }

    /// Rewrites over current leaves.
    pub fn canonical(&self, x: &Factored) -> Factored {
        let reg = self.reg();
        Factored { constant: x.constant.clone(), powers: reg.base.canonical(&x.powers) }
    }

    pub fn canonical_powers(&self, p: &[(AtomId, i64)]) -> Powers {
        self.reg().base.canonical(p)
    }

    pub fn expand(&self, x: &Factored) -> RationalFunction {
        let n = self.nvars();
        let (num, den) = {
            let reg = self.reg();
            let mut num = Polynomial::constant(n, x.constant.clone());
            let mut den = Polynomial::one(n);
            for &(a, e) in &x.powers {
                let p = reg.base.rational(a).pow(e.unsigned_abs() as u32);
                if e > 0 {
                    num = num.mul(&p);
                } else {
                    den = den.mul(&p);
                }
            }
            (num, den)
        };
        // Distinct atoms are coprime, so the parts already are.
        RationalFunction::from_coprime_parts(&num, &den)
    }

    /// `1 − x`, or `None` when `x = 1`.
    pub fn one_minus(&self, x: &Factored) -> Option<Factored> {
        let x = self.canonical(x);
        let hit = self.reg().one_minus.get(&x).cloned();
        if let Some(hit) = hit {
            return hit.map(|y| self.canonical(&y));
        }
        let n = self.nvars();
        let (num, den) = {
            let reg = self.reg();
            let mut num = Polynomial::one(n);
            let mut den = Polynomial::one(n);
            for &(a, e) in &x.powers {
                let p = reg.base.rational(a).pow(e.unsigned_abs() as u32);
                if e > 0 {
                    num = num.mul(&p);
                } else {
                    den = den.mul(&p);
                }
            }
            (num, den)
        };
        // 1 − c·N/Dn = (Dn − c·N)/Dn; the numerator is coprime to Dn.
        let top = den.sub(&num.scale(&x.constant));
        let out = if top.is_zero() {
            None
        } else {
            let (c, p) = top.to_primitive_integer();
            let mut reg = self.reg();
            let fp = reg.base.factor_poly(&p);
            let neg: Powers = x.powers.iter().copied().filter(|&(_, e)| e < 0).collect();
            let powers = reg.base.canonical(&merge(&fp, &neg, 1));
            Some(Factored { constant: c, powers })
        };
        self.reg().one_minus.insert(x, out.clone());
        out
    }

    /// All atoms of a leg, integer primes of the constant included; sign dropped.
    pub fn leg_atoms(&self, x: &Factored) -> Powers {
        let mut reg = self.reg();
        let mut p = reg.base.canonical(&x.powers);
        let c = &x.constant;
        if !c.numer().abs().is_one() {
            let f = reg.base.factor_int(&c.numer().abs());
            p = merge(&p, &f, 1);
        }
        if !c.denom().is_one() {
            let f = reg.base.factor_int(c.denom());
            p = merge(&p, &f, -1);
        }
        p
    }

    pub fn dlog_atom(&self, id: AtomId) -> RationalFunction {
        if let Some(v) = self.reg().dlog.get(&id) {
            return v.clone();
        }
        let (poly, is_poly) = {
            let reg = self.reg();
            (reg.base.rational(id), reg.base.is_poly(id))
        };
        let v = if is_poly {
            let d = self.derivation.derive_poly(&poly);
            d.div(&RationalFunction::from_poly(poly)).expect("atoms are nonzero")
        } else {
            RationalFunction::zero(self.nvars())
        };
        self.reg().dlog.insert(id, v.clone());
        v
    }

    pub fn dlog(&self, x: &Factored) -> RationalFunction {
        self.realize(&Coeff::dlog(x))
    }

    pub fn intern(&self, f: RationalFunction) -> Sym {
        let mut reg = self.reg();
        if let Some(&id) = reg.value_ids.get(&f) {
            return Sym::Value(id);
        }
        let id = reg.values.len() as u32;
        reg.values.push(f.clone());
        reg.value_ids.insert(f, id);
        Sym::Value(id)
    }

    /// Coefficient for an arbitrary element of F.
    pub fn coeff_of(&self, f: &RationalFunction) -> Coeff {
        match f.as_constant() {
            Some(q) => Coeff::rational(q),
            None => Coeff::sym(self.intern(f.clone()), BigRational::one()),
        }
    }

    pub fn sym_value(&self, s: Sym) -> RationalFunction {
        match s {
            Sym::One => RationalFunction::one(self.nvars()),
            Sym::Dlog(a) => self.dlog_atom(a),
            Sym::Value(v) => self.reg().values[v as usize].clone(),
        }
    }

    pub fn realize(&self, c: &Coeff) -> RationalFunction {
        let mut acc = RationalFunction::zero(self.nvars());
        for (s, q) in c.terms() {
            acc = acc.add(&self.sym_value(*s).scale(q));
        }
        acc
    }

    /// Dlog symbols of retired atoms are rewritten over current leaves.
    pub fn canonical_coeff(&self, c: &Coeff) -> Coeff {
        let reg = self.reg();
        if c.terms().iter().all(|(s, _)| !matches!(s, Sym::Dlog(a) if !reg.base.is_leaf(*a))) {
            return c.clone();
        }
        let mut out = Coeff::zero();
        for (s, q) in c.terms() {
            match s {
                Sym::Dlog(a) if !reg.base.is_leaf(*a) => {
                    for (l, e) in reg.base.expand(*a) {
                        out.add_scaled(&Coeff::sym(Sym::Dlog(l), BigRational::from_integer(e.into())), q);
                    }
                }
                _ => out.add_scaled(&Coeff::sym(*s, BigRational::one()), q),
            }
        }
        out
    }

    /// Exact zero test in F.
    pub fn coeff_is_zero(&self, c: &Coeff) -> bool {
        let c = self.canonical_coeff(c);
        c.is_empty() || self.realize(&c).is_zero()
    }

    pub fn coeff_mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        if let Some(q) = a.as_rational() {
            return b.scale(&q);
        }
        if let Some(q) = b.as_rational() {
            return a.scale(&q);
        }
        let v = self.realize(a).mul(&self.realize(b));
        if v.is_zero() {
            return Coeff::zero();
        }
        self.coeff_of(&v)
    }

    pub fn fmt_factored(&self, x: &Factored) -> String {
        self.fmt(&self.expand(x))
    }

    pub fn fmt_coeff(&self, c: &Coeff) -> String {
        self.fmt(&self.realize(c))
    }
}

/// Ensures a parsed generator argument avoids 0 and 1.
pub fn check_generator(ctx: &Context, x: &RationalFunction) -> Result<()> {
    if x.is_zero() || x.is_one() {
        return Err(Error::DegenerateGenerator(ctx.fmt(x)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::new(Derivation::partial(2, 0))
    }

    #[test]
    fn factor_and_expand_round_trip() {
        let c = ctx();
        for s in ["(t1^2 - 1)/(3*t1*t2)", "-7/2", "t1*(t1 - 1)^3/(t2 + 1)^2"] {
            let f = c.parse(s).unwrap();
            let x = c.factor(&f).unwrap();
            assert_eq!(c.expand(&x), f, "{s}");
        }
        assert_eq!(c.factor(&RationalFunction::zero(2)).unwrap_err(), Error::ZeroInMultiplicativeGroup);
    }

    #[test]
    fn one_minus_matches_field() {
        let c = ctx();
        for s in ["t1", "2*t1/(t1 + t2)", "-1/t2", "(t1 - 1)^2/t1", "3"] {
            let f = c.parse(s).unwrap();
            let x = c.factor(&f).unwrap();
            let y = c.one_minus(&x).unwrap();
            assert_eq!(c.expand(&y), f.one_minus(), "{s}");
        }
        assert!(c.one_minus(&Factored::one()).is_none());
        let x = c.parse_factored("t1").unwrap();
        assert_eq!(c.one_minus(&x), c.one_minus(&x));
        let x = c.parse_factored("t1/t1").unwrap();
        assert!(c.one_minus(&x).is_none());
    }

    #[test]
    fn retired_atoms_stay_consistent() {
        let c = ctx();
        let x = c.parse_factored("t1^2 - 1").unwrap();
        let _ = c.parse_factored("t1 - 1").unwrap();
        let y = c.canonical(&x);
        assert_eq!(y.powers().len(), 2);
        assert_eq!(c.expand(&y), c.parse("t1^2 - 1").unwrap());
        let d = c.canonical_coeff(&Coeff::dlog(&x));
        assert_eq!(c.realize(&d), c.derivation().dlog(&c.parse("t1^2 - 1").unwrap()).unwrap());
    }

    #[test]
    fn dlog_kills_constants_and_other_variables() {
        let c = ctx();
        let x = c.parse_factored("6*(t2 - 3)").unwrap();
        assert!(c.coeff_is_zero(&Coeff::dlog(&x)));
        assert!(!Coeff::dlog(&x).is_empty());
    }

    #[test]
    fn leg_atoms_include_integer_primes() {
        let c = ctx();
        let x = c.parse_factored("-12/5*t1").unwrap();
        let atoms = c.leg_atoms(&x);
        assert_eq!(atoms.len(), 4);
        assert_eq!(atoms.iter().filter(|&&(_, e)| e == 2).count(), 1);
        assert_eq!(atoms.iter().filter(|&&(_, e)| e == -1).count(), 1);
    }

    #[test]
    fn coefficient_products() {
        let c = ctx();
        let x = c.parse_factored("t1 + t2").unwrap();
        let a = Coeff::dlog(&x);
        let p = c.coeff_mul(&a, &a);
        let expect = c.realize(&a).mul(&c.realize(&a));
        assert_eq!(c.realize(&p), expect);
        assert_eq!(c.coeff_mul(&Coeff::from_int(3), &a), a.scale(&BigRational::from_integer(3.into())));
    }
}
