//! Elements of F⊗∧ᵏF^×, F⊗F^×⊗F^× and ∧ⁿF^×, modulo 2-torsion.
//!
//! Legs are expanded multilinearly over the atoms of the context's coprime
//! base, so a key is a tuple of atom ids. Signs of legs are dropped. For
//! alternating shapes keys are sorted and the permutation sign moves into the
//! coefficient; keys with a repeated atom vanish.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::coeff::Coeff;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::field::{AtomId, Powers, RationalFunction};

pub type Key = SmallVec<[AtomId; 4]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// F ⊗ ∧ᵏF^×; k = 1 is F ⊗ F^×.
    FWedge(u8),
    /// F ⊗ F^× ⊗ F^×.
    FTensor2,
    /// ∧ⁿF^× with rational coefficients.
    Wedge(u8),
}

impl Shape {
    pub fn legs(self) -> usize {
        match self {
            Shape::FWedge(k) | Shape::Wedge(k) => k as usize,
            Shape::FTensor2 => 2,
        }
    }

    pub fn alternating(self) -> bool {
        match self {
            Shape::FWedge(k) => k >= 2,
            Shape::FTensor2 => false,
            Shape::Wedge(_) => true,
        }
    }

    pub fn rational_only(self) -> bool {
        matches!(self, Shape::Wedge(_))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::FWedge(1) => f.write_str("F⊗F^×"),
            Shape::FWedge(k) => write!(f, "F⊗∧{k}F^×"),
            Shape::FTensor2 => f.write_str("F⊗F^×⊗F^×"),
            Shape::Wedge(n) => write!(f, "∧{n}F^×"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    shape: Shape,
    terms: BTreeMap<Key, Coeff>,
}

/// Sorts in place; returns the permutation sign, or 0 on a repeated entry.
fn sort_signed(key: &mut [AtomId]) -> i64 {
    let mut sign = 1;
    for i in 1..key.len() {
        let mut j = i;
        while j > 0 && key[j - 1] > key[j] {
            key.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && key[j - 1] == key[j] {
            return 0;
        }
    }
    if key.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Tensor {
    pub fn zero(shape: Shape) -> Self {
        Tensor { shape, terms: BTreeMap::new() }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Raw stored terms; only meaningful after `canonical`.
    pub fn terms(&self) -> &BTreeMap<Key, Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Syntactically empty.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_shape(&self, o: Shape) -> Result<()> {
        if self.shape != o {
            return Err(Error::ShapeMismatch(self.shape.to_string(), o.to_string()));
        }
        Ok(())
    }

    fn accumulate(&mut self, key: Key, c: &Coeff, k: &BigRational) {
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_scaled(c, k);
                if e.get().is_empty() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                let mut slot = Coeff::zero();
                slot.add_scaled(c, k);
                if !slot.is_empty() {
                    v.insert(slot);
                }
            }
        }
    }

    /// Adds `coeff ⊗ legs[0] ⊗ …` (or ∧) after expanding each leg over atoms.
    pub fn add_term(&mut self, ctx: &Context, coeff: &Coeff, legs: &[&Factored]) -> Result<()> {
        if legs.len() != self.shape.legs() {
            return Err(Error::Arity { expected: self.shape.legs(), found: legs.len() });
        }
        if self.shape.rational_only() && coeff.as_rational().is_none() {
            return Err(Error::ShapeMismatch(self.shape.to_string(), "non-rational coefficient".into()));
        }
        if coeff.is_empty() {
            return Ok(());
        }
        let atoms: Vec<Powers> = legs.iter().map(|l| ctx.leg_atoms(l)).collect();
        self.add_expanded(coeff, &atoms);
        Ok(())
    }

    /// Adds a term whose legs are already atom expansions.
    pub(crate) fn add_atoms(&mut self, coeff: &Coeff, atoms: &[Powers]) {
        debug_assert_eq!(atoms.len(), self.shape.legs());
        if !coeff.is_empty() {
            self.add_expanded(coeff, atoms);
        }
    }

    fn add_expanded(&mut self, coeff: &Coeff, atoms: &[Powers]) {
        if atoms.iter().any(|a| a.is_empty()) {
            return;
        }
        let alt = self.shape.alternating();
        let mut idx = vec![0usize; atoms.len()];
        loop {
            let mut key: Key = SmallVec::with_capacity(atoms.len());
            let mut mult = 1i64;
            for (leg, &i) in atoms.iter().zip(&idx) {
                key.push(leg[i].0);
                mult *= leg[i].1;
            }
            let sign = if alt { sort_signed(&mut key) } else { 1 };
            if sign != 0 {
                self.accumulate(key, coeff, &q(sign * mult));
            }
            // Odometer over the cartesian product.
            let mut p = atoms.len();
            loop {
                if p == 0 {
                    return;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < atoms[p].len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }

    /// Builds from `(coefficient, legs)` pairs of field elements.
    pub fn from_terms(
        ctx: &Context,
        shape: Shape,
        raw: &[(RationalFunction, Vec<RationalFunction>)],
    ) -> Result<Self> {
        let mut t = Tensor::zero(shape);
        for (c, legs) in raw {
            let legs = legs.iter().map(|l| ctx.factor(l)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Factored> = legs.iter().collect();
            t.add_term(ctx, &ctx.coeff_of(c), &refs)?;
        }
        Ok(t)
    }

    /// self += k·other.
    pub fn add_scaled(&mut self, other: &Tensor, k: &BigRational) -> Result<()> {
        self.check_shape(other.shape)?;
        if k.is_zero() {
            return Ok(());
        }
        for (key, c) in &other.terms {
            self.accumulate(key.clone(), c, k);
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        let mut t = self.clone();
        t.add_scaled(other, &BigRational::one())?;
        Ok(t)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        let mut t = self.clone();
        t.add_scaled(other, &-BigRational::one())?;
        Ok(t)
    }

    pub fn scale(&self, k: &BigRational) -> Tensor {
        let mut t = Tensor::zero(self.shape);
        t.add_scaled(self, k).expect("same shape");
        t
    }

    /// Rewrites keys and coefficients over the current leaves.
    pub fn canonical(&self, ctx: &Context) -> Tensor {
        let mut out = Tensor::zero(self.shape);
        for (key, c) in &self.terms {
            let c = ctx.canonical_coeff(c);
            let atoms: Vec<Powers> = key.iter().map(|&a| ctx.canonical_powers(&[(a, 1)])).collect();
            out.add_expanded(&c, &atoms);
        }
        out
    }

    /// Nonzero terms with realized coefficients, in canonical key order.
    pub fn realized_terms(&self, ctx: &Context) -> Vec<(Key, RationalFunction)> {
        self.canonical(ctx)
            .terms
            .into_iter()
            .filter_map(|(k, c)| {
                let v = ctx.realize(&c);
                (!v.is_zero()).then_some((k, v))
            })
            .collect()
    }

    /// Exact zero test.
    pub fn is_zero(&self, ctx: &Context) -> bool {
        self.canonical(ctx).terms.values().all(|c| ctx.coeff_is_zero(c))
    }

    pub fn equals(&self, ctx: &Context, other: &Tensor) -> Result<bool> {
        Ok(self.sub(other)?.is_zero(ctx))
    }

    /// λ ∈ ℚ with self = λ·other, when one exists and other ≠ 0.
    pub fn scalar_ratio(&self, ctx: &Context, other: &Tensor) -> Result<Option<BigRational>> {
        self.check_shape(other.shape)?;
        let a = self.canonical(ctx);
        let b = other.canonical(ctx);
        let Some((key, bv)) = b
            .terms
            .iter()
            .find_map(|(k, c)| {
                let v = ctx.realize(c);
                (!v.is_zero()).then_some((k.clone(), v))
            })
        else {
            return Ok(None);
        };
        let av = a.terms.get(&key).map(|c| ctx.realize(c)).unwrap_or_else(|| RationalFunction::zero(ctx.nvars()));
        let Some(lambda) = av.div(&bv)?.as_constant() else {
            return Ok(None);
        };
        let mut diff = a;
        diff.add_scaled(&b, &-lambda.clone())?;
        Ok(diff.is_zero(ctx).then_some(lambda))
    }

    /// Coordinates of the Kähler image Σ a·db/b for F⊗F^×: one entry per variable.
    pub fn dlog_realize(&self, ctx: &Context) -> Result<Vec<RationalFunction>> {
        if self.shape != Shape::FWedge(1) {
            return Err(Error::ShapeMismatch(self.shape.to_string(), Shape::FWedge(1).to_string()));
        }
        let n = ctx.nvars();
        let mut out = vec![RationalFunction::zero(n); n];
        for (key, a) in self.realized_terms(ctx) {
            let p = ctx.atom_poly(key[0]);
            if p.is_constant() {
                continue;
            }
            let pr = RationalFunction::from_poly(p.clone());
            for (v, slot) in out.iter_mut().enumerate() {
                let dp = p.derivative(v);
                if dp.is_zero() {
                    continue;
                }
                *slot = slot.add(&a.mul(&RationalFunction::from_poly(dp).div(&pr)?));
            }
        }
        Ok(out)
    }

    /// Stable text form: an atom table followed by `[ids]: coefficient` lines.
    pub fn to_text(&self, ctx: &Context) -> String {
        let terms = self.realized_terms(ctx);
        let mut atoms: Vec<AtomId> = terms.iter().flat_map(|(k, _)| k.iter().copied()).collect();
        atoms.sort_unstable();
        atoms.dedup();
        let mut s = format!("shape {}\n", self.shape);
        for a in &atoms {
            s.push_str(&format!("a{a} = {}\n", ctx.atom_poly(*a).fmt_with(ctx.names())));
        }
        for (k, v) in &terms {
            let ids: Vec<String> = k.iter().map(|a| format!("a{a}")).collect();
            s.push_str(&format!("[{}]: {}\n", ids.join(", "), ctx.fmt(v)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Derivation;

    fn ctx() -> Context {
        Context::new(Derivation::partial(2, 0))
    }

    fn one(ctx: &Context, s: &str) -> Tensor {
        let c = ctx.parse("t1").unwrap();
        Tensor::from_terms(ctx, Shape::FWedge(1), &[(c, vec![ctx.parse(s).unwrap()])]).unwrap()
    }

    #[test]
    fn exponent_linearization() {
        let c = ctx();
        let a = one(&c, "t2^2");
        let b = one(&c, "t2").scale(&q(2));
        assert!(a.equals(&c, &b).unwrap());
    }

    #[test]
    fn torsion_legs_vanish() {
        let c = ctx();
        assert!(one(&c, "-1").is_zero(&c));
        assert!(one(&c, "-t1 - t2").equals(&c, &one(&c, "t1 + t2")).unwrap());
    }

    #[test]
    fn repeated_wedge_legs_vanish() {
        let c = ctx();
        let b = c.parse("t1 + 3").unwrap();
        let t = Tensor::from_terms(&c, Shape::FWedge(2), &[(c.parse("t2").unwrap(), vec![b.clone(), b])]).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn multiplicativity_and_distinct_atoms() {
        let c = ctx();
        let bc = one(&c, "t1*(t2 + 1)");
        let sum = one(&c, "t1").add(&one(&c, "t2 + 1")).unwrap();
        assert!(bc.equals(&c, &sum).unwrap());
        assert!(!one(&c, "t1").equals(&c, &one(&c, "t2 + 1")).unwrap());
        let half = Tensor::from_terms(
            &c,
            Shape::FWedge(1),
            &[(c.parse("1/2").unwrap(), vec![c.parse("t2^4").unwrap()])],
        )
        .unwrap();
        let two = Tensor::from_terms(&c, Shape::FWedge(1), &[(c.parse("2").unwrap(), vec![c.parse("t2").unwrap()])])
            .unwrap();
        assert!(half.equals(&c, &two).unwrap());
    }

    #[test]
    fn wedge_antisymmetry() {
        let c = ctx();
        let (x, y) = (c.parse("t1").unwrap(), c.parse("1 - t1").unwrap());
        let one = RationalFunction::one(2);
        let a = Tensor::from_terms(&c, Shape::Wedge(2), &[(one.clone(), vec![x.clone(), y.clone()])]).unwrap();
        let b = Tensor::from_terms(&c, Shape::Wedge(2), &[(one, vec![y, x])]).unwrap();
        assert!(a.add(&b).unwrap().is_zero(&c));
        assert_eq!(b.scalar_ratio(&c, &a).unwrap(), Some(q(-1)));
    }

    #[test]
    fn retirement_keeps_equality() {
        let c = ctx();
        let a = one(&c, "t1^2 - 1");
        let b = one(&c, "t1 - 1").add(&one(&c, "t1 + 1")).unwrap();
        assert!(a.equals(&c, &b).unwrap());
        assert_eq!(a.canonical(&c).len(), 2);
    }

    #[test]
    fn shape_mismatch() {
        let c = ctx();
        let a = Tensor::zero(Shape::FWedge(1));
        let b = Tensor::zero(Shape::FWedge(2));
        assert!(matches!(a.equals(&c, &b), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn kahler_image() {
        let c = ctx();
        let t = Tensor::from_terms(&c, Shape::FWedge(1), &[(RationalFunction::one(2), vec![c.parse("t1").unwrap()])])
            .unwrap();
        let d = t.dlog_realize(&c).unwrap();
        assert_eq!(d[0], c.parse("1/t1").unwrap());
        assert!(d[1].is_zero());
        assert!(one(&c, "5").dlog_realize(&c).unwrap().iter().all(|f| f.is_zero()));
    }
}
