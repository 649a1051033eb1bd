//! Formal elements of B₂(F), β₂ᴰ(F), β₃ᴰ(F), Cathelineau's ⟨·⟩ₙ and the
//! middle term (β₂ᴰ⊗F^×) ⊕ (F⊗B₂), with their differentials and relators.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rug::Complex;

use crate::coeff::Coeff;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::field::{AtomId, Powers, RationalFunction};
use crate::realization::{
    admissible, bloch_wigner, entropy, magnitude, rational_to_float, realize_b2, sample_point, Evaluator, PointKind, Precision,
};
use crate::tensor::{Shape, Tensor};

fn bump_coeff<K: Ord>(map: &mut BTreeMap<K, Coeff>, key: K, c: &Coeff, k: &BigRational) {
    match map.entry(key) {
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

fn one_minus(ctx: &Context, a: &Factored) -> Result<Factored> {
    ctx.one_minus(a).ok_or_else(|| Error::DegenerateGenerator(ctx.fmt_factored(a)))
}

fn is_degenerate(ctx: &Context, a: &Factored) -> bool {
    ctx.one_minus(a).is_none()
}

fn subscript(w: Weight) -> &'static str {
    match w {
        Weight::Two => "₂",
        Weight::Three => "₃",
    }
}

fn generator_text(ctx: &Context, terms: &BTreeMap<Factored, Coeff>, open: &str, close: &str) -> String {
    terms
        .iter()
        .map(|(a, c)| format!("({})·{open}{}{close}\n", ctx.fmt(&ctx.realize(c)), ctx.fmt_factored(a)))
        .collect()
}

/// Elements of B₂(F) with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct B2Element {
    terms: BTreeMap<Factored, BigRational>,
}

impl B2Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> &BTreeMap<Factored, BigRational> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `q·[x]`; `[1]` is the zero element.
    pub fn add(&mut self, ctx: &Context, x: &Factored, q: &BigRational) {
        if q.is_zero() || is_degenerate(ctx, x) {
            return;
        }
        match self.terms.entry(ctx.canonical(x)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(q.clone());
            }
        }
    }

    /// Adds `q·[x]` for any x ∈ F; 0 and 1 contribute nothing.
    pub fn add_rf(&mut self, ctx: &Context, x: &RationalFunction, q: &BigRational) -> Result<()> {
        if x.is_zero() {
            return Ok(());
        }
        self.add(ctx, &ctx.factor(x)?, q);
        Ok(())
    }

    pub fn add_scaled(&mut self, ctx: &Context, other: &B2Element, k: &BigRational) {
        for (x, q) in &other.terms {
            self.add(ctx, x, &(q * k));
        }
    }

    /// [x] ↦ (1−x)∧x.
    pub fn delta2(&self, ctx: &Context) -> Result<Tensor> {
        let mut t = Tensor::zero(Shape::Wedge(2));
        for (x, q) in &self.terms {
            let y = one_minus(ctx, x)?;
            t.add_term(ctx, &Coeff::rational(q.clone()), &[&y, x])?;
        }
        Ok(t)
    }

    /// [a]₂ ↦ ⟦a⟧ᴰ₂.
    pub fn tau2d(&self, ctx: &Context) -> Result<BetaD> {
        let mut out = BetaD::new(Weight::Two);
        for (x, q) in &self.terms {
            out.add(ctx, x, &Coeff::rational(q.clone()))?;
        }
        Ok(out)
    }

    pub fn to_text(&self, ctx: &Context) -> String {
        self.terms.iter().map(|(x, q)| format!("({q})·[{}]₂\n", ctx.fmt_factored(x))).collect()
    }

    /// Σ q·D₂(x(s)).
    pub fn bloch_wigner_sum(&self, at: &mut Evaluator<'_>) -> Result<Complex> {
        let bits = at.bits();
        let prec = at.precision();
        let mut acc = Complex::with_val(bits, 0);
        for (x, q) in &self.terms {
            let z = at.factored(x)?;
            if !admissible(&z) {
                return Err(Error::Pole);
            }
            let d = bloch_wigner(&z, prec)?;
            acc += d * rational_to_float(q, bits);
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Two,
    Three,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weight::Two => "2",
            Weight::Three => "3",
        })
    }
}

/// Σ c·⟦a⟧ᴰ with c ∈ F, where ⟦a⟧ᴰ stands for D(a)/(a(1−a))·[a].
#[derive(Clone, Debug, PartialEq)]
pub struct BetaD {
    weight: Weight,
    terms: BTreeMap<Factored, Coeff>,
}

impl BetaD {
    pub fn new(weight: Weight) -> Self {
        BetaD { weight, terms: BTreeMap::new() }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn terms(&self) -> &BTreeMap<Factored, Coeff> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·⟦a⟧`; a ∈ {0, 1} is rejected.
    pub fn add(&mut self, ctx: &Context, a: &Factored, c: &Coeff) -> Result<()> {
        if is_degenerate(ctx, a) {
            return Err(Error::DegenerateGenerator(ctx.fmt_factored(a)));
        }
        bump_coeff(&mut self.terms, ctx.canonical(a), c, &BigRational::one());
        Ok(())
    }

    pub fn add_rf(&mut self, ctx: &Context, a: &RationalFunction, c: &Coeff) -> Result<()> {
        if a.is_zero() {
            return Err(Error::DegenerateGenerator("0".into()));
        }
        self.add(ctx, &ctx.factor(a)?, c)
    }

    pub fn add_scaled(&mut self, other: &BetaD, k: &BigRational) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::ShapeMismatch(
                format!("weight {}", self.weight),
                format!("weight {}", other.weight),
            ));
        }
        for (a, c) in &other.terms {
            bump_coeff(&mut self.terms, a.clone(), c, k);
        }
        Ok(())
    }

    fn require(&self, w: Weight) -> Result<()> {
        if self.weight != w {
            return Err(Error::ShapeMismatch(format!("weight {}", self.weight), format!("weight {w}")));
        }
        Ok(())
    }

    /// Rewrites c·⟦x⟧ᴰ as c·D(x)/(x(1−x))·⟨x⟩; generators with D(x) = 0 drop out.
    pub fn to_cathelineau(&self, ctx: &Context) -> Result<CathelineauElement> {
        let mut out = CathelineauElement::new(self.weight);
        for (x, c) in &self.terms {
            let xv = ctx.expand(x);
            let k = ctx.derivation().derive(&xv).div(&xv.mul(&xv.one_minus()))?;
            let v = ctx.realize(c).mul(&k);
            if !v.is_zero() {
                out.add(ctx, x, &ctx.coeff_of(&v))?;
            }
        }
        Ok(out)
    }

    pub fn to_text(&self, ctx: &Context) -> String {
        generator_text(ctx, &self.terms, "⟦", &format!("⟧ᴰ{}", subscript(self.weight)))
    }

    /// Σ c(s)·Dlog a(s)/(1 − a(s))·H(a(s)) at a real point s: the entropy
    /// realization of the ⟨·⟩ form, without building it.
    pub fn entropy_sum(&self, at: &mut Evaluator<'_>) -> Result<Complex> {
        self.require(Weight::Two)?;
        let bits = at.bits();
        let mut acc = Complex::with_val(bits, 0);
        for (a, c) in &self.terms {
            let x = at.factored(a)?;
            if !x.imag().is_zero() || !admissible(&x) {
                return Err(Error::Pole);
            }
            let h = entropy(x.real(), at.precision())?;
            let k = Complex::with_val(bits, at.coeff(&Coeff::dlog(a))? / Complex::with_val(bits, 1 - &x));
            acc += at.coeff(c)? * k * h;
        }
        Ok(acc)
    }

    /// ⟦a⟧ᴰ₂ ↦ −Dlog(1−a)⊗a + Dlog(a)⊗(1−a).
    pub fn partial_d2(&self, ctx: &Context) -> Result<Tensor> {
        self.require(Weight::Two)?;
        let mut t = Tensor::zero(Shape::FWedge(1));
        for (a, c) in &self.terms {
            let b = one_minus(ctx, a)?;
            t.add_term(ctx, &ctx.coeff_mul(c, &Coeff::dlog(&b)).neg(), &[a])?;
            t.add_term(ctx, &ctx.coeff_mul(c, &Coeff::dlog(a)), &[&b])?;
        }
        Ok(t)
    }

    /// ⟦a⟧ᴰ₃ ↦ (⟦a⟧ᴰ₂⊗a, Dlog(a)⊗[a]₂).
    pub fn partial_d3(&self, ctx: &Context) -> Result<MidElement> {
        self.require(Weight::Three)?;
        let mut m = MidElement::zero();
        for (a, c) in &self.terms {
            m.add_left(ctx, c, a, a)?;
            m.add_right(ctx, &ctx.coeff_mul(c, &Coeff::dlog(a)), a);
        }
        Ok(m)
    }
}

/// Σ c·⟨a⟩ₙ with c ∈ F, in Cathelineau's presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct CathelineauElement {
    weight: Weight,
    terms: BTreeMap<Factored, Coeff>,
}

impl CathelineauElement {
    pub fn new(weight: Weight) -> Self {
        CathelineauElement { weight, terms: BTreeMap::new() }
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn terms(&self) -> &BTreeMap<Factored, Coeff> {
        &self.terms
    }

    pub fn add(&mut self, ctx: &Context, a: &Factored, c: &Coeff) -> Result<()> {
        if is_degenerate(ctx, a) {
            return Err(Error::DegenerateGenerator(ctx.fmt_factored(a)));
        }
        bump_coeff(&mut self.terms, ctx.canonical(a), c, &BigRational::one());
        Ok(())
    }

    /// ⟨a⟩₂ ↦ a⊗a + (1−a)⊗(1−a), with the left slot in F.
    pub fn partial(&self, ctx: &Context) -> Result<Tensor> {
        if self.weight != Weight::Two {
            return Err(Error::ShapeMismatch(format!("weight {}", self.weight), "weight 2".into()));
        }
        let mut t = Tensor::zero(Shape::FWedge(1));
        for (a, c) in &self.terms {
            let b = one_minus(ctx, a)?;
            for leg in [a, &b] {
                let v = ctx.coeff_of(&ctx.expand(leg));
                t.add_term(ctx, &ctx.coeff_mul(c, &v), &[leg])?;
            }
        }
        Ok(t)
    }

    pub fn to_text(&self, ctx: &Context) -> String {
        generator_text(ctx, &self.terms, "⟨", &format!("⟩{}", subscript(self.weight)))
    }

    /// Σ c(s)·H(a(s)) at a real point s; weight 2 only.
    pub fn entropy_sum(&self, at: &mut Evaluator<'_>) -> Result<Complex> {
        if self.weight != Weight::Two {
            return Err(Error::ShapeMismatch(format!("weight {}", self.weight), "weight 2".into()));
        }
        let bits = at.bits();
        let mut acc = Complex::with_val(bits, 0);
        for (a, c) in &self.terms {
            let x = at.factored(a)?;
            if !x.imag().is_zero() || !admissible(&x) {
                return Err(Error::Pole);
            }
            let h = entropy(x.real(), at.precision())?;
            acc += at.coeff(c)? * h;
        }
        Ok(acc)
    }

    /// Rewrites c·⟨x⟩ as c·x(1−x)/D(x)·⟦x⟧ᴰ; fails where D(x) = 0.
    pub fn to_beta_d(&self, ctx: &Context) -> Result<BetaD> {
        let mut out = BetaD::new(self.weight);
        for (x, c) in &self.terms {
            let xv = ctx.expand(x);
            let dx = ctx.derivation().derive(&xv);
            if dx.is_zero() {
                return Err(Error::DegenerateRelator(format!("D({}) = 0", ctx.fmt(&xv))));
            }
            let k = xv.mul(&xv.one_minus()).div(&dx)?;
            let v = ctx.realize(c).mul(&k);
            out.add(ctx, x, &ctx.coeff_of(&v))?;
        }
        Ok(out)
    }
}

/// Elements of (β₂ᴰ⊗F^×) ⊕ (F⊗B₂).
///
/// The left summand is stored as `(a, atom) → c` for c·⟦a⟧ᴰ₂⊗atom, with the
/// right leg expanded over the coprime base; the right one as `y → x` for
/// x⊗[y]₂.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MidElement {
    left: BTreeMap<(Factored, AtomId), Coeff>,
    right: BTreeMap<Factored, Coeff>,
}

impl MidElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn left(&self) -> &BTreeMap<(Factored, AtomId), Coeff> {
        &self.left
    }

    pub fn right(&self) -> &BTreeMap<Factored, Coeff> {
        &self.right
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    /// Adds c·⟦a⟧ᴰ₂⊗b.
    pub fn add_left(&mut self, ctx: &Context, c: &Coeff, a: &Factored, b: &Factored) -> Result<()> {
        if is_degenerate(ctx, a) {
            return Err(Error::DegenerateGenerator(ctx.fmt_factored(a)));
        }
        let a = ctx.canonical(a);
        for (atom, e) in ctx.leg_atoms(b) {
            bump_coeff(&mut self.left, (a.clone(), atom), c, &BigRational::from_integer(e.into()));
        }
        Ok(())
    }

    /// Adds x⊗[y]₂; `[1]` is zero.
    pub fn add_right(&mut self, ctx: &Context, x: &Coeff, y: &Factored) {
        if is_degenerate(ctx, y) {
            return;
        }
        bump_coeff(&mut self.right, ctx.canonical(y), x, &BigRational::one());
    }

    /// Adds β⊗b for β ∈ β₂ᴰ.
    pub fn add_beta_tensor(&mut self, ctx: &Context, beta: &BetaD, b: &Factored, k: &BigRational) -> Result<()> {
        beta.require(Weight::Two)?;
        for (a, c) in &beta.terms {
            self.add_left(ctx, &c.scale(k), a, b)?;
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &MidElement, k: &BigRational) {
        for (key, c) in &other.left {
            bump_coeff(&mut self.left, key.clone(), c, k);
        }
        for (y, x) in &other.right {
            bump_coeff(&mut self.right, y.clone(), x, k);
        }
    }

    pub fn sub(&self, other: &MidElement) -> MidElement {
        let mut m = self.clone();
        m.add_scaled(other, &-BigRational::one());
        m
    }

    pub fn scale(&self, k: &BigRational) -> MidElement {
        let mut m = MidElement::zero();
        m.add_scaled(self, k);
        m
    }

    /// Rewrites generators, legs and coefficients over the current leaves.
    pub fn canonical(&self, ctx: &Context) -> MidElement {
        let mut m = MidElement::zero();
        for ((a, atom), c) in &self.left {
            let a = ctx.canonical(a);
            let c = ctx.canonical_coeff(c);
            for (leaf, e) in ctx.canonical_powers(&[(*atom, 1)]) {
                bump_coeff(&mut m.left, (a.clone(), leaf), &c, &BigRational::from_integer(e.into()));
            }
        }
        for (y, x) in &self.right {
            bump_coeff(&mut m.right, ctx.canonical(y), &ctx.canonical_coeff(x), &BigRational::one());
        }
        m
    }

    /// ∂ᴰ(⟦a⟧₂⊗b + x⊗[y]₂) = Dlog(1−a)⊗a∧b − Dlog(a)⊗(1−a)∧b + x⊗(1−y)∧y.
    pub fn partial_mid(&self, ctx: &Context) -> Result<Tensor> {
        let mut t = Tensor::zero(Shape::FWedge(2));
        for ((a, atom), c) in &self.left {
            let b = one_minus(ctx, a)?;
            let right: Powers = vec![(*atom, 1)];
            t.add_atoms(&ctx.coeff_mul(c, &Coeff::dlog(&b)), &[ctx.leg_atoms(a), right.clone()]);
            t.add_atoms(&ctx.coeff_mul(c, &Coeff::dlog(a)).neg(), &[ctx.leg_atoms(&b), right]);
        }
        t.add_scaled(&self.right_image(ctx)?, &BigRational::one())?;
        Ok(t)
    }

    /// (∂ᴰ₂⊗id) of the left summand, in F⊗F^×⊗F^×.
    pub fn left_image(&self, ctx: &Context) -> Result<Tensor> {
        let mut t = Tensor::zero(Shape::FTensor2);
        for ((a, atom), c) in &self.left {
            let b = one_minus(ctx, a)?;
            let right: Powers = vec![(*atom, 1)];
            t.add_atoms(&ctx.coeff_mul(c, &Coeff::dlog(&b)).neg(), &[ctx.leg_atoms(a), right.clone()]);
            t.add_atoms(&ctx.coeff_mul(c, &Coeff::dlog(a)), &[ctx.leg_atoms(&b), right]);
        }
        Ok(t)
    }

    /// (id⊗δ₂) of the right summand, in F⊗∧²F^×.
    pub fn right_image(&self, ctx: &Context) -> Result<Tensor> {
        let mut t = Tensor::zero(Shape::FWedge(2));
        for (y, x) in &self.right {
            let b = one_minus(ctx, y)?;
            t.add_term(ctx, x, &[&b, y])?;
        }
        Ok(t)
    }

    pub fn to_text(&self, ctx: &Context) -> String {
        let m = self.canonical(ctx);
        let mut s = String::new();
        for ((a, atom), c) in &m.left {
            s.push_str(&format!(
                "({})·⟦{}⟧₂ ⊗ {}\n",
                ctx.fmt_coeff(c),
                ctx.fmt_factored(a),
                ctx.atom_poly(*atom).fmt_with(ctx.names())
            ));
        }
        for (y, x) in &m.right {
            s.push_str(&format!("({}) ⊗ [{}]₂\n", ctx.fmt_coeff(x), ctx.fmt_factored(y)));
        }
        s
    }
}

/// Settings for the numeric tier of equality checks.
#[derive(Clone, Copy, Debug)]
pub struct NumericOptions {
    pub trials: usize,
    pub precision: Precision,
    pub tolerance: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions { trials: 10, precision: Precision::default(), tolerance: 1e-10 }
    }
}

/// Outcome of comparing two middle-term elements.
#[derive(Clone, Debug)]
pub struct MidVerdict {
    /// Left summands agree after ∂ᴰ₂⊗id (decisive).
    pub left_exact: bool,
    /// Right summands agree after id⊗δ₂.
    pub right_exact: bool,
    /// |Σ x(s₀)·D₂(y(s₁))| of the right-hand difference, one per trial.
    pub residuals: Vec<f64>,
    pub tolerance: f64,
}

impl MidVerdict {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.left_exact && self.right_exact && self.residuals.iter().all(|r| *r < self.tolerance)
    }
}

/// Decides e1 = e2: exactly on the left summand, and on the right summand up
/// to the kernel of δ₂ with Bloch–Wigner evidence.
pub fn verify_mid_equal<R: Rng + ?Sized>(
    ctx: &Context,
    e1: &MidElement,
    e2: &MidElement,
    opts: &NumericOptions,
    rng: &mut R,
) -> Result<MidVerdict> {
    if opts.trials == 0 {
        return Err(Error::Numeric("at least one trial is required".into()));
    }
    let diff = e1.sub(e2).canonical(ctx);
    let left_exact = diff.left_image(ctx)?.is_zero(ctx);
    let right_exact = diff.right_image(ctx)?.is_zero(ctx);
    // Coefficients that vanish in F only after realization still add 0 below.
    let right: Vec<(Factored, Coeff)> = diff.right.into_iter().collect();
    let mut residuals = Vec::with_capacity(opts.trials);
    for _ in 0..opts.trials {
        if right.is_empty() {
            residuals.push(0.0);
            continue;
        }
        let mut s0 = sample_point(ctx, rng, PointKind::Real, opts.precision, |ev| {
            for (_, x) in &right {
                ev.coeff(x)?;
            }
            Ok(true)
        })?;
        let mut s1 = sample_point(ctx, rng, PointKind::Complex, opts.precision, |ev| {
            for (y, _) in &right {
                if !admissible(&ev.factored(y)?) {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        let v = realize_b2(right.iter().map(|(y, x)| (y, x)), &mut s0, &mut s1)?;
        residuals.push(magnitude(&v));
    }
    Ok(MidVerdict { left_exact, right_exact, residuals, tolerance: opts.tolerance })
}

/// λ ∈ ℚ with a = λ·b, decided exactly on both images, when one exists and b ≠ 0.
pub fn mid_scalar_ratio(ctx: &Context, a: &MidElement, b: &MidElement) -> Result<Option<BigRational>> {
    let (a, b) = (a.canonical(ctx), b.canonical(ctx));
    let lambda = match a.left_image(ctx)?.scalar_ratio(ctx, &b.left_image(ctx)?)? {
        Some(l) => l,
        None if b.left_image(ctx)?.is_zero(ctx) => {
            match a.right_image(ctx)?.scalar_ratio(ctx, &b.right_image(ctx)?)? {
                Some(l) => l,
                None => return Ok(None),
            }
        }
        None => return Ok(None),
    };
    let diff = a.sub(&b.scale(&lambda));
    let ok = diff.left_image(ctx)?.is_zero(ctx) && diff.right_image(ctx)?.is_zero(ctx);
    Ok(ok.then_some(lambda))
}

/// Relation generators addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelatorKind {
    FiveTermB2,
    FiveTermBetaD,
    FourTermBeta2,
    TwoTerm,
    Inversion,
    Distribution2,
    Distribution2Beta2,
    ThreeTermBeta3,
    TwentyTwoTerm,
}

impl RelatorKind {
    pub const ALL: [RelatorKind; 9] = [
        RelatorKind::FiveTermB2,
        RelatorKind::FiveTermBetaD,
        RelatorKind::FourTermBeta2,
        RelatorKind::TwoTerm,
        RelatorKind::Inversion,
        RelatorKind::Distribution2,
        RelatorKind::Distribution2Beta2,
        RelatorKind::ThreeTermBeta3,
        RelatorKind::TwentyTwoTerm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelatorKind::FiveTermB2 => "five_term_B2",
            RelatorKind::FiveTermBetaD => "five_term_betaD",
            RelatorKind::FourTermBeta2 => "four_term_beta2",
            RelatorKind::TwoTerm => "two_term",
            RelatorKind::Inversion => "inversion",
            RelatorKind::Distribution2 => "distribution2",
            RelatorKind::Distribution2Beta2 => "distribution2_beta2",
            RelatorKind::ThreeTermBeta3 => "three_term_beta3",
            RelatorKind::TwentyTwoTerm => "twenty_two_term",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            RelatorKind::FiveTermB2 | RelatorKind::FiveTermBetaD | RelatorKind::FourTermBeta2 => 2,
            RelatorKind::TwentyTwoTerm => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for RelatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relator {s:?}")))
    }
}

/// A relator in its natural group.
#[derive(Clone, Debug, PartialEq)]
pub enum Relator {
    B2(B2Element),
    BetaD(BetaD),
    Cathelineau(CathelineauElement),
}

impl Relator {
    /// The image under the group's own differential: δ₂, ∂ᴰ₂, Cathelineau's
    /// ∂, or ∂ᴰ₃ (after rewriting ⟨·⟩₃ as ⟦·⟧ᴰ₃) for weight 3.
    pub fn boundary(&self, ctx: &Context) -> Result<Boundary> {
        Ok(match self {
            Relator::B2(e) => Boundary::Tensor(e.delta2(ctx)?),
            Relator::BetaD(e) if e.weight() == Weight::Two => Boundary::Tensor(e.partial_d2(ctx)?),
            Relator::BetaD(e) => Boundary::Mid(e.partial_d3(ctx)?),
            Relator::Cathelineau(e) if e.weight() == Weight::Two => Boundary::Tensor(e.partial(ctx)?),
            Relator::Cathelineau(e) => Boundary::Mid(e.to_beta_d(ctx)?.partial_d3(ctx)?),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Boundary {
    Tensor(Tensor),
    Mid(MidElement),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds a relator; every generator argument must avoid 0 and 1.
pub fn relator(ctx: &Context, kind: RelatorKind, params: &[RationalFunction]) -> Result<Relator> {
    if params.len() != kind.arity() {
        return Err(Error::Arity { expected: kind.arity(), found: params.len() });
    }
    let n = ctx.nvars();
    let one = RationalFunction::one(n);
    let check = |i: usize, x: &RationalFunction| -> Result<Factored> {
        if x.is_zero() || x.is_one() {
            return Err(Error::DegenerateRelator(format!(
                "{kind}: argument {} = {} lies in {{0, 1}}",
                i + 1,
                ctx.fmt(x)
            )));
        }
        ctx.factor(x)
    };
    let five = |a: &RationalFunction, b: &RationalFunction| -> Result<Vec<(i64, RationalFunction)>> {
        let ia = one.div(a)?;
        let ib = one.div(b)?;
        Ok(vec![
            (1, a.clone()),
            (-1, b.clone()),
            (1, b.div(a)?),
            (-1, b.one_minus().div(&a.one_minus())?),
            (1, ib.one_minus().div(&ia.one_minus())?),
        ])
    };
    let coeff = |c: &RationalFunction| ctx.coeff_of(c);
    match kind {
        RelatorKind::FiveTermB2 => {
            let mut e = B2Element::zero();
            for (i, (s, x)) in five(&params[0], &params[1])?.into_iter().enumerate() {
                e.add(ctx, &check(i, &x)?, &q(s));
            }
            Ok(Relator::B2(e))
        }
        RelatorKind::FiveTermBetaD => {
            let mut e = BetaD::new(Weight::Two);
            for (i, (s, x)) in five(&params[0], &params[1])?.into_iter().enumerate() {
                e.add(ctx, &check(i, &x)?, &Coeff::from_int(s))?;
            }
            Ok(Relator::BetaD(e))
        }
        RelatorKind::FourTermBeta2 => {
            let (a, b) = (&params[0], &params[1]);
            let terms = [
                (one.clone(), a.clone()),
                (one.neg(), b.clone()),
                (a.clone(), b.div(a)?),
                (a.one_minus(), b.one_minus().div(&a.one_minus())?),
            ];
            let mut e = CathelineauElement::new(Weight::Two);
            for (i, (c, x)) in terms.iter().enumerate() {
                e.add(ctx, &check(i, x)?, &coeff(c))?;
            }
            Ok(Relator::Cathelineau(e))
        }
        RelatorKind::TwoTerm | RelatorKind::Inversion => {
            let a = &params[0];
            let other = if kind == RelatorKind::TwoTerm { a.one_minus() } else { one.div(a)? };
            let mut e = BetaD::new(Weight::Two);
            e.add(ctx, &check(0, a)?, &Coeff::one())?;
            e.add(ctx, &check(1, &other)?, &Coeff::one())?;
            Ok(Relator::BetaD(e))
        }
        RelatorKind::Distribution2 => {
            let a = &params[0];
            let mut e = BetaD::new(Weight::Two);
            e.add(ctx, &check(0, &a.mul(a))?, &Coeff::one())?;
            e.add(ctx, &check(1, a)?, &Coeff::from_int(-2))?;
            e.add(ctx, &check(2, &a.neg())?, &Coeff::from_int(-2))?;
            Ok(Relator::BetaD(e))
        }
        RelatorKind::Distribution2Beta2 => {
            let a = &params[0];
            let mut e = CathelineauElement::new(Weight::Two);
            e.add(ctx, &check(0, &a.mul(a))?, &Coeff::one())?;
            e.add(ctx, &check(1, a)?, &coeff(&one.add(a).neg()))?;
            e.add(ctx, &check(2, &a.neg())?, &coeff(&a.one_minus().neg()))?;
            Ok(Relator::Cathelineau(e))
        }
        RelatorKind::ThreeTermBeta3 => {
            let a = &params[0];
            let terms = [
                (one.clone(), a.one_minus()),
                (one.neg(), a.clone()),
                (a.clone(), one.div(a)?.one_minus()),
            ];
            let mut e = CathelineauElement::new(Weight::Three);
            for (i, (c, x)) in terms.iter().enumerate() {
                e.add(ctx, &check(i, x)?, &coeff(c))?;
            }
            Ok(Relator::Cathelineau(e))
        }
        RelatorKind::TwentyTwoTerm => {
            let mut e = CathelineauElement::new(Weight::Three);
            for (i, (c, x)) in twenty_two_terms(&params[0], &params[1], &params[2])?.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                e.add(ctx, &check(i, x)?, &coeff(c))?;
            }
            Ok(Relator::Cathelineau(e))
        }
    }
}

/// (coefficient, argument) pairs of the 22-term relation in ⟨·⟩₃.
fn twenty_two_terms(
    a: &RationalFunction,
    b: &RationalFunction,
    c: &RationalFunction,
) -> Result<Vec<(RationalFunction, RationalFunction)>> {
    let oa = a.one_minus();
    let ob = b.one_minus();
    let oc = c.one_minus();
    let amb = a.sub(b);
    let bma = b.sub(a);
    let ca = c.mul(a);
    Ok(vec![
        (c.clone(), a.clone()),
        (c.neg(), b.clone()),
        (amb.add(&RationalFunction::one(a.nvars())), c.clone()),
        (oc.clone(), oa.clone()),
        (oc.neg(), ob.clone()),
        (bma.clone(), oc.clone()),
        (a.neg(), c.div(a)?),
        (b.clone(), c.div(b)?),
        (ca.clone(), b.div(a)?),
        (oa.neg(), oc.div(&oa)?),
        (ob.clone(), oc.div(&ob)?),
        (c.mul(&oa), ob.div(&oa)?),
        (c.mul(&oa), a.mul(&oc).div(&c.mul(&oa))?),
        (c.mul(&ob).neg(), b.mul(&oc).div(&c.mul(&ob))?),
        (b.neg(), ca.div(b)?),
        (oc.mul(a), amb.div(a)?),
        (oc.mul(&oa), bma.div(&oa)?),
        (amb.neg(), oc.mul(a).div(&amb)?),
        (ob.neg(), c.mul(&oa).div(&ob)?),
        (bma.neg(), oc.mul(&oa).div(&bma)?),
        (c.mul(&amb), oc.mul(b).div(&c.mul(&amb))?),
        (c.mul(&bma), oc.mul(&ob).div(&c.mul(&bma))?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Derivation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(n: usize) -> Context {
        Context::new(Derivation::logistic(n, &(0..n).collect::<Vec<_>>()))
    }

    fn rf(c: &Context, s: &str) -> RationalFunction {
        c.parse(s).unwrap()
    }

    fn tensor_zero(c: &Context, b: Boundary) -> bool {
        match b {
            Boundary::Tensor(t) => t.is_zero(c),
            Boundary::Mid(_) => panic!("expected a tensor"),
        }
    }

    #[test]
    fn entropy_kills_the_four_term_relator() {
        let c = ctx(2);
        let Relator::Cathelineau(e) = relator(&c, RelatorKind::FourTermBeta2, &[rf(&c, "t1"), rf(&c, "t2")]).unwrap()
        else {
            panic!("expected a Cathelineau element")
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..3 {
            let mut s = sample_point(&c, &mut rng, PointKind::Real, Precision(40), |ev| {
                Ok(e.entropy_sum(ev).is_ok())
            })
            .unwrap();
            assert!(magnitude(&e.entropy_sum(&mut s).unwrap()) < 1e-30);
        }
    }

    #[test]
    fn beta_entropy_matches_the_cathelineau_form() {
        let c = ctx(2);
        let mut b = BetaD::new(Weight::Two);
        b.add_rf(&c, &rf(&c, "t1*t2"), &c.coeff_of(&rf(&c, "t2+3"))).unwrap();
        b.add_rf(&c, &rf(&c, "(t1-2)/t2"), &Coeff::one()).unwrap();
        let cath = b.to_cathelineau(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut s = sample_point(&c, &mut rng, PointKind::Real, Precision(40), |ev| Ok(b.entropy_sum(ev).is_ok())).unwrap();
        let diff = b.entropy_sum(&mut s).unwrap() - cath.entropy_sum(&mut s).unwrap();
        assert!(magnitude(&diff) < 1e-30);
    }

    #[test]
    fn delta2_of_generator() {
        let c = ctx(1);
        let mut e = B2Element::zero();
        e.add_rf(&c, &rf(&c, "t1"), &q(1)).unwrap();
        e.add_rf(&c, &rf(&c, "1"), &q(5)).unwrap();
        e.add_rf(&c, &rf(&c, "0"), &q(5)).unwrap();
        let d = e.delta2(&c).unwrap();
        let expected =
            Tensor::from_terms(&c, Shape::Wedge(2), &[(rf(&c, "1"), vec![rf(&c, "1-t1"), rf(&c, "t1")])]).unwrap();
        assert!(d.equals(&c, &expected).unwrap());
        assert!(B2Element::zero().delta2(&c).unwrap().is_empty());
    }

    #[test]
    fn partial_d2_single_variable() {
        // D = ∂/∂a: ⟦a⟧ ↦ 1/(1−a)⊗a + 1/a⊗(1−a).
        let c = Context::new(Derivation::partial(1, 0));
        let mut e = BetaD::new(Weight::Two);
        e.add_rf(&c, &rf(&c, "t1"), &Coeff::one()).unwrap();
        let got = e.partial_d2(&c).unwrap();
        let want = Tensor::from_terms(
            &c,
            Shape::FWedge(1),
            &[(rf(&c, "1/(1-t1)"), vec![rf(&c, "t1")]), (rf(&c, "1/t1"), vec![rf(&c, "1-t1")])],
        )
        .unwrap();
        assert!(got.equals(&c, &want).unwrap());
    }

    #[test]
    fn degenerate_generators_rejected() {
        let c = ctx(1);
        let mut e = BetaD::new(Weight::Two);
        assert!(matches!(e.add_rf(&c, &rf(&c, "1"), &Coeff::one()), Err(Error::DegenerateGenerator(_))));
        assert!(e.add_rf(&c, &rf(&c, "0"), &Coeff::one()).is_err());
        let err = relator(&c, RelatorKind::FiveTermB2, &[rf(&c, "t1"), rf(&c, "t1")]).unwrap_err();
        assert!(matches!(err, Error::DegenerateRelator(_)));
        assert!(matches!(
            relator(&c, RelatorKind::TwoTerm, &[rf(&c, "t1"), rf(&c, "t1")]),
            Err(Error::Arity { .. })
        ));
    }

    #[test]
    fn weight_two_relators_vanish() {
        let c = ctx(2);
        let (a, b) = (rf(&c, "t1"), rf(&c, "t2"));
        for kind in [
            RelatorKind::FiveTermB2,
            RelatorKind::FiveTermBetaD,
            RelatorKind::FourTermBeta2,
        ] {
            let r = relator(&c, kind, &[a.clone(), b.clone()]).unwrap();
            assert!(tensor_zero(&c, r.boundary(&c).unwrap()), "{kind}");
        }
        for kind in [
            RelatorKind::TwoTerm,
            RelatorKind::Inversion,
            RelatorKind::Distribution2,
            RelatorKind::Distribution2Beta2,
        ] {
            let r = relator(&c, kind, &[rf(&c, "t1^2+t2")]).unwrap();
            assert!(tensor_zero(&c, r.boundary(&c).unwrap()), "{kind}");
        }
    }

    #[test]
    fn wrong_distribution_coefficients_do_not_vanish() {
        // ⟨·⟩-style coefficients on ⟦·⟧ᴰ generators.
        let c = ctx(1);
        let a = rf(&c, "t1");
        let mut e = BetaD::new(Weight::Two);
        e.add_rf(&c, &a.mul(&a), &Coeff::one()).unwrap();
        e.add_rf(&c, &a, &c.coeff_of(&rf(&c, "-(1+t1)"))).unwrap();
        e.add_rf(&c, &a.neg(), &c.coeff_of(&rf(&c, "-(1-t1)"))).unwrap();
        assert!(!e.partial_d2(&c).unwrap().is_zero(&c));
    }

    #[test]
    fn tau2d_respects_five_term() {
        let c = ctx(2);
        let Relator::B2(r) = relator(&c, RelatorKind::FiveTermB2, &[rf(&c, "t1"), rf(&c, "t2")]).unwrap() else {
            panic!()
        };
        assert!(r.tau2d(&c).unwrap().partial_d2(&c).unwrap().is_zero(&c));
    }

    #[test]
    fn mid_differential_kills_partial_d3() {
        let c = ctx(2);
        for s in ["t1", "t1*t2+3", "(t1-t2)/(1+t2^2)"] {
            let mut e = BetaD::new(Weight::Three);
            e.add_rf(&c, &rf(&c, s), &c.coeff_of(&rf(&c, "t2+1"))).unwrap();
            let m = e.partial_d3(&c).unwrap();
            assert!(!m.is_empty());
            assert!(m.partial_mid(&c).unwrap().is_zero(&c), "{s}");
        }
    }

    #[test]
    fn partial_mid_pieces() {
        let c = ctx(2);
        let a = c.parse_factored("t1").unwrap();
        let b = c.parse_factored("t2").unwrap();
        let mut m = MidElement::zero();
        m.add_left(&c, &Coeff::one(), &a, &b).unwrap();
        let one_minus_a = c.one_minus(&a).unwrap();
        let mut want = Tensor::zero(Shape::FWedge(2));
        want.add_term(&c, &Coeff::dlog(&one_minus_a), &[&a, &b]).unwrap();
        want.add_term(&c, &Coeff::dlog(&a).neg(), &[&one_minus_a, &b]).unwrap();
        assert!(m.partial_mid(&c).unwrap().equals(&c, &want).unwrap());
    }

    #[test]
    fn three_term_passes_mid_check() {
        let c = ctx(2);
        let r = relator(&c, RelatorKind::ThreeTermBeta3, &[rf(&c, "t1/(t2+2)")]).unwrap();
        let Boundary::Mid(m) = r.boundary(&c).unwrap() else { panic!() };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let opts = NumericOptions { trials: 3, ..Default::default() };
        let v = verify_mid_equal(&c, &m, &MidElement::zero(), &opts, &mut rng).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn mid_check_examples() {
        let c = ctx(2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let opts = NumericOptions { trials: 3, ..Default::default() };
        let y = c.parse_factored("t1").unwrap();
        let mut single = MidElement::zero();
        single.add_right(&c, &Coeff::one(), &y);
        let same = verify_mid_equal(&c, &single, &single, &opts, &mut rng).unwrap();
        assert!(same.passed() && same.max_residual() == 0.0);
        let v = verify_mid_equal(&c, &single, &MidElement::zero(), &opts, &mut rng).unwrap();
        assert!(!v.right_exact && !v.passed());

        let Relator::B2(r) = relator(&c, RelatorKind::FiveTermB2, &[rf(&c, "t1"), rf(&c, "t2")]).unwrap() else {
            panic!()
        };
        let x = c.coeff_of(&rf(&c, "t1+t2^2"));
        let mut five = MidElement::zero();
        for (arg, k) in r.terms() {
            five.add_right(&c, &x.scale(k), arg);
        }
        let v = verify_mid_equal(&c, &five, &MidElement::zero(), &opts, &mut rng).unwrap();
        assert!(v.passed(), "{v:?}");
        assert!(v.max_residual() > 0.0 && v.max_residual() < 1e-30);
    }

    #[test]
    fn twenty_two_term_passes_mid_check() {
        let names = crate::field::default_names(3);
        let d = Derivation::parse(&["t2+1", "t1*t3", "2*t1-t3"], &names).unwrap();
        let c = Context::new(d);
        let args = [rf(&c, "t1"), rf(&c, "t2"), rf(&c, "t3")];
        let r = relator(&c, RelatorKind::TwentyTwoTerm, &args).unwrap();
        let Relator::Cathelineau(e) = &r else { panic!() };
        assert_eq!(e.terms().len(), 22);
        let Boundary::Mid(m) = r.boundary(&c).unwrap() else { panic!() };
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let opts = NumericOptions { trials: 2, ..Default::default() };
        let v = verify_mid_equal(&c, &m, &MidElement::zero(), &opts, &mut rng).unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn relator_names_round_trip() {
        for k in RelatorKind::ALL {
            assert_eq!(k.name().parse::<RelatorKind>().unwrap(), k);
        }
        assert!("six_term".parse::<RelatorKind>().is_err());
    }
}
