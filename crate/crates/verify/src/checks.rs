//! One function per catalog entry; each runs a single trial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use polylog_core::configuration::MinorTable;
use polylog_core::groups::{relator, Boundary, Relator, RelatorKind};
use polylog_core::morphisms::*;
use polylog_core::permutation::Perm;
use polylog_core::realization::{bloch_wigner, entropy, PointKind, Precision};
use polylog_core::field::RationalFunction;
use polylog_core::{
    BetaD, CathelineauElement, Coeff, Configuration, Context, Derivation, Error, Factored, MidElement, Result, Shape, Weight,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rug::{Complex, Float};

use crate::trial::{Outcome, Trial};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn boundary_tensor(b: Boundary) -> Result<polylog_core::Tensor> {
    match b {
        Boundary::Tensor(t) => Ok(t),
        Boundary::Mid(_) => Err(Error::ShapeMismatch("middle term".into(), "tensor".into())),
    }
}

fn boundary_mid(b: Boundary) -> Result<MidElement> {
    match b {
        Boundary::Mid(m) => Ok(m),
        Boundary::Tensor(_) => Err(Error::ShapeMismatch("tensor".into(), "middle term".into())),
    }
}

pub fn dd_zero(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let dim = t.rng.random_range(2..=4);
    let m = t.rng.random_range(dim + 2..=dim + 4);
    let c = t.configuration(&ctx, m, dim)?;
    Ok(Outcome::exact(c.boundary_d().boundary_d().is_empty()))
}

pub fn dprime_dprime_zero(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let dim = t.rng.random_range(3..=5);
    let m = t.rng.random_range(dim + 1..=dim + 3);
    let c = t.configuration(&ctx, m, dim)?;
    Ok(Outcome::exact(c.boundary_dprime().boundary_dprime().is_empty()))
}

pub fn bicomplex_anticommutes(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let mut mixed = c.boundary_d().boundary_dprime();
    mixed.add_sum(&c.boundary_dprime().boundary_d(), 1);
    Ok(Outcome::exact(mixed.is_empty()))
}

pub fn cross_ratio_identity_2did(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 4, 2)?;
    let d = |i, j| c.determinant(&[i, j]);
    let lhs = d(0, 1)?.mul(&d(2, 3)?);
    let rhs = d(0, 2)?.mul(&d(1, 3)?).sub(&d(0, 3)?.mul(&d(1, 2)?));
    Ok(Outcome::exact(lhs == rhs))
}

pub fn tau0_2_volume_invariance(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 3, 2)?;
    let lambda = t.scale_factor(ctx.nvars());
    Outcome::tensor_equal(&ctx, &tau0_2(&ctx, &c.rescale_volume(&lambda))?, &tau0_2(&ctx, &c)?)
}

pub fn tau0_2_length_invariance(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 4, 2)?;
    let lambdas: Vec<_> = (0..4).map(|_| t.scale_factor(ctx.nvars())).collect();
    let scaled = c.rescale_points(&lambdas);
    let of = |x: &Configuration| on_sum_tensor(&ctx, &x.boundary_d(), Shape::FWedge(1), tau0_2);
    Outcome::tensor_equal(&ctx, &of(&scaled)?, &of(&c)?)
}

pub fn claim1(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 4, 2)?;
    let lhs = tau1_2(&ctx, &c)?.partial_d2(&ctx)?;
    let rhs = on_sum_tensor(&ctx, &c.boundary_d(), Shape::FWedge(1), tau0_2)?;
    Outcome::tensor_equal(&ctx, &lhs, &rhs)
}

pub fn tau12d_kernel(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 2)?;
    let b = on_sum_beta(&ctx, &c.boundary_d(), Weight::Two, tau1_2)?;
    Ok(Outcome::tensor_zero(&ctx, &b.partial_d2(&ctx)?))
}

pub fn gon5term(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 3)?;
    let e = projected_five_term_b2(&ctx, &c)?;
    let exact = Outcome::tensor_zero(&ctx, &e.delta2(&ctx)?);
    let residuals = t.residuals(&ctx, PointKind::Complex, 10, |ev| e.bloch_wigner_sum(ev))?;
    Ok(exact.with_residuals(residuals))
}

pub fn lemma_4pt(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 3)?;
    let e = projected_five_term_beta(&ctx, &c)?;
    let exact = Outcome::tensor_zero(&ctx, &e.partial_d2(&ctx)?);
    let residuals = t.residuals(&ctx, PointKind::Real, 10, |ev| e.entropy_sum(ev))?;
    Ok(exact.with_residuals(residuals))
}

/// The five-point configuration over ℚ(a, b) with D = a(1−a)∂_a + b(1−b)∂_b.
pub fn four_term_example() -> Result<(Context, Configuration)> {
    let names = vec!["a".to_string(), "b".to_string()];
    let d = Derivation::parse(&["a*(1-a)", "b*(1-b)"], &names)?;
    let ctx = Context::with_names(names, d)?;
    let c = Configuration::parse("[[0,1],[1,0],[1,1],[a,1],[b,1]]", &ctx)?;
    Ok((ctx, c))
}

pub fn example_four_term(t: &mut Trial) -> Result<Outcome> {
    let (ctx, c) = four_term_example()?;
    let beta = on_sum_beta(&ctx, &c.boundary_d(), Weight::Two, tau1_2)?;
    let fifth = ctx.canonical(&ctx.parse_factored("(1-1/b)/(1-1/a)")?);
    let fifth_inv = ctx.canonical(&fifth.inv());
    let cath = beta.to_cathelineau(&ctx)?;
    // The ⟦·⟧ᴰ five-term carries the fifth generator; its ⟨·⟩ coefficient is 0.
    let has_fifth = |m: &BTreeMap<Factored, Coeff>| m.contains_key(&fifth) || m.contains_key(&fifth_inv);
    let shape = beta.terms().len() == 5 && has_fifth(beta.terms()) && cath.terms().len() == 4 && !has_fifth(cath.terms());
    let Relator::Cathelineau(four) = relator(&ctx, RelatorKind::FourTermBeta2, &[ctx.parse("a")?, ctx.parse("b")?])?
    else {
        return Err(Error::ShapeMismatch("relator".into(), "Cathelineau element".into()));
    };
    let same = inversion_classes(&ctx, &cath)? == inversion_classes(&ctx, &four)?;
    let zero = beta.partial_d2(&ctx)?.is_zero(&ctx) && cath.partial(&ctx)?.is_zero(&ctx);
    let residuals = t.residuals(&ctx, PointKind::Real, 20, |ev| cath.entropy_sum(ev))?;
    Ok(Outcome::exact(shape && same && zero).with_residuals(residuals))
}

/// Coefficients per class {x, 1/x}, rewriting c⟨x⟩ as −c·x⟨1/x⟩ onto the
/// smaller representative.
fn inversion_classes(ctx: &Context, e: &CathelineauElement) -> Result<BTreeMap<Factored, RationalFunction>> {
    let mut out: BTreeMap<Factored, RationalFunction> = BTreeMap::new();
    for (x, c) in e.terms() {
        let inv = ctx.canonical(&x.inv());
        let v = ctx.realize(c);
        let (key, v) = if inv < *x { (inv, v.mul(&ctx.expand(x)).neg()) } else { (x.clone(), v) };
        let slot = out.entry(key).or_insert_with(|| RationalFunction::zero(ctx.nvars()));
        *slot = slot.add(&v);
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

pub fn tau0_3_volume(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 4, 3)?;
    let lambda = t.scale_factor(ctx.nvars());
    Outcome::tensor_equal(&ctx, &tau0_3(&ctx, &c.rescale_volume(&lambda))?, &tau0_3(&ctx, &c)?)
}

pub fn tau1_3_volume(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 3)?;
    let lambda = t.scale_factor(ctx.nvars());
    let (lhs, rhs) = (tau1_3(&ctx, &c.rescale_volume(&lambda))?, tau1_3(&ctx, &c)?);
    t.mid_equal(&ctx, &lhs, &rhs, 3)
}

pub fn tau1_3_length(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let lambdas: Vec<_> = (0..6).map(|_| t.scale_factor(ctx.nvars())).collect();
    let of = |x: &Configuration| on_sum_mid(&ctx, &x.boundary_d(), tau1_3);
    let (lhs, rhs) = (of(&c.rescale_points(&lambdas))?, of(&c)?);
    t.mid_equal(&ctx, &lhs, &rhs, 3)
}

pub fn claim3a(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 3)?;
    let lhs = on_sum_tensor(&ctx, &c.boundary_d(), Shape::FWedge(2), tau0_3)?;
    let rhs = tau1_3(&ctx, &c)?.partial_mid(&ctx)?;
    Outcome::tensor_equal(&ctx, &lhs, &rhs)
}

/// The stated (1/3)·Alt₅ form against τ₁³.
pub fn tau1_3_alt_form(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 3)?;
    let (lhs, rhs) = (tau1_3_alt5(&ctx, &c)?, tau1_3(&ctx, &c)?);
    t.mid_equal(&ctx, &lhs, &rhs, 3)
}

pub fn triple_ratio_factorization(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let r3 = c.triple_ratio_term()?;
    let mut ok = true;
    for pair in [(1, 2), (0, 2), (0, 1)] {
        let (r1, r2) = c.factor_triple_ratio(pair)?;
        // r₁/r₂ = r₃ by cross-multiplication; dividing would need a large gcd.
        let lhs = r1.numer().mul(r2.denom()).mul(r3.denom());
        let rhs = r1.denom().mul(r2.numer()).mul(r3.numer());
        ok &= lhs == rhs;
    }
    Ok(Outcome::exact(ok))
}

/// Permutations sampled per trial; the cyclic symmetry is checked for each.
const SYMMETRY_SAMPLES: usize = 24;

pub fn triple_ratio_symmetry(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let m = MinorTable::new(&ctx, &c)?;
    let cyc = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]]);
    let mut ok = true;
    for _ in 0..SYMMETRY_SAMPLES {
        let mut images: Vec<usize> = (0..6).collect();
        images.shuffle(&mut t.rng);
        let s = Perm::new(images);
        ok &= ctx.canonical(&m.triple_ratio(&s.0)) == ctx.canonical(&m.triple_ratio(&s.compose(&cyc).0));
    }
    Ok(Outcome::exact(ok))
}

fn claim3b_sides(ctx: &Context, c: &Configuration, scale: &BigRational) -> Result<(MidElement, MidElement)> {
    let lhs = tau2_3_scaled(ctx, c, scale)?.partial_d3(ctx)?;
    let rhs = on_sum_mid(ctx, &c.boundary_d(), tau1_3)?;
    Ok((lhs, rhs))
}

pub fn claim3b(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let (lhs, rhs) = claim3b_sides(&ctx, &c, &q(2, 45))?;
    t.mid_equal(&ctx, &lhs, &rhs, 5)
}

/// claim3b with the prefactor −1/90 in place of 2/45; diagnostic only.
pub fn claim3b_rescaled(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let (lhs, rhs) = claim3b_sides(&ctx, &c, &q(-1, 90))?;
    t.mid_equal(&ctx, &lhs, &rhs, 5)
}

pub fn corollary_tau1_3_d_kernel(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 6, 3)?;
    let m = on_sum_mid(&ctx, &c.boundary_d(), tau1_3)?;
    Ok(Outcome::tensor_zero(&ctx, &m.partial_mid(&ctx)?))
}

pub fn partial_sq_zero(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let mut e = BetaD::new(Weight::Three);
    for _ in 0..3 {
        let x = t.element(ctx.nvars());
        let k = ctx.coeff_of(&t.element(ctx.nvars()));
        e.add_rf(&ctx, &x, &k)?;
    }
    Ok(Outcome::tensor_zero(&ctx, &e.partial_d3(&ctx)?.partial_mid(&ctx)?))
}

fn random_relator(t: &mut Trial, ctx: &Context, kind: RelatorKind) -> Result<Relator> {
    let params: Vec<_> = (0..kind.arity()).map(|_| t.element(ctx.nvars())).collect();
    relator(ctx, kind, &params)
}

pub fn relators_beta2d(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let mut ok = true;
    for kind in [RelatorKind::TwoTerm, RelatorKind::Inversion, RelatorKind::FiveTermBetaD, RelatorKind::Distribution2] {
        let r = random_relator(t, &ctx, kind)?;
        ok &= boundary_tensor(r.boundary(&ctx)?)?.is_zero(&ctx);
    }
    Ok(Outcome::exact(ok))
}

pub fn relator_five_term_b2(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let Relator::B2(e) = random_relator(t, &ctx, RelatorKind::FiveTermB2)? else {
        return Err(Error::ShapeMismatch("relator".into(), "B₂ element".into()));
    };
    let exact = Outcome::tensor_zero(&ctx, &e.delta2(&ctx)?);
    let residuals = t.residuals(&ctx, PointKind::Complex, 5, |ev| e.bloch_wigner_sum(ev))?;
    Ok(exact.with_residuals(residuals))
}

pub fn relator_four_term_beta2(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let Relator::Cathelineau(e) = random_relator(t, &ctx, RelatorKind::FourTermBeta2)? else {
        return Err(Error::ShapeMismatch("relator".into(), "Cathelineau element".into()));
    };
    let exact = Outcome::tensor_zero(&ctx, &e.partial(&ctx)?);
    let residuals = t.residuals(&ctx, PointKind::Real, 5, |ev| e.entropy_sum(ev))?;
    Ok(exact.with_residuals(residuals))
}

pub fn relator_distribution2_beta2(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let r = random_relator(t, &ctx, RelatorKind::Distribution2Beta2)?;
    Ok(Outcome::tensor_zero(&ctx, &boundary_tensor(r.boundary(&ctx)?)?))
}

pub fn relator_three_term_beta3(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let r = random_relator(t, &ctx, RelatorKind::ThreeTermBeta3)?;
    let m = boundary_mid(r.boundary(&ctx)?)?;
    t.mid_equal(&ctx, &m, &MidElement::zero(), 3)
}

/// The 22-term relation needs three independent parameters.
pub fn relator_22term(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context_in(t.params.nvars.max(3))?;
    // One variable per parameter keeps the coprime base small.
    let params: Vec<_> = (0..3).map(|i| t.mobius_of(ctx.nvars(), i)).collect();
    let r = relator(&ctx, RelatorKind::TwentyTwoTerm, &params)?;
    let m = boundary_mid(r.boundary(&ctx)?)?;
    t.mid_equal(&ctx, &m, &MidElement::zero(), 5)
}

pub fn remark_alld_1(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 4, 3)?;
    Ok(Outcome::tensor_zero(&ctx, &on_sum_tensor(&ctx, &c.boundary_dprime(), Shape::FWedge(1), tau0_2)?))
}

pub fn remark_alld_2(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 3)?;
    let b = on_sum_beta(&ctx, &c.boundary_dprime(), Weight::Two, tau1_2)?;
    Ok(Outcome::tensor_zero(&ctx, &b.partial_d2(&ctx)?))
}

pub fn remark_alld_3(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c = t.configuration(&ctx, 5, 4)?;
    Ok(Outcome::tensor_zero(&ctx, &on_sum_tensor(&ctx, &c.boundary_dprime(), Shape::FWedge(2), tau0_3)?))
}

pub fn remark_alld_n(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let mut ok = true;
    for n in 2..=5 {
        let c = t.configuration(&ctx, n + 2, n + 1)?;
        let image = on_sum_tensor(&ctx, &c.boundary_dprime(), Shape::FWedge((n - 1) as u8), |x, y| tau0_n(x, y, n))?;
        ok &= image.is_zero(&ctx);
    }
    Ok(Outcome::exact(ok))
}

pub fn tau0_n_reductions(t: &mut Trial) -> Result<Outcome> {
    let ctx = t.context()?;
    let c2 = t.configuration(&ctx, 3, 2)?;
    let two = Outcome::tensor_equal(&ctx, &tau0_n(&ctx, &c2, 2)?, &tau0_2(&ctx, &c2)?)?;
    let c3 = t.configuration(&ctx, 4, 3)?;
    let three = Outcome::tensor_equal(&ctx, &tau0_n(&ctx, &c3, 3)?, &tau0_3(&ctx, &c3)?.scale(&q(-1, 1)))?;
    Ok(two.and(three))
}

/// Tolerance pinned for the function-level oracles.
pub const ORACLE_TOLERANCE: f64 = 1e-12;

fn five_term_d2(a: &Complex, b: &Complex, prec: Precision) -> Result<Float> {
    let bits = prec.bits();
    let one_minus = |x: &Complex| Complex::with_val(bits, 1 - x);
    let inv = |x: &Complex| Complex::with_val(bits, 1 / x);
    let args = [
        a.clone(),
        b.clone(),
        Complex::with_val(bits, b / a),
        Complex::with_val(bits, one_minus(b) / one_minus(a)),
        Complex::with_val(bits, one_minus(&inv(b)) / one_minus(&inv(a))),
    ];
    let mut s = Float::with_val(bits, 0);
    for (i, z) in args.iter().enumerate() {
        let d = bloch_wigner(z, prec)?;
        if i % 2 == 0 {
            s += d;
        } else {
            s -= d;
        }
    }
    Ok(s)
}

fn four_term_entropy(a: &Float, b: &Float, prec: Precision) -> Result<Float> {
    let bits = prec.bits();
    let ratio = Float::with_val(bits, b / a);
    let other = Float::with_val(bits, Float::with_val(bits, 1 - b) / Float::with_val(bits, 1 - a));
    Ok(entropy(a, prec)? - entropy(b, prec)?
        + Float::with_val(bits, a * entropy(&ratio, prec)?)
        + Float::with_val(bits, Float::with_val(bits, 1 - a) * entropy(&other, prec)?))
}

/// Keeps every argument of both equations clear of 0, 1 and ∞.
fn oracle_pair_ok(a: f64, b: f64) -> bool {
    let far = |x: f64| x.abs() > 0.05 && (x - 1.0).abs() > 0.05;
    far(a) && far(b) && (a - b).abs() > 0.05
}

/// D₂ five-term at a random complex pair, entropy four-term at a random real
/// pair, and D₂(i) against Catalan's constant.
pub fn numeric_oracles(t: &mut Trial) -> Result<Outcome> {
    let prec = t.params.precision;
    let bits = prec.bits();
    let (za, zb) = loop {
        let v: [f64; 4] = std::array::from_fn(|_| t.rng.random_range(-2.0..2.0));
        let za = Complex::with_val(bits, (v[0], v[1]));
        let zb = Complex::with_val(bits, (v[2], v[3]));
        let diff = Complex::with_val(bits, &za - &zb);
        let ok = [&za, &zb].iter().all(|z| polylog_core::realization::admissible(z))
            && Float::with_val(bits, diff.abs_ref()) > 0.05;
        if ok {
            break (za, zb);
        }
    };
    let (ra, rb) = loop {
        let (a, b) = (t.rng.random_range(-2.0..2.0), t.rng.random_range(-2.0..2.0));
        if oracle_pair_ok(a, b) {
            break (Float::with_val(bits, a), Float::with_val(bits, b));
        }
    };
    let five = five_term_d2(&za, &zb, prec)?.abs().to_f64();
    let four = four_term_entropy(&ra, &rb, prec)?.abs().to_f64();
    let catalan = Float::with_val(bits, rug::float::Constant::Catalan);
    let at_i = bloch_wigner(&Complex::with_val(bits, (0, 1)), prec)?;
    let cat = (at_i - catalan).abs().to_f64();
    Ok(Outcome::numeric(vec![five, four, cat]))
}
