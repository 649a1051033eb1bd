//! Maps from configurations of points to the infinitesimal complexes.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::Coeff;
use crate::configuration::{ConfigSum, Configuration, MinorTable};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::groups::{B2Element, BetaD, MidElement, Weight};
use crate::permutation::{alternate, symmetric_group, Perm};
use crate::tensor::{Shape, Tensor};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn expect(c: &Configuration, points: usize, dim: usize) -> Result<()> {
    if c.dim() != dim {
        return Err(Error::Arity { expected: dim, found: c.dim() });
    }
    if c.len() != points {
        return Err(Error::Arity { expected: points, found: c.len() });
    }
    Ok(())
}

/// Σᵢ Dlog Δ(i,i+2) ⊗ Δ(i,i+1)/Δ(i−1,i+1), indices mod 3.
pub fn tau0_2(ctx: &Context, c: &Configuration) -> Result<Tensor> {
    expect(c, 3, 2)?;
    let m = MinorTable::new(ctx, c)?;
    let mut t = Tensor::zero(Shape::FWedge(1));
    for i in 0..3 {
        let (prev, next, skip) = ((i + 2) % 3, (i + 1) % 3, (i + 2) % 3);
        let leg = m.factored(&[i, next]).div(&m.factored(&[prev, next]));
        t.add_term(ctx, &Coeff::dlog(&m.factored(&[i, skip])), &[&leg])?;
    }
    Ok(t)
}

/// ⟦r(l₀,…,l₃)⟧ᴰ₂ at the cross-ratio.
pub fn tau1_2(ctx: &Context, c: &Configuration) -> Result<BetaD> {
    expect(c, 4, 2)?;
    let m = MinorTable::new(ctx, c)?;
    let r = m.factored(&[0, 3]).mul(&m.factored(&[1, 2])).div(&m.factored(&[0, 2]).mul(&m.factored(&[1, 3])));
    let mut out = BetaD::new(Weight::Two);
    out.add(ctx, &r, &Coeff::one()).map_err(|_| Error::NonGeneric("cross-ratio equals 1".into()))?;
    Ok(out)
}

/// Σᵢ(−1)ⁱ Dlog Δ(î) ⊗ Δ(î+1)/Δ(î+2) ∧ Δ(î+3)/Δ(î+2), indices mod 4.
pub fn tau0_3(ctx: &Context, c: &Configuration) -> Result<Tensor> {
    expect(c, 4, 3)?;
    let m = MinorTable::new(ctx, c)?;
    let hat = |k: usize| m.omitting(4, &[k % 4]);
    let mut t = Tensor::zero(Shape::FWedge(2));
    for i in 0..4 {
        let a = hat(i + 1).div(&hat(i + 2));
        let b = hat(i + 3).div(&hat(i + 2));
        let sign = if i % 2 == 0 { 1 } else { -1 };
        t.add_term(ctx, &Coeff::dlog(&hat(i)).scale(&q(sign)), &[&a, &b])?;
    }
    Ok(t)
}

/// Projected cross-ratio r(lᵢ | remaining points in order) and ∏_{j≠i} Δ(l̂ᵢ,l̂ⱼ).
fn tau1_3_pieces(m: &MinorTable, i: usize) -> (Factored, Factored) {
    let rest: Vec<usize> = (0..5).filter(|&j| j != i).collect();
    let r = m.projected_cross_ratio(i, [rest[0], rest[1], rest[2], rest[3]]);
    let p = Factored::product(rest.iter().map(|&j| m.omitting(5, &[i, j])).collect::<Vec<_>>().iter());
    (r, p)
}

/// −(1/3)Σᵢ(−1)ⁱ[⟦rᵢ⟧ᴰ₂⊗Pᵢ + Dlog Pᵢ⊗[rᵢ]₂].
pub fn tau1_3(ctx: &Context, c: &Configuration) -> Result<MidElement> {
    expect(c, 5, 3)?;
    let m = MinorTable::new(ctx, c)?;
    let mut out = MidElement::zero();
    for i in 0..5 {
        let (r, p) = tau1_3_pieces(&m, i);
        let k = ratio(if i % 2 == 0 { -1 } else { 1 }, 3);
        out.add_left(ctx, &Coeff::rational(k.clone()), &r, &p)
            .map_err(|_| Error::NonGeneric(format!("projected cross-ratio from point {i} equals 1")))?;
        out.add_right(ctx, &Coeff::dlog(&p).scale(&k), &r);
    }
    Ok(out)
}

/// (1/3)Alt₅{⟦r(0|1234)⟧ᴰ₂⊗Δ(012) + Dlog Δ(012)⊗[r(0|1234)]₂}, unnormalized Alt.
pub fn tau1_3_alt5(ctx: &Context, c: &Configuration) -> Result<MidElement> {
    expect(c, 5, 3)?;
    let m = MinorTable::new(ctx, c)?;
    let mut out = MidElement::zero();
    let mut err = None;
    alternate(
        &symmetric_group(5),
        |s: &Perm| -> Result<(Factored, Factored)> {
            let l = &s.0;
            Ok((m.projected_cross_ratio(l[0], [l[1], l[2], l[3], l[4]]), m.factored(&[l[0], l[1], l[2]])))
        },
        |sign, (r, d)| {
            let k = ratio(sign, 3);
            if let Err(e) = out.add_left(ctx, &Coeff::rational(k.clone()), &r, &d) {
                err.get_or_insert(e);
            }
            out.add_right(ctx, &Coeff::dlog(&d).scale(&k), &r);
        },
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// (2/45)·Σ_{σ∈S₆} sgn(σ)⟦triple ratio of σ·c⟧ᴰ₃.
pub fn tau2_3(ctx: &Context, c: &Configuration) -> Result<BetaD> {
    tau2_3_scaled(ctx, c, &ratio(2, 45))
}

/// The alternation sum behind τ₂³ with an arbitrary prefactor.
pub fn tau2_3_scaled(ctx: &Context, c: &Configuration, scale: &BigRational) -> Result<BetaD> {
    expect(c, 6, 3)?;
    let m = MinorTable::new(ctx, c)?;
    let mut raw = BetaD::new(Weight::Three);
    let mut err = None;
    alternate(
        &symmetric_group(6),
        |s: &Perm| -> Result<(Perm, Factored)> { Ok((s.clone(), m.triple_ratio(&s.0))) },
        |sign, (s, r)| {
            if err.is_some() {
                return;
            }
            if raw.add(ctx, &r, &Coeff::rational(scale * q(sign))).is_err() {
                err = Some(Error::DegeneratePermutation(s.0));
            }
        },
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(raw),
    }
}

/// Σᵢ(−1)^{i·n} Dlog Δ(î) ⊗ ∧ₖ Δ(î+k)/Δ(î+k+1), k = 1..n−1, indices mod n+1.
pub fn tau0_n(ctx: &Context, c: &Configuration, n: usize) -> Result<Tensor> {
    if !(2..=5).contains(&n) {
        return Err(Error::Arity { expected: 2, found: n });
    }
    expect(c, n + 1, n)?;
    let m = MinorTable::new(ctx, c)?;
    let hat = |k: usize| m.omitting(n + 1, &[k % (n + 1)]);
    let mut t = Tensor::zero(Shape::FWedge((n - 1) as u8));
    for i in 0..=n {
        let legs: Vec<Factored> = (1..n).map(|k| hat(i + k).div(&hat(i + k + 1))).collect();
        let refs: Vec<&Factored> = legs.iter().collect();
        let sign = if (i * n).is_multiple_of(2) { 1 } else { -1 };
        t.add_term(ctx, &Coeff::dlog(&hat(i)).scale(&q(sign)), &refs)?;
    }
    Ok(t)
}

/// Applies a tensor-valued map linearly to a formal sum.
pub fn on_sum_tensor(
    ctx: &Context,
    sum: &ConfigSum,
    shape: Shape,
    f: impl Fn(&Context, &Configuration) -> Result<Tensor>,
) -> Result<Tensor> {
    let mut t = Tensor::zero(shape);
    for (c, k) in sum.terms() {
        t.add_scaled(&f(ctx, c)?, &q(k))?;
    }
    Ok(t)
}

pub fn on_sum_beta(
    ctx: &Context,
    sum: &ConfigSum,
    weight: Weight,
    f: impl Fn(&Context, &Configuration) -> Result<BetaD>,
) -> Result<BetaD> {
    let mut b = BetaD::new(weight);
    for (c, k) in sum.terms() {
        b.add_scaled(&f(ctx, c)?, &q(k))?;
    }
    Ok(b)
}

pub fn on_sum_mid(
    ctx: &Context,
    sum: &ConfigSum,
    f: impl Fn(&Context, &Configuration) -> Result<MidElement>,
) -> Result<MidElement> {
    let mut m = MidElement::zero();
    for (c, k) in sum.terms() {
        m.add_scaled(&f(ctx, c)?, &q(k));
    }
    Ok(m)
}

/// Σᵢ(−1)ⁱ[r(xᵢ | others)]₂ over five points in 3-space.
pub fn projected_five_term_b2(ctx: &Context, c: &Configuration) -> Result<B2Element> {
    expect(c, 5, 3)?;
    let m = MinorTable::new(ctx, c)?;
    let mut e = B2Element::zero();
    for i in 0..5 {
        let rest: Vec<usize> = (0..5).filter(|&j| j != i).collect();
        let r = m.projected_cross_ratio(i, [rest[0], rest[1], rest[2], rest[3]]);
        e.add(ctx, &r, &q(if i % 2 == 0 { 1 } else { -1 }));
    }
    Ok(e)
}

/// Σᵢ(−1)ⁱ⟦r(xᵢ | others)⟧ᴰ₂ over five points in 3-space.
pub fn projected_five_term_beta(ctx: &Context, c: &Configuration) -> Result<BetaD> {
    let e = projected_five_term_b2(ctx, c)?;
    e.tau2d(ctx)
}
