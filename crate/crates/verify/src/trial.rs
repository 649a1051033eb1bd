//! Per-trial state and verdicts.

use num_rational::BigRational;
use num_traits::One;
use polylog_core::derivation::random_poly;
use polylog_core::field::{default_names, normalize, RationalFunction};
use polylog_core::groups::{mid_scalar_ratio, verify_mid_equal, NumericOptions};
use polylog_core::realization::{magnitude, sample_point, Evaluator, PointKind};
use polylog_core::{Configuration, Context, Derivation, Error, MidElement, Result, Sampler, Tensor};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::settings::CheckParams;

/// Degree and coefficient bound of random derivation images.
const DERIVATION_DEGREE: u32 = 1;
const DERIVATION_BOUND: i64 = 3;

/// Everything one trial may draw on; all randomness comes from `rng`.
pub struct Trial<'p> {
    pub rng: ChaCha8Rng,
    pub params: &'p CheckParams,
}

impl<'p> Trial<'p> {
    pub fn new(rng: ChaCha8Rng, params: &'p CheckParams) -> Self {
        Trial { rng, params }
    }

    /// A fresh field context with the pinned derivation, or a random one
    /// whose images are all nonzero.
    pub fn context(&mut self) -> Result<Context> {
        self.context_in(self.params.nvars)
    }

    pub fn context_in(&mut self, nvars: usize) -> Result<Context> {
        let derivation = match &self.params.derivation {
            Some(images) => {
                let refs: Vec<&str> = images.iter().map(String::as_str).collect();
                Derivation::parse(&refs, &default_names(nvars))?
            }
            None => loop {
                let d = Derivation::random(nvars, DERIVATION_DEGREE, DERIVATION_BOUND, &mut self.rng);
                if d.images().iter().all(|f| !f.is_zero()) {
                    break d;
                }
            },
        };
        Ok(Context::new(derivation))
    }

    pub fn sampler(&self, nvars: usize) -> Sampler {
        Sampler { nvars, bound: self.params.coeff_bound, ..Sampler::default() }
    }

    /// A generic configuration of `m` vectors in dimension `dim` over `ctx`'s field.
    pub fn configuration(&mut self, ctx: &Context, m: usize, dim: usize) -> Result<Configuration> {
        self.sampler(ctx.nvars()).sample(&mut self.rng, m, dim)
    }

    /// A nonconstant polynomial of degree one, as a field element.
    pub fn scale_factor(&mut self, nvars: usize) -> RationalFunction {
        loop {
            let p = random_poly(nvars, 1, 5, &mut self.rng);
            if !p.is_zero() && !p.is_constant() {
                return RationalFunction::from_poly(p);
            }
        }
    }

    /// A nonconstant quotient of degree-one polynomials.
    pub fn element(&mut self, nvars: usize) -> RationalFunction {
        loop {
            let n = random_poly(nvars, 1, 5, &mut self.rng);
            let d = random_poly(nvars, 1, 5, &mut self.rng);
            if let Ok(f) = normalize(&n, &d) {
                if f.as_constant().is_none() {
                    return f;
                }
            }
        }
    }

    /// A random Möbius image (p·tᵢ + q)/(r·tᵢ + s) of the single variable tᵢ.
    pub fn mobius_of(&mut self, nvars: usize, i: usize) -> RationalFunction {
        let t = RationalFunction::var(nvars, i);
        loop {
            let [p, q, r, s] = [0; 4].map(|_| self.rng.random_range(-5..=5i64));
            if p * s == q * r {
                continue;
            }
            let affine = |a: i64, b: i64| t.scale(&BigRational::from_integer(a.into())).add(&RationalFunction::from_int(nvars, b));
            if let Ok(f) = affine(p, q).div(&affine(r, s)) {
                return f;
            }
        }
    }

    pub fn numeric(&self, specializations: usize) -> NumericOptions {
        NumericOptions { trials: specializations, precision: self.params.precision, tolerance: self.params.tolerance }
    }

    /// |value| at a fresh admissible point; poles resample.
    pub fn residual<'c>(
        &mut self,
        ctx: &'c Context,
        kind: PointKind,
        mut value: impl FnMut(&mut Evaluator<'c>) -> Result<rug::Complex>,
    ) -> Result<f64> {
        let mut out = None;
        sample_point(ctx, &mut self.rng, kind, self.params.precision, |ev| match value(ev) {
            Ok(v) => {
                out = Some(magnitude(&v));
                Ok(true)
            }
            Err(Error::Pole) => Ok(false),
            Err(e) => Err(e),
        })?;
        Ok(out.expect("accepted point has a value"))
    }

    /// Residuals at `count` fresh points.
    pub fn residuals<'c>(
        &mut self,
        ctx: &'c Context,
        kind: PointKind,
        count: usize,
        mut value: impl FnMut(&mut Evaluator<'c>) -> Result<rug::Complex>,
    ) -> Result<Vec<f64>> {
        (0..count).map(|_| self.residual(ctx, kind, &mut value)).collect()
    }

    /// Exact and numeric comparison of two middle-term elements.
    pub fn mid_equal(&mut self, ctx: &Context, lhs: &MidElement, rhs: &MidElement, specializations: usize) -> Result<Outcome> {
        let v = verify_mid_equal(ctx, lhs, rhs, &self.numeric(specializations), &mut self.rng)?;
        let exact = v.left_exact && v.right_exact;
        let ratio = if exact { Some(BigRational::one()) } else { mid_scalar_ratio(ctx, lhs, rhs)? };
        Ok(Outcome { exact: Some(exact), residuals: v.residuals, ratio })
    }
}

/// What one trial established.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    /// Verdict of the exact tier, if the check has one.
    pub exact: Option<bool>,
    /// Numeric-tier residuals.
    pub residuals: Vec<f64>,
    /// λ with lhs = λ·rhs, when the two sides are proportional.
    pub ratio: Option<BigRational>,
}

impl Outcome {
    pub fn exact(ok: bool) -> Self {
        Outcome { exact: Some(ok), ..Default::default() }
    }

    pub fn numeric(residuals: Vec<f64>) -> Self {
        Outcome { residuals, ..Default::default() }
    }

    pub fn with_residuals(mut self, residuals: Vec<f64>) -> Self {
        self.residuals.extend(residuals);
        self
    }

    /// Both tiers combined: exact verdicts conjoin, residuals concatenate.
    pub fn and(mut self, other: Outcome) -> Self {
        self.exact = match (self.exact, other.exact) {
            (Some(a), Some(b)) => Some(a && b),
            (a, b) => a.or(b),
        };
        self.residuals.extend(other.residuals);
        self.ratio = self.ratio.or(other.ratio);
        self
    }

    pub fn tensor_equal(ctx: &Context, lhs: &Tensor, rhs: &Tensor) -> Result<Outcome> {
        let ok = lhs.equals(ctx, rhs)?;
        let ratio = if ok { Some(BigRational::one()) } else { lhs.scalar_ratio(ctx, rhs)? };
        Ok(Outcome { exact: Some(ok), residuals: Vec::new(), ratio })
    }

    pub fn tensor_zero(ctx: &Context, t: &Tensor) -> Outcome {
        Outcome::exact(t.is_zero(ctx))
    }
}
