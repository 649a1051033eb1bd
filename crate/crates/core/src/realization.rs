//! Numeric realizations: specializations of F at points of ℂᵏ, the
//! Bloch–Wigner dilogarithm D₂, the entropy H, and log-fingerprints of tensors.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rug::{Complex, Float};

use crate::coeff::{Coeff, Sym};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::field::{AtomId, Polynomial, RationalFunction};
use crate::tensor::{Shape, Tensor};

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision(pub u32);

impl Default for Precision {
    fn default() -> Self {
        Precision(50)
    }
}

impl Precision {
    pub fn bits(self) -> u32 {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }
}

fn int_to_rug(n: &BigInt) -> rug::Integer {
    n.to_string().parse().expect("decimal integer")
}

pub fn rational_to_float(q: &BigRational, bits: u32) -> Float {
    let n = Float::with_val(bits, int_to_rug(q.numer()));
    n / int_to_rug(q.denom())
}

fn float(bits: u32, x: f64) -> Float {
    Float::with_val(bits, x)
}

/// Li₂ series coefficients keyed by (precision in bits, term count).
type SeriesCache = HashMap<(u32, usize), Vec<Float>>;

/// Series coefficients Bₙ/(n+1)! for Li₂ in u = −ln(1−w).
fn li2_coefficients(bits: u32, count: usize) -> Vec<Float> {
    static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());
    static CACHE: OnceLock<Mutex<SeriesCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&(bits, count)) {
        return v.clone();
    }
    let bern = {
        let mut b = BERNOULLI.lock().expect("bernoulli");
        // Bₙ with B₁ = −1/2 from Σ_{k<n+1} C(n+1,k)·B_k = 0.
        while b.len() < count {
            let n = b.len();
            if n == 0 {
                b.push(BigRational::one());
                continue;
            }
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b[..count].to_vec()
    };
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(count);
    for (n, bn) in bern.iter().enumerate() {
        fact *= BigInt::from(n + 1);
        out.push(rational_to_float(&(bn / BigRational::from_integer(fact.clone())), bits));
    }
    cache.lock().expect("cache").insert((bits, count), out.clone());
    out
}

/// Li₂(w) for |w| ≤ 1, Re w ≤ 1/2.
fn li2_reduced(w: &Complex, bits: u32) -> Complex {
    let one_minus = Complex::with_val(bits, 1 - w);
    let u = -one_minus.ln();
    // |u| ≤ 1.72 here; terms shrink like (|u|/2π)ⁿ.
    let count = ((bits as f64) / 1.8).ceil() as usize + 8;
    let coeffs = li2_coefficients(bits, count);
    let mut acc = Complex::with_val(bits, 0);
    let mut pow = u.clone();
    for (n, c) in coeffs.iter().enumerate() {
        // Odd Bernoulli numbers past B₁ vanish.
        if n > 1 && n % 2 == 1 {
            pow *= &u;
            continue;
        }
        acc += Complex::with_val(bits, &pow * c);
        pow *= &u;
    }
    acc
}

/// D₂(z) = Im Li₂(z) + arg(1−z)·ln|z|.
pub fn bloch_wigner(z: &Complex, prec: Precision) -> Result<Float> {
    let bits = prec.bits();
    if z.real().is_zero() && z.imag().is_zero() {
        return Err(Error::Numeric("D₂ undefined at 0".into()));
    }
    let one = Complex::with_val(bits, 1);
    if *z == one {
        return Err(Error::Numeric("D₂ undefined at 1".into()));
    }
    let z = Complex::with_val(bits, z);
    let inv = |x: &Complex| Complex::with_val(bits, 1 / x);
    let one_minus = |x: &Complex| Complex::with_val(bits, 1 - x);
    // D₂ is invariant under z ↦ 1−1/z, 1/(1−z) and anti-invariant under
    // z ↦ 1/z, 1−z, z/(z−1).
    let candidates = [
        (z.clone(), 1),
        (one_minus(&inv(&z)), 1),
        (inv(&one_minus(&z)), 1),
        (inv(&z), -1),
        (one_minus(&z), -1),
        (Complex::with_val(bits, &z / Complex::with_val(bits, &z - 1)), -1),
    ];
    let half = float(bits, 0.5);
    let (w, sign) = candidates
        .iter()
        .find(|(w, _)| Float::with_val(bits, w.abs_ref()) <= 1 && *w.real() <= half)
        .or_else(|| {
            candidates.iter().min_by(|a, b| {
                Float::with_val(bits, a.0.abs_ref())
                    .partial_cmp(&Float::with_val(bits, b.0.abs_ref()))
                    .expect("finite")
            })
        })
        .expect("six candidates");
    let li = li2_reduced(w, bits);
    let arg = Float::with_val(bits, one_minus(w).arg_ref());
    let ln_abs = Float::with_val(bits, w.abs_ref()).ln();
    let d = Float::with_val(bits, li.imag() + arg * ln_abs);
    Ok(if *sign < 0 { -d } else { d })
}

/// H(x) = −x·ln|x| − (1−x)·ln|1−x|.
pub fn entropy(x: &Float, prec: Precision) -> Result<Float> {
    let bits = prec.bits();
    let y = Float::with_val(bits, 1 - x);
    if x.is_zero() || y.is_zero() {
        return Err(Error::Numeric("entropy undefined at 0 and 1".into()));
    }
    let a = Float::with_val(bits, x * Float::with_val(bits, x.abs_ref()).ln());
    let b = Float::with_val(bits, &y * Float::with_val(bits, y.abs_ref()).ln());
    Ok(-(a + b))
}

/// A point of ℂᵏ with cached values of atoms and symbols.
pub struct Evaluator<'a> {
    ctx: &'a Context,
    prec: Precision,
    point: Vec<Complex>,
    atoms: HashMap<AtomId, Complex>,
    syms: HashMap<Sym, Complex>,
}

impl<'a> Evaluator<'a> {
    pub fn new(ctx: &'a Context, point: Vec<Complex>, prec: Precision) -> Self {
        Evaluator { ctx, prec, point, atoms: HashMap::new(), syms: HashMap::new() }
    }

    pub fn point(&self) -> &[Complex] {
        &self.point
    }

    pub fn bits(&self) -> u32 {
        self.prec.bits()
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn poly(&self, p: &Polynomial) -> Complex {
        let bits = self.bits();
        let mut acc = Complex::with_val(bits, 0);
        for (m, c) in p.terms() {
            let mut t = Complex::with_val(bits, rational_to_float(c, bits));
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= cpow(&self.point[v], e as i64);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn rf(&self, f: &RationalFunction) -> Result<Complex> {
        let d = self.poly(f.denom());
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(Complex::with_val(self.bits(), self.poly(f.numer()) / d))
    }

    pub fn atom(&mut self, id: AtomId) -> Complex {
        if let Some(v) = self.atoms.get(&id) {
            return v.clone();
        }
        let v = self.poly(&self.ctx.atom_poly(id));
        self.atoms.insert(id, v.clone());
        v
    }

    pub fn factored(&mut self, x: &Factored) -> Result<Complex> {
        let bits = self.bits();
        let mut acc = Complex::with_val(bits, rational_to_float(x.constant(), bits));
        for &(a, e) in x.powers() {
            let v = self.atom(a);
            if e < 0 && v.is_zero() {
                return Err(Error::Pole);
            }
            acc *= cpow(&v, e);
        }
        Ok(acc)
    }

    pub fn sym(&mut self, s: Sym) -> Result<Complex> {
        if let Some(v) = self.syms.get(&s) {
            return Ok(v.clone());
        }
        let v = match s {
            Sym::One => Complex::with_val(self.bits(), 1),
            Sym::Dlog(a) => {
                let atom = self.atom(a);
                if atom.is_zero() {
                    return Err(Error::Pole);
                }
                let d = self.ctx.derivation().derive_poly(&self.ctx.atom_poly(a));
                Complex::with_val(self.bits(), self.rf(&d)? / atom)
            }
            Sym::Value(_) => self.rf(&self.ctx.sym_value(s))?,
        };
        self.syms.insert(s, v.clone());
        Ok(v)
    }

    pub fn coeff(&mut self, c: &Coeff) -> Result<Complex> {
        let bits = self.bits();
        let mut acc = Complex::with_val(bits, 0);
        for (s, q) in c.terms() {
            acc += self.sym(*s)? * rational_to_float(q, bits);
        }
        Ok(acc)
    }

    /// ln|atom|.
    pub fn log_abs_atom(&mut self, id: AtomId) -> Result<Float> {
        let v = self.atom(id);
        if v.is_zero() {
            return Err(Error::Pole);
        }
        Ok(Float::with_val(self.bits(), v.abs_ref()).ln())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    Real,
    Complex,
}

/// Radius of the excluded discs around 0 and 1.
pub const EXCLUSION_RADIUS: f64 = 0.05;
pub const MAX_RESAMPLES: usize = 100;

/// True if z is at least the exclusion radius away from 0 and 1.
pub fn admissible(z: &Complex) -> bool {
    let bits = z.prec().0;
    let r = Float::with_val(bits, z.abs_ref());
    let r1 = Float::with_val(bits, Complex::with_val(bits, z - 1).abs_ref());
    r > EXCLUSION_RADIUS && r1 > EXCLUSION_RADIUS
}

/// Samples a point with coordinates uniform in [−2, 2] (and imaginary parts
/// in [−2, 2] for complex points) until `accept` holds.
pub fn sample_point<'a, R: Rng + ?Sized>(
    ctx: &'a Context,
    rng: &mut R,
    kind: PointKind,
    prec: Precision,
    mut accept: impl FnMut(&mut Evaluator<'a>) -> Result<bool>,
) -> Result<Evaluator<'a>> {
    let bits = prec.bits();
    for _ in 0..MAX_RESAMPLES {
        let point = (0..ctx.nvars())
            .map(|_| {
                let re = rng.random_range(-2.0..2.0);
                let im = if kind == PointKind::Complex { rng.random_range(-2.0..2.0) } else { 0.0 };
                Complex::with_val(bits, (re, im))
            })
            .collect();
        let mut ev = Evaluator::new(ctx, point, prec);
        match accept(&mut ev) {
            Ok(true) => return Ok(ev),
            Ok(false) | Err(Error::Pole) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingExhausted(MAX_RESAMPLES))
}

/// Σ c(s₀)·D₂(y(s₁)) over `(y, c)` pairs.
pub fn realize_b2<'a>(
    terms: impl IntoIterator<Item = (&'a Factored, &'a Coeff)>,
    coeff_at: &mut Evaluator<'_>,
    arg_at: &mut Evaluator<'_>,
) -> Result<Complex> {
    let prec = coeff_at.prec;
    let mut acc = Complex::with_val(prec.bits(), 0);
    for (y, c) in terms {
        let x = coeff_at.coeff(c)?;
        let z = arg_at.factored(y)?;
        if !admissible(&z) {
            return Err(Error::Pole);
        }
        acc += x * bloch_wigner(&z, prec)?;
    }
    Ok(acc)
}

/// Homomorphism of the tensor space to ℂ: coefficient at `points[0]`, and the
/// determinant of ln|legᵢ(points[j])| over the right slots (a plain product
/// for F⊗F^×⊗F^×).
pub fn log_fingerprint(t: &Tensor, points: &mut [Evaluator<'_>]) -> Result<Complex> {
    let shape = t.shape();
    let legs = shape.legs();
    let (first, rest) = points.split_first_mut().expect("at least one point");
    let coeff_slot = !matches!(shape, Shape::Wedge(_));
    let needed = if coeff_slot { legs } else { legs.saturating_sub(1) };
    if rest.len() < needed {
        return Err(Error::Arity { expected: needed + 1, found: rest.len() + 1 });
    }
    let bits = first.bits();
    let mut acc = Complex::with_val(bits, 0);
    for (key, c) in t.terms() {
        let coeff = if coeff_slot {
            first.coeff(c)?
        } else {
            Complex::with_val(bits, c.as_rational().map(|q| rational_to_float(&q, bits)).unwrap_or(float(bits, 0.0)))
        };
        // Rows: legs; columns: evaluation points for those legs.
        let cols: Vec<&mut Evaluator<'_>> = if coeff_slot {
            rest.iter_mut().take(legs).collect()
        } else {
            std::iter::once(&mut *first).chain(rest.iter_mut()).take(legs).collect()
        };
        let mut m = vec![vec![float(bits, 0.0); legs]; legs];
        for (j, ev) in cols.into_iter().enumerate() {
            for (i, &a) in key.iter().enumerate() {
                m[i][j] = ev.log_abs_atom(a)?;
            }
        }
        let val = if shape == Shape::FTensor2 {
            Float::with_val(bits, &m[0][0] * &m[1][1])
        } else {
            float_det(&m, bits)
        };
        acc += coeff * val;
    }
    Ok(acc)
}

fn float_det(m: &[Vec<Float>], bits: u32) -> Float {
    let n = m.len();
    match n {
        0 => float(bits, 1.0),
        1 => m[0][0].clone(),
        2 => Float::with_val(bits, &m[0][0] * &m[1][1]) - Float::with_val(bits, &m[0][1] * &m[1][0]),
        _ => {
            let mut acc = float(bits, 0.0);
            for c in 0..n {
                let minor: Vec<Vec<Float>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect()).collect();
                let t = Float::with_val(bits, &m[0][c] * float_det(&minor, bits));
                if c % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc
        }
    }
}

/// zᵉ by repeated squaring; z ≠ 0 when e < 0.
fn cpow(z: &Complex, e: i64) -> Complex {
    let bits = z.prec().0;
    let mut base = if e < 0 { Complex::with_val(bits, 1 / z) } else { z.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = Complex::with_val(bits, 1);
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = Complex::with_val(bits, &base * &base);
        }
    }
    acc
}

/// |z| as f64, for residual reports.
pub fn magnitude(z: &Complex) -> f64 {
    Float::with_val(z.prec().0, z.abs_ref()).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Derivation;
    use rand::SeedableRng;

    const P: Precision = Precision(30);

    fn c(re: f64, im: f64) -> Complex {
        Complex::with_val(P.bits(), (re, im))
    }

    #[test]
    fn catalan_at_i() {
        let d = bloch_wigner(&c(0.0, 1.0), P).unwrap();
        let catalan: Float = Float::with_val(P.bits(), Float::parse("0.915965594177219015054603514932384110774").unwrap());
        assert!(Float::with_val(P.bits(), d - catalan).abs() < 1e-25);
    }

    #[test]
    fn real_axis_and_conjugation() {
        for x in [-3.0, -0.4, 0.3, 0.7, 2.5] {
            assert!(bloch_wigner(&c(x, 0.0), P).unwrap().abs() < 1e-25);
        }
        let z = c(0.3, 1.7);
        let a = bloch_wigner(&z, P).unwrap();
        let b = bloch_wigner(&c(0.3, -1.7), P).unwrap();
        assert!(Float::with_val(P.bits(), a + b).abs() < 1e-25);
        assert!(bloch_wigner(&c(1.0, 0.0), P).is_err());
        assert!(bloch_wigner(&c(0.0, 0.0), P).is_err());
    }

    #[test]
    fn five_term_equation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let b = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let bits = P.bits();
            let one = |x: &Complex| Complex::with_val(bits, 1 - x);
            let args = [
                a.clone(),
                b.clone(),
                Complex::with_val(bits, &b / &a),
                Complex::with_val(bits, one(&b) / one(&a)),
                Complex::with_val(bits, one(&Complex::with_val(bits, 1 / &b)) / one(&Complex::with_val(bits, 1 / &a))),
            ];
            let mut s = float(bits, 0.0);
            for (i, z) in args.iter().enumerate() {
                let d = bloch_wigner(z, P).unwrap();
                if i % 2 == 0 {
                    s += d;
                } else {
                    s -= d;
                }
            }
            assert!(s.abs() < 1e-25);
        }
    }

    #[test]
    fn entropy_values_and_four_term_equation() {
        let bits = P.bits();
        let h = entropy(&float(bits, 0.5), P).unwrap();
        assert!((h.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        let x = float(bits, 0.2);
        let d = entropy(&x, P).unwrap() - entropy(&Float::with_val(bits, 1 - &x), P).unwrap();
        assert!(d.abs() < 1e-25);
        let (a, b) = (float(bits, 0.37), float(bits, -1.3));
        let ab = Float::with_val(bits, &b / &a);
        let r = Float::with_val(bits, Float::with_val(bits, 1 - &b) / Float::with_val(bits, 1 - &a));
        let lhs = entropy(&a, P).unwrap() - entropy(&b, P).unwrap()
            + Float::with_val(bits, &a * entropy(&ab, P).unwrap())
            + Float::with_val(bits, Float::with_val(bits, 1 - &a) * entropy(&r, P).unwrap());
        assert!(lhs.abs() < 1e-25);
        assert!(entropy(&float(bits, 1.0), P).is_err());
    }

    #[test]
    fn fingerprints() {
        let ctx = Context::new(Derivation::partial(2, 0));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let two = Tensor::from_terms(
            &ctx,
            Shape::FWedge(1),
            &[(RationalFunction::one(2), vec![RationalFunction::from_int(2, 2)])],
        )
        .unwrap();
        let mut pts: Vec<Evaluator> =
            (0..3).map(|_| sample_point(&ctx, &mut rng, PointKind::Real, P, |_| Ok(true)).unwrap()).collect();
        let v = log_fingerprint(&two, &mut pts).unwrap();
        assert!((magnitude(&v) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(magnitude(&log_fingerprint(&Tensor::zero(Shape::FWedge(2)), &mut pts).unwrap()) == 0.0);
    }
}
