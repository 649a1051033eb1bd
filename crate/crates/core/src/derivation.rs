//! Derivations of F given by their values on the generators.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{parse_rational_function, Monomial, Polynomial, RationalFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<RationalFunction>,
}

impl Derivation {
    pub fn new(images: Vec<RationalFunction>) -> Result<Self> {
        let k = images.len();
        if let Some(bad) = images.iter().find(|f| f.nvars() != k) {
            return Err(Error::Arity { expected: k, found: bad.nvars() });
        }
        Ok(Derivation { images })
    }

    /// ∂/∂t_i.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let images = (0..nvars)
            .map(|j| RationalFunction::from_int(nvars, (i == j) as i64))
            .collect();
        Derivation { images }
    }

    /// Σ t(1−t)·∂/∂t over the chosen variables, e.g. a(1−a)∂_a + b(1−b)∂_b.
    pub fn logistic(nvars: usize, vars: &[usize]) -> Self {
        let images = (0..nvars)
            .map(|j| {
                if vars.contains(&j) {
                    let t = RationalFunction::var(nvars, j);
                    t.mul(&t.one_minus())
                } else {
                    RationalFunction::zero(nvars)
                }
            })
            .collect();
        Derivation { images }
    }

    /// Images written as `D(t_i) = <expr>` strings, one per variable.
    pub fn parse(exprs: &[&str], names: &[String]) -> Result<Self> {
        if exprs.len() != names.len() {
            return Err(Error::Arity { expected: names.len(), found: exprs.len() });
        }
        let images = exprs
            .iter()
            .map(|e| parse_rational_function(e, names))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(images)
    }

    /// Random polynomial images of total degree ≤ `degree`, integer
    /// coefficients in [−bound, bound]; never the zero derivation.
    pub fn random<R: Rng + ?Sized>(nvars: usize, degree: u32, bound: i64, rng: &mut R) -> Self {
        loop {
            let images: Vec<RationalFunction> = (0..nvars)
                .map(|_| RationalFunction::from_poly(random_poly(nvars, degree, bound, rng)))
                .collect();
            if images.iter().any(|f| !f.is_zero()) {
                return Derivation { images };
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[RationalFunction] {
        &self.images
    }

    pub fn derive_poly(&self, p: &Polynomial) -> RationalFunction {
        let n = self.nvars();
        let mut poly_part = Polynomial::zero(n);
        let mut rest = RationalFunction::zero(n);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || p.degree_in(i) == 0 {
                continue;
            }
            let dp = p.derivative(i);
            if img.is_polynomial() {
                poly_part = poly_part.add(&dp.mul(img.numer()));
            } else {
                rest = rest.add(&RationalFunction::from_poly(dp).mul(img));
            }
        }
        RationalFunction::from_poly(poly_part).add(&rest)
    }

    pub fn derive(&self, f: &RationalFunction) -> RationalFunction {
        if f.is_polynomial() {
            return self.derive_poly(f.numer());
        }
        let (n, d) = (f.numer(), f.denom());
        let dn = self.derive_poly(n);
        let dd = self.derive_poly(d);
        let nf = RationalFunction::from_poly(n.clone());
        let df = RationalFunction::from_poly(d.clone());
        let top = dn.mul(&df).sub(&nf.mul(&dd));
        top.div(&df.mul(&df)).expect("denominator is nonzero")
    }

    pub fn dlog(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if f.is_zero() {
            return Err(Error::DlogOfZero);
        }
        self.derive(f).div(f)
    }
}

pub fn random_poly<R: Rng + ?Sized>(nvars: usize, degree: u32, bound: i64, rng: &mut R) -> Polynomial {
    let mut terms = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn walk(
        v: usize,
        left: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if v == exps.len() {
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in 0..=left {
            exps[v] = e;
            walk(v + 1, left - e, exps, out);
        }
        exps[v] = 0;
    }
    let mut monos = Vec::new();
    walk(0, degree, &mut exps, &mut monos);
    for m in monos {
        let c = rng.random_range(-bound..=bound);
        if c != 0 {
            terms.push((m, num_rational::BigRational::from_integer(c.into())));
        }
    }
    Polynomial::from_terms(nvars, terms)
}
