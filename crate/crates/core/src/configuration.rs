//! Configurations of vectors, determinants, the differentials d and d′, and
//! the cross-ratio family.
//!
//! A projected configuration (l | …) keeps its apex vectors instead of
//! quotient coordinates; its determinants are full determinants with the
//! apex rows first.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::factored::Factored;
use crate::field::{Polynomial, RationalFunction};
use crate::permutation::{parity_sign, Perm};

pub type Vector = Vec<RationalFunction>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    /// Multiplies every determinant: the volume form is `volume · det`.
    volume: RationalFunction,
    apex: Vec<Vector>,
    points: Vec<Vector>,
}

/// Determinant of a square matrix over F by expansion over column subsets.
pub fn determinant(rows: &[&Vector]) -> RationalFunction {
    let n = rows.len();
    let nvars = rows.first().and_then(|r| r.first()).map(|e| e.nvars()).unwrap_or(0);
    match n {
        0 => return RationalFunction::one(nvars),
        1 => return rows[0][0].clone(),
        2 => return rows[0][0].mul(&rows[1][1]).sub(&rows[0][1].mul(&rows[1][0])),
        _ => {}
    }
    // minors[S] = det of the last |S| rows restricted to column set S.
    let mut minors: Vec<Option<RationalFunction>> = vec![None; 1 << n];
    minors[0] = Some(RationalFunction::one(nvars));
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = rows[n - k];
        let mut acc = RationalFunction::zero(nvars);
        let mut sign_pos = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let e = &row[c];
            if !e.is_zero() {
                let sub = minors[mask & !(1 << c)].as_ref().expect("smaller subset done");
                let t = e.mul(sub);
                acc = if sign_pos % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            sign_pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << n) - 1].take().expect("full minor")
}

impl Configuration {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        Self::with_apex(Vec::new(), points)
    }

    pub fn with_apex(apex: Vec<Vector>, points: Vec<Vector>) -> Result<Self> {
        let dim = points.first().or(apex.first()).map(|v| v.len()).unwrap_or(0);
        if let Some(bad) = apex.iter().chain(&points).find(|v| v.len() != dim) {
            return Err(Error::Arity { expected: dim, found: bad.len() });
        }
        if apex.len() > dim {
            return Err(Error::Arity { expected: dim, found: apex.len() });
        }
        if points.iter().any(|v| v.iter().all(|e| e.is_zero())) {
            return Err(Error::NonGeneric("zero vector".into()));
        }
        let nvars = points.iter().chain(&apex).flatten().next().map(|e| e.nvars()).unwrap_or(0);
        Ok(Configuration { volume: RationalFunction::one(nvars), apex, points })
    }

    /// Integer coordinates, e.g. `&[&[1, 0], &[0, 1]]`.
    pub fn from_ints(nvars: usize, pts: &[&[i64]]) -> Result<Self> {
        Self::new(
            pts.iter()
                .map(|p| p.iter().map(|&x| RationalFunction::from_int(nvars, x)).collect())
                .collect(),
        )
    }

    /// Parses `[[1,0,0],[0,1,t1],...]`.
    pub fn parse(s: &str, ctx: &Context) -> Result<Self> {
        let body = s.trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("configuration must be bracketed: {s:?}")))?;
        let mut points = Vec::new();
        let mut depth = 0usize;
        let mut start = None;
        for (i, ch) in inner.char_indices() {
            match ch {
                '[' => {
                    if depth == 0 {
                        start = Some(i + 1);
                    }
                    depth += 1;
                }
                ']' => {
                    depth = depth.checked_sub(1).ok_or_else(|| Error::Parse("unbalanced ']'".into()))?;
                    if depth == 0 {
                        let st = start.take().expect("opened");
                        let entries = inner[st..i]
                            .split(',')
                            .map(|e| ctx.parse(e))
                            .collect::<Result<Vector>>()?;
                        points.push(entries);
                    }
                }
                ',' | ' ' | '\n' | '\t' if depth == 0 => {}
                _ if depth == 0 => return Err(Error::Parse(format!("unexpected {ch:?} in configuration"))),
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse("unbalanced '['".into()));
        }
        Self::new(points)
    }

    /// Length of the lifted vectors.
    pub fn ambient_dim(&self) -> usize {
        self.points.first().or(self.apex.first()).map(|v| v.len()).unwrap_or(0)
    }

    /// Dimension of the space the points live in after projecting from the apex.
    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.apex.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn apex(&self) -> &[Vector] {
        &self.apex
    }

    pub fn volume(&self) -> &RationalFunction {
        &self.volume
    }

    pub fn nvars(&self) -> usize {
        self.volume.nvars()
    }

    /// Δ of the chosen points (in the given order), apex rows first.
    pub fn determinant(&self, indices: &[usize]) -> Result<RationalFunction> {
        if indices.len() != self.dim() {
            return Err(Error::Arity { expected: self.dim(), found: indices.len() });
        }
        let rows: Vec<&Vector> = self.apex.iter().chain(indices.iter().map(|&i| &self.points[i])).collect();
        Ok(determinant(&rows).mul(&self.volume))
    }

    /// Every `dim`-subset of points has nonzero determinant.
    pub fn is_generic(&self) -> bool {
        let d = self.dim();
        if d == 0 {
            return false;
        }
        subsets(self.len(), d).iter().all(|s| !self.determinant(s).map(|v| v.is_zero()).unwrap_or(true))
    }

    pub fn require_generic(&self) -> Result<()> {
        if self.is_generic() {
            Ok(())
        } else {
            Err(Error::NonGeneric(format!("{} points in dimension {}", self.len(), self.dim())))
        }
    }

    /// The same configuration against the volume form λω.
    pub fn rescale_volume(&self, lambda: &RationalFunction) -> Self {
        let mut c = self.clone();
        c.volume = c.volume.mul(lambda);
        c
    }

    /// lᵢ ↦ λᵢ lᵢ.
    pub fn rescale_points(&self, lambdas: &[RationalFunction]) -> Self {
        let mut c = self.clone();
        for (p, l) in c.points.iter_mut().zip(lambdas) {
            for e in p.iter_mut() {
                *e = e.mul(l);
            }
        }
        c
    }

    /// (σ·c)ₖ = c_{σ(k)}.
    pub fn permute(&self, sigma: &Perm) -> Self {
        let mut c = self.clone();
        c.points = sigma.0.iter().map(|&i| self.points[i].clone()).collect();
        c
    }

    pub fn select(&self, indices: &[usize]) -> Self {
        let mut c = self.clone();
        c.points = indices.iter().map(|&i| self.points[i].clone()).collect();
        c
    }

    pub fn omit(&self, i: usize) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&j| j != i).collect();
        self.select(&idx)
    }

    /// (lᵢ | l₀,…,l̂ᵢ,…); apex vectors are kept sorted so that projecting
    /// from the same set in either order gives the same configuration.
    pub fn project_from(&self, i: usize) -> Self {
        let mut c = self.omit(i);
        c.apex.push(self.points[i].clone());
        c.apex.sort();
        c
    }

    pub fn boundary_d(&self) -> ConfigSum {
        let mut s = ConfigSum::default();
        for i in 0..self.len() {
            s.add(self.omit(i), if i % 2 == 0 { 1 } else { -1 });
        }
        s
    }

    pub fn boundary_dprime(&self) -> ConfigSum {
        let mut s = ConfigSum::default();
        for i in 0..self.len() {
            s.add(self.project_from(i), if i % 2 == 0 { 1 } else { -1 });
        }
        s
    }

    /// Δ(0,3)Δ(1,2)/(Δ(0,2)Δ(1,3)) for four points in dimension 2.
    pub fn cross_ratio(&self) -> Result<RationalFunction> {
        if self.dim() != 2 || self.len() != 4 {
            return Err(Error::Arity { expected: 4, found: self.len() });
        }
        let d = |a: usize, b: usize| self.determinant(&[a, b]);
        let den = d(0, 2)?.mul(&d(1, 3)?);
        let num = d(0, 3)?.mul(&d(1, 2)?);
        if den.is_zero() || num.is_zero() {
            return Err(Error::NonGeneric("cross-ratio of degenerate points".into()));
        }
        num.div(&den)
    }

    /// r(l_a | the other four, in order), from 3×3 determinants.
    pub fn projected_cross_ratio(&self, apex: usize) -> Result<RationalFunction> {
        if self.dim() != 3 || self.len() != 5 {
            return Err(Error::Arity { expected: 5, found: self.len() });
        }
        let o: Vec<usize> = (0..5).filter(|&j| j != apex).collect();
        let d = |x: usize, y: usize| self.determinant(&[apex, o[x], o[y]]);
        let num = d(0, 3)?.mul(&d(1, 2)?);
        let den = d(0, 2)?.mul(&d(1, 3)?);
        if den.is_zero() || num.is_zero() {
            return Err(Error::NonGeneric("projected cross-ratio of degenerate points".into()));
        }
        num.div(&den)
    }

    /// Δ(013)Δ(124)Δ(205) / (Δ(014)Δ(125)Δ(203)).
    pub fn triple_ratio_term(&self) -> Result<RationalFunction> {
        if self.dim() != 3 || self.len() != 6 {
            return Err(Error::Arity { expected: 6, found: self.len() });
        }
        let d = |a, b, c| self.determinant(&[a, b, c]);
        let num = d(0, 1, 3)?.mul(&d(1, 2, 4)?).mul(&d(2, 0, 5)?);
        let den = d(0, 1, 4)?.mul(&d(1, 2, 5)?).mul(&d(2, 0, 3)?);
        if num.is_zero() || den.is_zero() {
            return Err(Error::NonGeneric("triple ratio of degenerate points".into()));
        }
        num.div(&den)
    }

    /// (r₁, r₂) with r₁/r₂ the triple-ratio term, projecting from the two chosen
    /// labels of {0,1,2}.
    pub fn factor_triple_ratio(&self, pair: (usize, usize)) -> Result<(RationalFunction, RationalFunction)> {
        let (a, b) = (pair.0.min(pair.1), pair.0.max(pair.1));
        let (top, bottom): ((usize, [usize; 4]), (usize, [usize; 4])) = match (a, b) {
            (1, 2) => ((2, [1, 0, 5, 3]), (1, [0, 2, 3, 4])),
            (0, 2) => ((0, [2, 1, 3, 4]), (2, [1, 0, 4, 5])),
            (0, 1) => ((1, [0, 2, 4, 5]), (0, [2, 1, 5, 3])),
            _ => return Err(Error::InvalidPair(pair.0, pair.1)),
        };
        self.require_generic()?;
        let r = |(apex, four): (usize, [usize; 4])| {
            let mut labels = vec![apex];
            labels.extend(four);
            self.select(&labels).projected_cross_ratio(0)
        };
        Ok((r(top)?, r(bottom)?))
    }

    /// Human-readable form with the context's variable names.
    pub fn fmt_with(&self, names: &[String]) -> String {
        let vec = |v: &Vector| {
            let e: Vec<String> = v.iter().map(|x| x.fmt_with(names)).collect();
            format!("[{}]", e.join(","))
        };
        let pts: Vec<String> = self.points.iter().map(vec).collect();
        let mut s = format!("[{}]", pts.join(","));
        if !self.apex.is_empty() {
            let ap: Vec<String> = self.apex.iter().map(vec).collect();
            s = format!("({} | {s})", ap.join(","));
        }
        s
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&crate::field::default_names(self.nvars())))
    }
}

/// All k-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Integer combination of configurations; like terms merged, zeros dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigSum {
    terms: BTreeMap<Configuration, i64>,
}

impl ConfigSum {
    pub fn single(c: Configuration) -> Self {
        let mut s = Self::default();
        s.add(c, 1);
        s
    }

    pub fn add(&mut self, c: Configuration, k: i64) {
        if k == 0 {
            return;
        }
        match self.terms.entry(c) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(k);
            }
        }
    }

    pub fn add_sum(&mut self, o: &ConfigSum, k: i64) {
        for (c, v) in &o.terms {
            self.add(c.clone(), v * k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Configuration, i64)> {
        self.terms.iter().map(|(c, &k)| (c, k))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn boundary_d(&self) -> ConfigSum {
        let mut s = ConfigSum::default();
        for (c, k) in self.terms() {
            s.add_sum(&c.boundary_d(), k);
        }
        s
    }

    pub fn boundary_dprime(&self) -> ConfigSum {
        let mut s = ConfigSum::default();
        for (c, k) in self.terms() {
            s.add_sum(&c.boundary_dprime(), k);
        }
        s
    }
}

/// All maximal minors of a configuration, factored once, looked up by
/// ordered label lists.
#[derive(Clone, Debug)]
pub struct MinorTable {
    dim: usize,
    values: BTreeMap<Vec<usize>, (RationalFunction, Factored)>,
}

impl MinorTable {
    /// Errors with `NonGeneric` if any minor vanishes.
    pub fn new(ctx: &Context, c: &Configuration) -> Result<Self> {
        let dim = c.dim();
        let mut values = BTreeMap::new();
        for s in subsets(c.len(), dim) {
            let v = c.determinant(&s)?;
            if v.is_zero() {
                return Err(Error::NonGeneric(format!("vanishing minor {s:?}")));
            }
            let f = ctx.factor(&v)?;
            values.insert(s, (v, f));
        }
        Ok(MinorTable { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn lookup(&self, idx: &[usize]) -> (i64, &(RationalFunction, Factored)) {
        let sign = parity_sign(idx);
        assert!(sign != 0, "repeated label in minor {idx:?}");
        let mut key = idx.to_vec();
        key.sort_unstable();
        (sign, self.values.get(&key).expect("minor of the right size"))
    }

    pub fn value(&self, idx: &[usize]) -> RationalFunction {
        let (s, (v, _)) = self.lookup(idx);
        if s < 0 {
            v.neg()
        } else {
            v.clone()
        }
    }

    pub fn factored(&self, idx: &[usize]) -> Factored {
        let (s, (_, f)) = self.lookup(idx);
        if s < 0 {
            f.neg()
        } else {
            f.clone()
        }
    }

    /// Minor of the points with the given labels removed.
    pub fn omitting(&self, n_points: usize, omit: &[usize]) -> Factored {
        let idx: Vec<usize> = (0..n_points).filter(|i| !omit.contains(i)).collect();
        self.factored(&idx)
    }

    /// r(a | b,c,d,e) = Δ(a,b,e)Δ(a,c,d) / (Δ(a,b,d)Δ(a,c,e)) in dimension 3.
    pub fn projected_cross_ratio(&self, a: usize, four: [usize; 4]) -> Factored {
        let [b, c, d, e] = four;
        self.factored(&[a, b, e])
            .mul(&self.factored(&[a, c, d]))
            .div(&self.factored(&[a, b, d]).mul(&self.factored(&[a, c, e])))
    }

    /// Triple-ratio term on relabeled points lₖ ↦ l_{σ(k)}.
    pub fn triple_ratio(&self, sigma: &[usize]) -> Factored {
        let d = |a: usize, b: usize, c: usize| self.factored(&[sigma[a], sigma[b], sigma[c]]);
        d(0, 1, 3)
            .mul(&d(1, 2, 4))
            .mul(&d(2, 0, 5))
            .div(&d(0, 1, 4).mul(&d(1, 2, 5)).mul(&d(2, 0, 3)))
    }
}

/// Sampling parameters for random configurations.
#[derive(Clone, Debug)]
pub struct Sampler {
    pub nvars: usize,
    /// Constant parts of coordinates are drawn from [−bound, bound].
    pub bound: i64,
    /// Coefficients of the variables are drawn from [−var_bound, var_bound].
    pub var_bound: i64,
    /// Probability that a coordinate gets a variable part.
    pub var_rate: f64,
    pub max_attempts: usize,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler { nvars: 2, bound: 20, var_bound: 3, var_rate: 0.5, max_attempts: 1000 }
    }
}

impl Sampler {
    fn entry<R: Rng + ?Sized>(&self, rng: &mut R) -> RationalFunction {
        let n = self.nvars;
        let mut p = Polynomial::from_int(rng.random_range(-self.bound..=self.bound), n);
        if self.var_bound > 0 && rng.random_bool(self.var_rate) {
            for v in 0..n {
                let c = rng.random_range(-self.var_bound..=self.var_bound);
                if c != 0 {
                    p = p.add(&Polynomial::var(n, v).scale(&num_rational::BigRational::from_integer(c.into())));
                }
            }
        }
        RationalFunction::from_poly(p)
    }

    /// A generic configuration of m vectors in dimension `dim`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, m: usize, dim: usize) -> Result<Configuration> {
        for _ in 0..self.max_attempts {
            let pts: Vec<Vector> = (0..m).map(|_| (0..dim).map(|_| self.entry(rng)).collect()).collect();
            let Ok(c) = Configuration::new(pts) else { continue };
            if c.is_generic() {
                return Ok(c);
            }
        }
        Err(Error::SamplingExhausted(self.max_attempts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::Derivation;
    use rand::SeedableRng;

    fn ctx(n: usize) -> Context {
        Context::new(Derivation::partial(n, 0))
    }

    #[test]
    fn determinant_examples() {
        let c = Configuration::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(c.determinant(&[0, 1]).unwrap(), RationalFunction::from_int(2, 1));
        let c = Configuration::from_ints(2, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(c.determinant(&[0, 1]).unwrap(), RationalFunction::from_int(2, -2));
        let c = Configuration::from_ints(2, &[&[2, 0, 1, 5], &[1, 3, 0, 2], &[0, 1, 4, 1], &[3, 1, 1, 0]]).unwrap();
        // Value from an independent floating-point determinant.
        assert_eq!(c.determinant(&[0, 1, 2, 3]).unwrap(), RationalFunction::from_int(2, -181));
    }

    #[test]
    fn apex_determinant_is_the_full_one() {
        let c = Configuration::from_ints(2, &[&[1, 2, 0], &[0, 1, 3], &[2, 0, 1]]).unwrap();
        let p = c.project_from(0);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.determinant(&[0, 1]).unwrap(), c.determinant(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn genericity() {
        assert!(Configuration::from_ints(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap().is_generic());
        assert!(!Configuration::from_ints(2, &[&[1, 0], &[2, 0], &[0, 1]]).unwrap().is_generic());
        let c = Configuration::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        assert!(c.is_generic());
    }

    #[test]
    fn boundaries_square_to_zero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let s = Sampler::default();
        let c = s.sample(&mut rng, 4, 2).unwrap();
        assert_eq!(c.boundary_d().len(), 4);
        assert!(c.boundary_d().boundary_d().is_empty());
        let c = s.sample(&mut rng, 5, 3).unwrap();
        assert_eq!(c.boundary_dprime().len(), 5);
        assert!(c.boundary_dprime().boundary_dprime().is_empty());
        let mixed = {
            let mut m = c.boundary_d().boundary_dprime();
            m.add_sum(&c.boundary_dprime().boundary_d(), 1);
            m
        };
        assert!(mixed.is_empty());
    }

    #[test]
    fn cross_ratio_of_standard_points() {
        let cx = Context::new(Derivation::partial(1, 0));
        let c = Configuration::parse("[[0,1],[1,0],[1,1],[t1,1]]", &cx).unwrap();
        assert_eq!(c.cross_ratio().unwrap(), cx.parse("t1").unwrap());
        let swapped = c.permute(&Perm::new(vec![1, 0, 3, 2]));
        assert_eq!(swapped.cross_ratio().unwrap(), c.cross_ratio().unwrap());
        let scaled = c.rescale_points(&[2, -3, 5, 7].map(|k| RationalFunction::from_int(1, k)));
        assert_eq!(scaled.cross_ratio().unwrap(), c.cross_ratio().unwrap());
    }

    #[test]
    fn projected_cross_ratio_by_determinants() {
        let cx = ctx(2);
        let c = Configuration::parse("[[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,t1,t2]]", &cx).unwrap();
        let d = |a, b, e| c.determinant(&[a, b, e]).unwrap();
        let expect = d(0, 1, 4).mul(&d(0, 2, 3)).div(&d(0, 1, 3).mul(&d(0, 2, 4))).unwrap();
        assert_eq!(c.projected_cross_ratio(0).unwrap(), expect);
    }

    #[test]
    fn triple_ratio_factorizations() {
        let cx = ctx(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let c = Sampler::default().sample(&mut rng, 6, 3).unwrap();
        let r3 = c.triple_ratio_term().unwrap();
        for pair in [(1, 2), (2, 0), (0, 1)] {
            let (a, b) = c.factor_triple_ratio(pair).unwrap();
            assert_eq!(a.div(&b).unwrap(), r3, "{pair:?}");
        }
        assert_eq!(c.factor_triple_ratio((3, 4)).unwrap_err(), Error::InvalidPair(3, 4));
        let cyc = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(c.permute(&cyc).triple_ratio_term().unwrap(), r3);
        let t = MinorTable::new(&cx, &c).unwrap();
        assert_eq!(cx.expand(&t.triple_ratio(&[0, 1, 2, 3, 4, 5])), r3);
    }

    #[test]
    fn parse_errors() {
        let cx = ctx(2);
        assert!(Configuration::parse("[[1,0],[0,1]", &cx).is_err());
        assert!(Configuration::parse("[[1,0],[0]]", &cx).is_err());
        assert!(Configuration::parse("[[0,0],[1,1]]", &cx).is_err());
    }
}
