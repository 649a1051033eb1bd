//! Append-only gcd-free multiplicative base.
//!
//! Atoms are primitive integer polynomials with positive leading coefficient,
//! or positive integers (primes, or pairwise coprime cofactors too large to
//! trial-divide). When a new factor shares a proper divisor with an atom, the
//! atom is retired and keeps its expansion into the pieces, so ids handed out
//! earlier stay meaningful. Signs are never recorded.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::{certify_coprime, gcd_primitive, ModImage};
use super::poly::{IntPoly, Polynomial};

pub type AtomId = u32;

/// Sparse exponent vector over atoms, sorted by id, no zero entries.
pub type Powers = Vec<(AtomId, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomValue {
    Int(BigInt),
    Poly(IntPoly),
}

#[derive(Clone, Debug)]
struct PolyData {
    poly: IntPoly,
    rational: Polynomial,
    support: u64,
    image: ModImage,
}

#[derive(Clone, Debug)]
struct Atom {
    value: AtomValue,
    poly: Option<PolyData>,
    split: Option<Powers>,
}

const SMALL_PRIME_LIMIT: u32 = 1000;

#[derive(Clone, Debug)]
pub struct CoprimeBase {
    nvars: usize,
    atoms: Vec<Atom>,
    poly_index: HashMap<IntPoly, AtomId>,
    int_index: HashMap<BigInt, AtomId>,
    poly_leaves: Vec<AtomId>,
    big_int_leaves: Vec<AtomId>,
    cache: HashMap<IntPoly, Powers>,
    small_primes: Vec<u32>,
}

pub(crate) fn merge_powers(it: impl IntoIterator<Item = (AtomId, i64)>) -> Powers {
    let mut m: BTreeMap<AtomId, i64> = BTreeMap::new();
    for (a, e) in it {
        *m.entry(a).or_insert(0) += e;
    }
    m.into_iter().filter(|&(_, e)| e != 0).collect()
}

fn primes_below(n: u32) -> Vec<u32> {
    let mut sieve = vec![true; n as usize];
    let mut out = Vec::new();
    for i in 2..n as usize {
        if sieve[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j < n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

impl CoprimeBase {
    pub fn new(nvars: usize) -> Self {
        CoprimeBase {
            nvars,
            atoms: Vec::new(),
            poly_index: HashMap::new(),
            int_index: HashMap::new(),
            poly_leaves: Vec::new(),
            big_int_leaves: Vec::new(),
            cache: HashMap::new(),
            small_primes: primes_below(SMALL_PRIME_LIMIT),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of atoms ever registered, retired ones included.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_leaf(&self, id: AtomId) -> bool {
        self.atoms[id as usize].split.is_none()
    }

    pub fn is_poly(&self, id: AtomId) -> bool {
        matches!(self.atoms[id as usize].value, AtomValue::Poly(_))
    }

    pub fn value(&self, id: AtomId) -> &AtomValue {
        &self.atoms[id as usize].value
    }

    /// The atom as a polynomial over ℚ (integers become constants).
    pub fn rational(&self, id: AtomId) -> Polynomial {
        let a = &self.atoms[id as usize];
        match (&a.value, &a.poly) {
            (_, Some(p)) => p.rational.clone(),
            (AtomValue::Int(n), None) => Polynomial::constant(self.nvars, n.clone().into()),
            _ => unreachable!("polynomial atom without data"),
        }
    }

    /// Current leaves, in registration order.
    pub fn leaves(&self) -> Vec<AtomId> {
        (0..self.atoms.len() as AtomId).filter(|&i| self.is_leaf(i)).collect()
    }

    /// Expansion of an atom over current leaves.
    pub fn expand(&self, id: AtomId) -> Powers {
        match &self.atoms[id as usize].split {
            None => vec![(id, 1)],
            Some(parts) => merge_powers(
                parts
                    .iter()
                    .flat_map(|&(p, e)| self.expand(p).into_iter().map(move |(l, k)| (l, k * e))),
            ),
        }
    }

    /// Rewrites a power vector over current leaves.
    pub fn canonical(&self, powers: &[(AtomId, i64)]) -> Powers {
        if powers.iter().all(|&(a, _)| self.is_leaf(a)) {
            return powers.to_vec();
        }
        merge_powers(
            powers
                .iter()
                .flat_map(|&(a, e)| self.expand(a).into_iter().map(move |(l, k)| (l, k * e))),
        )
    }

    /// Factors a primitive polynomial with positive leading coefficient.
    pub fn factor_poly(&mut self, p: &IntPoly) -> Powers {
        debug_assert_eq!(p.nvars(), self.nvars);
        if p.is_constant() {
            return Vec::new();
        }
        if let Some(c) = self.cache.get(p) {
            let c = c.clone();
            return self.canonical(&c);
        }
        let mut out: Vec<(AtomId, i64)> = Vec::new();
        let mut work: Vec<(IntPoly, i64)> = vec![(p.clone(), 1)];
        while let Some((f, e)) = work.pop() {
            if f.is_constant() {
                continue;
            }
            if let Some(&id) = self.poly_index.get(&f) {
                out.extend(self.expand(id).into_iter().map(|(l, k)| (l, k * e)));
                continue;
            }
            let image = ModImage::of(&f);
            let support = f.support();
            let mut hit = None;
            for &id in &self.poly_leaves {
                let pd = self.atoms[id as usize].poly.as_ref().expect("poly leaf");
                let shared = support & pd.support;
                if shared == 0 || certify_coprime(&image, &pd.image, shared) {
                    continue;
                }
                let g = gcd_primitive(&f, &pd.poly);
                if !g.is_constant() {
                    hit = Some((id, g));
                    break;
                }
            }
            match hit {
                None => {
                    let id = self.push_poly(f, image);
                    out.push((id, e));
                }
                Some((id, g)) => {
                    let atom = self.atoms[id as usize].poly.as_ref().unwrap().poly.clone();
                    if g == atom {
                        let rest = f.div_exact(&atom).expect("atom divides factor");
                        out.push((id, e));
                        work.push((rest, e));
                    } else {
                        self.split_poly(id, &g);
                        work.push((f, e));
                    }
                }
            }
        }
        let out = self.canonical(&merge_powers(out));
        self.cache.insert(p.clone(), out.clone());
        out
    }

    fn push_poly(&mut self, poly: IntPoly, image: ModImage) -> AtomId {
        let id = self.atoms.len() as AtomId;
        let data = PolyData { rational: poly.to_rational(), support: poly.support(), image, poly: poly.clone() };
        self.atoms.push(Atom { value: AtomValue::Poly(poly.clone()), poly: Some(data), split: None });
        self.poly_index.insert(poly, id);
        self.poly_leaves.push(id);
        id
    }

    fn split_poly(&mut self, id: AtomId, g: &IntPoly) {
        let atom = self.atoms[id as usize].poly.as_ref().unwrap().poly.clone();
        let h = atom.div_exact(g).expect("gcd divides atom");
        self.poly_leaves.retain(|&l| l != id);
        self.atoms[id as usize].split = Some(Vec::new());
        let mut parts = self.factor_poly(g);
        parts.extend(self.factor_poly(&h));
        self.atoms[id as usize].split = Some(merge_powers(parts));
    }

    /// Factors a positive integer.
    pub fn factor_int(&mut self, n: &BigInt) -> Powers {
        assert!(n.is_positive(), "factor_int expects a positive integer");
        let mut m = n.clone();
        let mut out = Vec::new();
        for i in 0..self.small_primes.len() {
            if m.is_one() {
                break;
            }
            let p = BigInt::from(self.small_primes[i]);
            let mut e = 0;
            loop {
                let (q, r) = m.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            if e > 0 {
                let id = self.int_atom(p);
                out.push((id, e));
            }
        }
        if !m.is_one() {
            out.extend(self.factor_big_int(m));
        }
        self.canonical(&merge_powers(out))
    }

    fn int_atom(&mut self, n: BigInt) -> AtomId {
        if let Some(&id) = self.int_index.get(&n) {
            return id;
        }
        let id = self.atoms.len() as AtomId;
        self.atoms.push(Atom { value: AtomValue::Int(n.clone()), poly: None, split: None });
        if n.to_u32().is_none_or(|v| v >= SMALL_PRIME_LIMIT) {
            self.big_int_leaves.push(id);
        }
        self.int_index.insert(n, id);
        id
    }

    fn factor_big_int(&mut self, n: BigInt) -> Powers {
        let mut out = Vec::new();
        let mut work = vec![(n, 1i64)];
        while let Some((f, e)) = work.pop() {
            if f.is_one() {
                continue;
            }
            if let Some(&id) = self.int_index.get(&f) {
                out.extend(self.expand(id).into_iter().map(|(l, k)| (l, k * e)));
                continue;
            }
            let mut hit = None;
            for &id in &self.big_int_leaves {
                let AtomValue::Int(a) = &self.atoms[id as usize].value else { unreachable!() };
                let g = f.gcd(a);
                if !g.is_one() {
                    hit = Some((id, a.clone(), g));
                    break;
                }
            }
            match hit {
                None => {
                    let id = self.int_atom(f);
                    out.push((id, e));
                }
                Some((id, a, g)) => {
                    if g == a {
                        out.push((id, e));
                        work.push((f / a, e));
                    } else {
                        self.big_int_leaves.retain(|&l| l != id);
                        self.atoms[id as usize].split = Some(Vec::new());
                        let mut parts = self.factor_big_int(g.clone());
                        parts.extend(self.factor_big_int(a / g));
                        self.atoms[id as usize].split = Some(merge_powers(parts));
                        work.push((f, e));
                    }
                }
            }
        }
        merge_powers(out)
    }
}

/// `leg = ±∏ atomᵉ`; integer atoms absorb the rational constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegFactors {
    pub negative: bool,
    pub powers: Powers,
}

/// Builds a base from a list of nonzero legs, in order.
pub fn coprime_base(nvars: usize, legs: &[Polynomial]) -> (CoprimeBase, Vec<LegFactors>) {
    let mut base = CoprimeBase::new(nvars);
    let mut out = Vec::with_capacity(legs.len());
    for leg in legs {
        assert!(!leg.is_zero(), "coprime_base: zero leg");
        let (c, p) = leg.to_primitive_integer();
        let mut powers = base.factor_poly(&p);
        powers.extend(base.factor_int(&c.numer().abs()));
        powers.extend(base.factor_int(c.denom()).into_iter().map(|(a, e)| (a, -e)));
        out.push(LegFactors { negative: c.is_negative(), powers: merge_powers(powers) });
    }
    for f in &mut out {
        f.powers = base.canonical(&f.powers);
    }
    (base, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_polynomial;
    use crate::field::poly::default_names;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &default_names(2)).unwrap()
    }

    fn leaf_polys(b: &CoprimeBase) -> Vec<String> {
        let mut v: Vec<String> = b
            .leaves()
            .into_iter()
            .map(|id| b.rational(id).to_string())
            .collect();
        v.sort();
        v
    }

    /// Checks `leg · ∏_{e<0} atom^{-e} = ±∏_{e>0} atom^e`.
    fn reconstructs(b: &CoprimeBase, leg: &Polynomial, f: &LegFactors) -> bool {
        let mut num = Polynomial::one(b.nvars());
        let mut den = Polynomial::one(b.nvars());
        for &(a, e) in &f.powers {
            if e > 0 {
                num = num.mul(&b.rational(a).pow(e as u32));
            } else {
                den = den.mul(&b.rational(a).pow((-e) as u32));
            }
        }
        let lhs = leg.mul(&den);
        lhs == if f.negative { num.neg() } else { num }
    }

    #[test]
    fn splits_difference_of_squares() {
        let (b, f) = coprime_base(2, &[p("t1^2 - 1"), p("t1 - 1")]);
        assert_eq!(leaf_polys(&b), vec!["t1 + 1", "t1 - 1"]);
        assert_eq!(f[0].powers.len(), 2);
        assert!(reconstructs(&b, &p("t1^2 - 1"), &f[0]));
        assert!(reconstructs(&b, &p("t1 - 1"), &f[1]));
    }

    #[test]
    fn single_atom() {
        let (b, f) = coprime_base(2, &[p("t1")]);
        assert_eq!(leaf_polys(&b), vec!["t1"]);
        assert_eq!(f[0].powers, vec![(0, 1)]);
    }

    #[test]
    fn integer_legs() {
        let legs = [p("6"), p("-10/3")];
        let (b, f) = coprime_base(2, &legs);
        assert_eq!(leaf_polys(&b), vec!["2", "3", "5"]);
        assert!(f[1].negative);
        assert!(reconstructs(&b, &legs[0], &f[0]));
        assert!(reconstructs(&b, &legs[1], &f[1]));
    }

    #[test]
    fn retired_atom_expands() {
        let mut b = CoprimeBase::new(2);
        let big = p("(t1 - 1)*(t1 + t2)^2").to_primitive_integer().1;
        let first = b.factor_poly(&big);
        assert_eq!(first.len(), 1);
        let small = p("t1 + t2").to_primitive_integer().1;
        let second = b.factor_poly(&small);
        assert_eq!(second.len(), 1);
        let old = first[0].0;
        assert!(!b.is_leaf(old));
        let ex = b.canonical(&first);
        assert_eq!(ex.len(), 2);
        assert!(ex.contains(&(second[0].0, 2)));
    }

    #[test]
    fn large_integer_cofactors_split() {
        let mut b = CoprimeBase::new(1);
        let p1 = BigInt::from(1_000_003u64);
        let p2 = BigInt::from(1_000_033u64);
        let x = b.factor_int(&(&p1 * &p2));
        assert_eq!(x.len(), 1);
        let y = b.factor_int(&(&p1 * &p1));
        assert_eq!(y.len(), 1);
        assert_eq!(y[0].1, 2);
        assert_eq!(b.canonical(&x).len(), 2);
    }
}
