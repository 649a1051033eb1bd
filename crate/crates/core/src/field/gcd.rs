//! Multivariate gcd over ℤ.
//!
//! Recursive: strip contents with respect to a main variable, run the
//! subresultant remainder sequence on the primitive parts. A cheap modular
//! image test certifies coprimality first, which is the common case.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use smallvec::SmallVec;

use super::poly::{bigint_mod, mulmod, powmod, IntPoly, Monomial};

/// 2^61 − 1.
const PRIME: u64 = 2_305_843_009_213_693_951;

/// gcd with integer content included; positive leading coefficient.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_signed();
    }
    if b.is_zero() {
        return a.primitive_signed();
    }
    let (ca, pa) = a.primitive();
    let (cb, pb) = b.primitive();
    let c = ca.abs().gcd(&cb.abs());
    let g = gcd_primitive(&pa, &pb);
    if c.is_one() {
        g
    } else {
        g.scale(&c)
    }
}

impl IntPoly {
    fn primitive_signed(&self) -> IntPoly {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// gcd of primitive polynomials with positive leading coefficients.
pub fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return IntPoly::one(n);
    }
    if a == b {
        return a.clone();
    }
    let shared = a.support() & b.support();
    if shared == 0 {
        return IntPoly::one(n);
    }
    // A variable present in only one side cannot occur in the gcd.
    let only_a = a.support() & !shared;
    if only_a != 0 {
        let v = only_a.trailing_zeros() as usize;
        let c = content_wrt(a, v);
        return gcd_primitive(&c.primitive().1, b);
    }
    let only_b = b.support() & !shared;
    if only_b != 0 {
        let v = only_b.trailing_zeros() as usize;
        let c = content_wrt(b, v);
        return gcd_primitive(a, &c.primitive().1);
    }
    if certify_coprime(&ModImage::of(a), &ModImage::of(b), shared) {
        return IntPoly::one(n);
    }
    let v = (0..n)
        .filter(|&v| shared & (1 << v) != 0)
        .min_by_key(|&v| a.degree_in(v).min(b.degree_in(v)))
        .expect("shared variable");
    let ua = to_uni(a, v);
    let ub = to_uni(b, v);
    let ca = gcd_list(&ua);
    let cb = gcd_list(&ub);
    let c = gcd(&ca, &cb);
    let pa = uni_div(&ua, &ca);
    let pb = uni_div(&ub, &cb);
    let g = subresultant(pa, pb);
    let g = if g.len() == 1 {
        IntPoly::one(n)
    } else {
        let cg = gcd_list(&g);
        from_uni(&uni_div(&g, &cg), v)
    };
    let out = g.mul(&c);
    out.primitive().1
}

/// gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_wrt(p: &IntPoly, v: usize) -> IntPoly {
    gcd_list(&to_uni(p, v))
}

fn gcd_list(ps: &[IntPoly]) -> IntPoly {
    let n = ps.first().map(|p| p.nvars()).unwrap_or(0);
    let mut acc = IntPoly::zero(n);
    for p in ps {
        if p.is_zero() {
            continue;
        }
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Dense coefficient list in `v`; index is the power of `v`.
type Uni = Vec<IntPoly>;

fn to_uni(p: &IntPoly, v: usize) -> Uni {
    let n = p.nvars();
    let d = p.degree_in(v) as usize;
    let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
    for (m, c) in p.terms() {
        let e = m.exps()[v] as usize;
        let mut m2 = m.clone();
        m2.0[v] = 0;
        buckets[e].push((m2, c.clone()));
    }
    buckets.into_iter().map(|t| IntPoly::from_terms(n, t)).collect()
}

fn from_uni(u: &Uni, v: usize) -> IntPoly {
    let n = u[0].nvars();
    let mut terms = Vec::new();
    for (e, c) in u.iter().enumerate() {
        for (m, k) in c.terms() {
            let mut m2 = m.clone();
            m2.0[v] = e as u32;
            terms.push((m2, k.clone()));
        }
    }
    IntPoly::from_terms(n, terms)
}

fn uni_div(u: &Uni, d: &IntPoly) -> Uni {
    if d.is_one() {
        return u.clone();
    }
    u.iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(u: &mut Uni) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn is_zero_uni(u: &Uni) -> bool {
    u.iter().all(|c| c.is_zero())
}

/// Pseudo-remainder prem(f, g) = lc(g)^(deg f − deg g + 1)·f mod g.
fn prem(f: &Uni, g: &Uni) -> Uni {
    let dg = g.len() - 1;
    let lg = g[dg].clone();
    let mut r = f.clone();
    let mut e = (f.len() - 1) as i64 - dg as i64 + 1;
    while !is_zero_uni(&r) && r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(&lg);
        }
        for (i, gc) in g.iter().enumerate() {
            r[i + s] = r[i + s].sub(&gc.mul(&lr));
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let k = lg.pow(e as u32);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    r
}

fn subresultant(mut f: Uni, mut g: Uni) -> Uni {
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let n = f[0].nvars();
    let mut gg = IntPoly::one(n);
    let mut h = IntPoly::one(n);
    loop {
        let delta = (f.len() - g.len()) as u32;
        let r = prem(&f, &g);
        if is_zero_uni(&r) {
            return g;
        }
        if r.len() == 1 {
            return vec![IntPoly::one(n)];
        }
        f = g;
        let div = gg.mul(&h.pow(delta));
        g = uni_div(&r, &div);
        gg = f.last().expect("nonempty").clone();
        h = match delta {
            0 => h,
            1 => gg.clone(),
            _ => gg
                .pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update is exact"),
        };
    }
}

/// Univariate images modulo a word prime, one per variable in the support,
/// obtained by fixing every other variable at a pseudo-random residue.
#[derive(Clone, Debug)]
pub struct ModImage {
    per_var: SmallVec<[Option<Vec<u64>>; 4]>,
}

fn point_residue(i: usize) -> u64 {
    // splitmix64 of the index; fixed so that results are reproducible
    let mut z = (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) % PRIME
}

impl ModImage {
    pub fn of(p: &IntPoly) -> Self {
        let n = p.nvars();
        let support = p.support();
        let point: Vec<u64> = (0..n).map(point_residue).collect();
        let mut per_var = SmallVec::new();
        for v in 0..n {
            if support & (1 << v) == 0 {
                per_var.push(None);
                continue;
            }
            let d = p.degree_in(v) as usize;
            let mut img = vec![0u64; d + 1];
            for (m, c) in p.terms() {
                let mut t = bigint_mod(c, PRIME);
                for (i, &e) in m.exps().iter().enumerate() {
                    if i != v && e > 0 {
                        t = mulmod(t, powmod(point[i], e as u64, PRIME), PRIME);
                    }
                }
                let slot = &mut img[m.exps()[v] as usize];
                *slot = (*slot + t) % PRIME;
            }
            // A vanishing leading coefficient makes the image useless.
            per_var.push((img[d] != 0).then_some(img));
        }
        ModImage { per_var }
    }
}

/// True only if gcd(a, b) is certainly constant. `false` means "unknown".
pub fn certify_coprime(a: &ModImage, b: &ModImage, shared: u64) -> bool {
    for v in 0..a.per_var.len() {
        if shared & (1 << v) == 0 {
            continue;
        }
        match (&a.per_var[v], &b.per_var[v]) {
            (Some(x), Some(y)) => {
                if uni_gcd_degree_mod(x, y) > 0 {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

fn inv_mod(a: u64) -> u64 {
    powmod(a, PRIME - 2, PRIME)
}

fn uni_gcd_degree_mod(a: &[u64], b: &[u64]) -> usize {
    let mut x: Vec<u64> = a.to_vec();
    let mut y: Vec<u64> = b.to_vec();
    let norm = |p: &mut Vec<u64>| {
        while p.len() > 1 && *p.last().unwrap() == 0 {
            p.pop();
        }
    };
    norm(&mut x);
    norm(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            return if y[0] == 0 { x.len() - 1 } else { 0 };
        }
        // x mod y
        let dy = y.len() - 1;
        let inv = inv_mod(y[dy]);
        while x.len() > dy && !(x.len() == 1 && x[0] == 0) {
            let dx = x.len() - 1;
            let k = mulmod(x[dx], inv, PRIME);
            let s = dx - dy;
            for (i, &c) in y.iter().enumerate() {
                x[i + s] = (x[i + s] + PRIME - mulmod(k, c, PRIME)) % PRIME;
            }
            x.pop();
            norm(&mut x);
            if x.is_empty() {
                x.push(0);
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
}

/// Exposed so tests can compare against the recursive path.
pub fn gcd_no_shortcut(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (ca, pa) = a.primitive();
    let (cb, pb) = b.primitive();
    let c = ca.abs().gcd(&cb.abs());
    if pa.is_constant() || pb.is_constant() {
        return IntPoly::constant(a.nvars(), c);
    }
    let v = (pa.support() & pb.support()).trailing_zeros() as usize;
    if v >= a.nvars() {
        return IntPoly::constant(a.nvars(), c);
    }
    let ua = to_uni(&pa, v);
    let ub = to_uni(&pb, v);
    let cc = gcd(&gcd_list(&ua), &gcd_list(&ub));
    let g = subresultant(uni_div(&ua, &gcd_list(&ua)), uni_div(&ub, &gcd_list(&ub)));
    let g = if g.len() == 1 {
        IntPoly::one(a.nvars())
    } else {
        from_uni(&uni_div(&g, &gcd_list(&g)), v)
    };
    g.mul(&cc).primitive().1.scale(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_polynomial;

    fn z(s: &str, n: usize) -> IntPoly {
        parse_polynomial(s, &crate::field::poly::default_names(n))
            .unwrap()
            .to_primitive_integer()
            .1
    }

    #[test]
    fn common_linear_factor() {
        let a = z("t1^2 - 1", 2);
        let b = z("t1^2 - 2*t1 + 1", 2);
        assert_eq!(gcd(&a, &b), z("t1 - 1", 2));
    }

    #[test]
    fn bivariate_common_factor() {
        let f = z("t1*t2 + 3*t1 - t2^2", 2);
        let a = f.mul(&z("t1 + t2 + 1", 2));
        let b = f.mul(&z("t1 - 2*t2", 2)).mul(&z("t2 + 5", 2));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_certified() {
        let a = z("t1*t2 + 1", 2);
        let b = z("t1 + t2", 2);
        assert!(certify_coprime(&ModImage::of(&a), &ModImage::of(&b), a.support() & b.support()));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn certificate_never_claims_shared_factor_coprime() {
        let f = z("t1 - t2 + 2", 2);
        let a = f.mul(&z("t1 + 1", 2));
        let b = f.mul(&z("t2 + 7", 2));
        assert!(!certify_coprime(&ModImage::of(&a), &ModImage::of(&b), 0b11));
    }

    #[test]
    fn factor_free_of_main_variable() {
        // gcd is t2 + 1, which does not involve t1
        let a = z("t1*t2 + t1 + t2^2 + t2", 2);
        let b = z("t2^2 - 1", 2);
        assert_eq!(gcd(&a, &b), z("t2 + 1", 2));
    }

    #[test]
    fn integer_content_kept() {
        let a = IntPoly::constant(1, BigInt::from(6));
        let b = IntPoly::constant(1, BigInt::from(10));
        assert_eq!(gcd(&a, &b), IntPoly::constant(1, BigInt::from(2)));
    }

    #[test]
    fn trivariate() {
        let f = z("t1*t3 - t2 + 1", 3);
        let a = f.pow(2).mul(&z("t3 + t1", 3));
        let b = f.mul(&z("t2*t3 + 4", 3));
        assert_eq!(gcd(&a, &b), f);
        assert_eq!(gcd_no_shortcut(&a, &b), f);
    }
}
