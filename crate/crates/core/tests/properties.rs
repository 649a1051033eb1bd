use num_bigint::BigInt;
use num_rational::BigRational;
use polylog_core::configuration::{MinorTable, Sampler};
use polylog_core::derivation::random_poly;
use polylog_core::field::{coprime_base, normalize, RationalFunction};
use polylog_core::groups::{relator, Relator, RelatorKind};
use polylog_core::realization::{sample_point, Evaluator, PointKind, Precision};
use polylog_core::tensor::{Shape, Tensor};
use polylog_core::field::gcd::gcd;
use polylog_core::{BetaD, Context, Derivation, Weight};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NVARS: usize = 2;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rf(r: &mut ChaCha8Rng) -> RationalFunction {
    rf_of_degree(r, 2)
}

fn rf_of_degree(r: &mut ChaCha8Rng, degree: u32) -> RationalFunction {
    loop {
        let n = random_poly(NVARS, degree, 4, r);
        let d = random_poly(NVARS, degree, 4, r);
        if let Ok(f) = normalize(&n, &d) {
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// A random element avoiding 0 and 1 with nonzero derivative.
fn generic(ctx: &Context, r: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let f = rf(r);
        if !f.is_one() && f.as_constant().is_none() && !ctx.derivation().derive(&f).is_zero() {
            return f;
        }
    }
}

fn ctx(seed: u64) -> Context {
    Context::new(Derivation::random(NVARS, 2, 3, &mut rng(seed ^ 0xd1)))
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (rf(&mut r), rf(&mut r), rf(&mut r));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let a = rf(&mut rng(seed));
        prop_assert_eq!(normalize(a.numer(), a.denom()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), x in -9i64..9, y in -9i64..9) {
        let mut r = rng(seed);
        let (a, b) = (rf(&mut r), rf(&mut r));
        let pt = [q(x), BigRational::new(BigInt::from(y), BigInt::from(7))];
        if let (Ok(va), Ok(vb)) = (a.eval_rational(&pt), b.eval_rational(&pt)) {
            prop_assert_eq!(a.mul(&b).eval_rational(&pt).unwrap(), va * vb);
        }
    }

    #[test]
    fn coprime_base_reconstructs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let legs: Vec<_> = (0..4)
            .map(|_| loop {
                let p = random_poly(NVARS, 2, 5, &mut r).mul(&random_poly(NVARS, 1, 3, &mut r));
                if !p.is_zero() { break p; }
            })
            .collect();
        let (base, factors) = coprime_base(NVARS, &legs);
        for (leg, f) in legs.iter().zip(&factors) {
            let mut acc = RationalFunction::from_int(NVARS, if f.negative { -1 } else { 1 });
            for &(a, e) in &f.powers {
                acc = acc.mul(&RationalFunction::from_poly(base.rational(a)).pow(e).unwrap());
            }
            prop_assert_eq!(acc, RationalFunction::from_poly(leg.clone()));
        }
        let leaves = base.leaves();
        for (i, &a) in leaves.iter().enumerate() {
            for &b in &leaves[i + 1..] {
                if base.is_poly(a) && base.is_poly(b) {
                    let (_, pa) = base.rational(a).to_primitive_integer();
                    let (_, pb) = base.rational(b).to_primitive_integer();
                    prop_assert!(gcd(&pa, &pb).is_constant());
                }
            }
        }
    }

    #[test]
    fn tensors_are_multilinear_and_torsion_free(seed in any::<u64>()) {
        let c = ctx(seed);
        let mut r = rng(seed);
        let (a, b, f, g) = (rf(&mut r), rf(&mut r), rf(&mut r), rf(&mut r));
        let t = |coef: &RationalFunction, leg: &RationalFunction| {
            Tensor::from_terms(&c, Shape::FWedge(1), &[(coef.clone(), vec![leg.clone()])]).unwrap()
        };
        prop_assert!(t(&a.add(&b), &f).equals(&c, &t(&a, &f).add(&t(&b, &f)).unwrap()).unwrap());
        prop_assert!(t(&a, &f.mul(&g)).equals(&c, &t(&a, &f).add(&t(&a, &g)).unwrap()).unwrap());
        prop_assert!(t(&a, &f.neg()).equals(&c, &t(&a, &f)).unwrap());
        let w = Tensor::from_terms(&c, Shape::FWedge(2), &[(a.clone(), vec![f.clone(), f.clone()])]).unwrap();
        prop_assert!(w.is_zero(&c));
        let e = t(&a, &f);
        let zero_term = t(&RationalFunction::zero(NVARS), &g);
        prop_assert!(e.equals(&c, &e.add(&zero_term).unwrap()).unwrap());
    }

    #[test]
    fn beta2_relators_vanish(seed in any::<u64>()) {
        let c = ctx(seed);
        let mut r = rng(seed);
        let (a, b) = (generic(&c, &mut r), generic(&c, &mut r));
        for kind in [RelatorKind::FiveTermB2, RelatorKind::FiveTermBetaD, RelatorKind::FourTermBeta2] {
            match relator(&c, kind, &[a.clone(), b.clone()]) {
                Ok(rel) => prop_assert!(matches!(rel.boundary(&c).unwrap(),
                    polylog_core::groups::Boundary::Tensor(t) if t.is_zero(&c))),
                Err(polylog_core::Error::DegenerateRelator(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        for kind in [RelatorKind::TwoTerm, RelatorKind::Inversion, RelatorKind::Distribution2] {
            if let Ok(rel @ Relator::BetaD(_)) = relator(&c, kind, std::slice::from_ref(&a)) {
                prop_assert!(matches!(rel.boundary(&c).unwrap(),
                    polylog_core::groups::Boundary::Tensor(t) if t.is_zero(&c)));
            }
        }
    }

    #[test]
    fn mid_differential_squares_to_zero(seed in any::<u64>()) {
        let c = ctx(seed);
        let mut r = rng(seed);
        let mut e = BetaD::new(Weight::Three);
        let x = generic(&c, &mut r);
        e.add_rf(&c, &x, &c.coeff_of(&rf(&mut r))).unwrap();
        prop_assert!(e.partial_d3(&c).unwrap().partial_mid(&c).unwrap().is_zero(&c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (rf_of_degree(&mut r, 1), rf_of_degree(&mut r, 2));
        let d = Derivation::random(NVARS, 1, 3, &mut r);
        prop_assert_eq!(d.derive(&f.mul(&g)), f.mul(&d.derive(&g)).add(&g.mul(&d.derive(&f))));
        let quotient = g.mul(&d.derive(&f)).sub(&f.mul(&d.derive(&g))).div(&g.mul(&g)).unwrap();
        prop_assert_eq!(d.derive(&f.div(&g).unwrap()), quotient);
        prop_assert_eq!(
            f.mul(&g).partial_derivative(0).unwrap(),
            f.mul(&g.partial_derivative(0).unwrap()).add(&g.mul(&f.partial_derivative(0).unwrap()))
        );
    }

    #[test]
    fn dlog_is_a_homomorphism(seed in any::<u64>(), n in 1i64..4, lambda in 1i64..50) {
        let mut r = rng(seed);
        let (f, g) = (rf_of_degree(&mut r, 1), rf_of_degree(&mut r, 2));
        let d = Derivation::random(NVARS, 1, 3, &mut r);
        prop_assert_eq!(d.dlog(&f.mul(&g)).unwrap(), d.dlog(&f).unwrap().add(&d.dlog(&g).unwrap()));
        prop_assert_eq!(d.dlog(&f.pow(n).unwrap()).unwrap(), d.dlog(&f).unwrap().scale(&q(n)));
        prop_assert_eq!(d.dlog(&f.scale(&q(-lambda))).unwrap(), d.dlog(&f).unwrap());
    }

    #[test]
    fn kahler_image_of_partial_vanishes(seed in any::<u64>()) {
        let c = ctx(seed);
        let mut r = rng(seed);
        let mut e = BetaD::new(Weight::Two);
        for _ in 0..2 {
            let x = generic(&c, &mut r);
            e.add_rf(&c, &x, &c.coeff_of(&rf_of_degree(&mut r, 1))).unwrap();
        }
        let d = e.partial_d2(&c).unwrap();
        prop_assert!(d.dlog_realize(&c).unwrap().iter().all(|v| v.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn boundaries_square_to_zero(seed in any::<u64>(), m in 4usize..7) {
        let mut r = rng(seed);
        let cfg = Sampler::default().sample(&mut r, m, 3).unwrap();
        prop_assert!(cfg.boundary_d().boundary_d().is_empty());
        prop_assert!(cfg.boundary_dprime().boundary_dprime().is_empty());
    }

    #[test]
    fn cross_ratio_identity(seed in any::<u64>()) {
        let c = ctx(seed);
        let cfg = Sampler::default().sample(&mut rng(seed), 4, 2).unwrap();
        let m = MinorTable::new(&c, &cfg).unwrap();
        let d = |i, j| m.value(&[i, j]);
        prop_assert_eq!(d(0, 1).mul(&d(2, 3)), d(0, 2).mul(&d(1, 3)).sub(&d(0, 3).mul(&d(1, 2))));
    }

    #[test]
    fn ratios_are_scale_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cfg = Sampler::default().sample(&mut r, 6, 3).unwrap();
        let lambdas: Vec<_> = (0..6).map(|k| RationalFunction::from_int(NVARS, k + 2)).collect();
        let scaled = cfg.rescale_points(&lambdas).rescale_volume(&rf_of_degree(&mut r, 1));
        prop_assert_eq!(cfg.triple_ratio_term().unwrap(), scaled.triple_ratio_term().unwrap());
        prop_assert_eq!(cfg.select(&[0, 1, 2, 3, 4]).projected_cross_ratio(0).unwrap(),
                        scaled.select(&[0, 1, 2, 3, 4]).projected_cross_ratio(0).unwrap());
        for pair in [(1, 2), (0, 2), (0, 1)] {
            let (r1, r2) = cfg.factor_triple_ratio(pair).unwrap();
            prop_assert_eq!(r1.div(&r2).unwrap(), cfg.triple_ratio_term().unwrap());
        }
    }

    #[test]
    fn fingerprints_are_linear_and_respect_equality(seed in any::<u64>()) {
        let c = ctx(seed);
        let mut r = rng(seed);
        let (a, b, f, g) = (rf(&mut r), rf(&mut r), rf(&mut r), rf(&mut r));
        let t1 = Tensor::from_terms(&c, Shape::FWedge(2), &[(a.clone(), vec![f.clone(), g.clone()])]).unwrap();
        let t2 = Tensor::from_terms(&c, Shape::FWedge(2), &[(b.clone(), vec![g.mul(&f), f.clone()])]).unwrap();
        let same = Tensor::from_terms(&c, Shape::FWedge(2), &[(a.neg(), vec![g.clone(), f.clone()])]).unwrap();
        prop_assert!(t1.equals(&c, &same).unwrap());
        let atoms: Vec<_> = [&t1, &t2].iter().flat_map(|t| t.terms().keys().flatten().copied().collect::<Vec<_>>()).collect();
        let mut pts: Vec<Evaluator<'_>> = (0..3)
            .map(|_| sample_point(&c, &mut r, PointKind::Real, Precision(30), |ev| {
                for &a in &atoms { ev.log_abs_atom(a)?; }
                for t in [&t1, &t2] { for k in t.terms().values() { ev.coeff(k)?; } }
                Ok(true)
            }).unwrap())
            .collect();
        let fp = |t: &Tensor, pts: &mut [Evaluator<'_>]| polylog_core::realization::log_fingerprint(t, pts).unwrap();
        let sum = fp(&t1.add(&t2).unwrap(), &mut pts);
        let parts = fp(&t1, &mut pts) + fp(&t2, &mut pts);
        let scale = 1.0 + polylog_core::realization::magnitude(&parts);
        prop_assert!(polylog_core::realization::magnitude(&(sum - parts)) < 1e-20 * scale);
        let diff = fp(&t1, &mut pts) - fp(&same, &mut pts);
        prop_assert!(polylog_core::realization::magnitude(&diff) < 1e-20 * scale);
    }
}

#[test]
fn constant_leg_fingerprint_is_log_two() {
    let c = ctx(0);
    let t = Tensor::from_terms(&c, Shape::FWedge(1), &[(RationalFunction::one(NVARS), vec![RationalFunction::from_int(NVARS, 2)])]).unwrap();
    let mut r = rng(0);
    let mut pts: Vec<_> = (0..2)
        .map(|_| sample_point(&c, &mut r, PointKind::Real, Precision(30), |_| Ok(true)).unwrap())
        .collect();
    let v = polylog_core::realization::log_fingerprint(&t, &mut pts).unwrap();
    assert!((v.real().to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
}
