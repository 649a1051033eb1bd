use num_bigint::BigInt;
use num_rational::BigRational;
use polylog_core::configuration::Sampler;
use polylog_core::groups::{mid_scalar_ratio, verify_mid_equal, NumericOptions};
use polylog_core::morphisms::*;
use polylog_core::{Configuration, Context, Derivation, MidElement, Shape, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx() -> Context {
    Context::new(Derivation::logistic(2, &[0, 1]))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn four_point_example_loses_its_fifth_term() {
    let c = ctx();
    let cfg = Configuration::parse("[[0,1],[1,0],[1,1],[t1,1],[t2,1]]", &c).unwrap();
    let beta = on_sum_beta(&c, &cfg.boundary_d(), Weight::Two, tau1_2).unwrap();
    assert_eq!(beta.terms().len(), 5);
    assert!(beta.partial_d2(&c).unwrap().is_zero(&c));
    let cath = beta.to_cathelineau(&c).unwrap();
    assert_eq!(cath.terms().len(), 4);
    assert!(cath.partial(&c).unwrap().is_zero(&c));
}

#[test]
fn claim1_square_commutes() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let s = Sampler::default();
    for _ in 0..10 {
        let cfg = s.sample(&mut rng, 4, 2).unwrap();
        let lhs = tau1_2(&c, &cfg).unwrap().partial_d2(&c).unwrap();
        let rhs = on_sum_tensor(&c, &cfg.boundary_d(), Shape::FWedge(1), tau0_2).unwrap();
        assert!(lhs.equals(&c, &rhs).unwrap());
    }
}

#[test]
fn tau1_2_of_boundary_in_kernel() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = Sampler::default().sample(&mut rng, 5, 2).unwrap();
    let b = on_sum_beta(&c, &cfg.boundary_d(), Weight::Two, tau1_2).unwrap();
    assert!(b.partial_d2(&c).unwrap().is_zero(&c));
}

#[test]
fn claim3a_square_commutes() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let s = Sampler::default();
    for _ in 0..2 {
        let cfg = s.sample(&mut rng, 5, 3).unwrap();
        let lhs = on_sum_tensor(&c, &cfg.boundary_d(), Shape::FWedge(2), tau0_3).unwrap();
        let rhs = tau1_3(&c, &cfg).unwrap().partial_mid(&c).unwrap();
        assert!(lhs.equals(&c, &rhs).unwrap());
    }
}

#[test]
fn claim3b_holds_up_to_minus_four() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = Sampler::default().sample(&mut rng, 6, 3).unwrap();
    let lhs = tau2_3(&c, &cfg).unwrap().partial_d3(&c).unwrap();
    let rhs = on_sum_mid(&c, &cfg.boundary_d(), tau1_3).unwrap();
    assert_eq!(mid_scalar_ratio(&c, &lhs, &rhs).unwrap(), Some(q(-4, 1)));
    let rescaled = tau2_3_scaled(&c, &cfg, &q(-1, 90)).unwrap().partial_d3(&c).unwrap();
    let opts = NumericOptions { trials: 2, ..Default::default() };
    let v = verify_mid_equal(&c, &rescaled, &rhs, &opts, &mut rng).unwrap();
    assert!(v.passed(), "{v:?}");
}

#[test]
fn alternation_sum_has_cyclic_symmetry() {
    use polylog_core::configuration::MinorTable;
    use polylog_core::permutation::{symmetric_group, Perm};
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let cfg = Sampler::default().sample(&mut rng, 6, 3).unwrap();
    let m = MinorTable::new(&c, &cfg).unwrap();
    let cyc = Perm::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]]);
    for s in symmetric_group(6).iter().step_by(37) {
        let a = c.canonical(&m.triple_ratio(&s.0));
        let b = c.canonical(&m.triple_ratio(&s.compose(&cyc).0));
        assert_eq!(a, b);
    }
}

#[test]
fn projected_five_term_vanishes() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let cfg = Sampler::default().sample(&mut rng, 5, 3).unwrap();
    assert!(projected_five_term_b2(&c, &cfg).unwrap().delta2(&c).unwrap().is_zero(&c));
    assert!(projected_five_term_beta(&c, &cfg).unwrap().partial_d2(&c).unwrap().is_zero(&c));
}

#[test]
fn remark_alld_compositions_vanish() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let s = Sampler::default();
    let c4 = s.sample(&mut rng, 4, 3).unwrap();
    assert!(on_sum_tensor(&c, &c4.boundary_dprime(), Shape::FWedge(1), tau0_2).unwrap().is_zero(&c));
    let c5 = s.sample(&mut rng, 5, 3).unwrap();
    let b = on_sum_beta(&c, &c5.boundary_dprime(), Weight::Two, tau1_2).unwrap();
    assert!(!b.is_empty());
    assert!(b.partial_d2(&c).unwrap().is_zero(&c));
    let c54 = s.sample(&mut rng, 5, 4).unwrap();
    assert!(on_sum_tensor(&c, &c54.boundary_dprime(), Shape::FWedge(2), tau0_3).unwrap().is_zero(&c));
    for n in 2..=5 {
        let cfg = s.sample(&mut rng, n + 2, n + 1).unwrap();
        let t = on_sum_tensor(&c, &cfg.boundary_dprime(), Shape::FWedge((n - 1) as u8), |c, x| tau0_n(c, x, n));
        assert!(t.unwrap().is_zero(&c), "n = {n}");
    }
}

#[test]
fn mid_zero_is_zero() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let v = verify_mid_equal(&c, &MidElement::zero(), &MidElement::zero(), &NumericOptions::default(), &mut rng);
    assert!(v.unwrap().passed());
}
