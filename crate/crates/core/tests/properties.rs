use hydrogen_fd::coordinate::{eigen_data, energy_shift_ratio};
use hydrogen_fd::numerics::{int, rat, surd_arith, surd_to_float, QuadraticSurd, Rational, SurdOp};
use hydrogen_fd::pollaczek::{
    beta_coeff, closed_first_branch, closed_second_branch, mass_point, pollaczek_mass_closed,
    pollaczek_seq,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| rat(p, q))
}

fn radicand() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(2)), Just(int(3)), Just(rat(5, 4)), Just(rat(10, 9)), Just(int(7))]
}

fn surd_in(d: Rational) -> impl Strategy<Value = QuadraticSurd> {
    (small_rational(), small_rational())
        .prop_map(move |(a, b)| QuadraticSurd::new(a, b, d.clone()).unwrap())
}

fn triple() -> impl Strategy<Value = (QuadraticSurd, QuadraticSurd, QuadraticSurd)> {
    radicand().prop_flat_map(|d| (surd_in(d.clone()), surd_in(d.clone()), surd_in(d)))
}

fn ulps_apart(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    let (ia, ib) = (a.to_bits() as i64, b.to_bits() as i64);
    if (ia < 0) != (ib < 0) {
        return u64::MAX;
    }
    ia.abs_diff(ib)
}

proptest! {
    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            let inv = surd_arith(&QuadraticSurd::one(), &x, SurdOp::Div).unwrap();
            prop_assert_eq!(&x * &inv, QuadraticSurd::one());
            prop_assert_eq!(surd_arith(&(&y * &x), &x, SurdOp::Div).unwrap(), y.clone());
        }
        prop_assert_eq!(surd_arith(&x, &x, SurdOp::Sub).unwrap(), QuadraticSurd::zero());
    }

    #[test]
    fn rational_parts_stay_reduced((x, y, _z) in triple()) {
        let p = &x * &y;
        for r in [p.rational_part(), p.surd_part()] {
            prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
            prop_assert!(r.denom() > &num_bigint::BigInt::zero());
        }
    }

    #[test]
    fn float_embedding_is_multiplicative((x, y, _z) in triple()) {
        let prod = surd_to_float(&(&x * &y), 128).unwrap();
        let split = surd_to_float(&x, 128).unwrap() * surd_to_float(&y, 128).unwrap();
        prop_assert!(ulps_apart(prod, split) <= 4 || (prod - split).abs() < 1e-300,
            "{prod} vs {split}");
    }

    #[test]
    fn float_embedding_is_monotone_in_parts(a in small_rational(), b in small_rational(), d in radicand()) {
        let x = QuadraticSurd::new(a.clone(), b.clone(), d.clone()).unwrap();
        let bump = rat(1, 1000);
        let xa = QuadraticSurd::new(&a + &bump, b.clone(), d.clone()).unwrap();
        let xb = QuadraticSurd::new(a, &b + &bump, d).unwrap();
        prop_assert!(xa.to_f64() >= x.to_f64());
        prop_assert!(xb.to_f64() >= x.to_f64());
    }

    #[test]
    fn pow_agrees_with_repeated_multiplication(x in radicand().prop_flat_map(surd_in), e in 0u64..12) {
        let mut expect = QuadraticSurd::one();
        for _ in 0..e {
            expect = &expect * &x;
        }
        prop_assert_eq!(x.pow(e), expect);
    }

    #[test]
    fn beta_is_symmetric(j in 0usize..40, m in 0usize..40) {
        prop_assert_eq!(beta_coeff(j, m), beta_coeff(m, j));
    }

    #[test]
    fn mass_point_identities(m in 0usize..30, p in 0i64..50, q in 1i64..20) {
        let mp = mass_point(m, &rat(p, q));
        let d = mp.radicand();
        let one = QuadraticSurd::rational_in(int(1), &d);
        let s = QuadraticSurd::rational_in(mp.s.clone(), &d);
        prop_assert_eq!(&mp.x * &mp.x, &one + &(&s * &s));
        prop_assert_eq!(&mp.q * &(&mp.x + &s), one);
        if p > 0 {
            prop_assert!(mp.decays());
        }
    }

    #[test]
    fn closed_form_branches_agree_everywhere(m in 0usize..6, j in 0usize..14, p in 1i64..7) {
        // The first branch is valid for all j; the second for j >= m.
        let mp = mass_point(m, &rat(p, 2));
        let first = closed_first_branch(j, &mp);
        let rec = pollaczek_seq(&mp.delta, mp.x.clone(), j);
        prop_assert_eq!(&first, rec.last());
        if j >= m {
            prop_assert_eq!(closed_second_branch(j, &mp), first);
        }
    }

    #[test]
    fn eigen_data_invariants(n in 1usize..20, p in 0i64..30, q in 1i64..10) {
        prop_assert!(eigen_data(n, &rat(p, q)).unwrap().invariants_hold());
    }
}

#[test]
fn closed_form_equals_recursion_on_the_grid() {
    for delta in [rat(1, 2), int(1), rat(3, 2)] {
        for m in 0..=10 {
            let mp = mass_point(m, &delta);
            let rec = pollaczek_seq(&delta, mp.x.clone(), 60);
            for j in 0..=60 {
                assert_eq!(pollaczek_mass_closed(j, &mp), rec.values[j], "j={j} m={m} δ={delta}");
            }
            assert_eq!(closed_first_branch(m, &mp), closed_second_branch(m, &mp));
        }
    }
}

#[test]
fn chebyshev_reduction_in_floats() {
    for i in 1..40 {
        let theta = 0.07 * i as f64;
        let seq = pollaczek_seq(&int(0), theta.cos(), 25);
        for (j, v) in seq.values.iter().enumerate() {
            let expect = ((j + 1) as f64 * theta).sin() / theta.sin();
            assert!(hydrogen_fd::Tolerance::default().close(*v, expect) || (v - expect).abs() < 1e-9);
        }
    }
}

#[test]
fn energy_shift_converges() {
    for n in 1..=3usize {
        let target = 1.0 / (8.0 * (n as f64).powi(4));
        for delta in [rat(1, 5), rat(1, 10), rat(1, 20)] {
            let ratio = energy_shift_ratio(n, &delta).unwrap();
            assert!((ratio / target - 1.0).abs() < 0.10, "n={n} δ={delta}: {ratio}");
        }
    }
}
