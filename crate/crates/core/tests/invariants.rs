use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use fracpart_core::asymptotics::{gamma_product_partial, integrate_f, EXP_NEG_GAMMA};
use fracpart_core::frac_dp::{
    b_series_exact, b_series_float, bnk_exact, sample_f, ColumnSweep, Resolution,
};
use fracpart_core::gf::{
    bell_series, bell_triangle, euler_product_b, sawin_coeffs, sawin_partial_sums,
};
use fracpart_core::partition::{brute_force_sum, enumerate_partitions, Partition, WeightScheme};
use fracpart_core::series::{ExactSeries, PowerSeries};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn triangle_matches_enumeration() {
    let t = bnk_exact(30).unwrap();
    for n in 0..=30 {
        assert_eq!(
            t.row_sum(n),
            brute_force_sum(n, WeightScheme::ReciprocalProduct).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn triangle_matches_euler_product() {
    let b = b_series_exact(200).unwrap();
    let gf = euler_product_b::<BigRational>(200).unwrap();
    assert_eq!(b.values(), gf.coeffs());
}

#[test]
fn exact_series_strictly_increasing() {
    let b = b_series_exact(300).unwrap();
    assert!(b.get(0).is_one() && b.get(1).is_one());
    for n in 2..=300 {
        assert!(b.get(n) > b.get(n - 1), "n = {n}");
    }
}

#[test]
fn twisted_coefficients_are_second_differences() {
    let c = sawin_coeffs::<BigRational>(200).unwrap();
    let b = b_series_exact(200).unwrap();
    let at = |i: isize| {
        if i < 0 {
            BigRational::zero()
        } else {
            b.get(i as usize).clone()
        }
    };
    for n in 0..=200isize {
        assert_eq!(
            *c.coeff(n as usize),
            at(n) - at(n - 1) * r(2, 1) + at(n - 2)
        );
    }
    let tails = sawin_partial_sums(200).unwrap();
    let bound = r(41488, 10000);
    assert!(tails.iter().all(|t| t.abs_partial_sum <= bound));
}

#[test]
fn cycle_and_factorial_schemes() {
    for n in 1..=40 {
        assert!(brute_force_sum(n, WeightScheme::CycleIndex)
            .unwrap()
            .is_one());
    }
    let bells = bell_triangle(25);
    let series = bell_series(25).unwrap();
    let mut fact = BigUint::one();
    for (n, bell) in bells.iter().enumerate().skip(1) {
        fact *= BigUint::from(n as u32);
        let d = brute_force_sum(n, WeightScheme::FactorialCycle).unwrap();
        let scaled = d.clone() * BigRational::from_integer(fact.clone().into());
        assert!(scaled.is_integer());
        assert_eq!(scaled.to_integer(), bell.clone().into());
        assert_eq!(*series.coeff(n), d);
    }
}

#[test]
fn float_columns_positive_and_finite() {
    let mut sweep = ColumnSweep::new(20000);
    while let Some((k, col)) = sweep.next_column() {
        for (n, v) in col.iter().enumerate().skip(k) {
            assert!(v.is_finite() && *v > 0.0, "b({n},{k}) = {v}");
        }
    }
    let b = b_series_float(20000);
    assert!(b.values().iter().all(|v| v.is_finite() && *v > 0.0));
}

#[test]
fn float_boundaries() {
    let b = fracpart_core::bnk_float(500).unwrap();
    for n in 1..=500 {
        assert_eq!(b.get(n, 1), 1.0);
        assert!((b.get(n, n) - 1.0 / n as f64).abs() <= 1e-15 / n as f64 * 4.0);
    }
}

#[test]
fn f_sample_shape() {
    let s = sample_f(2000, Resolution::from_ratio(1, 100).unwrap()).unwrap();
    assert_eq!(s.points.len(), 100);
    assert!(s.values().all(|v| v > 0.0 && v <= 1.0));
    assert_eq!(s.points[99].k, 2000);
    let c = integrate_f(&s).unwrap();
    assert!(c > 0.5 && c < 0.6, "{c}");
    assert_eq!(s, sample_f(2000, Resolution::unit(100).unwrap()).unwrap());
}

#[test]
fn trapezoid_refinement_is_consistent() {
    let est = |m| integrate_f(&sample_f(2000, Resolution::unit(m).unwrap()).unwrap()).unwrap();
    let (coarse, mid, fine) = (est(100), est(200), est(400));
    assert!(
        (fine - mid).abs() < 2.0 * (mid - coarse).abs(),
        "{coarse} {mid} {fine}"
    );
}

#[test]
fn harmonic_product_converges_monotonically() {
    let mut last = 0.0;
    for m in [10, 30, 100, 300, 1000, 3000, 10_000, 100_000] {
        let v = gamma_product_partial(m);
        assert!(v > last && v < EXP_NEG_GAMMA);
        assert!(EXP_NEG_GAMMA - v < 1.0 / m as f64);
        last = v;
    }
}

#[test]
fn enumeration_count_matches_table() {
    let t = fracpart_core::p_table(50).unwrap();
    for n in 0..=50 {
        assert_eq!(
            BigUint::from(enumerate_partitions(n).count()),
            t.row_sum(n),
            "n = {n}"
        );
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| r(n, d))
}

fn series_of(order: usize) -> impl Strategy<Value = ExactSeries> {
    proptest::collection::vec(rational(), order + 1)
        .prop_map(move |v| PowerSeries::truncated(order, v))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn mul_commutes_and_associates((a, b, c) in (1usize..=64).prop_flat_map(|o| (series_of(o), series_of(o), series_of(o)))) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn inverse_is_inverse(a in (1usize..=40).prop_flat_map(series_of)) {
        prop_assume!(!a.coeff(0).is_zero());
        let one = ExactSeries::one(a.order());
        prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
    }

    #[test]
    fn exp_log_round_trip(a in (1usize..=32).prop_flat_map(series_of)) {
        let mut c = a.into_coeffs();
        c[0] = BigRational::zero();
        let z = PowerSeries::truncated(c.len() - 1, c);
        prop_assert_eq!(z.exp().unwrap().log().unwrap(), z);
    }

    #[test]
    fn exp_is_a_homomorphism((a, b) in (1usize..=16).prop_flat_map(|o| (series_of(o), series_of(o)))) {
        let zero_const = |s: ExactSeries| {
            let mut c = s.into_coeffs();
            c[0] = BigRational::zero();
            PowerSeries::truncated(c.len() - 1, c)
        };
        let (a, b) = (zero_const(a), zero_const(b));
        prop_assert_eq!(a.add(&b).unwrap().exp().unwrap(), a.exp().unwrap().mul(&b.exp().unwrap()).unwrap());
    }

    #[test]
    fn frequency_vector_round_trip(n in 0usize..=25, skip in 0usize..2000) {
        let count = enumerate_partitions(n).count();
        let p = enumerate_partitions(n).nth(skip % count).unwrap();
        let f = p.frequencies();
        prop_assert_eq!(f.n(), n);
        prop_assert_eq!(f.to_partition(), p.clone());
        prop_assert_eq!(Partition::new(p.parts().to_vec()).unwrap(), p);
    }
}
