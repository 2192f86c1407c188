use proptest::prelude::*;
use vilenkin::{
    approximation_error, asymptotic_ratio, cesaro_mean, character, dirichlet_kernel, fejer_kernel,
    forward, forward_naive, gen_random, inverse, lp_norm, partial_sum, vilenkin_char, CesaroTable,
    Complex64, Exponent, ModulusProfile, RadixStructure, Spectrum, StepFunction,
};

/// Radix sequences with at most 5 levels and at most 2000 grid points.
fn structures() -> impl Strategy<Value = RadixStructure> {
    prop::collection::vec(2usize..=5, 1..=5)
        .prop_filter("grid too large", |m| m.iter().product::<usize>() <= 2000)
        .prop_map(|m| RadixStructure::new(m).unwrap())
}

fn with_function() -> impl Strategy<Value = (RadixStructure, StepFunction)> {
    (structures(), any::<u64>()).prop_map(|(st, seed)| {
        let f = gen_random(seed, st.level(), &st).unwrap();
        (st, f)
    })
}

fn exponents() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        Just(Exponent::ONE),
        Just(Exponent::TWO),
        Just(Exponent::Infinity),
        (1.0f64..6.0).prop_map(|p| Exponent::new(p).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(st in structures(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let size = st.size();
        let (x, y, z) = (
            st.point_at(a % size).unwrap(),
            st.point_at(b % size).unwrap(),
            st.point_at(c % size).unwrap(),
        );
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        prop_assert_eq!(x.add(&st.zero()).unwrap(), x.clone());
        prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        prop_assert_eq!(x.sub(&y).unwrap().add(&y).unwrap(), x);
    }

    #[test]
    fn index_digits_round_trip(st in structures(), n in any::<usize>()) {
        let n = n % st.size();
        let idx = st.index(n).unwrap();
        let value = idx
            .digits()
            .iter()
            .zip(st.cumulative())
            .map(|(d, m)| d * m)
            .sum::<usize>();
        prop_assert_eq!(value, n);
        prop_assert!(idx.digits().iter().zip(st.radices()).all(|(d, m)| d < m));
    }

    #[test]
    fn coset_sizes_match_haar_measure(st in structures(), a in any::<usize>(), r in 0usize..6) {
        let r = r % (st.level() + 1);
        let x = st.point_at(a % st.size()).unwrap();
        let target = x.coset_index(r).unwrap();
        let count = (0..st.size())
            .filter(|&l| st.point_at(l).unwrap().coset_index(r).unwrap() == target)
            .count();
        prop_assert_eq!(count, st.size() / st.coset_count(r));
    }

    #[test]
    fn characters_are_multiplicative(st in structures(), n in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let size = st.size();
        let idx = st.index(n % size).unwrap();
        let (x, y) = (st.point_at(a % size).unwrap(), st.point_at(b % size).unwrap());
        let lhs = vilenkin_char(&idx, &x.add(&y).unwrap()).unwrap();
        let rhs = vilenkin_char(&idx, &x).unwrap() * vilenkin_char(&idx, &y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn transform_round_trip_and_parseval((_st, f) in with_function()) {
        let spec = forward(&f);
        prop_assert!(inverse(&spec).max_distance(&f).unwrap() < 1e-10);
        let energy = f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() / f.values().len() as f64;
        let coeffs: f64 = spec.coeffs().iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((energy - coeffs).abs() <= 1e-10 * energy);
    }

    #[test]
    fn translation_multiplies_coefficients_by_characters((st, f) in with_function(), h in any::<usize>()) {
        let h = st.point_at(h % st.size()).unwrap();
        let shifted = forward(&f.translate(&h).unwrap());
        let spec = forward(&f);
        for n in 0..st.size() {
            let psi = vilenkin_char(&st.index(n).unwrap(), &h).unwrap();
            prop_assert!((shifted.coeffs()[n] - psi * spec.coeffs()[n]).norm() < 1e-10);
        }
    }

    #[test]
    fn fast_transform_matches_oracle((_st, f) in with_function()) {
        let fast = forward(&f);
        let slow = forward_naive(&f).unwrap();
        prop_assert!(fast.max_distance(&slow).unwrap() < 1e-10);
    }

    #[test]
    fn kernels_integrate_to_one(st in structures(), n in any::<usize>()) {
        let n = 1 + n % st.size();
        let d = dirichlet_kernel(&st, n).unwrap().mean();
        let k = fejer_kernel(&st, n).unwrap().mean();
        prop_assert!((d - 1.0).norm() < 1e-12);
        prop_assert!((k - 1.0).norm() < 1e-12);
    }

    #[test]
    fn cesaro_asymptotics(order in -0.95f64..1.0, n in 100usize..20000) {
        let residual = (asymptotic_ratio(order, n) - 1.0).abs();
        prop_assert!(residual <= (order * (order + 1.0)).abs() / n as f64 + 1e-6);
    }

    #[test]
    fn cesaro_tables_are_positive_above_minus_one(order in -0.99f64..2.0, n in 0usize..500) {
        let table = CesaroTable::new(order, n).unwrap();
        prop_assert_eq!(table.values().len(), n + 1);
        prop_assert!(table.values().iter().all(|&a| a > 0.0));
    }

    #[test]
    fn means_are_linear_and_kill_high_characters(
        (st, f) in with_function(),
        seed in any::<u64>(),
        n in any::<usize>(),
        order in -0.95f64..1.0,
    ) {
        let n = n % st.size();
        let g = gen_random(seed, st.level(), &st).unwrap();
        let (a, b) = (Complex64::new(0.5, -1.5), Complex64::new(2.0, 0.25));
        let combined = f.combine(a, &g, b).unwrap();
        let lhs = cesaro_mean(&forward(&combined), n, order).unwrap();
        let rhs = cesaro_mean(&forward(&f), n, order)
            .unwrap()
            .combine(a, &cesaro_mean(&forward(&g), n, order).unwrap(), b)
            .unwrap();
        prop_assert!(lhs.max_distance(&rhs).unwrap() < 1e-10);
        if n + 1 < st.size() {
            let high = Spectrum::unit(&st, n + 1).unwrap();
            let mean = cesaro_mean(&high, n, order).unwrap();
            prop_assert!(mean.values().iter().all(|v| v.norm() < 1e-12));
        }
    }

    #[test]
    fn modulus_profile_bounds((st, f) in with_function(), p in exponents()) {
        let prof = ModulusProfile::compute(&f, p);
        let norm = lp_norm(&f, p);
        prop_assert!(prof.omegas.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        prop_assert!(prof.omegas.iter().all(|&w| w <= 2.0 * norm + 1e-12));
        prop_assert_eq!(prof.omega(st.level()), 0.0);
        // projection onto level-r polynomials is within the modulus
        let spec = forward(&f);
        for r in 0..=st.level() {
            let proj = partial_sum(&spec, st.coset_count(r)).unwrap();
            let err = lp_norm(&f.sub(&proj).unwrap(), p);
            prop_assert!(err <= prof.omega(r) + 1e-10);
        }
    }

    #[test]
    fn error_is_translation_invariant((st, f) in with_function(), h in any::<usize>(), n in any::<usize>(), alpha in 0.05f64..0.95, p in exponents()) {
        let h = st.point_at(h % st.size()).unwrap();
        let n = n % st.size();
        let a = approximation_error(&f, n, alpha, p).unwrap();
        let b = approximation_error(&f.translate(&h).unwrap(), n, alpha, p).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn csv_and_json_round_trip((st, f) in with_function()) {
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        prop_assert_eq!(&StepFunction::read_csv(&st, buf.as_slice()).unwrap(), &f);
        prop_assert_eq!(&StepFunction::from_json(f.to_json().unwrap().as_bytes()).unwrap(), &f);
        let spec = forward(&f);
        let mut buf = Vec::new();
        spec.write_csv(&mut buf).unwrap();
        prop_assert_eq!(&Spectrum::read_csv(&st, buf.as_slice()).unwrap(), &spec);
        prop_assert_eq!(&Spectrum::from_json(spec.to_json().unwrap().as_bytes()).unwrap(), &spec);
    }

    #[test]
    fn characters_transform_to_unit_vectors(st in structures(), j in any::<usize>()) {
        let j = j % st.size();
        let spec = forward(&character(&st, j).unwrap());
        prop_assert!(spec.max_distance(&Spectrum::unit(&st, j).unwrap()).unwrap() < 1e-10);
    }
}
