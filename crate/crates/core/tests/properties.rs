use hypereig::oracle::{brute_force_count, exponent_to_vector, residual, Complex};
use hypereig::spectral::exponent_space;
use hypereig::{
    count_first, count_h, enumerate_bipartitions, enumerate_eigenvectors, gen_power, gen_random_connected,
    parse_hypergraph, zero_spectrum_report, ComplexVector64, EigenKind, Hypergraph, IntMatrix, Parity, TensorKind,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, m: usize, n: usize, extra: usize) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gen_random_connected(n.max(m), m, extra, &mut rng).unwrap()
}

fn small() -> impl Strategy<Value = Hypergraph> {
    (
        any::<u64>(),
        prop::sample::select(vec![2usize, 3, 4, 6]),
        2usize..=7,
        0usize..=4,
    )
        .prop_map(|(seed, m, n, extra)| instance(seed, m, n, extra))
}

fn medium() -> impl Strategy<Value = Hypergraph> {
    (
        any::<u64>(),
        prop::sample::select(vec![2usize, 3, 4, 5, 6, 8, 9, 12]),
        2usize..=14,
        0usize..=8,
    )
        .prop_map(|(seed, m, n, extra)| instance(seed, m, n, extra))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn counts_match_exhaustive_search(h in small()) {
        let b: IntMatrix = h.incidence_matrix().to_matrix();
        let m = h.m() as u64;
        let lap = brute_force_count(&b, &vec![0; h.k()], m, true).unwrap();
        prop_assert_eq!(count_first(&h, EigenKind::Laplacian).unwrap(), BigUint::from(lap));
        if m % 2 == 0 {
            let half = (m / 2) as i64;
            let sig = brute_force_count(&b, &vec![half; h.k()], m, true).unwrap();
            prop_assert_eq!(count_first(&h, EigenKind::Signless).unwrap(), BigUint::from(sig));
            let even = brute_force_count(&b, &vec![0; h.k()], 2, true).unwrap();
            let odd = brute_force_count(&b, &vec![1; h.k()], 2, true).unwrap();
            prop_assert_eq!(count_h(&h, EigenKind::Laplacian).unwrap(), BigUint::from(even));
            prop_assert_eq!(count_h(&h, EigenKind::Signless).unwrap(), BigUint::from(odd));
        } else {
            prop_assert_eq!(count_first(&h, EigenKind::Signless).unwrap(), BigUint::from(0u32));
        }
    }

    #[test]
    fn reports_are_self_consistent(h in medium()) {
        let r = zero_spectrum_report(&h).unwrap();
        prop_assert_eq!(&r.count_n_laplacian.0 + &r.count_h_laplacian.0, r.count_laplacian.0.clone());
        prop_assert_eq!(&r.count_n_signless.0 + &r.count_h_signless.0, r.count_signless.0.clone());
        let order: BigUint = r.module_structure.iter().map(|&d| BigUint::from(d)).product();
        prop_assert_eq!(order, r.count_laplacian.0.clone());
        prop_assert_eq!(hypereig::ZeroSpectrumReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn enumerated_vectors_are_eigenvectors(h in small()) {
        for kind in [EigenKind::Laplacian, EigenKind::Signless] {
            let total = count_first(&h, kind).unwrap();
            let mut seen = std::collections::HashSet::new();
            for alpha in enumerate_eigenvectors(&h, kind, 200).unwrap() {
                prop_assert!(alpha.satisfies(&h, kind));
                let x: ComplexVector64 = exponent_to_vector(&alpha);
                let r = residual(&h, TensorKind::from(kind), Complex::new(0.0, 0.0), &x).unwrap();
                prop_assert!(r < 1e-9);
                prop_assert!(seen.insert(alpha));
            }
            prop_assert_eq!(BigUint::from(seen.len()), total.min(BigUint::from(200u32)));
        }
    }

    #[test]
    fn bipartitions_match_their_parity(h in small()) {
        prop_assume!(h.m() % 2 == 0);
        for parity in [Parity::Even, Parity::Odd] {
            for part in enumerate_bipartitions(&h, parity, 64).unwrap() {
                for e in h.edges() {
                    let inside = e.iter().filter(|&&v| part.sides()[v] == 1).count();
                    prop_assert_eq!(inside % 2 == 1, parity == Parity::Odd);
                }
            }
        }
    }

    #[test]
    fn text_format_round_trips(h in medium()) {
        prop_assert_eq!(parse_hypergraph(&h.to_string()).unwrap(), h.clone());
        prop_assert_eq!(parse_hypergraph(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn pinned_space_is_a_coset(h in small()) {
        let Some(sig) = exponent_space(&h, EigenKind::Signless).unwrap() else {
            return Ok(());
        };
        let lap = exponent_space(&h, EigenKind::Laplacian).unwrap().unwrap();
        prop_assert_eq!(&sig.free_moduli, &lap.free_moduli);
        if sig.is_consistent() {
            prop_assert_eq!(sig.cardinality(), lap.cardinality());
        }
    }
}

#[test]
fn graph_powers_against_exhaustive_counts() {
    let c5 = Hypergraph::new(5, 2, (0..5).map(|i| vec![i, (i + 1) % 5]).collect()).unwrap();
    let path = Hypergraph::new(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
    for g in [c5, path] {
        let h = gen_power(&g, 4).unwrap();
        let b: IntMatrix = h.incidence_matrix().to_matrix();
        for (kind, c) in [(EigenKind::Laplacian, 0), (EigenKind::Signless, 2)] {
            let exhaustive = brute_force_count(&b, &vec![c; h.k()], 4, true).unwrap();
            assert_eq!(count_first(&h, kind).unwrap(), BigUint::from(exhaustive));
        }
    }
    // two 3-vertex blocks per edge: block sums s with 2s = 3 (mod 6) around an odd cycle
    let c5 = Hypergraph::new(5, 2, (0..5).map(|i| vec![i, (i + 1) % 5]).collect()).unwrap();
    let r = zero_spectrum_report(&gen_power(&c5, 6).unwrap()).unwrap();
    assert!(!r.odd_colorable);
    assert_eq!(r.count_signless, 0);
}
