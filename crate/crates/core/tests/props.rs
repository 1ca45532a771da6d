//! Property tests over randomized inputs.

use bosonfft::{
    enumerate_output_states, eval_g, full_distribution, haar_random_unitary, outcome_count,
    permanent_naive, permanent_ryser, probability_via_expansion, probability_via_permanent,
    q_method1, validate_unitary, ComplexMatrix, FockState,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex_matrix(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let (re, im) = entries[i * n + j];
            m.set(i, j, Complex64::new(re, im));
        }
    }
    m
}

/// Round-robin input state with `photons` photons over `modes` modes.
fn spread_input(modes: usize, photons: u32) -> FockState {
    let mut occ = vec![0u32; modes];
    for p in 0..photons {
        occ[p as usize % modes] += 1;
    }
    FockState::new(occ)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ryser_equals_naive_permanent(
        n in 1usize..=7,
        raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 49),
    ) {
        let a = complex_matrix(n, &raw);
        let naive = permanent_naive(&a).unwrap();
        let ryser = permanent_ryser(&a).unwrap();
        let scale = naive.norm().max(1e-30);
        prop_assert!((naive - ryser).norm() / scale <= 1e-10);
    }

    #[test]
    fn haar_matrices_are_unitary(n in 1usize..=7, seed in any::<u64>()) {
        let u = haar_random_unitary(n, seed).unwrap();
        prop_assert!(validate_unitary(&u, 1e-10));
    }

    #[test]
    fn enumeration_count_matches_binomial(modes in 1usize..=6, photons in 0u32..=6) {
        let states = enumerate_output_states(modes, photons).unwrap();
        prop_assert_eq!(states.len() as u128, outcome_count(modes, photons).unwrap());
        let unique: std::collections::HashSet<_> = states.iter().collect();
        prop_assert_eq!(unique.len(), states.len());
        for s in &states {
            prop_assert_eq!(s.total_photons(), photons);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn expansion_equals_permanent(
        modes in 2usize..=4,
        photons in 1u32..=4,
        seed in any::<u64>(),
    ) {
        let u = haar_random_unitary(modes, seed).unwrap();
        let input = spread_input(modes, photons);
        for output in enumerate_output_states(modes, photons).unwrap() {
            let via_permanent = probability_via_permanent(&u, &input, &output).unwrap();
            let via_expansion = probability_via_expansion(&u, &input, &output).unwrap();
            prop_assert!(
                (via_permanent - via_expansion).abs() <= 1e-10,
                "state {}: {} vs {}", output, via_permanent, via_expansion
            );
        }
    }

    #[test]
    fn exact_distributions_are_normalized(
        modes in 2usize..=5,
        photons in 1u32..=5,
        seed in any::<u64>(),
    ) {
        let u = haar_random_unitary(modes, seed).unwrap();
        let input = spread_input(modes, photons);
        let dist = full_distribution(&u, &input).unwrap();
        prop_assert!((dist.total_mass() - 1.0).abs() <= 1e-6);
        for (_, p) in dist.iter() {
            prop_assert!((-1e-12..=1.0 + 1e-9).contains(&p));
        }
    }

    #[test]
    fn generating_function_respects_column_bound(
        modes in 2usize..=4,
        photons in 1u32..=4,
        seed in any::<u64>(),
        t in 0.0f64..1.0,
    ) {
        let u = haar_random_unitary(modes, seed).unwrap();
        let input = spread_input(modes, photons);
        let plan = q_method1(photons, modes).unwrap();
        let bound: f64 = input
            .occupations()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, &c)| {
                let col: f64 = (0..modes).map(|q| u.get(q, p).norm()).sum();
                col.powi(c as i32)
            })
            .product();
        let g = eval_g(t, &u, &input, &plan).unwrap();
        prop_assert!(g.norm() <= bound + 1e-9);
    }

    #[test]
    fn proposals_stay_on_the_photon_shell(
        modes in 2usize..=5,
        photons in 1u32..=5,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = spread_input(modes, photons);
        for _ in 0..64 {
            let next = bosonfft::propose(&state, &mut rng).unwrap();
            prop_assert_eq!(next.total_photons(), photons);
            prop_assert_eq!(next.modes(), modes);
            // Forward transition probability must see the move as legal.
            prop_assert!(bosonfft::transition_prob(&state, &next) > 0.0);
            state = next;
        }
    }
}
