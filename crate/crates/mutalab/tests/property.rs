//! Property-based tests over randomly generated valid quivers.

use num_integer::Integer;
use proptest::prelude::*;

use mutalab::quiver::{Permutation, ValuedQuiver};
use mutalab::symmetry::{symmetry_witness, symmetry_witness_exhaustive};
use mutalab::word::MutationWord;

/// Builds a valid quiver from a symmetrizer and per-pair couplings:
/// `b_ij = s * m * d_j / g`, `b_ji = -s * m * d_i / g` with
/// `g = gcd(d_i, d_j)` satisfies the symmetrizer equation by
/// construction. Couplings producing entries above 4 are dropped so the
/// generated quivers stay within the documented finite-weight regime.
fn assemble(d: &[i64], couplings: &[(i64, bool)]) -> ValuedQuiver {
    let n = d.len();
    let mut rows = vec![vec![0i64; n]; n];
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            let (m, flip) = couplings[idx];
            idx += 1;
            if m == 0 {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let (a, b) = (m * d[j] / g, m * d[i] / g);
            if a > 4 || b > 4 {
                continue;
            }
            let s = if flip { -1 } else { 1 };
            rows[i][j] = s * a;
            rows[j][i] = -s * b;
        }
    }
    ValuedQuiver::new(&rows, Some(d.to_vec())).expect("valid by construction")
}

fn quiver_strategy(max_n: usize) -> impl Strategy<Value = ValuedQuiver> {
    (2..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(1i64..=4, n),
            prop::collection::vec((0i64..=2, any::<bool>()), n * (n - 1) / 2),
        )
            .prop_map(|(d, couplings)| assemble(&d, &couplings))
    })
}

proptest! {
    #[test]
    fn mutation_is_an_involution(q in quiver_strategy(6), k in 1usize..=6) {
        let k = 1 + (k - 1) % q.rank();
        let twice = q.mutate(k).unwrap().mutate(k).unwrap();
        prop_assert_eq!(twice, q);
    }

    #[test]
    fn matrix_and_valuation_rule_engines_agree(q in quiver_strategy(6)) {
        for k in 1..=q.rank() {
            prop_assert_eq!(q.mutate(k).unwrap(), q.mutate_by_rules(k).unwrap());
        }
    }

    #[test]
    fn mutation_preserves_the_symmetrizer(q in quiver_strategy(6), k in 1usize..=6) {
        let k = 1 + (k - 1) % q.rank();
        let m = q.mutate(k).unwrap();
        prop_assert_eq!(m.symmetrizer(), q.symmetrizer());
        // the mutated matrix revalidates against the carried symmetrizer
        prop_assert!(ValuedQuiver::new(&m.matrix(), Some(m.symmetrizer().to_vec())).is_ok());
    }

    #[test]
    fn mutation_commutes_with_relabeling(
        q in quiver_strategy(5),
        images in prop::collection::vec(0usize..120, 1),
    ) {
        let n = q.rank();
        let sigma = nth_permutation(n, images[0]);
        for k in 1..=n {
            let lhs = q.mutate(k).unwrap().permute(&sigma).unwrap();
            let rhs = q.permute(&sigma).unwrap().mutate(sigma.apply(k)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pruned_witness_search_matches_exhaustive(
        a in quiver_strategy(5),
        b in quiver_strategy(5),
    ) {
        if a.rank() == b.rank() {
            prop_assert_eq!(
                symmetry_witness(&a, &b).unwrap(),
                symmetry_witness_exhaustive(&a, &b).unwrap()
            );
        }
        // a quiver against its own mutation exercises the near-miss case
        let m = a.mutate(1).unwrap();
        prop_assert_eq!(
            symmetry_witness(&a, &m).unwrap(),
            symmetry_witness_exhaustive(&a, &m).unwrap()
        );
    }

    #[test]
    fn applying_a_word_equals_applying_its_reduction(
        q in quiver_strategy(5),
        letters in prop::collection::vec(1usize..=5, 0..8),
    ) {
        let n = q.rank();
        let letters: Vec<usize> = letters.into_iter().map(|l| 1 + (l - 1) % n).collect();
        let word = MutationWord::new(letters, n).unwrap();
        let direct = mutalab::loops::apply(&q, &word).unwrap();
        let reduced = mutalab::loops::apply(&q, &word.reduce()).unwrap();
        prop_assert_eq!(direct, reduced);
    }
}

/// The `i`-th permutation of `1..=n` in some fixed order (factoradic).
fn nth_permutation(n: usize, mut i: usize) -> Permutation {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut images = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        images.push(pool.remove(i % k));
        i /= k;
    }
    Permutation::from_images(images).expect("bijection by construction")
}
