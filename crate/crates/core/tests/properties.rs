//! Property tests over randomly generated finite orders.

use proptest::prelude::*;

use latmon_core::bitset::Bitset;
use latmon_core::iso::{are_isomorphic, canonical_code, permuted};
use latmon_core::lattice::{BoundedLattice, Carrier};
use latmon_core::poset::FinitePoset;

/// Covers only point upward in index order, so the relation is acyclic by
/// construction and `from_cover_indices` always succeeds.
fn arb_poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |picks| {
            let covers: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&picks)
                .filter_map(|(&p, &keep)| keep.then_some(p))
                .collect();
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            FinitePoset::from_cover_indices(labels, &covers).expect("acyclic by construction")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_laws_and_frame_agreement(p in arb_poset(5)) {
        if let Ok(l) = BoundedLattice::from_poset(p) {
            let n = l.size();
            for x in 0..n {
                for y in 0..n {
                    let leq = l.poset().leq(x, y);
                    prop_assert_eq!(leq, l.meet(x, y) == x);
                    prop_assert_eq!(leq, l.join(x, y) == y);
                    prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                    prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                }
            }
            prop_assert!(l.tables_consistent());
            let frame = l.frame_witness(100_000).unwrap().is_none();
            prop_assert_eq!(frame, l.is_distributive());
        }
    }

    #[test]
    fn isomorphism_is_invariant_under_relabelling(p in arb_poset(5), seed in any::<u64>()) {
        let n = p.size();
        let mut perm: Vec<usize> = (0..n).collect();
        // Cheap deterministic shuffle from the seed.
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let q = permuted(&p, &perm);
        prop_assert_eq!(canonical_code(&p), canonical_code(&q));
        let iso = are_isomorphic(&Carrier::Poset(p.clone()), &Carrier::Poset(q.clone()));
        prop_assert!(iso.is_some());
        let iso = iso.unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(p.leq(x, y), q.leq(iso[x], iso[y]));
            }
        }
    }

    #[test]
    fn downset_enumeration_is_canonical_and_closed(p in arb_poset(5)) {
        let all = p.all_downsets();
        for d in &all {
            prop_assert!(p.is_down_closed(d));
        }
        for w in all.windows(2) {
            prop_assert_eq!(w[0].canonical_cmp(&w[1]), std::cmp::Ordering::Less);
        }
        // Budgeted prefixes agree with the full enumeration.
        let k = all.len().div_ceil(2);
        let (prefix, truncated) = p.downsets_budgeted(k);
        prop_assert_eq!(truncated, k < all.len());
        prop_assert_eq!(&prefix[..], &all[..prefix.len()]);
        // Completeness: every down-closed subset is listed.
        let n = p.size();
        let mut count = 0u64;
        for mask in 0u64..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if p.is_down_closed(&Bitset::from_indices(n, &members)) {
                count += 1;
            }
        }
        prop_assert_eq!(count as usize, all.len());
    }
}
