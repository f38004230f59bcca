//! The enumeration's counts are never asserted against external tables:
//! an independent labeled-enumeration oracle (generate every labeled
//! relation, filter to partial orders, deduplicate by pairwise isomorphism
//! search) must produce the same class counts.

use latmon_core::bitset::Bitset;
use latmon_core::corpus;
use latmon_core::iso::poset_isomorphism;
use latmon_core::poset::FinitePoset;

fn labeled_posets(n: usize) -> Vec<FinitePoset> {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    'mask: for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                if rel[j * n + i] {
                    continue 'mask;
                }
                rel[i * n + j] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && rel[i * n + j] {
                    for k in 0..n {
                        if rel[j * n + k] && !rel[i * n + k] {
                            continue 'mask;
                        }
                    }
                }
            }
        }
        let mut up = vec![Bitset::empty(n); n];
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + j] {
                    up[i].insert(j);
                }
            }
        }
        out.push(FinitePoset::from_up_rows(labels.clone(), up));
    }
    out
}

fn oracle_class_count(n: usize) -> usize {
    let labeled = labeled_posets(n);
    let mut representatives: Vec<FinitePoset> = Vec::new();
    for p in labeled {
        if !representatives.iter().any(|r| poset_isomorphism(r, &p).is_some()) {
            representatives.push(p);
        }
    }
    representatives.len()
}

#[test]
fn enumerated_counts_match_labeled_oracle_up_to_four() {
    for n in 1..=4 {
        assert_eq!(corpus::enumerate_posets(n).len(), oracle_class_count(n), "n = {n}");
    }
}

#[test]
fn enumerated_count_matches_labeled_oracle_at_five() {
    let start = std::time::Instant::now();
    assert_eq!(corpus::enumerate_posets(5).len(), oracle_class_count(5));
    assert!(start.elapsed().as_secs() < 60, "runtime budget exceeded");
}

#[test]
fn distributive_routes_agree_up_to_five() {
    // Route one: downset lattices of small posets. Route two: direct
    // filtering of the poset enumeration. They must list the same
    // isomorphism classes for sizes where both apply.
    let birkhoff: Vec<_> = corpus::distributive_lattices_up_to(5);
    let direct: Vec<_> = corpus::filter_kind(
        &corpus::enumerate_posets_up_to(5),
        corpus::Kind::Distributive,
    );
    assert_eq!(birkhoff.len(), direct.len());
    for b in &birkhoff {
        assert!(
            direct
                .iter()
                .any(|d| latmon_core::iso::are_isomorphic(&b.carrier, &d.carrier).is_some()),
            "{} missing from the direct route",
            b.name
        );
    }
}

#[test]
fn six_element_distributive_lattices_are_complete_and_distinct() {
    let all = corpus::distributive_lattices_up_to(6);
    let six: Vec<_> = all.iter().filter(|e| e.carrier.size() == 6).collect();
    // Pairwise non-isomorphic; all distributive; contains the two known
    // supercoherent six-element lattices (the 6-chain and the downsets of
    // the diamond).
    for i in 0..six.len() {
        for j in (i + 1)..six.len() {
            assert!(
                latmon_core::iso::are_isomorphic(&six[i].carrier, &six[j].carrier).is_none()
            );
        }
    }
    assert!(six
        .iter()
        .any(|e| latmon_core::iso::are_isomorphic(&e.carrier, &corpus::chain(6)).is_some()));
    assert!(six.iter().any(|e| {
        latmon_core::iso::are_isomorphic(&e.carrier, &corpus::downset_diamond()).is_some()
    }));
}
