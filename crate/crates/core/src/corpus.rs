//! Curated and enumerated test objects, deduplicated up to isomorphism,
//! shared by every property suite in the crate.

use serde::Serialize;
use std::collections::HashSet;

use crate::bitset::Bitset;
use crate::iso::canonical_code;
use crate::lattice::{BoundedLattice, Carrier, CarrierRc};
use crate::poset::FinitePoset;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Provenance {
    Named,
    Enumerated,
}

#[derive(Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub carrier: CarrierRc,
    pub provenance: Provenance,
}

fn lattice_carrier(labels: &[&str], covers: &[(&str, &str)]) -> CarrierRc {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let covers: Vec<(String, String)> = covers
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let p = FinitePoset::from_covers(labels, &covers).expect("corpus covers are valid");
    Carrier::Lattice(BoundedLattice::from_poset(p).expect("corpus entry is a lattice")).rc()
}

/// The n-element chain 0 < 1 < … < n-1.
pub fn chain(n: usize) -> CarrierRc {
    assert!(n >= 1);
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let p = FinitePoset::from_cover_indices(labels, &covers).unwrap();
    Carrier::Lattice(BoundedLattice::from_poset(p).unwrap()).rc()
}

/// The 2×2 diamond: bottom, two incomparable atoms, top.
pub fn diamond() -> CarrierRc {
    lattice_carrier(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
}

/// The Boolean cube on three atoms.
pub fn cube() -> CarrierRc {
    lattice_carrier(
        &["0", "x", "y", "z", "xy", "xz", "yz", "1"],
        &[
            ("0", "x"),
            ("0", "y"),
            ("0", "z"),
            ("x", "xy"),
            ("x", "xz"),
            ("y", "xy"),
            ("y", "yz"),
            ("z", "xz"),
            ("z", "yz"),
            ("xy", "1"),
            ("xz", "1"),
            ("yz", "1"),
        ],
    )
}

/// Bottom, three incomparable atoms, top: the smallest modular
/// non-distributive lattice.
pub fn m3() -> CarrierRc {
    lattice_carrier(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )
}

/// The pentagon: the smallest non-modular lattice.
pub fn n5() -> CarrierRc {
    lattice_carrier(
        &["0", "x", "z", "y", "1"],
        &[("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")],
    )
}

/// The six-element lattice of downsets of the diamond.
pub fn downset_diamond() -> CarrierRc {
    lattice_carrier(
        &["e", "p0", "pa", "pb", "pab", "all"],
        &[
            ("e", "p0"),
            ("p0", "pa"),
            ("p0", "pb"),
            ("pa", "pab"),
            ("pb", "pab"),
            ("pab", "all"),
        ],
    )
}

/// The curated instances every suite starts from.
pub fn named_instances() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(CorpusEntry {
            name: format!("C{n}"),
            carrier: chain(n),
            provenance: Provenance::Named,
        });
    }
    for (name, carrier) in [
        ("B2", diamond()),
        ("B3", cube()),
        ("M3", m3()),
        ("N5", n5()),
        ("DB2", downset_diamond()),
    ] {
        out.push(CorpusEntry { name: name.to_string(), carrier, provenance: Provenance::Named });
    }
    out
}

/// All posets on `n` unlabeled elements up to isomorphism, by exhaustive
/// generation over strict-pair relations plus canonical-form deduplication.
/// Feasible for n ≤ 5 (the canonical form minimizes over ≤ 120
/// permutations).
pub fn enumerate_posets(n: usize) -> Vec<CorpusEntry> {
    assert!(n <= 5, "poset enumeration is capped at n = 5");
    if n == 0 {
        return Vec::new();
    }
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let npairs = pairs.len();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut found: Vec<(Vec<u64>, FinitePoset)> = Vec::new();
    'mask: for mask in 0u32..(1u32 << npairs) {
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                if rel[j * n + i] {
                    continue 'mask; // antisymmetry
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
        let p = FinitePoset::from_up_rows(labels.clone(), up);
        let code = canonical_code(&p);
        if seen.insert(code.clone()) {
            found.push((code, p));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found
        .into_iter()
        .enumerate()
        .map(|(i, (_, p))| CorpusEntry {
            name: format!("P{n}_{i}"),
            carrier: Carrier::Poset(p).rc(),
            provenance: Provenance::Enumerated,
        })
        .collect()
}

/// Posets of every size from 1 through `max` (inclusive), up to isomorphism.
pub fn enumerate_posets_up_to(max: usize) -> Vec<CorpusEntry> {
    (1..=max).flat_map(enumerate_posets).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    MeetSemilattice,
    Lattice,
    Distributive,
}

/// Keeps entries admitting the requested structure, attaching the computed
/// tables. A finite meet-semilattice with top has all joins, so the meet
/// test is lattice construction; distributivity is the extra flag.
pub fn filter_kind(entries: &[CorpusEntry], kind: Kind) -> Vec<CorpusEntry> {
    entries
        .iter()
        .filter_map(|e| {
            let lat = match e.carrier.as_ref() {
                Carrier::Lattice(l) => l.clone(),
                Carrier::Poset(p) => match BoundedLattice::from_poset(p.clone()) {
                    Ok(l) => l,
                    Err(_) => return None,
                },
            };
            if kind == Kind::Distributive && !lat.is_distributive() {
                return None;
            }
            Some(CorpusEntry {
                name: e.name.clone(),
                carrier: Carrier::Lattice(lat).rc(),
                provenance: e.provenance,
            })
        })
        .collect()
}

/// All meet-semilattices with top on at most `max` elements (max ≤ 5), up to
/// isomorphism.
pub fn meet_semilattices_up_to(max: usize) -> Vec<CorpusEntry> {
    filter_kind(&enumerate_posets_up_to(max), Kind::MeetSemilattice)
}

/// All distributive lattices on at most `max` elements (max ≤ 6), up to
/// isomorphism. Derived from the poset enumeration through downset lattices:
/// a distributive lattice on at most six elements is the downset lattice of
/// a poset on at most five, so the ≤ 5 poset corpus is complete for it.
pub fn distributive_lattices_up_to(max: usize) -> Vec<CorpusEntry> {
    assert!(max <= 6, "distributive enumeration is derived from posets of size ≤ 5");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |lat: BoundedLattice| {
        assert!(lat.is_distributive());
        let code = canonical_code(lat.poset());
        if seen.insert(code) {
            out.push(lat);
        }
    };
    push(match chain(1).as_ref() {
        Carrier::Lattice(l) => l.clone(),
        _ => unreachable!(),
    });
    for entry in enumerate_posets_up_to(5) {
        let p = entry.carrier.poset();
        let ds = p.all_downsets();
        if ds.len() > max {
            continue;
        }
        let k = ds.len();
        let labels: Vec<String> = (0..k).map(|i| format!("d{i}")).collect();
        let mut up = vec![Bitset::empty(k); k];
        for i in 0..k {
            for j in 0..k {
                if ds[i].is_subset(&ds[j]) {
                    up[i].insert(j);
                }
            }
        }
        let lat = BoundedLattice::from_poset(FinitePoset::from_up_rows(labels, up))
            .expect("downset families are lattices");
        push(lat);
    }
    let mut out: Vec<BoundedLattice> = out.into_iter().filter(|l| l.size() <= max).collect();
    out.sort_by(|a, b| {
        (a.size(), canonical_code(a.poset())).cmp(&(b.size(), canonical_code(b.poset())))
    });
    out.into_iter()
        .enumerate()
        .map(|(i, l)| CorpusEntry {
            name: format!("D{}_{i}", l.size()),
            carrier: Carrier::Lattice(l).rc(),
            provenance: Provenance::Enumerated,
        })
        .collect()
}

/// Homs of the monad's base category between small corpus objects, in a
/// deterministic order, at least `min_count` of them when available.
pub fn corpus_homs(
    tag: crate::hom::CategoryTag,
    entries: &[CorpusEntry],
    min_count: usize,
) -> Vec<crate::hom::Hom> {
    let mut out = Vec::new();
    for src in entries {
        for tgt in entries {
            if src.carrier.size() > 5 || tgt.carrier.size() > 5 {
                continue;
            }
            let found = crate::search::HomSearch::new(
                src.carrier.clone(),
                tgt.carrier.clone(),
                tag,
            )
            .collect_up_to(50);
            out.extend(found);
            if out.len() >= min_count {
                return out;
            }
        }
    }
    out
}
