//! Isomorphism search and canonical forms for finite posets.

use crate::bitset::Bitset;
use crate::lattice::Carrier;
use crate::poset::FinitePoset;

/// Structure-preserving bijection between two carriers of the same kind, or
/// `None`. Deterministic: the backtracking maps element 0, 1, ... of `a` in
/// order, trying the lowest available index of `b` first, so the first
/// bijection found is canonical. For lattice carriers an order isomorphism
/// automatically transports meets and joins.
pub fn are_isomorphic(a: &Carrier, b: &Carrier) -> Option<Vec<usize>> {
    match (a, b) {
        (Carrier::Poset(_), Carrier::Poset(_)) | (Carrier::Lattice(_), Carrier::Lattice(_)) => {
            poset_isomorphism(a.poset(), b.poset())
        }
        _ => None,
    }
}

pub fn poset_isomorphism(a: &FinitePoset, b: &FinitePoset) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    // Invariant: (|down|, |up|) profiles must match as multisets.
    let sig = |p: &FinitePoset, x: usize| (p.down_set(x).count(), p.up_set(x).count());
    let mut sa: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let mut sb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    let (mut sa_sorted, mut sb_sorted) = (sa.clone(), sb.clone());
    sa_sorted.sort_unstable();
    sb_sorted.sort_unstable();
    if sa_sorted != sb_sorted {
        return None;
    }
    sa.truncate(n);
    sb.truncate(n);

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if assign(a, b, &sa, &sb, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

fn assign(
    a: &FinitePoset,
    b: &FinitePoset,
    sa: &[(usize, usize)],
    sb: &[(usize, usize)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    x: usize,
) -> bool {
    let n = a.size();
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        let consistent = (0..x).all(|px| {
            let py = map[px];
            a.leq(px, x) == b.leq(py, y) && a.leq(x, px) == b.leq(y, py)
        });
        if consistent {
            map[x] = y;
            used[y] = true;
            if assign(a, b, sa, sb, map, used, x + 1) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
    }
    false
}

/// Minimum adjacency encoding over all permutations: the lexicographically
/// least row-major bit matrix of the relation. Two posets have equal codes
/// iff they are isomorphic. Only feasible for small sizes; the corpus uses
/// it up to 6 elements.
pub fn canonical_code(p: &FinitePoset) -> Vec<u64> {
    let n = p.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    permute(&mut perm, 0, &mut |perm| {
        let code = encode(p, perm);
        match &best {
            Some(b) if *b <= code => {}
            _ => best = Some(code),
        }
    });
    best.unwrap_or_default()
}

fn encode(p: &FinitePoset, perm: &[usize]) -> Vec<u64> {
    let n = p.size();
    let bits = n * n;
    let mut words = vec![0u64; bits.div_ceil(64)];
    for i in 0..n {
        for j in 0..n {
            if p.leq(perm[i], perm[j]) {
                let k = i * n + j;
                words[k / 64] |= 1 << (k % 64);
            }
        }
    }
    words
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Relabels a poset along a permutation (index `i` of the result
/// corresponds to index `perm[i]` of the input). Used by tests for
/// invariance checks.
pub fn permuted(p: &FinitePoset, perm: &[usize]) -> FinitePoset {
    let n = p.size();
    let labels: Vec<String> = (0..n).map(|i| p.label(perm[i]).to_string()).collect();
    let mut up = vec![Bitset::empty(n); n];
    for i in 0..n {
        for j in 0..n {
            if p.leq(perm[i], perm[j]) {
                up[i].insert(j);
            }
        }
    }
    FinitePoset::from_up_rows(labels, up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::BoundedLattice;
    use crate::poset::{cover_pairs, labels_from_strs};

    fn poset(labels: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
        FinitePoset::from_covers(labels_from_strs(labels), &cover_pairs(covers)).unwrap()
    }

    #[test]
    fn identity_on_equal_carriers() {
        let p = poset(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]);
        let c = Carrier::Poset(p);
        let iso = are_isomorphic(&c, &c).unwrap();
        assert_eq!(iso, vec![0, 1, 2, 3]);
    }

    #[test]
    fn downsets_of_two_chain_match_three_chain() {
        let c2 = poset(&["0", "1"], &[("0", "1")]);
        let ds = c2.all_downsets();
        assert_eq!(ds.len(), 3);
        let labels: Vec<String> = (0..3).map(|i| format!("d{i}")).collect();
        let mut up = vec![Bitset::empty(3); 3];
        for i in 0..3 {
            for j in 0..3 {
                if ds[i].is_subset(&ds[j]) {
                    up[i].insert(j);
                }
            }
        }
        let dlat = Carrier::Lattice(
            BoundedLattice::from_poset(FinitePoset::from_up_rows(labels, up)).unwrap(),
        );
        let c3 = Carrier::Lattice(
            BoundedLattice::from_poset(poset(&["0", "m", "1"], &[("0", "m"), ("m", "1")])).unwrap(),
        );
        assert!(are_isomorphic(&dlat, &c3).is_some());
    }

    #[test]
    fn m3_and_n5_are_not_isomorphic() {
        let m3 = Carrier::Poset(poset(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        ));
        let n5 = Carrier::Poset(poset(
            &["0", "x", "z", "y", "1"],
            &[("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")],
        ));
        assert!(are_isomorphic(&m3, &n5).is_none());
    }

    #[test]
    fn isomorphism_survives_relabelling() {
        let p = poset(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]);
        let q = permuted(&p, &[3, 1, 0, 2]);
        let (cp, cq) = (Carrier::Poset(p.clone()), Carrier::Poset(q.clone()));
        let iso = are_isomorphic(&cp, &cq).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(p.leq(x, y), q.leq(iso[x], iso[y]));
            }
        }
        assert_eq!(canonical_code(&p), canonical_code(&q));
    }

    #[test]
    fn symmetry_witnessed_by_inverse() {
        let p = poset(&["0", "m", "1"], &[("0", "m"), ("m", "1")]);
        let q = permuted(&p, &[2, 0, 1]);
        let fwd = poset_isomorphism(&p, &q).unwrap();
        let bwd = poset_isomorphism(&q, &p).unwrap();
        for x in 0..3 {
            assert_eq!(bwd[fwd[x]], x);
        }
    }
}
