//! Small lattices up to isomorphism, used as finite oracles.

use std::collections::HashMap;

use super::{boolean, build_m3, build_n5, chain, FiniteLattice};

fn from_covers(name: &str, labels: &[&str], covers: &[(usize, usize)]) -> FiniteLattice {
    let labels = labels.iter().map(|s| s.to_string()).collect();
    FiniteLattice::from_covers(name, labels, covers).expect("catalog entry is a lattice")
}

/// The ten lattices with at most five elements, one per isomorphism type.
pub fn small_catalog() -> Vec<FiniteLattice> {
    vec![
        chain(1),
        chain(2),
        chain(3),
        chain(4),
        boolean(2),
        chain(5),
        build_n5(),
        build_m3(),
        // a chain below a square, and a square below a chain
        from_covers("1+B2", &["0", "e", "a", "b", "1"], &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]),
        from_covers("B2+1", &["0", "a", "b", "e", "1"], &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]),
    ]
}

/// Every lattice with at most `max_n` elements, up to isomorphism, ordered by
/// size. Lattices with three or more elements are a bottom and a top around
/// a naturally labeled poset; each isomorphism type is kept once.
pub fn all_lattices(max_n: usize) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        if n <= 2 {
            out.push(chain(n).with_name(&format!("L{n}_0")));
            continue;
        }
        let k = n - 2;
        let mut found: HashMap<Vec<(usize, usize)>, Vec<FiniteLattice>> = HashMap::new();
        let mut count = 0;
        let mut down = Vec::with_capacity(k);
        interior_posets(k, &mut down, &mut |down: &[u32]| {
            let Some(l) = bounded_lattice(down) else { return };
            let key = signature(&l);
            let bucket = found.entry(key).or_default();
            if bucket.iter().all(|m| !m.is_isomorphic(&l)) {
                bucket.push(l);
                count += 1;
            }
        });
        let mut level: Vec<FiniteLattice> = found.into_values().flatten().collect();
        // deterministic order: by cover list
        level.sort_by_key(|l| l.covers());
        debug_assert_eq!(level.len(), count);
        for (i, l) in level.into_iter().enumerate() {
            out.push(l.with_name(&format!("L{n}_{i}")));
        }
    }
    out
}

/// Naturally labeled posets on `k` points: element `i` gets a strict
/// down-set that is a down-closed subset of `{0, …, i-1}`.
fn interior_posets(k: usize, down: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    let i = down.len();
    if i == k {
        visit(down);
        return;
    }
    for d in 0u32..1 << i {
        let closed = (0..i).filter(|j| d >> j & 1 == 1).all(|j| down[j] & !d == 0);
        if closed {
            down.push(d);
            interior_posets(k, down, visit);
            down.pop();
        }
    }
}

fn bounded_lattice(down: &[u32]) -> Option<FiniteLattice> {
    let k = down.len();
    let n = k + 2;
    let mut labels = vec!["0".to_string()];
    labels.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
    labels.push("1".to_string());
    // 0 is bottom, interior i is i + 1, n - 1 is top
    FiniteLattice::from_leq("", labels, |a, b| {
        a == b || a == 0 || b == n - 1 || (a < n - 1 && b > 0 && down[b - 1] >> (a - 1) & 1 == 1)
    })
    .ok()
}

fn signature(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let mut s: Vec<(usize, usize)> =
        l.elements().map(|a| (l.upper_covers(a).len(), l.lower_covers(a).len())).collect();
    s.sort_unstable();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog_is_complete_and_distinct() {
        let cat = small_catalog();
        assert_eq!(cat.len(), 10);
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[..i] {
                assert!(!a.is_isomorphic(b), "{} ≅ {}", a.name(), b.name());
            }
        }
        let all = all_lattices(5);
        assert_eq!(all.len(), 10);
        for l in &all {
            assert!(cat.iter().any(|c| c.is_isomorphic(l)));
        }
    }

    #[test]
    fn lattice_counts() {
        let all = all_lattices(7);
        let count = |n: usize| all.iter().filter(|l| l.len() == n).count();
        assert_eq!((1..=7).map(count).collect::<Vec<_>>(), [1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn lattice_count_eight() {
        assert_eq!(all_lattices(8).iter().filter(|l| l.len() == 8).count(), 222);
    }
}
