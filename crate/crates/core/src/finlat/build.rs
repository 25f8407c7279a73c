//! Named lattices: chains, Boolean lattices, M₃, N₅, FD₃ and its doubling A.

use super::{double_each, FiniteLattice};

pub fn chain(n: usize) -> FiniteLattice {
    assert!(n >= 1, "a chain needs at least one element");
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteLattice::from_leq(&format!("C{n}"), labels, |a, b| a <= b).expect("chains are lattices")
}

/// The Boolean lattice 2^k; atoms are labeled `a`, `b`, … and the bottom `0`.
pub fn boolean(k: usize) -> FiniteLattice {
    assert!(k <= 8, "Boolean lattice too large");
    let labels = (0..1usize << k)
        .map(|s| {
            if s == 0 {
                "0".to_string()
            } else {
                (0..k).filter(|i| s >> i & 1 == 1).map(|i| (b'a' + i as u8) as char).collect()
            }
        })
        .collect();
    FiniteLattice::from_leq(&format!("B{k}"), labels, |a, b| a & !b == 0).expect("Boolean lattice")
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The diamond M₃ = {0, a, b, c, 1}.
pub fn build_m3() -> FiniteLattice {
    FiniteLattice::from_covers(
        "M3",
        labels(&["0", "a", "b", "c", "1"]),
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
    .expect("M3 is a lattice")
}

/// The pentagon N₅ = {0, a, b, c, 1} with `0 < a < 1` and `0 < b < c < 1`.
pub fn build_n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        "N5",
        labels(&["0", "a", "b", "c", "1"]),
        &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)],
    )
    .expect("N5 is a lattice")
}

const FD3_VARS: [char; 3] = ['x', 'y', 'z'];

/// Sum-of-monomials label of a monotone Boolean function on x, y, z given as
/// a truth table (bit `s` is the value at the point whose coordinates are the
/// bits of `s`).
fn monotone_label(table: u8) -> String {
    let true_points: Vec<u8> = (0..8u8).filter(|s| table >> s & 1 == 1).collect();
    let mut minimal: Vec<u8> = true_points
        .iter()
        .copied()
        .filter(|&s| !true_points.iter().any(|&t| t != s && t & !s == 0))
        .collect();
    minimal.sort_by_key(|&s| (s.count_ones(), (0..3).map(|i| s >> i & 1 == 0).collect::<Vec<_>>()));
    minimal
        .iter()
        .map(|&s| (0..3).filter(|i| s >> i & 1 == 1).map(|i| FD3_VARS[i]).collect::<String>())
        .collect::<Vec<_>>()
        .join("+")
}

/// The free distributive lattice on x, y, z without constants: the 18
/// non-constant monotone Boolean functions of three variables, ordered
/// pointwise, with the projections labeled `x`, `y`, `z`.
pub fn build_fd3() -> FiniteLattice {
    let monotone = |f: u8| (0..8u8).all(|a| (0..8u8).all(|b| a & !b != 0 || f >> a & 1 <= f >> b & 1));
    let mut tables: Vec<u8> = (1..=254u8).filter(|&f| monotone(f)).collect();
    tables.sort_by_key(|f| (f.count_ones(), *f));
    let labels = tables.iter().map(|&f| monotone_label(f)).collect();
    FiniteLattice::from_leq("FD3", labels, |a, b| tables[a] & !tables[b] == 0).expect("FD3 is a lattice")
}

/// Joins of two distinct atoms and meets of two distinct coatoms.
pub fn fd3_doubling_targets(l: &FiniteLattice) -> Vec<usize> {
    let atoms = l.upper_covers(l.bottom());
    let coatoms = l.lower_covers(l.top());
    let mut out = Vec::new();
    for (i, &a) in atoms.iter().enumerate() {
        for &b in &atoms[i + 1..] {
            out.push(l.join(a, b));
        }
    }
    for (i, &a) in coatoms.iter().enumerate() {
        for &b in &coatoms[i + 1..] {
            out.push(l.meet(a, b));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// FD₃ with each of its six doubling targets doubled; 24 elements with the
/// generators still labeled `x`, `y`, `z`.
pub fn build_a() -> FiniteLattice {
    let fd3 = build_fd3();
    let targets = fd3_doubling_targets(&fd3);
    double_each(&fd3, &targets).expect("singletons are convex").lattice.with_name("A")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd3_shape() {
        let fd3 = build_fd3();
        assert_eq!(fd3.len(), 18);
        assert_eq!(fd3.label(fd3.bottom()), "xyz");
        assert_eq!(fd3.label(fd3.top()), "x+y+z");
        for g in ["x", "y", "z"] {
            assert!(fd3.is_doubly_prime_elt(fd3.find(g).unwrap()));
        }
        // m = M in a distributive lattice: (x+y)(x+z)(y+z) evaluates to xy+xz+yz
        let e = |s: &str| fd3.find(s).unwrap();
        let big_m = fd3.meet_all([e("x+y"), e("x+z"), e("y+z")]);
        assert_eq!(big_m, e("xy+xz+yz"));
        let targets: Vec<&str> = fd3_doubling_targets(&fd3).iter().map(|&t| fd3.label(t)).collect();
        assert_eq!(targets.len(), 6);
        for t in ["xy+xz", "xy+yz", "xz+yz", "x+yz", "y+xz", "z+xy"] {
            assert!(targets.contains(&t), "{t} missing from {targets:?}");
        }
    }

    #[test]
    fn a_shape() {
        let a = build_a();
        assert_eq!(a.len(), 24);
        assert!(a.is_doubly_prime_elt(a.find("x").unwrap()));
        assert!(a.find("y").is_some() && a.find("z").is_some());
    }

    #[test]
    fn small_named() {
        assert_eq!(build_n5().len(), 5);
        assert_eq!(build_m3().len(), 5);
        assert_eq!(boolean(3).len(), 8);
        assert_eq!(chain(1).len(), 1);
    }
}
