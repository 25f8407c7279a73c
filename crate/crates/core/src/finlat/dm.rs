//! Dedekind–MacNeille completion of finite posets.

use std::collections::BTreeSet;

use super::{BitMatrix, FiniteLattice};
use crate::error::{Error, Result};

/// A finite partially ordered set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: BitMatrix,
}

impl FinitePoset {
    pub fn from_leq(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut up = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up.set(a, b);
                }
            }
        }
        for a in 0..n {
            if !up.get(a, a) {
                return Err(Error::NotAPartialOrder(format!("{} ≰ itself", labels[a])));
            }
            for b in 0..n {
                if a != b && up.get(a, b) && up.get(b, a) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are mutually below each other",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if up.get(a, b) && up.get(b, c) && !up.get(a, c) {
                        return Err(Error::NotAPartialOrder(format!(
                            "not transitive: {} ≤ {} ≤ {}",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, up })
    }

    /// Poset generated by a cover (or any) relation.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rel = vec![vec![false; n]; n];
        for (a, row) in rel.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::ElementOutOfRange(lo.max(hi)));
            }
            rel[lo][hi] = true;
        }
        for k in 0..n {
            let through = rel[k].clone();
            for row in rel.iter_mut() {
                if row[k] {
                    for (j, &r) in through.iter().enumerate() {
                        if r {
                            row[j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset::from_leq(labels, |a, b| rel[a][b])
    }

    /// `n` pairwise incomparable elements labeled `a`, `b`, ….
    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| ((b'a' + (i % 26) as u8) as char).to_string()).collect();
        FinitePoset::from_leq(labels, |a, b| a == b).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(a, b)
    }

    /// Upper bounds `D^u` of a set.
    pub fn upper_bounds(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len()).filter(|&p| set.iter().all(|&d| self.leq(d, p))).collect()
    }

    /// Lower bounds `D^ℓ` of a set.
    pub fn lower_bounds(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len()).filter(|&p| set.iter().all(|&d| self.leq(p, d))).collect()
    }

    /// `D^{uℓ}`.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.lower_bounds(&self.upper_bounds(set))
    }

    pub fn down_set(&self, a: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&p| self.leq(p, a)).collect()
    }
}

/// The completion lattice and the order embedding `p ↦ ↓p`.
#[derive(Clone, Debug)]
pub struct Completion {
    pub lattice: FiniteLattice,
    pub embedding: Vec<usize>,
    /// The closed set behind each element of `lattice`.
    pub sets: Vec<BTreeSet<usize>>,
}

/// `DM(P)`: the subsets `C` of `P` with `C = C^{uℓ}`, ordered by inclusion.
///
/// Closed sets are exactly the intersections of principal down-sets (the
/// empty intersection being `P`), so they are generated by closing
/// `{P} ∪ {↓p}` under pairwise intersection.
pub fn dm_completion(p: &FinitePoset) -> Result<Completion> {
    let all: BTreeSet<usize> = (0..p.len()).collect();
    let mut family: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    family.insert(all);
    for a in 0..p.len() {
        family.insert(p.down_set(a));
    }
    loop {
        let current: Vec<BTreeSet<usize>> = family.iter().cloned().collect();
        let before = family.len();
        for (i, s) in current.iter().enumerate() {
            for t in &current[i + 1..] {
                family.insert(s.intersection(t).copied().collect());
            }
        }
        if family.len() == before {
            break;
        }
    }
    let mut sets: Vec<BTreeSet<usize>> = family.into_iter().collect();
    sets.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    let labels = sets
        .iter()
        .map(|s| match (0..p.len()).find(|&a| p.down_set(a) == *s) {
            Some(a) => p.label(a).to_string(),
            None => {
                let maximal: Vec<&str> = s
                    .iter()
                    .filter(|&&a| !s.iter().any(|&b| b != a && p.leq(a, b)))
                    .map(|&a| p.label(a))
                    .collect();
                format!("{{{}}}", maximal.join(","))
            }
        })
        .collect();
    let lattice = FiniteLattice::from_leq("DM", labels, |a, b| sets[a].is_subset(&sets[b]))?;
    let embedding = (0..p.len())
        .map(|a| {
            let d = p.down_set(a);
            sets.iter().position(|s| *s == d).expect("principal down-sets are closed")
        })
        .collect();
    Ok(Completion { lattice, embedding, sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlat::{build_n5, chain};

    /// Closed sets found by brute force over every subset.
    fn closed_sets_brute(p: &FinitePoset) -> usize {
        (0..1u32 << p.len())
            .filter(|mask| {
                let s: BTreeSet<usize> = (0..p.len()).filter(|i| mask >> i & 1 == 1).collect();
                p.closure(&s) == s
            })
            .count()
    }

    #[test]
    fn completion_examples() {
        let c2 = chain(2).to_poset();
        assert!(dm_completion(&c2).unwrap().lattice.is_isomorphic(&chain(2)));

        let ac = FinitePoset::antichain(2);
        let dm = dm_completion(&ac).unwrap();
        assert_eq!(dm.lattice.len(), 4);
        assert_eq!(closed_sets_brute(&ac), 4);
        assert_eq!(dm.lattice.label(dm.lattice.bottom()), "{}");

        let n5 = build_n5();
        assert!(dm_completion(&n5.to_poset()).unwrap().lattice.is_isomorphic(&n5));
    }

    #[test]
    fn embedding_preserves_and_reflects_order() {
        // the "bowtie" a, b < c, d has no joins; its completion adds a middle element
        let p = FinitePoset::from_covers(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            &[(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        let dm = dm_completion(&p).unwrap();
        assert_eq!(dm.lattice.len(), closed_sets_brute(&p));
        assert_eq!(dm.lattice.len(), 7);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(p.leq(a, b), dm.lattice.leq(dm.embedding[a], dm.embedding[b]));
            }
        }
    }

    #[test]
    fn rejects_non_orders() {
        let r = FinitePoset::from_leq(vec!["a".into(), "b".into()], |_, _| true);
        assert!(matches!(r, Err(Error::NotAPartialOrder(_))));
    }
}
