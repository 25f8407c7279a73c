//! Minimal join covers, D-rank and the variety level of a finite lattice.

use super::FiniteLattice;

/// A join cover `target ≤ ⋁cover`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinCover {
    pub target: usize,
    pub cover: Vec<usize>,
}

impl JoinCover {
    pub fn is_nontrivial(&self, l: &FiniteLattice) -> bool {
        self.cover.iter().all(|&c| !l.leq(self.target, c))
    }

    /// `self` refines `other` when every member lies below some member of `other`.
    pub fn refines(&self, other: &JoinCover, l: &FiniteLattice) -> bool {
        self.cover.iter().all(|&c| other.cover.iter().any(|&d| l.leq(c, d)))
    }
}

/// All nontrivial join covers of `a` by join irreducibles that are minimal in
/// the refinement order, sorted by size and then by element indices.
pub fn minimal_join_covers(l: &FiniteLattice, a: usize) -> Vec<JoinCover> {
    let cands: Vec<usize> = l.join_irreducibles().into_iter().filter(|&c| !l.leq(a, c)).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut chosen = Vec::new();
    covers_from(l, a, &cands, 0, l.bottom(), &mut chosen, &mut found);

    let as_cover = |c: &Vec<usize>| JoinCover { target: a, cover: c.clone() };
    let all: Vec<JoinCover> = found.iter().map(as_cover).collect();
    let mut minimal: Vec<JoinCover> = all
        .iter()
        .filter(|c| !all.iter().any(|d| d != *c && d.refines(c, l) && !c.refines(d, l)))
        .cloned()
        .collect();
    minimal.sort_by(|x, y| (x.cover.len(), &x.cover).cmp(&(y.cover.len(), &y.cover)));
    minimal.dedup();
    minimal
}

/// Antichains of `cands` whose join first reaches `a`; supersets of a cover
/// are never minimal, so the search stops extending there.
fn covers_from(
    l: &FiniteLattice,
    a: usize,
    cands: &[usize],
    from: usize,
    acc: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    for i in from..cands.len() {
        let c = cands[i];
        if chosen.iter().any(|&d| l.leq(c, d) || l.leq(d, c)) {
            continue;
        }
        chosen.push(c);
        let j = l.join(acc, c);
        if l.leq(a, j) {
            found.push(chosen.clone());
        } else {
            covers_from(l, a, cands, i + 1, j, chosen, found);
        }
        chosen.pop();
    }
}

/// Result of the `D_k` iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DRank {
    /// `rho[a]` is the least `k` with `a ∈ D_k`, if any.
    pub rho: Vec<Option<usize>>,
    /// Maximum of `rho` over join irreducibles; `None` if some never enters.
    pub rank: Option<usize>,
    /// `levels[k]` lists `D_k`.
    pub levels: Vec<Vec<usize>>,
}

impl DRank {
    pub fn is_bounded(&self) -> bool {
        self.rank.is_some()
    }
}

/// `D₀` is the set of join primes; `a ∈ D_{k+1}` when every minimal
/// nontrivial join cover of `a` lies inside `D_k`.
pub fn d_rank(l: &FiniteLattice) -> DRank {
    let covers: Vec<Vec<JoinCover>> = l.elements().map(|a| minimal_join_covers(l, a)).collect();
    let mut rho: Vec<Option<usize>> = l.elements().map(|a| l.is_join_prime(a).then_some(0)).collect();
    let mut levels = vec![l.elements().filter(|&a| rho[a].is_some()).collect::<Vec<_>>()];
    loop {
        let k = levels.len();
        let next: Vec<usize> = l
            .elements()
            .filter(|&a| {
                rho[a].is_some() || covers[a].iter().all(|c| c.cover.iter().all(|&e| rho[e].is_some()))
            })
            .collect();
        if next.len() == levels[k - 1].len() {
            break;
        }
        for &a in &next {
            rho[a].get_or_insert(k);
        }
        levels.push(next);
    }
    let jis = l.join_irreducibles();
    let rank = if jis.iter().all(|&q| rho[q].is_some()) {
        Some(jis.iter().filter_map(|&q| rho[q]).max().unwrap_or(0))
    } else {
        None
    };
    DRank { rho, rank, levels }
}

/// D-rank of the dual lattice.
pub fn d_rank_op(l: &FiniteLattice) -> DRank {
    d_rank(&l.dual())
}

/// Largest of the D-rank and dual D-rank over `L` and its sublattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyLevel {
    /// `None` when some examined lattice is not bounded.
    pub level: Option<usize>,
    /// False when only `L` itself was examined.
    pub exhaustive: bool,
}

const SUBLATTICE_BUDGET: usize = 10;

/// Least `k` such that `L` and all its sublattices have D-rank and dual
/// D-rank at most `k`. Sublattices are enumerated only for `|L| ≤ 10`.
pub fn variety_level(l: &FiniteLattice) -> VarietyLevel {
    let level_of = |s: &FiniteLattice| match (d_rank(s).rank, d_rank_op(s).rank) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    if l.len() > SUBLATTICE_BUDGET {
        return VarietyLevel { level: level_of(l), exhaustive: false };
    }
    let mut level = Some(0);
    for mask in 1u32..1 << l.len() {
        let set: Vec<usize> = l.elements().filter(|i| mask >> i & 1 == 1).collect();
        if !l.is_sublattice(&set) {
            continue;
        }
        let (sub, _) = l.sublattice(&set).expect("closed set");
        level = match (level, level_of(&sub)) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        if level.is_none() {
            break;
        }
    }
    VarietyLevel { level, exhaustive: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlat::{boolean, build_a, build_m3, build_n5, chain};

    fn names(l: &FiniteLattice, cs: &[JoinCover]) -> Vec<Vec<String>> {
        cs.iter().map(|c| c.cover.iter().map(|&e| l.label(e).to_string()).collect()).collect()
    }

    #[test]
    fn covers_in_small_lattices() {
        let c4 = chain(4);
        assert!(c4.elements().all(|a| minimal_join_covers(&c4, a).is_empty()));

        let n5 = build_n5();
        let c = n5.find("c").unwrap();
        assert_eq!(names(&n5, &minimal_join_covers(&n5, c)), [["a", "b"]]);
        assert!(minimal_join_covers(&n5, n5.bottom()).is_empty());

        let m3 = build_m3();
        let a = m3.find("a").unwrap();
        assert_eq!(names(&m3, &minimal_join_covers(&m3, a)), [["b", "c"]]);
    }

    /// Brute force: every subset of join irreducibles, filtered and minimized.
    fn brute_covers(l: &FiniteLattice, a: usize) -> Vec<Vec<usize>> {
        let jis = l.join_irreducibles();
        let subsets: Vec<JoinCover> = (1u32..1 << jis.len())
            .map(|m| JoinCover {
                target: a,
                cover: (0..jis.len()).filter(|i| m >> i & 1 == 1).map(|i| jis[i]).collect(),
            })
            .filter(|c| c.is_nontrivial(l) && l.leq(a, l.join_all(c.cover.iter().copied())))
            .collect();
        let mut out: Vec<Vec<usize>> = subsets
            .iter()
            .filter(|c| !subsets.iter().any(|d| d.refines(c, l) && !c.refines(d, l)))
            .filter(|c| {
                // irredundant: no member can be dropped
                c.cover.iter().all(|&x| !l.leq(a, l.join_all(c.cover.iter().copied().filter(|&y| y != x))))
            })
            .map(|c| c.cover.clone())
            .collect();
        out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        out
    }

    #[test]
    fn covers_match_brute_force() {
        for l in [build_n5(), build_m3(), boolean(3), build_a()] {
            for a in l.elements() {
                let fast: Vec<Vec<usize>> = minimal_join_covers(&l, a).into_iter().map(|c| c.cover).collect();
                assert_eq!(fast, brute_covers(&l, a), "{} at {}", l.name(), l.label(a));
            }
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(d_rank(&chain(5)).rank, Some(0));
        assert_eq!(d_rank(&build_n5()).rank, Some(1));
        assert_eq!(d_rank_op(&build_n5()).rank, Some(1));
        assert_eq!(d_rank(&build_m3()).rank, None);
        assert_eq!(d_rank(&boolean(3)).rank, Some(0));
        let a = d_rank(&build_a());
        assert!(a.is_bounded());
        for w in a.levels.windows(2) {
            assert!(w[0].iter().all(|x| w[1].contains(x)));
        }
    }

    #[test]
    fn variety_levels() {
        assert_eq!(variety_level(&build_n5()), VarietyLevel { level: Some(1), exhaustive: true });
        assert_eq!(variety_level(&build_m3()).level, None);
        assert_eq!(variety_level(&chain(3)).level, Some(0));
        assert!(!variety_level(&build_a()).exhaustive);
    }
}
