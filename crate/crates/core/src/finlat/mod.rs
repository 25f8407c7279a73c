//! Finite lattices and posets.
//!
//! Elements are dense indices `0..n`. The order is stored as bit rows in
//! both directions and join/meet as full `n × n` tables, so every query is
//! a lookup.

mod build;
pub mod catalog;
mod dm;
mod double;
mod fixpoint;
mod io;
mod rank;

use std::fmt;

use crate::error::{Error, Result};

pub use build::{boolean, build_a, build_fd3, build_m3, build_n5, chain, fd3_doubling_targets};
pub use dm::{dm_completion, Completion, FinitePoset};
pub use double::{double, double_each, Doubled};
pub use fixpoint::{tarski_lfp, tarski_lfp_map};
pub use io::{parse_lattice_file, parse_poset_file, to_dot, write_lattice_file};
pub use rank::{d_rank, d_rank_op, minimal_join_covers, variety_level, DRank, JoinCover, VarietyLevel};

/// Fixed-width bitset rows stored contiguously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    #[inline]
    pub(crate) fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub(crate) fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    fn or_row_into(&mut self, dst: usize, src: usize) {
        for w in 0..self.words {
            let v = self.bits[src * self.words + w];
            self.bits[dst * self.words + w] |= v;
        }
    }

    fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if self.get(a, b) {
                    t.set(b, a);
                }
            }
        }
        t
    }
}

fn row_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Outcome of a law check: `witness` holds offending elements on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl LawCheck {
    fn from_witness(w: Option<Vec<usize>>) -> Self {
        LawCheck { holds: w.is_none(), witness: w }
    }
}

/// A finite lattice with precomputed order and operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    n: usize,
    labels: Vec<String>,
    up: BitMatrix,
    down: BitMatrix,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from an order relation given as a predicate.
    pub fn from_leq(name: &str, labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut up = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up.set(a, b);
                }
            }
        }
        Self::from_up_matrix(name, labels, up)
    }

    fn from_up_matrix(name: &str, labels: Vec<String>, up: BitMatrix) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Invalid("a lattice needs at least one element".into()));
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
                if up.get(a, b) && !row_subset(up.row(b), up.row(a)) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive through {} ≤ {}",
                        labels[a], labels[b]
                    )));
                }
            }
        }
        let down = up.transpose();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let words = up.words;
        let mut common = vec![0u64; words];
        for a in 0..n {
            for b in a..n {
                for (sel, table, what) in
                    [(&up, &mut join, "least upper bound"), (&down, &mut meet, "greatest lower bound")]
                {
                    let (ra, rb) = (sel.row(a), sel.row(b));
                    for w in 0..words {
                        common[w] = ra[w] & rb[w];
                    }
                    // the bound is the member of `common` whose own row contains all of it
                    let found = (0..n)
                        .find(|&c| common[c / 64] >> (c % 64) & 1 == 1 && row_subset(&common, sel.row(c)));
                    let Some(c) = found else {
                        return Err(Error::NotALattice { a: labels[a].clone(), b: labels[b].clone(), what });
                    };
                    table[a * n + b] = c as u32;
                    table[b * n + a] = c as u32;
                }
            }
        }
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x] as usize);
        let top = (0..n).fold(0, |acc, x| join[acc * n + x] as usize);
        Ok(FiniteLattice { name: name.to_string(), n, labels, up, down, join, meet, bottom, top })
    }

    /// Builds a lattice from its cover relation `(lower, upper)`.
    pub fn from_covers(name: &str, labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        for &(lo, hi) in covers {
            if lo >= n {
                return Err(Error::ElementOutOfRange(lo));
            }
            if hi >= n {
                return Err(Error::ElementOutOfRange(hi));
            }
            succ[lo].push(hi);
        }
        // reflexive-transitive closure by processing elements in reverse topological order
        let mut order = Vec::with_capacity(n);
        let mut state = vec![0u8; n];
        fn visit(v: usize, succ: &[Vec<usize>], state: &mut [u8], order: &mut Vec<usize>) -> bool {
            match state[v] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[v] = 1;
            for &w in &succ[v] {
                if !visit(w, succ, state, order) {
                    return false;
                }
            }
            state[v] = 2;
            order.push(v);
            true
        }
        for v in 0..n {
            if !visit(v, &succ, &mut state, &mut order) {
                return Err(Error::NotAPartialOrder("cover relation has a cycle".into()));
            }
        }
        let mut up = BitMatrix::new(n);
        for &v in &order {
            up.set(v, v);
            for &w in &succ[v] {
                up.or_row_into(v, w);
            }
        }
        Self::from_up_matrix(name, labels, up)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_label(&mut self, a: usize, label: &str) {
        self.labels[a] = label.to_string();
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up.get(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    /// Join of a set; the empty join is the bottom.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&b| self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)))
            .collect()
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&b| self.lt(b, a) && !(0..self.n).any(|c| self.lt(b, c) && self.lt(c, a)))
            .collect()
    }

    /// The cover relation as `(lower, upper)` pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| self.upper_covers(a).into_iter().map(move |b| (a, b))).collect()
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.lower_covers(a).len() == 1).collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.upper_covers(a).len() == 1).collect()
    }

    /// `a ≤ b ∨ c` implies `a ≤ b` or `a ≤ c`.
    pub fn is_join_prime(&self, a: usize) -> bool {
        (0..self.n)
            .all(|b| (b..self.n).all(|c| !self.leq(a, self.join(b, c)) || self.leq(a, b) || self.leq(a, c)))
    }

    pub fn is_meet_prime(&self, a: usize) -> bool {
        (0..self.n)
            .all(|b| (b..self.n).all(|c| !self.leq(self.meet(b, c), a) || self.leq(b, a) || self.leq(c, a)))
    }

    pub fn is_doubly_prime_elt(&self, a: usize) -> bool {
        self.is_join_prime(a) && self.is_meet_prime(a)
    }

    /// The order dual; element indices and labels are unchanged.
    pub fn dual(&self) -> FiniteLattice {
        FiniteLattice {
            name: format!("{}^op", self.name),
            n: self.n,
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Whitman's condition (W), checked over all quadruples.
    pub fn check_w(&self) -> LawCheck {
        let n = self.n;
        for s in 0..n {
            for t in 0..n {
                let st = self.meet(s, t);
                if self.leq(s, t) || self.leq(t, s) {
                    // then s∧t is s or t, and s∧t ≤ u∨v already gives a disjunct
                    continue;
                }
                for u in 0..n {
                    for v in 0..n {
                        let uv = self.join(u, v);
                        if self.leq(st, uv)
                            && !self.leq(s, uv)
                            && !self.leq(t, uv)
                            && !self.leq(st, u)
                            && !self.leq(st, v)
                        {
                            return LawCheck::from_witness(Some(vec![s, t, u, v]));
                        }
                    }
                }
            }
        }
        LawCheck::from_witness(None)
    }

    /// Whether `(s, t, u, v)` violates (W).
    pub fn is_w_witness(&self, s: usize, t: usize, u: usize, v: usize) -> bool {
        let st = self.meet(s, t);
        let uv = self.join(u, v);
        self.leq(st, uv) && !self.leq(s, uv) && !self.leq(t, uv) && !self.leq(st, u) && !self.leq(st, v)
    }

    /// Meet semidistributivity: `a∧b = a∧c` implies `a∧b = a∧(b∨c)`.
    pub fn check_sd_meet(&self) -> LawCheck {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.meet(a, b);
                for c in b + 1..n {
                    if self.meet(a, c) == ab && self.meet(a, self.join(b, c)) != ab {
                        return LawCheck::from_witness(Some(vec![a, b, c]));
                    }
                }
            }
        }
        LawCheck::from_witness(None)
    }

    /// Join semidistributivity: `a∨b = a∨c` implies `a∨b = a∨(b∧c)`.
    pub fn check_sd_join(&self) -> LawCheck {
        self.dual().check_sd_meet()
    }

    /// Smallest sublattice containing `gens`, with its embedding into `self`.
    pub fn sublattice(&self, gens: &[usize]) -> Result<(FiniteLattice, Vec<usize>)> {
        if gens.is_empty() {
            return Err(Error::Invalid("sublattice needs at least one generator".into()));
        }
        let mut member = vec![false; self.n];
        let mut elems: Vec<usize> = Vec::new();
        for &g in gens {
            if g >= self.n {
                return Err(Error::ElementOutOfRange(g));
            }
            if !member[g] {
                member[g] = true;
                elems.push(g);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let a = elems[i];
            for j in 0..=i {
                let b = elems[j];
                for c in [self.join(a, b), self.meet(a, b)] {
                    if !member[c] {
                        member[c] = true;
                        elems.push(c);
                    }
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let sub = FiniteLattice::from_leq(&format!("{}|sub", self.name), labels, |a, b| {
            self.leq(elems[a], elems[b])
        })?;
        Ok((sub, elems))
    }

    /// Whether a subset is closed under join and meet.
    pub fn is_sublattice(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        set.iter().for_each(|&e| member[e] = true);
        set.iter().all(|&a| set.iter().all(|&b| member[self.join(a, b)] && member[self.meet(a, b)]))
    }

    /// `a, b ∈ set` and `a ≤ x ≤ b` imply `x ∈ set`.
    pub fn is_convex(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        set.iter().for_each(|&e| member[e] = true);
        set.iter().all(|&a| {
            set.iter().all(|&b| (0..self.n).all(|x| !(self.leq(a, x) && self.leq(x, b)) || member[x]))
        })
    }

    /// The underlying poset.
    pub fn to_poset(&self) -> FinitePoset {
        FinitePoset::from_leq(self.labels.clone(), |a, b| self.leq(a, b))
            .expect("a lattice order is a partial order")
    }

    /// Whether `map` (indexed by elements of `self`) preserves joins and meets into `target`.
    pub fn is_homomorphism(&self, target: &FiniteLattice, map: &[usize]) -> bool {
        map.len() == self.n
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| {
                    map[self.join(a, b)] == target.join(map[a], map[b])
                        && map[self.meet(a, b)] == target.meet(map[a], map[b])
                })
            })
    }

    /// An order isomorphism `self → other`, if one exists.
    pub fn isomorphism(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let sig = |l: &FiniteLattice, a: usize| {
            let ups = (0..l.n).filter(|&b| l.leq(a, b)).count();
            let downs = (0..l.n).filter(|&b| l.leq(b, a)).count();
            (ups, downs, l.upper_covers(a).len(), l.lower_covers(a).len())
        };
        let sa: Vec<_> = (0..self.n).map(|a| sig(self, a)).collect();
        let sb: Vec<_> = (0..other.n).map(|a| sig(other, a)).collect();
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        fn go(
            i: usize,
            l: &FiniteLattice,
            r: &FiniteLattice,
            sa: &[(usize, usize, usize, usize)],
            sb: &[(usize, usize, usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == l.n {
                return true;
            }
            for c in 0..r.n {
                if used[c] || sa[i] != sb[c] {
                    continue;
                }
                if (0..i).all(|j| l.leq(i, j) == r.leq(c, map[j]) && l.leq(j, i) == r.leq(map[j], c)) {
                    map[i] = c;
                    used[c] = true;
                    if go(i + 1, l, r, sa, sb, map, used) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            false
        }
        go(0, self, other, &sa, &sb, &mut map, &mut used).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.isomorphism(other).is_some()
    }
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLattice({}, {} elements, covers {:?})", self.name, self.n, self.covers())
    }
}
