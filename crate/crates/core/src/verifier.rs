//! End-to-end reproduction of the finite witnesses: the lattice `A`, the
//! kernel classes of `F₃ → A` and `F₃ → N₅`, both halves of the sentence π₃
//! at bounded term size, and separation of distinct terms by finite quotients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bhom::{a_hom, is_lower_bounded, is_upper_bounded, kernel_table, n5_hom, Hom};
use crate::enumerate::canonical_terms;
use crate::error::{Error, Result};
use crate::finlat::catalog::all_lattices;
use crate::finlat::{
    build_fd3, build_n5, d_rank, d_rank_op, double, double_each, fd3_doubling_targets, FiniteLattice,
};
use crate::parse::parse_term;
use crate::term::{GeneratorSet, Term};
use crate::whitman::{canonical_form, equal, generates_free, in_interval, leq, Interval, TripleIntervals};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    InconclusiveBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::InconclusiveBudget => "inconclusive-budget",
        })
    }
}

/// Outcome of one claim, with every sub-check logged.
#[derive(Clone, Debug)]
pub struct Report {
    pub claim: String,
    pub status: Status,
    /// `(sub-check, passed)` in the order they ran.
    pub checks: Vec<(String, bool)>,
    /// Named counts, such as the number of tuples examined.
    pub counts: BTreeMap<String, u64>,
    /// Witness terms, elements or tables.
    pub evidence: Vec<String>,
    pub elapsed: Duration,
}

impl Report {
    fn new(claim: &str) -> Self {
        Report {
            claim: claim.to_string(),
            status: Status::Pass,
            checks: Vec::new(),
            counts: BTreeMap::new(),
            evidence: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) -> bool {
        self.checks.push((what.into(), ok));
        ok
    }

    fn count(&mut self, key: &str, n: u64) {
        self.counts.insert(key.to_string(), n);
    }

    fn finish(mut self, start: Instant) -> Self {
        if self.status == Status::Pass && (self.checks.is_empty() || self.checks.iter().any(|(_, ok)| !ok)) {
            self.status = Status::Fail;
        }
        self.elapsed = start.elapsed();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("claim: {}\n", self.claim);
        for (what, ok) in &self.checks {
            out += &format!("  [{}] {what}\n", if *ok { "ok" } else { "FAIL" });
        }
        for (k, v) in &self.counts {
            out += &format!("  {k} = {v}\n");
        }
        for e in &self.evidence {
            for line in e.lines() {
                out += &format!("  | {line}\n");
            }
        }
        out += &format!("status: {} ({:.2?})\n", self.status, self.elapsed);
        out
    }

    /// Line records; timings are left out so reruns compare equal.
    pub fn to_records(&self) -> String {
        let clean = |s: &str| s.replace(' ', "");
        let mut out = String::new();
        for (what, ok) in &self.checks {
            out += &format!("record=check claim={} check={} ok={ok}\n", self.claim, clean(what));
        }
        for (k, v) in &self.counts {
            out += &format!("record=count claim={} key={k} value={v}\n", self.claim);
        }
        for e in &self.evidence {
            for line in e.lines() {
                out += &format!("record=evidence claim={} value={}\n", self.claim, clean(line));
            }
        }
        out += &format!("record=status claim={} status={}\n", self.claim, self.status);
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn xyz() -> GeneratorSet {
    GeneratorSet::parse("x,y,z").expect("valid generators")
}

fn term(s: &str) -> Term {
    canonical_form(&parse_term(s, &xyz()).expect("fixed term parses"))
}

/// Independent count of non-constant monotone Boolean functions of three
/// variables, by brute force over all 256 truth tables.
fn monotone_count_3() -> usize {
    (0..=255u16)
        .filter(|&f| (0..8).all(|a| (0..8).all(|b| a & !b != 0 || (f >> a & 1) <= (f >> b & 1))))
        .count()
        - 2
}

fn show_rank(r: Option<usize>) -> String {
    r.map_or_else(|| "unbounded".to_string(), |k| k.to_string())
}

/// Cover pairs of the drawing of `A`: 21, 22, 23 are the generators x, z, y.
pub const FIG1_COVERS: [(usize, usize); 36] = [
    (9, 10),
    (6, 9),
    (3, 6),
    (0, 3),
    (0, 1),
    (1, 4),
    (4, 7),
    (7, 10),
    (8, 10),
    (5, 8),
    (0, 2),
    (2, 4),
    (2, 6),
    (1, 5),
    (3, 5),
    (10, 11),
    (11, 14),
    (14, 17),
    (17, 20),
    (19, 20),
    (16, 19),
    (13, 16),
    (10, 13),
    (10, 12),
    (12, 15),
    (18, 20),
    (16, 18),
    (14, 18),
    (15, 19),
    (15, 17),
    (7, 21),
    (21, 11),
    (8, 22),
    (22, 12),
    (9, 23),
    (23, 13),
];

/// The lattice drawn for `A`, built from its cover pairs.
pub fn fig1_drawing() -> Result<FiniteLattice> {
    let labels = (0..24)
        .map(|i| match i {
            21 => "x".to_string(),
            22 => "z".to_string(),
            23 => "y".to_string(),
            _ => i.to_string(),
        })
        .collect();
    FiniteLattice::from_covers("A(drawing)", labels, &FIG1_COVERS)
}

/// Builds `A` from FD₃ and checks size, boundedness and agreement with the drawing.
pub fn verify_figure1() -> Report {
    let start = Instant::now();
    let mut r = Report::new("figure1");
    let fd3 = build_fd3();
    r.check(
        format!("|FD3| = {} = {} monotone functions", fd3.len(), monotone_count_3()),
        fd3.len() == 18 && monotone_count_3() == 18,
    );
    let targets = fd3_doubling_targets(&fd3);
    let names: Vec<&str> = targets.iter().map(|&t| fd3.label(t)).collect();
    r.check(format!("six doubling targets: {}", names.join(", ")), targets.len() == 6);
    r.check(
        "target set is not convex, so the elements are doubled one at a time",
        matches!(double(&fd3, &targets), Err(Error::NotConvex(_))),
    );
    let doubled = match double_each(&fd3, &targets) {
        Ok(d) => d,
        Err(e) => {
            r.check(format!("doubling failed: {e}"), false);
            return r.finish(start);
        }
    };
    let a = doubled.lattice;
    r.check(format!("|A| = {}", a.len()), a.len() == 24);
    r.check("collapse A → FD3 is a homomorphism", a.is_homomorphism(&fd3, &doubled.projection));
    let (lo, up) = (d_rank(&a), d_rank_op(&a));
    r.check("A is lower bounded", lo.is_bounded());
    r.check("A is upper bounded", up.is_bounded());
    r.evidence.push(format!("D-rank of A = {}, dual D-rank = {}", show_rank(lo.rank), show_rank(up.rank)));
    r.count("covers", a.covers().len() as u64);
    let h = a_hom();
    r.check("h: F3 → A is bounded", is_lower_bounded(&h) && is_upper_bounded(&h));
    match fig1_drawing() {
        Ok(drawn) => {
            r.check(
                format!("drawing has {} elements and {} covers", drawn.len(), drawn.covers().len()),
                drawn.len() == 24 && drawn.covers().len() == a.covers().len(),
            );
            r.check("drawing ≅ A with x, y, z matched", matches_drawing(&h, &drawn));
        }
        Err(e) => {
            r.check(format!("drawing is not a lattice: {e}"), false);
        }
    }
    r.finish(start)
}

/// Sends each element of `A` to the drawing through a term naming it, then
/// checks the map is an order isomorphism.
fn matches_drawing(h: &Hom, drawn: &FiniteLattice) -> bool {
    let Ok(table) = kernel_table(h) else { return false };
    let find = |g: &str| drawn.find(g).expect("drawing labels generators");
    let images = |name: &str| Some(find(name));
    let map: Vec<Option<usize>> = {
        let mut m = vec![None; h.target().len()];
        for row in &table.rows {
            m[row.element] = row.beta.eval_with(drawn, &images).ok();
        }
        m
    };
    let Some(map) = map.into_iter().collect::<Option<Vec<usize>>>() else { return false };
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    let a = h.target();
    distinct.len() == a.len()
        && a.elements().all(|p| a.elements().all(|q| a.leq(p, q) == drawn.leq(map[p], map[q])))
}

/// The permutations of `x, y, z` applied to a term.
fn permuted(t: &Term) -> Vec<Term> {
    const PERMS: [[&str; 3]; 6] = [
        ["x", "y", "z"],
        ["x", "z", "y"],
        ["y", "x", "z"],
        ["y", "z", "x"],
        ["z", "x", "y"],
        ["z", "y", "x"],
    ];
    PERMS
        .iter()
        .map(|p| {
            let f = |g: &str| match g {
                "x" => Some(Term::var(p[0])),
                "y" => Some(Term::var(p[1])),
                "z" => Some(Term::var(p[2])),
                _ => None,
            };
            canonical_form(&t.substitute_with(&f).expect("generators are x, y, z"))
        })
        .collect()
}

/// The kernel classes of `F₃ → A` as listed, closed under permutations of
/// `x, y, z`, each tagged with its family name.
pub fn figure2_expected() -> Vec<(String, Interval)> {
    let m = "xy+xz+yz";
    let big_m = "(x+y)(x+z)(y+z)";
    let families: Vec<(&str, String, String)> = vec![
        ("T", "(x+y)(x+z)".into(), "(x+y)(x+z)".into()),
        ("T", "x+y".into(), "x+y".into()),
        ("T", "x+y+z".into(), "x+y+z".into()),
        ("I", "x+yz".into(), format!("x+{big_m}")),
        ("G", "x".into(), "x".into()),
        ("J", format!("x({m})"), "x(y+z)".into()),
        ("B", "xy+xz".into(), "xy+xz".into()),
        ("B", "xy".into(), "xy".into()),
        ("B", "xyz".into(), "xyz".into()),
        ("K", m.into(), big_m.into()),
    ];
    let mut out: Vec<(String, Interval)> = Vec::new();
    for (tag, lo, hi) in families {
        for (l, h) in permuted(&term(&lo)).into_iter().zip(permuted(&term(&hi))) {
            let iv = Interval::new(l, h).expect("listed classes are intervals");
            if !out.iter().any(|(_, o)| *o == iv) {
                out.push((tag.to_string(), iv));
            }
        }
    }
    out
}

/// The kernel of `F₃ → A` against the listed interval classes.
pub fn verify_figure2() -> Report {
    let start = Instant::now();
    let mut r = Report::new("figure2");
    let h = a_hom();
    let table = match kernel_table(&h) {
        Ok(t) => t,
        Err(e) => {
            r.check(format!("kernel table: {e}"), false);
            return r.finish(start);
        }
    };
    r.check(format!("{} classes = |A|", table.len()), table.len() == h.target().len() && table.len() == 24);
    let expected = figure2_expected();
    r.check(format!("{} listed classes up to permutation", expected.len()), expected.len() == 24);
    let mut per_family: BTreeMap<String, u64> = BTreeMap::new();
    let mut unmatched = 0;
    for row in &table.rows {
        match expected.iter().find(|(_, iv)| *iv == row.interval()) {
            Some((tag, _)) => {
                *per_family.entry(tag.clone()).or_default() += 1;
                r.evidence.push(format!("{:<10} {tag}  {}", row.label, row.interval()));
            }
            None => {
                unmatched += 1;
                r.evidence.push(format!("{:<10} ?  {}", row.label, row.interval()));
            }
        }
    }
    r.check("every computed class is a listed class", unmatched == 0);
    for (tag, n) in &per_family {
        r.count(&format!("family {tag}"), *n);
    }
    let m = term("xy+xz+yz");
    let k = Interval::new(m.clone(), term("(x+y)(x+z)(y+z)")).expect("K");
    let class_m = h.eval(&m).ok().and_then(|e| table.row(e)).map(|row| row.interval());
    r.check("class of m is K = [m, M]", class_m == Some(k));
    let x = term("x");
    let class_x = h.eval(&x).ok().and_then(|e| table.row(e)).map(|row| row.interval());
    r.check("class of x is [x, x]", class_x == Some(Interval::point(x)));
    r.finish(start)
}

/// The five kernel classes of `F₃ → N₅`.
pub fn figure3_expected() -> Vec<Interval> {
    [("xyz", "z(x+y)"), ("z", "z"), ("z+xy", "x+y+z"), ("xy", "y+z(x+y)"), ("x(z+xy)", "x+y")]
        .iter()
        .map(|(l, h)| Interval::new(term(l), term(h)).expect("listed classes are intervals"))
        .collect()
}

pub fn verify_figure3() -> Report {
    let start = Instant::now();
    let mut r = Report::new("figure3");
    let h = n5_hom();
    r.evidence.push(format!("map: {}", h.describe()));
    match kernel_table(&h) {
        Ok(table) => {
            r.check(format!("{} classes", table.len()), table.len() == 5);
            let expected = figure3_expected();
            for iv in &expected {
                let found = table.rows.iter().any(|row| row.interval() == *iv);
                r.check(format!("class {iv}"), found);
            }
            r.evidence.push(table.to_text());
            let w = term("x(z+xy)");
            r.check("w = x(z+xy) maps to the image of x", h.eval(&w).ok() == h.eval(&term("x")).ok());
        }
        Err(e) => {
            r.check(format!("kernel table: {e}"), false);
        }
    }
    let rank = d_rank(&build_n5()).rank;
    r.check(format!("D-rank of N5 = {}", show_rank(rank)), rank == Some(1));
    r.finish(start)
}

/// Bits for membership in the intervals relative to `x, y, z`.
const I_BIT: u16 = 0; // I^{z_i}: bits 0..3
const J_BIT: u16 = 3; // J_{z_j}: bits 3..6
const P_BIT: u16 = 6; // {z_i}: bits 6..9
const K_MASK: u16 = 1 << 9;

fn pi3_unions() -> Vec<(String, u16)> {
    let names = ["x", "y", "z"];
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.push((
                    format!("I^{} ∪ J_{} ∪ K", names[i], names[j]),
                    1 << (I_BIT + i as u16) | 1 << (J_BIT + j as u16) | K_MASK,
                ));
            }
        }
    }
    for (i, name) in names.iter().enumerate() {
        out.push((format!("{{{name}}} ∪ K"), 1 << (P_BIT + i as u16) | K_MASK));
    }
    out
}

/// Candidates, free 4-sets, the first few free 4-sets and the uncovered ones,
/// for one smallest index.
type FirstIndexResult = (u64, u64, Vec<[usize; 4]>, Vec<[usize; 4]>);

fn triple_free(a: &Term, b: &Term, c: &Term) -> bool {
    let one = |p: &Term, q: &Term, r: &Term| !leq(p, &q.or(r)) && !leq(&q.and(r), p);
    one(a, b, c) && one(b, a, c) && one(c, a, b)
}

/// Every 4-set of canonical terms over `x, y, z` of size at most `max_size`
/// that generates a copy of F₄ lies in `I^{z_i} ∪ J_{z_j} ∪ K` for some
/// `i ≠ j` or in `{z_i} ∪ K`, with `z = (x, y, z)`.
#[allow(clippy::needless_range_loop)]
pub fn check_pi3_in_f3(max_size: usize) -> Report {
    let start = Instant::now();
    let mut r = Report::new("pi3-f3");
    let gens = xyz();
    let terms = canonical_terms(&gens, max_size);
    let n = terms.len();
    r.count("terms", n as u64);

    let z = [Term::var("x"), Term::var("y"), Term::var("z")];
    let tri = TripleIntervals::new(z.clone());
    let mut intervals: Vec<(u16, Interval)> = Vec::new();
    for i in 0..3 {
        intervals.push((1 << (I_BIT + i as u16), tri.upper(i)));
        intervals.push((1 << (J_BIT + i as u16), tri.lower(i)));
        intervals.push((1 << (P_BIT + i as u16), Interval::point(z[i].clone())));
    }
    intervals.push((K_MASK, tri.middle()));
    let masks: Vec<u16> = terms
        .par_iter()
        .map(|t| intervals.iter().filter(|(_, iv)| in_interval(t, iv)).fold(0, |m, (b, _)| m | b))
        .collect();
    let unions = pi3_unions();

    let incomparable: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| !leq(&terms[i], &terms[j]) && !leq(&terms[j], &terms[i])).collect())
        .collect();

    // 4-sets i < j < k < l whose sub-triples already avoid NI
    let per_first: Vec<FirstIndexResult> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut candidates = 0u64;
            let mut free = Vec::new();
            let mut uncovered = Vec::new();
            let mut free_count = 0u64;
            for j in i + 1..n {
                if !incomparable[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if !incomparable[i][k]
                        || !incomparable[j][k]
                        || !triple_free(&terms[i], &terms[j], &terms[k])
                    {
                        continue;
                    }
                    for l in k + 1..n {
                        if !incomparable[i][l] || !incomparable[j][l] || !incomparable[k][l] {
                            continue;
                        }
                        candidates += 1;
                        let tuple = [i, j, k, l];
                        let ts: Vec<Term> = tuple.iter().map(|&e| terms[e].clone()).collect();
                        if !generates_free(&ts).expect("four terms") {
                            continue;
                        }
                        free_count += 1;
                        if free.len() < 3 {
                            free.push(tuple);
                        }
                        let covered = unions.iter().any(|(_, u)| tuple.iter().all(|&e| masks[e] & u != 0));
                        if !covered {
                            uncovered.push(tuple);
                        }
                    }
                }
            }
            (candidates, free_count, free, uncovered)
        })
        .collect();

    let candidates: u64 = per_first.iter().map(|p| p.0).sum();
    let free: u64 = per_first.iter().map(|p| p.1).sum();
    let uncovered: Vec<[usize; 4]> = per_first.iter().flat_map(|p| p.3.iter().copied()).collect();
    let show = |t: &[usize; 4]| t.iter().map(|&e| terms[e].to_string()).collect::<Vec<_>>().join(", ");
    r.count("pairwise-incomparable candidate 4-sets", candidates);
    r.count("4-sets generating F4", free);
    r.count("uncovered 4-sets", uncovered.len() as u64);
    if let Some(first) = per_first.iter().flat_map(|p| p.2.iter()).next() {
        r.evidence.push(format!("first free 4-set: {}", show(first)));
    }
    for t in uncovered.iter().take(10) {
        r.evidence.push(format!("uncovered: {}", show(t)));
    }
    r.check(format!("all {free} free 4-sets of size ≤ {max_size} covered"), uncovered.is_empty());
    r.finish(start)
}

/// First (in enumeration order) 4-set of canonical F₃ terms of size at most
/// `max_size` that generates a copy of F₄.
pub fn first_free_quadruple(max_size: usize) -> Option<[Term; 4]> {
    let terms = canonical_terms(&xyz(), max_size);
    let n = terms.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !triple_free(&terms[i], &terms[j], &terms[k]) {
                    continue;
                }
                for l in k + 1..n {
                    let ts = [terms[i].clone(), terms[j].clone(), terms[k].clone(), terms[l].clone()];
                    if generates_free(&ts).expect("four terms") {
                        return Some(ts);
                    }
                }
            }
        }
    }
    None
}

/// Which generators lie below (`up`) and above (`down`) a term. Generators of
/// a free lattice are doubly prime, so these sets propagate exactly through
/// joins and meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct GenMask {
    /// `{i : x_i ≤ t}`
    up: u8,
    /// `{i : t ≤ x_i}`
    down: u8,
}

impl GenMask {
    fn of(t: &Term, gens: &[Term]) -> Self {
        let mut m = GenMask { up: 0, down: 0 };
        for (i, g) in gens.iter().enumerate() {
            if leq(g, t) {
                m.up |= 1 << i;
            }
            if leq(t, g) {
                m.down |= 1 << i;
            }
        }
        m
    }

    fn join(self, o: Self) -> Self {
        GenMask { up: self.up | o.up, down: self.down & o.down }
    }

    fn meet(self, o: Self) -> Self {
        GenMask { up: self.up & o.up, down: self.down | o.down }
    }
}

/// Generators inside `[lo, hi]`.
fn gens_in(lo: GenMask, hi: GenMask) -> u8 {
    lo.down & hi.up
}

/// Generators covered by the two conditions of π₃ for the ordered triple `z`:
/// returns `(I/J/K condition holds, point/K condition holds)`.
fn pi3_conditions(z: [GenMask; 3], all: u8) -> (bool, bool) {
    let (a, b, c) = (z[0], z[1], z[2]);
    let m = a.meet(b).join(a.meet(c)).join(b.meet(c));
    let big_m = a.join(b).meet(a.join(c)).meet(b.join(c));
    let k = gens_in(m, big_m);
    let upper = |i: usize| {
        let (p, q, r) = (z[i], z[(i + 1) % 3], z[(i + 2) % 3]);
        gens_in(p.join(q.meet(r)), p.join(big_m))
    };
    let lower = |i: usize| {
        let (p, q, r) = (z[i], z[(i + 1) % 3], z[(i + 2) % 3]);
        gens_in(p.meet(m), p.meet(q.join(r)))
    };
    let point = |i: usize| gens_in(z[i], z[i]);
    let mut case1 = false;
    for i in 0..3 {
        for j in 0..3 {
            if i != j && (upper(i) | lower(j) | k) == all {
                case1 = true;
            }
        }
    }
    let case2 = (0..3).any(|i| (point(i) | k) == all);
    (case1, case2)
}

#[allow(clippy::needless_range_loop)]
fn direct_conditions(z: &[Term; 3], gens: &[Term]) -> (bool, bool) {
    let tri = TripleIntervals::new(z.clone());
    let covered = |ivs: &[Interval]| gens.iter().all(|g| ivs.iter().any(|iv| in_interval(g, iv)));
    let k = tri.middle();
    let mut case1 = false;
    for i in 0..3 {
        for j in 0..3 {
            if i != j && covered(&[tri.upper(i), tri.lower(j), k.clone()]) {
                case1 = true;
            }
        }
    }
    let case2 = (0..3).any(|i| covered(&[Interval::point(z[i].clone()), k.clone()]));
    (case1, case2)
}

/// Searches ordered triples of canonical F₄ terms of size at most `max_size`
/// with `z₁+z₂+z₃ = 1` and `z₁z₂z₃ = 0` for one satisfying either covering
/// condition of π₃ against the standard generators.
///
/// Triples are grouped by the generator masks of their entries, which fix
/// both side conditions and every interval membership of a generator; a
/// sample of surviving triples is re-checked directly with Whitman queries.
pub fn search_pi3_in_f4(max_size: usize) -> Report {
    let start = Instant::now();
    let mut r = Report::new("pi3-f4");
    let gens = GeneratorSet::indexed("x", 4).expect("four generators");
    let xs = gens.terms();
    let all: u8 = 0b1111;
    let terms = canonical_terms(&gens, max_size);
    r.count("terms", terms.len() as u64);

    let masks: Vec<GenMask> = terms.par_iter().map(|t| GenMask::of(t, &xs)).collect();
    let mut classes: BTreeMap<GenMask, Vec<usize>> = BTreeMap::new();
    for (i, m) in masks.iter().enumerate() {
        classes.entry(*m).or_default().push(i);
    }
    let keys: Vec<GenMask> = classes.keys().copied().collect();
    r.count("mask classes", keys.len() as u64);

    let mut surviving = 0u64;
    let mut case1 = 0u64;
    let mut case2 = 0u64;
    let mut witness: Option<[usize; 3]> = None;
    let mut sample: Vec<[usize; 3]> = Vec::new();
    for &a in &keys {
        for &b in &keys {
            for &c in &keys {
                if (a.up | b.up | c.up) != all || (a.down | b.down | c.down) != all {
                    continue;
                }
                let weight = (classes[&a].len() * classes[&b].len() * classes[&c].len()) as u64;
                surviving += weight;
                let rep = [classes[&a][0], classes[&b][0], classes[&c][0]];
                if sample.len() < 400 {
                    sample.push(rep);
                }
                let (c1, c2) = pi3_conditions([a, b, c], all);
                if c1 {
                    case1 += weight;
                }
                if c2 {
                    case2 += weight;
                }
                if (c1 || c2) && witness.is_none() {
                    witness = Some(rep);
                }
            }
        }
    }
    r.count("ordered triples with z1+z2+z3 = 1 and z1z2z3 = 0", surviving);
    r.count("case 1 (I^{z_i} ∪ J_{z_j} ∪ K) satisfied", case1);
    r.count("case 2 ({z_i} ∪ K) satisfied", case2);

    // direct re-check of the side conditions and both cases on the sample,
    // plus the side conditions on triples the masks reject
    let top = gens.top();
    let bottom = gens.bottom();
    let mut disagreements = 0u64;
    for z in &sample {
        let ts = [terms[z[0]].clone(), terms[z[1]].clone(), terms[z[2]].clone()];
        let sides =
            equal(&Term::join(ts.iter().cloned()), &top) && equal(&Term::meet(ts.iter().cloned()), &bottom);
        let direct = direct_conditions(&ts, &xs);
        let by_mask = pi3_conditions([masks[z[0]], masks[z[1]], masks[z[2]]], all);
        if !sides || direct != by_mask {
            disagreements += 1;
        }
    }
    let step = (terms.len() / 23).max(1);
    let mut rejected_checked = 0u64;
    for i in (0..terms.len()).step_by(step) {
        for j in (0..terms.len()).step_by(step + 1) {
            for k in (0..terms.len()).step_by(step + 2) {
                let (a, b, c) = (masks[i], masks[j], masks[k]);
                let by_mask = (a.up | b.up | c.up) == all && (a.down | b.down | c.down) == all;
                let ts = [terms[i].clone(), terms[j].clone(), terms[k].clone()];
                let direct = equal(&Term::join(ts.iter().cloned()), &top)
                    && equal(&Term::meet(ts.iter().cloned()), &bottom);
                rejected_checked += 1;
                if by_mask != direct
                    || (direct && direct_conditions(&ts, &xs) != pi3_conditions([a, b, c], all))
                {
                    disagreements += 1;
                }
            }
        }
    }
    r.count("triples re-checked directly", sample.len() as u64 + rejected_checked);
    r.check("mask evaluation agrees with direct Whitman queries", disagreements == 0);
    if let Some(w) = witness {
        let show: Vec<String> = w.iter().map(|&i| terms[i].to_string()).collect();
        r.evidence.push(format!("counterexample triple: {}", show.join(", ")));
    }
    r.check(format!("no triple of size ≤ {max_size} satisfies case 1"), case1 == 0);
    r.check(format!("no triple of size ≤ {max_size} satisfies case 2"), case2 == 0);
    r.finish(start)
}

/// Looks for a finite quotient that tells `s` and `t` apart: the maps onto
/// N₅ and `A`, then every assignment into each lattice of size at most five.
pub fn separate_terms(s: &Term, t: &Term) -> Result<Report> {
    if equal(s, t) {
        return Err(Error::TermsEqual(format!("{s} = {t}")));
    }
    let start = Instant::now();
    let mut r = Report::new("separate");
    let mut names: Vec<String> = s.generators();
    names.extend(t.generators());
    names.sort();
    names.dedup();
    let mut tried = 0u64;
    let uses_xyz = names.iter().all(|g| ["x", "y", "z"].contains(&g.as_str()));
    if uses_xyz {
        for h in [n5_hom(), a_hom()] {
            tried += 1;
            let (a, b) = (h.eval(s)?, h.eval(t)?);
            if a != b {
                r.evidence.push(format!(
                    "{} ({}): {} ↦ {}, {} ↦ {}",
                    h.target().name(),
                    h.describe(),
                    s,
                    h.target().label(a),
                    t,
                    h.target().label(b)
                ));
                r.count("maps tried", tried);
                r.check("separated", true);
                return Ok(r.finish(start));
            }
        }
    }
    let gens = GeneratorSet::new(&names)?;
    for l in all_lattices(5) {
        let k = gens.rank();
        let total = l.len().pow(k as u32);
        for code in 0..total {
            tried += 1;
            let images: Vec<usize> = (0..k).map(|i| code / l.len().pow(i as u32) % l.len()).collect();
            let h = Hom::new(gens.clone(), l.clone(), images)?;
            let (a, b) = (h.eval(s)?, h.eval(t)?);
            if a != b {
                r.evidence.push(format!(
                    "{} ({}): {} ↦ {}, {} ↦ {}",
                    l.name(),
                    h.describe(),
                    s,
                    l.label(a),
                    t,
                    l.label(b)
                ));
                r.count("maps tried", tried);
                r.check("separated", true);
                return Ok(r.finish(start));
            }
        }
    }
    r.count("maps tried", tried);
    r.status = Status::InconclusiveBudget;
    r.checks.push(("separated by a catalog quotient".into(), false));
    Ok(r.finish(start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figures() {
        let r = verify_figure1();
        assert!(r.passed(), "{r}");
        let r = verify_figure2();
        assert!(r.passed(), "{r}");
        let r = verify_figure3();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn pi3_small_budgets() {
        let r = check_pi3_in_f3(0);
        assert!(r.passed());
        assert_eq!(r.counts["4-sets generating F4"], 0);
        let r = search_pi3_in_f4(2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn f4_side_condition_examples() {
        let gens = GeneratorSet::indexed("x", 4).unwrap();
        let xs = gens.terms();
        let p = |s: &str| parse_term(s, &gens).unwrap();
        for z in [["x1", "x2", "x3+x4"], ["x1+x2", "x3", "x4"]] {
            let ms: Vec<GenMask> = z.iter().map(|s| GenMask::of(&p(s), &xs)).collect();
            assert_ne!(ms.iter().fold(0, |a, m| a | m.down), 0b1111);
            let meet = Term::meet(z.iter().map(|s| p(s)));
            assert!(!equal(&meet, &gens.bottom()));
        }
    }

    #[test]
    fn separation() {
        let r = separate_terms(&term("x"), &term("y")).unwrap();
        assert!(r.passed());
        let r = separate_terms(&term("xy+xz+yz"), &term("(x+y)(x+z)(y+z)")).unwrap();
        assert!(r.passed(), "{r}");
        assert!(!r.evidence[0].starts_with("A "));
        let r = separate_terms(&term("x"), &term("x+yz")).unwrap();
        assert!(r.passed());
        assert!(matches!(separate_terms(&term("x"), &term("x+xy")), Err(Error::TermsEqual(_))));
    }
}
