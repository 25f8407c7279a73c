//! Decision procedures inside free lattices.
//!
//! [`leq`] is Whitman's recursion; everything else is built on it. Results
//! are memoized in process-wide concurrent tables keyed by interned term ids,
//! so repeated queries across a search are cheap. The tables are bounded and
//! flushed wholesale when they grow past [`CACHE_LIMIT`] entries.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::LazyLock;

use dashmap::DashMap;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

use crate::enumerate::enumerate_terms;
use crate::error::{Error, Result};
use crate::term::{GeneratorSet, Op, Term};

/// Entries kept in each memo table before it is flushed.
pub const CACHE_LIMIT: usize = 1 << 25;

static LEQ_CACHE: LazyLock<DashMap<u64, bool, FxBuildHasher>> =
    LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));
static CANON_CACHE: LazyLock<DashMap<u32, Term, FxBuildHasher>> =
    LazyLock::new(|| DashMap::with_hasher(FxBuildHasher));
static INSERTS: AtomicUsize = AtomicUsize::new(0);

/// Drops all memoized `leq` and canonical-form results.
pub fn clear_caches() {
    LEQ_CACHE.clear();
    CANON_CACHE.clear();
}

fn note_insert() {
    if INSERTS.fetch_add(1, Ordering::Relaxed) % 65_536 == 65_535
        && LEQ_CACHE.len() + CANON_CACHE.len() > CACHE_LIMIT
    {
        clear_caches();
    }
}

/// Whether `s ≤ t` holds in the free lattice.
pub fn leq(s: &Term, t: &Term) -> bool {
    if s.id() == t.id() {
        return true;
    }
    if s.is_gen() && t.is_gen() {
        return false;
    }
    let key = (u64::from(s.id()) << 32) | u64::from(t.id());
    if let Some(v) = LEQ_CACHE.get(&key) {
        return *v;
    }
    let v = leq_step(s, t);
    LEQ_CACHE.insert(key, v);
    note_insert();
    v
}

fn leq_step(s: &Term, t: &Term) -> bool {
    match (s.op(), t.op()) {
        (None, None) => false,
        (Some(Op::Join), _) => s.args().iter().all(|a| leq(a, t)),
        (_, Some(Op::Meet)) => t.args().iter().all(|b| leq(s, b)),
        (None, Some(Op::Join)) => t.args().iter().any(|b| leq(s, b)),
        (Some(Op::Meet), None) => s.args().iter().any(|a| leq(a, t)),
        // (W): a meet is below a join only if a meetand is below the join
        // or the meet is below a joinand.
        (Some(Op::Meet), Some(Op::Join)) => {
            s.args().iter().any(|a| leq(a, t)) || t.args().iter().any(|b| leq(s, b))
        }
    }
}

/// Whether `s` and `t` denote the same element of the free lattice.
pub fn equal(s: &Term, t: &Term) -> bool {
    s == t || (leq(s, t) && leq(t, s))
}

/// `a ≤ b` read in the direction of `op`: `≤` for joins, `≥` for meets.
#[inline]
fn below_in(op: Op, a: &Term, b: &Term) -> bool {
    match op {
        Op::Join => leq(a, b),
        Op::Meet => leq(b, a),
    }
}

fn push_flat(op: Op, t: Term, items: &mut Vec<Term>) {
    if t.op() == Some(op) {
        for a in t.args() {
            if !items.contains(a) {
                items.push(a.clone());
            }
        }
    } else if !items.contains(&t) {
        items.push(t);
    }
}

/// Whitman canonical form: the unique shortest representative of the
/// element, with operands ordered by [`Term`]'s `Ord`.
pub fn canonical_form(t: &Term) -> Term {
    let Some(op) = t.op() else {
        return t.clone();
    };
    if let Some(c) = CANON_CACHE.get(&t.id()) {
        return c.clone();
    }
    let mut items = Vec::with_capacity(t.args().len());
    for a in t.args() {
        push_flat(op, canonical_form(a), &mut items);
    }
    let out = reduce(op, items);
    CANON_CACHE.insert(t.id(), out.clone());
    CANON_CACHE.insert(out.id(), out.clone());
    note_insert();
    out
}

/// Reduces a flattened list of canonical operands of `op` to canonical form.
fn reduce(op: Op, mut items: Vec<Term>) -> Term {
    'outer: loop {
        if items.len() == 1 {
            return items.pop().unwrap();
        }
        let whole = Term::apply(op, items.iter().cloned());
        // Replace an operand of the dual kind by one of its own operands
        // whenever that operand already lies on the right side of the whole.
        for i in 0..items.len() {
            if items[i].op() != Some(op.dual()) {
                continue;
            }
            let hit = items[i].args().iter().find(|u| below_in(op, u, &whole)).cloned();
            if let Some(u) = hit {
                items.swap_remove(i);
                push_flat(op, u, &mut items);
                continue 'outer;
            }
        }
        // Drop operands absorbed by the rest.
        for i in 0..items.len() {
            let rest =
                Term::apply(op, items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t.clone()));
            if below_in(op, &items[i], &rest) {
                items.remove(i);
                continue 'outer;
            }
        }
        break;
    }
    items.sort();
    Term::apply(op, items)
}

/// Whether an operand list is already canonical for `op`: operands are
/// canonical, of the other kind, pairwise incomparable, and no operand of a
/// dual-kind operand lies on the right side of the whole.
pub(crate) fn is_canonical_op(op: Op, operands: &[Term], whole: &Term) -> bool {
    for (i, a) in operands.iter().enumerate() {
        for b in &operands[i + 1..] {
            if leq(a, b) || leq(b, a) {
                return false;
            }
        }
    }
    operands.iter().all(|a| a.op() != Some(op.dual()) || !a.args().iter().any(|u| below_in(op, u, whole)))
}

/// True iff `t` is equal to a generator; in a free lattice these are exactly
/// the doubly prime elements.
pub fn is_doubly_prime(t: &Term) -> bool {
    canonical_form(t).is_gen()
}

fn others(ts: &[Term], i: usize, op: Op) -> Term {
    Term::apply(op, ts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t.clone()))
}

/// `NI(t₁,…,t_m)`: some `tᵢ` lies below the join of the others, or above
/// their meet.
pub fn ni_predicate(ts: &[Term]) -> Result<bool> {
    if ts.len() < 2 {
        return Err(Error::Invalid(format!("NI needs at least 2 terms, got {}", ts.len())));
    }
    Ok((0..ts.len()).any(|i| leq(&ts[i], &others(ts, i, Op::Join)) || leq(&others(ts, i, Op::Meet), &ts[i])))
}

/// Whether four elements of a free lattice generate a copy of F₄, which in
/// the presence of (W) is exactly the failure of NI.
pub fn generates_free(ts: &[Term]) -> Result<bool> {
    if ts.len() != 4 {
        return Err(Error::Invalid(format!("expected 4 terms, got {}", ts.len())));
    }
    Ok(!ni_predicate(ts)?)
}

/// Closed interval `[lo, hi]` of a free lattice.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    lo: Term,
    hi: Term,
}

impl Interval {
    pub fn new(lo: Term, hi: Term) -> Result<Self> {
        if !leq(&lo, &hi) {
            return Err(Error::EmptyInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(t: Term) -> Self {
        Interval { lo: t.clone(), hi: t }
    }

    pub fn lo(&self) -> &Term {
        &self.lo
    }

    pub fn hi(&self) -> &Term {
        &self.hi
    }

    pub fn contains(&self, w: &Term) -> bool {
        in_interval(w, self)
    }

    /// Both ends in canonical form.
    pub fn canonical(&self) -> Interval {
        Interval { lo: canonical_form(&self.lo), hi: canonical_form(&self.hi) }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn in_interval(w: &Term, interval: &Interval) -> bool {
    leq(&interval.lo, w) && leq(w, &interval.hi)
}

/// `CI(X, I₁,…,I_n)`: every term lies in one of the intervals.
pub fn ci_check(ts: &[Term], intervals: &[Interval]) -> bool {
    ts.iter().all(|t| intervals.iter().any(|i| in_interval(t, i)))
}

/// The intervals `I^x`, `J_x` and `K` relative to an ordered triple.
///
/// `upper(i)` is `I^{zᵢ} = [zᵢ + zⱼzₖ, zᵢ + M]`, `lower(i)` is
/// `J_{zᵢ} = [zᵢm, zᵢ(zⱼ+zₖ)]` and `middle()` is `K = [m, M]`, with
/// `m = z₁z₂+z₁z₃+z₂z₃` and `M = (z₁+z₂)(z₁+z₃)(z₂+z₃)`.
#[derive(Clone, Debug)]
pub struct TripleIntervals {
    z: [Term; 3],
    m: Term,
    big_m: Term,
}

impl TripleIntervals {
    pub fn new(z: [Term; 3]) -> Self {
        let [a, b, c] = &z;
        let m = Term::join([a.and(b), a.and(c), b.and(c)]);
        let big_m = Term::meet([a.or(b), a.or(c), b.or(c)]);
        TripleIntervals { z, m, big_m }
    }

    pub fn m(&self) -> &Term {
        &self.m
    }

    pub fn big_m(&self) -> &Term {
        &self.big_m
    }

    fn rest(&self, i: usize) -> (&Term, &Term) {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let (j, k) = (j.min(k), j.max(k));
        (&self.z[j], &self.z[k])
    }

    pub fn upper(&self, i: usize) -> Interval {
        let zi = &self.z[i];
        let (zj, zk) = self.rest(i);
        Interval { lo: zi.or(&zj.and(zk)), hi: zi.or(&self.big_m) }
    }

    pub fn lower(&self, i: usize) -> Interval {
        let zi = &self.z[i];
        let (zj, zk) = self.rest(i);
        Interval { lo: zi.and(&self.m), hi: zi.and(&zj.or(zk)) }
    }

    pub fn middle(&self) -> Interval {
        Interval { lo: self.m.clone(), hi: self.big_m.clone() }
    }
}

/// Searches canonical terms over `gens` of size at most `max_size`, in
/// enumeration order, for a fixed point `w = p(w)` of the polynomial `p`
/// in the variable `var`. `None` only certifies the bounded fragment.
pub fn fixed_point_search(p: &Term, var: &str, gens: &GeneratorSet, max_size: usize) -> Option<Term> {
    let candidates: Vec<Term> = enumerate_terms(gens, max_size).collect();
    candidates
        .par_iter()
        .find_first(|w| {
            p.substitute_with(&|name| Some(if name == var { (*w).clone() } else { Term::var(name) }))
                .is_ok_and(|pw| equal(&pw, w))
        })
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn g3() -> GeneratorSet {
        GeneratorSet::parse("x,y,z").unwrap()
    }

    fn t(s: &str) -> Term {
        parse_term(s, &g3()).unwrap()
    }

    #[test]
    fn leq_examples() {
        assert!(leq(&t("x*y"), &t("x")));
        assert!(leq(&t("x*(xy+xz+yz)"), &t("x*(y+z)")));
        assert!(!leq(&t("x*(y+z)"), &t("x*y+x*z")));
        assert!(leq(&t("x*y+x*z"), &t("x*(y+z)")));
        assert!(!leq(&t("x"), &t("y")));
    }

    #[test]
    fn equal_examples() {
        assert!(equal(&t("x+y"), &t("y+x")));
        assert!(equal(&t("x"), &t("x+x*y")));
        assert!(!equal(&t("x+yz"), &t("(x+y)(x+z)")));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&t("(x+y)+x")), t("x+y"));
        assert_eq!(canonical_form(&t("x*(x+y)")), t("x"));
        let big_m = t("(x+y)(x+z)(y+z)");
        assert_eq!(canonical_form(&big_m), big_m);
        assert_eq!(canonical_form(&t("y+x")), t("x+y"));
        // absorption
        assert_eq!(canonical_form(&t("(x+y)*(x+z)+x")), t("(x+y)*(x+z)"));
        assert_eq!(canonical_form(&t("x+y*(x+z)")), t("x+y*(x+z)"));
        // meetand x+yz of the second joinand is below the whole
        assert_eq!(canonical_form(&t("x+(x+y*z)*(x+y)")), t("x+y*z"));
    }

    #[test]
    fn doubly_prime() {
        assert!(is_doubly_prime(&t("x")));
        assert!(!is_doubly_prime(&t("x*y")));
        assert!(is_doubly_prime(&t("x+x*y")));
    }

    #[test]
    fn ni_examples() {
        assert!(ni_predicate(&[t("x"), t("y"), t("x"), t("y")]).unwrap());
        assert!(ni_predicate(&[t("x"), t("y"), t("x*y")]).unwrap());
        let f4 = GeneratorSet::indexed("x", 4).unwrap();
        assert!(!ni_predicate(&f4.terms()).unwrap());
        assert!(generates_free(&f4.terms()).unwrap());
        assert!(!generates_free(&[t("x"), t("y"), t("x"), t("y")]).unwrap());
        assert!(ni_predicate(&[t("x")]).is_err());
        assert!(generates_free(&[t("x")]).is_err());
    }

    #[test]
    fn intervals() {
        let ti = TripleIntervals::new([t("x"), t("y"), t("z")]);
        let ix = ti.upper(0);
        let jx = ti.lower(0);
        assert_eq!(ix.lo(), &t("x+y*z"));
        assert_eq!(ix.hi(), &t("x+(x+y)(x+z)(y+z)"));
        assert_eq!(jx.lo(), &t("x*(xy+xz+yz)"));
        assert_eq!(jx.hi(), &t("x*(y+z)"));
        assert_eq!(ti.middle().lo(), &t("xy+xz+yz"));
        assert!(in_interval(&t("x"), &Interval::point(t("x"))));
        assert!(in_interval(&t("x+y*z"), &ix));
        assert!(!in_interval(&t("y"), &jx));
        assert!(ci_check(&[], std::slice::from_ref(&ix)));
        assert!(ci_check(&[t("x")], &[Interval::point(t("x"))]));
        assert!(!ci_check(&[t("x"), t("y")], &[ix, jx]));
        assert!(Interval::new(t("x"), t("x*y")).is_err());
        assert!(Interval::new(t("x*y"), t("x")).is_ok());
    }

    #[test]
    fn fixed_points() {
        let g2 = GeneratorSet::parse("x,y").unwrap();
        let gv = GeneratorSet::parse("x,y,v").unwrap();
        let p = parse_term("v", &gv).unwrap();
        assert_eq!(fixed_point_search(&p, "v", &g2, 2), Some(Term::var("x")));
        let p = parse_term("v+y", &gv).unwrap();
        assert_eq!(fixed_point_search(&p, "v", &g2, 2), Some(Term::var("y")));
        let c = parse_term("x*y", &g2).unwrap();
        assert_eq!(fixed_point_search(&c, "v", &g2, 2), Some(c));
        // y*x + y = y
        let p = parse_term("v*x+y", &gv).unwrap();
        assert_eq!(fixed_point_search(&p, "v", &g2, 2), Some(Term::var("y")));
    }
}
