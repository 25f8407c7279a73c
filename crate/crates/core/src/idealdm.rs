//! Ideals and filters of a free lattice given by increasing (decreasing)
//! chains of generators, queried up to a budget.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::random::random_term;
use crate::term::{GeneratorSet, Term};
use crate::whitman::{canonical_form, leq};

/// `y₀ = y`, `z₀ = z`, `y_{k+1} = y + x z_k`, `z_{k+1} = z + x y_k`.
pub fn yz_chains(k: usize) -> (Term, Term) {
    let (x, mut y, mut z) = (Term::var("x"), Term::var("y"), Term::var("z"));
    for _ in 0..k {
        let ny = canonical_form(&Term::var("y").or(&x.and(&z)));
        let nz = canonical_form(&Term::var("z").or(&x.and(&y)));
        (y, z) = (ny, nz);
    }
    (y, z)
}

type Rule = Arc<dyn Fn(usize) -> Term + Send + Sync>;

#[derive(Clone)]
enum Source {
    Principal(Term),
    Rule { name: String, rule: Rule },
    Explicit(Vec<Term>),
}

/// A chain `g₀, g₁, …` read up to `budget`; past the end of an explicit list
/// the last term repeats.
#[derive(Clone)]
struct Chain {
    source: Source,
    budget: usize,
}

impl Chain {
    fn term(&self, k: usize) -> Term {
        match &self.source {
            Source::Principal(t) => t.clone(),
            Source::Rule { rule, .. } => rule(k),
            Source::Explicit(ts) => ts[k.min(ts.len() - 1)].clone(),
        }
    }

    /// Largest index worth inspecting.
    fn last(&self) -> usize {
        match &self.source {
            Source::Principal(_) => 0,
            Source::Explicit(ts) => (ts.len() - 1).min(self.budget),
            Source::Rule { .. } => self.budget,
        }
    }

    fn name(&self) -> String {
        match &self.source {
            Source::Principal(t) => t.to_string(),
            Source::Rule { name, .. } => name.clone(),
            Source::Explicit(ts) => ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ≤ "),
        }
    }

    /// `increasing`: check `g_k ≤ g_{k+1}`; otherwise the reverse.
    fn check(&self, increasing: bool) -> Result<()> {
        for k in 0..self.last() {
            let (a, b) = (self.term(k), self.term(k + 1));
            let ok = if increasing { leq(&a, &b) } else { leq(&b, &a) };
            if !ok {
                let dir = if increasing { "increasing" } else { "decreasing" };
                return Err(Error::Invalid(format!("chain is not {dir} at index {k}: {a}, {b}")));
            }
        }
        Ok(())
    }

    fn combine(&self, other: &Chain, name: String, f: fn(&Term, &Term) -> Term) -> Chain {
        let (a, b) = (self.clone(), other.clone());
        Chain {
            source: Source::Rule { name, rule: Arc::new(move |k| f(&a.term(k), &b.term(k))) },
            budget: self.last().max(other.last()),
        }
    }
}

/// Answer to a membership query in a chain ideal or filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Member, first seen at this chain index.
    Yes(usize),
    /// Not found among the indices up to the budget.
    NoUpToBudget,
}

impl Membership {
    pub fn is_yes(self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Yes(k) => write!(f, "yes({k})"),
            Membership::NoUpToBudget => f.write_str("no_up_to_budget"),
        }
    }
}

/// Answer to a query about two chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMembership {
    Yes(usize, usize),
    NoUpToBudget,
}

impl PairMembership {
    pub fn is_yes(self) -> bool {
        matches!(self, PairMembership::Yes(..))
    }
}

impl fmt::Display for PairMembership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairMembership::Yes(i, j) => write!(f, "yes({i},{j})"),
            PairMembership::NoUpToBudget => f.write_str("no_up_to_budget"),
        }
    }
}

/// The ideal `⋃ ↓g_k` of an increasing chain.
#[derive(Clone)]
pub struct ChainIdeal(Chain);

/// The filter `⋃ ↑g_k` of a decreasing chain.
#[derive(Clone)]
pub struct ChainFilter(Chain);

macro_rules! chain_common {
    ($ty:ident, $increasing:expr) => {
        impl $ty {
            pub fn principal(t: Term) -> Self {
                $ty(Chain { source: Source::Principal(t), budget: 0 })
            }

            pub fn explicit(terms: Vec<Term>) -> Result<Self> {
                if terms.is_empty() {
                    return Err(Error::Invalid("a chain needs at least one term".into()));
                }
                let budget = terms.len() - 1;
                let c = Chain { source: Source::Explicit(terms), budget };
                c.check($increasing)?;
                Ok($ty(c))
            }

            /// A chain given by a rule, checked for monotonicity up to `budget`.
            pub fn from_rule(
                name: &str,
                budget: usize,
                rule: impl Fn(usize) -> Term + Send + Sync + 'static,
            ) -> Result<Self> {
                let c = Chain { source: Source::Rule { name: name.into(), rule: Arc::new(rule) }, budget };
                c.check($increasing)?;
                Ok($ty(c))
            }

            pub fn budget(&self) -> usize {
                self.0.budget
            }

            pub fn with_budget(&self, budget: usize) -> Self {
                $ty(Chain { source: self.0.source.clone(), budget })
            }

            /// The `k`-th chain term.
            pub fn generator(&self, k: usize) -> Term {
                self.0.term(k)
            }

            pub fn name(&self) -> String {
                self.0.name()
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({}, budget {})", stringify!($ty), self.0.name(), self.0.budget)
            }
        }
    };
}

chain_common!(ChainIdeal, true);
chain_common!(ChainFilter, false);

impl ChainIdeal {
    /// `Y = ⋃ ↓y_k`.
    pub fn y_chain(budget: usize) -> Self {
        ChainIdeal(Chain {
            source: Source::Rule { name: "Y".into(), rule: Arc::new(|k| yz_chains(k).0) },
            budget,
        })
    }

    /// `Z = ⋃ ↓z_k`.
    pub fn z_chain(budget: usize) -> Self {
        ChainIdeal(Chain {
            source: Source::Rule { name: "Z".into(), rule: Arc::new(|k| yz_chains(k).1) },
            budget,
        })
    }

    /// `I ∨ J`, generated by the chain `g_k + h_k`.
    pub fn join(&self, other: &ChainIdeal) -> ChainIdeal {
        let name = format!("({} ∨ {})", self.name(), other.name());
        ChainIdeal(self.0.combine(&other.0, name, |a, b| canonical_form(&a.or(b))))
    }

    /// `I ∧ J = I ∩ J`, generated by the chain `g_k h_k`.
    pub fn meet(&self, other: &ChainIdeal) -> ChainIdeal {
        let name = format!("({} ∧ {})", self.name(), other.name());
        ChainIdeal(self.0.combine(&other.0, name, |a, b| canonical_form(&a.and(b))))
    }

    pub fn contains(&self, w: &Term) -> Membership {
        ideal_member(self, w)
    }
}

impl ChainFilter {
    pub fn contains(&self, w: &Term) -> Membership {
        (0..=self.0.last())
            .find(|&k| leq(&self.0.term(k), w))
            .map_or(Membership::NoUpToBudget, Membership::Yes)
    }
}

pub fn ideal_member(i: &ChainIdeal, w: &Term) -> Membership {
    (0..=i.0.last()).find(|&k| leq(w, &i.0.term(k))).map_or(Membership::NoUpToBudget, Membership::Yes)
}

/// `w ∈ I ∨ J`: some `w ≤ g_i + h_j`, searched by increasing `max(i, j)`.
pub fn join_member(i: &ChainIdeal, j: &ChainIdeal, w: &Term) -> PairMembership {
    let (li, lj) = (i.0.last(), j.0.last());
    for m in 0..=li.max(lj) {
        for a in 0..=m.min(li) {
            for b in 0..=m.min(lj) {
                if a.max(b) != m {
                    continue;
                }
                if leq(w, &i.0.term(a).or(&j.0.term(b))) {
                    return PairMembership::Yes(a, b);
                }
            }
        }
    }
    PairMembership::NoUpToBudget
}

/// `w ∈ I ∩ J`.
pub fn meet_member(i: &ChainIdeal, j: &ChainIdeal, w: &Term) -> PairMembership {
    match (ideal_member(i, w), ideal_member(j, w)) {
        (Membership::Yes(a), Membership::Yes(b)) => PairMembership::Yes(a, b),
        _ => PairMembership::NoUpToBudget,
    }
}

/// `D^u = ↑⋁D`; the empty set gives all of `F(gens)`.
pub fn polar_up(d: &[Term], gens: &GeneratorSet) -> ChainFilter {
    let t = if d.is_empty() { gens.bottom() } else { Term::join(d.iter().cloned()) };
    ChainFilter::principal(canonical_form(&t))
}

/// `U^ℓ = ↓⋀U`; the empty set gives all of `F(gens)`.
pub fn polar_down(u: &[Term], gens: &GeneratorSet) -> ChainIdeal {
    let t = if u.is_empty() { gens.top() } else { Term::meet(u.iter().cloned()) };
    ChainIdeal::principal(canonical_form(&t))
}

/// `κ(↓t) = (↓t)^{uℓ} = ↓t`, returned as the canonical generator.
pub fn kappa_principal(t: &Term) -> Term {
    canonical_form(t)
}

/// One logged Whitman query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub check: &'static str,
    pub statement: String,
    pub expected: bool,
    pub result: bool,
}

impl Query {
    pub fn ok(&self) -> bool {
        self.expected == self.result
    }
}

/// Full log of the meet-semidistributivity failure checks.
#[derive(Clone, Debug)]
pub struct SdFailureReport {
    pub budget: usize,
    pub queries: Vec<Query>,
}

impl SdFailureReport {
    pub fn passed(&self) -> bool {
        self.queries.iter().all(Query::ok)
    }

    pub fn passed_check(&self, check: &str) -> bool {
        self.queries.iter().filter(|q| q.check == check).all(Query::ok)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for q in &self.queries {
            let mark = if q.ok() { "ok  " } else { "FAIL" };
            out += &format!("{mark} ({}) {} = {}\n", q.check, q.statement, q.result);
        }
        for c in ["a", "b", "c"] {
            out += &format!("check ({c}): {}\n", if self.passed_check(c) { "pass" } else { "fail" });
        }
        out += &format!("X∧Y = X∧Z < X∧(Y∨Z) up to budget {}\n", self.budget);
        out += &format!("status: {}\n", self.verdict());
        out
    }

    pub fn to_records(&self) -> String {
        let mut out: String = self
            .queries
            .iter()
            .map(|q| {
                format!(
                    "record=query claim=sd-meet-failure check={} query={} expected={} result={}\n",
                    q.check,
                    q.statement.replace(' ', ""),
                    q.expected,
                    q.result
                )
            })
            .collect();
        out += &format!(
            "record=status claim=sd-meet-failure budget={} status={}\n",
            self.budget,
            self.verdict()
        );
        out
    }

    fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

/// With `X = ↓x`, `Y = ⋃↓y_k`, `Z = ⋃↓z_k` in `Id(F₃)`, checks up to `budget`:
/// (a) `x y_k ≤ z_{k+1}` and `x z_k ≤ y_{k+1}`, so `X∧Y = X∧Z`;
/// (b) `x(y+z) ∈ X∧(Y∨Z)`;
/// (c) `x(y+z) ∉ X∧Y` and `x(y+z) ∉ X∧Z`.
pub fn sd_meet_failure_report(budget: usize) -> Result<SdFailureReport> {
    if budget < 2 {
        return Err(Error::Invalid("the budget must be at least 2".into()));
    }
    let x = Term::var("x");
    let chains: Vec<(Term, Term)> = (0..=budget).map(yz_chains).collect();
    let w = x.and(&Term::var("y").or(&Term::var("z")));
    let mut queries = Vec::new();
    let mut ask = |check, lhs: &Term, rhs: &Term, expected| {
        queries.push(Query {
            check,
            statement: format!("leq({lhs}, {rhs})"),
            expected,
            result: leq(lhs, rhs),
        });
    };
    for k in 0..budget {
        let (yk, zk) = &chains[k];
        let (yn, zn) = &chains[k + 1];
        ask("a", &x.and(yk), zn, true);
        ask("a", &x.and(zk), yn, true);
    }
    let (y0, z0) = &chains[0];
    ask("b", &w, &x, true);
    ask("b", &w, &y0.or(z0), true);
    for (yk, zk) in &chains {
        ask("c", &w, yk, false);
        ask("c", &w, zk, false);
    }
    Ok(SdFailureReport { budget, queries })
}

/// Outcome of the principal-filter polar identities on sampled terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterLemmaReport {
    pub samples: usize,
    /// Sampled terms where `↓f ∨ ↓g` and `↓(f+g)` disagree.
    pub join_mismatches: Vec<Term>,
    /// Sampled terms where `↓f ∩ ↓g` and `↓(fg)` disagree.
    pub meet_mismatches: Vec<Term>,
}

impl FilterLemmaReport {
    pub fn passed(&self) -> bool {
        self.join_mismatches.is_empty() && self.meet_mismatches.is_empty()
    }
}

/// For `F = ↑f`, `G = ↑g`: `F^ℓ ∨ G^ℓ = (F ∩ G)^ℓ` and `F^ℓ ∩ G^ℓ = (F ∨ G)^ℓ`,
/// compared by membership of `w`, the terms `f`, `g`, `f+g`, `fg`, and
/// `samples` seeded random terms.
pub fn filter_lemma_witness_check(
    f: &Term,
    g: &Term,
    gens: &GeneratorSet,
    samples: usize,
    seed: u64,
) -> Result<FilterLemmaReport> {
    gens.check(f)?;
    gens.check(g)?;
    let (fl, gl) = (ChainIdeal::principal(f.clone()), ChainIdeal::principal(g.clone()));
    let (fg_join, fg_meet) = (f.or(g), f.and(g));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ws = vec![f.clone(), g.clone(), fg_join.clone(), fg_meet.clone()];
    ws.extend((0..samples).map(|i| random_term(&mut rng, gens, i % 7)));
    let mut report =
        FilterLemmaReport { samples: ws.len(), join_mismatches: vec![], meet_mismatches: vec![] };
    for w in ws {
        if join_member(&fl, &gl, &w).is_yes() != leq(&w, &fg_join) {
            report.join_mismatches.push(w.clone());
        }
        if meet_member(&fl, &gl, &w).is_yes() != leq(&w, &fg_meet) {
            report.meet_mismatches.push(w);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s, &GeneratorSet::parse("x,y,z").unwrap()).unwrap()
    }

    #[test]
    fn chains() {
        assert_eq!(yz_chains(0), (t("y"), t("z")));
        let (y1, z1) = yz_chains(1);
        assert_eq!(y1, canonical_form(&t("y+x*z")));
        assert_eq!(z1, canonical_form(&t("z+x*y")));
        for k in 0..8 {
            assert!(leq(&yz_chains(k).0, &yz_chains(k + 1).0));
            assert!(leq(&yz_chains(k).1, &yz_chains(k + 1).1));
        }
        assert!(ChainIdeal::explicit(vec![t("x+y"), t("x")]).is_err());
        assert!(ChainFilter::explicit(vec![t("x+y"), t("x")]).is_ok());
    }

    #[test]
    fn memberships() {
        let x = ChainIdeal::principal(t("x"));
        let y = ChainIdeal::y_chain(8);
        let z = ChainIdeal::z_chain(8);
        assert_eq!(ideal_member(&x, &t("x")), Membership::Yes(0));
        assert_eq!(ideal_member(&y, &yz_chains(3).0), Membership::Yes(3));

        assert_eq!(join_member(&x, &ChainIdeal::principal(t("y")), &t("x+y")), PairMembership::Yes(0, 0));
        assert_eq!(join_member(&y, &z, &t("y+z")), PairMembership::Yes(0, 0));

        let w = t("x*(y+z)");
        assert!(ideal_member(&x.meet(&y.join(&z)), &w).is_yes());
        assert_eq!(ideal_member(&x.meet(&y), &w), Membership::NoUpToBudget);
        assert_eq!(meet_member(&x, &y, &w), PairMembership::NoUpToBudget);
        assert!(meet_member(&x, &y, &t("x").and(&yz_chains(2).0)).is_yes());
        assert!(meet_member(&x, &x, &t("x")).is_yes());
    }

    #[test]
    fn polars_and_kappa() {
        let g = GeneratorSet::parse("x,y,z").unwrap();
        assert_eq!(polar_up(&[t("x"), t("y")], &g).generator(0), canonical_form(&t("x+y")));
        let up = polar_up(&[t("x")], &g).generator(0);
        assert_eq!(polar_down(&[up], &g).generator(0), t("x"));
        assert_eq!(polar_up(&[t("x*y"), t("x*z")], &g).generator(0), canonical_form(&t("x*y+x*z")));
        assert!(polar_up(&[], &g).contains(&t("x*y*z")).is_yes());
        assert_eq!(kappa_principal(&t("x+y*z")), canonical_form(&t("x+y*z")));
    }

    #[test]
    fn sd_failure() {
        let r = sd_meet_failure_report(2).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(sd_meet_failure_report(1).is_err());
    }

    #[test]
    fn filter_lemma() {
        let g = GeneratorSet::parse("x,y,z").unwrap();
        for (f, h) in [("x", "y"), ("x", "x"), ("x*y", "x*z")] {
            let r = filter_lemma_witness_check(&t(f), &t(h), &g, 50, 7).unwrap();
            assert!(r.passed());
        }
        let (fl, gl) = (ChainIdeal::principal(t("x*y")), ChainIdeal::principal(t("x*z")));
        let w = t("x*(y+z)");
        assert!(!join_member(&fl, &gl, &w).is_yes());
        assert!(!leq(&w, &t("x*y+x*z")));
    }
}
