//! Homomorphisms from a finitely generated free lattice into finite lattices.
//!
//! For a bounded homomorphism `f` every kernel class is an interval
//! `[β(a), α(a)]`, where `β(a)` is the least term mapped to an element `≥ a`
//! and `α(a)` the greatest term mapped to an element `≤ a`. Both are computed
//! by the join-cover iteration over the image sublattice.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finlat::{build_a, build_n5, d_rank, d_rank_op, minimal_join_covers, FiniteLattice};
use crate::term::{GeneratorSet, Term};
use crate::whitman::{canonical_form, equal, leq, Interval};

/// A lattice homomorphism `F(gens) → target` fixed by generator images.
#[derive(Clone, Debug)]
pub struct Hom {
    gens: GeneratorSet,
    target: FiniteLattice,
    images: Vec<usize>,
}

impl Hom {
    pub fn new(gens: GeneratorSet, target: FiniteLattice, images: Vec<usize>) -> Result<Self> {
        if images.len() != gens.rank() {
            return Err(Error::Invalid(format!(
                "{} images given for {} generators",
                images.len(),
                gens.rank()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&e| e >= target.len()) {
            return Err(Error::ElementOutOfRange(bad));
        }
        Ok(Hom { gens, target, images })
    }

    /// Images given as `(generator, element label)` pairs.
    pub fn from_labels(gens: GeneratorSet, target: FiniteLattice, map: &[(&str, &str)]) -> Result<Self> {
        let mut images = vec![None; gens.rank()];
        for &(g, label) in map {
            let i = gens.index_of(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            let e = target.find(label).ok_or_else(|| {
                Error::Invalid(format!("no element labeled `{label}` in {}", target.name()))
            })?;
            images[i] = Some(e);
        }
        let images = images
            .into_iter()
            .zip(gens.names())
            .map(|(e, g)| e.ok_or_else(|| Error::MissingAssignment(g.clone())))
            .collect::<Result<Vec<_>>>()?;
        Hom::new(gens, target, images)
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn target(&self) -> &FiniteLattice {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_of(&self, generator: &str) -> Option<usize> {
        self.gens.index_of(generator).map(|i| self.images[i])
    }

    pub fn eval(&self, t: &Term) -> Result<usize> {
        t.eval_with(&self.target, &|g| self.image_of(g))
    }

    /// The same map into the order dual of the target.
    pub fn dual(&self) -> Hom {
        Hom { gens: self.gens.clone(), target: self.target.dual(), images: self.images.clone() }
    }

    /// The sublattice generated by the images and its embedding into the target.
    pub fn image_sublattice(&self) -> (FiniteLattice, Vec<usize>) {
        self.target.sublattice(&self.images).expect("images are in range")
    }

    /// `x↦a, y↦b, …`.
    pub fn describe(&self) -> String {
        self.gens
            .names()
            .iter()
            .zip(&self.images)
            .map(|(g, &e)| format!("{g}↦{}", self.target.label(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn eval_hom(h: &Hom, t: &Term) -> Result<usize> {
    h.eval(t)
}

/// Lower bounded iff the D-sets exhaust the image sublattice.
pub fn is_lower_bounded(h: &Hom) -> bool {
    d_rank(&h.image_sublattice().0).is_bounded()
}

pub fn is_upper_bounded(h: &Hom) -> bool {
    d_rank_op(&h.image_sublattice().0).is_bounded()
}

/// `β` for every element of the image sublattice, indexed by sublattice element.
fn beta_table(h: &Hom) -> Result<(Vec<usize>, Vec<Term>)> {
    let (s, emb) = h.image_sublattice();
    let rank = d_rank(&s).rank.ok_or(Error::NotBounded("lower"))?;
    let pos = |e: usize| emb.binary_search(&e).expect("image lies in the sublattice");
    let gen_img: Vec<usize> = h.images.iter().map(|&e| pos(e)).collect();
    let xs = h.gens.terms();

    let jis = s.join_irreducibles();
    let covers: Vec<Vec<Vec<usize>>> =
        jis.iter().map(|&q| minimal_join_covers(&s, q).into_iter().map(|c| c.cover).collect()).collect();
    let beta0: Vec<Term> = jis
        .iter()
        .map(|&q| {
            let above: Vec<Term> =
                (0..xs.len()).filter(|&i| s.leq(q, gen_img[i])).map(|i| xs[i].clone()).collect();
            if above.is_empty() {
                h.gens.top()
            } else {
                canonical_form(&Term::meet(above))
            }
        })
        .collect();

    let index: HashMap<usize, usize> = jis.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let mut current = beta0.clone();
    let mut stable = false;
    for _ in 0..rank + 2 {
        let next: Vec<Term> = (0..jis.len())
            .map(|i| {
                let mut parts = vec![beta0[i].clone()];
                for cover in &covers[i] {
                    parts.push(Term::join(cover.iter().map(|c| current[index[c]].clone())));
                }
                canonical_form(&Term::meet(parts))
            })
            .collect();
        if next == current {
            stable = true;
            break;
        }
        current = next;
    }
    if !stable {
        return Err(Error::NoStabilization(rank + 2));
    }

    let table = s
        .elements()
        .map(|a| {
            if a == s.bottom() {
                return h.gens.bottom();
            }
            let below: Vec<Term> = jis
                .iter()
                .enumerate()
                .filter(|&(_, &q)| s.leq(q, a))
                .map(|(i, _)| current[i].clone())
                .collect();
            canonical_form(&Term::join(below))
        })
        .collect();
    Ok((emb, table))
}

fn lookup(emb: &[usize], table: Vec<Term>, a: usize, h: &Hom) -> Result<Term> {
    match emb.binary_search(&a) {
        Ok(i) => Ok(table.into_iter().nth(i).expect("table covers the sublattice")),
        Err(_) => Err(Error::NotInImage(h.target.label(a).to_string())),
    }
}

/// Least term whose image is `≥ a`, in canonical form.
pub fn beta(h: &Hom, a: usize) -> Result<Term> {
    if a >= h.target.len() {
        return Err(Error::ElementOutOfRange(a));
    }
    let (emb, table) = beta_table(h)?;
    lookup(&emb, table, a, h)
}

/// Greatest term whose image is `≤ a`, in canonical form.
pub fn alpha(h: &Hom, a: usize) -> Result<Term> {
    if a >= h.target.len() {
        return Err(Error::ElementOutOfRange(a));
    }
    let (emb, table) = beta_table(&h.dual()).map_err(upper_error)?;
    lookup(&emb, table, a, h).map(|t| canonical_form(&t.dual()))
}

fn upper_error(e: Error) -> Error {
    match e {
        Error::NotBounded(_) => Error::NotBounded("upper"),
        other => other,
    }
}

/// The kernel class `[β(f(t)), α(f(t))]` of `t`.
pub fn class_of(h: &Hom, t: &Term) -> Result<Interval> {
    let a = h.eval(t)?;
    Interval::new(beta(h, a)?, alpha(h, a)?)
}

/// One kernel class per element of the image sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRow {
    /// Element of the target lattice.
    pub element: usize,
    pub label: String,
    pub beta: Term,
    pub alpha: Term,
}

impl ClassRow {
    pub fn interval(&self) -> Interval {
        Interval::new(self.beta.clone(), self.alpha.clone()).expect("β ≤ α")
    }

    pub fn is_singleton(&self) -> bool {
        self.beta == self.alpha
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    pub rows: Vec<ClassRow>,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, element: usize) -> Option<&ClassRow> {
        self.rows.iter().find(|r| r.element == element)
    }

    /// The class containing `t`, found by interval membership.
    pub fn class_containing(&self, t: &Term) -> Option<&ClassRow> {
        self.rows.iter().find(|r| leq(&r.beta, t) && leq(t, &r.alpha))
    }

    /// Aligned text, one class per line.
    pub fn to_text(&self) -> String {
        let w = self.rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
        self.rows.iter().map(|r| format!("{:<w$}  [{}, {}]\n", r.label, r.beta, r.alpha)).collect()
    }

    /// One `element=… beta=… alpha=…` record per line.
    pub fn to_records(&self) -> String {
        self.rows.iter().map(|r| format!("element={} beta={} alpha={}\n", r.label, r.beta, r.alpha)).collect()
    }
}

impl fmt::Display for ClassTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The full table of kernel classes. Fails if two classes overlap, which
/// would mean the β/α computation is wrong.
pub fn kernel_table(h: &Hom) -> Result<ClassTable> {
    let (emb, betas) = beta_table(h)?;
    let (_, alphas) = beta_table(&h.dual()).map_err(upper_error)?;
    let rows: Vec<ClassRow> = emb
        .iter()
        .zip(betas.into_iter().zip(alphas))
        .map(|(&e, (b, a))| ClassRow {
            element: e,
            label: h.target.label(e).to_string(),
            beta: b,
            alpha: canonical_form(&a.dual()),
        })
        .collect();
    for (i, r) in rows.iter().enumerate() {
        if !leq(&r.beta, &r.alpha) {
            return Err(Error::Invalid(format!("class of {} is empty: [{}, {}]", r.label, r.beta, r.alpha)));
        }
        for q in &rows[..i] {
            if leq(&r.beta, &q.alpha) && leq(&q.beta, &r.alpha) {
                return Err(Error::Invalid(format!("classes of {} and {} overlap", q.label, r.label)));
            }
        }
    }
    Ok(ClassTable { rows })
}

/// A finite list of bounded quotients of the same free lattice.
#[derive(Clone, Debug)]
pub struct Tower {
    stages: Vec<Hom>,
    tables: Vec<ClassTable>,
}

impl Tower {
    pub fn new(stages: Vec<Hom>) -> Result<Self> {
        let Some(first) = stages.first() else {
            return Err(Error::TowerMismatch("a tower needs at least one stage".into()));
        };
        if stages.iter().any(|h| h.gens != first.gens) {
            return Err(Error::TowerMismatch("stages use different generator sets".into()));
        }
        for h in &stages {
            if !is_lower_bounded(h) {
                return Err(Error::NotBounded("lower"));
            }
            if !is_upper_bounded(h) {
                return Err(Error::NotBounded("upper"));
            }
        }
        let tables = stages.iter().map(kernel_table).collect::<Result<Vec<_>>>()?;
        Ok(Tower { stages, tables })
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage(&self, j: usize) -> &Hom {
        &self.stages[j]
    }

    pub fn table(&self, j: usize) -> &ClassTable {
        &self.tables[j]
    }

    /// Whether the kernel of stage `j + 1` lies inside the kernel of stage `j`:
    /// every finer class maps to a single element at the coarser stage.
    pub fn refines_at(&self, j: usize) -> bool {
        let coarse = &self.stages[j];
        self.tables[j + 1].rows.iter().all(|r| {
            coarse.eval(&r.beta).expect("same generators") == coarse.eval(&r.alpha).expect("same generators")
        })
    }

    pub fn is_refinement_ordered(&self) -> bool {
        (0..self.len().saturating_sub(1)).all(|j| self.refines_at(j))
    }

    fn key(&self) -> Vec<(String, Vec<usize>)> {
        self.stages.iter().map(|h| (h.target.name().to_string(), h.images.clone())).collect()
    }
}

/// The per-stage class bounds `(b_j, a_j)` of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentSequence {
    pub term: Term,
    pub stages: Vec<(Term, Term)>,
    /// Whether the tower is refinement ordered.
    pub refined: bool,
    /// For refined towers: whether `b₀ ≤ b₁ ≤ ⋯ ≤ t ≤ ⋯ ≤ a₁ ≤ a₀` holds.
    pub chain_holds: Option<bool>,
    tower_key: Vec<(String, Vec<usize>)>,
}

impl CoherentSequence {
    pub fn b(&self) -> impl Iterator<Item = &Term> {
        self.stages.iter().map(|(b, _)| b)
    }

    pub fn a(&self) -> impl Iterator<Item = &Term> {
        self.stages.iter().map(|(_, a)| a)
    }
}

pub fn coherent_sequence(tower: &Tower, t: &Term) -> Result<CoherentSequence> {
    let stages = (0..tower.len())
        .map(|j| {
            let e = tower.stages[j].eval(t)?;
            let row = tower.tables[j].row(e).expect("image element has a class");
            Ok((row.beta.clone(), row.alpha.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let refined = tower.is_refinement_ordered();
    let chain_holds = refined.then(|| {
        stages.windows(2).all(|w| leq(&w[0].0, &w[1].0) && leq(&w[1].1, &w[0].1))
            && stages.last().is_some_and(|(b, a)| leq(b, t) && leq(t, a))
    });
    Ok(CoherentSequence { term: t.clone(), stages, refined, chain_holds, tower_key: tower.key() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Leq,
    Geq,
    Equal,
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Leq => "leq",
            Comparison::Geq => "geq",
            Comparison::Equal => "equal",
            Comparison::Incomparable => "incomparable",
        })
    }
}

/// Stage-wise comparison of the `b` sequences over the stages of the tower.
pub fn compare_coherent(c: &CoherentSequence, d: &CoherentSequence) -> Result<Comparison> {
    if c.tower_key != d.tower_key {
        return Err(Error::TowerMismatch("sequences come from different towers".into()));
    }
    let below = c.b().zip(d.b()).all(|(x, y)| leq(x, y));
    let above = c.b().zip(d.b()).all(|(x, y)| leq(y, x));
    Ok(match (below, above) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Leq,
        (false, true) => Comparison::Geq,
        (false, false) => Comparison::Incomparable,
    })
}

/// Whether the class bounds stay fixed across the last two stages of the tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub beta_stable: bool,
    pub alpha_stable: bool,
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |s: bool| if s { "stable within tower" } else { "changes at last stage" };
        write!(f, "beta: {}; alpha: {}", word(self.beta_stable), word(self.alpha_stable))
    }
}

pub fn classify_element(tower: &Tower, t: &Term) -> Result<StabilityReport> {
    if tower.len() < 2 {
        return Err(Error::TowerMismatch("classification needs at least two stages".into()));
    }
    if !tower.is_refinement_ordered() {
        return Err(Error::TowerMismatch("stages are not refinement ordered".into()));
    }
    let seq = coherent_sequence(tower, t)?;
    let n = seq.stages.len();
    let (b0, a0) = &seq.stages[n - 2];
    let (b1, a1) = &seq.stages[n - 1];
    Ok(StabilityReport { beta_stable: equal(b0, b1), alpha_stable: equal(a0, a1) })
}

fn xyz() -> GeneratorSet {
    GeneratorSet::parse("x,y,z").expect("valid generators")
}

/// `F₃ → N₅` with `x ↦ c`, `y ↦ b`, `z ↦ a`.
pub fn n5_hom() -> Hom {
    Hom::from_labels(xyz(), build_n5(), &[("x", "c"), ("y", "b"), ("z", "a")]).expect("N5 map")
}

/// `F₃ → A` sending each generator to the element of the same name.
pub fn a_hom() -> Hom {
    Hom::from_labels(xyz(), build_a(), &[("x", "x"), ("y", "y"), ("z", "z")]).expect("A map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlat::{build_m3, chain};
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        canonical_form(&parse_term(s, &xyz()).unwrap())
    }

    #[test]
    fn boundedness() {
        let c3 = chain(3);
        let h = Hom::new(xyz(), c3, vec![0, 1, 2]).unwrap();
        assert!(is_lower_bounded(&h) && is_upper_bounded(&h));
        let h = n5_hom();
        assert!(is_lower_bounded(&h) && is_upper_bounded(&h));
        let h = Hom::from_labels(xyz(), build_m3(), &[("x", "a"), ("y", "b"), ("z", "c")]).unwrap();
        assert!(!is_lower_bounded(&h));
        assert!(matches!(beta(&h, 1), Err(Error::NotBounded("lower"))));
    }

    #[test]
    fn pentagon_classes() {
        let h = n5_hom();
        let c = |s: &str| class_of(&h, &t(s)).unwrap();
        assert_eq!(c("z"), Interval::point(t("z")));
        assert_eq!(c("xyz"), Interval::new(t("xyz"), t("z(x+y)")).unwrap());
        assert_eq!(c("x"), Interval::new(t("x(z+xy)"), t("x+y")).unwrap());
        assert_eq!(c("y"), Interval::new(t("xy"), t("y+z(x+y)")).unwrap());
        assert_eq!(c("x+y+z"), Interval::new(t("z+xy"), t("x+y+z")).unwrap());
        assert_eq!(h.eval(&t("x(z+xy)")).unwrap(), h.eval(&t("x")).unwrap());
        assert_eq!(kernel_table(&h).unwrap().len(), 5);
    }

    #[test]
    fn trivial_targets() {
        let h = Hom::new(xyz(), chain(2), vec![1, 1, 1]).unwrap();
        assert_eq!(beta(&h, 1).unwrap(), t("xyz"));
        assert!(matches!(beta(&h, 0), Err(Error::NotInImage(_))));
        let g1 = GeneratorSet::parse("x").unwrap();
        let h = Hom::new(g1, chain(1), vec![0]).unwrap();
        let table = kernel_table(&h).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.rows[0].interval(), Interval::point(Term::var("x")));
    }

    #[test]
    fn towers() {
        let one = Hom::new(xyz(), chain(1), vec![0, 0, 0]).unwrap();
        let tower = Tower::new(vec![n5_hom()]).unwrap();
        let s = coherent_sequence(&tower, &t("z")).unwrap();
        assert_eq!(s.stages, vec![(t("z"), t("z"))]);

        let tower = Tower::new(vec![one.clone()]).unwrap();
        let s = coherent_sequence(&tower, &t("x+y")).unwrap();
        assert_eq!(s.stages, vec![(t("xyz"), t("x+y+z"))]);

        let tower = Tower::new(vec![one, n5_hom()]).unwrap();
        assert!(tower.is_refinement_ordered());
        let s = coherent_sequence(&tower, &t("xyz")).unwrap();
        assert_eq!(s.chain_holds, Some(true));
        assert_eq!(s.stages[1], (t("xyz"), t("z(x+y)")));

        let x = coherent_sequence(&tower, &t("x")).unwrap();
        let y = coherent_sequence(&tower, &t("y")).unwrap();
        let xz = coherent_sequence(&tower, &t("x+z")).unwrap();
        assert_eq!(compare_coherent(&x, &x).unwrap(), Comparison::Equal);
        assert_eq!(compare_coherent(&x, &xz).unwrap(), Comparison::Leq);
        // xy ≤ x(z+xy), so the b-sequences are comparable
        assert_eq!(compare_coherent(&x, &y).unwrap(), Comparison::Geq);

        let other = Tower::new(vec![n5_hom()]).unwrap();
        let z = coherent_sequence(&other, &t("z")).unwrap();
        assert!(matches!(compare_coherent(&x, &z), Err(Error::TowerMismatch(_))));

        let r = classify_element(&tower, &t("z")).unwrap();
        assert!(!r.beta_stable && !r.alpha_stable);
        let constant = Tower::new(vec![n5_hom(), n5_hom()]).unwrap();
        let r = classify_element(&constant, &t("x+yz")).unwrap();
        assert!(r.beta_stable && r.alpha_stable);
    }
}
