//! Exhaustive enumeration of canonical terms, one per free-lattice element.
//!
//! Every subterm of a canonical term is canonical, so the terms of size `s`
//! are found among joins (meets) of sets of smaller canonical non-joins
//! (non-meets) whose sizes add up to `s - 1`. Candidates are kept when they
//! pass the canonicity test; distinct canonical forms denote distinct
//! elements, so the stream has no repeats.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use rayon::prelude::*;

use crate::term::{GeneratorSet, Op, Term};
use crate::whitman::{is_canonical_op, leq};

/// Canonical terms grouped by size; `levels[s]` is sorted.
type Levels = Vec<Arc<Vec<Term>>>;

static LEVELS: LazyLock<Mutex<HashMap<Vec<String>, Levels>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Canonical terms over `gens` of size exactly `size`, sorted by the
/// canonical operand order. Levels are computed once per generator set.
pub fn canonical_terms_of_size(gens: &GeneratorSet, size: usize) -> Arc<Vec<Term>> {
    let key = gens.names().to_vec();
    let mut known: Levels = LEVELS.lock().unwrap().get(&key).cloned().unwrap_or_default();
    if known.is_empty() {
        let mut base = gens.terms();
        base.sort();
        known.push(Arc::new(base));
    }
    while known.len() <= size {
        let next = Arc::new(next_level(&known));
        known.push(next);
        let mut cache = LEVELS.lock().unwrap();
        let entry = cache.entry(key.clone()).or_default();
        if entry.len() < known.len() {
            *entry = known.clone();
        }
    }
    known[size].clone()
}

fn next_level(levels: &[Arc<Vec<Term>>]) -> Vec<Term> {
    let s = levels.len();
    let mut out = Vec::new();
    for op in [Op::Join, Op::Meet] {
        // operands: terms of size < s whose root is not `op`
        let pool: Vec<Term> =
            levels.iter().flat_map(|l| l.iter()).filter(|t| t.op() != Some(op)).cloned().collect();
        let found: Vec<Vec<Term>> = (0..pool.len())
            .into_par_iter()
            .map(|first| {
                let mut acc = Vec::new();
                let mut chosen = vec![pool[first].clone()];
                extend(op, &pool, first + 1, s - 1 - pool[first].size(), &mut chosen, &mut acc);
                acc
            })
            .collect();
        out.extend(found.into_iter().flatten());
    }
    out.sort();
    out
}

fn extend(op: Op, pool: &[Term], from: usize, budget: usize, chosen: &mut Vec<Term>, acc: &mut Vec<Term>) {
    if budget == 0 && chosen.len() >= 2 {
        let whole = Term::apply(op, chosen.iter().cloned());
        if is_canonical_op(op, chosen, &whole) {
            acc.push(whole);
        }
    }
    // generators have size 0, so a zero budget can still take more of them
    for i in from..pool.len() {
        let cand = &pool[i];
        // the pool is sorted by size, so nothing later fits either
        if cand.size() > budget {
            break;
        }
        if chosen.iter().any(|c| leq(c, cand) || leq(cand, c)) {
            continue;
        }
        chosen.push(cand.clone());
        extend(op, pool, i + 1, budget - cand.size(), chosen, acc);
        chosen.pop();
    }
}

/// Every canonical term over `gens` of size at most `max_size`, each once,
/// ordered by size and then by the canonical operand order.
pub fn enumerate_terms(gens: &GeneratorSet, max_size: usize) -> impl Iterator<Item = Term> {
    let gens = gens.clone();
    (0..=max_size).flat_map(move |s| {
        let level = canonical_terms_of_size(&gens, s);
        (0..level.len()).map(move |i| level[i].clone())
    })
}

/// All canonical terms of size at most `max_size`, collected.
pub fn canonical_terms(gens: &GeneratorSet, max_size: usize) -> Vec<Term> {
    enumerate_terms(gens, max_size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitman::{canonical_form, equal};

    #[test]
    fn small_streams() {
        let g1 = GeneratorSet::parse("x").unwrap();
        assert_eq!(canonical_terms(&g1, 0), vec![Term::var("x")]);
        assert_eq!(canonical_terms(&g1, 5), vec![Term::var("x")]);

        let g2 = GeneratorSet::parse("x,y").unwrap();
        let s: Vec<String> = canonical_terms(&g2, 1).iter().map(|t| t.to_string()).collect();
        assert_eq!(s, ["x", "y", "x*y", "x+y"]);
        // F₂ has exactly four elements
        assert_eq!(canonical_terms(&g2, 6).len(), 4);

        let g3 = GeneratorSet::parse("x,y,z").unwrap();
        let s: Vec<String> = canonical_terms(&g3, 0).iter().map(|t| t.to_string()).collect();
        assert_eq!(s, ["x", "y", "z"]);
    }

    #[test]
    fn outputs_are_canonical_and_distinct() {
        let g3 = GeneratorSet::parse("x,y,z").unwrap();
        let ts = canonical_terms(&g3, 3);
        for (i, a) in ts.iter().enumerate() {
            assert_eq!(&canonical_form(a), a);
            for b in &ts[..i] {
                assert!(!equal(a, b), "{a} = {b}");
            }
        }
    }
}
