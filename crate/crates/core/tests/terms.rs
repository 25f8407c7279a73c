mod common;

use std::collections::HashSet;

use common::{eval3, lattice_with_assignment, term, xyz};
use freelat::{canonical_form, canonical_terms, enumerate_terms, equal, parse_term, print_term, Term};
use proptest::prelude::*;

proptest! {
    #[test]
    fn print_parse_round_trip(t in term()) {
        let back = parse_term(&print_term(&t), &xyz()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn eval_is_a_homomorphism(s in term(), t in term(), (l, a) in lattice_with_assignment()) {
        let (es, et) = (eval3(&s, &l, a), eval3(&t, &l, a));
        prop_assert_eq!(eval3(&s.or(&t), &l, a), l.join(es, et));
        prop_assert_eq!(eval3(&s.and(&t), &l, a), l.meet(es, et));
    }
}

/// All terms of size at most `max` whose operands are distinct sets of
/// smaller terms, with no canonicity filtering.
fn naive_terms(max: usize) -> Vec<Vec<Term>> {
    let gens = xyz().terms();
    let mut by_size: Vec<Vec<Term>> = vec![gens.clone()];
    for s in 1..=max {
        let mut level = Vec::new();
        // compound operands: a set of terms of positive size summing to s - 1
        let mut compound_sets: Vec<Vec<Term>> = Vec::new();
        fn pick(
            by_size: &[Vec<Term>],
            left: usize,
            min: (usize, usize),
            acc: &mut Vec<Term>,
            out: &mut Vec<Vec<Term>>,
        ) {
            if left == 0 {
                out.push(acc.clone());
                return;
            }
            for size in min.0..=left {
                let start = if size == min.0 { min.1 } else { 0 };
                for i in start..by_size[size].len() {
                    acc.push(by_size[size][i].clone());
                    pick(by_size, left - size, (size, i + 1), acc, out);
                    acc.pop();
                }
            }
        }
        pick(&by_size, s - 1, (1, 0), &mut Vec::new(), &mut compound_sets);
        for compound in &compound_sets {
            for mask in 0u32..8 {
                let mut args = compound.clone();
                args.extend((0..3).filter(|i| mask >> i & 1 == 1).map(|i| gens[i].clone()));
                if args.len() < 2 {
                    continue;
                }
                level.push(Term::join(args.clone()));
                level.push(Term::meet(args));
            }
        }
        by_size.push(level);
    }
    by_size
}

#[test]
fn enumeration_is_pairwise_inequivalent() {
    let terms: Vec<Term> = enumerate_terms(&xyz(), 4).collect();
    for (i, s) in terms.iter().enumerate() {
        for t in &terms[..i] {
            assert!(!equal(s, t), "{s} = {t}");
        }
    }
}

#[test]
#[allow(clippy::mutable_key_type)]
fn enumeration_is_exhaustive_up_to_size_three() {
    let canonical: HashSet<Term> = canonical_terms(&xyz(), 3).into_iter().collect();
    let naive = naive_terms(3);
    let mut reached = HashSet::new();
    for t in naive.iter().flatten() {
        let c = canonical_form(t);
        if c.size() <= 3 {
            assert!(canonical.contains(&c), "{t} has canonical form {c} missing from the enumeration");
            reached.insert(c);
        }
    }
    assert_eq!(reached.len(), canonical.len());
    assert_eq!(canonical.len(), 3 + 8 + 6 + 18);
}
