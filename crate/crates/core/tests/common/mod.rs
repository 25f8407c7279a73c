#![allow(dead_code)]

use std::sync::LazyLock;

use freelat::finlat::catalog::all_lattices;
use freelat::{FiniteLattice, GeneratorSet, Term};
use proptest::prelude::*;

pub fn xyz() -> GeneratorSet {
    GeneratorSet::parse("x,y,z").unwrap()
}

/// Terms over `x, y, z` with a bounded number of operation nodes.
pub fn term() -> impl Strategy<Value = Term> {
    term_over(&["x", "y", "z"], 3)
}

pub fn term_over(gens: &'static [&'static str], depth: u32) -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(gens).prop_map(Term::var);
    leaf.prop_recursive(depth, 24, 3, |inner| {
        (prop::collection::vec(inner, 2..=3), any::<bool>()).prop_map(|(args, join)| {
            if join {
                Term::join(args)
            } else {
                Term::meet(args)
            }
        })
    })
}

/// Every lattice with at most six elements.
pub static SMALL: LazyLock<Vec<FiniteLattice>> = LazyLock::new(|| all_lattices(6));

/// A lattice of size at most six with an assignment of `x, y, z`.
pub fn lattice_with_assignment() -> impl Strategy<Value = (FiniteLattice, [usize; 3])> {
    (0..SMALL.len(), any::<[u32; 3]>()).prop_map(|(i, raw)| {
        let l = SMALL[i].clone();
        let n = l.len() as u32;
        let a = raw.map(|r| (r % n) as usize);
        (l, a)
    })
}

pub fn eval3(t: &Term, l: &FiniteLattice, a: [usize; 3]) -> usize {
    t.eval_with(l, &|g| match g {
        "x" => Some(a[0]),
        "y" => Some(a[1]),
        "z" => Some(a[2]),
        _ => None,
    })
    .unwrap()
}
