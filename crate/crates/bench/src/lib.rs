//! Shared inputs for the benchmarks.

use freelat::{parse_term, GeneratorSet, Term};

pub fn xyz() -> GeneratorSet {
    GeneratorSet::parse("x,y,z").expect("valid generators")
}

/// Pairs of terms over x, y, z used by the comparison benchmarks.
pub fn fixture_pairs() -> Vec<(Term, Term)> {
    let g = xyz();
    let p = |s: &str| parse_term(s, &g).expect("fixture parses");
    vec![
        (p("x*(y+z)"), p("x*y+x*z")),
        (p("x*(x*y+x*z+y*z)"), p("x*(y+z)")),
        (p("(x+y)*(x+z)*(y+z)"), p("x*y+x*z+y*z")),
        (p("x*(z+x*y)"), p("x*y+z*(x+y)")),
        (p("y+x*(z+x*(y+x*z))"), p("z+x*(y+x*(z+x*y))")),
    ]
}
