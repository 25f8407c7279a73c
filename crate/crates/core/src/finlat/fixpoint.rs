//! Least fixed points of monotone self-maps of finite lattices.

use std::collections::HashMap;

use super::FiniteLattice;
use crate::error::{Error, Result};
use crate::term::Term;

/// Least fixed point of `f`, given as a table over the elements of `l`.
/// Monotonicity is checked on every comparable pair first.
pub fn tarski_lfp_map(l: &FiniteLattice, f: &[usize]) -> Result<usize> {
    if f.len() != l.len() {
        return Err(Error::Invalid(format!("map has {} entries, lattice has {}", f.len(), l.len())));
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= l.len()) {
        return Err(Error::ElementOutOfRange(bad));
    }
    for a in l.elements() {
        for b in l.elements() {
            if l.leq(a, b) && !l.leq(f[a], f[b]) {
                return Err(Error::NotMonotone(format!(
                    "{} ≤ {} but f({}) = {} ≰ {} = f({})",
                    l.label(a),
                    l.label(b),
                    l.label(a),
                    l.label(f[a]),
                    l.label(f[b]),
                    l.label(b)
                )));
            }
        }
    }
    // bottom, f(bottom), f²(bottom), … is an increasing chain
    let mut x = l.bottom();
    loop {
        let y = f[x];
        if y == x {
            return Ok(x);
        }
        x = y;
    }
}

/// Least fixed point of `v ↦ p(v, params)`, where `assignment` fixes every
/// generator of `p` other than `var`.
pub fn tarski_lfp(
    l: &FiniteLattice,
    p: &Term,
    var: &str,
    assignment: &HashMap<String, usize>,
) -> Result<usize> {
    let f = l
        .elements()
        .map(|v| p.eval_with(l, &|name| if name == var { Some(v) } else { assignment.get(name).copied() }))
        .collect::<Result<Vec<_>>>()?;
    tarski_lfp_map(l, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlat::{build_n5, chain};
    use crate::parse::parse_term;
    use crate::term::GeneratorSet;

    #[test]
    fn examples() {
        let n5 = build_n5();
        let gens = GeneratorSet::parse("v,b").unwrap();
        let b = n5.find("b").unwrap();
        let params = HashMap::from([("b".to_string(), b)]);

        let id = parse_term("v", &gens).unwrap();
        assert_eq!(tarski_lfp(&n5, &id, "v", &params).unwrap(), n5.bottom());
        let constant = parse_term("b", &gens).unwrap();
        assert_eq!(tarski_lfp(&n5, &constant, "v", &params).unwrap(), b);
        let join = parse_term("v+b", &gens).unwrap();
        assert_eq!(tarski_lfp(&n5, &join, "v", &params).unwrap(), b);
    }

    #[test]
    fn rejects_non_monotone() {
        let c2 = chain(2);
        assert!(matches!(tarski_lfp_map(&c2, &[1, 0]), Err(Error::NotMonotone(_))));
        assert!(tarski_lfp_map(&c2, &[0]).is_err());
    }
}
