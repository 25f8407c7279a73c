//! Day's doubling construction.

use super::FiniteLattice;
use crate::error::{Error, Result};

/// A doubled lattice together with its collapsing map back onto the original.
#[derive(Clone, Debug)]
pub struct Doubled {
    pub lattice: FiniteLattice,
    /// `projection[i]` is the original element that element `i` came from.
    pub projection: Vec<usize>,
}

/// `L[C]`: every element of the convex set `C` is replaced by a two-element
/// chain `(c,0) < (c,1)`. For `x, y ∉ C`: `x ≤ (c,i)` iff `x ≤ c`,
/// `(c,i) ≤ y` iff `c ≤ y`, and `(c,i) ≤ (d,j)` iff `c ≤ d` and `i ≤ j`.
///
/// Elements keep the original index order, with `(c,0)` directly before
/// `(c,1)`. Doubled copies get the labels `<c>_0` and `<c>_1`.
pub fn double(l: &FiniteLattice, set: &[usize]) -> Result<Doubled> {
    if let Some(&bad) = set.iter().find(|&&c| c >= l.len()) {
        return Err(Error::ElementOutOfRange(bad));
    }
    if set.is_empty() {
        return Err(Error::Invalid("doubling needs a nonempty set".into()));
    }
    if !l.is_convex(set) {
        let names: Vec<&str> = set.iter().map(|&c| l.label(c)).collect();
        return Err(Error::NotConvex(names.join(", ")));
    }
    let mut in_set = vec![false; l.len()];
    set.iter().for_each(|&c| in_set[c] = true);

    // (original element, copy: None outside C, Some(0|1) inside)
    let mut elems: Vec<(usize, Option<u8>)> = Vec::new();
    let mut labels = Vec::new();
    for a in l.elements() {
        if in_set[a] {
            for i in 0..2u8 {
                elems.push((a, Some(i)));
                labels.push(format!("{}_{i}", l.label(a)));
            }
        } else {
            elems.push((a, None));
            labels.push(l.label(a).to_string());
        }
    }
    let lattice = FiniteLattice::from_leq(&format!("{}[C]", l.name()), labels, |p, q| {
        let (a, i) = elems[p];
        let (b, j) = elems[q];
        match (i, j) {
            (Some(i), Some(j)) => l.leq(a, b) && i <= j,
            _ => l.leq(a, b),
        }
    })?;
    Ok(Doubled { lattice, projection: elems.iter().map(|&(a, _)| a).collect() })
}

/// Doubles each listed element in turn; each singleton is convex, so this
/// works for arbitrary (possibly non-convex) sets of elements.
pub fn double_each(l: &FiniteLattice, elements: &[usize]) -> Result<Doubled> {
    let mut current = Doubled { lattice: l.clone(), projection: l.elements().collect() };
    for &e in elements {
        if e >= l.len() {
            return Err(Error::ElementOutOfRange(e));
        }
        let pre: Vec<usize> =
            current.projection.iter().enumerate().filter(|&(_, &p)| p == e).map(|(i, _)| i).collect();
        if pre.len() != 1 {
            return Err(Error::Invalid(format!("element {} listed twice", l.label(e))));
        }
        let next = double(&current.lattice, &pre)?;
        let projection = next.projection.iter().map(|&i| current.projection[i]).collect();
        current = Doubled { lattice: next.lattice, projection };
    }
    current.lattice = current.lattice.with_name(&format!("{}[doubled]", l.name()));
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finlat::{boolean, build_fd3, chain, fd3_doubling_targets};

    #[test]
    fn small_doublings() {
        let one = chain(1);
        assert!(double(&one, &[0]).unwrap().lattice.is_isomorphic(&chain(2)));
        let c2 = chain(2);
        assert!(double(&c2, &[1]).unwrap().lattice.is_isomorphic(&chain(3)));
        let b2 = boolean(2);
        assert!(matches!(double(&b2, &[b2.bottom(), b2.top()]), Err(Error::NotConvex(_))));
        assert!(double(&b2, &[9]).is_err());
    }

    #[test]
    fn projection_is_a_surjective_homomorphism() {
        let b3 = boolean(3);
        let atoms = b3.upper_covers(b3.bottom());
        let interval: Vec<usize> = b3.elements().filter(|&x| b3.leq(atoms[0], x)).collect();
        let d = double(&b3, &interval).unwrap();
        assert_eq!(d.lattice.len(), 12);
        assert!(d.lattice.is_homomorphism(&b3, &d.projection));
        let mut img = d.projection.clone();
        img.dedup();
        assert_eq!(img.len(), 8);
    }

    #[test]
    fn fd3_targets_are_not_convex_but_double_one_at_a_time() {
        let fd3 = build_fd3();
        let t = fd3_doubling_targets(&fd3);
        assert!(!fd3.is_convex(&t));
        assert!(matches!(double(&fd3, &t), Err(Error::NotConvex(_))));
        let a = double_each(&fd3, &t).unwrap();
        assert_eq!(a.lattice.len(), 24);
        assert!(a.lattice.is_homomorphism(&fd3, &a.projection));
    }
}
