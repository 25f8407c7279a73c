//! Seeded random terms and equality-preserving rewrites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::term::{GeneratorSet, Op, Term};

/// A random term with exactly `size` operation nodes, binary or ternary.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, gens: &GeneratorSet, size: usize) -> Term {
    if size == 0 {
        return Term::var(gens.names().choose(rng).expect("generator set is nonempty"));
    }
    let op = if rng.gen_bool(0.5) { Op::Join } else { Op::Meet };
    let arity = if size >= 2 && rng.gen_bool(0.25) { 3 } else { 2 };
    // split size - 1 among the operands
    let mut cuts: Vec<usize> = (0..arity - 1).map(|_| rng.gen_range(0..size)).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(arity);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(size - 1)) {
        parts.push(c - prev);
        prev = c;
    }
    Term::apply(op, parts.into_iter().map(|s| random_term(rng, gens, s)))
}

/// A random term with between 0 and `max_size` operation nodes.
pub fn random_term_up_to<R: Rng + ?Sized>(rng: &mut R, gens: &GeneratorSet, max_size: usize) -> Term {
    let size = rng.gen_range(0..=max_size);
    random_term(rng, gens, size)
}

/// Rewrites `t` into a term equal to it in every lattice: operand shuffles,
/// regrouping, idempotence and absorption, applied at random positions.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, gens: &GeneratorSet, t: &Term, steps: usize) -> Term {
    let mut cur = t.clone();
    for _ in 0..steps {
        cur = rewrite_somewhere(rng, gens, &cur);
    }
    cur
}

fn rewrite_somewhere<R: Rng + ?Sized>(rng: &mut R, gens: &GeneratorSet, t: &Term) -> Term {
    match t.op() {
        Some(op) if rng.gen_bool(0.6) => {
            let mut args = t.args().to_vec();
            let i = rng.gen_range(0..args.len());
            args[i] = rewrite_somewhere(rng, gens, &args[i]);
            Term::apply(op, args)
        }
        _ => rewrite_here(rng, gens, t),
    }
}

fn rewrite_here<R: Rng + ?Sized>(rng: &mut R, gens: &GeneratorSet, t: &Term) -> Term {
    match rng.gen_range(0..5) {
        // t = t + t, t = t t
        0 => {
            let op = if rng.gen_bool(0.5) { Op::Join } else { Op::Meet };
            Term::apply(op, [t.clone(), t.clone()])
        }
        // t = t + t u, t = t (t + u)
        1 => {
            let u = random_term_up_to(rng, gens, 2);
            if rng.gen_bool(0.5) {
                t.or(&t.and(&u))
            } else {
                t.and(&t.or(&u))
            }
        }
        // commute
        2 => match t.op() {
            Some(op) => {
                let mut args = t.args().to_vec();
                args.shuffle(rng);
                Term::apply(op, args)
            }
            None => t.clone(),
        },
        // regroup a + b + c as (a + b) + c, or flatten one level
        3 => match t.op() {
            Some(op) if t.args().len() >= 3 => {
                let args = t.args();
                let k = rng.gen_range(2..args.len());
                let inner = Term::apply(op, args[..k].iter().cloned());
                Term::apply(op, std::iter::once(inner).chain(args[k..].iter().cloned()))
            }
            Some(op) => {
                let mut flat = Vec::new();
                for a in t.args() {
                    if a.op() == Some(op) {
                        flat.extend(a.args().iter().cloned());
                    } else {
                        flat.push(a.clone());
                    }
                }
                Term::apply(op, flat)
            }
            None => t.clone(),
        },
        // t = t + (a bottom-ish term below t): t + t*x
        _ => {
            let x = Term::var(gens.names().choose(rng).expect("generators"));
            if rng.gen_bool(0.5) {
                t.or(&t.and(&x))
            } else {
                t.and(&t.or(&x))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitman::equal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_and_determinism() {
        let g = GeneratorSet::parse("x,y,z").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for s in 0..8 {
            assert_eq!(random_term(&mut rng, &g, s).size(), s);
        }
        let a: Vec<Term> = (0..20).map(|_| random_term(&mut ChaCha8Rng::seed_from_u64(9), &g, 5)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn perturbation_preserves_equality() {
        let g = GeneratorSet::parse("x,y,z").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let t = random_term_up_to(&mut rng, &g, 5);
            let p = perturb(&mut rng, &g, &t, 3);
            assert!(equal(&t, &p), "{t} vs {p}");
        }
    }
}
