mod common;

use common::{eval3, lattice_with_assignment, term, xyz};
use freelat::finlat::catalog::small_catalog;
use freelat::random::perturb;
use freelat::{canonical_form, equal, in_interval, leq, Interval, Term};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sound_in_small_lattices(s in term(), t in term()) {
        let t = s.and(&t).or(&t); // often comparable to s
        for cand in [&s, &t] {
            let other = if std::ptr::eq(cand, &s) { &t } else { &s };
            if !leq(cand, other) {
                continue;
            }
            for l in small_catalog() {
                let n = l.len();
                for code in 0..n * n * n {
                    let a = [code % n, code / n % n, code / (n * n)];
                    prop_assert!(l.leq(eval3(cand, &l, a), eval3(other, &l, a)));
                }
            }
        }
    }

    #[test]
    fn leq_is_a_partial_order_up_to_equal(s in term(), t in term(), u in term()) {
        prop_assert!(leq(&s, &s));
        if leq(&s, &t) && leq(&t, &u) {
            prop_assert!(leq(&s, &u));
        }
        prop_assert_eq!(leq(&s, &t) && leq(&t, &s), equal(&s, &t));
    }

    #[test]
    fn refuted_by_some_finite_lattice(s in term(), t in term(), (l, a) in lattice_with_assignment()) {
        if leq(&s, &t) {
            prop_assert!(l.leq(eval3(&s, &l, a), eval3(&t, &l, a)));
        }
    }

    #[test]
    fn canonical_form_laws(t in term(), u in term(), seed in any::<u64>()) {
        let c = canonical_form(&t);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert!(equal(&c, &t));
        prop_assert!(c.size() <= t.size());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = perturb(&mut rng, &xyz(), &t, 4);
        prop_assert!(equal(&p, &t));
        prop_assert_eq!(canonical_form(&p), c.clone());
        prop_assert_eq!(canonical_form(&u) == c, equal(&u, &t));
    }

    #[test]
    fn whitman_condition(s in term(), t in term(), u in term(), v in term()) {
        let st = s.and(&t);
        let uv = u.or(&v);
        if leq(&st, &uv) {
            prop_assert!(leq(&s, &uv) || leq(&t, &uv) || leq(&st, &u) || leq(&st, &v));
        }
    }

    #[test]
    fn intervals_are_convex(lo in term(), mid in term(), hi in term()) {
        // force lo ≤ hi and lo ≤ lo + mid·hi ≤ hi
        let hi = lo.or(&hi);
        let w = lo.or(&mid.and(&hi));
        let iv = Interval::new(lo.clone(), hi.clone()).unwrap();
        prop_assert!(in_interval(&w, &iv));
        let w2 = lo.or(&mid.and(&w));
        prop_assert!(leq(&w2, &w) && leq(&lo, &w2));
        prop_assert!(in_interval(&w2, &iv));
        prop_assert_eq!(in_interval(&mid, &iv), leq(&lo, &mid) && leq(&mid, &hi));
    }
}

#[test]
fn interval_needs_ordered_ends() {
    assert!(Interval::new(Term::var("x"), Term::var("y")).is_err());
}
