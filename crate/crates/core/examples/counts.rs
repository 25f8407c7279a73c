//! Prints the number of canonical terms per size.

use std::time::Instant;

use freelat::{canonical_terms_of_size, GeneratorSet};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let gens = GeneratorSet::parse(args.get(1).map_or("x,y,z", |s| s.as_str())).unwrap();
    let max: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);
    let start = Instant::now();
    let mut total = 0;
    for s in 0..=max {
        let n = canonical_terms_of_size(&gens, s).len();
        total += n;
        println!("size {s}: {n} (total {total}, {:.2?})", start.elapsed());
    }
}
