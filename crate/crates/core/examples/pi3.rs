//! Both bounded π₃ searches: `cargo run --release -p freelat --example pi3 -- 6 4`.

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("size"));
    let f3 = args.next().unwrap_or(6);
    let f4 = args.next().unwrap_or(4);
    print!("{}", freelat::check_pi3_in_f3(f3));
    print!("{}", freelat::search_pi3_in_f4(f4));
}
