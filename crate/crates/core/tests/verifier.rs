use freelat::verifier::{check_pi3_in_f3, search_pi3_in_f4, verify_figure2};

#[test]
fn reports_are_reproducible() {
    assert_eq!(verify_figure2().to_records(), verify_figure2().to_records());
    assert_eq!(check_pi3_in_f3(3).to_records(), check_pi3_in_f3(3).to_records());
    assert_eq!(search_pi3_in_f4(3).to_records(), search_pi3_in_f4(3).to_records());
}

#[test]
fn f3_coverage_is_monotone_in_budget() {
    let mut last = 0;
    for b in 0..=5 {
        let r = check_pi3_in_f3(b);
        assert!(r.passed(), "{r}");
        let free = r.counts["4-sets generating F4"];
        assert!(free >= last);
        last = free;
    }
    assert!(last > 0);
}

#[test]
fn f4_search_is_monotone_in_budget() {
    let mut last = 0;
    for b in 1..=4 {
        let r = search_pi3_in_f4(b);
        assert!(r.passed(), "{r}");
        assert_eq!(r.counts["case 1 (I^{z_i} ∪ J_{z_j} ∪ K) satisfied"], 0);
        assert_eq!(r.counts["case 2 ({z_i} ∪ K) satisfied"], 0);
        let n = r.counts["ordered triples with z1+z2+z3 = 1 and z1z2z3 = 0"];
        assert!(n >= last);
        last = n;
    }
}
