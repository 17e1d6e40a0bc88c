use frechet_sn_web::{curve_view, null_view, profile_view};

#[test]
fn null_histogram_holds_the_lower_draws_and_ordered_quantiles() {
    let v = null_view("deta", 0.15, 0.05, 300, 2000, 7, 40).unwrap();
    let total: u32 = v.counts().iter().sum();
    // Everything up to the 99.5% quantile is binned.
    assert!((1990..=2000).contains(&total), "{total}");
    assert!(v.lo() <= 0.0 && v.q90() < v.q95() && v.q95() < v.q99() && v.q99() <= v.hi());
}

#[test]
fn null_requests_are_validated() {
    assert!(null_view("bogus", 0.15, 0.05, 100, 100, 1, 10).is_err());
    assert!(null_view("seta", 0.6, 0.05, 100, 100, 1, 10).is_err());
    assert!(null_view("deta", 0.15, 0.05, 100_000, 100_000, 1, 10).is_err());
}

#[test]
fn scan_peaks_near_a_strong_change() {
    let v = curve_view("gaussian", 200, 0.5, 1.0, 1.0, 0.0, 0.15, 0.05, 4).unwrap();
    assert_eq!(v.k_start(), 30);
    assert_eq!(v.sn1().len(), 200 - 2 * 30 + 1);
    let k = v.k_hat2().unwrap();
    assert!((90..=110).contains(&k), "{k}");
}

#[test]
fn profiles_match_the_pooled_size() {
    let v = profile_view("covariance", 60, 40, 0.0, 1.0, 0.3, 0.15, 2).unwrap();
    assert_eq!(v.n(), 100);
    assert_eq!(v.k_start(), 15);
    assert_eq!(v.t().len(), 86);
    assert!(v.tc().iter().all(|&x| x >= 0.0));
    assert!(v.d1() > 0.0 && v.d2() > 0.0);
    assert!(profile_view("spheres", 10, 10, 0.0, 1.0, 0.0, 0.15, 2).is_err());
}
