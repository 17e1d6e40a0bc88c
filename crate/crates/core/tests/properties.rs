//! Property checks for the geometry and the invariances of the statistics.

mod common;

use common::{all_spaces, close, random_object, random_series, rng};
use frechet_sn::changepoint::{contrast_curves, Segmentation};
use frechet_sn::experiment::adjusted_rand_index;
use frechet_sn::null_dist::{NullFamily, NullSampleSet};
use frechet_sn::prefix::ObjectSeries;
use frechet_sn::space::{distance, embed, frechet_mean, sq_distance, unembed, MetricObject, Space};
use frechet_sn::two_sample::{d1_statistic, d2_statistic, profiles};
use proptest::prelude::*;

fn space_strategy() -> impl Strategy<Value = Space> {
    prop::sample::select(all_spaces())
}

fn map_series(s: &ObjectSeries, f: impl Fn(f64) -> f64) -> ObjectSeries {
    let objs = s
        .objects()
        .iter()
        .map(|o| MetricObject::new(*o.space(), o.values().iter().map(|&v| f(v)).collect()).unwrap())
        .collect();
    ObjectSeries::new(objs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_axioms(space in space_strategy(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let (x, y, z) = (random_object(&space, &mut g), random_object(&space, &mut g), random_object(&space, &mut g));
        prop_assert!(distance(&x, &x).unwrap() < 1e-12);
        prop_assert_eq!(distance(&x, &y).unwrap(), distance(&y, &x).unwrap());
        prop_assert!(distance(&x, &y).unwrap() > 0.0);
        let (xy, yz, xz) = (distance(&x, &y).unwrap(), distance(&y, &z).unwrap(), distance(&x, &z).unwrap());
        prop_assert!(xz <= xy + yz + 1e-12 * (xy + yz));
    }

    #[test]
    fn embedding_is_an_isometry(space in space_strategy(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let (x, y) = (random_object(&space, &mut g), random_object(&space, &mut g));
        let d2 = embed(&x).weighted_sq_dist(&embed(&y));
        prop_assert!(close(d2, sq_distance(&x, &y).unwrap(), 1e-12));
        let back = unembed(&embed(&x), &space).unwrap();
        prop_assert!(distance(&back, &x).unwrap() < 1e-9 * (1.0 + x.values().iter().map(|v| v.abs()).fold(0.0, f64::max)));
    }

    #[test]
    fn barycenter_minimizes_squared_distance(space in space_strategy(), seed in any::<u64>(), n in 2usize..12) {
        let mut g = rng(seed);
        let objs: Vec<MetricObject> = (0..n).map(|_| random_object(&space, &mut g)).collect();
        let mu = frechet_mean(&objs, None).unwrap();
        let cost = |w: &MetricObject| objs.iter().map(|y| sq_distance(y, w).unwrap()).sum::<f64>();
        let best = cost(&mu);
        for y in &objs {
            prop_assert!(best <= cost(y) * (1.0 + 1e-12));
        }
        // Moving the barycenter toward any sample point raises the cost.
        for y in &objs {
            let near = frechet_mean(&[mu.clone(), y.clone()], Some(&[0.9, 0.1])).unwrap();
            prop_assert!(best <= cost(&near) * (1.0 + 1e-12) + 1e-15);
        }
    }

    #[test]
    fn gaussian_wasserstein_matches_closed_form(m1 in -3.0..3.0f64, m2 in -3.0..3.0f64, s1 in 0.1..3.0f64, s2 in 0.1..3.0f64) {
        let a = MetricObject::gaussian(m1, s1, 1000).unwrap();
        let b = MetricObject::gaussian(m2, s2, 1000).unwrap();
        let exact = ((m1 - m2).powi(2) + (s1 - s2).powi(2)).sqrt();
        let d = distance(&a, &b).unwrap();
        prop_assert!((d - exact).abs() <= 1e-3 * exact.max(1e-12), "{} vs {}", d, exact);
    }

    #[test]
    fn log_euclidean_mean_of_diagonals_is_geometric(diags in prop::collection::vec(prop::collection::vec(0.05..20.0f64, 3), 1..8)) {
        let objs: Vec<MetricObject> = diags.iter().map(|d| {
            let mut v = vec![0.0; 9];
            for i in 0..3 { v[i * 4] = d[i]; }
            MetricObject::new(Space::log_euclidean(3), v).unwrap()
        }).collect();
        let mu = frechet_mean(&objs, None).unwrap();
        for i in 0..3 {
            let geo = (diags.iter().map(|d| d[i].ln()).sum::<f64>() / diags.len() as f64).exp();
            prop_assert!((mu.entry(i, i).unwrap() - geo).abs() <= 1e-9 * geo);
            for j in 0..3 {
                if i != j { prop_assert!(mu.entry(i, j).unwrap().abs() <= 1e-12); }
            }
        }
    }

    #[test]
    fn two_sample_statistics_are_scale_translation_and_swap_invariant(seed in any::<u64>(), c in 0.2..5.0f64, shift in -5.0..5.0f64) {
        let mut g = rng(seed);
        let space = Space::L2Function { grid: 5 };
        let (s1, s2) = (random_series(&space, 30, &mut g), random_series(&space, 26, &mut g));
        let base = profiles(&s1, &s2, 0.15).unwrap();
        let (d1, d2) = (d1_statistic(&base).unwrap(), d2_statistic(&base).unwrap());
        let f = |v: f64| c * v + shift;
        let moved = profiles(&map_series(&s1, f), &map_series(&s2, f), 0.15).unwrap();
        prop_assert!(close(d1_statistic(&moved).unwrap(), d1, 1e-8));
        prop_assert!(close(d2_statistic(&moved).unwrap(), d2, 1e-8));
        let swapped = profiles(&s2, &s1, 0.15).unwrap();
        prop_assert!(close(d1_statistic(&swapped).unwrap(), d1, 1e-10));
        prop_assert!(close(d2_statistic(&swapped).unwrap(), d2, 1e-10));
    }

    #[test]
    fn scan_curves_are_scale_and_translation_invariant(seed in any::<u64>(), c in 0.2..5.0f64, shift in -5.0..5.0f64) {
        let mut g = rng(seed);
        let s = random_series(&Space::Frobenius { dim: 2 }, 60, &mut g);
        let (a1, a2) = contrast_curves(&s, 0.15, 0.05).unwrap();
        let (b1, b2) = contrast_curves(&map_series(&s, |v| c * v + shift), 0.15, 0.05).unwrap();
        for (x, y) in a1.values.iter().zip(&b1.values).chain(a2.values.iter().zip(&b2.values)) {
            prop_assert!(close(*y, *x, 1e-8));
        }
    }

    #[test]
    fn ari_matches_pair_counting(n in 4usize..60, cuts1 in prop::collection::btree_set(1usize..60, 0..5), cuts2 in prop::collection::btree_set(1usize..60, 0..5)) {
        let seg = |c: &std::collections::BTreeSet<usize>| Segmentation { n, points: c.iter().copied().filter(|&p| p < n).collect() };
        let (s1, s2) = (seg(&cuts1), seg(&cuts2));
        let ari = adjusted_rand_index(&s1, &s2, n).unwrap();
        let label = |s: &Segmentation, t: usize| s.points.iter().filter(|&&p| p < t).count();
        let (mut both, mut same1, mut same2) = (0.0, 0.0, 0.0);
        for i in 1..=n {
            for j in (i + 1)..=n {
                let a = label(&s1, i) == label(&s1, j);
                let b = label(&s2, i) == label(&s2, j);
                both += (a && b) as u8 as f64;
                same1 += a as u8 as f64;
                same2 += b as u8 as f64;
            }
        }
        let pairs = (n * (n - 1) / 2) as f64;
        let expected = same1 * same2 / pairs;
        let max = 0.5 * (same1 + same2);
        if max != expected {
            prop_assert!((ari - (both - expected) / (max - expected)).abs() < 1e-12);
        }
        prop_assert!((-1.0..=1.0 + 1e-12).contains(&ari));
        prop_assert_eq!(adjusted_rand_index(&s1, &s1, n).unwrap(), 1.0);
        prop_assert!((ari - adjusted_rand_index(&s2, &s1, n).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn null_quantiles_and_p_values_are_monotone() {
    let null = NullSampleSet::simulate(NullFamily::Deta { eta: 0.1 }, 200, 400, 7).unwrap();
    let levels = [0.5, 0.9, 0.95, 0.99, 0.995];
    let q: Vec<f64> = levels.iter().map(|&l| null.quantile(l)).collect();
    assert!(q.windows(2).all(|w| w[0] <= w[1]));
    let p: Vec<f64> = q.iter().map(|&x| null.p_value(x)).collect();
    assert!(p.windows(2).all(|w| w[0] >= w[1]));
    assert!(p.iter().all(|&v| v > 0.0 && v <= 1.0));
    // Rejecting at the 95% quantile happens for at most 5% of the draws.
    let above = null.draws().iter().filter(|&&d| d > q[2]).count();
    assert!(above as f64 <= 0.05 * 400.0);
}
