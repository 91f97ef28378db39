use coulomb_gaps::gapstats::{
    count_in_window, k_smallest_pair_gaps, k_smallest_pairs, nearest_successor_gaps, precedes, GapEvent, PointSample,
};
use coulomb_gaps::rng::SeedStream;
use coulomb_gaps::theory::{RegionSpec, SizeWindow};
use coulomb_gaps::Complex64;
use proptest::prelude::*;

/// Quadratic reference: every later point of every point is compared.
///
/// `later` decides succession, either by `≺` or by position in the sorted
/// sample; the two agree when the points are distinct.
fn brute_successor_gaps(pts: &[Complex64], later: impl Fn(usize, usize) -> bool) -> Vec<(f64, usize, usize)> {
    let n = pts.len();
    let scale = (n as f64).powf(0.75);
    let mut out = Vec::new();
    for i in 0..n {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..n {
            if later(i, j) {
                let d = (pts[j] - pts[i]).norm();
                if best.is_none_or(|(bd, bj)| d < bd || (d == bd && j < bj)) {
                    best = Some((d, j));
                }
            }
        }
        if let Some((d, j)) = best {
            out.push((scale * d, i, j));
        }
    }
    out
}

fn brute_pairs(pts: &[Complex64], k: usize) -> Vec<(f64, usize, usize)> {
    let n = pts.len();
    let scale = (n as f64).powf(0.75);
    let mut all = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            all.push(((pts[j] - pts[i]).norm(), i, j));
        }
    }
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    all.truncate(k);
    all.into_iter().map(|(d, i, j)| (scale * d, i, j)).collect()
}

/// Random configurations of several shapes, including lattices with exact ties.
fn configuration(seed: u64) -> Vec<Complex64> {
    let mut rng = SeedStream::new(seed, 0).rng();
    let n = 2 + (rng.next_u64() % 299) as usize;
    match seed % 5 {
        0 => (0..n).map(|_| rng.complex_gaussian(1.0)).collect(),
        1 => (0..n).map(|_| Complex64::new(rng.uniform() * 10.0, rng.uniform() * 0.01)).collect(),
        2 => {
            let side = (n as f64).sqrt().ceil() as usize;
            (0..n).map(|i| Complex64::new((i % side) as f64, (i / side) as f64)).collect()
        }
        3 => (0..n)
            .map(|_| {
                let cluster = if rng.uniform() < 0.5 { 0.0 } else { 50.0 };
                Complex64::new(cluster + rng.uniform(), rng.uniform())
            })
            .collect(),
        _ => (0..n)
            .map(|_| Complex64::new((rng.uniform() * 8.0).floor() * 0.25, (rng.uniform() * 8.0).floor() * 0.25 + 1e3))
            .collect(),
    }
}

#[test]
fn grid_search_equals_brute_force_on_500_configurations() {
    for seed in 0..500u64 {
        let raw = configuration(seed);
        let Ok(sample) = PointSample::from_points(raw) else { panic!("seed {seed}") };
        let pts = sample.points();
        let events = nearest_successor_gaps(&sample).unwrap();
        let got: Vec<(f64, usize, usize)> = events.iter().map(|e| (e.rescaled_size, e.i, e.i_star)).collect();
        // Repeated points (the lattice shapes) are ordered by position.
        assert_eq!(got, brute_successor_gaps(pts, |i, j| j > i), "seed {seed}: successor events differ");
        let k = (pts.len() * (pts.len() - 1) / 2).min(5);
        let pairs: Vec<(f64, usize, usize)> =
            k_smallest_pairs(&sample, k).unwrap().into_iter().map(|p| (p.rescaled_size, p.i, p.j)).collect();
        assert_eq!(pairs, brute_pairs(pts, k), "seed {seed}: smallest pairs differ");
    }
}

#[test]
fn events_of_distinct_configurations() {
    for seed in 0..100u64 {
        let mut raw = configuration(seed);
        raw.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        raw.dedup();
        if raw.len() < 2 {
            continue;
        }
        let sample = PointSample::from_points(raw).unwrap();
        let events = nearest_successor_gaps(&sample).unwrap();
        assert_eq!(events.len(), sample.n() - 1);
        let got: Vec<(f64, usize, usize)> = events.iter().map(|e| (e.rescaled_size, e.i, e.i_star)).collect();
        let pts = sample.points();
        assert_eq!(got, brute_successor_gaps(pts, |i, j| precedes(pts[i], pts[j])), "seed {seed}");
    }
}

#[test]
fn counts_split_over_tiling_windows() {
    let mut rng = SeedStream::new(77, 0).rng();
    let pts: Vec<Complex64> = (0..300).map(|_| rng.complex_gaussian(1.0)).collect();
    let sample = PointSample::from_points(pts).unwrap();
    let events = nearest_successor_gaps(&sample).unwrap();
    let all = count_in_window(&events, &SizeWindow::new(0.0, f64::INFINITY).unwrap(), &RegionSpec::WholePlane);
    assert_eq!(all, events.len());
    let edges = [0.0, 0.5, 1.0, 2.0, f64::INFINITY];
    let parts: usize = edges
        .windows(2)
        .map(|w| count_in_window(&events, &SizeWindow::new(w[0], w[1]).unwrap(), &RegionSpec::WholePlane))
        .sum();
    assert_eq!(parts, all);
    let right = RegionSpec::HalfPlane { normal: Complex64::new(1.0, 0.0), offset: 0.0 };
    let left = RegionSpec::HalfPlane { normal: Complex64::new(-1.0, 0.0), offset: 0.0 };
    let w = SizeWindow::new(0.0, 1.0).unwrap();
    let on_axis = events.iter().filter(|e| e.location.re == 0.0 && w.contains(e.rescaled_size)).count();
    assert_eq!(
        count_in_window(&events, &w, &right) + count_in_window(&events, &w, &left) + on_axis,
        count_in_window(&events, &w, &RegionSpec::WholePlane)
    );
}

fn points_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..120)
}

fn to_sample(raw: &[(f64, f64)]) -> PointSample {
    PointSample::from_points(raw.iter().map(|&(x, y)| Complex64::new(x, y)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn order_is_strict_and_total(a in (-3.0f64..3.0, -3.0f64..3.0), b in (-3.0f64..3.0, -3.0f64..3.0)) {
        let (z1, z2) = (Complex64::new(a.0, a.1), Complex64::new(b.0, b.1));
        prop_assert!(!precedes(z1, z1));
        if z1 != z2 {
            prop_assert!(precedes(z1, z2) ^ precedes(z2, z1));
        }
    }

    #[test]
    fn successors_follow_their_source(raw in points_strategy()) {
        let sample = to_sample(&raw);
        let events: Vec<GapEvent> = nearest_successor_gaps(&sample).unwrap();
        for e in &events {
            prop_assert!(precedes(sample.points()[e.i], sample.points()[e.i_star]));
            prop_assert_eq!(e.location, sample.points()[e.i]);
        }
    }

    #[test]
    fn smallest_pair_is_below_every_event(raw in points_strategy()) {
        let sample = to_sample(&raw);
        let t = k_smallest_pair_gaps(&sample, 1).unwrap()[0];
        let events = nearest_successor_gaps(&sample).unwrap();
        let min = events.iter().map(|e| e.rescaled_size).fold(f64::INFINITY, f64::min);
        prop_assert!(t <= min);
        // The closest pair is always realised as a successor event.
        prop_assert_eq!(t, min);
    }

    #[test]
    fn gaps_are_sorted(raw in points_strategy(), k in 1usize..10) {
        let sample = to_sample(&raw);
        let k = k.min(sample.n() * (sample.n() - 1) / 2);
        let t = k_smallest_pair_gaps(&sample, k).unwrap();
        prop_assert_eq!(t.len(), k);
        prop_assert!(t.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn translation_moves_locations_only(raw in points_strategy(), wx in -2.0f64..2.0, wy in -2.0f64..2.0) {
        let sample = to_sample(&raw);
        let w = Complex64::new(wx, wy);
        let moved = sample.translated(w).unwrap();
        let a = nearest_successor_gaps(&sample).unwrap();
        let b = nearest_successor_gaps(&moved).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.rescaled_size - y.rescaled_size).abs() <= 1e-9 * x.rescaled_size.max(1.0));
            prop_assert!((x.location + w - y.location).norm() <= 1e-12);
        }
        let ta = k_smallest_pair_gaps(&sample, 1).unwrap()[0];
        let tb = k_smallest_pair_gaps(&moved, 1).unwrap()[0];
        prop_assert!((ta - tb).abs() <= 1e-9 * ta.max(1.0));
    }
}
