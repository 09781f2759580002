//! Implementation checks against independently derived oracles.

use cbir::color::{hue_voted_histogram, saturation_voted_histogram};
use cbir::evaluation::{evaluate_all, sweep_curves};
use cbir::index_store::{FeatureIndex, Record};
use cbir::texture::{
    dscop_code, dscop_map, glcm, lbp_histogram, texture_feature, DscopMap, Window3x3,
};
use cbir::{query, FeatureVector, HsvImage, Metric, Plane, QuantizationScheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Grid = [[f64; 3]; 3];

/// Cells above each diagonal whose mirror images form the three pairs of
/// that diagonal, listed in the code's bit order.
const PRINCIPAL_FIRST: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];
const COUNTER_FIRST: [(usize, usize); 3] = [(0, 1), (0, 0), (1, 0)];

fn reflect_principal((r, c): (usize, usize)) -> (usize, usize) {
    (c, r)
}

fn reflect_counter((r, c): (usize, usize)) -> (usize, usize) {
    (2 - c, 2 - r)
}

fn geometric_dscop(g: &Grid) -> u8 {
    let d = |(r, c): (usize, usize)| g[r][c] - g[1][1];
    let mut code = 0u8;
    for (firsts, mirror) in [
        (PRINCIPAL_FIRST, reflect_principal as fn(_) -> _),
        (COUNTER_FIRST, reflect_counter as fn(_) -> _),
    ] {
        for p in firsts {
            code = (code << 1) | u8::from(d(p) * d(mirror(p)) >= 0.0);
        }
    }
    code
}

fn random_grid(rng: &mut ChaCha8Rng, max: i32) -> Grid {
    let mut g = [[0.0; 3]; 3];
    for row in &mut g {
        for v in row.iter_mut() {
            *v = f64::from(rng.random_range(0..=max));
        }
    }
    g
}

fn random_plane(rng: &mut ChaCha8Rng, w: usize, h: usize) -> Plane {
    Plane::from_fn(w, h, |_, _| f64::from(rng.random_range(0..=255u8)) / 255.0)
}

#[test]
fn oracle_pairs_cover_each_diagonal() {
    for (firsts, mirror) in [
        (PRINCIPAL_FIRST, reflect_principal as fn(_) -> _),
        (COUNTER_FIRST, reflect_counter as fn(_) -> _),
    ] {
        let mut cells: Vec<(usize, usize)> = firsts.iter().flat_map(|&p| [p, mirror(p)]).collect();
        cells.sort();
        cells.dedup();
        assert_eq!(cells.len(), 6);
        for p in firsts {
            assert_ne!(p, mirror(p));
            assert_eq!(mirror(mirror(p)), p);
        }
    }
}

#[test]
fn dscop_matches_geometric_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..5_000 {
        // small ranges force plenty of zero differences
        let max = if trial % 2 == 0 { 3 } else { 255 };
        let g = random_grid(&mut rng, max);
        assert_eq!(
            dscop_code(&Window3x3::from_grid(g)),
            geometric_dscop(&g),
            "{g:?}"
        );
    }
}

#[test]
fn transposed_window_keeps_bit_multiset() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2_000 {
        let g = random_grid(&mut rng, 9);
        let mut t = g;
        for (r, row) in t.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = g[c][r];
            }
        }
        let a = dscop_code(&Window3x3::from_grid(g));
        let b = dscop_code(&Window3x3::from_grid(t));
        assert_eq!(a.count_ones(), b.count_ones());
        assert_eq!(b, geometric_dscop(&t));
        // principal pairs map onto themselves
        assert_eq!(a >> 3, b >> 3);
    }
}

#[test]
fn dscop_map_matches_per_window_extraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let plane = random_plane(&mut rng, 12, 12);
    let map = dscop_map(&plane).unwrap();
    assert_eq!((map.width(), map.height()), (10, 10));
    for y in 0..10 {
        for x in 0..10 {
            let mut g = [[0.0; 3]; 3];
            for (r, row) in g.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v = plane.get(x + c, y + r);
                }
            }
            assert_eq!(map.get(x, y), geometric_dscop(&g));
        }
    }
}

fn pair_count_oracle(map: &DscopMap) -> Vec<u32> {
    let mut m = vec![0u32; 256];
    for row in 0..map.height() {
        for col in 0..map.width() - 1 {
            let a = map.get(col, row) as usize * 16 / 64;
            let b = map.get(col + 1, row) as usize * 16 / 64;
            m[a * 16 + b] += 1;
        }
    }
    m
}

#[test]
fn glcm_matches_pair_count_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let codes = (0..100).map(|_| rng.random_range(0..64u8)).collect();
    let map = DscopMap::new(10, 10, codes).unwrap();
    let g = glcm(&map).unwrap();
    assert_eq!(g.counts().to_vec(), pair_count_oracle(&map));
    assert_eq!(g.total(), 90);
}

#[test]
fn texture_feature_sums_to_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let plane = random_plane(&mut rng, 20, 17);
    let f = texture_feature(&plane).unwrap();
    let raw = pair_count_oracle(&dscop_map(&plane).unwrap());
    let total: u32 = raw.iter().sum();
    assert_eq!(total, 15 * 17);
    for (a, &b) in f.iter().zip(&raw) {
        assert_eq!(*a, f64::from(b) / f64::from(total));
    }
    assert!((f.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn lbp_matches_per_window_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let plane = random_plane(&mut rng, 9, 11);
    let hist = lbp_histogram(&plane).unwrap();
    let mut oracle = [0u32; 256];
    // weights by neighbor, counter-clockwise from top-center
    let order = [
        (0, 1),
        (0, 0),
        (1, 0),
        (2, 0),
        (2, 1),
        (2, 2),
        (1, 2),
        (0, 2),
    ];
    for y in 0..9 {
        for x in 0..7 {
            let center = plane.get(x + 1, y + 1);
            let mut code = 0usize;
            for (k, &(r, c)) in order.iter().enumerate() {
                if plane.get(x + c, y + r) >= center {
                    code += 1 << k;
                }
            }
            oracle[code] += 1;
        }
    }
    assert_eq!(hist.bins, oracle);
    assert_eq!(hist.total(), 63);
}

#[test]
fn voting_histograms_match_accumulation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut gen = |_, _| rng.random::<f64>();
    let img = HsvImage::from_planes(
        Plane::from_fn(8, 8, &mut gen),
        Plane::from_fn(8, 8, &mut gen),
        Plane::from_fn(8, 8, &mut gen),
    )
    .unwrap();
    let mut hue = vec![0.0; 18];
    let mut sat = vec![0.0; 10];
    for i in 0..64 {
        let (h, s) = (img.h.data()[i], img.s.data()[i]);
        hue[((h * 18.0).floor() as usize).min(17)] += s;
        sat[((s * 10.0).floor() as usize).min(9)] += h;
    }
    assert_eq!(
        hue_voted_histogram(&img, 18).unwrap().bins(),
        hue.as_slice()
    );
    assert_eq!(
        saturation_voted_histogram(&img, 10).unwrap().bins(),
        sat.as_slice()
    );
}

fn naive(a: &[f64], b: &[f64], m: Metric) -> f64 {
    let mut acc = 0.0;
    for i in 0..a.len() {
        let (x, y) = (a[i], b[i]);
        acc += match m {
            Metric::D1 => ((x - y) / (1.0 + x + y)).abs(),
            Metric::Euclidean => (x - y).powi(2),
            Metric::Manhattan => (x - y).abs(),
            Metric::Canberra if x + y != 0.0 => (x - y).abs() / (x + y),
            Metric::ChiSquare if x + y != 0.0 => (x - y).powi(2) / (x + y) / 2.0,
            _ => 0.0,
        };
    }
    if m == Metric::Euclidean {
        acc.sqrt()
    } else {
        acc
    }
}

#[test]
fn metrics_match_naive_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..200 {
        let a: Vec<f64> = (0..50)
            .map(|_| {
                if rng.random_bool(0.3) {
                    0.0
                } else {
                    rng.random()
                }
            })
            .collect();
        let b: Vec<f64> = (0..50)
            .map(|_| {
                if rng.random_bool(0.3) {
                    0.0
                } else {
                    rng.random()
                }
            })
            .collect();
        for m in Metric::ALL {
            let (got, want) = (m.eval(&a, &b), naive(&a, &b, m));
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1e-300),
                "{m}: {got} vs {want}"
            );
        }
    }
}

fn random_index(rng: &mut ChaCha8Rng, size: usize, classes: usize) -> FeatureIndex {
    let scheme = QuantizationScheme::default();
    let records = (0..size)
        .map(|i| Record {
            id: format!("img{i:04}"),
            label: format!("c{}", i % classes),
            // coarse values so exact distance ties actually occur
            feature: FeatureVector::new(
                (0..scheme.feature_len())
                    .map(|_| f64::from(rng.random_range(0..3u8)) / 4.0)
                    .collect(),
                scheme,
            )
            .unwrap(),
        })
        .collect();
    FeatureIndex::from_records(scheme, Metric::D1, records).unwrap()
}

#[test]
fn query_matches_sort_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let index = random_index(&mut rng, 20, 4);
    let q = FeatureVector::new(
        (0..284).map(|_| rng.random::<f64>()).collect(),
        index.scheme(),
    )
    .unwrap();
    for m in Metric::ALL {
        let mut all: Vec<(f64, String)> = index
            .records()
            .iter()
            .map(|r| (naive(q.values(), r.feature.values(), m), r.id.clone()))
            .collect();
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let got = query(&index, &q, m, 20).unwrap();
        let got_ids: Vec<&str> = got.hits.iter().map(|h| h.id.as_str()).collect();
        let want_ids: Vec<&str> = all.iter().map(|(_, id)| id.as_str()).collect();
        assert_eq!(got_ids, want_ids, "{m}");
        let top5 = query(&index, &q, m, 5).unwrap();
        assert_eq!(top5.hits[..], got.hits[..5]);
    }
}

#[test]
fn two_by_two_identical_classes() {
    let scheme = QuantizationScheme::default();
    let vector = |seed: f64| {
        FeatureVector::new(
            (0..284)
                .map(|i| ((i as f64 + seed) * 0.37).sin().abs())
                .collect(),
            scheme,
        )
        .unwrap()
    };
    let records = ["a1", "a2", "b1", "b2"]
        .iter()
        .map(|id| Record {
            id: id.to_string(),
            label: id[..1].to_string(),
            feature: vector(if id.starts_with('a') { 0.0 } else { 5.0 }),
        })
        .collect();
    let index = FeatureIndex::from_records(scheme, Metric::D1, records).unwrap();
    let report = evaluate_all(&index, Metric::D1, 2).unwrap();
    assert_eq!(report.p_total, 1.0);
    assert_eq!(report.arr(), 1.0);
    let single = evaluate_all(&index, Metric::D1, 4).unwrap();
    assert_eq!(single.arr(), 1.0);
    assert_eq!(single.p_total, 0.5);
}

#[test]
fn single_category_is_always_precise() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let index = random_index(&mut rng, 12, 1);
    for n in 1..=12 {
        assert_eq!(
            evaluate_all(&index, Metric::Canberra, n).unwrap().p_total,
            1.0
        );
    }
}

#[test]
fn sweep_points_equal_independent_evaluations() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let index = random_index(&mut rng, 60, 6);
    let ns = [1, 5, 10, 20, 33, 60];
    for m in Metric::ALL {
        let curve = sweep_curves(&index, m, &ns).unwrap();
        for p in &curve.points {
            let r = evaluate_all(&index, m, p.n).unwrap();
            assert_eq!(
                (p.p_total, p.r_total),
                (r.p_total, r.r_total),
                "{m} n={}",
                p.n
            );
        }
        assert!(curve
            .points
            .windows(2)
            .all(|w| w[0].r_total <= w[1].r_total));
        assert_eq!(curve.points.last().unwrap().r_total, 1.0);
    }
    assert!(sweep_curves(&index, Metric::D1, &[10, 5]).is_err());
    assert!(sweep_curves(&index, Metric::D1, &[0, 5]).is_err());
}

#[test]
fn evaluation_ignores_record_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let index = random_index(&mut rng, 40, 5);
    let mut shuffled = index.records().to_vec();
    use rand::seq::SliceRandom;
    shuffled.shuffle(&mut rng);
    let other = FeatureIndex::from_records(index.scheme(), Metric::D1, shuffled).unwrap();
    for n in [3, 8, 40] {
        let a = evaluate_all(&index, Metric::D1, n).unwrap();
        let b = evaluate_all(&other, Metric::D1, n).unwrap();
        assert_eq!((a.p_total, a.r_total), (b.p_total, b.r_total));
        assert_eq!(a.per_category, b.per_category);
    }
}
