use hka_core::data::Dataset;
use hka_core::kmeans::{Assignment, CentroidSet};
use hka_core::metrics::{
    adjusted_rand_index, adjusted_rand_index_hubert_arabie, davies_bouldin, intra_distance,
    pair_counts, wilcoxon_rank_sum, wilcoxon_rank_sum_with, Alternative, PairCounts, RankSumMethod,
};
use proptest::prelude::*;

/// Pair classification by looking at every pair directly.
fn brute_pairs(u: &[usize], v: &[usize]) -> PairCounts {
    let mut c = PairCounts { a: 0, b: 0, c: 0, d: 0 };
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            match (u[i] == u[j], v[i] == v[j]) {
                (true, true) => c.a += 1,
                (true, false) => c.b += 1,
                (false, true) => c.c += 1,
                (false, false) => c.d += 1,
            }
        }
    }
    c
}

fn brute_ari(u: &[usize], v: &[usize]) -> f64 {
    let PairCounts { a, b, c, d } = brute_pairs(u, v);
    let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
    let n = a + b + c + d;
    let e = (a + b) * (a + c) + (c + d) * (b + d);
    if n * n == e {
        1.0
    } else {
        (n * (a + d) - e) / (n * n - e)
    }
}

/// Every set partition of `0..n` as a restricted growth string.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for l in 0..=max + 1 {
            prefix.push(l);
            go(prefix, max.max(l), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], 0, n, &mut out);
    out
}

#[test]
fn ari_matches_pair_enumeration_up_to_seven_points() {
    let bell = [1, 2, 5, 15, 52, 203, 877];
    for n in 2..=7 {
        let all = partitions(n);
        assert_eq!(all.len(), bell[n - 1]);
        for u in &all {
            for v in &all {
                assert_eq!(pair_counts(u, v).unwrap(), brute_pairs(u, v));
                let want = brute_ari(u, v);
                let got = adjusted_rand_index(u, v).unwrap();
                assert!((got - want).abs() < 1e-12, "{u:?} {v:?}: {got} vs {want}");
                let ha = adjusted_rand_index_hubert_arabie(u, v).unwrap();
                assert!((ha - want).abs() < 1e-12, "{u:?} {v:?}: {ha} vs {want}");
            }
        }
    }
}

#[test]
fn crossed_four_points() {
    // pairs: a = 0, b = 2, c = 2, d = 2 over C(4, 2) = 6
    let (u, v) = ([0, 0, 1, 1], [0, 1, 0, 1]);
    assert_eq!(brute_pairs(&u, &v), PairCounts { a: 0, b: 2, c: 2, d: 2 });
    assert_eq!(adjusted_rand_index(&u, &v).unwrap(), (6.0 * 2.0 - 20.0) / (36.0 - 20.0));
}

fn label_pair() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (2usize..60).prop_flat_map(|n| {
        (
            prop::collection::vec(0usize..5, n),
            prop::collection::vec(0usize..5, n),
        )
    })
}

proptest! {
    #[test]
    fn ari_symmetric((u, v) in label_pair()) {
        let x = adjusted_rand_index(&u, &v).unwrap();
        let y = adjusted_rand_index(&v, &u).unwrap();
        prop_assert!((x - y).abs() < 1e-12);
        prop_assert!(x <= 1.0 + 1e-12);
    }

    #[test]
    fn ari_ignores_label_names(
        (u, v) in label_pair(),
        perm in Just((0usize..5).collect::<Vec<_>>()).prop_shuffle(),
        offset in 0usize..1000,
    ) {
        let renamed: Vec<usize> = u.iter().map(|&l| perm[l] * 7 + offset).collect();
        let x = adjusted_rand_index(&u, &v).unwrap();
        let y = adjusted_rand_index(&renamed, &v).unwrap();
        prop_assert!((x - y).abs() < 1e-12);
        prop_assert_eq!(adjusted_rand_index(&u, &renamed).unwrap(), 1.0);
    }

    #[test]
    fn intra_scales_and_db_does_not(
        rows in prop::collection::vec(prop::collection::vec(-10.0..10.0f64, 2), 6..30),
        lambda in 0.01..100.0f64,
    ) {
        // three clusters by index so none is empty
        let labels: Vec<usize> = (0..rows.len()).map(|i| i % 3).collect();
        let mut centers = vec![[0.0, 0.0]; 3];
        let mut counts = [0.0; 3];
        for (r, &l) in rows.iter().zip(&labels) {
            centers[l][0] += r[0];
            centers[l][1] += r[1];
            counts[l] += 1.0;
        }
        for (c, n) in centers.iter_mut().zip(counts) {
            c[0] /= n;
            c[1] /= n;
        }
        let a = Assignment::new(labels, 3).unwrap();
        let data = Dataset::from_rows("p", &rows, None).unwrap();
        let z = CentroidSet::from_rows(&centers).unwrap();
        let scaled = Dataset::from_rows("s", rows.iter().map(|r| [r[0] * lambda, r[1] * lambda]), None).unwrap();
        let zs = CentroidSet::from_rows(centers.iter().map(|c| [c[0] * lambda, c[1] * lambda])).unwrap();

        let i1 = intra_distance(&data, &a, &z).unwrap();
        let i2 = intra_distance(&scaled, &a, &zs).unwrap();
        prop_assert!((i2 - lambda * i1).abs() <= 1e-9 * (1.0 + i2));
        if let (Ok(d1), Ok(d2)) = (davies_bouldin(&data, &a, &z), davies_bouldin(&scaled, &a, &zs)) {
            prop_assert!((d1 - d2).abs() <= 1e-9 * (1.0 + d1));
        }
    }

    #[test]
    fn rank_sum_tails_swap(
        x in prop::collection::vec(0u8..20, 1..25),
        y in prop::collection::vec(0u8..20, 1..25),
    ) {
        let x: Vec<f64> = x.into_iter().map(f64::from).collect();
        let y: Vec<f64> = y.into_iter().map(f64::from).collect();
        for method in [RankSumMethod::Auto, RankSumMethod::Normal] {
            let less = wilcoxon_rank_sum_with(&x, &y, Alternative::Less, method).unwrap();
            let greater = wilcoxon_rank_sum_with(&y, &x, Alternative::Greater, method).unwrap();
            prop_assert!((less - greater).abs() < 1e-12);
            let two = wilcoxon_rank_sum_with(&x, &y, Alternative::TwoSided, method).unwrap();
            prop_assert!((0.0..=1.0).contains(&less) && (0.0..=1.0).contains(&two));
        }
        // opposite one-sided tails of the normal form overlap by the continuity band
        let a = wilcoxon_rank_sum_with(&x, &y, Alternative::Less, RankSumMethod::Normal).unwrap();
        let b = wilcoxon_rank_sum_with(&y, &x, Alternative::Less, RankSumMethod::Normal).unwrap();
        let (nx, ny) = (x.len() as f64, y.len() as f64);
        let n = nx + ny;
        let mut pooled: Vec<f64> = x.iter().chain(&y).copied().collect();
        pooled.sort_by(f64::total_cmp);
        let ties: f64 = pooled
            .chunk_by(|p, q| p == q)
            .map(|g| (g.len().pow(3) - g.len()) as f64)
            .sum();
        let var = nx * ny / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
        if var > 0.0 {
            // the band between the two tails is at most the normal density peak over sd
            let band = 1.0 / (var.sqrt() * (2.0 * std::f64::consts::PI).sqrt());
            prop_assert!(a + b >= 1.0 - 1e-12);
            prop_assert!(a + b <= 1.0 + band + 1e-12);
        }
    }
}

/// Exact one-sided p-value by listing every way to draw `x.len()` ranks.
fn enumerated_less(x: &[f64], y: &[f64]) -> f64 {
    let mut pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let rank = |v: f64| pooled.iter().position(|p| *p == v).unwrap() + 1;
    let observed: usize = x.iter().map(|v| rank(*v)).sum();
    let n = pooled.len();
    let (mut hits, mut total) = (0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != x.len() {
            continue;
        }
        let s: usize = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).sum();
        total += 1;
        if s <= observed {
            hits += 1;
        }
    }
    hits as f64 / total as f64
}

#[test]
fn exact_small_samples_match_enumeration() {
    let x = [1.0, 2.0, 3.0];
    let y = [4.0, 5.0, 6.0];
    assert_eq!(enumerated_less(&x, &y), 0.05);
    let p = wilcoxon_rank_sum(&x, &y, Alternative::Less).unwrap();
    assert!((p - 0.05).abs() < 1e-15);

    let x = [3.1, 1.2, 4.4, 2.0, 5.9];
    let y = [6.3, 2.5, 7.7, 8.1, 9.0, 4.0];
    let p = wilcoxon_rank_sum_with(&x, &y, Alternative::Less, RankSumMethod::Exact).unwrap();
    assert!((p - enumerated_less(&x, &y)).abs() < 1e-15);
}

proptest! {
    #[test]
    fn exact_matches_enumeration(
        values in Just((0..12).map(f64::from).collect::<Vec<_>>()).prop_shuffle(),
        split in 1usize..12,
        total in 2usize..=12,
    ) {
        let split = split.min(total - 1);
        let (x, y) = values[..total].split_at(split);
        let p = wilcoxon_rank_sum_with(x, y, Alternative::Less, RankSumMethod::Exact).unwrap();
        prop_assert!((p - enumerated_less(x, y)).abs() < 1e-12);
    }
}

#[test]
fn rank_sum_reference_values() {
    // independent reference: scipy.stats.mannwhitneyu, asymptotic with continuity
    let x = [1.0, 2.0, 2.0, 3.0, 5.0, 5.0, 7.0];
    let y = [2.0, 4.0, 5.0, 6.0, 6.0, 8.0, 9.0, 9.0];
    let cases = [
        (Alternative::Less, 0.035_147_114_709_383_36),
        (Alternative::Greater, 0.972_996_778_143_957_6),
        (Alternative::TwoSided, 0.070_294_229_418_766_72),
    ];
    for (alt, want) in cases {
        let p = wilcoxon_rank_sum(&x, &y, alt).unwrap();
        assert!((p - want).abs() < 1e-12, "{alt:?}: {p}");
    }
    // and the exact null distribution
    let x = [3.1, 1.2, 4.4, 2.0, 5.9];
    let y = [6.3, 2.5, 7.7, 8.1, 9.0, 4.0];
    let cases = [
        (Alternative::Less, 0.041_125_541_125_541_13),
        (Alternative::Greater, 0.974_025_974_025_974),
        (Alternative::TwoSided, 0.082_251_082_251_082_26),
    ];
    for (alt, want) in cases {
        let p = wilcoxon_rank_sum(&x, &y, alt).unwrap();
        assert!((p - want).abs() < 1e-12, "{alt:?}: {p}");
    }
}

#[test]
fn twenty_separated_replicates() {
    let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
    let y: Vec<f64> = (0..20).map(|i| 100.0 + i as f64).collect();
    let p = wilcoxon_rank_sum(&x, &y, Alternative::Less).unwrap();
    assert!(p < 1e-4, "{p}");
    let same = wilcoxon_rank_sum(&x, &x, Alternative::TwoSided).unwrap();
    assert!(same > 0.99);
}
