use lca_orient::randomness::{Context, EDGE_COLOR, PERCOLATE, VERTEX_COLOR};
use lca_orient::{EdgeKey, RandomTape};

fn pair(i: u64) -> EdgeKey {
    // A spread of distinct pairs over a 2^20 x 2^20 grid.
    let a = (i % 1000) as u32;
    let b = 1000 + (i / 1000) as u32;
    EdgeKey::new(a, b).unwrap()
}

/// Pearson statistic against a uniform expectation.
fn chi_square(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

#[test]
fn edge_colors_are_uniform() {
    let tape = RandomTape::new(20_240_601);
    let mut counts = [0u64; 5];
    for i in 0..1_000_000 {
        counts[tape.edge_color(pair(i), 5).unwrap() as usize] += 1;
    }
    for &c in &counts {
        assert!((c as f64 - 200_000.0).abs() <= 2_000.0, "{counts:?}");
    }
    // 4 degrees of freedom; 18.47 is the 0.001 upper quantile.
    assert!(chi_square(&counts) < 18.47, "{counts:?}");
}

#[test]
fn edge_color_is_symmetric_and_total() {
    let tape = RandomTape::new(1);
    for i in 0..1000 {
        let e = pair(i);
        let flipped = EdgeKey::new(e.v(), e.u()).unwrap();
        assert_eq!(tape.edge_color(e, 7).unwrap(), tape.edge_color(flipped, 7).unwrap());
        assert_eq!(tape.edge_color(e, 1).unwrap(), 0);
    }
    assert!(tape.edge_color(pair(0), 0).is_err());
}

#[test]
fn sample_indices_are_uniform() {
    let tape = RandomTape::new(77);
    let e = EdgeKey::new(3u32, 9u32).unwrap();
    let mut counts = [0u64; 10];
    for trial in 0..100_000 {
        counts[tape.sample_index(e, trial, 10).unwrap() as usize] += 1;
    }
    // Each frequency within two percentage points of 1/10.
    for &c in &counts {
        assert!((c as f64 / 100_000.0 - 0.1).abs() <= 0.02, "{counts:?}");
    }
    // 9 degrees of freedom; 27.88 is the 0.001 upper quantile.
    assert!(chi_square(&counts) < 27.88, "{counts:?}");
    assert!((0..50).all(|t| tape.sample_index(e, t, 1).unwrap() == 0));
    assert!(tape.sample_index(e, 0, 0).is_err());
}

#[test]
fn non_power_of_two_bounds_are_unbiased() {
    // A bound just above 2^63 would put almost all mass on the low half under
    // a plain modulo.
    let tape = RandomTape::new(5);
    let bound = (1u64 << 63) + (1u64 << 62);
    let low = (0..20_000)
        .filter(|&i| tape.bounded(PERCOLATE, &[i], bound).unwrap() < bound / 2)
        .count();
    assert!((low as f64 - 10_000.0).abs() < 500.0, "{low}");
}

#[test]
fn contexts_are_uncorrelated() {
    // Agreement rate of each output bit between two contexts on equal args.
    let tape = RandomTape::new(99);
    let samples = 50_000u64;
    let mut agree = [0u64; 64];
    for i in 0..samples {
        let a = tape.uniform_word(EDGE_COLOR, &[i, i * 3]);
        let b = tape.uniform_word(VERTEX_COLOR, &[i, i * 3]);
        let same = !(a ^ b);
        for (bit, slot) in agree.iter_mut().enumerate() {
            *slot += same >> bit & 1;
        }
    }
    // sigma = sqrt(n) / 2, about 112; allow 5 sigma per bit.
    for (bit, &a) in agree.iter().enumerate() {
        let dev = (a as f64 - samples as f64 / 2.0).abs();
        assert!(dev < 5.0 * (samples as f64).sqrt() / 2.0, "bit {bit}: {a}");
    }
}

#[test]
fn avalanche() {
    let tape = RandomTape::new(4);
    let ctx = Context::new("avalanche");
    let mut flipped = 0u64;
    let mut trials = 0u64;
    for i in 0..2_000u64 {
        let base = tape.uniform_word(ctx, &[i, 17]);
        for bit in 0..64 {
            let w = tape.uniform_word(ctx, &[i ^ (1 << bit), 17]);
            flipped += (base ^ w).count_ones() as u64;
            trials += 1;
        }
    }
    let mean = flipped as f64 / trials as f64;
    assert!((mean - 32.0).abs() < 0.2, "{mean}");
}

#[test]
fn seeds_and_domains_separate_streams() {
    let a = RandomTape::new(1);
    let b = RandomTape::new(2);
    let c = a.with_domain("other");
    let differ = |x: &RandomTape, y: &RandomTape| {
        (0..1000)
            .filter(|&i| x.uniform_word(EDGE_COLOR, &[i]) != y.uniform_word(EDGE_COLOR, &[i]))
            .count()
    };
    assert_eq!(differ(&a, &b), 1000);
    assert_eq!(differ(&a, &c), 1000);
    assert_eq!(differ(&a, &RandomTape::new(1)), 0);
}
