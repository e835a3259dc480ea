//! Composite Simpson quadrature on uniform grids.
//!
//! All spatial integrands in this crate are smooth except at isolated
//! interface points, so integration is composite Simpson per smooth segment.
//! An odd number of intervals is handled with a Simpson 3/8 tail.

use crate::C64;

/// Integral of uniformly spaced complex samples with step `h`.
///
/// Uses composite Simpson; if the interval count is odd, the last three
/// intervals use the 3/8 rule. Needs at least 2 samples.
pub fn simpson(samples: &[C64], h: f64) -> C64 {
    let n = samples.len();
    assert!(n >= 2, "quadrature needs at least two samples");
    match n {
        2 => (samples[0] + samples[1]) * (h / 2.0),
        3 => (samples[0] + samples[1] * 4.0 + samples[2]) * (h / 3.0),
        4 => (samples[0] + samples[1] * 3.0 + samples[2] * 3.0 + samples[3]) * (h * 3.0 / 8.0),
        _ => {
            let intervals = n - 1;
            let (simpson_part, tail) = if intervals.is_multiple_of(2) {
                (samples, None)
            } else {
                (&samples[..n - 3], Some(&samples[n - 4..]))
            };
            let mut acc = simpson_part[0] + simpson_part[simpson_part.len() - 1];
            let mut four = C64::new(0.0, 0.0);
            let mut two = C64::new(0.0, 0.0);
            for (i, v) in simpson_part[1..simpson_part.len() - 1].iter().enumerate() {
                if i % 2 == 0 {
                    four += v;
                } else {
                    two += v;
                }
            }
            acc += four * 4.0 + two * 2.0;
            let mut total = acc * (h / 3.0);
            if let Some(t) = tail {
                total += (t[0] + t[1] * 3.0 + t[2] * 3.0 + t[3]) * (h * 3.0 / 8.0);
            }
            total
        }
    }
}

/// Real-valued variant of [`simpson`].
pub fn simpson_real(samples: &[f64], h: f64) -> f64 {
    let complex: Vec<C64> = samples.iter().map(|&v| C64::new(v, 0.0)).collect();
    simpson(&complex, h).re
}

/// Simpson nodes and weights over `[a, b]` split at interior `breakpoints`,
/// with roughly `points` samples total distributed over the segments.
///
/// Each segment gets an even interval count proportional to its length, so
/// plain composite Simpson applies per segment and integrands with kinks at
/// the breakpoints lose no accuracy. The same grid can be reused against
/// many integrands: `∫f ≈ Σ wᵢ f(xᵢ)`.
pub fn simpson_grid(a: f64, b: f64, points: usize, breakpoints: &[f64]) -> (Vec<f64>, Vec<f64>) {
    assert!(b > a);
    let mut cuts = vec![a];
    let mut sorted: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > a && p < b)
        .collect();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    sorted.dedup();
    cuts.extend(sorted);
    cuts.push(b);
    let total = b - a;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for seg in cuts.windows(2) {
        let (lo, hi) = (seg[0], seg[1]);
        let share = ((points - 1) as f64 * (hi - lo) / total).ceil() as usize;
        let intervals = share.max(2).next_multiple_of(2);
        let h = (hi - lo) / intervals as f64;
        for i in 0..=intervals {
            let x = if i == intervals {
                hi
            } else {
                lo + i as f64 * h
            };
            let w = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            nodes.push(x);
            weights.push(w * h / 3.0);
        }
    }
    (nodes, weights)
}

/// Integral of `f` over `[a, b]` split at interior `breakpoints`; see
/// [`simpson_grid`] for the grid layout.
pub fn integrate_segmented(
    f: &dyn Fn(f64) -> C64,
    a: f64,
    b: f64,
    points: usize,
    breakpoints: &[f64],
) -> C64 {
    let (nodes, weights) = simpson_grid(a, b, points, breakpoints);
    nodes
        .iter()
        .zip(weights.iter())
        .map(|(&x, &w)| f(x) * w)
        .sum()
}

/// `n` evenly spaced points covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let h = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + i as f64 * h })
        .collect()
}
