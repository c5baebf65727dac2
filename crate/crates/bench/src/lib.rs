//! Input generators shared by the benchmarks.

use seqrank::{AtomicMeasure, Convention, GaussianRational, SequenceWindow};

/// Moments of `∑ (k+1) δ_{(k+2)/(k+3)}` for `k < r`, with `2r + 4` terms.
pub fn rational_moments(r: usize) -> SequenceWindow {
    let atoms = (0..r as i64).map(|k| GaussianRational::ratio(k + 2, k + 3)).collect();
    let masses = (0..r as i64).map(|k| GaussianRational::from_int(k + 1)).collect();
    let mu = AtomicMeasure::from_exact(atoms, masses).expect("distinct nonzero atoms");
    seqrank::analytic::moments(&mu, 2 * r + 4, Convention::MomentRank).expect("exact measure")
}

/// Power sums `∑ β^n`, `n = 1..=2r+2`, of the integer multiset `{1, …, r}`.
pub fn power_sums(r: usize) -> SequenceWindow {
    let terms = (1..=2 * r as u32 + 2)
        .map(|n| (1..=r as i64).map(|b| GaussianRational::from_int(b).pow(n)).sum())
        .collect();
    SequenceWindow::new(1, terms).expect("nonempty")
}

/// Fibonacci numbers `F_1, F_2, …`.
pub fn fibonacci(n: usize) -> SequenceWindow {
    let mut v = vec![1i64, 1];
    while v.len() < n {
        let k = v.len();
        v.push(v[k - 1] + v[k - 2]);
    }
    v.truncate(n);
    SequenceWindow::from_ints(0, &v).expect("nonempty")
}
