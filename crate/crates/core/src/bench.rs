//! Timing of `iso_decide` on isomorphic pairs across instance sizes, with a
//! least-squares fit of log(time) against log(n).

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::generate::{derive_seed, gen_equipped, make_pair, GenSpec, PairKind};
use crate::isomorphism::iso_decide;

/// Minimum measured time per trial; small instances are repeated until it is
/// reached so that clock resolution does not dominate.
const MIN_SAMPLE: Duration = Duration::from_millis(5);

/// Batches per trial; the fastest batch is reported, which filters out
/// interference from other processes.
const BATCHES: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub trials: usize,
    pub mean_ns: f64,
    pub p50_ns: f64,
    pub p95_ns: f64,
    /// Vertex counts and permutation images of the generated pairs, hashed;
    /// equal across runs with the same seed.
    pub digest: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// `None` with fewer than two distinct sizes.
    pub fit: Option<LogLogFit>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,trials,mean_ns,p50_ns,p95_ns\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.0},{:.0},{:.0}",
                r.size, r.trials, r.mean_ns, r.p50_ns, r.p95_ns
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        match &self.fit {
            Some(f) => format!(
                "slope={:.4} intercept={:.4} r2={:.4}",
                f.slope, f.intercept, f.r_squared
            ),
            None => "slope=n/a (need at least two sizes)".to_string(),
        }
    }
}

/// Benchmarks `iso_decide` at every size. Instance generation is excluded from
/// timing; each trial's instance depends only on `(seed, size, trial)`.
pub fn bench(sizes: &[usize], trials: usize, seed: u64) -> BenchReport {
    assert!(trials >= 1, "need at least one trial");
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let mut samples = Vec::with_capacity(trials);
        let mut digest = 0xcbf2_9ce4_8422_2325u64;
        for t in 0..trials {
            let s = derive_seed(seed, size as u64, t as u64);
            let spec = GenSpec {
                max_orbit: 8,
                ..GenSpec::new(size.max(1), 3, s)
            };
            let et = gen_equipped(&spec).expect("bench spec is valid");
            let pair = make_pair(&et, PairKind::Iso, derive_seed(s, 1, 0)).expect("iso pair");
            for &x in pair.second.perm().image() {
                digest = (digest ^ x as u64).wrapping_mul(0x100_0000_01b3);
            }
            samples.push(time_decide(&pair.first, &pair.second));
        }
        samples.sort_by(f64::total_cmp);
        let mean_ns = samples.iter().sum::<f64>() / samples.len() as f64;
        rows.push(BenchRow {
            size,
            trials,
            mean_ns,
            p50_ns: percentile(&samples, 0.5),
            p95_ns: percentile(&samples, 0.95),
            digest,
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.size as f64).ln(), r.mean_ns.max(1.0).ln()))
        .collect();
    BenchReport {
        fit: fit_line(&points),
        rows,
    }
}

fn time_decide(
    a: &crate::automorphism::EquippedColoredTree,
    b: &crate::automorphism::EquippedColoredTree,
) -> f64 {
    // warm-up
    assert!(
        std::hint::black_box(iso_decide(a, b)),
        "iso pair decided false"
    );
    (0..BATCHES)
        .map(|_| {
            let mut reps = 0u32;
            let start = Instant::now();
            loop {
                std::hint::black_box(iso_decide(std::hint::black_box(a), std::hint::black_box(b)));
                reps += 1;
                let elapsed = start.elapsed();
                if elapsed >= MIN_SAMPLE {
                    return elapsed.as_nanos() as f64 / reps as f64;
                }
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn percentile(sorted: &[f64], q: f64) -> f64 {
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

/// Ordinary least squares fit of `y = slope·x + intercept`.
pub fn fit_line(points: &[(f64, f64)]) -> Option<LogLogFit> {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if points.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Some(LogLogFit {
        slope,
        intercept,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = fit_line(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert!(fit_line(&[(1.0, 1.0)]).is_none());
    }

    #[test]
    fn single_size_report() {
        let r = bench(&[10], 2, 1);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].size, 10);
        assert!(r.fit.is_none());
        assert_eq!(r.to_csv().lines().count(), 2);
    }

    #[test]
    fn same_seed_same_instances() {
        let a = bench(&[16, 64], 2, 9);
        let b = bench(&[16, 64], 2, 9);
        let da: Vec<u64> = a.rows.iter().map(|r| r.digest).collect();
        let db: Vec<u64> = b.rows.iter().map(|r| r.digest).collect();
        assert_eq!(da, db);
    }
}
