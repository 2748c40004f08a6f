//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p corrsphere-cli --test acceptance`.

use corrsphere::{
    diameter, gamma, gamma_prime, max_simplex_volume, max_simplex_volume_points, sandwich_check, sign_lift,
    sliding_measures, spherical_convex_hull_area, spherical_triangle_area, unit_vectors, verify_metric_axioms,
    CorrelationMatrix64, DistanceKind, DistanceMatrix64, MeasureKind, TimeSeries, TimeSeriesSet64, WindowSpec,
};
use corrsphere_testkit::benchmark::{run_benchmark, MIN_PROMINENCE, MIN_SEPARATION};
use corrsphere_testkit::geometry::{random_cap_points, random_series_set, random_triangle_sides, square_configuration};
use corrsphere_testkit::{girard_area, monte_carlo_hull_area, rng};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Series sets mixing independent noise with near copies and negated near
/// copies of earlier series, so that angles near 0 and near π occur.
fn stress_set(r: &mut ChaCha8Rng, n: usize, len: usize) -> TimeSeriesSet64 {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for _ in 0..n {
        let noise: Vec<f64> = (0..len).map(|_| StandardNormal.sample(&mut *r)).collect();
        let col = match (cols.is_empty(), r.random_range(0..4)) {
            (true, _) | (_, 0) => noise,
            (false, kind) => {
                let base = cols[r.random_range(0..cols.len())].clone();
                let eps = 10f64.powf(-r.random_range(1.0..9.0));
                let sign = if kind == 2 { -1.0 } else { 1.0 };
                base.iter().zip(&noise).map(|(b, z)| sign * b + eps * z).collect()
            }
        };
        cols.push(col);
    }
    let series =
        cols.into_iter().enumerate().map(|(i, v)| TimeSeries::new(format!("s{i}"), 0, 1, v).unwrap()).collect();
    TimeSeriesSet64::new(series).unwrap()
}

fn metric_axioms() -> Outcome {
    let mut r = rng(1001);
    let (mut matrices, mut failures) = (0usize, 0usize);
    let mut worst = f64::INFINITY;
    let mut worst_rho_path = f64::INFINITY;
    for _ in 0..500 {
        let n = r.random_range(3..=8);
        let k = r.random_range(8..=64);
        let set = stress_set(&mut r, n, k + 8);
        for start in 0..=8 {
            let Ok(vectors) = unit_vectors(&set, &WindowSpec::new(start, k)) else { continue };
            for kind in [DistanceKind::Spherical, DistanceKind::Projective] {
                let m = DistanceMatrix64::from_unit_vectors_unchecked(&vectors, kind);
                let report = verify_metric_axioms(&m);
                matrices += 1;
                if !report.passed {
                    failures += 1;
                }
                if let Some((.., margin)) = report.worst_triangle {
                    worst = worst.min(margin);
                }
                // the same check on arccos of the correlation matrix, for the record
                let rho = DistanceMatrix64::from_correlation_unchecked(
                    &CorrelationMatrix64::from_unit_vectors(&vectors),
                    kind,
                );
                if let Some((.., margin)) = verify_metric_axioms(&rho).worst_triangle {
                    worst_rho_path = worst_rho_path.min(margin);
                }
            }
        }
    }
    outcome(
        failures == 0 && worst >= -1e-9,
        format!(
            "500 sets, {matrices} matrices, {failures} failing, worst triangle slack {worst:.3e} (arccos-of-rho route: {worst_rho_path:.3e})"
        ),
    )
}

fn projective_identity() -> Outcome {
    let n = 10_000;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let rho = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        let g = gamma(rho).unwrap().radians();
        let gp = gamma_prime(rho).unwrap().radians();
        worst = worst.max((gp - g.min(PI - g)).abs());
    }
    outcome(worst <= 1e-15, format!("{n} grid points, max deviation {worst:.3e}"))
}

fn octant() -> Outcome {
    let a = spherical_triangle_area(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
    let err = (a - FRAC_PI_2).abs();
    outcome(err <= 1e-12, format!("area {a}, error {err:.3e}"))
}

fn lhuilier_vs_girard() -> Outcome {
    let mut r = rng(1004);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b, c) = random_triangle_sides(&mut r, 0.01, PI - 0.01);
        worst = worst.max((spherical_triangle_area(a, b, c).unwrap() - girard_area(a, b, c).unwrap()).abs());
    }
    outcome(worst <= 1e-10, format!("1000 triangles, max difference {worst:.3e}"))
}

fn cap_set(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let radius = r.random_range(0.2..1.45);
    random_cap_points(r, n, radius).into_iter().map(Vec::from).collect()
}

fn sandwich() -> Outcome {
    let mut r = rng(1005);
    let (mut violations, mut worst_ratio) = (0, 0.0f64);
    let mut max_b = 0;
    for _ in 0..200 {
        let n = r.random_range(4..=10);
        let set = sign_lift(&cap_set(&mut r, n));
        let rep = sandwich_check(&set, 2).unwrap();
        if !rep.holds() {
            violations += 1;
        }
        max_b = max_b.max(rep.triangle_count);
        if let Some(ratio) = rep.ratio {
            worst_ratio = worst_ratio.max(ratio / rep.triangle_count.max(1) as f64);
        }
    }
    outcome(
        violations == 0,
        format!("200 configurations, {violations} violations, largest B {max_b}, largest M2/(B*M2a) {worst_ratio:.3}"),
    )
}

fn diameter_is_max_segment() -> Outcome {
    let mut r = rng(1006);
    let mut mismatches = 0;
    for _ in 0..100 {
        let n = r.random_range(2..=9);
        let k = r.random_range(5..=40);
        let set = random_series_set(&mut r, n, k);
        let vectors = unit_vectors(&set, &WindowSpec::new(0, k)).unwrap();
        for kind in [DistanceKind::Spherical, DistanceKind::Projective] {
            let m = DistanceMatrix64::from_unit_vectors_unchecked(&vectors, kind);
            let d = diameter(&m).unwrap();
            let m1 = max_simplex_volume(&m, 1).unwrap();
            let direct = m.rows().iter().flatten().copied().fold(0.0, f64::max);
            if d.value != m1.value || d.value != direct || d.witness != m1.witness {
                mismatches += 1;
            }
        }
    }
    outcome(mismatches == 0, format!("100 inputs x 2 metrics, {mismatches} mismatches"))
}

fn hull_vs_monte_carlo() -> Outcome {
    let mut r = rng(1007);
    let mut inside = 0;
    let mut worst_z: f64 = 0.0;
    for seed in 0..50 {
        let n = r.random_range(4..=8);
        let set = sign_lift(&cap_set(&mut r, n));
        let exact = spherical_convex_hull_area(&set).unwrap().area;
        let est = monte_carlo_hull_area(&set, 1_000_000, seed).unwrap();
        let z = est.z_score(exact);
        worst_z = worst_z.max(z);
        if z <= 3.0 {
            inside += 1;
        }
    }
    outcome(inside >= 49, format!("{inside} of 50 hulls within 3 sigma, largest |z| {worst_z:.2}"))
}

fn square_strictness() -> Outcome {
    let pts: Vec<Vec<f64>> = square_configuration().into_iter().map(Vec::from).collect();
    let set = sign_lift(&pts);
    let hull = spherical_convex_hull_area(&set).unwrap().area;
    let tri = max_simplex_volume_points(&set, 2).unwrap().value;
    let est = monte_carlo_hull_area(&set, 1_000_000, 2024).unwrap();
    let margin = hull - tri;
    let pass = margin > 1e-6 && est.brackets(hull, 3.0) && est.value - 3.0 * est.standard_error > tri;
    outcome(
        pass,
        format!(
            "M2 {hull:.9} M2a {tri:.9} margin {margin:.6}; Monte Carlo {:.6} +- {:.6}",
            est.value, est.standard_error
        ),
    )
}

fn max_abs_diff(a: &[corrsphere::MeasureSeries64], b: &[corrsphere::MeasureSeries64]) -> Option<f64> {
    let mut worst: f64 = 0.0;
    for (x, y) in a.iter().zip(b) {
        for (u, v) in x.values.iter().zip(&y.values) {
            match (u, v) {
                (Some(u), Some(v)) => worst = worst.max((u - v).abs()),
                (None, None) => {}
                _ => return None,
            }
        }
    }
    Some(worst)
}

fn affine_invariance() -> Outcome {
    let mut r = rng(1009);
    let kinds = [MeasureKind::M1aDiameter, MeasureKind::M2aMaxArea, MeasureKind::M2HullArea];
    let (mut worst_affine, mut worst_neg) = (0.0f64, 0.0f64);
    let mut gap_mismatch = false;
    for case in 0..40 {
        // hull areas need the window points on a 2-sphere: three series
        let n = if case % 2 == 0 { 3 } else { 6 };
        let kinds: &[MeasureKind] = if n == 3 { &kinds } else { &kinds[..2] };
        let set = random_series_set(&mut r, n, 90);
        let base = sliding_measures(&set, 16, 1, kinds).unwrap();
        let scaled: Vec<_> =
            set.series().iter().map(|s| s.affine(r.random_range(0.01..100.0), r.random_range(-1e3..1e3))).collect();
        let scaled = sliding_measures(&TimeSeriesSet64::new(scaled).unwrap(), 16, 1, kinds).unwrap();
        let flip = r.random_range(0..n);
        let negated: Vec<_> = set
            .series()
            .iter()
            .enumerate()
            .map(|(i, s)| if i == flip { s.affine(-1.0, 0.0) } else { s.clone() })
            .collect();
        let negated = sliding_measures(&TimeSeriesSet64::new(negated).unwrap(), 16, 1, kinds).unwrap();
        match (max_abs_diff(&base, &scaled), max_abs_diff(&base, &negated)) {
            (Some(a), Some(b)) => {
                worst_affine = worst_affine.max(a);
                worst_neg = worst_neg.max(b);
            }
            _ => gap_mismatch = true,
        }
    }
    outcome(
        !gap_mismatch && worst_affine <= 1e-10 && worst_neg <= 1e-10,
        format!("40 sets, max change under positive affine maps {worst_affine:.3e}, under negation {worst_neg:.3e}"),
    )
}

fn planted_episodes() -> Outcome {
    let start = Instant::now();
    let (mut d_ok, mut a_ok, mut d_events, mut a_events, mut superset) = (0, 0, 0, 0, 0);
    for seed in 0..100 {
        let out = run_benchmark(seed, MIN_PROMINENCE, MIN_SEPARATION);
        d_ok += out.diameter_hits.iter().all(|&h| h) as usize;
        a_ok += out.area_hits.iter().all(|&h| h) as usize;
        d_events += out.diameter.events.len();
        a_events += out.area.events.len();
        superset += (out.comparison.counts.a_only == 0) as usize;
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        d_ok >= 95 && a_ok >= 95 && a_events >= d_events && secs < 120.0,
        format!(
            "seeds with every episode found: D {d_ok}/100, A {a_ok}/100; events D {d_events} A {a_events}; \
             every D event matched by an A event in {superset}/100 seeds; {secs:.1} s"
        ),
    )
}

fn analyze_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_corrsphere");
    let sim = dir.path().join("sim");
    let ok =
        Command::new(bin).args(["simulate", "--seed", "77", "--n-series", "3", "--out"]).arg(&sim).status().unwrap();
    if !ok.success() {
        return outcome(false, "simulate failed".into());
    }
    // every run writes to the same directory, so manifests compare verbatim
    let out = dir.path().join("out");
    let read = |dir: &Path| -> Vec<(String, Vec<u8>)> {
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap())
            .map(|e| (e.file_name().into_string().unwrap(), std::fs::read(e.path()).unwrap()))
            .filter(|(n, _)| n.ends_with(".csv") || n.ends_with(".json"))
            .collect();
        files.sort();
        files
    };
    let mut snapshots = Vec::new();
    for threads in ["1", "4", "4"] {
        let _ = std::fs::remove_dir_all(&out);
        let status = Command::new(bin)
            .env("RAYON_NUM_THREADS", threads)
            .args(["analyze", "--measures", "m1a,m2a,m2", "--format", "csv,json,svg", "--input"])
            .arg(sim.join("series.csv"))
            .arg("--out")
            .arg(&out)
            .status()
            .unwrap();
        if !status.success() {
            return outcome(false, "analyze failed".into());
        }
        snapshots.push(read(&out));
    }
    let identical = snapshots.iter().all(|s| *s == snapshots[0]);
    outcome(
        identical && snapshots[0].len() >= 7,
        format!("3 runs (1 and 4 threads), {} CSV/JSON files compared byte for byte", snapshots[0].len()),
    )
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Check); 11] = [
        ("metric axioms on random series sets", metric_axioms),
        ("projective identity on a 10^4 grid", projective_identity),
        ("octant triangle area", octant),
        ("L'Huilier vs Girard on random triangles", lhuilier_vs_girard),
        ("sandwich inequality M2a <= M2 <= B*M2a", sandwich),
        ("diameter equals 1-simplex maximum", diameter_is_max_segment),
        ("hull area vs Monte Carlo", hull_vs_monte_carlo),
        ("square hull strictly exceeds best triangle", square_strictness),
        ("affine and sign invariance of measure series", affine_invariance),
        ("detection on planted episodes", planted_episodes),
        ("analyze output determinism", analyze_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {name}: {} [{:.2} s]", o.detail, start.elapsed().as_secs_f64());
        failed += !o.pass as usize;
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
