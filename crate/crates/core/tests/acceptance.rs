//! Exit criteria for the library and CLI, one test per criterion.
//!
//! Each test prints a single `[PASS]` / `[FAIL]` line; run with
//! `cargo test -p prime-lissajous --test acceptance -- --nocapture` to see them.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2, TAU};
use std::time::{Duration, Instant};

use prime_lissajous::cli::reproduce_all;
use prime_lissajous::curves::{Curve, CurveSpec};
use prime_lissajous::geometry::{arc_length, curvature, mirror_asymmetry, trace_distance, QuadratureConfig};
use prime_lissajous::primes::{first_n_primes, is_prime};
use prime_lissajous::render::{emit_csv, read_csv};
use prime_lissajous::sampling::{default_sample_count, sample_curve, Polyline};
use prime_lissajous::ulam::{build_raster, spiral_coord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, pass: bool, detail: impl AsRef<str>) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name} ({})", detail.as_ref());
    assert!(pass, "criterion {id} failed: {name} ({})", detail.as_ref());
}

fn curve(spec: CurveSpec) -> Curve {
    Curve::new(&spec).unwrap()
}

fn chord_length(line: &Polyline) -> f64 {
    line.points.windows(2).map(|w| (w[1].x - w[0].x).hypot(w[1].y - w[0].y)).sum()
}

/// Chord length of uniform polylines over one period, doubling the sample
/// count until successive values agree to 1e-7 relative.
fn chord_oracle(c: &Curve) -> f64 {
    let mut segments = 256usize;
    let mut prev = chord_length(&sample_curve(c, 0.0, TAU, segments + 1).unwrap());
    loop {
        segments *= 2;
        let next = chord_length(&sample_curve(c, 0.0, TAU, segments + 1).unwrap());
        if (next - prev).abs() < 1e-7 * next {
            return next;
        }
        prev = next;
    }
}

#[test]
fn criterion_1_prime_landmarks() {
    let start = Instant::now();
    let expected = [(100usize, 541u64), (1000, 7919), (5000, 104729)];
    let got: Vec<(usize, Option<u64>)> = expected.iter().map(|&(n, _)| (n, first_n_primes(n).unwrap().largest())).collect();
    let elapsed = start.elapsed();
    let matches = expected.iter().zip(&got).all(|(&(_, want), &(_, have))| have == Some(want));
    let detail = got.iter().map(|(n, p)| format!("p_{n}={}", p.unwrap())).collect::<Vec<_>>().join(" ");
    report(1, "first 100/1000/5000 primes end in 541/7919/104729", matches && elapsed < Duration::from_secs(1), format!("{detail}, {elapsed:?}"));
}

#[test]
fn criterion_2_unit_circle_arc_length() {
    let start = Instant::now();
    let len = arc_length(&curve(CurveSpec::classic(1.0, 1.0, 0.0)), 0.0, TAU, &QuadratureConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let rel = (len - TAU).abs() / TAU;
    report(2, "unit circle length = 2π within 1e-9 relative", rel <= 1e-9 && elapsed < Duration::from_secs(1), format!("L={len} rel_err={rel:e}, {elapsed:?}"));
}

#[test]
fn criterion_3_quadrature_matches_chord_oracle() {
    let start = Instant::now();
    let specs = [
        CurveSpec::classic(1.0, 2.0, FRAC_PI_2),
        CurveSpec::classic(3.0, 2.0, FRAC_PI_2),
        CurveSpec::classic(3.0, 4.0, FRAC_PI_4),
        CurveSpec::prime_sum(1),
        CurveSpec::prime_sum(3),
        CurveSpec::prime_sum(10),
        CurveSpec::prime_sum(100),
    ];
    let mut worst = 0.0f64;
    let mut details = Vec::new();
    for spec in specs {
        let c = curve(spec);
        let quad = arc_length(&c, 0.0, TAU, &QuadratureConfig::default()).unwrap();
        let oracle = chord_oracle(&c);
        let rel = (quad - oracle).abs() / oracle;
        worst = worst.max(rel);
        details.push(format!("[{spec}] {quad} vs {oracle}"));
    }
    let elapsed = start.elapsed();
    for d in &details {
        println!("    {d}");
    }
    report(3, "adaptive quadrature agrees with chord oracle within 1e-6", worst <= 1e-6 && elapsed < Duration::from_secs(60), format!("worst rel={worst:e}, {elapsed:?}"));
}

#[test]
fn criterion_4_closed_forms() {
    let seg = arc_length(&curve(CurveSpec::classic(1.0, 1.0, FRAC_PI_2)), 0.0, TAU, &QuadratureConfig::default()).unwrap();
    let seg_err = (seg - 4.0 * SQRT_2).abs();
    let half_circle = curve(CurveSpec::prime_sum(1));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let kappa_err = (0..20)
        .map(|_| (curvature(&half_circle, rng.gen_range(0.0..TAU)).unwrap() - 2.0).abs())
        .fold(0.0, f64::max);
    report(
        4,
        "segment length 4√2 and half-radius circle curvature 2 within 1e-8",
        seg_err <= 1e-8 && kappa_err <= 1e-8,
        format!("length err={seg_err:e}, curvature err={kappa_err:e}"),
    );
}

#[test]
fn criterion_5_mirror_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_asym = 0.0f64;
    let mut worst_point = 0.0f64;
    for n in [3usize, 100] {
        let c = curve(CurveSpec::prime_sum(n));
        let count = default_sample_count(&c);
        assert_eq!(count % 2, 1, "grid must be reflection-closed");
        worst_asym = worst_asym.max(mirror_asymmetry(&sample_curve(&c, 0.0, TAU, count).unwrap()).unwrap());
        for _ in 0..1000 {
            let t = rng.gen_range(0.0..TAU);
            let (p, q) = (c.point(t), c.point(TAU - t));
            worst_point = worst_point.max((p.x + q.x).abs()).max((p.y - q.y).abs());
        }
    }
    report(
        5,
        "prime-sum traces are mirror symmetric",
        worst_asym < 1e-10 && worst_point <= 1e-12,
        format!("asymmetry={worst_asym:e}, pointwise={worst_point:e}"),
    );
}

#[test]
fn criterion_6_amplitude_bound() {
    let mut worst_excess = f64::NEG_INFINITY;
    for n in [1usize, 3, 10, 100] {
        let c = curve(CurveSpec::prime_sum(n));
        let bound = first_n_primes(n).unwrap().reciprocal_sum();
        let line = sample_curve(&c, 0.0, TAU, 200_001).unwrap();
        let peak = line.xy().map(|(x, y)| x.abs().max(y.abs())).fold(0.0, f64::max);
        worst_excess = worst_excess.max(peak - bound);
    }
    report(6, "max |x|, |y| ≤ Σ 1/p + 1e-12", worst_excess <= 1e-12, format!("max excess={worst_excess:e}"));
}

#[test]
fn criterion_7_convergence_ordering() {
    const SAMPLES: usize = 65_537;
    let start = Instant::now();
    let trace = |spec: CurveSpec| sample_curve(&curve(spec), 0.0, TAU, SAMPLES).unwrap();
    let p100 = trace(CurveSpec::prime_sum(100));
    let p1000 = trace(CurveSpec::prime_sum(1000));
    let p5000 = trace(CurveSpec::prime_sum(5000));
    let a100 = trace(CurveSpec::alternating(100));
    let a1000 = trace(CurveSpec::alternating(1000));
    let d_100_1000 = trace_distance(&p100, &p1000).unwrap();
    let d_1000_5000 = trace_distance(&p1000, &p5000).unwrap();
    let d_alt = trace_distance(&a100, &a1000).unwrap();
    let elapsed = start.elapsed();
    report(
        7,
        "traces converge with N, faster for the alternating split",
        d_1000_5000 < d_100_1000 && d_alt < d_100_1000 && elapsed < Duration::from_secs(300),
        format!("d(100,1000)={d_100_1000} d(1000,5000)={d_1000_5000} d_alt(100,1000)={d_alt}, {elapsed:?}"),
    );
}

#[test]
fn criterion_8_ulam_invariants() {
    let start = Instant::now();
    let mut ok = true;
    for k in 0..=50i64 {
        let side = (2 * k + 1) as u64;
        ok &= spiral_coord(side * side) == (k, -k);
        let coords: std::collections::HashSet<_> = (1..=side * side).map(spiral_coord).collect();
        ok &= coords.len() as u64 == side * side;
        ok &= coords.iter().all(|&(x, y)| x.abs() <= k && y.abs() <= k);
    }
    let raster = build_raster(21).unwrap();
    let oracle = (1..=441u64).filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).count();
    ok &= raster.prime_count() == oracle && oracle == (1..=441).filter(|&n| is_prime(n)).count();
    let elapsed = start.elapsed();
    report(
        8,
        "spiral bijection, odd-square diagonal and prime count",
        ok && elapsed < Duration::from_secs(1),
        format!("primes≤441: raster={} oracle={oracle}, {elapsed:?}", raster.prime_count()),
    );
}

#[test]
fn criterion_9_determinism() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let manifest_a = reproduce_all(first.path(), false).unwrap();
    let manifest_b = reproduce_all(second.path(), false).unwrap();

    let mut names: Vec<_> = std::fs::read_dir(first.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    let mut identical = names.len() == 9 && manifest_a.len() == 9 && manifest_a == manifest_b;
    for name in &names {
        identical &= std::fs::read(first.path().join(name)).unwrap() == std::fs::read(second.path().join(name)).unwrap();
    }

    let line = sample_curve(&curve(CurveSpec::prime_sum(100)), 0.0, TAU, 8657).unwrap();
    let csv = first.path().join("round_trip.csv");
    emit_csv(&line, &csv).unwrap();
    let back = read_csv(&csv).unwrap();
    let worst = line
        .points
        .iter()
        .zip(&back.points)
        .map(|(a, b)| (a.t - b.t).abs().max((a.x - b.x).abs()).max((a.y - b.y).abs()))
        .fold(0.0, f64::max);
    let round_trip = back.len() == line.len() && worst <= 1e-15;
    report(
        9,
        "reproduce is byte-identical across runs; CSV round-trips within 1e-15",
        identical && round_trip,
        format!("{} files, csv max err={worst:e}", names.len()),
    );
}
