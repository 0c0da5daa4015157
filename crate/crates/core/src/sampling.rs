//! Uniform sampling of curves into polylines.

use std::f64::consts::TAU;

use crate::curves::{Curve, CurvePoint};
use crate::{Error, Result};

/// Ordered samples of a curve.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polyline {
    pub points: Vec<CurvePoint>,
    /// The samples cover exactly one period, so the last point repeats the first.
    pub closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<CurvePoint>, closed: bool) -> Self {
        Polyline { points, closed }
    }

    /// Builds an open polyline from bare coordinates, numbering `t` by index.
    pub fn from_xy(xy: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let points = xy.into_iter().enumerate().map(|(i, (x, y))| CurvePoint { t: i as f64, x, y }).collect();
        Polyline { points, closed: false }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn xy(&self) -> impl ExactSizeIterator<Item = (f64, f64)> + '_ {
        self.points.iter().map(|p| (p.x, p.y))
    }
}

/// Samples per full period: `max(4096, 16·f_max)`, made odd so the uniform
/// grid on `[0, 2π]` maps onto itself under `t ↦ 2π − t`.
pub fn default_sample_count(curve: &Curve) -> usize {
    let base = (16.0 * curve.max_frequency()).ceil().max(4096.0) as usize;
    let even = base + base % 2;
    even + 1
}

/// Samples `count` points at `tᵢ = t0 + i·(t1 − t0)/(count − 1)`.
///
/// The first and last parameters are exactly `t0` and `t1`. When the interval
/// is `[0, 2π]` and every frequency is an integer with zero phase, the sums
/// are evaluated through exact index arithmetic into sine/cosine tables, which
/// is much faster for thousands of terms and makes the grid's reflection
/// symmetry exact.
pub fn sample_curve(curve: &Curve, t0: f64, t1: f64, count: usize) -> Result<Polyline> {
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(Error::InvalidInterval { t0, t1 });
    }
    if count < 2 {
        return Err(Error::InvalidSampleCount(count));
    }
    let params = uniform_grid(t0, t1, count);
    let span = t1 - t0;

    let points = evaluate_grid(curve, &params, Order::Position)
        .into_iter()
        .zip(&params)
        .map(|((x, y), &t)| CurvePoint { t, x, y })
        .collect();

    let closed = curve.period().is_some_and(|p| (span - p).abs() <= 1e-12 * p);
    Ok(Polyline { points, closed })
}

pub(crate) fn uniform_grid(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    let segments = (count - 1) as f64;
    let span = t1 - t0;
    (0..count)
        .map(|i| match i {
            0 => t0,
            i if i == count - 1 => t1,
            i => t0 + (i as f64 * span) / segments,
        })
        .collect()
}

fn table_eligible(curve: &Curve) -> bool {
    curve.has_integer_frequencies()
        && curve.x_terms().iter().chain(curve.y_terms()).all(|t| t.phase == 0.0 && t.freq.abs() < 1e15)
}

/// Which derivative of the curve to evaluate on a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Order {
    Position,
    Velocity,
    Acceleration,
}

/// Evaluates `(x, y)`, `(ẋ, ẏ)` or `(ẍ, ÿ)` at every parameter of a uniform
/// grid, using the tabulated path when the grid is `[0, 2π]` and the curve
/// qualifies.
pub(crate) fn evaluate_grid(curve: &Curve, params: &[f64], order: Order) -> Vec<(f64, f64)> {
    let full_period = params.len() >= 2 && params[0] == 0.0 && params[params.len() - 1] == TAU;
    if full_period && table_eligible(curve) {
        return evaluate_tabulated(curve, params.len() - 1, order);
    }
    params
        .iter()
        .map(|&t| match order {
            Order::Position => {
                let p = curve.point(t);
                (p.x, p.y)
            }
            Order::Velocity => {
                let v = curve.velocity(t);
                (v.dx, v.dy)
            }
            Order::Acceleration => {
                let a = curve.acceleration(t);
                (a.ddx, a.ddy)
            }
        })
        .collect()
}

/// `sin(2πj/m)` and `cos(2πj/m)` for `j in 0..m`, with the reflection
/// `j ↦ m − j` enforced bit-exactly.
fn trig_tables(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut sin = vec![0.0; m];
    let mut cos = vec![0.0; m];
    for j in 0..=m / 2 {
        let (s, c) = if 2 * j == m { (0.0, -1.0) } else { (TAU * j as f64 / m as f64).sin_cos() };
        sin[j] = s;
        cos[j] = c;
        if j != 0 {
            sin[m - j] = -s;
            cos[m - j] = c;
        }
    }
    (sin, cos)
}

/// Grid of `m + 1` points `tₖ = 2πk/m`. The angle `f·tₖ` reduces exactly to
/// table index `f·k mod m`.
fn evaluate_tabulated(curve: &Curve, m: usize, order: Order) -> Vec<(f64, f64)> {
    let (sin_tab, cos_tab) = trig_tables(m);
    let mut xs = vec![0.0; m + 1];
    let mut ys = vec![0.0; m + 1];

    // Terms are the outer loop; each sample still accumulates them in order.
    let accumulate = |out: &mut [f64], table: &[f64], freq: f64, coef: f64| {
        let step = (freq as i64).rem_euclid(m as i64) as usize;
        let mut idx = 0usize;
        for slot in out.iter_mut() {
            *slot += table[idx] * coef;
            idx += step;
            if idx >= m {
                idx -= m;
            }
        }
    };
    let accumulate_div = |out: &mut [f64], table: &[f64], freq: f64, divisor: f64| {
        let step = (freq as i64).rem_euclid(m as i64) as usize;
        let mut idx = 0usize;
        for slot in out.iter_mut() {
            *slot += table[idx] / divisor;
            idx += step;
            if idx >= m {
                idx -= m;
            }
        }
    };
    match order {
        Order::Position => {
            for term in curve.x_terms() {
                accumulate_div(&mut xs, &sin_tab, term.freq, term.divisor);
            }
            for term in curve.y_terms() {
                accumulate_div(&mut ys, &cos_tab, term.freq, term.divisor);
            }
        }
        Order::Velocity => {
            for term in curve.x_terms() {
                accumulate(&mut xs, &cos_tab, term.freq, term.vel);
            }
            for term in curve.y_terms() {
                accumulate(&mut ys, &sin_tab, term.freq, -term.vel);
            }
        }
        Order::Acceleration => {
            for term in curve.x_terms() {
                accumulate(&mut xs, &sin_tab, term.freq, -term.acc);
            }
            for term in curve.y_terms() {
                accumulate(&mut ys, &cos_tab, term.freq, -term.acc);
            }
        }
    }
    xs.into_iter().zip(ys).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{CurveSpec, FrequencyWarp};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn curve(spec: CurveSpec) -> Curve {
        Curve::new(&spec).unwrap()
    }

    #[test]
    fn unit_circle_cardinal_points() {
        let line = sample_curve(&curve(CurveSpec::classic(1.0, 1.0, 0.0)), 0.0, TAU, 5).unwrap();
        let expected = [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 1.0)];
        let ts = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2, TAU];
        for ((p, (x, y)), t) in line.points.iter().zip(expected).zip(ts) {
            assert!((p.x - x).abs() < 1e-15 && (p.y - y).abs() < 1e-15, "{p:?}");
            assert!((p.t - t).abs() < 1e-15);
        }
        assert!(line.closed);
    }

    #[test]
    fn two_samples_are_the_endpoints() {
        let c = curve(CurveSpec::PrimeSum { n: 4, warp: FrequencyWarp::SquareRoot });
        let line = sample_curve(&c, 0.25, 3.5, 2).unwrap();
        assert_eq!(line.len(), 2);
        assert_eq!(line.points[0], c.point(0.25));
        assert_eq!(line.points[1], c.point(3.5));
        assert!(!line.closed);
    }

    #[test]
    fn endpoints_are_exact() {
        let c = curve(CurveSpec::prime_sum(7));
        for (t0, t1, n) in [(0.1, 0.7, 1001), (-3.0, 11.0, 77), (0.0, TAU, 4097)] {
            let line = sample_curve(&c, t0, t1, n).unwrap();
            assert_eq!(line.points[0].t, t0);
            assert_eq!(line.points[n - 1].t, t1);
            assert!(line.points.windows(2).all(|w| w[0].t < w[1].t));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let c = curve(CurveSpec::prime_sum(2));
        assert!(matches!(sample_curve(&c, 1.0, 1.0, 10), Err(Error::InvalidInterval { .. })));
        assert!(matches!(sample_curve(&c, 2.0, 1.0, 10), Err(Error::InvalidInterval { .. })));
        assert!(matches!(sample_curve(&c, 0.0, f64::NAN, 10), Err(Error::InvalidInterval { .. })));
        assert!(matches!(sample_curve(&c, 0.0, 1.0, 1), Err(Error::InvalidSampleCount(1))));
    }

    #[test]
    fn closed_flag_tracks_full_period() {
        let c = curve(CurveSpec::prime_sum(10));
        let full = sample_curve(&c, 1.0, 1.0 + TAU, 501).unwrap();
        assert!(full.closed);
        let first = full.points[0];
        let last = full.points[500];
        assert!((first.x - last.x).abs() < 1e-9 && (first.y - last.y).abs() < 1e-9);
        assert!(!sample_curve(&c, 0.0, PI, 501).unwrap().closed);
        let warped = curve(CurveSpec::PrimeSum { n: 10, warp: FrequencyWarp::SquareRoot });
        assert!(!sample_curve(&warped, 0.0, TAU, 501).unwrap().closed);
    }

    #[test]
    fn tabulated_path_matches_direct_evaluation() {
        for spec in [CurveSpec::prime_sum(300), CurveSpec::alternating(150), CurveSpec::classic(-3.0, 4.0, 0.0)] {
            let c = curve(spec);
            let line = sample_curve(&c, 0.0, TAU, 6001).unwrap();
            for p in &line.points {
                let q = c.point(p.t);
                assert!((p.x - q.x).abs() < 1e-12 && (p.y - q.y).abs() < 1e-12, "{spec}: {p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn tabulated_derivatives_match_direct_evaluation() {
        let c = curve(CurveSpec::alternating(200));
        let params = uniform_grid(0.0, TAU, 8001);
        let vel = evaluate_grid(&c, &params, Order::Velocity);
        let acc = evaluate_grid(&c, &params, Order::Acceleration);
        for ((&t, v), a) in params.iter().zip(vel).zip(acc) {
            let dv = c.velocity(t);
            let da = c.acceleration(t);
            assert!((v.0 - dv.dx).abs() < 1e-9 && (v.1 - dv.dy).abs() < 1e-9, "t = {t}");
            assert!((a.0 - da.ddx).abs() < 1e-5 && (a.1 - da.ddy).abs() < 1e-5, "t = {t}");
        }
    }

    #[test]
    fn tabulated_grid_is_mirror_exact() {
        let c = curve(CurveSpec::prime_sum(100));
        let line = sample_curve(&c, 0.0, TAU, default_sample_count(&c)).unwrap();
        let n = line.len();
        for i in 0..n {
            let (p, q) = (line.points[i], line.points[n - 1 - i]);
            assert_eq!(p.x, -q.x);
            assert_eq!(p.y, q.y);
        }
    }

    #[test]
    fn default_counts() {
        assert_eq!(default_sample_count(&curve(CurveSpec::classic(3.0, 4.0, PI / 4.0))), 4097);
        assert_eq!(default_sample_count(&curve(CurveSpec::prime_sum(1))), 4097);
        assert_eq!(default_sample_count(&curve(CurveSpec::prime_sum(1000))), 16 * 7919 + 1);
        let big = default_sample_count(&curve(CurveSpec::prime_sum(5000)));
        assert_eq!(big, 16 * 48611 + 1);
        assert!(default_sample_count(&curve(CurveSpec::prime_sum(10_000))) >= 16 * 104729);
        let warped = curve(CurveSpec::PrimeSum { n: 5000, warp: FrequencyWarp::PowerLaw { exponent: 1.1 } });
        assert_eq!(default_sample_count(&warped) % 2, 1);
    }
}
