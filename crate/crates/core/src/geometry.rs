//! Arc length, curvature and point-set metrics for sampled curves.

use std::f64::consts::TAU;

use crate::curves::Curve;
use crate::sampling::{default_sample_count, evaluate_grid, sample_curve, Order, Polyline};
use crate::{Error, Result};

/// Curvature is undefined where the speed drops below this.
pub const DEFAULT_SPEED_FLOOR: f64 = 1e-9;

/// Above this many points, nearest-neighbour queries go through a uniform grid.
const BRUTE_FORCE_LIMIT: usize = 10_000;

/// Tolerances for [`arc_length`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Total interval bisections allowed across all panels.
    pub max_subdivisions: u64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { rel_tol: 1e-9, abs_tol: 1e-12, max_subdivisions: 1 << 24 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidQuadrature(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidQuadrature(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidQuadrature("max_subdivisions must be positive".into()));
        }
        Ok(())
    }
}

/// Bisection depth cap per panel; deeper than this the interval is at the
/// resolution of `f64` anyway.
const MAX_DEPTH: u32 = 60;

struct Simpson<'a, F> {
    f: &'a F,
    subdivisions: u64,
    budget: u64,
    exhausted: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        if !(a < lm && lm < m && m < rm && rm < b) {
            return whole;
        }
        let (flm, frm) = ((self.f)(lm), (self.f)(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let refined = left + right;
        let diff = refined - whole;
        let roundoff = 64.0 * f64::EPSILON * refined.abs();
        if diff.abs() <= (15.0 * tol).max(roundoff) {
            return refined + diff / 15.0;
        }
        if depth >= MAX_DEPTH || self.subdivisions >= self.budget {
            self.exhausted = true;
            return refined + diff / 15.0;
        }
        self.subdivisions += 1;
        self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) + self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
    }
}

/// `∫ √(ẋ² + ẏ²) dt` over `[t0, t1]` by adaptive Simpson quadrature.
///
/// The interval is first cut into at least `8·f_max` panels per `2π` so that
/// the fastest harmonic is resolved before adaptation starts. Panel results
/// are added left to right with compensated summation.
pub fn arc_length(curve: &Curve, t0: f64, t1: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
        return Err(Error::InvalidInterval { t0, t1 });
    }
    let speed = |t: f64| curve.speed_fast(t);
    let span = t1 - t0;
    let panels = ((8.0 * curve.max_frequency() * span / TAU).ceil() as usize).max(8);
    let edges: Vec<f64> = (0..=panels)
        .map(|i| match i {
            0 => t0,
            i if i == panels => t1,
            i => t0 + (i as f64 * span) / panels as f64,
        })
        .collect();

    let edge_values: Vec<f64> = edges.iter().map(|&t| speed(t)).collect();
    let coarse: Vec<(f64, f64)> = edges
        .windows(2)
        .zip(edge_values.windows(2))
        .map(|(e, v)| {
            let fm = speed(0.5 * (e[0] + e[1]));
            (fm, (e[1] - e[0]) / 6.0 * (v[0] + 4.0 * fm + v[1]))
        })
        .collect();
    let estimate = neumaier_sum(coarse.iter().map(|c| c.1));
    let tol = cfg.abs_tol.max(cfg.rel_tol * estimate.abs());

    let mut simpson = Simpson { f: &speed, subdivisions: 0, budget: cfg.max_subdivisions, exhausted: false };
    let mut pieces = Vec::with_capacity(panels);
    for (i, &(fm, whole)) in coarse.iter().enumerate() {
        let (a, b) = (edges[i], edges[i + 1]);
        let panel_tol = tol * (b - a) / span;
        pieces.push(simpson.refine(a, b, edge_values[i], fm, edge_values[i + 1], whole, panel_tol, 0));
    }
    let length = neumaier_sum(pieces);
    if simpson.exhausted {
        return Err(Error::NonConvergence { estimate: length, subdivisions: simpson.subdivisions });
    }
    Ok(length)
}

fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Signed curvature `(ẋÿ − ẏẍ) / (ẋ² + ẏ²)^{3/2}`; negative for clockwise
/// motion.
pub fn signed_curvature(curve: &Curve, t: f64, speed_floor: f64) -> Result<f64> {
    let v = curve.velocity(t);
    let a = curve.acceleration(t);
    curvature_from(v.dx, v.dy, a.ddx, a.ddy, speed_floor).ok_or(Error::SingularPoint { t, speed: v.speed(), floor: speed_floor })
}

/// Unsigned curvature `|ẋÿ − ẏẍ| / (ẋ² + ẏ²)^{3/2}` with the default speed floor.
pub fn curvature(curve: &Curve, t: f64) -> Result<f64> {
    signed_curvature(curve, t, DEFAULT_SPEED_FLOOR).map(f64::abs)
}

fn curvature_from(dx: f64, dy: f64, ddx: f64, ddy: f64, speed_floor: f64) -> Option<f64> {
    let speed = dx.hypot(dy);
    (speed >= speed_floor).then(|| (dx * ddy - dy * ddx) / (speed * speed * speed))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }
}

pub fn bounding_box(samples: &Polyline) -> Result<BoundingBox> {
    bbox_of(samples.xy()).ok_or(Error::EmptyPolyline)
}

fn bbox_of(points: impl IntoIterator<Item = (f64, f64)>) -> Option<BoundingBox> {
    points.into_iter().fold(None, |acc, (x, y)| {
        Some(match acc {
            None => BoundingBox { xmin: x, xmax: x, ymin: y, ymax: y },
            Some(b) => BoundingBox { xmin: b.xmin.min(x), xmax: b.xmax.max(x), ymin: b.ymin.min(y), ymax: b.ymax.max(y) },
        })
    })
}

/// Uniform bucket grid over a point set for nearest-neighbour queries.
struct BucketGrid<'a> {
    points: &'a [(f64, f64)],
    origin: (f64, f64),
    cell: f64,
    nx: usize,
    ny: usize,
    /// CSR layout: indices of the points in cell `c` are
    /// `order[offsets[c]..offsets[c + 1]]`.
    offsets: Vec<usize>,
    order: Vec<usize>,
}

impl<'a> BucketGrid<'a> {
    fn new(points: &'a [(f64, f64)]) -> Self {
        let bbox = bbox_of(points.iter().copied()).expect("non-empty point set");
        let (w, h) = (bbox.width(), bbox.height());
        let extent = w.max(h);
        // About two points per cell on a curve-like set, capped in each axis.
        let mut cell = if extent > 0.0 { ((w.max(extent * 1e-6) * h.max(extent * 1e-6)) / points.len() as f64).sqrt() * 1.5 } else { 1.0 };
        cell = cell.max(extent / 4096.0).max(f64::MIN_POSITIVE);
        let nx = ((w / cell) as usize + 1).min(4096);
        let ny = ((h / cell) as usize + 1).min(4096);
        let mut grid = BucketGrid { points, origin: (bbox.xmin, bbox.ymin), cell, nx, ny, offsets: vec![0; nx * ny + 1], order: vec![0; points.len()] };
        let cells: Vec<usize> = points.iter().map(|&p| grid.cell_index(grid.cell_of(p))).collect();
        for &c in &cells {
            grid.offsets[c + 1] += 1;
        }
        for c in 0..nx * ny {
            grid.offsets[c + 1] += grid.offsets[c];
        }
        let mut fill = grid.offsets.clone();
        for (i, &c) in cells.iter().enumerate() {
            grid.order[fill[c]] = i;
            fill[c] += 1;
        }
        grid
    }

    fn cell_of(&self, (x, y): (f64, f64)) -> (usize, usize) {
        let clamp = |v: f64, n: usize| (v.max(0.0) as usize).min(n - 1);
        (clamp((x - self.origin.0) / self.cell, self.nx), clamp((y - self.origin.1) / self.cell, self.ny))
    }

    fn cell_index(&self, (cx, cy): (usize, usize)) -> usize {
        cy * self.nx + cx
    }

    /// Squared distance to the nearest point, or any value `≤ cutoff_sq` as
    /// soon as one is found.
    fn nearest_sq(&self, q: (f64, f64), cutoff_sq: f64) -> f64 {
        let (cx, cy) = self.cell_of(q);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny);
        for ring in 0..=max_ring {
            let (x0, x1) = (cx as isize - ring as isize, cx + ring);
            let (y0, y1) = (cy as isize - ring as isize, cy + ring);
            for gy in y0..=y1 as isize {
                if gy < 0 || gy as usize >= self.ny {
                    continue;
                }
                let on_edge_row = gy == y0 || gy == y1 as isize;
                let mut gx = x0;
                while gx <= x1 as isize {
                    if gx >= 0 && (gx as usize) < self.nx {
                        let c = self.cell_index((gx as usize, gy as usize));
                        for &i in &self.order[self.offsets[c]..self.offsets[c + 1]] {
                            let p = self.points[i];
                            let d = (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2);
                            if d < best {
                                best = d;
                            }
                        }
                    }
                    // Interior rows only contribute their two end cells.
                    gx += if on_edge_row || ring == 0 { 1 } else { 2 * ring as isize };
                }
            }
            if best <= cutoff_sq {
                return best;
            }
            // Every cell beyond this ring is at least `ring · cell` away.
            let reach = ring as f64 * self.cell;
            if best <= reach * reach {
                return best;
            }
        }
        best
    }
}

/// `max_{p ∈ from} min_{q ∈ to} ‖p − q‖`.
pub fn directed_hausdorff(from: &[(f64, f64)], to: &[(f64, f64)]) -> Result<f64> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptyPolyline);
    }
    let mut worst_sq = 0.0f64;
    if from.len().max(to.len()) <= BRUTE_FORCE_LIMIT {
        for &p in from {
            let mut best = f64::INFINITY;
            for &q in to {
                let d = (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2);
                if d < best {
                    best = d;
                    // Cannot raise the maximum any more.
                    if best <= worst_sq {
                        break;
                    }
                }
            }
            worst_sq = worst_sq.max(best);
        }
    } else {
        let grid = BucketGrid::new(to);
        for &p in from {
            worst_sq = worst_sq.max(grid.nearest_sq(p, worst_sq));
        }
    }
    Ok(worst_sq.sqrt())
}

/// Symmetric Hausdorff distance between the two sample sets.
pub fn trace_distance(a: &Polyline, b: &Polyline) -> Result<f64> {
    let (pa, pb): (Vec<_>, Vec<_>) = (a.xy().collect(), b.xy().collect());
    Ok(directed_hausdorff(&pa, &pb)?.max(directed_hausdorff(&pb, &pa)?))
}

/// One-sided Hausdorff distance from the trace mirrored by `x ↦ −x` back to
/// the trace; zero for a left-right symmetric sample set.
pub fn mirror_asymmetry(samples: &Polyline) -> Result<f64> {
    let points: Vec<_> = samples.xy().collect();
    let mirrored: Vec<_> = points.iter().map(|&(x, y)| (-x, y)).collect();
    directed_hausdorff(&mirrored, &points)
}

/// Largest `|κ|` over a sample grid, or unbounded when the curve stalls at a
/// sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurvatureBound {
    Finite(f64),
    Unbounded,
}

impl std::fmt::Display for CurvatureBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvatureBound::Finite(k) => write!(f, "{k}"),
            CurvatureBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Everything in [`GeometrySummary`] that comes from the samples alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSummary {
    pub bbox: BoundingBox,
    pub max_abs_curvature: CurvatureBound,
    pub asymmetry: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySummary {
    pub length: f64,
    pub bbox: BoundingBox,
    pub max_abs_curvature: CurvatureBound,
    pub asymmetry: f64,
}

/// Box, peak curvature and mirror asymmetry of `samples`, which must be a
/// uniform grid of `curve` such as [`sample_curve`] produces.
pub fn summarize_shape(curve: &Curve, samples: &Polyline) -> Result<ShapeSummary> {
    let bbox = bounding_box(samples)?;
    let params: Vec<f64> = samples.points.iter().map(|p| p.t).collect();
    let vel = evaluate_grid(curve, &params, Order::Velocity);
    let acc = evaluate_grid(curve, &params, Order::Acceleration);
    let mut peak = Some(0.0f64);
    for ((dx, dy), (ddx, ddy)) in vel.into_iter().zip(acc) {
        match curvature_from(dx, dy, ddx, ddy, DEFAULT_SPEED_FLOOR) {
            Some(k) => peak = peak.map(|p| p.max(k.abs())),
            None => {
                peak = None;
                break;
            }
        }
    }
    Ok(ShapeSummary {
        bbox,
        max_abs_curvature: peak.map_or(CurvatureBound::Unbounded, CurvatureBound::Finite),
        asymmetry: mirror_asymmetry(samples)?,
    })
}

/// Full summary over `samples`, with the arc length integrated over the
/// samples' parameter range.
pub fn summarize(curve: &Curve, samples: &Polyline, cfg: &QuadratureConfig) -> Result<GeometrySummary> {
    let shape = summarize_shape(curve, samples)?;
    let (t0, t1) = match (samples.points.first(), samples.points.last()) {
        (Some(a), Some(b)) => (a.t, b.t),
        _ => return Err(Error::EmptyPolyline),
    };
    Ok(GeometrySummary {
        length: arc_length(curve, t0, t1, cfg)?,
        bbox: shape.bbox,
        max_abs_curvature: shape.max_abs_curvature,
        asymmetry: shape.asymmetry,
    })
}

/// [`summarize`] over `[0, 2π]` at the default sample count.
pub fn summarize_period(curve: &Curve, cfg: &QuadratureConfig) -> Result<GeometrySummary> {
    let samples = sample_curve(curve, 0.0, TAU, default_sample_count(curve))?;
    summarize(curve, &samples, cfg)
}
