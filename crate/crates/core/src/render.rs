//! SVG and CSV writers for polylines.
//!
//! Numbers are written in Rust's shortest round-trip decimal form, so output
//! is byte-identical for identical input on every platform.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::curves::CurvePoint;
use crate::geometry::bounding_box;
use crate::sampling::Polyline;
use crate::{Error, Result};

const SVG_HEADER: &str = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderStyle {
    pub width_px: u32,
    pub height_px: u32,
    pub stroke_width: f64,
    /// Fraction of the viewport left blank on each side, in `[0, 0.45]`.
    pub margin_fraction: f64,
    /// Drop vertices closer than this many pixels to the simplified line.
    /// Only affects the written file.
    pub decimate_px: Option<f64>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle { width_px: 1000, height_px: 1000, stroke_width: 1.0, margin_fraction: 0.05, decimate_px: None }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        if self.width_px == 0 || self.height_px == 0 {
            return Err(Error::InvalidStyle(format!("viewport {}x{} must be positive", self.width_px, self.height_px)));
        }
        if !(self.stroke_width > 0.0 && self.stroke_width.is_finite()) {
            return Err(Error::InvalidStyle(format!("stroke width must be positive, got {}", self.stroke_width)));
        }
        if !(0.0..=0.45).contains(&self.margin_fraction) {
            return Err(Error::InvalidStyle(format!("margin fraction must lie in [0, 0.45], got {}", self.margin_fraction)));
        }
        if let Some(eps) = self.decimate_px {
            if !(eps >= 0.0 && eps.is_finite()) {
                return Err(Error::InvalidStyle(format!("decimation threshold must be non-negative, got {eps}")));
            }
        }
        Ok(())
    }
}

/// Maps the polyline's bounding box into the viewport inset by the margin,
/// with one scale for both axes and `y` pointing up.
pub fn to_viewport(line: &Polyline, style: &RenderStyle) -> Result<Vec<(f64, f64)>> {
    style.validate()?;
    let bbox = bounding_box(line)?;
    let (w, h) = (style.width_px as f64, style.height_px as f64);
    let (draw_w, draw_h) = (w * (1.0 - 2.0 * style.margin_fraction), h * (1.0 - 2.0 * style.margin_fraction));
    let fit = |avail: f64, extent: f64| if extent > 0.0 { avail / extent } else { f64::INFINITY };
    let scale = match fit(draw_w, bbox.width()).min(fit(draw_h, bbox.height())) {
        s if s.is_finite() => s,
        _ => 0.0,
    };
    let (cx, cy) = (0.5 * (bbox.xmin + bbox.xmax), 0.5 * (bbox.ymin + bbox.ymax));
    Ok(line
        .xy()
        .map(|(x, y)| ((0.5 * w + (x - cx) * scale).clamp(0.0, w), (0.5 * h - (y - cy) * scale).clamp(0.0, h)))
        .collect())
}

/// Ramer–Douglas–Peucker simplification; endpoints are always kept.
pub fn decimate(points: &[(f64, f64)], tolerance: f64) -> Vec<(f64, f64)> {
    if points.len() < 3 {
        return points.to_vec();
    }
    let mut keep = vec![false; points.len()];
    keep[0] = true;
    keep[points.len() - 1] = true;
    let mut stack = vec![(0usize, points.len() - 1)];
    while let Some((first, last)) = stack.pop() {
        if last <= first + 1 {
            continue;
        }
        let (a, b) = (points[first], points[last]);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len = dx.hypot(dy);
        let mut worst = (first, -1.0f64);
        for (i, p) in points.iter().enumerate().take(last).skip(first + 1) {
            let d = if len > 0.0 { (dx * (p.1 - a.1) - dy * (p.0 - a.0)).abs() / len } else { (p.0 - a.0).hypot(p.1 - a.1) };
            if d > worst.1 {
                worst = (i, d);
            }
        }
        if worst.1 > tolerance {
            keep[worst.0] = true;
            stack.push((first, worst.0));
            stack.push((worst.0, last));
        }
    }
    points.iter().zip(keep).filter_map(|(&p, k)| k.then_some(p)).collect()
}

/// A standalone SVG 1.1 document holding a single `<polyline>`.
pub fn render_svg(line: &Polyline, style: &RenderStyle) -> Result<String> {
    let mut mapped = to_viewport(line, style)?;
    if let Some(eps) = style.decimate_px {
        mapped = decimate(&mapped, eps);
    }
    let mut out = String::with_capacity(256 + mapped.len() * 24);
    out.push_str(SVG_HEADER);
    let (w, h) = (style.width_px, style.height_px);
    writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">").unwrap();
    write!(
        out,
        "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linejoin=\"round\" points=\"",
        style.stroke_width
    )
    .unwrap();
    for (i, (x, y)) in mapped.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{x},{y}").unwrap();
    }
    out.push_str("\"/>\n</svg>\n");
    Ok(out)
}

pub fn emit_svg(line: &Polyline, style: &RenderStyle, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let svg = render_svg(line, style)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

/// Writes `t,x,y` followed by one row per point, LF-terminated.
pub fn emit_csv(line: &Polyline, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    let write = |out: &mut BufWriter<File>| -> std::io::Result<()> {
        out.write_all(b"t,x,y\n")?;
        for p in &line.points {
            writeln!(out, "{},{},{}", p.t, p.x, p.y)?;
        }
        out.flush()
    };
    write(&mut out).map_err(|e| Error::io(path, e))
}

/// Reads a file written by [`emit_csv`]. The result is always open.
pub fn read_csv(path: impl AsRef<Path>) -> Result<Polyline> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path).map_err(|e| Error::io(path, e))?);
    let parse_err = |line: usize, message: String| Error::Parse { path: path.to_path_buf(), line, message };
    let mut points = Vec::new();
    for (idx, row) in reader.lines().enumerate() {
        let row = row.map_err(|e| Error::io(path, e))?;
        if idx == 0 {
            if row != "t,x,y" {
                return Err(parse_err(1, format!("expected header `t,x,y`, found `{row}`")));
            }
            continue;
        }
        let fields: Vec<f64> = row
            .split(',')
            .map(|f| f.parse::<f64>().map_err(|e| parse_err(idx + 1, format!("`{f}`: {e}"))))
            .collect::<Result<_>>()?;
        match fields[..] {
            [t, x, y] => points.push(CurvePoint { t, x, y }),
            _ => return Err(parse_err(idx + 1, format!("expected 3 fields, found {}", fields.len()))),
        }
    }
    Ok(Polyline::new(points, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Curve, CurveSpec};
    use crate::sampling::sample_curve;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn circle5() -> Polyline {
        sample_curve(&Curve::new(&CurveSpec::classic(1.0, 1.0, 0.0)).unwrap(), 0.0, TAU, 5).unwrap()
    }

    #[test]
    fn circle_maps_to_top_center() {
        let style = RenderStyle { width_px: 100, height_px: 100, ..Default::default() };
        let mapped = to_viewport(&circle5(), &style).unwrap();
        let (x, y) = mapped[0];
        assert!((x - 50.0).abs() < 1e-12 && (y - 5.0).abs() < 1e-12, "{x},{y}");
        let (x, y) = mapped[1];
        assert!((x - 95.0).abs() < 1e-12 && (y - 50.0).abs() < 1e-12, "{x},{y}");
    }

    #[test]
    fn svg_document_shape() {
        let style = RenderStyle { width_px: 100, height_px: 100, ..Default::default() };
        let svg = render_svg(&circle5(), &style).unwrap();
        assert!(svg.starts_with(SVG_HEADER));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("viewBox=\"0 0 100 100\""));
        assert!(svg.contains("points=\"50,5 95,50 "), "{svg}");
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_polyline_is_rejected() {
        assert!(matches!(render_svg(&Polyline::default(), &RenderStyle::default()), Err(Error::EmptyPolyline)));
    }

    #[test]
    fn bad_styles_are_rejected() {
        for style in [
            RenderStyle { width_px: 0, ..Default::default() },
            RenderStyle { margin_fraction: 0.5, ..Default::default() },
            RenderStyle { stroke_width: -1.0, ..Default::default() },
            RenderStyle { decimate_px: Some(f64::NAN), ..Default::default() },
        ] {
            assert!(render_svg(&circle5(), &style).is_err());
        }
    }

    #[test]
    fn degenerate_boxes_render_centered() {
        let style = RenderStyle { width_px: 10, height_px: 20, ..Default::default() };
        let single = Polyline::from_xy([(3.0, 4.0)]);
        assert_eq!(to_viewport(&single, &style).unwrap(), vec![(5.0, 10.0)]);
        let vertical = Polyline::from_xy([(1.0, 0.0), (1.0, 2.0)]);
        assert_eq!(to_viewport(&vertical, &style).unwrap(), vec![(5.0, 19.0), (5.0, 1.0)]);
    }

    #[test]
    fn svg_is_deterministic_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
        let line = sample_curve(&Curve::new(&CurveSpec::prime_sum(50)).unwrap(), 0.0, TAU, 4097).unwrap();
        emit_svg(&line, &RenderStyle::default(), &a).unwrap();
        emit_svg(&line, &RenderStyle::default(), &b).unwrap();
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    }

    #[test]
    fn io_errors_carry_the_path() {
        let err = emit_svg(&circle5(), &RenderStyle::default(), "/nonexistent-dir/x.svg").unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.svg"), "{err}");
    }

    #[test]
    fn decimation_keeps_shape() {
        let pts: Vec<_> = (0..=100).map(|i| (i as f64, 0.0)).collect();
        assert_eq!(decimate(&pts, 0.01), vec![(0.0, 0.0), (100.0, 0.0)]);
        let tri = vec![(0.0, 0.0), (1.0, 0.0), (2.0, 5.0), (3.0, 0.0), (4.0, 0.0)];
        assert_eq!(decimate(&tri, 0.1), vec![(0.0, 0.0), (1.0, 0.0), (2.0, 5.0), (3.0, 0.0), (4.0, 0.0)]);
        let decimated = render_svg(&circle5(), &RenderStyle { decimate_px: Some(1e9), ..Default::default() }).unwrap();
        assert_eq!(decimated.matches(',').count(), 2);
    }

    #[test]
    fn csv_layout() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("two.csv");
        let line = Polyline::new(vec![CurvePoint { t: 0.0, x: 0.5, y: -1.0 }, CurvePoint { t: 1.0, x: 0.1, y: 2.0 }], false);
        emit_csv(&line, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "t,x,y\n0,0.5,-1\n1,0.1,2\n");

        emit_csv(&Polyline::default(), &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "t,x,y\n");
        assert!(read_csv(&path).unwrap().is_empty());
    }

    #[test]
    fn csv_parse_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "t,x,y\n1,2\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::Parse { line: 2, .. })));
        std::fs::write(&path, "a,b,c\n").unwrap();
        assert!(matches!(read_csv(&path), Err(Error::Parse { line: 1, .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn csv_round_trip(points in prop::collection::vec((-1e6f64..1e6, -1e3f64..1e3, -1e3f64..1e3), 0..50)) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("rt.csv");
            let line = Polyline::new(points.iter().map(|&(t, x, y)| CurvePoint { t, x, y }).collect(), false);
            emit_csv(&line, &path).unwrap();
            prop_assert_eq!(read_csv(&path).unwrap(), line);
        }

        #[test]
        fn viewport_containment(points in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..40), w in 1u32..2000, h in 1u32..2000, m in 0.0f64..0.45) {
            let style = RenderStyle { width_px: w, height_px: h, margin_fraction: m, ..Default::default() };
            for (x, y) in to_viewport(&Polyline::from_xy(points), &style).unwrap() {
                prop_assert!((0.0..=w as f64).contains(&x) && (0.0..=h as f64).contains(&y));
            }
        }
    }
}
