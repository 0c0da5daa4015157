//! Browser bindings for the `www/` demo page.
//!
//! Three interactive operations: a classic Lissajous curve, a prime-sum curve
//! (plain or alternating, with an optional frequency warp), and an Ulam
//! spiral mask. Curves come back as finished SVG documents plus a one-line
//! `key=value` summary; the spiral comes back as one byte per cell.

use std::f64::consts::TAU;

use prime_lissajous::curves::{Curve, CurveSpec, FrequencyWarp};
use prime_lissajous::geometry::{arc_length, bounding_box, mirror_asymmetry, QuadratureConfig};
use prime_lissajous::render::{render_svg, RenderStyle};
use prime_lissajous::sampling::{default_sample_count, sample_curve};
use prime_lissajous::ulam::build_raster;
use wasm_bindgen::prelude::*;

/// Prime-sum curves above this many terms skip the arc length in the browser.
const LENGTH_TERM_LIMIT: usize = 200;

/// Sample cap for the browser; the default grid for large `n` is much denser.
const MAX_BROWSER_SAMPLES: usize = 200_001;

/// Rendered SVG and a `key=value` summary of the curve.
#[wasm_bindgen(getter_with_clone)]
pub struct CurveView {
    pub svg: String,
    pub summary: String,
}

fn style(size_px: u32) -> RenderStyle {
    RenderStyle { width_px: size_px, height_px: size_px, stroke_width: 1.0, margin_fraction: 0.05, decimate_px: Some(0.1) }
}

pub fn warp_from(name: &str, exponent: f64) -> Result<FrequencyWarp, String> {
    match name {
        "identity" => Ok(FrequencyWarp::Identity),
        "log" => Ok(FrequencyWarp::Logarithmic),
        "sqrt" => Ok(FrequencyWarp::SquareRoot),
        "power" => Ok(FrequencyWarp::PowerLaw { exponent }),
        other => Err(format!("unknown warp `{other}`")),
    }
}

pub fn view_curve(spec: &CurveSpec, size_px: u32, with_length: bool) -> Result<(String, String), String> {
    let curve = Curve::new(spec).map_err(|e| e.to_string())?;
    let count = default_sample_count(&curve).min(MAX_BROWSER_SAMPLES);
    let line = sample_curve(&curve, 0.0, TAU, count).map_err(|e| e.to_string())?;
    let svg = render_svg(&line, &style(size_px)).map_err(|e| e.to_string())?;
    let bbox = bounding_box(&line).map_err(|e| e.to_string())?;
    let mut summary = format!(
        "samples={count} xmin={:.6} xmax={:.6} ymin={:.6} ymax={:.6} asymmetry={:.3e}",
        bbox.xmin,
        bbox.xmax,
        bbox.ymin,
        bbox.ymax,
        mirror_asymmetry(&line).map_err(|e| e.to_string())?
    );
    if with_length {
        let cfg = QuadratureConfig { rel_tol: 1e-7, ..QuadratureConfig::default() };
        let length = arc_length(&curve, 0.0, TAU, &cfg).map_err(|e| e.to_string())?;
        summary = format!("length={length:.9} {summary}");
    }
    Ok((svg, summary))
}

#[wasm_bindgen]
pub fn classic_curve(a: f64, b: f64, delta: f64, size_px: u32) -> Result<CurveView, JsError> {
    let (svg, summary) = view_curve(&CurveSpec::classic(a, b, delta), size_px, true).map_err(|e| JsError::new(&e))?;
    Ok(CurveView { svg, summary })
}

#[wasm_bindgen]
pub fn prime_curve(n: usize, alternating: bool, warp: &str, exponent: f64, size_px: u32) -> Result<CurveView, JsError> {
    let warp = warp_from(warp, exponent).map_err(|e| JsError::new(&e))?;
    let spec = if alternating { CurveSpec::AlternatingPrimeSum { n, warp } } else { CurveSpec::PrimeSum { n, warp } };
    let (svg, summary) = view_curve(&spec, size_px, n <= LENGTH_TERM_LIMIT).map_err(|e| JsError::new(&e))?;
    Ok(CurveView { svg, summary })
}

/// Row-major `side × side` mask, top row first: 1 for primes, 0 otherwise.
pub fn spiral_mask(side: usize) -> Result<Vec<u8>, String> {
    let raster = build_raster(side).map_err(|e| e.to_string())?;
    Ok(raster.cells().iter().map(|c| u8::from(c.prime)).collect())
}

#[wasm_bindgen]
pub fn ulam_mask(side: usize) -> Result<Vec<u8>, JsError> {
    spiral_mask(side).map_err(|e| JsError::new(&e))
}
