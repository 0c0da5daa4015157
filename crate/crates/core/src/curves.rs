//! Parametric curve families and their analytic derivatives.
//!
//! Every family is stored as two finite harmonic sums,
//!
//! ```text
//! x(t) = Σ sin(fᵢ·t + φᵢ) / dᵢ        y(t) = Σ cos(gⱼ·t + ψⱼ) / eⱼ
//! ```
//!
//! The classic Lissajous curve is the one-term case `x = sin(a·t + δ)`,
//! `y = cos(b·t)`. The prime-sum curve uses the first `n` primes `pᵢ` on both
//! axes with `fᵢ = w(pᵢ)` and divisor `dᵢ = pᵢ`, where `w` is an optional
//! frequency warp. The alternating variant feeds the odd-position primes to
//! `x` and the even-position primes to `y`.
//!
//! Terms are summed smallest prime first, so results are bit-reproducible.

use std::f64::consts::TAU;
use std::fmt;

use crate::primes::{first_n_primes, split_alternating, MAX_PRIME_COUNT};
use crate::{Error, Result};

/// Optional transformation applied to each prime frequency.
///
/// The divisor stays the prime itself, so the amplitude bound `Σ 1/pᵢ` holds
/// for every warp.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum FrequencyWarp {
    #[default]
    Identity,
    /// Natural logarithm.
    Logarithmic,
    SquareRoot,
    PowerLaw { exponent: f64 },
}

impl FrequencyWarp {
    pub fn apply(&self, p: f64) -> f64 {
        match *self {
            FrequencyWarp::Identity => p,
            FrequencyWarp::Logarithmic => p.ln(),
            FrequencyWarp::SquareRoot => p.sqrt(),
            FrequencyWarp::PowerLaw { exponent } => p.powf(exponent),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            FrequencyWarp::PowerLaw { exponent } if !(exponent.is_finite() && exponent > 0.0) => {
                Err(Error::InvalidSpec(format!("power-law exponent must be finite and positive, got {exponent}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FrequencyWarp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrequencyWarp::Identity => f.write_str("identity"),
            FrequencyWarp::Logarithmic => f.write_str("log"),
            FrequencyWarp::SquareRoot => f.write_str("sqrt"),
            FrequencyWarp::PowerLaw { exponent } => write!(f, "power:{exponent}"),
        }
    }
}

/// Description of one curve; turn it into an evaluable [`Curve`] with
/// [`Curve::new`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveSpec {
    /// `x = sin(a·t + delta)`, `y = cos(b·t)`.
    Classic { a: f64, b: f64, delta: f64 },
    /// The first `n` primes on both axes.
    PrimeSum { n: usize, warp: FrequencyWarp },
    /// `n` odd-position primes on `x` and `n` even-position primes on `y`, so
    /// `2n` consecutive primes in total.
    AlternatingPrimeSum { n: usize, warp: FrequencyWarp },
}

impl CurveSpec {
    pub fn classic(a: f64, b: f64, delta: f64) -> Self {
        CurveSpec::Classic { a, b, delta }
    }

    pub fn prime_sum(n: usize) -> Self {
        CurveSpec::PrimeSum { n, warp: FrequencyWarp::Identity }
    }

    pub fn alternating(n: usize) -> Self {
        CurveSpec::AlternatingPrimeSum { n, warp: FrequencyWarp::Identity }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CurveSpec::Classic { a, b, delta } => {
                for (name, v) in [("a", a), ("b", b)] {
                    if !v.is_finite() || v == 0.0 {
                        return Err(Error::InvalidSpec(format!("{name} must be finite and nonzero, got {v}")));
                    }
                }
                if !delta.is_finite() {
                    return Err(Error::InvalidSpec(format!("delta must be finite, got {delta}")));
                }
                Ok(())
            }
            CurveSpec::PrimeSum { n, warp } => {
                if n == 0 {
                    return Err(Error::InvalidSpec("prime count must be at least 1".into()));
                }
                warp.validate()
            }
            CurveSpec::AlternatingPrimeSum { n, warp } => {
                if n == 0 {
                    return Err(Error::InvalidSpec("prime count must be at least 1".into()));
                }
                if n > MAX_PRIME_COUNT / 2 {
                    return Err(Error::PrimeCapExceeded { requested: 2 * n, cap: MAX_PRIME_COUNT });
                }
                warp.validate()
            }
        }
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSpec::Classic { a, b, delta } => write!(f, "classic a={a} b={b} delta={delta}"),
            CurveSpec::PrimeSum { n, warp } => write!(f, "primesum n={n} warp={warp}"),
            CurveSpec::AlternatingPrimeSum { n, warp } => write!(f, "altprimesum n={n} warp={warp}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// First derivative with respect to `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveVelocity {
    pub t: f64,
    pub dx: f64,
    pub dy: f64,
}

impl CurveVelocity {
    pub fn speed(&self) -> f64 {
        self.dx.hypot(self.dy)
    }
}

/// Second derivative with respect to `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveAcceleration {
    pub t: f64,
    pub ddx: f64,
    pub ddy: f64,
}

/// One harmonic: `sin(freq·t + phase) / divisor` (or `cos` on the y axis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Term {
    pub freq: f64,
    pub phase: f64,
    pub divisor: f64,
    /// `freq / divisor`, exactly 1 for unwarped prime terms.
    pub(crate) vel: f64,
    /// `freq² / divisor`.
    pub(crate) acc: f64,
}

impl Term {
    fn new(freq: f64, phase: f64, divisor: f64) -> Self {
        let vel = freq / divisor;
        Term { freq, phase, divisor, vel, acc: freq * vel }
    }

    #[inline]
    fn angle(&self, t: f64) -> f64 {
        self.freq * t + self.phase
    }
}

/// Re-anchor the phasor recurrence with an exact `sin_cos` this often.
const ANCHOR_EVERY: usize = 32;
/// Independent chains advanced in lockstep.
const LANES: usize = 4;
/// Frequency gaps must stay below this to use the recurrence.
const GAP_TABLE: usize = 512;

/// Velocity evaluation for consecutive integer frequencies `f₀ < f₁ < …`
/// with small gaps, using `e^{i fₖ₊₁ t} = e^{i fₖ t} · e^{i (fₖ₊₁ − fₖ) t}`.
#[derive(Debug, Clone)]
struct GapChain {
    freqs: Vec<f64>,
    /// `gaps[i] = f[i] − f[i − 1]`; `gaps[0]` is unused.
    gaps: Vec<u16>,
    coefs: Vec<f64>,
    max_gap: usize,
}

impl GapChain {
    fn new(terms: &[Term]) -> Option<Self> {
        if terms.len() < ANCHOR_EVERY || terms.iter().any(|t| t.phase != 0.0 || t.freq.fract() != 0.0) {
            return None;
        }
        let mut gaps = vec![0u16];
        for w in terms.windows(2) {
            let g = w[1].freq - w[0].freq;
            if !(g > 0.0 && g < GAP_TABLE as f64) {
                return None;
            }
            gaps.push(g as u16);
        }
        let max_gap = gaps.iter().copied().max().unwrap_or(0) as usize;
        Some(GapChain {
            freqs: terms.iter().map(|t| t.freq).collect(),
            gaps,
            coefs: terms.iter().map(|t| t.vel).collect(),
            max_gap,
        })
    }

    /// `(Σ cos(fᵢt)·vᵢ, Σ sin(fᵢt)·vᵢ)`.
    ///
    /// Each block of `ANCHOR_EVERY` terms is its own chain, so the rounding
    /// drift stays bounded and `LANES` blocks can pipeline.
    fn sums(&self, t: f64) -> (f64, f64) {
        let mut steps = [(1.0f64, 0.0f64); GAP_TABLE];
        for (g, slot) in steps.iter_mut().enumerate().take(self.max_gap + 1).skip(1) {
            let (s, c) = (g as f64 * t).sin_cos();
            *slot = (c, s);
        }
        let (mut re, mut im) = ([0.0f64; LANES], [0.0f64; LANES]);
        let group = ANCHOR_EVERY * LANES;
        let full = self.freqs.len() / group * group;
        for base in (0..full).step_by(group) {
            let mut c = [0.0f64; LANES];
            let mut s = [0.0f64; LANES];
            let mut gaps: [&[u16]; LANES] = [&[]; LANES];
            let mut coefs: [&[f64]; LANES] = [&[]; LANES];
            for lane in 0..LANES {
                let start = base + lane * ANCHOR_EVERY;
                (s[lane], c[lane]) = (self.freqs[start] * t).sin_cos();
                re[lane] += c[lane] * self.coefs[start];
                im[lane] += s[lane] * self.coefs[start];
                gaps[lane] = &self.gaps[start + 1..start + ANCHOR_EVERY];
                coefs[lane] = &self.coefs[start + 1..start + ANCHOR_EVERY];
            }
            for j in 0..ANCHOR_EVERY - 1 {
                for lane in 0..LANES {
                    let (gc, gs) = steps[gaps[lane][j] as usize % GAP_TABLE];
                    (c[lane], s[lane]) = (c[lane] * gc - s[lane] * gs, s[lane] * gc + c[lane] * gs);
                    re[lane] += c[lane] * coefs[lane][j];
                    im[lane] += s[lane] * coefs[lane][j];
                }
            }
        }
        let (mut c, mut s) = (0.0, 0.0);
        for i in full..self.freqs.len() {
            if (i - full).is_multiple_of(ANCHOR_EVERY) {
                (s, c) = (self.freqs[i] * t).sin_cos();
            } else {
                let (gc, gs) = steps[self.gaps[i] as usize % GAP_TABLE];
                (c, s) = (c * gc - s * gs, s * gc + c * gs);
            }
            re[0] += c * self.coefs[i];
            im[0] += s * self.coefs[i];
        }
        (re.iter().sum(), im.iter().sum())
    }
}

/// A validated curve ready for evaluation.
#[derive(Debug, Clone)]
pub struct Curve {
    spec: CurveSpec,
    x_terms: Vec<Term>,
    y_terms: Vec<Term>,
    /// Both axes use the same terms, so one `sin_cos` per term serves both.
    shared: bool,
    x_chain: Option<GapChain>,
    y_chain: Option<GapChain>,
}

impl Curve {
    pub fn new(spec: &CurveSpec) -> Result<Self> {
        spec.validate()?;
        let prime_terms = |primes: &[u64], warp: FrequencyWarp| -> Vec<Term> {
            primes
                .iter()
                .map(|&p| {
                    let p = p as f64;
                    Term::new(warp.apply(p), 0.0, p)
                })
                .collect()
        };
        let (x_terms, y_terms, shared) = match *spec {
            CurveSpec::Classic { a, b, delta } => (vec![Term::new(a, delta, 1.0)], vec![Term::new(b, 0.0, 1.0)], false),
            CurveSpec::PrimeSum { n, warp } => {
                let terms = prime_terms(&first_n_primes(n)?, warp);
                (terms.clone(), terms, true)
            }
            CurveSpec::AlternatingPrimeSum { n, warp } => {
                let split = split_alternating(&first_n_primes(2 * n)?);
                (prime_terms(&split.odd_indexed, warp), prime_terms(&split.even_indexed, warp), false)
            }
        };
        let (x_chain, y_chain) = (GapChain::new(&x_terms), GapChain::new(&y_terms));
        Ok(Curve { spec: *spec, x_terms, y_terms, shared, x_chain, y_chain })
    }

    pub fn spec(&self) -> &CurveSpec {
        &self.spec
    }

    pub(crate) fn x_terms(&self) -> &[Term] {
        &self.x_terms
    }

    pub(crate) fn y_terms(&self) -> &[Term] {
        &self.y_terms
    }

    /// Largest absolute frequency on either axis, after warping.
    pub fn max_frequency(&self) -> f64 {
        self.x_terms.iter().chain(&self.y_terms).map(|t| t.freq.abs()).fold(0.0, f64::max)
    }

    /// `Σ 1/dᵢ` per axis: bounds `|x(t)|` and `|y(t)|` respectively.
    pub fn amplitude_bounds(&self) -> (f64, f64) {
        let bound = |terms: &[Term]| terms.iter().map(|t| 1.0 / t.divisor).sum();
        (bound(&self.x_terms), bound(&self.y_terms))
    }

    /// True when every frequency is an integer, making the curve 2π-periodic.
    pub fn has_integer_frequencies(&self) -> bool {
        self.x_terms.iter().chain(&self.y_terms).all(|t| t.freq.fract() == 0.0)
    }

    /// `2π` when all frequencies are integers, `None` otherwise.
    pub fn period(&self) -> Option<f64> {
        self.has_integer_frequencies().then_some(TAU)
    }

    pub fn point(&self, t: f64) -> CurvePoint {
        let (mut x, mut y) = (0.0, 0.0);
        if self.shared {
            for term in &self.x_terms {
                let (s, c) = term.angle(t).sin_cos();
                x += s / term.divisor;
                y += c / term.divisor;
            }
        } else {
            for term in &self.x_terms {
                x += term.angle(t).sin() / term.divisor;
            }
            for term in &self.y_terms {
                y += term.angle(t).cos() / term.divisor;
            }
        }
        CurvePoint { t, x, y }
    }

    pub fn velocity(&self, t: f64) -> CurveVelocity {
        let (mut dx, mut dy) = (0.0, 0.0);
        if self.shared {
            for term in &self.x_terms {
                let (s, c) = term.angle(t).sin_cos();
                dx += c * term.vel;
                dy -= s * term.vel;
            }
        } else {
            for term in &self.x_terms {
                dx += term.angle(t).cos() * term.vel;
            }
            for term in &self.y_terms {
                dy -= term.angle(t).sin() * term.vel;
            }
        }
        CurveVelocity { t, dx, dy }
    }

    pub fn acceleration(&self, t: f64) -> CurveAcceleration {
        let (mut ddx, mut ddy) = (0.0, 0.0);
        if self.shared {
            for term in &self.x_terms {
                let (s, c) = term.angle(t).sin_cos();
                ddx -= s * term.acc;
                ddy -= c * term.acc;
            }
        } else {
            for term in &self.x_terms {
                ddx -= term.angle(t).sin() * term.acc;
            }
            for term in &self.y_terms {
                ddy -= term.angle(t).cos() * term.acc;
            }
        }
        CurveAcceleration { t, ddx, ddy }
    }

    pub fn speed(&self, t: f64) -> f64 {
        self.velocity(t).speed()
    }

    /// Speed through a phasor recurrence over the frequency gaps: a few
    /// times faster than [`Curve::speed`] for long prime sums, and accurate
    /// to a few dozen ulps per term.
    pub fn speed_fast(&self, t: f64) -> f64 {
        match (&self.x_chain, &self.y_chain) {
            (Some(xc), _) if self.shared => {
                let (c, s) = xc.sums(t);
                c.hypot(s)
            }
            (Some(xc), Some(yc)) => {
                let (dx, _) = xc.sums(t);
                let (_, sy) = yc.sums(t);
                dx.hypot(sy)
            }
            _ => self.speed(t),
        }
    }
}
