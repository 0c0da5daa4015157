//! Ulam's square spiral of the positive integers with primes marked.
//!
//! Convention: 1 sits at the origin, 2 one step to the right, and the walk
//! turns counterclockwise with run lengths 1, 1, 2, 2, 3, 3, … so that the
//! odd squares `(2k + 1)²` land on the diagonal at `(k, −k)`.

use std::path::Path;

use crate::primes::prime_mask;
use crate::{Error, Result};

/// Largest raster side accepted by [`build_raster`].
pub const MAX_SPIRAL_SIDE: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpiralCell {
    pub n: u64,
    pub gx: i64,
    pub gy: i64,
    pub prime: bool,
}

/// Grid coordinate of `n ≥ 1`, computed in O(1) from its ring.
pub fn spiral_coord(n: u64) -> (i64, i64) {
    assert!(n >= 1, "the spiral starts at 1");
    if n == 1 {
        return (0, 0);
    }
    // Ring k holds (2k − 1)² + 1 ..= (2k + 1)².
    let mut root = n.isqrt();
    if root * root < n {
        root += 1;
    }
    if root.is_multiple_of(2) {
        root += 1;
    }
    let k = ((root - 1) / 2) as i64;
    let d = (n - (root - 2) * (root - 2)) as i64;
    let side = 2 * k;
    match d {
        d if d <= side => (k, -k + d),
        d if d <= 2 * side => (k - (d - side), k),
        d if d <= 3 * side => (-k, k - (d - 2 * side)),
        d => (-k + (d - 3 * side), -k),
    }
}

/// An odd-sided square window of the spiral centred on 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiralRaster {
    side: usize,
    /// Row-major; row 0 is the top of the image (largest `gy`), column 0 the
    /// smallest `gx`.
    cells: Vec<SpiralCell>,
}

impl SpiralRaster {
    pub fn side(&self) -> usize {
        self.side
    }

    pub fn cells(&self) -> &[SpiralCell] {
        &self.cells
    }

    pub fn cell(&self, row: usize, col: usize) -> &SpiralCell {
        &self.cells[row * self.side + col]
    }

    pub fn prime_count(&self) -> usize {
        self.cells.iter().filter(|c| c.prime).count()
    }

    /// Binary PGM (P5) bytes: primes black (0), everything else white (255).
    pub fn to_pgm(&self) -> Vec<u8> {
        let header = format!("P5\n{} {}\n255\n", self.side, self.side);
        let mut out = Vec::with_capacity(header.len() + self.cells.len());
        out.extend_from_slice(header.as_bytes());
        out.extend(self.cells.iter().map(|c| if c.prime { 0u8 } else { 255u8 }));
        out
    }
}

/// Builds the `side × side` window covering `1 ..= side²`.
pub fn build_raster(side: usize) -> Result<SpiralRaster> {
    if side == 0 || side.is_multiple_of(2) {
        return Err(Error::EvenSide(side));
    }
    if side > MAX_SPIRAL_SIDE {
        return Err(Error::SideTooLarge { side, max: MAX_SPIRAL_SIDE });
    }
    let total = side * side;
    let half = (side / 2) as i64;
    let mask = prime_mask(total);
    let mut cells = vec![SpiralCell { n: 0, gx: 0, gy: 0, prime: false }; total];
    for n in 1..=total as u64 {
        let (gx, gy) = spiral_coord(n);
        let (row, col) = ((half - gy) as usize, (gx + half) as usize);
        cells[row * side + col] = SpiralCell { n, gx, gy, prime: mask[n as usize] };
    }
    Ok(SpiralRaster { side, cells })
}

pub fn emit_spiral_pgm(raster: &SpiralRaster, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, raster.to_pgm()).map_err(|e| Error::io(path, e))
}
