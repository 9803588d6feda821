//! Binary checkpoint format.
//!
//! ```text
//! offset  size  content
//! 0       4     magic "DRNG"
//! 4       4     format version, u32 LE
//! 8       4     N, u32 LE
//! 12      4     component count (3), u32 LE
//! 16      8     time t, f64 LE
//! 24      8     viscosity, f64 LE
//! 32      ...   3 * N^3 complex entries, (re, im) f64 LE each
//! ```
//!
//! Entries are ordered component-major, then `k1, k2, k3` each ascending
//! over `[-N/2, N/2)` with `k1` slowest.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::Grid;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"DRNG";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub time: f64,
    pub nu: f64,
    pub field: SpectralField,
}

fn storage_order(grid: Grid) -> impl Iterator<Item = usize> {
    let half = grid.n() as i64 / 2;
    (-half..half).flat_map(move |k1| {
        (-half..half).flat_map(move |k2| (-half..half).map(move |k3| grid.index_of([k1, k2, k3])))
    })
}

pub fn write_checkpoint<W: Write>(mut w: W, time: f64, nu: f64, field: &SpectralField) -> Result<()> {
    let grid = field.grid();
    let mut buf = Vec::with_capacity(32 + 48 * grid.len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(grid.n() as u32).to_le_bytes());
    buf.extend_from_slice(&3u32.to_le_bytes());
    buf.extend_from_slice(&time.to_le_bytes());
    buf.extend_from_slice(&nu.to_le_bytes());
    for c in 0..3 {
        let comp = field.component(c);
        for idx in storage_order(grid) {
            buf.extend_from_slice(&comp[idx].re.to_le_bytes());
            buf.extend_from_slice(&comp[idx].im.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_checkpoint<R: Read>(mut r: R) -> Result<Checkpoint> {
    let mut header = [0u8; 32];
    r.read_exact(&mut header)?;
    if &header[0..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let word = |o: usize| u32::from_le_bytes(header[o..o + 4].try_into().unwrap());
    let real = |o: usize| f64::from_le_bytes(header[o..o + 8].try_into().unwrap());
    if word(4) != VERSION {
        return Err(Error::Format(format!("unsupported version {}", word(4))));
    }
    if word(12) != 3 {
        return Err(Error::Format(format!("expected 3 components, found {}", word(12))));
    }
    let grid = Grid::new(word(8) as usize).map_err(|e| Error::Format(e.to_string()))?;
    let (time, nu) = (real(16), real(24));

    let mut body = vec![0u8; 48 * grid.len()];
    r.read_exact(&mut body)?;
    let mut coeffs: [Vec<Complex64>; 3] = std::array::from_fn(|_| vec![Complex64::default(); grid.len()]);
    let mut chunks = body.chunks_exact(16);
    for comp in coeffs.iter_mut() {
        for idx in storage_order(grid) {
            let e = chunks.next().expect("body length checked");
            comp[idx] = Complex64::new(
                f64::from_le_bytes(e[0..8].try_into().unwrap()),
                f64::from_le_bytes(e[8..16].try_into().unwrap()),
            );
        }
    }
    let field = SpectralField::from_coeffs(grid, coeffs, false)?;
    let flag = field.divergence_defect() <= 1e-12;
    Ok(Checkpoint { time, nu, field: field.with_divergence_free(flag) })
}

pub fn save(path: &Path, time: f64, nu: f64, field: &SpectralField) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_checkpoint(std::io::BufWriter::new(file), time, nu, field)
}

pub fn load(path: &Path) -> Result<Checkpoint> {
    read_checkpoint(std::io::BufReader::new(std::fs::File::open(path)?))
}
