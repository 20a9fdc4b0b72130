//! Binary snapshot format.
//!
//! ```text
//! "CSH1"          4 bytes
//! n               u32
//! L, t            f64, f64
//! phi             n*n (re, im) f64 pairs, row-major
//! d_t phi         n*n (re, im) f64 pairs
//! A1, A2          n*n f64 each, mean-free physical samples
//! A mean          2 f64
//! ```
//!
//! Everything is little-endian.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::CshState;
use crate::spectral::{GaugeField, Repr, ScalarField, TorusGrid};

pub const MAGIC: &[u8; 4] = b"CSH1";

/// Size in bytes of a snapshot on an `n x n` grid.
pub fn snapshot_len(n: usize) -> usize {
    4 + 4 + 8 + 8 + 8 * (6 * n * n + 2)
}

pub fn encode_snapshot(state: &CshState) -> Vec<u8> {
    let grid = state.grid();
    let n = grid.n();
    let mut out = Vec::with_capacity(snapshot_len(n));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    out.extend_from_slice(&grid.period().to_le_bytes());
    out.extend_from_slice(&state.time().to_le_bytes());
    for field in [state.phi(), state.phi_t()] {
        for c in field.values() {
            out.extend_from_slice(&c.re.to_le_bytes());
            out.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    let a = state.a_mean_free();
    for j in 0..2 {
        for c in a.component(j).values() {
            out.extend_from_slice(&c.re.to_le_bytes());
        }
    }
    for m in state.a_mean() {
        out.extend_from_slice(&m.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        let end = self.pos + N;
        let chunk = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| Error::Format(format!("truncated at byte {}", self.pos)))?;
        self.pos = end;
        Ok(chunk.try_into().expect("slice of length N"))
    }

    fn f64(&mut self) -> Result<f64> {
        self.take::<8>().map(f64::from_le_bytes)
    }

    fn complex_field(&mut self, grid: &TorusGrid) -> Result<ScalarField> {
        let values = (0..grid.len())
            .map(|_| Ok(Complex64::new(self.f64()?, self.f64()?)))
            .collect::<Result<Vec<_>>>()?;
        ScalarField::from_values(grid, values, Repr::Physical)
    }

    fn real_field(&mut self, grid: &TorusGrid) -> Result<ScalarField> {
        let values = (0..grid.len())
            .map(|_| Ok(Complex64::new(self.f64()?, 0.0)))
            .collect::<Result<Vec<_>>>()?;
        ScalarField::from_values(grid, values, Repr::Physical)
    }
}

pub fn decode_snapshot(bytes: &[u8]) -> Result<CshState> {
    let mut r = Reader { bytes, pos: 0 };
    if &r.take::<4>()? != MAGIC {
        return Err(Error::Format("bad magic, expected \"CSH1\"".into()));
    }
    let n = u32::from_le_bytes(r.take::<4>()?) as usize;
    let period = r.f64()?;
    if bytes.len() != snapshot_len(n) {
        return Err(Error::Format(format!(
            "expected {} bytes for n = {n}, found {}",
            snapshot_len(n),
            bytes.len()
        )));
    }
    let grid = TorusGrid::new(n, period).map_err(|e| Error::Format(format!("invalid grid: {e}")))?;
    let time = r.f64()?;
    let phi = r.complex_field(&grid)?;
    let phi_t = r.complex_field(&grid)?;
    let a1 = r.real_field(&grid)?;
    let a2 = r.real_field(&grid)?;
    let mean = [r.f64()?, r.f64()?];
    Ok(CshState::from_mean_free_gauge(
        time,
        phi,
        phi_t,
        GaugeField::new(a1, a2),
        mean,
    ))
}

pub fn write_snapshot(state: &CshState, path: &Path) -> Result<()> {
    fs::write(path, encode_snapshot(state))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<CshState> {
    decode_snapshot(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_state;

    #[test]
    fn zero_state_layout() {
        let g = TorusGrid::standard(4).unwrap();
        let bytes = encode_snapshot(&CshState::zero(&g));
        assert_eq!(bytes.len(), 4 + 4 + 8 + 8 + (16 * 2 + 16 * 2 + 16 + 16) * 8 + 2 * 8);
        assert_eq!(&bytes[..4], b"CSH1");
        assert_eq!(u32::from_le_bytes(bytes[4..8].try_into().unwrap()), 4);
        assert_eq!(decode_snapshot(&bytes).unwrap(), CshState::zero(&g));
    }

    #[test]
    fn random_round_trip_is_bit_exact() {
        let s = random_state(3, 16, 4).with_time(0.375);
        let bytes = encode_snapshot(&s);
        let back = decode_snapshot(&bytes).unwrap();
        assert_eq!(encode_snapshot(&back), bytes);
        let bits = |f: &ScalarField| f.values().iter().flat_map(|c| [c.re.to_bits(), c.im.to_bits()]).collect::<Vec<_>>();
        assert_eq!(bits(back.phi()), bits(s.phi()));
        assert_eq!(bits(back.phi_t()), bits(s.phi_t()));
        assert_eq!(back.a_mean_free(), s.a_mean_free());
        assert_eq!(back.a_mean(), s.a_mean());
        assert_eq!(back.time().to_bits(), s.time().to_bits());
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let s = random_state(1, 8, 2);
        let mut bytes = encode_snapshot(&s);
        assert!(matches!(decode_snapshot(&bytes[..bytes.len() - 1]), Err(Error::Format(_))));
        assert!(matches!(decode_snapshot(&bytes[..6]), Err(Error::Format(_))));
        bytes[0] = b'X';
        assert!(matches!(decode_snapshot(&bytes), Err(Error::Format(_))));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.bin");
        let s = random_state(9, 16, 3);
        write_snapshot(&s, &path).unwrap();
        assert_eq!(encode_snapshot(&read_snapshot(&path).unwrap()), encode_snapshot(&s));
    }
}
