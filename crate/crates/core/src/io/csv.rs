//! Diagnostics series as CSV.

use std::io::{Read, Write};
use std::path::Path;

use crate::diagnostics::DiagnosticsRecord;
use crate::error::{Error, Result};

pub const HEADER: [&str; 9] = [
    "t",
    "energy",
    "constraint_l2",
    "I",
    "phi_l2",
    "phi_h1",
    "phit_l2",
    "acf_norm",
    "adf_norm",
];

fn row(r: &DiagnosticsRecord) -> [f64; 9] {
    [
        r.t,
        r.energy,
        r.constraint_l2,
        r.i_functional,
        r.phi_l2,
        r.phi_h1,
        r.phit_l2,
        r.acf_norm,
        r.adf_norm,
    ]
}

/// Writes the header and one row per record with 17 significant digits.
pub fn write_diagnostics_to<W: Write>(series: &[DiagnosticsRecord], out: W) -> Result<()> {
    if series.is_empty() {
        return Err(Error::Usage("empty diagnostics series".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in series {
        w.write_record(row(r).iter().map(|v| format!("{v:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_diagnostics(series: &[DiagnosticsRecord], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_diagnostics_to(series, std::io::BufWriter::new(file))
}

/// Parses a diagnostics CSV; `potential_energy` is not stored and comes
/// back as `None`.
pub fn read_diagnostics_from<R: Read>(input: R) -> Result<Vec<DiagnosticsRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    if rd.headers()?.iter().ne(HEADER) {
        return Err(Error::Format("unexpected diagnostics header".into()));
    }
    rd.records()
        .map(|rec| {
            let rec = rec?;
            let v = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Format(format!("bad value '{s}': {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != HEADER.len() {
                return Err(Error::Format(format!("expected {} columns", HEADER.len())));
            }
            Ok(DiagnosticsRecord {
                t: v[0],
                energy: v[1],
                constraint_l2: v[2],
                i_functional: v[3],
                phi_l2: v[4],
                phi_h1: v[5],
                phit_l2: v[6],
                acf_norm: v[7],
                adf_norm: v[8],
                potential_energy: None,
            })
        })
        .collect()
}

pub fn read_diagnostics(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    read_diagnostics_from(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::record;
    use crate::model::Potential;
    use crate::testutil::random_state;

    fn zero_record() -> DiagnosticsRecord {
        DiagnosticsRecord {
            t: 0.0,
            energy: 0.0,
            constraint_l2: 0.0,
            i_functional: 0.0,
            phi_l2: 0.0,
            phi_h1: 0.0,
            phit_l2: 0.0,
            acf_norm: 0.0,
            adf_norm: 0.0,
            potential_energy: None,
        }
    }

    #[test]
    fn single_zero_record() {
        let mut buf = Vec::new();
        write_diagnostics_to(&[zero_record()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "t,energy,constraint_l2,I,phi_l2,phi_h1,phit_l2,acf_norm,adf_norm");
        assert!(lines[1].split(',').all(|v| v.parse::<f64>().unwrap() == 0.0));
    }

    #[test]
    fn empty_series_is_rejected() {
        assert!(matches!(write_diagnostics_to(&[], Vec::new()), Err(Error::Usage(_))));
    }

    #[test]
    fn round_trip_full_precision() {
        let series: Vec<_> = (0..5)
            .map(|k| {
                let s = random_state(k, 16, 3).with_time(k as f64 * 0.1);
                DiagnosticsRecord {
                    potential_energy: None,
                    ..record(&s, &Potential::quartic())
                }
            })
            .collect();
        let mut buf = Vec::new();
        write_diagnostics_to(&series, &mut buf).unwrap();
        let back = read_diagnostics_from(buf.as_slice()).unwrap();
        assert_eq!(back, series);
        assert!(back.windows(2).all(|w| w[0].t < w[1].t));
    }
}
