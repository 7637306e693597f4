// Copyright 2026 qcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! File formats: the "QMAT v1" matrix text format and the production-series
//! CSV export.
//!
//! QMAT v1 layout:
//!
//! ```text
//! QMAT 1
//! <rows> <cols>
//! DIMS <d1> <d2>          (optional, bipartite-tagged density matrices)
//! <re> <im>               (rows x cols entry lines, row-major)
//! ```
//!
//! Numbers are written with 17 significant digits, which round-trips every
//! f64 bit-exactly. All writers go through a temp file plus rename so no
//! partial output is left behind on failure.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::bipartite::{DensityMatrix, StateDims};
use crate::error::{Error, Result};
use crate::numerics::{CMatrix, C64};
use crate::xxz::ProductionSeries;

/// Formats an f64 with 17 significant digits (bit-exact round trip).
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes a matrix in QMAT v1, with an optional bipartite DIMS line.
pub fn qmat_to_string(m: &CMatrix, dims: Option<(usize, usize)>) -> String {
    let mut out = String::new();
    out.push_str("QMAT 1\n");
    let _ = writeln!(out, "{} {}", m.nrows(), m.ncols());
    if let Some((d1, d2)) = dims {
        let _ = writeln!(out, "DIMS {d1} {d2}");
    }
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            let _ = writeln!(out, "{} {}", format_f64(z.re), format_f64(z.im));
        }
    }
    out
}

/// Parses QMAT v1 text into a matrix and the optional DIMS tag.
pub fn qmat_from_string(text: &str) -> Result<(CMatrix, Option<(usize, usize)>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    if header.trim() != "QMAT 1" {
        return Err(Error::Parse(format!("bad header line {header:?}")));
    }
    let shape = lines
        .next()
        .ok_or_else(|| Error::Parse("missing shape line".into()))?;
    let mut it = shape.split_whitespace();
    let rows: usize = parse_field(it.next(), "rows")?;
    let cols: usize = parse_field(it.next(), "cols")?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse("matrix shape must be positive".into()));
    }
    let mut peeked = lines.peekable();
    let mut dims = None;
    if let Some(line) = peeked.peek() {
        if let Some(rest) = line.trim().strip_prefix("DIMS") {
            let mut it = rest.split_whitespace();
            let d1: usize = parse_field(it.next(), "d1")?;
            let d2: usize = parse_field(it.next(), "d2")?;
            dims = Some((d1, d2));
            peeked.next();
        }
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for line in peeked {
        let mut it = line.split_whitespace();
        let re: f64 = parse_field(it.next(), "re")?;
        let im: f64 = parse_field(it.next(), "im")?;
        entries.push(C64::new(re, im));
        if entries.len() > rows * cols {
            return Err(Error::Parse("too many entry lines".into()));
        }
    }
    if entries.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            rows * cols,
            entries.len()
        )));
    }
    let m = CMatrix::from_fn(rows, cols, |i, j| entries[i * cols + j]);
    Ok((m, dims))
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, name: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing {name} field")))?
        .parse::<T>()
        .map_err(|_| Error::Parse(format!("unparsable {name} field")))
}

/// Writes a density matrix as QMAT v1, including DIMS when bipartite-tagged.
pub fn write_density_matrix(path: &Path, rho: &DensityMatrix) -> Result<()> {
    let dims = match rho.dims() {
        StateDims::Bipartite(b) => Some((b.d1(), b.d2())),
        StateDims::Single(_) => None,
    };
    write_atomically(path, &qmat_to_string(rho.matrix(), dims))
}

/// Reads a density matrix, validating it and applying any DIMS tag.
pub fn read_density_matrix(path: &Path) -> Result<DensityMatrix> {
    let text = fs::read_to_string(path)?;
    let (m, dims) = qmat_from_string(&text)?;
    let dims = match dims {
        Some((d1, d2)) => StateDims::bipartite(d1, d2)?,
        None => StateDims::Single(m.nrows()),
    };
    if dims.total() != m.nrows() || m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "DIMS tag {} does not match {}x{} matrix",
            dims.total(),
            m.nrows(),
            m.ncols()
        )));
    }
    DensityMatrix::new(m, dims)
}

/// Reads a bare matrix (observable file).
pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = fs::read_to_string(path)?;
    Ok(qmat_from_string(&text)?.0)
}

/// Production series as CSV with header `t,ea,ma,trace_drift`.
pub fn series_to_csv(series: &ProductionSeries) -> String {
    let mut out = String::from("t,ea,ma,trace_drift\n");
    for i in 0..series.times.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_f64(series.times[i]),
            format_f64(series.ea_values[i]),
            format_f64(series.ma_values[i]),
            format_f64(series.trace_drift[i]),
        );
    }
    out
}

pub fn write_series_csv(path: &Path, series: &ProductionSeries) -> Result<()> {
    write_atomically(path, &series_to_csv(series))
}

/// Write through a temp file in the target directory, then rename into
/// place, so failures never leave partial output behind.
pub fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    std::io::Write::write_all(&mut tmp, contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_density;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qmat_round_trip_with_dims() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = random_density(&mut rng, StateDims::bipartite(2, 2).unwrap(), 4).unwrap();
        let text = qmat_to_string(rho.matrix(), Some((2, 2)));
        let (back, dims) = qmat_from_string(&text).unwrap();
        assert_eq!(dims, Some((2, 2)));
        assert_eq!(&back, rho.matrix());
        // Bit-exact: a second serialization is byte-identical.
        assert_eq!(text, qmat_to_string(&back, Some((2, 2))));
    }

    #[test]
    fn qmat_rejects_malformed_input() {
        assert!(qmat_from_string("QMAT 2\n1 1\n0 0\n").is_err());
        assert!(qmat_from_string("QMAT 1\n2 2\n0 0\n").is_err());
        assert!(qmat_from_string("").is_err());
    }

    #[test]
    fn file_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rho = random_density(&mut rng, StateDims::bipartite(2, 3).unwrap(), 6).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("state.qmat");
        write_density_matrix(&path, &rho).unwrap();
        let back = read_density_matrix(&path).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
        assert_eq!(back.dims(), rho.dims());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn f64_formatting_round_trips(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let back: f64 = format_f64(x).parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }
}
