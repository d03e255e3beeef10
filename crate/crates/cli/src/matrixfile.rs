//! Plain-text complex matrix exchange format.
//!
//! Layout: a header line `CMAT <rows> <cols>`, then one line per row with the
//! entries as `re,im` tokens separated by single spaces, row-major. Numbers are
//! written in Rust's shortest round-trip decimal form, so `parse(&emit(m))`
//! reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use atomap::{c, CMat};

#[derive(Debug, thiserror::Error)]
pub enum MatrixFileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// Malformed content; `line` is 1-based, `col` is the 1-based token index
    /// within that line.
    #[error("parse error at line {line}, token {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> MatrixFileError {
    MatrixFileError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Render a matrix in the exchange format.
pub fn emit(m: &CMat) -> String {
    let mut s = format!("CMAT {} {}\n", m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            if j > 0 {
                s.push(' ');
            }
            let z = m[(i, j)];
            s.push_str(&format!("{},{}", z.re, z.im));
        }
        s.push('\n');
    }
    s
}

/// Parse the exchange format back into a matrix.
pub fn parse(text: &str) -> Result<CMat, MatrixFileError> {
    let mut lines = text.lines().enumerate();
    let (hidx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let hline = hidx + 1;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 3 || tokens[0] != "CMAT" {
        return Err(parse_err(hline, 1, "expected header 'CMAT <rows> <cols>'"));
    }
    let rows: usize = tokens[1]
        .parse()
        .map_err(|_| parse_err(hline, 2, format!("bad row count '{}'", tokens[1])))?;
    let cols: usize = tokens[2]
        .parse()
        .map_err(|_| parse_err(hline, 3, format!("bad column count '{}'", tokens[2])))?;

    let mut m = CMat::zeros(rows, cols);
    let mut filled = 0usize;
    let mut last_line = hline;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        last_line = lineno;
        if filled == rows {
            return Err(parse_err(lineno, 1, "extra content after final row"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols {
            return Err(parse_err(
                lineno,
                toks.len().max(1),
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for (k, tok) in toks.iter().enumerate() {
            let col = k + 1;
            let (re, im) = tok
                .split_once(',')
                .ok_or_else(|| parse_err(lineno, col, format!("expected 're,im', found '{tok}'")))?;
            let re: f64 = re
                .parse()
                .map_err(|_| parse_err(lineno, col, format!("bad real part '{re}'")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| parse_err(lineno, col, format!("bad imaginary part '{im}'")))?;
            m[(filled, k)] = c(re, im);
        }
        filled += 1;
    }
    if filled != rows {
        return Err(parse_err(
            last_line + 1,
            1,
            format!("expected {rows} rows, found {filled}"),
        ));
    }
    Ok(m)
}

/// Read a matrix file from disk.
pub fn read_file(path: impl AsRef<Path>) -> Result<CMat, MatrixFileError> {
    Ok(parse(&fs::read_to_string(path)?)?)
}

/// Write a matrix file to disk.
pub fn write_file(path: impl AsRef<Path>, m: &CMat) -> Result<(), MatrixFileError> {
    fs::write(path, emit(m))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use atomap::cr;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut m = CMat::zeros(2, 3);
        m[(0, 0)] = c(0.1, -0.3);
        m[(0, 1)] = c(-0.0, 1e-300);
        m[(0, 2)] = c(1.0 / 3.0, -2.0 / 7.0);
        m[(1, 0)] = c(f64::MIN_POSITIVE, f64::MAX);
        m[(1, 1)] = cr(-1.0);
        m[(1, 2)] = c(1e17, -1e-17);
        let back = parse(&emit(&m)).unwrap();
        assert_eq!(back.rows, 2);
        assert_eq!(back.cols, 3);
        for (a, b) in back.entries.iter().zip(&m.entries) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn parse_reports_line_and_token() {
        let err = parse("CMAT 2 2\n1,0 2,0\n3,0 oops\n").unwrap_err();
        match err {
            MatrixFileError::Parse { line, col, .. } => {
                assert_eq!((line, col), (3, 2));
            }
            other => panic!("unexpected error {other:?}"),
        }

        let err = parse("CMAT 2 2\n1,0 2,0\n").unwrap_err();
        match err {
            MatrixFileError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }

        let err = parse("BOGUS 2 2\n").unwrap_err();
        match err {
            MatrixFileError::Parse { line, col, .. } => assert_eq!((line, col), (1, 1)),
            other => panic!("unexpected error {other:?}"),
        }

        let err = parse("CMAT 1 1\n0,0\nleftover\n").unwrap_err();
        match err {
            MatrixFileError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn blank_lines_are_tolerated() {
        let m = parse("\nCMAT 1 2\n\n0.5,0 0,-0.5\n\n").unwrap();
        assert_eq!(m[(0, 1)], c(0.0, -0.5));
    }
}
