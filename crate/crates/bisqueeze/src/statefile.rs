//! Plain-text serialization of covariance matrices.
//!
//! Format: a header line `n_modes=<N> basis=<complex|quadrature>` followed by
//! `2N` rows of `2N` whitespace-separated `re+imj` entries. Quadrature files
//! use the natural interleaved mode order.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::symplectic::{CovarianceMatrix, QuadratureCovariance};
use crate::{Error, Result};

/// Which representation a state file stores.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Complex,
    Quadrature,
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex" => Ok(Basis::Complex),
            "quadrature" => Ok(Basis::Quadrature),
            other => Err(Error::InvalidParameter(format!(
                "unknown basis '{other}' (expected complex or quadrature)"
            ))),
        }
    }
}

fn format_complex(z: C64) -> String {
    // canonicalize negative zeros so the sign split stays parseable
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im >= 0.0 {
        format!("{re:.17e}+{im:.17e}j")
    } else {
        format!("{re:.17e}-{:.17e}j", -im)
    }
}

fn parse_complex(token: &str, line: usize) -> Result<C64> {
    let inner = token.strip_suffix(['j', 'J']).ok_or_else(|| Error::Parse {
        line,
        reason: format!("entry '{token}' does not end in 'j'"),
    })?;
    // split at the sign of the imaginary part: the last +/- not part of an
    // exponent and not the leading sign
    let bytes = inner.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let b = bytes[i];
        if (b == b'+' || b == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
            break;
        }
    }
    let split = split.ok_or_else(|| Error::Parse {
        line,
        reason: format!("entry '{token}' has no imaginary part"),
    })?;
    let re: f64 = inner[..split].parse().map_err(|_| Error::Parse {
        line,
        reason: format!("bad real part in '{token}'"),
    })?;
    let im: f64 = inner[split..].parse().map_err(|_| Error::Parse {
        line,
        reason: format!("bad imaginary part in '{token}'"),
    })?;
    Ok(C64::new(re, im))
}

fn write_matrix<W: Write>(w: &mut W, n_modes: usize, basis: &str, entry: impl Fn(usize, usize) -> C64) -> Result<()> {
    writeln!(w, "n_modes={n_modes} basis={basis}")?;
    let dim = 2 * n_modes;
    for i in 0..dim {
        let row: Vec<String> = (0..dim).map(|j| format_complex(entry(i, j))).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Writes a state in the annihilation/creation basis.
pub fn write_complex<W: Write>(w: &mut W, sigma: &CovarianceMatrix) -> Result<()> {
    write_matrix(w, sigma.n_modes(), "complex", |i, j| sigma.matrix()[(i, j)])
}

/// Writes a state as quadratures in the natural mode order.
pub fn write_quadrature<W: Write>(w: &mut W, sigma: &CovarianceMatrix) -> Result<()> {
    let order: Vec<usize> = (0..sigma.n_modes()).collect();
    let quad = sigma.to_quadrature(&order)?;
    write_matrix(w, quad.n_modes(), "quadrature", |i, j| {
        C64::new(quad.matrix()[(i, j)], 0.0)
    })
}

pub fn write_state<W: Write>(w: &mut W, sigma: &CovarianceMatrix, basis: Basis) -> Result<()> {
    match basis {
        Basis::Complex => write_complex(w, sigma),
        Basis::Quadrature => write_quadrature(w, sigma),
    }
}

/// Reads a state file in either basis back into the annihilation/creation
/// representation.
pub fn read_state<R: BufRead>(r: R) -> Result<CovarianceMatrix> {
    let mut lines = r.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "empty file".into(),
    })?;
    let header = header?;
    let mut n_modes = None;
    let mut basis = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("n_modes", v)) => {
                n_modes = Some(v.parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    reason: format!("bad n_modes '{v}'"),
                })?)
            }
            Some(("basis", v)) => basis = Some(v.parse::<Basis>()?),
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    reason: format!("unexpected header field '{field}'"),
                })
            }
        }
    }
    let n_modes = n_modes.ok_or(Error::Parse {
        line: 1,
        reason: "missing n_modes".into(),
    })?;
    let basis = basis.ok_or(Error::Parse {
        line: 1,
        reason: "missing basis".into(),
    })?;
    if n_modes == 0 {
        return Err(Error::Parse {
            line: 1,
            reason: "n_modes must be positive".into(),
        });
    }

    let dim = 2 * n_modes;
    let mut data = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..dim {
        let (line_idx, line) = lines.next().ok_or(Error::Parse {
            line: i + 2,
            reason: format!("expected {dim} matrix rows"),
        })?;
        let line = line?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(Error::Parse {
                line: line_idx + 1,
                reason: format!("expected {dim} entries, found {}", tokens.len()),
            });
        }
        for (j, token) in tokens.iter().enumerate() {
            data[(i, j)] = parse_complex(token, line_idx + 1)?;
        }
    }

    match basis {
        Basis::Complex => CovarianceMatrix::new(data),
        Basis::Quadrature => {
            let order: Vec<usize> = (0..n_modes).collect();
            QuadratureCovariance::new(order, data.map(|z| z.re))?.to_covariance()
        }
    }
}
