//! Text output: complex CSV cells, spectra and determinants.

use gainlap::prelude::CMatrix;
use num_complex::Complex64;

/// `a+bi` / `a-bi` with 17 significant digits in each part.
pub fn format_cell(z: Complex64) -> String {
    format!("{:.16e}{:+.16e}i", z.re, z.im)
}

/// Inverse of [`format_cell`]; also accepts any `re±imi` pair of float literals.
pub fn parse_cell(cell: &str) -> Option<Complex64> {
    let body = cell.trim().strip_suffix('i')?;
    // the imaginary part starts at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re = body[..split].parse().ok()?;
    let im = body[split..].parse().ok()?;
    Some(Complex64::new(re, im))
}

pub fn matrix_csv(m: &CMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let cells: Vec<String> = m.row(r).iter().map(|&z| format_cell(z)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses CSV produced by [`matrix_csv`]; `None` on a malformed cell or ragged rows.
pub fn parse_matrix_csv(text: &str) -> Option<CMatrix> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(parse_cell).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return None;
    }
    Some(CMatrix::from_rows(&rows))
}

/// Rounds to 12 significant digits, so that `1.9999999999999996` prints as `2`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{x:.11e}")
        .parse()
        .expect("float formatting round-trips");
    format!("{}", if rounded == 0.0 { 0.0 } else { rounded })
}
