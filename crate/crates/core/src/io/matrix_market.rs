use std::fmt::Write as _;
use std::path::Path;

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;
use crate::mmf::SymmetricMatrix;

fn parse_err(line: usize, message: impl Into<String>) -> MmfError {
    MmfError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

fn header_tokens(text: &str) -> Result<Vec<String>> {
    let first = text.lines().next().ok_or_else(|| parse_err(1, "empty file"))?;
    let tokens: Vec<String> = first.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, format!("malformed MatrixMarket header `{first}`")));
    }
    Ok(tokens)
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

/// Parses a `coordinate real symmetric` document with 1-based indices.
/// Entries above the diagonal are mirrored like lower-triangle ones.
pub fn parse_matrix_market(text: &str) -> Result<SymmetricMatrix> {
    let h = header_tokens(text)?;
    if h[2] != "coordinate" {
        return Err(parse_err(1, format!("expected coordinate format, found `{}`", h[2])));
    }
    if h[3] != "real" && h[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field `{}`", h[3])));
    }
    if h[4] != "symmetric" {
        return Err(parse_err(1, format!("expected symmetric matrix, found `{}`", h[4])));
    }
    let mut lines = content_lines(text);
    let (size_line, size) = lines.next().ok_or_else(|| parse_err(1, "missing size line"))?;
    let mut tok = size.split_whitespace();
    let rows: usize = parse_field(tok.next(), size_line, "row count")?;
    let cols: usize = parse_field(tok.next(), size_line, "column count")?;
    let nnz: usize = parse_field(tok.next(), size_line, "entry count")?;
    if rows != cols || rows == 0 {
        return Err(parse_err(size_line, format!("symmetric matrix must be square and non-empty, got {rows}x{cols}")));
    }
    let n = rows;
    let mut m = Matrix::zeros(n, n);
    let mut set = vec![false; n * n];
    let mut count = 0;
    for (ln, l) in lines {
        let mut tok = l.split_whitespace();
        let i: usize = parse_field(tok.next(), ln, "row index")?;
        let j: usize = parse_field(tok.next(), ln, "column index")?;
        let v: f64 = parse_field(tok.next(), ln, "value")?;
        if tok.next().is_some() {
            return Err(parse_err(ln, "trailing tokens"));
        }
        if i == 0 || j == 0 || i > n || j > n {
            return Err(parse_err(ln, format!("index ({i}, {j}) outside 1..={n}")));
        }
        let (r, c) = (i.max(j) - 1, i.min(j) - 1);
        if std::mem::replace(&mut set[r * n + c], true) {
            return Err(parse_err(ln, format!("duplicate entry ({i}, {j})")));
        }
        m[(r, c)] = v;
        m[(c, r)] = v;
        count += 1;
    }
    if count != nnz {
        return Err(parse_err(size_line, format!("declared {nnz} entries, found {count}")));
    }
    Ok(SymmetricMatrix::from_symmetric_unchecked(m))
}

/// Lower-triangle nonzeros, 1-based, values with 17 significant digits.
pub fn format_matrix_market(a: &SymmetricMatrix) -> String {
    let n = a.n();
    let entries: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|j| (j..n).map(move |i| (i, j)))
        .map(|(i, j)| (i, j, a.get(i, j)))
        .filter(|&(_, _, v)| v != 0.0)
        .collect();
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    let _ = writeln!(out, "{n} {n} {}", entries.len());
    for (i, j, v) in entries {
        let _ = writeln!(out, "{} {} {:.16e}", i + 1, j + 1, v);
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<SymmetricMatrix> {
    parse_matrix_market(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, a: &SymmetricMatrix) -> Result<()> {
    std::fs::write(path, format_matrix_market(a))?;
    Ok(())
}

/// Dense `array real general` layout, column-major.
pub fn format_dense_array(m: &Matrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let _ = writeln!(out, "{:.16e}", m[(i, j)]);
        }
    }
    out
}

pub fn parse_dense_array(text: &str) -> Result<Matrix> {
    let h = header_tokens(text)?;
    if h[2] != "array" || h[3] != "real" || h[4] != "general" {
        return Err(parse_err(1, "expected `array real general`"));
    }
    let mut lines = content_lines(text);
    let (size_line, size) = lines.next().ok_or_else(|| parse_err(1, "missing size line"))?;
    let mut tok = size.split_whitespace();
    let rows: usize = parse_field(tok.next(), size_line, "row count")?;
    let cols: usize = parse_field(tok.next(), size_line, "column count")?;
    let mut m = Matrix::zeros(rows, cols);
    let mut count = 0;
    for (ln, l) in lines {
        if count == rows * cols {
            return Err(parse_err(ln, "more values than declared"));
        }
        m[(count % rows, count / rows)] = parse_field(Some(l), ln, "value")?;
        count += 1;
    }
    if count != rows * cols {
        return Err(parse_err(size_line, format!("declared {} values, found {count}", rows * cols)));
    }
    Ok(m)
}

pub fn write_dense_array(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    std::fs::write(path, format_dense_array(m))?;
    Ok(())
}

pub fn read_dense_array(path: impl AsRef<Path>) -> Result<Matrix> {
    parse_dense_array(&std::fs::read_to_string(path)?)
}
