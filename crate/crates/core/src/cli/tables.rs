//! Small CSV inputs for the `wnn` command.

use crate::error::{MmfError, Result};
use crate::linalg::Matrix;

/// Labeled vertices split into training and held-out sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelSplit {
    pub train: Vec<(usize, usize)>,
    pub test: Vec<(usize, usize)>,
    pub classes: usize,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let t = tok.ok_or_else(|| MmfError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    t.trim().parse().map_err(|_| MmfError::Parse {
        line,
        message: format!("invalid {what} `{t}`"),
    })
}

/// Header `vertex,class,split`, split `train` or `test`. Every vertex must be
/// below `n` and appear once.
pub fn parse_labels_csv(text: &str, n: usize) -> Result<LabelSplit> {
    let header = text.lines().next().unwrap_or("").trim();
    if header != "vertex,class,split" {
        return Err(MmfError::Parse {
            line: 1,
            message: format!("expected header `vertex,class,split`, found `{header}`"),
        });
    }
    let mut out = LabelSplit::default();
    let mut seen = vec![false; n];
    for (line, l) in data_lines(text) {
        let mut tok = l.split(',');
        let v: usize = field(tok.next(), line, "vertex")?;
        let c: usize = field(tok.next(), line, "class")?;
        let split = tok.next().map(str::trim).unwrap_or("");
        if v >= n {
            return Err(MmfError::Parse {
                line,
                message: format!("vertex {v} outside the {n}-vertex graph"),
            });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(MmfError::Parse {
                line,
                message: format!("vertex {v} labeled twice"),
            });
        }
        match split {
            "train" => out.train.push((v, c)),
            "test" => out.test.push((v, c)),
            other => {
                return Err(MmfError::Parse {
                    line,
                    message: format!("split must be `train` or `test`, found `{other}`"),
                })
            }
        }
        out.classes = out.classes.max(c + 1);
    }
    if out.train.is_empty() {
        return Err(MmfError::InvalidParameter("no training labels".into()));
    }
    Ok(out)
}

/// Header row, then `vertex,x_0,…,x_{F−1}` for every vertex `0..n` exactly once.
pub fn parse_features_csv(text: &str, n: usize) -> Result<Matrix> {
    let mut rows: Vec<Option<Vec<f64>>> = vec![None; n];
    let mut width = None;
    for (line, l) in data_lines(text) {
        let mut tok = l.split(',');
        let v: usize = field(tok.next(), line, "vertex")?;
        let vals: Vec<f64> = tok.map(|t| field(Some(t), line, "feature")).collect::<Result<_>>()?;
        if v >= n {
            return Err(MmfError::Parse {
                line,
                message: format!("vertex {v} outside the {n}-vertex graph"),
            });
        }
        if *width.get_or_insert(vals.len()) != vals.len() || vals.is_empty() {
            return Err(MmfError::Parse {
                line,
                message: "inconsistent or empty feature row".into(),
            });
        }
        if rows[v].replace(vals).is_some() {
            return Err(MmfError::Parse {
                line,
                message: format!("vertex {v} listed twice"),
            });
        }
    }
    let f = width.ok_or_else(|| MmfError::InvalidParameter("feature file has no rows".into()))?;
    let mut m = Matrix::zeros(n, f);
    for (v, row) in rows.into_iter().enumerate() {
        let row = row.ok_or_else(|| MmfError::InvalidParameter(format!("no features for vertex {v}")))?;
        m.row_mut(v).copy_from_slice(&row);
    }
    Ok(m)
}
