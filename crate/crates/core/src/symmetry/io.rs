//! Text form of a [`SymOp`]:
//!
//! ```text
//! kind transpose_minus
//! label sigma_y
//! n 2
//! entry 0 1 0 -1
//! entry 1 0 0 1
//! ```
//!
//! Entries not listed are zero; `#` starts a comment.

use num_complex::Complex64 as C64;

use super::{RelationKind, SymOp, SymmetryError};
use crate::linalg::CMatrix;

fn parse_err(line: usize, message: impl Into<String>) -> SymmetryError {
    SymmetryError::Parse { line, message: message.into() }
}

pub fn parse_symop(text: &str) -> Result<SymOp, SymmetryError> {
    let mut kind = None;
    let mut label = String::new();
    let mut n: Option<usize> = None;
    let mut entries: Vec<(usize, usize, usize, C64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let key = fields.next().unwrap_or("");
        let rest: Vec<&str> = fields.collect();
        match key {
            "kind" => {
                let tag = rest.first().ok_or_else(|| parse_err(line_no, "kind: missing value"))?;
                kind = Some(tag.parse::<RelationKind>().map_err(|e| parse_err(line_no, format!("kind: {e}")))?);
            }
            "label" => label = rest.join(" "),
            "n" => {
                let v = rest.first().ok_or_else(|| parse_err(line_no, "n: missing value"))?;
                n = Some(v.parse().map_err(|_| parse_err(line_no, format!("n: '{v}' is not an integer")))?);
            }
            "entry" => {
                if rest.len() != 4 {
                    return Err(parse_err(line_no, "entry: expected 'entry i j re im'"));
                }
                let i: usize = rest[0].parse().map_err(|_| parse_err(line_no, "entry: bad row index"))?;
                let j: usize = rest[1].parse().map_err(|_| parse_err(line_no, "entry: bad column index"))?;
                let re: f64 = rest[2].parse().map_err(|_| parse_err(line_no, "entry: bad real part"))?;
                let im: f64 = rest[3].parse().map_err(|_| parse_err(line_no, "entry: bad imaginary part"))?;
                entries.push((line_no, i, j, C64::new(re, im)));
            }
            other => return Err(parse_err(line_no, format!("unknown key '{other}'"))),
        }
    }
    let kind = kind.ok_or_else(|| parse_err(0, "missing 'kind'"))?;
    let n = n.ok_or_else(|| parse_err(0, "missing 'n'"))?;
    let mut m = CMatrix::zeros(n, n);
    for (line_no, i, j, v) in entries {
        if i >= n || j >= n {
            return Err(parse_err(line_no, format!("entry ({i}, {j}) out of range for n = {n}")));
        }
        m[(i, j)] = v;
    }
    Ok(SymOp::new(kind, m, label))
}

pub fn symop_to_string(op: &SymOp) -> String {
    let n = op.matrix.rows();
    let mut out = format!("kind {}\n", op.kind.tag());
    if !op.label.is_empty() {
        out.push_str(&format!("label {}\n", op.label.replace('\n', " ")));
    }
    out.push_str(&format!("n {n}\n"));
    for i in 0..n {
        for j in 0..n {
            let v = op.matrix[(i, j)];
            if v != C64::new(0.0, 0.0) {
                out.push_str(&format!("entry {i} {j} {:.16e} {:.16e}\n", v.re, v.im));
            }
        }
    }
    out
}
