use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use super::{gamma, xi, CliffordError, INDICES};
use crate::linalg::CMatrix;

/// Canonical product of distinct gamma matrices, indices strictly ascending
/// (`5` sorts last). The empty product is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaLabel {
    indices: Vec<u8>,
}

impl GammaLabel {
    pub fn identity() -> Self {
        GammaLabel { indices: Vec::new() }
    }

    pub fn single(mu: u8) -> Result<Self, CliffordError> {
        Self::canonical(&[mu]).map(|(l, _)| l)
    }

    /// Canonical label of an already ascending product; rejects anything
    /// that is not in normal form.
    pub fn from_sorted(indices: &[u8]) -> Result<Self, CliffordError> {
        let (label, sign) = Self::canonical(indices)?;
        if sign != 1.0 || label.indices != indices {
            return Err(CliffordError::MalformedLabel(format!("{indices:?} is not in canonical order")));
        }
        Ok(label)
    }

    /// Reduces an arbitrary ordered product `γ^{i1} γ^{i2} …` to canonical
    /// form, returning the label and the accumulated sign.
    ///
    /// Adjacent distinct factors anticommute; a repeated factor squares to
    /// `ξ^μ`.
    pub fn canonical(indices: &[u8]) -> Result<(Self, f64), CliffordError> {
        if let Some(bad) = indices.iter().find(|i| !INDICES.contains(i)) {
            return Err(CliffordError::MalformedLabel(format!("unknown gamma index {bad}")));
        }
        let mut v = indices.to_vec();
        let mut sign = 1.0;
        // Bubble sort so each adjacent transposition contributes one sign flip.
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < v.len() {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    sign = -sign;
                    changed = true;
                    i += 1;
                } else if v[i] == v[i + 1] {
                    sign *= xi(v[i]);
                    v.drain(i..i + 2);
                    changed = true;
                } else {
                    i += 1;
                }
            }
            if !changed {
                break;
            }
        }
        Ok((GammaLabel { indices: v }, sign))
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn is_identity(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn matrix(&self) -> CMatrix {
        gamma(self)
    }
}

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return write!(f, "I");
        }
        let parts: Vec<String> = self.indices.iter().map(|i| format!("g{i}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Linear combination of gamma products, at most one term per label.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GammaExpr {
    terms: Vec<(GammaLabel, C64)>,
}

impl GammaExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(label: GammaLabel, coeff: C64) -> Self {
        let mut e = Self::new();
        e.push(label, coeff);
        e
    }

    /// Adds `coeff · label`, merging with an existing term of the same label.
    pub fn push(&mut self, label: GammaLabel, coeff: C64) {
        if let Some((_, c)) = self.terms.iter_mut().find(|(l, _)| *l == label) {
            *c += coeff;
        } else {
            self.terms.push((label, coeff));
        }
    }

    /// Adds `coeff · γ^{i1} γ^{i2} …` for an arbitrary ordered product.
    pub fn push_product(&mut self, indices: &[u8], coeff: C64) -> Result<(), CliffordError> {
        let (label, sign) = GammaLabel::canonical(indices)?;
        self.push(label, coeff * sign);
        Ok(())
    }

    pub fn with(mut self, indices: &[u8], coeff: C64) -> Result<Self, CliffordError> {
        self.push_product(indices, coeff)?;
        Ok(self)
    }

    pub fn terms(&self) -> &[(GammaLabel, C64)] {
        &self.terms
    }

    pub fn coefficient(&self, label: &GammaLabel) -> C64 {
        self.terms.iter().find(|(l, _)| l == label).map_or(C64::new(0.0, 0.0), |(_, c)| *c)
    }

    /// Drops terms with `|coeff| ≤ tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        GammaExpr { terms: self.terms.iter().filter(|(_, c)| c.norm() > tol).cloned().collect() }
    }

    pub fn to_matrix(&self) -> CMatrix {
        self.terms.iter().fold(CMatrix::zeros(4, 4), |acc, (l, c)| &acc + &gamma(l).scale(*c))
    }
}

/// Σ coefficient · matrix(label).
pub fn expr_to_matrix(e: &GammaExpr) -> CMatrix {
    e.to_matrix()
}

fn fmt_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}i)", z.re, sign, z.im.abs())
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (label, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", fmt_complex(*c), label)?;
        }
        Ok(())
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (whitespace ignored).
pub fn parse_complex(s: &str) -> Result<C64, CliffordError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || CliffordError::Parse(format!("invalid complex number '{s}'"));
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| err());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() { 0.0 } else { re_part.parse::<f64>().map_err(|_| err())? };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| err())?,
    };
    Ok(C64::new(re, im))
}

/// Splits at top-level `+`/`-` signs, keeping each sign with its term.
fn split_terms(s: &str) -> Result<Vec<(f64, String)>, CliffordError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut sign = 1.0;
    let mut prev: Option<char> = None;
    let mut dangling_sign = false;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(CliffordError::Parse("unbalanced ')'".into()));
                }
            }
            _ => {}
        }
        let exponent_sign = matches!(prev, Some('e' | 'E')) && current.chars().any(|c| c.is_ascii_digit());
        if depth == 0 && (ch == '+' || ch == '-') && !exponent_sign {
            if current.trim().is_empty() {
                if dangling_sign {
                    return Err(CliffordError::Parse("consecutive signs".into()));
                }
            } else {
                out.push((sign, current.trim().to_string()));
            }
            sign = if ch == '-' { -1.0 } else { 1.0 };
            current.clear();
            dangling_sign = true;
        } else {
            current.push(ch);
            if !ch.is_whitespace() {
                dangling_sign = false;
            }
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if depth != 0 {
        return Err(CliffordError::Parse("unbalanced '('".into()));
    }
    if current.trim().is_empty() {
        return Err(CliffordError::Parse("dangling sign or empty expression".into()));
    }
    out.push((sign, current.trim().to_string()));
    Ok(out)
}

impl FromStr for GammaExpr {
    type Err = CliffordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut expr = GammaExpr::new();
        for (sign, term) in split_terms(s)? {
            let mut coeff = C64::new(sign, 0.0);
            let mut indices = Vec::new();
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(CliffordError::Parse(format!("empty factor in '{term}'")));
                }
                if let Some(inner) = factor.strip_prefix('(').and_then(|f| f.strip_suffix(')')) {
                    coeff *= parse_complex(inner)?;
                } else if let Some(idx) = factor.strip_prefix('g') {
                    let mu: u8 = idx
                        .parse()
                        .map_err(|_| CliffordError::Parse(format!("bad gamma factor '{factor}'")))?;
                    indices.push(mu);
                } else if factor == "I" {
                    // identity factor
                } else {
                    coeff *= parse_complex(factor)?;
                }
            }
            expr.push_product(&indices, coeff)?;
        }
        Ok(expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn canonical_sign_of_reversed_pair() {
        let (l, s) = GammaLabel::canonical(&[1, 0]).unwrap();
        assert_eq!(l.indices(), &[0, 1]);
        assert_eq!(s, -1.0);
    }

    #[test]
    fn repeated_index_contracts_with_metric() {
        let (l, s) = GammaLabel::canonical(&[1, 5, 1]).unwrap();
        assert_eq!(l.indices(), &[5]);
        // γ¹γ⁵γ¹ = −γ¹γ¹γ⁵ = −ξ¹ γ⁵ = γ⁵
        assert_eq!(s, 1.0);
        let (l, s) = GammaLabel::canonical(&[0, 0]).unwrap();
        assert!(l.is_identity());
        assert_eq!(s, 1.0);
    }

    #[test]
    fn unknown_index_rejected() {
        assert!(GammaLabel::canonical(&[4]).is_err());
        assert!(GammaLabel::from_sorted(&[1, 0]).is_err());
    }

    #[test]
    fn parses_documented_form() {
        let e: GammaExpr = "(1.5+0i)*g5 + (0+0.2i)*g0*g1".parse().unwrap();
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.coefficient(&GammaLabel::single(5).unwrap()), c(1.5, 0.0));
        assert_eq!(e.coefficient(&GammaLabel::from_sorted(&[0, 1]).unwrap()), c(0.0, 0.2));
    }

    #[test]
    fn parses_bare_and_signed_terms() {
        let e: GammaExpr = "g1 - 0.5*g1*g3 - g5*g1".parse().unwrap();
        assert_eq!(e.coefficient(&GammaLabel::single(1).unwrap()), c(1.0, 0.0));
        assert_eq!(e.coefficient(&GammaLabel::from_sorted(&[1, 3]).unwrap()), c(-0.5, 0.0));
        // −γ⁵γ¹ = +γ¹γ⁵
        assert_eq!(e.coefficient(&GammaLabel::from_sorted(&[1, 5]).unwrap()), c(1.0, 0.0));
    }

    #[test]
    fn parses_exponents_and_imaginary_units() {
        assert_eq!(parse_complex("1e-3-2.5e+1i").unwrap(), c(1e-3, -25.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.2i").unwrap(), c(0.0, 0.2));
        assert_eq!(parse_complex("-3").unwrap(), c(-3.0, 0.0));
        assert!(parse_complex("1+").is_err());
    }

    #[test]
    fn rejects_malformed_expressions() {
        for bad in ["", "g4", "(1+i", "g1 +", "g1 * * g2", "h1"] {
            assert!(bad.parse::<GammaExpr>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        let e: GammaExpr = "(1.25-0.5i)*g0*g5 + (-2+0i)*g2 + (0+1i)*I".parse().unwrap();
        let back: GammaExpr = e.to_string().parse().unwrap();
        assert_eq!(e, back);
    }
}
