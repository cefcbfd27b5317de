//! Plain-text model files.
//!
//! ```text
//! # two-site dimer
//! name dimer
//! n_sites 2
//! flags
//! site 0 0 0 A
//! site 1 0 0 B
//! hop 0 1 1 0
//! hop 1 0 1 0
//! ```
//!
//! `site <idx> <re> <im> [A|B|-]` sets the on-site term and, optionally,
//! the sublattice; `hop <i> <j> <re> <im>` adds the directed coupling
//! `i → j`. The only flag is `non_bipartite`.

use std::fs;
use std::path::Path;

use num_complex::Complex64 as C64;

use super::{Coupling, Model, ModelError, Sublattice};

fn err(line: usize, field: &str, message: impl Into<String>) -> ModelError {
    ModelError::Parse { line, field: field.into(), message: message.into() }
}

fn num<T: std::str::FromStr>(line: usize, field: &str, s: &str) -> Result<T, ModelError> {
    s.parse().map_err(|_| err(line, field, format!("cannot parse '{s}'")))
}

pub fn model_from_str(text: &str) -> Result<Model, ModelError> {
    let mut name = String::from("model");
    let mut n_sites: Option<usize> = None;
    let mut non_bipartite = false;
    let mut sites: Vec<(usize, usize, C64, Sublattice)> = Vec::new();
    let mut hops: Vec<(usize, Coupling)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        match f[0] {
            "name" => name = f[1..].join(" "),
            "n_sites" => {
                let v = f.get(1).ok_or_else(|| err(ln, "n_sites", "missing value"))?;
                n_sites = Some(num(ln, "n_sites", v)?);
            }
            "flags" => {
                for flag in &f[1..] {
                    match *flag {
                        "non_bipartite" => non_bipartite = true,
                        other => return Err(err(ln, "flags", format!("unknown flag '{other}'"))),
                    }
                }
            }
            "site" => {
                if !(f.len() == 4 || f.len() == 5) {
                    return Err(err(ln, "site", "expected 'site <idx> <re> <im> [A|B|-]'"));
                }
                let i = num(ln, "site.idx", f[1])?;
                let v = C64::new(num(ln, "site.re", f[2])?, num(ln, "site.im", f[3])?);
                let s = match f.get(4) {
                    Some(s) => s.parse().map_err(|m: String| err(ln, "site.sublattice", m))?,
                    None => Sublattice::None,
                };
                sites.push((ln, i, v, s));
            }
            "hop" => {
                if f.len() != 5 {
                    return Err(err(ln, "hop", "expected 'hop <i> <j> <re> <im>'"));
                }
                let from = num(ln, "hop.i", f[1])?;
                let to = num(ln, "hop.j", f[2])?;
                let amplitude = C64::new(num(ln, "hop.re", f[3])?, num(ln, "hop.im", f[4])?);
                hops.push((ln, Coupling { from, to, amplitude }));
            }
            other => return Err(err(ln, other, "unknown key")),
        }
    }
    let n = n_sites.ok_or_else(|| err(0, "n_sites", "missing header"))?;
    let mut onsite = vec![C64::new(0.0, 0.0); n];
    let mut sublattice = vec![Sublattice::None; n];
    let mut seen = vec![false; n];
    for (ln, i, v, s) in sites {
        if i >= n {
            return Err(err(ln, "site.idx", format!("{i} out of range for n_sites {n}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(err(ln, "site.idx", format!("site {i} listed twice")));
        }
        onsite[i] = v;
        sublattice[i] = s;
    }
    let mut couplings = Vec::with_capacity(hops.len());
    for (k, (ln, c)) in hops.iter().enumerate() {
        for (field, idx) in [("hop.i", c.from), ("hop.j", c.to)] {
            if idx >= n {
                return Err(err(*ln, field, format!("{idx} out of range for n_sites {n}")));
            }
        }
        if hops[..k].iter().any(|(_, p)| p.from == c.from && p.to == c.to) {
            return Err(err(*ln, "hop", format!("duplicate coupling {} -> {}", c.from, c.to)));
        }
        couplings.push(*c);
    }
    let line_of = |from: usize, to: usize| hops.iter().find(|(_, c)| c.from == from && c.to == to).map_or(0, |h| h.0);
    Model::new(name, onsite, couplings, sublattice, non_bipartite).map_err(|e| match e {
        ModelError::NotBipartite { from, to, .. } | ModelError::DuplicateCoupling { from, to } => {
            err(line_of(from, to), "hop", e.to_string())
        }
        ModelError::SelfLoop { site } => err(line_of(site, site), "hop", e.to_string()),
        other => other,
    })
}

pub fn model_to_string(m: &Model) -> String {
    let mut out = format!("name {}\nn_sites {}\n", m.name, m.n_sites());
    out.push_str(if m.is_non_bipartite() { "flags non_bipartite\n" } else { "flags\n" });
    for (i, (v, s)) in m.onsite().iter().zip(m.sublattice()).enumerate() {
        out.push_str(&format!("site {i} {:.16e} {:.16e} {s}\n", v.re, v.im));
    }
    for c in m.couplings() {
        out.push_str(&format!("hop {} {} {:.16e} {:.16e}\n", c.from, c.to, c.amplitude.re, c.amplitude.im));
    }
    out
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model, ModelError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| ModelError::Io(format!("{}: {e}", path.display())))?;
    model_from_str(&text)
}

/// Writes through a sibling temporary file and renames it into place.
pub fn save_model(m: &Model, path: impl AsRef<Path>) -> Result<(), ModelError> {
    let path = path.as_ref();
    let io = |e: std::io::Error| ModelError::Io(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, model_to_string(m)).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}
