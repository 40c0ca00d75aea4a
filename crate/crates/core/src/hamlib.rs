//! Lattice benchmark generators and the plain-text term file format.
//!
//! A term file holds one `<coefficient> <letters>` pair per line; blank
//! lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tracing::warn;

use crate::error::{Error, Result};
use crate::pauli::{parse_pauli, Pauli, PauliString, PauliTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Ising,
    Heisenberg,
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ising" => Ok(Model::Ising),
            "heisenberg" => Ok(Model::Heisenberg),
            other => Err(Error::Config(format!("unknown model {other:?}"))),
        }
    }
}

/// Open-boundary nearest-neighbour lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub dims: Vec<usize>,
    pub model: Model,
    pub coupling: f64,
    pub field: f64,
    pub dt: f64,
}

impl LatticeSpec {
    pub fn new(model: Model, dims: &[usize]) -> Result<Self> {
        let spec = Self {
            dims: dims.to_vec(),
            model,
            coupling: 1.0,
            field: 1.0,
            dt: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.dims.len()) {
            return Err(Error::Lattice(format!(
                "expected 2 or 3 dimensions, got {}",
                self.dims.len()
            )));
        }
        if self.dims.contains(&0) {
            return Err(Error::Lattice("every dimension must be at least 1".into()));
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.dims.iter().product()
    }

    /// Nearest-neighbour pairs: sites in row-major order (last axis fastest),
    /// each site's `+axis` neighbours in axis order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let d = &self.dims;
        let mut strides = vec![1; d.len()];
        for k in (0..d.len() - 1).rev() {
            strides[k] = strides[k + 1] * d[k + 1];
        }
        let mut edges = Vec::new();
        for site in 0..self.num_qubits() {
            for (axis, &stride) in strides.iter().enumerate() {
                let coord = site / stride % d[axis];
                if coord + 1 < d[axis] {
                    edges.push((site, site + stride));
                }
            }
        }
        edges
    }
}

/// Parses `AxB` or `AxBxC`.
pub fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let dims = text
        .split(['x', 'X'])
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Lattice(format!("bad dimension {s:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeSpec::new(Model::Ising, &dims)?;
    Ok(dims)
}

fn push_term(out: &mut Vec<PauliTerm>, n: usize, ops: &[(usize, Pauli)], angle: f64) -> Result<()> {
    let p = PauliString::from_sparse(n, ops)?;
    let id = out.len();
    out.push(PauliTerm::new(p, angle, id));
    Ok(())
}

/// `ZZ` per edge, then `X` per site.
pub fn gen_ising(spec: &LatticeSpec) -> Result<Vec<PauliTerm>> {
    spec.validate()?;
    if spec.model != Model::Ising {
        return Err(Error::Lattice("spec is not an Ising model".into()));
    }
    let n = spec.num_qubits();
    let mut out = Vec::new();
    for (a, b) in spec.edges() {
        push_term(
            &mut out,
            n,
            &[(a, Pauli::Z), (b, Pauli::Z)],
            2.0 * spec.coupling * spec.dt,
        )?;
    }
    for q in 0..n {
        push_term(&mut out, n, &[(q, Pauli::X)], 2.0 * spec.field * spec.dt)?;
    }
    Ok(out)
}

/// `XX`, `YY`, `ZZ` per edge.
pub fn gen_heisenberg(spec: &LatticeSpec) -> Result<Vec<PauliTerm>> {
    spec.validate()?;
    if spec.model != Model::Heisenberg {
        return Err(Error::Lattice("spec is not a Heisenberg model".into()));
    }
    let n = spec.num_qubits();
    let angle = 2.0 * spec.coupling * spec.dt;
    let mut out = Vec::new();
    for (a, b) in spec.edges() {
        for op in [Pauli::X, Pauli::Y, Pauli::Z] {
            push_term(&mut out, n, &[(a, op), (b, op)], angle)?;
        }
    }
    Ok(out)
}

pub fn generate(spec: &LatticeSpec) -> Result<Vec<PauliTerm>> {
    match spec.model {
        Model::Ising => gen_ising(spec),
        Model::Heisenberg => gen_heisenberg(spec),
    }
}

/// Parses term-file text. Angles are `2·coefficient·dt`.
pub fn parse_terms(text: &str, dt: f64) -> Result<Vec<PauliTerm>> {
    let mut out: Vec<PauliTerm> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = |message: String| Error::MalformedLine {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(coef), Some(letters), None) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(malformed("expected `<coefficient> <pauli>`".into()));
        };
        let coef: f64 = coef
            .parse()
            .map_err(|_| malformed(format!("bad coefficient {coef:?}")))?;
        let term = parse_pauli(letters, coef, dt).map_err(|e| malformed(e.to_string()))?;
        if let Some(first) = out.first() {
            if first.num_qubits() != term.num_qubits() {
                return Err(Error::Dimension {
                    expected: first.num_qubits(),
                    found: term.num_qubits(),
                });
            }
        }
        let id = out.len();
        out.push(term.with_id(id));
    }
    Ok(out)
}

pub fn load_terms(path: &Path, dt: f64) -> Result<Vec<PauliTerm>> {
    let text = std::fs::read_to_string(path)?;
    let terms = parse_terms(&text, dt)?;
    if terms.is_empty() {
        warn!(path = %path.display(), "term file holds no terms");
    }
    Ok(terms)
}

/// Inverse of [`parse_terms`] at the same `dt`.
pub fn format_terms(terms: &[PauliTerm], dt: f64) -> String {
    let mut out = String::new();
    for t in terms {
        let coef = t.sign.value() * t.angle / (2.0 * dt);
        let _ = writeln!(out, "{coef} {}", t.pauli);
    }
    out
}

pub fn write_terms(path: &Path, terms: &[PauliTerm], dt: f64) -> Result<()> {
    std::fs::write(path, format_terms(terms, dt))?;
    Ok(())
}
