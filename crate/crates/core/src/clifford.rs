//! Clifford gates and circuits over {H, S, S†, CNOT}.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    /// `Cx(control, target)`.
    Cx(usize, usize),
}

impl CliffordGate {
    pub fn inverse(self) -> Self {
        match self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    pub fn qubits(self) -> Vec<usize> {
        match self {
            CliffordGate::H(q) | CliffordGate::S(q) | CliffordGate::Sdg(q) => vec![q],
            CliffordGate::Cx(c, t) => vec![c, t],
        }
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, CliffordGate::Cx(..))
    }

    pub fn validate(self, n: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
        }
        if let CliffordGate::Cx(c, t) = self {
            if c == t {
                return Err(Error::DegenerateCnot(c));
            }
        }
        Ok(())
    }

    pub fn qasm_name(self) -> &'static str {
        match self {
            CliffordGate::H(_) => "h",
            CliffordGate::S(_) => "s",
            CliffordGate::Sdg(_) => "sdg",
            CliffordGate::Cx(..) => "cx",
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordGate::Cx(c, t) => write!(f, "cx q[{c}],q[{t}];"),
            g => write!(f, "{} q[{}];", g.qasm_name(), g.qubits()[0]),
        }
    }
}

/// Gates in time order: the first gate acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<CliffordGate>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<CliffordGate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[CliffordGate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: CliffordGate) -> Result<()> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, other: &CliffordCircuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Reversed order with S and S† exchanged.
    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            gates: self.gates.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Qubits touched by at least one gate.
    pub fn qubits(&self) -> BTreeSet<usize> {
        self.gates.iter().flat_map(|g| g.qubits()).collect()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    pub fn single_qubit_count(&self) -> usize {
        self.len() - self.cnot_count()
    }

    /// Removes the gate at `index`. Used to build negative controls.
    pub fn remove(&mut self, index: usize) -> CliffordGate {
        self.gates.remove(index)
    }
}
