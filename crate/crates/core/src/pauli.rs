//! Pauli strings in packed symplectic form, signed Hamiltonian terms and
//! tableau conjugation under H, S, S† and CNOT.
//!
//! Qubit `i` lives in bit `i % 64` of word `i / 64` of both the X part and
//! the Z part. `x = z = 1` encodes the Hermitian Y matrix, so a stored term
//! is always `±P` with `P` Hermitian; imaginary phases only show up as the
//! separate exponent returned by [`multiply`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordCircuit, CliffordGate};
use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(ch: char) -> Option<Self> {
        match ch {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Unsigned Pauli string on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
        }
    }

    /// Parses letters `I`, `X`, `Y`, `Z`; qubit 0 is the first character.
    pub fn from_letters(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyPauli);
        }
        let n = text.chars().count();
        let mut p = Self::identity(n);
        for (position, ch) in text.chars().enumerate() {
            let op = Pauli::from_letter(ch).ok_or(Error::InvalidPauli { position, ch })?;
            p.set(position, op);
        }
        Ok(p)
    }

    /// Builds an `n`-qubit string from `(qubit, op)` pairs.
    pub fn from_sparse(n: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &(q, op) in ops {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            p.set(q, op);
        }
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn set_x(&mut self, q: usize, v: bool) {
        let mask = 1u64 << (q % WORD);
        if v {
            self.x[q / WORD] |= mask;
        } else {
            self.x[q / WORD] &= !mask;
        }
    }

    pub fn set_z(&mut self, q: usize, v: bool) {
        let mask = 1u64 << (q % WORD);
        if v {
            self.z[q / WORD] |= mask;
        } else {
            self.z[q / WORD] &= !mask;
        }
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn set(&mut self, q: usize, op: Pauli) {
        let (x, z) = op.bits();
        self.set_x(q, x);
        self.set_z(q, z);
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of non-identity positions.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Number of set bits across both the X and Z parts.
    pub fn ones(&self) -> usize {
        self.x
            .iter()
            .chain(&self.z)
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Qubits on which the string acts non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    /// Symplectic commutation test. Both strings must have the same width.
    pub fn commutes_with(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        parity & 1 == 0
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Exponent `k` such that `self · other = i^k · (self ⊕ other)` as matrices.
    pub fn product_phase(&self, other: &Self) -> u8 {
        let mut k: i64 = 0;
        for q in 0..self.n {
            let (x1, z1) = (self.x_bit(q) as i64, self.z_bit(q) as i64);
            let (x2, z2) = (other.x_bit(q) as i64, other.z_bit(q) as i64);
            k += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                _ => x2 * (1 - 2 * z2),
            };
        }
        k.rem_euclid(4) as u8
    }

    /// Restriction of the string to `qubits`, in the given order.
    pub fn restrict(&self, qubits: &[usize]) -> Vec<Pauli> {
        qubits.iter().map(|&q| self.get(q)).collect()
    }

    /// Applies `g` in place and reports whether the sign flips.
    pub(crate) fn conjugate_in_place(&mut self, g: CliffordGate) -> bool {
        match g {
            CliffordGate::H(q) => {
                let (x, z) = (self.x_bit(q), self.z_bit(q));
                self.set_x(q, z);
                self.set_z(q, x);
                x && z
            }
            CliffordGate::S(q) => {
                let (x, z) = (self.x_bit(q), self.z_bit(q));
                self.set_z(q, z ^ x);
                x && z
            }
            CliffordGate::Sdg(q) => {
                let (x, z) = (self.x_bit(q), self.z_bit(q));
                self.set_z(q, z ^ x);
                x && !z
            }
            CliffordGate::Cx(c, t) => {
                let (xc, zc) = (self.x_bit(c), self.z_bit(c));
                let (xt, zt) = (self.x_bit(t), self.z_bit(t));
                self.set_x(t, xt ^ xc);
                self.set_z(c, zc ^ zt);
                xc && zt && !(xt ^ zc)
            }
        }
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_letters(s)
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn flipped_if(self, cond: bool) -> Self {
        if cond {
            self.flip()
        } else {
            self
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One Hamiltonian term `exp(-i·angle/2·sign·P)` with its index in the source list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub pauli: PauliString,
    pub sign: Sign,
    pub angle: f64,
    pub id: usize,
}

impl PauliTerm {
    pub fn new(pauli: PauliString, angle: f64, id: usize) -> Self {
        Self {
            pauli,
            sign: Sign::Plus,
            angle,
            id,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.pauli.num_qubits()
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn conjugate(&mut self, g: CliffordGate) {
        let flip = self.pauli.conjugate_in_place(g);
        self.sign = self.sign.flipped_if(flip);
    }
}

/// Parses a term; the rotation angle is `2·coefficient·dt`.
pub fn parse_pauli(text: &str, coefficient: f64, dt: f64) -> Result<PauliTerm> {
    let pauli = PauliString::from_letters(text)?;
    Ok(PauliTerm::new(pauli, 2.0 * coefficient * dt, 0))
}

fn check_dims(p: &PauliTerm, q: &PauliTerm) -> Result<()> {
    if p.num_qubits() != q.num_qubits() {
        return Err(Error::Dimension {
            expected: p.num_qubits(),
            found: q.num_qubits(),
        });
    }
    Ok(())
}

pub fn commutes(p: &PauliTerm, q: &PauliTerm) -> Result<bool> {
    check_dims(p, q)?;
    Ok(p.pauli.commutes_with(&q.pauli))
}

/// Product `p·q = i^k · (±R)`.
///
/// The returned exponent `k` is the full phase, signs of both operands
/// included. The returned term carries `R` with sign `−` when `k ∈ {2, 3}`,
/// so `p·q` equals the term itself for even `k` and `i` times the term for
/// odd `k`. Angle is zero and the id is taken from `p`.
pub fn multiply(p: &PauliTerm, q: &PauliTerm) -> Result<(PauliTerm, u8)> {
    check_dims(p, q)?;
    let mut k = p.pauli.product_phase(&q.pauli);
    if p.sign.is_negative() {
        k += 2;
    }
    if q.sign.is_negative() {
        k += 2;
    }
    k %= 4;
    let term = PauliTerm {
        pauli: p.pauli.xor(&q.pauli),
        sign: if k >= 2 { Sign::Minus } else { Sign::Plus },
        angle: 0.0,
        id: p.id,
    };
    Ok((term, k))
}

/// Ordered rows of equal width, conjugated column-wise.
#[derive(Clone, Debug, PartialEq)]
pub struct Tableau {
    n: usize,
    rows: Vec<PauliTerm>,
}

impl Tableau {
    pub fn new(n: usize, rows: Vec<PauliTerm>) -> Result<Self> {
        for r in &rows {
            if r.num_qubits() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: r.num_qubits(),
                });
            }
        }
        Ok(Self { n, rows })
    }

    /// Takes the width from the first row; empty input is rejected.
    pub fn from_rows(rows: Vec<PauliTerm>) -> Result<Self> {
        let n = rows
            .first()
            .map(PauliTerm::num_qubits)
            .ok_or(Error::EmptyPauli)?;
        Self::new(n, rows)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliTerm] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<PauliTerm> {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Total number of ones in the X and Z blocks.
    pub fn ones(&self) -> usize {
        self.rows.iter().map(|r| r.pauli.ones()).sum()
    }

    pub fn apply_gate(&mut self, g: CliffordGate) -> Result<()> {
        g.validate(self.n)?;
        for r in &mut self.rows {
            r.conjugate(g);
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, c: &CliffordCircuit) -> Result<()> {
        if c.num_qubits() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: c.num_qubits(),
            });
        }
        for &g in c.gates() {
            self.apply_gate(g)?;
        }
        Ok(())
    }
}

/// Returns the tableau with every row replaced by `g·P·g†`.
pub fn conjugate_gate(t: &Tableau, g: CliffordGate) -> Result<Tableau> {
    let mut out = t.clone();
    out.apply_gate(g)?;
    Ok(out)
}
