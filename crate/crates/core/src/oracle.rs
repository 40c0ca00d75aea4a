//! Dense complex-matrix reference for checking conjugation, reduction and
//! whole compiled programs on small instances.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
//! basis-state index. Every matrix built here follows that convention.

use num_complex::Complex64;

use crate::circuit::{CompiledProgram, RotationBlock};
use crate::clifford::{CliffordCircuit, CliffordGate};
use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliTerm};

pub const DEFAULT_CAP: usize = 12;
pub const CAP_ENV: &str = "NCF_ORACLE_CAP";

/// Qubit cap for dense matrices, overridable through `NCF_ORACLE_CAP`.
pub fn oracle_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = oracle_cap();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    Ok(())
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Row-major `2^n × 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn identity(n: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from rows; `rows.len()` must be a power of two.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if !dim.is_power_of_two() || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension {
                expected: dim.next_power_of_two(),
                found: dim,
            });
        }
        let n = dim.trailing_zeros() as usize;
        check_cap(n)?;
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        let d = self.dim();
        let mut data = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(Self { n: self.n, data })
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut data = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        Self { n: self.n, data }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius norm of `self − other`.
    pub fn distance(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Left-multiplies by a single-qubit matrix `[[a, b], [c, d]]` on `q`.
    fn apply_1q(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let d = self.dim();
        let bit = 1usize << (self.n - 1 - q);
        for r0 in (0..d).filter(|r| r & bit == 0) {
            let r1 = r0 | bit;
            for col in 0..d {
                let v0 = self.data[r0 * d + col];
                let v1 = self.data[r1 * d + col];
                self.data[r0 * d + col] = m[0][0] * v0 + m[0][1] * v1;
                self.data[r1 * d + col] = m[1][0] * v0 + m[1][1] * v1;
            }
        }
    }

    fn apply_cx(&mut self, c: usize, t: usize) {
        let d = self.dim();
        let cb = 1usize << (self.n - 1 - c);
        let tb = 1usize << (self.n - 1 - t);
        for r in (0..d).filter(|r| r & cb != 0 && r & tb == 0) {
            let s = r | tb;
            for col in 0..d {
                self.data.swap(r * d + col, s * d + col);
            }
        }
    }

    /// `self ← G · self`.
    pub fn apply_gate(&mut self, g: CliffordGate) -> Result<()> {
        g.validate(self.n)?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let hc = Complex64::new(h, 0.0);
        match g {
            CliffordGate::H(q) => self.apply_1q(q, [[hc, hc], [hc, -hc]]),
            CliffordGate::S(q) => self.apply_1q(q, [[ONE, ZERO], [ZERO, I]]),
            CliffordGate::Sdg(q) => self.apply_1q(q, [[ONE, ZERO], [ZERO, -I]]),
            CliffordGate::Cx(c, t) => self.apply_cx(c, t),
        }
        Ok(())
    }

    /// `self ← exp(−i·θ/2·P) · self` for an unsigned Pauli string `P`.
    pub fn apply_pauli_rotation(&mut self, p: &PauliString, theta: f64) -> Result<()> {
        let pm = pauli_string_matrix(p)?;
        if pm.n != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: pm.n,
            });
        }
        let rot = exp_matrix(&pm, theta);
        *self = rot.matmul(self)?;
        Ok(())
    }
}

fn single(p: crate::pauli::Pauli) -> [[Complex64; 2]; 2] {
    use crate::pauli::Pauli;
    match p {
        Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, -I], [I, ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

fn pauli_string_matrix(p: &PauliString) -> Result<DenseUnitary> {
    let n = p.num_qubits();
    check_cap(n)?;
    let dim = 1usize << n;
    // Each row of a Pauli tensor product has exactly one non-zero entry.
    let mut data = vec![ZERO; dim * dim];
    for row in 0..dim {
        let mut col = 0usize;
        let mut amp = ONE;
        for q in 0..n {
            let shift = n - 1 - q;
            let r_bit = (row >> shift) & 1;
            let m = single(p.get(q));
            let c_bit = if m[r_bit][0] != ZERO { 0 } else { 1 };
            amp *= m[r_bit][c_bit];
            col |= c_bit << shift;
        }
        data[row * dim + col] = amp;
    }
    Ok(DenseUnitary { n, data })
}

fn exp_matrix(pm: &DenseUnitary, theta: f64) -> DenseUnitary {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(theta / 2.0).sin());
    let d = pm.dim();
    let mut data: Vec<Complex64> = pm.data.iter().map(|&v| v * s).collect();
    for i in 0..d {
        data[i * d + i] += c;
    }
    DenseUnitary { n: pm.n, data }
}

/// `sign · ⊗_q σ_q`.
pub fn pauli_matrix(p: &PauliTerm) -> Result<DenseUnitary> {
    let m = pauli_string_matrix(&p.pauli)?;
    Ok(if p.sign.is_negative() {
        m.scale(-ONE)
    } else {
        m
    })
}

/// `cos(θ/2)·I − i·sin(θ/2)·M(P)`, sign of `P` included.
pub fn exp_pauli(p: &PauliTerm, theta: f64) -> Result<DenseUnitary> {
    Ok(exp_matrix(&pauli_matrix(p)?, theta))
}

pub fn clifford_unitary(c: &CliffordCircuit) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(c.num_qubits())?;
    for &g in c.gates() {
        u.apply_gate(g)?;
    }
    Ok(u)
}

/// Unitary of a fused block: its ops applied in order.
pub fn block_unitary(n: usize, block: &RotationBlock) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(n)?;
    apply_block(&mut u, block)?;
    Ok(u)
}

fn apply_block(u: &mut DenseUnitary, block: &RotationBlock) -> Result<()> {
    for op in &block.ops {
        let p = op.full_pauli(u.num_qubits(), &block.support)?;
        u.apply_pauli_rotation(&p, op.angle)?;
    }
    Ok(())
}

/// Unitary of segment `index` of a compiled program.
pub fn segment_unitary(p: &CompiledProgram, index: usize) -> Result<DenseUnitary> {
    let seg = &p.segments[index];
    let mut u = DenseUnitary::identity(p.n)?;
    for &g in seg.frame.gates() {
        u.apply_gate(g)?;
    }
    for layer in &seg.layers {
        for block in layer {
            apply_block(&mut u, block)?;
        }
    }
    for &g in seg.unframe.gates() {
        u.apply_gate(g)?;
    }
    Ok(u)
}

/// Unitary of a whole compiled program.
pub fn program_unitary(p: &CompiledProgram) -> Result<DenseUnitary> {
    let mut u = DenseUnitary::identity(p.n)?;
    for i in 0..p.segments.len() {
        u = segment_unitary(p, i)?.matmul(&u)?;
    }
    Ok(u)
}

/// Ordered product `exp(−i·θ_k/2·P_k)` with the first term acting first.
pub fn ordered_exponential<'a, I>(n: usize, terms: I) -> Result<DenseUnitary>
where
    I: IntoIterator<Item = &'a PauliTerm>,
{
    let mut u = DenseUnitary::identity(n)?;
    for t in terms {
        if t.num_qubits() != n {
            return Err(Error::Dimension {
                expected: n,
                found: t.num_qubits(),
            });
        }
        u = exp_pauli(t, t.angle)?.matmul(&u)?;
    }
    Ok(u)
}

/// True iff `‖U − φV‖_F ≤ tol` for the best unit phase `φ`.
pub fn equal_up_to_phase(u: &DenseUnitary, v: &DenseUnitary, tol: f64) -> Result<bool> {
    if u.n != v.n {
        return Err(Error::Dimension {
            expected: u.n,
            found: v.n,
        });
    }
    let overlap: Complex64 = v
        .data
        .iter()
        .zip(&u.data)
        .map(|(vv, uu)| vv.conj() * uu)
        .sum();
    let phase = if overlap.norm() > 1e-12 {
        overlap / overlap.norm()
    } else {
        // trace(V†U) vanishes; align on the largest entry of V instead.
        let (k, vk) = v
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("non-empty matrix");
        let ratio = u.data[k] / vk;
        if ratio.norm() > 1e-12 {
            ratio / ratio.norm()
        } else {
            ONE
        }
    };
    Ok(u.distance(&v.scale(phase)) <= tol)
}
