//! Random instance generators and dense-matrix checks shared by the
//! integration and acceptance suites.

#![allow(dead_code)]

use ncf_core::grouping::quad_compatible;
use ncf_core::oracle::{clifford_unitary, pauli_matrix, DenseUnitary};
use ncf_core::pauli::{Pauli, PauliString, PauliTerm, Sign, Tableau};
use ncf_core::{CliffordCircuit, CliffordGate};
use rand::Rng;

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    let mut p = PauliString::identity(n);
    for q in 0..n {
        p.set(q, Pauli::from_bits(rng.gen(), rng.gen()));
    }
    p
}

pub fn random_non_identity<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    loop {
        let p = random_pauli(rng, n);
        if !p.is_identity() {
            return p;
        }
    }
}

pub fn random_term<R: Rng>(rng: &mut R, n: usize, id: usize) -> PauliTerm {
    let mut t = PauliTerm::new(random_pauli(rng, n), rng.gen_range(-2.0..2.0), id);
    if rng.gen() {
        t.sign = Sign::Minus;
    }
    t
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> CliffordGate {
    let q = rng.gen_range(0..n);
    match rng.gen_range(0..if n > 1 { 4 } else { 3 }) {
        0 => CliffordGate::H(q),
        1 => CliffordGate::S(q),
        2 => CliffordGate::Sdg(q),
        _ => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            CliffordGate::Cx(q, t)
        }
    }
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> CliffordCircuit {
    let len = rng.gen_range(0..=max_len);
    let gates = (0..len).map(|_| random_gate(rng, n)).collect();
    CliffordCircuit::from_gates(n, gates).unwrap()
}

/// Hamiltonian-style terms: positive sign, random angle, ids in order.
pub fn random_hamiltonian<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<PauliTerm> {
    (0..m)
        .map(|i| PauliTerm::new(random_pauli(rng, n), rng.gen_range(-1.5..1.5), i))
        .collect()
}

/// Random anticommuting pair of `n`-qubit strings.
pub fn random_anticommuting_pair<R: Rng>(rng: &mut R, n: usize) -> (PauliString, PauliString) {
    loop {
        let a = random_non_identity(rng, n);
        let b = random_non_identity(rng, n);
        if !a.commutes_with(&b) {
            return (a, b);
        }
    }
}

fn independent(rows: &[PauliString]) -> bool {
    let mut basis = ncf_core::gf2::Gf2Basis::new();
    rows.iter().all(|p| basis.insert(p).is_some())
}

/// Random independent `(Pa, Pb, Pc, Pd)` with `Pa`, `Pb` anticommuting that
/// passes the quad predicate.
pub fn random_compatible_quad<R: Rng>(rng: &mut R, n: usize) -> [PauliString; 4] {
    loop {
        let (a, b) = random_anticommuting_pair(rng, n);
        let c = random_non_identity(rng, n);
        let d = random_non_identity(rng, n);
        let anti = |x: &PauliString, y: &PauliString| !x.commutes_with(y);
        let rel = [anti(&a, &c), anti(&b, &c), anti(&a, &d), anti(&b, &d)];
        let quad = [a, b, c, d];
        if independent(&quad) && quad_compatible(rel, anti(&quad[2], &quad[3])) {
            return quad;
        }
    }
}

pub fn tableau(rows: &[PauliString]) -> Tableau {
    let terms = rows
        .iter()
        .enumerate()
        .map(|(i, p)| PauliTerm::new(p.clone(), 1.0, i))
        .collect();
    Tableau::from_rows(terms).unwrap()
}

/// Dense `C·M(P)·C†`.
pub fn dense_conjugate(c: &CliffordCircuit, p: &PauliTerm) -> DenseUnitary {
    let u = clifford_unitary(c).unwrap();
    u.matmul(&pauli_matrix(p).unwrap())
        .unwrap()
        .matmul(&u.adjoint())
        .unwrap()
}

/// Tableau conjugation of `p` by `c` matches the dense conjugation exactly.
pub fn conjugation_matches_dense(c: &CliffordCircuit, p: &PauliTerm, tol: f64) -> bool {
    let mut t = Tableau::from_rows(vec![p.clone()]).unwrap();
    t.apply_circuit(c).unwrap();
    let tableau_side = pauli_matrix(&t.rows()[0]).unwrap();
    dense_conjugate(c, p).distance(&tableau_side) <= tol
}
