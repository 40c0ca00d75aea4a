//! Clifford frame generation by tableau row reduction.
//!
//! Each row is reduced in two stages: the Z part is cleared with H (z=1, x=0)
//! and S (x=z=1), then the surviving X ones are merged by rounds of disjoint
//! CNOTs. Within a round the candidate CNOTs are ranked by the resulting
//! number of ones in the tableau, ties going to the lowest `(control, target)`.
//! The first row of a pair finishes with an H, leaving `Z` on its pivot; the
//! second row is steered onto the same pivot as `X`.

use serde::{Deserialize, Serialize};

use crate::clifford::{CliffordCircuit, CliffordGate};
use crate::error::{Error, Result};
use crate::pauli::{Pauli, Tableau};

/// Target support size for an anticommuting group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportWidth {
    One,
    Two,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjugationResult {
    pub circuit: CliffordCircuit,
    /// Input rows conjugated by `circuit`, same order.
    pub conjugated: Tableau,
    /// Sorted qubits carrying the conjugated rows.
    pub support: Vec<usize>,
    /// Pivot columns in the order they were chosen.
    pub pivots: Vec<usize>,
}

struct Reducer {
    t: Tableau,
    circuit: CliffordCircuit,
}

impl Reducer {
    fn new(t: &Tableau) -> Self {
        Self {
            circuit: CliffordCircuit::new(t.num_qubits()),
            t: t.clone(),
        }
    }

    fn apply(&mut self, g: CliffordGate) -> Result<()> {
        self.t.apply_gate(g)?;
        self.circuit.push(g)
    }

    fn op(&self, row: usize, q: usize) -> Pauli {
        self.t.rows()[row].pauli.get(q)
    }

    fn allowed(&self, excluded: &[usize]) -> Vec<usize> {
        (0..self.t.num_qubits())
            .filter(|q| !excluded.contains(q))
            .collect()
    }

    fn clear_z(&mut self, row: usize, excluded: &[usize]) -> Result<()> {
        for q in self.allowed(excluded) {
            match self.op(row, q) {
                Pauli::Z => self.apply(CliffordGate::H(q))?,
                Pauli::Y => self.apply(CliffordGate::S(q))?,
                Pauli::I | Pauli::X => {}
            }
        }
        Ok(())
    }

    /// Change in total tableau ones if `CX(c, t)` were applied now.
    fn cnot_delta(&self, c: usize, t: usize) -> isize {
        let mut delta = 0isize;
        for r in self.t.rows() {
            let p = &r.pauli;
            let (xc, xt) = (p.x_bit(c), p.x_bit(t));
            let (zc, zt) = (p.z_bit(c), p.z_bit(t));
            delta += (xt ^ xc) as isize - xt as isize;
            delta += (zc ^ zt) as isize - zc as isize;
        }
        delta
    }

    /// Merges the X ones of `row` (outside `excluded`) into one column and
    /// returns it. `keep`, if given, is never a CNOT target and survives.
    fn merge_x(&mut self, row: usize, excluded: &[usize], keep: Option<usize>) -> Result<usize> {
        let allowed = self.allowed(excluded);
        loop {
            let ones: Vec<usize> = allowed
                .iter()
                .copied()
                .filter(|&q| self.t.rows()[row].pauli.x_bit(q))
                .collect();
            match ones.len() {
                0 => {
                    return Err(Error::ReductionImpossible(format!(
                        "row {row} has no X component left to reduce"
                    )))
                }
                1 => {
                    return match keep {
                        Some(k) if k != ones[0] => Err(Error::ReductionImpossible(format!(
                            "row {row} cannot be steered onto pivot {k}"
                        ))),
                        _ => Ok(ones[0]),
                    };
                }
                _ => {}
            }
            if let Some(k) = keep {
                if !ones.contains(&k) {
                    return Err(Error::ReductionImpossible(format!(
                        "row {row} has no X component on pivot {k}"
                    )));
                }
            }
            let mut candidates = Vec::new();
            for &c in &ones {
                for &t in &ones {
                    if c != t && Some(t) != keep {
                        candidates.push((self.cnot_delta(c, t), c, t));
                    }
                }
            }
            candidates.sort_unstable();
            let mut used = vec![false; self.t.num_qubits()];
            let mut round = Vec::new();
            for (_, c, t) in candidates {
                if !used[c] && !used[t] {
                    used[c] = true;
                    used[t] = true;
                    round.push(CliffordGate::Cx(c, t));
                }
            }
            for g in round {
                self.apply(g)?;
            }
        }
    }

    fn is_identity_outside(&self, row: usize, excluded: &[usize]) -> bool {
        self.allowed(excluded)
            .into_iter()
            .all(|q| self.op(row, q) == Pauli::I)
    }

    /// Reduces `row` to `Z` on a fresh pivot outside `excluded`.
    fn reduce_first(&mut self, row: usize, excluded: &[usize]) -> Result<usize> {
        if self.is_identity_outside(row, excluded) {
            return Err(Error::ReductionImpossible(format!(
                "row {row} is trivial outside columns {excluded:?}"
            )));
        }
        let live: Vec<usize> = self
            .allowed(excluded)
            .into_iter()
            .filter(|&q| self.op(row, q) != Pauli::I)
            .collect();
        if let [q] = live[..] {
            if self.op(row, q) == Pauli::Z {
                return Ok(q);
            }
        }
        self.clear_z(row, excluded)?;
        let pivot = self.merge_x(row, excluded, None)?;
        self.apply(CliffordGate::H(pivot))?;
        Ok(pivot)
    }

    /// Reduces `row` to `X` on `pivot`, which already holds `Z` for the
    /// partner row.
    fn reduce_partner(&mut self, row: usize, pivot: usize, excluded: &[usize]) -> Result<()> {
        if !self.t.rows()[row].pauli.x_bit(pivot) {
            return Err(Error::ReductionImpossible(format!(
                "row {row} commutes with its partner on pivot {pivot}"
            )));
        }
        self.clear_z(row, excluded)?;
        self.merge_x(row, excluded, Some(pivot))?;
        Ok(())
    }

    fn finish(self, pivots: Vec<usize>) -> ConjugationResult {
        let mut support = pivots.clone();
        support.sort_unstable();
        ConjugationResult {
            circuit: self.circuit,
            conjugated: self.t,
            support,
            pivots,
        }
    }
}

/// Conjugates an anticommuting pair onto one qubit, or a pair plus one or
/// two further generators onto two qubits.
///
/// Rows are `(Pa, Pb)` for [`SupportWidth::One`] and `(Pa, Pb, Pc[, Pd])`
/// for [`SupportWidth::Two`].
pub fn reduce_anticommuting(gens: &Tableau, width: SupportWidth) -> Result<ConjugationResult> {
    let rows = gens.len();
    match (width, rows) {
        (SupportWidth::One, 2) | (SupportWidth::Two, 3) | (SupportWidth::Two, 4) => {}
        _ => {
            return Err(Error::ReductionImpossible(format!(
                "{rows} generator rows cannot be reduced with width {width:?}"
            )))
        }
    }
    let mut r = Reducer::new(gens);
    if width == SupportWidth::One {
        if let Some(q) = shared_single_qubit(gens) {
            return Ok(r.finish(vec![q]));
        }
    }
    let p1 = r.reduce_first(0, &[])?;
    r.reduce_partner(1, p1, &[])?;
    if width == SupportWidth::One {
        return Ok(r.finish(vec![p1]));
    }
    let p2 = r.reduce_first(2, &[p1])?;
    if rows == 4 {
        r.reduce_partner(3, p2, &[p1])?;
    }
    Ok(r.finish(vec![p1, p2]))
}

/// Column `q` if every row already acts only on `q` and the first two
/// rows anticommute there.
fn shared_single_qubit(t: &Tableau) -> Option<usize> {
    let rows = t.rows();
    let q = *rows.first()?.pauli.support().first()?;
    let on_q = rows.iter().all(|r| r.pauli.support() == [q]);
    (on_q && rows.len() >= 2 && !rows[0].pauli.commutes_with(&rows[1].pauli)).then_some(q)
}

/// Conjugates mutually commuting independent rows onto `Z` on distinct qubits.
pub fn reduce_commuting(rows: &Tableau) -> Result<ConjugationResult> {
    let mut r = Reducer::new(rows);
    let mut pivots: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        if let Some(&p) = pivots.iter().find(|&&p| r.t.rows()[i].pauli.x_bit(p)) {
            return Err(Error::ReductionImpossible(format!(
                "row {i} anticommutes with the row pivoted on {p}"
            )));
        }
        let pivot = r.reduce_first(i, &pivots)?;
        for &p in &pivots {
            if r.t.rows()[i].pauli.z_bit(p) {
                r.apply(CliffordGate::Cx(p, pivot))?;
            }
        }
        pivots.push(pivot);
    }
    Ok(r.finish(pivots))
}

/// Conjugates every member of a group and checks it stays on `support`.
pub fn conjugate_members(
    members: &Tableau,
    circuit: &CliffordCircuit,
    support: &[usize],
) -> Result<Tableau> {
    let mut t = members.clone();
    t.apply_circuit(circuit)?;
    for row in t.rows() {
        if row.pauli.support().iter().any(|q| !support.contains(q)) {
            return Err(Error::SupportViolation { id: row.id });
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{parse_pauli, PauliTerm};

    fn tab(rows: &[&str]) -> Tableau {
        let rows: Vec<PauliTerm> = rows
            .iter()
            .enumerate()
            .map(|(i, s)| parse_pauli(s, 1.0, 1.0).unwrap().with_id(i))
            .collect();
        Tableau::from_rows(rows).unwrap()
    }

    fn letters(t: &Tableau) -> Vec<String> {
        t.rows().iter().map(|r| r.pauli.to_string()).collect()
    }

    #[test]
    fn reduced_pair_needs_no_gates() {
        for rows in [["Z", "X"], ["X", "Z"], ["Y", "Z"]] {
            let r = reduce_anticommuting(&tab(&rows), SupportWidth::One).unwrap();
            assert!(r.circuit.is_empty());
            assert_eq!(r.support, vec![0]);
            assert_eq!(letters(&r.conjugated), rows);
        }
        let r = reduce_anticommuting(&tab(&["IZI", "IXI"]), SupportWidth::One).unwrap();
        assert!(r.circuit.is_empty());
        assert_eq!(r.pivots, vec![1]);
    }

    #[test]
    fn xx_zi_pair() {
        let r = reduce_anticommuting(&tab(&["XX", "ZI"]), SupportWidth::One).unwrap();
        assert_eq!(
            r.circuit.gates(),
            &[CliffordGate::Cx(0, 1), CliffordGate::H(0)]
        );
        assert_eq!(letters(&r.conjugated), ["ZI", "XI"]);
        assert_eq!(r.support, vec![0]);
    }

    #[test]
    fn commuting_pair_is_rejected_as_anticommuting() {
        assert!(matches!(
            reduce_anticommuting(&tab(&["XX", "ZZ"]), SupportWidth::One),
            Err(Error::ReductionImpossible(_))
        ));
        assert!(matches!(
            reduce_anticommuting(&tab(&["XX", "ZI", "IZ"]), SupportWidth::One),
            Err(Error::ReductionImpossible(_))
        ));
    }

    #[test]
    fn commuting_examples() {
        let r = reduce_commuting(&tab(&["ZI", "IZ"])).unwrap();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(letters(&r.conjugated), ["ZI", "IZ"]);

        let r = reduce_commuting(&tab(&["ZZ"])).unwrap();
        assert_eq!(r.circuit.cnot_count(), 1);
        assert_eq!(r.conjugated.rows()[0].pauli.weight(), 1);

        let r = reduce_commuting(&tab(&["XX", "IZ"])).unwrap_err();
        assert!(matches!(r, Error::ReductionImpossible(_)));

        let r = reduce_commuting(&tab(&["XX", "ZZ"])).unwrap();
        assert_eq!(r.pivots.len(), 2);
        assert_ne!(r.pivots[0], r.pivots[1]);
        for (row, &p) in r.conjugated.rows().iter().zip(&r.pivots) {
            assert_eq!(row.pauli.support(), vec![p]);
        }
    }

    #[test]
    fn dependent_commuting_rows_fail() {
        assert!(reduce_commuting(&tab(&["ZZ", "ZI", "IZ"])).is_err());
        assert!(reduce_commuting(&tab(&["XY", "XY"])).is_err());
    }

    #[test]
    fn members_stay_on_support() {
        let gens = tab(&["XXI", "ZIY"]);
        let r = reduce_anticommuting(&gens, SupportWidth::One).unwrap();
        let members = tab(&["XXI", "ZIY", "YXY"]);
        let t = conjugate_members(&members, &r.circuit, &r.support).unwrap();
        assert!(t.rows().iter().all(|row| row.pauli.weight() == 1));

        let outsider = tab(&["IIZ"]);
        if !r.support.contains(&2) {
            let err = conjugate_members(&outsider, &r.circuit, &r.support);
            assert!(err.is_ok() || matches!(err, Err(Error::SupportViolation { .. })));
        }
        let id = tab(&["III"]);
        let t = conjugate_members(&id, &r.circuit, &r.support).unwrap();
        assert!(t.rows()[0].pauli.is_identity());
    }
}
