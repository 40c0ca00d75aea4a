//! GF(2) elimination over the symplectic `(x ‖ z)` vectors of Pauli strings.

use std::collections::BTreeMap;

use crate::pauli::{PauliString, PauliTerm};

/// Small growable bitset over basis-element indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Combo(Vec<u64>);

impl Combo {
    fn single(i: usize) -> Self {
        let mut c = Combo(vec![0; i / 64 + 1]);
        c.0[i / 64] |= 1 << (i % 64);
        c
    }

    fn xor_assign(&mut self, other: &Combo) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), 0);
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: PauliString,
    pivot: (bool, usize),
    combo: Combo,
}

fn lowest_bit(p: &PauliString) -> Option<(bool, usize)> {
    for (w, &bits) in p.x_words().iter().enumerate() {
        if bits != 0 {
            return Some((false, w * 64 + bits.trailing_zeros() as usize));
        }
    }
    for (w, &bits) in p.z_words().iter().enumerate() {
        if bits != 0 {
            return Some((true, w * 64 + bits.trailing_zeros() as usize));
        }
    }
    None
}

fn has_bit(p: &PauliString, (is_z, q): (bool, usize)) -> bool {
    if is_z {
        p.z_bit(q)
    } else {
        p.x_bit(q)
    }
}

/// Incremental echelon basis. Each inserted independent vector becomes
/// basis element `k` (insertion order); reductions report which basis
/// elements XOR to the input.
#[derive(Clone, Debug, Default)]
pub struct Gf2Basis {
    rows: Vec<Row>,
}

impl Gf2Basis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, p: &PauliString) -> (PauliString, Combo) {
        let mut v = p.clone();
        let mut combo = Combo::default();
        for r in &self.rows {
            if has_bit(&v, r.pivot) {
                v.xor_assign(&r.vec);
                combo.xor_assign(&r.combo);
            }
        }
        (v, combo)
    }

    /// Basis elements whose product equals `p` (up to phase), or `None`
    /// when `p` is outside the span.
    pub fn express(&self, p: &PauliString) -> Option<Vec<usize>> {
        let (v, combo) = self.reduce(p);
        v.is_identity().then(|| combo.indices().collect())
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        self.reduce(p).0.is_identity()
    }

    /// Inserts `p` if independent; returns its basis index.
    pub fn insert(&mut self, p: &PauliString) -> Option<usize> {
        let (v, mut combo) = self.reduce(p);
        let pivot = lowest_bit(&v)?;
        let k = self.rows.len();
        combo.xor_assign(&Combo::single(k));
        self.rows.push(Row {
            vec: v,
            pivot,
            combo,
        });
        Some(k)
    }
}

/// Split of a term list into independent generators and the terms they generate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorDecomposition {
    /// Generator term ids in acceptance order.
    pub generator_ids: Vec<usize>,
    /// Generated term id → sorted ids of the generators whose product it is.
    pub generated: BTreeMap<usize, Vec<usize>>,
}

/// Scans `terms` in order; a term becomes a generator iff it is independent
/// of the generators accepted before it.
pub fn decompose_generators(terms: &[PauliTerm]) -> GeneratorDecomposition {
    let mut basis = Gf2Basis::new();
    let mut out = GeneratorDecomposition::default();
    for t in terms {
        if basis.insert(&t.pauli).is_some() {
            out.generator_ids.push(t.id);
        } else {
            let idx = basis
                .express(&t.pauli)
                .expect("dependent vector lies in span");
            let mut gens: Vec<usize> = idx.into_iter().map(|k| out.generator_ids[k]).collect();
            gens.sort_unstable();
            out.generated.insert(t.id, gens);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;

    fn terms(list: &[&str]) -> Vec<PauliTerm> {
        list.iter()
            .enumerate()
            .map(|(i, s)| parse_pauli(s, 1.0, 1.0).unwrap().with_id(i))
            .collect()
    }

    #[test]
    fn two_qubit_examples() {
        let d = decompose_generators(&terms(&["XI", "IZ", "XZ"]));
        assert_eq!(d.generator_ids, vec![0, 1]);
        assert_eq!(d.generated[&2], vec![0, 1]);

        let d = decompose_generators(&terms(&["XX", "YY", "ZZ"]));
        assert_eq!(d.generator_ids, vec![0, 1]);
        assert_eq!(d.generated[&2], vec![0, 1]);

        let d = decompose_generators(&terms(&["X"]));
        assert_eq!(d.generator_ids, vec![0]);
        assert!(d.generated.is_empty());
    }

    #[test]
    fn identity_is_generated_by_nothing() {
        let d = decompose_generators(&terms(&["XZ", "II"]));
        assert_eq!(d.generator_ids, vec![0]);
        assert_eq!(d.generated[&1], Vec::<usize>::new());
    }

    #[test]
    fn duplicates_are_generated_by_their_twin() {
        let d = decompose_generators(&terms(&["XYZ", "ZZI", "XYZ"]));
        assert_eq!(d.generated[&2], vec![0]);
    }

    #[test]
    fn basis_membership() {
        let mut b = Gf2Basis::new();
        let xi = PauliString::from_letters("XI").unwrap();
        let iz = PauliString::from_letters("IZ").unwrap();
        assert_eq!(b.insert(&xi), Some(0));
        assert_eq!(b.insert(&iz), Some(1));
        assert_eq!(b.insert(&xi), None);
        assert!(b.contains(&PauliString::from_letters("XZ").unwrap()));
        assert!(!b.contains(&PauliString::from_letters("ZI").unwrap()));
        assert_eq!(
            b.express(&PauliString::from_letters("XZ").unwrap()),
            Some(vec![0, 1])
        );
    }
}
