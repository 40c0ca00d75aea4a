//! Partitioning of a term list into anticommuting groups (fusable onto one
//! or two qubits) and commuting groups (parallel single-qubit rotations).

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use tracing::debug;

use crate::error::{Error, Result};
use crate::gf2::{decompose_generators, GeneratorDecomposition, Gf2Basis};
use crate::pauli::{PauliString, PauliTerm};

pub const MIN_WINDOW_SINGLE: usize = 4;
pub const MIN_WINDOW_TWO: usize = 16;
pub const MAX_SINGLE_GROUP: usize = 3;
pub const MAX_TWO_GROUP: usize = 15;

/// Dense anticommutation relation over term positions. Two distinct terms
/// commute exactly when they do not anticommute.
#[derive(Clone, Debug)]
pub struct CommutationGraphs {
    n_terms: usize,
    anti: Vec<Vec<u64>>,
}

impl CommutationGraphs {
    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    pub fn anticommute(&self, i: usize, j: usize) -> bool {
        self.anti[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn commute(&self, i: usize, j: usize) -> bool {
        i != j && !self.anticommute(i, j)
    }

    pub fn anticommute_edges(&self) -> Vec<(usize, usize)> {
        self.edges(|i, j| self.anticommute(i, j))
    }

    pub fn commute_edges(&self) -> Vec<(usize, usize)> {
        self.edges(|i, j| self.commute(i, j))
    }

    fn edges(&self, pred: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n_terms {
            for j in i + 1..self.n_terms {
                if pred(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// First `j > i` with `mask[j]` set that anticommutes with `i`.
    fn first_partner(&self, i: usize, mask: &[u64]) -> Option<usize> {
        let start = i + 1;
        let row = &self.anti[i];
        let mut w = start / 64;
        if w >= row.len() {
            return None;
        }
        let mut bits = row[w] & mask[w] & (!0u64 << (start % 64));
        loop {
            if bits != 0 {
                return Some(w * 64 + bits.trailing_zeros() as usize);
            }
            w += 1;
            if w >= row.len() {
                return None;
            }
            bits = row[w] & mask[w];
        }
    }
}

fn check_uniform(terms: &[PauliTerm]) -> Result<usize> {
    let n = terms.first().map(PauliTerm::num_qubits).unwrap_or(0);
    for t in terms {
        if t.num_qubits() != n {
            return Err(Error::Dimension {
                expected: n,
                found: t.num_qubits(),
            });
        }
    }
    Ok(n)
}

/// Pairwise commutation over term positions.
pub fn build_graphs(terms: &[PauliTerm]) -> Result<CommutationGraphs> {
    check_uniform(terms)?;
    let m = terms.len();
    let words = m.div_ceil(64);
    let mut anti = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in i + 1..m {
            if !terms[i].pauli.commutes_with(&terms[j].pauli) {
                anti[i][j / 64] |= 1 << (j % 64);
                anti[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    Ok(CommutationGraphs { n_terms: m, anti })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    Terms(Vec<usize>),
    MutuallyCommuting,
}

/// Picks the first anticommuting pair among `ungrouped` (list order), then
/// fills up to `w` entries with the earliest remaining ungrouped positions.
pub fn select_window(ungrouped: &[usize], graphs: &CommutationGraphs, w: usize) -> Window {
    let mut mask = vec![0u64; graphs.n_terms.div_ceil(64)];
    for &i in ungrouped {
        mask[i / 64] |= 1 << (i % 64);
    }
    let mut sorted = ungrouped.to_vec();
    sorted.sort_unstable();
    match first_pair(&sorted, graphs, &mask, &mut 0) {
        Some(pair) => Window::Terms(fill_window(&sorted, pair, w)),
        None => Window::MutuallyCommuting,
    }
}

fn first_pair(
    sorted: &[usize],
    graphs: &CommutationGraphs,
    mask: &[u64],
    cursor: &mut usize,
) -> Option<(usize, usize)> {
    while *cursor < sorted.len() {
        let i = sorted[*cursor];
        if let Some(j) = graphs.first_partner(i, mask) {
            return Some((i, j));
        }
        // Nothing after `i` anticommutes with it now, and the ungrouped set
        // only shrinks.
        *cursor += 1;
    }
    None
}

fn fill_window(sorted: &[usize], (a, b): (usize, usize), w: usize) -> Vec<usize> {
    let mut win = vec![a, b];
    win.extend(
        sorted
            .iter()
            .copied()
            .filter(|&i| i != a && i != b)
            .take(w.saturating_sub(2)),
    );
    win
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Anticommuting1Q,
    Anticommuting2Q,
    Commuting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub kind: GroupKind,
    /// All members, ascending.
    pub member_ids: Vec<usize>,
    /// Generators in role order: `(Pa, Pb[, Pc[, Pd]])` for anticommuting
    /// groups, every member for commuting groups.
    pub generator_ids: Vec<usize>,
    pub generated_ids: Vec<usize>,
}

impl Group {
    pub fn len(&self) -> usize {
        self.member_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_ids.is_empty()
    }

    pub fn is_anticommuting(&self) -> bool {
        self.kind != GroupKind::Commuting
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupingMode {
    Single,
    Two,
}

impl GroupingMode {
    pub fn min_window(self) -> usize {
        match self {
            GroupingMode::Single => MIN_WINDOW_SINGLE,
            GroupingMode::Two => MIN_WINDOW_TWO,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grouping {
    pub mode: GroupingMode,
    pub window: usize,
    pub groups: Vec<Group>,
}

/// Whether the conjugated `Pc` and `Pd` anticommute on
/// the qubit that carries `Pa` and `Pb`.
///
/// `rel` holds anticommutation of `(Pa,Pc), (Pb,Pc), (Pa,Pd), (Pb,Pd)`.
pub fn part1_relation(rel: [bool; 4]) -> bool {
    let [ac, bc, ad, bd] = rel;
    if (!ac && !bc) || (!ad && !bd) {
        return false;
    }
    (ac, bc) != (ad, bd)
}

/// Whether `(Pa, Pb, Pc, Pd)` can be conjugated onto two qubits: the
/// remainder parts of `Pc` and `Pd` must anticommute.
pub fn quad_compatible(rel: [bool; 4], pcd_anticommute: bool) -> bool {
    pcd_anticommute != part1_relation(rel)
}

/// 3 points per generated term produced by exactly `{pa, pb}`, 1 point per
/// generated term whose generator set meets `{pa, pb}` otherwise.
pub fn grade_pair(pa: usize, pb: usize, decomp: &GeneratorDecomposition) -> u32 {
    decomp
        .generated
        .values()
        .map(|gens| {
            let has_a = gens.binary_search(&pa).is_ok();
            let has_b = gens.binary_search(&pb).is_ok();
            if gens.len() == 2 && has_a && has_b {
                3
            } else if has_a || has_b {
                1
            } else {
                0
            }
        })
        .sum()
}

/// Mutable grouping state over term positions.
struct Frontier<'a> {
    terms: &'a [PauliTerm],
    graphs: CommutationGraphs,
    n: usize,
    ungrouped: Vec<bool>,
    mask: Vec<u64>,
    by_string: HashMap<PauliString, BTreeSet<usize>>,
    cursor: usize,
    groups: Vec<Group>,
}

impl<'a> Frontier<'a> {
    fn new(terms: &'a [PauliTerm]) -> Result<Self> {
        let n = check_uniform(terms)?;
        let graphs = build_graphs(terms)?;
        let m = terms.len();
        let mut mask = vec![0u64; m.div_ceil(64)];
        let mut by_string: HashMap<PauliString, BTreeSet<usize>> = HashMap::new();
        for (i, t) in terms.iter().enumerate() {
            mask[i / 64] |= 1 << (i % 64);
            by_string.entry(t.pauli.clone()).or_default().insert(i);
        }
        Ok(Self {
            terms,
            graphs,
            n,
            ungrouped: vec![true; m],
            mask,
            by_string,
            cursor: 0,
            groups: Vec::new(),
        })
    }

    fn sorted_ungrouped(&self) -> Vec<usize> {
        (0..self.terms.len())
            .filter(|&i| self.ungrouped[i])
            .collect()
    }

    fn next_window(&mut self, w: usize) -> Option<Vec<usize>> {
        let sorted = self.sorted_ungrouped();
        // The cursor indexes `sorted`; re-anchor it on the first position
        // not yet ruled out.
        let mut cursor = sorted.partition_point(|&i| i < self.cursor);
        let pair = first_pair(&sorted, &self.graphs, &self.mask, &mut cursor)?;
        self.cursor = sorted[cursor];
        Some(fill_window(&sorted, pair, w))
    }

    fn window_decomposition(&self, window: &[usize]) -> GeneratorDecomposition {
        let local: Vec<PauliTerm> = window
            .iter()
            .map(|&i| PauliTerm {
                id: i,
                ..self.terms[i].clone()
            })
            .collect();
        decompose_generators(&local)
    }

    fn lookup(&self, p: &PauliString) -> Option<usize> {
        self.by_string.get(p).and_then(|s| s.first().copied())
    }

    /// Lowest ungrouped position for every distinct string in the span of `gens`.
    fn span_members(&self, gens: &[usize]) -> Vec<usize> {
        let k = gens.len();
        let mut out = Vec::new();
        for subset in 1u32..(1 << k) {
            let mut p = PauliString::identity(self.n);
            for (bit, &g) in gens.iter().enumerate() {
                if subset >> bit & 1 == 1 {
                    p.xor_assign(&self.terms[g].pauli);
                }
            }
            if let Some(i) = self.lookup(&p) {
                out.push(i);
            }
        }
        out.sort_unstable();
        out
    }

    fn take(&mut self, i: usize) {
        debug_assert!(self.ungrouped[i]);
        self.ungrouped[i] = false;
        self.mask[i / 64] &= !(1 << (i % 64));
        let key = &self.terms[i].pauli;
        if let Some(set) = self.by_string.get_mut(key) {
            set.remove(&i);
            if set.is_empty() {
                self.by_string.remove(key);
            }
        }
    }

    fn emit(&mut self, kind: GroupKind, generators: Vec<usize>, mut members: Vec<usize>) {
        members.sort_unstable();
        for &i in &members {
            self.take(i);
        }
        let generated = members
            .iter()
            .copied()
            .filter(|i| !generators.contains(i))
            .collect();
        self.groups.push(Group {
            kind,
            member_ids: members,
            generator_ids: generators,
            generated_ids: generated,
        });
    }

    /// Anticommuting generator pairs, id-lexicographic.
    fn anticommuting_pairs(&self, decomp: &GeneratorDecomposition) -> Vec<(usize, usize)> {
        let mut gens = decomp.generator_ids.clone();
        gens.sort_unstable();
        let mut pairs = Vec::new();
        for (k, &a) in gens.iter().enumerate() {
            for &b in &gens[k + 1..] {
                if self.graphs.anticommute(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    fn single_step(&mut self, window: &[usize]) {
        let decomp = self.window_decomposition(window);
        let pairs = self.anticommuting_pairs(&decomp);
        let first = *pairs
            .first()
            .expect("window starts with an anticommuting pair");
        let chosen = pairs.iter().find_map(|&(a, b)| {
            let product = self.terms[a].pauli.xor(&self.terms[b].pauli);
            self.lookup(&product).map(|g| (a, b, Some(g)))
        });
        let (a, b, g) = chosen.unwrap_or((first.0, first.1, None));
        let mut members = vec![a, b];
        members.extend(g);
        self.emit(GroupKind::Anticommuting1Q, vec![a, b], members);
    }

    fn two_step(&mut self, window: &[usize]) {
        let decomp = self.window_decomposition(window);
        let pairs = self.anticommuting_pairs(&decomp);
        let mut best = (0u32, pairs[0]);
        for &(a, b) in &pairs {
            let g = grade_pair(a, b, &decomp);
            if g > best.0 {
                best = (g, (a, b));
            }
        }
        let (a, b) = best.1;

        let mut others: Vec<usize> = decomp
            .generator_ids
            .iter()
            .copied()
            .filter(|&g| g != a && g != b)
            .collect();
        others.sort_unstable();

        let anti = |i: usize, j: usize| self.graphs.anticommute(i, j);
        let mut best_quad: Option<(usize, Vec<usize>, Vec<usize>)> = None;
        for (k, &c) in others.iter().enumerate() {
            for &d in &others[k + 1..] {
                let rel = [anti(a, c), anti(b, c), anti(a, d), anti(b, d)];
                if !quad_compatible(rel, anti(c, d)) {
                    continue;
                }
                let gens = vec![a, b, c, d];
                let members = self.span_members(&gens);
                if best_quad.as_ref().is_none_or(|q| members.len() > q.0) {
                    best_quad = Some((members.len(), gens, members));
                }
            }
        }
        if let Some((_, gens, members)) = best_quad {
            self.emit(GroupKind::Anticommuting2Q, gens, members);
            return;
        }

        let mut best_triple: Option<(usize, Vec<usize>, Vec<usize>)> = None;
        for &c in &others {
            let gens = vec![a, b, c];
            let members = self.span_members(&gens);
            if best_triple.as_ref().is_none_or(|q| members.len() > q.0) {
                best_triple = Some((members.len(), gens, members));
            }
        }
        let (gens, members) = match best_triple {
            Some((_, g, m)) => (g, m),
            None => (vec![a, b], self.span_members(&[a, b])),
        };
        self.emit(GroupKind::Anticommuting2Q, gens, members);
    }

    /// Packs what is left (mutually commuting) into independent groups of at
    /// most `n` terms, first fit in list order. Identity terms get a group each.
    fn commuting_phase(&mut self) {
        let rest = self.sorted_ungrouped();
        let mut bins: Vec<(Gf2Basis, Vec<usize>)> = Vec::new();
        let mut identities = Vec::new();
        for i in rest {
            let p = &self.terms[i].pauli;
            if p.is_identity() {
                identities.push(i);
                continue;
            }
            let n = self.n;
            let slot = bins
                .iter_mut()
                .find(|(basis, members)| members.len() < n && !basis.contains(p));
            match slot {
                Some((basis, members)) => {
                    basis.insert(p);
                    members.push(i);
                }
                None => {
                    let mut basis = Gf2Basis::new();
                    basis.insert(p);
                    bins.push((basis, vec![i]));
                }
            }
        }
        for (_, members) in bins {
            self.emit(GroupKind::Commuting, members.clone(), members);
        }
        for i in identities {
            self.emit(GroupKind::Commuting, vec![i], vec![i]);
        }
    }

    fn finish(self, mode: GroupingMode, window: usize) -> Grouping {
        let ids: Vec<usize> = self.terms.iter().map(|t| t.id).collect();
        let remap = |v: &[usize]| v.iter().map(|&i| ids[i]).collect::<Vec<_>>();
        let groups = self
            .groups
            .iter()
            .map(|g| {
                let mut member_ids = remap(&g.member_ids);
                member_ids.sort_unstable();
                Group {
                    kind: g.kind,
                    member_ids,
                    generator_ids: remap(&g.generator_ids),
                    generated_ids: remap(&g.generated_ids),
                }
            })
            .collect();
        Grouping {
            mode,
            window,
            groups,
        }
    }
}

fn check_window(mode: GroupingMode, w: usize) -> Result<()> {
    if w < mode.min_window() {
        return Err(Error::Config(format!(
            "window {w} is below the minimum {} for {mode:?} grouping",
            mode.min_window()
        )));
    }
    Ok(())
}

/// Groups for single-qubit fusion: anticommuting pairs plus at most one
/// generated term, then commuting leftovers.
pub fn group_single(terms: &[PauliTerm], w: usize) -> Result<Grouping> {
    check_window(GroupingMode::Single, w)?;
    let mut f = Frontier::new(terms)?;
    while let Some(window) = f.next_window(w) {
        f.single_step(&window);
    }
    f.commuting_phase();
    debug!(groups = f.groups.len(), "single-qubit grouping done");
    Ok(f.finish(GroupingMode::Single, w))
}

/// Groups for two-qubit fusion: best-graded anticommuting pair extended by
/// a truth-table-compatible second pair (or a single third generator), with
/// every ungrouped term in their span, then commuting leftovers.
pub fn group_two(terms: &[PauliTerm], w: usize) -> Result<Grouping> {
    check_window(GroupingMode::Two, w)?;
    let mut f = Frontier::new(terms)?;
    while let Some(window) = f.next_window(w) {
        f.two_step(&window);
    }
    f.commuting_phase();
    debug!(groups = f.groups.len(), "two-qubit grouping done");
    Ok(f.finish(GroupingMode::Two, w))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    /// Group indices per layer; groups in a layer run side by side.
    pub layers: Vec<Vec<usize>>,
}

/// First-fit layering: each group joins the earliest layer whose groups'
/// supports are all disjoint from its own.
pub fn reorder(supports: &[BTreeSet<usize>]) -> Schedule {
    let mut layers: Vec<(BTreeSet<usize>, Vec<usize>)> = Vec::new();
    for (g, support) in supports.iter().enumerate() {
        match layers
            .iter_mut()
            .find(|(used, _)| used.is_disjoint(support))
        {
            Some((used, members)) => {
                used.extend(support.iter().copied());
                members.push(g);
            }
            None => layers.push((support.clone(), vec![g])),
        }
    }
    Schedule {
        layers: layers.into_iter().map(|(_, m)| m).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;

    fn terms(list: &[&str]) -> Vec<PauliTerm> {
        list.iter()
            .enumerate()
            .map(|(i, s)| parse_pauli(s, 0.5, 1.0).unwrap().with_id(i))
            .collect()
    }

    /// Six-term scenario: P5 = P1·P3, P4/P6 anticommute, P2 commutes with all
    /// but P3 and sits on its own qubit.
    pub(crate) const SIX: [&str; 6] = ["XXII", "IIIX", "ZIII", "IXXI", "YXII", "IIZI"];

    #[test]
    fn graph_examples() {
        let g = build_graphs(&terms(&["XZ", "YI", "YX"])).unwrap();
        // YI and YX agree on both positions up to an identity, so they commute.
        assert_eq!(g.anticommute_edges(), vec![(0, 1)]);
        assert_eq!(g.commute_edges(), vec![(0, 2), (1, 2)]);

        let g = build_graphs(&terms(&["XYZ"])).unwrap();
        assert!(g.anticommute_edges().is_empty() && g.commute_edges().is_empty());

        let g = build_graphs(&terms(&["Z", "Z"])).unwrap();
        assert_eq!(g.commute_edges(), vec![(0, 1)]);
        assert!(g.anticommute_edges().is_empty());
        assert!(!g.commute(0, 0) && !g.anticommute(0, 0));
    }

    #[test]
    fn window_takes_first_pair_then_head_of_list() {
        // Only terms 3 and 7 anticommute.
        let mut list = vec!["IIII"; 10];
        list[3] = "XIII";
        list[7] = "ZIII";
        let t = terms(&list);
        let g = build_graphs(&t).unwrap();
        let ungrouped: Vec<usize> = (0..10).collect();
        assert_eq!(
            select_window(&ungrouped, &g, 4),
            Window::Terms(vec![3, 7, 0, 1])
        );
        assert_eq!(
            select_window(&ungrouped, &g, 100),
            Window::Terms(vec![3, 7, 0, 1, 2, 4, 5, 6, 8, 9])
        );
        assert_eq!(
            select_window(&[0, 1, 2, 4], &g, 4),
            Window::MutuallyCommuting
        );
    }

    #[test]
    fn truth_table_conditions() {
        assert!(!part1_relation([false, false, true, false]));
        assert!(!part1_relation([true, false, true, false]));
        assert!(part1_relation([false, true, true, false]));

        assert!(quad_compatible([false; 4], true));
        assert!(quad_compatible([false, true, true, false], false));
        assert!(!quad_compatible([true; 4], false));
    }

    #[test]
    fn grading_sums_over_generated_terms() {
        let mut d = GeneratorDecomposition {
            generator_ids: vec![0, 1, 2],
            ..Default::default()
        };
        d.generated.insert(3, vec![0, 1]);
        assert_eq!(grade_pair(0, 1, &d), 3);
        let mut d2 = d.clone();
        d2.generated.clear();
        d2.generated.insert(3, vec![0, 2]);
        assert_eq!(grade_pair(0, 1, &d2), 1);
        d.generated.insert(4, vec![0, 2]);
        assert_eq!(grade_pair(0, 1, &d), 4);
        assert_eq!(grade_pair(1, 2, &d), 2);
    }

    #[test]
    fn single_grouping_of_six_terms() {
        let g = group_single(&terms(&SIX), 4).unwrap();
        let members: Vec<_> = g.groups.iter().map(|g| g.member_ids.clone()).collect();
        assert_eq!(members, vec![vec![0, 2, 4], vec![3, 5], vec![1]]);
        assert_eq!(g.groups[0].generator_ids, vec![0, 2]);
        assert_eq!(g.groups[0].generated_ids, vec![4]);
        assert_eq!(g.groups[2].kind, GroupKind::Commuting);
    }

    #[test]
    fn two_grouping_of_six_terms() {
        let g = group_two(&terms(&SIX), 16).unwrap();
        let members: Vec<_> = g.groups.iter().map(|g| g.member_ids.clone()).collect();
        assert_eq!(members, vec![vec![0, 2, 3, 4, 5], vec![1]]);
        assert_eq!(g.groups[0].generator_ids, vec![0, 2, 3, 5]);
    }

    #[test]
    fn degenerate_inputs() {
        let g = group_single(&terms(&["XI", "ZI"]), 4).unwrap();
        assert_eq!(g.groups.len(), 1);
        assert_eq!(g.groups[0].member_ids, vec![0, 1]);

        let g = group_single(&terms(&["XI", "IX"]), 4).unwrap();
        assert_eq!(g.groups.len(), 1);
        assert_eq!(g.groups[0].kind, GroupKind::Commuting);

        let g = group_two(&terms(&["XI", "ZI"]), 16).unwrap();
        assert_eq!(g.groups.len(), 1);
        assert_eq!(g.groups[0].member_ids, vec![0, 1]);
    }

    #[test]
    fn triple_fallback_when_no_quad_fits() {
        // Pc = IXI and Pd = IIX commute with everything, so no quad fits and
        // the lowest third generator joins the pair.
        let g = group_two(&terms(&["XII", "ZII", "IXI", "IIX"]), 16).unwrap();
        assert_eq!(g.groups[0].generator_ids, vec![0, 1, 2]);
        assert_eq!(g.groups[0].member_ids, vec![0, 1, 2]);
        assert_eq!(g.groups[1].member_ids, vec![3]);
    }

    #[test]
    fn commuting_groups_stay_independent() {
        let g = group_single(&terms(&["ZZ", "ZI", "IZ", "II"]), 4).unwrap();
        let members: Vec<_> = g.groups.iter().map(|g| g.member_ids.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn window_minimum_is_enforced() {
        assert!(matches!(
            group_single(&terms(&["X", "Z"]), 3),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            group_two(&terms(&["X", "Z"]), 15),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn empty_input_yields_no_groups() {
        assert!(group_single(&[], 4).unwrap().groups.is_empty());
        assert!(group_two(&[], 16).unwrap().groups.is_empty());
    }

    #[test]
    fn reorder_first_fit() {
        let s = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        let sched = reorder(&[s(&[0, 1]), s(&[1, 2]), s(&[3])]);
        assert_eq!(sched.layers, vec![vec![0, 2], vec![1]]);
        let sched = reorder(&[s(&[0]), s(&[0])]);
        assert_eq!(sched.layers, vec![vec![0], vec![1]]);
        let sched = reorder(&[s(&[0]), s(&[1]), s(&[2])]);
        assert_eq!(sched.layers, vec![vec![0, 1, 2]]);
    }
}
