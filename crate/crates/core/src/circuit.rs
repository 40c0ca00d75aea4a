//! Compiled-program IR: Clifford frames around fused rotation blocks, plus
//! the analytic cost model.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tracing::warn;

use crate::clifford::{CliffordCircuit, CliffordGate};
use crate::error::{Error, Result};
use crate::grouping::{Group, GroupKind, Schedule};
use crate::pauli::{Pauli, PauliString, PauliTerm, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Baseline,
    Ncf1q,
    Ncf2q,
}

impl Mode {
    pub fn default_window(self) -> Option<usize> {
        match self {
            Mode::Baseline => None,
            Mode::Ncf1q => Some(4),
            Mode::Ncf2q => Some(128),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Baseline => "baseline",
            Mode::Ncf1q => "ncf1q",
            Mode::Ncf2q => "ncf2q",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" => Ok(Mode::Baseline),
            "ncf1q" => Ok(Mode::Ncf1q),
            "ncf2q" => Ok(Mode::Ncf2q),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

/// One rotation `exp(−i·angle/2·P)` inside a block. `pauli` lists the
/// operator on each support qubit, in support order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationOp {
    pub pauli: String,
    pub angle: f64,
    pub origin: usize,
}

impl RotationOp {
    /// The op as an `n`-qubit string.
    pub fn full_pauli(&self, n: usize, support: &[usize]) -> Result<PauliString> {
        let local = PauliString::from_letters(&self.pauli)?;
        if local.num_qubits() != support.len() {
            return Err(Error::Dimension {
                expected: support.len(),
                found: local.num_qubits(),
            });
        }
        let mut ops = Vec::with_capacity(support.len());
        for (k, &q) in support.iter().enumerate() {
            ops.push((q, local.get(k)));
        }
        PauliString::from_sparse(n, &ops)
    }
}

/// Rotations confined to one or two qubits, synthesized as one unitary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationBlock {
    pub support: Vec<usize>,
    pub ops: Vec<RotationOp>,
    pub origin_ids: Vec<usize>,
}

impl RotationBlock {
    pub fn width(&self) -> usize {
        self.support.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub frame: CliffordCircuit,
    /// Blocks within a layer act on disjoint qubits.
    pub layers: Vec<Vec<RotationBlock>>,
    pub unframe: CliffordCircuit,
}

impl Segment {
    pub fn blocks(&self) -> impl Iterator<Item = &RotationBlock> {
        self.layers.iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: Mode,
    pub window: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompiledProgram {
    pub n: usize,
    pub segments: Vec<Segment>,
    pub provenance: Provenance,
    /// Identity terms: pure global phase, no rotation emitted.
    #[serde(default)]
    pub phase_only: Vec<usize>,
}

impl CompiledProgram {
    pub fn empty(n: usize, provenance: Provenance) -> Self {
        Self {
            n,
            segments: Vec::new(),
            provenance,
            phase_only: Vec::new(),
        }
    }

    pub fn blocks(&self) -> impl Iterator<Item = &RotationBlock> {
        self.segments.iter().flat_map(Segment::blocks)
    }

    /// Origin term ids in execution order.
    pub fn compiled_order(&self) -> Vec<usize> {
        self.blocks()
            .flat_map(|b| b.ops.iter().map(|op| op.origin))
            .collect()
    }

    pub fn structural_clifford_count(&self) -> usize {
        self.segments
            .iter()
            .map(|s| s.frame.len() + s.unframe.len())
            .sum()
    }

    /// Checks frame/unframe pairing, layer disjointness and op supports.
    pub fn check_structure(&self) -> Result<()> {
        for (i, seg) in self.segments.iter().enumerate() {
            if seg.unframe != seg.frame.inverse() {
                return Err(Error::ScheduleViolation(format!(
                    "segment {i}: unframe is not the inverse of the frame"
                )));
            }
            for layer in &seg.layers {
                let mut used = BTreeSet::new();
                for block in layer {
                    for &q in &block.support {
                        if q >= self.n {
                            return Err(Error::QubitOutOfRange {
                                index: q,
                                n: self.n,
                            });
                        }
                        if !used.insert(q) {
                            return Err(Error::ScheduleViolation(format!(
                                "segment {i}: two blocks share qubit {q}"
                            )));
                        }
                    }
                    for op in &block.ops {
                        let p = op.full_pauli(self.n, &block.support)?;
                        if p.is_identity() || !op.angle.is_finite() {
                            return Err(Error::ScheduleViolation(format!(
                                "segment {i}: degenerate op for term {}",
                                op.origin
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Per-group output of Clifford reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupConjugation {
    pub circuit: CliffordCircuit,
    /// Conjugated members, in the group's member order.
    pub members: Tableau,
    pub support: Vec<usize>,
}

impl GroupConjugation {
    /// Frame qubits plus rotation support.
    pub fn footprint(&self) -> BTreeSet<usize> {
        let mut s = self.circuit.qubits();
        s.extend(self.support.iter().copied());
        s
    }
}

fn local_letters(p: &PauliString, support: &[usize]) -> String {
    support.iter().map(|&q| p.get(q).letter()).collect()
}

fn signed_angle(t: &PauliTerm) -> f64 {
    t.sign.value() * t.angle
}

fn group_blocks(
    group: &Group,
    conj: &GroupConjugation,
    phase_only: &mut Vec<usize>,
) -> Vec<RotationBlock> {
    let rows = conj.members.rows();
    if group.kind == GroupKind::Commuting {
        let mut blocks = Vec::new();
        for row in rows {
            let support = row.pauli.support();
            if support.is_empty() {
                phase_only.push(row.id);
                continue;
            }
            blocks.push(RotationBlock {
                ops: vec![RotationOp {
                    pauli: local_letters(&row.pauli, &support),
                    angle: signed_angle(row),
                    origin: row.id,
                }],
                support,
                origin_ids: vec![row.id],
            });
        }
        return blocks;
    }
    let ops = rows
        .iter()
        .map(|row| RotationOp {
            pauli: local_letters(&row.pauli, &conj.support),
            angle: signed_angle(row),
            origin: row.id,
        })
        .collect();
    vec![RotationBlock {
        support: conj.support.clone(),
        ops,
        origin_ids: rows.iter().map(|r| r.id).collect(),
    }]
}

/// Builds one segment per schedule layer. Groups in a layer have disjoint
/// footprints, so their frames concatenate and their blocks share one layer.
pub fn assemble(
    n: usize,
    groups: &[Group],
    conjugations: &[GroupConjugation],
    schedule: &Schedule,
    provenance: Provenance,
) -> Result<CompiledProgram> {
    if groups.len() != conjugations.len() {
        return Err(Error::ScheduleViolation(format!(
            "{} groups but {} conjugations",
            groups.len(),
            conjugations.len()
        )));
    }
    let mut seen = vec![false; groups.len()];
    let mut program = CompiledProgram::empty(n, provenance);
    for (li, layer) in schedule.layers.iter().enumerate() {
        let mut frame = CliffordCircuit::new(n);
        let mut blocks = Vec::new();
        let mut used = BTreeSet::new();
        for &g in layer {
            let conj = conjugations.get(g).ok_or_else(|| {
                Error::ScheduleViolation(format!("layer {li} names unknown group {g}"))
            })?;
            if std::mem::replace(&mut seen[g], true) {
                return Err(Error::ScheduleViolation(format!(
                    "group {g} scheduled twice"
                )));
            }
            let fp = conj.footprint();
            if !used.is_disjoint(&fp) {
                return Err(Error::ScheduleViolation(format!(
                    "group {g} overlaps another group in layer {li}"
                )));
            }
            used.extend(fp);
            frame.extend(&conj.circuit)?;
            blocks.extend(group_blocks(&groups[g], conj, &mut program.phase_only));
        }
        let unframe = frame.inverse();
        program.segments.push(Segment {
            frame,
            layers: vec![blocks],
            unframe,
        });
    }
    if let Some(g) = seen.iter().position(|s| !s) {
        return Err(Error::ScheduleViolation(format!(
            "group {g} is not scheduled"
        )));
    }
    program.phase_only.sort_unstable();
    Ok(program)
}

/// Basis change onto `Z` followed by a CNOT chain onto the highest
/// non-trivial qubit, as a frame whose conjugation leaves `±Z` there.
fn baseline_frame(p: &PauliString) -> Result<CliffordCircuit> {
    let n = p.num_qubits();
    let mut c = CliffordCircuit::new(n);
    let support = p.support();
    for &q in &support {
        match p.get(q) {
            Pauli::X => c.push(CliffordGate::H(q))?,
            Pauli::Y => {
                c.push(CliffordGate::Sdg(q))?;
                c.push(CliffordGate::H(q))?;
            }
            _ => {}
        }
    }
    if let Some((&last, rest)) = support.split_last() {
        for &q in rest {
            c.push(CliffordGate::Cx(q, last))?;
        }
    }
    Ok(c)
}

/// One segment per term: basis change and CNOT chain, a single-qubit `Z`
/// rotation, then the mirrored undo.
pub fn baseline_compile(terms: &[PauliTerm]) -> Result<CompiledProgram> {
    let n = terms.first().map(PauliTerm::num_qubits).unwrap_or(0);
    let mut program = CompiledProgram::empty(
        n,
        Provenance {
            mode: Mode::Baseline,
            window: None,
        },
    );
    for t in terms {
        if t.num_qubits() != n {
            return Err(Error::Dimension {
                expected: n,
                found: t.num_qubits(),
            });
        }
        if t.pauli.is_identity() {
            warn!(id = t.id, "identity term contributes only a global phase");
            program.phase_only.push(t.id);
            continue;
        }
        let frame = baseline_frame(&t.pauli)?;
        let mut row = Tableau::new(n, vec![t.clone()])?;
        row.apply_circuit(&frame)?;
        let conj = &row.rows()[0];
        let support = conj.pauli.support();
        debug_assert_eq!(support.len(), 1);
        let block = RotationBlock {
            ops: vec![RotationOp {
                pauli: local_letters(&conj.pauli, &support),
                angle: signed_angle(conj),
                origin: t.id,
            }],
            support,
            origin_ids: vec![t.id],
        };
        let unframe = frame.inverse();
        program.segments.push(Segment {
            frame,
            layers: vec![vec![block]],
            unframe,
        });
    }
    Ok(program)
}

/// Analytic synthesis model: a block of width 1 costs `coeff_1q·log2(1/ε)`
/// T gates, width 2 `coeff_2q·log2(1/ε)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub eps_base: f64,
    pub coeff_1q: f64,
    pub coeff_2q: f64,
    /// Synthesized Clifford gates per synthesized T gate.
    pub clifford_per_t: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            eps_base: 0.001,
            coeff_1q: 3.0,
            coeff_2q: 11.5,
            clifford_per_t: 2.5,
        }
    }
}

impl CostModel {
    pub fn with_eps(eps_base: f64) -> Result<Self> {
        let m = Self {
            eps_base,
            ..Self::default()
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_base > 0.0 && self.eps_base < 1.0) {
            return Err(Error::Config(format!(
                "eps must lie in (0, 1), got {}",
                self.eps_base
            )));
        }
        if !(self.coeff_1q > 0.0 && self.coeff_2q > 0.0 && self.clifford_per_t >= 0.0) {
            return Err(Error::Config("cost coefficients must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub mode: Mode,
    pub n_qubits: usize,
    pub n_paulis: usize,
    pub unitary_count: usize,
    pub unitary_depth: usize,
    pub structural_clifford_count: usize,
    pub eps_per_unitary: f64,
    pub est_t_count: f64,
    pub est_t_depth: f64,
    pub est_total_clifford: f64,
}

/// Cost report. The widest block in the program decides the coefficient
/// used for every block.
pub fn metrics(p: &CompiledProgram, model: &CostModel, n_paulis: usize) -> MetricsReport {
    let unitary_count = p.blocks().count();
    let unitary_depth = p
        .segments
        .iter()
        .flat_map(|s| &s.layers)
        .filter(|l| !l.is_empty())
        .count();
    let structural = p.structural_clifford_count();
    let mut report = MetricsReport {
        mode: p.provenance.mode,
        n_qubits: p.n,
        n_paulis,
        unitary_count,
        unitary_depth,
        structural_clifford_count: structural,
        eps_per_unitary: 0.0,
        est_t_count: 0.0,
        est_t_depth: 0.0,
        est_total_clifford: structural as f64,
    };
    if unitary_count == 0 {
        return report;
    }
    let eps = model.eps_base * n_paulis as f64 / unitary_count as f64;
    let coeff = if p.blocks().any(|b| b.width() > 1) {
        model.coeff_2q
    } else {
        model.coeff_1q
    };
    let block_cost = coeff * (1.0 / eps).log2().max(0.0);
    report.eps_per_unitary = eps;
    report.est_t_count = unitary_count as f64 * block_cost;
    // Every block has the same cost, so a layer costs one block.
    report.est_t_depth = unitary_depth as f64 * block_cost;
    report.est_total_clifford = structural as f64 + model.clifford_per_t * report.est_t_count;
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Qasm,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qasm" => Ok(Format::Qasm),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

fn emit_qasm(p: &CompiledProgram) -> String {
    let mut out = String::from("OPENQASM 2.0;\n");
    let _ = writeln!(out, "qreg q[{}];", p.n);
    for seg in &p.segments {
        for g in seg.frame.gates() {
            let _ = writeln!(out, "{g}");
        }
        for block in seg.blocks() {
            let qubits: Vec<String> = block.support.iter().map(|q| format!("q[{q}]")).collect();
            let qubits = qubits.join(",");
            for op in &block.ops {
                let _ = writeln!(out, "rot {} {} {qubits};", op.pauli, op.angle);
            }
        }
        for g in seg.unframe.gates() {
            let _ = writeln!(out, "{g}");
        }
    }
    out
}

pub fn emit(p: &CompiledProgram, format: Format) -> Result<String> {
    match format {
        Format::Qasm => Ok(emit_qasm(p)),
        Format::Json => Ok(serde_json::to_string_pretty(p)? + "\n"),
    }
}

/// Parses the `format` name first, so an unknown name is reported as such.
pub fn emit_named(p: &CompiledProgram, format: &str) -> Result<String> {
    emit(p, format.parse()?)
}

pub fn load_json(text: &str) -> Result<CompiledProgram> {
    let p: CompiledProgram = serde_json::from_str(text)?;
    for seg in &p.segments {
        for g in seg.frame.gates().iter().chain(seg.unframe.gates()) {
            g.validate(p.n)?;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::parse_pauli;

    fn term(s: &str, angle: f64, id: usize) -> PauliTerm {
        let mut t = parse_pauli(s, 0.5, 1.0).unwrap().with_id(id);
        t.angle = angle;
        t
    }

    fn block(support: Vec<usize>, ops: &[(&str, f64)]) -> RotationBlock {
        RotationBlock {
            support,
            ops: ops
                .iter()
                .enumerate()
                .map(|(i, &(p, a))| RotationOp {
                    pauli: p.into(),
                    angle: a,
                    origin: i,
                })
                .collect(),
            origin_ids: (0..ops.len()).collect(),
        }
    }

    fn prov() -> Provenance {
        Provenance {
            mode: Mode::Ncf1q,
            window: Some(4),
        }
    }

    #[test]
    fn eps_scales_with_fusion() {
        let mut p = CompiledProgram::empty(1, prov());
        let blocks = (0..315).map(|_| block(vec![0], &[("Z", 0.1)])).collect();
        p.segments.push(Segment {
            frame: CliffordCircuit::new(1),
            layers: vec![blocks],
            unframe: CliffordCircuit::new(1),
        });
        let m = metrics(&p, &CostModel::default(), 630);
        assert_eq!(m.unitary_count, 315);
        assert!((m.eps_per_unitary - 0.002).abs() < 1e-15);
        let m = metrics(&p, &CostModel::default(), 315);
        assert!((m.eps_per_unitary - 0.001).abs() < 1e-15);
    }

    #[test]
    fn single_qubit_t_estimate() {
        let terms: Vec<_> = (0..79).map(|i| term("Z", 0.3, i)).collect();
        let p = baseline_compile(&terms).unwrap();
        let m = metrics(&p, &CostModel::default(), 79);
        let expected = 79.0 * 3.0 * 1000f64.log2();
        assert!((m.est_t_count - expected).abs() < 1e-9);
        assert!((m.est_t_count - 2361.89).abs() < 0.01);
        assert_eq!(m.unitary_depth, 79);
    }

    #[test]
    fn empty_program_reports_zero() {
        let p = baseline_compile(&[]).unwrap();
        let m = metrics(&p, &CostModel::default(), 0);
        assert_eq!(m.unitary_count, 0);
        assert_eq!(m.est_t_count, 0.0);
        assert_eq!(m.est_t_depth, 0.0);
    }

    #[test]
    fn baseline_shapes() {
        let p = baseline_compile(&[term("ZIII", 1.0, 0)]).unwrap();
        assert!(p.segments[0].frame.is_empty());
        assert_eq!(p.segments[0].layers[0][0].support, vec![0]);

        let p = baseline_compile(&[term("ZZ", 1.0, 0)]).unwrap();
        assert_eq!(p.segments[0].frame.gates(), &[CliffordGate::Cx(0, 1)]);
        assert_eq!(p.structural_clifford_count(), 2);

        let p = baseline_compile(&[term("XYIZ", 1.0, 0)]).unwrap();
        let seg = &p.segments[0];
        assert_eq!(seg.frame.cnot_count(), 2);
        assert_eq!(seg.layers[0][0].support, vec![3]);
        assert_eq!(seg.unframe, seg.frame.inverse());
    }

    #[test]
    fn identity_term_is_phase_only() {
        let p = baseline_compile(&[term("II", 1.0, 0), term("ZI", 1.0, 1)]).unwrap();
        assert_eq!(p.phase_only, vec![0]);
        assert_eq!(p.blocks().count(), 1);
    }

    #[test]
    fn qasm_lines() {
        let mut p = CompiledProgram::empty(3, prov());
        let mut frame = CliffordCircuit::new(3);
        frame.push(CliffordGate::H(0)).unwrap();
        p.segments.push(Segment {
            unframe: frame.inverse(),
            frame,
            layers: vec![vec![block(vec![2], &[("Z", 0.5), ("X", 0.3)])]],
        });
        let text = emit(&p, Format::Qasm).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines,
            [
                "OPENQASM 2.0;",
                "qreg q[3];",
                "h q[0];",
                "rot Z 0.5 q[2];",
                "rot X 0.3 q[2];",
                "h q[0];"
            ]
        );
        assert!(matches!(
            emit_named(&p, "quil"),
            Err(Error::UnknownFormat(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let p = baseline_compile(&[term("XY", 0.7, 0), term("ZI", -0.2, 1)]).unwrap();
        let text = emit(&p, Format::Json).unwrap();
        assert_eq!(load_json(&text).unwrap(), p);
        assert_eq!(emit(&p, Format::Json).unwrap(), text);
    }

    #[test]
    fn structure_check_catches_shared_qubits() {
        let mut p = CompiledProgram::empty(2, prov());
        p.segments.push(Segment {
            frame: CliffordCircuit::new(2),
            layers: vec![vec![
                block(vec![0], &[("Z", 0.1)]),
                block(vec![0, 1], &[("XZ", 0.1)]),
            ]],
            unframe: CliffordCircuit::new(2),
        });
        assert!(matches!(
            p.check_structure(),
            Err(Error::ScheduleViolation(_))
        ));
    }

    #[test]
    fn mode_names() {
        for m in [Mode::Baseline, Mode::Ncf1q, Mode::Ncf2q] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
        assert!("ncf3q".parse::<Mode>().is_err());
    }
}
