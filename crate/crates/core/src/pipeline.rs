//! End-to-end compilation (grouping, reduction, assembly) and oracle-based
//! verification of the result.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use tracing::{debug, info, warn};

use crate::circuit::{
    assemble, baseline_compile, CompiledProgram, GroupConjugation, Mode, Provenance,
};
use crate::clifford::CliffordCircuit;
use crate::error::{Error, Result};
use crate::grouping::{
    group_single, group_two, reorder, Group, GroupKind, Grouping, MAX_SINGLE_GROUP, MAX_TWO_GROUP,
};
use crate::oracle::{equal_up_to_phase, ordered_exponential, program_unitary, segment_unitary};
use crate::pauli::{PauliTerm, Tableau};
use crate::synth::{conjugate_members, reduce_anticommuting, reduce_commuting, SupportWidth};

#[derive(Clone, Debug)]
pub struct Compilation {
    pub program: CompiledProgram,
    /// `None` in baseline mode.
    pub grouping: Option<Grouping>,
}

fn index_terms(terms: &[PauliTerm]) -> Result<HashMap<usize, &PauliTerm>> {
    let mut by_id = HashMap::with_capacity(terms.len());
    for t in terms {
        if by_id.insert(t.id, t).is_some() {
            return Err(Error::Config(format!("duplicate term id {}", t.id)));
        }
    }
    Ok(by_id)
}

fn tableau(n: usize, ids: &[usize], by_id: &HashMap<usize, &PauliTerm>) -> Result<Tableau> {
    Tableau::new(n, ids.iter().map(|i| by_id[i].clone()).collect())
}

/// Reduces one group and conjugates all of its members.
pub fn conjugate_group(
    n: usize,
    group: &Group,
    by_id: &HashMap<usize, &PauliTerm>,
) -> Result<GroupConjugation> {
    let members = tableau(n, &group.member_ids, by_id)?;
    let (circuit, support) = match group.kind {
        GroupKind::Anticommuting1Q | GroupKind::Anticommuting2Q => {
            let gens = tableau(n, &group.generator_ids, by_id)?;
            let width = if gens.len() == 2 {
                SupportWidth::One
            } else {
                SupportWidth::Two
            };
            let r = reduce_anticommuting(&gens, width)?;
            (r.circuit, r.support)
        }
        GroupKind::Commuting => {
            let rows: Vec<PauliTerm> = members
                .rows()
                .iter()
                .filter(|t| !t.pauli.is_identity())
                .cloned()
                .collect();
            if rows.is_empty() {
                (CliffordCircuit::new(n), Vec::new())
            } else {
                let r = reduce_commuting(&Tableau::new(n, rows)?)?;
                (r.circuit, r.support)
            }
        }
    };
    let members = conjugate_members(&members, &circuit, &support)?;
    Ok(GroupConjugation {
        circuit,
        members,
        support,
    })
}

/// Size bounds and the partition property for a grouping of `terms`.
pub fn check_grouping(grouping: &Grouping, terms: &[PauliTerm]) -> Result<()> {
    let n = terms.first().map(PauliTerm::num_qubits).unwrap_or(0);
    let by_id = index_terms(terms)?;
    let mut seen = HashMap::new();
    for (gi, g) in grouping.groups.iter().enumerate() {
        let bound = match g.kind {
            GroupKind::Anticommuting1Q => MAX_SINGLE_GROUP,
            GroupKind::Anticommuting2Q => MAX_TWO_GROUP,
            GroupKind::Commuting => n.max(1),
        };
        if g.len() > bound {
            return Err(Error::ScheduleViolation(format!(
                "group {gi} ({:?}) has {} members, bound {bound}",
                g.kind,
                g.len()
            )));
        }
        for &id in &g.member_ids {
            if !by_id.contains_key(&id) {
                return Err(Error::ScheduleViolation(format!(
                    "group {gi} names unknown term {id}"
                )));
            }
            if let Some(prev) = seen.insert(id, gi) {
                return Err(Error::ScheduleViolation(format!(
                    "term {id} is in groups {prev} and {gi}"
                )));
            }
        }
        if g.kind == GroupKind::Commuting {
            for (k, &a) in g.member_ids.iter().enumerate() {
                for &b in &g.member_ids[k + 1..] {
                    if !by_id[&a].pauli.commutes_with(&by_id[&b].pauli) {
                        return Err(Error::ScheduleViolation(format!(
                            "commuting group {gi} holds anticommuting terms {a} and {b}"
                        )));
                    }
                }
            }
        }
    }
    if seen.len() != terms.len() {
        return Err(Error::ScheduleViolation(format!(
            "{} of {} terms are grouped",
            seen.len(),
            terms.len()
        )));
    }
    Ok(())
}

/// Compiles `terms` (unique ids, uniform width). `window` defaults per mode.
pub fn compile(terms: &[PauliTerm], mode: Mode, window: Option<usize>) -> Result<Compilation> {
    let n = terms.first().map(PauliTerm::num_qubits).unwrap_or(0);
    let by_id = index_terms(terms)?;
    if mode == Mode::Baseline {
        return Ok(Compilation {
            program: baseline_compile(terms)?,
            grouping: None,
        });
    }
    let w = window
        .or(mode.default_window())
        .expect("fusing modes have a window");
    let grouping = match mode {
        Mode::Ncf1q => group_single(terms, w)?,
        _ => group_two(terms, w)?,
    };
    check_grouping(&grouping, terms)?;
    for t in terms.iter().filter(|t| t.pauli.is_identity()) {
        warn!(id = t.id, "identity term contributes only a global phase");
    }
    debug!(groups = grouping.groups.len(), "grouping complete");

    let conjugations = grouping
        .groups
        .iter()
        .map(|g| conjugate_group(n, g, &by_id))
        .collect::<Result<Vec<_>>>()?;
    let footprints: Vec<_> = conjugations
        .iter()
        .map(GroupConjugation::footprint)
        .collect();
    let schedule = reorder(&footprints);
    let program = assemble(
        n,
        &grouping.groups,
        &conjugations,
        &schedule,
        Provenance {
            mode,
            window: Some(w),
        },
    )?;
    program.check_structure()?;
    info!(
        terms = terms.len(),
        groups = grouping.groups.len(),
        segments = program.segments.len(),
        "compiled"
    );
    Ok(Compilation {
        program,
        grouping: Some(grouping),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentCheck {
    pub index: usize,
    pub passed: bool,
    /// `‖U − φV‖_F` at the aligning phase.
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub tolerance: f64,
    pub segments: Vec<SegmentCheck>,
    pub first_failing_segment: Option<usize>,
    pub whole_program_passed: bool,
    pub message: String,
}

fn phase_distance(u: &crate::oracle::DenseUnitary, v: &crate::oracle::DenseUnitary) -> f64 {
    let overlap = v.adjoint().matmul(u).map(|m| m.trace()).unwrap_or_default();
    let phase = if overlap.norm() > 1e-12 {
        overlap / overlap.norm()
    } else {
        num_complex::Complex64::new(1.0, 0.0)
    };
    u.distance(&v.scale(phase))
}

/// Dense check of `program` against the exponentials of `terms` in compiled
/// order: first segment by segment, then as a whole.
pub fn verify_program(
    program: &CompiledProgram,
    terms: &[PauliTerm],
    tol: f64,
) -> Result<VerifyReport> {
    let by_id = index_terms(terms)?;
    let mut order = program.compiled_order();
    order.extend(&program.phase_only);
    order.sort_unstable();
    let mut ids: Vec<usize> = terms.iter().map(|t| t.id).collect();
    ids.sort_unstable();
    if order != ids {
        return Ok(VerifyReport {
            passed: false,
            tolerance: tol,
            segments: Vec::new(),
            first_failing_segment: None,
            whole_program_passed: false,
            message: "compiled program does not cover every term exactly once".into(),
        });
    }

    let n = program.n;
    let lookup = |id: usize| -> Result<&PauliTerm> {
        by_id
            .get(&id)
            .copied()
            .ok_or_else(|| Error::Config(format!("program names unknown term {id}")))
    };
    let mut segments = Vec::new();
    for (i, seg) in program.segments.iter().enumerate() {
        let u = segment_unitary(program, i)?;
        let origin = seg
            .blocks()
            .flat_map(|b| b.ops.iter().map(|op| op.origin))
            .map(lookup)
            .collect::<Result<Vec<_>>>()?;
        let v = ordered_exponential(n, origin)?;
        let passed = equal_up_to_phase(&u, &v, tol)?;
        segments.push(SegmentCheck {
            index: i,
            passed,
            distance: phase_distance(&u, &v),
        });
    }
    let u = program_unitary(program)?;
    let all = program
        .compiled_order()
        .into_iter()
        .map(lookup)
        .collect::<Result<Vec<_>>>()?;
    let whole = equal_up_to_phase(&u, &ordered_exponential(n, all)?, tol)?;
    let first_failing_segment = segments.iter().find(|s| !s.passed).map(|s| s.index);
    let passed = whole && first_failing_segment.is_none();
    let message = match first_failing_segment {
        Some(i) => format!(
            "segment {i} differs from its terms' exponentials (distance {:.3e})",
            segments[i].distance
        ),
        None if !whole => "segments match individually but the program does not".into(),
        None => format!("program matches the ordered exponentials within {tol:e}"),
    };
    Ok(VerifyReport {
        passed,
        tolerance: tol,
        segments,
        first_failing_segment,
        whole_program_passed: whole,
        message,
    })
}
