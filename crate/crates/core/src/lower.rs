//! Lowering of Clifford+T gates to Pauli-product rotations.
//!
//! Rotation `θ P` means `exp(-iθP/2)`, so `T ≅ π/4 Z`, `S ≅ π/2 Z` and a Pauli
//! gate is a `π` rotation, all up to global phase. The multi-rotation forms of
//! `H` and `CX` are fixed by a dense-matrix check in the tests.

use crate::angle::Angle;
use crate::circuit::{CliffordGate, GateInstr, GateKind, Instr, LogicalCircuit, PPCircuit};
use crate::pauli::{PauliLetter, PauliString};
use crate::rotation::{OpTag, RotationOp};

/// How CCX reaches the elimination stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToffoliMode {
    /// Keep CCX whole so elimination can append its precomputed rows.
    #[default]
    FastPath,
    /// Expand into the 7 T + 8 Clifford sequence.
    Expand,
}

/// The textbook CCX(a, b, c) decomposition, in time order.
pub fn toffoli_decomposition(a: usize, b: usize, c: usize) -> [GateInstr; 15] {
    use GateKind::*;
    let g = |k, q: &[usize]| GateInstr::new(k, q.to_vec());
    [
        g(H, &[c]),
        g(CX, &[b, c]),
        g(Tdg, &[c]),
        g(CX, &[a, c]),
        g(T, &[c]),
        g(CX, &[b, c]),
        g(Tdg, &[c]),
        g(CX, &[a, c]),
        g(T, &[b]),
        g(T, &[c]),
        g(H, &[c]),
        g(CX, &[a, b]),
        g(T, &[a]),
        g(Tdg, &[b]),
        g(CX, &[a, b]),
    ]
}

fn rot(n: usize, entries: &[(usize, PauliLetter)], angle: Angle) -> RotationOp {
    RotationOp::new(PauliString::from_sparse(n, entries), angle, OpTag::default())
        .expect("lowering never emits zero angles")
}

/// Rotations equivalent to one Clifford gate, in time order.
pub fn lower_clifford(gate: CliffordGate, n: usize) -> Vec<RotationOp> {
    use PauliLetter::{X, Y, Z};
    match gate {
        CliffordGate::H(q) => vec![
            rot(n, &[(q, Z)], Angle::PI_2),
            rot(n, &[(q, X)], Angle::PI_2),
            rot(n, &[(q, Z)], Angle::PI_2),
        ],
        CliffordGate::S(q) => vec![rot(n, &[(q, Z)], Angle::PI_2)],
        CliffordGate::Sdg(q) => vec![rot(n, &[(q, Z)], -Angle::PI_2)],
        CliffordGate::X(q) => vec![rot(n, &[(q, X)], Angle::PI)],
        CliffordGate::Y(q) => vec![rot(n, &[(q, Y)], Angle::PI)],
        CliffordGate::Z(q) => vec![rot(n, &[(q, Z)], Angle::PI)],
        CliffordGate::CX(c, t) => vec![
            rot(n, &[(c, Z)], Angle::PI_2),
            rot(n, &[(t, X)], Angle::PI_2),
            rot(n, &[(c, Z), (t, X)], -Angle::PI_2),
        ],
    }
}

/// Rotations equivalent to one gate, in time order. Measurements lower to nothing.
pub fn lower_gate(g: &GateInstr, n: usize) -> Vec<RotationOp> {
    match g.kind {
        GateKind::T => vec![rot(n, &[(g.qubits[0], PauliLetter::Z)], Angle::PI_4)],
        GateKind::Tdg => vec![rot(n, &[(g.qubits[0], PauliLetter::Z)], -Angle::PI_4)],
        GateKind::CCX => toffoli_decomposition(g.qubits[0], g.qubits[1], g.qubits[2])
            .iter()
            .flat_map(|inner| lower_gate(inner, n))
            .collect(),
        GateKind::Measure => Vec::new(),
        _ => {
            let clifford = CliffordGate::try_from(g).expect("kind checked above");
            lower_clifford(clifford, n)
        }
    }
}

/// Lowers every gate to Pauli-product rotations; measurements become terminal `Z` strings.
pub fn lower_to_pauli_products(c: &LogicalCircuit) -> PPCircuit {
    let n = c.num_qubits;
    let mut out = PPCircuit::new(n);
    for g in &c.instrs {
        if g.kind == GateKind::Measure {
            out.measurements
                .push(PauliString::single(n, g.qubits[0], PauliLetter::Z));
        } else {
            out.rotations.extend(lower_gate(g, n));
        }
    }
    out.renumber();
    out
}

/// The mixed stream for Clifford elimination: Cliffords stay explicit gates,
/// T/Tdg become `π/4` rotations.
pub fn to_instrs(c: &LogicalCircuit, toffoli: ToffoliMode) -> Vec<Instr> {
    let n = c.num_qubits;
    let mut out = Vec::with_capacity(c.instrs.len());
    let push = |g: &GateInstr, out: &mut Vec<Instr>| match g.kind {
        GateKind::T | GateKind::Tdg => out.extend(lower_gate(g, n).into_iter().map(Instr::Rotation)),
        GateKind::Measure => out.push(Instr::Measure(PauliString::single(
            n,
            g.qubits[0],
            PauliLetter::Z,
        ))),
        GateKind::CCX => unreachable!(),
        _ => out.push(Instr::Clifford(CliffordGate::try_from(g).expect("clifford kind"))),
    };
    for g in &c.instrs {
        if g.kind == GateKind::CCX {
            let (a, b, t) = (g.qubits[0], g.qubits[1], g.qubits[2]);
            match toffoli {
                ToffoliMode::FastPath => out.push(Instr::Toffoli([a, b, t])),
                ToffoliMode::Expand => {
                    for inner in toffoli_decomposition(a, b, t) {
                        push(&inner, &mut out);
                    }
                }
            }
        } else {
            push(g, &mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shown(ops: &[RotationOp]) -> Vec<String> {
        ops.iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn single_qubit_rules() {
        let mut c = LogicalCircuit::new(1);
        c.push(GateKind::T, &[0]);
        assert_eq!(shown(&lower_to_pauli_products(&c).rotations), ["pi/4 +Z"]);
        let mut c = LogicalCircuit::new(1);
        c.push(GateKind::S, &[0]);
        assert_eq!(shown(&lower_to_pauli_products(&c).rotations), ["pi/2 +Z"]);
        let mut c = LogicalCircuit::new(1);
        c.push(GateKind::H, &[0]);
        assert_eq!(
            shown(&lower_to_pauli_products(&c).rotations),
            ["pi/2 +Z", "pi/2 +X", "pi/2 +Z"]
        );
        let mut c = LogicalCircuit::new(1);
        c.push(GateKind::Tdg, &[0]).push(GateKind::Sdg, &[0]);
        assert_eq!(shown(&lower_to_pauli_products(&c).rotations), ["-pi/4 +Z", "-pi/2 +Z"]);
    }

    #[test]
    fn ccx_lowers_to_seven_t_rotations() {
        let mut c = LogicalCircuit::new(3);
        c.push(GateKind::CCX, &[0, 1, 2]);
        let ppc = lower_to_pauli_products(&c);
        let t_like = ppc
            .rotations
            .iter()
            .filter(|o| o.angle().kind() == crate::angle::AngleKind::TLike)
            .count();
        assert_eq!(t_like, 7);
        assert_eq!(ppc.rotations.len(), 7 + 2 * 3 + 6 * 3);
    }

    #[test]
    fn measurements_become_z_strings() {
        let mut c = LogicalCircuit::new(2);
        c.push(GateKind::H, &[1]).push(GateKind::Measure, &[1]);
        let ppc = lower_to_pauli_products(&c);
        assert_eq!(ppc.measurements, vec!["+IZ".parse().unwrap()]);
    }

    #[test]
    fn instr_stream_keeps_cliffords() {
        let mut c = LogicalCircuit::new(3);
        c.push(GateKind::H, &[0])
            .push(GateKind::T, &[0])
            .push(GateKind::CCX, &[0, 1, 2]);
        let fast = to_instrs(&c, ToffoliMode::FastPath);
        assert_eq!(fast.len(), 3);
        assert!(matches!(fast[2], Instr::Toffoli([0, 1, 2])));
        let expanded = to_instrs(&c, ToffoliMode::Expand);
        assert_eq!(expanded.len(), 2 + 15);
    }
}
