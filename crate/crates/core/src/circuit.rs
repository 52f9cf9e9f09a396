//! Circuit representations: gate-level programs, Pauli-product circuits, and
//! the mixed instruction stream consumed by Clifford elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::rotation::{OpTag, RotationOp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    T,
    Tdg,
    CX,
    CCX,
    Measure,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::CX => 2,
            GateKind::CCX => 3,
            _ => 1,
        }
    }

    /// The lowercase QASM mnemonic.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::CX => "cx",
            GateKind::CCX => "ccx",
            GateKind::Measure => "measure",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Some(match s {
            "h" => GateKind::H,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "t" => GateKind::T,
            "tdg" => GateKind::Tdg,
            "cx" | "CX" => GateKind::CX,
            "ccx" => GateKind::CCX,
            "measure" => GateKind::Measure,
            _ => return None,
        })
    }

    pub fn is_clifford(self) -> bool {
        !matches!(self, GateKind::T | GateKind::Tdg | GateKind::CCX | GateKind::Measure)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateInstr {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl GateInstr {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self { kind, qubits }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.qubits.len() != self.kind.arity() {
            return Err(Error::Config(format!(
                "`{}` takes {} operand(s), got {}",
                self.kind.mnemonic(),
                self.kind.arity(),
                self.qubits.len()
            )));
        }
        check_operands(&self.qubits, num_qubits)
    }
}

pub(crate) fn check_operands(qubits: &[usize], num_qubits: usize) -> Result<()> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= num_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

impl fmt::Display for GateInstr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.mnemonic())?;
        for (i, q) in self.qubits.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { "," })?;
            write!(f, "q[{q}]")?;
        }
        Ok(())
    }
}

/// A gate-level program on a single register.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogicalCircuit {
    pub num_qubits: usize,
    pub instrs: Vec<GateInstr>,
}

impl LogicalCircuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            instrs: Vec::new(),
        }
    }

    pub fn push(&mut self, kind: GateKind, qubits: &[usize]) -> &mut Self {
        self.instrs.push(GateInstr::new(kind, qubits.to_vec()));
        self
    }

    /// Prints the circuit in the accepted QASM subset.
    pub fn to_qasm(&self) -> String {
        let mut out = format!("OPENQASM 2.0;\nqreg q[{}];\n", self.num_qubits);
        for instr in &self.instrs {
            out.push_str(&instr.to_string());
            out.push_str(";\n");
        }
        out
    }
}

/// A circuit of Pauli-product rotations followed by terminal Pauli measurements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPCircuit {
    pub num_qubits: usize,
    pub rotations: Vec<RotationOp>,
    pub measurements: Vec<PauliString>,
}

impl PPCircuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            rotations: Vec::new(),
            measurements: Vec::new(),
        }
    }

    /// Re-tags rotations with their position in program order.
    pub fn renumber(&mut self) {
        for (i, op) in self.rotations.iter_mut().enumerate() {
            *op = op.clone().with_tag(OpTag(i as u32));
        }
    }

    /// The native text format; reparses to an equal circuit (up to tags).
    pub fn to_native(&self) -> String {
        let mut out = format!("ppc {}\n", self.num_qubits);
        for op in &self.rotations {
            out.push_str(&op.to_string());
            out.push('\n');
        }
        for m in &self.measurements {
            out.push_str(&format!("measure {m}\n"));
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        for op in &self.rotations {
            op.pauli().check_len(self.num_qubits)?;
        }
        for m in &self.measurements {
            m.check_len(self.num_qubits)?;
        }
        Ok(())
    }
}

/// The Clifford gates that can be conjugated through a tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    CX(usize, usize),
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
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::Sdg(q)
            | CliffordGate::X(q)
            | CliffordGate::Y(q)
            | CliffordGate::Z(q) => vec![q],
            CliffordGate::CX(c, t) => vec![c, t],
        }
    }

    pub fn validate(self, num_qubits: usize) -> Result<()> {
        check_operands(&self.qubits(), num_qubits)
    }

    pub fn to_instr(self) -> GateInstr {
        let (kind, qubits) = match self {
            CliffordGate::H(q) => (GateKind::H, vec![q]),
            CliffordGate::S(q) => (GateKind::S, vec![q]),
            CliffordGate::Sdg(q) => (GateKind::Sdg, vec![q]),
            CliffordGate::X(q) => (GateKind::X, vec![q]),
            CliffordGate::Y(q) => (GateKind::Y, vec![q]),
            CliffordGate::Z(q) => (GateKind::Z, vec![q]),
            CliffordGate::CX(c, t) => (GateKind::CX, vec![c, t]),
        };
        GateInstr::new(kind, qubits)
    }
}

impl TryFrom<&GateInstr> for CliffordGate {
    type Error = Error;

    fn try_from(g: &GateInstr) -> Result<Self> {
        let q = |i: usize| {
            g.qubits
                .get(i)
                .copied()
                .ok_or_else(|| Error::Config(format!("missing operand for `{}`", g.kind.mnemonic())))
        };
        Ok(match g.kind {
            GateKind::H => CliffordGate::H(q(0)?),
            GateKind::S => CliffordGate::S(q(0)?),
            GateKind::Sdg => CliffordGate::Sdg(q(0)?),
            GateKind::X => CliffordGate::X(q(0)?),
            GateKind::Y => CliffordGate::Y(q(0)?),
            GateKind::Z => CliffordGate::Z(q(0)?),
            GateKind::CX => CliffordGate::CX(q(0)?, q(1)?),
            k => return Err(Error::UnsupportedGate(k.mnemonic().to_owned())),
        })
    }
}

/// One element of the stream fed to Clifford elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr {
    Clifford(CliffordGate),
    Rotation(RotationOp),
    Toffoli([usize; 3]),
    Measure(PauliString),
}

impl PPCircuit {
    pub fn to_instrs(&self) -> Vec<Instr> {
        self.rotations
            .iter()
            .cloned()
            .map(Instr::Rotation)
            .chain(self.measurements.iter().cloned().map(Instr::Measure))
            .collect()
    }
}
