//! Round-accurate execution of a plan on a single-exposed-edge architecture.
//!
//! Items are list-scheduled in plan order. An op starts once all its qubits
//! are free and an ancilla lane is available; a patch rotation occupies only
//! its qubit. Ops that find a basis unexposed get their rotations inline,
//! starting when all of the op's qubits are free.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::AngleKind;
use crate::circuit::PPCircuit;
use crate::error::{Error, Result};
use crate::optimizer::{prepare, schedule_inline, BasisState, Plan, PlanItem, Timing};
use crate::rotation::{OpTag, RotationOp};

/// Unit of the simulated clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimingMode {
    /// Every op takes `op_rounds`, every rotation `rotation_rounds`.
    #[default]
    Rounds,
    /// Per-kind surgery cycle counts at distance `d`.
    Cycles,
}

impl FromStr for TimingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rounds" => Ok(TimingMode::Rounds),
            "cycles" => Ok(TimingMode::Cycles),
            other => Err(Error::Config(format!("unknown timing mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchConfig {
    pub num_qubits: usize,
    pub ancilla_count: usize,
    pub rotation_rounds: u64,
    pub op_rounds: u64,
    pub code_distance: u64,
    pub timing: TimingMode,
}

impl ArchConfig {
    /// One ancilla lane per two qubits, 3-round rotations, 1-round ops, `d = 3`.
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            ancilla_count: num_qubits.div_ceil(2).max(1),
            rotation_rounds: 3,
            op_rounds: 1,
            code_distance: 3,
            timing: TimingMode::Rounds,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Config(format!("{what} must be at least 1")));
        if self.num_qubits == 0 {
            return bad("qubit count");
        }
        if self.ancilla_count == 0 {
            return bad("ancilla count");
        }
        if self.rotation_rounds == 0 {
            return bad("rotation rounds");
        }
        if self.op_rounds == 0 {
            return bad("op rounds");
        }
        if self.code_distance < 3 || self.code_distance.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "code distance must be odd and at least 3, got {}",
                self.code_distance
            )));
        }
        Ok(())
    }

    pub fn timing(&self) -> Timing {
        Timing {
            op_rounds: self.op_rounds,
            rotation_rounds: self.rotation_rounds,
        }
    }

    /// Duration of an op in clock units.
    pub fn op_duration(&self, op: &RotationOp) -> u64 {
        let d = self.code_distance;
        match self.timing {
            TimingMode::Rounds => self.op_rounds,
            // 1.5d + 3 for S-like, 2.5d + 4 for T-like and fused odd angles.
            TimingMode::Cycles => match op.angle().kind() {
                AngleKind::Clifford => (3 * d).div_ceil(2) + 3,
                _ => (5 * d).div_ceil(2) + 4,
            },
        }
    }

    pub fn rotation_duration(&self) -> u64 {
        match self.timing {
            TimingMode::Rounds => self.rotation_rounds,
            TimingMode::Cycles => self.rotation_rounds * self.code_distance,
        }
    }

    /// Clock units to cycles.
    pub fn cycles(&self, t: u64) -> u64 {
        match self.timing {
            TimingMode::Rounds => t * self.code_distance,
            TimingMode::Cycles => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Resource {
    Qubit(usize),
    Ancilla(usize),
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Qubit(q) => write!(f, "q{q}"),
            Resource::Ancilla(a) => write!(f, "a{a}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Execute,
    Rotate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub start: u64,
    pub end: u64,
    pub resource: Resource,
    pub action: Action,
    pub tag: Option<OpTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimOutcome {
    pub total_rounds: u64,
    pub rotation_count: usize,
    /// Rounds ops spent waiting for an ancilla after their qubits were ready.
    pub stall_rounds: u64,
    pub executed_ops: usize,
    pub frame_ops: usize,
    pub events: Vec<Event>,
}

struct Machine<'a> {
    cfg: &'a ArchConfig,
    ready: Vec<u64>,
    basis: BasisState,
    lanes: BinaryHeap<Reverse<(u64, usize)>>,
    out: SimOutcome,
}

impl Machine<'_> {
    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.cfg.num_qubits {
            return Err(Error::InvalidPlan(format!("unknown qubit {q}")));
        }
        Ok(())
    }

    fn occupy(&mut self, start: u64, end: u64, resource: Resource, action: Action, tag: Option<OpTag>) {
        self.out.total_rounds = self.out.total_rounds.max(end);
        self.out.events.push(Event {
            start,
            end,
            resource,
            action,
            tag,
        });
    }

    fn rotate(&mut self, q: usize, start: u64) -> u64 {
        let end = start + self.cfg.rotation_duration();
        self.occupy(start, end, Resource::Qubit(q), Action::Rotate, None);
        self.ready[q] = end;
        self.out.rotation_count += 1;
        end
    }

    fn execute(&mut self, op: &RotationOp) -> Result<()> {
        if op.num_qubits() > self.cfg.num_qubits {
            return Err(Error::InvalidPlan(format!("{op} is wider than the machine")));
        }
        let support = op.pauli().support();
        let mut deps = support.iter().map(|&q| self.ready[q]).max().unwrap_or(0);
        let missing = self.basis.mismatches(op)?;
        if !missing.is_empty() {
            let inline_start = deps;
            for &(q, _) in &missing {
                deps = deps.max(self.rotate(q, inline_start));
            }
        }
        let Reverse((free, lane)) = self.lanes.pop().expect("at least one lane");
        let start = deps.max(free);
        self.out.stall_rounds += start - deps;
        let end = start + self.cfg.op_duration(op);
        self.lanes.push(Reverse((end, lane)));
        self.occupy(start, end, Resource::Ancilla(lane), Action::Execute, Some(op.tag()));
        for &q in &support {
            self.occupy(start, end, Resource::Qubit(q), Action::Execute, Some(op.tag()));
            self.ready[q] = end;
        }
        self.basis.execute(op);
        self.out.executed_ops += 1;
        Ok(())
    }
}

/// Simulates `plan` and returns the round count with its event log.
pub fn simulate(plan: &Plan, cfg: &ArchConfig) -> Result<SimOutcome> {
    cfg.validate()?;
    if plan.init.len() != cfg.num_qubits || plan.num_qubits != cfg.num_qubits {
        return Err(Error::InvalidPlan(format!(
            "plan has {} qubits, machine has {}",
            plan.num_qubits, cfg.num_qubits
        )));
    }
    let mut m = Machine {
        cfg,
        ready: vec![0; cfg.num_qubits],
        basis: plan.init.clone(),
        lanes: (0..cfg.ancilla_count).map(|a| Reverse((0, a))).collect(),
        out: SimOutcome::default(),
    };
    for item in &plan.items {
        match item {
            PlanItem::RotatePatch { qubit, from, to, .. } => {
                m.check_qubit(*qubit)?;
                if m.basis.get(*qubit) != *from {
                    return Err(Error::InvalidPlan(format!(
                        "rotation of q{qubit} from {from}, but it exposes {}",
                        m.basis.get(*qubit)
                    )));
                }
                let start = m.ready[*qubit];
                m.rotate(*qubit, start);
                m.basis.set(*qubit, *to);
            }
            PlanItem::Execute { op, .. } => m.execute(op)?,
            PlanItem::PauliFrame { op } => {
                op.pauli().check_len(cfg.num_qubits)?;
                m.out.frame_ops += 1;
            }
        }
    }
    Ok(m.out)
}

/// Program order, inline rotations, no passes.
pub fn simulate_baseline(ppc: &PPCircuit, cfg: &ArchConfig) -> Result<SimOutcome> {
    let ops = prepare(ppc);
    let plan = schedule_inline(ppc.num_qubits, &ops, &BasisState::all_z(ppc.num_qubits), cfg.timing())?;
    simulate(&plan, cfg)
}

/// Fails if two events overlap on one resource.
pub fn check_exclusive(events: &[Event]) -> Result<()> {
    let mut by_resource: BTreeMap<Resource, Vec<(u64, u64)>> = BTreeMap::new();
    for e in events {
        by_resource.entry(e.resource).or_default().push((e.start, e.end));
    }
    for (r, mut spans) in by_resource {
        spans.sort_unstable();
        for w in spans.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::Invariant(format!(
                    "{r} busy over [{}, {}) and [{}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
    }
    Ok(())
}

/// Event log as `round,resource,action,tag` lines, one line per start and end.
pub fn trace(events: &[Event]) -> String {
    let mut lines: Vec<(u64, Resource, &str, String)> = Vec::with_capacity(2 * events.len());
    for e in events {
        let tag = e.tag.map_or_else(|| "-".to_owned(), |t| t.to_string());
        let action = match e.action {
            Action::Execute => "exec",
            Action::Rotate => "rotate",
        };
        lines.push((e.start, e.resource, action, tag.clone()));
        lines.push((e.end, e.resource, "release", tag));
    }
    lines.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| (a.2 != "release").cmp(&(b.2 != "release"))));
    let mut out = String::from("round,resource,action,tag\n");
    for (round, r, action, tag) in lines {
        writeln!(out, "{round},{r},{action},{tag}").expect("writing to a String");
    }
    out
}
