//! Back-to-front Clifford elimination.
//!
//! Walking the instruction stream from the end, measurements and rotations
//! append tableau rows and every Clifford `C` conjugates all rows appended so
//! far by `P ↦ C† P C`. Afterwards the input equals the Clifford-free circuit
//! followed by the product of the pushed Cliffords, which is absorbed into the
//! measured observables.
//!
//! Rows can be sharded round-robin over worker threads. Every worker walks the
//! whole stream, keeps the rows whose global index falls to it, and conjugates
//! its own shard. Output order is independent of the worker count.

use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Barrier;

use crate::angle::Angle;
use crate::circuit::{check_operands, CliffordGate, Instr, LogicalCircuit, PPCircuit};
use crate::error::{Error, Result};
use crate::lower::{lower_clifford, to_instrs, toffoli_decomposition, ToffoliMode};
use crate::pauli::{PauliLetter, PauliString};
use crate::rotation::{OpTag, RotationOp};
use crate::vtab::{DryRun, RowKind, VTab};

/// Rows appended by a CCX(a, b, c), in append order, as eighths of π and
/// letters on (a, b, c). Equal to walking the 7 T + 8 Clifford expansion
/// backwards; the Cliffords multiply to the identity, so earlier rows are
/// untouched.
const TOFFOLI_ROWS: [(i64, [PauliLetter; 3]); 7] = {
    use PauliLetter::{I, X, Z};
    [
        (-2, [Z, Z, I]),
        (2, [Z, I, I]),
        (2, [I, I, X]),
        (2, [I, Z, I]),
        (-2, [Z, I, X]),
        (2, [Z, Z, X]),
        (-2, [I, Z, X]),
    ]
};

/// The seven `(string, angle)` rows of the CCX fast path, in append order.
pub fn toffoli_rows(num_qubits: usize, a: usize, b: usize, c: usize) -> Vec<(PauliString, Angle)> {
    TOFFOLI_ROWS
        .iter()
        .map(|&(k, [la, lb, lc])| {
            let p = PauliString::from_sparse(num_qubits, &[(a, la), (b, lb), (c, lc)]);
            (p, Angle::from_eighths(k))
        })
        .collect()
}

/// Appends the seven precomputed CCX rows without touching existing rows.
pub fn apply_toffoli_fastpath(t: &mut VTab, a: usize, b: usize, c: usize, tag: OpTag) -> Result<()> {
    check_operands(&[a, b, c], t.num_qubits())?;
    for (p, angle) in toffoli_rows(t.num_qubits(), a, b, c) {
        t.append_row(&p, RowKind::Rotation(angle), tag)?;
    }
    Ok(())
}

/// Reference path: walks the full CCX expansion backwards through the tableau.
pub fn apply_toffoli_sequential(t: &mut VTab, a: usize, b: usize, c: usize, tag: OpTag) -> Result<()> {
    check_operands(&[a, b, c], t.num_qubits())?;
    let n = t.num_qubits();
    for g in toffoli_decomposition(a, b, c).iter().rev() {
        match CliffordGate::try_from(g) {
            Ok(clifford) => t.apply_clifford(clifford.inverse())?,
            Err(_) => {
                for op in crate::lower::lower_gate(g, n) {
                    t.append_row(op.pauli(), RowKind::Rotation(op.angle()), tag)?;
                }
            }
        }
    }
    Ok(())
}

/// Thresholds for keeping a Clifford in place instead of pushing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostAwareConfig {
    /// Keep the gate if pushing it would put a `Y` on any rotation row.
    pub block_new_y: bool,
    /// Keep the gate if more than this many rotation rows would grow in weight.
    pub max_weight_increase_rows: usize,
}

impl Default for CostAwareConfig {
    fn default() -> Self {
        Self {
            block_new_y: true,
            max_weight_increase_rows: 0,
        }
    }
}

impl CostAwareConfig {
    fn keeps(&self, d: DryRun) -> bool {
        (self.block_new_y && d.new_y_rows > 0) || d.weight_increase_rows > self.max_weight_increase_rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PushPolicy {
    /// Push every Clifford to the end.
    #[default]
    Always,
    /// Dry-run each conjugation and keep the gate as rotations when it hurts.
    CostAware(CostAwareConfig),
}

impl FromStr for PushPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "always" => Ok(PushPolicy::Always),
            "cost-aware" => Ok(PushPolicy::CostAware(CostAwareConfig::default())),
            other => Err(Error::Config(format!("unknown push policy `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminateOptions {
    pub policy: PushPolicy,
    pub workers: usize,
}

impl Default for EliminateOptions {
    fn default() -> Self {
        Self {
            policy: PushPolicy::Always,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    /// Clifford-free rotations in program order plus conjugated measurements.
    pub circuit: PPCircuit,
    /// Cliffords moved past the end, in time order. The input circuit equals
    /// `circuit` followed by these gates.
    pub pushed: Vec<CliffordGate>,
    /// Cliffords kept in place as `π/2`/`π` rotations, in time order.
    pub kept: Vec<CliffordGate>,
}

fn validate_stream(num_qubits: usize, instrs: &[Instr]) -> Result<usize> {
    if num_qubits == 0 {
        return Err(Error::NoQubits);
    }
    let mut rows = 0;
    let mut seen_measure = false;
    for instr in instrs {
        match instr {
            Instr::Measure(p) => {
                p.check_len(num_qubits)?;
                seen_measure = true;
                rows += 1;
                continue;
            }
            Instr::Clifford(g) => g.validate(num_qubits)?,
            Instr::Rotation(op) => {
                op.pauli().check_len(num_qubits)?;
                rows += 1;
            }
            Instr::Toffoli(q) => {
                check_operands(q, num_qubits)?;
                rows += TOFFOLI_ROWS.len();
            }
        }
        if seen_measure {
            return Err(Error::Config("gate after a terminal measurement".into()));
        }
    }
    Ok(rows)
}

struct CostSync {
    barrier: Barrier,
    new_y: Vec<AtomicUsize>,
    weight: Vec<AtomicUsize>,
}

struct Shard {
    tab: VTab,
    kept: Vec<CliffordGate>,
    pushed: Vec<CliffordGate>,
}

struct Worker<'a> {
    id: usize,
    workers: usize,
    global: usize,
    tab: VTab,
    policy: PushPolicy,
    sync: Option<&'a CostSync>,
}

impl Worker<'_> {
    fn append(&mut self, p: &PauliString, kind: RowKind, tag: OpTag) {
        if self.global % self.workers == self.id {
            self.tab.append_row(p, kind, tag).expect("stream validated");
        }
        self.global += 1;
    }

    fn should_keep(&self, g: CliffordGate, slot: usize) -> bool {
        let PushPolicy::CostAware(cfg) = self.policy else {
            return false;
        };
        let local = self.tab.dry_run(g.inverse()).expect("stream validated");
        let total = match self.sync {
            None => local,
            Some(sync) => {
                sync.new_y[slot].fetch_add(local.new_y_rows, Ordering::Relaxed);
                sync.weight[slot].fetch_add(local.weight_increase_rows, Ordering::Relaxed);
                sync.barrier.wait();
                DryRun {
                    new_y_rows: sync.new_y[slot].load(Ordering::Relaxed),
                    weight_increase_rows: sync.weight[slot].load(Ordering::Relaxed),
                }
            }
        };
        cfg.keeps(total)
    }

    fn run(mut self, instrs: &[Instr]) -> Shard {
        let n = self.tab.num_qubits();
        let mut kept = Vec::new();
        let mut pushed = Vec::new();
        let mut slot = 0;
        for instr in instrs.iter().rev() {
            match instr {
                Instr::Measure(p) => self.append(p, RowKind::Measurement, OpTag::default()),
                Instr::Rotation(op) => self.append(op.pauli(), RowKind::Rotation(op.angle()), op.tag()),
                Instr::Toffoli([a, b, c]) => {
                    for (p, angle) in toffoli_rows(n, *a, *b, *c) {
                        self.append(&p, RowKind::Rotation(angle), OpTag::default());
                    }
                }
                Instr::Clifford(g) => {
                    if self.should_keep(*g, slot) {
                        kept.push(*g);
                        for op in lower_clifford(*g, n).iter().rev() {
                            self.append(op.pauli(), RowKind::Rotation(op.angle()), OpTag::default());
                        }
                    } else {
                        pushed.push(*g);
                        self.tab.apply_clifford(g.inverse()).expect("stream validated");
                    }
                    slot += 1;
                }
            }
        }
        kept.reverse();
        pushed.reverse();
        Shard {
            tab: self.tab,
            kept,
            pushed,
        }
    }
}

/// Eliminates every Clifford from `instrs` on `num_qubits` qubits.
pub fn eliminate(num_qubits: usize, instrs: &[Instr], opts: &EliminateOptions) -> Result<Elimination> {
    let workers = opts.workers;
    if workers == 0 {
        return Err(Error::Config("worker count must be at least 1".into()));
    }
    let rows = validate_stream(num_qubits, instrs)?;
    let per_shard = rows / workers + 1;
    let worker = |id, sync| -> Result<Worker<'_>> {
        Ok(Worker {
            id,
            workers,
            global: 0,
            tab: VTab::with_capacity(num_qubits, per_shard)?,
            policy: opts.policy,
            sync,
        })
    };

    let shards: Vec<Shard> = if workers == 1 {
        vec![worker(0, None)?.run(instrs)]
    } else {
        let sync = matches!(opts.policy, PushPolicy::CostAware(_)).then(|| {
            let slots = instrs.iter().filter(|i| matches!(i, Instr::Clifford(_))).count();
            CostSync {
                barrier: Barrier::new(workers),
                new_y: (0..slots).map(|_| AtomicUsize::new(0)).collect(),
                weight: (0..slots).map(|_| AtomicUsize::new(0)).collect(),
            }
        });
        let ws = (0..workers)
            .map(|id| worker(id, sync.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        std::thread::scope(|s| {
            let handles: Vec<_> = ws.into_iter().map(|w| s.spawn(move || w.run(instrs))).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("elimination worker panicked"))
                .collect()
        })
    };
    Ok(assemble(num_qubits, shards))
}

fn assemble(num_qubits: usize, mut shards: Vec<Shard>) -> Elimination {
    let workers = shards.len();
    let total: usize = shards.iter().map(|s| s.tab.num_rows()).sum();
    let mut circuit = PPCircuit::new(num_qubits);
    for g in (0..total).rev() {
        let tab = &shards[g % workers].tab;
        let local = g / workers;
        let p = tab.decode_row(local);
        match tab.row_meta(local).kind {
            RowKind::Measurement => circuit.measurements.push(p),
            RowKind::Rotation(angle) => circuit.rotations.push(
                RotationOp::new(p, angle, OpTag::default()).expect("rows never hold zero angles"),
            ),
        }
    }
    circuit.renumber();
    let first = shards.swap_remove(0);
    Elimination {
        circuit,
        pushed: first.pushed,
        kept: first.kept,
    }
}

/// Lowers a gate-level program and eliminates its Cliffords.
pub fn eliminate_circuit(
    c: &LogicalCircuit,
    toffoli: ToffoliMode,
    opts: &EliminateOptions,
) -> Result<Elimination> {
    eliminate(c.num_qubits, &to_instrs(c, toffoli), opts)
}

/// Runs a Pauli-product circuit through elimination. It holds no Clifford
/// gates, so only the tags change.
pub fn eliminate_ppc(c: &PPCircuit, opts: &EliminateOptions) -> Result<Elimination> {
    eliminate(c.num_qubits, &c.to_instrs(), opts)
}
