//! The end-to-end flow: eliminate Cliffords, run the selected passes, and cost
//! the result against the unoptimized baseline.

use std::fmt;
use std::str::FromStr;

use crate::circuit::PPCircuit;
use crate::eliminate::{eliminate, EliminateOptions, Elimination, PushPolicy};
use crate::error::{Error, Result};
use crate::htab::LayerOrder;
use crate::lower::{to_instrs, ToffoliMode};
use crate::optimizer::{
    build_layers, fuse_layers, prepare, reorder_for_basis, schedule_inline, schedule_with_latency_hiding,
    BasisState, LayeredCircuit, Plan,
};
use crate::parse::Program;
use crate::report::{speedup, CostReport, PassDelta};
use crate::rotation::RotationOp;
use crate::sim::{check_exclusive, simulate, ArchConfig, SimOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pass {
    Layer,
    Fuse,
    Reorder,
    Hide,
}

impl Pass {
    pub fn name(self) -> &'static str {
        match self {
            Pass::Layer => "layer",
            Pass::Fuse => "fuse",
            Pass::Reorder => "reorder",
            Pass::Hide => "hide",
        }
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An ordered pass list such as `layer,fuse,reorder,hide`. `fuse` and
/// `reorder` work on layers, so `layer` must come before them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassList(Vec<Pass>);

impl PassList {
    pub fn all() -> Self {
        Self(vec![Pass::Layer, Pass::Fuse, Pass::Reorder, Pass::Hide])
    }

    pub fn none() -> Self {
        Self(Vec::new())
    }

    pub fn new(passes: Vec<Pass>) -> Result<Self> {
        for (i, p) in passes.iter().enumerate() {
            if passes[..i].contains(p) {
                return Err(Error::Config(format!("pass `{p}` listed twice")));
            }
            if matches!(p, Pass::Fuse | Pass::Reorder) && !passes[..i].contains(&Pass::Layer) {
                return Err(Error::Config(format!("pass `{p}` needs `layer` before it")));
            }
        }
        Ok(Self(passes))
    }

    pub fn passes(&self) -> &[Pass] {
        &self.0
    }

    pub fn contains(&self, p: Pass) -> bool {
        self.0.contains(&p)
    }

    fn prefix(&self, len: usize) -> PassList {
        PassList(self.0[..len].to_vec())
    }
}

impl FromStr for PassList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let passes = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty() && *t != "none")
            .map(|t| match t {
                "layer" => Ok(Pass::Layer),
                "fuse" => Ok(Pass::Fuse),
                "reorder" => Ok(Pass::Reorder),
                "hide" => Ok(Pass::Hide),
                other => Err(Error::Config(format!("unknown pass `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(passes)
    }
}

impl fmt::Display for PassList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|p| p.name()).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub passes: PassList,
    pub eliminate: EliminateOptions,
    pub toffoli: ToffoliMode,
    pub layer_order: LayerOrder,
    /// Architecture overrides; the qubit count always comes from the circuit.
    pub ancilla: Option<usize>,
    pub op_rounds: u64,
    pub rotation_rounds: u64,
    pub code_distance: u64,
    pub timing: crate::sim::TimingMode,
    /// Re-verify layer, plan and schedule invariants.
    pub checked: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            passes: PassList::all(),
            eliminate: EliminateOptions::default(),
            toffoli: ToffoliMode::FastPath,
            layer_order: LayerOrder::WeightDescending,
            ancilla: None,
            op_rounds: 1,
            rotation_rounds: 3,
            code_distance: 3,
            timing: crate::sim::TimingMode::Rounds,
            checked: true,
        }
    }
}

impl PipelineConfig {
    pub fn arch(&self, num_qubits: usize) -> ArchConfig {
        let mut a = ArchConfig::new(num_qubits);
        if let Some(n) = self.ancilla {
            a.ancilla_count = n;
        }
        a.op_rounds = self.op_rounds;
        a.rotation_rounds = self.rotation_rounds;
        a.code_distance = self.code_distance;
        a.timing = self.timing;
        a
    }
}

/// Passes applied to a prepared op list.
#[derive(Debug, Clone)]
pub struct Optimized {
    pub layers: Option<LayeredCircuit>,
    pub ops: Vec<RotationOp>,
    pub plan: Plan,
}

/// Runs `passes` over Clifford-free, `Y`-free ops.
pub fn optimize(
    num_qubits: usize,
    ops: &[RotationOp],
    passes: &PassList,
    arch: &ArchConfig,
    layer_order: LayerOrder,
    checked: bool,
) -> Result<Optimized> {
    let init = BasisState::all_z(num_qubits);
    let mut layers = None;
    let ordered = if passes.contains(Pass::Layer) {
        let mut lc = build_layers(num_qubits, ops, layer_order)?;
        if passes.contains(Pass::Fuse) {
            lc = fuse_layers(&lc);
        }
        if checked {
            lc.verify_layers()?;
        }
        let ordered = if passes.contains(Pass::Reorder) {
            reorder_for_basis(&lc, &init).ops
        } else {
            lc.ops()
        };
        layers = Some(lc);
        ordered
    } else {
        ops.to_vec()
    };
    let plan = if passes.contains(Pass::Hide) {
        schedule_with_latency_hiding(num_qubits, &ordered, &init, arch.timing())?
    } else {
        schedule_inline(num_qubits, &ordered, &init, arch.timing())?
    };
    if checked {
        plan.check_basis()?;
    }
    Ok(Optimized {
        layers,
        ops: ordered,
        plan,
    })
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub elimination: Elimination,
    /// Rotations after `Y` decomposition, in program order.
    pub prepared: Vec<RotationOp>,
    pub optimized: Optimized,
    pub baseline: SimOutcome,
    pub outcome: SimOutcome,
    pub report: CostReport,
}

impl PipelineOutput {
    /// The optimized circuit in the native format, ops in plan order.
    pub fn circuit_dump(&self) -> String {
        let c = &self.elimination.circuit;
        let mut out = PPCircuit::new(c.num_qubits);
        out.rotations = self.optimized.plan.ops().cloned().collect();
        out.measurements = c.measurements.clone();
        out.to_native()
    }
}

fn push_policy_name(p: PushPolicy) -> &'static str {
    match p {
        PushPolicy::Always => "always",
        PushPolicy::CostAware(_) => "cost-aware",
    }
}

/// Runs the whole flow on a parsed program.
pub fn run_program(name: &str, program: &Program, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let n = program.num_qubits();
    let arch = cfg.arch(n);
    arch.validate()?;
    let instrs = match program {
        Program::Logical(c) => to_instrs(c, cfg.toffoli),
        Program::PauliProduct(c) => c.to_instrs(),
    };
    let elimination = eliminate(n, &instrs, &cfg.eliminate)?;
    log::debug!(
        "{name}: {} rotations after elimination, {} Cliffords kept",
        elimination.circuit.rotations.len(),
        elimination.kept.len()
    );
    let prepared = prepare(&elimination.circuit);

    let none = optimize(n, &prepared, &PassList::none(), &arch, cfg.layer_order, cfg.checked)?;
    let baseline = simulate(&none.plan, &arch)?;

    let mut deltas = Vec::with_capacity(cfg.passes.passes().len());
    let mut prev = baseline.total_rounds;
    let mut last = None;
    for k in 1..=cfg.passes.passes().len() {
        let prefix = cfg.passes.prefix(k);
        let opt = optimize(n, &prepared, &prefix, &arch, cfg.layer_order, cfg.checked)?;
        let out = simulate(&opt.plan, &arch)?;
        deltas.push(PassDelta {
            pass: cfg.passes.passes()[k - 1].name().to_owned(),
            rounds: out.total_rounds,
            delta: out.total_rounds as i64 - prev as i64,
        });
        prev = out.total_rounds;
        last = Some((opt, out));
    }
    let (optimized, outcome) = match last {
        Some(x) => x,
        None => (none, baseline.clone()),
    };
    if cfg.checked {
        check_exclusive(&outcome.events)?;
        check_exclusive(&baseline.events)?;
    }

    let report = CostReport {
        circuit: name.to_owned(),
        qubits: n,
        gates: program.gate_count(),
        passes: cfg.passes.passes().iter().map(|p| p.name().to_owned()).collect(),
        push_policy: push_policy_name(cfg.eliminate.policy).to_owned(),
        workers: cfg.eliminate.workers,
        ancilla_count: arch.ancilla_count,
        code_distance: arch.code_distance,
        baseline_rounds: baseline.total_rounds,
        total_rounds: outcome.total_rounds,
        speedup: speedup(baseline.total_rounds, outcome.total_rounds),
        baseline_cycles: arch.cycles(baseline.total_rounds),
        total_cycles: arch.cycles(outcome.total_rounds),
        rotation_count: outcome.rotation_count,
        baseline_rotation_count: baseline.rotation_count,
        stall_rounds: outcome.stall_rounds,
        executed_ops: outcome.executed_ops,
        baseline_ops: baseline.executed_ops,
        frame_ops: outcome.frame_ops,
        kept_cliffords: elimination.kept.len(),
        pass_deltas: deltas,
    };
    Ok(PipelineOutput {
        elimination,
        prepared,
        optimized,
        baseline,
        outcome,
        report,
    })
}

/// Parses and runs source text.
pub fn run_source(name: &str, text: &str, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let program = crate::parse::parse(text)?;
    run_program(name, &program, cfg)
}
