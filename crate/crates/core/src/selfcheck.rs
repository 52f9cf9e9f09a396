//! Seeded randomized comparisons of the fast paths against the oracles.

use std::fmt;

use rand::Rng;

use crate::circuit::{GateKind, LogicalCircuit};
use crate::eliminate::{apply_toffoli_fastpath, apply_toffoli_sequential};
use crate::error::Result;
use crate::htab::{row_commutes, HTabRow};
use crate::oracle::{
    circuit_unitary, clifford_unitary, commutes_by_letters, equal_up_to_phase, matrices_commute, pauli_matrix,
    plan_unitary, NaiveTableau,
};
use crate::parse::Program;
use crate::pauli::{PauliLetter, PauliString};
use crate::pipeline::{run_program, PipelineConfig};
use crate::random;
use crate::rotation::OpTag;
use crate::vtab::{ConjugationFault, RowKind, VTab};
use crate::Angle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfCheckOptions {
    pub seed: u64,
    /// Multiplies the trial counts.
    pub scale: usize,
    /// Conjugation bug planted in every tableau under test.
    pub fault: Option<ConjugationFault>,
}

impl Default for SelfCheckOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            scale: 1,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheckSummary {
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl SelfCheckSummary {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.failures == 0)
    }
}

impl fmt::Display for SelfCheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "self-check seed {}", self.seed)?;
        for r in &self.results {
            let verdict = if r.failures == 0 { "ok" } else { "FAIL" };
            writeln!(f, "{:<28} {:>7} trials {:>5} failures  {verdict}", r.name, r.trials, r.failures)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// HTab rows and per-position rules against the matrix commutator (n ≤ 5)
/// or the letter count (wider strings).
pub fn check_commutation<R: Rng>(rng: &mut R, n: usize, trials: usize) -> usize {
    let mut failures = 0;
    for _ in 0..trials {
        let (p, q) = (random::pauli(rng, n), random::pauli(rng, n));
        let expect = if n <= 5 {
            matrices_commute(&p, &q)
        } else {
            commutes_by_letters(&p, &q)
        };
        let rows = row_commutes(
            &HTabRow::new(&p, Angle::PI_4, OpTag(0)),
            &HTabRow::new(&q, Angle::PI_4, OpTag(1)),
        )
        .expect("equal widths");
        if rows != expect || p.commutes(&q).expect("equal widths") != expect {
            failures += 1;
        }
    }
    failures
}

/// One trial: random rows and Clifford gates on a `VTab` and the naive tableau.
pub fn check_tableau<R: Rng>(
    rng: &mut R,
    n: usize,
    rows: usize,
    gates: usize,
    fault: Option<ConjugationFault>,
) -> bool {
    let mut fast = VTab::new(n).expect("n >= 1");
    fast.inject_fault(fault);
    let mut naive = NaiveTableau::new();
    for _ in 0..rows {
        let p = random::pauli(rng, n);
        fast.append_row(&p, RowKind::Measurement, OpTag(0)).expect("width");
        naive.push(p);
    }
    for _ in 0..gates {
        let g = random::clifford(rng, n);
        fast.apply_clifford(g).expect("valid gate");
        naive.apply(g);
    }
    fast.padding_is_canonical() && fast.decode_all() == naive.rows()
}

/// One trial: CCX fast path against the expansion on a random tableau.
pub fn check_toffoli<R: Rng>(rng: &mut R, n: usize, rows: usize, fault: Option<ConjugationFault>) -> bool {
    let mut fast = VTab::new(n).expect("n >= 3");
    fast.inject_fault(fault);
    for _ in 0..rows {
        let p = random::pauli(rng, n);
        fast.append_row(&p, RowKind::Rotation(random::angle(rng)), OpTag(0)).expect("width");
    }
    let mut seq = fast.clone();
    let mut qs: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(qs.as_mut_slice(), rng);
    apply_toffoli_fastpath(&mut fast, qs[0], qs[1], qs[2], OpTag(1)).expect("distinct");
    apply_toffoli_sequential(&mut seq, qs[0], qs[1], qs[2], OpTag(1)).expect("distinct");
    fast.dump() == seq.dump() && fast.decode_all() == seq.decode_all()
}

/// Whether the optimized plan, followed by the pushed Cliffords, equals the
/// input circuit up to global phase, and each measured observable is the
/// pulled-back `Z`.
pub fn check_semantics(c: &LogicalCircuit, cfg: &PipelineConfig) -> Result<bool> {
    let out = run_program("check", &Program::Logical(c.clone()), cfg)?;
    let n = c.num_qubits;
    let pushed = clifford_unitary(&out.elimination.pushed, n);
    let rebuilt = pushed.mul(&plan_unitary(&out.optimized.plan));
    if !equal_up_to_phase(&circuit_unitary(c), &rebuilt, 1e-9) {
        return Ok(false);
    }
    let measured: Vec<usize> = c
        .instrs
        .iter()
        .filter(|g| g.kind == GateKind::Measure)
        .map(|g| g.qubits[0])
        .collect();
    for (q, m) in measured.iter().zip(&out.elimination.circuit.measurements) {
        let z = pauli_matrix(&PauliString::single(n, *q, PauliLetter::Z));
        let pulled = pushed.dagger().mul(&z).mul(&pushed);
        if pulled.max_abs_diff(&pauli_matrix(m)) > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn tally(name: String, trials: usize, mut ok: impl FnMut() -> bool) -> CheckResult {
    let failures = (0..trials).filter(|_| !ok()).count();
    CheckResult { name, trials, failures }
}

/// Runs every suite. Identical options give identical summaries.
pub fn self_check(opts: &SelfCheckOptions) -> SelfCheckSummary {
    let mut rng = random::rng(opts.seed);
    let s = opts.scale.max(1);
    let mut results = Vec::new();
    for n in [1, 2, 3, 4, 5, 63, 64, 65, 200] {
        let trials = 500 * s;
        results.push(CheckResult {
            name: format!("commutation n={n}"),
            trials,
            failures: check_commutation(&mut rng, n, trials),
        });
    }
    for n in [5, 64, 65, 128] {
        results.push(tally(format!("tableau n={n}"), 4 * s, || {
            check_tableau(&mut rng, n, 100, 200, opts.fault)
        }));
    }
    for n in [3, 8, 65] {
        results.push(tally(format!("toffoli fast path n={n}"), 10 * s, || {
            check_toffoli(&mut rng, n, 70, opts.fault)
        }));
    }
    let cfg = PipelineConfig::default();
    results.push(tally("unitary n<=4".to_owned(), 20 * s, || {
        let n = rng.gen_range(1..=4);
        let gates = rng.gen_range(1..=20);
        let mut c = random::logical_circuit(&mut rng, n, gates);
        random::measure_all(&mut c);
        check_semantics(&c, &cfg).unwrap_or(false)
    }));
    SelfCheckSummary {
        seed: opts.seed,
        results,
    }
}
