//! Toffoli-heavy benchmark circuits and the suite runner.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;

use crate::circuit::{GateKind, LogicalCircuit};
use crate::error::{Error, Result};
use crate::parse::parse;
use crate::pipeline::{run_program, PipelineConfig};
use crate::random;
use crate::report::{geomean, CostReport};

use GateKind::*;

/// Ripple-carry adder of two `bits`-bit registers with carry in and out.
/// Qubits: carry-in, then `b_i, a_i` pairs, then carry-out.
pub fn cuccaro_adder(bits: usize) -> LogicalCircuit {
    assert!(bits >= 1);
    let n = 2 * bits + 2;
    let b = |i: usize| 1 + 2 * i;
    let a = |i: usize| 2 + 2 * i;
    let z = n - 1;
    let mut c = LogicalCircuit::new(n);
    for i in (0..bits).step_by(2) {
        c.push(X, &[a(i)]);
    }
    for i in (1..bits).step_by(3) {
        c.push(X, &[b(i)]);
    }
    let maj = |c: &mut LogicalCircuit, x: usize, y: usize, w: usize| {
        c.push(CX, &[w, y]).push(CX, &[w, x]).push(CCX, &[x, y, w]);
    };
    let uma = |c: &mut LogicalCircuit, x: usize, y: usize, w: usize| {
        c.push(CCX, &[x, y, w]).push(CX, &[w, x]).push(CX, &[x, y]);
    };
    maj(&mut c, 0, b(0), a(0));
    for i in 1..bits {
        maj(&mut c, a(i - 1), b(i), a(i));
    }
    c.push(CX, &[a(bits - 1), z]);
    for i in (1..bits).rev() {
        uma(&mut c, a(i - 1), b(i), a(i));
    }
    uma(&mut c, 0, b(0), a(0));
    for q in 0..n {
        c.push(Measure, &[q]);
    }
    c
}

/// Multi-controlled X over `controls` onto `target` with a V-chain of clean
/// ancillas, computed and uncomputed.
fn mcx(c: &mut LogicalCircuit, controls: &[usize], ancillas: &[usize], target: usize) {
    match controls.len() {
        0 => {
            c.push(X, &[target]);
        }
        1 => {
            c.push(CX, &[controls[0], target]);
        }
        2 => {
            c.push(CCX, &[controls[0], controls[1], target]);
        }
        k => {
            assert!(ancillas.len() >= k - 2);
            let mut chain = vec![(controls[0], controls[1], ancillas[0])];
            for i in 2..k - 1 {
                chain.push((controls[i], ancillas[i - 2], ancillas[i - 1]));
            }
            for &(x, y, w) in &chain {
                c.push(CCX, &[x, y, w]);
            }
            c.push(CCX, &[controls[k - 1], ancillas[k - 3], target]);
            for &(x, y, w) in chain.iter().rev() {
                c.push(CCX, &[x, y, w]);
            }
        }
    }
}

/// A ladder of multi-controlled X gates on `data` qubits, each followed by
/// phase gates, with `data - 2` shared ancillas.
pub fn mcx_ladder(data: usize, rounds: usize) -> LogicalCircuit {
    assert!(data >= 3);
    let anc: Vec<usize> = (data..2 * data - 2).collect();
    let mut c = LogicalCircuit::new(2 * data - 2);
    for q in 0..data {
        c.push(H, &[q]);
    }
    for r in 0..rounds {
        let target = r % data;
        let controls: Vec<usize> = (0..data).filter(|&q| q != target).collect();
        mcx(&mut c, &controls, &anc, target);
        c.push(T, &[target]).push(S, &[(target + 1) % data]);
    }
    for q in 0..data {
        c.push(Measure, &[q]);
    }
    c
}

/// Grover iterations on `data` qubits with a marked all-ones state.
pub fn grover(data: usize, iterations: usize) -> LogicalCircuit {
    assert!(data >= 3);
    let target = data;
    let anc: Vec<usize> = (data + 1..2 * data - 1).collect();
    let mut c = LogicalCircuit::new(2 * data - 1);
    let controls: Vec<usize> = (0..data).collect();
    c.push(X, &[target]).push(H, &[target]);
    for q in 0..data {
        c.push(H, &[q]);
    }
    for _ in 0..iterations {
        mcx(&mut c, &controls, &anc, target);
        for q in 0..data {
            c.push(H, &[q]).push(X, &[q]);
        }
        c.push(H, &[data - 1]);
        mcx(&mut c, &controls[..data - 1], &anc, data - 1);
        c.push(H, &[data - 1]);
        for q in 0..data {
            c.push(X, &[q]).push(H, &[q]);
        }
    }
    for q in 0..data {
        c.push(Measure, &[q]);
    }
    c
}

/// Random gates, half of them Toffolis.
pub fn random_toffoli_heavy(n: usize, gates: usize, seed: u64) -> LogicalCircuit {
    let mut rng = random::rng(seed);
    let mut c = LogicalCircuit::new(n);
    let mut qs: Vec<usize> = (0..n).collect();
    for _ in 0..gates {
        rand::seq::SliceRandom::shuffle(qs.as_mut_slice(), &mut rng);
        match rng.gen_range(0..10) {
            0..=4 => c.push(CCX, &qs[..3]),
            5 | 6 => c.push(CX, &qs[..2]),
            7 => c.push(H, &qs[..1]),
            8 => c.push(T, &qs[..1]),
            _ => c.push(Tdg, &qs[..1]),
        };
    }
    c
}

/// A random Clifford+T circuit with the given number of gates, mostly
/// single-qubit, for throughput runs.
pub fn random_clifford_t(n: usize, gates: usize, seed: u64) -> LogicalCircuit {
    let mut rng = random::rng(seed);
    random::logical_circuit(&mut rng, n, gates)
}

/// The bundled Toffoli-heavy suite as `(file name, circuit)` pairs.
pub fn fixture_suite() -> Vec<(String, LogicalCircuit)> {
    let mut out = Vec::new();
    for bits in [4, 8, 16] {
        out.push((format!("adder_{bits}.qasm"), cuccaro_adder(bits)));
    }
    for (data, rounds) in [(5, 6), (8, 8), (10, 10)] {
        out.push((format!("mcx_ladder_{data}.qasm"), mcx_ladder(data, rounds)));
    }
    for (data, iters) in [(4, 2), (6, 3)] {
        out.push((format!("grover_{data}.qasm"), grover(data, iters)));
    }
    for (n, gates, seed) in [(8, 200, 11), (16, 600, 12)] {
        out.push((format!("toffoli_mix_{n}.qasm"), random_toffoli_heavy(n, gates, seed)));
    }
    out
}

/// Writes the suite to `dir` as QASM files.
pub fn write_fixtures(dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    fixture_suite()
        .into_iter()
        .map(|(name, c)| {
            let path = dir.join(name);
            fs::write(&path, c.to_qasm())?;
            Ok(path)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub report: CostReport,
    pub time_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutput {
    pub rows: Vec<BenchRow>,
    /// Files that failed, with the error message.
    pub failures: Vec<(String, String)>,
}

impl BenchOutput {
    pub fn geomean_speedup(&self) -> Option<f64> {
        let s: Vec<f64> = self.rows.iter().map(|r| r.report.speedup).collect();
        geomean(&s)
    }

    /// Per-circuit rows, a geometric-mean row, then one row per failure.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["circuit", "qubits", "gates", "baseline_rounds", "tqc_rounds", "speedup", "time_ms"])?;
        for r in &self.rows {
            let rep = &r.report;
            w.write_record([
                rep.circuit.clone(),
                rep.qubits.to_string(),
                rep.gates.to_string(),
                rep.baseline_rounds.to_string(),
                rep.total_rounds.to_string(),
                format!("{:.2}", rep.speedup),
                format!("{:.3}", r.time_ms),
            ])?;
        }
        let g = self.geomean_speedup().map_or_else(String::new, |g| format!("{g:.2}"));
        w.write_record(["geomean", "", "", "", "", &g, ""])?;
        for (file, err) in &self.failures {
            w.write_record([file.as_str(), "", "", "", "", "", &format!("error: {err}")])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// Runs every `.qasm` and `.ppc` file in `dir`, sorted by name. A file that
/// fails is recorded and the suite continues.
pub fn run_bench(dir: &Path, cfg: &PipelineConfig) -> Result<BenchOutput> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "qasm" || e == "ppc"))
        .collect();
    files.sort();
    let mut out = BenchOutput {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    for path in files {
        let name = path
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        let result = fs::read_to_string(&path).map_err(Error::from).and_then(|text| {
            let start = Instant::now();
            let program = parse(&text)?;
            let run = run_program(&name, &program, cfg)?;
            Ok((run.report, start.elapsed().as_secs_f64() * 1e3))
        });
        match result {
            Ok((report, time_ms)) => out.rows.push(BenchRow { report, time_ms }),
            Err(e) => {
                log::warn!("{}: {e}", path.display());
                out.failures.push((name, e.to_string()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::circuit_unitary;

    #[test]
    fn mcx_chain_is_multi_controlled() {
        // Controls 0..3, target 3, ancillas 4 and 5; qubit 0 is the high bit.
        let mut c = LogicalCircuit::new(6);
        mcx(&mut c, &[0, 1, 2], &[4, 5], 3);
        let u = circuit_unitary(&c);
        let bit = |b: usize, q: usize| (b >> (5 - q)) & 1;
        for b in (0..64usize).filter(|&b| bit(b, 4) == 0 && bit(b, 5) == 0) {
            let flip = bit(b, 0) & bit(b, 1) & bit(b, 2);
            let expect = b ^ (flip << 2);
            assert!((u.get(expect, b).norm() - 1.0).abs() < 1e-9, "basis {b}");
        }
    }

    #[test]
    fn generators_are_valid() {
        for (name, c) in fixture_suite() {
            for g in &c.instrs {
                g.validate(c.num_qubits).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
            let reparsed = parse(&c.to_qasm()).unwrap();
            assert_eq!(reparsed.gate_count(), c.instrs.len(), "{name}");
        }
        assert_eq!(cuccaro_adder(4).num_qubits, 10);
    }

    #[test]
    fn bench_records_failures() {
        let dir = std::env::temp_dir().join(format!("tqc-bench-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("a.qasm"), cuccaro_adder(2).to_qasm()).unwrap();
        fs::write(dir.join("b.qasm"), "qreg q[1];\nfoo q[0];\n").unwrap();
        let out = run_bench(&dir, &PipelineConfig::default()).unwrap();
        fs::remove_dir_all(&dir).unwrap();
        assert_eq!(out.rows.len(), 1);
        assert_eq!(out.failures.len(), 1);
        let csv = out.to_csv().unwrap();
        assert!(csv.starts_with("circuit,qubits,gates,baseline_rounds,tqc_rounds,speedup,time_ms\n"));
        assert!(csv.contains("\ngeomean,"));
    }
}
