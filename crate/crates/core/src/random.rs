//! Seeded generators for tests, self-checks and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::angle::Angle;
use crate::circuit::{CliffordGate, GateKind, LogicalCircuit};
use crate::pauli::{PauliLetter, PauliString};
use crate::rotation::{OpTag, RotationOp};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pauli<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    let letters = (0..n).map(|_| PauliLetter::ALL[rng.gen_range(0..4)]).collect();
    PauliString::new(rng.gen(), letters)
}

/// A string over `{I, X, Z}` touching at most `max_weight` qubits.
pub fn sparse_xz_pauli<R: Rng>(rng: &mut R, n: usize, max_weight: usize) -> PauliString {
    let w = rng.gen_range(1..=max_weight.min(n).max(1));
    let mut qubits: Vec<usize> = (0..n).collect();
    qubits.shuffle(rng);
    let entries: Vec<(usize, PauliLetter)> = qubits[..w]
        .iter()
        .map(|&q| (q, if rng.gen() { PauliLetter::X } else { PauliLetter::Z }))
        .collect();
    PauliString::from_sparse(n, &entries)
}

/// A non-zero angle drawn from `{±π/4, ±π/2, π}`.
pub fn angle<R: Rng>(rng: &mut R) -> Angle {
    const CHOICES: [i64; 5] = [2, -2, 4, -4, 8];
    Angle::from_eighths(CHOICES[rng.gen_range(0..CHOICES.len())])
}

pub fn rotation<R: Rng>(rng: &mut R, n: usize, tag: u32) -> RotationOp {
    let mut p = pauli(rng, n);
    if p.weight() == 0 {
        p.set_letter(rng.gen_range(0..n), PauliLetter::Z);
    }
    RotationOp::new(p, angle(rng), OpTag(tag)).expect("angle is non-zero")
}

pub fn clifford<R: Rng>(rng: &mut R, n: usize) -> CliffordGate {
    let q = rng.gen_range(0..n);
    let pick = if n >= 2 { rng.gen_range(0..7) } else { rng.gen_range(0..6) };
    match pick {
        0 => CliffordGate::H(q),
        1 => CliffordGate::S(q),
        2 => CliffordGate::Sdg(q),
        3 => CliffordGate::X(q),
        4 => CliffordGate::Y(q),
        5 => CliffordGate::Z(q),
        _ => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            CliffordGate::CX(q, t)
        }
    }
}

/// A random Clifford+T program over the full gate set, without measurements.
pub fn logical_circuit<R: Rng>(rng: &mut R, n: usize, gates: usize) -> LogicalCircuit {
    use GateKind::*;
    let mut c = LogicalCircuit::new(n);
    let kinds: &[GateKind] = match n {
        1 => &[H, S, Sdg, X, Y, Z, T, Tdg],
        2 => &[H, S, Sdg, X, Y, Z, T, Tdg, CX],
        _ => &[H, S, Sdg, X, Y, Z, T, Tdg, CX, CCX],
    };
    let mut qubits: Vec<usize> = (0..n).collect();
    for _ in 0..gates {
        let k = *kinds.choose(rng).expect("non-empty");
        qubits.shuffle(rng);
        c.push(k, &qubits[..k.arity()]);
    }
    c
}

/// Appends a measurement of every qubit.
pub fn measure_all(c: &mut LogicalCircuit) {
    for q in 0..c.num_qubits {
        c.push(GateKind::Measure, &[q]);
    }
}
