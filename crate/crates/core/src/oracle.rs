//! Reference implementations used to check the fast paths.
//!
//! Everything here is deliberately naive: dense complex matrices built from
//! Kronecker products of 2×2 matrices, a tableau holding one letter per cell
//! whose update rules are read off those matrices, and last-layer-only
//! layering. Qubit 0 is the most significant tensor factor.

use num_complex::Complex64;

use crate::circuit::{CliffordGate, GateInstr, GateKind, LogicalCircuit};
use crate::optimizer::Plan;
use crate::pauli::{commutes, PauliLetter, PauliString};
use crate::rotation::RotationOp;

const TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A dense square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    dim: usize,
    data: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let (a, b) = (self.dim, other.dim);
        let mut out = Mat::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * a * b + j * b + l] = s * other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Mat {
        let d = self.dim;
        let mut out = Mat::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat {
        Mat {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        Mat {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.norm() <= tol)
    }

    /// `tr(self† other) / dim`.
    pub fn overlap(&self, other: &Mat) -> Complex64 {
        let s: Complex64 = self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum();
        s / self.dim as f64
    }
}

pub fn letter_matrix(l: PauliLetter) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match l {
        PauliLetter::I => Mat::identity(2),
        PauliLetter::X => Mat::from_rows(&[&[z, o], &[o, z]]),
        PauliLetter::Y => Mat::from_rows(&[&[z, -i], &[i, z]]),
        PauliLetter::Z => Mat::from_rows(&[&[o, z], &[z, -o]]),
    }
}

/// The signed Pauli string as a `2^n × 2^n` matrix.
pub fn pauli_matrix(p: &PauliString) -> Mat {
    let mut m = Mat::identity(1);
    for &l in p.letters() {
        m = m.kron(&letter_matrix(l));
    }
    if p.is_negative() {
        m = m.scale(c(-1.0, 0.0));
    }
    m
}

/// `exp(-iθP/2) = cos(θ/2) I - i sin(θ/2) P`.
pub fn rotation_matrix(op: &RotationOp) -> Mat {
    let half = op.angle().radians() / 2.0;
    let p = pauli_matrix(op.pauli());
    Mat::identity(p.dim())
        .scale(c(half.cos(), 0.0))
        .add(&p.scale(c(0.0, -half.sin())))
}

/// Matrix commutator check: `PQ - QP = 0`.
pub fn matrices_commute(p: &PauliString, q: &PauliString) -> bool {
    let (a, b) = (pauli_matrix(p), pauli_matrix(q));
    a.mul(&b).max_abs_diff(&b.mul(&a)) <= TOL
}

fn single_qubit(kind: GateKind) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let t = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    match kind {
        GateKind::H => Mat::from_rows(&[&[c(r, 0.0), c(r, 0.0)], &[c(r, 0.0), c(-r, 0.0)]]),
        GateKind::S => Mat::from_rows(&[&[o, z], &[z, i]]),
        GateKind::Sdg => Mat::from_rows(&[&[o, z], &[z, -i]]),
        GateKind::X => letter_matrix(PauliLetter::X),
        GateKind::Y => letter_matrix(PauliLetter::Y),
        GateKind::Z => letter_matrix(PauliLetter::Z),
        GateKind::T => Mat::from_rows(&[&[o, z], &[z, t]]),
        GateKind::Tdg => Mat::from_rows(&[&[o, z], &[z, t.conj()]]),
        _ => unreachable!("not a single-qubit unitary"),
    }
}

/// Permutation flipping `target` when all `controls` are set.
fn controlled_x(n: usize, controls: &[usize], target: usize) -> Mat {
    let d = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let mut m = Mat::zeros(d);
    for col in 0..d {
        let row = if controls.iter().all(|&q| col & bit(q) != 0) {
            col ^ bit(target)
        } else {
            col
        };
        m.data[row * d + col] = c(1.0, 0.0);
    }
    m
}

/// Full-register matrix of one gate. Measurements are not unitaries.
pub fn gate_matrix(g: &GateInstr, n: usize) -> Mat {
    match g.kind {
        GateKind::CX => controlled_x(n, &g.qubits[..1], g.qubits[1]),
        GateKind::CCX => controlled_x(n, &g.qubits[..2], g.qubits[2]),
        GateKind::Measure => panic!("measurement has no unitary"),
        k => {
            let mut m = Mat::identity(1);
            for q in 0..n {
                m = m.kron(&if q == g.qubits[0] { single_qubit(k) } else { Mat::identity(2) });
            }
            m
        }
    }
}

/// Unitary of the circuit's gates, skipping measurements.
pub fn circuit_unitary(circ: &LogicalCircuit) -> Mat {
    let n = circ.num_qubits;
    let mut u = Mat::identity(1 << n);
    for g in circ.instrs.iter().filter(|g| g.kind != GateKind::Measure) {
        u = gate_matrix(g, n).mul(&u);
    }
    u
}

pub fn clifford_unitary(gates: &[CliffordGate], n: usize) -> Mat {
    let mut u = Mat::identity(1 << n);
    for g in gates {
        u = gate_matrix(&g.to_instr(), n).mul(&u);
    }
    u
}

/// Product of rotations applied in sequence.
pub fn rotations_unitary<'a>(ops: impl IntoIterator<Item = &'a RotationOp>, n: usize) -> Mat {
    let mut u = Mat::identity(1 << n);
    for op in ops {
        u = rotation_matrix(op).mul(&u);
    }
    u
}

/// Product of the plan's ops; patch rotations are identities.
pub fn plan_unitary(plan: &Plan) -> Mat {
    rotations_unitary(plan.ops(), plan.num_qubits)
}

/// `a = e^{iφ} b` for some φ, entry-wise within `tol`.
pub fn equal_up_to_phase(a: &Mat, b: &Mat, tol: f64) -> bool {
    if a.dim != b.dim {
        return false;
    }
    let Some((k, _)) = a
        .data
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
    else {
        return true;
    };
    if a.data[k].norm() <= tol || b.data[k].norm() <= tol {
        return a.is_zero(tol) && b.is_zero(tol);
    }
    let phase = b.data[k] / a.data[k];
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    a.scale(phase).max_abs_diff(b) <= tol
}

/// Conjugation image `M σ M†` of every local Pauli, indexed by letters in
/// base 4 with the first operand most significant.
fn conjugation_table(m: &Mat, arity: usize) -> Vec<(Vec<PauliLetter>, bool)> {
    let all: Vec<Vec<PauliLetter>> = if arity == 1 {
        PauliLetter::ALL.iter().map(|&l| vec![l]).collect()
    } else {
        PauliLetter::ALL
            .iter()
            .flat_map(|&a| PauliLetter::ALL.iter().map(move |&b| vec![a, b]))
            .collect()
    };
    let mats: Vec<Mat> = all
        .iter()
        .map(|ls| pauli_matrix(&PauliString::new(false, ls.clone())))
        .collect();
    mats.iter()
        .map(|sigma| {
            let image = m.mul(sigma).mul(&m.dagger());
            let (j, coef) = mats
                .iter()
                .enumerate()
                .map(|(j, tau)| (j, tau.overlap(&image)))
                .find(|(_, coef)| coef.norm() > 0.5)
                .expect("Clifford images are Pauli");
            assert!(coef.im.abs() < TOL && (coef.re.abs() - 1.0).abs() < TOL);
            (all[j].clone(), coef.re < 0.0)
        })
        .collect()
}

fn letter_index(l: PauliLetter) -> usize {
    PauliLetter::ALL.iter().position(|&x| x == l).expect("one of four")
}

/// Image of each input letter pattern: output letters and a sign flip.
type ConjugationTable = Vec<(Vec<PauliLetter>, bool)>;

/// One letter per cell; each gate rewrites rows one at a time using
/// conjugation tables computed from the gate matrices.
#[derive(Debug, Clone)]
pub struct NaiveTableau {
    rows: Vec<PauliString>,
    tables: Vec<(GateKind, ConjugationTable)>,
}

impl NaiveTableau {
    pub fn new() -> Self {
        let one = [GateKind::H, GateKind::S, GateKind::Sdg, GateKind::X, GateKind::Y, GateKind::Z];
        let mut tables: Vec<_> = one
            .iter()
            .map(|&k| (k, conjugation_table(&single_qubit(k), 1)))
            .collect();
        tables.push((GateKind::CX, conjugation_table(&controlled_x(2, &[0], 1), 2)));
        Self {
            rows: Vec::new(),
            tables,
        }
    }

    pub fn push(&mut self, p: PauliString) {
        self.rows.push(p);
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    /// Replaces every row `P` by `g P g†`.
    pub fn apply(&mut self, g: CliffordGate) {
        let instr = g.to_instr();
        let table = &self
            .tables
            .iter()
            .find(|(k, _)| *k == instr.kind)
            .expect("table for every Clifford")
            .1;
        let qs = instr.qubits;
        for row in &mut self.rows {
            let idx = qs.iter().fold(0, |acc, &q| acc * 4 + letter_index(row.letter(q)));
            let (image, flip) = &table[idx];
            for (&q, &l) in qs.iter().zip(image) {
                row.set_letter(q, l);
            }
            if *flip {
                *row = row.negated();
            }
        }
    }
}

impl Default for NaiveTableau {
    fn default() -> Self {
        Self::new()
    }
}

/// Per-position commutation: count anticommuting letter pairs.
pub fn commutes_by_letters(p: &PauliString, q: &PauliString) -> bool {
    let anti = p
        .letters()
        .iter()
        .zip(q.letters())
        .filter(|(a, b)| !a.is_identity() && !b.is_identity() && a != b)
        .count();
    anti % 2 == 0
}

/// Layer count when each op may only join the most recent layer.
pub fn greedy_layer_count(ops: &[RotationOp]) -> usize {
    let mut layers = 0;
    let mut last: Vec<&PauliString> = Vec::new();
    for op in ops {
        let fits = !last.is_empty()
            && last
                .iter()
                .all(|p| commutes(p, op.pauli()).expect("equal lengths"));
        if fits {
            last.push(op.pauli());
        } else {
            layers += 1;
            last = vec![op.pauli()];
        }
    }
    layers
}
