//! Column-major bit-packed tableau.
//!
//! Every qubit owns an X column and a Z column; a final column holds the phase
//! bits. Word `w` of a column packs rows `64w .. 64w+63`, bit `b` holding row
//! `64w + b`. Columns live in one buffer, each occupying a contiguous run of
//! `cap_words` words, in the order `x0 z0 x1 z1 … r`. A Clifford gate touches
//! only the columns of its qubits plus the phase column, so conjugating the
//! whole tableau is a handful of linear sweeps of word-wide bit operations.
//!
//! Bits beyond the last row are kept at zero. All gate updates map an all-zero
//! row to an all-zero row with no phase, so the padding stays canonical.

use std::fmt::Write as _;

use crate::angle::Angle;
use crate::circuit::{CliffordGate, GateInstr};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};
use crate::rotation::{OpTag, RotationOp};

pub const WORD_BITS: usize = 64;

/// What a row stands for. Conjugation never looks at this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowKind {
    Rotation(Angle),
    Measurement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowMeta {
    pub kind: RowKind,
    pub tag: OpTag,
}

/// Deliberate bugs for checking that the self-test oracles notice them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugationFault {
    /// `S` forgets its phase update.
    DropSPhase,
    /// `CX` updates the target's Z column instead of the control's.
    CnotWrongColumn,
}

/// Row-level effect of a prospective conjugation on rotation rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DryRun {
    /// Rows that would gain a `Y` letter on a touched qubit.
    pub new_y_rows: usize,
    /// Rows whose weight would grow.
    pub weight_increase_rows: usize,
}

#[derive(Clone)]
pub struct VTab {
    num_qubits: usize,
    num_rows: usize,
    cap_words: usize,
    data: Vec<u64>,
    /// Bit set for measurement rows, same packing as a column.
    measure_mask: Vec<u64>,
    meta: Vec<RowMeta>,
    fault: Option<ConjugationFault>,
}

#[inline]
fn words_for(rows: usize) -> usize {
    rows.div_ceil(WORD_BITS)
}

impl VTab {
    pub fn new(num_qubits: usize) -> Result<Self> {
        Self::with_capacity(num_qubits, 0)
    }

    pub fn with_capacity(num_qubits: usize, rows: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::NoQubits);
        }
        let cap_words = words_for(rows);
        Ok(Self {
            num_qubits,
            num_rows: 0,
            cap_words,
            data: vec![0; (2 * num_qubits + 1) * cap_words],
            measure_mask: vec![0; cap_words],
            meta: Vec::with_capacity(rows),
            fault: None,
        })
    }

    pub fn inject_fault(&mut self, fault: Option<ConjugationFault>) {
        self.fault = fault;
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn is_empty(&self) -> bool {
        self.num_rows == 0
    }

    /// Words per column currently holding rows.
    pub fn words_used(&self) -> usize {
        words_for(self.num_rows)
    }

    #[inline]
    fn x_col(&self, q: usize) -> usize {
        2 * q
    }

    #[inline]
    fn z_col(&self, q: usize) -> usize {
        2 * q + 1
    }

    #[inline]
    fn phase_col(&self) -> usize {
        2 * self.num_qubits
    }

    fn column(&self, col: usize) -> &[u64] {
        let start = col * self.cap_words;
        &self.data[start..start + self.words_used()]
    }

    pub fn x_column(&self, q: usize) -> &[u64] {
        self.column(self.x_col(q))
    }

    pub fn z_column(&self, q: usize) -> &[u64] {
        self.column(self.z_col(q))
    }

    pub fn phase_column(&self) -> &[u64] {
        self.column(self.phase_col())
    }

    fn grow(&mut self) {
        let new_cap = (self.cap_words * 2).max(1);
        let cols = 2 * self.num_qubits + 1;
        let mut data = vec![0; cols * new_cap];
        for c in 0..cols {
            let old = &self.data[c * self.cap_words..(c + 1) * self.cap_words];
            data[c * new_cap..c * new_cap + self.cap_words].copy_from_slice(old);
        }
        self.data = data;
        self.measure_mask.resize(new_cap, 0);
        self.cap_words = new_cap;
    }

    pub fn append_row(&mut self, pauli: &PauliString, kind: RowKind, tag: OpTag) -> Result<usize> {
        pauli.check_len(self.num_qubits)?;
        let row = self.num_rows;
        if row == self.cap_words * WORD_BITS {
            self.grow();
        }
        let (w, bit) = (row / WORD_BITS, 1u64 << (row % WORD_BITS));
        let cap = self.cap_words;
        for (q, letter) in pauli.letters().iter().enumerate() {
            let (x, z) = letter.bits();
            if x {
                self.data[2 * q * cap + w] |= bit;
            }
            if z {
                self.data[(2 * q + 1) * cap + w] |= bit;
            }
        }
        if pauli.is_negative() {
            let r = self.phase_col();
            self.data[r * cap + w] |= bit;
        }
        if kind == RowKind::Measurement {
            self.measure_mask[w] |= bit;
        }
        self.meta.push(RowMeta { kind, tag });
        self.num_rows += 1;
        Ok(row)
    }

    pub fn append_rotation(&mut self, op: &RotationOp) -> Result<usize> {
        self.append_row(op.pauli(), RowKind::Rotation(op.angle()), op.tag())
    }

    pub fn row_meta(&self, row: usize) -> RowMeta {
        self.meta[row]
    }

    pub fn decode_row(&self, row: usize) -> PauliString {
        assert!(row < self.num_rows, "row {row} out of range");
        let (w, shift) = (row / WORD_BITS, row % WORD_BITS);
        let cap = self.cap_words;
        let bit = |col: usize| (self.data[col * cap + w] >> shift) & 1 == 1;
        let letters = (0..self.num_qubits)
            .map(|q| PauliLetter::from_bits(bit(self.x_col(q)), bit(self.z_col(q))))
            .collect();
        PauliString::new(bit(self.phase_col()), letters)
    }

    pub fn decode_all(&self) -> Vec<PauliString> {
        (0..self.num_rows).map(|r| self.decode_row(r)).collect()
    }

    /// True when every bit past the last row is zero in every column.
    pub fn padding_is_canonical(&self) -> bool {
        let used = self.num_rows;
        let cols = 2 * self.num_qubits + 1;
        let check = |words: &[u64]| {
            words.iter().enumerate().all(|(w, &word)| {
                let first = w * WORD_BITS;
                if first >= used {
                    word == 0
                } else if first + WORD_BITS <= used {
                    true
                } else {
                    word >> (used - first) == 0
                }
            })
        };
        (0..cols).all(|c| check(&self.data[c * self.cap_words..(c + 1) * self.cap_words]))
            && check(&self.measure_mask)
    }

    fn columns_mut<const K: usize>(&mut self, cols: [usize; K]) -> [&mut [u64]; K] {
        let (cap, used) = (self.cap_words, self.words_used());
        let ranges = cols.map(|c| c * cap..c * cap + used);
        self.data
            .get_disjoint_mut(ranges)
            .expect("gate columns are distinct")
    }

    pub fn apply_gate(&mut self, gate: &GateInstr) -> Result<()> {
        self.apply_clifford(CliffordGate::try_from(gate)?)
    }

    /// Replaces every row `P` by `g P g†`.
    pub fn apply_clifford(&mut self, gate: CliffordGate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let r = self.phase_col();
        let fault = self.fault;
        match gate {
            CliffordGate::H(q) => {
                let [xs, zs, rs] = self.columns_mut([self.x_col(q), self.z_col(q), r]);
                for ((x, z), r) in xs.iter_mut().zip(zs.iter_mut()).zip(rs.iter_mut()) {
                    *r ^= *x & *z;
                    std::mem::swap(x, z);
                }
            }
            CliffordGate::S(q) => {
                let drop_phase = fault == Some(ConjugationFault::DropSPhase);
                let [xs, zs, rs] = self.columns_mut([self.x_col(q), self.z_col(q), r]);
                for ((x, z), r) in xs.iter().zip(zs.iter_mut()).zip(rs.iter_mut()) {
                    if !drop_phase {
                        *r ^= *x & *z;
                    }
                    *z ^= *x;
                }
            }
            CliffordGate::Sdg(q) => {
                let [xs, zs, rs] = self.columns_mut([self.x_col(q), self.z_col(q), r]);
                for ((x, z), r) in xs.iter().zip(zs.iter_mut()).zip(rs.iter_mut()) {
                    *r ^= *x & !*z;
                    *z ^= *x;
                }
            }
            CliffordGate::X(q) => {
                let [zs, rs] = self.columns_mut([self.z_col(q), r]);
                for (z, r) in zs.iter().zip(rs.iter_mut()) {
                    *r ^= *z;
                }
            }
            CliffordGate::Y(q) => {
                let [xs, zs, rs] = self.columns_mut([self.x_col(q), self.z_col(q), r]);
                for ((x, z), r) in xs.iter().zip(zs.iter()).zip(rs.iter_mut()) {
                    *r ^= *x ^ *z;
                }
            }
            CliffordGate::Z(q) => {
                let [xs, rs] = self.columns_mut([self.x_col(q), r]);
                for (x, r) in xs.iter().zip(rs.iter_mut()) {
                    *r ^= *x;
                }
            }
            CliffordGate::CX(c, t) => {
                let wrong = fault == Some(ConjugationFault::CnotWrongColumn);
                let [xc, zc, xt, zt, rs] = self.columns_mut([
                    self.x_col(c),
                    self.z_col(c),
                    self.x_col(t),
                    self.z_col(t),
                    r,
                ]);
                for i in 0..rs.len() {
                    rs[i] ^= xc[i] & zt[i] & !(xt[i] ^ zc[i]);
                    xt[i] ^= xc[i];
                    if wrong {
                        zt[i] ^= zc[i];
                    } else {
                        zc[i] ^= zt[i];
                    }
                }
            }
        }
        Ok(())
    }

    /// Counts how conjugating by `gate` would change rotation rows, without
    /// modifying the tableau. Measurement rows are ignored.
    pub fn dry_run(&self, gate: CliffordGate) -> Result<DryRun> {
        gate.validate(self.num_qubits)?;
        let mut out = DryRun::default();
        let used = self.words_used();
        let mask = &self.measure_mask[..used];
        let ones = |w: u64| w.count_ones() as usize;
        match gate {
            CliffordGate::S(q) | CliffordGate::Sdg(q) => {
                // X <-> Y; Z and I are fixed.
                let (xs, zs) = (self.x_column(q), self.z_column(q));
                for i in 0..used {
                    out.new_y_rows += ones(xs[i] & !zs[i] & !mask[i]);
                }
            }
            CliffordGate::CX(c, t) => {
                let (xc, zc) = (self.x_column(c), self.z_column(c));
                let (xt, zt) = (self.x_column(t), self.z_column(t));
                for i in 0..used {
                    let live = !mask[i];
                    let xt2 = xt[i] ^ xc[i];
                    let zc2 = zc[i] ^ zt[i];
                    let new_y_c = (xc[i] & zc2) & !(xc[i] & zc[i]);
                    let new_y_t = (xt2 & zt[i]) & !(xt[i] & zt[i]);
                    out.new_y_rows += ones((new_y_c | new_y_t) & live);
                    let (bc, bt) = (xc[i] | zc[i], xt[i] | zt[i]);
                    let (ac, at) = (xc[i] | zc2, xt2 | zt[i]);
                    let grows = (ac & at & !(bc & bt)) | ((ac | at) & !(bc | bt));
                    out.weight_increase_rows += ones(grows & live);
                }
            }
            // H swaps X and Z, Paulis only flip signs.
            _ => {}
        }
        Ok(out)
    }

    /// One line per row in the native rotation format; measurements print as
    /// `measure <string>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in 0..self.num_rows {
            let p = self.decode_row(row);
            match self.meta[row].kind {
                RowKind::Rotation(angle) => writeln!(out, "{angle} {p}"),
                RowKind::Measurement => writeln!(out, "measure {p}"),
            }
            .expect("writing to a String");
        }
        out
    }
}

/// Round-robin row ownership: row `i` belongs to worker `i mod workers`.
pub fn partition_rows(num_rows: usize, workers: usize) -> Vec<Vec<usize>> {
    assert!(workers >= 1, "at least one worker");
    let mut out = vec![Vec::with_capacity(num_rows / workers + 1); workers];
    for row in 0..num_rows {
        out[row % workers].push(row);
    }
    out
}
