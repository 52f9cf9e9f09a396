//! Row-major bit-packed rows and commuting layers.
//!
//! A row stores its X words followed by its Z words, so a commutation test
//! reads two contiguous slices. Layers keep rows sorted by descending weight;
//! admission scans stop at the first anticommuting row.

use std::collections::HashMap;
use std::fmt;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};
use crate::rotation::{OpTag, RotationOp};

fn words_for(num_qubits: usize) -> usize {
    num_qubits.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HTabRow {
    num_qubits: usize,
    /// X words then Z words.
    bits: Vec<u64>,
    negative: bool,
    weight: u32,
    angle: Angle,
    tag: OpTag,
}

impl HTabRow {
    pub fn new(pauli: &PauliString, angle: Angle, tag: OpTag) -> Self {
        let n = pauli.len();
        let w = words_for(n);
        let mut bits = vec![0u64; 2 * w];
        for (q, l) in pauli.letters().iter().enumerate() {
            let (x, z) = l.bits();
            if x {
                bits[q / 64] |= 1 << (q % 64);
            }
            if z {
                bits[w + q / 64] |= 1 << (q % 64);
            }
        }
        let (xs, zs) = bits.split_at(w);
        let weight = xs.iter().zip(zs).map(|(x, z)| (x | z).count_ones()).sum();
        Self {
            num_qubits: n,
            bits,
            negative: pauli.is_negative(),
            weight,
            angle,
            tag,
        }
    }

    pub fn from_rotation(op: &RotationOp) -> Self {
        Self::new(op.pauli(), op.angle(), op.tag())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn x_words(&self) -> &[u64] {
        &self.bits[..self.bits.len() / 2]
    }

    pub fn z_words(&self) -> &[u64] {
        &self.bits[self.bits.len() / 2..]
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn weight(&self) -> usize {
        self.weight as usize
    }

    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn tag(&self) -> OpTag {
        self.tag
    }

    pub fn with_angle(mut self, angle: Angle) -> Self {
        self.angle = angle;
        self
    }

    pub fn letter(&self, q: usize) -> PauliLetter {
        let w = self.bits.len() / 2;
        let bit = |i: usize| (self.bits[i + q / 64] >> (q % 64)) & 1 == 1;
        PauliLetter::from_bits(bit(0), bit(w))
    }

    pub fn to_pauli(&self) -> PauliString {
        PauliString::new(self.negative, (0..self.num_qubits).map(|q| self.letter(q)).collect())
    }

    /// Fails for zero angles, which fused rows may carry before removal.
    pub fn to_rotation(&self) -> Result<RotationOp> {
        RotationOp::new(self.to_pauli(), self.angle, self.tag)
    }

    /// Same letters and sign.
    pub fn same_string(&self, other: &HTabRow) -> bool {
        self.negative == other.negative && self.bits == other.bits
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        let (xs, zs) = self.bits.split_at(self.bits.len() / 2);
        xs.iter().zip(zs).enumerate().flat_map(|(w, (x, z))| {
            let mut word = x | z;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(64 * w + b)
            })
        })
    }
}

impl fmt::Debug for HTabRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.angle, self.to_pauli(), self.tag)
    }
}

#[inline]
fn commute_words(ax: &[u64], az: &[u64], bx: &[u64], bz: &[u64]) -> bool {
    let mut acc = 0u64;
    for i in 0..ax.len() {
        acc ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    }
    acc.count_ones().is_multiple_of(2)
}

/// Parity of `popcount(a.x & b.z) + popcount(a.z & b.x)`; true when even.
pub fn row_commutes(a: &HTabRow, b: &HTabRow) -> Result<bool> {
    if a.num_qubits != b.num_qubits {
        return Err(Error::LengthMismatch {
            left: a.num_qubits,
            right: b.num_qubits,
        });
    }
    Ok(commute_words(a.x_words(), a.z_words(), b.x_words(), b.z_words()))
}

/// How a layer orders its rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LayerOrder {
    /// Descending weight, ties in insertion order.
    #[default]
    WeightDescending,
    /// Insertion order; admission scans in that order.
    Insertion,
}

/// A set of mutually commuting rows in flat row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct Layer {
    num_qubits: usize,
    words: usize,
    order: LayerOrder,
    bits: Vec<u64>,
    rows: Vec<HTabRow>,
}

impl Layer {
    pub fn new(num_qubits: usize) -> Self {
        Self::with_order(num_qubits, LayerOrder::default())
    }

    pub fn with_order(num_qubits: usize, order: LayerOrder) -> Self {
        Self {
            num_qubits,
            words: words_for(num_qubits),
            order,
            bits: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn order(&self) -> LayerOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[HTabRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &HTabRow {
        &self.rows[i]
    }

    pub fn to_rotations(&self) -> Vec<RotationOp> {
        self.rows
            .iter()
            .map(|r| r.to_rotation().expect("layers never hold zero angles"))
            .collect()
    }

    fn stride(&self) -> usize {
        2 * self.words
    }

    fn check_width(&self, row: &HTabRow) -> Result<()> {
        if row.num_qubits != self.num_qubits {
            return Err(Error::LengthMismatch {
                left: self.num_qubits,
                right: row.num_qubits,
            });
        }
        Ok(())
    }

    /// Whether `cand` commutes with every row, plus the number of rows scanned.
    pub fn admits_counting(&self, cand: &HTabRow) -> (bool, usize) {
        let (cx, cz) = (cand.x_words(), cand.z_words());
        let (w, stride) = (self.words, self.stride());
        for (i, chunk) in self.bits.chunks_exact(stride).enumerate() {
            if !commute_words(&chunk[..w], &chunk[w..], cx, cz) {
                return (false, i + 1);
            }
        }
        (true, self.rows.len())
    }

    pub fn admits(&self, cand: &HTabRow) -> bool {
        self.admits_counting(cand).0
    }

    /// Inserts a row, keeping the layer's order. Fails if the row anticommutes
    /// with a member or has the wrong width.
    pub fn insert(&mut self, row: HTabRow) -> Result<usize> {
        self.check_width(&row)?;
        if let Some(i) = self.rows.iter().position(|r| {
            !commute_words(r.x_words(), r.z_words(), row.x_words(), row.z_words())
        }) {
            return Err(Error::AnticommutingInsert(i));
        }
        Ok(self.insert_unchecked(row))
    }

    /// Inserts without the commutation check; the caller has run [`Layer::admits`].
    pub fn insert_unchecked(&mut self, row: HTabRow) -> usize {
        debug_assert_eq!(row.num_qubits, self.num_qubits);
        let at = match self.order {
            LayerOrder::WeightDescending => self.rows.partition_point(|r| r.weight >= row.weight),
            LayerOrder::Insertion => self.rows.len(),
        };
        let stride = self.stride();
        self.bits
            .splice(at * stride..at * stride, row.bits.iter().copied());
        self.rows.insert(at, row);
        at
    }

    /// Groups of at least two rows with identical letters and sign, each group
    /// listed by row index in stored order. Only rows of equal weight are
    /// compared; in weight order these are contiguous runs.
    pub fn fusion_scan(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut scan = |idx: &mut dyn Iterator<Item = usize>| {
            let mut first_seen: HashMap<(bool, &[u64]), usize> = HashMap::new();
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for i in idx {
                let r = &self.rows[i];
                let g = *first_seen.entry((r.negative, r.bits.as_slice())).or_insert_with(|| {
                    groups.push(Vec::new());
                    groups.len() - 1
                });
                groups[g].push(i);
            }
            out.extend(groups.into_iter().filter(|g| g.len() >= 2));
        };
        match self.order {
            LayerOrder::WeightDescending => {
                let mut start = 0;
                while start < self.rows.len() {
                    let w = self.rows[start].weight;
                    let end = start + self.rows[start..].partition_point(|r| r.weight == w);
                    scan(&mut (start..end));
                    start = end;
                }
            }
            LayerOrder::Insertion => scan(&mut (0..self.rows.len())),
        }
        out
    }

    /// Keeps rows for which `keep` returns `Some`, replacing them by its value.
    pub(crate) fn rebuild(&self, mut keep: impl FnMut(usize, &HTabRow) -> Option<HTabRow>) -> Layer {
        let mut out = Layer::with_order(self.num_qubits, self.order);
        for (i, r) in self.rows.iter().enumerate() {
            if let Some(row) = keep(i, r) {
                // Weights are unchanged, so appending preserves the order.
                out.bits.extend_from_slice(&row.bits);
                out.rows.push(row);
            }
        }
        out
    }

    /// Checks that every pair of rows commutes.
    pub fn verify_commuting(&self) -> Result<()> {
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i + 1..] {
                if !row_commutes(a, b)? {
                    return Err(Error::Invariant(format!(
                        "layer rows {} and {} anticommute",
                        a.tag, b.tag
                    )));
                }
            }
        }
        Ok(())
    }

    /// Rows in the native rotation format, one per line.
    pub fn dump(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("{} {}\n", r.angle, r.to_pauli()))
            .collect()
    }
}

impl fmt::Debug for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}
