//! Passes over Clifford-free rotation lists: earliest-fit layering, fusion,
//! basis-aware reordering and latency-hiding scheduling.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::circuit::PPCircuit;
use crate::error::{Error, Result};
use crate::htab::{HTabRow, Layer, LayerOrder};
use crate::pauli::{commutes, PauliLetter};
use crate::rotation::{decompose_y, OpTag, RotationOp};

/// The logical operator a patch exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Z,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::X => "X",
            Basis::Z => "Z",
        })
    }
}

/// Basis an op needs on a qubit carrying `letter`; `None` for `I` and `Y`.
pub fn required_basis(letter: PauliLetter) -> Option<Basis> {
    match letter {
        PauliLetter::X => Some(Basis::X),
        PauliLetter::Z => Some(Basis::Z),
        PauliLetter::I | PauliLetter::Y => None,
    }
}

/// Zero-cost ops tracked in the Pauli frame rather than executed.
pub fn is_frame_op(op: &RotationOp) -> bool {
    op.angle().is_pauli()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState(Vec<Basis>);

impl BasisState {
    pub fn all_z(num_qubits: usize) -> Self {
        Self(vec![Basis::Z; num_qubits])
    }

    pub fn get(&self, q: usize) -> Basis {
        self.0[q]
    }

    pub fn set(&mut self, q: usize, b: Basis) {
        self.0[q] = b;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Qubits whose exposed basis must change before `op` can run.
    pub fn mismatches(&self, op: &RotationOp) -> Result<Vec<(usize, Basis)>> {
        if is_frame_op(op) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for (q, &l) in op.pauli().letters().iter().enumerate() {
            if l == PauliLetter::Y {
                return Err(Error::InvalidPlan(format!("{op:?} carries a Y letter")));
            }
            if let Some(b) = required_basis(l) {
                if self.0[q] != b {
                    out.push((q, b));
                }
            }
        }
        Ok(out)
    }

    /// Applies the exposure an op leaves behind. Frame ops change nothing.
    pub fn execute(&mut self, op: &RotationOp) {
        if is_frame_op(op) {
            return;
        }
        for (q, &l) in op.pauli().letters().iter().enumerate() {
            if let Some(b) = required_basis(l) {
                self.0[q] = b;
            }
        }
    }
}

/// Splits `Y`-carrying rotations, folds signs into angles and renumbers tags.
/// `π` rotations are Pauli-frame updates and are left whole.
pub fn prepare(ppc: &PPCircuit) -> Vec<RotationOp> {
    let mut out: Vec<RotationOp> = Vec::with_capacity(ppc.rotations.len());
    for op in &ppc.rotations {
        if is_frame_op(op) {
            out.push(op.canonical());
        } else {
            out.extend(decompose_y(op).iter().map(RotationOp::canonical));
        }
    }
    for (i, op) in out.iter_mut().enumerate() {
        *op = op.clone().with_tag(OpTag(i as u32));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredCircuit {
    pub num_qubits: usize,
    pub layers: Vec<Layer>,
    /// Tags of fused ops mapped to the tags they replaced.
    pub provenance: BTreeMap<OpTag, Vec<OpTag>>,
}

impl LayeredCircuit {
    /// Ops in layer order, each layer in stored order.
    pub fn ops(&self) -> Vec<RotationOp> {
        self.layers.iter().flat_map(Layer::to_rotations).collect()
    }

    pub fn op_count(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn verify_layers(&self) -> Result<()> {
        self.layers.iter().try_for_each(Layer::verify_commuting)
    }
}

/// Earliest-fit layering: scan layers from the last backwards while the op
/// commutes with the whole layer, and place it in the earliest such layer.
pub fn build_layers(num_qubits: usize, ops: &[RotationOp], order: LayerOrder) -> Result<LayeredCircuit> {
    let mut layers: Vec<Layer> = Vec::new();
    for op in ops {
        op.pauli().check_len(num_qubits)?;
        let row = HTabRow::from_rotation(op);
        let mut target = None;
        for (i, layer) in layers.iter().enumerate().rev() {
            if !layer.admits(&row) {
                break;
            }
            target = Some(i);
        }
        match target {
            Some(i) => {
                layers[i].insert_unchecked(row);
            }
            None => {
                let mut l = Layer::with_order(num_qubits, order);
                l.insert_unchecked(row);
                layers.push(l);
            }
        }
    }
    Ok(LayeredCircuit {
        num_qubits,
        layers,
        provenance: BTreeMap::new(),
    })
}

/// Outcome of fusing one layer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Fusion {
    pub layer: Option<Layer>,
    /// Surviving tag and the tags merged into it, for groups that did not cancel.
    pub merged: Vec<(OpTag, Vec<OpTag>)>,
    /// Tags of groups whose angles summed to zero.
    pub cancelled: Vec<Vec<OpTag>>,
}

/// Replaces each group of identical strings by one op with the summed angle.
/// Groups summing to zero disappear.
pub fn fuse_layer(l: &Layer) -> Layer {
    fuse_layer_tracked(l).layer.expect("always set")
}

pub fn fuse_layer_tracked(l: &Layer) -> Fusion {
    let groups = l.fusion_scan();
    // Row index -> Some(summed angle) for group leaders, None for absorbed rows.
    let mut fate: BTreeMap<usize, Option<Angle>> = BTreeMap::new();
    let mut out = Fusion::default();
    for g in &groups {
        let sum: Angle = g.iter().map(|&i| l.row(i).angle()).sum();
        let tags: Vec<OpTag> = g.iter().map(|&i| l.row(i).tag()).collect();
        if sum.is_zero() {
            g.iter().for_each(|&i| {
                fate.insert(i, None);
            });
            out.cancelled.push(tags);
        } else {
            fate.insert(g[0], Some(sum));
            g[1..].iter().for_each(|&i| {
                fate.insert(i, None);
            });
            out.merged.push((tags[0], tags));
        }
    }
    out.layer = Some(l.rebuild(|i, r| match fate.get(&i) {
        None => Some(r.clone()),
        Some(None) => None,
        Some(Some(a)) => Some(r.clone().with_angle(*a)),
    }));
    out
}

/// Fuses every layer, dropping layers that empty out and recording provenance.
pub fn fuse_layers(lc: &LayeredCircuit) -> LayeredCircuit {
    let mut provenance = lc.provenance.clone();
    let mut layers = Vec::with_capacity(lc.layers.len());
    for l in &lc.layers {
        let f = fuse_layer_tracked(l);
        for (keep, tags) in f.merged {
            let mut sources: Vec<OpTag> = Vec::new();
            for t in tags {
                match provenance.remove(&t) {
                    Some(prev) => sources.extend(prev),
                    None => sources.push(t),
                }
            }
            provenance.insert(keep, sources);
        }
        let layer = f.layer.expect("always set");
        if !layer.is_empty() {
            layers.push(layer);
        }
    }
    LayeredCircuit {
        num_qubits: lc.num_qubits,
        layers,
        provenance,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reordered {
    pub ops: Vec<RotationOp>,
    pub final_state: BasisState,
    /// Patch rotations the chosen order needs.
    pub rotations: usize,
}

fn mismatch_count(row: &HTabRow, state: &BasisState) -> usize {
    if row.angle().is_pauli() {
        return 0;
    }
    row.support()
        .filter(|&q| required_basis(row.letter(q)).is_some_and(|b| state.get(q) != b))
        .count()
}

/// Greedy per-layer selection of the op needing the fewest patch rotations,
/// ties broken by higher weight and then stored order. The exposed bases
/// carry over from layer to layer.
pub fn reorder_for_basis(lc: &LayeredCircuit, init: &BasisState) -> Reordered {
    let mut state = init.clone();
    let mut ops = Vec::with_capacity(lc.op_count());
    let mut rotations = 0;
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); lc.num_qubits];
    for layer in &lc.layers {
        let rows = layer.rows();
        let mut cost: Vec<usize> = rows.iter().map(|r| mismatch_count(r, &state)).collect();
        let mut queue: BTreeSet<(usize, Reverse<usize>, usize)> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (cost[i], Reverse(r.weight()), i))
            .collect();
        let mut done = vec![false; rows.len()];
        let mut touched: Vec<usize> = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            if r.angle().is_pauli() {
                continue;
            }
            for q in r.support() {
                if incidence[q].is_empty() {
                    touched.push(q);
                }
                incidence[q].push(i);
            }
        }
        while let Some((c, _, i)) = queue.pop_first() {
            done[i] = true;
            rotations += c;
            let row = &rows[i];
            if !row.angle().is_pauli() {
                for q in row.support() {
                    let Some(b) = required_basis(row.letter(q)) else { continue };
                    if state.get(q) == b {
                        continue;
                    }
                    state.set(q, b);
                    for &j in &incidence[q] {
                        if done[j] {
                            continue;
                        }
                        let new_cost = mismatch_count(&rows[j], &state);
                        if new_cost != cost[j] {
                            let w = Reverse(rows[j].weight());
                            queue.remove(&(cost[j], w, j));
                            queue.insert((new_cost, w, j));
                            cost[j] = new_cost;
                        }
                    }
                }
            }
            ops.push(row.to_rotation().expect("layers never hold zero angles"));
        }
        for q in touched {
            incidence[q].clear();
        }
    }
    Reordered {
        ops,
        final_state: state,
        rotations,
    }
}

/// Patch rotations needed to run `ops` in the given order, replayed from scratch.
pub fn count_rotations(ops: &[RotationOp], init: &BasisState) -> Result<usize> {
    let mut state = init.clone();
    let mut total = 0;
    for op in ops {
        total += state.mismatches(op)?.len();
        state.execute(op);
    }
    Ok(total)
}

/// Checks that `after` is a permutation of `before` (matched by tag) in which
/// every pair of ops that changed relative order commutes.
pub fn verify_reordering(before: &[RotationOp], after: &[RotationOp]) -> Result<()> {
    if before.len() != after.len() {
        return Err(Error::Invariant("reordering changed the op count".into()));
    }
    let pos: BTreeMap<OpTag, usize> = after.iter().enumerate().map(|(i, op)| (op.tag(), i)).collect();
    if pos.len() != after.len() {
        return Err(Error::Invariant("duplicate tags".into()));
    }
    let mut at = Vec::with_capacity(before.len());
    for op in before {
        let &i = pos
            .get(&op.tag())
            .ok_or_else(|| Error::Invariant(format!("{} missing after reordering", op.tag())))?;
        if after[i] != *op {
            return Err(Error::Invariant(format!("{} changed", op.tag())));
        }
        at.push(i);
    }
    for i in 0..before.len() {
        for j in i + 1..before.len() {
            if at[i] > at[j] && !commutes(before[i].pauli(), before[j].pauli())? {
                return Err(Error::Invariant(format!(
                    "{} and {} swapped but anticommute",
                    before[i].tag(),
                    before[j].tag()
                )));
            }
        }
    }
    Ok(())
}

/// Round costs used for the earliest-start annotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Timing {
    pub op_rounds: u64,
    pub rotation_rounds: u64,
}

impl Default for Timing {
    fn default() -> Self {
        Self {
            op_rounds: 1,
            rotation_rounds: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanItem {
    Execute {
        op: RotationOp,
        /// Earliest start round, ignoring ancilla contention.
        earliest: u64,
    },
    RotatePatch {
        qubit: usize,
        from: Basis,
        to: Basis,
        earliest: u64,
    },
    /// A `π` rotation, tracked in the Pauli frame at no cost.
    PauliFrame { op: RotationOp },
}

impl fmt::Display for PlanItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanItem::Execute { op, earliest } => write!(f, "@{earliest} exec {op} {}", op.tag()),
            PlanItem::RotatePatch {
                qubit,
                from,
                to,
                earliest,
            } => write!(f, "@{earliest} rotate q{qubit} {from}->{to}"),
            PlanItem::PauliFrame { op } => write!(f, "frame {op} {}", op.tag()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub num_qubits: usize,
    pub init: BasisState,
    pub items: Vec<PlanItem>,
    /// Rotations are left to the executor, inserted right before each op.
    pub inline_rotations: bool,
}

impl Plan {
    /// Rotations and frame ops in plan order.
    pub fn ops(&self) -> impl Iterator<Item = &RotationOp> {
        self.items.iter().filter_map(|it| match it {
            PlanItem::Execute { op, .. } | PlanItem::PauliFrame { op } => Some(op),
            PlanItem::RotatePatch { .. } => None,
        })
    }

    pub fn rotate_count(&self) -> usize {
        self.items
            .iter()
            .filter(|it| matches!(it, PlanItem::RotatePatch { .. }))
            .count()
    }

    /// Replays the plan and checks that every op finds its bases exposed.
    pub fn check_basis(&self) -> Result<()> {
        let mut state = self.init.clone();
        for (i, item) in self.items.iter().enumerate() {
            match item {
                PlanItem::RotatePatch { qubit, from, to, .. } => {
                    if *qubit >= self.num_qubits {
                        return Err(Error::InvalidPlan(format!("item {i}: unknown qubit {qubit}")));
                    }
                    if state.get(*qubit) != *from {
                        return Err(Error::InvalidPlan(format!(
                            "item {i}: q{qubit} exposes {}, not {from}",
                            state.get(*qubit)
                        )));
                    }
                    state.set(*qubit, *to);
                }
                PlanItem::Execute { op, .. } => {
                    let miss = state.mismatches(op)?;
                    if !self.inline_rotations && !miss.is_empty() {
                        return Err(Error::InvalidPlan(format!(
                            "item {i}: {op} needs {} on q{}",
                            miss[0].1, miss[0].0
                        )));
                    }
                    state.execute(op);
                }
                PlanItem::PauliFrame { .. } => {}
            }
        }
        Ok(())
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            writeln!(out, "{item}").expect("writing to a String");
        }
        out
    }
}

/// A plan with no explicit rotations: each op takes its rotations inline.
pub fn schedule_inline(num_qubits: usize, ops: &[RotationOp], init: &BasisState, t: Timing) -> Result<Plan> {
    let mut ready = vec![0u64; num_qubits];
    let mut state = init.clone();
    let mut items = Vec::with_capacity(ops.len());
    for op in ops {
        op.pauli().check_len(num_qubits)?;
        if is_frame_op(op) {
            items.push(PlanItem::PauliFrame { op: op.clone() });
            continue;
        }
        let support = op.pauli().support();
        let start = support.iter().map(|&q| ready[q]).max().unwrap_or(0);
        let rot = if state.mismatches(op)?.is_empty() { 0 } else { t.rotation_rounds };
        let end = start + rot + t.op_rounds;
        support.iter().for_each(|&q| ready[q] = end);
        state.execute(op);
        items.push(PlanItem::Execute {
            op: op.clone(),
            earliest: start + rot,
        });
    }
    Ok(Plan {
        num_qubits,
        init: init.clone(),
        items,
        inline_rotations: true,
    })
}

/// Emits each needed patch rotation right after the previous use of its qubit,
/// so it overlaps with work on other qubits.
pub fn schedule_with_latency_hiding(
    num_qubits: usize,
    ops: &[RotationOp],
    init: &BasisState,
    t: Timing,
) -> Result<Plan> {
    // Rotations attach to the item after which they are emitted; slot 0 is
    // the plan start and slot i + 1 follows op i.
    let mut after: Vec<Vec<PlanItem>> = vec![Vec::new(); ops.len() + 1];
    let mut last_use: Vec<usize> = vec![0; num_qubits];
    let mut ready = vec![0u64; num_qubits];
    let mut state = init.clone();
    let mut main = Vec::with_capacity(ops.len());
    for (i, op) in ops.iter().enumerate() {
        op.pauli().check_len(num_qubits)?;
        if is_frame_op(op) {
            main.push(PlanItem::PauliFrame { op: op.clone() });
            continue;
        }
        for (q, to) in state.mismatches(op)? {
            let earliest = ready[q];
            after[last_use[q]].push(PlanItem::RotatePatch {
                qubit: q,
                from: state.get(q),
                to,
                earliest,
            });
            ready[q] = earliest + t.rotation_rounds;
        }
        let support = op.pauli().support();
        let start = support.iter().map(|&q| ready[q]).max().unwrap_or(0);
        for &q in &support {
            ready[q] = start + t.op_rounds;
            last_use[q] = i + 1;
        }
        state.execute(op);
        main.push(PlanItem::Execute {
            op: op.clone(),
            earliest: start,
        });
    }
    let mut items = Vec::with_capacity(ops.len() * 2);
    let mut slots = after.into_iter();
    items.extend(slots.next().expect("slot 0"));
    for (item, slot) in main.into_iter().zip(slots) {
        items.push(item);
        items.extend(slot);
    }
    Ok(Plan {
        num_qubits,
        init: init.clone(),
        items,
        inline_rotations: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(lines: &[&str]) -> Vec<RotationOp> {
        let mut v: Vec<RotationOp> = lines.iter().map(|l| l.parse().unwrap()).collect();
        for (i, op) in v.iter_mut().enumerate() {
            *op = op.clone().with_tag(OpTag(i as u32));
        }
        v
    }

    fn shown(v: &[RotationOp]) -> Vec<String> {
        v.iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn earliest_fit_trace() {
        let lc = build_layers(2, &ops(&["pi/4 +ZI", "pi/4 +IZ", "pi/4 +XI"]), LayerOrder::default()).unwrap();
        assert_eq!(lc.layers.len(), 2);
        assert_eq!(lc.layers[0].len(), 2);
        let lc = build_layers(3, &ops(&["pi/4 +ZII", "pi/4 +IZI", "pi/4 +ZZZ"]), LayerOrder::default()).unwrap();
        assert_eq!(lc.layers.len(), 1);
    }

    #[test]
    fn earliest_fit_jumps_back() {
        // +IZ commutes with layer 2 (+XI) and layer 1 (+ZI), so it lands in layer 1.
        let lc = build_layers(2, &ops(&["pi/4 +ZI", "pi/4 +XI", "pi/4 +IZ"]), LayerOrder::default()).unwrap();
        assert_eq!(lc.layers.len(), 2);
        assert_eq!(lc.layers[0].len(), 2);
        // A conflict in layer 2 stops the scan even though layer 1 would fit.
        let lc = build_layers(2, &ops(&["pi/4 +ZI", "pi/4 +XX", "pi/4 +IZ"]), LayerOrder::default()).unwrap();
        assert_eq!(lc.layers.len(), 3);
    }

    #[test]
    fn fusion_cases() {
        let lc = build_layers(2, &ops(&["pi/4 +ZZ", "pi/4 +ZZ"]), LayerOrder::default()).unwrap();
        assert_eq!(shown(&fuse_layer(&lc.layers[0]).to_rotations()), ["pi/2 +ZZ"]);
        let lc = build_layers(2, &ops(&["pi/4 +ZZ", "-pi/4 +ZZ"]), LayerOrder::default()).unwrap();
        assert!(fuse_layer(&lc.layers[0]).is_empty());
        let fused = fuse_layers(&lc);
        assert!(fused.layers.is_empty());
        let lc = build_layers(1, &ops(&["pi/4 +Z", "pi/2 +Z", "pi/4 +Z"]), LayerOrder::default()).unwrap();
        let fused = fuse_layers(&lc);
        assert_eq!(shown(&fused.ops()), ["pi +Z"]);
        assert_eq!(fused.provenance[&OpTag(0)], vec![OpTag(0), OpTag(1), OpTag(2)]);
    }

    #[test]
    fn reorder_prefers_exposed_basis() {
        let lc = build_layers(1, &ops(&["pi/4 +X"]), LayerOrder::default()).unwrap();
        let r = reorder_for_basis(&lc, &BasisState::all_z(1));
        assert_eq!(r.rotations, 1);
        assert_eq!(r.final_state.get(0), Basis::X);

        let lc = build_layers(2, &ops(&["pi/4 +XX", "pi/4 +ZI", "pi/4 +IZ"]), LayerOrder::default()).unwrap();
        assert_eq!(lc.layers.len(), 2);
        let lc = build_layers(2, &ops(&["pi/4 +XI", "pi/4 +IZ"]), LayerOrder::default()).unwrap();
        let r = reorder_for_basis(&lc, &BasisState::all_z(2));
        assert_eq!(shown(&r.ops), ["pi/4 +IZ", "pi/4 +XI"]);
        assert_eq!(r.rotations, count_rotations(&r.ops, &BasisState::all_z(2)).unwrap());
    }

    #[test]
    fn hiding_moves_rotation_ahead() {
        let list = ops(&["pi/4 +ZI", "pi/4 +IX"]);
        let init = BasisState::all_z(2);
        let plan = schedule_with_latency_hiding(2, &list, &init, Timing::default()).unwrap();
        assert!(matches!(plan.items[0], PlanItem::RotatePatch { qubit: 1, .. }));
        plan.check_basis().unwrap();
        let PlanItem::Execute { earliest, .. } = plan.items[2] else { panic!() };
        assert_eq!(earliest, 3);

        let inline = schedule_inline(2, &list, &init, Timing::default()).unwrap();
        assert_eq!(inline.rotate_count(), 0);
        inline.check_basis().unwrap();
    }

    #[test]
    fn single_qubit_rotation_stays_behind_previous_use() {
        let list = ops(&["pi/4 +Z", "pi/4 +X"]);
        let plan = schedule_with_latency_hiding(1, &list, &BasisState::all_z(1), Timing::default()).unwrap();
        assert!(matches!(plan.items[1], PlanItem::RotatePatch { .. }));
        let PlanItem::Execute { earliest, .. } = plan.items[2] else { panic!() };
        assert_eq!(earliest, 4);
    }

    #[test]
    fn frame_ops_do_not_touch_basis() {
        let list = ops(&["pi +X", "pi/4 +Z"]);
        let plan = schedule_with_latency_hiding(1, &list, &BasisState::all_z(1), Timing::default()).unwrap();
        assert_eq!(plan.rotate_count(), 0);
        assert!(matches!(plan.items[0], PlanItem::PauliFrame { .. }));
    }

    #[test]
    fn bad_plans_are_caught() {
        let plan = Plan {
            num_qubits: 1,
            init: BasisState::all_z(1),
            items: vec![PlanItem::Execute {
                op: "pi/4 +X".parse().unwrap(),
                earliest: 0,
            }],
            inline_rotations: false,
        };
        assert!(plan.check_basis().is_err());
    }

    #[test]
    fn prepare_splits_y() {
        let mut ppc = PPCircuit::new(2);
        ppc.rotations = ops(&["pi/4 +YZ", "pi +YY", "pi/4 -XZ"]);
        let prepared = prepare(&ppc);
        assert_eq!(
            shown(&prepared),
            ["-pi/2 +ZI", "pi/4 +XZ", "pi/2 +ZI", "pi +YY", "-pi/4 +XZ"]
        );
        let tags: Vec<u32> = prepared.iter().map(|o| o.tag().0).collect();
        assert_eq!(tags, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn reordering_check() {
        let before = ops(&["pi/4 +ZI", "pi/4 +XI", "pi/4 +IZ"]);
        let ok = vec![before[2].clone(), before[0].clone(), before[1].clone()];
        verify_reordering(&before, &ok).unwrap();
        let bad = vec![before[1].clone(), before[0].clone(), before[2].clone()];
        assert!(verify_reordering(&before, &bad).is_err());
    }
}
