use proptest::prelude::*;
use rand::Rng;

use tqc_core::circuit::{LogicalCircuit, PPCircuit};
use tqc_core::eliminate::{eliminate, CostAwareConfig, EliminateOptions, PushPolicy};
use tqc_core::htab::{row_commutes, HTabRow, Layer, LayerOrder};
use tqc_core::lower::{to_instrs, ToffoliMode};
use tqc_core::optimizer::{
    build_layers, count_rotations, fuse_layer, fuse_layers, reorder_for_basis, schedule_inline,
    schedule_with_latency_hiding, verify_reordering, BasisState, Timing,
};
use tqc_core::oracle::{
    equal_up_to_phase, greedy_layer_count, matrices_commute, rotation_matrix, rotations_unitary, NaiveTableau,
};
use tqc_core::parse::{parse, parse_native, Program};
use tqc_core::random;
use tqc_core::rotation::{decompose_y, fuse_angles};
use tqc_core::sim::{check_exclusive, simulate, ArchConfig};
use tqc_core::vtab::{RowKind, VTab};
use tqc_core::{Angle, OpTag, PauliLetter, PauliString, RotationOp};

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (any::<bool>(), prop::collection::vec(0..4usize, n))
        .prop_map(|(neg, ls)| PauliString::new(neg, ls.into_iter().map(|i| PauliLetter::ALL[i]).collect()))
}

fn width_and_two() -> impl Strategy<Value = (PauliString, PauliString)> {
    prop_oneof![1..=5usize, Just(63usize), Just(64), Just(65), 100..=130usize]
        .prop_flat_map(|n| (pauli(n), pauli(n)))
}

fn xz_ops(n: usize, max_len: usize, seed: u64) -> Vec<RotationOp> {
    let mut rng = random::rng(seed);
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|i| {
            let p = random::sparse_xz_pauli(&mut rng, n, 3);
            RotationOp::new(p, random::angle(&mut rng), OpTag(i as u32)).unwrap()
        })
        .collect()
}

fn eliminated_ops(n: usize, gates: usize, seed: u64) -> Vec<RotationOp> {
    let mut rng = random::rng(seed);
    let c = random::logical_circuit(&mut rng, n, gates);
    let e = eliminate(n, &to_instrs(&c, ToffoliMode::FastPath), &EliminateOptions::default()).unwrap();
    tqc_core::optimizer::prepare(&e.circuit)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn commutation_is_symmetric_and_sign_blind((p, q) in width_and_two()) {
        let pq = p.commutes(&q).unwrap();
        prop_assert_eq!(pq, q.commutes(&p).unwrap());
        prop_assert_eq!(pq, p.negated().commutes(&q).unwrap());
        let a = HTabRow::new(&p, Angle::PI_4, OpTag(0));
        let b = HTabRow::new(&q.negated(), Angle::PI_4, OpTag(1));
        prop_assert_eq!(row_commutes(&a, &b).unwrap(), pq);
        prop_assert_eq!(row_commutes(&b, &a).unwrap(), pq);
    }

    #[test]
    fn commutation_matches_matrices((p, q) in (1..=4usize).prop_flat_map(|n| (pauli(n), pauli(n)))) {
        prop_assert_eq!(p.commutes(&q).unwrap(), matrices_commute(&p, &q));
    }

    #[test]
    fn fused_angle_ignores_order(p in pauli(4), ks in prop::collection::vec((-8i64..8, any::<bool>()), 1..8), seed: u64) {
        let ops: Vec<RotationOp> = ks
            .iter()
            .filter(|(k, _)| *k != 0)
            .enumerate()
            .map(|(i, &(k, neg))| RotationOp::new(p.clone().with_sign(neg), Angle::from_eighths(k), OpTag(i as u32)).unwrap())
            .collect();
        let mut shuffled = ops.clone();
        let mut rng = random::rng(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        prop_assert_eq!(fuse_angles(&ops).unwrap(), fuse_angles(&shuffled).unwrap());
    }

    #[test]
    fn y_decomposition_preserves_the_unitary(n in 1..=3usize, seed: u64) {
        let mut rng = random::rng(seed);
        let op = random::rotation(&mut rng, n, 0);
        let parts = decompose_y(&op);
        prop_assert!(parts.iter().all(|r| !r.pauli().has_y()));
        prop_assert!(parts.iter().all(|r| r.tag() == op.tag()));
        let u = rotations_unitary(&parts, n);
        prop_assert!(equal_up_to_phase(&rotation_matrix(&op), &u, 1e-9));
    }

    #[test]
    fn vtab_matches_naive_tableau(
        n in prop_oneof![1..=6usize, 62..=66usize, Just(128usize)],
        rows in 1..150usize,
        gates in 0..300usize,
        seed: u64,
    ) {
        let mut rng = random::rng(seed);
        let mut fast = VTab::new(n).unwrap();
        let mut naive = NaiveTableau::new();
        for _ in 0..rows {
            let p = random::pauli(&mut rng, n);
            fast.append_row(&p, RowKind::Measurement, OpTag(0)).unwrap();
            naive.push(p);
        }
        for _ in 0..gates {
            let g = random::clifford(&mut rng, n);
            fast.apply_clifford(g).unwrap();
            naive.apply(g);
            prop_assert!(fast.padding_is_canonical());
        }
        prop_assert_eq!(fast.decode_all(), naive.rows().to_vec());
    }

    #[test]
    fn worker_count_is_invisible(n in 1..=9usize, gates in 1..120usize, seed: u64, cost_aware: bool) {
        let mut rng = random::rng(seed);
        let mut c = random::logical_circuit(&mut rng, n, gates);
        random::measure_all(&mut c);
        let instrs = to_instrs(&c, ToffoliMode::FastPath);
        let policy = if cost_aware { PushPolicy::CostAware(CostAwareConfig::default()) } else { PushPolicy::Always };
        let one = eliminate(n, &instrs, &EliminateOptions { policy, workers: 1 }).unwrap();
        for w in [2, 3, 5, 8] {
            let many = eliminate(n, &instrs, &EliminateOptions { policy, workers: w }).unwrap();
            prop_assert_eq!(&one.circuit, &many.circuit);
            prop_assert_eq!(&one.kept, &many.kept);
        }
    }

    #[test]
    fn eliminated_output_is_clifford_free_in_program_order(n in 1..=6usize, gates in 1..80usize, seed: u64) {
        let mut rng = random::rng(seed);
        let c = random::logical_circuit(&mut rng, n, gates);
        let e = eliminate(n, &to_instrs(&c, ToffoliMode::FastPath), &EliminateOptions::default()).unwrap();
        prop_assert!(e.kept.is_empty());
        prop_assert!(e.circuit.rotations.iter().all(|r| !r.angle().is_pauli() || r.angle() == Angle::PI));
        let tags: Vec<u32> = e.circuit.rotations.iter().map(|r| r.tag().0).collect();
        prop_assert!(tags.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn early_termination_does_not_change_layers(n in 1..=20usize, seed: u64) {
        let ops = xz_ops(n, 200, seed);
        let sorted = build_layers(n, &ops, LayerOrder::WeightDescending).unwrap();
        let plain = build_layers(n, &ops, LayerOrder::Insertion).unwrap();
        prop_assert_eq!(sorted.layers.len(), plain.layers.len());
        for (a, b) in sorted.layers.iter().zip(&plain.layers) {
            let mut ta: Vec<OpTag> = a.rows().iter().map(HTabRow::tag).collect();
            let mut tb: Vec<OpTag> = b.rows().iter().map(HTabRow::tag).collect();
            ta.sort();
            tb.sort();
            prop_assert_eq!(ta, tb);
        }
        sorted.verify_layers().unwrap();
    }

    #[test]
    fn earliest_fit_never_loses_to_greedy(n in 1..=20usize, seed: u64) {
        let ops = xz_ops(n, 200, seed);
        let lc = build_layers(n, &ops, LayerOrder::WeightDescending).unwrap();
        prop_assert!(lc.layers.len() <= greedy_layer_count(&ops));
        prop_assert_eq!(lc.op_count(), ops.len());
    }

    #[test]
    fn layering_and_fusion_keep_the_unitary(n in 1..=3usize, seed: u64) {
        let ops = xz_ops(n, 30, seed);
        let u = rotations_unitary(&ops, n);
        let lc = build_layers(n, &ops, LayerOrder::WeightDescending).unwrap();
        prop_assert!(equal_up_to_phase(&u, &rotations_unitary(&lc.ops(), n), 1e-9));
        let fused = fuse_layers(&lc);
        prop_assert!(equal_up_to_phase(&u, &rotations_unitary(&fused.ops(), n), 1e-9));
        fused.verify_layers().unwrap();
        for l in &fused.layers {
            prop_assert!(l.fusion_scan().is_empty());
        }
    }

    #[test]
    fn fusion_scan_matches_pairwise_grouping(n in 1..=6usize, len in 1..60usize, seed: u64, sorted: bool) {
        let mut rng = random::rng(seed);
        let order = if sorted { LayerOrder::WeightDescending } else { LayerOrder::Insertion };
        let mut layer = Layer::with_order(n, order);
        // Only Z-type strings, so everything commutes and duplicates are likely.
        for i in 0..len {
            let mut p = PauliString::identity(n);
            for q in 0..n {
                if rng.gen_bool(0.4) {
                    p.set_letter(q, PauliLetter::Z);
                }
            }
            if p.weight() == 0 {
                p.set_letter(0, PauliLetter::Z);
            }
            let p = p.with_sign(rng.gen_bool(0.2));
            layer.insert(HTabRow::new(&p, Angle::PI_4, OpTag(i as u32))).unwrap();
        }
        let rows = layer.rows();
        let mut expect: Vec<Vec<usize>> = Vec::new();
        let mut used = vec![false; rows.len()];
        for i in 0..rows.len() {
            if used[i] {
                continue;
            }
            let group: Vec<usize> = (i..rows.len()).filter(|&j| rows[j].to_pauli() == rows[i].to_pauli()).collect();
            for &j in &group {
                used[j] = true;
            }
            if group.len() >= 2 {
                expect.push(group);
            }
        }
        let mut got = layer.fusion_scan();
        got.sort();
        expect.sort();
        prop_assert_eq!(got, expect);
        let fused = fuse_layer(&layer);
        prop_assert!(fused.fusion_scan().is_empty());
    }

    #[test]
    fn reorder_count_matches_replay(n in 1..=12usize, seed: u64) {
        let ops = eliminated_ops(n, 60, seed);
        let lc = build_layers(n, &ops, LayerOrder::WeightDescending).unwrap();
        let init = BasisState::all_z(n);
        let r = reorder_for_basis(&lc, &init);
        prop_assert_eq!(count_rotations(&r.ops, &init).unwrap(), r.rotations);
        verify_reordering(&lc.ops(), &r.ops).unwrap();
    }

    #[test]
    fn schedules_are_exclusive_and_deterministic(n in 1..=10usize, seed: u64, hide: bool) {
        let ops = eliminated_ops(n, 50, seed);
        let arch = ArchConfig::new(n);
        let init = BasisState::all_z(n);
        let plan = if hide {
            schedule_with_latency_hiding(n, &ops, &init, arch.timing()).unwrap()
        } else {
            schedule_inline(n, &ops, &init, arch.timing()).unwrap()
        };
        plan.check_basis().unwrap();
        let a = simulate(&plan, &arch).unwrap();
        check_exclusive(&a.events).unwrap();
        prop_assert_eq!(&a, &simulate(&plan, &arch).unwrap());
        prop_assert_eq!(a.executed_ops + a.frame_ops, ops.len());
    }

    #[test]
    fn appending_ops_never_shortens_a_run(n in 1..=8usize, seed: u64, extra in 1..10usize) {
        let ops = eliminated_ops(n, 40, seed);
        let more = eliminated_ops(n, extra, seed ^ 0x5eed);
        let arch = ArchConfig::new(n);
        let init = BasisState::all_z(n);
        let t = Timing::default();
        let short = simulate(&schedule_inline(n, &ops, &init, t).unwrap(), &arch).unwrap();
        let joined: Vec<RotationOp> = ops.iter().chain(&more).cloned().collect();
        let long = simulate(&schedule_inline(n, &joined, &init, t).unwrap(), &arch).unwrap();
        prop_assert!(long.total_rounds >= short.total_rounds);
    }

    #[test]
    fn qasm_round_trips(n in 1..=8usize, gates in 0..60usize, seed: u64) {
        let mut rng = random::rng(seed);
        let mut c: LogicalCircuit = random::logical_circuit(&mut rng, n, gates);
        random::measure_all(&mut c);
        match parse(&c.to_qasm()).unwrap() {
            Program::Logical(back) => prop_assert_eq!(back, c),
            other => prop_assert!(false, "parsed as {:?}", other),
        }
    }

    #[test]
    fn native_round_trips(n in 1..=8usize, len in 0..40usize, seed: u64) {
        let mut rng = random::rng(seed);
        let mut c = PPCircuit::new(n);
        c.rotations = (0..len).map(|i| random::rotation(&mut rng, n, i as u32)).collect();
        c.measurements = (0..n).map(|_| random::pauli(&mut rng, n)).collect();
        let back = parse_native(&c.to_native()).unwrap();
        prop_assert_eq!(back.to_native(), c.to_native());
        prop_assert_eq!(back.rotations.len(), len);
    }
}
