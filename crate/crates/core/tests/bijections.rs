use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use tabinv_core::{
    enumerate_with_inversions, phi1_general, phi1_rect, phi2_general, phi2_rect, standard_tableaux,
    EnumConfig, Partition, StairStepMove,
};

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

fn shape(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn rectangular_maps_are_mutually_inverse() {
    for (m, n) in [(2, 2), (3, 2), (3, 3), (4, 2), (2, 4), (2, 1), (4, 1)] {
        let rect = Partition::rectangle(m, n).unwrap();
        let ones = enumerate_with_inversions(&rect, 1, &cfg()).unwrap();
        let mut images = HashSet::new();
        for t in &ones {
            let (out, trace) = phi1_rect(t).unwrap();
            assert!(out.is_standard(), "{t} -> {out}");
            assert!(trace.distinguished.windows(2).all(|w| w[0] < w[1]));
            let (back, _) = phi2_rect(&out).unwrap();
            assert_eq!(&back, t);
            assert!(images.insert(out));
        }
        let target = rect.rectangle_stair_step().unwrap();
        let standards = standard_tableaux(&target, &cfg()).unwrap();
        assert_eq!(standards.len(), ones.len(), "{m}x{n}");
        for s in &standards {
            let (t, trace) = phi2_rect(s).unwrap();
            assert!(trace.distinguished.windows(2).all(|w| w[0] > w[1]));
            assert_eq!(&phi1_rect(&t).unwrap().0, s);
        }
    }
}

#[test]
fn three_by_three_has_168_round_trips() {
    let ones = enumerate_with_inversions(&shape("3,3,3"), 1, &cfg()).unwrap();
    assert_eq!(ones.len(), 168);
    for t in &ones {
        let (out, _) = phi1_rect(t).unwrap();
        assert_eq!(&phi2_rect(&out).unwrap().0, t);
    }
}

#[test]
fn two_by_two_lands_on_each_standard_tableau_once() {
    let ones = enumerate_with_inversions(&shape("2,2"), 1, &cfg()).unwrap();
    assert_eq!(ones.len(), 3);
    let images: HashSet<String> = ones.iter().map(|t| phi1_rect(t).unwrap().0.to_string()).collect();
    let expected: HashSet<String> = ["1 2 3 / 4", "1 2 4 / 3", "1 3 4 / 2"].iter().map(|s| s.to_string()).collect();
    assert_eq!(images, expected);
}

#[test]
fn four_three_two_two_splits_over_its_stair_steps() {
    let lam = shape("4,3,2,2");
    let ones = enumerate_with_inversions(&lam, 1, &cfg()).unwrap();
    let mut fibers: BTreeMap<StairStepMove, usize> = BTreeMap::new();
    for t in &ones {
        let (mv, out, _) = phi1_general(t).unwrap();
        assert_eq!(&phi2_general(mv, &out, &lam).unwrap().0, t);
        *fibers.entry(mv).or_default() += 1;
    }
    let steps = lam.stair_step_shapes();
    let shapes: Vec<String> = steps.iter().map(|(_, p)| p.to_string()).collect();
    assert_eq!(shapes, ["5,2,2,2", "5,3,2,1", "4,4,2,1", "4,3,3,1"]);
    assert_eq!(fibers.len(), 4);
    for (mv, p) in &steps {
        assert_eq!(BigUint::from(fibers[mv]), p.standard_count(), "{p}");
        for s in standard_tableaux(p, &cfg()).unwrap() {
            let (t, _) = phi2_general(*mv, &s, &lam).unwrap();
            let (mv2, s2, _) = phi1_general(&t).unwrap();
            assert_eq!((mv2, s2), (*mv, s));
        }
    }
}

#[test]
fn general_maps_biject_for_all_shapes_up_to_nine() {
    for lam in Partition::all_up_to(9) {
        let ones = enumerate_with_inversions(&lam, 1, &cfg()).unwrap();
        let mut seen = HashSet::new();
        for t in &ones {
            let (mv, out, trace) = phi1_general(t).unwrap();
            assert!(out.is_standard());
            assert_eq!(&mv.apply(&lam).unwrap(), out.shape());
            assert!(trace.distinguished.windows(2).all(|w| w[0] < w[1]), "{t}");
            assert_eq!(trace.replay(t).unwrap(), out);
            assert_eq!(&trace.rewind(&out).unwrap(), &**t);
            let (back, back_trace) = phi2_general(mv, &out, &lam).unwrap();
            assert_eq!(&back, t, "{lam}: {t} -> {out}");
            assert_eq!(&back_trace.rewind(&back).unwrap(), &out);
            assert!(seen.insert((mv, out)));
        }
        let hooks: BigUint = lam.stair_step_shapes().iter().map(|(_, p)| p.standard_count()).sum();
        assert_eq!(BigUint::from(ones.len()), hooks, "{lam}");
    }
}

#[test]
fn reverse_map_is_onto_for_small_shapes() {
    for lam in ["2,1", "3,2", "2,2,1", "3,3,1", "4,2,1"].map(shape) {
        for (mv, p) in lam.stair_step_shapes() {
            for s in standard_tableaux(&p, &cfg()).unwrap() {
                let (t, _) = phi2_general(mv, &s, &lam).unwrap();
                let (mv2, s2, _) = phi1_general(&t).unwrap();
                assert_eq!((mv2, &s2), (mv, &s));
            }
        }
    }
}

#[test]
fn rectangular_general_agrees_with_rectangular() {
    let rect = shape("3,3,3");
    let mv = StairStepMove {
        target_row: 1,
        source_row: 3,
    };
    for s in standard_tableaux(&shape("4,3,2"), &cfg()).unwrap() {
        assert_eq!(phi2_rect(&s).unwrap(), phi2_general(mv, &s, &rect).unwrap());
    }
}
