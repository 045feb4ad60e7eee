use kcycle_core::bench::length_vectors;
use kcycle_core::bounds::{lower_bound, predicted_time};
use kcycle_core::exact::{exact_structured, exact_subset, StructuredConfig, SubsetConfig};
use kcycle_core::{validate, KCycleGraph, Originator};

fn originators(g: &KCycleGraph) -> Vec<Originator> {
    let mut v = vec![Originator::Center];
    v.extend(g.originator_classes());
    v
}

#[test]
fn solvers_agree_on_small_graphs() {
    let mut checked = 0;
    for k in 1..=3 {
        for lengths in length_vectors(k, 2, 5) {
            let g = KCycleGraph::new(&lengths).unwrap();
            if g.n() > 12 {
                continue;
            }
            for o in originators(&g) {
                let a = exact_subset(&g, o, SubsetConfig::default()).unwrap();
                let b = exact_structured(&g, o, StructuredConfig::default()).unwrap();
                assert_eq!(a.time, b.time, "{g} from {o}");
                assert_eq!(validate(&g, o, &a.scheme), Ok(a.time));
                assert_eq!(validate(&g, o, &b.scheme), Ok(b.time));
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} instances");
}

#[test]
fn optimum_is_sandwiched() {
    for k in 1..=4 {
        for lengths in length_vectors(k, 2, 6) {
            let g = KCycleGraph::new(&lengths).unwrap();
            for o in originators(&g) {
                let t = exact_structured(&g, o, StructuredConfig::default()).unwrap().time;
                let lb = lower_bound(&g, o).unwrap().combined;
                let simple = predicted_time(&g, o).unwrap();
                assert!(lb <= t && t <= simple, "{g} from {o}: {lb} <= {t} <= {simple}");
            }
        }
    }
}

#[test]
fn center_optimum_respects_per_cycle_bound() {
    // 2 t - 2i + 1 >= l_i for every cycle i
    for k in 1..=4 {
        for lengths in length_vectors(k, 2, 8) {
            let g = KCycleGraph::new(&lengths).unwrap();
            let t = exact_structured(&g, Originator::Center, StructuredConfig::default())
                .unwrap()
                .time as usize;
            for (i, &l) in lengths.iter().enumerate() {
                assert!(2 * t + 1 >= l + 2 * (i + 1), "{g}: t = {t}, cycle {}", i + 1);
            }
        }
    }
}
