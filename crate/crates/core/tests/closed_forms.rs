use kcycle_core::cycle_completion_time;

const NEVER: u32 = u32::MAX;

/// Round-by-round simulation of one cycle of `l` vertices hanging off the
/// center: the center calls position 1 at `a` and position `l` at `b`, and
/// every informed vertex passes the message to an uninformed path neighbour.
fn simulate_cycle(l: usize, a: u32, b: Option<u32>) -> u32 {
    let mut t = vec![NEVER; l];
    let mut round = 0;
    while t.contains(&NEVER) {
        round += 1;
        let before = t.clone();
        let informed = |i: usize| before[i] < round;
        for i in 0..l {
            if before[i] != NEVER {
                continue;
            }
            let from_left = i > 0 && informed(i - 1);
            let from_right = i + 1 < l && informed(i + 1);
            if from_left || from_right {
                t[i] = round;
            }
        }
        if round == a && t[0] == NEVER {
            t[0] = round;
        }
        if Some(round) == b && t[l - 1] == NEVER {
            t[l - 1] = round;
        }
        assert!(round < 1000, "runaway simulation");
    }
    *t.iter().max().unwrap()
}

#[test]
fn closed_form_matches_simulation_on_full_grid() {
    let mut cases = 0;
    for l in 2..=20u32 {
        for a in 1..=25u32 {
            assert_eq!(
                cycle_completion_time(l, a, None).unwrap(),
                simulate_cycle(l as usize, a, None),
                "l = {l}, single call at {a}"
            );
            for b in a + 1..=25 {
                assert_eq!(
                    cycle_completion_time(l, a, Some(b)).unwrap(),
                    simulate_cycle(l as usize, a, Some(b)),
                    "l = {l}, calls at {a} and {b}"
                );
                cases += 1;
            }
        }
    }
    assert_eq!(cases, 19 * 300);
}

#[test]
fn second_call_must_come_later() {
    assert!(cycle_completion_time(5, 3, Some(3)).is_err());
    assert!(cycle_completion_time(5, 3, Some(2)).is_err());
}

#[test]
fn center_schedule_specialization() {
    // calls at i and k + i; with l >= k the second call is never wasted
    for k in 1..=8u32 {
        for i in 1..=k {
            for l in k.max(2)..=30 {
                assert_eq!(
                    cycle_completion_time(l, i, Some(k + i)).unwrap(),
                    (2 * i - 2 + k + l).div_ceil(2),
                    "k = {k}, i = {i}, l = {l}"
                );
            }
        }
    }
}

#[test]
fn specialization_breaks_one_below() {
    // at l = k - 1 the single front finishes at i + k - 2, before the
    // second call could help
    for k in 3..=8u32 {
        let l = k - 1;
        for i in 1..=k {
            assert_eq!(cycle_completion_time(l, i, Some(k + i)).unwrap(), i + k - 2);
            assert_eq!((2 * i - 2 + k + l).div_ceil(2), i + k - 1);
        }
    }
}
