//! Cross-engine and certificate-coupling checks: the certificates, the
//! search, the constructive solver, and the counting machinery must never
//! disagree on any tested instance.

use kary_core::solver::{SolveOptions, SolveOutcome};
use kary_core::*;

fn solve_no_precheck(t: &Tournament, k: usize) -> SolveOutcome {
    find_kary_spanning_tree_with(
        t,
        k,
        SolveOptions {
            budget: None,
            obstruction_precheck: false,
        },
    )
    .outcome
}

/// Every obstruction witness and every triggered domination bound must
/// coincide with a ProvenNone from the raw search, over all labeled
/// tournaments up to order 5 and seeded samples up to order 9.
#[test]
fn certificates_imply_proven_none() {
    let mut witnesses = 0;
    let mut bound_hits = 0;
    let mut check = |t: &Tournament| {
        for k in 1..=5usize {
            let obstructed = obstruction_check(t, k).is_some();
            let mu = domination_number(t).mu;
            let bound = domination_bound_check(t, k, mu);
            if obstructed || bound {
                let outcome = solve_no_precheck(t, k);
                assert!(
                    matches!(outcome, SolveOutcome::ProvenNone),
                    "certificate fired but search found a tree: n={} k={k}",
                    t.order()
                );
                witnesses += usize::from(obstructed);
                bound_hits += usize::from(bound);
            }
        }
    };
    for n in 3..=5usize {
        for mask in 0..(1u64 << (n * (n - 1) / 2)) {
            check(&Tournament::from_pair_bits(n, mask));
        }
    }
    for n in 6..=9usize {
        for seed in 0..200u64 {
            check(&Tournament::random(n, SeedSpec::new(seed, n as u64)));
        }
    }
    check(&catalog::t9());
    check(&catalog::t12());
    check(&catalog::paley7());
    assert!(witnesses > 0, "corpus must exercise the obstruction");
    assert!(bound_hits > 0, "corpus must exercise the counting bound");
}

/// Sampled evidence must never contradict the order-reduction lemma for
/// k=4, m=3: a 12-tournament counterexample alongside all-solvable
/// 13-tournaments would do so. (All samples are in fact solvable.)
#[test]
fn km_reduction_consistency_probe() {
    let mut missing_12 = 0usize;
    let mut all_13_found = true;
    for seed in 0..300u64 {
        let t12 = Tournament::random(12, SeedSpec::new(seed, 12));
        if find_kary_spanning_tree(&t12, 4, None).proven_none() {
            missing_12 += 1;
        }
        let t13 = Tournament::random(13, SeedSpec::new(seed, 13));
        if find_kary_spanning_tree(&t13, 4, None).found().is_none() {
            all_13_found = false;
        }
    }
    assert!(
        !(missing_12 > 0 && all_13_found),
        "sampled evidence contradicts the km reduction"
    );
    assert_eq!(missing_12, 0);
    assert!(all_13_found);
}

/// The constructive solver succeeds exactly where the exact solver
/// reports Found, across seeded base-range instances.
#[test]
fn cross_engine_agreement_on_base_orders() {
    for n in 10..=13usize {
        for seed in 0..250u64 {
            let t = Tournament::random(n, SeedSpec::new(seed, 40 + n as u64));
            let exact = find_kary_spanning_tree(&t, 4, None);
            let constructive = solve_k4_constructive(&t);
            match (&exact.outcome, &constructive) {
                (SolveOutcome::Found(_), Ok((tree, _))) => {
                    assert!(validate_kary_spanning(tree, &t, 4).unwrap().valid);
                }
                (a, b) => panic!("engines disagree at n={n} seed={seed}: {a:?} vs {}", b.is_ok()),
            }
        }
    }
}

/// A 1-ary spanning tree always exists: the dedicated path builder always
/// validates and the general solver never proves absence.
#[test]
fn redei_smoke() {
    for seed in 0..50u64 {
        let n = 1 + (seed as usize * 17) % 300;
        let t = Tournament::random(n, SeedSpec::new(seed, 60));
        let path = hamiltonian_path(&t);
        assert!(validate_kary_spanning(&path, &t, 1).unwrap().valid);
    }
    for seed in 0..200u64 {
        let t = Tournament::random(8, SeedSpec::new(seed, 61));
        assert!(find_kary_spanning_tree(&t, 1, None).found().is_some());
    }
}

/// Whenever a tree is found, the internal vertices dominate, so
/// ceil((n-1)/k) >= mu(T).
#[test]
fn counting_inequality_holds_where_trees_exist() {
    for seed in 0..150u64 {
        let n = 5 + (seed as usize % 8);
        let t = Tournament::random(n, SeedSpec::new(seed, 62));
        let mu = domination_number(&t).mu;
        for k in 1..=5usize {
            if find_kary_spanning_tree(&t, k, None).found().is_some() {
                assert!(
                    (n - 1).div_ceil(k) >= mu,
                    "n={n} k={k} mu={mu} violates the counting inequality"
                );
            }
        }
    }
}

/// The n=7, k=3 counterexamples found by exhaustive probing are real:
/// the oracle agrees on the probe's first hit.
#[test]
fn probe_hit_agrees_with_oracle() {
    let hit = probe_counterexample(7, 3, ProbeMode::Exhaustive { allow_large: false }, 1)
        .unwrap()
        .expect("an extremal 7-tournament exists");
    assert!(!brute_force_oracle(&hit, 3).unwrap());
    assert!(find_kary_spanning_tree(&hit, 3, None).proven_none());
}
