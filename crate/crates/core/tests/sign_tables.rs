//! Sign machinery: published tables, base independence, the single-edge flip
//! rule, edge-order invariance against an independent parity oracle, and the
//! alternating-circuit parity lemma.

use std::collections::BTreeSet;

use pfaffian_core::fixtures::{builtin, verify_figure_tables, FixtureName};
use pfaffian_core::matching::{
    alternating_circuits, circuit_components, enumerate_one_factors, EnumBudget,
};
use pfaffian_core::orient::{clockwise_parity, factor_sign, sign_table};
use pfaffian_core::{Edge, OneFactor, Parity, Sign};

#[test]
fn figure_tables_reproduce() {
    let report = verify_figure_tables().unwrap();
    for item in &report.items {
        assert!(item.pass, "{}: {}", item.name, item.detail);
    }
}

#[test]
fn k33_printed_rows_in_table_order() {
    let fx = builtin(FixtureName::K33);
    let base = &fx.table[0].0;
    let printed: Vec<Sign> = fx.table.iter().map(|(_, s)| *s).collect();
    let computed: Vec<Sign> = fx
        .table
        .iter()
        .map(|(f, _)| factor_sign(&fx.graph, &fx.orientation, base, f).unwrap())
        .collect();
    assert_eq!(computed, printed);
    assert_eq!(
        printed,
        vec![Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus, Sign::Plus, Sign::Minus]
    );
}

#[test]
fn sec6_sign_statements() {
    let g1 = builtin(FixtureName::Gamma1Sec6);
    let base = &g1.table[0].0;
    for (i, (f, _)) in g1.table.iter().enumerate() {
        let s = factor_sign(&g1.graph, &g1.orientation, base, f).unwrap();
        assert_eq!(s, if i == 9 { Sign::Minus } else { Sign::Plus }, "gamma1_sec6 row {i}");
    }
    let g2 = builtin(FixtureName::Gamma2Sec6);
    let base = &g2.table[0].0;
    for (i, (f, _)) in g2.table.iter().enumerate() {
        let s = factor_sign(&g2.graph, &g2.orientation, base, f).unwrap();
        assert_eq!(s, if i == 0 { Sign::Plus } else { Sign::Minus }, "gamma2_sec6 row {i}");
    }
}

// Independent oracle: the sign computed from an arbitrarily ordered pair
// sequence by counting inversions of the induced permutation.
fn sign_from_sequence(base_seq: &[u32], other_seq: &[u32]) -> Sign {
    let pos: std::collections::BTreeMap<u32, usize> =
        base_seq.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let perm: Vec<usize> = other_seq.iter().map(|v| pos[v]).collect();
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

#[test]
fn sign_is_independent_of_edge_order() {
    let fx = builtin(FixtureName::Gamma1Sec6);
    let base = &fx.factors[0];
    let base_seq: Vec<u32> = base
        .edges()
        .iter()
        .flat_map(|&e| {
            let (u, v) = fx.orientation.directed(e).unwrap();
            [u, v]
        })
        .collect();
    // Rotate each factor's edge list several ways; the inversion-count oracle
    // must agree with the library sign every time.
    for f in &fx.factors {
        let expected = factor_sign(&fx.graph, &fx.orientation, base, f).unwrap();
        let edges = f.edges().to_vec();
        for rot in 0..edges.len() {
            let mut shuffled = edges.clone();
            shuffled.rotate_left(rot);
            if rot % 2 == 1 {
                shuffled.reverse();
            }
            let seq: Vec<u32> = shuffled
                .iter()
                .flat_map(|&e| {
                    let (u, v) = fx.orientation.directed(e).unwrap();
                    [u, v]
                })
                .collect();
            assert_eq!(sign_from_sequence(&base_seq, &seq), expected);
        }
    }
}

#[test]
fn sign_partition_is_base_independent() {
    for name in [FixtureName::K33, FixtureName::Gamma1Sec6, FixtureName::Gamma2Sec6] {
        let fx = builtin(name);
        let factors = enumerate_one_factors(&fx.graph);
        let reference_block: BTreeSet<OneFactor> = {
            let t = sign_table(&fx.graph, &fx.orientation).unwrap();
            t.rows
                .iter()
                .filter(|(_, s)| *s == Sign::Plus)
                .map(|(f, _)| f.clone())
                .collect()
        };
        for base in &factors {
            let block: BTreeSet<OneFactor> = factors
                .iter()
                .filter(|f| factor_sign(&fx.graph, &fx.orientation, base, f).unwrap() == Sign::Plus)
                .cloned()
                .collect();
            let complement: BTreeSet<OneFactor> =
                factors.iter().filter(|f| !block.contains(f)).cloned().collect();
            assert!(
                block == reference_block || complement == reference_block,
                "partition changed for base {:?}",
                base
            );
        }
    }
}

#[test]
fn single_edge_flip_negates_exactly_factors_containing_it() {
    for name in [FixtureName::K33, FixtureName::Gamma1, FixtureName::Gamma2Sec6] {
        let fx = builtin(name);
        let table = sign_table(&fx.graph, &fx.orientation).unwrap();
        let base_has = |e: Edge| table.base.contains(e);
        for e in fx.graph.edges() {
            let flipped = fx.orientation.with_edge_flipped(e).unwrap();
            let table2 = sign_table(&fx.graph, &flipped).unwrap();
            assert_eq!(table.base, table2.base);
            for ((f, s1), (f2, s2)) in table.rows.iter().zip(&table2.rows) {
                assert_eq!(f, f2);
                // Relative signs flip exactly when membership of `e` differs
                // between the row's factor and the base factor.
                let should_flip = f.contains(e) != base_has(e);
                assert_eq!(*s1 != *s2, should_flip, "edge {e}");
            }
        }
    }
}

#[test]
fn table_sets_stay_odd_odd_under_single_flips() {
    // Each edge lies in exactly two rows of the published six-row sets, so
    // flipping any one edge preserves the odd/odd sign split.
    for name in [FixtureName::K33, FixtureName::Gamma1, FixtureName::Gamma2] {
        let fx = builtin(name);
        let base = &fx.table[0].0;
        for e in fx.graph.edges() {
            let flipped = fx.orientation.with_edge_flipped(e).unwrap();
            let signs: Vec<Sign> = fx
                .table
                .iter()
                .map(|(f, _)| factor_sign(&fx.graph, &flipped, base, f).unwrap())
                .collect();
            let plus = signs.iter().filter(|s| **s == Sign::Plus).count();
            assert_eq!(plus % 2, 1, "{}: flip {e}", fx.name);
            assert_eq!((signs.len() - plus) % 2, 1, "{}: flip {e}", fx.name);
        }
    }
}

#[test]
fn parity_lemma_on_fixture_alternating_circuits() {
    // Two circuits alternating with the same factor have opposite clockwise
    // parity exactly when their sum decomposes into an odd number of
    // clockwise-even circuits.
    let budget = EnumBudget::default();
    for name in [FixtureName::K33, FixtureName::Gamma1, FixtureName::Gamma2Sec6] {
        let fx = builtin(name);
        let factors = enumerate_one_factors(&fx.graph);
        for f in factors.iter().take(3) {
            let acs = alternating_circuits(&fx.graph, f, &budget).unwrap();
            for i in 0..acs.len() {
                for j in (i + 1)..acs.len() {
                    let a = &acs[i].cycle;
                    let b = &acs[j].cycle;
                    let pa = clockwise_parity(a, &fx.orientation).unwrap();
                    let pb = clockwise_parity(b, &fx.orientation).unwrap();
                    let sum: BTreeSet<Edge> = a
                        .edges()
                        .iter()
                        .copied()
                        .collect::<BTreeSet<_>>()
                        .symmetric_difference(&b.edges().iter().copied().collect())
                        .copied()
                        .collect();
                    if sum.is_empty() {
                        assert_eq!(pa, pb);
                        continue;
                    }
                    let comps = circuit_components(&sum).unwrap();
                    let even_count = comps
                        .iter()
                        .filter(|c| {
                            clockwise_parity(c, &fx.orientation).unwrap() == Parity::Even
                        })
                        .count();
                    assert_eq!(pa != pb, even_count % 2 == 1);
                }
            }
        }
    }
}

#[test]
fn k33_first_difference_circuit_parity_consistent_with_table() {
    // Rows 1 and 2 have opposite printed signs; the parity lemma then forces
    // their difference circuit to be clockwise even.
    let fx = builtin(FixtureName::K33);
    let (f1, s1) = &fx.table[0];
    let (f2, s2) = &fx.table[1];
    assert_ne!(s1, s2);
    let comps = circuit_components(&f1.symmetric_difference(f2)).unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(clockwise_parity(&comps[0], &fx.orientation).unwrap(), Parity::Even);
}
