//! Factor enumeration against the published fixture tables, 1-extendibility,
//! alternating/central circuit cross-checks, and ear decompositions.

use std::collections::BTreeSet;

use pfaffian_core::fixtures::{builtin, verify_fixture_consistency, FixtureName};
use pfaffian_core::graph::Graph;
use pfaffian_core::matching::{
    alternating_circuits, central_circuits, ear_decomposition, ear_decomposition_restricted,
    enumerate_one_factors, is_one_extendible, uncovered_edge, EnumBudget, OneFactor,
    DEFAULT_EAR_BUDGET,
};
use pfaffian_core::Edge;

#[test]
fn fixture_factor_counts() {
    assert_eq!(enumerate_one_factors(&builtin(FixtureName::K33).graph).len(), 6);
    assert_eq!(enumerate_one_factors(&builtin(FixtureName::Gamma1).graph).len(), 10);
    assert_eq!(enumerate_one_factors(&builtin(FixtureName::Gamma2).graph).len(), 10);
}

#[test]
fn fixture_factor_lists_match_published_sets() {
    let report = verify_fixture_consistency().unwrap();
    for item in &report.items {
        assert!(item.pass, "{}: {}", item.name, item.detail);
    }
}

#[test]
fn gamma2_minus_certificate_pair_is_one_extendible() {
    let g = builtin(FixtureName::Gamma2).graph;
    // (f,e) and (i,j) in fixture labels.
    let h = g.without_edges([&Edge::new(4, 5), &Edge::new(8, 9)]).unwrap();
    assert!(is_one_extendible(&h));
    assert!(pfaffian_core::graph::is_bipartite(&h));
}

#[test]
fn path_of_three_edges_reports_middle_edge() {
    let p = Graph::from_edges([(0, 1), (1, 2), (2, 3)]);
    assert_eq!(uncovered_edge(&p), Some(Edge::new(1, 2)));
}

#[test]
fn k33_first_two_factors_differ_by_a_four_circuit() {
    // Rows 1 and 2 of the published table: (a,b)(c,d)(e,f) and
    // (a,b)(c,f)(e,d). Their symmetric difference is the 4-circuit on
    // c, d, e, f.
    let fx = builtin(FixtureName::K33);
    let f1 = &fx.table[0].0;
    let f2 = &fx.table[1].0;
    let diff = f1.symmetric_difference(f2);
    let expected: BTreeSet<Edge> = [
        Edge::new(2, 3),
        Edge::new(3, 4),
        Edge::new(4, 5),
        Edge::new(2, 5),
    ]
    .into_iter()
    .collect();
    assert_eq!(diff, expected);
    let acs = alternating_circuits(&fx.graph, f1, &EnumBudget::default()).unwrap();
    assert!(acs.iter().any(|ac| ac.cycle.edges().iter().copied().collect::<BTreeSet<_>>() == expected));
}

#[test]
fn single_even_circuit_is_its_own_alternating_circuit() {
    let c8 = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)]);
    let f = enumerate_one_factors(&c8)[0].clone();
    let acs = alternating_circuits(&c8, &f, &EnumBudget::default()).unwrap();
    assert_eq!(acs.len(), 1);
    assert_eq!(acs[0].cycle.len(), 8);
}

#[test]
fn gamma1_alternating_circuits_nonempty_and_self_checked() {
    // The dual-route agreement runs inside the call; a disagreement would be
    // an internal error.
    let fx = builtin(FixtureName::Gamma1);
    let f1 = &fx.factors[0];
    let acs = alternating_circuits(&fx.graph, f1, &EnumBudget::default()).unwrap();
    assert!(!acs.is_empty());
    for ac in &acs {
        assert!(ac.cycle.is_even());
        let f2 = ac.factor.plus_cycle(&ac.cycle);
        f2.validate(&fx.graph).unwrap();
        assert_eq!(f2.plus_cycle(&ac.cycle), *f1);
    }
}

#[test]
fn factor_pair_differences_decompose_into_disjoint_alternating_circuits() {
    for name in [FixtureName::K33, FixtureName::Gamma1, FixtureName::Gamma2] {
        let fx = builtin(name);
        let factors = enumerate_one_factors(&fx.graph);
        for i in 0..factors.len() {
            for j in (i + 1)..factors.len() {
                let diff = factors[i].symmetric_difference(&factors[j]);
                let comps = pfaffian_core::matching::circuit_components(&diff).unwrap();
                // Vertex-disjointness and alternation with respect to both.
                let mut seen: BTreeSet<u32> = BTreeSet::new();
                for c in &comps {
                    assert!(c.is_even());
                    for v in c.vertices() {
                        assert!(seen.insert(v));
                    }
                    assert!(pfaffian_core::matching::is_alternating(c, &factors[i]));
                    assert!(pfaffian_core::matching::is_alternating(c, &factors[j]));
                }
            }
        }
    }
}

#[test]
fn central_circuits_equal_union_of_alternating_circuits() {
    let mut hosts: Vec<Graph> = vec![
        builtin(FixtureName::K33).graph,
        builtin(FixtureName::Gamma1).graph,
        builtin(FixtureName::Gamma2).graph,
    ];
    hosts.extend(pfaffian_core::census::connected_factor_census(6));
    let budget = EnumBudget::default();
    for g in hosts {
        let central: BTreeSet<Vec<Edge>> = central_circuits(&g, &budget)
            .unwrap()
            .into_iter()
            .map(|c| c.edges().to_vec())
            .collect();
        let mut union: BTreeSet<Vec<Edge>> = BTreeSet::new();
        for f in enumerate_one_factors(&g) {
            for ac in alternating_circuits(&g, &f, &budget).unwrap() {
                union.insert(ac.cycle.edges().to_vec());
            }
        }
        assert_eq!(central, union, "mismatch on {:?}", g.edge_vec());
    }
}

#[test]
fn matchless_graph_has_no_central_circuits() {
    let g = Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)]);
    assert!(central_circuits(&g, &EnumBudget::default()).unwrap().is_empty());
}

#[test]
fn k33_has_single_ear_decomposition() {
    let fx = builtin(FixtureName::K33);
    let f = enumerate_one_factors(&fx.graph)[0].clone();
    let seq = ear_decomposition_restricted(&fx.graph, &f, DEFAULT_EAR_BUDGET, 1)
        .unwrap()
        .expect("bipartite hosts need only single-ear adjunctions");
    check_ear_sequence(&fx.graph, &f, &seq);
}

#[test]
fn gamma1_has_ear_decomposition() {
    let fx = builtin(FixtureName::Gamma1);
    let f = enumerate_one_factors(&fx.graph)[0].clone();
    let seq = ear_decomposition(&fx.graph, &f, DEFAULT_EAR_BUDGET).unwrap().unwrap();
    check_ear_sequence(&fx.graph, &f, &seq);
}

fn check_ear_sequence(g: &Graph, f: &OneFactor, seq: &[Graph]) {
    assert!(!seq.is_empty());
    assert_eq!(seq[0].edge_count(), 1);
    assert_eq!(seq.last().unwrap(), g);
    for step in seq {
        assert!(is_one_extendible(step), "intermediate subgraph not 1-extendible");
        let f_in = OneFactor::new(step.edges().filter(|e| f.contains(*e)));
        f_in.validate(step).expect("factor restriction is a 1-factor of the step");
    }
    for w in seq.windows(2) {
        let prev: BTreeSet<Edge> = w[0].edges().collect();
        let next: BTreeSet<Edge> = w[1].edges().collect();
        assert!(prev.is_subset(&next) && prev.len() < next.len());
    }
}
