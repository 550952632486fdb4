//! Near-bipartite certificates on the fixtures, reference-orientation
//! structure, directed reachability, the factor-change reorientation rule,
//! and opposite-parity circuit pairs.

use std::collections::BTreeSet;

use pfaffian_core::fixtures::{builtin, FixtureName};
use pfaffian_core::graph::{bipartition, Graph};
use pfaffian_core::matching::{
    alternating_circuits, enumerate_circuits, enumerate_one_factors, EnumBudget,
};
use pfaffian_core::nearbip::{
    extend_orientation, find_near_bipartite_pairs, find_opposite_parity_pair, is_near_bipartite,
    reference_orientation,
};
use pfaffian_core::orient::clockwise_parity;
use pfaffian_core::pfaffian::find_pfaffian_orientation;
use pfaffian_core::{Edge, Orientation};

#[test]
fn gamma_fixture_certificate_pairs_are_the_published_ones() {
    // gamma1: {(f,l),(i,c)}; gamma2: {(f,e),(i,j)} — and no other pair works.
    let g1 = builtin(FixtureName::Gamma1).graph;
    let pairs1 = find_near_bipartite_pairs(&g1).unwrap();
    assert_eq!(pairs1.len(), 1);
    assert_eq!(
        (pairs1[0].e1, pairs1[0].e2),
        (Edge::new(2, 8), Edge::new(5, 11)),
    );
    pairs1[0].validate(&g1).unwrap();

    let g2 = builtin(FixtureName::Gamma2).graph;
    let pairs2 = find_near_bipartite_pairs(&g2).unwrap();
    assert_eq!(pairs2.len(), 1);
    assert_eq!(
        (pairs2[0].e1, pairs2[0].e2),
        (Edge::new(4, 5), Edge::new(8, 9)),
    );
}

#[test]
fn k33_has_no_certificates() {
    assert!(!is_near_bipartite(&builtin(FixtureName::K33).graph).unwrap());
}

#[test]
fn single_deletions_of_certificate_edges_stay_non_bipartite() {
    for name in [FixtureName::Gamma1, FixtureName::Gamma2] {
        let g = builtin(name).graph;
        for cert in find_near_bipartite_pairs(&g).unwrap() {
            for e in [cert.e1, cert.e2] {
                assert!(!pfaffian_core::nearbip::single_deletion_bipartite(&g, e).unwrap());
            }
        }
    }
}

fn directed_circuit_edge_sets(g: &Graph, o: &Orientation) -> BTreeSet<Vec<Edge>> {
    let mut out = BTreeSet::new();
    for c in enumerate_circuits(g, &EnumBudget::default()).unwrap() {
        let sense = c.sense_or_canonical();
        let k = sense.len();
        let forwards = (0..k).all(|i| {
            o.directed(Edge::new(sense[i], sense[(i + 1) % k])).unwrap() == (sense[i], sense[(i + 1) % k])
        });
        let backwards = (0..k).all(|i| {
            o.directed(Edge::new(sense[i], sense[(i + 1) % k])).unwrap()
                == (sense[(i + 1) % k], sense[i])
        });
        if forwards || backwards {
            out.insert(c.edges().to_vec());
        }
    }
    out
}

#[test]
fn reference_orientation_circuits_are_the_alternating_circuits() {
    let hosts: Vec<Graph> = vec![
        builtin(FixtureName::K33).graph,
        Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]),
        builtin(FixtureName::Gamma1)
            .graph
            .without_edges([&Edge::new(2, 8), &Edge::new(5, 11)])
            .unwrap(),
    ];
    for h in hosts {
        let b = bipartition(&h).unwrap();
        for f in enumerate_one_factors(&h).iter().take(3) {
            let o = reference_orientation(&h, &b, f).unwrap();
            for v in h.vertices() {
                assert!(o.indegree(v) == 1 || o.outdegree(v) == 1);
            }
            let directed = directed_circuit_edge_sets(&h, &o);
            let alternating: BTreeSet<Vec<Edge>> =
                alternating_circuits(&h, f, &EnumBudget::default())
                    .unwrap()
                    .into_iter()
                    .map(|ac| ac.cycle.edges().to_vec())
                    .collect();
            assert_eq!(directed, alternating);
        }
    }
}

#[test]
fn directed_paths_are_the_alternating_paths_on_k33() {
    // Every simple directed path corresponds to an alternating path: each
    // internal vertex is covered by a factor edge of the path.
    let h = builtin(FixtureName::K33).graph;
    let b = bipartition(&h).unwrap();
    let f = enumerate_one_factors(&h)[0].clone();
    let o = reference_orientation(&h, &b, &f).unwrap();

    // Enumerate all simple paths by DFS.
    fn extend(
        h: &Graph,
        path: &mut Vec<u32>,
        all: &mut Vec<Vec<u32>>,
    ) {
        let last = *path.last().unwrap();
        let nbrs: Vec<u32> = h.neighbors(last).unwrap().collect();
        for w in nbrs {
            if path.contains(&w) {
                continue;
            }
            path.push(w);
            all.push(path.clone());
            extend(h, path, all);
            path.pop();
        }
    }
    let mut all_paths = Vec::new();
    for v in h.vertices() {
        let mut path = vec![v];
        extend(&h, &mut path, &mut all_paths);
    }

    let mut checked = 0;
    for p in all_paths {
        let directed = p
            .windows(2)
            .all(|w| o.directed(Edge::new(w[0], w[1])).unwrap() == (w[0], w[1]));
        let alternating = p[1..p.len() - 1].iter().all(|&v| {
            p.windows(2).any(|w| {
                let e = Edge::new(w[0], w[1]);
                e.touches(v) && f.contains(e)
            })
        });
        if directed {
            assert!(alternating, "directed path {:?} is not alternating", p);
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn all_pairs_reachable_in_reference_orientation() {
    // Directed reachability between every ordered vertex pair, on bipartite
    // 1-extendible hosts.
    let hosts: Vec<Graph> = vec![
        builtin(FixtureName::K33).graph,
        Graph::from_edges([(0, 1), (1, 2), (2, 3), (3, 0)]),
        builtin(FixtureName::Gamma1)
            .graph
            .without_edges([&Edge::new(2, 8), &Edge::new(5, 11)])
            .unwrap(),
        builtin(FixtureName::Gamma2)
            .graph
            .without_edges([&Edge::new(4, 5), &Edge::new(8, 9)])
            .unwrap(),
    ];
    for h in hosts {
        let b = bipartition(&h).unwrap();
        let f = enumerate_one_factors(&h)[0].clone();
        let o = reference_orientation(&h, &b, &f).unwrap();
        let verts: Vec<u32> = h.vertices().collect();
        for &from in &verts {
            let mut seen = BTreeSet::from([from]);
            let mut stack = vec![from];
            while let Some(u) = stack.pop() {
                for w in h.neighbors(u).unwrap() {
                    if o.directed(Edge::new(u, w)).unwrap().0 == u && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            assert_eq!(seen.len(), verts.len(), "vertex {from} does not reach everything");
        }
    }
}

#[test]
fn factor_change_reverses_exactly_the_difference_circuits() {
    let hosts: Vec<Graph> = vec![
        builtin(FixtureName::K33).graph,
        builtin(FixtureName::Gamma1)
            .graph
            .without_edges([&Edge::new(2, 8), &Edge::new(5, 11)])
            .unwrap(),
    ];
    for h in hosts {
        let b = bipartition(&h).unwrap();
        let factors = enumerate_one_factors(&h);
        for f1 in &factors {
            for f2 in &factors {
                let o1 = reference_orientation(&h, &b, f1).unwrap();
                let o2 = reference_orientation(&h, &b, f2).unwrap();
                let diff = f1.symmetric_difference(f2);
                for e in h.edges() {
                    let changed = o1.directed(e).unwrap() != o2.directed(e).unwrap();
                    assert_eq!(changed, diff.contains(&e));
                }
            }
        }
    }
}

#[test]
fn gamma1_opposite_parity_pair_exists() {
    let g = builtin(FixtureName::Gamma1).graph;
    let cert = find_near_bipartite_pairs(&g).unwrap().into_iter().next().unwrap();
    let h = g.without_edges([&cert.e1, &cert.e2]).unwrap();
    let oh = find_pfaffian_orientation(&h).unwrap().expect("remainder is Pfaffian");
    let o = extend_orientation(&g, &oh, cert.e1, cert.e2).unwrap();
    let (a, b) = find_opposite_parity_pair(&g, &cert, &o, &EnumBudget::default())
        .unwrap()
        .expect("gamma1 is non-Pfaffian, so an opposite-parity pair exists");
    for ac in [&a, &b] {
        assert!(ac.cycle.contains(cert.e1));
        assert!(ac.cycle.contains(cert.e2));
    }
    let pa = clockwise_parity(&a.cycle, &o).unwrap();
    let pb = clockwise_parity(&b.cycle, &o).unwrap();
    assert_ne!(pa, pb);
}

#[test]
fn pfaffian_near_bipartite_graph_has_no_opposite_parity_pair() {
    // Search the small census for a Pfaffian near-bipartite graph.
    let mut found = 0;
    for g in pfaffian_core::census::connected_factor_census(8) {
        if g.vertex_count() < 6 {
            continue;
        }
        let certs = find_near_bipartite_pairs(&g).unwrap();
        if certs.is_empty() {
            continue;
        }
        if !pfaffian_core::pfaffian::is_pfaffian(&g).unwrap() {
            continue;
        }
        let cert = &certs[0];
        let h = g.without_edges([&cert.e1, &cert.e2]).unwrap();
        let oh = find_pfaffian_orientation(&h).unwrap().unwrap();
        let o = extend_orientation(&g, &oh, cert.e1, cert.e2).unwrap();
        let pair = find_opposite_parity_pair(&g, cert, &o, &EnumBudget::default()).unwrap();
        assert!(pair.is_none(), "Pfaffian graph {:?} yielded a pair", g.edge_vec());
        found += 1;
        if found >= 5 {
            break;
        }
    }
    assert!(found > 0, "census contains no Pfaffian near-bipartite graph");
}

#[test]
fn wrong_restriction_is_a_precondition_error() {
    let g = builtin(FixtureName::Gamma1).graph;
    let cert = find_near_bipartite_pairs(&g).unwrap().into_iter().next().unwrap();
    // The reference low-to-high orientation of gamma1 restricted to the
    // remainder happens to be non-Pfaffian; if so the call must refuse.
    let o = Orientation::low_to_high(&g);
    let h = g.without_edges([&cert.e1, &cert.e2]).unwrap();
    let oh = o.restricted_to(&h).unwrap();
    if !pfaffian_core::pfaffian::is_pfaffian_orientation(&h, &oh).unwrap() {
        assert!(matches!(
            find_opposite_parity_pair(&g, &cert, &o, &EnumBudget::default()),
            Err(pfaffian_core::Error::PreconditionViolated(_))
        ));
    }
}
