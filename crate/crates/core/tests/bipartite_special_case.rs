//! The bipartite special case of the witness characterization, executed on
//! the full small census: a bipartite graph is non-Pfaffian exactly when it
//! has a K3,3 even-subdivision subgraph whose vertex complement is matchable.
//!
//! Bipartite graphs have no odd circuits, so the reduction search cannot take
//! a single step and the witness search degenerates to the direct
//! even-subdivision test. That makes this census sweep an end-to-end
//! cross-validation of the witness machinery against the Pfaffian decider.

use pfaffian_core::census::connected_factor_census;
use pfaffian_core::characterize::{find_witness, verify_witness, SearchBounds, TargetKind};
use pfaffian_core::graph::is_bipartite;
use pfaffian_core::pfaffian::is_pfaffian;

#[test]
fn bipartite_census_biconditional() {
    let bounds = SearchBounds::default();
    let mut bipartite = 0usize;
    let mut non_pfaffian = 0usize;
    for g in connected_factor_census(8) {
        if !is_bipartite(&g) {
            continue;
        }
        bipartite += 1;
        let pfaffian = is_pfaffian(&g).unwrap();
        let witness = find_witness(&g, &bounds).unwrap();
        assert_eq!(
            pfaffian,
            witness.is_none(),
            "biconditional failed on {:?}",
            g.edge_vec()
        );
        if let Some(w) = witness {
            non_pfaffian += 1;
            verify_witness(&g, &w).unwrap();
            // No odd circuits exist, so the witness is a direct subdivision.
            assert!(w.steps.is_empty());
            assert_eq!(w.certificate.target, TargetKind::K33);
        }
    }
    // The census contains plenty of bipartite graphs, and the non-Pfaffian
    // ones all contain K3,3 itself (a proper subdivision needs 8 vertices
    // plus a matchable complement, which does not fit in 8).
    assert!(bipartite > 50, "only {bipartite} bipartite graphs in the census");
    assert!(non_pfaffian > 0, "no non-Pfaffian bipartite graph found");
    println!("bipartite: {bipartite}, non-Pfaffian with witness: {non_pfaffian}");
}
