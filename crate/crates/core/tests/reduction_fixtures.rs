//! Reduction soundness at desk scale: the determination answer on every
//! generated profile equals the source-problem oracle.

mod common;

use common::*;
use seqrank::reductions::*;

#[test]
fn there_are_two_cubic_graphs_on_six_vertices() {
    assert_eq!(cubic_graphs(4).len(), 1);
    assert_eq!(cubic_graphs(6).len(), 2);
}

#[test]
fn stv_vertex_cover_matches_oracle() {
    stv_vc_fixtures().assert_clean();
}

#[test]
fn baldwin_vertex_cover_matches_oracle() {
    baldwin_fixtures().assert_clean();
}

#[test]
fn stv_sat_matches_oracle() {
    let (t, yes, no) = stv_sat_fixtures();
    t.assert_clean();
    assert!(yes > 0 && no > 0);
}

#[test]
fn coombs_clique_matches_oracle() {
    coombs_clique_fixtures().assert_clean();
}

#[test]
fn hitting_set_matches_oracle() {
    let t = hitting_set_fixtures();
    t.assert_clean();
    assert!(t.checked > 1000);
}

#[test]
fn generated_profiles_are_well_formed() {
    let k4 = GraphInstance::complete(4);
    let profiles = [
        stv_from_cubic_vc(&k4, 2).unwrap().profile,
        baldwin8_from_cubic_vc(&k4, 2).unwrap().profile,
        coombs_from_regular_clique(&k4, 4).unwrap().profile,
    ];
    for p in profiles {
        assert!(p.groups().iter().all(|(c, r)| *c > 0 && r.len() == p.num_candidates()));
        assert_eq!(p.names().map(|n| n.len()), Some(p.num_candidates()));
    }
}
