mod common;

use common::{graph_from_mask, metrics_match};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn every_labelled_graph_up_to_six_vertices() {
    let mut checked = 0;
    for n in 0..=6usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0..(1u32 << pairs) {
            metrics_match(n, &graph_from_mask(n, mask)).unwrap();
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 1 + 2 + 8 + 64 + 1024 + 32768);
}

#[test]
fn random_larger_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6A);
    for _ in 0..300 {
        let n = rng.random_range(7..40);
        let p: f64 = rng.random_range(0.02..0.5);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        metrics_match(n, &edges).unwrap();
    }
}

#[test]
fn triangle_with_pendant_by_hand() {
    // vertices 0,1,2 form a triangle; 3 hangs off 2
    let edges = [(0, 1), (1, 2), (0, 2), (2, 3)];
    let m = fuzzy_wsn::network::EncounterGraph::from_edges(4, &edges).metrics();
    assert!((m.cc - 7.0 / 12.0).abs() < 1e-15);
    assert!((m.pl.unwrap() - 16.0 / 12.0).abs() < 1e-15);
    assert_eq!(m.dr, 0.0);
}
