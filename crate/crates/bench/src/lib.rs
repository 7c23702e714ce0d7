//! Fixtures shared by the benchmarks.

use etsearch::oracle::{random_graph, GenSpec};
use etsearch::TannerGraph;

/// A girth-6 irregular graph with `n` variables of degrees 2 to 4.
pub fn irregular(n: usize, seed: u64) -> TannerGraph {
    let var_degrees: Vec<usize> = (0..n).map(|v| [2, 3, 3, 4][v % 4]).collect();
    let edges: usize = var_degrees.iter().sum();
    random_graph(&GenSpec {
        var_degrees,
        m: edges.div_ceil(5),
        max_check_degree: 7,
        girth_min: 6,
        seed,
    })
    .expect("benchmark fixture realizes")
}

/// A girth-6 graph with every variable of degree 3 and checks of degree at
/// most 6.
pub fn regular3(n: usize, seed: u64) -> TannerGraph {
    random_graph(&GenSpec {
        var_degrees: vec![3; n],
        m: (3 * n).div_ceil(5),
        max_check_degree: 6,
        girth_min: 6,
        seed,
    })
    .expect("benchmark fixture realizes")
}
