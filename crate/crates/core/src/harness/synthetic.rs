//! Seeded preferential-attachment graphs.

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::Topology;

/// Undirected Barabási–Albert graph stored as symmetric unit-weight arcs.
///
/// Starts from a clique on `attach + 1` nodes; every later node links to
/// `attach` distinct earlier nodes chosen with probability proportional to
/// their degree. The same `seed` always yields the same graph.
pub fn barabasi_albert(n: usize, attach: usize, seed: u64) -> Result<Topology> {
    if attach == 0 || n <= attach {
        return Err(Error::InvalidArgument(format!(
            "preferential attachment needs 0 < attach < n, got attach {attach}, n {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n * attach);
    // each endpoint appears once per incident edge
    let mut ends: Vec<usize> = Vec::with_capacity(2 * n * attach);
    for a in 0..=attach {
        for b in (a + 1)..=attach {
            edges.push((a, b));
            ends.extend([a, b]);
        }
    }
    let mut targets = Vec::with_capacity(attach);
    for v in (attach + 1)..n {
        targets.clear();
        while targets.len() < attach {
            let &t = ends.choose(&mut rng).expect("seed clique is non-empty");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((v, t));
            ends.extend([v, t]);
        }
    }
    let arcs = edges
        .iter()
        .flat_map(|&(a, b)| [(a, b, 1.0), (b, a, 1.0)])
        .collect();
    Topology::new(n, arcs)
}
