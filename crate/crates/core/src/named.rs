//! Named families of hypergraphs used in examples and tests.

use itertools::Itertools;

use crate::hypergraph::Hypergraph;

fn build(labels: Vec<String>, edges: Vec<Vec<usize>>) -> Hypergraph {
    Hypergraph::build(labels, edges).expect("named hypergraphs are simple")
}

fn xs(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Path on `x1, .., xn` with edges `x_k x_{k+1}` in order.
pub fn path(n: usize) -> Hypergraph {
    build(xs(n), (1..n).map(|k| vec![k - 1, k]).collect())
}

/// Cycle on `x1, .., xn`, `n >= 3`.
pub fn cycle(n: usize) -> Hypergraph {
    assert!(n >= 3);
    build(xs(n), (0..n).map(|k| vec![k, (k + 1) % n]).collect())
}

/// Fan on `z, x1, .., xn`: the hub edges `z x_k` first, then the rim
/// `x_k x_{k+1}`.
pub fn fan(n: usize) -> Hypergraph {
    let mut labels = vec!["z".to_string()];
    labels.extend(xs(n));
    let hub = (1..=n).map(|k| vec![0, k]);
    let rim = (1..n).map(|k| vec![k, k + 1]);
    build(labels, hub.chain(rim).collect())
}

/// All `d`-subsets of an `n`-set, in lexicographic order.
pub fn complete_uniform(d: usize, n: usize) -> Hypergraph {
    build(xs(n), (0..n).combinations(d).collect())
}

pub fn complete_graph(n: usize) -> Hypergraph {
    complete_uniform(2, n)
}

/// Star hypergraph on `z1, .., z_{d-1}, x1, .., xn` with edges
/// `{z1, .., z_{d-1}, x_k}`.
pub fn star_hypergraph(d: usize, n: usize) -> Hypergraph {
    assert!(d >= 2);
    let mut labels: Vec<String> = (1..d).map(|i| format!("z{i}")).collect();
    labels.extend(xs(n));
    let core: Vec<usize> = (0..d - 1).collect();
    build(
        labels,
        (0..n)
            .map(|k| {
                let mut e = core.clone();
                e.push(d - 1 + k);
                e
            })
            .collect(),
    )
}

/// `count` vertex-disjoint star graphs, each with `leaves` edges.
pub fn disjoint_stars(count: usize, leaves: usize) -> Hypergraph {
    let size = leaves + 1;
    let labels = (0..count)
        .flat_map(|s| {
            std::iter::once(format!("c{}", s + 1)).chain((1..=leaves).map(move |l| format!("l{}_{l}", s + 1)))
        })
        .collect();
    let edges = (0..count)
        .flat_map(|s| (1..=leaves).map(move |l| vec![s * size, s * size + l]))
        .collect();
    build(labels, edges)
}

/// `x1x2x3, x2x3x4, x2x5x6`: a self semi-disjoint edge set that is not self
/// disjoint.
pub fn semi_disjoint_example() -> Hypergraph {
    build(xs(6), vec![vec![0, 1, 2], vec![1, 2, 3], vec![1, 4, 5]])
}
