//! Brute-force Betti oracle shared by the integration tests.
//!
//! Deliberately shares nothing with the library: plain `Vec<usize>` edges,
//! faces listed by sorted vertex vectors, and rank computed by textbook
//! Gaussian elimination over `BigRational`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &p;
                for c in col..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets_of(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &x in items {
        let extended: Vec<Vec<usize>> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(extended);
    }
    for s in &mut out {
        s.sort();
    }
    out
}

/// Reduced homology dimensions of the complex of subsets of `ground` that
/// contain no edge, indexed by `k + 1` for degree `k >= -1`.
fn reduced_homology(ground: &[usize], edges: &[Vec<usize>]) -> Vec<usize> {
    let contains_edge = |face: &[usize]| edges.iter().any(|e| e.iter().all(|v| face.contains(v)));
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![vec![]; ground.len() + 1];
    for s in subsets_of(ground) {
        if !contains_edge(&s) {
            by_size[s.len()].push(s);
        }
    }
    // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
    let mut ranks = vec![0usize; ground.len() + 2];
    for s in 1..=ground.len() {
        if by_size[s].is_empty() || by_size[s - 1].is_empty() {
            continue;
        }
        let index: HashMap<&Vec<usize>, usize> =
            by_size[s - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut rows = vec![vec![BigRational::zero(); by_size[s].len()]; by_size[s - 1].len()];
        for (c, face) in by_size[s].iter().enumerate() {
            for pos in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(pos);
                let sign = if pos % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                rows[index[&sub]][c] = sign;
            }
        }
        ranks[s] = rank(rows);
    }
    (0..=ground.len())
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

/// Betti table of `R/I(H)` over the rationals, keyed by `(i, j)`.
pub fn betti(n: usize, edges: &[Vec<usize>]) -> BTreeMap<(usize, usize), usize> {
    let all: Vec<usize> = (0..n).collect();
    let mut table = BTreeMap::new();
    for w in subsets_of(&all) {
        let inside: Vec<Vec<usize>> = edges
            .iter()
            .filter(|e| e.iter().all(|v| w.contains(v)))
            .cloned()
            .collect();
        let j = w.len();
        for (idx, &dim) in reduced_homology(&w, &inside).iter().enumerate() {
            // idx = k + 1 and i = j - k - 1 = j - idx
            if dim > 0 && idx <= j {
                *table.entry((j - idx, j)).or_insert(0) += dim;
            }
        }
    }
    table
}
