//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{LinearOrder, SymMatrix};
use crate::uig::Graph;
use crate::{Error, Result};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Result<SymMatrix> {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = f(i, j);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    SymMatrix::from_integer_rows(&rows)
}

/// A Robinson matrix under a hidden random ordering, labelled `0..n`.
///
/// Entries are filled by increasing distance from the diagonal, each at
/// most its two inner neighbours, then the rows and columns are shuffled.
pub fn robinson(n: usize, seed: u64) -> Result<SymMatrix> {
    if n == 0 {
        return Err(Error::Value("n must be at least 1".into()));
    }
    let mut r = rng(seed);
    let mut m = vec![vec![0i64; n]; n];
    for d in 1..n {
        for i in 0..n - d {
            let j = i + d;
            m[i][j] = if d == 1 {
                r.random_range(n as i64..2 * n as i64)
            } else {
                m[i][j - 1].min(m[i + 1][j]) - r.random_range(0..3)
            };
            m[j][i] = m[i][j];
        }
    }
    let base = SymMatrix::from_integer_rows(&m)?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut r);
    base.permute(&LinearOrder::new(perm))?.relabel((0..n).collect())
}

/// [`robinson`] followed by `swaps` exchanges of two random off-diagonal
/// entries.
pub fn perturbed(n: usize, swaps: usize, seed: u64) -> Result<SymMatrix> {
    let base = robinson(n, seed)?;
    if n < 3 {
        return Ok(base);
    }
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut rows = base.to_rows();
    for _ in 0..swaps {
        let pair = |r: &mut ChaCha8Rng| {
            let i = r.random_range(0..n);
            let j = (i + r.random_range(1..n)) % n;
            (i, j)
        };
        let ((a, b), (c, d)) = (pair(&mut r), pair(&mut r));
        let t = rows[a][b].clone();
        rows[a][b] = rows[c][d].clone();
        rows[b][a] = rows[a][b].clone();
        rows[c][d] = t;
        rows[d][c] = rows[c][d].clone();
    }
    SymMatrix::from_rows(rows)
}

/// Independent entries drawn uniformly from `0..=max`.
pub fn random(n: usize, max: i64, seed: u64) -> Result<SymMatrix> {
    if n == 0 {
        return Err(Error::Value("n must be at least 1".into()));
    }
    let mut r = rng(seed);
    from_upper(n, |_, _| r.random_range(0..=max))
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                g.add_edge(u, v).expect("fresh edge");
            }
        }
    }
    g
}

/// Named families: `path`, `cycle`, `complete`, `claw` (a star with
/// `n - 1` leaves) and `net` (always six vertices).
pub fn named_graph(name: &str, n: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = match name {
        "path" => (1..n).map(|i| (i - 1, i)).collect(),
        "cycle" if n >= 3 => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        "complete" => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        "claw" if n >= 4 => (1..n).map(|i| (0, i)).collect(),
        "net" => return Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]),
        "cycle" | "claw" => {
            return Err(Error::Value(format!("{name} needs more vertices than {n}")));
        }
        other => return Err(Error::Value(format!("unknown graph family {other:?}"))),
    };
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robinson_is_deterministic_and_robinsonian() {
        let a = robinson(8, 3).unwrap();
        assert_eq!(a, robinson(8, 3).unwrap());
        assert_ne!(a, robinson(8, 4).unwrap());
        assert!(crate::certify(&a).unwrap().is_robinsonian());
    }

    #[test]
    fn shapes() {
        assert_eq!(random(5, 3, 1).unwrap().n(), 5);
        assert_eq!(perturbed(6, 2, 1).unwrap().n(), 6);
        assert!(robinson(0, 1).is_err());
        assert_eq!(named_graph("net", 0).unwrap().n(), 6);
        assert_eq!(named_graph("claw", 5).unwrap().edge_count(), 4);
        assert!(named_graph("cycle", 2).is_err());
        assert!(named_graph("hexagon", 6).is_err());
        assert_eq!(random_graph(5, 1.0, 0).edge_count(), 10);
    }
}
