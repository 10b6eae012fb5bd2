//! All weighted asteroidal triples in cubic time.
//!
//! For every pivot `v` the components of `H_v` are computed once. A triple
//! `{x, y, z}` then scores one point for each of its members whose avoidance
//! graph holds the other two in one component; the triples scoring three
//! are exactly the weighted asteroidal triples.

use rayon::prelude::*;

use crate::avoidance::components_at;
use crate::certificates::{make_wat_at, WeightedAsteroidalTriple};
use crate::matrix::SymMatrix;
use crate::Label;

/// The score `f` of every unordered triple of positions, stored flat.
#[derive(Clone, Debug)]
pub struct TripleCounter {
    n: usize,
    f: Vec<u8>,
}

fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

fn choose3(m: usize) -> usize {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

/// Flat index of the positions `i < j < k`.
#[inline]
fn index(i: usize, j: usize, k: usize) -> usize {
    choose3(k) + choose2(j) + i
}

impl TripleCounter {
    fn zeroed(n: usize) -> Self {
        TripleCounter {
            n,
            f: vec![0; choose3(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Score of three distinct positions, in any order.
    pub fn get(&self, x: usize, y: usize, z: usize) -> u8 {
        let mut t = [x, y, z];
        t.sort_unstable();
        assert!(t[0] < t[1] && t[1] < t[2] && t[2] < self.n, "bad triple {t:?}");
        self.f[index(t[0], t[1], t[2])]
    }

    /// Triples with score three, lexicographically by positions.
    pub fn full_triples(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for k in 2..self.n {
            for j in 1..k {
                let base = choose3(k) + choose2(j);
                for i in 0..j {
                    if self.f[base + i] == 3 {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Runs the counting pass over all pivots.
///
/// Components of the `n` avoidance graphs are computed in parallel; the
/// scores are then accumulated in index order, each triple collecting the
/// increments of its three pivots.
pub fn wat_counter(a: &SymMatrix) -> TripleCounter {
    let n = a.n();
    let mut counter = TripleCounter::zeroed(n);
    if n < 3 {
        return counter;
    }
    let comp: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|v| components_at(a, v).0)
        .collect();
    // `by_vertex[u][v]` is the component of `u` in `H_v`, so that the inner
    // loop below reads four contiguous rows.
    let mut by_vertex = vec![vec![0u32; n]; n];
    for (v, c) in comp.iter().enumerate() {
        for (u, &id) in c.iter().enumerate() {
            by_vertex[u][v] = id;
        }
    }
    let f = &mut counter.f;
    for k in 2..n {
        let (ck, tk) = (&comp[k], &by_vertex[k]);
        for j in 1..k {
            let (cj, tj) = (&comp[j], &by_vertex[j]);
            let base = choose3(k) + choose2(j);
            let (cjk, ckj) = (cj[k], ck[j]);
            let row = &mut f[base..base + j];
            for i in 0..j {
                row[i] = u8::from(ck[i] == ckj) + u8::from(cj[i] == cjk) + u8::from(tj[i] == tk[i]);
            }
        }
    }
    counter
}

/// Labels of all weighted asteroidal triples, each in matrix order, listed
/// lexicographically by position.
pub fn wat_triples(a: &SymMatrix) -> Vec<[Label; 3]> {
    wat_counter(a)
        .full_triples()
        .into_iter()
        .map(|t| t.map(|p| a.label(p)))
        .collect()
}

pub fn count_wats(a: &SymMatrix) -> usize {
    wat_counter(a).f.iter().filter(|&&s| s == 3).count()
}

/// Every weighted asteroidal triple with shortest witnessing paths.
pub fn enumerate_wats(a: &SymMatrix) -> Vec<WeightedAsteroidalTriple> {
    wat_counter(a)
        .full_triples()
        .into_par_iter()
        .map(|[x, y, z]| make_wat_at(a, x, y, z).expect("a full score means all three paths exist"))
        .collect()
}

/// The first triple whose score reaches three, pivots taken in matrix
/// order, or `None` when the matrix has no weighted asteroidal triple.
pub fn find_one_wat(a: &SymMatrix) -> Option<WeightedAsteroidalTriple> {
    find_one_wat_at(a)
}

pub(crate) fn find_one_wat_at(a: &SymMatrix) -> Option<WeightedAsteroidalTriple> {
    let n = a.n();
    if n < 3 {
        return None;
    }
    let mut f = vec![0u8; choose3(n)];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        let (comp, count) = components_at(a, v);
        members.iter_mut().for_each(Vec::clear);
        members.resize(count, Vec::new());
        for (u, &c) in comp.iter().enumerate() {
            if u != v {
                members[c as usize].push(u);
            }
        }
        for group in &members {
            for (s, &x) in group.iter().enumerate() {
                for &y in &group[s + 1..] {
                    let mut t = [x, y, v];
                    t.sort_unstable();
                    let slot = &mut f[index(t[0], t[1], t[2])];
                    *slot += 1;
                    if *slot == 3 {
                        return make_wat_at(a, t[0], t[1], t[2]);
                    }
                }
            }
        }
    }
    None
}
