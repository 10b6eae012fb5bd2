//! Paths avoiding an element.
//!
//! For a pivot `v`, the avoidance graph `H_v` lives on every other element
//! and joins `u` and `w` when `A[u][w] > min(A[u][v], A[w][v])`, that is when
//! `(u, v, w)` is not a Robinson triple. Such a pair can never have `v`
//! between them in a Robinson ordering, and neither can the two ends of any
//! path in `H_v`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::matrix::SymMatrix;
use crate::{Error, Label, Result};

const NO_COMPONENT: u32 = u32::MAX;

/// A path whose consecutive pairs all avoid `avoided`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub nodes: Vec<Label>,
    pub avoided: Label,
}

/// Why a [`Path`] fails to be a path avoiding its element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathDefect {
    Empty,
    UnknownLabel(Label),
    ContainsAvoided,
    RepeatedNode(Label),
    /// `nodes[index]`, `nodes[index + 1]` do not avoid the element.
    EdgeNotAvoiding { index: usize, u: Label, w: Label },
}

impl Path {
    pub fn start(&self) -> Option<Label> {
        self.nodes.first().copied()
    }

    pub fn end(&self) -> Option<Label> {
        self.nodes.last().copied()
    }

    /// Checks the path against `a` using matrix entries only.
    pub fn check(&self, a: &SymMatrix) -> std::result::Result<(), PathDefect> {
        if self.nodes.is_empty() {
            return Err(PathDefect::Empty);
        }
        let z = a
            .position(self.avoided)
            .ok_or(PathDefect::UnknownLabel(self.avoided))?;
        let mut seen = vec![false; a.n()];
        let mut prev: Option<usize> = None;
        for (i, &l) in self.nodes.iter().enumerate() {
            let p = a.position(l).ok_or(PathDefect::UnknownLabel(l))?;
            if p == z {
                return Err(PathDefect::ContainsAvoided);
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(PathDefect::RepeatedNode(l));
            }
            if let Some(q) = prev {
                if !avoids(a, q, p, z) {
                    return Err(PathDefect::EdgeNotAvoiding {
                        index: i - 1,
                        u: self.nodes[i - 1],
                        w: l,
                    });
                }
            }
            prev = Some(p);
        }
        Ok(())
    }
}

/// Whether the pair of positions `(u, w)` avoids position `v`.
#[inline]
pub(crate) fn avoids(a: &SymMatrix, u: usize, w: usize, v: usize) -> bool {
    a.rank(u, w) > a.rank(u, v).min(a.rank(w, v))
}

/// `H_v` for one pivot together with its connected components.
#[derive(Clone, Debug)]
pub struct AvoidanceGraph<'a> {
    matrix: &'a SymMatrix,
    pivot: usize,
    component: Vec<u32>,
    count: usize,
}

impl<'a> AvoidanceGraph<'a> {
    pub(crate) fn at(matrix: &'a SymMatrix, pivot: usize) -> Self {
        let (component, count) = components_at(matrix, pivot);
        AvoidanceGraph {
            matrix,
            pivot,
            component,
            count,
        }
    }

    pub fn pivot(&self) -> Label {
        self.matrix.label(self.pivot)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Label> + '_ {
        (0..self.matrix.n())
            .filter(move |&p| p != self.pivot)
            .map(move |p| self.matrix.label(p))
    }

    pub fn has_edge(&self, u: Label, w: Label) -> Result<bool> {
        let (pu, pw) = (self.matrix.pos(u)?, self.matrix.pos(w)?);
        if pu == pw || pu == self.pivot || pw == self.pivot {
            return Err(Error::NotDistinct);
        }
        Ok(avoids(self.matrix, pu, pw, self.pivot))
    }

    pub fn edges(&self) -> Vec<(Label, Label)> {
        let n = self.matrix.n();
        let mut out = Vec::new();
        for u in (0..n).filter(|&u| u != self.pivot) {
            for w in (u + 1..n).filter(|&w| w != self.pivot) {
                if avoids(self.matrix, u, w, self.pivot) {
                    out.push((self.matrix.label(u), self.matrix.label(w)));
                }
            }
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn is_connected(&self) -> bool {
        self.count <= 1
    }

    /// Component index of a non-pivot label.
    pub fn component_of(&self, label: Label) -> Result<usize> {
        let p = self.matrix.pos(label)?;
        match self.component[p] {
            NO_COMPONENT => Err(Error::NotDistinct),
            c => Ok(c as usize),
        }
    }

    /// Components as label lists, each in matrix order, ordered by their
    /// first element.
    pub fn components(&self) -> Vec<Vec<Label>> {
        let mut out = vec![Vec::new(); self.count];
        for (p, &c) in self.component.iter().enumerate() {
            if c != NO_COMPONENT {
                out[c as usize].push(self.matrix.label(p));
            }
        }
        out
    }
}

/// Component id per position (`u32::MAX` at the pivot) and the number of
/// components. Components are numbered in order of their smallest position.
pub(crate) fn components_at(a: &SymMatrix, v: usize) -> (Vec<u32>, usize) {
    let n = a.n();
    let mut comp = vec![NO_COMPONENT; n];
    let rv = a.rank_row(v);
    let mut unvisited: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let mut stack = Vec::new();
    let mut count = 0u32;
    while !unvisited.is_empty() {
        let root = unvisited.remove(0);
        comp[root] = count;
        stack.push(root);
        while let Some(u) = stack.pop() {
            let ru = a.rank_row(u);
            let ruv = rv[u];
            let mut k = 0;
            while k < unvisited.len() {
                let w = unvisited[k];
                if ru[w] > ruv.min(rv[w]) {
                    comp[w] = count;
                    stack.push(w);
                    unvisited.swap_remove(k);
                } else {
                    k += 1;
                }
            }
        }
        unvisited.sort_unstable();
        count += 1;
    }
    (comp, count as usize)
}

/// Shortest path from `x` to `y` in `H_z` (positions), neighbours explored in
/// increasing position so the result is deterministic.
pub(crate) fn find_path_at(a: &SymMatrix, x: usize, y: usize, z: usize) -> Option<Vec<usize>> {
    let n = a.n();
    let mut parent = vec![usize::MAX; n];
    parent[x] = x;
    parent[z] = z;
    let mut queue = VecDeque::from([x]);
    let rz = a.rank_row(z);
    while let Some(u) = queue.pop_front() {
        if u == y {
            let mut path = vec![y];
            let mut cur = y;
            while cur != x {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        let ru = a.rank_row(u);
        for w in 0..n {
            if parent[w] == usize::MAX && ru[w] > rz[u].min(rz[w]) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

fn distinct3(a: &SymMatrix, x: Label, y: Label, z: Label) -> Result<(usize, usize, usize)> {
    let (px, py, pz) = (a.pos(x)?, a.pos(y)?, a.pos(z)?);
    if px == py || py == pz || px == pz {
        return Err(Error::NotDistinct);
    }
    Ok((px, py, pz))
}

pub fn build_avoidance_graph(a: &SymMatrix, v: Label) -> Result<AvoidanceGraph<'_>> {
    Ok(AvoidanceGraph::at(a, a.pos(v)?))
}

/// `x ~z y`: some path from `x` to `y` avoids `z`.
pub fn avoids_path_exists(a: &SymMatrix, x: Label, y: Label, z: Label) -> Result<bool> {
    let (px, py, pz) = distinct3(a, x, y, z)?;
    let (comp, _) = components_at(a, pz);
    Ok(comp[px] == comp[py])
}

pub fn find_avoiding_path(a: &SymMatrix, x: Label, y: Label, z: Label) -> Result<Option<Path>> {
    let (px, py, pz) = distinct3(a, x, y, z)?;
    Ok(find_path_at(a, px, py, pz).map(|p| Path {
        nodes: a.labels_of(&p),
        avoided: z,
    }))
}

/// Every pair of other elements is joined by a path avoiding `v`.
pub fn is_critical(a: &SymMatrix, v: Label) -> Result<bool> {
    let p = a.pos(v)?;
    Ok(is_critical_at(a, p))
}

pub(crate) fn is_critical_at(a: &SymMatrix, v: usize) -> bool {
    a.n() <= 2 || components_at(a, v).1 == 1
}
