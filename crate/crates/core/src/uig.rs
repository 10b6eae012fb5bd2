//! Unit interval graphs and their classic obstructions.
//!
//! A graph is a unit interval graph exactly when its 0/1 adjacency matrix
//! is Robinsonian, and exactly when it is chordal, claw-free and free of
//! asteroidal triples. This module finds those obstructions directly and
//! translates them to and from weighted asteroidal triples of the adjacency
//! matrix.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::avoidance::{find_path_at, Path};
use crate::certificates::{verify_wat, Certificate, WeightedAsteroidalTriple};
use crate::certify::certify;
use crate::matrix::{LinearOrder, SymMatrix};
use crate::values::EntryValue;
use crate::{Error, Result};

static DIRECT_SEARCHES: AtomicUsize = AtomicUsize::new(0);

/// Number of times, process-wide, that [`wat_to_obstruction`] could not
/// translate a triple and searched the graph directly instead.
pub fn obstruction_fallbacks() -> usize {
    DIRECT_SEARCHES.load(AtomicOrdering::Relaxed)
}

/// Simple undirected graph on the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<bool>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![vec![false; n]; n],
            m: 0,
        }
    }

    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Value(format!("edge {u}-{v} leaves the vertex range 0..{n}")));
        }
        if u == v {
            return Err(Error::Value(format!("loop at vertex {u}")));
        }
        if self.adj[u][v] {
            return Err(Error::Value(format!("repeated edge {u}-{v}")));
        }
        self.adj[u][v] = true;
        self.adj[v][u] = true;
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// False for out-of-range vertices.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u][v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &e)| e).map(|(u, _)| u)
    }

    /// Edges with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u][v]).map(move |v| (u, v)))
            .collect()
    }

    fn in_range(&self, vs: &[usize]) -> bool {
        vs.iter().all(|&v| v < self.n())
    }
}

/// A certificate that a graph is not a unit interval graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphObstruction {
    Claw {
        center: usize,
        leaves: [usize; 3],
    },
    /// Induced cycle of length at least four, listed along the cycle.
    ChordlessCycle { cycle: Vec<usize> },
    /// Independent triple; each path joins two of them and contains no
    /// vertex of the closed neighbourhood of the third.
    AsteroidalTriple {
        x: usize,
        y: usize,
        z: usize,
        p_xy: Vec<usize>,
        p_xz: Vec<usize>,
        p_yz: Vec<usize>,
    },
}

impl fmt::Display for GraphObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            GraphObstruction::Claw { center, leaves } => {
                write!(f, "claw: center={center}, leaves={}", list(leaves))
            }
            GraphObstruction::ChordlessCycle { cycle } => {
                write!(f, "chordless cycle: {}", list(cycle))
            }
            GraphObstruction::AsteroidalTriple { x, y, z, p_xy, p_xz, p_yz } => {
                writeln!(f, "asteroidal triple: {x} {y} {z}")?;
                writeln!(f, "path {x}-{y} missing {z}: {}", list(p_xy))?;
                writeln!(f, "path {x}-{z} missing {y}: {}", list(p_xz))?;
                write!(f, "path {y}-{z} missing {x}: {}", list(p_yz))
            }
        }
    }
}

/// Outcome of [`is_unit_interval`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UigVerdict {
    /// A vertex ordering satisfying the 3-vertex condition.
    Ordering(LinearOrder),
    Obstruction(GraphObstruction),
}

/// Why an obstruction does not hold in a graph, if it does not.
pub fn obstruction_defect(g: &Graph, o: &GraphObstruction) -> Option<String> {
    match o {
        GraphObstruction::Claw { center, leaves } => {
            let all = [*center, leaves[0], leaves[1], leaves[2]];
            if !g.in_range(&all) || !distinct(&all) {
                return Some("claw vertices must be distinct vertices of the graph".into());
            }
            if let Some(l) = leaves.iter().find(|&&l| !g.has_edge(*center, l)) {
                return Some(format!("leaf {l} is not adjacent to the center"));
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    if g.has_edge(leaves[i], leaves[j]) {
                        return Some(format!("leaves {} and {} are adjacent", leaves[i], leaves[j]));
                    }
                }
            }
            None
        }
        GraphObstruction::ChordlessCycle { cycle } => {
            let k = cycle.len();
            if k < 4 || !g.in_range(cycle) || !distinct(cycle) {
                return Some("a chordless cycle needs at least four distinct vertices".into());
            }
            for i in 0..k {
                for j in i + 1..k {
                    let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                    if g.has_edge(cycle[i], cycle[j]) != consecutive {
                        return Some(format!(
                            "vertices {} and {} break the induced cycle",
                            cycle[i], cycle[j]
                        ));
                    }
                }
            }
            None
        }
        GraphObstruction::AsteroidalTriple { x, y, z, p_xy, p_xz, p_yz } => {
            let t = [*x, *y, *z];
            if !g.in_range(&t) || !distinct(&t) {
                return Some("triple must be three distinct vertices".into());
            }
            if g.has_edge(*x, *y) || g.has_edge(*x, *z) || g.has_edge(*y, *z) {
                return Some("triple is not independent".into());
            }
            for (p, from, to, missed) in [(p_xy, x, y, z), (p_xz, x, z, y), (p_yz, y, z, x)] {
                if p.first() != Some(from) || p.last() != Some(to) {
                    return Some(format!("path must run from {from} to {to}"));
                }
                if !g.in_range(p) || !distinct(p) {
                    return Some(format!("path {from}-{to} repeats or leaves the graph"));
                }
                if p.windows(2).any(|e| !g.has_edge(e[0], e[1])) {
                    return Some(format!("path {from}-{to} uses a non-edge"));
                }
                if p.iter().any(|&v| v == *missed || g.has_edge(v, *missed)) {
                    return Some(format!("path {from}-{to} meets the neighbourhood of {missed}"));
                }
            }
            None
        }
    }
}

pub fn verify_obstruction(g: &Graph, o: &GraphObstruction) -> bool {
    obstruction_defect(g, o).is_none()
}

fn distinct(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// The 0/1 adjacency matrix, labelled by vertex.
pub fn adjacency_matrix(g: &Graph) -> Result<SymMatrix> {
    let (zero, one) = (EntryValue::from_integer(0), EntryValue::from_integer(1));
    SymMatrix::from_fn((0..g.n()).collect(), |i, j| {
        if g.adj[i][j] {
            one.clone()
        } else {
            zero.clone()
        }
    })
}

/// A claw, a chordless cycle or an asteroidal triple, searched in that
/// order; `None` exactly for unit interval graphs.
pub fn find_graph_obstruction(g: &Graph) -> Option<GraphObstruction> {
    find_claw(g)
        .or_else(|| find_chordless_cycle(g))
        .or_else(|| find_asteroidal_triple(g))
}

fn find_claw(g: &Graph) -> Option<GraphObstruction> {
    for c in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(c).collect();
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                if let Some(&d) = nb[j + 1..].iter().find(|&&d| !g.has_edge(a, d) && !g.has_edge(b, d)) {
                    return Some(GraphObstruction::Claw {
                        center: c,
                        leaves: [a, b, d],
                    });
                }
            }
        }
    }
    None
}

/// Maximum cardinality search; the reverse of the visiting order is a
/// perfect elimination ordering exactly when the graph is chordal.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("an unvisited vertex remains");
        done[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    order.reverse();
    order
}

/// First vertex whose later neighbours are not a clique, with two of those
/// neighbours that are non-adjacent.
fn peo_failure(g: &Graph, order: &[usize]) -> Option<(usize, usize, usize)> {
    let n = g.n();
    let mut at = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        at[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| at[u] > at[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&u| at[u]) {
            if let Some(&w) = later.iter().find(|&&w| w != p && !g.has_edge(p, w)) {
                return Some((v, p, w));
            }
        }
    }
    None
}

/// Closes a chordless cycle through `v`, using `u` and `w` (non-adjacent
/// neighbours of `v`) and a shortest `u`-`w` path avoiding the rest of the
/// closed neighbourhood of `v`.
fn cycle_through(g: &Graph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let blocked: Vec<bool> = (0..g.n())
        .map(|x| x != u && x != w && (x == v || g.has_edge(v, x)))
        .collect();
    let path = shortest_path(g, u, w, &blocked)?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

fn find_chordless_cycle(g: &Graph) -> Option<GraphObstruction> {
    let (v, p, w) = peo_failure(g, &mcs_order(g))?;
    let cycle = cycle_through(g, v, p, w).or_else(|| {
        (0..g.n()).find_map(|v| {
            let nb: Vec<usize> = g.neighbors(v).collect();
            nb.iter().enumerate().find_map(|(i, &a)| {
                nb[i + 1..]
                    .iter()
                    .filter(|&&b| !g.has_edge(a, b))
                    .find_map(|&b| cycle_through(g, v, a, b))
            })
        })
    })?;
    Some(GraphObstruction::ChordlessCycle { cycle })
}

/// Breadth-first shortest path, neighbours taken in increasing order.
fn shortest_path(g: &Graph, from: usize, to: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let n = g.n();
    if blocked[from] || blocked[to] {
        return None;
    }
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for x in g.neighbors(u) {
            if parent[x] == usize::MAX && !blocked[x] {
                parent[x] = u;
                queue.push_back(x);
            }
        }
    }
    None
}

/// Components of `G - N[z]` for every `z`, `usize::MAX` on `N[z]`.
fn missing_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    (0..n)
        .map(|z| {
            let mut comp = vec![usize::MAX; n];
            let blocked: Vec<bool> = (0..n).map(|x| x == z || g.has_edge(z, x)).collect();
            let mut next = 0;
            for s in 0..n {
                if blocked[s] || comp[s] != usize::MAX {
                    continue;
                }
                comp[s] = next;
                let mut stack = vec![s];
                while let Some(u) = stack.pop() {
                    for x in g.neighbors(u) {
                        if !blocked[x] && comp[x] == usize::MAX {
                            comp[x] = next;
                            stack.push(x);
                        }
                    }
                }
                next += 1;
            }
            comp
        })
        .collect()
}

fn find_asteroidal_triple(g: &Graph) -> Option<GraphObstruction> {
    let n = g.n();
    let comp = missing_components(g);
    let joined = |a: usize, b: usize, c: usize| comp[c][a] != usize::MAX && comp[c][a] == comp[c][b];
    for x in 0..n {
        for y in (x + 1..n).filter(|&y| !g.has_edge(x, y)) {
            for z in (y + 1..n).filter(|&z| !g.has_edge(x, z) && !g.has_edge(y, z)) {
                if joined(x, y, z) && joined(x, z, y) && joined(y, z, x) {
                    let miss = |a, b, c: usize| {
                        let blocked: Vec<bool> = (0..n).map(|v| v == c || g.has_edge(c, v)).collect();
                        shortest_path(g, a, b, &blocked).expect("joined in G - N[c]")
                    };
                    return Some(GraphObstruction::AsteroidalTriple {
                        x,
                        y,
                        z,
                        p_xy: miss(x, y, z),
                        p_xz: miss(x, z, y),
                        p_yz: miss(y, z, x),
                    });
                }
            }
        }
    }
    None
}

/// A weighted asteroidal triple of the adjacency matrix carried by a graph
/// obstruction.
///
/// A cycle `(x1, ..., xk)` gives `{x1, x2, xk}` with the paths `(x1, x2)`,
/// `(x1, xk)` and `(x2, ..., xk)`; a claw gives its leaves with paths
/// through the center; an asteroidal triple is already one.
pub fn obstruction_to_wat(g: &Graph, o: &GraphObstruction) -> Result<WeightedAsteroidalTriple> {
    if let Some(d) = obstruction_defect(g, o) {
        return Err(Error::Precondition(format!("obstruction does not hold: {d}")));
    }
    let path = |nodes: Vec<usize>, avoided: usize| Path { nodes, avoided };
    let w = match o {
        GraphObstruction::Claw { center: c, leaves: [x, y, z] } => WeightedAsteroidalTriple {
            x: *x,
            y: *y,
            z: *z,
            p_xy: path(vec![*x, *c, *y], *z),
            p_xz: path(vec![*x, *c, *z], *y),
            p_yz: path(vec![*y, *c, *z], *x),
        },
        GraphObstruction::ChordlessCycle { cycle } => {
            let (x1, x2, xk) = (cycle[0], cycle[1], cycle[cycle.len() - 1]);
            WeightedAsteroidalTriple {
                x: x1,
                y: x2,
                z: xk,
                p_xy: path(vec![x1, x2], xk),
                p_xz: path(vec![x1, xk], x2),
                p_yz: path(cycle[1..].to_vec(), x1),
            }
        }
        GraphObstruction::AsteroidalTriple { x, y, z, p_xy, p_xz, p_yz } => WeightedAsteroidalTriple {
            x: *x,
            y: *y,
            z: *z,
            p_xy: path(p_xy.clone(), *z),
            p_xz: path(p_xz.clone(), *y),
            p_yz: path(p_yz.clone(), *x),
        },
    };
    Ok(w)
}

/// How a fewest-node path avoiding `r` meets the neighbourhood of `r`.
enum PathCase {
    /// `r` is adjacent to no node of the path.
    Misses,
    Found(GraphObstruction),
    /// The path is induced and `r` is adjacent to the given endpoint only.
    TouchesEnd(usize),
    /// A chord joins the two neighbours of `r` at distance two on the path,
    /// which closes no induced cycle.
    Diamond,
}

fn classify(g: &Graph, path: &[usize], r: usize) -> PathCase {
    let touch: Vec<usize> = (0..path.len()).filter(|&i| g.has_edge(r, path[i])).collect();
    match touch.as_slice() {
        [] => PathCase::Misses,
        &[i] => {
            if i == 0 || i + 1 == path.len() {
                PathCase::TouchesEnd(path[i])
            } else {
                PathCase::Found(GraphObstruction::Claw {
                    center: path[i],
                    leaves: [path[i - 1], path[i + 1], r],
                })
            }
        }
        _ => {
            let (i, j) = touch
                .windows(2)
                .map(|w| (w[0], w[1]))
                .find(|&(i, j)| j >= i + 2)
                .expect("no two consecutive path nodes are adjacent to r");
            if j == i + 2 && g.has_edge(path[i], path[j]) {
                return PathCase::Diamond;
            }
            let mut cycle = vec![r];
            cycle.extend_from_slice(&path[i..=j]);
            if j >= i + 3 && g.has_edge(path[i], path[j]) {
                cycle.remove(0);
            }
            PathCase::Found(GraphObstruction::ChordlessCycle { cycle })
        }
    }
}

/// Splices an induced cycle out of `p` (from `x` to `y`, with `z` adjacent
/// to `x` only), `q` (from `y` to `z`, with `x` adjacent to `z` only) and
/// the edge `{z, x}`. The first node `u` of `p` after `x` that lies on or
/// next to `q` is joined to the last such node `v` of `q`.
fn splice(g: &Graph, p: &[usize], q: &[usize]) -> Option<GraphObstruction> {
    let a = (1..p.len()).find(|&a| q.iter().any(|&v| v == p[a] || g.has_edge(p[a], v)))?;
    let u = p[a];
    let b = (0..q.len()).rev().find(|&b| q[b] == u || g.has_edge(u, q[b]))?;
    let mut cycle = p[..=a].to_vec();
    let tail = if q[b] == u { &q[b + 1..] } else { &q[b..] };
    cycle.extend_from_slice(tail);
    Some(GraphObstruction::ChordlessCycle { cycle })
}

/// Turns a weighted asteroidal triple of the adjacency matrix into a graph
/// obstruction.
///
/// Each of the three witnessing paths is rebuilt with as few nodes as
/// possible and classified by how the avoided vertex meets it: an interior
/// contact gives a claw, two contacts an induced cycle, and three clean
/// misses an asteroidal triple. Otherwise some avoided vertex touches an
/// endpoint and the two relevant paths, closed by that edge, are spliced
/// into an induced cycle at the first chord. If the result fails to verify
/// (the chord case that closes only a diamond), the graph is searched
/// directly.
pub fn wat_to_obstruction(g: &Graph, w: &WeightedAsteroidalTriple) -> Result<GraphObstruction> {
    let a = adjacency_matrix(g)?;
    if !verify_wat(&a, w)?.is_valid() {
        return Err(Error::Precondition("not a weighted asteroidal triple of the graph".into()));
    }
    let direct = translate(g, &a, w);
    match direct {
        Some(o) if verify_obstruction(g, &o) => Ok(o),
        _ => {
            DIRECT_SEARCHES.fetch_add(1, AtomicOrdering::Relaxed);
            find_graph_obstruction(g)
        }
        .ok_or_else(|| Error::Invariant("a weighted asteroidal triple without a graph obstruction".into())),
    }
}

fn translate(g: &Graph, a: &SymMatrix, w: &WeightedAsteroidalTriple) -> Option<GraphObstruction> {
    let (x, y, z) = (w.x, w.y, w.z);
    let shortest = |s: usize, t: usize, r: usize| find_path_at(a, s, t, r).expect("the triple verified");
    let pxy = shortest(x, y, z);
    let pxz = shortest(x, z, y);
    let pyz = shortest(y, z, x);
    let paths = [(&pxy, z), (&pxz, y), (&pyz, x)];
    let cases: Vec<PathCase> = paths.iter().map(|(p, r)| classify(g, p, *r)).collect();
    for case in &cases {
        if let PathCase::Found(o) = case {
            return Some(o.clone());
        }
    }
    if cases.iter().all(|c| matches!(c, PathCase::Misses)) {
        let mut support: Vec<usize> = pxy.iter().chain(&pxz).chain(&pyz).copied().collect();
        support.sort_unstable();
        support.dedup();
        if let Some(cycle) = induced_cycle(g, &support) {
            return Some(GraphObstruction::ChordlessCycle { cycle });
        }
        return Some(GraphObstruction::AsteroidalTriple {
            x,
            y,
            z,
            p_xy: pxy,
            p_xz: pxz,
            p_yz: pyz,
        });
    }
    // Some avoided vertex r touches an endpoint e of the path joining the
    // other two; the path from the far endpoint to r avoids e.
    let oriented = |s: usize, t: usize| -> Vec<usize> {
        [&pxy, &pxz, &pyz]
            .iter()
            .find_map(|p| {
                if p[0] == s && p[p.len() - 1] == t {
                    Some(p.to_vec())
                } else if p[0] == t && p[p.len() - 1] == s {
                    Some(p.iter().rev().copied().collect())
                } else {
                    None
                }
            })
            .expect("paths join every pair")
    };
    for ((p, r), case) in paths.iter().zip(&cases) {
        if let PathCase::TouchesEnd(e) = case {
            let far = if p[0] == *e { p[p.len() - 1] } else { p[0] };
            return splice(g, &oriented(*e, far), &oriented(far, *r));
        }
    }
    None
}

/// The vertices of `support` in cycle order, when they induce a chordless
/// cycle of length at least four.
fn induced_cycle(g: &Graph, support: &[usize]) -> Option<Vec<usize>> {
    if support.len() < 4 {
        return None;
    }
    let inside = |v: usize| support.binary_search(&v).is_ok();
    let near = |v: usize| -> Vec<usize> { g.neighbors(v).filter(|&u| inside(u)).collect() };
    if support.iter().any(|&v| near(v).len() != 2) {
        return None;
    }
    let mut cycle = vec![support[0]];
    let mut prev = support[0];
    let mut cur = near(support[0])[0];
    while cur != support[0] {
        cycle.push(cur);
        let next = near(cur).into_iter().find(|&u| u != prev)?;
        prev = cur;
        cur = next;
    }
    (cycle.len() == support.len()).then_some(cycle)
}

/// Decides unit-interval membership through the certifying recognition of
/// the adjacency matrix.
pub fn is_unit_interval(g: &Graph) -> Result<UigVerdict> {
    let a = adjacency_matrix(g)?;
    match certify(&a)? {
        Certificate::RobinsonOrdering { ordering } => Ok(UigVerdict::Ordering(ordering)),
        Certificate::NotRobinsonian { wat } => Ok(UigVerdict::Obstruction(wat_to_obstruction(g, &wat)?)),
    }
}
