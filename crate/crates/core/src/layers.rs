//! Similarity layers rooted at an element.
//!
//! Starting from `X_0 = {a}`, each next layer collects the remaining
//! elements that every already-placed element sees with maximum value among
//! the remaining ones. Layering stops at the first empty layer, which can
//! happen before every element is placed.

use crate::certificates::{make_wat_at, WeightedAsteroidalTriple};
use crate::decomposition::strongly_homogeneous_at;
use crate::matrix::SymMatrix;
use crate::{avoidance, Error, Label, Result};

const UNPLACED: usize = usize::MAX;

/// Layers `(X_0, ..., X_k)` with `X_0 = {root}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerStructure {
    pub root: Label,
    pub layers: Vec<Vec<Label>>,
    /// Whether the layers cover every element.
    pub covered: bool,
}

impl LayerStructure {
    /// Index of the last layer.
    pub fn k(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_of(&self, label: Label) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(&label))
    }

    /// `x` lies in a strictly earlier layer than `y`.
    pub fn precedes(&self, x: Label, y: Label) -> bool {
        matches!((self.layer_of(x), self.layer_of(y)), (Some(i), Some(j)) if i < j)
    }
}

/// Position-level layers used by the certifier.
#[derive(Clone, Debug)]
pub(crate) struct Layers {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    /// Layer index per position, `UNPLACED` when not covered.
    pub layer_of: Vec<usize>,
}

impl Layers {
    pub fn covered(&self) -> bool {
        self.layer_of.iter().all(|&l| l != UNPLACED)
    }

    pub fn k(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn last(&self) -> &[usize] {
        self.layers.last().expect("X_0 always exists")
    }

    pub fn to_public(&self, a: &SymMatrix) -> LayerStructure {
        LayerStructure {
            root: a.label(self.root),
            layers: self.layers.iter().map(|l| a.labels_of(l)).collect(),
            covered: self.covered(),
        }
    }

    fn from_public(a: &SymMatrix, psi: &LayerStructure) -> Result<Self> {
        let root = a.pos(psi.root)?;
        let mut layer_of = vec![UNPLACED; a.n()];
        let mut layers = Vec::with_capacity(psi.layers.len());
        for (i, layer) in psi.layers.iter().enumerate() {
            let ps = a.positions_of(layer)?;
            for &p in &ps {
                if layer_of[p] != UNPLACED {
                    return Err(Error::DuplicateLabel(a.label(p)));
                }
                layer_of[p] = i;
            }
            layers.push(ps);
        }
        if layers.first().map(Vec::as_slice) != Some(&[root][..]) {
            return Err(Error::Precondition("first layer must be the root alone".into()));
        }
        Ok(Layers {
            root,
            layers,
            layer_of,
        })
    }
}

pub fn similarity_layers(a: &SymMatrix, root: Label) -> Result<LayerStructure> {
    Ok(layers_at(a, a.pos(root)?).to_public(a))
}

pub(crate) fn layers_at(a: &SymMatrix, root: usize) -> Layers {
    let n = a.n();
    let mut layer_of = vec![UNPLACED; n];
    layer_of[root] = 0;
    let mut placed = vec![root];
    let mut layers = vec![vec![root]];
    let mut rest: Vec<usize> = (0..n).filter(|&p| p != root).collect();
    while !rest.is_empty() {
        let next: Vec<usize> = {
            let mut candidate = vec![true; rest.len()];
            for &x in &placed {
                let row = a.rank_row(x);
                let best = rest.iter().map(|&z| row[z]).max().expect("rest is non-empty");
                for (c, &y) in candidate.iter_mut().zip(&rest) {
                    *c &= row[y] == best;
                }
            }
            rest.iter()
                .zip(&candidate)
                .filter_map(|(&y, &c)| c.then_some(y))
                .collect()
        };
        if next.is_empty() {
            break;
        }
        let i = layers.len();
        for &y in &next {
            layer_of[y] = i;
        }
        rest.retain(|&y| layer_of[y] == UNPLACED);
        placed.extend_from_slice(&next);
        layers.push(next);
    }
    Layers {
        root,
        layers,
        layer_of,
    }
}

/// With a critical root and layers that stop short of `V`, two placed
/// elements `x`, `x'` whose sets of best-seen unplaced elements are
/// incomparable yield `u`, `v` such that `{root, u, v}` is a weighted
/// asteroidal triple.
pub fn wat_from_noncover(a: &SymMatrix, psi: &LayerStructure) -> Result<WeightedAsteroidalTriple> {
    let layers = Layers::from_public(a, psi)?;
    if layers.covered() {
        return Err(Error::Precondition("layers cover every element".into()));
    }
    if !avoidance::is_critical_at(a, layers.root) {
        return Err(Error::Precondition("root is not critical".into()));
    }
    wat_from_noncover_at(a, &layers)
}

pub(crate) fn wat_from_noncover_at(a: &SymMatrix, layers: &Layers) -> Result<WeightedAsteroidalTriple> {
    let n = a.n();
    let placed: Vec<usize> = (0..n).filter(|&p| layers.layer_of[p] != UNPLACED).collect();
    let outside: Vec<usize> = (0..n).filter(|&p| layers.layer_of[p] == UNPLACED).collect();
    let best_sets: Vec<Vec<bool>> = placed
        .iter()
        .map(|&x| {
            let row = a.rank_row(x);
            let best = outside.iter().map(|&v| row[v]).max().expect("layers do not cover");
            outside.iter().map(|&v| row[v] == best).collect()
        })
        .collect();
    let only_in = |s: &[bool], t: &[bool]| (0..outside.len()).find(|&i| s[i] && !t[i]);
    for i in 0..placed.len() {
        for j in i + 1..placed.len() {
            let (mi, mj) = (&best_sets[i], &best_sets[j]);
            if let (Some(u), Some(v)) = (only_in(mi, mj), only_in(mj, mi)) {
                return make_wat_at(a, layers.root, outside[u], outside[v]).ok_or_else(|| {
                    Error::Invariant("incomparable best sets did not give a triple".into())
                });
            }
        }
    }
    Err(Error::Invariant(
        "uncovered layers but the best-seen sets form a chain".into(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarCheck {
    Holds,
    Violated(WeightedAsteroidalTriple),
}

/// Checks the strengthened layer conditions: for `x` in an earlier layer
/// than `y` and `z`,
/// * same later layer: `A[x][y] = A[x][z] <= A[y][z]`;
/// * `y` strictly before `z`: `A[x][z] <= min(A[x][y], A[y][z])`.
///
/// The first violation, in order of layer indices then positions, gives the
/// weighted asteroidal triple `{root, y, z}`.
pub fn check_layer_stars(a: &SymMatrix, psi: &LayerStructure) -> Result<StarCheck> {
    let layers = Layers::from_public(a, psi)?;
    if !layers.covered() {
        return Err(Error::Precondition("layers do not cover every element".into()));
    }
    if !avoidance::is_critical_at(a, layers.root) {
        return Err(Error::Precondition("root is not critical".into()));
    }
    check_layer_stars_at(a, &layers)
}

pub(crate) fn check_layer_stars_at(a: &SymMatrix, layers: &Layers) -> Result<StarCheck> {
    match first_star_violation(a, layers) {
        Some((y, z)) => make_wat_at(a, layers.root, y, z)
            .map(StarCheck::Violated)
            .ok_or_else(|| Error::Invariant("layer condition violation without a triple".into())),
        None => {
            let last = layers.last();
            if last.len() >= 2 && !strongly_homogeneous_at(a, last) {
                return Err(Error::Invariant(
                    "last layer is not strongly homogeneous".into(),
                ));
            }
            Ok(StarCheck::Holds)
        }
    }
}

fn first_star_violation(a: &SymMatrix, layers: &Layers) -> Option<(usize, usize)> {
    let ls = &layers.layers;
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            for &x in &ls[i] {
                for (s, &y) in ls[j].iter().enumerate() {
                    for &z in &ls[j][s + 1..] {
                        let (xy, xz) = (a.rank(x, y), a.rank(x, z));
                        if xy != xz || xy > a.rank(y, z) {
                            return Some((y.min(z), y.max(z)));
                        }
                    }
                }
            }
        }
    }
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            for h in j + 1..ls.len() {
                for &x in &ls[i] {
                    for &y in &ls[j] {
                        for &z in &ls[h] {
                            if !a.robinson_at(x, y, z) {
                                return Some((y, z));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
