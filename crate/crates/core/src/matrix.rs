//! Dense symmetric matrices over [`EntryValue`] and the Robinson predicates.
//!
//! Every algorithm in this crate only compares entries, so on construction
//! the distinct entry values are sorted once and the matrix keeps a dense
//! table of ranks next to them. Comparisons are then plain integer
//! comparisons; the exact values stay available for output and for building
//! derived matrices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::values::EntryValue;
use crate::{Error, Label, Result};

/// Symmetric matrix indexed by an ordered set of labels. The diagonal is
/// never stored.
#[derive(Clone, Debug)]
pub struct SymMatrix {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    /// Distinct off-diagonal values in increasing order.
    values: Vec<EntryValue>,
    /// Row-major `n * n` table of indices into `values`; diagonal cells hold 0.
    ranks: Vec<u32>,
}

/// A linear order of matrix labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearOrder(Vec<Label>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    Valid,
    /// A triple `x < y < z` in the order with `A[x][z] > min(A[x][y], A[y][z])`.
    Violation { x: Label, y: Label, z: Label },
}

impl OrderVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, OrderVerdict::Valid)
    }
}

impl LinearOrder {
    pub fn new(labels: Vec<Label>) -> Self {
        LinearOrder(labels)
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Label> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder(self.0.iter().rev().copied().collect())
    }

    /// Rank of each label in this order.
    pub fn positions(&self) -> HashMap<Label, usize> {
        self.0.iter().enumerate().map(|(i, &l)| (l, i)).collect()
    }
}

impl From<Vec<Label>> for LinearOrder {
    fn from(v: Vec<Label>) -> Self {
        LinearOrder(v)
    }
}

impl SymMatrix {
    /// Builds a matrix from `entry(i, j)`, called once for every pair of
    /// positions `i < j`.
    pub fn from_fn(
        labels: Vec<Label>,
        mut entry: impl FnMut(usize, usize) -> EntryValue,
    ) -> Result<Self> {
        let index = label_index(&labels)?;
        let n = labels.len();
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                upper.push(entry(i, j));
            }
        }
        let mut values = upper.clone();
        values.sort();
        values.dedup();
        let mut ranks = vec![0u32; n * n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                let r = values.binary_search(&upper[k]).expect("value present") as u32;
                ranks[i * n + j] = r;
                ranks[j * n + i] = r;
                k += 1;
            }
        }
        Ok(SymMatrix {
            labels,
            index,
            values,
            ranks,
        })
    }

    /// Builds a matrix labelled `0..n` from full rows. Off-diagonal entries
    /// must be symmetric; the diagonal is ignored.
    pub fn from_rows(rows: Vec<Vec<EntryValue>>) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        SymMatrix::from_fn((0..n).collect(), |i, j| rows[i][j].clone())
    }

    /// Convenience constructor for integer matrices labelled `0..n`.
    pub fn from_integer_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        SymMatrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| EntryValue::from_integer(v)).collect())
                .collect(),
        )
    }

    /// Constant matrix with labels `0..n`.
    pub fn constant(n: usize, value: i64) -> Result<Self> {
        SymMatrix::from_fn((0..n).collect(), |_, _| EntryValue::from_integer(value))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, pos: usize) -> Label {
        self.labels[pos]
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub(crate) fn pos(&self, label: Label) -> Result<usize> {
        self.position(label).ok_or(Error::UnknownLabel(label))
    }

    pub(crate) fn positions_of(&self, labels: &[Label]) -> Result<Vec<usize>> {
        labels.iter().map(|&l| self.pos(l)).collect()
    }

    pub(crate) fn labels_of(&self, positions: &[usize]) -> Vec<Label> {
        positions.iter().map(|&p| self.labels[p]).collect()
    }

    /// Rank of the entry at positions `(i, j)`, `i != j`. Ranks compare
    /// exactly like the underlying values.
    #[inline]
    pub fn rank(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j);
        self.ranks[i * self.n() + j]
    }

    #[inline]
    pub(crate) fn rank_row(&self, i: usize) -> &[u32] {
        let n = self.n();
        &self.ranks[i * n..(i + 1) * n]
    }

    /// Entry at positions `(i, j)`, `i != j`.
    pub fn entry(&self, i: usize, j: usize) -> &EntryValue {
        &self.values[self.rank(i, j) as usize]
    }

    /// Entry for two distinct labels.
    pub fn value(&self, x: Label, y: Label) -> Result<&EntryValue> {
        let (i, j) = (self.pos(x)?, self.pos(y)?);
        if i == j {
            return Err(Error::NotDistinct);
        }
        Ok(self.entry(i, j))
    }

    /// Distinct off-diagonal values in increasing order.
    pub fn distinct_values(&self) -> &[EntryValue] {
        &self.values
    }

    /// Lowest tier among the entries (the original tier for a 1x1 matrix).
    pub fn lowest_tier(&self) -> i32 {
        self.values
            .first()
            .map_or(crate::values::ORIGINAL_TIER, EntryValue::tier)
    }

    /// Whether `(i, j, k)` (positions) satisfies `A[i][k] <= min(A[i][j], A[j][k])`.
    #[inline]
    pub(crate) fn robinson_at(&self, i: usize, j: usize, k: usize) -> bool {
        let outer = self.rank(i, k);
        outer <= self.rank(i, j) && outer <= self.rank(j, k)
    }

    /// `(x, y, z)` is a Robinson triple: `A[x][z] <= min(A[x][y], A[y][z])`.
    pub fn is_robinson_triple(&self, x: Label, y: Label, z: Label) -> Result<bool> {
        let (i, j, k) = (self.pos(x)?, self.pos(y)?, self.pos(z)?);
        if i == j || j == k || i == k {
            return Err(Error::NotDistinct);
        }
        Ok(self.robinson_at(i, j, k))
    }

    /// Checks that `order` is a permutation of the labels and returns the
    /// matrix positions in that order.
    pub(crate) fn order_positions(&self, order: &LinearOrder) -> Result<Vec<usize>> {
        if order.len() != self.n() {
            return Err(Error::NotPermutation);
        }
        let mut seen = vec![false; self.n()];
        let mut out = Vec::with_capacity(self.n());
        for &l in order.as_slice() {
            let p = self.position(l).ok_or(Error::NotPermutation)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotPermutation);
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Whether every triple ordered by `order` is Robinson.
    ///
    /// Runs in O(n^2): it is enough that rows decrease moving right of the
    /// diagonal and columns decrease moving up from it, for consecutive
    /// positions.
    pub fn verify_ordering(&self, order: &LinearOrder) -> Result<OrderVerdict> {
        let p = self.order_positions(order)?;
        Ok(self.verify_positions(&p))
    }

    pub(crate) fn verify_positions(&self, p: &[usize]) -> OrderVerdict {
        let n = p.len();
        for i in 0..n {
            for k in i + 2..n {
                let outer = self.rank(p[i], p[k]);
                if outer > self.rank(p[i], p[k - 1]) {
                    return self.violation(p[i], p[k - 1], p[k]);
                }
                if outer > self.rank(p[i + 1], p[k]) {
                    return self.violation(p[i], p[i + 1], p[k]);
                }
            }
        }
        OrderVerdict::Valid
    }

    fn violation(&self, i: usize, j: usize, k: usize) -> OrderVerdict {
        OrderVerdict::Violation {
            x: self.labels[i],
            y: self.labels[j],
            z: self.labels[k],
        }
    }

    /// The same matrix with its labels listed in `order`, so that `order` is
    /// a Robinson ordering of `self` iff the result is Robinson in its own
    /// label order.
    pub fn permute(&self, order: &LinearOrder) -> Result<SymMatrix> {
        let p = self.order_positions(order)?;
        Ok(self.principal(&p))
    }

    /// Principal submatrix on `subset`, keeping this matrix's label order.
    pub fn restrict(&self, subset: &[Label]) -> Result<SymMatrix> {
        if subset.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut p = self.positions_of(subset)?;
        p.sort_unstable();
        if p.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(self.labels[p[0]]));
        }
        Ok(self.principal(&p))
    }

    /// Principal submatrix on the given positions, in the given order.
    pub(crate) fn principal(&self, positions: &[usize]) -> SymMatrix {
        let m = positions.len();
        let labels = self.labels_of(positions);
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut used = vec![false; self.values.len()];
        for i in 0..m {
            for j in i + 1..m {
                used[self.rank(positions[i], positions[j]) as usize] = true;
            }
        }
        let mut remap = vec![u32::MAX; self.values.len()];
        let mut values = Vec::new();
        for (r, u) in used.iter().enumerate() {
            if *u {
                remap[r] = values.len() as u32;
                values.push(self.values[r].clone());
            }
        }
        let mut ranks = vec![0u32; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let r = remap[self.rank(positions[i], positions[j]) as usize];
                ranks[i * m + j] = r;
                ranks[j * m + i] = r;
            }
        }
        SymMatrix {
            labels,
            index,
            values,
            ranks,
        }
    }

    /// The same entries under new labels (same length, distinct).
    pub fn relabel(&self, labels: Vec<Label>) -> Result<SymMatrix> {
        if labels.len() != self.n() {
            return Err(Error::Shape(format!(
                "{} labels for a matrix of size {}",
                labels.len(),
                self.n()
            )));
        }
        let index = label_index(&labels)?;
        Ok(SymMatrix {
            labels,
            index,
            values: self.values.clone(),
            ranks: self.ranks.clone(),
        })
    }

    /// Full rows of exact values with a zero diagonal.
    pub fn to_rows(&self) -> Vec<Vec<EntryValue>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            EntryValue::from_integer(0)
                        } else {
                            self.entry(i, j).clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl PartialEq for SymMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.values == other.values && self.ranks == other.ranks
    }
}

impl Eq for SymMatrix {}

fn label_index(labels: &[Label]) -> Result<HashMap<Label, usize>> {
    if labels.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, &l) in labels.iter().enumerate() {
        if index.insert(l, i).is_some() {
            return Err(Error::DuplicateLabel(l));
        }
    }
    Ok(index)
}
