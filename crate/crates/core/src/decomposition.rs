//! Strongly homogeneous sets and the critical-element search.
//!
//! A set `S` is strongly homogeneous when every outside element sees all of
//! `S` with one common value, and that value never exceeds an entry inside
//! `S`. Recognition then splits into the restriction `A[S]` and the
//! contraction `A/S` (one representative of `S` kept), and orderings of the
//! two pieces splice together.

use crate::matrix::{LinearOrder, SymMatrix};
use crate::{Error, Label, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomogeneityWitness {
    CriticalElement(Label),
    /// A proper strongly homogeneous set, in matrix order.
    StronglyHomogeneousSet(Vec<Label>),
}

pub fn is_strongly_homogeneous(a: &SymMatrix, set: &[Label]) -> Result<bool> {
    let positions = a.positions_of(set)?;
    Ok(strongly_homogeneous_at(a, &positions))
}

pub(crate) fn strongly_homogeneous_at(a: &SymMatrix, set: &[usize]) -> bool {
    let n = a.n();
    let mut inside = vec![false; n];
    for &p in set {
        inside[p] = true;
    }
    let members: Vec<usize> = (0..n).filter(|&p| inside[p]).collect();
    if members.len() <= 1 || members.len() == n {
        return true;
    }
    let mut top = None;
    for x in (0..n).filter(|&x| !inside[x]) {
        let row = a.rank_row(x);
        let seen = row[members[0]];
        if members.iter().any(|&y| row[y] != seen) {
            return false;
        }
        top = top.max(Some(seen));
    }
    let top = top.expect("some element lies outside a proper subset");
    members
        .iter()
        .enumerate()
        .all(|(i, &y)| members[i + 1..].iter().all(|&z| a.rank(y, z) >= top))
}

fn check_proper(a: &SymMatrix, set: &[usize]) -> Result<()> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != set.len() {
        return Err(Error::NotDistinct);
    }
    if set.len() < 2 || set.len() + 1 > a.n() {
        return Err(Error::Precondition(format!(
            "a set of {} elements is not proper in a matrix of size {}",
            set.len(),
            a.n()
        )));
    }
    Ok(())
}

/// `A/S`: the principal submatrix on the complement of `S` plus its
/// smallest-position element, which is returned as the representative.
pub fn contract(a: &SymMatrix, set: &[Label]) -> Result<(SymMatrix, Label)> {
    let positions = a.positions_of(set)?;
    check_proper(a, &positions)?;
    if !strongly_homogeneous_at(a, &positions) {
        return Err(Error::Precondition("set is not strongly homogeneous".into()));
    }
    let s = *positions.iter().min().expect("proper sets are non-empty");
    let mut inside = vec![false; a.n()];
    for &p in &positions {
        inside[p] = true;
    }
    let keep: Vec<usize> = (0..a.n()).filter(|&p| !inside[p] || p == s).collect();
    Ok((a.principal(&keep), a.label(s)))
}

/// Replaces `representative` in `outer` (an ordering of `A/S`) by `inner`
/// (an ordering of `A[S]`).
pub fn merge_orderings(
    inner: &LinearOrder,
    outer: &LinearOrder,
    representative: Label,
) -> Result<LinearOrder> {
    let at = outer
        .as_slice()
        .iter()
        .position(|&l| l == representative)
        .ok_or(Error::UnknownLabel(representative))?;
    let o = outer.as_slice();
    let mut merged = Vec::with_capacity(o.len() + inner.len() - 1);
    merged.extend_from_slice(&o[..at]);
    merged.extend_from_slice(inner.as_slice());
    merged.extend_from_slice(&o[at + 1..]);
    Ok(LinearOrder::new(merged))
}

/// Finds a critical element or a proper strongly homogeneous set by
/// shrinking `Z`, starting from everything but `start`.
///
/// Each round either (i) narrows `Z` to the elements an outside `v` sees
/// with minimum value, when that is a strict subset, or (ii) with `Z`
/// homogeneous, drops one `z` for which some outside `x` and inside `y` have
/// `A[x][y] = A[x][z] > A[y][z]`; if no such `z` exists `Z` is returned.
/// A surviving singleton is critical. Ties pick the smallest position.
pub fn critical_or_homogeneous(a: &SymMatrix, start: Label) -> Result<HomogeneityWitness> {
    let s = a.pos(start)?;
    if a.n() < 2 {
        return Err(Error::Precondition("need at least two elements".into()));
    }
    Ok(critical_or_homogeneous_at(a, s))
}

pub(crate) fn critical_or_homogeneous_at(a: &SymMatrix, start: usize) -> HomogeneityWitness {
    let n = a.n();
    let mut in_z = vec![true; n];
    in_z[start] = false;
    let mut z: Vec<usize> = (0..n).filter(|&p| p != start).collect();
    while z.len() > 1 {
        let narrowing = (0..n).filter(|&v| !in_z[v]).find_map(|v| {
            let row = a.rank_row(v);
            let low = z.iter().map(|&w| row[w]).min().expect("Z is non-empty");
            z.iter().any(|&w| row[w] != low).then_some((v, low))
        });
        if let Some((v, low)) = narrowing {
            let row = a.rank_row(v);
            z.retain(|&w| {
                let keep = row[w] == low;
                in_z[w] = keep;
                keep
            });
            continue;
        }
        // Z is homogeneous: each outside element sees it with one value.
        let top = (0..n)
            .filter(|&v| !in_z[v])
            .map(|v| a.rank(v, z[0]))
            .max()
            .expect("start lies outside Z");
        let dropped = z
            .iter()
            .position(|&w| z.iter().any(|&y| y != w && a.rank(y, w) < top));
        match dropped {
            Some(i) => {
                in_z[z[i]] = false;
                z.remove(i);
            }
            None => return HomogeneityWitness::StronglyHomogeneousSet(a.labels_of(&z)),
        }
    }
    HomogeneityWitness::CriticalElement(a.label(z[0]))
}
