//! The certifying recognition algorithm.
//!
//! [`certify`] splits on proper strongly homogeneous sets until it holds a
//! critical element, then hands off to [`certify_with_critical`]. That
//! routine layers the matrix from the critical root `a`, finds the opposite
//! critical end `b`, picks the pivot `c` where the two layerings meet, and
//! recurses on two smaller matrices: one on the `a` side plus `c`, one on
//! the `b` side plus `c`. In both, the entries of `c` are pushed below every
//! other entry while keeping their order by layer first and by original
//! value second. Two compatible orderings glue along `c`; anything else is
//! turned back into a strongly homogeneous set or a weighted asteroidal
//! triple of the current matrix.
//!
//! Each structural step only nominates candidate triples. Witness paths are
//! always rebuilt by breadth-first search in the current matrix and checked,
//! with a full enumeration as the last resort, so every returned certificate
//! is valid for the matrix it claims to describe.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use crate::avoidance::is_critical_at;
use crate::certificates::{make_wat_at, Certificate, WeightedAsteroidalTriple};
use crate::decomposition::{
    contract, critical_or_homogeneous_at, merge_orderings, strongly_homogeneous_at,
    HomogeneityWitness,
};
use crate::layers::{check_layer_stars_at, layers_at, wat_from_noncover_at, Layers, StarCheck};
use crate::matrix::{LinearOrder, OrderVerdict, SymMatrix};
use crate::values::{EntryValue, ORIGINAL_TIER};
use crate::wat_enum::find_one_wat_at;
use crate::{Error, Label, Result};

static FALLBACK_SEARCHES: AtomicUsize = AtomicUsize::new(0);

/// Number of times, process-wide, that none of the nominated candidate
/// triples verified and the certifier fell back to a full search.
pub fn fallback_searches() -> usize {
    FALLBACK_SEARCHES.load(AtomicOrdering::Relaxed)
}

/// Result of [`certify_with_critical`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    /// A proper strongly homogeneous set, in matrix order.
    StronglyHomogeneous(Vec<Label>),
    Wat(WeightedAsteroidalTriple),
    /// A Robinson ordering that starts at the root and never places an
    /// element before one from an earlier layer of the root.
    CompatibleOrdering(LinearOrder),
}

/// Returns a Robinson ordering of `a` or a weighted asteroidal triple.
///
/// The returned certificate has been re-verified against `a`.
pub fn certify(a: &SymMatrix) -> Result<Certificate> {
    let cert = certify_rec(a)?;
    if !cert.verify(a)? {
        return Err(Error::Invariant(
            "certificate failed its own verification".into(),
        ));
    }
    Ok(cert)
}

/// Whether `a` is Robinsonian.
pub fn is_robinsonian(a: &SymMatrix) -> Result<bool> {
    Ok(certify(a)?.is_robinsonian())
}

fn certify_rec(a: &SymMatrix) -> Result<Certificate> {
    if a.n() <= 2 {
        return Ok(LinearOrder::new(a.labels().to_vec()).into());
    }
    let set = match critical_or_homogeneous_at(a, 0) {
        HomogeneityWitness::CriticalElement(c) => match solve_critical(a, a.pos(c)?)? {
            CertifyOutcome::Wat(w) => return Ok(w.into()),
            CertifyOutcome::CompatibleOrdering(o) => return Ok(o.into()),
            CertifyOutcome::StronglyHomogeneous(s) => s,
        },
        HomogeneityWitness::StronglyHomogeneousSet(s) => s,
    };
    reduce(a, &set)
}

/// Recognises `A[S]` and `A/S` and combines the answers.
fn reduce(a: &SymMatrix, set: &[Label]) -> Result<Certificate> {
    let inner = a.restrict(set)?;
    let (outer, rep) =
        contract(a, set).map_err(|e| Error::Invariant(format!("bad reduction set: {e}")))?;
    shrinks(a, inner.n())?;
    shrinks(a, outer.n())?;
    let (ci, co) = rayon::join(|| certify_rec(&inner), || certify_rec(&outer));
    match (ci?, co?) {
        (Certificate::NotRobinsonian { wat }, _) | (_, Certificate::NotRobinsonian { wat }) => {
            Ok(wat.into())
        }
        (
            Certificate::RobinsonOrdering { ordering: oi },
            Certificate::RobinsonOrdering { ordering: oo },
        ) => Ok(merge_orderings(&oi, &oo, rep)?.into()),
    }
}

fn shrinks(a: &SymMatrix, m: usize) -> Result<()> {
    if m >= a.n() {
        return Err(Error::Invariant(format!(
            "recursive call on size {m} does not shrink size {}",
            a.n()
        )));
    }
    Ok(())
}

/// Given a critical element `a`, finds a proper strongly homogeneous set, a
/// weighted asteroidal triple, or a Robinson ordering compatible with the
/// similarity layers rooted at `a`.
pub fn certify_with_critical(a: &SymMatrix, root: Label) -> Result<CertifyOutcome> {
    let r = a.pos(root)?;
    if a.n() < 3 {
        return Err(Error::Precondition("need at least three elements".into()));
    }
    if !is_critical_at(a, r) {
        return Err(Error::Precondition(format!("{root} is not critical")));
    }
    solve_critical(a, r)
}

/// Layers from a critical root, stopping early with an outcome when they
/// already decide the matrix.
fn examine(a: &SymMatrix, root: usize) -> Result<std::result::Result<Layers, CertifyOutcome>> {
    let layers = layers_at(a, root);
    if !layers.covered() {
        return Ok(Err(CertifyOutcome::Wat(wat_from_noncover_at(a, &layers)?)));
    }
    if let StarCheck::Violated(w) = check_layer_stars_at(a, &layers)? {
        return Ok(Err(CertifyOutcome::Wat(w)));
    }
    if layers.last().len() >= 2 {
        return Ok(Err(CertifyOutcome::StronglyHomogeneous(
            a.labels_of(layers.last()),
        )));
    }
    Ok(Ok(layers))
}

fn solve_critical(a: &SymMatrix, root: usize) -> Result<CertifyOutcome> {
    let n = a.n();
    if n <= 2 {
        let mut order = vec![a.label(root)];
        order.extend((0..n).filter(|&p| p != root).map(|p| a.label(p)));
        return Ok(CertifyOutcome::CompatibleOrdering(order.into()));
    }

    let psi_a = match examine(a, root)? {
        Ok(l) => l,
        Err(outcome) => return Ok(outcome),
    };
    let b = psi_a.last()[0];
    if cfg!(debug_assertions) && !is_critical_at(a, b) {
        return Err(Error::Invariant("single last layer is not critical".into()));
    }
    let psi_b = match examine(a, b)? {
        Ok(l) => l,
        Err(outcome) => return Ok(outcome),
    };
    let (la, lb) = (&psi_a.layer_of, &psi_b.layer_of);

    // The root layering must run against the reverse of the one from b.
    for x in 0..n {
        for y in 0..n {
            if la[x] < la[y] && lb[x] < lb[y] {
                return first_valid_wat(a, &[[root, b, y]]).map(CertifyOutcome::Wat);
            }
        }
    }
    let (k, l) = (psi_a.k(), psi_b.k());
    if psi_b.last() != [root] || k < 2 || l < 2 {
        return Err(Error::Invariant("compatible layerings lack their ends".into()));
    }

    // Pivot: the part of X_{k-1} in the deepest layer of b it reaches.
    let before_last = &psi_a.layers[k - 1];
    let j_star = before_last.iter().map(|&v| lb[v]).max().expect("k >= 2");
    let meet: Vec<usize> = before_last
        .iter()
        .copied()
        .filter(|&v| lb[v] == j_star)
        .collect();
    if meet.len() >= 2 {
        if !strongly_homogeneous_at(a, &meet) {
            return Err(Error::Invariant("meet set is not strongly homogeneous".into()));
        }
        return Ok(CertifyOutcome::StronglyHomogeneous(a.labels_of(&meet)));
    }
    let c = meet[0];

    let x_side: Vec<usize> = (0..n).filter(|&v| la[v] + 2 <= k).collect();
    let y_side: Vec<usize> = (0..n).filter(|&v| lb[v] < j_star).collect();
    if x_side.len() + y_side.len() + 1 != n
        || x_side.iter().any(|&v| lb[v] < j_star)
        || y_side.contains(&c)
    {
        return Err(Error::Invariant("pivot does not split the elements".into()));
    }

    let tier = a.lowest_tier().min(ORIGINAL_TIER) - 1;
    let ax = pivot_matrix(a, &x_side, c, tier, lb)?;
    let ay = pivot_matrix(a, &y_side, c, tier, la)?;
    shrinks(a, ax.n())?;
    shrinks(a, ay.n())?;
    let (rx, ry) = (ax.pos(a.label(root))?, ay.pos(a.label(b))?);
    if cfg!(debug_assertions) {
        expect_shape(a, &ax, rx, &psi_a.layers[1..k - 1], c)?;
        expect_shape(a, &ay, ry, &psi_b.layers[1..j_star], c)?;
    }

    let (ox, oy) = rayon::join(|| solve_critical(&ax, rx), || solve_critical(&ay, ry));
    let sides = [(ox?, b), (oy?, root)];

    for (outcome, _) in &sides {
        if let CertifyOutcome::StronglyHomogeneous(set) = outcome {
            let s = a.positions_of(set)?;
            if strongly_homogeneous_at(a, &s) {
                return Ok(CertifyOutcome::StronglyHomogeneous(set.clone()));
            }
            let mut candidates = Vec::new();
            for (i, &x) in s.iter().enumerate() {
                for &y in &s[i + 1..] {
                    if a.rank(c, x) == a.rank(c, y) && a.rank(c, x) > a.rank(x, y) {
                        candidates.push([x, y, c]);
                    }
                }
            }
            return first_valid_wat(a, &candidates).map(CertifyOutcome::Wat);
        }
    }

    for (outcome, far_end) in &sides {
        if let CertifyOutcome::Wat(w) = outcome {
            let t = a.positions_of(&w.triple())?;
            let mut candidates = vec![[t[0], t[1], t[2]]];
            if let Some(i) = t.iter().position(|&v| v == c) {
                let rest: Vec<usize> = t.iter().copied().filter(|&v| v != t[i]).collect();
                candidates.push([*far_end, rest[0], rest[1]]);
            }
            return first_valid_wat(a, &candidates).map(CertifyOutcome::Wat);
        }
    }

    let (sx, sy) = match sides {
        [(CertifyOutcome::CompatibleOrdering(sx), _), (CertifyOutcome::CompatibleOrdering(sy), _)] => {
            (sx, sy)
        }
        _ => unreachable!("other outcomes returned above"),
    };
    let (sx, sy) = (a.positions_of(sx.as_slice())?, a.positions_of(sy.as_slice())?);
    if sx.first() != Some(&root) || sx.last() != Some(&c) || sy.first() != Some(&b) || sy.last() != Some(&c)
    {
        return Err(Error::Invariant("side orderings do not run between their ends".into()));
    }
    let sigma: Vec<usize> = sx.iter().chain(sy.iter().rev().skip(1)).copied().collect();
    match a.verify_positions(&sigma) {
        OrderVerdict::Valid => {
            let mut seen_layer = 0;
            for &v in &sigma {
                if la[v] < seen_layer {
                    return Err(Error::Invariant("glued ordering breaks the root layers".into()));
                }
                seen_layer = la[v];
            }
            Ok(CertifyOutcome::CompatibleOrdering(a.labels_of(&sigma).into()))
        }
        OrderVerdict::Violation { x, y, z } => {
            let (x, y, z) = (a.pos(x)?, a.pos(y)?, a.pos(z)?);
            let candidates = [
                [x, y, z],
                [root, y, z],
                [b, y, z],
                [c, y, z],
                [x, y, c],
                [c, x, y],
            ];
            first_valid_wat(a, &candidates).map(CertifyOutcome::Wat)
        }
    }
}

/// `A[side]` plus the pivot `c`, whose entries move to a new bottom tier at
/// level `-layer[v]`, keeping the replaced entry as tie-breaker.
fn pivot_matrix(
    a: &SymMatrix,
    side: &[usize],
    c: usize,
    tier: i32,
    layer: &[usize],
) -> Result<SymMatrix> {
    let mut keep = side.to_vec();
    keep.push(c);
    keep.sort_unstable();
    let mut err = None;
    let m = SymMatrix::from_fn(a.labels_of(&keep), |i, j| {
        let (u, v) = (keep[i], keep[j]);
        if u != c && v != c {
            return a.entry(u, v).clone();
        }
        let other = if u == c { v } else { u };
        EntryValue::transformed_in_tier(tier, -(layer[other] as i64), a.entry(c, other))
            .unwrap_or_else(|e| {
                err = Some(e);
                EntryValue::from_integer(0)
            })
    })?;
    match err {
        Some(e) => Err(Error::Invariant(format!("pivot transformation: {e}"))),
        None => Ok(m),
    }
}

/// The side matrix layered from its root must be the root, the given middle
/// layers, then the pivot alone.
fn expect_shape(
    a: &SymMatrix,
    side: &SymMatrix,
    root: usize,
    middle: &[Vec<usize>],
    c: usize,
) -> Result<()> {
    let got = layers_at(side, root).to_public(side);
    let mut want = vec![vec![side.label(root)]];
    want.extend(middle.iter().map(|l| a.labels_of(l)));
    want.push(vec![a.label(c)]);
    if !got.covered || got.layers != want {
        return Err(Error::Invariant(format!(
            "side layers {:?} differ from the expected {:?}",
            got.layers, want
        )));
    }
    Ok(())
}

/// First candidate triple that carries witnessing paths in `a`; a full
/// search when none does.
fn first_valid_wat(a: &SymMatrix, candidates: &[[usize; 3]]) -> Result<WeightedAsteroidalTriple> {
    for &[x, y, z] in candidates {
        if x == y || y == z || x == z {
            continue;
        }
        if let Some(w) = make_wat_at(a, x, y, z) {
            return Ok(w);
        }
    }
    FALLBACK_SEARCHES.fetch_add(1, AtomicOrdering::Relaxed);
    find_one_wat_at(a).ok_or_else(|| {
        Error::Invariant("structure promised a weighted asteroidal triple but none exists".into())
    })
}
