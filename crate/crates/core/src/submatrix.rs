//! Maximal Robinsonian submatrices and minimal obstructions.
//!
//! `I_A` collects the maximal sets `I` with `A[I]` Robinsonian, `F_A` their
//! complements (the minimal deletion sets), and `C_A` the minimal sets `C`
//! with `A[C]` not Robinsonian. `C_A` is the family of minimal transversals
//! of `F_A`. Exact enumeration is by brute force over subsets and only meant
//! for small matrices.

use rayon::prelude::*;

use crate::certify::certify;
use crate::matrix::{LinearOrder, SymMatrix};
use crate::wat_enum::wat_triples;
use crate::{Error, Label, Result};

/// Largest matrix [`enumerate_families`] accepts by default.
pub const FAMILY_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFamilies {
    /// `I_A`; each set in matrix order, sets ordered by bitmask.
    pub maximal_robinsonian: Vec<Vec<Label>>,
    /// `F_A`, aligned with `maximal_robinsonian`.
    pub minimal_deletions: Vec<Vec<Label>>,
    /// `C_A`, ordered by bitmask.
    pub minimal_cycles: Vec<Vec<Label>>,
}

fn robinsonian_on(a: &SymMatrix, set: &[Label]) -> Result<bool> {
    if set.len() <= 2 {
        return Ok(true);
    }
    Ok(certify(&a.restrict(set)?)?.is_robinsonian())
}

fn check_labels(a: &SymMatrix, set: &[Label]) -> Result<Vec<usize>> {
    let mut p = a.positions_of(set)?;
    p.sort_unstable();
    if p.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::NotDistinct);
    }
    Ok(p)
}

/// Whether `A[I]` is Robinsonian and no single added element keeps it so.
pub fn is_maximal_robinsonian(a: &SymMatrix, set: &[Label]) -> Result<bool> {
    let inside = check_labels(a, set)?;
    if !robinsonian_on(a, set)? {
        return Ok(false);
    }
    for x in (0..a.n()).filter(|p| inside.binary_search(p).is_err()) {
        let mut grown = set.to_vec();
        grown.push(a.label(x));
        if robinsonian_on(a, &grown)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `A[C]` is not Robinsonian while every `A[C - x]` is.
pub fn is_minimal_wa_cycle(a: &SymMatrix, set: &[Label]) -> Result<bool> {
    check_labels(a, set)?;
    if set.len() < 3 {
        return Err(Error::Precondition("a cycle has at least three elements".into()));
    }
    if robinsonian_on(a, set)? {
        return Ok(false);
    }
    for skip in 0..set.len() {
        let rest: Vec<Label> = set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &l)| l).collect();
        if !robinsonian_on(a, &rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn members(a: &SymMatrix, mask: u32) -> Vec<Label> {
    (0..a.n()).filter(|&p| mask >> p & 1 == 1).map(|p| a.label(p)).collect()
}

/// The three families, with [`FAMILY_MAX_N`] as the size bound.
pub fn enumerate_families(a: &SymMatrix) -> Result<SubsetFamilies> {
    enumerate_families_bounded(a, FAMILY_MAX_N)
}

/// Exhaustive scan of all subsets.
///
/// Robinsonian submatrices are closed under taking subsets, so a set needs
/// a recognition call only when all of its one-smaller subsets passed. The
/// result is checked against the transversal characterisation of `C_A`
/// before it is returned.
pub fn enumerate_families_bounded(a: &SymMatrix, max_n: usize) -> Result<SubsetFamilies> {
    let n = a.n();
    if n > max_n || n > 20 {
        return Err(Error::SizeBound { n, max: max_n.min(20) });
    }
    let full: u32 = (1u32 << n) - 1;
    let mut rob = vec![false; 1 << n];
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0..=full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for (size, masks) in by_size.iter().enumerate() {
        let verdicts: Vec<(u32, bool)> = masks
            .par_iter()
            .map(|&mask| {
                if size <= 2 {
                    return Ok((mask, true));
                }
                let heirs = (0..n).filter(|&p| mask >> p & 1 == 1).all(|p| rob[(mask & !(1 << p)) as usize]);
                Ok((mask, heirs && robinsonian_on(a, &members(a, mask))?))
            })
            .collect::<Result<_>>()?;
        for (mask, r) in verdicts {
            rob[mask as usize] = r;
        }
    }

    let maximal: Vec<u32> = (0..=full)
        .filter(|&m| rob[m as usize] && (0..n).all(|p| m >> p & 1 == 1 || !rob[(m | 1 << p) as usize]))
        .collect();
    let deletions: Vec<u32> = maximal.iter().map(|&m| full & !m).collect();
    let cycles: Vec<u32> = (0..=full)
        .filter(|&m| !rob[m as usize] && (0..n).all(|p| m >> p & 1 == 0 || rob[(m & !(1 << p)) as usize]))
        .collect();

    let hits_all = |m: u32| deletions.iter().all(|&d| m & d != 0);
    let transversals: Vec<u32> = (0..=full)
        .filter(|&m| hits_all(m) && (0..n).all(|p| m >> p & 1 == 0 || !hits_all(m & !(1 << p))))
        .collect();
    if transversals != cycles {
        return Err(Error::Invariant(
            "minimal non-Robinsonian sets differ from the minimal transversals of the deletion sets".into(),
        ));
    }

    Ok(SubsetFamilies {
        maximal_robinsonian: maximal.iter().map(|&m| members(a, m)).collect(),
        minimal_deletions: deletions.iter().map(|&m| members(a, m)).collect(),
        minimal_cycles: cycles.iter().map(|&m| members(a, m)).collect(),
    })
}

/// Output of [`greedy_robinsonian_core`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyCore {
    /// Kept elements, in matrix order.
    pub kept: Vec<Label>,
    /// Deleted elements, in deletion order.
    pub removed: Vec<Label>,
    /// A Robinson ordering of the kept submatrix.
    pub ordering: LinearOrder,
}

/// Heuristic: deletes elements until the rest is Robinsonian.
///
/// While recognition returns a weighted asteroidal triple, the member of
/// that triple lying in the most weighted asteroidal triples of the current
/// submatrix is deleted (ties to the earliest position). The result is
/// Robinsonian and usually large, but neither maximum nor always maximal.
pub fn greedy_robinsonian_core(a: &SymMatrix) -> Result<GreedyCore> {
    let mut kept = a.labels().to_vec();
    let mut removed = Vec::new();
    loop {
        let cur = a.restrict(&kept)?;
        let wat = match certify(&cur)? {
            crate::Certificate::RobinsonOrdering { ordering } => {
                return Ok(GreedyCore { kept, removed, ordering })
            }
            crate::Certificate::NotRobinsonian { wat } => wat,
        };
        let mut score = vec![0usize; cur.n()];
        for t in wat_triples(&cur) {
            for l in t {
                score[cur.pos(l)?] += 1;
            }
        }
        let mut pick = cur.positions_of(&wat.triple())?;
        pick.sort_unstable();
        let worst = pick
            .into_iter()
            .max_by_key(|&p| (score[p], std::cmp::Reverse(p)))
            .expect("three candidates");
        let label = cur.label(worst);
        kept.retain(|&l| l != label);
        removed.push(label);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adjacency(n: usize, edges: &[(usize, usize)]) -> SymMatrix {
        let mut rows = vec![vec![0i64; n]; n];
        for &(u, v) in edges {
            rows[u][v] = 1;
            rows[v][u] = 1;
        }
        SymMatrix::from_integer_rows(&rows).unwrap()
    }

    fn claw() -> SymMatrix {
        adjacency(4, &[(0, 1), (0, 2), (0, 3)])
    }

    #[test]
    fn membership_oracles() {
        let r = SymMatrix::constant(4, 1).unwrap();
        assert!(is_maximal_robinsonian(&r, &[0, 1, 2, 3]).unwrap());
        assert!(!is_maximal_robinsonian(&r, &[0, 1, 2]).unwrap());
        assert!(is_maximal_robinsonian(&claw(), &[0, 1, 2]).unwrap());
        assert!(is_minimal_wa_cycle(&claw(), &[0, 1, 2, 3]).unwrap());
        let c4 = adjacency(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(is_minimal_wa_cycle(&c4, &[0, 1, 2, 3]).unwrap());
        assert!(!is_minimal_wa_cycle(&r, &[0, 1, 2]).unwrap());
        assert!(is_minimal_wa_cycle(&r, &[0, 1]).is_err());
    }

    #[test]
    fn robinson_families() {
        let f = enumerate_families(&SymMatrix::constant(5, 2).unwrap()).unwrap();
        assert_eq!(f.maximal_robinsonian, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(f.minimal_deletions, vec![Vec::<Label>::new()]);
        assert!(f.minimal_cycles.is_empty());
    }

    #[test]
    fn claw_families() {
        let f = enumerate_families(&claw()).unwrap();
        assert_eq!(f.minimal_cycles, vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            f.maximal_robinsonian,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
        assert_eq!(f.minimal_deletions, vec![vec![3], vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn bound_is_enforced() {
        let big = SymMatrix::constant(13, 0).unwrap();
        assert!(matches!(enumerate_families(&big), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn greedy_core() {
        let g = greedy_robinsonian_core(&claw()).unwrap();
        assert_eq!(g.kept.len(), 3);
        let r = SymMatrix::constant(4, 0).unwrap();
        assert_eq!(greedy_robinsonian_core(&r).unwrap().kept, vec![0, 1, 2, 3]);
    }
}
