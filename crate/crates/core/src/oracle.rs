//! Brute-force ground truth for small matrices.
//!
//! Nothing here uses the recognition code or its rank tables: entries are
//! copied out as values and both questions are answered straight from the
//! definitions. The ordering search extends prefixes and abandons one as
//! soon as it holds a non-Robinson triple, which still visits every
//! permutation that could succeed.

use crate::matrix::{LinearOrder, SymMatrix};
use crate::values::EntryValue;
use crate::{Error, Label, Result};

pub const ORACLE_MAX_N: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub robinsonian: bool,
    /// A Robinson ordering, when one exists.
    pub witness: Option<LinearOrder>,
    /// Every weighted asteroidal triple, in matrix order, ascending.
    pub all_wats: Vec<[Label; 3]>,
}

pub fn brute_force_certify(a: &SymMatrix) -> Result<OracleVerdict> {
    let n = a.n();
    if n > ORACLE_MAX_N {
        return Err(Error::SizeBound { n, max: ORACLE_MAX_N });
    }
    let m = a.to_rows();
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let witness = if extend(&m, &mut prefix, &mut used) {
        Some(LinearOrder::new(a.labels_of(&prefix)))
    } else {
        None
    };
    let mut all_wats = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                if connected(&m, x, y, z) && connected(&m, x, z, y) && connected(&m, y, z, x) {
                    all_wats.push([a.label(x), a.label(y), a.label(z)]);
                }
            }
        }
    }
    Ok(OracleVerdict {
        robinsonian: witness.is_some(),
        witness,
        all_wats,
    })
}

fn extend(m: &[Vec<EntryValue>], prefix: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = m.len();
    if prefix.len() == n {
        return true;
    }
    for z in 0..n {
        if used[z] {
            continue;
        }
        let fits = prefix.iter().enumerate().all(|(i, &x)| {
            prefix[i + 1..]
                .iter()
                .all(|&y| m[x][z] <= m[x][y] && m[x][z] <= m[y][z])
        });
        if !fits {
            continue;
        }
        used[z] = true;
        prefix.push(z);
        if extend(m, prefix, used) {
            return true;
        }
        prefix.pop();
        used[z] = false;
    }
    false
}

/// Whether `x` reaches `y` through pairs `(u, w)` with
/// `A[u][w] > min(A[u][z], A[w][z])`, never visiting `z`.
fn connected(m: &[Vec<EntryValue>], x: usize, y: usize, z: usize) -> bool {
    let n = m.len();
    let mut seen = vec![false; n];
    seen[x] = true;
    seen[z] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        if u == y {
            return true;
        }
        for w in 0..n {
            if !seen[w] && m[u][w] > *std::cmp::min(&m[u][z], &m[w][z]) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_three() {
        let v = brute_force_certify(&SymMatrix::constant(3, 0).unwrap()).unwrap();
        assert!(v.robinsonian);
        assert!(v.all_wats.is_empty());
        assert_eq!(v.witness.unwrap().len(), 3);
    }

    #[test]
    fn claw() {
        let a = SymMatrix::from_integer_rows(&[
            [0, 1, 1, 1],
            [1, 0, 0, 0],
            [1, 0, 0, 0],
            [1, 0, 0, 0],
        ])
        .unwrap();
        let v = brute_force_certify(&a).unwrap();
        assert!(!v.robinsonian);
        assert!(v.witness.is_none());
        assert_eq!(v.all_wats, vec![[1, 2, 3]]);
    }

    #[test]
    fn witness_verifies_and_bound_holds() {
        let a = SymMatrix::from_integer_rows(&[
            [0, 1, 5, 3],
            [1, 0, 2, 4],
            [5, 2, 0, 3],
            [3, 4, 3, 0],
        ])
        .unwrap();
        let v = brute_force_certify(&a).unwrap();
        if let Some(w) = &v.witness {
            assert!(a.verify_ordering(w).unwrap().is_valid());
        }
        assert_eq!(v.robinsonian, v.all_wats.is_empty());
        let big = SymMatrix::constant(10, 0).unwrap();
        assert!(matches!(
            brute_force_certify(&big),
            Err(Error::SizeBound { n: 10, max: 9 })
        ));
    }
}
