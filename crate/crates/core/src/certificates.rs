//! Certificates and their verifiers.
//!
//! Verification only reads matrix entries: an ordering is checked triple by
//! triple (in quadratic time), a weighted asteroidal triple edge by edge
//! along its three paths. Nothing here calls back into recognition.

use serde::{Deserialize, Serialize};

use crate::avoidance::{find_path_at, Path, PathDefect};
use crate::matrix::{LinearOrder, OrderVerdict, SymMatrix};
use crate::{Error, Label, Result};

/// Three elements, each pair joined by a path avoiding the third.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedAsteroidalTriple {
    pub x: Label,
    pub y: Label,
    pub z: Label,
    /// From `x` to `y`, avoiding `z`.
    pub p_xy: Path,
    /// From `x` to `z`, avoiding `y`.
    pub p_xz: Path,
    /// From `y` to `z`, avoiding `x`.
    pub p_yz: Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    RobinsonOrdering { ordering: LinearOrder },
    NotRobinsonian { wat: WeightedAsteroidalTriple },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathName {
    Xy,
    Xz,
    Yz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WatVerdict {
    Valid,
    Invalid { path: PathName, defect: PathDefect },
}

impl WatVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, WatVerdict::Valid)
    }
}

impl WeightedAsteroidalTriple {
    pub fn triple(&self) -> [Label; 3] {
        [self.x, self.y, self.z]
    }

    pub fn paths(&self) -> [(PathName, &Path); 3] {
        [
            (PathName::Xy, &self.p_xy),
            (PathName::Xz, &self.p_xz),
            (PathName::Yz, &self.p_yz),
        ]
    }

    /// Union of the node sets of the three paths.
    pub fn cycle(&self) -> Vec<Label> {
        let mut v: Vec<Label> = self
            .paths()
            .iter()
            .flat_map(|(_, p)| p.nodes.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Certificate {
    pub fn is_robinsonian(&self) -> bool {
        matches!(self, Certificate::RobinsonOrdering { .. })
    }

    pub fn ordering(&self) -> Option<&LinearOrder> {
        match self {
            Certificate::RobinsonOrdering { ordering } => Some(ordering),
            Certificate::NotRobinsonian { .. } => None,
        }
    }

    pub fn wat(&self) -> Option<&WeightedAsteroidalTriple> {
        match self {
            Certificate::NotRobinsonian { wat } => Some(wat),
            Certificate::RobinsonOrdering { .. } => None,
        }
    }

    /// True iff the certificate holds for `a`.
    pub fn verify(&self, a: &SymMatrix) -> Result<bool> {
        match self {
            Certificate::RobinsonOrdering { ordering } => {
                Ok(a.verify_ordering(ordering)?.is_valid())
            }
            Certificate::NotRobinsonian { wat } => Ok(verify_wat(a, wat)?.is_valid()),
        }
    }
}

impl From<WeightedAsteroidalTriple> for Certificate {
    fn from(wat: WeightedAsteroidalTriple) -> Self {
        Certificate::NotRobinsonian { wat }
    }
}

impl From<LinearOrder> for Certificate {
    fn from(ordering: LinearOrder) -> Self {
        Certificate::RobinsonOrdering { ordering }
    }
}

/// Checks the three witnessing paths against `a`.
///
/// Declared endpoints or avoided elements that do not match the triple are
/// reported as errors; a path that breaks the avoidance condition yields
/// [`WatVerdict::Invalid`] naming the first failing edge.
pub fn verify_wat(a: &SymMatrix, w: &WeightedAsteroidalTriple) -> Result<WatVerdict> {
    for l in w.triple() {
        a.pos(l)?;
    }
    if w.x == w.y || w.y == w.z || w.x == w.z {
        return Err(Error::NotDistinct);
    }
    let expect = [
        (PathName::Xy, w.x, w.y, w.z),
        (PathName::Xz, w.x, w.z, w.y),
        (PathName::Yz, w.y, w.z, w.x),
    ];
    for ((name, path), (_, from, to, avoided)) in w.paths().into_iter().zip(expect) {
        if path.start() != Some(from) || path.end() != Some(to) || path.avoided != avoided {
            return Err(Error::Certificate(format!(
                "path {name:?} must run from {from} to {to} avoiding {avoided}"
            )));
        }
    }
    for (name, path) in w.paths() {
        if let Err(defect) = path.check(a) {
            return Ok(WatVerdict::Invalid { path: name, defect });
        }
    }
    Ok(WatVerdict::Valid)
}

/// Verdict of an ordering, re-exported here so both certificate kinds have a
/// verifier in this module.
pub fn verify_robinson_ordering(a: &SymMatrix, order: &LinearOrder) -> Result<OrderVerdict> {
    a.verify_ordering(order)
}

/// Builds a weighted asteroidal triple on `{x, y, z}` with shortest
/// witnessing paths, or `None` if one of the three relations fails. The
/// triple is listed in matrix order.
pub fn make_wat(a: &SymMatrix, x: Label, y: Label, z: Label) -> Result<Option<WeightedAsteroidalTriple>> {
    let (px, py, pz) = (a.pos(x)?, a.pos(y)?, a.pos(z)?);
    if px == py || py == pz || px == pz {
        return Err(Error::NotDistinct);
    }
    Ok(make_wat_at(a, px, py, pz))
}

pub(crate) fn make_wat_at(
    a: &SymMatrix,
    px: usize,
    py: usize,
    pz: usize,
) -> Option<WeightedAsteroidalTriple> {
    let mut t = [px, py, pz];
    t.sort_unstable();
    let [x, y, z] = t;
    let path = |from: usize, to: usize, avoid: usize| {
        find_path_at(a, from, to, avoid).map(|p| Path {
            nodes: a.labels_of(&p),
            avoided: a.label(avoid),
        })
    };
    let p_xy = path(x, y, z)?;
    let p_xz = path(x, z, y)?;
    let p_yz = path(y, z, x)?;
    Some(WeightedAsteroidalTriple {
        x: a.label(x),
        y: a.label(y),
        z: a.label(z),
        p_xy,
        p_xz,
        p_yz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn claw() -> SymMatrix {
        SymMatrix::from_integer_rows(&[
            [0, 1, 1, 1],
            [1, 0, 0, 0],
            [1, 0, 0, 0],
            [1, 0, 0, 0],
        ])
        .unwrap()
    }

    fn c4() -> SymMatrix {
        // cycle 0-1-2-3-0
        SymMatrix::from_integer_rows(&[
            [0, 1, 0, 1],
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [1, 0, 1, 0],
        ])
        .unwrap()
    }

    fn path(nodes: Vec<Label>, avoided: Label) -> Path {
        Path { nodes, avoided }
    }

    #[test]
    fn claw_leaves_form_a_wat() {
        let a = claw();
        let w = WeightedAsteroidalTriple {
            x: 1,
            y: 2,
            z: 3,
            p_xy: path(vec![1, 0, 2], 3),
            p_xz: path(vec![1, 0, 3], 2),
            p_yz: path(vec![2, 0, 3], 1),
        };
        assert_eq!(verify_wat(&a, &w).unwrap(), WatVerdict::Valid);
        assert_eq!(make_wat(&a, 3, 1, 2).unwrap(), Some(w));
    }

    #[test]
    fn c4_wat_from_cycle() {
        let a = c4();
        // x1..x4 = 0..3, triple {x1, x2, x4}
        let w = WeightedAsteroidalTriple {
            x: 0,
            y: 1,
            z: 3,
            p_xy: path(vec![0, 1], 3),
            p_xz: path(vec![0, 3], 1),
            p_yz: path(vec![1, 2, 3], 0),
        };
        assert!(verify_wat(&a, &w).unwrap().is_valid());
    }

    #[test]
    fn constant_matrix_rejects_claims() {
        let a = SymMatrix::constant(4, 2).unwrap();
        let w = WeightedAsteroidalTriple {
            x: 1,
            y: 2,
            z: 3,
            p_xy: path(vec![1, 0, 2], 3),
            p_xz: path(vec![1, 0, 3], 2),
            p_yz: path(vec![2, 0, 3], 1),
        };
        assert_eq!(
            verify_wat(&a, &w).unwrap(),
            WatVerdict::Invalid {
                path: PathName::Xy,
                defect: PathDefect::EdgeNotAvoiding { index: 0, u: 1, w: 0 }
            }
        );
        assert_eq!(make_wat(&a, 1, 2, 3).unwrap(), None);
    }

    #[test]
    fn mismatched_paths_are_errors() {
        let a = claw();
        let mut w = make_wat(&a, 1, 2, 3).unwrap().unwrap();
        w.p_xz.avoided = 0;
        assert!(matches!(verify_wat(&a, &w), Err(Error::Certificate(_))));
        let mut w = make_wat(&a, 1, 2, 3).unwrap().unwrap();
        w.p_yz.nodes.reverse();
        assert!(matches!(verify_wat(&a, &w), Err(Error::Certificate(_))));
    }

    #[test]
    fn robinson_matrix_has_no_wat() {
        // entries decrease away from the diagonal in the identity order
        let a = SymMatrix::from_integer_rows(&[
            [0, 9, 7, 4, 1],
            [9, 0, 8, 5, 2],
            [7, 8, 0, 6, 3],
            [4, 5, 6, 0, 5],
            [1, 2, 3, 5, 0],
        ])
        .unwrap();
        assert!(a
            .verify_ordering(&a.labels().to_vec().into())
            .unwrap()
            .is_valid());
        for x in 0..5 {
            for y in x + 1..5 {
                for z in y + 1..5 {
                    assert_eq!(make_wat(&a, x, y, z).unwrap(), None);
                }
            }
        }
    }

    #[test]
    fn certificate_serde_shape() {
        let c = Certificate::from(LinearOrder::new(vec![2, 0, 1]));
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"robinson_ordering","ordering":[2,0,1]}"#);
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
