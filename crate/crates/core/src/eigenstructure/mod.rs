//! Complete eigenstructure of singular matrix polynomials: invariant
//! factors, partial multiplicities (finite and infinite) and minimal indices.

mod minbasis;
mod smith;

pub use minbasis::{
    columns_to_polymat, convolution_matrix, express_in_basis, is_minimal_basis, minimal_basis,
    MinimalBasis, MinimalityCheck,
};
pub use smith::{invariant_factors, smith_form, SmithForm};

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, rat, rational_roots, Rat, SPoly};
use crate::polymat::PolyMat;

/// Finite and infinite elementary divisors plus right and left minimal indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenstructure {
    pub grade: usize,
    pub rank: usize,
    /// Rational eigenvalue to its partial multiplicities, ascending.
    pub finite: BTreeMap<Rat, Vec<usize>>,
    pub infinite: Vec<usize>,
    pub right: Vec<usize>,
    pub left: Vec<usize>,
    /// Total multiplicity of finite eigenvalues that are not rational.
    pub irrational_degree: usize,
}

impl Eigenstructure {
    pub fn finite_sum(&self) -> usize {
        self.finite.values().flatten().sum::<usize>() + self.irrational_degree
    }

    pub fn infinite_sum(&self) -> usize {
        self.infinite.iter().sum()
    }

    /// Left side of the index sum identity; equals `grade * rank`.
    pub fn index_sum(&self) -> usize {
        self.finite_sum()
            + self.infinite_sum()
            + self.right.iter().sum::<usize>()
            + self.left.iter().sum::<usize>()
    }

    pub fn has_infinite_eigenvalue(&self) -> bool {
        !self.infinite.is_empty()
    }

    pub fn is_eigenvalue(&self, x: &Rat) -> bool {
        self.finite.contains_key(x)
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.irrational_degree > 0 {
            w.push(format!(
                "irrational eigenvalues present: {} finite multiplicities unresolved",
                self.irrational_degree
            ));
        }
        w
    }

    /// Equality of the spectral data, ignoring grade and rank.
    pub fn same_structure(&self, other: &Eigenstructure) -> bool {
        self.finite == other.finite
            && self.infinite == other.infinite
            && self.right == other.right
            && self.left == other.left
            && self.irrational_degree == other.irrational_degree
    }
}

struct FiniteMap<'a>(&'a BTreeMap<Rat, Vec<usize>>);

impl Serialize for FiniteMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&fmt_rat(k), v)?;
        }
        map.end()
    }
}

impl Serialize for Eigenstructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("grade", &self.grade)?;
        map.serialize_entry("rank", &self.rank)?;
        map.serialize_entry("finite", &FiniteMap(&self.finite))?;
        map.serialize_entry("inf", &self.infinite)?;
        map.serialize_entry("right", &self.right)?;
        map.serialize_entry("left", &self.left)?;
        map.serialize_entry("warnings", &self.warnings())?;
        map.end()
    }
}

/// Eigenstructure together with the bases it was read from.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub eig: Eigenstructure,
    pub invariant_factors: Vec<SPoly>,
    pub right_basis: MinimalBasis,
    pub left_basis: MinimalBasis,
}

/// Exponents of `z - x` in a list of invariant factors, ascending, zeros dropped.
fn multiplicities_in(factors: &[SPoly], x: &Rat) -> Vec<usize> {
    let mut v: Vec<usize> = factors
        .iter()
        .filter_map(|d| d.order_at(x))
        .filter(|&e| e > 0)
        .collect();
    v.sort_unstable();
    v
}

/// Partial multiplicities of `x` read from the invariant factors.
pub fn partial_multiplicities_at(p: &PolyMat, x: &Rat) -> Result<Vec<usize>> {
    Ok(multiplicities_in(&invariant_factors(p)?, x))
}

/// Partial multiplicities at infinity, those of the reversal at 0.
pub fn infinite_multiplicities(p: &PolyMat) -> Result<Vec<usize>> {
    partial_multiplicities_at(&p.reversal(p.grade())?, &rat(0))
}

/// Full eigenstructure of `p` with respect to its grade.
///
/// Finite eigenvalues are the rational roots of the last invariant factor,
/// together with any `candidates` that turn out to be eigenvalues. Finite
/// multiplicity that cannot be attributed to rational eigenvalues is
/// reported in `irrational_degree`. The index sum identity is asserted.
pub fn full_eigenstructure(p: &PolyMat, candidates: &[Rat]) -> Result<Eigenstructure> {
    Ok(analyze(p, candidates)?.eig)
}

pub fn analyze(p: &PolyMat, candidates: &[Rat]) -> Result<Analysis> {
    let factors = invariant_factors(p)?;
    let rank = factors.len();
    let mut points: BTreeSet<Rat> = candidates.iter().cloned().collect();
    if let Some(last) = factors.last() {
        points.extend(rational_roots(last)?.roots.into_iter().map(|(x, _)| x));
    }
    let mut finite = BTreeMap::new();
    for x in points {
        let mult = multiplicities_in(&factors, &x);
        if !mult.is_empty() {
            finite.insert(x, mult);
        }
    }
    let total: usize = factors.iter().map(|d| d.degree().unwrap_or(0)).sum();
    let rational: usize = finite.values().flatten().sum();
    let infinite = multiplicities_in(&invariant_factors(&p.reversal(p.grade())?)?, &rat(0));
    let right_basis = minimal_basis(p)?;
    let left_basis = minimal_basis(&p.transpose())?;
    let eig = Eigenstructure {
        grade: p.grade(),
        rank,
        finite,
        infinite,
        right: right_basis.indices.clone(),
        left: left_basis.indices.clone(),
        irrational_degree: total - rational,
    };
    let expected = p.grade() * rank;
    if eig.index_sum() != expected {
        return Err(Error::IndexSumViolation {
            finite: eig.finite_sum(),
            infinite: eig.infinite_sum(),
            right: right_basis.index_sum(),
            left: left_basis.index_sum(),
            expected,
        });
    }
    Ok(Analysis {
        eig,
        invariant_factors: factors,
        right_basis,
        left_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_row_and_column() {
        let p = PolyMat::from_int_entries(&[&[&[0, 0, 1], &[0]], &[&[0], &[0]]]).unwrap();
        let e = full_eigenstructure(&p, &[]).unwrap();
        assert_eq!(e.finite, BTreeMap::from([(rat(0), vec![2])]));
        assert!(e.infinite.is_empty());
        assert_eq!(e.right, vec![0]);
        assert_eq!(e.left, vec![0]);
    }

    #[test]
    fn row_vector() {
        let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]]).unwrap();
        let e = full_eigenstructure(&p, &[]).unwrap();
        assert!(e.finite.is_empty() && e.infinite.is_empty() && e.left.is_empty());
        assert_eq!(e.right, vec![2]);
    }

    #[test]
    fn semisimple_eigenvalue() {
        let p = PolyMat::from_int_entries(&[&[&[-1, 1], &[0]], &[&[0], &[-1, 1]]]).unwrap();
        let e = full_eigenstructure(&p, &[]).unwrap();
        assert_eq!(e.finite, BTreeMap::from([(rat(1), vec![1, 1])]));
    }

    #[test]
    fn grade_shift_moves_infinity() {
        let p = PolyMat::from_int_entries(&[&[&[1], &[0, 1]]]).unwrap();
        assert!(infinite_multiplicities(&p).unwrap().is_empty());
        assert_eq!(
            infinite_multiplicities(&p.with_grade(2).unwrap()).unwrap(),
            vec![1]
        );
    }

    #[test]
    fn irrational_eigenvalues_flagged() {
        let p = PolyMat::from_int_entries(&[&[&[-2, 0, 1]]]).unwrap();
        let e = full_eigenstructure(&p, &[]).unwrap();
        assert_eq!(e.irrational_degree, 2);
        assert_eq!(e.warnings().len(), 1);
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("irrational"));
    }

    #[test]
    fn candidates_are_filtered() {
        let p = PolyMat::from_int_entries(&[&[&[0, 1]]]).unwrap();
        let e = full_eigenstructure(&p, &[rat(5)]).unwrap();
        assert_eq!(e.finite.keys().cloned().collect::<Vec<_>>(), vec![rat(0)]);
    }
}
