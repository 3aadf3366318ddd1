//! Recovering minimal bases, eigenvectors and root polynomials of `P` from
//! those of a pencil in DL(P, v) through `Omega = omega^T ⊗ I_n`.

use num_traits::Zero;

use crate::eigenstructure::{is_minimal_basis, minimal_basis, MinimalBasis};
use crate::error::{Error, Result};
use crate::exactalg::{Mat, Rat};
use crate::pencil::{check_exclusion, structured_minimal_basis, DLPencil};
use crate::polymat::PolyMat;
use crate::rootpoly::{classify_set, RootPolySet};

/// Left multiplication by `omega^T ⊗ I_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMap {
    pub omega: Vec<Rat>,
    pub n: usize,
}

impl OmegaMap {
    pub fn new(omega: &[Rat], n: usize) -> Self {
        OmegaMap {
            omega: omega.to_vec(),
            n,
        }
    }

    pub fn of(dl: &DLPencil) -> Self {
        OmegaMap::new(dl.ansatz.omega(), dl.n)
    }

    pub fn matrix(&self) -> Mat {
        Mat::from_rows(vec![self.omega.clone()], self.omega.len()).kron(&Mat::identity(self.n))
    }

    pub fn apply(&self, w: &PolyMat) -> PolyMat {
        PolyMat::constant(self.matrix())
            .mul(w)
            .with_grade(w.grade())
            .expect("same grade")
    }

    pub fn apply_vec(&self, u: &[Rat]) -> Vec<Rat> {
        self.matrix().mul_vec(u)
    }
}

/// Minimal basis of `ker P(z)` from a minimal basis `N` of `ker L(z)`.
///
/// Nonconstant columns of `Omega N` are kept; constant ones are thinned out
/// to their pivot columns. The result is sorted by degree and checked.
pub fn recover_minimal_basis(
    n: &MinimalBasis,
    omega: &OmegaMap,
    p: &PolyMat,
) -> Result<MinimalBasis> {
    if n.dim() == 0 {
        return Ok(MinimalBasis {
            basis: PolyMat::zero(p.cols(), 0, 0),
            indices: vec![],
        });
    }
    let hat = omega.apply(&n.basis);
    let degrees = hat.column_degrees();
    let mut nonconstant: Vec<usize> = (0..hat.cols())
        .filter(|&j| degrees[j].unwrap_or(0) > 0)
        .collect();
    let constant: Vec<usize> = (0..hat.cols())
        .filter(|&j| degrees[j].unwrap_or(0) == 0)
        .collect();
    let mc = hat.coeff(0).select_columns(&constant);
    let (_, pivots) = mc.rref();
    let mut keep: Vec<usize> = pivots.iter().map(|&i| constant[i]).collect();
    keep.append(&mut nonconstant);
    keep.sort_by_key(|&j| (degrees[j].unwrap_or(0), j));
    let basis = hat.select_columns(&keep).trimmed();
    let indices: Vec<usize> = keep.iter().map(|&j| degrees[j].unwrap_or(0)).collect();
    let basis = basis.with_grade(indices.last().copied().unwrap_or(0))?;
    if !p.mul(&basis).is_zero() {
        return Err(Error::Identity("recovered columns are not in ker P".into()));
    }
    let expected = p.cols() - p.normal_rank();
    if basis.cols() != expected || !is_minimal_basis(&basis)?.holds() {
        return Err(Error::Identity(format!(
            "recovered {} columns that are not a minimal basis of a {expected}-dimensional kernel",
            basis.cols()
        )));
    }
    Ok(MinimalBasis { basis, indices })
}

/// Left version: `N` is a minimal basis of `ker L(z)^T`.
pub fn recover_left_minimal_basis(
    n: &MinimalBasis,
    omega: &[Rat],
    p: &PolyMat,
) -> Result<MinimalBasis> {
    recover_minimal_basis(n, &OmegaMap::new(omega, p.rows()), &p.transpose())
}

/// The constant block `C` of the structured basis, checked to span
/// `ker Omega ∩ ker L(z)`.
pub fn kernel_of_omega(dl: &DLPencil, p: &PolyMat, m: &MinimalBasis) -> Result<Mat> {
    let s = structured_minimal_basis(dl, p, m)?;
    let omega = OmegaMap::of(dl);
    let c = s.c;
    let want = (dl.k() - 1) * m.dim();
    if !omega.matrix().mul(&c).is_zero() {
        return Err(Error::Identity("Omega C != 0".into()));
    }
    if c.rank() != want {
        return Err(Error::Identity(format!(
            "rank C = {}, expected {want}",
            c.rank()
        )));
    }
    // C ⊆ ker Omega ∩ ker L by the checks above; equal dimensions finish it
    let stacked = PolyMat::constant(omega.matrix()).vstack(&dl.pencil);
    let joint = stacked.cols() - stacked.normal_rank();
    if joint != want {
        return Err(Error::Identity(format!(
            "ker Omega ∩ ker L has dimension {joint}, expected {want}"
        )));
    }
    Ok(c)
}

/// `Omega u` for `u ∈ ker L(lambda)`; lands in `ker P(lambda)`.
pub fn recover_eigenvector(
    dl: &DLPencil,
    p: &PolyMat,
    u: &[Rat],
    lambda: &Rat,
) -> Result<Vec<Rat>> {
    if dl.ansatz.poly().eval(lambda).is_zero() {
        return Err(Error::Hypothesis(format!("v({lambda}) = 0")));
    }
    if dl.at(lambda).mul_vec(u).iter().any(|x| !x.is_zero()) {
        return Err(Error::Hypothesis("vector is not in ker L(lambda)".into()));
    }
    let h = OmegaMap::of(dl).apply_vec(u);
    if p.eval(lambda).mul_vec(&h).iter().any(|x| !x.is_zero()) {
        return Err(Error::Identity(
            "recovered vector is not in ker P(lambda)".into(),
        ));
    }
    Ok(h)
}

/// Dimensions of `ker P(lambda)`, `ker_lambda P(z)`, `ker L(lambda)`, `ker_lambda L(z)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QuotientDims {
    pub ker_p: usize,
    pub ker_lambda_p: usize,
    pub ker_l: usize,
    pub ker_lambda_l: usize,
}

impl QuotientDims {
    /// Whether the two quotients have equal dimension.
    pub fn isomorphic(&self) -> bool {
        self.ker_p - self.ker_lambda_p == self.ker_l - self.ker_lambda_l
    }

    /// Geometric multiplicity of `lambda` as an eigenvalue of `P`.
    pub fn geometric(&self) -> usize {
        self.ker_p - self.ker_lambda_p
    }
}

pub fn quotient_dimensions(
    p: &PolyMat,
    mp: &MinimalBasis,
    dl: &DLPencil,
    ml: &MinimalBasis,
    lambda: &Rat,
) -> QuotientDims {
    QuotientDims {
        ker_p: p.cols() - p.eval(lambda).rank(),
        ker_lambda_p: mp.basis.eval(lambda).rank(),
        ker_l: dl.pencil.cols() - dl.at(lambda).rank(),
        ker_lambda_l: ml.basis.eval(lambda).rank(),
    }
}

/// `r_i = Omega rho_i`. When the input is maximal for `L`, the output is
/// asserted maximal for `P` with the same orders.
pub fn recover_root_polys(set: &RootPolySet, dl: &DLPencil, p: &PolyMat) -> Result<RootPolySet> {
    if !check_exclusion(p, &dl.ansatz)?.holds() {
        return Err(Error::Hypothesis(
            "an ansatz root is an eigenvalue of P".into(),
        ));
    }
    if dl.ansatz.poly().eval(&set.lambda).is_zero() {
        return Err(Error::Hypothesis(format!("v({}) = 0", set.lambda)));
    }
    let omega = OmegaMap::of(dl);
    let mapped: Vec<PolyMat> = set
        .members
        .iter()
        .map(|r| omega.apply(&r.vec).trimmed())
        .collect();
    let m = minimal_basis(p)?;
    let out = classify_set(p, &m, &mapped, &set.lambda)?;
    if set.maximal && (!out.maximal || out.orders() != set.orders()) {
        return Err(Error::Identity(format!(
            "recovered orders {:?} from a maximal set with orders {:?}",
            out.orders(),
            set.orders()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, SPoly};
    use crate::pencil::{build_dl, Ansatz};
    use crate::rootpoly::{lift_root_polys, maximal_set};

    fn worked() -> (PolyMat, DLPencil) {
        let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]]).unwrap();
        let dl = build_dl(&p, &Ansatz::new(vec![rat(1), rat(-1)]).unwrap()).unwrap();
        (p, dl)
    }

    fn zz00() -> PolyMat {
        PolyMat::from_int_entries(&[&[&[0, 0, 1], &[0]], &[&[0], &[0]]]).unwrap()
    }

    #[test]
    fn omega_matrix() {
        let w = OmegaMap::new(&[rat(1), rat(-1)], 2).matrix();
        assert_eq!(w, Mat::from_i64(&[&[1, 0, -1, 0], &[0, 1, 0, -1]]));
    }

    #[test]
    fn worked_minimal_basis() {
        let (p, dl) = worked();
        let m = minimal_basis(&p).unwrap();
        let f = structured_minimal_basis(&dl, &p, &m).unwrap();
        let n = MinimalBasis {
            basis: f.f.clone(),
            indices: f.degrees.clone(),
        };
        let r = recover_minimal_basis(&n, &OmegaMap::of(&dl), &p).unwrap();
        assert_eq!(
            r.basis,
            PolyMat::from_int_entries(&[&[&[0, 0, 1]], &[&[-1]]]).unwrap()
        );
        assert_eq!(r.indices, vec![2]);
        let c = kernel_of_omega(&dl, &p, &m).unwrap();
        assert_eq!(c, Mat::from_i64(&[&[1], &[-1], &[1], &[-1]]));
    }

    #[test]
    fn zero_index_survives() {
        let p = zz00();
        let dl = build_dl(&p, &Ansatz::new(vec![rat(1), rat(-1)]).unwrap()).unwrap();
        let n = minimal_basis(&dl.pencil).unwrap();
        let r = recover_minimal_basis(&n, &OmegaMap::of(&dl), &p).unwrap();
        assert_eq!(r.indices, vec![0]);
        let left = minimal_basis(&dl.pencil.transpose()).unwrap();
        let r = recover_left_minimal_basis(&left, dl.ansatz.omega(), &p).unwrap();
        assert_eq!(r.indices, vec![0]);
    }

    #[test]
    fn nonsingular_is_empty() {
        let p = PolyMat::from_int_entries(&[&[&[1, 0, 1]]]).unwrap();
        let dl = build_dl(&p, &Ansatz::new(vec![rat(1), rat(-1)]).unwrap()).unwrap();
        let n = minimal_basis(&dl.pencil).unwrap();
        assert_eq!(
            recover_minimal_basis(&n, &OmegaMap::of(&dl), &p)
                .unwrap()
                .dim(),
            0
        );
    }

    #[test]
    fn eigenvectors() {
        let (p, dl) = worked();
        let lambda = rat(0);
        let l0 = dl.at(&lambda);
        for u in l0.nullspace() {
            recover_eigenvector(&dl, &p, &u, &lambda).unwrap();
        }
        // V(lambda) ⊗ h / v(lambda) recovers h
        let h = vec![rat(0), rat(1)];
        let lam = rat(3);
        let vl = dl.ansatz.poly().eval(&lam);
        let lift = |h: &[Rat]| -> Vec<Rat> {
            let mut out = Vec::new();
            for x in [lam.clone(), rat(1)] {
                out.extend(h.iter().map(|y| &x * y / &vl));
            }
            out
        };
        let u = lift(&h);
        let hp = p.eval(&lam).nullspace();
        let u2 = lift(&hp[0]);
        assert_eq!(recover_eigenvector(&dl, &p, &u2, &lam).unwrap(), hp[0]);
        assert!(recover_eigenvector(&dl, &p, &u, &lam).is_err());
        let c = kernel_of_omega(&dl, &p, &minimal_basis(&p).unwrap()).unwrap();
        assert!(recover_eigenvector(&dl, &p, &c.column(0), &lam)
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
        assert!(recover_eigenvector(&dl, &p, &u2, &rat(1)).is_err());
    }

    #[test]
    fn quotient_and_root_polys() {
        let p = zz00();
        let dl = build_dl(
            &p,
            &Ansatz::from_poly(&SPoly::from_ints(&[-1, 1]), 2).unwrap(),
        )
        .unwrap();
        let mp = minimal_basis(&p).unwrap();
        let ml = minimal_basis(&dl.pencil).unwrap();
        for lambda in [rat(0), rat(2)] {
            assert!(quotient_dimensions(&p, &mp, &dl, &ml, &lambda).isomorphic());
        }
        let s = maximal_set(&p, &rat(0)).unwrap();
        let lifted = lift_root_polys(&s, &dl, &p).unwrap();
        let back = recover_root_polys(&lifted, &dl, &p).unwrap();
        assert_eq!(back.orders(), vec![2]);
        assert!(back.maximal);
        // Omega (V ⊗ e1) = v e1
        assert_eq!(
            back.members[0].vec,
            PolyMat::from_int_entries(&[&[&[-1, 1]], &[&[0]]]).unwrap()
        );
    }
}
