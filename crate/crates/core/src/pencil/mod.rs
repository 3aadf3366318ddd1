//! Pencils of the DL(P) space built from Bézoutian-type bivariate
//! polynomials, with block evaluation, structured minimal bases and the
//! arrowhead form.

mod arrowhead;
mod blockeval;
mod structured;

pub use arrowhead::{arrowhead_matches_dl, arrowhead_pencil};
pub use blockeval::{block_evaluation, confluent_vandermonde, evaluation_nodes, BlockEvaluation};
pub use structured::{structured_minimal_basis, StructuredBasis};

use num_traits::Zero;

use crate::eigenstructure::{infinite_multiplicities, invariant_factors};
use crate::error::{Error, Result};
use crate::exactalg::{rational_roots, Mat, Rat, SPoly};
use crate::polymat::{bivariate_to_block, BivariateMat, PolyMat};

/// Ansatz vector `omega` of length `k`, defining `v(x) = omega^T V(x)`.
///
/// `omega[0]` is the coefficient of `x^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    omega: Vec<Rat>,
}

impl Ansatz {
    pub fn new(omega: Vec<Rat>) -> Result<Self> {
        if omega.is_empty() || omega.iter().all(|x| x.is_zero()) {
            return Err(Error::ZeroAnsatz);
        }
        Ok(Ansatz { omega })
    }

    /// Ansatz of length `k` for a polynomial of degree at most `k - 1`.
    pub fn from_poly(v: &SPoly, k: usize) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroAnsatz);
        }
        let v = v.with_grade(k.saturating_sub(1))?;
        Ansatz::new(v.coeffs().iter().rev().cloned().collect())
    }

    pub fn k(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[Rat] {
        &self.omega
    }

    /// `v(z)` with grade `k - 1`.
    pub fn poly(&self) -> SPoly {
        SPoly::new(self.omega.iter().rev().cloned().collect())
    }

    /// Roots at infinity of `v` as a grade `k - 1` polynomial.
    pub fn infinite_root_multiplicity(&self) -> usize {
        self.k() - 1 - self.poly().degree().expect("nonzero")
    }

    /// `omega^T` as a `1 x k` matrix.
    pub fn row(&self) -> Mat {
        Mat::from_rows(vec![self.omega.clone()], self.k())
    }
}

/// A pencil `L(z) = L0 + z L1` of size `km x kn` in DL(P) with its ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLPencil {
    pub pencil: PolyMat,
    pub ansatz: Ansatz,
    pub m: usize,
    pub n: usize,
}

impl DLPencil {
    pub fn k(&self) -> usize {
        self.ansatz.k()
    }

    /// Evaluate the pencil.
    pub fn at(&self, x: &Rat) -> Mat {
        self.pencil.eval(x)
    }

    /// The two contraction identities `(V^T ⊗ I_m) L = omega^T ⊗ P` and `L (V ⊗ I_n) = omega ⊗ P`.
    pub fn check_contractions(&self, p: &PolyMat) -> Result<()> {
        let k = self.k();
        let v = PolyMat::vandermonde_vector(k);
        let im = PolyMat::identity(self.m);
        let inn = PolyMat::identity(self.n);
        let left = v.transpose().kron(&im).mul(&self.pencil);
        let want_left = PolyMat::constant(self.ansatz.row()).kron(p);
        if left.trimmed() != want_left.trimmed() {
            return Err(Error::Identity(
                "(V^T ⊗ I) L differs from omega^T ⊗ P".into(),
            ));
        }
        let right = self.pencil.mul(&v.kron(&inn));
        let want_right = PolyMat::constant(self.ansatz.row().transpose()).kron(p);
        if right.trimmed() != want_right.trimmed() {
            return Err(Error::Identity("L (V ⊗ I) differs from omega ⊗ P".into()));
        }
        Ok(())
    }

    /// Wraps a pencil read from elsewhere, checking that it is `DL(P, v)` for the
    /// `P` it contracts to.
    pub fn from_pencil(pencil: PolyMat, ansatz: Ansatz) -> Result<Self> {
        let k = ansatz.k();
        if pencil.grade() > 1 && pencil.degree().unwrap_or(0) > 1 {
            return Err(Error::Dimension(format!(
                "a pencil has degree at most 1, got {}",
                pencil.grade()
            )));
        }
        if !pencil.rows().is_multiple_of(k) || !pencil.cols().is_multiple_of(k) {
            return Err(Error::Dimension(format!(
                "{}x{} pencil is not made of {k}x{k} blocks",
                pencil.rows(),
                pencil.cols()
            )));
        }
        let pencil = pencil.with_grade(1)?;
        let dl = DLPencil {
            m: pencil.rows() / k,
            n: pencil.cols() / k,
            pencil,
            ansatz,
        };
        let p = dl.recover_polynomial()?;
        if build_dl(&p, &dl.ansatz)?.pencil != dl.pencil {
            return Err(Error::Hypothesis(
                "pencil is not in DL(P) for this ansatz".into(),
            ));
        }
        Ok(dl)
    }

    /// `P(z)` read back from the pencil through the left contraction.
    pub fn recover_polynomial(&self) -> Result<PolyMat> {
        let k = self.k();
        let v = PolyMat::vandermonde_vector(k);
        let left = v
            .transpose()
            .kron(&PolyMat::identity(self.m))
            .mul(&self.pencil);
        let (i, w) = self
            .ansatz
            .omega()
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_zero())
            .expect("nonzero ansatz");
        let p = left.block(0, i * self.n, self.m, self.n).scale(&w.recip());
        p.with_grade(k)
    }
}

/// Dense trivariate polynomial in `x`, `y`, `z` with matrix coefficients, indexed `[z][y][x]`.
struct TriMat {
    m: usize,
    n: usize,
    c: Vec<Vec<Vec<Mat>>>,
}

impl TriMat {
    fn zero(m: usize, n: usize, dz: usize, dy: usize, dx: usize) -> Self {
        TriMat {
            m,
            n,
            c: vec![vec![vec![Mat::zeros(m, n); dx + 1]; dy + 1]; dz + 1],
        }
    }

    fn add(&mut self, z: usize, y: usize, x: usize, a: &Mat, s: &Rat) {
        if s.is_zero() {
            return;
        }
        self.c[z][y][x] = self.c[z][y][x].add(&a.scale(s));
    }

    /// Exact division by `x - y`, errors on a nonzero remainder.
    fn div_x_minus_y(&self) -> Result<TriMat> {
        let dy = self.c[0].len() - 1;
        let dx = self.c[0][0].len() - 1;
        // intermediate quotients gain one y-degree per step
        let ylen = dy + dx + 1;
        let zero = Mat::zeros(self.m, self.n);
        let mut out = TriMat::zero(
            self.m,
            self.n,
            self.c.len() - 1,
            ylen - 1,
            dx.saturating_sub(1),
        );
        for (z, slice) in self.c.iter().enumerate() {
            let coeff = |i: usize| -> Vec<Mat> {
                (0..ylen)
                    .map(|y| slice.get(y).map_or_else(|| zero.clone(), |r| r[i].clone()))
                    .collect()
            };
            // q_{i-1} = c_i + y q_i, remainder c_0 + y q_0
            let mut q = vec![zero.clone(); ylen];
            for i in (0..=dx).rev() {
                let mut next = coeff(i);
                for y in 1..ylen {
                    next[y] = next[y].add(&q[y - 1]);
                }
                if !q[ylen - 1].is_zero() {
                    return Err(Error::Identity(
                        "y-degree overflow in division by x - y".into(),
                    ));
                }
                if i == 0 {
                    if next.iter().any(|c| !c.is_zero()) {
                        return Err(Error::NonExactDivision);
                    }
                } else {
                    for (y, c) in next.iter().enumerate() {
                        out.c[z][y][i - 1] = c.clone();
                    }
                }
                q = next;
            }
        }
        Ok(out)
    }
}

/// Bézoutian `[P(y)(x - z)v(x) - P(x)(y - z)v(y)] / (x - y)` as bivariate coefficients of `z^0` and `z^1`.
fn bezoutian(p: &PolyMat, v: &SPoly) -> Result<[BivariateMat; 2]> {
    let (m, n, k) = (p.rows(), p.cols(), p.grade());
    let mut num = TriMat::zero(m, n, 1, k, k);
    for (a, pa) in p.coeffs().iter().enumerate() {
        for (b, vb) in v.coeffs().iter().enumerate() {
            // P(y)(x - z)v(x)
            num.add(0, a, b + 1, pa, vb);
            num.add(1, a, b, pa, &-vb.clone());
            // -P(x)(y - z)v(y)
            num.add(0, b + 1, a, pa, &-vb.clone());
            num.add(1, b, a, pa, vb);
        }
    }
    let q = num.div_x_minus_y()?;
    let dy = q.c[0].len() - 1;
    let mut out = [
        BivariateMat::zero(m, n, dy, k - 1),
        BivariateMat::zero(m, n, dy, k - 1),
    ];
    for (z, slot) in out.iter_mut().enumerate() {
        for (y, row) in q.c[z].iter().enumerate() {
            for (x, c) in row.iter().enumerate() {
                slot.set(y, x, c.clone());
            }
        }
    }
    Ok(out)
}

/// The pencil of DL(P) with ansatz `v`, via the Bézoutian.
///
/// Asserts exact divisibility by `x - y`, symmetry in `x` and `y`, and both
/// contraction identities.
pub fn build_dl(p: &PolyMat, v: &Ansatz) -> Result<DLPencil> {
    let k = p.grade();
    if k < 2 {
        return Err(Error::GradeTooSmall(k));
    }
    if v.k() != k {
        return Err(Error::Dimension(format!(
            "ansatz has length {}, grade is {k}",
            v.k()
        )));
    }
    let parts = bezoutian(p, &v.poly())?;
    for part in &parts {
        if !part.is_symmetric() {
            return Err(Error::Identity(
                "Bézoutian is not symmetric in x and y".into(),
            ));
        }
    }
    let l0 = bivariate_to_block(&parts[0], k)?;
    let l1 = bivariate_to_block(&parts[1], k)?;
    let dl = DLPencil {
        pencil: PolyMat::new(vec![l0, l1])?,
        ansatz: v.clone(),
        m: p.rows(),
        n: p.cols(),
    };
    dl.check_contractions(p)?;
    Ok(dl)
}

/// `DL(P, v)^T == DL(P^T, v)`.
pub fn transpose_law_holds(p: &PolyMat, v: &Ansatz) -> Result<bool> {
    let a = build_dl(p, v)?.pencil.transpose();
    let b = build_dl(&p.transpose(), v)?.pencil;
    Ok(a == b)
}

/// Whether the roots of `v` (including roots at infinity) avoid the eigenvalues of `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExclusionReport {
    pub shared_rational: Vec<Rat>,
    pub shared_irrational: bool,
    pub shared_infinite: bool,
}

impl ExclusionReport {
    pub fn holds(&self) -> bool {
        self.shared_rational.is_empty() && !self.shared_irrational && !self.shared_infinite
    }
}

/// Exact test through `gcd(v, d_r)`, where `d_r` is the last invariant factor of `P`.
pub fn check_exclusion(p: &PolyMat, v: &Ansatz) -> Result<ExclusionReport> {
    let factors = invariant_factors(p)?;
    let mut report = ExclusionReport {
        shared_rational: vec![],
        shared_irrational: false,
        shared_infinite: false,
    };
    if let Some(last) = factors.last() {
        let g = SPoly::gcd(&v.poly(), last)?;
        if g.degree().unwrap_or(0) > 0 {
            let split = rational_roots(&g)?;
            report.shared_rational = split.roots.into_iter().map(|(x, _)| x).collect();
            report.shared_irrational = split.cofactor.degree().unwrap_or(0) > 0;
        }
    }
    report.shared_infinite =
        v.infinite_root_multiplicity() > 0 && !infinite_multiplicities(p)?.is_empty();
    Ok(report)
}
