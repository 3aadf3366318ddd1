//! Matrix polynomials with an explicit grade, stored as coefficient matrices.

mod bivariate;
mod json;

pub use bivariate::{bivariate_to_block, block_to_bivariate, BivariateMat};

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{binomial, factorial, rat, Mat, Rat, SPoly};

/// `P(z) = sum_{i=0}^{grade} z^i P_i` with every `P_i` of size `m x n`.
///
/// The leading coefficient may vanish; the grade is part of the data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMat {
    m: usize,
    n: usize,
    coeffs: Vec<Mat>,
}

// ---- Constructors ----

impl PolyMat {
    pub fn new(coeffs: Vec<Mat>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| {
            Error::Dimension("a matrix polynomial needs at least one coefficient".into())
        })?;
        let (m, n) = (first.rows(), first.cols());
        if coeffs.iter().any(|c| c.rows() != m || c.cols() != n) {
            return Err(Error::Dimension(
                "coefficient matrices differ in size".into(),
            ));
        }
        Ok(PolyMat { m, n, coeffs })
    }

    pub fn zero(m: usize, n: usize, grade: usize) -> Self {
        PolyMat {
            m,
            n,
            coeffs: vec![Mat::zeros(m, n); grade + 1],
        }
    }

    pub fn constant(c: Mat) -> Self {
        PolyMat {
            m: c.rows(),
            n: c.cols(),
            coeffs: vec![c],
        }
    }

    /// Entry-wise constructor; every entry must have degree at most `grade`.
    pub fn from_fn(
        m: usize,
        n: usize,
        grade: usize,
        f: impl Fn(usize, usize) -> SPoly,
    ) -> Result<Self> {
        let mut out = PolyMat::zero(m, n, grade);
        for i in 0..m {
            for j in 0..n {
                let p = f(i, j);
                if let Some(d) = p.degree() {
                    if d > grade {
                        return Err(Error::GradeBelowDegree { grade, degree: d });
                    }
                    for (e, c) in p.coeffs().iter().enumerate().take(d + 1) {
                        out.coeffs[e][(i, j)] = c.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Grade is the largest entry grade.
    pub fn from_entries(entries: &[Vec<SPoly>]) -> Result<Self> {
        let m = entries.len();
        let n = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("ragged entry rows".into()));
        }
        let grade = entries
            .iter()
            .flatten()
            .map(|p| p.grade())
            .max()
            .unwrap_or(0);
        PolyMat::from_fn(m, n, grade, |i, j| entries[i][j].clone())
    }

    /// Integer entries given as coefficient lists, lowest power first.
    pub fn from_int_entries(entries: &[&[&[i64]]]) -> Result<Self> {
        let rows: Vec<Vec<SPoly>> = entries
            .iter()
            .map(|r| r.iter().map(|c| SPoly::from_ints(c)).collect())
            .collect();
        PolyMat::from_entries(&rows)
    }

    /// `V(z) = [z^{k-1}, ..., z, 1]^T`, of grade `k - 1`.
    pub fn vandermonde_vector(k: usize) -> Self {
        assert!(k >= 1, "Vandermonde vector needs k >= 1");
        let mut out = PolyMat::zero(k, 1, k - 1);
        for i in 0..k {
            out.coeffs[k - 1 - i][(i, 0)] = rat(1);
        }
        out
    }

    pub fn identity(n: usize) -> Self {
        PolyMat::constant(Mat::identity(n))
    }
}

// ---- Accessors ----

impl PolyMat {
    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Mat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    pub fn entry(&self, i: usize, j: usize) -> SPoly {
        SPoly::new(self.coeffs.iter().map(|c| c[(i, j)].clone()).collect())
    }

    pub fn entries(&self) -> Vec<Vec<SPoly>> {
        (0..self.m)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn column_degrees(&self) -> Vec<Option<usize>> {
        (0..self.n)
            .map(|j| {
                (0..=self.grade())
                    .rev()
                    .find(|&e| (0..self.m).any(|i| !self.coeffs[e][(i, j)].is_zero()))
            })
            .collect()
    }
}

// ---- Grade manipulation ----

impl PolyMat {
    pub fn with_grade(&self, g: usize) -> Result<PolyMat> {
        let d = self.degree().unwrap_or(0);
        if g < d {
            return Err(Error::GradeBelowDegree {
                grade: g,
                degree: d,
            });
        }
        let mut coeffs = self.coeffs[..=d].to_vec();
        coeffs.resize(g + 1, Mat::zeros(self.m, self.n));
        Ok(PolyMat {
            m: self.m,
            n: self.n,
            coeffs,
        })
    }

    pub fn trimmed(&self) -> PolyMat {
        self.with_grade(self.degree().unwrap_or(0))
            .expect("degree is a valid grade")
    }

    /// `z^g P(1/z)`; errors when `g` is below the degree.
    pub fn reversal(&self, wrt_grade: usize) -> Result<PolyMat> {
        let mut r = self.with_grade(wrt_grade)?;
        r.coeffs.reverse();
        Ok(r)
    }
}

// ---- Arithmetic ----

impl PolyMat {
    pub fn eval(&self, x: &Rat) -> Mat {
        let mut acc = Mat::zeros(self.m, self.n);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x).add(c);
        }
        acc
    }

    /// `order`-th derivative, divided by `order!` when `normalized`.
    pub fn derivative(&self, order: usize, normalized: bool) -> PolyMat {
        let g = self.grade();
        if order > g {
            return PolyMat::zero(self.m, self.n, 0);
        }
        let coeffs = (order..=g)
            .map(|i| {
                let mut f = Rat::from_integer(binomial(i, order));
                if !normalized {
                    f *= Rat::from_integer(factorial(order));
                }
                self.coeffs[i].scale(&f)
            })
            .collect();
        PolyMat {
            m: self.m,
            n: self.n,
            coeffs,
        }
    }

    /// Taylor coefficients `P^{(j)}(x)/j!` for `j = 0..count`.
    pub fn taylor_at(&self, x: &Rat, count: usize) -> Vec<Mat> {
        (0..count)
            .map(|j| self.derivative(j, true).eval(x))
            .collect()
    }

    pub fn transpose(&self) -> PolyMat {
        PolyMat {
            m: self.n,
            n: self.m,
            coeffs: self.coeffs.iter().map(Mat::transpose).collect(),
        }
    }

    pub fn add(&self, other: &PolyMat) -> PolyMat {
        assert_eq!((self.m, self.n), (other.m, other.n), "sum shape");
        let g = self.grade().max(other.grade());
        let coeffs = (0..=g)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        PolyMat {
            m: self.m,
            n: self.n,
            coeffs,
        }
    }

    pub fn sub(&self, other: &PolyMat) -> PolyMat {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rat) -> PolyMat {
        PolyMat {
            m: self.m,
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Grades add.
    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.n, other.m, "product shape");
        let mut coeffs = vec![Mat::zeros(self.m, other.n); self.grade() + other.grade() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        PolyMat {
            m: self.m,
            n: other.n,
            coeffs,
        }
    }

    /// Multiply by a scalar polynomial; grades add.
    pub fn mul_scalar_poly(&self, p: &SPoly) -> PolyMat {
        let mut coeffs = vec![Mat::zeros(self.m, self.n); self.grade() + p.grade() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.scale(c));
                }
            }
        }
        PolyMat {
            m: self.m,
            n: self.n,
            coeffs,
        }
    }

    /// Entry-wise exact division by a scalar polynomial.
    pub fn div_scalar_poly(&self, p: &SPoly) -> Result<PolyMat> {
        let entries: Vec<Vec<SPoly>> = self
            .entries()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.exact_div(p))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let q = PolyMat::from_fn(self.m, self.n, self.grade(), |i, j| entries[i][j].clone())?;
        Ok(q.trimmed())
    }

    /// Kronecker product; grades add.
    pub fn kron(&self, other: &PolyMat) -> PolyMat {
        let mut coeffs =
            vec![Mat::zeros(self.m * other.m, self.n * other.n); self.grade() + other.grade() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.kron(b));
            }
        }
        PolyMat {
            m: self.m * other.m,
            n: self.n * other.n,
            coeffs,
        }
    }

    /// Left and right multiplication by constant matrices.
    pub fn congruence(&self, left: &Mat, right: &Mat) -> PolyMat {
        let coeffs: Vec<Mat> = self.coeffs.iter().map(|c| left.mul(c).mul(right)).collect();
        PolyMat {
            m: left.rows(),
            n: right.cols(),
            coeffs,
        }
    }
}

// ---- Column and block operations ----

impl PolyMat {
    pub fn column(&self, j: usize) -> PolyMat {
        self.select_columns(&[j])
    }

    pub fn select_columns(&self, idx: &[usize]) -> PolyMat {
        PolyMat {
            m: self.m,
            n: idx.len(),
            coeffs: self.coeffs.iter().map(|c| c.select_columns(idx)).collect(),
        }
    }

    /// Horizontal concatenation; the grade is the larger one.
    pub fn hstack(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.m, other.m, "hstack shape");
        let g = self.grade().max(other.grade());
        let a = self.with_grade(g).expect("raising grade");
        let b = other.with_grade(g).expect("raising grade");
        PolyMat {
            m: self.m,
            n: self.n + other.n,
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.hstack(y))
                .collect(),
        }
    }

    pub fn vstack(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.n, other.n, "vstack shape");
        let g = self.grade().max(other.grade());
        let a = self.with_grade(g).expect("raising grade");
        let b = other.with_grade(g).expect("raising grade");
        PolyMat {
            m: self.m + other.m,
            n: self.n,
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.vstack(y))
                .collect(),
        }
    }

    /// Submatrix with top-left corner `(r0, c0)` and size `h x w`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> PolyMat {
        PolyMat {
            m: h,
            n: w,
            coeffs: self.coeffs.iter().map(|c| c.block(r0, c0, h, w)).collect(),
        }
    }

    /// Block diagonal sum; the grade is the largest block grade.
    pub fn direct_sum(blocks: &[PolyMat]) -> PolyMat {
        let g = blocks.iter().map(|b| b.grade()).max().unwrap_or(0);
        let coeffs = (0..=g)
            .map(|e| {
                let parts: Vec<Mat> = blocks
                    .iter()
                    .map(|b| {
                        b.coeffs
                            .get(e)
                            .cloned()
                            .unwrap_or_else(|| Mat::zeros(b.m, b.n))
                    })
                    .collect();
                Mat::direct_sum(&parts)
            })
            .collect();
        PolyMat {
            m: blocks.iter().map(|b| b.m).sum(),
            n: blocks.iter().map(|b| b.n).sum(),
            coeffs,
        }
    }
}

// ---- Rank data ----

impl PolyMat {
    /// Column `j` of the result is the coefficient of `z^{deg col j}` in column `j`.
    pub fn high_order_coefficient(&self) -> Result<Mat> {
        let degs = self.column_degrees();
        let mut out = Mat::zeros(self.m, self.n);
        for (j, d) in degs.iter().enumerate() {
            let d = d.ok_or(Error::ZeroColumn(j))?;
            for i in 0..self.m {
                out[(i, j)] = self.coeffs[d][(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Rank over the field of rational functions, as the largest rank at
    /// `grade * min(m, n) + 1` probe points `0, 1, -1, 2, -2, ...`.
    pub fn normal_rank(&self) -> usize {
        let cap = self.m.min(self.n);
        let probes = self.grade() * cap + 1;
        let mut best = 0;
        for t in 0..probes {
            let x = probe_point(t);
            best = best.max(self.eval(&x).rank());
            if best == cap {
                break;
            }
        }
        best
    }
}

/// `0, 1, -1, 2, -2, ...`
pub fn probe_point(t: usize) -> Rat {
    let h = t.div_ceil(2) as i64;
    if t % 2 == 1 {
        rat(h)
    } else {
        rat(-h)
    }
}

impl fmt::Display for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex() -> PolyMat {
        PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]]).unwrap()
    }

    #[test]
    fn vandermonde() {
        let v = PolyMat::vandermonde_vector(3);
        assert_eq!(v.eval(&rat(2)).column(0), vec![rat(4), rat(2), rat(1)]);
        assert_eq!(v.grade(), 2);
    }

    #[test]
    fn reversal_checks_grade() {
        let p = ex();
        assert!(p.reversal(1).is_err());
        let r = p.reversal(3).unwrap();
        assert_eq!(r.entry(0, 0), SPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(r.entry(0, 1), SPoly::from_ints(&[0, 1, 0, 0]));
    }

    #[test]
    fn kron_grades_add() {
        let v = PolyMat::vandermonde_vector(2);
        let k = v.kron(&ex());
        assert_eq!(k.grade(), 3);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k.entry(0, 1), SPoly::from_ints(&[0, 0, 0, 1]));
    }

    #[test]
    fn high_order_and_rank() {
        let m = PolyMat::from_int_entries(&[&[&[0, 0, 1]], &[&[-1]]]).unwrap();
        assert_eq!(
            m.high_order_coefficient().unwrap(),
            Mat::from_i64(&[&[1], &[0]])
        );
        let z = PolyMat::zero(2, 1, 1);
        assert!(z.high_order_coefficient().is_err());
        assert_eq!(ex().normal_rank(), 1);
        assert_eq!(PolyMat::zero(3, 3, 2).normal_rank(), 0);
    }

    #[test]
    fn derivative_grade_floor() {
        let p = ex();
        assert_eq!(
            p.derivative(1, false).entry(0, 1),
            SPoly::from_ints(&[0, 2])
        );
        assert_eq!(p.derivative(4, true).grade(), 0);
    }
}
