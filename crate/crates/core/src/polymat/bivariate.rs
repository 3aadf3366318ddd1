use crate::error::{Error, Result};
use crate::exactalg::{Mat, Rat};

/// `F(x, y) = sum y^a x^b C[a][b]` with `m x n` coefficient matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateMat {
    m: usize,
    n: usize,
    /// Indexed `[power of y][power of x]`.
    coeffs: Vec<Vec<Mat>>,
}

impl BivariateMat {
    pub fn zero(m: usize, n: usize, deg_y: usize, deg_x: usize) -> Self {
        BivariateMat {
            m,
            n,
            coeffs: vec![vec![Mat::zeros(m, n); deg_x + 1]; deg_y + 1],
        }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn deg_y_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn deg_x_bound(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    /// Coefficient of `y^a x^b`.
    pub fn get(&self, a: usize, b: usize) -> &Mat {
        &self.coeffs[a][b]
    }

    pub fn set(&mut self, a: usize, b: usize, c: Mat) {
        self.coeffs[a][b] = c;
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Mat {
        let mut acc = Mat::zeros(self.m, self.n);
        let mut ya = crate::exactalg::rat(1);
        for row in &self.coeffs {
            let mut xb = ya.clone();
            for c in row {
                acc = acc.add(&c.scale(&xb));
                xb *= x;
            }
            ya *= y;
        }
        acc
    }

    /// Coefficient of `y^a x^b`, zero outside the stored range.
    pub fn coeff_or_zero(&self, a: usize, b: usize) -> Mat {
        self.coeffs
            .get(a)
            .and_then(|r| r.get(b))
            .cloned()
            .unwrap_or_else(|| Mat::zeros(self.m, self.n))
    }

    /// `F(x, y) == F(y, x)`.
    pub fn is_symmetric(&self) -> bool {
        let d = self.deg_x_bound().max(self.deg_y_bound());
        (0..=d).all(|a| (0..a).all(|b| self.coeff_or_zero(a, b) == self.coeff_or_zero(b, a)))
    }

    /// `F(y, x)`.
    pub fn swap_variables(&self) -> BivariateMat {
        let mut out = BivariateMat::zero(self.m, self.n, self.deg_x_bound(), self.deg_y_bound());
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                out.coeffs[b][a] = c.clone();
            }
        }
        out
    }
}

/// Block `(i, j)` (1-based) of the `km x kn` matrix becomes the coefficient of `y^{k-i} x^{k-j}`.
pub fn block_to_bivariate(b: &Mat, k: usize, m: usize, n: usize) -> Result<BivariateMat> {
    if k == 0 || b.rows() != k * m || b.cols() != k * n {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not a {k}x{k} array of {m}x{n} blocks",
            b.rows(),
            b.cols()
        )));
    }
    let mut out = BivariateMat::zero(m, n, k - 1, k - 1);
    for i in 0..k {
        for j in 0..k {
            out.coeffs[k - 1 - i][k - 1 - j] = b.block(i * m, j * n, m, n);
        }
    }
    Ok(out)
}

/// Inverse of [`block_to_bivariate`]; both degrees must be below `k`.
pub fn bivariate_to_block(f: &BivariateMat, k: usize) -> Result<Mat> {
    let mut out = Mat::zeros(k * f.m, k * f.n);
    for (a, row) in f.coeffs.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if a >= k || b >= k {
                return Err(Error::Dimension(format!(
                    "term y^{a} x^{b} does not fit {k} blocks"
                )));
            }
            out.set_block((k - 1 - a) * f.m, (k - 1 - b) * f.n, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn identity_is_xy_plus_one() {
        let f = block_to_bivariate(&Mat::identity(2), 2, 1, 1).unwrap();
        assert_eq!(f.get(1, 1), &Mat::identity(1));
        assert_eq!(f.get(0, 0), &Mat::identity(1));
        assert!(f.get(0, 1).is_zero() && f.get(1, 0).is_zero());
        assert_eq!(f.eval(&rat(2), &rat(3)), Mat::from_i64(&[&[7]]));
    }

    #[test]
    fn round_trip() {
        let b = Mat::from_fn(6, 4, |i, j| rat((i * 4 + j) as i64 - 7));
        let f = block_to_bivariate(&b, 2, 3, 2).unwrap();
        assert_eq!(bivariate_to_block(&f, 2).unwrap(), b);
        assert!(block_to_bivariate(&b, 3, 3, 2).is_err());
    }
}
