use num_traits::Zero;

use super::smith::invariant_factors;
use crate::error::{Error, Result};
use crate::exactalg::{Mat, Rat, RowSpace};
use crate::polymat::PolyMat;

/// Columns form a minimal polynomial basis; `indices[j]` is the degree of column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBasis {
    pub basis: PolyMat,
    pub indices: Vec<usize>,
}

impl MinimalBasis {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn index_sum(&self) -> usize {
        self.indices.iter().sum()
    }
}

/// Outcome of the two-part minimality test for a polynomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCheck {
    /// Full column rank at every finite point (maximal minors have a constant gcd).
    pub full_rank_everywhere: bool,
    /// The high-order coefficient matrix has full column rank.
    pub column_reduced: bool,
}

impl MinimalityCheck {
    pub fn holds(&self) -> bool {
        self.full_rank_everywhere && self.column_reduced
    }
}

/// Matrix of `x(z) -> P(z) x(z)` on vectors of degree at most `d`, coefficient blocks stacked by power.
pub fn convolution_matrix(p: &PolyMat, d: usize) -> Mat {
    let (m, n, k) = (p.rows(), p.cols(), p.grade());
    let mut t = Mat::zeros(m * (k + d + 1), n * (d + 1));
    for j in 0..=d {
        for (i, c) in p.coeffs().iter().enumerate() {
            t.set_block((i + j) * m, j * n, c);
        }
    }
    t
}

fn stacked_to_column(v: &[Rat], n: usize) -> PolyMat {
    let d = v.len() / n - 1;
    let coeffs = (0..=d)
        .map(|e| Mat::column_vector(&v[e * n..(e + 1) * n]))
        .collect();
    PolyMat::new(coeffs).expect("equal shapes").trimmed()
}

fn column_to_stacked(c: &PolyMat, shift: usize, d: usize) -> Vec<Rat> {
    let n = c.rows();
    let mut v = vec![Rat::zero(); n * (d + 1)];
    for (e, m) in c.coeffs().iter().enumerate() {
        for i in 0..n {
            if !m[(i, 0)].is_zero() {
                v[(e + shift) * n + i] = m[(i, 0)].clone();
            }
        }
    }
    v
}

/// Right minimal basis of `ker P(z)` by a degree sweep over convolution nullspaces.
///
/// For `d = 0, 1, ...` the nullspace of the degree-`d` convolution matrix
/// is read off its RREF. Its vectors are kept, in order, whenever they are
/// independent of the shifts `z^j b` of the vectors already kept. The sweep
/// stops once `n - rank` vectors are found; the result is then checked for
/// minimality.
pub fn minimal_basis(p: &PolyMat) -> Result<MinimalBasis> {
    let n = p.cols();
    let r = p.normal_rank();
    let want = n - r;
    let mut kept: Vec<(PolyMat, usize)> = Vec::new();
    let bound = p.grade() * r;
    let mut d = 0;
    while kept.len() < want {
        if d > bound {
            return Err(Error::Identity(format!(
                "degree sweep passed the bound {bound} with {} of {want} vectors",
                kept.len()
            )));
        }
        let null = convolution_matrix(p, d).nullspace();
        let mut span = RowSpace::new();
        for (b, deg) in &kept {
            for shift in 0..=(d - deg) {
                span.insert(&column_to_stacked(b, shift, d));
            }
        }
        for x in &null {
            if kept.len() == want {
                break;
            }
            if span.insert(x) {
                let col = stacked_to_column(x, n);
                debug_assert_eq!(col.degree(), Some(d));
                kept.push((col, d));
            }
        }
        d += 1;
    }
    let indices: Vec<usize> = kept.iter().map(|(_, d)| *d).collect();
    let basis = columns_to_polymat(n, kept.into_iter().map(|(c, _)| c).collect());
    if want > 0 && !is_minimal_basis(&basis)?.holds() {
        return Err(Error::Identity(
            "degree sweep produced a non-minimal basis".into(),
        ));
    }
    Ok(MinimalBasis { basis, indices })
}

/// Concatenate `n x 1` columns; an empty list gives an `n x 0` matrix.
pub fn columns_to_polymat(n: usize, cols: Vec<PolyMat>) -> PolyMat {
    cols.into_iter()
        .reduce(|a, b| a.hstack(&b))
        .unwrap_or_else(|| PolyMat::zero(n, 0, 0))
}

/// Tests whether the columns of `a` form a minimal basis of the space they span.
///
/// Full rank everywhere is read from the invariant factors: the gcd of the
/// maximal minors is their product, so it is constant exactly when there are
/// `p` of them and all equal 1.
pub fn is_minimal_basis(a: &PolyMat) -> Result<MinimalityCheck> {
    let p = a.cols();
    let f = invariant_factors(a)?;
    let full_rank_everywhere = f.len() == p && f.iter().all(|d| d.degree() == Some(0));
    let column_reduced = match a.high_order_coefficient() {
        Ok(h) => h.rank() == p,
        Err(Error::ZeroColumn(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(MinimalityCheck {
        full_rank_everywhere,
        column_reduced,
    })
}

/// Polynomial coefficients `x` with `basis * x = target`, exploiting the predictable degree property.
///
/// Returns `None` when `target` is not a polynomial combination of the basis columns.
pub fn express_in_basis(basis: &MinimalBasis, target: &PolyMat) -> Option<PolyMat> {
    let n = basis.basis.rows();
    let p = basis.dim();
    let td = target.degree().unwrap_or(0);
    // unknowns: coefficients of x_j up to degree td - index_j
    let mut slots = Vec::new();
    for (j, &g) in basis.indices.iter().enumerate() {
        if g <= td {
            for e in 0..=(td - g) {
                slots.push((j, e));
            }
        }
    }
    let mut a = Mat::zeros(n * (td + 1), slots.len());
    for (s, &(j, e)) in slots.iter().enumerate() {
        let col = basis.basis.column(j);
        let v = column_to_stacked(&col.trimmed(), e, td);
        for (i, x) in v.into_iter().enumerate() {
            a[(i, s)] = x;
        }
    }
    let mut out_cols = Vec::new();
    for c in 0..target.cols() {
        let rhs = column_to_stacked(&target.column(c).trimmed(), 0, td);
        let sol = a.solve(&rhs)?;
        let mut coeffs = vec![Mat::zeros(p, 1); td + 1];
        for (s, &(j, e)) in slots.iter().enumerate() {
            coeffs[e][(j, 0)] = sol[s].clone();
        }
        out_cols.push(PolyMat::new(coeffs).expect("shapes"));
    }
    Some(columns_to_polymat(p, out_cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::SPoly;

    #[test]
    fn row_vector_example() {
        let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]]).unwrap();
        let mb = minimal_basis(&p).unwrap();
        assert_eq!(mb.indices, vec![2]);
        assert!(p.mul(&mb.basis).is_zero());
        assert_eq!(mb.basis.entry(0, 0), SPoly::from_ints(&[0, 0, 1]));
        assert_eq!(mb.basis.entry(1, 0).trimmed(), SPoly::from_ints(&[-1]));
    }

    #[test]
    fn zero_and_full_rank() {
        let z = PolyMat::zero(2, 3, 2);
        let mb = minimal_basis(&z).unwrap();
        assert_eq!(mb.indices, vec![0, 0, 0]);
        let i = PolyMat::identity(2);
        assert_eq!(minimal_basis(&i).unwrap().dim(), 0);
    }

    #[test]
    fn minimality_test() {
        let good = PolyMat::from_int_entries(&[&[&[0, 0, 1]], &[&[-1]]]).unwrap();
        assert!(is_minimal_basis(&good).unwrap().holds());
        // (z-1) times a basis vector loses rank at 1
        let bad = good.mul_scalar_poly(&SPoly::from_ints(&[-1, 1]));
        let c = is_minimal_basis(&bad).unwrap();
        assert!(!c.full_rank_everywhere && c.column_reduced);
        // [1, z; 0, 1]-mixing of [1;0], [0;1] is full rank but not column reduced
        let mixed = PolyMat::from_int_entries(&[&[&[1], &[0, 1]], &[&[0], &[1]]]).unwrap();
        let c = is_minimal_basis(&mixed).unwrap();
        assert!(c.full_rank_everywhere && !c.column_reduced);
    }

    #[test]
    fn expressibility() {
        let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]]).unwrap();
        let mb = minimal_basis(&p).unwrap();
        let t = mb.basis.mul_scalar_poly(&SPoly::from_ints(&[3, 1]));
        let x = express_in_basis(&mb, &t).unwrap();
        assert_eq!(x.entry(0, 0).trimmed(), SPoly::from_ints(&[3, 1]));
        let not_in = PolyMat::from_int_entries(&[&[&[1]], &[&[0]]]).unwrap();
        assert!(express_in_basis(&mb, &not_in).is_none());
    }
}
