use num_traits::Zero;

use super::{binomial, factorial, rat_pow, Mat, Rat, SPoly};
use crate::error::{Error, Result};

/// Hermite interpolation basis for nodes `(mu_j, l_j)`.
///
/// Returns `T = sum l_j` polynomials of degree at most `T - 1`, ordered
/// node-major then derivative-order-minor. The polynomial at position
/// `(j, a)` satisfies `H^{(b)}(mu_t) = [t == j && b == a]` for plain
/// (unnormalized) derivatives.
pub fn hermite_basis(nodes: &[(Rat, usize)]) -> Result<Vec<SPoly>> {
    for (i, (mu, _)) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|(nu, _)| nu == mu) {
            return Err(Error::DuplicateNode(mu.to_string()));
        }
    }
    let t: usize = nodes.iter().map(|(_, l)| l).sum();
    if t == 0 {
        return Ok(Vec::new());
    }
    // Row (node, b) holds the b-th derivative of each monomial at the node.
    let mut rows = Vec::with_capacity(t);
    for (mu, l) in nodes {
        for b in 0..*l {
            let row = (0..t)
                .map(|c| {
                    if c < b {
                        Rat::zero()
                    } else {
                        Rat::from_integer(binomial(c, b) * factorial(b)) * rat_pow(mu, c - b)
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    let k = Mat::from_rows(rows, t);
    let inv = k
        .inverse()
        .ok_or_else(|| Error::Identity("confluent Vandermonde matrix is singular".into()))?;
    Ok((0..t)
        .map(|i| {
            SPoly::new(inv.column(i))
                .with_grade(t - 1)
                .expect("degree below T")
        })
        .collect())
}

/// Normalized mixed derivative `∂_x^a ∂_y^b h_c / (a! b!)` at `x = y = mu`,
/// where `h_c(x, y) = sum_{h=0}^{c} x^{c-h} y^h`.
///
/// Equals zero when `a + b > c`, otherwise `C(c+1, a+b+1) mu^{c-a-b}`.
pub fn complete_homogeneous_deriv(c: usize, a: usize, b: usize, mu: &Rat) -> Rat {
    if a + b > c {
        return Rat::zero();
    }
    let coeff = Rat::from_integer(binomial(c + 1, a + b + 1));
    coeff * rat_pow(mu, c - a - b)
}
