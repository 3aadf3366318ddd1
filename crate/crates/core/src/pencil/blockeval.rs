use num_traits::Zero;

use super::{Ansatz, DLPencil};
use crate::error::{Error, Result};
use crate::exactalg::{binomial, rat_pow, rational_roots, Mat, Rat, SPoly};
use crate::polymat::PolyMat;

/// Columns `V^{(j)}(mu)/j!` for each node `(mu, l)` and `j < l`, node-major.
pub fn confluent_vandermonde(nodes: &[(Rat, usize)], k: usize) -> Mat {
    let mut cols = Vec::new();
    for (mu, l) in nodes {
        for j in 0..*l {
            let col = (0..k)
                .map(|i| {
                    let e = k - 1 - i;
                    if e < j {
                        Rat::zero()
                    } else {
                        Rat::from_integer(binomial(e, j)) * rat_pow(mu, e - j)
                    }
                })
                .collect();
            cols.push(col);
        }
    }
    Mat::from_columns(&cols, k)
}

/// `(mu0, 1)` followed by the roots of `v` with multiplicities.
///
/// Requires `deg v = k - 1`, rational roots and `v(mu0) != 0`.
pub fn evaluation_nodes(v: &Ansatz, mu0: &Rat) -> Result<Vec<(Rat, usize)>> {
    if v.infinite_root_multiplicity() > 0 {
        return Err(Error::Hypothesis("ansatz has roots at infinity".into()));
    }
    let split = rational_roots(&v.poly())?;
    if split.cofactor.degree().unwrap_or(0) > 0 {
        return Err(Error::Irrational(format!(
            "ansatz {} has irrational roots",
            v.poly()
        )));
    }
    if split.roots.iter().any(|(x, _)| x == mu0) {
        return Err(Error::Hypothesis(format!(
            "mu0 = {mu0} is a root of the ansatz"
        )));
    }
    let mut nodes = vec![(mu0.clone(), 1)];
    nodes.extend(split.roots);
    Ok(nodes)
}

/// Block-diagonal form `(W^T ⊗ I_m) L(mu0) (W ⊗ I_n) = ⊕ Q_i`.
#[derive(Clone, Debug)]
pub struct BlockEvaluation {
    pub nodes: Vec<(Rat, usize)>,
    pub w: Mat,
    pub product: Mat,
    /// `Q_i`, of size `l_i m x l_i n`.
    pub blocks: Vec<Mat>,
    /// `c_i = w^{(l_i)}(mu_i) / l_i!` with `w(z) = (z - mu0) v(z)`.
    pub scalars: Vec<Rat>,
}

impl BlockEvaluation {
    /// `sum_i l_i rank P(mu_i)`, a lower bound for `rank L(mu0)`.
    pub fn rank_lower_bound(&self, p: &PolyMat) -> usize {
        self.nodes.iter().map(|(mu, l)| l * p.eval(mu).rank()).sum()
    }
}

/// Congruence of `L(mu0)` by the confluent Vandermonde matrix of `(z - mu0) v(z)`.
///
/// Asserts that blocks between different nodes vanish and that each block
/// `(b, a)` of `Q_i` equals `sum_{h<=b} P^{(b-h)}(mu_i)/(b-h)! w^{(a+h+1)}(mu_i)/(a+h+1)!`,
/// which is zero above the antidiagonal and `c_i P(mu_i)` on it.
pub fn block_evaluation(dl: &DLPencil, p: &PolyMat, mu0: &Rat) -> Result<BlockEvaluation> {
    let k = dl.k();
    let (m, n) = (dl.m, dl.n);
    let nodes = evaluation_nodes(&dl.ansatz, mu0)?;
    let w_poly = &SPoly::linear_root(mu0) * &dl.ansatz.poly();
    let w = confluent_vandermonde(&nodes, k);
    let product = w
        .transpose()
        .kron(&Mat::identity(m))
        .mul(&dl.at(mu0))
        .mul(&w.kron(&Mat::identity(n)));
    let mut blocks = Vec::new();
    let mut scalars = Vec::new();
    let mut off = 0;
    for (i, (mu, l)) in nodes.iter().enumerate() {
        let l = *l;
        let q = product.block(off * m, off * n, l * m, l * n);
        // the rest of this block row must vanish
        let mut other = 0;
        for (j, (_, lj)) in nodes.iter().enumerate() {
            if j != i && !product.block(off * m, other * n, l * m, lj * n).is_zero() {
                return Err(Error::Identity(format!(
                    "coupling between evaluation nodes {i} and {j}"
                )));
            }
            other += lj;
        }
        let pt = p.taylor_at(mu, l);
        let wt = w_poly.taylor_at(mu, 2 * l + 1);
        let c = wt[l].clone();
        for b in 0..l {
            for a in 0..l {
                let mut want = Mat::zeros(m, n);
                for h in 0..=b {
                    want = want.add(&pt[b - h].scale(&wt[a + h + 1]));
                }
                let got = q.block(b * m, a * n, m, n);
                if got != want {
                    return Err(Error::Identity(format!(
                        "block ({b}, {a}) of Q_{i} differs from the Taylor formula"
                    )));
                }
                let pattern_ok = match (a + b).cmp(&(l - 1)) {
                    std::cmp::Ordering::Less => got.is_zero(),
                    std::cmp::Ordering::Equal => got == pt[0].scale(&c),
                    std::cmp::Ordering::Greater => true,
                };
                if !pattern_ok {
                    return Err(Error::Identity(format!(
                        "Q_{i} is not block anti-triangular"
                    )));
                }
            }
        }
        if c.is_zero() {
            return Err(Error::Identity(format!("c_{i} vanishes")));
        }
        blocks.push(q);
        scalars.push(c);
        off += l;
    }
    Ok(BlockEvaluation {
        nodes,
        w,
        product,
        blocks,
        scalars,
    })
}
