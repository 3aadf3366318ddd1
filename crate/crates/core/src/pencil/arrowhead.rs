use num_traits::Zero;

use super::{build_dl, confluent_vandermonde, Ansatz};
use crate::error::{Error, Result};
use crate::exactalg::{Mat, Rat, SPoly};
use crate::polymat::PolyMat;

/// Block arrowhead pencil `A(mu0) + (z - mu0) A_1` for `v = prod (z - mu_i)` with distinct `mu_i`.
///
/// Block 0 corresponds to `mu0`, block `i` to `mu_i`.
pub fn arrowhead_pencil(p: &PolyMat, roots: &[Rat], mu0: &Rat) -> Result<PolyMat> {
    let k = roots.len() + 1;
    if p.grade() != k {
        return Err(Error::Dimension(format!(
            "{} roots need grade {k}, got {}",
            roots.len(),
            p.grade()
        )));
    }
    for (i, r) in roots.iter().enumerate() {
        if r == mu0 || roots[..i].contains(r) {
            return Err(Error::Hypothesis(format!(
                "nodes must be distinct, {r} repeats"
            )));
        }
    }
    let (m, n) = (p.rows(), p.cols());
    let v = SPoly::from_roots(roots);
    let dv = v.derivative(1, false);
    let dp = p.derivative(1, false);
    let mut a0 = Mat::zeros(k * m, k * n);
    let mut a1 = Mat::zeros(k * m, k * n);
    let v0 = v.eval(mu0);
    a0.set_block(0, 0, &p.eval(mu0).scale(&v0));
    a1.set_block(
        0,
        0,
        &dp.eval(mu0)
            .scale(&v0)
            .sub(&p.eval(mu0).scale(&dv.eval(mu0))),
    );
    for (i, mu) in roots.iter().enumerate() {
        let b = i + 1;
        let pm = p.eval(mu);
        let dvm = dv.eval(mu);
        a0.set_block(b * m, b * n, &pm.scale(&((mu - mu0) * &dvm)));
        a1.set_block(b * m, b * n, &pm.scale(&-dvm));
        let border = pm.scale(&(&v0 / (mu - mu0)));
        a1.set_block(0, b * n, &border);
        a1.set_block(b * m, 0, &border);
    }
    // A(z) = (A(mu0) - mu0 A1) + z A1
    let constant = a0.sub(&a1.scale(mu0));
    PolyMat::new(vec![constant, a1])
}

/// Whether the arrowhead pencil equals `(W^T ⊗ I_m) DL(P, v) (W ⊗ I_n)` with `W = [V(mu0), V(mu_1), ...]`.
pub fn arrowhead_matches_dl(p: &PolyMat, roots: &[Rat], mu0: &Rat) -> Result<bool> {
    let a = arrowhead_pencil(p, roots, mu0)?;
    let k = roots.len() + 1;
    let v = Ansatz::from_poly(&SPoly::from_roots(roots), k)?;
    let dl = build_dl(p, &v)?;
    let mut nodes = vec![(mu0.clone(), 1)];
    nodes.extend(roots.iter().map(|r| (r.clone(), 1)));
    let w = confluent_vandermonde(&nodes, k);
    let congruent = dl.pencil.congruence(
        &w.transpose().kron(&Mat::identity(p.rows())),
        &w.kron(&Mat::identity(p.cols())),
    );
    Ok(congruent == a && !w.det().is_zero())
}
