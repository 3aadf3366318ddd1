use super::{check_exclusion, DLPencil};
use crate::eigenstructure::{is_minimal_basis, MinimalBasis};
use crate::error::{Error, Result};
use crate::exactalg::{hermite_basis, rational_roots, Mat};
use crate::polymat::PolyMat;

/// Minimal basis `F = [C, E/v]` of `ker L(z)` built from a minimal basis `M` of `ker P(z)`.
#[derive(Clone, Debug)]
pub struct StructuredBasis {
    /// Constant part, `kn x (k-1)p`.
    pub c: Mat,
    /// `(V ⊗ M - sum H_i C_i) / v`, `kn x p`.
    pub e_over_v: PolyMat,
    pub f: PolyMat,
    /// Column degrees of `F`: zeros for `C`, then the minimal indices of `P`.
    pub degrees: Vec<usize>,
}

/// Builds `F` and asserts `L C = 0`, `L F = 0` and minimality of `F`.
///
/// Requires `deg v = k - 1` with rational roots none of which is an
/// eigenvalue of `P`.
pub fn structured_minimal_basis(
    dl: &DLPencil,
    p: &PolyMat,
    m: &MinimalBasis,
) -> Result<StructuredBasis> {
    let k = dl.k();
    let v = dl.ansatz.poly();
    if dl.ansatz.infinite_root_multiplicity() > 0 {
        return Err(Error::Hypothesis("ansatz degree is below k - 1".into()));
    }
    let split = rational_roots(&v)?;
    if split.cofactor.degree().unwrap_or(0) > 0 {
        return Err(Error::Irrational(format!(
            "ansatz {v} has irrational roots"
        )));
    }
    if !check_exclusion(p, &dl.ansatz)?.holds() {
        return Err(Error::Hypothesis(
            "an ansatz root is an eigenvalue of P".into(),
        ));
    }
    let d = PolyMat::vandermonde_vector(k).kron(&m.basis);
    let nodes = split.roots;
    let h = hermite_basis(&nodes)?;
    let mut c_parts = Vec::new();
    for (mu, l) in &nodes {
        for a in 0..*l {
            c_parts.push(d.derivative(a, false).eval(mu));
        }
    }
    let mut e = d.clone();
    for (hi, ci) in h.iter().zip(&c_parts) {
        e = e.sub(&PolyMat::constant(ci.clone()).mul_scalar_poly(hi));
    }
    let e_over_v = e
        .div_scalar_poly(&v)
        .map_err(|_| Error::Identity("v does not divide E".into()))?;
    let c = c_parts
        .iter()
        .cloned()
        .reduce(|a, b| a.hstack(&b))
        .unwrap_or_else(|| Mat::zeros(k * dl.n, 0));
    let f = PolyMat::constant(c.clone()).hstack(&e_over_v);
    let mut degrees = vec![0; c.cols()];
    for (j, deg) in e_over_v.column_degrees().into_iter().enumerate() {
        let deg = deg.ok_or(Error::ZeroColumn(c.cols() + j))?;
        if deg != m.indices[j] {
            return Err(Error::Identity(format!(
                "column {j} of E/v has degree {deg}, expected {}",
                m.indices[j]
            )));
        }
        degrees.push(deg);
    }
    if !dl.pencil.mul(&PolyMat::constant(c.clone())).is_zero() {
        return Err(Error::Identity("L C != 0".into()));
    }
    if !dl.pencil.mul(&f).is_zero() {
        return Err(Error::Identity("L F != 0".into()));
    }
    if !is_minimal_basis(&f)?.holds() {
        return Err(Error::Identity("F is not a minimal basis".into()));
    }
    Ok(StructuredBasis {
        c,
        e_over_v,
        f,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenstructure::minimal_basis;
    use crate::exactalg::{rat, SPoly};
    use crate::pencil::{build_dl, Ansatz};

    #[test]
    fn worked_basis() {
        let p = PolyMat::from_int_entries(&[&[&[1], &[0, 0, 1]]]).unwrap();
        let v = Ansatz::new(vec![rat(1), rat(-1)]).unwrap();
        let dl = build_dl(&p, &v).unwrap();
        let m = minimal_basis(&p).unwrap();
        let s = structured_minimal_basis(&dl, &p, &m).unwrap();
        assert_eq!(s.c, Mat::from_i64(&[&[1], &[-1], &[1], &[-1]]));
        let want =
            PolyMat::from_int_entries(&[&[&[1, 1, 1]], &[&[-1]], &[&[1, 1]], &[&[0]]]).unwrap();
        assert_eq!(s.e_over_v, want);
        assert_eq!(s.degrees, vec![0, 2]);
    }

    #[test]
    fn rejects_bad_ansatz() {
        let p = PolyMat::from_int_entries(&[&[&[0, 1], &[0, 0, 1]]]).unwrap();
        let m = minimal_basis(&p).unwrap();
        let v = Ansatz::new(vec![rat(1), rat(0)]).unwrap();
        let dl = build_dl(&p, &v).unwrap();
        assert!(matches!(
            structured_minimal_basis(&dl, &p, &m),
            Err(Error::Hypothesis(_))
        ));
        let v = Ansatz::from_poly(&SPoly::from_ints(&[-2, 0, 1]), 3);
        assert!(v.is_ok());
    }
}
