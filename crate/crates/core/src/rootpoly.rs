//! Root polynomials at finite eigenvalues: validity, independence,
//! completeness and maximality, greedy construction and lifting to DL(P, v).

use num_traits::Zero;

use crate::eigenstructure::{minimal_basis, partial_multiplicities_at, MinimalBasis};
use crate::error::{Error, Result};
use crate::exactalg::{rat, Mat, Rat, RowSpace, SPoly};
use crate::pencil::{check_exclusion, DLPencil};
use crate::polymat::PolyMat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPoly {
    /// `n x 1`.
    pub vec: PolyMat,
    pub lambda: Rat,
    pub order: usize,
}

/// Why a vector polynomial is not a root polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// `P(lambda) r(lambda) != 0`.
    OrderZero,
    /// `P r` vanishes identically.
    InKernel,
    /// `r(lambda)` lies in the span of `M(lambda)`.
    InMinimalSpan,
}

/// Members sorted by non-increasing order, with the three set properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPolySet {
    pub lambda: Rat,
    pub members: Vec<RootPoly>,
    pub lambda_independent: bool,
    pub complete: bool,
    pub maximal: bool,
}

impl RootPolySet {
    pub fn orders(&self) -> Vec<usize> {
        self.members.iter().map(|r| r.order).collect()
    }
}

/// Largest `l` with `(z - x)^l` dividing every entry; `None` for the zero vector.
pub fn vanishing_order(w: &PolyMat, x: &Rat) -> Option<usize> {
    (0..w.rows())
        .flat_map(|i| (0..w.cols()).map(move |j| (i, j)))
        .filter_map(|(i, j)| w.entry(i, j).order_at(x))
        .min()
}

/// Order of `r` as a root polynomial at `lambda`, or the failed condition.
pub fn check_root_poly(
    p: &PolyMat,
    m: &MinimalBasis,
    r: &PolyMat,
    lambda: &Rat,
) -> std::result::Result<usize, Rejection> {
    let order = match vanishing_order(&p.mul(r), lambda) {
        None => return Err(Rejection::InKernel),
        Some(0) => return Err(Rejection::OrderZero),
        Some(l) => l,
    };
    let ml = m.basis.eval(lambda);
    let rl = r.eval(lambda);
    if ml.hstack(&rl).rank() == ml.rank() {
        return Err(Rejection::InMinimalSpan);
    }
    Ok(order)
}

/// `n - rank P(lambda) - rank M(lambda)`: the size of a complete set.
pub fn complete_size(p: &PolyMat, m: &MinimalBasis, lambda: &Rat) -> usize {
    let ker = p.cols() - p.eval(lambda).rank();
    ker - m.basis.eval(lambda).rank()
}

fn descending(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Validates every member and computes the independence, completeness and
/// maximality flags. Maximality uses the order-sum criterion.
pub fn classify_set(
    p: &PolyMat,
    m: &MinimalBasis,
    members: &[PolyMat],
    lambda: &Rat,
) -> Result<RootPolySet> {
    let mut out = Vec::with_capacity(members.len());
    for (i, r) in members.iter().enumerate() {
        let order = check_root_poly(p, m, r, lambda).map_err(|e| {
            Error::Hypothesis(format!("member {i} is not a root polynomial: {e:?}"))
        })?;
        out.push(RootPoly {
            vec: r.clone(),
            lambda: lambda.clone(),
            order,
        });
    }
    out.sort_by_key(|r| std::cmp::Reverse(r.order));
    let ml = m.basis.eval(lambda);
    let values = out
        .iter()
        .fold(ml.clone(), |acc, r| acc.hstack(&r.vec.eval(lambda)));
    let lambda_independent = values.rank() == ml.cols() + out.len();
    let complete = lambda_independent && out.len() == complete_size(p, m, lambda);
    let mults = partial_multiplicities_at(p, lambda)?;
    let sum: usize = out.iter().map(|r| r.order).sum();
    let maximal = complete && sum == mults.iter().sum::<usize>();
    Ok(RootPolySet {
        lambda: lambda.clone(),
        members: out,
        lambda_independent,
        complete,
        maximal,
    })
}

/// Nullspace of the local block Toeplitz matrix: Taylor coefficient stacks
/// `(r_0, ..., r_{l-1})` with `P r ≡ 0 mod (z - lambda)^l`.
pub fn local_kernel(p: &PolyMat, lambda: &Rat, l: usize) -> Vec<Vec<Rat>> {
    let (m, n) = (p.rows(), p.cols());
    let t = p.taylor_at(lambda, l);
    let mut big = Mat::zeros(m * l, n * l);
    for s in 0..l {
        for h in 0..=s {
            big.set_block(s * m, h * n, &t[s - h]);
        }
    }
    big.nullspace()
}

fn from_local(x: &[Rat], n: usize, lambda: &Rat) -> PolyMat {
    let l = x.len() / n;
    let shift = SPoly::linear_root(lambda);
    let mut acc = PolyMat::zero(n, 1, l.saturating_sub(1));
    let mut pw = SPoly::one();
    for j in 0..l {
        let c = PolyMat::constant(Mat::column_vector(&x[j * n..(j + 1) * n]));
        acc = acc.add(&c.mul_scalar_poly(&pw));
        pw = &pw * &shift;
    }
    acc.trimmed()
}

/// Whether some root polynomial of order at least `l` has a value outside `span`.
fn improvable(p: &PolyMat, lambda: &Rat, l: usize, span: &RowSpace) -> Option<Vec<Rat>> {
    let n = p.cols();
    local_kernel(p, lambda, l)
        .into_iter()
        .find(|x| !span.contains(&x[..n]))
}

fn value_span(m: &MinimalBasis, lambda: &Rat) -> RowSpace {
    let ml = m.basis.eval(lambda);
    let mut span = RowSpace::new();
    for j in 0..ml.cols() {
        span.insert(&ml.column(j));
    }
    span
}

/// Greedy maximal set for the given target orders (non-increasing).
pub fn maximal_set_with(
    p: &PolyMat,
    m: &MinimalBasis,
    lambda: &Rat,
    targets: &[usize],
) -> Result<RootPolySet> {
    let n = p.cols();
    let mut span = value_span(m, lambda);
    let mut picked = Vec::new();
    for &l in targets {
        let x = improvable(p, lambda, l, &span).ok_or_else(|| {
            Error::Identity(format!("no root polynomial of order {l} left at {lambda}"))
        })?;
        span.insert(&x[..n]);
        picked.push(from_local(&x, n, lambda));
    }
    let set = classify_set(p, m, &picked, lambda)?;
    if set.orders() != targets || !set.maximal {
        return Err(Error::Identity(format!(
            "greedy root polynomials have orders {:?}, wanted {targets:?}",
            set.orders()
        )));
    }
    Ok(set)
}

/// Maximal set of root polynomials at an eigenvalue.
pub fn maximal_set(p: &PolyMat, lambda: &Rat) -> Result<RootPolySet> {
    let mults = descending(partial_multiplicities_at(p, lambda)?);
    if mults.is_empty() {
        return Err(Error::Hypothesis(format!("{lambda} is not an eigenvalue")));
    }
    let m = minimal_basis(p)?;
    maximal_set_with(p, &m, lambda, &mults)
}

/// Maximality decided straight from the definition: a complete set where no
/// member can be replaced by a higher-order root polynomial independent of
/// the members before it.
pub fn maximal_by_probe(p: &PolyMat, m: &MinimalBasis, set: &RootPolySet) -> bool {
    if !set.complete {
        return false;
    }
    let n = p.cols();
    let mut span = value_span(m, &set.lambda);
    for r in &set.members {
        if improvable(p, &set.lambda, r.order + 1, &span).is_some() {
            return false;
        }
        span.insert(&r.vec.eval(&set.lambda).column(0)[..n]);
    }
    true
}

/// Maximality by matching orders against the partial multiplicities one by one.
pub fn maximal_by_orders(p: &PolyMat, set: &RootPolySet) -> Result<bool> {
    Ok(set.complete && descending(partial_multiplicities_at(p, &set.lambda)?) == set.orders())
}

/// `rho_i = V(z) ⊗ r_i(z)`, checked to be a root polynomial of `L` with the same order.
///
/// The lifted set is classified against `L` itself.
pub fn lift_root_polys(set: &RootPolySet, dl: &DLPencil, p: &PolyMat) -> Result<RootPolySet> {
    if dl.ansatz.infinite_root_multiplicity() > 0 {
        return Err(Error::Hypothesis("ansatz has roots at infinity".into()));
    }
    if !check_exclusion(p, &dl.ansatz)?.holds() {
        return Err(Error::Hypothesis(
            "an ansatz root is an eigenvalue of P".into(),
        ));
    }
    let v = PolyMat::vandermonde_vector(dl.k());
    let lifted: Vec<PolyMat> = set.members.iter().map(|r| v.kron(&r.vec)).collect();
    let ml = minimal_basis(&dl.pencil)?;
    let out = classify_set(&dl.pencil, &ml, &lifted, &set.lambda)?;
    // classification sorts; orders are compared as multisets
    let mut before = set.orders();
    before.sort_unstable();
    let mut after = out.orders();
    after.sort_unstable();
    if before != after {
        return Err(Error::Identity(format!(
            "lifting changed orders {before:?} -> {after:?}"
        )));
    }
    Ok(out)
}

/// Root polynomial made of a constant vector.
pub fn constant_vector(v: &[Rat]) -> PolyMat {
    PolyMat::constant(Mat::column_vector(v))
}

/// Unit vector `e_i` of length `n`.
pub fn unit_vector(n: usize, i: usize) -> PolyMat {
    constant_vector(
        &(0..n)
            .map(|j| if i == j { rat(1) } else { Rat::zero() })
            .collect::<Vec<_>>(),
    )
}
