//! Independent oracles. Nothing here calls the library's eigenstructure,
//! Smith or minimal basis code; only the basic `Mat` linear algebra and
//! the data types are shared.

#![allow(dead_code)]

use std::sync::atomic::{AtomicUsize, Ordering};

use dlpencil::eigenstructure::{full_eigenstructure, Eigenstructure};
use dlpencil::exactalg::{rat, Mat, Rat, SPoly};
use dlpencil::polymat::PolyMat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense coefficient vector, constant term first, no trailing zeros.
pub type Coeffs = Vec<Rat>;

pub fn trim(mut a: Coeffs) -> Coeffs {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn padd(a: &[Rat], b: &[Rat]) -> Coeffs {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(Rat::zero)
                    + b.get(i).cloned().unwrap_or_else(Rat::zero)
            })
            .collect(),
    )
}

pub fn pneg(a: &[Rat]) -> Coeffs {
    a.iter().map(|c| -c).collect()
}

pub fn pmul(a: &[Rat], b: &[Rat]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Long division, `b` nonzero.
pub fn pdivrem(a: &[Rat], b: &[Rat]) -> (Coeffs, Coeffs) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rat::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn pmonic(a: &[Rat]) -> Coeffs {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(l) => {
            let l = l.clone();
            a.iter().map(|c| c / &l).collect()
        }
    }
}

pub fn pgcd(a: &[Rat], b: &[Rat]) -> Coeffs {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = pdivrem(&x, &y).1;
        x = y;
        y = pmonic(&r);
    }
    pmonic(&x)
}

pub fn peval(a: &[Rat], x: &Rat) -> Rat {
    a.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

pub fn pderiv(a: &[Rat]) -> Coeffs {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect(),
    )
}

/// Order of vanishing at `x` by repeated synthetic division; `None` for zero.
pub fn porder(a: &[Rat], x: &Rat) -> Option<usize> {
    let mut a = trim(a.to_vec());
    if a.is_empty() {
        return None;
    }
    let lin = vec![-x.clone(), Rat::one()];
    let mut k = 0;
    loop {
        let (q, r) = pdivrem(&a, &lin);
        if !r.is_empty() {
            return Some(k);
        }
        a = q;
        k += 1;
    }
}

/// Coefficients of `(z - x)^j`-expansion, by repeated division.
pub fn ptaylor(a: &[Rat], x: &Rat, count: usize) -> Vec<Rat> {
    let lin = vec![-x.clone(), Rat::one()];
    let mut a = trim(a.to_vec());
    let mut out = Vec::new();
    for _ in 0..count {
        let (q, r) = pdivrem(&a, &lin);
        out.push(r.first().cloned().unwrap_or_else(Rat::zero));
        a = q;
    }
    out
}

pub fn spoly_coeffs(s: &SPoly) -> Coeffs {
    trim(s.coeffs().to_vec())
}

pub fn entry(p: &PolyMat, i: usize, j: usize) -> Coeffs {
    trim(p.coeffs().iter().map(|c| c[(i, j)].clone()).collect())
}

pub fn entries(p: &PolyMat) -> Vec<Vec<Coeffs>> {
    (0..p.rows())
        .map(|i| (0..p.cols()).map(|j| entry(p, i, j)).collect())
        .collect()
}

/// Horner on the coefficient matrices.
pub fn eval_at(p: &PolyMat, x: &Rat) -> Mat {
    let mut acc = Mat::zeros(p.rows(), p.cols());
    for c in p.coeffs().iter().rev() {
        acc = acc.scale(x).add(c);
    }
    acc
}

pub fn points(count: usize) -> Vec<Rat> {
    (0..count as i64).map(|i| if i % 2 == 0 { rat(i / 2) } else { rat(-(i + 1) / 2) } * Rat::new(BigInt::from(3), BigInt::from(2)) + Rat::new(BigInt::from(1), BigInt::from(7))).collect()
}

// ---------------------------------------------------------------- minors

pub fn laplace_det(a: &[Vec<Coeffs>]) -> Coeffs {
    let n = a.len();
    match n {
        0 => vec![Rat::one()],
        1 => a[0][0].clone(),
        _ => {
            let mut acc = Vec::new();
            for j in 0..n {
                if a[0][j].is_empty() {
                    continue;
                }
                let minor: Vec<Vec<Coeffs>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = pmul(&a[0][j], &laplace_det(&minor));
                acc = if j % 2 == 0 {
                    padd(&acc, &term)
                } else {
                    padd(&acc, &pneg(&term))
                };
            }
            acc
        }
    }
}

pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Monic gcd of all `j x j` minors.
pub fn minor_gcd(a: &[Vec<Coeffs>], j: usize) -> Coeffs {
    let (m, n) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut g = Vec::new();
    for rows in combinations(m, j) {
        for cols in combinations(n, j) {
            let sub: Vec<Vec<Coeffs>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect())
                .collect();
            g = pgcd(&g, &laplace_det(&sub));
            if g.len() == 1 {
                return g;
            }
        }
    }
    g
}

/// Invariant factors `D_j / D_{j-1}` from determinantal divisors.
pub fn invariant_factors_by_minors(p: &PolyMat) -> Vec<Coeffs> {
    let a = entries(p);
    let mut prev = vec![Rat::one()];
    let mut out = Vec::new();
    for j in 1..=p.rows().min(p.cols()) {
        let d = minor_gcd(&a, j);
        if d.is_empty() {
            break;
        }
        let (q, r) = pdivrem(&d, &prev);
        assert!(r.is_empty(), "determinantal divisors do not divide");
        out.push(pmonic(&q));
        prev = d;
    }
    out
}

// ---------------------------------------------------------------- ranks

/// Normal rank as the maximum rank over enough distinct points.
pub fn normal_rank(p: &PolyMat) -> usize {
    let need = p.grade() * p.rows().min(p.cols()) + 1;
    points(need)
        .iter()
        .map(|x| eval_at(p, x).rank())
        .max()
        .unwrap_or(0)
}

/// `T_j = sum_i C(i, j) x^{i-j} P_i`.
pub fn taylor_coeffs(p: &PolyMat, x: &Rat, count: usize) -> Vec<Mat> {
    (0..count)
        .map(|j| {
            let mut acc = Mat::zeros(p.rows(), p.cols());
            for (i, c) in p.coeffs().iter().enumerate().skip(j) {
                let mut f = Rat::one();
                for t in 0..j {
                    f = f * rat((i - t) as i64) / rat((t + 1) as i64);
                }
                for _ in 0..(i - j) {
                    f *= x;
                }
                acc = acc.add(&c.scale(&f));
            }
            acc
        })
        .collect()
}

/// Lower block triangular Toeplitz matrix of the first `l` Taylor blocks.
pub fn local_toeplitz(t: &[Mat], l: usize, m: usize, n: usize) -> Mat {
    let mut a = Mat::zeros(l * m, l * n);
    for r in 0..l {
        for c in 0..=r {
            if let Some(b) = t.get(r - c) {
                a.set_block(r * m, c * n, b);
            }
        }
    }
    a
}

/// Ascending partial multiplicities at `x` from the kernel dimensions of
/// the local Toeplitz matrices: `dim ker T_j - dim ker T_{j-1} = p + #{mult >= j}`.
pub fn partial_mults_by_rank_profile(p: &PolyMat, x: &Rat) -> Vec<usize> {
    let (m, n) = (p.rows(), p.cols());
    let nullity = n - normal_rank(p);
    let bound = p.grade() * m.min(n) + 2;
    let t = taylor_coeffs(p, x, bound);
    let mut at_least = Vec::new();
    let mut prev = 0;
    for j in 1..=bound {
        let a = local_toeplitz(&t, j, m, n);
        let ker = j * n - a.rank();
        let c = ker - prev - nullity;
        prev = ker;
        if c == 0 {
            break;
        }
        at_least.push(c);
    }
    let mut out = Vec::new();
    for (j, &c) in at_least.iter().enumerate() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(j + 1, c - next));
    }
    out.sort_unstable();
    out
}

/// Grade reversal done by hand.
pub fn reversal(p: &PolyMat) -> PolyMat {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    PolyMat::new(c).unwrap()
}

pub fn infinite_mults_by_rank_profile(p: &PolyMat) -> Vec<usize> {
    partial_mults_by_rank_profile(&reversal(p), &rat(0))
}

/// Sorted right minimal indices from convolution nullities:
/// `N_d - N_{d-1} = #{eps <= d}`.
pub fn right_indices_by_nullity(p: &PolyMat) -> Vec<usize> {
    let (m, n, g) = (p.rows(), p.cols(), p.grade());
    let dim = n - normal_rank(p);
    let mut out = Vec::new();
    let (mut prev_n, mut prev_le) = (0usize, 0usize);
    let mut d = 0;
    while out.len() < dim {
        let mut a = Mat::zeros(m * (d + g + 1), n * (d + 1));
        for col in 0..=d {
            for (i, c) in p.coeffs().iter().enumerate() {
                a.set_block((col + i) * m, col * n, c);
            }
        }
        let nd = n * (d + 1) - a.rank();
        let le = nd - prev_n;
        out.extend(std::iter::repeat_n(d, le - prev_le));
        prev_n = nd;
        prev_le = le;
        d += 1;
        assert!(d <= g * m.min(n) + 2, "nullity sweep did not terminate");
    }
    out
}

pub fn left_indices_by_nullity(p: &PolyMat) -> Vec<usize> {
    right_indices_by_nullity(&p.transpose())
}

// ---------------------------------------------------------------- minimality

/// Highest column degrees and the high-order coefficient matrix.
pub fn high_order(a: &PolyMat) -> (Vec<usize>, Mat) {
    let degs: Vec<usize> = (0..a.cols())
        .map(|j| {
            (0..a.rows())
                .filter_map(|i| entry(a, i, j).len().checked_sub(1))
                .max()
                .expect("zero column")
        })
        .collect();
    let h = Mat::from_fn(a.rows(), a.cols(), |i, j| a.coeff(degs[j])[(i, j)].clone());
    (degs, h)
}

/// Full column rank everywhere (maximal minors coprime) and column reduced.
pub fn minimal_by_minors(a: &PolyMat) -> bool {
    if a.cols() == 0 {
        return true;
    }
    let g = minor_gcd(&entries(a), a.cols());
    let (_, h) = high_order(a);
    g.len() == 1 && h.rank() == a.cols()
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Coeffs {
    let n = xs.len();
    let mut dd: Vec<Rat> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc: Coeffs = Vec::new();
    for i in (0..n).rev() {
        acc = padd(&pmul(&acc, &[-xs[i].clone(), Rat::one()]), &[dd[i].clone()]);
    }
    acc
}

/// Full column rank at every point: the gcd of a few maximal minors,
/// each interpolated from determinants, has no root where rank drops.
pub fn full_rank_everywhere(a: &PolyMat) -> bool {
    let r = a.cols();
    if r == 0 {
        return true;
    }
    let (degs, _) = high_order(a);
    let bound: usize = degs.iter().sum();
    let xs = points(bound + 1);
    let mut g: Coeffs = Vec::new();
    let probe = &points(bound + 2)[bound + 1];
    let at_probe = eval_at(a, probe);
    let rows = a.rows();
    // row subsets from rotated row orders
    for shift in 0..rows {
        let order: Vec<usize> = (0..rows).map(|i| (i + shift) % rows).collect();
        let permuted = Mat::from_fn(rows, r, |i, j| at_probe[(order[i], j)].clone());
        let (_, pivots) = permuted.transpose().rref();
        if pivots.len() < r {
            return false;
        }
        let chosen: Vec<usize> = pivots.iter().map(|&p| order[p]).collect();
        let ys: Vec<Rat> = xs
            .iter()
            .map(|x| {
                let e = eval_at(a, x);
                Mat::from_fn(r, r, |i, j| e[(chosen[i], j)].clone()).det()
            })
            .collect();
        g = pgcd(&g, &interpolate(&xs, &ys));
        if g.len() == 1 {
            return true;
        }
    }
    if g.is_empty() {
        return false;
    }
    let split = dlpencil::exactalg::rational_roots(&SPoly::new(g)).unwrap();
    split.cofactor.degree().unwrap_or(0) == 0
        && split.roots.iter().all(|(x, _)| eval_at(a, x).rank() == r)
}

/// Column reduced with full column rank everywhere.
pub fn forney_holds(a: &PolyMat) -> bool {
    let (_, h) = high_order(a);
    h.rank() == a.cols() && full_rank_everywhere(a)
}

// ---------------------------------------------------------------- misc

pub fn vandermonde_at(k: usize, x: &Rat) -> Vec<Rat> {
    let mut v = vec![Rat::one(); k];
    for i in (0..k.saturating_sub(1)).rev() {
        v[i] = &v[i + 1] * x;
    }
    v
}

pub fn kron_col(v: &[Rat], n: usize) -> Mat {
    Mat::column_vector(v).kron(&Mat::identity(n))
}

/// Normalized confluent Vandermonde matrix from differentiated monomials.
pub fn confluent_oracle(nodes: &[(Rat, usize)], k: usize) -> Mat {
    let mut cols = Vec::new();
    for (mu, l) in nodes {
        for j in 0..*l {
            let mut fact = Rat::one();
            for t in 1..=j {
                fact *= rat(t as i64);
            }
            let col = (0..k)
                .map(|i| {
                    let mut mono = vec![Rat::zero(); k - i];
                    mono[k - 1 - i] = Rat::one();
                    let mut d = mono;
                    for _ in 0..j {
                        d = pderiv(&d);
                    }
                    peval(&d, mu) / &fact
                })
                .collect();
            cols.push(col);
        }
    }
    Mat::from_columns(&cols, k)
}

/// Vanishing order of `P r` at `x`, computed entrywise.
pub fn root_order(p: &PolyMat, r: &PolyMat, x: &Rat) -> Option<usize> {
    let pe = entries(p);
    let re: Vec<Coeffs> = (0..r.rows()).map(|i| entry(r, i, 0)).collect();
    (0..p.rows())
        .filter_map(|i| {
            let mut acc = Vec::new();
            for (j, rj) in re.iter().enumerate() {
                acc = padd(&acc, &pmul(&pe[i][j], rj));
            }
            porder(&acc, x)
        })
        .min()
}

// ---------------------------------------------------------------- index sum

pub static INDEX_SUM_CHECKED: AtomicUsize = AtomicUsize::new(0);
pub static INDEX_SUM_VIOLATED: AtomicUsize = AtomicUsize::new(0);

/// Library eigenstructure, counted and checked against the index sum.
pub fn eig(p: &PolyMat, candidates: &[Rat]) -> Eigenstructure {
    let e = full_eigenstructure(p, candidates).expect("eigenstructure");
    INDEX_SUM_CHECKED.fetch_add(1, Ordering::Relaxed);
    let total: usize = e.finite.values().flatten().sum::<usize>()
        + e.infinite.iter().sum::<usize>()
        + e.right.iter().sum::<usize>()
        + e.left.iter().sum::<usize>()
        + e.irrational_degree;
    if total != e.grade * e.rank {
        INDEX_SUM_VIOLATED.fetch_add(1, Ordering::Relaxed);
    }
    e
}

pub fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
