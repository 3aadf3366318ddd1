use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exactalg::{Rat, SPoly};
use crate::polymat::PolyMat;

/// `U P V = diag(d_1, ..., d_r, 0, ...)` with `U`, `V` unimodular and `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: PolyMat,
    pub v: PolyMat,
    /// Monic invariant factors `d_1, ..., d_r`.
    pub invariant_factors: Vec<SPoly>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The `m x n` diagonal matrix `U P V`.
    pub fn diagonal(&self, m: usize, n: usize) -> PolyMat {
        let g = self
            .invariant_factors
            .iter()
            .map(|d| d.grade())
            .max()
            .unwrap_or(0);
        PolyMat::from_fn(m, n, g, |i, j| {
            if i == j && i < self.invariant_factors.len() {
                self.invariant_factors[i].clone()
            } else {
                SPoly::zero(0)
            }
        })
        .expect("grades fit")
    }
}

struct Elimination {
    a: Vec<Vec<SPoly>>,
    u: Option<Vec<Vec<SPoly>>>,
    v: Option<Vec<Vec<SPoly>>>,
}

fn identity(n: usize) -> Vec<Vec<SPoly>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { SPoly::one() } else { SPoly::zero(0) })
                .collect()
        })
        .collect()
}

fn row_axpy(rows: &mut [Vec<SPoly>], target: usize, src: usize, q: &SPoly) {
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = (&*x - &(q * y)).trimmed();
        }
    }
}

fn col_axpy(rows: &mut [Vec<SPoly>], target: usize, src: usize, q: &SPoly) {
    for row in rows.iter_mut() {
        if !row[src].is_zero() {
            let t = &row[target] - &(q * &row[src]);
            row[target] = t.trimmed();
        }
    }
}

/// Scale factor turning a list of polynomials into primitive integer ones.
fn primitive_scale<'a>(polys: impl Iterator<Item = &'a SPoly>) -> Option<Rat> {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for p in polys {
        for c in p.coeffs() {
            if !c.is_zero() {
                lcm = lcm.lcm(c.denom());
                gcd = gcd.gcd(c.numer());
            }
        }
    }
    if gcd.is_zero() {
        return None;
    }
    let s = Rat::new(lcm, gcd);
    (!s.is_one()).then_some(s)
}

impl Elimination {
    fn new(p: &PolyMat, track: bool) -> Self {
        let a = p
            .entries()
            .into_iter()
            .map(|r| r.into_iter().map(|e| e.trimmed()).collect())
            .collect();
        Elimination {
            a,
            u: track.then(|| identity(p.rows())),
            v: track.then(|| identity(p.cols())),
        }
    }

    fn m(&self) -> usize {
        self.a.len()
    }

    fn n(&self) -> usize {
        self.a.first().map_or(0, |r| r.len())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for r in v {
                r.swap(i, j);
            }
        }
    }

    /// `row_target -= q * row_src`
    fn row_op(&mut self, target: usize, src: usize, q: &SPoly) {
        row_axpy(&mut self.a, target, src, q);
        if let Some(u) = &mut self.u {
            row_axpy(u, target, src, q);
        }
    }

    /// `col_target -= q * col_src`
    fn col_op(&mut self, target: usize, src: usize, q: &SPoly) {
        col_axpy(&mut self.a, target, src, q);
        if let Some(v) = &mut self.v {
            col_axpy(v, target, src, q);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Rat) {
        for x in &mut self.a[i] {
            *x = x.scale(c);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = x.scale(c);
            }
        }
    }

    fn normalize_row(&mut self, i: usize) {
        if let Some(s) = primitive_scale(self.a[i].iter()) {
            self.scale_row(i, &s);
        }
    }

    fn normalize_col(&mut self, j: usize) {
        let Some(s) = primitive_scale(self.a.iter().map(|r| &r[j])) else {
            return;
        };
        for r in &mut self.a {
            r[j] = r[j].scale(&s);
        }
        if let Some(v) = &mut self.v {
            for r in v {
                r[j] = r[j].scale(&s);
            }
        }
    }

    fn min_degree_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.m() {
            for j in t..self.n() {
                if let Some(d) = self.a[i][j].degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonalizes; with `chain` the diagonal also satisfies `d_t | d_{t+1}`.
    fn run(&mut self, chain: bool) -> Result<usize> {
        let steps = self.m().min(self.n());
        for t in 0..steps {
            loop {
                let Some((i, j)) = self.min_degree_entry(t) else {
                    return Ok(t);
                };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                let mut dirty = false;
                for i in t + 1..self.m() {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[i][t].divrem(&self.a[t][t])?;
                    self.row_op(i, t, &q);
                    self.normalize_row(i);
                    dirty |= !r.is_zero();
                }
                for j in t + 1..self.n() {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[t][j].divrem(&self.a[t][t])?;
                    self.col_op(j, t, &q);
                    self.normalize_col(j);
                    dirty |= !r.is_zero();
                }
                if dirty {
                    continue;
                }
                if chain {
                    if let Some(i) = self.first_non_multiple(t)? {
                        // bring the offending row into row t and start over
                        self.row_op(t, i, &SPoly::from_ints(&[-1]));
                        continue;
                    }
                }
                break;
            }
            let lc = self.a[t][t]
                .leading_coeff()
                .expect("pivot is nonzero")
                .recip();
            self.scale_row(t, &lc);
        }
        Ok(steps)
    }

    fn first_non_multiple(&self, t: usize) -> Result<Option<usize>> {
        let d = &self.a[t][t];
        for i in t + 1..self.m() {
            for j in t + 1..self.n() {
                if !self.a[i][j].is_zero() && !d.divides(&self.a[i][j])? {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }
}

fn to_polymat(rows: &[Vec<SPoly>]) -> PolyMat {
    PolyMat::from_entries(rows).expect("rectangular")
}

/// Smith form by Euclidean elimination on minimal-degree pivots.
pub fn smith_form(p: &PolyMat) -> Result<SmithForm> {
    let mut e = Elimination::new(p, true);
    let r = e.run(true)?;
    let invariant_factors = (0..r).map(|t| e.a[t][t].clone()).collect();
    Ok(SmithForm {
        u: to_polymat(e.u.as_ref().expect("tracked")),
        v: to_polymat(e.v.as_ref().expect("tracked")),
        invariant_factors,
    })
}

/// Monic invariant factors `d_1 | ... | d_r` without the transformations.
///
/// Diagonalizes, then sorts the divisibility chain with gcd/lcm exchanges.
pub fn invariant_factors(p: &PolyMat) -> Result<Vec<SPoly>> {
    let mut e = Elimination::new(p, false);
    let r = e.run(false)?;
    let mut d: Vec<SPoly> = (0..r).map(|t| e.a[t][t].monic()).collect();
    for i in 0..r {
        for j in i + 1..r {
            if d[i].divides(&d[j])? {
                continue;
            }
            let g = SPoly::gcd(&d[i], &d[j])?;
            let l = (&d[i] * &d[j]).exact_div(&g)?.monic();
            d[i] = g;
            d[j] = l;
        }
    }
    Ok(d)
}
