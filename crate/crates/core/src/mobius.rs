//! Möbius transformations `r(z) = (az + b)/(cz + d)` acting on matrix
//! polynomials of a fixed grade, and their interplay with DL pencils.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::eigenstructure::Eigenstructure;
use crate::error::{Error, Result};
use crate::exactalg::{rat, Mat, Rat, SPoly};
use crate::pencil::{build_dl, Ansatz};
use crate::polymat::{probe_point, PolyMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

/// A point of the projective line over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Finite(Rat),
    Infinity,
}

impl Mobius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Mobius::new(rat(a), rat(b), rat(c), rat(d))
    }

    pub fn identity() -> Self {
        Mobius {
            a: rat(1),
            b: rat(0),
            c: rat(0),
            d: rat(1),
        }
    }

    /// `1/z`.
    pub fn reciprocal() -> Self {
        Mobius {
            a: rat(0),
            b: rat(1),
            c: rat(1),
            d: rat(0),
        }
    }

    /// `z + s`.
    pub fn shift(s: Rat) -> Self {
        Mobius {
            a: rat(1),
            b: s,
            c: rat(0),
            d: rat(1),
        }
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `n(z) = az + b`.
    pub fn numerator(&self) -> SPoly {
        SPoly::new(vec![self.b.clone(), self.a.clone()])
            .with_grade(1)
            .expect("grade 1")
    }

    /// `d(z) = cz + d`.
    pub fn denominator(&self) -> SPoly {
        SPoly::new(vec![self.d.clone(), self.c.clone()])
            .with_grade(1)
            .expect("grade 1")
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `self ∘ other`, i.e. `z -> self(other(z))`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn apply(&self, z: &Point) -> Point {
        let (num, den) = match z {
            Point::Infinity => (self.a.clone(), self.c.clone()),
            Point::Finite(x) => (&self.a * x + &self.b, &self.c * x + &self.d),
        };
        if den.is_zero() {
            Point::Infinity
        } else {
            Point::Finite(num / den)
        }
    }
}

/// `d(z)^g P(n(z)/d(z)) = sum_i P_i n(z)^i d(z)^{g-i}`, of grade `g`.
pub fn mobius_transform(p: &PolyMat, g: usize, r: &Mobius) -> Result<PolyMat> {
    if let Some(deg) = p.degree() {
        if g < deg {
            return Err(Error::GradeBelowDegree {
                grade: g,
                degree: deg,
            });
        }
    }
    let (n, d) = (r.numerator(), r.denominator());
    let mut out = PolyMat::zero(p.rows(), p.cols(), g);
    for i in 0..=p.degree().unwrap_or(0) {
        let w = &n.pow(i) * &d.pow(g - i);
        out = out.add(&PolyMat::constant(p.coeff(i).clone()).mul_scalar_poly(&w));
    }
    out.with_grade(g)
}

/// Scalar version of [`mobius_transform`].
pub fn mobius_transform_scalar(v: &SPoly, g: usize, r: &Mobius) -> Result<SPoly> {
    let p = PolyMat::from_entries(&[vec![v.clone()]])?;
    Ok(mobius_transform(&p, g, r)?
        .entry(0, 0)
        .with_grade(g)
        .expect("grade"))
}

/// `B` with `B V(z) = [n^{k-1}, n^{k-2} d, ..., d^{k-1}]^T`.
pub fn change_basis(r: &Mobius, k: usize) -> Mat {
    let (n, d) = (r.numerator(), r.denominator());
    let mut b = Mat::zeros(k, k);
    for i in 0..k {
        let row = &n.pow(k - 1 - i) * &d.pow(i);
        for j in 0..k {
            b[(i, j)] = row.coeff(k - 1 - j);
        }
    }
    b
}

/// Outcome of the commuting diagram identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub holds: bool,
    /// First `(block row, block column)` where the two sides differ.
    pub first_difference: Option<(usize, usize)>,
}

/// Compares `(B^T ⊗ I_m) M_{1,r}(L) (B ⊗ I_n)` with `DL(M_{k,r}(P), M_{k-1,r}(v))`.
pub fn commuting_diagram_check(p: &PolyMat, v: &Ansatz, r: &Mobius) -> Result<DiagramReport> {
    let k = v.k();
    let (m, n) = (p.rows(), p.cols());
    let l = build_dl(p, v)?;
    let b = change_basis(r, k);
    let lhs = mobius_transform(&l.pencil, 1, r)?.congruence(
        &b.transpose().kron(&Mat::identity(m)),
        &b.kron(&Mat::identity(n)),
    );
    let q = mobius_transform(p, k, r)?;
    let u = Ansatz::from_poly(&mobius_transform_scalar(&v.poly(), k - 1, r)?, k)?;
    let rhs = build_dl(&q, &u)?.pencil;
    for bi in 0..k {
        for bj in 0..k {
            if lhs.block(bi * m, bj * n, m, n) != rhs.block(bi * m, bj * n, m, n) {
                return Ok(DiagramReport {
                    holds: false,
                    first_difference: Some((bi, bj)),
                });
            }
        }
    }
    Ok(DiagramReport {
        holds: true,
        first_difference: None,
    })
}

/// Eigenstructure of `M_{g,r}(P)` from that of `P`: an eigenvalue `mu` of
/// `P` becomes `r^{-1}(mu)`, multiplicities and minimal indices are kept.
pub fn transport_eigenstructure(e: &Eigenstructure, r: &Mobius) -> Eigenstructure {
    let back = r.inverse();
    let mut finite = BTreeMap::new();
    let mut infinite = Vec::new();
    let mut place = |pt: Point, mult: &Vec<usize>| match pt {
        Point::Finite(x) => {
            finite.insert(x, mult.clone());
        }
        Point::Infinity => infinite = mult.clone(),
    };
    for (mu, mult) in &e.finite {
        place(back.apply(&Point::Finite(mu.clone())), mult);
    }
    if !e.infinite.is_empty() {
        place(back.apply(&Point::Infinity), &e.infinite);
    }
    Eigenstructure {
        grade: e.grade,
        rank: e.rank,
        finite,
        infinite,
        right: e.right.clone(),
        left: e.left.clone(),
        irrational_degree: e.irrational_degree,
    }
}

/// Result of moving infinity to a finite point.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// `r(z) = (mu* z + 1)/z`.
    pub map: Mobius,
    pub mu_star: Rat,
    pub q: PolyMat,
    pub u: Option<Ansatz>,
}

/// Picks the first `mu*` in `0, 1, -1, 2, ...` that is neither an eigenvalue
/// of `P` nor a root of `v`, and applies `r(z) = mu* + 1/z`.
///
/// The images have no eigenvalue and no root at infinity; the old infinity
/// now sits at 0 and a finite `lambda` at `1/(lambda - mu*)`.
pub fn reduce_infinity(p: &PolyMat, v: Option<&Ansatz>) -> Result<Reduction> {
    let rank = p.normal_rank();
    let mu = (0..)
        .map(probe_point)
        .find(|x| p.eval(x).rank() == rank && v.is_none_or(|v| !v.poly().eval(x).is_zero()))
        .expect("finitely many bad points");
    let map = Mobius {
        a: mu.clone(),
        b: Rat::one(),
        c: Rat::one(),
        d: Rat::zero(),
    };
    let q = mobius_transform(p, p.grade(), &map)?;
    let u = match v {
        None => None,
        Some(v) => Some(Ansatz::from_poly(
            &mobius_transform_scalar(&v.poly(), v.k() - 1, &map)?,
            v.k(),
        )?),
    };
    Ok(Reduction {
        map,
        mu_star: mu,
        q,
        u,
    })
}
