use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{binomial, rat, Rat};
use crate::error::{Error, Result};

/// Univariate polynomial over the rationals with an explicit grade.
///
/// `coeffs[i]` is the coefficient of `z^i` and `coeffs.len() == grade + 1`,
/// so trailing zeros are meaningful: they record the grade.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SPoly {
    coeffs: Vec<Rat>,
}

// ---- Constructors ----

impl SPoly {
    /// Grade is `coeffs.len() - 1`; an empty vector gives the zero polynomial of grade 0.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        SPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        SPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero(grade: usize) -> Self {
        SPoly {
            coeffs: vec![Rat::zero(); grade + 1],
        }
    }

    pub fn constant(c: Rat) -> Self {
        SPoly { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        SPoly::constant(Rat::one())
    }

    /// `c z^d`.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = c;
        SPoly { coeffs }
    }

    /// `z - a`.
    pub fn linear_root(a: &Rat) -> Self {
        SPoly {
            coeffs: vec![-a.clone(), Rat::one()],
        }
    }

    /// Monic polynomial with the given roots (repeats allowed).
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(SPoly::one(), |acc, r| &acc * &SPoly::linear_root(r))
    }
}

// ---- Accessors ----

impl SPoly {
    pub fn grade(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `z^i`; zero beyond the grade.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.degree(), None | Some(0))
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.degree().map(|d| &self.coeffs[d])
    }
}

// ---- Grade manipulation ----

impl SPoly {
    /// Same polynomial with grade equal to its degree (0 for the zero polynomial).
    pub fn trimmed(&self) -> SPoly {
        let d = self.degree().unwrap_or(0);
        SPoly {
            coeffs: self.coeffs[..=d].to_vec(),
        }
    }

    pub fn with_grade(&self, g: usize) -> Result<SPoly> {
        let d = self.degree().unwrap_or(0);
        if g < d {
            return Err(Error::GradeBelowDegree {
                grade: g,
                degree: d,
            });
        }
        let mut coeffs = self.coeffs[..=d].to_vec();
        coeffs.resize(g + 1, Rat::zero());
        Ok(SPoly { coeffs })
    }

    /// `z^g p(1/z)` for the grade `g` of `self`.
    pub fn reversal(&self) -> SPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        SPoly { coeffs }
    }
}

// ---- Arithmetic ----

impl SPoly {
    pub fn scale(&self, c: &Rat) -> SPoly {
        SPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: usize) -> SPoly {
        let mut acc = SPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> SPoly {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Euclidean division; `deg(rem) < deg(b)`. Both outputs are trimmed.
    pub fn divrem(&self, b: &SPoly) -> Result<(SPoly, SPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lb = &b.coeffs[db];
        let mut rem: Vec<Rat> = self.trimmed().coeffs;
        let Some(da) = self.degree() else {
            return Ok((SPoly::zero(0), SPoly::zero(0)));
        };
        if da < db {
            return Ok((SPoly::zero(0), self.trimmed()));
        }
        let mut quo = vec![Rat::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let c = &rem[i + db] / lb;
            if c.is_zero() {
                continue;
            }
            for j in 0..=db {
                let t = &c * &b.coeffs[j];
                rem[i + j] -= t;
            }
            quo[i] = c;
        }
        Ok((SPoly::new(quo).trimmed(), SPoly::new(rem).trimmed()))
    }

    /// Quotient of an exact division; errors on a nonzero remainder.
    pub fn exact_div(&self, b: &SPoly) -> Result<SPoly> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(Error::NonExactDivision);
        }
        Ok(q)
    }

    pub fn divides(&self, a: &SPoly) -> Result<bool> {
        Ok(a.divrem(self)?.1.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &SPoly, b: &SPoly) -> Result<SPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut x = a.trimmed();
        let mut y = b.trimmed();
        while !y.is_zero() {
            let r = x.divrem(&y)?.1;
            x = y;
            y = r.monic();
        }
        Ok(x.monic())
    }

    /// `order`-th derivative; with `normalized` it is divided by `order!`.
    /// The grade drops by `order` with a floor at 0.
    pub fn derivative(&self, order: usize, normalized: bool) -> SPoly {
        let g = self.grade();
        if order > g {
            return SPoly::zero(0);
        }
        let coeffs = (order..=g)
            .map(|i| {
                let mut f = Rat::from_integer(binomial(i, order));
                if !normalized {
                    f *= Rat::from_integer(super::factorial(order));
                }
                &self.coeffs[i] * f
            })
            .collect();
        SPoly { coeffs }
    }

    /// Taylor coefficients `p^{(j)}(x)/j!` for `j = 0..count`.
    pub fn taylor_at(&self, x: &Rat, count: usize) -> Vec<Rat> {
        (0..count)
            .map(|j| self.derivative(j, true).eval(x))
            .collect()
    }

    /// Multiplicity of `x` as a root; `None` for the zero polynomial.
    pub fn order_at(&self, x: &Rat) -> Option<usize> {
        let d = self.degree()?;
        let mut k = 0;
        let mut p = self.trimmed();
        while k <= d {
            if !p.eval(x).is_zero() {
                return Some(k);
            }
            p = p.divrem(&SPoly::linear_root(x)).ok()?.0;
            k += 1;
        }
        Some(k)
    }

    /// `p(a z + b)`, keeping the grade.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> SPoly {
        let lin = SPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = SPoly::zero(self.grade());
        let mut pw = SPoly::one();
        for c in &self.coeffs {
            acc = &acc + &pw.scale(c);
            pw = &pw * &lin;
        }
        acc.with_grade(self.grade()).unwrap_or(acc)
    }
}

fn zip_with(a: &SPoly, b: &SPoly, f: impl Fn(&Rat, &Rat) -> Rat) -> SPoly {
    let g = a.grade().max(b.grade());
    let z = Rat::zero();
    let coeffs = (0..=g)
        .map(|i| f(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z)))
        .collect();
    SPoly { coeffs }
}

impl Add for &SPoly {
    type Output = SPoly;
    fn add(self, rhs: &SPoly) -> SPoly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &SPoly {
    type Output = SPoly;
    fn sub(self, rhs: &SPoly) -> SPoly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &SPoly {
    type Output = SPoly;
    fn mul(self, rhs: &SPoly) -> SPoly {
        let mut coeffs = vec![Rat::zero(); self.grade() + rhs.grade() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        SPoly { coeffs }
    }
}

impl Neg for &SPoly {
    type Output = SPoly;
    fn neg(self) -> SPoly {
        SPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for SPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let mut first = true;
        for i in (0..=d).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}z", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}z^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
