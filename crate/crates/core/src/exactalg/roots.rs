use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rat, SPoly};
use crate::error::{Error, Result};

/// Rational roots with multiplicities and the remaining factor, which has
/// no rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<(Rat, usize)>,
    pub cofactor: SPoly,
}

impl RootSplit {
    /// Number of rational roots counted with multiplicity.
    pub fn rational_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// All rational roots of a nonzero polynomial, sorted increasingly.
///
/// The square-free part is scaled to a monic integer polynomial whose
/// rational roots are integers; these are isolated exactly with a Sturm
/// sequence evaluated at half-integers, which are never roots.
pub fn rational_roots(p: &SPoly) -> Result<RootSplit> {
    if p.is_zero() {
        return Err(Error::Parse("roots of the zero polynomial".into()));
    }
    let f = p.trimmed();
    let mut cofactor = f.clone();
    let mut roots = Vec::new();
    if f.degree() == Some(0) {
        return Ok(RootSplit { roots, cofactor });
    }
    let g = SPoly::gcd(&f, &f.derivative(1, false))?;
    let sf = f.exact_div(&g)?;
    let (monic_int, scale) = monic_integer_form(&sf);
    for y in integer_roots(&monic_int) {
        let r = Rat::new(y, scale.clone());
        let lin = SPoly::linear_root(&r);
        let mut m = 0;
        while let Ok(q) = cofactor.exact_div(&lin) {
            cofactor = q;
            m += 1;
        }
        debug_assert!(m > 0);
        roots.push((r, m));
    }
    roots.sort();
    Ok(RootSplit { roots, cofactor })
}

/// `(g, a)` with `g` monic integer and the roots of `p` equal to those of `g` divided by `a`.
fn monic_integer_form(p: &SPoly) -> (Vec<BigInt>, BigInt) {
    let n = p.degree().expect("nonzero");
    let lcm = p.coeffs()[..=n]
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let h: Vec<BigInt> = p.coeffs()[..=n]
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = h.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut h: Vec<BigInt> = h.into_iter().map(|c| c / &content).collect();
    if h[n].is_negative() {
        h.iter_mut().for_each(|c| *c = -c.clone());
    }
    let a = h[n].clone();
    // g(y) = a^{n-1} h(y / a)
    let mut g = vec![BigInt::zero(); n + 1];
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        g[i] = &h[i] * &pw;
        pw *= &a;
    }
    g[n] = BigInt::one();
    (g, a)
}

fn integer_roots(g: &[BigInt]) -> Vec<BigInt> {
    let n = g.len() - 1;
    let gp = SPoly::new(g.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let seq = sturm_sequence(&gp);
    let bound = g[..n].iter().map(|c| c.abs()).max().unwrap_or_default() + BigInt::one();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let lo = -Rat::from_integer(bound.clone()) - &half;
    let hi = Rat::from_integer(bound) + &half;
    let mut out = Vec::new();
    let mut stack = vec![(
        lo.clone(),
        hi.clone(),
        variations(&seq, &lo),
        variations(&seq, &hi),
    )];
    while let Some((a, b, va, vb)) = stack.pop() {
        if va <= vb {
            continue;
        }
        let width = &b - &a;
        if width.is_one() {
            let y = (&a + &half).to_integer();
            if gp.eval(&Rat::from_integer(y.clone())).is_zero() {
                out.push(y);
            }
            continue;
        }
        // midpoint rounded to a half-integer
        let mid = ((&a + &b) / Rat::from_integer(BigInt::from(2))).floor() + &half;
        let vm = variations(&seq, &mid);
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }
    out
}

fn sturm_sequence(p: &SPoly) -> Vec<SPoly> {
    let mut seq = vec![p.clone(), p.derivative(1, false).trimmed()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].divrem(&seq[n - 1]).expect("nonzero divisor").1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn variations(seq: &[SPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for s in seq {
        let v = s.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}
