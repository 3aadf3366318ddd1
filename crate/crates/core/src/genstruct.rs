//! Seeded generator of matrix polynomials with prescribed Kronecker data
//! and of ansatz polynomials that avoid (or hit) their spectrum.
//!
//! Randomness comes from xoshiro256** seeded through `seed_from_u64`
//! (SplitMix64 expansion of the 64-bit seed). Per-instance seeds are drawn
//! from a SplitMix64 stream over the batch seed, so instance `i` of a batch
//! does not depend on how many instances run or in which order.

use std::collections::BTreeMap;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};

use crate::eigenstructure::full_eigenstructure;
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, parse_rat, rat, ratio, Mat, Rat, SPoly};
use crate::pencil::{check_exclusion, Ansatz};
use crate::polymat::{probe_point, PolyMat};

/// Portable seeded generator.
pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish in `0..n` (modulo reduction).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Inclusive range.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self, num: usize, den: usize) -> bool {
        self.below(den) < num
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.below(xs.len())]
    }
}

/// The `i`-th output of SplitMix64 started at `seed`.
pub fn instance_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i + 1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Prescribed structure of an `m x n` matrix polynomial of grade `k` and normal rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerSpec {
    pub m: usize,
    pub n: usize,
    pub grade: usize,
    pub rank: usize,
    pub finite: BTreeMap<Rat, Vec<usize>>,
    pub inf: Vec<usize>,
    pub right: Vec<usize>,
    pub left: Vec<usize>,
    pub seed: u64,
}

#[derive(Serialize, Deserialize)]
struct SpecWire {
    m: usize,
    n: usize,
    grade: usize,
    rank: usize,
    #[serde(default)]
    finite: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    inf: Vec<usize>,
    #[serde(default)]
    right: Vec<usize>,
    #[serde(default)]
    left: Vec<usize>,
    #[serde(default)]
    seed: u64,
}

impl Serialize for KroneckerSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecWire {
            m: self.m,
            n: self.n,
            grade: self.grade,
            rank: self.rank,
            finite: self
                .finite
                .iter()
                .map(|(k, v)| (fmt_rat(k), v.clone()))
                .collect(),
            inf: self.inf.clone(),
            right: self.right.clone(),
            left: self.left.clone(),
            seed: self.seed,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KroneckerSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SpecWire::deserialize(d)?;
        let mut finite = BTreeMap::new();
        for (k, v) in w.finite {
            let x = parse_rat(&k).map_err(serde::de::Error::custom)?;
            finite.insert(x, v);
        }
        let spec = KroneckerSpec {
            m: w.m,
            n: w.n,
            grade: w.grade,
            rank: w.rank,
            finite,
            inf: w.inf,
            right: w.right,
            left: w.left,
            seed: w.seed,
        };
        Ok(spec.normalized())
    }
}

impl KroneckerSpec {
    /// Lists sorted ascending, as reported by the eigenstructure.
    pub fn normalized(mut self) -> Self {
        for v in self.finite.values_mut() {
            v.sort_unstable();
        }
        self.inf.sort_unstable();
        self.right.sort_unstable();
        self.left.sort_unstable();
        self
    }

    pub fn index_sum(&self) -> usize {
        self.finite.values().flatten().sum::<usize>()
            + self.inf.iter().sum::<usize>()
            + self.right.iter().sum::<usize>()
            + self.left.iter().sum::<usize>()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Unrealizable(msg));
        if self.grade == 0 {
            return bad("grade must be positive".into());
        }
        if self.rank > self.m.min(self.n) {
            return bad(format!("rank {} exceeds min(m, n)", self.rank));
        }
        if self.right.len() != self.n - self.rank || self.left.len() != self.m - self.rank {
            return bad(format!(
                "need {} right and {} left minimal indices",
                self.n - self.rank,
                self.m - self.rank
            ));
        }
        if self
            .finite
            .values()
            .flatten()
            .chain(&self.inf)
            .any(|&e| e == 0)
        {
            return bad("partial multiplicities must be positive".into());
        }
        if self.index_sum() != self.grade * self.rank {
            return bad(format!(
                "index sum {} differs from grade * rank = {}",
                self.index_sum(),
                self.grade * self.rank
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Item {
    Finite(Rat, usize),
    Inf(usize),
}

impl Item {
    fn size(&self) -> usize {
        match self {
            Item::Finite(_, e) | Item::Inf(e) => *e,
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Slot {
    cap: usize,
    used: usize,
    finite: Vec<(Rat, usize)>,
    inf: bool,
}

impl Slot {
    fn accepts(&self, it: &Item) -> bool {
        self.used + it.size() <= self.cap
            && match it {
                Item::Finite(x, _) => self.finite.iter().all(|(y, _)| y != x),
                Item::Inf(_) => !self.inf,
            }
    }

    /// `p(z) = prod (z - x)^e`.
    fn poly(&self) -> SPoly {
        self.finite.iter().fold(SPoly::one(), |acc, (x, e)| {
            &acc * &SPoly::linear_root(x).pow(*e)
        })
    }
}

fn assign(items: &[Item], slots: &mut [Slot]) -> bool {
    let Some((it, rest)) = items.split_first() else {
        return slots.iter().all(|s| s.used == s.cap);
    };
    for j in 0..slots.len() {
        if !slots[j].accepts(it) {
            continue;
        }
        // empty slots of equal capacity are interchangeable
        if slots[..j]
            .iter()
            .any(|s| s.used == 0 && s.cap == slots[j].cap)
            && slots[j].used == 0
        {
            continue;
        }
        slots[j].used += it.size();
        match it {
            Item::Finite(x, e) => slots[j].finite.push((x.clone(), *e)),
            Item::Inf(_) => slots[j].inf = true,
        }
        if assign(rest, slots) {
            return true;
        }
        slots[j].used -= it.size();
        match it {
            Item::Finite(..) => {
                slots[j].finite.pop();
            }
            Item::Inf(_) => slots[j].inf = false,
        }
    }
    false
}

/// Block-diagonal realization before mixing.
fn canonical_core(spec: &KroneckerSpec) -> Result<PolyMat> {
    let k = spec.grade;
    let chain = |g: usize| -> (usize, usize) {
        let s = g.div_ceil(k);
        (s, g - k * (s - 1))
    };
    let used: usize = spec
        .right
        .iter()
        .chain(&spec.left)
        .filter(|&&g| g > 0)
        .map(|&g| chain(g).0)
        .sum();
    if used > spec.rank {
        return Err(Error::Unrealizable(format!(
            "minimal indices need rank {used} > {}",
            spec.rank
        )));
    }
    let regular = spec.rank - used;
    let mut slots: Vec<Slot> = vec![
        Slot {
            cap: k,
            ..Slot::default()
        };
        regular
    ];
    for &g in spec.right.iter().chain(&spec.left) {
        if g > 0 {
            slots.push(Slot {
                cap: k - chain(g).1,
                ..Slot::default()
            });
        }
    }
    let mut items: Vec<Item> = spec
        .finite
        .iter()
        .flat_map(|(x, es)| es.iter().map(move |&e| Item::Finite(x.clone(), e)))
        .chain(spec.inf.iter().map(|&e| Item::Inf(e)))
        .collect();
    items.sort_by_key(|it| std::cmp::Reverse(it.size()));
    if !assign(&items, &mut slots) {
        return Err(Error::Unrealizable(
            "elementary divisors do not fit the block capacities".into(),
        ));
    }

    let mut e = vec![vec![SPoly::zero(k); spec.n]; spec.m];
    let (mut r0, mut c0) = (0, 0);
    let mut slot = slots.iter();
    for _ in 0..regular {
        e[r0][c0] = slot.next().expect("slot").poly();
        r0 += 1;
        c0 += 1;
    }
    let zpow = |a: usize| SPoly::monomial(rat(1), a);
    for &g in &spec.right {
        if g == 0 {
            c0 += 1;
            continue;
        }
        let (s, last) = chain(g);
        let p = slot.next().expect("slot").poly();
        for i in 0..s {
            let (a, f) = if i + 1 == s {
                (last, p.clone())
            } else {
                (k, SPoly::one())
            };
            e[r0 + i][c0 + i] = &zpow(a) * &f;
            e[r0 + i][c0 + i + 1] = -&f;
        }
        r0 += s;
        c0 += s + 1;
    }
    for &g in &spec.left {
        if g == 0 {
            r0 += 1;
            continue;
        }
        let (s, last) = chain(g);
        let p = slot.next().expect("slot").poly();
        for i in 0..s {
            let (a, f) = if i + 1 == s {
                (last, p.clone())
            } else {
                (k, SPoly::one())
            };
            e[r0 + i][c0 + i] = &zpow(a) * &f;
            e[r0 + i + 1][c0 + i] = -&f;
        }
        r0 += s + 1;
        c0 += s;
    }
    debug_assert_eq!((r0, c0), (spec.m, spec.n));
    let rows: Vec<Vec<SPoly>> = e
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| x.with_grade(k).expect("degree at most k"))
                .collect()
        })
        .collect();
    if spec.m == 0 || spec.n == 0 {
        return Ok(PolyMat::zero(spec.m, spec.n, k));
    }
    PolyMat::from_entries(&rows)
}

/// Product of random integer transvections `I + c E_ij` with `|c| <= 3`.
pub fn random_unimodular(size: usize, steps: usize, rng: &mut SeededRng) -> Mat {
    let mut u = Mat::identity(size);
    if size < 2 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.below(size);
        let j = (i + 1 + rng.below(size - 1)) % size;
        let mut c = rng.range(-3, 2);
        if c >= 0 {
            c += 1;
        }
        let t = Mat::from_fn(size, size, |a, b| {
            if a == b {
                rat(1)
            } else if a == i && b == j {
                rat(c)
            } else {
                rat(0)
            }
        });
        u = t.mul(&u);
    }
    u
}

/// A generated instance with its equivalence factors: `p = u core v`.
#[derive(Clone, Debug)]
pub struct Generated {
    pub p: PolyMat,
    pub core: PolyMat,
    pub u: Mat,
    pub v: Mat,
}

pub fn generate_with_factors(spec: &KroneckerSpec) -> Result<Generated> {
    spec.validate()?;
    let core = canonical_core(spec)?;
    let mut rng = SeededRng::new(spec.seed);
    let u = random_unimodular(spec.m, 2 * spec.m, &mut rng);
    let v = random_unimodular(spec.n, 2 * spec.n, &mut rng);
    let p = PolyMat::constant(u.clone())
        .mul(&core)
        .mul(&PolyMat::constant(v.clone()))
        .with_grade(spec.grade)?;
    let candidates: Vec<Rat> = spec.finite.keys().cloned().collect();
    let got = full_eigenstructure(&p, &candidates)?;
    let want = spec.clone().normalized();
    let mut right = got.right.clone();
    right.sort_unstable();
    let mut left = got.left.clone();
    left.sort_unstable();
    if got.rank != want.rank
        || got.finite != want.finite
        || got.infinite != want.inf
        || right != want.right
        || left != want.left
        || got.irrational_degree != 0
    {
        return Err(Error::Identity(format!(
            "generated structure {got:?} differs from the request"
        )));
    }
    Ok(Generated { p, core, u, v })
}

/// Matrix polynomial with exactly the requested structure.
pub fn generate(spec: &KroneckerSpec) -> Result<PolyMat> {
    Ok(generate_with_factors(spec)?.p)
}

/// Eigenvalue pool for random specs.
pub fn eigenvalue_pool() -> Vec<Rat> {
    vec![
        rat(0),
        rat(1),
        rat(-1),
        rat(2),
        ratio(1, 2),
        ratio(-2, 3),
        rat(3),
    ]
}

/// Random realizable spec with `m, n <= max_m, max_n` and grade in `2..=max_k`.
pub fn random_spec(
    rng: &mut SeededRng,
    max_m: usize,
    max_n: usize,
    max_k: usize,
    seed: u64,
) -> KroneckerSpec {
    let k = 2 + rng.below(max_k.max(2) - 1);
    let m = 1 + rng.below(max_m);
    let n = 1 + rng.below(max_n);
    let r = 1 + rng.below(m.min(n));
    let mut budget = r;
    let index = |rng: &mut SeededRng, budget: &mut usize| -> usize {
        let g = rng.below((k * *budget).min(4) + 1);
        *budget -= g.div_ceil(k);
        g
    };
    let right: Vec<usize> = (0..n - r).map(|_| index(rng, &mut budget)).collect();
    let left: Vec<usize> = (0..m - r).map(|_| index(rng, &mut budget)).collect();
    let mut caps = vec![k; budget];
    for &g in right.iter().chain(&left) {
        if g > 0 {
            caps.push(k * g.div_ceil(k) - g);
        }
    }
    let pool = eigenvalue_pool();
    let mut finite: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    let mut inf = Vec::new();
    for cap in caps {
        let mut left_over = cap;
        let mut used: Vec<Rat> = Vec::new();
        while left_over > 0 && rng.coin(2, 3) {
            let x = rng.pick(&pool).clone();
            if used.contains(&x) {
                continue;
            }
            let e = 1 + rng.below(left_over);
            finite.entry(x.clone()).or_default().push(e);
            used.push(x);
            left_over -= e;
        }
        if left_over > 0 {
            inf.push(left_over);
        }
    }
    KroneckerSpec {
        m,
        n,
        grade: k,
        rank: r,
        finite,
        inf,
        right,
        left,
        seed,
    }
    .normalized()
}

/// What kind of ansatz polynomial to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzKind {
    /// Rational roots avoiding the spectrum, degree `k - 1`.
    Admissible,
    /// Like `Admissible`, but with roots at infinity when `P` has no infinite eigenvalue.
    DegreeDrop,
    /// Shares at least one root with the spectrum.
    Violating,
}

/// Ansatz of length `p.grade()` with rational roots.
pub fn admissible_ansatz(p: &PolyMat, kind: AnsatzKind, seed: u64) -> Result<Ansatz> {
    let k = p.grade();
    let mut rng = SeededRng::new(seed);
    let eig = full_eigenstructure(p, &eigenvalue_pool())?;
    let mut pool: Vec<Rat> = eigenvalue_pool()
        .into_iter()
        .chain((0..12).map(probe_point))
        .collect();
    pool.dedup();
    pool.retain(|x| !eig.is_eigenvalue(x));
    let mut deg = k - 1;
    let mut roots = Vec::new();
    match kind {
        AnsatzKind::Admissible => {}
        AnsatzKind::DegreeDrop => {
            if !eig.has_infinite_eigenvalue() && deg > 0 {
                deg -= 1 + rng.below(deg);
            }
        }
        AnsatzKind::Violating => {
            let hits: Vec<Rat> = eig.finite.keys().cloned().collect();
            if !hits.is_empty() && deg > 0 {
                roots.push(rng.pick(&hits).clone());
            } else if eig.has_infinite_eigenvalue() && deg > 0 {
                deg -= 1;
            } else {
                return Err(Error::Hypothesis("no eigenvalue available to share".into()));
            }
        }
    }
    while roots.len() < deg {
        let x = rng.pick(&pool).clone();
        // repeat the previous root now and then
        if let (Some(last), true) = (roots.last(), rng.coin(1, 4)) {
            let last: Rat = Clone::clone(last);
            roots.push(last);
        } else {
            roots.push(x);
        }
    }
    let scale = rat(rng.range(1, 3));
    let v = Ansatz::from_poly(&SPoly::from_roots(&roots).scale(&scale), k)?;
    let ok = check_exclusion(p, &v)?.holds();
    if ok == (kind == AnsatzKind::Violating) {
        return Err(Error::Identity(
            "ansatz does not have the requested relation to the spectrum".into(),
        ));
    }
    Ok(v)
}
