//! The free associative algebra over `F_p` truncated above a fixed degree,
//! the group generated by `1 + x_i` inside it, and the linear functional
//! that detects `p^k`-th powers of degree-one elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegrp::{is_prime, Word};
use crate::group::FiniteGroup;

/// Default bound on the order of an enumerated group.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

fn block_offset(n: usize, deg: usize) -> usize {
    (0..deg).map(|i| n.pow(i as u32)).sum()
}

/// A polynomial in noncommuting variables `x_1..x_n` over `F_p`, with all
/// monomials of degree above `degree` discarded. Coefficients are stored
/// densely, grouped by degree, monomials in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncPoly {
    n: usize,
    p: u32,
    degree: usize,
    coeffs: Vec<u32>,
}

impl TruncPoly {
    pub fn zero(n: usize, p: u32, degree: usize) -> Self {
        TruncPoly {
            n,
            p,
            degree,
            coeffs: vec![0; block_offset(n, degree + 1)],
        }
    }

    pub fn one(n: usize, p: u32, degree: usize) -> Self {
        let mut z = Self::zero(n, p, degree);
        z.coeffs[0] = 1 % p;
        z
    }

    /// The variable `x_{i+1}` (zero-based `i`).
    pub fn var(n: usize, p: u32, degree: usize, i: usize) -> Self {
        let mut z = Self::zero(n, p, degree);
        if degree >= 1 {
            z.coeffs[1 + i] = 1;
        }
        z
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, where a
    /// monomial lists zero-based variable indices.
    pub fn from_terms(n: usize, p: u32, degree: usize, terms: &[(Vec<usize>, i64)]) -> Self {
        let mut z = Self::zero(n, p, degree);
        for (m, c) in terms {
            if let Some(idx) = z.index_of(m) {
                let c = c.rem_euclid(p as i64) as u32;
                z.coeffs[idx] = (z.coeffs[idx] + c) % p;
            }
        }
        z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn index_of(&self, mono: &[usize]) -> Option<usize> {
        if mono.len() > self.degree || mono.iter().any(|&i| i >= self.n) {
            return None;
        }
        let within = mono.iter().fold(0, |acc, &i| acc * self.n + i);
        Some(block_offset(self.n, mono.len()) + within)
    }

    fn decode(&self, deg: usize, mut within: usize) -> Vec<usize> {
        let mut m = vec![0; deg];
        for slot in m.iter_mut().rev() {
            *slot = within % self.n;
            within /= self.n;
        }
        m
    }

    pub fn coeff(&self, mono: &[usize]) -> u32 {
        self.index_of(mono).map_or(0, |i| self.coeffs[i])
    }

    /// Dense coefficients of the homogeneous part of degree `deg`.
    pub fn homogeneous(&self, deg: usize) -> &[u32] {
        let start = block_offset(self.n, deg);
        &self.coeffs[start..start + self.n.pow(deg as u32)]
    }

    /// Nonzero terms in degree-then-lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, u32)> {
        let mut out = Vec::new();
        for deg in 0..=self.degree {
            for (w, &c) in self.homogeneous(deg).iter().enumerate() {
                if c != 0 {
                    out.push((self.decode(deg, w), c));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn constant(&self) -> u32 {
        self.coeffs[0]
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        (0..=self.degree).find(|&d| self.homogeneous(d).iter().any(|&c| c != 0))
    }

    /// `ν(self - 1)`: the filtration level of a group element; `None` for
    /// the identity.
    pub fn level(&self) -> Option<usize> {
        let mut t = self.clone();
        t.coeffs[0] = (t.coeffs[0] + self.p - 1) % self.p;
        t.valuation()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if (self.n, self.p, self.degree) != (other.n, other.p, other.degree) {
            return Err(Error::ParameterMismatch(format!(
                "(n={}, p={}, D={}) vs (n={}, p={}, D={})",
                self.n, self.p, self.degree, other.n, other.p, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut z = self.clone();
        for (a, b) in z.coeffs.iter_mut().zip(&other.coeffs) {
            *a = (*a + b) % self.p;
        }
        Ok(z)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, s: u32) -> Self {
        let mut z = self.clone();
        let s = s % self.p;
        for a in z.coeffs.iter_mut() {
            *a = ((*a as u64 * s as u64) % self.p as u64) as u32;
        }
        z
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (n, p, d) = (self.n, self.p as u64, self.degree);
        let mut acc = vec![0u64; self.coeffs.len()];
        for i in 0..=d {
            let a = self.homogeneous(i);
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..=d - i {
                let b = other.homogeneous(j);
                let nj = b.len();
                let base = block_offset(n, i + j);
                for (ia, &ca) in a.iter().enumerate() {
                    if ca == 0 {
                        continue;
                    }
                    let row = base + ia * nj;
                    for (ib, &cb) in b.iter().enumerate() {
                        if cb != 0 {
                            acc[row + ib] += ca as u64 * cb as u64;
                        }
                    }
                }
            }
            if acc.iter().any(|&x| x > u64::MAX / 4) {
                for x in acc.iter_mut() {
                    *x %= p;
                }
            }
        }
        TruncPoly {
            n,
            p: self.p,
            degree: d,
            coeffs: acc.into_iter().map(|x| (x % p) as u32).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.n, self.p, self.degree);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit `c(1 + w)` via the truncated geometric series.
    pub fn unit_inverse(&self) -> Result<Self> {
        let c = self.constant();
        if c == 0 {
            return Err(Error::NonInvertible);
        }
        let p = self.p as u64;
        let c_inv = mod_pow(c as u64, p - 2, p) as u32;
        // self = c (1 + w)
        let mut w = self.scale(c_inv);
        w.coeffs[0] = 0;
        let neg_w = w.scale(self.p - 1);
        let mut sum = Self::one(self.n, self.p, self.degree);
        let mut term = Self::one(self.n, self.p, self.degree);
        for _ in 0..self.degree {
            term = term.mul_unchecked(&neg_w);
            sum = sum.add(&term)?;
        }
        Ok(sum.scale(c_inv))
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                write!(f, "{c}")?;
                continue;
            }
            if *c != 1 {
                write!(f, "{c}")?;
            }
            for &i in m {
                write!(f, "x{}", i + 1)?;
            }
        }
        Ok(())
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Image of `w` under `x_i ↦ 1 + x_i` in the algebra truncated above
/// `degree`.
pub fn magnus_image(w: &Word, n: usize, p: u32, degree: usize) -> Result<TruncPoly> {
    if w.rank() > n {
        return Err(Error::RankMismatch {
            left: n,
            right: w.rank(),
        });
    }
    let mut gens = Vec::with_capacity(w.rank());
    for i in 0..w.rank() {
        let g = TruncPoly::one(n, p, degree).add(&TruncPoly::var(n, p, degree, i))?;
        let inv = g.unit_inverse()?;
        gens.push((g, inv));
    }
    let mut acc = TruncPoly::one(n, p, degree);
    for &l in w.letters() {
        let (g, inv) = &gens[l.unsigned_abs() as usize - 1];
        acc = acc.mul_unchecked(if l > 0 { g } else { inv });
    }
    Ok(acc)
}

fn mobius(mut m: u64) -> i64 {
    let mut sign = 1;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            m /= q;
            if m.is_multiple_of(q) {
                return 0;
            }
            sign = -sign;
        }
        q += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Number of primitive necklaces of length `e` over `n` letters.
pub fn necklace_count(e: u64, n: u64) -> u64 {
    let mut s: i128 = 0;
    for d in 1..=e {
        if e.is_multiple_of(d) {
            s += mobius(d) as i128 * (n as i128).pow((e / d) as u32);
        }
    }
    (s / e as i128) as u64
}

/// Dimension of the degree-`i` piece of the free restricted Lie algebra on
/// `n` generators: `Σ_{e p^j = i} necklace_count(e, n)`.
pub fn restricted_witt_dim(n: u64, p: u64, i: u64) -> u64 {
    assert!(i >= 1);
    let mut total = 0;
    let mut q = 1;
    while i.is_multiple_of(q) {
        total += necklace_count(i / q, n);
        q *= p;
    }
    total
}

/// The group generated by `1 + x_i` in the algebra truncated above `p^k`.
pub struct ZassenhausGroup {
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub degree: usize,
    pub elements: Vec<TruncPoly>,
    pub table: FiniteGroup,
    /// Indices of `1 + x_i`.
    pub generators: Vec<usize>,
    /// `graded_dims[i-1] = log_p |{ν ≥ i}| / |{ν ≥ i+1}|`.
    pub graded_dims: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupGrading {
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub order: usize,
    pub graded_dims: Vec<u64>,
    pub predicted_dims: Vec<u64>,
}

/// Enumerates the group for `(n, p, k)`, refusing if the predicted order
/// exceeds `cap`. The grading is checked against the dimension formula.
pub fn enumerate_group(n: usize, p: u32, k: u32, cap: usize) -> Result<ZassenhausGroup> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if n == 0 || k == 0 {
        return Err(Error::Precondition("need n >= 1 and k >= 1".into()));
    }
    let degree = (p as usize).pow(k);
    let predicted: Vec<u64> = (1..=degree as u64)
        .map(|i| restricted_witt_dim(n as u64, p as u64, i))
        .collect();
    let log_order: u64 = predicted.iter().sum();
    let order = (p as u128).checked_pow(log_order as u32);
    if order.is_none_or(|o| o > cap as u128) {
        return Err(Error::CapExceeded {
            what: "group order",
            value: order.map_or(usize::MAX, |o| o.min(usize::MAX as u128) as usize),
            cap,
        });
    }
    let gens: Vec<TruncPoly> = (0..n)
        .map(|i| magnus_image(&Word::generator(n, i), n, p, degree))
        .collect::<Result<_>>()?;
    let closure = FiniteGroup::from_closure(
        format!("G({n},{p},{k})"),
        TruncPoly::one(n, p, degree),
        &gens,
        |a, b| a.mul_unchecked(b),
        |a| a.to_string(),
        cap,
    )?;
    let mut at_least = vec![0usize; degree + 2];
    for g in &closure.elements {
        let lvl = g.level().unwrap_or(degree + 1);
        for slot in at_least.iter_mut().take(lvl + 1).skip(1) {
            *slot += 1;
        }
    }
    let mut graded_dims = Vec::with_capacity(degree);
    for i in 1..=degree {
        let (hi, lo) = (at_least[i], at_least[i + 1].max(1));
        let mut ratio = hi / lo;
        let mut e = 0;
        while ratio > 1 && ratio % p as usize == 0 {
            ratio /= p as usize;
            e += 1;
        }
        if ratio != 1 || hi % lo != 0 || e != predicted[i - 1] {
            return Err(Error::GradingMismatch {
                degree: i,
                found: e,
                predicted: predicted[i - 1],
            });
        }
        graded_dims.push(e);
    }
    Ok(ZassenhausGroup {
        n,
        p,
        k,
        degree,
        elements: closure.elements,
        table: closure.group,
        generators: closure.generators,
        graded_dims,
    })
}

impl ZassenhausGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Indices of elements `c` with `ν(c - 1) ≥ p^k`, the last term of the
    /// filtration (including the identity).
    pub fn last_term(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].level().is_none_or(|l| l >= self.degree))
            .collect()
    }

    pub fn grading(&self) -> GroupGrading {
        GroupGrading {
            n: self.n,
            p: self.p,
            k: self.k,
            order: self.order(),
            graded_dims: self.graded_dims.clone(),
            predicted_dims: (1..=self.degree as u64)
                .map(|i| restricted_witt_dim(self.n as u64, self.p as u64, i))
                .collect(),
        }
    }
}

/// A commutative polynomial over `F_p`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommPoly {
    pub n: usize,
    pub p: u64,
    pub terms: BTreeMap<Vec<u32>, u64>,
}

impl CommPoly {
    pub fn zero(n: usize, p: u64) -> Self {
        CommPoly {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    /// The variable `t_{i+1}`.
    pub fn var(n: usize, p: u64, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        CommPoly {
            n,
            p,
            terms: BTreeMap::from([(e, 1 % p)]),
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: u64) {
        let slot = self.terms.entry(e).or_insert(0);
        *slot = (*slot + c) % self.p;
        self.terms.retain(|_, c| *c != 0);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut z = self.clone();
        for (e, &c) in &other.terms {
            z.add_term(e.clone(), c);
        }
        z
    }

    pub fn neg(&self) -> Self {
        let mut z = self.clone();
        for c in z.terms.values_mut() {
            *c = (self.p - *c) % self.p;
        }
        z
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut z = Self::zero(self.n, self.p);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                z.add_term(e, ca * cb % self.p);
            }
        }
        z
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut one = Self::zero(self.n, self.p);
        one.add_term(vec![0; self.n], 1);
        (0..e).fold(one, |acc, _| acc.mul(self))
    }

    pub fn eval(&self, a: &[u64]) -> u64 {
        let mut s = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (ai, &ei) in a.iter().zip(e) {
                t = t * mod_pow(*ai, ei as u64, self.p) % self.p;
            }
            s = (s + t) % self.p;
        }
        s
    }

    /// Zero set over `F_p^n`, as a sorted list of points.
    pub fn zero_set(&self) -> Vec<Vec<u64>> {
        all_vectors(self.n, self.p).filter(|a| self.eval(a) == 0).collect()
    }
}

/// Every vector in `F_p^n`, lexicographically.
pub fn all_vectors(n: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(n as u32);
    (0..total).map(move |mut x| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = x % p;
            x /= p;
        }
        v
    })
}

/// `F(g, h) = g - g h^{p-1} + h`, whose zero set is `Z(g) ∩ Z(h)`.
pub fn combine(g: &CommPoly, h: &CommPoly) -> CommPoly {
    let hp = h.pow((g.p - 1) as u32);
    g.add(&g.mul(&hp).neg()).add(h)
}

/// `f_1 = t_1`, `f_m = F(f_{m-1}, t_m)`: nonzero at every nonzero point and
/// every monomial has degree `1 mod (p-1)`.
pub fn build_nonvanishing_poly(n: usize, p: u64) -> Result<CommPoly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Precondition("need n >= 1".into()));
    }
    let mut f = CommPoly::var(n, p, 0);
    for i in 1..n {
        f = combine(&f, &CommPoly::var(n, p, i));
    }
    Ok(f)
}

/// Checks `p^k > (p-1)(n-1)`.
pub fn check_phi_parameters(n: usize, p: u64, k: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || k == 0 {
        return Err(Error::Precondition("need n >= 1 and k >= 1".into()));
    }
    let pk = (p as u128)
        .checked_pow(k)
        .ok_or_else(|| Error::Precondition("p^k overflows".into()))?;
    if pk <= (p as u128 - 1) * (n as u128 - 1) {
        return Err(Error::Precondition(format!(
            "need p^k > (p-1)(n-1), got {pk} <= {}",
            (p - 1) * (n as u64 - 1)
        )));
    }
    Ok(())
}

/// Replaces a monomial of degree `1 mod (p-1)` by one of degree `p^k` that
/// takes the same values on `F_p^n`. Later nonzero exponents are moved into
/// `(0, p)`; the first nonzero exponent absorbs the rest.
pub fn homogenize(e: &[u32], p: u64, k: u32) -> Result<Vec<u32>> {
    check_phi_parameters(e.len(), p, k)?;
    let total: u64 = e.iter().map(|&x| x as u64).sum();
    if !(total + p - 2).is_multiple_of(p - 1) {
        return Err(Error::Precondition("monomial degree is not 1 mod p-1".into()));
    }
    let first = e
        .iter()
        .position(|&x| x != 0)
        .ok_or_else(|| Error::Precondition("constant monomial".into()))?;
    let reduce = |x: u32| {
        let r = x as u64 % (p - 1);
        (if r == 0 { p - 1 } else { r }) as u32
    };
    let mut out: Vec<u32> = e
        .iter()
        .enumerate()
        .map(|(i, &x)| if i == first || x == 0 { 0 } else { reduce(x) })
        .collect();
    let rest: u64 = out.iter().map(|&x| x as u64).sum();
    out[first] = (p.pow(k) - rest) as u32;
    Ok(out)
}

/// Linear functional on the degree-`p^k` part: `c_e` on the ordered
/// monomial `x_1^{e_1} ⋯ x_n^{e_n}`, zero on all other monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMap {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    /// Nonzero `c_e`, keyed by exponent vector.
    pub coefficients: BTreeMap<Vec<u32>, u64>,
    /// The homogeneous polynomial `g` with `Φ((Σ a_i x_i)^{p^k}) = g(a)`.
    pub target: CommPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiDump {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    pub degree: u64,
    /// Monomial in letters `a, b, ...` to coefficient.
    pub coefficients: BTreeMap<String, u64>,
}

impl PhiMap {
    pub fn degree(&self) -> usize {
        (self.p as usize).pow(self.k)
    }

    /// `Φ` of a noncommutative monomial (zero-based indices).
    pub fn on_monomial(&self, mono: &[usize]) -> u64 {
        if mono.len() != self.degree() || mono.windows(2).any(|w| w[0] > w[1]) {
            return 0;
        }
        let mut e = vec![0u32; self.n];
        for &i in mono {
            e[i] += 1;
        }
        self.coefficients.get(&e).copied().unwrap_or(0)
    }

    /// `Φ` applied to the degree-`p^k` part of `x`.
    pub fn apply(&self, x: &TruncPoly) -> Result<u64> {
        if x.n() != self.n || x.p() as u64 != self.p || x.degree() < self.degree() {
            return Err(Error::ParameterMismatch(
                "Φ and polynomial disagree on (n, p, degree)".into(),
            ));
        }
        let mut s = 0;
        for (e, &c) in &self.coefficients {
            let mono: Vec<usize> = e
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize))
                .collect();
            s = (s + c * x.coeff(&mono) as u64) % self.p;
        }
        Ok(s)
    }

    pub fn dump(&self) -> PhiDump {
        PhiDump {
            n: self.n,
            p: self.p,
            k: self.k,
            degree: self.degree() as u64,
            coefficients: self
                .coefficients
                .iter()
                .map(|(e, &c)| {
                    let s: String = e
                        .iter()
                        .enumerate()
                        .flat_map(|(i, &m)| std::iter::repeat_n((b'a' + i as u8) as char, m as usize))
                        .collect();
                    (s, c)
                })
                .collect(),
        }
    }
}

/// Builds `Φ` from the homogenized `f_n`.
pub fn build_phi(n: usize, p: u64, k: u32) -> Result<PhiMap> {
    check_phi_parameters(n, p, k)?;
    let f = build_nonvanishing_poly(n, p)?;
    let mut g = CommPoly::zero(n, p);
    for (e, &c) in &f.terms {
        g.add_term(homogenize(e, p, k)?, c);
    }
    Ok(PhiMap {
        n,
        p,
        k,
        coefficients: g.terms.clone(),
        target: g,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PhiVerification {
    pub checked: usize,
    pub nonvanishing: usize,
    /// Points where `Φ(v^{p^k})` vanished or disagreed with `g`.
    pub failures: Vec<Vec<u64>>,
    pub passed: bool,
}

/// `Φ(v^{p^k})` for `v = Σ a_i x_i`, expanding the power noncommutatively.
pub fn phi_of_power(phi: &PhiMap, a: &[u64]) -> u64 {
    let (n, p, d) = (phi.n, phi.p, phi.degree());
    let mut cur: Vec<u64> = vec![1];
    for _ in 0..d {
        let mut next = vec![0u64; cur.len() * n];
        for (idx, &c) in cur.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, &ai) in a.iter().enumerate() {
                next[idx * n + i] = c * ai % p;
            }
        }
        cur = next;
    }
    let mut s = 0;
    for (e, &c) in &phi.coefficients {
        let idx = e
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize))
            .fold(0, |acc, i| acc * n + i);
        s = (s + c * cur[idx]) % p;
    }
    s
}

/// Checks `Φ(v^{p^k}) = g(a) ≠ 0` for every nonzero `a ∈ F_p^n`.
pub fn verify_phi(phi: &PhiMap) -> PhiVerification {
    let mut checked = 0;
    let mut nonvanishing = 0;
    let mut failures = Vec::new();
    for a in all_vectors(phi.n, phi.p).skip(1) {
        checked += 1;
        let v = phi_of_power(phi, &a);
        if v != 0 && v == phi.target.eval(&a) {
            nonvanishing += 1;
        } else {
            failures.push(a);
        }
    }
    PhiVerification {
        checked,
        nonvanishing,
        passed: failures.is_empty(),
        failures,
    }
}

/// The central subgroup `C`, the character `Ψ(c) = Φ(c - 1)` on it, and the
/// outcome of the exhaustive power check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CenterpowerReport {
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub order: usize,
    pub graded_dims: Vec<u64>,
    pub h1_is_full: bool,
    pub central_order: usize,
    pub kernel_order: usize,
    pub central: bool,
    pub psi_homomorphism: bool,
    /// Elements with nonzero degree-one part.
    pub checked: usize,
    pub passed: usize,
    /// Printed form of the first element failing the power check.
    pub witness: Option<String>,
    pub verdict: String,
}

/// A homomorphism from a central subgroup to `Z/p`, given on group indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharacter {
    pub p: u64,
    /// `(element index, Ψ(element))` for every element of `C`.
    pub values: Vec<(usize, u64)>,
}

impl CentralCharacter {
    pub fn subgroup(&self) -> Vec<usize> {
        self.values.iter().map(|v| v.0).collect()
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.values.iter().filter(|v| v.1 == 0).map(|v| v.0).collect()
    }

    pub fn value(&self, g: usize) -> Option<u64> {
        self.values.iter().find(|v| v.0 == g).map(|v| v.1)
    }
}

/// `Ψ` on the last filtration term of `g`.
pub fn psi_character(g: &ZassenhausGroup, phi: &PhiMap) -> Result<CentralCharacter> {
    let one = TruncPoly::one(g.n, g.p, g.degree);
    let mut values = Vec::new();
    for c in g.last_term() {
        values.push((c, phi.apply(&g.elements[c].sub(&one)?)?));
    }
    Ok(CentralCharacter { p: phi.p, values })
}

/// Exhaustive check of the two properties the power argument needs:
/// `H_1(G; F_p) = F_p^n`, and every element outside the Frattini subgroup
/// has its `p^k`-th power in `C - Ker Ψ`.
pub fn psi_and_centerpower_check(g: &ZassenhausGroup, phi: &PhiMap) -> Result<CenterpowerReport> {
    if (g.n, g.p as u64, g.k) != (phi.n, phi.p, phi.k) {
        return Err(Error::ParameterMismatch(
            "group and Φ built for different (n, p, k)".into(),
        ));
    }
    let psi = psi_character(g, phi)?;
    let c_set = psi.subgroup();
    let t = &g.table;
    let central = c_set.iter().all(|&c| t.is_central(c));
    let lookup: HashMap<usize, u64> = psi.values.iter().copied().collect();
    let p = phi.p;
    let mut psi_hom = t.is_subgroup(&c_set);
    for &(a, va) in &psi.values {
        for &(b, vb) in &psi.values {
            if lookup.get(&t.mul(a, b)) != Some(&((va + vb) % p)) {
                psi_hom = false;
            }
        }
    }
    let h1_is_full = g.graded_dims.first() == Some(&(g.n as u64));
    let power = (g.p as u64).pow(g.k);
    let mut checked = 0;
    let mut passed = 0;
    let mut witness = None;
    for (idx, x) in g.elements.iter().enumerate() {
        if x.level() != Some(1) {
            continue;
        }
        checked += 1;
        let c = t.pow(idx, power as i64);
        let ok = lookup.get(&c).is_some_and(|&v| v != 0);
        if ok {
            passed += 1;
        } else if witness.is_none() {
            witness = Some(x.to_string());
        }
    }
    let ok = h1_is_full && central && psi_hom && witness.is_none();
    Ok(CenterpowerReport {
        n: g.n,
        p: g.p,
        k: g.k,
        order: g.order(),
        graded_dims: g.graded_dims.clone(),
        h1_is_full,
        central_order: c_set.len(),
        kernel_order: psi.kernel().len(),
        central,
        psi_homomorphism: psi_hom,
        checked,
        passed,
        witness,
        verdict: if ok { "verified" } else { "refuted" }.into(),
    })
}
