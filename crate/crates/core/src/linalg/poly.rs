//! Univariate polynomials over Q, cyclotomic polynomials and exact minimal
//! polynomials of matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::echelon::IntEchelon;
use super::matrix::{IntMatrix, RatMatrix};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut c = vec![BigRational::zero(); m + 1];
        c[0] = -BigRational::one();
        c[m] = BigRational::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.leading();
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.coeffs.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        self.mul(&other.div_rem(&g).0).monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&RatMatrix::identity(n).scale(c));
        }
        acc
    }

    /// Coefficients as strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The `m`-th cyclotomic polynomial, by dividing `x^m - 1` by `Φ_d` for the
/// proper divisors `d` of `m`.
pub fn cyclotomic(m: u64) -> RatPoly {
    assert!(m >= 1);
    let mut p = RatPoly::x_pow_minus_one(m as usize);
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic(d)).0;
        }
    }
    p
}

/// Exact minimal polynomial of an integer matrix.
///
/// The minimal polynomial is the lcm of the local minimal polynomials of the
/// standard basis vectors; a basis vector already inside the accumulated
/// invariant subspace contributes nothing new and is skipped.
pub fn min_poly_int(m: &IntMatrix) -> RatPoly {
    assert!(m.is_square());
    let d = m.rows();
    let mut invariant = IntEchelon::new(d);
    let mut mu = RatPoly::one();
    for j in 0..d {
        let mut e = vec![BigInt::zero(); d];
        e[j] = BigInt::one();
        if invariant.contains(&e) {
            continue;
        }
        let local = local_min_poly(m, e, &mut invariant);
        mu = mu.lcm(&local);
        if invariant.is_full() {
            break;
        }
    }
    mu
}

/// Krylov relation for a single vector, tracking the combination
/// coefficients alongside each reduced row.
fn local_min_poly(m: &IntMatrix, start: Vec<BigInt>, invariant: &mut IntEchelon) -> RatPoly {
    let d = m.rows();
    // rows: (reduced vector, combination coefficients, pivot)
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>, usize)> = Vec::new();
    let mut cur = start;
    for k in 0..=d {
        let mut v = cur.clone();
        let mut co = vec![BigInt::zero(); k + 1];
        co[k] = BigInt::one();
        for (rv, rc, p) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = rv[*p].clone();
            let b = v[*p].clone();
            for (x, r) in v.iter_mut().zip(rv) {
                *x = &a * &*x - &b * r;
            }
            for (i, x) in co.iter_mut().enumerate() {
                let r = rc.get(i).cloned().unwrap_or_else(BigInt::zero);
                *x = &a * &*x - &b * r;
            }
            normalize_pair(&mut v, &mut co);
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                let coeffs = co.into_iter().map(BigRational::from_integer).collect();
                return RatPoly::new(coeffs).monic();
            }
            Some(p) => {
                rows.push((v, co, p));
                invariant.insert(cur.clone());
                cur = m.mul_vec(&cur);
            }
        }
    }
    unreachable!("Krylov sequence longer than the dimension")
}

fn normalize_pair(v: &mut [BigInt], co: &mut [BigInt]) {
    let g = v
        .iter()
        .chain(co.iter())
        .fold(BigInt::zero(), |acc, x| if x.is_zero() { acc } else { acc.gcd(x) });
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut().chain(co.iter_mut()) {
        *x = &*x / &g;
    }
}

/// Exact minimal polynomial of a rational matrix: with `M = N / s` for an
/// integer matrix `N`, `μ_M(x) = s^{-deg} μ_N(s x)`.
pub fn min_poly(m: &RatMatrix) -> RatPoly {
    let (n, s) = m.to_int_scaled();
    let mu = min_poly_int(&n);
    if s.is_one() {
        return mu;
    }
    let s = BigRational::from_integer(s);
    let mut scale = BigRational::one();
    let coeffs = mu
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * &scale;
            scale = &scale * &s;
            v
        })
        .collect();
    RatPoly::new(coeffs).monic()
}
