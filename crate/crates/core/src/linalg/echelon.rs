use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{primitive_part, IntMatrix, RatMatrix};

/// Incrementally built row space over Q, kept as primitive integer rows in
/// echelon order. Row `k` vanishes on the pivot columns of rows `0..k`.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    pub fn new(dim: usize) -> Self {
        IntEchelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the current rows; the result is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let a = row[p].clone();
            let b = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
            primitive_part(&mut v);
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        primitive_part(&mut v);
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn insert_i64(&mut self, v: &[i64]) -> bool {
        self.insert(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
}

/// A sublattice of `Z^dim` kept in row echelon form by unimodular row
/// operations, so its rows are always a Z-basis.
#[derive(Clone, Debug, Default)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Basis vectors as the columns of a `dim × rank` matrix.
    pub fn basis(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.rows)
    }

    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut k = 0;
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                return false;
            };
            while k < self.rows.len() && self.pivots[k] < lead {
                k += 1;
            }
            if k == self.rows.len() || self.pivots[k] > lead {
                if v[lead].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(k, v);
                self.pivots.insert(k, lead);
                return true;
            }
            let row = &mut self.rows[k];
            let e = row[lead].extended_gcd(&v[lead]);
            let (ra, va) = (&row[lead] / &e.gcd, &v[lead] / &e.gcd);
            let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &e.x * r + &e.y * x).collect();
            let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &ra * x - &va * r).collect();
            *row = new_row;
            if row[lead].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            v = new_v;
            k += 1;
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

/// Rank over Q by Bareiss fraction-free elimination.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss_echelon(m).1.len()
}

/// Rank of a rational matrix (rows scaled to integers).
pub fn rank_rat(m: &RatMatrix) -> usize {
    rank(&m.to_int_scaled().0)
}

/// Fraction-free row echelon form. Returns the reduced matrix and the pivot
/// columns; every intermediate division is exact.
pub fn bareiss_echelon(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[(r, c)] * &a[(i, j)] - &a[(i, c)] * &a[(r, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = BigInt::zero();
        }
        // Rows above the pivot row keep their scale; entries of the pivot
        // row to the right stay as they are.
        prev = a[(r, c)].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the rational kernel `{x : m x = 0}`, as primitive integer
/// columns. Free variables are set to one in turn; pivot variables come from
/// back substitution on the fraction-free echelon form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let (ech, pivots) = bareiss_echelon(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut s = BigRational::zero();
            for (c, xc) in x.iter().enumerate().skip(pc + 1) {
                if !xc.is_zero() && !ech[(r, c)].is_zero() {
                    s += BigRational::from_integer(ech[(r, c)].clone()) * xc;
                }
            }
            x[pc] = -s / BigRational::from_integer(ech[(r, pc)].clone());
        }
        let den = x
            .iter()
            .fold(BigInt::one(), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
        let mut v: Vec<BigInt> = x
            .iter()
            .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        primitive_part(&mut v);
        basis.push(v);
    }
    IntMatrix::from_columns(cols, &basis)
}

/// Indices of a maximal independent subset of the columns, chosen greedily.
pub fn independent_columns(m: &IntMatrix) -> Vec<usize> {
    let mut e = IntEchelon::new(m.rows());
    let mut out = Vec::new();
    for c in 0..m.cols() {
        if e.insert(m.column(c)) {
            out.push(c);
        }
    }
    out
}

/// Coordinates of vectors in a fixed subspace basis, exact over Q.
///
/// Built from a full-column-rank integer basis `B`; picks rows where `B` is
/// invertible and solves against that square block, then checks the answer
/// against all rows.
#[derive(Clone, Debug)]
pub struct SubspaceCoords {
    basis: IntMatrix,
    pivot_rows: Vec<usize>,
    block_inverse: RatMatrix,
}

impl SubspaceCoords {
    pub fn new(basis: IntMatrix) -> Self {
        let pivot_rows = independent_columns(&basis.transpose());
        assert_eq!(pivot_rows.len(), basis.cols(), "basis is not independent");
        let all: Vec<usize> = (0..basis.cols()).collect();
        let block = basis.submatrix(&pivot_rows, &all).to_rat();
        let block_inverse = block.inverse().expect("independent block");
        SubspaceCoords {
            basis,
            pivot_rows,
            block_inverse,
        }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v`, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let sub: Vec<BigRational> = self
            .pivot_rows
            .iter()
            .map(|&r| BigRational::from_integer(v[r].clone()))
            .collect();
        let x = self.block_inverse.mul_vec(&sub);
        // Verify B x = v on every row.
        for (r, vr) in v.iter().enumerate().take(self.basis.rows()) {
            let mut s = BigRational::zero();
            for (c, xc) in x.iter().enumerate() {
                if !xc.is_zero() && !self.basis[(r, c)].is_zero() {
                    s += BigRational::from_integer(self.basis[(r, c)].clone()) * xc;
                }
            }
            if s != BigRational::from_integer(vr.clone()) {
                return None;
            }
        }
        Some(x)
    }

    /// Matrix `M` with `map(B) = B M`, where `map` sends a basis vector to
    /// its image. Fails if an image leaves the subspace.
    pub fn restrict(&self, mut map: impl FnMut(&[BigInt]) -> Vec<BigInt>) -> Option<RatMatrix> {
        let k = self.dim();
        let mut cols = Vec::with_capacity(k);
        for c in 0..k {
            let img = map(&self.basis.column(c));
            cols.push(self.coords(&img)?);
        }
        Some(RatMatrix::from_columns(k, &cols))
    }
}
