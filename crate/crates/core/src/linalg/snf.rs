//! Smith normal form over Z with optional transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
    pub divisors: Vec<BigInt>,
    /// Unimodular `U` (rows x rows) with `U A V = D`.
    pub left: IntMatrix,
    /// Unimodular `V` (cols x cols); identity-sized only when tracked.
    pub right: Option<IntMatrix>,
    /// The diagonal result `D`.
    pub diagonal: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

struct Calc {
    a: IntMatrix,
    u: IntMatrix,
    v: Option<IntMatrix>,
}

impl Calc {
    fn row_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        // row_dst -= f * row_src
        for c in 0..self.a.cols() {
            if !self.a[(src, c)].is_zero() {
                let t = f * &self.a[(src, c)];
                self.a[(dst, c)] -= t;
            }
        }
        for c in 0..self.u.cols() {
            if !self.u[(src, c)].is_zero() {
                let t = f * &self.u[(src, c)];
                self.u[(dst, c)] -= t;
            }
        }
    }

    fn col_op(&mut self, dst: usize, src: usize, f: &BigInt) {
        // col_dst -= f * col_src
        for r in 0..self.a.rows() {
            if !self.a[(r, src)].is_zero() {
                let t = f * &self.a[(r, src)];
                self.a[(r, dst)] -= t;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for r in 0..v.rows() {
                if !v[(r, src)].is_zero() {
                    let t = f * &v[(r, src)];
                    v[(r, dst)] -= t;
                }
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        let m1 = -BigInt::one();
        for c in 0..self.a.cols() {
            let t = &self.a[(r, c)] * &m1;
            self.a[(r, c)] = t;
        }
        for c in 0..self.u.cols() {
            let t = &self.u[(r, c)] * &m1;
            self.u[(r, c)] = t;
        }
    }

    fn smallest_in(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..self.a.rows() {
            for c in t..self.a.cols() {
                let x = self.a[(r, c)].abs();
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|b| x < b.2) {
                    let one = x.is_one();
                    best = Some((r, c, x));
                    if one {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let mut divisors = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((r, c)) = self.smallest_in(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                    self.row_op(i, t, &q);
                    if !self.a[(i, t)].is_zero() {
                        clean = false;
                        if self.a[(i, t)].abs() < self.a[(t, t)].abs() {
                            self.swap_rows(t, i);
                        }
                    }
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                    self.col_op(j, t, &q);
                    if !self.a[(t, j)].is_zero() {
                        clean = false;
                        if self.a[(t, j)].abs() < self.a[(t, t)].abs() {
                            self.swap_cols(t, j);
                        }
                    }
                }
                if !clean {
                    continue;
                }
                // Divisibility: fold a non-divisible row into row t.
                let piv = self.a[(t, t)].clone();
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&piv)));
                match bad {
                    Some(i) => self.row_op(t, i, &-BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            divisors.push(self.a[(t, t)].clone());
            t += 1;
        }
        divisors
    }
}

/// Computes `U A V = D`. Column transforms are tracked only when
/// `track_right` is set, which keeps wide inputs cheap.
pub fn smith_normal_form(a: &IntMatrix, track_right: bool) -> Snf {
    let mut calc = Calc {
        a: a.clone(),
        u: IntMatrix::identity(a.rows()),
        v: track_right.then(|| IntMatrix::identity(a.cols())),
    };
    let divisors = calc.run();
    Snf {
        divisors,
        left: calc.u,
        right: calc.v,
        diagonal: calc.a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int;

    fn check(a: &IntMatrix) -> Snf {
        let s = smith_normal_form(a, true);
        let v = s.right.clone().unwrap();
        assert_eq!(s.left.mul(a).mul(&v), s.diagonal);
        assert!(s.left.determinant().abs().is_one());
        assert!(v.determinant().abs().is_one());
        for w in s.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn textbook_examples() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2], &[0]]));
        assert_eq!(s.divisors, vec![int(2)]);
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.divisors, vec![int(2), int(6), int(12)]);
        let s = check(&IntMatrix::from_i64_rows(&[&[4, 0], &[0, 6]]));
        assert_eq!(s.divisors, vec![int(2), int(12)]);
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.divisors.is_empty());
    }
}
