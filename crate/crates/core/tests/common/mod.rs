#![allow(dead_code)]

use homocert::chainrep::{companion, cyclotomic_companion};
use homocert::group::FiniteGroup;
use homocert::linalg::{IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;

/// A matrix with its known order (`None` for infinite).
pub struct Known {
    pub name: &'static str,
    pub matrix: RatMatrix,
    pub order: Option<u64>,
}

fn perm(images: &[usize]) -> RatMatrix {
    let n = images.len();
    let mut m = IntMatrix::zeros(n, n);
    for (c, &r) in images.iter().enumerate() {
        m[(r, c)] = BigInt::from(1);
    }
    m.to_rat()
}

fn ints(rows: &[&[i64]]) -> RatMatrix {
    IntMatrix::from_i64_rows(rows).to_rat()
}

fn block(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    RatMatrix::block_diag(&[a.clone(), b.clone()])
}

pub fn order_library() -> Vec<Known> {
    let c3 = cyclotomic_companion(3);
    let mut coupled = block(&c3, &c3);
    coupled[(0, 2)] = BigRational::from_integer(1.into());
    let mut half = RatMatrix::identity(2);
    half[(0, 0)] = BigRational::new(1.into(), 2.into());
    half[(1, 1)] = BigRational::from_integer(2.into());
    vec![
        Known {
            name: "identity",
            matrix: RatMatrix::identity(3),
            order: Some(1),
        },
        Known {
            name: "transposition",
            matrix: perm(&[1, 0]),
            order: Some(2),
        },
        Known {
            name: "5-cycle",
            matrix: perm(&[1, 2, 3, 4, 0]),
            order: Some(5),
        },
        Known {
            name: "3-cycle x transposition",
            matrix: perm(&[1, 2, 0, 4, 3]),
            order: Some(6),
        },
        Known {
            name: "4-cycle x 3-cycle",
            matrix: perm(&[1, 2, 3, 0, 5, 6, 4]),
            order: Some(12),
        },
        Known {
            name: "signed diagonal",
            matrix: ints(&[&[-1, 0], &[0, 1]]),
            order: Some(2),
        },
        Known {
            name: "Phi_5 companion",
            matrix: cyclotomic_companion(5),
            order: Some(5),
        },
        Known {
            name: "Phi_7 companion",
            matrix: cyclotomic_companion(7),
            order: Some(7),
        },
        Known {
            name: "Phi_8 companion",
            matrix: cyclotomic_companion(8),
            order: Some(8),
        },
        Known {
            name: "Phi_12 companion",
            matrix: cyclotomic_companion(12),
            order: Some(12),
        },
        Known {
            name: "Phi_3 + Phi_4",
            matrix: block(&c3, &cyclotomic_companion(4)),
            order: Some(12),
        },
        Known {
            name: "unipotent 2",
            matrix: ints(&[&[1, 1], &[0, 1]]),
            order: None,
        },
        Known {
            name: "unipotent 3",
            matrix: ints(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]),
            order: None,
        },
        Known {
            name: "negative unipotent",
            matrix: ints(&[&[-1, 1], &[0, -1]]),
            order: None,
        },
        Known {
            name: "coupled Phi_3 blocks",
            matrix: coupled,
            order: None,
        },
        Known {
            name: "x^2-3x+1",
            matrix: companion(&[1, -3]),
            order: None,
        },
        Known {
            name: "x^2-x-1",
            matrix: companion(&[-1, -1]),
            order: None,
        },
        Known {
            name: "x^3-x-1",
            matrix: companion(&[-1, -1, 0]),
            order: None,
        },
        Known {
            name: "cat map",
            matrix: ints(&[&[2, 1], &[1, 1]]),
            order: None,
        },
        Known {
            name: "diag(1/2, 2)",
            matrix: half,
            order: None,
        },
    ]
}

/// Smallest `k ≤ bound` with `m^k = I`, by repeated multiplication.
pub fn brute_force_order(m: &RatMatrix, bound: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(m);
    }
    None
}

/// Restricted Witt dimensions from the identity
/// `∏_i ((1 − t^{p i}) / (1 − t^i))^{c_i} = 1 / (1 − n t)`, solved degree
/// by degree with truncated power series.
pub fn witt_by_series(n: u64, p: u64, max: usize) -> Vec<u64> {
    let target: Vec<i128> = (0..=max).map(|i| (n as i128).pow(i as u32)).collect();
    let mut dims = Vec::new();
    let mut prod = vec![0i128; max + 1];
    prod[0] = 1;
    for i in 1..=max {
        let c = target[i] - prod[i];
        dims.push(c as u64);
        // multiply prod by (1 + t^i + ... + t^{(p-1)i})^c
        for _ in 0..c {
            let mut next = vec![0i128; max + 1];
            for (a, &x) in prod.iter().enumerate() {
                for j in 0..p as usize {
                    if a + j * i <= max {
                        next[a + j * i] += x;
                    }
                }
            }
            prod = next;
        }
    }
    dims
}

/// Row 1 of the Fox matrix of `x1 -> x2^m x1`, computed from the group
/// directly: `g2^m` on `e1` and `1 + g2 + ... + g2^{m-1}` on `e2`.
pub fn transvection_row(g: &FiniteGroup, g2: usize, m: u32, n: usize) -> Vec<Vec<i64>> {
    let o = g.order();
    let mut row = vec![vec![0i64; o]; n];
    let mut cur = 0;
    for _ in 0..m {
        row[1][cur] += 1;
        cur = g.mul(cur, g2);
    }
    row[0][cur] += 1;
    row
}
