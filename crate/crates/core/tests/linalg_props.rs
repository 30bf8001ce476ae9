mod common;

use homocert::chainrep::order_decision;
use homocert::linalg::{smith_normal_form, IntMatrix, Lattice};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(c).collect();
            IntMatrix::from_i64_rows(&rows)
        })
    })
}

proptest! {
    #[test]
    fn smith_form_invariants(a in small_matrix(5, 5)) {
        let s = smith_normal_form(&a, true);
        let v = s.right.clone().unwrap();
        prop_assert_eq!(s.left.mul(&a).mul(&v), s.diagonal.clone());
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(v.determinant().abs().is_one());
        for w in s.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.divisors.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn lattice_has_same_invariants(a in small_matrix(4, 6)) {
        let mut l = Lattice::new(a.rows());
        for c in 0..a.cols() {
            l.insert(a.column(c));
        }
        for c in 0..a.cols() {
            prop_assert!(l.contains(&a.column(c)));
        }
        let from_vectors = smith_normal_form(&a, false).divisors;
        let from_basis = smith_normal_form(&l.basis(), false).divisors;
        prop_assert_eq!(from_vectors, from_basis);
        let mut probe = vec![BigInt::zero(); a.rows()];
        probe[0] = BigInt::one();
        let spanned = smith_normal_form(&a, false);
        // e_1 lies in the lattice iff adding it leaves the invariants alone.
        let mut extended = a.columns();
        extended.push(probe.clone());
        let bigger = smith_normal_form(&IntMatrix::from_columns(a.rows(), &extended), false);
        prop_assert_eq!(l.contains(&probe), bigger.divisors == spanned.divisors);
    }
}

#[test]
fn order_library_is_classified() {
    let lib = common::order_library();
    assert_eq!(lib.len(), 20);
    for k in &lib {
        let v = order_decision(&k.matrix).unwrap();
        assert_eq!(v.order(), k.order, "{}", k.name);
        assert_eq!(common::brute_force_order(&k.matrix, 200), k.order, "{}", k.name);
    }
}
