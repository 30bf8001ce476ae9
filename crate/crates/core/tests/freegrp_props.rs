use homocert::freegrp::{abelianize_mod_p, enumerate_orbit_ball, is_p_primitive, Move, OrbitSpec};
use homocert::{NielsenAuto, Word};
use proptest::prelude::*;

fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let r = rank as i32;
    prop::collection::vec(
        (1..=r, any::<bool>()).prop_map(|(g, inv)| if inv { -g } else { g }),
        0..max_len,
    )
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(rank, max_len).prop_map(move |l| Word::reduce(&l, rank).unwrap())
}

fn auto(rank: usize, max_len: usize) -> impl Strategy<Value = NielsenAuto> {
    let moves = Move::all(rank);
    prop::collection::vec(0..moves.len(), 0..max_len)
        .prop_map(move |idx| NielsenAuto::from_moves(rank, idx.iter().map(|&i| moves[i]).collect()).unwrap())
}

/// Naive reduction by repeated scanning, independent of the stack-based one.
fn naive_reduce(mut l: Vec<i32>) -> Vec<i32> {
    loop {
        let Some(i) = (1..l.len()).find(|&i| l[i] == -l[i - 1]) else {
            return l;
        };
        l.drain(i - 1..=i);
    }
}

proptest! {
    #[test]
    fn reduction_ignores_inserted_cancellations(
        base in letters(3, 20),
        inserts in prop::collection::vec((any::<prop::sample::Index>(), 1..=3i32, any::<bool>()), 0..6),
    ) {
        let mut l = base.clone();
        for (pos, g, inv) in inserts {
            let at = pos.index(l.len() + 1);
            let x = if inv { -g } else { g };
            l.splice(at..at, [x, -x]);
        }
        let a = Word::reduce(&base, 3).unwrap();
        let b = Word::reduce(&l, 3).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.letters(), &naive_reduce(base)[..]);
    }

    #[test]
    fn automorphisms_compose(phi in auto(3, 6), psi in auto(3, 6), w in word(3, 12)) {
        let lhs = phi.compose(&psi).unwrap().apply(&w).unwrap();
        let rhs = phi.apply(&psi.apply(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = phi.inverse().apply(&phi.apply(&w).unwrap()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn abelianization_is_additive(a in word(3, 15), b in word(3, 15), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let va = abelianize_mod_p(&a, p).unwrap();
        let vb = abelianize_mod_p(&b, p).unwrap();
        let vab = abelianize_mod_p(&a.multiply(&b).unwrap(), p).unwrap();
        let sum: Vec<u64> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
        prop_assert_eq!(vab, sum);
    }
}

#[test]
fn primitives_are_p_primitive() {
    for n in [2, 3] {
        let words = enumerate_orbit_ball(&OrbitSpec::primitives(n, 3), n, 200_000).unwrap();
        assert!(!words.is_empty());
        for w in &words {
            for p in [2, 3, 5, 7] {
                assert!(is_p_primitive(w, p).unwrap(), "{w} mod {p}");
            }
        }
    }
}
