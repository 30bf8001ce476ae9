use std::collections::HashMap;

use homocert::chainrep::order_decision;
use homocert::cover::{H1Basis, Surjection};
use homocert::freegrp::{all_reduced_words, enumerate_orbit_ball, random_word, OrbitSpec, DEFAULT_ORBIT_CAP};
use homocert::intrep::{
    build_induced_rep, integral_quotient, monomial_order, orbit_lattice, verify_rep_orders, IntegralRep, RepVerdict,
};
use homocert::linalg::IntMatrix;
use homocert::Word;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q8_rep() -> (IntegralRep, Vec<Word>) {
    let s = Surjection::q8();
    let h1 = H1Basis::new(&s);
    let words = enumerate_orbit_ball(&OrbitSpec::p_primitives(2, 6).unwrap(), 2, DEFAULT_ORBIT_CAP).unwrap();
    let lattice = orbit_lattice(&s, &h1, &words).unwrap();
    let a = integral_quotient(h1.dim(), &lattice.basis()).unwrap();
    (build_induced_rep(&s, &h1, a).unwrap(), words)
}

#[test]
fn q8_pipeline() {
    let (rep, words) = q8_rep();
    assert!(rep.quotient().free_rank() >= 4);
    let cert = verify_rep_orders(&rep, &words, 64).unwrap();
    assert_eq!(cert.verdict, RepVerdict::Verified);
    assert_eq!(cert.words_checked, words.len());
    let e = rep.quotient().torsion_exponent().to_u64().unwrap();
    assert!(cert.order_counts.keys().all(|o| (4 * e) % o == 0));
    assert!(cert.witness.unwrap().verdict.is_infinite());
}

#[test]
fn orders_agree_with_monomial_structure() {
    let (rep, words) = q8_rep();
    let g = rep.surjection().group();
    let e = rep.quotient().torsion_exponent().to_u64().unwrap();
    for x in words.iter().step_by(7) {
        let mono = rep.monomial(x);
        let exact = monomial_order(&rep, &mono).expect("finite");
        let m = rep.matrix(x);
        assert_eq!(order_decision(&m.to_rat()).unwrap().order(), Some(exact));
        let me = g.element_order(rep.surjection().eval(x)) as u64 * e;
        assert!(m.pow(me).is_identity());
    }
}

#[test]
fn homomorphism_on_random_pairs() {
    let (rep, _) = q8_rep();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..100 {
        let x = random_word(&mut rng, 2, 8);
        let y = random_word(&mut rng, 2, 8);
        let xy = x.multiply(&y).unwrap();
        assert_eq!(rep.matrix(&x).mul(&rep.matrix(&y)), rep.matrix(&xy), "{x} {y}");
    }
}

#[test]
fn generators_are_unimodular_and_monomial() {
    let (rep, _) = q8_rep();
    let b = rep.block_degree();
    let s = rep.surjection();
    for (i, m) in rep.generators().iter().enumerate() {
        let det = m.determinant();
        assert!(det == BigInt::from(1) || det == BigInt::from(-1));
        let gi = s.images()[i];
        let o = s.order();
        for col in 0..o {
            for row in 0..o {
                let nonzero = (0..b).any(|r| (0..b).any(|c| !m[(row * b + r, col * b + c)].is_zero()));
                assert_eq!(nonzero, row == s.group().mul(gi, col));
            }
        }
    }
}

#[test]
fn cocycle_identity() {
    let (rep, _) = q8_rep();
    assert!(rep.check_cocycle());
}

#[test]
fn kernel_sampling() {
    let (rep, words) = q8_rep();
    let s = rep.surjection();
    let id = IntMatrix::identity(rep.degree());
    let r1 = Word::parse("aaaa", 2).unwrap();
    let r2 = Word::parse("bbbb", 2)
        .unwrap()
        .conjugate_by(&Word::parse("ab", 2).unwrap());
    let c = Word::commutator(&r1, &r2);
    assert_eq!(rep.matrix(&c), id);
    for x in words.iter().step_by(11) {
        let m = s.group().element_order(s.eval(x)) as i64;
        let w = x.pow(m).multiply(&c).unwrap();
        assert_eq!(rep.matrix(&w), id, "{x}");
    }
}

#[test]
fn section_is_shortlex_minimal() {
    let s = Surjection::q8();
    let mut best: HashMap<usize, Word> = HashMap::new();
    for w in all_reduced_words(2, 3, 10_000).unwrap() {
        let g = s.eval(&w);
        let slot = best.entry(g).or_insert_with(|| w.clone());
        if w < *slot {
            *slot = w;
        }
    }
    let (rep, _) = q8_rep();
    for (g, w) in rep.section().iter().enumerate() {
        assert_eq!(&best[&g], w);
    }
}

#[test]
fn empty_orbit_rests_on_witness() {
    let s = Surjection::q8();
    let h1 = H1Basis::new(&s);
    let a = integral_quotient(h1.dim(), &IntMatrix::zeros(h1.dim(), 0)).unwrap();
    let rep = build_induced_rep(&s, &h1, a).unwrap();
    let cert = verify_rep_orders(&rep, &[], 8).unwrap();
    assert_eq!(cert.words_checked, 0);
    assert_eq!(cert.verdict, RepVerdict::Verified);
    assert_eq!(cert.witness.unwrap().word, "aaaa");
}
