use homocert::cover::{
    boundary_of, gaschutz_trace_check, lift_chain, proper_subspace_certificate, psi_projector, translate,
    CertificateInput, CoverCertificate, H1Basis, OrbitInfo, Surjection,
};
use homocert::freegrp::{enumerate_orbit_ball, random_word, OrbitSpec, DEFAULT_ORBIT_CAP};
use homocert::group::FiniteGroup;
use homocert::presets;
use homocert::truncalg::CentralCharacter;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn test_groups() -> Vec<Surjection> {
    let (s3, [t, c]) = FiniteGroup::symmetric3();
    vec![
        Surjection::new("Z/2", FiniteGroup::cyclic(2), vec![1, 0]).unwrap(),
        Surjection::new("Z/3", FiniteGroup::cyclic(3), vec![1, 0]).unwrap(),
        Surjection::new("S3", s3, vec![t, c]).unwrap(),
        Surjection::q8(),
        presets::zassenhaus(2, 2, 1, 1000).unwrap().preset.surjection,
    ]
}

#[test]
fn boundary_of_lift() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for s in test_groups() {
        for _ in 0..1000 {
            let w = random_word(&mut rng, 2, 16);
            let b = boundary_of(&s, &lift_chain(&s, &w));
            let mut expect = vec![0i64; s.order()];
            expect[s.eval(&w)] += 1;
            expect[0] -= 1;
            assert_eq!(b, expect, "{} {w}", s.name());
        }
    }
}

#[test]
fn fox_product_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for s in test_groups() {
        for _ in 0..1000 {
            let u = random_word(&mut rng, 2, 10);
            let v = random_word(&mut rng, 2, 10);
            let lhs = lift_chain(&s, &u.multiply(&v).unwrap());
            let moved = translate(&s, s.eval(&u), &lift_chain(&s, &v));
            let rhs: Vec<i64> = lift_chain(&s, &u).iter().zip(&moved).map(|(a, b)| a + b).collect();
            assert_eq!(lhs, rhs, "{} {u} {v}", s.name());
        }
    }
}

#[test]
fn gaschutz_traces() {
    for s in test_groups() {
        let h1 = H1Basis::new(&s);
        let o = s.order() as i64;
        for g in 0..s.order() {
            let trace = h1.action_matrix(&s, g).trace();
            let expect = if g == 0 { o + 1 } else { 1 };
            assert_eq!(trace, BigInt::from(expect), "{} element {g}", s.name());
        }
        assert!(gaschutz_trace_check(&s).passed);
    }
}

#[test]
fn projector_is_central_idempotent_on_h1() {
    let q = presets::q8();
    let z = presets::zassenhaus(2, 2, 1, 1000).unwrap().preset;
    for p in [q, z] {
        let s = &p.surjection;
        let h1 = H1Basis::new(s);
        let e = psi_projector(s, &p.psi).unwrap();
        let m = e.h1_image(s, &h1);
        let den = BigInt::from(e.denominator);
        assert_eq!(m.mul(&m), m.scale(&den));
        for g in 0..s.order() {
            let a = h1.action_matrix(s, g);
            assert_eq!(a.mul(&m), m.mul(&a));
        }
    }
}

fn words() -> Vec<homocert::Word> {
    enumerate_orbit_ball(&OrbitSpec::p_primitives(2, 6).unwrap(), 2, DEFAULT_ORBIT_CAP).unwrap()
}

#[test]
fn orbit_powers_are_killed_by_projector() {
    let q = presets::q8();
    let s = &q.surjection;
    let e = psi_projector(s, &q.psi).unwrap();
    for x in words() {
        let m = s.group().element_order(s.eval(&x)) as i64;
        let chain = lift_chain(s, &x.pow(m));
        assert!(e.apply_scaled(s, &chain).iter().all(|&c| c == 0), "{x}");
    }
}

fn certify(s: &Surjection, psi: &CentralCharacter, words: &[homocert::Word]) -> CoverCertificate {
    let input = CertificateInput {
        instance: "q8".into(),
        p: Some(2),
        graded_dims: None,
        orbit: OrbitInfo {
            mode: "p-primitives".into(),
            radius: 6,
            count: words.len(),
        },
        words,
        exact: false,
    };
    proper_subspace_certificate(s, Some(psi), &input).unwrap()
}

#[test]
fn conjugation_invariance() {
    let q = presets::q8();
    let s = &q.surjection;
    let ws = words();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let conj: Vec<homocert::Word> = ws
        .iter()
        .map(|w| w.conjugate_by(&random_word(&mut rng, 2, 5)))
        .collect();
    let a = certify(s, &q.psi, &ws);
    let b = certify(s, &q.psi, &conj);
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(a.dims, b.dims);
}
