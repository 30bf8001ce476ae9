//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use homocert::chainrep::{
    fox_matrix, h1_action, order_decision, project_to_w, search_infinite_order, transvection_powers, SearchOutcome,
    WSpace, WitnessKind,
};
use homocert::cover::{
    boundary_of, gaschutz_trace_check, lift_chain, proper_subspace_certificate, psi_projector, translate,
    CertificateInput, H1Basis, OrbitInfo, Surjection, Verdict,
};
use homocert::freegrp::{enumerate_orbit_ball, random_word, OrbitSpec, DEFAULT_ORBIT_CAP};
use homocert::group::FiniteGroup;
use homocert::intrep::{build_induced_rep, integral_quotient, orbit_lattice, verify_rep_orders, RepVerdict};
use homocert::linalg::RatMatrix;
use homocert::stallings::{aut_orbit_closure, fiber_intersection, hall_completion, subgroups_of_index, CoreGraph};
use homocert::truncalg::{build_phi, enumerate_group, psi_and_centerpower_check, verify_phi};
use homocert::{presets, NielsenAuto, Word};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn two_primitive_words() -> Vec<Word> {
    enumerate_orbit_ball(&OrbitSpec::p_primitives(2, 6).unwrap(), 2, DEFAULT_ORBIT_CAP).unwrap()
}

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

fn phi_construction() -> Outcome {
    let mut parts = Vec::new();
    for (n, p, k) in [(2usize, 2u64, 1u32), (3, 2, 2), (2, 3, 1), (3, 3, 2), (5, 2, 3)] {
        let start = Instant::now();
        ensure(p.pow(k) > (p - 1) * (n as u64 - 1), "parameter condition")?;
        let phi = build_phi(n, p, k).map_err(|e| e.to_string())?;
        let v = verify_phi(&phi);
        let expected = p.pow(n as u32) - 1;
        ensure(
            v.passed && v.checked as u64 == expected,
            format!("({n},{p},{k}) failed at {:?}", v.failures),
        )?;
        within(start, Duration::from_secs(60), "instance")?;
        parts.push(format!("({n},{p},{k}):{}", v.checked));
    }
    Ok(parts.join(" "))
}

fn zassenhaus_group() -> Outcome {
    let start = Instant::now();
    let g = enumerate_group(2, 2, 1, 1 << 12).map_err(|e| e.to_string())?;
    ensure(g.order() == 32, format!("|G| = {}", g.order()))?;
    ensure(g.graded_dims == vec![2, 3], format!("dims {:?}", g.graded_dims))?;
    ensure(
        g.graded_dims == common::witt_by_series(2, 2, 2),
        "Witt series disagrees",
    )?;
    let phi = build_phi(2, 2, 1).map_err(|e| e.to_string())?;
    let r = psi_and_centerpower_check(&g, &phi).map_err(|e| e.to_string())?;
    ensure(
        r.verdict == "verified" && r.passed == r.checked && r.checked > 0,
        format!("{r:?}"),
    )?;
    within(start, Duration::from_secs(10), "run")?;
    Ok(format!("|G|=32 dims=(2,3) power check {}/{}", r.passed, r.checked))
}

fn certify(
    s: &Surjection,
    psi: &homocert::truncalg::CentralCharacter,
    words: &[Word],
) -> homocert::cover::CoverCertificate {
    let input = CertificateInput {
        instance: s.name().to_string(),
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

fn proper_witnesses() -> Outcome {
    let start = Instant::now();
    let words = two_primitive_words();
    let q = presets::q8();
    let a = certify(&q.surjection, &q.psi, &words);
    ensure(a.verdict == Verdict::Proper, format!("Q8 verdict {:?}", a.verdict))?;
    ensure(
        a.dims.h1 == 9 && a.dims.proj_rank == 4 && a.dims.proj_span_rank == 0 && a.dims.span <= 5,
        format!("Q8 dims {:?}", a.dims),
    )?;
    let z = presets::zassenhaus(2, 2, 1, 1000).map_err(|e| e.to_string())?.preset;
    let b = certify(&z.surjection, &z.psi, &words);
    ensure(
        b.verdict == Verdict::Proper,
        format!("Zassenhaus verdict {:?}", b.verdict),
    )?;
    ensure(
        b.dims.h1 == 33 && b.dims.proj_span_rank == 0 && b.dims.proj_rank > 0,
        format!("Zassenhaus dims {:?}", b.dims),
    )?;
    within(start, Duration::from_secs(600), "both witnesses")?;
    Ok(format!(
        "Q8 (h1 {}, span {}, proj {}, proj span {}), Zassenhaus (h1 {}, span {}, proj {}, proj span {})",
        a.dims.h1,
        a.dims.span,
        a.dims.proj_rank,
        a.dims.proj_span_rank,
        b.dims.h1,
        b.dims.span,
        b.dims.proj_rank,
        b.dims.proj_span_rank
    ))
}

fn gaschutz() -> Outcome {
    let mut names = Vec::new();
    for s in test_groups() {
        let h1 = H1Basis::new(&s);
        for g in 0..s.order() {
            let expect = if g == 0 { s.order() as i64 + 1 } else { 1 };
            let trace = h1.action_matrix(&s, g).trace();
            ensure(
                trace == BigInt::from(expect),
                format!("{} element {g}: trace {trace}", s.name()),
            )?;
        }
        ensure(gaschutz_trace_check(&s).passed, format!("{} report", s.name()))?;
        names.push(format!("{}({})", s.name(), s.order()));
    }
    Ok(names.join(" "))
}

fn fox_calculus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for s in test_groups() {
        for _ in 0..1000 {
            let u = random_word(&mut rng, 2, 12);
            let v = random_word(&mut rng, 2, 12);
            let mut expect = vec![0i64; s.order()];
            expect[s.eval(&u)] += 1;
            expect[0] -= 1;
            ensure(
                boundary_of(&s, &lift_chain(&s, &u)) == expect,
                format!("boundary of {u} in {}", s.name()),
            )?;
            let lhs = lift_chain(&s, &u.multiply(&v).unwrap());
            let moved = translate(&s, s.eval(&u), &lift_chain(&s, &v));
            let rhs: Vec<i64> = lift_chain(&s, &u).iter().zip(&moved).map(|(a, b)| a + b).collect();
            ensure(lhs == rhs, format!("product rule for {u}, {v} in {}", s.name()))?;
        }
    }
    let q = Surjection::q8();
    let mut bases = vec![NielsenAuto::identity(2)];
    bases.extend((0..10).map(|_| NielsenAuto::random(&mut rng, 2, 6)));
    for psi in &bases {
        let images = psi.images().iter().map(|w| q.eval(w)).collect();
        let s = Surjection::new("Q8 shifted", q.group().clone(), images).unwrap();
        for m in [1u32, 2, 4] {
            let f = fox_matrix(&s, &NielsenAuto::left_transvection(2, 0, 1).unwrap().pow(m)).unwrap();
            let row = common::transvection_row(s.group(), s.images()[1], m, 2);
            ensure(
                f.entry(0, 0) == &row[0][..] && f.entry(0, 1) == &row[1][..],
                format!("basis {psi}, m = {m}"),
            )?;
        }
    }
    Ok(format!(
        "5 groups x 1000 words, transvection rows in {} bases",
        bases.len()
    ))
}

fn transvection_triviality() -> Outcome {
    let q = presets::q8();
    let s = &q.surjection;
    let h1 = H1Basis::new(s);
    let e = psi_projector(s, &q.psi).map_err(|e| e.to_string())?;
    let w = WSpace::new(s, &h1, &e);
    let id = RatMatrix::identity(w.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bases = vec![NielsenAuto::identity(2)];
    bases.extend((0..10).map(|_| NielsenAuto::random(&mut rng, 2, 6)));
    let mut count = 0;
    let mut nontrivial = 0;
    for psi in &bases {
        for el in transvection_powers(2, 4, psi, "").map_err(|e| e.to_string())? {
            let m = project_to_w(s, &h1, &w, &el.auto).map_err(|e| e.to_string())?;
            ensure(m == id, format!("{} in basis {psi} is not the identity on W", el.name))?;
            if !h1_action(s, &h1, &el.auto).map_err(|e| e.to_string())?.is_identity() {
                nontrivial += 1;
            }
            count += 1;
        }
    }
    ensure(nontrivial > 0, "every fourth power acts trivially on all of H1")?;
    Ok(format!(
        "{count} powers trivial on W (dim {}), {nontrivial} nontrivial on H1",
        w.dim()
    ))
}

fn order_library() -> Outcome {
    let lib = common::order_library();
    ensure(lib.len() == 20, "library size")?;
    for k in &lib {
        let v = order_decision(&k.matrix).map_err(|e| e.to_string())?;
        ensure(v.order() == k.order, format!("{}: got {:?}", k.name, v.order()))?;
        ensure(
            common::brute_force_order(&k.matrix, 200) == k.order,
            format!("{}: brute force", k.name),
        )?;
    }
    Ok("20/20".into())
}

fn infinite_order_search() -> Outcome {
    let q = presets::q8();
    let s = &q.surjection;
    let h1 = H1Basis::new(s);
    let e = psi_projector(s, &q.psi).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pool = transvection_powers(2, 4, &NielsenAuto::identity(2), "").map_err(|e| e.to_string())?;
    for k in 0..3 {
        let psi = NielsenAuto::random(&mut rng, 2, 6);
        pool.extend(transvection_powers(2, 4, &psi, &format!("S{k}:")).map_err(|e| e.to_string())?);
    }
    let r = search_infinite_order(s, &h1, &e, &pool, 10_000).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())?;
    match (&r.outcome, &r.found) {
        (SearchOutcome::Found, Some(f)) => {
            ensure(
                f.kind == WitnessKind::NonCyclotomic,
                "found element lacks a non-cyclotomic factor",
            )?;
            ensure(f.inn_check.passed, "found element fails the inner quotient check")?;
            Ok(format!("found: {}", f.factorization.join(" ")))
        }
        (SearchOutcome::NotFound, None) => Ok(format!(
            "not found: {} products examined, {} distinct actions, closure complete = {}",
            r.examined, r.distinct, r.closure_complete
        )),
        _ => Err("inconsistent report".into()),
    }
}

fn integral_rep() -> Outcome {
    let start = Instant::now();
    let s = Surjection::q8();
    let h1 = H1Basis::new(&s);
    let words = two_primitive_words();
    let lattice = orbit_lattice(&s, &h1, &words).map_err(|e| e.to_string())?;
    let a = integral_quotient(h1.dim(), &lattice.basis()).map_err(|e| e.to_string())?;
    let rep = build_induced_rep(&s, &h1, a).map_err(|e| e.to_string())?;
    let cert = verify_rep_orders(&rep, &words, 64).map_err(|e| e.to_string())?;
    let exp = rep
        .quotient()
        .torsion_exponent()
        .to_u64()
        .ok_or("torsion exponent overflow")?;
    ensure(
        cert.order_counts.keys().all(|o| (4 * exp) % o == 0),
        format!("orders {:?}", cert.order_counts),
    )?;
    ensure(cert.words_checked == words.len(), "not every orbit word was checked")?;
    ensure(cert.verdict == RepVerdict::Verified, "no infinite-order witness")?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let x = random_word(&mut rng, 2, 8);
        let y = random_word(&mut rng, 2, 8);
        let xy = x.multiply(&y).unwrap();
        ensure(
            rep.matrix(&x).mul(&rep.matrix(&y)) == rep.matrix(&xy),
            format!("homomorphism fails on {x}, {y}"),
        )?;
    }
    within(start, Duration::from_secs(600), "pipeline")?;
    Ok(format!(
        "degree {}, A = Z^{} + torsion {:?}, {} words finite, witness {}",
        rep.degree(),
        cert.free_rank,
        cert.torsion,
        cert.words_checked,
        cert.witness.map(|w| w.word).unwrap_or_default()
    ))
}

fn stallings_machinery() -> Outcome {
    let start = Instant::now();
    for text in ["aa", "abAB", "aabbb"] {
        let s = Word::parse(text, 2).unwrap();
        let (t, cert) = hall_completion(&s).map_err(|e| e.to_string())?;
        ensure(
            cert.crossings == 1 && cert.verify(&t, &s) && t.is_covering(),
            format!("Hall completion of {text}"),
        )?;
    }
    let h = CoreGraph::from_words(
        2,
        &[
            Word::parse("aa", 2).unwrap(),
            Word::parse("b", 2).unwrap(),
            Word::parse("abA", 2).unwrap(),
        ],
    )
    .map_err(|e| e.to_string())?;
    let orbit = aut_orbit_closure(&h, 100).map_err(|e| e.to_string())?;
    let all = subgroups_of_index(2, 2, 1000).map_err(|e| e.to_string())?;
    ensure(
        orbit.len() <= 3 && orbit == all,
        format!("orbit {} vs enumeration {}", orbit.len(), all.len()),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut gs = Vec::new();
    for d in [3, 4] {
        loop {
            let perms: Vec<Vec<usize>> = (0..2)
                .map(|_| {
                    let mut p: Vec<usize> = (0..d).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect();
            if let Ok(g) = CoreGraph::from_permutations(2, &perms) {
                if g.vertex_count() == d {
                    gs.push(g);
                    break;
                }
            }
        }
    }
    let meet = fiber_intersection(&gs, 10_000).map_err(|e| e.to_string())?;
    for _ in 0..1000 {
        let w = random_word(&mut rng, 2, 12);
        ensure(
            meet.contains(&w) == gs.iter().all(|g| g.contains(&w)),
            format!("membership of {w}"),
        )?;
    }
    within(start, Duration::from_secs(60), "run")?;
    Ok(format!(
        "orbit size {}, intersection index {}",
        orbit.len(),
        meet.index().unwrap_or(0)
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Phi construction", phi_construction),
        ("Zassenhaus group and power check", zassenhaus_group),
        ("proper subspace witnesses", proper_witnesses),
        ("Gaschutz trace identity", gaschutz),
        ("Fox calculus and transvection rows", fox_calculus),
        ("transvection powers trivial on W", transvection_triviality),
        ("order decision library", order_library),
        ("infinite-order search", infinite_order_search),
        ("integral representation pipeline", integral_rep),
        ("Stallings machinery", stallings_machinery),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({t:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({t:.2}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
