use std::fmt::Write;

use homocert::chainrep::{
    fox_matrix, project_to_w, search_infinite_order, transvection_powers, SearchOutcome, WSpace, WitnessKind,
};
use homocert::cover::{
    proper_subspace_certificate, psi_projector, CertificateInput, H1Basis, OrbitInfo, Surjection, Verdict,
};
use homocert::freegrp::random_word;
use homocert::intrep::{build_induced_rep, integral_quotient, orbit_lattice, verify_rep_orders, RepVerdict};
use homocert::linalg::RatMatrix;
use homocert::stallings::hall_completion;
use homocert::truncalg::{build_phi, check_phi_parameters, enumerate_group, psi_and_centerpower_check, verify_phi};
use homocert::{NielsenAuto, Word};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::Opts;
use crate::setup::{group_cap, load_instance, orbit_words, zassenhaus_params};
use crate::{Failure, Outcome, Status};

const DEFAULT_PHI_CAP: u64 = 1 << 20;
const DEFAULT_SEARCH_BUDGET: u64 = 10_000;
const DEFAULT_WITNESS_BUDGET: u64 = 64;
const RANDOM_BASES: usize = 3;
const HOMOMORPHISM_PAIRS: usize = 100;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::WrongVerdict
    }
}

pub fn phi(o: &Opts) -> Result<Outcome, Failure> {
    let (n, p, k) = (o.n.unwrap_or(2), o.p.unwrap_or(2), o.k.unwrap_or(1));
    check_phi_parameters(n, p, k)?;
    let cap = o.cap.unwrap_or(DEFAULT_PHI_CAP);
    let sweep = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if sweep > cap as u128 {
        return Ok(Outcome::cap(format!(
            "the verifier sweep has {sweep} points, cap {cap}"
        )));
    }
    let map = build_phi(n, p, k)?;
    let v = verify_phi(&map);
    let dump = map.dump();
    let mut text = format!("n = {n}, p = {p}, k = {k}, degree {}\n", dump.degree);
    for (mono, c) in &dump.coefficients {
        let _ = writeln!(text, "  {c} * {mono}");
    }
    let _ = writeln!(
        text,
        "verifier: {}/{} nonzero vectors pass",
        v.checked - v.failures.len(),
        v.checked
    );
    Ok(Outcome {
        verdict: if v.passed { "verified" } else { "refuted" }.into(),
        status: status(v.passed),
        result: json!({ "phi": to_value(&dump), "verification": to_value(&v) }),
        text,
        dot: None,
    })
}

pub fn group(o: &Opts) -> Result<Outcome, Failure> {
    let (n, p, k) = zassenhaus_params(o);
    let g = enumerate_group(n, p, k, group_cap(o))?;
    let map = build_phi(n, p as u64, k)?;
    let r = psi_and_centerpower_check(&g, &map)?;
    let ok = r.verdict == "verified";
    let mut text = format!("|G| = {}, graded dims {:?}\n", r.order, r.graded_dims);
    let _ = writeln!(text, "|C| = {}, |Ker Psi| = {}", r.central_order, r.kernel_order);
    let _ = writeln!(text, "power check: {}/{}", r.passed, r.checked);
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness: {w}");
    }
    Ok(Outcome {
        verdict: r.verdict.clone(),
        status: status(ok),
        result: to_value(&r),
        text,
        dot: None,
    })
}

pub fn witness(o: &Opts) -> Result<Outcome, Failure> {
    let inst = load_instance(o)?;
    let s = &inst.surjection;
    let (mode, words) = orbit_words(o, s.rank(), inst.p)?;
    let input = CertificateInput {
        instance: inst.name.clone(),
        p: o.p.or(inst.p),
        graded_dims: inst.graded_dims.clone(),
        orbit: OrbitInfo {
            mode,
            radius: o.radius,
            count: words.len(),
        },
        words: &words,
        exact: false,
    };
    let cert = proper_subspace_certificate(s, Some(inst.psi()?), &input)?;
    let d = &cert.dims;
    let mut text = format!(
        "instance {} (|G| = {}), {} orbit words\n",
        cert.instance, cert.group.order, cert.orbit.count
    );
    let _ = writeln!(
        text,
        "dim H1 = {}, span = {}, projector rank = {}, projected span rank = {}",
        d.h1, d.span, d.proj_rank, d.proj_span_rank
    );
    let _ = writeln!(text, "classes hash: {}", cert.hashes.classes);
    let verdict = to_value(&cert.verdict).as_str().unwrap_or_default().to_string();
    Ok(Outcome {
        verdict,
        status: status(cert.verdict == Verdict::Proper),
        result: to_value(&cert),
        text,
        dot: None,
    })
}

/// Closed form of the first row of the Fox matrix of `x_1 ↦ x_2^m x_1`.
fn transvection_row(s: &Surjection, m: u32) -> Vec<Vec<i64>> {
    let g = s.group();
    let mut row = vec![vec![0i64; g.order()]; s.rank()];
    let mut cur = g.identity();
    for _ in 0..m {
        row[1][cur] += 1;
        cur = g.mul(cur, s.images()[1]);
    }
    row[0][cur] += 1;
    row
}

pub fn chainrep(o: &Opts) -> Result<Outcome, Failure> {
    let inst = load_instance(o)?;
    let s = &inst.surjection;
    let n = s.rank();
    if n < 2 {
        return Err(Failure::Usage("transvections need rank at least 2".into()));
    }
    let budget = o.budget.unwrap_or(DEFAULT_SEARCH_BUDGET) as usize;
    let m = s.group().exponent() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut bases = vec![NielsenAuto::identity(n)];
    bases.extend((0..RANDOM_BASES).map(|_| NielsenAuto::random(&mut rng, n, 6)));

    let tau = NielsenAuto::left_transvection(n, 0, 1)?;
    let mut rows = Vec::new();
    for psi in &bases {
        let images = psi.images().iter().map(|w| s.eval(w)).collect();
        let shifted = Surjection::new(s.name(), s.group().clone(), images)?;
        for power in [1, 2, m] {
            let f = fox_matrix(&shifted, &tau.pow(power))?;
            let expect = transvection_row(&shifted, power);
            let ok = (0..n).all(|j| {
                let want: Vec<i64> = match j {
                    0 | 1 => expect[j].clone(),
                    _ => vec![0; s.order()],
                };
                f.entry(0, j) == &want[..]
            });
            rows.push(json!({ "basis": psi.to_string(), "m": power, "passed": ok }));
        }
    }
    let rows_ok = rows.iter().all(|r| r["passed"] == true);

    let h1 = H1Basis::new(s);
    let e = psi_projector(s, inst.psi()?)?;
    let w = WSpace::new(s, &h1, &e);
    let id = RatMatrix::identity(w.dim());
    let mut pool = Vec::new();
    let mut nontrivial = Vec::new();
    for (i, psi) in bases.iter().enumerate() {
        let tag = if i == 0 { String::new() } else { format!("B{i}:") };
        for el in transvection_powers(n, m, psi, &tag)? {
            if project_to_w(s, &h1, &w, &el.auto)? != id {
                nontrivial.push(el.name.clone());
            }
            pool.push(el);
        }
    }
    // Built-in presets satisfy the hypotheses under which every power acts
    // trivially; for custom surjections the count is informational.
    let builtin = matches!(o.preset.as_str(), "q8" | "zassenhaus");
    let trivial_ok = nontrivial.is_empty() || !builtin;

    let report = search_infinite_order(s, &h1, &e, &pool, budget)?;
    let search_ok = match (&report.outcome, &report.found) {
        (SearchOutcome::Found, Some(f)) => f.kind == WitnessKind::NonCyclotomic && f.inn_check.passed,
        (SearchOutcome::NotFound, _) => report.closure_complete,
        _ => false,
    };
    let exhausted = report.outcome == SearchOutcome::NotFound && !report.closure_complete;

    let mut text = format!("instance {}, exponent {m}, W dimension {}\n", inst.name, w.dim());
    let _ = writeln!(
        text,
        "fox rows: {}/{} match",
        rows.iter().filter(|r| r["passed"] == true).count(),
        rows.len()
    );
    let _ = writeln!(
        text,
        "transvection powers trivial on W: {}/{}",
        pool.len() - nontrivial.len(),
        pool.len()
    );
    let _ = writeln!(
        text,
        "search: {} products, {} distinct actions, closure complete: {}",
        report.examined, report.distinct, report.closure_complete
    );
    if let Some(f) = &report.found {
        let _ = writeln!(text, "found {} ({:?})", f.factorization.join(" "), f.kind);
        let _ = writeln!(text, "matrix on W:");
        for r in &f.matrix {
            let _ = writeln!(text, "  {}", r.join(" "));
        }
    }

    let verdict = match (&report.found, exhausted) {
        (Some(_), _) => "infinite-order",
        (None, true) => "budget-exhausted",
        (None, false) => "finite-closure",
    };
    let result = json!({
        "exponent": m,
        "bases": bases.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "foxRows": rows,
        "wDim": w.dim(),
        "nontrivialOnW": nontrivial,
        "search": to_value(&report),
    });
    let status = if !(rows_ok && trivial_ok) {
        Status::WrongVerdict
    } else if exhausted {
        Status::CapExceeded
    } else {
        status(search_ok)
    };
    Ok(Outcome {
        verdict: verdict.into(),
        status,
        result,
        text,
        dot: None,
    })
}

pub fn intrep(o: &Opts) -> Result<Outcome, Failure> {
    let inst = load_instance(o)?;
    let s = &inst.surjection;
    let (mode, words) = orbit_words(o, s.rank(), inst.p)?;
    let budget = o.budget.unwrap_or(DEFAULT_WITNESS_BUDGET) as usize;
    let h1 = H1Basis::new(s);
    let lattice = orbit_lattice(s, &h1, &words)?;
    let quotient = integral_quotient(h1.dim(), &lattice.basis())?;
    let rep = build_induced_rep(s, &h1, quotient)?;
    let cert = verify_rep_orders(&rep, &words, budget)?;

    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut failures = Vec::new();
    for _ in 0..HOMOMORPHISM_PAIRS {
        let x = random_word(&mut rng, s.rank(), 8);
        let y = random_word(&mut rng, s.rank(), 8);
        let xy: Word = x.multiply(&y)?;
        if rep.matrix(&x).mul(&rep.matrix(&y)) != rep.matrix(&xy) {
            failures.push(format!("{x} {y}"));
        }
    }
    let cocycle = rep.check_cocycle();
    let export = rep.export();

    let mut text = format!("instance {}, {} orbit words ({mode})\n", inst.name, cert.words_checked);
    let _ = writeln!(
        text,
        "A = Z^{} + torsion {:?}, degree {} (block degree {})",
        cert.free_rank,
        cert.torsion,
        cert.degree,
        rep.block_degree()
    );
    let _ = writeln!(text, "orbit orders: {:?}", cert.order_counts);
    if let Some(w) = &cert.witness {
        let _ = writeln!(text, "infinite order witness: {}", w.word);
    }
    for (i, g) in rep.generators().iter().enumerate() {
        let _ = writeln!(text, "generator x{}:", i + 1);
        text.push_str(&g.to_triplets());
    }
    let ok = cert.verdict == RepVerdict::Verified && failures.is_empty() && cocycle;
    let status = if cert.verdict == RepVerdict::Inconclusive && cert.candidates_tried >= budget {
        Status::CapExceeded
    } else {
        status(ok)
    };
    let verdict = to_value(&cert.verdict).as_str().unwrap_or_default().to_string();
    let result = json!({
        "orbit": { "mode": mode, "radius": o.radius, "count": words.len() },
        "certificate": to_value(&cert),
        "homomorphismPairs": HOMOMORPHISM_PAIRS,
        "homomorphismFailures": failures,
        "cocycleIdentity": cocycle,
        "representation": to_value(&export),
    });
    Ok(Outcome {
        verdict,
        status,
        result,
        text,
        dot: None,
    })
}

pub fn hall(word: &str, o: &Opts) -> Result<Outcome, Failure> {
    let rank = o.n.unwrap_or(2);
    let s = Word::parse(word, rank)?;
    let (g, cert) = hall_completion(&s)?;
    let ok = cert.verify(&g, &s);
    let action = g.coset_action()?;
    let mut text = format!("{} is primitive in a subgroup of index {}\n", s, g.vertex_count());
    let _ = writeln!(
        text,
        "distinguished edge {:?}, crossings {}",
        cert.distinguished, cert.crossings
    );
    let _ = writeln!(text, "free basis: {}", cert.basis.join(" "));
    let result = json!({
        "word": s.to_string(),
        "index": g.vertex_count(),
        "certificate": to_value(&cert),
        "cosetAction": to_value(&action),
        "verified": ok,
    });
    Ok(Outcome {
        verdict: if ok { "primitive" } else { "unverified" }.into(),
        status: status(ok),
        result,
        text,
        dot: Some(g.to_dot()),
    })
}
