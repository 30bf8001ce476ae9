//! Action of automorphisms on the chains of a finite cover: Fox matrices over
//! `Z[G]`, the induced action on the projected part of `H_1`, exact
//! finite/infinite order decisions and a bounded search for infinite order.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{lift_chain, ring_mul, Chain, H1Basis, PsiProjector, Surjection};
use crate::error::{Error, Result};
use crate::freegrp::{NielsenAuto, Word};
use crate::group::FiniteGroup;
use crate::linalg::{
    cyclotomic, euler_phi, independent_columns, min_poly, IntMatrix, RatMatrix, RatPoly, SubspaceCoords,
};
use crate::stallings::CoreGraph;

/// An `n × n` matrix over `Z[G]`; each entry is a coefficient vector on the
/// group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingMatrix {
    pub n: usize,
    pub order: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

impl GroupRingMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &[i64] {
        &self.entries[i][j]
    }

    /// The integer matrix of the chain map on `C_1 = Z[G]^n`: column
    /// `(i, g)` is `g · (row i)`.
    pub fn expansion(&self, g: &FiniteGroup) -> IntMatrix {
        let o = self.order;
        let mut m = IntMatrix::zeros(self.n * o, self.n * o);
        for i in 0..self.n {
            for h in 0..o {
                let col = i * o + h;
                for j in 0..self.n {
                    for (x, &c) in self.entries[i][j].iter().enumerate() {
                        if c != 0 {
                            m[(j * o + g.mul(h, x), col)] += c;
                        }
                    }
                }
            }
        }
        m
    }

    /// Applies the chain map to a chain.
    pub fn apply(&self, g: &FiniteGroup, chain: &[i64]) -> Chain {
        let o = self.order;
        let mut out = vec![0i64; chain.len()];
        for (idx, &c) in chain.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (i, h) = (idx / o, idx % o);
            for j in 0..self.n {
                for (x, &k) in self.entries[i][j].iter().enumerate() {
                    if k != 0 {
                        out[j * o + g.mul(h, x)] += c * k;
                    }
                }
            }
        }
        out
    }
}

/// Entry `(i, j)` is the `ē_j`-part of the lift of `φ(x_i)`: the image in
/// `Z[G]` of the Fox derivative `∂φ(x_i)/∂x_j`.
pub fn fox_matrix(s: &Surjection, phi: &NielsenAuto) -> Result<GroupRingMatrix> {
    let n = s.rank();
    if phi.rank() != n {
        return Err(Error::RankMismatch {
            left: n,
            right: phi.rank(),
        });
    }
    let o = s.order();
    let entries = phi
        .images()
        .iter()
        .map(|w| {
            let chain = lift_chain(s, w);
            (0..n).map(|j| chain[j * o..(j + 1) * o].to_vec()).collect()
        })
        .collect();
    Ok(GroupRingMatrix { n, order: o, entries })
}

/// Integer matrix of the chain map induced by `φ` on the cover.
pub fn expansion_of(s: &Surjection, phi: &NielsenAuto) -> Result<IntMatrix> {
    Ok(fox_matrix(s, phi)?.expansion(s.group()))
}

/// `π(φ(x_i)) = g_i` for every `i`.
pub fn is_aut_r(s: &Surjection, phi: &NielsenAuto) -> bool {
    phi.rank() == s.rank() && phi.images().iter().zip(s.images()).all(|(w, &g)| s.eval(w) == g)
}

/// Shortest words for every element, breadth-first over generators then
/// inverses, so ties go to the lexicographically first word.
pub fn section_words(s: &Surjection) -> Vec<Word> {
    let g = s.group();
    let n = s.rank();
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[0] = Some(Word::identity(n));
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let here = words[v].clone().expect("visited");
        for i in 0..n {
            for inv in [false, true] {
                let img = if inv { g.inv(s.images()[i]) } else { s.images()[i] };
                let t = g.mul(v, img);
                if words[t].is_none() {
                    let l = Word::generator(n, i);
                    words[t] = Some(here.multiply(&if inv { l.invert() } else { l }).expect("same rank"));
                    queue.push_back(t);
                }
            }
        }
    }
    words.into_iter().map(|w| w.expect("surjective")).collect()
}

/// The automorphism of `G` induced by `φ`, if `φ` preserves `Ker π`.
pub fn induced_group_map(s: &Surjection, phi: &NielsenAuto) -> Option<Vec<usize>> {
    let g = s.group();
    let map: Vec<usize> = section_words(s)
        .iter()
        .map(|w| s.eval(&phi.apply(w).expect("same rank")))
        .collect();
    let gen_images: Vec<usize> = phi.images().iter().map(|w| s.eval(w)).collect();
    for v in 0..g.order() {
        for (i, &gi) in s.images().iter().enumerate() {
            if map[g.mul(v, gi)] != g.mul(map[v], gen_images[i]) {
                return None;
            }
        }
    }
    let mut seen = vec![false; g.order()];
    for &x in &map {
        if std::mem::replace(&mut seen[x], true) {
            return None;
        }
    }
    Some(map)
}

/// The Fox chain rule `F^{φψ}_{ik} = Σ_j φ_*(F^ψ_{ij}) F^φ_{jk}`, where
/// `phi_map` is the automorphism of `G` induced by `φ`.
pub fn twisted_product(
    g: &FiniteGroup,
    phi_map: &[usize],
    f_phi: &GroupRingMatrix,
    f_psi: &GroupRingMatrix,
) -> GroupRingMatrix {
    let (n, o) = (f_phi.n, f_phi.order);
    let mut entries = vec![vec![vec![0i64; o]; n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            for j in 0..n {
                let mut pushed = vec![0i64; o];
                for (x, &c) in f_psi.entries[i][j].iter().enumerate() {
                    pushed[phi_map[x]] += c;
                }
                for (a, b) in slot.iter_mut().zip(ring_mul(g, &pushed, &f_phi.entries[j][k])) {
                    *a += b;
                }
            }
        }
    }
    GroupRingMatrix { n, order: o, entries }
}

/// Matrix of `φ ∈ Aut_R` on `H_1` in tree coordinates.
pub fn h1_action(s: &Surjection, h1: &H1Basis, phi: &NielsenAuto) -> Result<IntMatrix> {
    if !is_aut_r(s, phi) {
        return Err(Error::NotInAutR);
    }
    let fox = fox_matrix(s, phi)?;
    let d = h1.dim();
    let cols: Vec<Vec<BigInt>> = (0..d)
        .into_par_iter()
        .map(|c| {
            let mut unit = vec![BigInt::zero(); d];
            unit[c] = BigInt::one();
            let z: Vec<i64> = h1
                .chain_of(&unit, s.chain_len())
                .iter()
                .map(|x| i64::try_from(x).expect("basis cycles are small"))
                .collect();
            h1.coords(&fox.apply(s.group(), &z))
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    Ok(IntMatrix::from_columns(d, &cols))
}

/// The projected part `e·H_1` with a fixed basis.
#[derive(Clone, Debug)]
pub struct WSpace {
    pub coords: SubspaceCoords,
}

impl WSpace {
    pub fn new(s: &Surjection, h1: &H1Basis, e: &PsiProjector) -> Self {
        let img = e.h1_image(s, h1);
        let cols = independent_columns(&img);
        WSpace {
            coords: SubspaceCoords::new(img.select_columns(&cols)),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Restriction of an `H_1` matrix to this subspace.
    pub fn restrict(&self, m: &IntMatrix) -> Result<RatMatrix> {
        self.coords
            .restrict(|v| m.mul_vec(v))
            .ok_or_else(|| Error::Internal("action does not preserve the projected subspace".into()))
    }
}

/// Action of `φ ∈ Aut_R` on `e·H_1`.
pub fn project_to_w(s: &Surjection, h1: &H1Basis, w: &WSpace, phi: &NielsenAuto) -> Result<RatMatrix> {
    w.restrict(&h1_action(s, h1, phi)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinPolyEvidence {
    /// Coefficients of the minimal polynomial, constant term first.
    pub min_poly: Vec<String>,
    pub integral: bool,
    /// `(m, multiplicity)` for each cyclotomic factor `Φ_m`.
    pub cyclotomic: Vec<(u64, usize)>,
    /// Coefficients of the part left after removing cyclotomic factors.
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OrderKind {
    Finite { order: u64 },
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub verdict: OrderKind,
    pub evidence: MinPolyEvidence,
}

/// Why a minimal polynomial forces infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// A factor that is not cyclotomic (or non-integral coefficients).
    NonCyclotomic,
    /// Only cyclotomic factors, one of them repeated.
    RepeatedCyclotomic,
}

impl OrderVerdict {
    pub fn witness_kind(&self) -> Option<WitnessKind> {
        if !self.is_infinite() {
            None
        } else if !self.evidence.integral || self.evidence.residual.len() > 1 {
            Some(WitnessKind::NonCyclotomic)
        } else {
            Some(WitnessKind::RepeatedCyclotomic)
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.verdict == OrderKind::Infinite
    }

    pub fn order(&self) -> Option<u64> {
        match self.verdict {
            OrderKind::Finite { order } => Some(order),
            OrderKind::Infinite => None,
        }
    }
}

/// Decides whether an invertible matrix has finite order, exactly.
///
/// Finite order holds iff the minimal polynomial is a product of distinct
/// cyclotomic polynomials. Non-integral coefficients rule that out at once;
/// otherwise each `Φ_m` with `φ(m)` at most the remaining degree is divided
/// out (`φ(m) ≥ √(m/2)` bounds `m ≤ 2·deg²`).
pub fn order_decision(m: &RatMatrix) -> Result<OrderVerdict> {
    if !m.is_square() {
        return Err(Error::Precondition("order of a non-square matrix".into()));
    }
    if m.rows() == 0 {
        return Ok(OrderVerdict {
            verdict: OrderKind::Finite { order: 1 },
            evidence: MinPolyEvidence {
                min_poly: vec!["1".into()],
                integral: true,
                cyclotomic: vec![],
                residual: vec!["1".into()],
            },
        });
    }
    let (scaled, den) = m.to_int_scaled();
    if scaled.determinant().is_zero() {
        let _ = den;
        return Err(Error::NonInvertible);
    }
    let mu = min_poly(m);
    let integral = mu.is_integral();
    let mut residual = mu.clone();
    let mut factors: Vec<(u64, usize)> = Vec::new();
    if integral {
        let deg = mu.degree() as u64;
        for k in 1..=(2 * deg * deg).max(2) {
            if euler_phi(k) > residual.degree() as u64 {
                continue;
            }
            let phi_k = cyclotomic(k);
            let mut mult = 0;
            while residual.degree() > 0 && phi_k.divides(&residual) {
                residual = residual.div_rem(&phi_k).0;
                mult += 1;
            }
            if mult > 0 {
                factors.push((k, mult));
            }
        }
    }
    let evidence = MinPolyEvidence {
        min_poly: mu.to_strings(),
        integral,
        cyclotomic: factors.clone(),
        residual: residual.to_strings(),
    };
    let finite = integral && residual.degree() == 0 && factors.iter().all(|f| f.1 == 1);
    if !finite {
        return Ok(OrderVerdict {
            verdict: OrderKind::Infinite,
            evidence,
        });
    }
    let order = factors.iter().fold(1u64, |acc, f| acc.lcm(&f.0));
    if !m.pow(order).is_identity() {
        return Err(Error::Internal(format!("matrix power {order} is not the identity")));
    }
    Ok(OrderVerdict {
        verdict: OrderKind::Finite { order },
        evidence,
    })
}

/// An automorphism in a search pool, with a readable name.
#[derive(Clone, Debug)]
pub struct PoolElement {
    pub name: String,
    pub auto: NielsenAuto,
}

/// `τ^m` for every left and right transvection `x_i ↦ x_j^{±1} x_i`,
/// `x_i ↦ x_i x_j^{±1}`, conjugated by `ψ` (the identity gives the
/// standard basis).
pub fn transvection_powers(n: usize, m: u32, psi: &NielsenAuto, tag: &str) -> Result<Vec<PoolElement>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for inverse in [false, true] {
                let sign = if inverse { "^-1" } else { "" };
                let left = NielsenAuto::from_moves(
                    n,
                    vec![crate::freegrp::Move::Transvect {
                        target: i,
                        by: j,
                        inverse,
                    }],
                )?;
                let right = NielsenAuto::right_transvection(n, i, j, inverse)?;
                out.push(PoolElement {
                    name: format!("{tag}L({},{}{sign})^{m}", i + 1, j + 1),
                    auto: left.pow(m).conjugated_by(psi),
                });
                out.push(PoolElement {
                    name: format!("{tag}R({},{}{sign})^{m}", i + 1, j + 1),
                    auto: right.pow(m).conjugated_by(psi),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InnQuotientReport {
    /// Free generators of `π^{-1}(Z(G))`.
    pub generators: Vec<String>,
    pub generator_orders: Vec<Option<u64>>,
    pub all_finite: bool,
    pub lambda: u64,
    pub power_verdict: OrderVerdict,
    pub passed: bool,
}

/// Conjugations by elements mapping into the center act on `e·H_1` through
/// a finite group; an infinite-order action stays infinite after raising it
/// to the exponent `λ` of that group.
pub fn inn_quotient_check(s: &Surjection, h1: &H1Basis, w: &WSpace, action: &RatMatrix) -> Result<InnQuotientReport> {
    let g = s.group();
    let center = g.center();
    // Right cosets of the center, labelled by their smallest element.
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] == usize::MAX {
            for &z in &center {
                coset_of[g.mul(z, x)] = reps.len();
            }
            reps.push(x);
        }
    }
    let perms: Vec<Vec<usize>> = s
        .images()
        .iter()
        .map(|&gi| reps.iter().map(|&r| coset_of[g.mul(r, gi)]).collect())
        .collect();
    let preimage = CoreGraph::from_permutations(s.rank(), &perms)?;
    let gens = preimage.basis();
    let mut orders = Vec::new();
    for u in &gens {
        let m = project_to_w(s, h1, w, &NielsenAuto::inner(u))?;
        orders.push(order_decision(&m)?.order());
    }
    let all_finite = orders.iter().all(Option::is_some);
    let lambda = orders.iter().flatten().fold(1u64, |a, b| a.lcm(b));
    let power_verdict = order_decision(&action.pow(lambda))?;
    Ok(InnQuotientReport {
        generators: gens.iter().map(ToString::to_string).collect(),
        generator_orders: orders,
        all_finite,
        lambda,
        passed: all_finite && power_verdict.is_infinite(),
        power_verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FoundElement {
    /// Pool names, leftmost applied last.
    pub factorization: Vec<String>,
    pub moves: String,
    pub kind: WitnessKind,
    /// Exact matrix on `e·H_1` as rational entries, row by row.
    pub matrix: Vec<Vec<String>>,
    pub order: OrderVerdict,
    pub inn_check: InnQuotientReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found,
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub pool: Vec<String>,
    pub pool_orders: Vec<Option<u64>>,
    pub w_dim: usize,
    pub budget: usize,
    /// Products examined, including the identity.
    pub examined: usize,
    /// Distinct matrices reached.
    pub distinct: usize,
    pub max_length: usize,
    /// Whether some pair of pool actions fails to commute.
    pub noncommuting_pair: bool,
    /// The generated matrix group was exhausted before the budget, so it
    /// is finite of order `distinct`.
    pub closure_complete: bool,
    pub found: Option<FoundElement>,
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

/// Breadth-first search over products of pool actions on `e·H_1` for an
/// element of infinite order. Products are deduplicated by matrix.
pub fn search_infinite_order(
    s: &Surjection,
    h1: &H1Basis,
    e: &PsiProjector,
    pool: &[PoolElement],
    budget: usize,
) -> Result<SearchReport> {
    let w = WSpace::new(s, h1, e);
    let mut mats = Vec::with_capacity(pool.len());
    for el in pool {
        if !is_aut_r(s, &el.auto) {
            return Err(Error::Precondition(format!("{} does not act trivially on G", el.name)));
        }
        mats.push(project_to_w(s, h1, &w, &el.auto)?);
    }
    let pool_orders: Vec<Option<u64>> = mats
        .iter()
        .map(|m| order_decision(m).map(|v| v.order()))
        .collect::<Result<_>>()?;
    let mut noncommuting_pair = false;
    for a in 0..mats.len() {
        for b in a + 1..mats.len() {
            if mats[a].mul(&mats[b]) != mats[b].mul(&mats[a]) {
                noncommuting_pair = true;
            }
        }
    }
    let id = RatMatrix::identity(w.dim());
    let mut seen: HashMap<RatMatrix, usize> = HashMap::from([(id.clone(), 0)]);
    // (matrix, pool indices of the factorization)
    let mut nodes: Vec<(RatMatrix, Vec<usize>)> = vec![(id, Vec::new())];
    let mut examined = 1;
    let mut head = 0;
    let mut witness: Option<(RatMatrix, Vec<usize>, OrderVerdict)> = None;
    let mut exhausted_budget = false;
    'bfs: while head < nodes.len() {
        let (cur, word) = nodes[head].clone();
        head += 1;
        for (k, gm) in mats.iter().enumerate() {
            if examined >= budget {
                exhausted_budget = true;
                break 'bfs;
            }
            examined += 1;
            let next = gm.mul(&cur);
            if seen.contains_key(&next) {
                continue;
            }
            let mut f = vec![k];
            f.extend_from_slice(&word);
            let verdict = order_decision(&next)?;
            seen.insert(next.clone(), nodes.len());
            nodes.push((next.clone(), f.clone()));
            if verdict.is_infinite() {
                let non_cyclotomic = verdict.witness_kind() == Some(WitnessKind::NonCyclotomic);
                if non_cyclotomic || witness.is_none() {
                    witness = Some((next, f, verdict));
                }
                if non_cyclotomic {
                    break 'bfs;
                }
            }
        }
    }
    let found = match witness {
        Some((m, f, verdict)) => {
            let auto = f
                .iter()
                .map(|&i| pool[i].auto.clone())
                .reduce(|a, b| a.compose(&b).expect("same rank"))
                .expect("nonempty");
            Some(FoundElement {
                factorization: f.iter().map(|&i| pool[i].name.clone()).collect(),
                moves: auto.to_string(),
                matrix: matrix_strings(&m),
                kind: verdict.witness_kind().expect("infinite"),
                inn_check: inn_quotient_check(s, h1, &w, &m)?,
                order: verdict,
            })
        }
        None => None,
    };
    let max_length = nodes.iter().map(|n| n.1.len()).max().unwrap_or(0);
    Ok(SearchReport {
        outcome: if found.is_some() {
            SearchOutcome::Found
        } else {
            SearchOutcome::NotFound
        },
        pool: pool.iter().map(|p| p.name.clone()).collect(),
        pool_orders,
        w_dim: w.dim(),
        budget,
        examined,
        distinct: nodes.len(),
        max_length,
        noncommuting_pair,
        closure_complete: found.is_none() && !exhausted_budget,
        found,
    })
}

/// Convenience: a rational matrix from integer rows.
pub fn rat_matrix(rows: &[&[i64]]) -> RatMatrix {
    IntMatrix::from_i64_rows(rows).to_rat()
}

/// Companion matrix of a monic integer polynomial (constant term first,
/// leading coefficient omitted).
pub fn companion(coeffs: &[i64]) -> RatMatrix {
    let d = coeffs.len();
    RatMatrix::from_fn(d, d, |r, c| {
        if c == d - 1 {
            BigRational::from_integer(BigInt::from(-coeffs[r]))
        } else if r == c + 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// Companion matrix of `Φ_m`.
pub fn cyclotomic_companion(m: u64) -> RatMatrix {
    let p: RatPoly = cyclotomic(m);
    let coeffs: Vec<i64> = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| i64::try_from(c.to_integer()).expect("small coefficients"))
        .collect();
    companion(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        let u = rat_matrix(&[&[1, 1], &[0, 1]]);
        assert!(order_decision(&u).unwrap().is_infinite());
        let cycle = RatMatrix::from_fn(5, 5, |r, c| {
            if r == (c + 1) % 5 {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        assert_eq!(order_decision(&cycle).unwrap().order(), Some(5));
        let pisot = companion(&[1, -3]);
        let v = order_decision(&pisot).unwrap();
        assert!(v.is_infinite());
        assert!(v.evidence.cyclotomic.is_empty());
        assert_eq!(order_decision(&cyclotomic_companion(12)).unwrap().order(), Some(12));
        assert!(order_decision(&rat_matrix(&[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn identity_fox_matrix() {
        let s = Surjection::q8();
        let f = fox_matrix(&s, &NielsenAuto::identity(2)).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut expect = [0; 8];
                if i == j {
                    expect[0] = 1;
                }
                assert_eq!(f.entry(i, j), &expect[..]);
            }
        }
        assert!(f.expansion(s.group()).is_identity());
    }

    #[test]
    fn inversion_row() {
        let s = Surjection::q8();
        let f = fox_matrix(
            &s,
            &NielsenAuto::elementary(2, crate::freegrp::Move::Invert(0)).unwrap(),
        )
        .unwrap();
        let g1_inv = s.group().inv(s.images()[0]);
        let mut expect = [0; 8];
        expect[g1_inv] = -1;
        assert_eq!(f.entry(0, 0), &expect[..]);
        assert_eq!(f.entry(0, 1), &[0; 8][..]);
    }
}
