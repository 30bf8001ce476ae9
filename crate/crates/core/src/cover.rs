//! Chain complex of the covering graph of a finite quotient `π: F_n → G`,
//! first homology over Q and Z, and the projector certificate.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::content_hash;
use crate::error::{Error, Result};
use crate::freegrp::{is_prime, Word};
use crate::group::FiniteGroup;
use crate::linalg::{kernel_basis, rank, smith_normal_form, IntEchelon, IntMatrix};
use crate::stallings::CoreGraph;
use crate::truncalg::CentralCharacter;

/// A 1-chain on the covering graph: entry `i·|G| + v` is the coefficient of
/// the edge `v → v·g_i`.
pub type Chain = Vec<i64>;

/// A surjection from `F_n` onto a finite group, given by generator images.
#[derive(Clone, Debug)]
pub struct Surjection {
    name: String,
    group: FiniteGroup,
    images: Vec<usize>,
}

impl Surjection {
    pub fn new(name: impl Into<String>, group: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.iter().any(|&g| g >= group.order()) {
            return Err(Error::Precondition("generator image outside the group".into()));
        }
        if !group.is_generated_by(&images) {
            return Err(Error::GenerationFailure);
        }
        Ok(Surjection {
            name: name.into(),
            group,
            images,
        })
    }

    /// `F_n → 1`.
    pub fn trivial(n: usize) -> Self {
        Surjection {
            name: "trivial".into(),
            group: FiniteGroup::trivial(),
            images: vec![0; n],
        }
    }

    /// `F_2 → Q8`, `x_1 ↦ i`, `x_2 ↦ j`.
    pub fn q8() -> Self {
        let (g, [i, j]) = FiniteGroup::quaternion();
        Surjection {
            name: "Q8".into(),
            group: g,
            images: vec![i, j],
        }
    }

    /// The quotient by a normal finite-index subgroup given by its graph.
    pub fn from_covering_graph(name: impl Into<String>, g: &CoreGraph) -> Result<Self> {
        if !g.is_normal() {
            return Err(Error::Precondition("subgroup is not normal".into()));
        }
        let act = g.coset_action()?;
        let c = FiniteGroup::from_permutations("deck", &act.permutations, g.vertex_count() + 1)?;
        Surjection::new(name, c.group, c.generators)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `π(w)`.
    pub fn eval(&self, w: &Word) -> usize {
        let g = &self.group;
        w.letters().iter().fold(0, |acc, &l| {
            let i = self.images[l.unsigned_abs() as usize - 1];
            g.mul(acc, if l > 0 { i } else { g.inv(i) })
        })
    }

    pub fn chain_len(&self) -> usize {
        self.rank() * self.order()
    }
}

/// Lift of the path reading `w` from the base vertex: `x_i` after prefix
/// `u` adds `+ē_i` at `π(u)`, `x_i^-1` adds `−ē_i` at `π(u) g_i^-1`.
pub fn lift_chain(s: &Surjection, w: &Word) -> Chain {
    let g = &s.group;
    let order = g.order();
    let mut chain = vec![0i64; s.chain_len()];
    let mut cur = 0;
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            chain[i * order + cur] += 1;
            cur = g.mul(cur, s.images[i]);
        } else {
            cur = g.mul(cur, g.inv(s.images[i]));
            chain[i * order + cur] -= 1;
        }
    }
    chain
}

/// `∂` of a 1-chain, as a 0-chain indexed by group elements.
pub fn boundary_of(s: &Surjection, chain: &[i64]) -> Vec<i64> {
    let g = &s.group;
    let order = g.order();
    let mut out = vec![0i64; order];
    for (idx, &c) in chain.iter().enumerate() {
        if c != 0 {
            let (i, v) = (idx / order, idx % order);
            out[g.mul(v, s.images[i])] += c;
            out[v] -= c;
        }
    }
    out
}

/// Left translation of a chain by `h`: edge `(i, v)` goes to `(i, h v)`.
pub fn translate<T: Clone + Zero>(s: &Surjection, h: usize, chain: &[T]) -> Vec<T> {
    let g = &s.group;
    let order = g.order();
    let mut out = vec![T::zero(); chain.len()];
    for (idx, c) in chain.iter().enumerate() {
        let (i, v) = (idx / order, idx % order);
        out[i * order + g.mul(h, v)] = c.clone();
    }
    out
}

/// Cellular chain complex of the covering graph.
pub struct CoveringComplex {
    /// `|G| × n|G|` boundary matrix over Z.
    pub boundary: IntMatrix,
}

pub fn build_cover(s: &Surjection) -> Result<CoveringComplex> {
    if !s.group.is_generated_by(&s.images) {
        return Err(Error::GenerationFailure);
    }
    let order = s.order();
    let mut b = IntMatrix::zeros(order, s.chain_len());
    for i in 0..s.rank() {
        for v in 0..order {
            let col = i * order + v;
            let t = s.group.mul(v, s.images[i]);
            b[(t, col)] += BigInt::one();
            b[(v, col)] -= BigInt::one();
        }
    }
    Ok(CoveringComplex { boundary: b })
}

/// Rational basis of `ker ∂` by fraction-free elimination.
pub fn h1_basis_rational(c: &CoveringComplex) -> IntMatrix {
    kernel_basis(&c.boundary)
}

/// Integral basis of `H_1` from a breadth-first spanning tree of the
/// covering graph: one fundamental cycle per non-tree edge. The
/// coordinates of a cycle are its coefficients on the non-tree edges.
#[derive(Clone, Debug)]
pub struct H1Basis {
    order: usize,
    non_tree: Vec<usize>,
    position: Vec<Option<usize>>,
    cycles: Vec<Vec<(usize, i64)>>,
}

impl H1Basis {
    pub fn new(s: &Surjection) -> Self {
        let g = &s.group;
        let order = g.order();
        // path[v]: chain of the tree path from the identity to v
        let mut path: Vec<Option<Vec<(usize, i64)>>> = vec![None; order];
        path[0] = Some(Vec::new());
        let mut in_tree = vec![false; s.chain_len()];
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for i in 0..s.rank() {
                let fwd = g.mul(v, s.images[i]);
                if path[fwd].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p.push((i * order + v, 1));
                    in_tree[i * order + v] = true;
                    path[fwd] = Some(p);
                    queue.push_back(fwd);
                }
                let back = g.mul(v, g.inv(s.images[i]));
                if path[back].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p.push((i * order + back, -1));
                    in_tree[i * order + back] = true;
                    path[back] = Some(p);
                    queue.push_back(back);
                }
            }
        }
        let mut non_tree = Vec::new();
        let mut position = vec![None; s.chain_len()];
        let mut cycles = Vec::new();
        for (idx, &t) in in_tree.iter().enumerate() {
            if t {
                continue;
            }
            let (i, v) = (idx / order, idx % order);
            let mut z: Vec<(usize, i64)> = path[v].clone().expect("connected");
            z.push((idx, 1));
            let end = g.mul(v, s.images[i]);
            z.extend(path[end].as_ref().expect("connected").iter().map(|&(e, c)| (e, -c)));
            position[idx] = Some(non_tree.len());
            non_tree.push(idx);
            cycles.push(z);
        }
        H1Basis {
            order,
            non_tree,
            position,
            cycles,
        }
    }

    pub fn dim(&self) -> usize {
        self.non_tree.len()
    }

    /// Chain indices of the non-tree edges, in coordinate order.
    pub fn non_tree_edges(&self) -> &[usize] {
        &self.non_tree
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    /// Coordinates of a cycle.
    pub fn coords<T: Clone>(&self, cycle: &[T]) -> Vec<T> {
        self.non_tree.iter().map(|&e| cycle[e].clone()).collect()
    }

    /// The cycle with the given coordinates.
    pub fn chain_of(&self, coords: &[BigInt], len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (c, z) in coords.iter().zip(&self.cycles) {
            if c.is_zero() {
                continue;
            }
            for &(e, k) in z {
                out[e] += c * k;
            }
        }
        out
    }

    /// The basis as columns of an `n|G| × dim` matrix.
    pub fn matrix(&self, len: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(len, self.dim());
        for (col, z) in self.cycles.iter().enumerate() {
            for &(e, k) in z {
                m[(e, col)] += k;
            }
        }
        m
    }

    /// Coordinates of `h·z` for the cycle with coordinates `v`.
    pub fn translate_coords(&self, s: &Surjection, h: usize, v: &[BigInt]) -> Vec<BigInt> {
        let chain = self.chain_of(v, s.chain_len());
        let moved = translate(s, h, &chain);
        self.non_tree.iter().map(|&e| moved[e].clone()).collect()
    }

    /// Matrix of `h` acting on `H_1` in tree coordinates.
    pub fn action_matrix(&self, s: &Surjection, h: usize) -> IntMatrix {
        let g = &s.group;
        let d = self.dim();
        let mut m = IntMatrix::zeros(d, d);
        for (col, z) in self.cycles.iter().enumerate() {
            for &(e, k) in z {
                let (i, v) = (e / self.order, e % self.order);
                let moved = i * self.order + g.mul(h, v);
                if let Some(row) = self.position[moved] {
                    m[(row, col)] += k;
                }
            }
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub element: String,
    pub trace: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaschutzReport {
    pub group: String,
    pub h1_dim: usize,
    pub rows: Vec<TraceRow>,
    pub passed: bool,
}

/// `trace(g | H_1) = (n−1)|G|[g = 1] + 1` for every `g`.
pub fn gaschutz_trace_check(s: &Surjection) -> GaschutzReport {
    let h1 = H1Basis::new(s);
    let n = s.rank() as i64;
    let order = s.order() as i64;
    let rows: Vec<TraceRow> = (0..s.order())
        .map(|g| {
            let trace = h1.action_matrix(s, g).trace().to_i64().expect("small trace");
            let expected = if g == 0 { (n - 1) * order + 1 } else { 1 };
            TraceRow {
                element: s.group.label(g).to_string(),
                trace,
                expected,
            }
        })
        .collect();
    GaschutzReport {
        group: s.name.clone(),
        h1_dim: h1.dim(),
        passed: rows.iter().all(|r| r.trace == r.expected),
        rows,
    }
}

/// The central idempotent `e = (1/|K|)Σ_K − (1/|C|)Σ_C`, stored as the
/// integral element `e′ = |C|·e`.
#[derive(Clone, Debug)]
pub struct PsiProjector {
    pub central: Vec<usize>,
    pub kernel: Vec<usize>,
    /// `e′` as coefficients on group elements.
    pub scaled: Vec<i64>,
    /// `|C|`, so that `e = e′ / |C|`.
    pub denominator: i64,
}

/// Product in `Z[G]`.
pub fn ring_mul(g: &FiniteGroup, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; g.order()];
    for (x, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (y, &cb) in b.iter().enumerate() {
            if cb != 0 {
                out[g.mul(x, y)] += ca * cb;
            }
        }
    }
    out
}

impl PsiProjector {
    /// `e′ · chain`.
    pub fn apply_scaled<T>(&self, s: &Surjection, chain: &[T]) -> Vec<T>
    where
        T: Clone + Zero + std::ops::AddAssign + std::ops::Mul<i64, Output = T>,
    {
        let mut out = vec![T::zero(); chain.len()];
        for (h, &c) in self.scaled.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, t) in out.iter_mut().zip(translate(s, h, chain)) {
                *o += t * c;
            }
        }
        out
    }

    /// `e² = e`, i.e. `e′² = |C| e′`.
    pub fn is_idempotent(&self, g: &FiniteGroup) -> bool {
        let sq = ring_mul(g, &self.scaled, &self.scaled);
        sq.iter().zip(&self.scaled).all(|(a, b)| *a == b * self.denominator)
    }

    pub fn is_central(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|h| {
            let mut d = vec![0i64; g.order()];
            d[h] = 1;
            ring_mul(g, &d, &self.scaled) == ring_mul(g, &self.scaled, &d)
        })
    }

    /// Tree coordinates of `e′` applied to each `H_1` basis cycle.
    pub fn h1_image(&self, s: &Surjection, h1: &H1Basis) -> IntMatrix {
        let d = h1.dim();
        let cols: Vec<Vec<BigInt>> = (0..d)
            .map(|c| {
                let mut unit = vec![BigInt::zero(); d];
                unit[c] = BigInt::one();
                let z = h1.chain_of(&unit, s.chain_len());
                h1.coords(&self.apply_scaled(s, &z))
            })
            .collect();
        IntMatrix::from_columns(d, &cols)
    }
}

/// Builds and checks the projector for `(C, Ψ)`.
pub fn psi_projector(s: &Surjection, psi: &CentralCharacter) -> Result<PsiProjector> {
    let g = &s.group;
    let central = psi.subgroup();
    if central.is_empty() || !g.is_subgroup(&central) {
        return Err(Error::Precondition("C is not a subgroup".into()));
    }
    if let Some(&c) = central.iter().find(|&&c| !g.is_central(c)) {
        return Err(Error::Precondition(format!(
            "element {} of C is not central",
            g.label(c)
        )));
    }
    for &(a, va) in &psi.values {
        for &(b, vb) in &psi.values {
            if psi.value(g.mul(a, b)) != Some((va + vb) % psi.p) {
                return Err(Error::Precondition("Ψ is not a homomorphism".into()));
            }
        }
    }
    let kernel = psi.kernel();
    if kernel.len() == central.len() {
        return Err(Error::Precondition("Ψ is trivial".into()));
    }
    let ratio = (central.len() / kernel.len()) as i64;
    let mut scaled = vec![0i64; g.order()];
    for &k in &kernel {
        scaled[k] += ratio;
    }
    for &c in &central {
        scaled[c] -= 1;
    }
    let e = PsiProjector {
        central,
        kernel,
        scaled,
        denominator: psi.values.len() as i64,
    };
    if !e.is_idempotent(g) || !e.is_central(g) {
        return Err(Error::Internal("projector is not a central idempotent".into()));
    }
    Ok(e)
}

/// Elements with a power in `C − Ker Ψ`.
pub fn has_detecting_power(g: &FiniteGroup, psi: &CentralCharacter, x: usize) -> bool {
    let mut y = x;
    for _ in 0..g.element_order(x) {
        if psi.value(y).is_some_and(|v| v != 0) {
            return true;
        }
        y = g.mul(y, x);
    }
    false
}

/// For every `g` with a power in `C − Ker Ψ`, checks that `g` has no
/// nonzero fixed vector on `e·H_1`. Returns the offending element if any.
pub fn check_fixed_point_free(s: &Surjection, psi: &CentralCharacter, e: &PsiProjector, h1: &H1Basis) -> Option<usize> {
    let img = e.h1_image(s, h1);
    let cols = crate::linalg::independent_columns(&img);
    let basis = img.select_columns(&cols);
    let k = basis.cols();
    (0..s.order())
        .filter(|&g| has_detecting_power(&s.group, psi, g))
        .find(|&g| {
            let a = h1.action_matrix(s, g);
            let moved = a.mul(&basis).sub(&basis);
            rank(&moved) != k
        })
}

/// Classes `[x^m]`, `m` the order of `π(x)`, in tree coordinates.
#[derive(Clone, Debug)]
pub struct PowerClasses {
    pub words: Vec<Word>,
    pub orders: Vec<usize>,
    pub chains: Vec<Chain>,
    /// One column per word.
    pub coords: IntMatrix,
}

pub fn orbit_power_classes(s: &Surjection, h1: &H1Basis, words: &[Word]) -> PowerClasses {
    let results: Vec<(usize, Chain)> = words
        .par_iter()
        .map(|x| {
            let m = s.group.element_order(s.eval(x));
            (m, lift_chain(s, &x.pow(m as i64)))
        })
        .collect();
    let cols: Vec<Vec<BigInt>> = results
        .iter()
        .map(|(_, c)| h1.coords(c).into_iter().map(BigInt::from).collect())
        .collect();
    PowerClasses {
        words: words.to_vec(),
        orders: results.iter().map(|r| r.0).collect(),
        coords: IntMatrix::from_columns(h1.dim(), &cols),
        chains: results.into_iter().map(|r| r.1).collect(),
    }
}

/// Span of the given vectors together with all their `G`-translates.
pub fn saturated_span(s: &Surjection, h1: &H1Basis, vectors: &IntMatrix) -> IntEchelon {
    let mut ech = IntEchelon::new(h1.dim());
    for c in 0..vectors.cols() {
        if ech.is_full() {
            return ech;
        }
        ech.insert(vectors.column(c));
    }
    let mut frontier: Vec<Vec<BigInt>> = ech.rows().to_vec();
    while let Some(v) = frontier.pop() {
        for &g in s.images() {
            if ech.is_full() {
                return ech;
            }
            let w = h1.translate_coords(s, g, &v);
            if ech.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    ech
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Proper,
    NotProper,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupInfo {
    pub order: usize,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_dims: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitInfo {
    pub mode: String,
    pub radius: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Dims {
    pub h1: usize,
    pub span: usize,
    pub proj_rank: usize,
    pub proj_span_rank: usize,
    /// `dim H_1 − proj_rank`, an upper bound for `span` when the verdict is
    /// proper.
    pub span_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Hashes {
    pub classes: String,
    pub content: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverCertificate {
    pub instance: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub group: GroupInfo,
    pub orbit: OrbitInfo,
    pub dims: Dims,
    /// Words whose image has no power in `C − Ker Ψ`.
    pub excluded: Vec<String>,
    /// Words whose projected class `e·[x^m]` is nonzero.
    pub unprojected: Vec<String>,
    pub verdict: Verdict,
    pub hashes: Hashes,
}

impl CoverCertificate {
    pub fn seal(mut self) -> Self {
        self.hashes.content = String::new();
        self.hashes.content = content_hash(&self);
        self
    }
}

/// Options for [`proper_subspace_certificate`].
#[derive(Clone, Debug)]
pub struct CertificateInput<'a> {
    pub instance: String,
    pub p: Option<u64>,
    pub graded_dims: Option<Vec<u64>>,
    pub orbit: OrbitInfo,
    pub words: &'a [Word],
    /// When set, words failing the power check stay in the span instead of
    /// being excluded.
    pub exact: bool,
}

/// Span of the orbit power classes, its image under the projector, and the
/// resulting verdict.
pub fn proper_subspace_certificate(
    s: &Surjection,
    psi: Option<&CentralCharacter>,
    input: &CertificateInput,
) -> Result<CoverCertificate> {
    let h1 = H1Basis::new(s);
    let projector = psi.map(|c| psi_projector(s, c)).transpose()?;
    let mut kept = Vec::new();
    let mut excluded = Vec::new();
    for w in input.words {
        if w.rank() != s.rank() {
            return Err(Error::RankMismatch {
                left: s.rank(),
                right: w.rank(),
            });
        }
        let ok = match psi {
            Some(c) => has_detecting_power(&s.group, c, s.eval(w)),
            None => true,
        };
        if ok || input.exact {
            kept.push(w.clone());
        } else {
            excluded.push(w.to_string());
        }
    }
    let classes = orbit_power_classes(s, &h1, &kept);
    for (chain, w) in classes.chains.iter().zip(&kept) {
        if boundary_of(s, chain).iter().any(|&x| x != 0) {
            return Err(Error::Internal(format!("lift of a power of {w} is not a cycle")));
        }
    }
    let span = saturated_span(s, &h1, &classes.coords);
    let (proj_rank, proj_span_rank, unprojected) = match &projector {
        Some(e) => {
            let proj_rank = rank(&e.h1_image(s, &h1));
            let unprojected: Vec<String> = classes
                .chains
                .par_iter()
                .zip(&kept)
                .filter(|(c, _)| e.apply_scaled(s, c).iter().any(|&x| x != 0))
                .map(|(_, w)| w.to_string())
                .collect();
            let rows: Vec<Vec<BigInt>> = span
                .rows()
                .iter()
                .map(|v| {
                    let z = h1.chain_of(v, s.chain_len());
                    h1.coords(&e.apply_scaled(s, &z))
                })
                .collect();
            let proj = IntMatrix::from_columns(h1.dim(), &rows);
            (proj_rank, rank(&proj), unprojected)
        }
        None => (0, 0, Vec::new()),
    };
    let verdict = if projector.is_some() && proj_rank > 0 && proj_span_rank == 0 && excluded.is_empty() {
        Verdict::Proper
    } else if span.rank() == h1.dim() {
        Verdict::NotProper
    } else {
        Verdict::Inconclusive
    };
    let cert = CoverCertificate {
        instance: input.instance.clone(),
        n: s.rank(),
        p: input.p,
        group: GroupInfo {
            order: s.order(),
            name: s.name.clone(),
            graded_dims: input.graded_dims.clone(),
        },
        orbit: OrbitInfo {
            count: input.words.len(),
            ..input.orbit.clone()
        },
        dims: Dims {
            h1: h1.dim(),
            span: span.rank(),
            proj_rank,
            proj_span_rank,
            span_bound: h1.dim() - proj_rank,
        },
        excluded,
        unprojected,
        verdict,
        hashes: Hashes {
            classes: content_hash(&classes.coords.to_triplets()),
            content: String::new(),
        },
    };
    Ok(cert.seal())
}

/// Smallest prime `p` such that every column of `classes` stays nonzero
/// modulo `p`, starting from the smallest prime that divides no invariant
/// factor of the class lattice.
pub fn select_prime(classes: &IntMatrix) -> Result<u64> {
    if (0..classes.cols()).any(|c| classes.column(c).iter().all(Zero::is_zero)) {
        return Err(Error::Precondition("a class is zero over Q".into()));
    }
    let snf = smith_normal_form(classes, false);
    let divides_invariant = |p: u64| snf.divisors.iter().any(|d| d.is_multiple_of(&BigInt::from(p)));
    let column_survives = |p: u64, c: usize| {
        let bp = BigInt::from(p);
        classes.column(c).iter().any(|x| !x.is_multiple_of(&bp))
    };
    let mut p = 2;
    loop {
        if is_prime(p) && !divides_invariant(p) && (0..classes.cols()).all(|c| column_survives(p, c)) {
            return Ok(p);
        }
        p += 1;
        if p > 1_000_000 {
            return Err(Error::Internal("no small prime found".into()));
        }
    }
}

/// Maximum absolute entry, for reporting.
pub fn max_abs(m: &IntMatrix) -> BigInt {
    let mut best = BigInt::zero();
    for r in 0..m.rows() {
        for x in m.row(r) {
            if x.abs() > best {
                best = x.abs();
            }
        }
    }
    best
}
