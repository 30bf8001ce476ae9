//! Integral representations of `F_n` induced from a free-by-finite abelian
//! quotient of `H_1` of a finite cover.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chainrep::{order_decision, section_words, OrderVerdict};
use crate::cover::{boundary_of, lift_chain, translate, Chain, H1Basis, Surjection};
use crate::error::{Error, Result};
use crate::freegrp::Word;
use crate::linalg::{smith_normal_form, IntMatrix, Lattice};

/// Element of `A = Z^r ⊕ Z/d_1 ⊕ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AElement {
    pub free: Vec<BigInt>,
    /// Reduced into `0..d_i`.
    pub torsion: Vec<BigInt>,
}

impl AElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    pub fn has_free_part(&self) -> bool {
        self.free.iter().any(|x| !x.is_zero())
    }
}

/// `H_1 / L` for a sublattice `L`, with the projection from `H_1`
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianQuotient {
    dim: usize,
    free_rows: Vec<Vec<BigInt>>,
    torsion_rows: Vec<Vec<BigInt>>,
    torsion: Vec<BigInt>,
}

impl AbelianQuotient {
    pub fn free_rank(&self) -> usize {
        self.free_rows.len()
    }

    /// Torsion divisors `d_1 | d_2 | ...`, all greater than one.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn h1_dim(&self) -> usize {
        self.dim
    }

    /// Exponent of the torsion subgroup.
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn project(&self, v: &[BigInt]) -> AElement {
        let dot = |row: &[BigInt]| row.iter().zip(v).map(|(a, b)| a * b).sum::<BigInt>();
        AElement {
            free: self.free_rows.iter().map(|r| dot(r)).collect(),
            torsion: self
                .torsion_rows
                .iter()
                .zip(&self.torsion)
                .map(|(r, d)| dot(r).mod_floor(d))
                .collect(),
        }
    }

    pub fn add(&self, a: &AElement, b: &AElement) -> AElement {
        AElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        }
    }

    pub fn zero(&self) -> AElement {
        AElement {
            free: vec![BigInt::zero(); self.free_rank()],
            torsion: vec![BigInt::zero(); self.torsion.len()],
        }
    }
}

/// `Z^dim / L`, where the columns of `span` generate `L`.
pub fn integral_quotient(dim: usize, span: &IntMatrix) -> Result<AbelianQuotient> {
    if span.rows() != dim {
        return Err(Error::Lattice(format!(
            "span vectors have length {}, expected {dim}",
            span.rows()
        )));
    }
    let snf = smith_normal_form(span, false);
    let rank = snf.rank();
    let mut free_rows = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for r in 0..dim {
        let row = snf.left.row(r).to_vec();
        if r >= rank {
            free_rows.push(row);
        } else if !snf.divisors[r].is_one() {
            torsion_rows.push(row);
            torsion.push(snf.divisors[r].clone());
        }
    }
    Ok(AbelianQuotient {
        dim,
        free_rows,
        torsion_rows,
        torsion,
    })
}

/// `H_1` coordinates of a 1-chain, which must be a cycle.
pub fn cycle_coords(s: &Surjection, h1: &H1Basis, chain: &[i64]) -> Result<Vec<BigInt>> {
    if boundary_of(s, chain).iter().any(|&x| x != 0) {
        return Err(Error::Lattice("chain is not a cycle".into()));
    }
    Ok(h1.coords(chain).into_iter().map(BigInt::from).collect())
}

/// The lattice spanned by all `G`-translates of the classes `[x^m]`, `m`
/// the order of `π(x)`.
pub fn orbit_lattice(s: &Surjection, h1: &H1Basis, words: &[Word]) -> Result<Lattice> {
    let g = s.group();
    let chains: Vec<Chain> = words
        .par_iter()
        .map(|w| {
            let m = g.element_order(s.eval(w)) as i64;
            lift_chain(s, &w.pow(m))
        })
        .collect();
    let mut lattice = Lattice::new(h1.dim());
    let mut seen = std::collections::HashSet::new();
    for c in chains {
        for h in 0..g.order() {
            let moved = translate(s, h, &c);
            if seen.insert(moved.clone()) {
                lattice.insert(cycle_coords(s, h1, &moved)?);
            }
        }
    }
    Ok(lattice)
}

/// Faithful integral representation of `A`: one unipotent block of degree
/// `r + 1` for the free part (absent when `r = 0`) and a cyclic
/// permutation block of size `d` for each `Z/d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianEmbedding {
    pub free_rank: usize,
    pub torsion: Vec<usize>,
}

impl AbelianEmbedding {
    pub fn degree(&self) -> usize {
        let free = if self.free_rank > 0 { self.free_rank + 1 } else { 0 };
        (free + self.torsion.iter().sum::<usize>()).max(1)
    }

    pub fn matrix(&self, a: &AElement) -> IntMatrix {
        let d = self.degree();
        let mut m = IntMatrix::identity(d);
        let r = self.free_rank;
        let mut off = 0;
        if r > 0 {
            for (i, x) in a.free.iter().enumerate() {
                m[(i, r)] = x.clone();
            }
            off = r + 1;
        }
        for (&size, t) in self.torsion.iter().zip(&a.torsion) {
            let shift = t.to_usize().expect("reduced") % size;
            for c in 0..size {
                m[(off + c, off + c)] = BigInt::zero();
            }
            for c in 0..size {
                m[(off + (c + shift) % size, off + c)] = BigInt::one();
            }
            off += size;
        }
        m
    }

    /// Images of the standard generators of `A`.
    pub fn generators(&self) -> Vec<IntMatrix> {
        let unit = |free: Option<usize>, tors: Option<usize>| AElement {
            free: (0..self.free_rank)
                .map(|i| BigInt::from((Some(i) == free) as i64))
                .collect(),
            torsion: (0..self.torsion.len())
                .map(|i| BigInt::from((Some(i) == tors) as i64))
                .collect(),
        };
        (0..self.free_rank)
            .map(|i| self.matrix(&unit(Some(i), None)))
            .chain((0..self.torsion.len()).map(|i| self.matrix(&unit(None, Some(i)))))
            .collect()
    }
}

pub fn embed_abelian(a: &AbelianQuotient) -> Result<AbelianEmbedding> {
    let torsion = a
        .torsion()
        .iter()
        .map(|d| d.to_usize().filter(|&d| d <= 1 << 16))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Lattice("torsion divisor too large for a permutation block".into()))?;
    Ok(AbelianEmbedding {
        free_rank: a.free_rank(),
        torsion,
    })
}

/// `ρ(w)` in monomial form: block column `g` goes to block row `π(w)g`
/// with block `a(w, g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub target: Vec<usize>,
    pub blocks: Vec<AElement>,
}

/// The representation of `F_n` induced from `R → A` along a section of
/// `F_n → G`.
#[derive(Clone, Debug)]
pub struct IntegralRep {
    surjection: Surjection,
    h1: H1Basis,
    quotient: AbelianQuotient,
    embedding: AbelianEmbedding,
    section: Vec<Word>,
}

impl IntegralRep {
    pub fn degree(&self) -> usize {
        self.embedding.degree() * self.surjection.order()
    }

    pub fn block_degree(&self) -> usize {
        self.embedding.degree()
    }

    pub fn quotient(&self) -> &AbelianQuotient {
        &self.quotient
    }

    pub fn embedding(&self) -> &AbelianEmbedding {
        &self.embedding
    }

    pub fn section(&self) -> &[Word] {
        &self.section
    }

    pub fn surjection(&self) -> &Surjection {
        &self.surjection
    }

    /// Class in `A` of an element of `R`.
    pub fn class_of(&self, r: &Word) -> Result<AElement> {
        let coords = cycle_coords(&self.surjection, &self.h1, &lift_chain(&self.surjection, r))?;
        Ok(self.quotient.project(&coords))
    }

    /// `a(w, g)`, the class of `s(π(w)g)^{-1} · w · s(g)`.
    pub fn block(&self, w: &Word, g: usize) -> AElement {
        let grp = self.surjection.group();
        let target = grp.mul(self.surjection.eval(w), g);
        let r = self.section[target]
            .invert()
            .multiply(w)
            .and_then(|x| x.multiply(&self.section[g]))
            .expect("same rank");
        self.class_of(&r).expect("section words close up")
    }

    pub fn monomial(&self, w: &Word) -> Monomial {
        let grp = self.surjection.group();
        let pw = self.surjection.eval(w);
        Monomial {
            target: (0..grp.order()).map(|g| grp.mul(pw, g)).collect(),
            blocks: (0..grp.order()).map(|g| self.block(w, g)).collect(),
        }
    }

    pub fn matrix(&self, w: &Word) -> IntMatrix {
        self.dense(&self.monomial(w))
    }

    pub fn dense(&self, m: &Monomial) -> IntMatrix {
        let b = self.block_degree();
        let mut out = IntMatrix::zeros(self.degree(), self.degree());
        for (g, (&t, a)) in m.target.iter().zip(&m.blocks).enumerate() {
            out.set_block(t * b, g * b, &self.embedding.matrix(a));
        }
        out
    }

    /// `ρ(x_1), …, ρ(x_n)`.
    pub fn generators(&self) -> Vec<IntMatrix> {
        let n = self.surjection.rank();
        (0..n).map(|i| self.matrix(&Word::generator(n, i))).collect()
    }

    /// Factor set `c(g, h) = [s(g) s(h) s(gh)^{-1}]`.
    pub fn cocycle(&self, g: usize, h: usize) -> AElement {
        let gh = self.surjection.group().mul(g, h);
        let r = self.section[g]
            .multiply(&self.section[h])
            .and_then(|x| x.multiply(&self.section[gh].invert()))
            .expect("same rank");
        self.class_of(&r).expect("closed loop")
    }

    /// Checks `g·c(h,k) − c(gh,k) + c(g,hk) − c(g,h) = 0` for all triples.
    pub fn check_cocycle(&self) -> bool {
        let grp = self.surjection.group();
        let o = grp.order();
        // Chains of the cocycle loops, so the G-action can be applied
        // before projecting.
        let loops: Vec<Vec<Chain>> = (0..o)
            .map(|g| {
                (0..o)
                    .map(|h| {
                        let gh = grp.mul(g, h);
                        let r = self.section[g]
                            .multiply(&self.section[h])
                            .and_then(|x| x.multiply(&self.section[gh].invert()))
                            .expect("same rank");
                        lift_chain(&self.surjection, &r)
                    })
                    .collect()
            })
            .collect();
        let class = |c: &[i64]| {
            let coords: Vec<BigInt> = self.h1.coords(c).into_iter().map(BigInt::from).collect();
            self.quotient.project(&coords)
        };
        (0..o).into_par_iter().all(|g| {
            (0..o).all(|h| {
                (0..o).all(|k| {
                    let moved = translate(&self.surjection, g, &loops[h][k]);
                    let lhs = self.quotient.add(&class(&moved), &class(&loops[g][grp.mul(h, k)]));
                    let rhs = self
                        .quotient
                        .add(&class(&loops[grp.mul(g, h)][k]), &class(&loops[g][h]));
                    lhs == rhs
                })
            })
        })
    }

    pub fn export(&self) -> RepExport {
        RepExport {
            group: self.surjection.name().to_string(),
            degree: self.degree(),
            block_degree: self.block_degree(),
            free_rank: self.quotient.free_rank(),
            torsion: self.quotient.torsion().iter().map(ToString::to_string).collect(),
            section: self.section.iter().map(ToString::to_string).collect(),
            generators: self
                .generators()
                .iter()
                .map(|m| m.to_i64_rows().expect("entries fit in i64"))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepExport {
    pub group: String,
    pub degree: usize,
    pub block_degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub section: Vec<String>,
    pub generators: Vec<Vec<Vec<i64>>>,
}

/// Builds `ρ` from the quotient of `H_1` by `lattice`. The section is
/// breadth-first shortest with lexicographic tie-break.
pub fn build_induced_rep(s: &Surjection, h1: &H1Basis, quotient: AbelianQuotient) -> Result<IntegralRep> {
    if quotient.h1_dim() != h1.dim() {
        return Err(Error::ParameterMismatch(
            "quotient was built from a different H_1".into(),
        ));
    }
    let section = section_words(s);
    if !section[0].is_empty() {
        return Err(Error::Internal("section of the identity is not empty".into()));
    }
    let embedding = embed_abelian(&quotient)?;
    Ok(IntegralRep {
        surjection: s.clone(),
        h1: h1.clone(),
        quotient,
        embedding,
        section,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InfiniteWitness {
    pub word: String,
    pub verdict: OrderVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepVerdict {
    Verified,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepCertificate {
    pub group: String,
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub torsion_exponent: String,
    pub words_checked: usize,
    /// Number of orbit words by exact order of `ρ(x)`.
    pub order_counts: BTreeMap<u64, usize>,
    pub candidates_tried: usize,
    pub witness: Option<InfiniteWitness>,
    /// Index of the abelian block subgroup `ρ(R)` in the image.
    pub abelian_subgroup_index: usize,
    pub verdict: RepVerdict,
}

/// Candidate words with a chance of infinite order: generator powers
/// `x_i^m`, then one loop through each non-tree edge.
fn witness_candidates(rep: &IntegralRep) -> Vec<Word> {
    let s = &rep.surjection;
    let g = s.group();
    let n = s.rank();
    let mut out: Vec<Word> = (0..n)
        .map(|i| Word::generator(n, i).pow(g.element_order(s.images()[i]) as i64))
        .collect();
    let o = g.order();
    for &e in rep.h1.non_tree_edges() {
        let (i, v) = (e / o, e % o);
        let end = g.mul(v, s.images()[i]);
        let w = rep.section[v]
            .multiply(&Word::generator(n, i))
            .and_then(|x| x.multiply(&rep.section[end].invert()))
            .expect("same rank");
        out.push(w);
    }
    out
}

/// Checks that every orbit word has finite order dividing `m·E`, then looks
/// for a word of `R` with infinite order. Also records the index of the
/// abelian block subgroup `ρ(R)`.
pub fn verify_rep_orders(rep: &IntegralRep, words: &[Word], budget: usize) -> Result<RepCertificate> {
    let s = &rep.surjection;
    let g = s.group();
    let exponent = rep.quotient.torsion_exponent();
    let orders: Vec<Result<u64>> = words
        .par_iter()
        .map(|x| {
            let m = g.element_order(s.eval(x)) as u64;
            let verdict = order_decision(&rep.matrix(x).to_rat())?;
            let order = verdict
                .order()
                .ok_or_else(|| Error::Refuted(format!("ρ({x}) has infinite order")))?;
            if !(BigInt::from(m) * &exponent).is_multiple_of(&BigInt::from(order)) {
                return Err(Error::Refuted(format!(
                    "order {order} of ρ({x}) does not divide {m}·{exponent}"
                )));
            }
            Ok(order)
        })
        .collect();
    let mut order_counts = BTreeMap::new();
    for o in orders {
        *order_counts.entry(o?).or_insert(0) += 1;
    }
    let mut witness = None;
    let mut tried = 0;
    for y in witness_candidates(rep).into_iter().take(budget) {
        tried += 1;
        let mono = rep.monomial(&y);
        if !mono.blocks.iter().any(AElement::has_free_part) {
            continue;
        }
        let verdict = order_decision(&rep.dense(&mono).to_rat())?;
        if verdict.is_infinite() {
            witness = Some(InfiniteWitness {
                word: y.to_string(),
                verdict,
            });
            break;
        }
    }
    Ok(RepCertificate {
        group: s.name().to_string(),
        degree: rep.degree(),
        free_rank: rep.quotient.free_rank(),
        torsion: rep.quotient.torsion().iter().map(ToString::to_string).collect(),
        torsion_exponent: exponent.to_string(),
        words_checked: words.len(),
        order_counts,
        candidates_tried: tried,
        verdict: if witness.is_some() {
            RepVerdict::Verified
        } else {
            RepVerdict::Inconclusive
        },
        witness,
        abelian_subgroup_index: g.order(),
    })
}

/// Exact order of a monomial element, from its permutation cycles and the
/// sums of blocks along each cycle. `None` when infinite.
pub fn monomial_order(rep: &IntegralRep, m: &Monomial) -> Option<u64> {
    let o = m.target.len();
    let mut seen = vec![false; o];
    let mut order = 1u64;
    for start in 0..o {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut sum = rep.quotient.zero();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            sum = rep.quotient.add(&sum, &m.blocks[v]);
            v = m.target[v];
            len += 1;
        }
        if sum.has_free_part() {
            return None;
        }
        let t = sum
            .torsion
            .iter()
            .zip(rep.quotient.torsion())
            .fold(BigInt::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d))));
        order = order.lcm(&(len * t.to_u64()?));
    }
    Some(order)
}
