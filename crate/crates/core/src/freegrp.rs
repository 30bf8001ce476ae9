//! Free group words, elementary Nielsen automorphisms and orbit enumeration.
//!
//! A letter is a nonzero `i32`: `+k` is the generator `x_k` and `-k` its
//! inverse, with `k` in `1..=rank`. Words are always stored freely reduced.
//! The text form uses `a..z` for `x_1..x_26` and uppercase for inverses, so
//! `"abAB"` is the commutator `x1 x2 x1^-1 x2^-1`; the empty word prints as `1`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = i32;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_{g+1}` (`g` is zero-based).
    pub fn generator(rank: usize, g: usize) -> Self {
        assert!(g < rank);
        Word {
            rank,
            letters: vec![g as Letter + 1],
        }
    }

    /// Freely reduces a raw letter sequence.
    pub fn reduce(letters: &[Letter], rank: usize) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::IndexOutOfRange { index: l as i64, rank });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    pub fn from_exponents(rank: usize, parts: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in parts {
            let l = g as Letter + 1;
            for _ in 0..e.unsigned_abs() {
                push_reduced(&mut letters, if e > 0 { l } else { -l });
            }
        }
        Word { rank, letters }
    }

    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::identity(rank));
        }
        let mut raw = Vec::with_capacity(s.len());
        for c in s.chars() {
            let l = match c {
                'a'..='z' => (c as u8 - b'a') as Letter + 1,
                'A'..='Z' => -((c as u8 - b'A') as Letter + 1),
                _ => return Err(Error::Parse(format!("bad letter {c:?} in word {s:?}"))),
            };
            raw.push(l);
        }
        Word::reduce(&raw, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.mul(other))
    }

    /// Product without the rank check, for internal use where ranks agree.
    pub(crate) fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn invert(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, m: i64) -> Word {
        let base = if m < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..m.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `u w u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Word {
        u.mul(self).mul(&u.invert())
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.invert()).mul(&b.invert())
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&a), Some(&b)) => self.letters.len() == 1 || a != -b,
            _ => true,
        }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| {
                // x1 < x1^-1 < x2 < ...
                let key = |l: &Letter| (l.unsigned_abs(), l < &0);
                self.letters.iter().map(key).cmp(other.letters.iter().map(key))
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &l in &self.letters {
            let i = l.unsigned_abs() as u8 - 1;
            let c = if i < 26 {
                if l > 0 {
                    (b'a' + i) as char
                } else {
                    (b'A' + i) as char
                }
            } else {
                '?'
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exponent-sum vector reduced mod `p`.
pub fn abelianize_mod_p(w: &Word, p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(w.exponent_sums()
        .into_iter()
        .map(|e| e.rem_euclid(p as i64) as u64)
        .collect())
}

pub fn is_p_primitive(w: &Word, p: u64) -> Result<bool> {
    Ok(abelianize_mod_p(w, p)?.iter().any(|&a| a != 0))
}

/// An elementary Nielsen move. Generator indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `x_target -> x_by^{+-1} x_target` (the sign is `-1` when `inverse`).
    Transvect { target: usize, by: usize, inverse: bool },
    /// `x_i -> x_i^-1`.
    Invert(usize),
    /// Exchange `x_i` and `x_j`.
    Swap(usize, usize),
}

impl Move {
    pub fn inverse(self) -> Move {
        match self {
            Move::Transvect { target, by, inverse } => Move::Transvect {
                target,
                by,
                inverse: !inverse,
            },
            m => m,
        }
    }

    fn check(self, rank: usize) -> Result<()> {
        let bad = |i: usize| Error::IndexOutOfRange {
            index: i as i64 + 1,
            rank,
        };
        match self {
            Move::Transvect { target, by, .. } => {
                if target >= rank {
                    return Err(bad(target));
                }
                if by >= rank {
                    return Err(bad(by));
                }
                if target == by {
                    return Err(Error::Precondition("transvection needs distinct indices".into()));
                }
            }
            Move::Invert(i) => {
                if i >= rank {
                    return Err(bad(i));
                }
            }
            Move::Swap(i, j) => {
                if i >= rank {
                    return Err(bad(i));
                }
                if j >= rank {
                    return Err(bad(j));
                }
            }
        }
        Ok(())
    }

    /// Image of a single letter, appended (reduced) to `out`.
    fn image_into(self, l: Letter, out: &mut Vec<Letter>) {
        let g = l.unsigned_abs() as usize - 1;
        let pos = l > 0;
        match self {
            Move::Transvect { target, by, inverse } if g == target => {
                let b = (by as Letter + 1) * if inverse { -1 } else { 1 };
                let t = target as Letter + 1;
                if pos {
                    push_reduced(out, b);
                    push_reduced(out, t);
                } else {
                    push_reduced(out, -t);
                    push_reduced(out, -b);
                }
            }
            Move::Invert(i) if g == i => push_reduced(out, -l),
            Move::Swap(i, j) if g == i || g == j => {
                let other = if g == i { j } else { i } as Letter + 1;
                push_reduced(out, if pos { other } else { -other });
            }
            _ => push_reduced(out, l),
        }
    }

    pub fn apply(self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() + 2);
        for &l in w.letters() {
            self.image_into(l, &mut out);
        }
        Word {
            rank: w.rank,
            letters: out,
        }
    }

    /// All elementary moves on `rank` generators: both transvection signs,
    /// inversions, and swaps with `i < j`.
    pub fn all(rank: usize) -> Vec<Move> {
        let mut v = Vec::new();
        for target in 0..rank {
            for by in 0..rank {
                if target != by {
                    for inverse in [false, true] {
                        v.push(Move::Transvect { target, by, inverse });
                    }
                }
            }
        }
        for i in 0..rank {
            v.push(Move::Invert(i));
        }
        for i in 0..rank {
            for j in i + 1..rank {
                v.push(Move::Swap(i, j));
            }
        }
        v
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Transvect { target, by, inverse } => {
                write!(f, "L({},{}{})", target + 1, by + 1, if inverse { "^-1" } else { "" })
            }
            Move::Invert(i) => write!(f, "I({})", i + 1),
            Move::Swap(i, j) => write!(f, "S({},{})", i + 1, j + 1),
        }
    }
}

/// An automorphism stored as a factorization `m_0 ∘ m_1 ∘ ... ∘ m_k`; the
/// last move is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NielsenAuto {
    rank: usize,
    moves: Vec<Move>,
}

impl NielsenAuto {
    pub fn identity(rank: usize) -> Self {
        NielsenAuto {
            rank,
            moves: Vec::new(),
        }
    }

    pub fn from_moves(rank: usize, moves: Vec<Move>) -> Result<Self> {
        for m in &moves {
            m.check(rank)?;
        }
        Ok(NielsenAuto { rank, moves })
    }

    pub fn elementary(rank: usize, m: Move) -> Result<Self> {
        Self::from_moves(rank, vec![m])
    }

    /// Left transvection `x_i -> x_j x_i` (zero-based indices).
    pub fn left_transvection(rank: usize, i: usize, j: usize) -> Result<Self> {
        Self::elementary(
            rank,
            Move::Transvect {
                target: i,
                by: j,
                inverse: false,
            },
        )
    }

    /// Right transvection `x_i -> x_i x_j^{sign}`, realized as
    /// `I(i) ∘ L(i, j)^{-sign} ∘ I(i)`.
    pub fn right_transvection(rank: usize, i: usize, j: usize, inverse: bool) -> Result<Self> {
        Self::from_moves(
            rank,
            vec![
                Move::Invert(i),
                Move::Transvect {
                    target: i,
                    by: j,
                    inverse: !inverse,
                },
                Move::Invert(i),
            ],
        )
    }

    /// Inner automorphism `w -> u w u^-1`.
    pub fn inner(u: &Word) -> Self {
        let rank = u.rank();
        let mut moves = Vec::new();
        for &l in u.letters() {
            let j = l.unsigned_abs() as usize - 1;
            let inverse = l < 0;
            for i in 0..rank {
                if i == j {
                    continue;
                }
                // x_i -> x_j^e x_i x_j^-e
                moves.push(Move::Transvect {
                    target: i,
                    by: j,
                    inverse,
                });
                moves.push(Move::Invert(i));
                moves.push(Move::Transvect {
                    target: i,
                    by: j,
                    inverse,
                });
                moves.push(Move::Invert(i));
            }
        }
        NielsenAuto { rank, moves }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &Word) -> Word {
        self.moves.iter().rev().fold(w.clone(), |acc, m| m.apply(&acc))
    }

    /// Images of the generators.
    pub fn images(&self) -> Vec<Word> {
        (0..self.rank)
            .map(|g| self.apply_unchecked(&Word::generator(self.rank, g)))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NielsenAuto) -> Result<NielsenAuto> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut moves = self.moves.clone();
        moves.extend_from_slice(&other.moves);
        Ok(NielsenAuto { rank: self.rank, moves })
    }

    pub fn inverse(&self) -> NielsenAuto {
        NielsenAuto {
            rank: self.rank,
            moves: self.moves.iter().rev().map(|m| m.inverse()).collect(),
        }
    }

    pub fn pow(&self, m: u32) -> NielsenAuto {
        let mut moves = Vec::with_capacity(self.moves.len() * m as usize);
        for _ in 0..m {
            moves.extend_from_slice(&self.moves);
        }
        NielsenAuto { rank: self.rank, moves }
    }

    /// `psi ∘ self ∘ psi^-1`: the same automorphism expressed in the basis
    /// `psi(x_1), ..., psi(x_n)`.
    pub fn conjugated_by(&self, psi: &NielsenAuto) -> NielsenAuto {
        let mut moves = psi.moves.clone();
        moves.extend_from_slice(&self.moves);
        moves.extend(psi.inverse().moves);
        NielsenAuto { rank: self.rank, moves }
    }

    pub fn random<R: Rng>(rng: &mut R, rank: usize, len: usize) -> NielsenAuto {
        let all = Move::all(rank);
        let moves = (0..len).map(|_| all[rng.gen_range(0..all.len())]).collect();
        NielsenAuto { rank, moves }
    }
}

impl fmt::Display for NielsenAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moves.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.moves.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitMode {
    Primitives,
    PPrimitives(u64),
    Custom,
}

impl fmt::Display for OrbitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitMode::Primitives => write!(f, "primitives"),
            OrbitMode::PPrimitives(p) => write!(f, "p-primitives({p})"),
            OrbitMode::Custom => write!(f, "custom"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    seeds: Vec<Word>,
    radius: usize,
    mode: OrbitMode,
}

/// Default bound on the size of an enumerated orbit ball.
pub const DEFAULT_ORBIT_CAP: usize = 200_000;
pub const MAX_RADIUS: usize = 16;

impl OrbitSpec {
    pub fn custom(seeds: Vec<Word>, radius: usize) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::Precondition("orbit seeds must be nonempty".into()));
        }
        if seeds.iter().any(|s| s.is_empty()) {
            return Err(Error::Precondition("the identity cannot be an orbit seed".into()));
        }
        Ok(OrbitSpec {
            seeds,
            radius,
            mode: OrbitMode::Custom,
        })
    }

    pub fn primitives(rank: usize, radius: usize) -> Self {
        OrbitSpec {
            seeds: vec![Word::generator(rank, 0)],
            radius,
            mode: OrbitMode::Primitives,
        }
    }

    pub fn p_primitives(p: u64, radius: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(OrbitSpec {
            seeds: Vec::new(),
            radius,
            mode: OrbitMode::PPrimitives(p),
        })
    }

    pub fn seeds(&self) -> &[Word] {
        &self.seeds
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn mode(&self) -> OrbitMode {
        self.mode
    }
}

/// Enumerates the orbit ball described by `spec` in `F_n`, sorted and
/// deduplicated as reduced words.
pub fn enumerate_orbit_ball(spec: &OrbitSpec, n: usize, cap: usize) -> Result<Vec<Word>> {
    if spec.radius > MAX_RADIUS {
        return Err(Error::CapExceeded {
            what: "orbit radius",
            value: spec.radius,
            cap: MAX_RADIUS,
        });
    }
    match spec.mode {
        OrbitMode::PPrimitives(p) => {
            let mut out = Vec::new();
            for w in all_reduced_words(n, spec.radius, cap)? {
                if is_p_primitive(&w, p)? {
                    out.push(w);
                }
            }
            Ok(out)
        }
        OrbitMode::Primitives | OrbitMode::Custom => {
            let seeds: Vec<Word> = if spec.mode == OrbitMode::Primitives {
                vec![Word::generator(n, 0)]
            } else {
                spec.seeds.clone()
            };
            if let Some(s) = seeds.iter().find(|s| s.rank() != n) {
                return Err(Error::RankMismatch {
                    left: n,
                    right: s.rank(),
                });
            }
            let moves = Move::all(n);
            let mut seen: BTreeSet<Word> = seeds.iter().cloned().collect();
            let mut frontier: Vec<Word> = seen.iter().cloned().collect();
            for _ in 0..spec.radius {
                let mut next = Vec::new();
                for w in &frontier {
                    for m in &moves {
                        let img = m.apply(w);
                        if seen.insert(img.clone()) {
                            if seen.len() > cap {
                                return Err(Error::CapExceeded {
                                    what: "orbit ball size",
                                    value: seen.len(),
                                    cap,
                                });
                            }
                            next.push(img);
                        }
                    }
                }
                frontier = next;
            }
            Ok(seen.into_iter().collect())
        }
    }
}

/// Every reduced word of length at most `max_len`, in word order.
pub fn all_reduced_words(n: usize, max_len: usize, cap: usize) -> Result<Vec<Word>> {
    let mut out = vec![Word::identity(n)];
    let mut layer = vec![Word::identity(n)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 1..=n as Letter {
                for l in [g, -g] {
                    if w.letters.last() == Some(&-l) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(Word { rank: n, letters });
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > cap {
            return Err(Error::CapExceeded {
                what: "word enumeration",
                value: out.len(),
                cap,
            });
        }
        layer = next;
    }
    out.sort();
    Ok(out)
}

/// Uniformly random reduced word of exactly `len` letters.
pub fn random_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(1..=rank as Letter);
        let l = if rng.gen_bool(0.5) { g } else { -g };
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    Word { rank, letters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(Word::reduce(&[1, -1], 2).unwrap().is_empty());
        assert_eq!(Word::reduce(&[1, 2, -2, 1], 2).unwrap(), w("aa"));
        assert_eq!(Word::reduce(&[2, -1, 1, 2], 2).unwrap(), w("bb"));
        assert!(matches!(Word::reduce(&[3], 2), Err(Error::IndexOutOfRange { .. })));
        assert!(Word::reduce(&[0], 2).is_err());
    }

    #[test]
    fn multiply_and_invert() {
        assert!(w("a").multiply(&w("A")).unwrap().is_empty());
        assert_eq!(w("ab").invert(), w("BA"));
        assert_eq!(w("ab").multiply(&w("Ba")).unwrap(), w("aa"));
        let other = Word::parse("a", 3).unwrap();
        assert!(matches!(w("a").multiply(&other), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "abAB", "aaBBa", "bA"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!(Word::parse("a1", 2).is_err());
        assert!(Word::parse("c", 2).is_err());
    }

    #[test]
    fn transvection_action() {
        let t = NielsenAuto::left_transvection(2, 0, 1).unwrap();
        assert_eq!(t.apply(&w("a")).unwrap(), w("ba"));
        assert_eq!(t.apply(&w("b")).unwrap(), w("b"));
        let inv = NielsenAuto::elementary(2, Move::Invert(0)).unwrap();
        assert_eq!(inv.apply(&w("ab")).unwrap(), w("Ab"));
    }

    #[test]
    fn right_transvection_matches_derived_identity() {
        let r = NielsenAuto::right_transvection(2, 0, 1, false).unwrap();
        assert_eq!(r.apply(&w("a")).unwrap(), w("ab"));
        assert_eq!(r.apply(&w("b")).unwrap(), w("b"));
        let r = NielsenAuto::right_transvection(2, 0, 1, true).unwrap();
        assert_eq!(r.apply(&w("a")).unwrap(), w("aB"));
    }

    #[test]
    fn inner_automorphism() {
        let u = w("abA");
        let c = NielsenAuto::inner(&u);
        for s in ["a", "b", "aBab"] {
            assert_eq!(c.apply(&w(s)).unwrap(), w(s).conjugate_by(&u));
        }
    }

    #[test]
    fn inverse_factorization() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let phi = NielsenAuto::random(&mut rng, 3, 6);
            let x = random_word(&mut rng, 3, 8);
            let y = phi.apply(&x).unwrap();
            assert_eq!(phi.inverse().apply(&y).unwrap(), x);
        }
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianize_mod_p(&w("aab"), 2).unwrap(), vec![0, 1]);
        assert!(is_p_primitive(&w("aab"), 2).unwrap());
        assert_eq!(abelianize_mod_p(&w("abAB"), 3).unwrap(), vec![0, 0]);
        assert!(!is_p_primitive(&w("abAB"), 3).unwrap());
        assert_eq!(abelianize_mod_p(&w("ab"), 2).unwrap(), vec![1, 1]);
        assert_eq!(abelianize_mod_p(&w("ab"), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primitive_ball_radius_one() {
        let spec = OrbitSpec::primitives(2, 1);
        let ball = enumerate_orbit_ball(&spec, 2, 1000).unwrap();
        // Brute force: apply every elementary move to x1.
        let mut expected: BTreeSet<Word> = Move::all(2).iter().map(|m| m.apply(&w("a"))).collect();
        expected.insert(w("a"));
        assert_eq!(ball, expected.into_iter().collect::<Vec<_>>());
        assert!(ball.contains(&w("ba")));
        assert!(ball.contains(&w("A")));
        assert!(ball.contains(&w("b")));
        for x in &ball {
            for p in [2, 3, 5, 7] {
                assert!(is_p_primitive(x, p).unwrap());
            }
        }
    }

    #[test]
    fn p_primitive_ball_radius_two() {
        let spec = OrbitSpec::p_primitives(2, 2).unwrap();
        let ball = enumerate_orbit_ball(&spec, 2, 1000).unwrap();
        // Brute force over all 17 reduced words of length <= 2.
        let mut expected = Vec::new();
        for len in 0..=2usize {
            for raw in itertools_product(len) {
                if let Ok(x) = Word::reduce(&raw, 2) {
                    if x.len() == len {
                        let s = x.exponent_sums();
                        if s.iter().any(|e| e.rem_euclid(2) == 1) {
                            expected.push(x);
                        }
                    }
                }
            }
        }
        expected.sort();
        expected.dedup();
        assert_eq!(ball, expected);
        assert_eq!(ball.len(), 12);
        assert!(!ball.contains(&w("aa")));
    }

    fn itertools_product(len: usize) -> Vec<Vec<Letter>> {
        let letters = [1, -1, 2, -2];
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    letters.iter().map(move |&l| {
                        let mut v = v.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn custom_radius_zero() {
        let spec = OrbitSpec::custom(vec![w("abAB")], 0).unwrap();
        assert_eq!(enumerate_orbit_ball(&spec, 2, 10).unwrap(), vec![w("abAB")]);
        assert!(OrbitSpec::custom(vec![w("1")], 1).is_err());
        assert!(OrbitSpec::custom(vec![], 1).is_err());
    }

    #[test]
    fn orbit_cap_is_an_error() {
        let spec = OrbitSpec::primitives(2, 4);
        assert!(matches!(
            enumerate_orbit_ball(&spec, 2, 10),
            Err(Error::CapExceeded { .. })
        ));
    }
}
