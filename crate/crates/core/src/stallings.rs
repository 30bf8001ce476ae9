//! Subgroup graphs of free groups: folding, membership, Hall completion,
//! intersections and Aut-orbits of finite-index subgroups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegrp::{Letter, Move, Word};

/// A directed labelled edge `source --x_gen--> target` (zero-based `gen`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub gen: usize,
    pub target: usize,
}

/// A folded subgroup graph with basepoint `0`. Graphs are always stored in
/// canonical vertex order, so structural equality is subgroup equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreGraph {
    rank: usize,
    out: Vec<Vec<Option<usize>>>,
    inc: Vec<Vec<Option<usize>>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Merges the classes, keeping the smaller representative so the
    /// basepoint always survives.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

impl CoreGraph {
    /// The one-vertex graph of the whole group.
    pub fn rose(rank: usize) -> Self {
        CoreGraph {
            rank,
            out: vec![vec![Some(0)]; rank],
            inc: vec![vec![Some(0)]; rank],
        }
    }

    /// Folds a wedge of loops reading the given words at the basepoint.
    pub fn from_words(rank: usize, gens: &[Word]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut vertices = 1;
        for w in gens {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            let len = w.len();
            let mut cur = 0;
            for (k, &l) in w.letters().iter().enumerate() {
                let next = if k + 1 == len {
                    0
                } else {
                    vertices += 1;
                    vertices - 1
                };
                let g = l.unsigned_abs() as usize - 1;
                edges.push(if l > 0 {
                    Edge {
                        source: cur,
                        gen: g,
                        target: next,
                    }
                } else {
                    Edge {
                        source: next,
                        gen: g,
                        target: cur,
                    }
                });
                cur = next;
            }
        }
        Self::from_edges(rank, vertices, &edges)
    }

    /// Folds an arbitrary labelled graph on `vertex_count` vertices and keeps
    /// the core of the basepoint component. Edges are identified in the
    /// order given.
    pub fn from_edges(rank: usize, vertex_count: usize, edges: &[Edge]) -> Result<Self> {
        for e in edges {
            if e.gen >= rank {
                return Err(Error::IndexOutOfRange {
                    index: e.gen as i64 + 1,
                    rank,
                });
            }
            if e.source >= vertex_count || e.target >= vertex_count {
                return Err(Error::Precondition("edge endpoint out of range".into()));
            }
        }
        let mut uf = UnionFind((0..vertex_count.max(1)).collect());
        loop {
            let mut changed = false;
            let mut out: HashMap<(usize, usize), usize> = HashMap::new();
            let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
            for e in edges {
                let (u, v) = (uf.find(e.source), uf.find(e.target));
                match out.get(&(u, e.gen)) {
                    Some(&w) => changed |= uf.union(w, v),
                    None => {
                        out.insert((u, e.gen), v);
                    }
                }
                let v = uf.find(e.target);
                let u = uf.find(e.source);
                match inc.get(&(v, e.gen)) {
                    Some(&w) => changed |= uf.union(w, u),
                    None => {
                        inc.insert((v, e.gen), u);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut folded: BTreeSet<Edge> = BTreeSet::new();
        for e in edges {
            folded.insert(Edge {
                source: uf.find(e.source),
                gen: e.gen,
                target: uf.find(e.target),
            });
        }
        Ok(Self::canonical(rank, vertex_count, folded.into_iter().collect(), true))
    }

    /// Trims hanging trees (optionally), restricts to the basepoint component
    /// and relabels vertices in breadth-first order.
    fn canonical(rank: usize, vertex_count: usize, mut edges: Vec<Edge>, trim: bool) -> Self {
        if trim {
            loop {
                let mut degree = vec![0usize; vertex_count];
                for e in &edges {
                    degree[e.source] += 1;
                    degree[e.target] += 1;
                }
                let before = edges.len();
                edges.retain(|e| {
                    let hanging = |v: usize| v != 0 && degree[v] == 1;
                    !hanging(e.source) && !hanging(e.target)
                });
                if edges.len() == before {
                    break;
                }
            }
        }
        let mut out = vec![vec![None; vertex_count]; rank];
        let mut inc = vec![vec![None; vertex_count]; rank];
        for e in &edges {
            out[e.gen][e.source] = Some(e.target);
            inc[e.gen][e.target] = Some(e.source);
        }
        Self::relabel(rank, &out, &inc, 0)
    }

    /// Breadth-first relabelling from `root`, visiting `out[g]` then `in[g]`
    /// for each generator in turn.
    fn relabel(rank: usize, out: &[Vec<Option<usize>>], inc: &[Vec<Option<usize>>], root: usize) -> Self {
        Self::relabel_map(rank, out, inc, root).0
    }

    /// As `relabel`, also returning the new label of every old vertex
    /// (`usize::MAX` for vertices outside the root component).
    fn relabel_map(
        rank: usize,
        out: &[Vec<Option<usize>>],
        inc: &[Vec<Option<usize>>],
        root: usize,
    ) -> (Self, Vec<usize>) {
        let n = out.first().map_or(1, |o| o.len());
        let mut label = vec![usize::MAX; n];
        let mut order = vec![root];
        label[root] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for g in 0..rank {
                for w in [out[g][v], inc[g][v]].into_iter().flatten() {
                    if label[w] == usize::MAX {
                        label[w] = order.len();
                        order.push(w);
                    }
                }
            }
        }
        let m = order.len();
        let mut new_out = vec![vec![None; m]; rank];
        let mut new_inc = vec![vec![None; m]; rank];
        for g in 0..rank {
            for &v in &order {
                if let Some(w) = out[g][v] {
                    new_out[g][label[v]] = Some(label[w]);
                    new_inc[g][label[w]] = Some(label[v]);
                }
            }
        }
        (
            CoreGraph {
                rank,
                out: new_out,
                inc: new_inc,
            },
            label,
        )
    }

    /// The covering graph of the right coset action given by `perms`
    /// (`perms[g][v]` is the image of `v` under `x_g`), based at `0`.
    pub fn from_permutations(rank: usize, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: perms.len(),
            });
        }
        let d = perms.first().map_or(1, |p| p.len());
        let mut edges = Vec::new();
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; d];
            if p.len() != d || p.iter().any(|&v| v >= d || std::mem::replace(&mut seen[v], true)) {
                return Err(Error::Precondition(format!("x{} is not a permutation", g + 1)));
            }
            edges.extend(p.iter().enumerate().map(|(v, &w)| Edge {
                source: v,
                gen: g,
                target: w,
            }));
        }
        let g = Self::canonical(rank, d, edges, false);
        if g.vertex_count() != d {
            return Err(Error::Precondition("permutation action is not transitive".into()));
        }
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.out.first().map_or(1, |o| o.len())
    }

    pub fn out(&self, gen: usize, v: usize) -> Option<usize> {
        self.out[gen][v]
    }

    pub fn inc(&self, gen: usize, v: usize) -> Option<usize> {
        self.inc[gen][v]
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut v = Vec::new();
        for g in 0..self.rank {
            for s in 0..self.vertex_count() {
                if let Some(t) = self.out[g][s] {
                    v.push(Edge {
                        source: s,
                        gen: g,
                        target: t,
                    });
                }
            }
        }
        v
    }

    fn step(&self, v: usize, l: Letter) -> Option<usize> {
        let g = l.unsigned_abs() as usize - 1;
        if l > 0 {
            self.out[g][v]
        } else {
            self.inc[g][v]
        }
    }

    /// End of the path reading `w` from `start`, if it is defined.
    pub fn read(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |v, &l| self.step(v, l))
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.rank() == self.rank && self.read(0, w) == Some(0)
    }

    pub fn is_covering(&self) -> bool {
        self.out.iter().all(|o| o.iter().all(Option::is_some))
    }

    /// Index of the subgroup, or `None` when it is infinite.
    pub fn index(&self) -> Option<usize> {
        self.is_covering().then(|| self.vertex_count())
    }

    /// Breadth-first spanning tree: for each vertex, the tree edge leading to
    /// it and whether it was crossed forwards.
    fn bfs_tree(&self) -> Vec<Option<(Edge, bool)>> {
        let n = self.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for g in 0..self.rank {
                if let Some(w) = self.out[g][v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((
                            Edge {
                                source: v,
                                gen: g,
                                target: w,
                            },
                            true,
                        ));
                        queue.push_back(w);
                    }
                }
                if let Some(w) = self.inc[g][v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some((
                            Edge {
                                source: w,
                                gen: g,
                                target: v,
                            },
                            false,
                        ));
                        queue.push_back(w);
                    }
                }
            }
        }
        parent
    }

    /// Free basis read off the breadth-first spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        let tree: BTreeSet<Edge> = self.bfs_tree().into_iter().flatten().map(|(e, _)| e).collect();
        basis_from_tree(self, &tree)
    }

    /// Rank of the subgroup as a free group.
    pub fn subgroup_rank(&self) -> usize {
        self.edges().len() + 1 - self.vertex_count()
    }

    /// Permutations of the cosets, when the graph is a covering graph.
    pub fn coset_action(&self) -> Result<CosetAction> {
        if !self.is_covering() {
            return Err(Error::Precondition("subgroup has infinite index".into()));
        }
        Ok(CosetAction {
            basepoint: 0,
            permutations: self
                .out
                .iter()
                .map(|o| o.iter().map(|v| v.expect("covering")).collect())
                .collect(),
        })
    }

    /// A finite-index subgroup is normal iff the graph looks the same from
    /// every vertex.
    pub fn is_normal(&self) -> bool {
        self.is_covering()
            && (1..self.vertex_count()).all(|v| Self::relabel(self.rank, &self.out, &self.inc, v) == *self)
    }

    /// The image of this subgroup under a single Nielsen move.
    pub fn apply_move(&self, m: Move) -> Result<Self> {
        let images: Vec<Word> = self.basis().iter().map(|w| m.apply(w)).collect();
        Self::from_words(self.rank, &images)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph core {\n  0 [shape=doublecircle];\n");
        for e in self.edges() {
            let label = (b'a' + e.gen as u8) as char;
            let _ = writeln!(s, "  {} -> {} [label=\"{}\"];", e.source, e.target, label);
        }
        s.push_str("}\n");
        s
    }
}

fn tree_words(g: &CoreGraph, tree: &BTreeSet<Edge>) -> Vec<Option<Word>> {
    let n = g.vertex_count();
    let mut words: Vec<Option<Word>> = vec![None; n];
    words[0] = Some(Word::identity(g.rank));
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let here = words[v].clone().expect("visited");
        for e in tree {
            let gen = Word::generator(g.rank, e.gen);
            if e.source == v && words[e.target].is_none() {
                words[e.target] = Some(here.mul(&gen));
                queue.push_back(e.target);
            } else if e.target == v && words[e.source].is_none() {
                words[e.source] = Some(here.mul(&gen.invert()));
                queue.push_back(e.source);
            }
        }
    }
    words
}

fn basis_from_tree(g: &CoreGraph, tree: &BTreeSet<Edge>) -> Vec<Word> {
    let words = tree_words(g, tree);
    g.edges()
        .into_iter()
        .filter(|e| !tree.contains(e))
        .map(|e| basis_element(g, &words, e))
        .collect()
}

fn basis_element(g: &CoreGraph, words: &[Option<Word>], e: Edge) -> Word {
    let to = words[e.source].as_ref().expect("tree spans");
    let back = words[e.target].as_ref().expect("tree spans");
    to.mul(&Word::generator(g.rank, e.gen)).mul(&back.invert())
}

/// Generator permutations of a finite-index subgroup acting on its cosets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetAction {
    pub basepoint: usize,
    /// `permutations[g][v]`: the coset reached from `v` by `x_{g+1}`.
    pub permutations: Vec<Vec<usize>>,
}

/// Evidence that `s` is a free basis element of a finite-index subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitivityCertificate {
    pub word: String,
    pub tree: Vec<Edge>,
    pub distinguished: Edge,
    /// Free basis read off `tree`; `basis[position]` is `s` or `s^-1`.
    pub basis: Vec<String>,
    pub position: usize,
    pub crossings: usize,
}

impl PrimitivityCertificate {
    /// Re-checks the certificate against the graph from scratch.
    pub fn verify(&self, g: &CoreGraph, s: &Word) -> bool {
        let tree: BTreeSet<Edge> = self.tree.iter().copied().collect();
        let edges: BTreeSet<Edge> = g.edges().into_iter().collect();
        if tree.len() + 1 != g.vertex_count() || !tree.is_subset(&edges) || tree.contains(&self.distinguished) {
            return false;
        }
        let words = tree_words(g, &tree);
        if words.iter().any(Option::is_none) {
            return false;
        }
        let basis = basis_from_tree(g, &tree);
        let expected: Vec<String> = basis.iter().map(ToString::to_string).collect();
        let d = basis_element(g, &words, self.distinguished);
        let crossings = count_crossings(g, s, self.distinguished);
        expected == self.basis
            && g.is_covering()
            && basis.len() == (g.rank - 1) * g.vertex_count() + 1
            && (d == *s || d == s.invert())
            && basis.get(self.position) == Some(&d)
            && crossings == Some(1)
            && self.crossings == 1
    }
}

/// How many times the loop of `s` at the basepoint crosses `e`, in either
/// direction; `None` if the loop is not closed in `g`.
pub fn count_crossings(g: &CoreGraph, s: &Word, e: Edge) -> Option<usize> {
    let mut v = 0;
    let mut count = 0;
    for &l in s.letters() {
        let w = g.step(v, l)?;
        let gen = l.unsigned_abs() as usize - 1;
        let crossed = if l > 0 {
            Edge {
                source: v,
                gen,
                target: w,
            }
        } else {
            Edge {
                source: w,
                gen,
                target: v,
            }
        };
        if crossed == e {
            count += 1;
        }
        v = w;
    }
    (v == 0).then_some(count)
}

/// Embeds the loop of `s` into a finite covering graph in which `s` is a
/// member of a free basis.
pub fn hall_completion(s: &Word) -> Result<(CoreGraph, PrimitivityCertificate)> {
    if s.is_empty() {
        return Err(Error::Precondition("Hall completion needs a nontrivial word".into()));
    }
    let rank = s.rank();
    let cyc = CoreGraph::from_words(rank, std::slice::from_ref(s))?;
    // Edges of the loop of s, and how often it crosses each one.
    let mut loop_edges: Vec<Edge> = Vec::new();
    let mut v = 0;
    for &l in s.letters() {
        let w = cyc.step(v, l).expect("s lies in its own graph");
        let gen = l.unsigned_abs() as usize - 1;
        loop_edges.push(if l > 0 {
            Edge {
                source: v,
                gen,
                target: w,
            }
        } else {
            Edge {
                source: w,
                gen,
                target: v,
            }
        });
        v = w;
    }
    let distinguished = *loop_edges
        .iter()
        .find(|e| loop_edges.iter().filter(|f| f == e).count() == 1)
        .ok_or_else(|| Error::Internal("no edge crossed once by a reduced loop".into()))?;

    let d = cyc.vertex_count();
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(rank);
    for g in 0..rank {
        let mut out: Vec<Option<usize>> = cyc.out[g].clone();
        let mut is_target = vec![false; d];
        for t in out.iter().flatten() {
            is_target[*t] = true;
        }
        for v in 0..d {
            if out[v].is_none() && !is_target[v] {
                out[v] = Some(v);
                is_target[v] = true;
            }
        }
        let mut free = (0..d).filter(|&t| !is_target[t]);
        for slot in out.iter_mut().filter(|o| o.is_none()) {
            *slot = free.next();
        }
        perms.push(out.into_iter().map(|o| o.expect("completion is a bijection")).collect());
    }
    let raw_out: Vec<Vec<Option<usize>>> = perms.iter().map(|p| p.iter().map(|&w| Some(w)).collect()).collect();
    let mut raw_inc = vec![vec![None; d]; rank];
    for (g, p) in perms.iter().enumerate() {
        for (v, &w) in p.iter().enumerate() {
            raw_inc[g][w] = Some(v);
        }
    }
    let (t, label) = CoreGraph::relabel_map(rank, &raw_out, &raw_inc, 0);
    let map = |e: &Edge| Edge {
        source: label[e.source],
        gen: e.gen,
        target: label[e.target],
    };
    let distinguished = map(&distinguished);
    let tree: BTreeSet<Edge> = cyc.edges().iter().map(map).filter(|e| *e != distinguished).collect();
    let basis = basis_from_tree(&t, &tree);
    let words = tree_words(&t, &tree);
    let target = basis_element(&t, &words, distinguished);
    let position = basis
        .iter()
        .position(|b| *b == target)
        .ok_or_else(|| Error::Internal("distinguished edge missing from basis".into()))?;
    let crossings = count_crossings(&t, s, distinguished).unwrap_or(0);
    let cert = PrimitivityCertificate {
        word: s.to_string(),
        tree: tree.into_iter().collect(),
        distinguished,
        basis: basis.iter().map(ToString::to_string).collect(),
        position,
        crossings,
    };
    Ok((t, cert))
}

/// Intersection of finite-index subgroups via the product coset action.
pub fn fiber_intersection(gs: &[CoreGraph], cap: usize) -> Result<CoreGraph> {
    let first = gs
        .first()
        .ok_or_else(|| Error::Precondition("empty intersection".into()))?;
    let rank = first.rank;
    for g in gs {
        if g.rank != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: g.rank,
            });
        }
        if !g.is_covering() {
            return Err(Error::Precondition("intersection needs finite-index subgroups".into()));
        }
    }
    let start = vec![0usize; gs.len()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut edges = Vec::new();
    let mut head = 0;
    while head < states.len() {
        for gen in 0..rank {
            let next: Vec<usize> = states[head]
                .iter()
                .zip(gs)
                .map(|(&v, g)| g.out[gen][v].expect("covering"))
                .collect();
            let id = match index.get(&next) {
                Some(&i) => i,
                None => {
                    let i = states.len();
                    if i >= cap {
                        return Err(Error::CapExceeded {
                            what: "intersection index",
                            value: i + 1,
                            cap,
                        });
                    }
                    index.insert(next.clone(), i);
                    states.push(next);
                    i
                }
            };
            edges.push(Edge {
                source: head,
                gen,
                target: id,
            });
        }
        head += 1;
    }
    Ok(CoreGraph::canonical(rank, states.len(), edges, false))
}

/// All images `φ(H)`, `φ ∈ Aut(F_n)`, as closure under elementary moves.
pub fn aut_orbit_closure(g: &CoreGraph, cap: usize) -> Result<Vec<CoreGraph>> {
    if !g.is_covering() {
        return Err(Error::Precondition(
            "orbit closure needs a finite-index subgroup".into(),
        ));
    }
    let moves = Move::all(g.rank);
    let mut seen: BTreeSet<CoreGraph> = BTreeSet::from([g.clone()]);
    let mut frontier = vec![g.clone()];
    while let Some(h) = frontier.pop() {
        for &m in &moves {
            let img = h.apply_move(m)?;
            if !seen.contains(&img) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "orbit size",
                        value: seen.len() + 1,
                        cap,
                    });
                }
                seen.insert(img.clone());
                frontier.push(img);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The characteristic core `⋂ φ(H)` of a finite-index subgroup.
pub fn characteristic_core(g: &CoreGraph, orbit_cap: usize, index_cap: usize) -> Result<CoreGraph> {
    let orbit = aut_orbit_closure(g, orbit_cap)?;
    fiber_intersection(&orbit, index_cap)
}

/// Every subgroup of index `d` in `F_rank`, by enumerating transitive
/// permutation tuples.
pub fn subgroups_of_index(rank: usize, d: usize, cap: usize) -> Result<Vec<CoreGraph>> {
    let perms = all_permutations(d);
    let total = perms.len().checked_pow(rank as u32).unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::CapExceeded {
            what: "permutation tuples",
            value: total,
            cap,
        });
    }
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; rank];
    loop {
        let tuple: Vec<Vec<usize>> = idx.iter().map(|&i| perms[i].clone()).collect();
        if let Ok(g) = CoreGraph::from_permutations(rank, &tuple) {
            out.insert(g);
        }
        let mut k = 0;
        loop {
            if k == rank {
                return Ok(out.into_iter().collect());
            }
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}
