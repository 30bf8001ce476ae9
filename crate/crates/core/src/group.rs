//! Finite groups given by a full multiplication table.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group on the elements `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

/// Result of closing a generating set under multiplication.
pub struct Closure<T> {
    pub group: FiniteGroup,
    pub elements: Vec<T>,
    /// Index of each generator in `elements`.
    pub generators: Vec<usize>,
}

impl FiniteGroup {
    /// Builds the group generated by `gens` inside an ambient group given by
    /// `mul`. Elements are discovered breadth-first by right multiplication,
    /// so element order is deterministic.
    pub fn from_closure<T, F, L>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
        label: L,
        cap: usize,
    ) -> Result<Closure<T>>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        // BFS parent: (parent element, generator) to recover words.
        let mut word: Vec<Vec<usize>> = vec![Vec::new()];
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (gi, g) in gens.iter().enumerate() {
                let prod = mul(&elements[head], g);
                let idx = match index.get(&prod) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= cap {
                            return Err(Error::CapExceeded {
                                what: "group order",
                                value: i + 1,
                                cap,
                            });
                        }
                        index.insert(prod.clone(), i);
                        elements.push(prod);
                        let mut w = word[head].clone();
                        w.push(gi);
                        word.push(w);
                        i
                    }
                };
                row.push(idx);
            }
            right.push(row);
            head += 1;
        }
        let order = elements.len();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = word[b].iter().fold(a, |acc, &g| right[acc][g]);
                table[a * order + b] = c as u32;
            }
        }
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .ok_or_else(|| Error::Internal("closure is not a group".into()))?;
            inverse[a] = b as u32;
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        let labels = elements.iter().map(&label).collect();
        Ok(Closure {
            group: FiniteGroup {
                name: name.into(),
                order,
                table,
                inverse,
                labels,
            },
            elements,
            generators,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            name: "1".into(),
            order: 1,
            table: vec![0],
            inverse: vec![0],
            labels: vec!["1".into()],
        }
    }

    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let table = (0..m * m).map(|ab| ((ab / m + ab % m) % m) as u32).collect();
        let inverse = (0..m).map(|a| ((m - a) % m) as u32).collect();
        FiniteGroup {
            name: format!("Z/{m}"),
            order: m,
            table,
            inverse,
            labels: (0..m).map(|a| a.to_string()).collect(),
        }
    }

    /// The quaternion group, generated by `i` and `j` (indices returned).
    pub fn quaternion() -> (Self, [usize; 2]) {
        // (sign, unit) with unit 0..4 = 1, i, j, k
        type Q = (bool, u8);
        fn mul(a: &Q, b: &Q) -> Q {
            const T: [[(bool, u8); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            let (s, u) = T[a.1 as usize][b.1 as usize];
            (a.0 ^ b.0 ^ s, u)
        }
        let label = |q: &Q| format!("{}{}", if q.0 { "-" } else { "" }, ["1", "i", "j", "k"][q.1 as usize]);
        let c = Self::from_closure("Q8", (false, 0), &[(false, 1), (false, 2)], mul, label, 16).expect("Q8 closes");
        (c.group, [c.generators[0], c.generators[1]])
    }

    /// Permutation group generated by right actions on `0..degree`:
    /// `v · (στ) = (v · σ) · τ`.
    pub fn from_permutations(name: impl Into<String>, perms: &[Vec<usize>], cap: usize) -> Result<Closure<Vec<usize>>> {
        let degree = perms.first().map_or(0, |p| p.len());
        let id: Vec<usize> = (0..degree).collect();
        let mul = |a: &Vec<usize>, b: &Vec<usize>| a.iter().map(|&v| b[v]).collect::<Vec<_>>();
        let label = |p: &Vec<usize>| format!("{p:?}");
        Self::from_closure(name, id, perms, mul, label, cap)
    }

    /// `S_3` generated by a transposition and a 3-cycle.
    pub fn symmetric3() -> (Self, [usize; 2]) {
        let c = Self::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]], 10).expect("S3 closes");
        (c.group, [c.generators[0], c.generators[1]])
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                table[x * order + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let inverse = (0..order)
            .map(|x| (a.inv(x / nb) * nb + b.inv(x % nb)) as u32)
            .collect();
        let labels = (0..order)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        FiniteGroup {
            name: format!("{}x{}", a.name, b.name),
            order,
            table,
            inverse,
            labels,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_central(a)).collect()
    }

    /// Elements reachable from the identity by multiplying with `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0];
        let mut out = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_generated_by(&self, gens: &[usize]) -> bool {
        self.generated_subgroup(gens).len() == self.order
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.order];
        for &a in set {
            mark[a] = true;
        }
        mark[0]
            && set
                .iter()
                .all(|&a| mark[self.inv(a)] && set.iter().all(|&b| mark[self.mul(a, b)]))
    }
}
