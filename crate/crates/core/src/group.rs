//! Finite permutation groups stored as closed element lists with full
//! multiplication tables.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// Size limits for the exhaustive algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order `closure` will build.
    pub closure: usize,
    /// Largest group order for which the subgroup lattice is enumerated.
    pub subgroups: usize,
    /// Largest group order for the first-principles Tate oracle.
    pub oracle_order: usize,
    /// Largest G-set size for the first-principles Tate oracle.
    pub oracle_points: usize,
    /// Largest permutation degree accepted from group-spec files.
    pub degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            closure: 2000,
            subgroups: 400,
            oracle_order: 60,
            oracle_points: 30,
            degree: 64,
        }
    }
}

/// A finite group given by its full element list.
///
/// Elements are indexed `0..order`; index 0 is the identity and the rest
/// follow in lexicographic order of their image sequences. Group
/// multiplication is composition, `mul(a, b) = a ∘ b`.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Smallest group containing `generators`, with at most `cap` elements.
    pub fn closure(generators: &[Permutation], cap: usize) -> Result<FiniteGroup> {
        let first = generators.first().ok_or(GroupError::EmptyGenerators)?;
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }

        let identity = Permutation::identity(degree);
        let mut found: HashMap<Permutation, ()> = HashMap::new();
        let mut elements = vec![identity.clone()];
        found.insert(identity, ());
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = x.compose_unchecked(g);
                if !found.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::ClosureCapExceeded { cap });
                    }
                    found.insert(y.clone(), ());
                    elements.push(y);
                }
            }
        }
        drop(found);
        elements.sort();

        let n = elements.len();
        let lookup: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let gen_idx: Vec<usize> = generators.iter().map(|g| lookup[g]).collect();

        // Right multiplication by each generator, then fill each row along a
        // spanning tree of the Cayley graph: b = parent(b) ∘ gen(b).
        let k = gen_idx.len();
        let mut right = vec![0u32; n * k];
        for (x, p) in elements.iter().enumerate() {
            for (j, g) in generators.iter().enumerate() {
                right[x * k + j] = lookup[&p.compose_unchecked(g)] as u32;
            }
        }
        let mut tree: Vec<(usize, usize)> = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for j in 0..k {
                let y = right[x * k + j] as usize;
                if !seen[y] {
                    seen[y] = true;
                    tree.push((y, x * k + j));
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(tree.len(), n - 1);
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mult[a * n..(a + 1) * n];
            row[0] = a as u32;
            for &(b, slot) in &tree {
                let parent = slot / k;
                let j = slot % k;
                row[b] = right[row[parent] as usize * k + j];
            }
        }
        let mut inv = vec![0u32; n];
        for (a, p) in elements.iter().enumerate() {
            inv[a] = lookup[&p.inverse()] as u32;
        }

        Ok(FiniteGroup {
            degree,
            elements,
            lookup,
            mult,
            inv,
            generators: gen_idx,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Indices of the generators the group was built from, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x g x⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| self.generators.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Number of elements of each order, as sorted `(order, count)` pairs.
    pub fn order_statistics(&self) -> Vec<(u64, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for g in 0..self.order() {
            *counts.entry(self.element_order(g)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// True when every row and every column of the table is a permutation.
    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        let mut mark = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if mark[c] == a {
                    return false;
                }
                mark[c] = a;
            }
        }
        let mut mark = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if mark[c] == b {
                    return false;
                }
                mark[c] = b;
            }
        }
        true
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("degree", &self.degree)
            .finish()
    }
}
