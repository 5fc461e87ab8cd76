//! Subgroups, the subgroup lattice, quotients and group actions.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// A subgroup of some parent [`FiniteGroup`], as a set of element indices.
///
/// Equality, hashing and ordering only look at the member set; ordering is
/// `(order, sorted members)`.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: FixedBitSet,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(0);
        Subgroup {
            members: vec![0],
            mask,
            generators: Vec::new(),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert_range(..);
        Subgroup {
            members: (0..g.order()).collect(),
            mask,
            generators: g.generators().iter().copied().filter(|&x| x != 0).collect(),
        }
    }

    /// Subgroup generated by the given elements.
    pub fn generated(g: &FiniteGroup, elements: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = Vec::new();
        for &x in elements {
            if x != 0 && !gens.contains(&x) {
                gens.push(x);
            }
        }
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(0);
        let mut members = vec![0];
        close_under(g, &gens, &mut mask, &mut members);
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators: gens,
        }
    }

    /// Validates that `members` is a subgroup and picks a small generating set.
    pub fn from_members(g: &FiniteGroup, members: &[usize]) -> Result<Subgroup> {
        let mut target = FixedBitSet::with_capacity(g.order());
        for &x in members {
            if x >= g.order() {
                return Err(GroupError::NotSubgroup);
            }
            target.insert(x);
        }
        if !target.contains(0) {
            return Err(GroupError::NotSubgroup);
        }
        let mut current = Subgroup::trivial(g);
        for x in target.ones() {
            if current.contains(x) {
                continue;
            }
            current = current.join(g, x);
            if !current.mask.is_subset(&target) {
                return Err(GroupError::NotSubgroup);
            }
        }
        if current.order() != target.count_ones(..) {
            return Err(GroupError::NotSubgroup);
        }
        Ok(current)
    }

    /// `⟨self, x⟩`.
    pub fn join(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(x);
        let mut mask = self.mask.clone();
        let mut members = self.members.clone();
        close_under(g, &gens, &mut mask, &mut members);
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            generators: gens,
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.mask.intersection_count(&other.mask)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self.mask.intersection(&other.mask).collect();
        Subgroup::from_members(g, &members).expect("intersection of subgroups is a subgroup")
    }

    /// `x H x⁻¹`.
    pub fn conjugate_by(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&h| g.conjugate(h, x)).collect();
        members.sort_unstable();
        let mut mask = FixedBitSet::with_capacity(g.order());
        for &m in &members {
            mask.insert(m);
        }
        Subgroup {
            members,
            mask,
            generators: self.generators.iter().map(|&h| g.conjugate(h, x)).collect(),
        }
    }

    /// True when `|H|` is a power of `p` (the trivial group counts).
    pub fn is_p_subgroup(&self, p: u64) -> bool {
        arith::is_power_of(p, self.order() as u64)
    }
}

fn close_under(g: &FiniteGroup, gens: &[usize], mask: &mut FixedBitSet, members: &mut Vec<usize>) {
    let mut head = 0;
    // Every current member must be multiplied by the (possibly new) generators.
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !mask.contains(y) {
                mask.insert(y);
                members.push(y);
            }
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, {:?})", self.order(), self.members)
    }
}

impl serde::Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(s)
    }
}

/// Every subgroup of a group, with conjugacy classes.
pub struct SubgroupLattice<'g> {
    group: &'g FiniteGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<FixedBitSet, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl<'g> SubgroupLattice<'g> {
    /// Enumerates all subgroups: cyclic subgroups first, then joins of known
    /// subgroups with cyclic ones until nothing new appears.
    pub fn new(group: &'g FiniteGroup, cap: usize) -> Result<Self> {
        let n = group.order();
        if n > cap {
            return Err(GroupError::SubgroupCapExceeded { order: n, cap });
        }
        let mut found: HashMap<FixedBitSet, Subgroup> = HashMap::new();
        let mut cyclic_gens: Vec<usize> = Vec::new();
        for x in 0..n {
            let c = Subgroup::generated(group, &[x]);
            if !found.contains_key(&c.mask) {
                cyclic_gens.push(x);
                found.insert(c.mask.clone(), c);
            }
        }
        let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
        frontier.sort();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for &x in &cyclic_gens {
                    if h.contains(x) {
                        continue;
                    }
                    let k = h.join(group, x);
                    if !found.contains_key(&k.mask) {
                        found.insert(k.mask.clone(), k.clone());
                        next.push(k);
                    }
                }
            }
            next.sort();
            frontier = next;
        }

        let mut subgroups: Vec<Subgroup> = found.into_values().collect();
        subgroups.sort();
        let index: HashMap<FixedBitSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.mask.clone(), i))
            .collect();

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for start in 0..subgroups.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            class_of[start] = cid;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &s in group.generators() {
                    let conj = subgroups[i].conjugate_by(group, s);
                    let j = index[&conj.mask];
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }

        Ok(SubgroupLattice {
            group,
            subgroups,
            index,
            class_of,
            classes,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn id_of(&self, h: &Subgroup) -> usize {
        self.index[&h.mask]
    }

    /// Lattice id of the subgroup with exactly these members, if it is one.
    pub fn id_of_members(&self, members: impl IntoIterator<Item = usize>) -> Option<usize> {
        let mut mask = FixedBitSet::with_capacity(self.group.order());
        for m in members {
            mask.insert(m);
        }
        self.index.get(&mask).copied()
    }

    pub fn class_of(&self, id: usize) -> usize {
        self.class_of[id]
    }

    /// Conjugacy classes as sorted lists of lattice ids, ordered by their
    /// smallest member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// One subgroup per conjugacy class: the smallest in `(order, members)`.
    pub fn class_representatives(&self) -> impl Iterator<Item = &Subgroup> {
        self.classes.iter().map(|c| &self.subgroups[c[0]])
    }

    /// Class representatives of the `p`-subgroups, ascending by order.
    pub fn p_subgroup_classes(&self, p: u64) -> Vec<&Subgroup> {
        self.class_representatives()
            .filter(|h| h.is_p_subgroup(p))
            .collect()
    }

    pub fn are_conjugate_ids(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<Subgroup>> {
        if !arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let target = sylow_order(self.group.order(), p);
        Ok(self
            .subgroups
            .iter()
            .filter(|h| h.order() == target)
            .cloned()
            .collect())
    }

    pub fn normal_subgroups(&self) -> Vec<&Subgroup> {
        self.classes
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| &self.subgroups[c[0]])
            .collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<&Subgroup> {
        let n = self.group.order();
        let proper: Vec<&Subgroup> = self.subgroups.iter().filter(|h| h.order() < n).collect();
        proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.order() > h.order() && h.is_subgroup_of(k))
            })
            .copied()
            .collect()
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini(&self) -> Subgroup {
        let mut mask = Subgroup::whole(self.group).mask;
        for m in self.maximal_subgroups() {
            mask.intersect_with(&m.mask);
        }
        self.subgroups[self.index[&mask]].clone()
    }

    /// Subgroups `T` with `T ∩ N = 1` and `|T|·|N| = |G|`.
    pub fn complements(&self, normal: &Subgroup) -> Result<Vec<Subgroup>> {
        if !is_normal(self.group, normal) {
            return Err(GroupError::NotNormal);
        }
        let n = self.group.order();
        Ok(self
            .subgroups
            .iter()
            .filter(|t| t.order() * normal.order() == n && t.intersection_order(normal) == 1)
            .cloned()
            .collect())
    }
}

/// `p^(ord_p n)`.
pub fn sylow_order(n: usize, p: u64) -> usize {
    p.pow(arith::valuation(p, n as u64)) as usize
}

/// All subgroups of `g`, sorted by `(order, members)`.
pub fn all_subgroups(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    Ok(SubgroupLattice::new(g, cap)?.subgroups)
}

pub fn sylow_subgroups(g: &FiniteGroup, p: u64, cap: usize) -> Result<Vec<Subgroup>> {
    if !arith::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    SubgroupLattice::new(g, cap)?.sylow_subgroups(p)
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| h.generators().iter().all(|&s| h.contains(g.conjugate(s, x))))
        .collect();
    Subgroup::from_members(g, &members).expect("normalizer is a subgroup")
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.generators()
        .iter()
        .all(|&x| h.generators().iter().all(|&s| h.contains(g.conjugate(s, x))))
}

/// Some `x` with `x H x⁻¹ = K`, by exhaustive search.
pub fn are_conjugate(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    if h.order() != k.order() {
        return None;
    }
    (0..g.order()).find(|&x| h.generators().iter().all(|&s| k.contains(g.conjugate(s, x))))
}

pub fn generated_subgroup(g: &FiniteGroup, parts: &[&Subgroup]) -> Subgroup {
    let gens: Vec<usize> = parts.iter().flat_map(|h| h.generators().iter().copied()).collect();
    Subgroup::generated(g, &gens)
}

/// `[H, K] = ⟨h k h⁻¹ k⁻¹ : h ∈ H, k ∈ K⟩`.
pub fn commutator_subgroup_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = FixedBitSet::with_capacity(g.order());
    for &a in h.members() {
        for &b in k.members() {
            let c = g.commutator(a, b);
            if !seen.contains(c) {
                seen.insert(c);
                comms.push(c);
            }
        }
    }
    Subgroup::generated(g, &comms)
}

pub fn frattini(g: &FiniteGroup, cap: usize) -> Result<Subgroup> {
    Ok(SubgroupLattice::new(g, cap)?.frattini())
}

pub fn complements(g: &FiniteGroup, normal: &Subgroup, cap: usize) -> Result<Vec<Subgroup>> {
    SubgroupLattice::new(g, cap)?.complements(normal)
}

/// Assigns each element its left coset `xK`; returns `(coset id per element,
/// smallest element of each coset)`. Coset 0 is `K` itself.
pub fn left_cosets(g: &FiniteGroup, k: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in k.members() {
            coset_of[g.mul(x, m)] = id;
        }
    }
    (coset_of, reps)
}

/// `G/N` realized as a permutation group on the cosets of `N`.
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub kernel: Subgroup,
    /// `cosets[q]` lists the base elements projecting to quotient element `q`.
    pub cosets: Vec<Vec<usize>>,
    /// Base element index to quotient element index.
    pub projection: Vec<usize>,
}

impl QuotientGroup {
    /// A representative base element of quotient element `q`.
    pub fn lift(&self, q: usize) -> usize {
        self.cosets[q][0]
    }
}

pub fn quotient(g: &FiniteGroup, normal: &Subgroup) -> Result<QuotientGroup> {
    if !is_normal(g, normal) {
        return Err(GroupError::NotNormal);
    }
    let (coset_of, reps) = left_cosets(g, normal);
    let m = reps.len();
    let perm_of = |x: usize| -> Permutation {
        let images: Vec<u32> = reps.iter().map(|&r| coset_of[g.mul(x, r)] as u32).collect();
        Permutation::from_images(images).expect("left translation permutes cosets")
    };
    let gens: Vec<Permutation> = if g.generators().is_empty() {
        vec![Permutation::identity(m)]
    } else {
        g.generators().iter().map(|&s| perm_of(s)).collect()
    };
    let group = FiniteGroup::closure(&gens, usize::MAX)?;
    let mut projection = vec![0; g.order()];
    let mut cosets = vec![Vec::new(); group.order()];
    for (&r, c) in reps.iter().zip(0..) {
        debug_assert_eq!(coset_of[r], c);
        let q = group.index_of(&perm_of(r)).expect("image lies in quotient");
        for &n in normal.members() {
            projection[g.mul(r, n)] = q;
        }
    }
    for x in 0..g.order() {
        cosets[projection[x]].push(x);
    }
    Ok(QuotientGroup {
        group,
        kernel: normal.clone(),
        cosets,
        projection,
    })
}

/// A subgroup rebuilt as a standalone group, with the identification of
/// its elements inside the parent.
pub struct EmbeddedGroup {
    pub group: FiniteGroup,
    pub to_parent: Vec<usize>,
    from_parent: HashMap<usize, usize>,
}

impl EmbeddedGroup {
    pub fn new(parent: &FiniteGroup, h: &Subgroup) -> Result<EmbeddedGroup> {
        let gens: Vec<Permutation> = if h.generators().is_empty() {
            vec![Permutation::identity(parent.degree())]
        } else {
            h.generators().iter().map(|&s| parent.element(s).clone()).collect()
        };
        let group = FiniteGroup::closure(&gens, usize::MAX)?;
        let to_parent: Vec<usize> = group
            .elements()
            .iter()
            .map(|p| parent.index_of(p).expect("subgroup element lies in parent"))
            .collect();
        let from_parent = to_parent.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        Ok(EmbeddedGroup {
            group,
            to_parent,
            from_parent,
        })
    }

    pub fn from_parent(&self, x: usize) -> Option<usize> {
        self.from_parent.get(&x).copied()
    }

    /// Image in the parent of a subgroup of the embedded group.
    pub fn subgroup_to_parent(&self, parent: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|&x| self.to_parent[x]).collect();
        Subgroup::generated(parent, &gens)
    }

    /// The subgroup of the embedded group corresponding to `h ≤ parent`,
    /// which must lie inside the embedded subgroup.
    pub fn subgroup_from_parent(&self, h: &Subgroup) -> Option<Subgroup> {
        let gens: Option<Vec<usize>> =
            h.generators().iter().map(|&x| self.from_parent(x)).collect();
        Some(Subgroup::generated(&self.group, &gens?))
    }
}

/// A left action of a group on `0..points`, stored as a table.
#[derive(Clone)]
pub struct GroupAction {
    points: usize,
    table: Vec<u32>,
}

impl GroupAction {
    /// Builds an action from `act(g, x)` and checks the action axioms on
    /// every element against every generator.
    pub fn from_fn(
        g: &FiniteGroup,
        points: usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<GroupAction> {
        let mut table = vec![0u32; g.order() * points];
        for e in 0..g.order() {
            let mut seen = FixedBitSet::with_capacity(points);
            for x in 0..points {
                let y = act(e, x);
                if y >= points || seen.contains(y) {
                    return Err(GroupError::InvalidAction(format!(
                        "element {e} does not permute the points"
                    )));
                }
                seen.insert(y);
                table[e * points + x] = y as u32;
            }
        }
        let action = GroupAction { points, table };
        for x in 0..points {
            if action.act(0, x) != x {
                return Err(GroupError::InvalidAction("identity moves a point".into()));
            }
        }
        for e in 0..g.order() {
            for &s in g.generators() {
                let es = g.mul(e, s);
                for x in 0..points {
                    if action.act(es, x) != action.act(e, action.act(s, x)) {
                        return Err(GroupError::InvalidAction(format!(
                            "act({es}, {x}) differs from act({e}, act({s}, {x}))"
                        )));
                    }
                }
            }
        }
        Ok(action)
    }

    /// The defining action on `0..degree`.
    pub fn natural(g: &FiniteGroup) -> GroupAction {
        let points = g.degree();
        let mut table = Vec::with_capacity(g.order() * points);
        for p in g.elements() {
            table.extend_from_slice(p.images());
        }
        GroupAction { points, table }
    }

    /// Left translation on the left cosets `G/K`; point 0 is the coset `K`.
    pub fn on_left_cosets(g: &FiniteGroup, k: &Subgroup) -> GroupAction {
        let (coset_of, reps) = left_cosets(g, k);
        let points = reps.len();
        let mut table = Vec::with_capacity(g.order() * points);
        for x in 0..g.order() {
            table.extend(reps.iter().map(|&r| coset_of[g.mul(x, r)] as u32));
        }
        GroupAction { points, table }
    }

    /// Disjoint union; the points of `parts[i]` follow those of `parts[i-1]`.
    pub fn disjoint_union(g: &FiniteGroup, parts: &[GroupAction]) -> GroupAction {
        let points: usize = parts.iter().map(|a| a.points).sum();
        let mut table = Vec::with_capacity(g.order() * points);
        for e in 0..g.order() {
            let mut offset = 0;
            for a in parts {
                table.extend((0..a.points).map(|x| (a.act(e, x) + offset) as u32));
                offset += a.points;
            }
        }
        GroupAction { points, table }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn act(&self, element: usize, x: usize) -> usize {
        self.table[element * self.points + x] as usize
    }

    /// Orbits under the subgroup `h`, each sorted, ordered by smallest point.
    pub fn orbits_under(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points];
        let mut orbits = Vec::new();
        for start in 0..self.points {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &s in h.generators() {
                    let y = self.act(s, x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Number of elements of `h` fixing `x`.
    pub fn stabilizer_order_in(&self, h: &Subgroup, x: usize) -> usize {
        h.members().iter().filter(|&&e| self.act(e, x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::closure(&[cyc(3, &[&[0, 1, 2]]), cyc(3, &[&[0, 1]])], 100).unwrap()
    }

    fn a5() -> FiniteGroup {
        FiniteGroup::closure(&[cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1, 2]])], 100).unwrap()
    }

    fn c4() -> FiniteGroup {
        FiniteGroup::closure(&[cyc(4, &[&[0, 1, 2, 3]])], 100).unwrap()
    }

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().map(|s| s.order()).collect()
    }

    #[test]
    fn s3_lattice() {
        let g = s3();
        let subs = all_subgroups(&g, 400).unwrap();
        assert_eq!(orders(&subs), vec![1, 2, 2, 2, 3, 6]);
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        assert_eq!(lat.classes().len(), 4);
        assert_eq!(lat.normal_subgroups().len(), 3);
        let sylow2 = lat.sylow_subgroups(2).unwrap();
        assert_eq!(sylow2.len(), 3);
        assert_eq!(lat.sylow_subgroups(3).unwrap().len(), 1);
        assert_eq!(lat.sylow_subgroups(4), Err(GroupError::NotPrime(4)));
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let g = FiniteGroup::closure(&[Permutation::identity(1)], 10).unwrap();
        assert_eq!(all_subgroups(&g, 400).unwrap().len(), 1);
    }

    #[test]
    fn a5_regression_counts() {
        let g = a5();
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        assert_eq!(lat.len(), 59);
        assert_eq!(lat.sylow_subgroups(5).unwrap().len(), 6);
        assert_eq!(lat.sylow_subgroups(2).unwrap().len(), 5);
        assert_eq!(lat.normal_subgroups().len(), 2);
        let s5 = &lat.sylow_subgroups(5).unwrap()[0];
        assert_eq!(normalizer(&g, s5).order(), 10);
    }

    #[test]
    fn cap_is_enforced() {
        let g = a5();
        assert_eq!(
            all_subgroups(&g, 50).unwrap_err(),
            GroupError::SubgroupCapExceeded { order: 60, cap: 50 }
        );
    }

    #[test]
    fn normality_and_conjugacy_in_s3() {
        let g = s3();
        let subs = all_subgroups(&g, 400).unwrap();
        let triv = &subs[0];
        let (t1, t2) = (&subs[1], &subs[2]);
        let c3 = &subs[4];
        assert!(is_normal(&g, triv));
        assert!(is_normal(&g, c3));
        assert!(!is_normal(&g, t1));
        assert_eq!(normalizer(&g, t1), *t1);
        assert_eq!(normalizer(&g, &subs[5]), subs[5]);
        assert_eq!(are_conjugate(&g, t1, t1), Some(0));
        let x = are_conjugate(&g, t1, t2).unwrap();
        assert_eq!(g.element_order(x), 3);
        assert_eq!(t1.conjugate_by(&g, x), *t2);
        assert_eq!(are_conjugate(&g, t1, c3), None);
    }

    #[test]
    fn quotients() {
        let g = s3();
        let subs = all_subgroups(&g, 400).unwrap();
        let q = quotient(&g, &subs[4]).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(quotient(&g, &subs[1]).is_err());
        let q1 = quotient(&g, &subs[0]).unwrap();
        assert_eq!(q1.group.order(), 6);
        assert_eq!(q1.group.order_statistics(), g.order_statistics());
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(
                    q.projection[g.mul(a, b)],
                    q.group.mul(q.projection[a], q.projection[b])
                );
            }
        }
    }

    #[test]
    fn complements_and_generation() {
        let g = s3();
        let subs = all_subgroups(&g, 400).unwrap();
        let comps = complements(&g, &subs[4], 400).unwrap();
        assert_eq!(comps, subs[1..4].to_vec());
        assert_eq!(complements(&g, &subs[5], 400).unwrap(), vec![subs[0].clone()]);
        assert_eq!(generated_subgroup(&g, &[&subs[1], &subs[4]]), subs[5]);
        assert_eq!(generated_subgroup(&g, &[&subs[2]]), subs[2]);
        assert_eq!(generated_subgroup(&g, &[]), subs[0]);
        assert_eq!(commutator_subgroup_pair(&g, &subs[5], &subs[5]), subs[4]);
        assert_eq!(commutator_subgroup_pair(&g, &subs[5], &subs[0]), subs[0]);

        let c4 = c4();
        let subs = all_subgroups(&c4, 400).unwrap();
        assert!(complements(&c4, &subs[1], 400).unwrap().is_empty());
    }

    #[test]
    fn frattini_examples() {
        let c4 = c4();
        assert_eq!(frattini(&c4, 400).unwrap().order(), 2);
        let v4 = FiniteGroup::closure(&[cyc(4, &[&[0, 1]]), cyc(4, &[&[2, 3]])], 100).unwrap();
        assert!(frattini(&v4, 400).unwrap().is_trivial());
    }

    #[test]
    fn from_members_validates() {
        let g = s3();
        assert_eq!(Subgroup::from_members(&g, &[0, 1, 2, 3]).unwrap_err(), GroupError::NotSubgroup);
        assert_eq!(Subgroup::from_members(&g, &[1]).unwrap_err(), GroupError::NotSubgroup);
        let whole = Subgroup::from_members(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(whole, Subgroup::whole(&g));
    }

    #[test]
    fn coset_action() {
        let g = s3();
        let subs = all_subgroups(&g, 400).unwrap();
        let act = GroupAction::on_left_cosets(&g, &subs[1]);
        assert_eq!(act.points(), 3);
        assert_eq!(act.stabilizer_order_in(&Subgroup::whole(&g), 0), 2);
        let reg = GroupAction::on_left_cosets(&g, &subs[0]);
        assert_eq!(reg.points(), 6);
        let checked = GroupAction::from_fn(&g, 3, |e, x| act.act(e, x)).unwrap();
        assert_eq!(checked.orbits_under(&Subgroup::whole(&g)), vec![vec![0, 1, 2]]);
        assert!(GroupAction::from_fn(&g, 3, |e, x| if e == 1 { (x + 1) % 3 } else { x }).is_err());
    }

    #[test]
    fn embedded_subgroup() {
        let g = a5();
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        let s2 = &lat.sylow_subgroups(2).unwrap()[0];
        let emb = EmbeddedGroup::new(&g, s2).unwrap();
        assert_eq!(emb.group.order(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    emb.to_parent[emb.group.mul(a, b)],
                    g.mul(emb.to_parent[a], emb.to_parent[b])
                );
            }
        }
        let back = emb.subgroup_to_parent(&g, &Subgroup::whole(&emb.group));
        assert_eq!(&back, s2);
    }
}
