//! Automorphisms given as element maps, intensity (every subgroup goes to a
//! conjugate), and the scalar an intense automorphism of a `p`-group induces
//! on its Frattini quotient.

use std::collections::VecDeque;

use serde::Serialize;

use crate::arith;
use crate::catalog;
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::subgroups::{quotient, EmbeddedGroup, QuotientGroup, Subgroup, SubgroupLattice};

/// An automorphism of a finite group as a full element map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    map: Vec<usize>,
}

impl GroupAutomorphism {
    /// Validates bijectivity and the homomorphism law on all pairs.
    pub fn new(g: &FiniteGroup, map: Vec<usize>) -> Result<GroupAutomorphism> {
        let n = g.order();
        if map.len() != n {
            return Err(GroupError::NotAutomorphism(format!(
                "map has {} entries for a group of order {n}",
                map.len()
            )));
        }
        let mut hit = vec![false; n];
        for &y in &map {
            if y >= n || hit[y] {
                return Err(GroupError::NotAutomorphism("map is not a bijection".into()));
            }
            hit[y] = true;
        }
        if map[0] != 0 {
            return Err(GroupError::NotAutomorphism("identity is moved".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if map[g.mul(a, b)] != g.mul(map[a], map[b]) {
                    return Err(GroupError::NotAutomorphism(format!(
                        "map({a}·{b}) differs from map({a})·map({b})"
                    )));
                }
            }
        }
        Ok(GroupAutomorphism { map })
    }

    /// Extends prescribed images of `g.generators()` along the Cayley graph
    /// and validates the result.
    pub fn from_generator_images(g: &FiniteGroup, images: &[usize]) -> Result<GroupAutomorphism> {
        let gens = g.generators();
        if images.len() != gens.len() {
            return Err(GroupError::NotAutomorphism(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let n = g.order();
        if images.iter().any(|&y| y >= n) {
            return Err(GroupError::NotAutomorphism("image out of range".into()));
        }
        let mut map = vec![usize::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &img) in gens.iter().zip(images) {
                let y = g.mul(x, s);
                if map[y] == usize::MAX {
                    map[y] = g.mul(map[x], img);
                    queue.push_back(y);
                }
            }
        }
        GroupAutomorphism::new(g, map)
    }

    pub fn identity(g: &FiniteGroup) -> GroupAutomorphism {
        GroupAutomorphism {
            map: (0..g.order()).collect(),
        }
    }

    /// `h ↦ x h x⁻¹`.
    pub fn inner(g: &FiniteGroup, x: usize) -> GroupAutomorphism {
        GroupAutomorphism {
            map: (0..g.order()).map(|h| g.conjugate(h, x)).collect(),
        }
    }

    /// Conjugation by a parent element `x` restricted to an embedded
    /// subgroup that `x` normalizes.
    pub fn conjugation_on(
        parent: &FiniteGroup,
        sub: &EmbeddedGroup,
        x: usize,
    ) -> Result<GroupAutomorphism> {
        let map: Option<Vec<usize>> = sub
            .to_parent
            .iter()
            .map(|&h| sub.from_parent(parent.conjugate(h, x)))
            .collect();
        let map = map.ok_or_else(|| {
            GroupError::Precondition(format!("element {x} does not normalize the subgroup"))
        })?;
        Ok(GroupAutomorphism { map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupAutomorphism {
        let mut map = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x] = i;
        }
        GroupAutomorphism { map }
    }

    pub fn image_of(&self, g: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|&x| self.map[x]).collect();
        Subgroup::generated(g, &gens)
    }

    /// True when `α(H) = H`.
    pub fn stabilizes(&self, h: &Subgroup) -> bool {
        h.generators().iter().all(|&x| h.contains(self.map[x]))
    }
}

impl std::fmt::Debug for GroupAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupAutomorphism{:?}", self.map)
    }
}

/// First subgroup (lattice id) whose image is not conjugate to it.
pub fn intensity_violation(lattice: &SubgroupLattice<'_>, aut: &GroupAutomorphism) -> Option<usize> {
    let g = lattice.group();
    (0..lattice.len()).find(|&id| {
        let image = aut.image_of(g, lattice.get(id));
        !lattice.are_conjugate_ids(id, lattice.id_of(&image))
    })
}

/// `α` sends every subgroup to a conjugate of itself.
pub fn is_intense(lattice: &SubgroupLattice<'_>, aut: &GroupAutomorphism) -> bool {
    intensity_violation(lattice, aut).is_none()
}

/// Every automorphism of `(F_p)^k`, by brute force over basis images.
/// Rejects `p^k > vector_cap`.
pub fn automorphisms_of_elementary_abelian(
    p: u64,
    k: u32,
    vector_cap: usize,
) -> Result<(FiniteGroup, Vec<GroupAutomorphism>)> {
    let size = p.checked_pow(k).unwrap_or(u64::MAX);
    if size as usize > vector_cap {
        return Err(GroupError::OracleCapExceeded {
            what: "elementary abelian order",
            value: size as usize,
            cap: vector_cap,
        });
    }
    let v = catalog::elementary_abelian(p, k, usize::MAX)?;
    let k = k as usize;
    let mut auts = Vec::new();
    let mut images = vec![0usize; k];
    // Backtrack over basis images, keeping them linearly independent.
    fn extend(
        v: &FiniteGroup,
        depth: usize,
        span: &Subgroup,
        images: &mut Vec<usize>,
        out: &mut Vec<GroupAutomorphism>,
    ) -> Result<()> {
        if depth == images.len() {
            out.push(GroupAutomorphism::from_generator_images(v, images)?);
            return Ok(());
        }
        for x in 0..v.order() {
            if span.contains(x) {
                continue;
            }
            images[depth] = x;
            let bigger = span.join(v, x);
            extend(v, depth + 1, &bigger, images, out)?;
        }
        Ok(())
    }
    extend(&v, 0, &Subgroup::trivial(&v), &mut images, &mut auts)?;
    Ok((v, auts))
}

/// The intense automorphisms of `(F_p)^k`, filtered out of all automorphisms.
pub fn int_group_of_elementary_abelian(
    p: u64,
    k: u32,
    vector_cap: usize,
) -> Result<(FiniteGroup, Vec<GroupAutomorphism>)> {
    let (v, auts) = automorphisms_of_elementary_abelian(p, k, vector_cap)?;
    let lattice = SubgroupLattice::new(&v, usize::MAX)?;
    let intense = auts.into_iter().filter(|a| is_intense(&lattice, a)).collect();
    Ok((v, intense))
}

/// The automorphism of `P/Φ(P)` induced by `aut`.
pub fn induced_on_frattini_quotient(
    lattice: &SubgroupLattice<'_>,
    aut: &GroupAutomorphism,
) -> Result<(QuotientGroup, GroupAutomorphism)> {
    let p = lattice.group();
    let phi = lattice.frattini();
    if !aut.stabilizes(&phi) {
        return Err(GroupError::VerificationFailed(
            "automorphism does not preserve the Frattini subgroup".into(),
        ));
    }
    let q = quotient(p, &phi)?;
    let map: Vec<usize> = (0..q.group.order())
        .map(|c| q.projection[aut.apply(q.lift(c))])
        .collect();
    let induced = GroupAutomorphism::new(&q.group, map)?;
    Ok((q, induced))
}

/// A nonzero residue modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ScalarOnFrattiniQuotient {
    pub prime: u64,
    pub value: u64,
}

impl ScalarOnFrattiniQuotient {
    pub fn new(prime: u64, value: u64) -> Result<Self> {
        if !arith::is_prime(prime) {
            return Err(GroupError::NotPrime(prime));
        }
        if value == 0 || value >= prime {
            return Err(GroupError::InvalidParameter(format!(
                "{value} is not a nonzero residue mod {prime}"
            )));
        }
        Ok(ScalarOnFrattiniQuotient { prime, value })
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        ScalarOnFrattiniQuotient {
            prime: self.prime,
            value: self.value * other.value % self.prime,
        }
    }
}

/// The scalar `μ` with `ᾱ(v) = μ·v` on `P/Φ(P)`, for an automorphism `α` of
/// a nontrivial `p`-group `P` (written multiplicatively: `ᾱ(v) = v^μ`).
pub fn lambda_value(
    lattice: &SubgroupLattice<'_>,
    aut: &GroupAutomorphism,
) -> Result<ScalarOnFrattiniQuotient> {
    let order = lattice.group().order() as u64;
    let Some((p, _)) = arith::prime_power(order) else {
        if order == 1 {
            return Err(GroupError::TrivialFrattiniQuotient);
        }
        return Err(GroupError::InvalidParameter(format!(
            "order {order} is not a prime power"
        )));
    };
    let (q, induced) = induced_on_frattini_quotient(lattice, aut)?;
    let qg = &q.group;
    if qg.order() == 1 {
        return Err(GroupError::TrivialFrattiniQuotient);
    }
    let mut found: Option<(usize, u64)> = None;
    for v in 1..qg.order() {
        let w = induced.apply(v);
        let mu = (1..p)
            .find(|&m| qg.pow(v, m) == w)
            .ok_or(GroupError::NotScalar { vector: v, image: w })?;
        match found {
            None => found = Some((v, mu)),
            Some((first, m0)) if m0 != mu => {
                return Err(GroupError::InconsistentScalar { first, second: v })
            }
            _ => {}
        }
    }
    let (_, mu) = found.expect("nontrivial quotient has a nonzero vector");
    ScalarOnFrattiniQuotient::new(p, mu)
}

/// Some `x` such that every automorphism in `auts` fixes `x H x⁻¹`.
pub fn stable_conjugate(
    g: &FiniteGroup,
    auts: &[GroupAutomorphism],
    h: &Subgroup,
) -> Option<usize> {
    (0..g.order()).find(|&x| {
        let k = h.conjugate_by(g, x);
        auts.iter().all(|a| a.stabilizes(&k))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn automorphism_validation() {
        let c3 = catalog::cyclic(3, 100).unwrap();
        let gen = c3.generators()[0];
        let inv = GroupAutomorphism::from_generator_images(&c3, &[c3.inv(gen)]).unwrap();
        assert_eq!(inv.compose(&inv), GroupAutomorphism::identity(&c3));
        assert!(GroupAutomorphism::from_generator_images(&c3, &[0]).is_err());
        assert!(GroupAutomorphism::new(&c3, vec![0, 1]).is_err());
        let c4 = catalog::cyclic(4, 100).unwrap();
        let g4 = c4.generators()[0];
        // x -> x^2 is not injective
        assert!(GroupAutomorphism::from_generator_images(&c4, &[c4.mul(g4, g4)]).is_err());
    }

    #[test]
    fn identity_and_inner_are_intense() {
        let g = catalog::symmetric(4, 100).unwrap();
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        assert!(is_intense(&lat, &GroupAutomorphism::identity(&g)));
        for x in 0..g.order() {
            assert!(is_intense(&lat, &GroupAutomorphism::inner(&g, x)));
        }
    }

    #[test]
    fn scalar_two_on_f3_squared_is_intense() {
        let v = catalog::elementary_abelian(3, 2, 100).unwrap();
        let images: Vec<usize> = v.generators().iter().map(|&e| v.mul(e, e)).collect();
        let doubling = GroupAutomorphism::from_generator_images(&v, &images).unwrap();
        let lat = SubgroupLattice::new(&v, 400).unwrap();
        assert!(is_intense(&lat, &doubling));
        let swap: Vec<usize> = v.generators().iter().rev().copied().collect();
        let swap = GroupAutomorphism::from_generator_images(&v, &swap).unwrap();
        assert!(!is_intense(&lat, &swap));
    }

    #[test]
    fn int_of_vector_spaces() {
        for (p, k, expected) in [(3, 1, 2), (2, 2, 1), (5, 1, 4), (2, 1, 1), (3, 2, 2)] {
            let (_, int) = int_group_of_elementary_abelian(p, k, 81).unwrap();
            assert_eq!(int.len(), expected, "p={p} k={k}");
        }
        let (_, all) = automorphisms_of_elementary_abelian(2, 2, 81).unwrap();
        assert_eq!(all.len(), 6);
        let (_, all) = automorphisms_of_elementary_abelian(3, 2, 81).unwrap();
        assert_eq!(all.len(), 48);
        assert!(int_group_of_elementary_abelian(3, 5, 81).is_err());
    }

    #[test]
    fn lambda_on_cyclic_groups() {
        let c5 = catalog::cyclic(5, 100).unwrap();
        let lat = SubgroupLattice::new(&c5, 400).unwrap();
        let g = c5.generators()[0];
        let sq = GroupAutomorphism::from_generator_images(&c5, &[c5.mul(g, g)]).unwrap();
        assert_eq!(lambda_value(&lat, &sq).unwrap().value, 2);
        assert_eq!(
            lambda_value(&lat, &GroupAutomorphism::identity(&c5)).unwrap().value,
            1
        );
        let c9 = catalog::cyclic(9, 100).unwrap();
        let lat9 = SubgroupLattice::new(&c9, 400).unwrap();
        let g = c9.generators()[0];
        // x -> x^4 is trivial on C9/C3
        let four = GroupAutomorphism::from_generator_images(&c9, &[c9.pow(g, 4)]).unwrap();
        assert_eq!(lambda_value(&lat9, &four).unwrap().value, 1);
        let two = GroupAutomorphism::from_generator_images(&c9, &[c9.pow(g, 2)]).unwrap();
        assert_eq!(lambda_value(&lat9, &two).unwrap().value, 2);
    }

    #[test]
    fn lambda_errors() {
        let v = catalog::elementary_abelian(3, 2, 100).unwrap();
        let lat = SubgroupLattice::new(&v, 400).unwrap();
        let swap: Vec<usize> = v.generators().iter().rev().copied().collect();
        let swap = GroupAutomorphism::from_generator_images(&v, &swap).unwrap();
        assert!(matches!(
            lambda_value(&lat, &swap),
            Err(GroupError::NotScalar { .. } | GroupError::InconsistentScalar { .. })
        ));
        let trivial = catalog::cyclic(1, 10).unwrap();
        let lat1 = SubgroupLattice::new(&trivial, 400).unwrap();
        assert_eq!(
            lambda_value(&lat1, &GroupAutomorphism::identity(&trivial)),
            Err(GroupError::TrivialFrattiniQuotient)
        );
        assert!(ScalarOnFrattiniQuotient::new(3, 0).is_err());
        assert!(ScalarOnFrattiniQuotient::new(4, 1).is_err());
    }

    #[test]
    fn stable_conjugate_trivial_cases() {
        let g = catalog::symmetric(3, 100).unwrap();
        let subs = crate::subgroups::all_subgroups(&g, 400).unwrap();
        let id = [GroupAutomorphism::identity(&g)];
        for h in &subs {
            assert_eq!(stable_conjugate(&g, &id, h), Some(0));
        }
        // conjugation by a transposition t fixes only the conjugate ⟨t⟩
        let t = subs[1].generators()[0];
        let inner = [GroupAutomorphism::inner(&g, t)];
        let x = stable_conjugate(&g, &inner, &subs[2]).unwrap();
        assert_eq!(subs[2].conjugate_by(&g, x), subs[1]);
    }
}
