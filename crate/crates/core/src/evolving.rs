//! Evolving groups: `p`-evolutions, Sylow families, prime-intensity,
//! supersolvability, the associated prime graph and the resulting
//! semidirect decomposition.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith;
use crate::catalog::{semidirect, SemidirectAction};
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::intense::{intensity_violation, is_intense, lambda_value, GroupAutomorphism};
use crate::subgroups::{
    commutator_subgroup_pair, generated_subgroup, is_normal, normalizer, sylow_order,
    EmbeddedGroup, Subgroup, SubgroupLattice,
};

/// All `J ≥ I` with `|G:J|` a power of `p` and `p ∤ |J:I|`.
pub fn p_evolutions(lattice: &SubgroupLattice<'_>, p: u64, i: &Subgroup) -> Result<Vec<Subgroup>> {
    if !arith::is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if !i.is_p_subgroup(p) {
        return Err(GroupError::NotPGroup { p, order: i.order() });
    }
    let n = lattice.group().order() as u64;
    Ok(lattice
        .subgroups()
        .iter()
        .filter(|j| {
            let (order, sub) = (j.order() as u64, i.order() as u64);
            i.is_subgroup_of(j)
                && arith::is_power_of(p, n / order)
                && (order / sub) % p != 0
        })
        .cloned()
        .collect())
}

/// A `p`-subgroup without any `p`-evolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoEvolutionWitness {
    pub prime: u64,
    pub subgroup: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvolvingVerdict {
    pub evolving: bool,
    pub witness: Option<NoEvolutionWitness>,
}

/// Checks one `p`-subgroup per conjugacy class, primes ascending and
/// classes by `(order, members)`; the first failure is the witness.
pub fn is_evolving(lattice: &SubgroupLattice<'_>) -> EvolvingVerdict {
    let n = lattice.group().order() as u64;
    for p in arith::prime_divisors(n) {
        for i in lattice.p_subgroup_classes(p) {
            let evolutions = p_evolutions(lattice, p, i).expect("class representative is a p-group");
            if evolutions.is_empty() {
                return EvolvingVerdict {
                    evolving: false,
                    witness: Some(NoEvolutionWitness {
                        prime: p,
                        subgroup: i.clone(),
                    }),
                };
            }
        }
    }
    EvolvingVerdict {
        evolving: true,
        witness: None,
    }
}

/// One Sylow subgroup per prime divisor of `|G|`, smaller-prime members
/// normalizing larger-prime ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowFamily {
    members: BTreeMap<u64, Subgroup>,
}

impl SylowFamily {
    /// Validates the Sylow orders and the normalization condition.
    pub fn new(g: &FiniteGroup, members: BTreeMap<u64, Subgroup>) -> Result<SylowFamily> {
        let n = g.order();
        let primes = arith::prime_divisors(n as u64);
        if members.keys().copied().collect::<Vec<_>>() != primes {
            return Err(GroupError::NotSylowFamily("primes do not match |G|".into()));
        }
        for (&p, s) in &members {
            if s.order() != sylow_order(n, p) {
                return Err(GroupError::NotSylowFamily(format!(
                    "member for {p} has order {}",
                    s.order()
                )));
            }
        }
        for (&q, sq) in &members {
            for (&p, sp) in members.range(q + 1..) {
                let norm = normalizer(g, sp);
                if !sq.is_subgroup_of(&norm) {
                    return Err(GroupError::NotSylowFamily(format!(
                        "S_{q} does not normalize S_{p}"
                    )));
                }
            }
        }
        Ok(SylowFamily { members })
    }

    /// Primes dividing `|G|`, ascending.
    pub fn primes(&self) -> Vec<u64> {
        self.members.keys().copied().collect()
    }

    pub fn get(&self, p: u64) -> Option<&Subgroup> {
        self.members.get(&p)
    }

    pub fn members(&self) -> &BTreeMap<u64, Subgroup> {
        &self.members
    }

    pub fn conjugate_by(&self, g: &FiniteGroup, x: usize) -> SylowFamily {
        SylowFamily {
            members: self
                .members
                .iter()
                .map(|(&p, s)| (p, s.conjugate_by(g, x)))
                .collect(),
        }
    }

    /// `⟨S_q : q ∈ primes⟩`.
    pub fn product(&self, g: &FiniteGroup, primes: &BTreeSet<u64>) -> Subgroup {
        let parts: Vec<&Subgroup> = primes.iter().filter_map(|p| self.members.get(p)).collect();
        generated_subgroup(g, &parts)
    }
}

/// Backtracking over Sylow choices, primes from the largest down; calls
/// `visit` on each complete family until it returns `false`.
fn search_families(
    lattice: &SubgroupLattice<'_>,
    mut visit: impl FnMut(BTreeMap<u64, Subgroup>) -> bool,
) {
    let g = lattice.group();
    let mut primes = arith::prime_divisors(g.order() as u64);
    primes.reverse();
    let candidates: Vec<Vec<(Subgroup, Subgroup)>> = primes
        .iter()
        .map(|&p| {
            lattice
                .sylow_subgroups(p)
                .expect("prime divisor")
                .into_iter()
                .map(|s| {
                    let norm = normalizer(g, &s);
                    (s, norm)
                })
                .collect()
        })
        .collect();

    fn recurse(
        depth: usize,
        primes: &[u64],
        candidates: &[Vec<(Subgroup, Subgroup)>],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(BTreeMap<u64, Subgroup>) -> bool,
    ) -> bool {
        if depth == primes.len() {
            let members = chosen
                .iter()
                .enumerate()
                .map(|(d, &c)| (primes[d], candidates[d][c].0.clone()))
                .collect();
            return visit(members);
        }
        for (c, (s, _)) in candidates[depth].iter().enumerate() {
            // every larger-prime member chosen so far must be normalized by s
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(d, &k)| s.is_subgroup_of(&candidates[d][k].1));
            if !ok {
                continue;
            }
            chosen.push(c);
            let keep_going = recurse(depth + 1, primes, candidates, chosen, visit);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    recurse(0, &primes, &candidates, &mut Vec::new(), &mut visit);
}

/// The first Sylow family found by the largest-prime-first search over
/// candidates sorted by `(order, members)`, or `None` if there is none.
pub fn sylow_family(lattice: &SubgroupLattice<'_>) -> Option<SylowFamily> {
    let mut found = None;
    search_families(lattice, |members| {
        found = Some(SylowFamily { members });
        false
    });
    found
}

/// A family other than `first`, if the group has one.
pub fn another_sylow_family(lattice: &SubgroupLattice<'_>, first: &SylowFamily) -> Option<SylowFamily> {
    let mut found = None;
    search_families(lattice, |members| {
        if members != first.members {
            found = Some(SylowFamily { members });
            return false;
        }
        true
    });
    found
}

/// Every Sylow family of the group.
pub fn all_sylow_families(lattice: &SubgroupLattice<'_>) -> Vec<SylowFamily> {
    let mut out = Vec::new();
    search_families(lattice, |members| {
        out.push(SylowFamily { members });
        true
    });
    out
}

/// `(T_p, L_p) = (⟨S_q : q < p⟩, ⟨S_q : q > p⟩)`, with their orders checked
/// against the products of the member orders.
pub fn tower_subgroups(
    g: &FiniteGroup,
    family: &SylowFamily,
    p: u64,
) -> Result<(Subgroup, Subgroup)> {
    if family.get(p).is_none() {
        return Err(GroupError::PrimeNotInPi(p));
    }
    let below: BTreeSet<u64> = family.members.range(..p).map(|(&q, _)| q).collect();
    let above: BTreeSet<u64> = family.members.range(p + 1..).map(|(&q, _)| q).collect();
    let t = family.product(g, &below);
    let l = family.product(g, &above);
    let expect = |set: &BTreeSet<u64>| -> usize { set.iter().map(|q| family.members[q].order()).product() };
    if t.order() != expect(&below) || l.order() != expect(&above) {
        return Err(GroupError::VerificationFailed(format!(
            "tower orders |T_{p}| = {}, |L_{p}| = {}",
            t.order(),
            l.order()
        )));
    }
    Ok((t, l))
}

/// Some `x` with `x S_p x⁻¹ = R_p` for every prime at once.
pub fn sylow_families_conjugate(
    g: &FiniteGroup,
    first: &SylowFamily,
    second: &SylowFamily,
) -> Result<usize> {
    SylowFamily::new(g, first.members.clone())?;
    SylowFamily::new(g, second.members.clone())?;
    (0..g.order())
        .find(|&x| {
            first
                .members
                .iter()
                .all(|(p, s)| s.generators().iter().all(|&h| second.members[p].contains(g.conjugate(h, x))))
        })
        .ok_or_else(|| GroupError::VerificationFailed("Sylow families are not conjugate".into()))
}

/// An element of `T_p` whose conjugation action sends a subgroup of `S_p`
/// to a subgroup that is not `S_p`-conjugate to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntensityWitness {
    pub prime: u64,
    pub element: usize,
    pub subgroup: Subgroup,
}

#[derive(Debug, Clone)]
pub struct PrimeIntenseVerdict {
    pub prime_intense: bool,
    /// The family that passed, or the canonical family when none did.
    pub family: Option<SylowFamily>,
    pub witness: Option<IntensityWitness>,
}

/// `S_p` as a standalone group together with its subgroup lattice data.
struct SylowContext {
    prime: u64,
    embedded: EmbeddedGroup,
}

impl SylowContext {
    fn new(g: &FiniteGroup, prime: u64, s: &Subgroup) -> Result<Self> {
        Ok(SylowContext {
            prime,
            embedded: EmbeddedGroup::new(g, s)?,
        })
    }
}

/// First violation of intensity of `T_p` on `S_p` over all primes.
pub fn family_intensity_violation(
    g: &FiniteGroup,
    family: &SylowFamily,
) -> Result<Option<IntensityWitness>> {
    for p in family.primes() {
        let ctx = SylowContext::new(g, p, &family.members[&p])?;
        let lattice = SubgroupLattice::new(&ctx.embedded.group, usize::MAX)?;
        let (t, _) = tower_subgroups(g, family, p)?;
        for &x in t.members() {
            let aut = GroupAutomorphism::conjugation_on(g, &ctx.embedded, x)?;
            if let Some(id) = intensity_violation(&lattice, &aut) {
                return Ok(Some(IntensityWitness {
                    prime: ctx.prime,
                    element: x,
                    subgroup: ctx.embedded.subgroup_to_parent(g, lattice.get(id)),
                }));
            }
        }
    }
    Ok(None)
}

/// Tests the canonical family first, then every other family.
pub fn is_prime_intense(lattice: &SubgroupLattice<'_>) -> Result<PrimeIntenseVerdict> {
    let g = lattice.group();
    let Some(canonical) = sylow_family(lattice) else {
        return Ok(PrimeIntenseVerdict {
            prime_intense: false,
            family: None,
            witness: None,
        });
    };
    let witness = match family_intensity_violation(g, &canonical)? {
        None => {
            if let Some(other) = another_sylow_family(lattice, &canonical) {
                if let Some(w) = family_intensity_violation(g, &other)? {
                    return Err(GroupError::VerificationFailed(format!(
                        "canonical family is intense but another family fails at p = {}",
                        w.prime
                    )));
                }
            }
            return Ok(PrimeIntenseVerdict {
                prime_intense: true,
                family: Some(canonical),
                witness: None,
            });
        }
        Some(w) => w,
    };
    for family in all_sylow_families(lattice) {
        if family == canonical {
            continue;
        }
        if family_intensity_violation(g, &family)?.is_none() {
            return Ok(PrimeIntenseVerdict {
                prime_intense: true,
                family: Some(family),
                witness: None,
            });
        }
    }
    Ok(PrimeIntenseVerdict {
        prime_intense: false,
        family: Some(canonical),
        witness: Some(witness),
    })
}

/// Searches for `1 = N_0 < N_1 < … < N_r = G` with every `N_i` normal in
/// `G` and every step of prime index.
pub fn is_supersolvable(lattice: &SubgroupLattice<'_>) -> bool {
    supersolvable_series(lattice).is_some()
}

/// A normal series with prime-order steps, as lattice ids from the
/// trivial subgroup to `G`.
pub fn supersolvable_series(lattice: &SubgroupLattice<'_>) -> Option<Vec<usize>> {
    let normals: Vec<usize> = lattice
        .normal_subgroups()
        .into_iter()
        .map(|h| lattice.id_of(h))
        .collect();
    let top = lattice.len() - 1;
    let mut dead = vec![false; lattice.len()];

    fn climb(
        lattice: &SubgroupLattice<'_>,
        normals: &[usize],
        top: usize,
        current: usize,
        dead: &mut [bool],
        path: &mut Vec<usize>,
    ) -> bool {
        if current == top {
            return true;
        }
        let here = lattice.get(current);
        for &m in normals {
            let next = lattice.get(m);
            if dead[m] || next.order() <= here.order() || !next.order().is_multiple_of(here.order()) {
                continue;
            }
            if !arith::is_prime((next.order() / here.order()) as u64) || !here.is_subgroup_of(next) {
                continue;
            }
            path.push(m);
            if climb(lattice, normals, top, m, dead, path) {
                return true;
            }
            path.pop();
            dead[m] = true;
        }
        false
    }

    let mut path = vec![0];
    climb(lattice, &normals, top, 0, &mut dead, &mut path).then_some(path)
}

/// True when every Sylow subgroup is normal.
pub fn is_nilpotent(lattice: &SubgroupLattice<'_>) -> bool {
    let n = lattice.group().order();
    arith::prime_divisors(n as u64).into_iter().all(|p| {
        let target = sylow_order(n, p);
        lattice.subgroups().iter().filter(|s| s.order() == target).count() == 1
    })
}

/// Vertices are the primes dividing `|G|`; `(q, p)` is an edge when `q < p`
/// and `S_q` acts on `S_p/Φ(S_p)` by a scalar other than 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociatedGraph {
    pub vertices: Vec<u64>,
    pub edges: BTreeSet<(u64, u64)>,
    pub pi_s: BTreeSet<u64>,
    pub pi_t: BTreeSet<u64>,
    pub pi_0: BTreeSet<u64>,
}

impl AssociatedGraph {
    fn from_edges(vertices: Vec<u64>, edges: BTreeSet<(u64, u64)>) -> Self {
        let pi_s: BTreeSet<u64> = edges.iter().map(|&(q, _)| q).collect();
        let pi_t: BTreeSet<u64> = edges.iter().map(|&(_, p)| p).collect();
        let pi_0 = vertices
            .iter()
            .copied()
            .filter(|v| !pi_s.contains(v) && !pi_t.contains(v))
            .collect();
        AssociatedGraph {
            vertices,
            edges,
            pi_s,
            pi_t,
            pi_0,
        }
    }

    /// Some prime is both a source and a target.
    pub fn has_consecutive_edges(&self) -> bool {
        self.pi_s.intersection(&self.pi_t).next().is_some()
    }
}

/// Builds the graph from `λ_p` of the generators of each `S_q`, `q < p`.
/// Errors from [`lambda_value`] mean some action is not intense.
pub fn associated_graph(g: &FiniteGroup, family: &SylowFamily) -> Result<AssociatedGraph> {
    let primes = family.primes();
    let mut edges = BTreeSet::new();
    for &p in &primes {
        let ctx = SylowContext::new(g, p, &family.members[&p])?;
        let lattice = SubgroupLattice::new(&ctx.embedded.group, usize::MAX)?;
        for &q in primes.iter().filter(|&&q| q < p) {
            for &s in family.members[&q].generators() {
                let aut = GroupAutomorphism::conjugation_on(g, &ctx.embedded, s)?;
                if !lambda_value(&lattice, &aut)?.is_one() {
                    edges.insert((q, p));
                }
            }
        }
    }
    Ok(AssociatedGraph::from_edges(primes, edges))
}

/// The checks behind a [`StructureDecomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureEvidence {
    pub orders_multiply: bool,
    pub trivial_intersections: bool,
    pub isolated_centralizes_rest: bool,
    pub sources_commute: bool,
    pub targets_commute: bool,
    pub target_normal: bool,
    pub source_normalizes_target: bool,
    /// Graph recomputed from a second Sylow family, when there is one.
    pub second_family_graph_agrees: Option<bool>,
}

impl StructureEvidence {
    pub fn all_hold(&self) -> bool {
        self.orders_multiply
            && self.trivial_intersections
            && self.isolated_centralizes_rest
            && self.sources_commute
            && self.targets_commute
            && self.target_normal
            && self.source_normalizes_target
            && self.second_family_graph_agrees != Some(false)
    }
}

/// `G = (target ⋊ source) × isolated`, each factor the product of the
/// family members over `π_t`, `π_s` and `π_0`.
#[derive(Debug, Clone)]
pub struct StructureDecomposition {
    pub family: SylowFamily,
    pub graph: AssociatedGraph,
    pub target: Subgroup,
    pub source: Subgroup,
    pub isolated: Subgroup,
    pub evidence: StructureEvidence,
}

fn pairwise_commute(g: &FiniteGroup, family: &SylowFamily, primes: &BTreeSet<u64>) -> bool {
    primes.iter().all(|&a| {
        primes
            .iter()
            .filter(|&&b| b > a)
            .all(|&b| commutator_subgroup_pair(g, &family.members[&a], &family.members[&b]).is_trivial())
    })
}

pub fn decompose(lattice: &SubgroupLattice<'_>) -> Result<StructureDecomposition> {
    let g = lattice.group();
    let family = sylow_family(lattice)
        .ok_or_else(|| GroupError::Precondition("group has no Sylow family".into()))?;
    let graph = associated_graph(g, &family)?;
    let second_family_graph_agrees = match another_sylow_family(lattice, &family) {
        Some(other) => Some(associated_graph(g, &other)? == graph),
        None => None,
    };
    let target = family.product(g, &graph.pi_t);
    let source = family.product(g, &graph.pi_s);
    let isolated = family.product(g, &graph.pi_0);

    let whole_order = g.order();
    let rest = generated_subgroup(g, &[&target, &source]);
    let isolated_centralizes_rest = graph.pi_0.iter().all(|&q| {
        family
            .members
            .iter()
            .filter(|(&p, _)| p != q)
            .all(|(_, s)| commutator_subgroup_pair(g, &family.members[&q], s).is_trivial())
    }) && commutator_subgroup_pair(g, &isolated, &rest).is_trivial();
    let source_normalizes_target = source
        .generators()
        .iter()
        .all(|&x| target.generators().iter().all(|&t| target.contains(g.conjugate(t, x))));
    let evidence = StructureEvidence {
        orders_multiply: target.order() * source.order() * isolated.order() == whole_order,
        trivial_intersections: target.intersection_order(&source) == 1
            && target.intersection_order(&isolated) == 1
            && source.intersection_order(&isolated) == 1
            && rest.intersection_order(&isolated) == 1,
        isolated_centralizes_rest,
        sources_commute: pairwise_commute(g, &family, &graph.pi_s),
        targets_commute: pairwise_commute(g, &family, &graph.pi_t),
        target_normal: is_normal(g, &target),
        source_normalizes_target,
        second_family_graph_agrees,
    };
    if !evidence.all_hold() {
        return Err(GroupError::VerificationFailed(format!(
            "structure decomposition evidence failed: {evidence:?}"
        )));
    }
    Ok(StructureDecomposition {
        family,
        graph,
        target,
        source,
        isolated,
        evidence,
    })
}

/// Builds `N ⋊ T` for nilpotent `N`, `T` of coprime orders and an action
/// through intense automorphisms, and reports whether the product is
/// evolving.
pub fn theorem_c_forward(
    n: &FiniteGroup,
    t: &FiniteGroup,
    action: &SemidirectAction,
    subgroup_cap: usize,
) -> Result<bool> {
    if arith::gcd(n.order() as u64, t.order() as u64) != 1 {
        return Err(GroupError::Precondition(format!(
            "orders {} and {} are not coprime",
            n.order(),
            t.order()
        )));
    }
    let n_lattice = SubgroupLattice::new(n, subgroup_cap)?;
    if !is_nilpotent(&n_lattice) {
        return Err(GroupError::Precondition("N is not nilpotent".into()));
    }
    if !is_nilpotent(&SubgroupLattice::new(t, subgroup_cap)?) {
        return Err(GroupError::Precondition("T is not nilpotent".into()));
    }
    for &s in t.generators() {
        if !is_intense(&n_lattice, action.get(s)) {
            return Err(GroupError::Precondition(format!(
                "generator {s} of T does not act by an intense automorphism"
            )));
        }
    }
    let product = semidirect(n, t, action, usize::MAX)?;
    let lattice = SubgroupLattice::new(&product.group, subgroup_cap)?;
    Ok(is_evolving(&lattice).evolving)
}

/// An internal decomposition `G = N ⋊ T` with `N`, `T` nilpotent of coprime
/// orders and `T` acting on `N` by intense automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotentSplitting {
    pub normal: Subgroup,
    pub complement: Subgroup,
}

fn subgroup_is_nilpotent(lattice: &SubgroupLattice<'_>, h: &Subgroup) -> bool {
    arith::prime_divisors(h.order() as u64).into_iter().all(|p| {
        let target = sylow_order(h.order(), p);
        lattice
            .subgroups()
            .iter()
            .filter(|s| s.order() == target && s.is_subgroup_of(h))
            .count()
            == 1
    })
}

/// Exhaustive search for a [`NilpotentSplitting`].
pub fn find_nilpotent_splitting(lattice: &SubgroupLattice<'_>) -> Result<Option<NilpotentSplitting>> {
    let g = lattice.group();
    let n = g.order();
    for normal in lattice.normal_subgroups() {
        if arith::gcd(normal.order() as u64, (n / normal.order()) as u64) != 1
            || !subgroup_is_nilpotent(lattice, normal)
        {
            continue;
        }
        let embedded = EmbeddedGroup::new(g, normal)?;
        let n_lattice = SubgroupLattice::new(&embedded.group, usize::MAX)?;
        for complement in lattice.complements(normal)? {
            if !subgroup_is_nilpotent(lattice, &complement) {
                continue;
            }
            let mut intense = true;
            for &x in complement.generators() {
                let aut = GroupAutomorphism::conjugation_on(g, &embedded, x)?;
                if !is_intense(&n_lattice, &aut) {
                    intense = false;
                    break;
                }
            }
            if intense {
                return Ok(Some(NilpotentSplitting {
                    normal: normal.clone(),
                    complement,
                }));
            }
        }
    }
    Ok(None)
}
