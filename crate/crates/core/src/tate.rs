//! Degree-zero Tate cohomology of permutation modules `Z[X]` and the
//! cohomological test for evolving groups.
//!
//! For a finite `G`-set `X`, `Ĥ⁰(G, Z[X]) = Z[X]^G / N(Z[X])` is the direct
//! sum of `Z/|G_x|` over orbit representatives `x`. A class is stored as one
//! residue per orbit, the coefficient of the orbit sum modulo `|G_x|`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::{Caps, FiniteGroup};
use crate::subgroups::{GroupAction, Subgroup, SubgroupLattice};

/// A finite `G`-set with its orbit decomposition and point stabilizers.
#[derive(Clone)]
pub struct GSet {
    action: GroupAction,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    stabilizers: Vec<Subgroup>,
}

impl GSet {
    pub fn new(g: &FiniteGroup, action: GroupAction) -> Result<GSet> {
        let orbits = action.orbits_under(&Subgroup::whole(g));
        let mut orbit_of = vec![0; action.points()];
        for (i, orbit) in orbits.iter().enumerate() {
            for &x in orbit {
                orbit_of[x] = i;
            }
        }
        let stabilizers = (0..action.points())
            .map(|x| {
                let fixing: Vec<usize> = (0..g.order()).filter(|&e| action.act(e, x) == x).collect();
                Subgroup::from_members(g, &fixing)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GSet {
            action,
            orbits,
            orbit_of,
            stabilizers,
        })
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn points(&self) -> usize {
        self.action.points()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// Smallest point of each orbit.
    pub fn representatives(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    pub fn stabilizer(&self, x: usize) -> &Subgroup {
        &self.stabilizers[x]
    }

    /// `|G_x|` for the representative `x` of each orbit.
    pub fn stabilizer_orders(&self) -> Vec<u64> {
        self.orbits
            .iter()
            .map(|o| self.stabilizers[o[0]].order() as u64)
            .collect()
    }
}

/// `⊔ G/K` over `subgroups`, one orbit per entry in the given order.
pub fn coset_gset(g: &FiniteGroup, subgroups: &[&Subgroup]) -> Result<GSet> {
    let parts: Vec<GroupAction> = subgroups
        .iter()
        .map(|k| GroupAction::on_left_cosets(g, k))
        .collect();
    GSet::new(g, GroupAction::disjoint_union(g, &parts))
}

/// The cyclic orders `|G_x|` of `Ĥ⁰(G, Z[X])`, one per orbit.
pub fn tate_h0_shape(gset: &GSet) -> Vec<u64> {
    gset.stabilizer_orders()
}

/// Invariant factors `d_1 | d_2 | …` (all `> 1`) of `⊕ Z/n_i`.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &n in orders {
        for (p, k) in arith::factorize(n) {
            by_prime.entry(p).or_default().push(p.pow(k));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        let skip = len - powers.len();
        for (slot, q) in out[skip..].iter_mut().zip(powers.iter()) {
            *slot *= q;
        }
    }
    out
}

/// An element of `Ĥ⁰(G, Z[X])`.
#[derive(Clone)]
pub struct TateClass<'s> {
    gset: &'s GSet,
    residues: Vec<u64>,
}

impl<'s> TateClass<'s> {
    /// `coefficients[i]` multiplies the sum over orbit `i`.
    pub fn new(gset: &'s GSet, coefficients: &[u64]) -> Result<Self> {
        if coefficients.len() != gset.orbits().len() {
            return Err(GroupError::InvalidParameter(format!(
                "{} coefficients for {} orbits",
                coefficients.len(),
                gset.orbits().len()
            )));
        }
        let residues = coefficients
            .iter()
            .zip(gset.stabilizer_orders())
            .map(|(&c, m)| c % m)
            .collect();
        Ok(TateClass { gset, residues })
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    /// The restriction to `H` is zero iff `|H_y|` divides the residue of
    /// the `G`-orbit of `y` for every point `y`.
    pub fn restriction_vanishes(&self, h: &Subgroup) -> bool {
        (0..self.gset.points()).all(|y| {
            let r = self.residues[self.gset.orbit_of(y)];
            r.is_multiple_of(self.gset.stabilizer(y).intersection_order(h) as u64)
        })
    }
}

/// `{ |G:H| : res_H(class) = 0 }` over the whole lattice.
pub fn vanishing_index_set(lattice: &SubgroupLattice<'_>, class: &TateClass<'_>) -> BTreeSet<u64> {
    let n = lattice.group().order() as u64;
    lattice
        .subgroups()
        .iter()
        .filter(|h| class.restriction_vanishes(h))
        .map(|h| n / h.order() as u64)
        .collect()
}

/// `(min, gcd, min == gcd)`.
pub fn min_equals_gcd(set: &BTreeSet<u64>) -> Result<(u64, u64, bool)> {
    let min = *set.iter().next().ok_or(GroupError::EmptySet)?;
    let gcd = arith::gcd_all(set.iter().copied());
    Ok((min, gcd, min == gcd))
}

/// Which order-`|I|` subgroups not conjugate to `I` contribute a coset space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffClassSubgroups {
    /// One representative per conjugacy class.
    Representatives,
    /// Every such subgroup.
    All,
}

/// The `G`-set `G/S ⊔ ⊔ G/L` and class attached to a `p`-subgroup `I`
/// of order `p^α`: residue `p^α` on `G/S` for a Sylow `S`, and `p^(α-1)`
/// on each `G/L`, `|L| = p^α`, `L` not conjugate to `I`.
pub struct CocycleInstance {
    pub prime: u64,
    pub alpha: u32,
    pub subgroup: Subgroup,
    /// The order-`|I|` subgroups not conjugate to `I`, one orbit each.
    pub others: Vec<Subgroup>,
    pub gset: GSet,
    coefficients: Vec<u64>,
}

impl CocycleInstance {
    pub fn new(
        lattice: &SubgroupLattice<'_>,
        p: u64,
        i: &Subgroup,
        off_class: OffClassSubgroups,
    ) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        if !i.is_p_subgroup(p) {
            return Err(GroupError::NotPGroup { p, order: i.order() });
        }
        let g = lattice.group();
        let alpha = arith::valuation(p, i.order() as u64);
        let sylow = lattice.sylow_subgroups(p)?.remove(0);
        let i_id = lattice.id_of(i);
        let mut off: Vec<&Subgroup> = Vec::new();
        for (id, l) in lattice.subgroups().iter().enumerate() {
            if l.order() != i.order() || lattice.are_conjugate_ids(id, i_id) {
                continue;
            }
            let first_of_class = lattice.classes()[lattice.class_of(id)][0] == id;
            if off_class == OffClassSubgroups::All || first_of_class {
                off.push(l);
            }
        }
        let mut parts = vec![&sylow];
        parts.extend(off.iter().copied());
        let gset = coset_gset(g, &parts)?;
        let mut coefficients = vec![p.pow(alpha) % sylow.order() as u64];
        coefficients.extend(off.iter().map(|l| p.pow(alpha.saturating_sub(1)) % l.order() as u64));
        Ok(CocycleInstance {
            prime: p,
            alpha,
            subgroup: i.clone(),
            others: off.into_iter().cloned().collect(),
            gset,
            coefficients,
        })
    }

    pub fn class(&self) -> TateClass<'_> {
        TateClass::new(&self.gset, &self.coefficients).expect("one coefficient per orbit")
    }
}

/// Independent description of the vanishing locus: `v_p(|H|) ≤ α`, and when
/// equality holds every Sylow `p`-subgroup of `H` is conjugate to `I` in `G`.
pub fn vanishing_characterization(
    lattice: &SubgroupLattice<'_>,
    p: u64,
    i: &Subgroup,
    h: &Subgroup,
) -> bool {
    let alpha = arith::valuation(p, i.order() as u64);
    let beta = arith::valuation(p, h.order() as u64);
    if beta != alpha {
        return beta < alpha;
    }
    let i_id = lattice.id_of(i);
    lattice
        .subgroups()
        .iter()
        .enumerate()
        .filter(|(_, k)| k.order() == i.order() && k.is_subgroup_of(h))
        .all(|(id, _)| lattice.are_conjugate_ids(id, i_id))
}

/// Outcome of comparing restriction vanishing with the direct description
/// over every subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleCheck {
    pub prime: u64,
    pub alpha: u32,
    pub subgroups_checked: usize,
    /// Lattice ids where the two descriptions differ.
    pub mismatches: Vec<usize>,
}

impl CocycleCheck {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn lemma_cocycle(
    lattice: &SubgroupLattice<'_>,
    p: u64,
    i: &Subgroup,
    off_class: OffClassSubgroups,
) -> Result<CocycleCheck> {
    let instance = CocycleInstance::new(lattice, p, i, off_class)?;
    let class = instance.class();
    let mismatches = lattice
        .subgroups()
        .iter()
        .enumerate()
        .filter(|(_, h)| class.restriction_vanishes(h) != vanishing_characterization(lattice, p, i, h))
        .map(|(id, _)| id)
        .collect();
    Ok(CocycleCheck {
        prime: p,
        alpha: instance.alpha,
        subgroups_checked: lattice.len(),
        mismatches,
    })
}

/// One `(p, I)` line of the cohomological test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateRecord {
    pub prime: u64,
    pub alpha: u32,
    pub subgroup: Subgroup,
    pub index_set: Vec<u64>,
    pub min: u64,
    pub gcd: u64,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateReport {
    pub evolving: bool,
    pub records: Vec<TateRecord>,
}

pub fn tate_record(lattice: &SubgroupLattice<'_>, p: u64, i: &Subgroup) -> Result<TateRecord> {
    let instance = CocycleInstance::new(lattice, p, i, OffClassSubgroups::Representatives)?;
    let set = vanishing_index_set(lattice, &instance.class());
    let (min, gcd, equal) = min_equals_gcd(&set)?;
    Ok(TateRecord {
        prime: p,
        alpha: instance.alpha,
        subgroup: i.clone(),
        index_set: set.into_iter().collect(),
        min,
        gcd,
        equal,
    })
}

/// Evolving iff `min = gcd` for every prime and every class of `p`-subgroups.
pub fn evolving_via_tate(lattice: &SubgroupLattice<'_>) -> Result<TateReport> {
    let n = lattice.group().order() as u64;
    let mut records = Vec::new();
    for p in arith::prime_divisors(n) {
        for i in lattice.p_subgroup_classes(p) {
            records.push(tate_record(lattice, p, i)?);
        }
    }
    Ok(TateReport {
        evolving: records.iter().all(|r| r.equal),
        records,
    })
}

/// Coset spaces of class representatives, some pairwise unions of them,
/// and the natural action, all within the oracle point cap.
pub fn oracle_scale_gsets(lattice: &SubgroupLattice<'_>, caps: &Caps) -> Result<Vec<(String, GSet)>> {
    let g = lattice.group();
    let mut out = Vec::new();
    if g.order() > caps.oracle_order {
        return Ok(out);
    }
    let reps: Vec<&Subgroup> = lattice
        .class_representatives()
        .filter(|k| g.order() / k.order() <= caps.oracle_points)
        .collect();
    for k in &reps {
        out.push((format!("G/K, |K| = {}", k.order()), coset_gset(g, &[k])?));
    }
    for (i, a) in reps.iter().enumerate() {
        for b in reps.iter().skip(i).take(2) {
            if g.order() / a.order() + g.order() / b.order() <= caps.oracle_points {
                out.push((
                    format!("G/A + G/B, |A| = {}, |B| = {}", a.order(), b.order()),
                    coset_gset(g, &[a, b])?,
                ));
            }
        }
    }
    if g.degree() <= caps.oracle_points {
        out.push(("natural".to_string(), GSet::new(g, GroupAction::natural(g))?));
    }
    Ok(out)
}

/// Invariant factors of `Z[X]^G / N(Z[X])` computed from the orbit counts
/// `#{g : g·y = x}` and an integer diagonalization, without using
/// stabilizer orders.
pub fn tate_h0_oracle(g: &FiniteGroup, gset: &GSet, caps: &Caps) -> Result<Vec<u64>> {
    check_oracle_caps(g, gset, caps)?;
    let orbits = gset.orbits();
    let mut rows = Vec::with_capacity(gset.points());
    for y in 0..gset.points() {
        let image = norm_image(g, gset.action(), &Subgroup::whole(g), y);
        let mut row = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            let value = image[orbit[0]];
            if orbit.iter().any(|&x| image[x] != value) {
                return Err(GroupError::VerificationFailed(
                    "norm image is not constant on an orbit".into(),
                ));
            }
            row.push(value);
        }
        rows.push(row);
    }
    let diagonal = diagonalize(rows, orbits.len());
    if diagonal.len() < orbits.len() || diagonal.contains(&0) {
        return Err(GroupError::VerificationFailed("quotient has free rank".into()));
    }
    let diagonal: Vec<u64> = diagonal.into_iter().map(|d| d as u64).collect();
    Ok(invariant_factors(&diagonal))
}

/// Whether the class restricted to `H` lies in the image of the `H`-norm,
/// decided by reducing the invariant vector against an echelon basis of
/// that image in `Z^X`.
pub fn oracle_restriction_vanishes(
    g: &FiniteGroup,
    class: &TateClass<'_>,
    h: &Subgroup,
    caps: &Caps,
) -> Result<bool> {
    let gset = class.gset;
    check_oracle_caps(g, gset, caps)?;
    let rows: Vec<Vec<i128>> = (0..gset.points())
        .map(|y| norm_image(g, gset.action(), h, y))
        .collect();
    let target: Vec<i128> = (0..gset.points())
        .map(|x| class.residues[gset.orbit_of(x)] as i128)
        .collect();
    Ok(row_span_contains(rows, target))
}

fn check_oracle_caps(g: &FiniteGroup, gset: &GSet, caps: &Caps) -> Result<()> {
    if g.order() > caps.oracle_order {
        return Err(GroupError::OracleCapExceeded {
            what: "group order",
            value: g.order(),
            cap: caps.oracle_order,
        });
    }
    if gset.points() > caps.oracle_points {
        return Err(GroupError::OracleCapExceeded {
            what: "G-set size",
            value: gset.points(),
            cap: caps.oracle_points,
        });
    }
    Ok(())
}

/// `N_H(δ_y)` as the vector `x ↦ #{h ∈ H : h·y = x}`.
fn norm_image(_g: &FiniteGroup, action: &GroupAction, h: &Subgroup, y: usize) -> Vec<i128> {
    let mut v = vec![0i128; action.points()];
    for &e in h.members() {
        v[action.act(e, y)] += 1;
    }
    v
}

/// Nonzero diagonal entries after unimodular row and column operations.
fn diagonalize(mut m: Vec<Vec<i128>>, cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let pivot = m[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t] / pivot;
            if q != 0 {
                let (head, tail) = m.split_at_mut(i);
                for (a, b) in tail[0][t..cols].iter_mut().zip(&head[t][t..cols]) {
                    *a -= q * b;
                }
            }
            clean &= m[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / pivot;
            if q != 0 {
                for row in m.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            clean &= m[t][j] == 0;
        }
        if clean {
            out.push(pivot.abs());
            t += 1;
        }
    }
    out
}

fn row_span_contains(mut rows: Vec<Vec<i128>>, mut target: Vec<i128>) -> bool {
    let cols = target.len();
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for col in 0..cols {
        loop {
            let mut live: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if live.len() <= 1 {
                if let Some(&i) = live.first() {
                    basis.push((col, rows.swap_remove(i)));
                }
                break;
            }
            live.sort_by_key(|&i| rows[i][col].abs());
            let pivot = live[0];
            let pv = rows[pivot][col];
            for &i in &live[1..] {
                let q = rows[i][col] / pv;
                let pivot_row = rows[pivot].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot_row) {
                    *a -= q * b;
                }
            }
        }
    }
    for (col, row) in &basis {
        let pv = row[*col];
        if target[*col] % pv != 0 {
            return false;
        }
        let q = target[*col] / pv;
        for (a, b) in target.iter_mut().zip(row) {
            *a -= q * b;
        }
    }
    target.iter().all(|&v| v == 0)
}
