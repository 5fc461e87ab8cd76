//! Corpus runs: each check is evaluated on every catalog entry up to a
//! maximum order, entries in parallel, results in manifest order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use evolving_groups::catalog::{self, CatalogEntry, SemidirectAction};
use evolving_groups::evolving::{
    decompose, find_nilpotent_splitting, is_evolving, is_prime_intense, is_supersolvable,
    theorem_c_forward,
};
use evolving_groups::intense::GroupAutomorphism;
use evolving_groups::subgroups::{quotient, EmbeddedGroup};
use evolving_groups::tate::{
    coset_gset, evolving_via_tate, invariant_factors, oracle_scale_gsets, tate_h0_oracle, tate_h0_shape,
};
use evolving_groups::{Caps, GroupError, SubgroupLattice};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    /// `A`: Tate min/gcd criterion agrees with the evolving test.
    TateCriterion,
    /// `B`: evolving iff prime-intense.
    PrimeIntense,
    /// `C`: evolving iff `G = N ⋊ T` with nilpotent coprime factors acting intensely.
    NilpotentSplitting,
    /// `D`: evolving implies supersolvable.
    Supersolvable,
    /// `lemma22`: normal subgroups and quotients of evolving groups are evolving.
    NormalSections,
    /// `prop61`: no prime is both a source and a target; the structure
    /// decomposition verifies.
    Structure,
    /// `gamma`: first-principles Ĥ⁰ matches the stabilizer orders.
    TateIsomorphism,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::TateCriterion,
        Check::PrimeIntense,
        Check::NilpotentSplitting,
        Check::Supersolvable,
        Check::NormalSections,
        Check::Structure,
        Check::TateIsomorphism,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Check::TateCriterion => "A",
            Check::PrimeIntense => "B",
            Check::NilpotentSplitting => "C",
            Check::Supersolvable => "D",
            Check::NormalSections => "lemma22",
            Check::Structure => "prop61",
            Check::TateIsomorphism => "gamma",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Check> {
        Check::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown check {s:?}; expected one of A, B, C, D, lemma22, prop61, gamma")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub order: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub check: String,
    pub max_order: usize,
    pub outcomes: Vec<EntryOutcome>,
}

impl VerifySummary {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            out.push_str(&format!(
                "{} {:<12} order {:<4} {}\n",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.order,
                o.detail
            ));
        }
        out.push_str(&format!(
            "verify {}: {} entries, {} passed, {} failed\n",
            self.check,
            self.outcomes.len(),
            self.outcomes.len() - self.failures(),
            self.failures()
        ));
        out
    }
}

pub fn verify(check: Check, max_order: usize, jobs: usize, caps: &Caps) -> CliResult<VerifySummary> {
    if max_order > caps.subgroups {
        return Err(GroupError::SubgroupCapExceeded {
            order: max_order,
            cap: caps.subgroups,
        }
        .into());
    }
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let limit = match check {
        Check::TateIsomorphism => max_order.min(caps.oracle_order),
        _ => max_order,
    };
    let entries: Vec<CatalogEntry> = catalog::entries().into_iter().filter(|e| e.order <= limit).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let outcomes = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                let (passed, detail) = match run_entry(check, e, caps) {
                    Ok(r) => r,
                    Err(err) => (false, format!("error: {err}")),
                };
                EntryOutcome {
                    name: e.name.clone(),
                    order: e.order,
                    passed,
                    detail,
                }
            })
            .collect()
    });
    Ok(VerifySummary {
        check: check.tag().to_string(),
        max_order,
        outcomes,
    })
}

fn run_entry(check: Check, entry: &CatalogEntry, caps: &Caps) -> CliResult<(bool, String)> {
    let g = catalog::build(entry, caps.closure)?;
    let lattice = SubgroupLattice::new(&g, caps.subgroups)?;
    let evolving = is_evolving(&lattice).evolving;
    Ok(match check {
        Check::TateCriterion => {
            let tate = evolving_via_tate(&lattice)?.evolving;
            (tate == evolving, format!("evolving {evolving}, tate {tate}"))
        }
        Check::PrimeIntense => {
            let pi = is_prime_intense(&lattice)?.prime_intense;
            (pi == evolving, format!("evolving {evolving}, prime-intense {pi}"))
        }
        Check::NilpotentSplitting => splitting_check(&lattice, evolving, caps)?,
        Check::Supersolvable => {
            let ss = is_supersolvable(&lattice);
            (!evolving || ss, format!("evolving {evolving}, supersolvable {ss}"))
        }
        Check::NormalSections => {
            if !evolving {
                return Ok((true, "not evolving".into()));
            }
            for n in lattice.normal_subgroups() {
                let sub = EmbeddedGroup::new(&g, n)?;
                let q = quotient(&g, n)?;
                let sub_ok = is_evolving(&SubgroupLattice::new(&sub.group, caps.subgroups)?).evolving;
                let q_ok = is_evolving(&SubgroupLattice::new(&q.group, caps.subgroups)?).evolving;
                if !sub_ok || !q_ok {
                    return Ok((false, format!("normal subgroup of order {} fails", n.order())));
                }
            }
            (true, format!("{} normal subgroups", lattice.normal_subgroups().len()))
        }
        Check::Structure => {
            if !evolving {
                return Ok((true, "not evolving".into()));
            }
            let d = decompose(&lattice)?;
            let ok = !d.graph.has_consecutive_edges() && d.evidence.all_hold();
            (
                ok,
                format!(
                    "edges {:?}, ({} x| {}) x {}",
                    d.graph.edges,
                    d.target.order(),
                    d.source.order(),
                    d.isolated.order()
                ),
            )
        }
        Check::TateIsomorphism => {
            let samples = oracle_scale_gsets(&lattice, caps)?;
            for (label, gset) in &samples {
                let oracle = tate_h0_oracle(&g, gset, caps)?;
                let shape = tate_h0_shape(gset);
                if oracle != invariant_factors(&shape) {
                    return Ok((false, format!("{label}: oracle {oracle:?}, stabilizers {shape:?}")));
                }
                for x in gset.representatives() {
                    let orbit = coset_gset(&g, &[gset.stabilizer(x)])?;
                    let single = tate_h0_oracle(&g, &orbit, caps)?;
                    let m = gset.stabilizer(x).order() as u64;
                    let expected = if m > 1 { vec![m] } else { vec![] };
                    if single != expected {
                        return Ok((false, format!("{label}: orbit oracle {single:?}, stabilizer {m}")));
                    }
                }
            }
            (true, format!("{} G-sets", samples.len()))
        }
    })
}

/// Compares the verdict with the existence of a splitting and, when one is
/// found, rebuilds it as an external semidirect product.
fn splitting_check(lattice: &SubgroupLattice<'_>, evolving: bool, caps: &Caps) -> CliResult<(bool, String)> {
    let g = lattice.group();
    let Some(split) = find_nilpotent_splitting(lattice)? else {
        return Ok((!evolving, format!("evolving {evolving}, no splitting")));
    };
    let n = EmbeddedGroup::new(g, &split.normal)?;
    let t = EmbeddedGroup::new(g, &split.complement)?;
    let auts = t
        .to_parent
        .iter()
        .map(|&x| GroupAutomorphism::conjugation_on(g, &n, x))
        .collect::<Result<Vec<_>, _>>()?;
    let action = SemidirectAction::new(&n.group, &t.group, auts)?;
    let rebuilt = theorem_c_forward(&n.group, &t.group, &action, caps.subgroups)?;
    Ok((
        evolving && rebuilt,
        format!(
            "evolving {evolving}, splitting {} x| {}, rebuilt product evolving {rebuilt}",
            split.normal.order(),
            split.complement.order()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.tag().parse::<Check>().unwrap(), c);
        }
        assert!(matches!("b".parse::<Check>(), Err(CliError::Usage(_))));
    }

    #[test]
    fn small_runs_pass() {
        let caps = Caps::default();
        let s = verify(Check::PrimeIntense, 12, 2, &caps).unwrap();
        assert!(s.outcomes.iter().all(|o| o.order <= 12));
        assert_eq!(s.failures(), 0);
        assert!(matches!(verify(Check::Supersolvable, 12, 0, &caps), Err(CliError::Usage(_))));
        assert!(matches!(
            verify(Check::Supersolvable, 401, 1, &caps),
            Err(CliError::Group(GroupError::SubgroupCapExceeded { .. }))
        ));
    }
}
