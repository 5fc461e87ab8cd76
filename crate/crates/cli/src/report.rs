use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use evolving_groups::evolving::{
    decompose, is_evolving, is_prime_intense, is_supersolvable, AssociatedGraph,
};
use evolving_groups::tate::evolving_via_tate;
use evolving_groups::{Caps, FiniteGroup, Subgroup, SubgroupLattice};

use crate::CliResult;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupInfo {
    pub order: usize,
    /// Cycle notation of a generating set.
    pub generators: Vec<String>,
    /// Element indices, ascending.
    pub members: Vec<usize>,
}

impl SubgroupInfo {
    fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        SubgroupInfo {
            order: h.order(),
            generators: h.generators().iter().map(|&x| g.element(x).to_string()).collect(),
            members: h.members().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub p: u64,
    pub subgroup: SubgroupInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntensityFailure {
    pub p: u64,
    pub element: String,
    pub subgroup: SubgroupInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphInfo {
    pub edges: Vec<(u64, u64)>,
    pub pi_s: Vec<u64>,
    pub pi_t: Vec<u64>,
    pub pi_0: Vec<u64>,
}

impl From<&AssociatedGraph> for GraphInfo {
    fn from(g: &AssociatedGraph) -> Self {
        GraphInfo {
            edges: g.edges.iter().copied().collect(),
            pi_s: g.pi_s.iter().copied().collect(),
            pi_t: g.pi_t.iter().copied().collect(),
            pi_0: g.pi_0.iter().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionInfo {
    pub target: SubgroupInfo,
    pub source: SubgroupInfo,
    pub isolated: SubgroupInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TateLine {
    pub p: u64,
    pub alpha: u32,
    pub subgroup_order: usize,
    pub subgroup_members: Vec<usize>,
    pub index_set: Vec<u64>,
    pub min: u64,
    pub gcd: u64,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub name: String,
    pub order: usize,
    pub evolving: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub prime_intense: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intensity_failure: Option<IntensityFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sylow_family: Option<BTreeMap<u64, Vec<usize>>>,
    pub supersolvable: bool,
    /// Only defined for evolving groups; `null` otherwise.
    pub graph: Option<GraphInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionInfo>,
    pub tate_evolving: bool,
    pub tate: Vec<TateLine>,
}

pub fn analyze(name: &str, g: &FiniteGroup, caps: &Caps) -> CliResult<AnalysisReport> {
    let lattice = SubgroupLattice::new(g, caps.subgroups)?;
    let ev = is_evolving(&lattice);
    let pi = is_prime_intense(&lattice)?;
    let tate = evolving_via_tate(&lattice)?;
    let (graph, decomposition) = if ev.evolving {
        let d = decompose(&lattice)?;
        (
            Some(GraphInfo::from(&d.graph)),
            Some(DecompositionInfo {
                target: SubgroupInfo::new(g, &d.target),
                source: SubgroupInfo::new(g, &d.source),
                isolated: SubgroupInfo::new(g, &d.isolated),
            }),
        )
    } else {
        (None, None)
    };
    Ok(AnalysisReport {
        schema: SCHEMA,
        name: name.to_string(),
        order: g.order(),
        evolving: ev.evolving,
        witness: ev.witness.map(|w| Witness {
            p: w.prime,
            subgroup: SubgroupInfo::new(g, &w.subgroup),
        }),
        prime_intense: pi.prime_intense,
        intensity_failure: pi.witness.map(|w| IntensityFailure {
            p: w.prime,
            element: g.element(w.element).to_string(),
            subgroup: SubgroupInfo::new(g, &w.subgroup),
        }),
        sylow_family: pi.family.map(|f| {
            f.members()
                .iter()
                .map(|(&p, s)| (p, s.members().to_vec()))
                .collect()
        }),
        supersolvable: is_supersolvable(&lattice),
        graph,
        decomposition,
        tate_evolving: tate.evolving,
        tate: tate
            .records
            .into_iter()
            .map(|r| TateLine {
                p: r.prime,
                alpha: r.alpha,
                subgroup_order: r.subgroup.order(),
                subgroup_members: r.subgroup.members().to_vec(),
                index_set: r.index_set,
                min: r.min,
                gcd: r.gcd,
                equal: r.equal,
            })
            .collect(),
    })
}

pub fn to_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn subgroup_text(s: &SubgroupInfo) -> String {
    if s.generators.is_empty() {
        "trivial".to_string()
    } else {
        format!("order {} <{}>", s.order, s.generators.join(", "))
    }
}

fn set_text(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Human-readable rendering of exactly the fields of the report.
pub fn to_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {}", r.name);
    let _ = writeln!(out, "order: {}", r.order);
    match &r.witness {
        None => {
            let _ = writeln!(out, "evolving: yes");
        }
        Some(w) => {
            let _ = writeln!(
                out,
                "evolving: no (p = {}: {} has no p-evolution)",
                w.p,
                subgroup_text(&w.subgroup)
            );
        }
    }
    let _ = writeln!(out, "prime-intense: {}", yes_no(r.prime_intense));
    if let Some(f) = &r.intensity_failure {
        let _ = writeln!(
            out,
            "  conjugation by {} moves {} off its S_{} class",
            f.element,
            subgroup_text(&f.subgroup),
            f.p
        );
    }
    match &r.sylow_family {
        None => {
            let _ = writeln!(out, "sylow family: none");
        }
        Some(fam) => {
            let parts: Vec<String> = fam.iter().map(|(p, m)| format!("S_{p} of order {}", m.len())).collect();
            let _ = writeln!(out, "sylow family: {}", parts.join(", "));
        }
    }
    let _ = writeln!(out, "supersolvable: {}", yes_no(r.supersolvable));
    match &r.graph {
        None => {
            let _ = writeln!(out, "graph: undefined (not evolving)");
        }
        Some(g) => {
            let edges: Vec<String> = g.edges.iter().map(|(q, p)| format!("{q}->{p}")).collect();
            let _ = writeln!(
                out,
                "graph: edges [{}], sources {}, targets {}, isolated {}",
                edges.join(", "),
                set_text(&g.pi_s),
                set_text(&g.pi_t),
                set_text(&g.pi_0)
            );
        }
    }
    if let Some(d) = &r.decomposition {
        let _ = writeln!(
            out,
            "decomposition: ({} x| {}) x {}",
            d.target.order, d.source.order, d.isolated.order
        );
    }
    let _ = writeln!(out, "tate criterion: {}", yes_no(r.tate_evolving));
    for t in &r.tate {
        let _ = writeln!(
            out,
            "  p = {}, |I| = {}: min {}, gcd {}{}  indices {}",
            t.p,
            t.subgroup_order,
            t.min,
            t.gcd,
            if t.equal { "" } else { "  (differ)" },
            set_text(&t.index_set)
        );
    }
    out
}
