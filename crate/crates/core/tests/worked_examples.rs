use std::collections::BTreeSet;

use evolving_groups::arith;
use evolving_groups::catalog::{self, SemidirectAction};
use evolving_groups::evolving::{
    all_sylow_families, decompose, is_evolving, is_prime_intense, is_supersolvable, p_evolutions,
    sylow_families_conjugate, sylow_family, theorem_c_forward,
};
use evolving_groups::intense::{lambda_value, stable_conjugate, GroupAutomorphism};
use evolving_groups::subgroups::GroupAction;
use evolving_groups::tate::{
    coset_gset, evolving_via_tate, lemma_cocycle, min_equals_gcd, tate_h0_oracle, tate_h0_shape,
    vanishing_characterization, vanishing_index_set, CocycleInstance, GSet, OffClassSubgroups, TateClass,
};
use evolving_groups::{Caps, FiniteGroup, Subgroup, SubgroupLattice};

const CAP: usize = 2000;

fn group(name: &str) -> FiniteGroup {
    catalog::build_by_name(name, CAP).unwrap()
}

/// `x ↦ x⁻¹, y ↦ y⁻¹` on the Heisenberg group.
fn minus_one(heis: &FiniteGroup) -> GroupAutomorphism {
    let images: Vec<usize> = heis.generators().iter().map(|&s| heis.inv(s)).collect();
    GroupAutomorphism::from_generator_images(heis, &images).unwrap()
}

#[test]
fn coset_spaces() {
    let g = group("S3");
    let whole = coset_gset(&g, &[&Subgroup::whole(&g)]).unwrap();
    assert_eq!((whole.points(), tate_h0_shape(&whole)), (1, vec![6]));
    let regular = coset_gset(&g, &[&Subgroup::trivial(&g)]).unwrap();
    assert_eq!((regular.points(), tate_h0_shape(&regular)), (6, vec![1]));
    let lat = SubgroupLattice::new(&g, 400).unwrap();
    let k = lat.subgroups().iter().find(|h| h.order() == 2).unwrap();
    let cosets = coset_gset(&g, &[k]).unwrap();
    assert_eq!((cosets.points(), tate_h0_shape(&cosets)), (3, vec![2]));
    for x in 0..cosets.points() {
        assert_eq!(cosets.stabilizer(x).order(), 2);
    }
}

#[test]
fn oracle_small_cases() {
    let c2 = group("C2");
    let point = coset_gset(&c2, &[&Subgroup::whole(&c2)]).unwrap();
    assert_eq!(tate_h0_oracle(&c2, &point, &Caps::default()).unwrap(), vec![2]);
    let s3 = group("S3");
    let natural = GSet::new(&s3, GroupAction::natural(&s3)).unwrap();
    assert_eq!(tate_h0_oracle(&s3, &natural, &Caps::default()).unwrap(), vec![2]);
    let regular = coset_gset(&s3, &[&Subgroup::trivial(&s3)]).unwrap();
    assert!(tate_h0_oracle(&s3, &regular, &Caps::default()).unwrap().is_empty());
}

#[test]
fn restriction_rules() {
    let g = group("A5");
    let lat = SubgroupLattice::new(&g, 400).unwrap();
    let s = lat.sylow_subgroups(2).unwrap().remove(0);
    let x = coset_gset(&g, &[&s]).unwrap();
    let zero = TateClass::new(&x, &[0]).unwrap();
    let one = TateClass::new(&x, &[1]).unwrap();
    assert!(lat.subgroups().iter().all(|h| zero.restriction_vanishes(h)));
    let all_indices: BTreeSet<u64> = lat.subgroups().iter().map(|h| 60 / h.order() as u64).collect();
    assert_eq!(vanishing_index_set(&lat, &zero), all_indices);
    assert!(one.restriction_vanishes(&Subgroup::trivial(&g)));
    for h in lat.subgroups().iter().filter(|h| h.order() % 2 == 0) {
        assert!(!one.restriction_vanishes(h));
    }
    assert_eq!(vanishing_index_set(&lat, &one), BTreeSet::from([60, 20, 12]));

    let point = coset_gset(&g, &[&Subgroup::whole(&g)]).unwrap();
    let c = TateClass::new(&point, &[1]).unwrap();
    assert_eq!(vanishing_index_set(&lat, &c), BTreeSet::from([60]));
}

#[test]
fn min_gcd_examples() {
    assert_eq!(min_equals_gcd(&BTreeSet::from([1, 2, 4])).unwrap(), (1, 1, true));
    assert_eq!(min_equals_gcd(&BTreeSet::from([27])).unwrap(), (27, 27, true));
    assert_eq!(min_equals_gcd(&BTreeSet::from([60, 20, 12])).unwrap(), (12, 4, false));
}

#[test]
fn cocycle_instances() {
    let a4 = group("A4");
    let lat = SubgroupLattice::new(&a4, 400).unwrap();
    let inst = CocycleInstance::new(&lat, 3, &Subgroup::trivial(&a4), OffClassSubgroups::Representatives).unwrap();
    assert!(inst.others.is_empty());
    assert_eq!(inst.class().residues(), &[1]);
    assert_eq!(inst.gset.orbits().len(), 1);

    let s3 = group("S3");
    let lat = SubgroupLattice::new(&s3, 400).unwrap();
    let t = lat.subgroups().iter().find(|h| h.order() == 2).unwrap();
    let inst = CocycleInstance::new(&lat, 2, t, OffClassSubgroups::Representatives).unwrap();
    assert!(inst.others.is_empty());
    assert!(inst.class().is_zero());

    let v4 = group("V4");
    let lat = SubgroupLattice::new(&v4, 400).unwrap();
    let i = lat.subgroups().iter().find(|h| h.order() == 2).unwrap();
    let inst = CocycleInstance::new(&lat, 2, i, OffClassSubgroups::Representatives).unwrap();
    assert_eq!(inst.others.len(), 2);
    assert_eq!(inst.class().residues(), &[2, 1, 1]);
}

#[test]
fn cocycle_boundary_subgroups() {
    let g = group("S4");
    let lat = SubgroupLattice::new(&g, 400).unwrap();
    for i in lat.p_subgroup_classes(2) {
        let inst = CocycleInstance::new(&lat, 2, i, OffClassSubgroups::Representatives).unwrap();
        let class = inst.class();
        assert!(class.restriction_vanishes(i));
        for h in lat.subgroups() {
            if h.is_p_subgroup(2) && h.order() > i.order() && i.is_subgroup_of(h) {
                assert!(!class.restriction_vanishes(h));
                assert!(!vanishing_characterization(&lat, 2, i, h));
            }
        }
    }
}

#[test]
fn full_off_class_family_matches_representatives() {
    let caps = Caps::default();
    for e in catalog::entries().into_iter().filter(|e| e.order <= caps.oracle_order) {
        let g = catalog::build(&e, CAP).unwrap();
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        for p in arith::prime_divisors(g.order() as u64) {
            for i in lat.p_subgroup_classes(p) {
                let reps = CocycleInstance::new(&lat, p, i, OffClassSubgroups::Representatives).unwrap();
                let all = CocycleInstance::new(&lat, p, i, OffClassSubgroups::All).unwrap();
                let (rc, ac) = (reps.class(), all.class());
                for h in lat.subgroups() {
                    assert_eq!(rc.restriction_vanishes(h), ac.restriction_vanishes(h), "{} p={p}", e.name);
                }
                assert!(lemma_cocycle(&lat, p, i, OffClassSubgroups::All).unwrap().holds());
            }
        }
    }
}

#[test]
fn evolving_minimum_is_a_prime_power() {
    for e in catalog::entries().into_iter().filter(|e| e.order <= 200) {
        let g = catalog::build(&e, CAP).unwrap();
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        let report = evolving_via_tate(&lat).unwrap();
        if report.evolving {
            for r in &report.records {
                assert!(arith::is_power_of(r.prime, r.min), "{}: min {} for p = {}", e.name, r.min, r.prime);
            }
        }
    }
}

#[test]
fn nilpotent_groups_pass_everything() {
    for name in ["C12", "Q8", "D4", "Heis3", "E27", "C9:C3", "Q8xC3"] {
        let g = group(name);
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        assert!(is_evolving(&lat).evolving, "{name}");
        assert!(evolving_via_tate(&lat).unwrap().evolving, "{name}");
        let pi = is_prime_intense(&lat).unwrap();
        assert!(pi.prime_intense, "{name}");
        let family = sylow_family(&lat).unwrap();
        assert_eq!(all_sylow_families(&lat).len(), 1);
        assert_eq!(sylow_families_conjugate(&g, &family, &family).unwrap(), 0);
        let d = decompose(&lat).unwrap();
        assert!(d.graph.edges.is_empty());
        assert_eq!(d.isolated.order(), g.order());
    }
}

#[test]
fn lambda_examples() {
    let heis = group("Heis3");
    let lat = SubgroupLattice::new(&heis, 400).unwrap();
    assert_eq!(lambda_value(&lat, &GroupAutomorphism::identity(&heis)).unwrap().value, 1);
    assert_eq!(lambda_value(&lat, &minus_one(&heis)).unwrap().value, 2);
    for x in 0..heis.order() {
        assert_eq!(lambda_value(&lat, &GroupAutomorphism::inner(&heis, x)).unwrap().value, 1);
    }
}

#[test]
fn stable_conjugates_under_minus_one() {
    let heis = group("Heis3");
    let lat = SubgroupLattice::new(&heis, 400).unwrap();
    let auts = [minus_one(&heis)];
    for h in lat.subgroups() {
        assert!(stable_conjugate(&heis, &auts, h).is_some());
        assert_eq!(stable_conjugate(&heis, &[GroupAutomorphism::identity(&heis)], h), Some(0));
    }
    assert_eq!(stable_conjugate(&heis, &auts, &Subgroup::whole(&heis)), Some(0));
}

#[test]
fn heisenberg_with_inversion_is_evolving() {
    let heis = group("Heis3");
    let c2 = group("C2");
    let action = SemidirectAction::from_generator_images(&heis, &c2, &[minus_one(&heis)]).unwrap();
    assert!(theorem_c_forward(&heis, &c2, &action, 400).unwrap());
}

#[test]
fn subgroup_w_is_not_prime_intense() {
    let w = group("paper_W_3");
    let lat = SubgroupLattice::new(&w, 400).unwrap();
    let verdict = is_prime_intense(&lat).unwrap();
    assert!(!verdict.prime_intense);
    let witness = verdict.witness.unwrap();
    assert_eq!(witness.prime, 3);
    assert!(witness.subgroup.is_p_subgroup(3));
    let ev = is_evolving(&lat).witness.unwrap();
    assert_eq!(ev.prime, 3);
    assert!(p_evolutions(&lat, 3, &ev.subgroup).unwrap().is_empty());
}

#[test]
fn example_g_structure() {
    let g = group("paper_G_3");
    let lat = SubgroupLattice::new(&g, 400).unwrap();
    assert!(is_supersolvable(&lat));
    let d = decompose(&lat).unwrap();
    assert_eq!(&d.target, d.family.get(3).unwrap());
    assert_eq!(&d.source, d.family.get(2).unwrap());
    assert!(d.isolated.is_trivial());
    // the target is the Heisenberg group: nonabelian of exponent 3
    assert!(d.target.members().iter().all(|&x| g.pow(x, 3) == 0));
    let t = d.target.members();
    assert!(t.iter().any(|&a| t.iter().any(|&b| g.mul(a, b) != g.mul(b, a))));
    assert_eq!(d.evidence.second_family_graph_agrees, Some(true));
}

#[test]
fn graph_does_not_depend_on_family() {
    for name in ["S3", "D5", "C7:C6", "S3xC4", "E25:C4"] {
        let g = group(name);
        let lat = SubgroupLattice::new(&g, 400).unwrap();
        let families = all_sylow_families(&lat);
        assert!(families.len() > 1, "{name}");
        let graphs: BTreeSet<_> = families
            .iter()
            .map(|f| evolving_groups::evolving::associated_graph(&g, f).unwrap().edges)
            .collect();
        assert_eq!(graphs.len(), 1, "{name}");
        for f in &families {
            sylow_families_conjugate(&g, &families[0], f).unwrap();
        }
    }
}

#[test]
fn manifest_expectations_hold() {
    for e in catalog::entries() {
        let g = catalog::build(&e, CAP).unwrap();
        let Ok(lat) = SubgroupLattice::new(&g, 400) else {
            continue;
        };
        if let Some(ev) = e.expected_verdicts.evolving {
            assert_eq!(is_evolving(&lat).evolving, ev, "{}", e.name);
        }
        if let Some(ss) = e.expected_verdicts.supersolvable {
            assert_eq!(is_supersolvable(&lat), ss, "{}", e.name);
        }
    }
}
