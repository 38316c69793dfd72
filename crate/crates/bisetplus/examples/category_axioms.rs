//! Admissible-subgroup systems: pick which Goursat conditions to impose
//! (trivial kernels, full projections), check the closure axioms, and
//! compute the plus/upper closures of the system.

use bisetplus::category::{check_axioms, Axiom, CategorySpec, Cond, ALL_AXIOMS};
use bisetplus::group::preset;

fn main() {
    let groups = vec![
        preset("trivial").unwrap(),
        preset("C2").unwrap(),
        preset("C3").unwrap(),
        preset("S3").unwrap(),
    ];

    // No conditions: every subgroup of every product is admissible, and all
    // seven axioms hold.
    let all = CategorySpec::new(groups.clone(), &[]);
    let report = check_axioms(&all, &ALL_AXIOMS, 32, 5).unwrap();
    assert!(report.all_passed());
    println!("unconstrained system: all axioms pass");

    // Require p1 full. Inductions need [GxH/diag(H)] with p1 = H < G, so
    // exactly the induction axiom breaks; everything else survives.
    let p1_full = CategorySpec::new(groups.clone(), &[Cond::P1]);
    let report = check_axioms(&p1_full, &ALL_AXIOMS, 32, 5).unwrap();
    for check in &report.checks {
        let expect_pass = check.axiom != Axiom::V;
        assert_eq!(
            check.passed, expect_pass,
            "axiom {:?} under p1-full",
            check.axiom
        );
    }
    println!("p1-full system: only the induction axiom fails");

    // Require p2 full instead: now restrictions break (axiom VI), and
    // inductions are fine.
    let p2_full = CategorySpec::new(groups.clone(), &[Cond::P2]);
    let report = check_axioms(&p2_full, &ALL_AXIOMS, 32, 5).unwrap();
    for check in &report.checks {
        let expect_pass = check.axiom != Axiom::VI;
        assert_eq!(check.passed, expect_pass);
    }
    println!("p2-full system: only the restriction axiom fails");

    // The plus-closure forgets the p1 condition; the upper closure forgets
    // both projection conditions. Verified as predicates on every class.
    let strict = CategorySpec::new(groups.clone(), &[Cond::K1, Cond::K2, Cond::P1, Cond::P2]);
    let plus_model = strict.without(&[Cond::P1]);
    let upper_model = strict.without(&[Cond::P1, Cond::P2]);
    let mut classes = 0usize;
    for g in &groups {
        for h in &groups {
            if g.order() * h.order() > 36 {
                continue;
            }
            for d in bisetplus::biset::standard_basis(g, h) {
                assert_eq!(strict.s_plus_member(&d).unwrap(), plus_model.s_member(&d).unwrap());
                assert_eq!(strict.s_upper_member(&d).unwrap(), upper_model.s_member(&d).unwrap());
                classes += 1;
            }
        }
    }
    println!("closures agree with dropping conditions on {classes} standard classes");
}
