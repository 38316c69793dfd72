//! The mark morphism sends [K, a] to its fixed-point profile over all
//! subgroup classes; Möbius inversion undoes it up to the factor |G|.

use bisetplus::functor::constant_functor;
use bisetplus::ghost::GhostElement;
use bisetplus::group::preset;
use bisetplus::lattice::lattice_of;
use bisetplus::mark::{mark, marks_table, mobius_inverse};
use bisetplus::plus::{canonical_basis, plus_generator_at, PlusElement};

fn main() {
    let s3 = preset("S3").unwrap();
    let f = constant_functor();

    // The table of marks of S3: rows are [S3/1], [S3/C2], [S3/C3], [S3/S3],
    // columns count fixed points of the same four classes.
    let rows = marks_table(&s3).unwrap();
    assert_eq!(
        rows,
        vec![
            vec![6, 0, 0, 0],
            vec![3, 1, 0, 0],
            vec![2, 0, 2, 0],
            vec![1, 1, 1, 1],
        ]
    );
    println!("table of marks of S3:");
    for row in &rows {
        println!("  {row:?}");
    }

    // mark([C2, *]) reads off row 1: three cosets, one fixed by C2.
    let c2_gen: PlusElement<i64> = plus_generator_at(&f, &s3, 1, 0).unwrap();
    let m = mark(&f, &c2_gen).unwrap();
    let profile: Vec<i64> = (0..4).map(|c| m.component(c)[0]).collect();
    assert_eq!(profile, vec![3, 1, 0, 0]);

    // Möbius inversion recovers |S3| times the element, exactly over Z.
    let back = mobius_inverse(&f, &m).unwrap();
    assert_eq!(back, c2_gen.scale(&6));
    println!("n(m([C2,*])) = 6 [C2,*]");

    // The other composite: for any ghost tuple y, m(n(y)) = |G| y.
    let lat = lattice_of(&s3);
    for c in 0..lat.num_classes() as u32 {
        let mut comps = vec![vec![0i64]; lat.num_classes()];
        comps[c as usize][0] = 1;
        let y = GhostElement::from_components(&f, &s3, comps).unwrap();
        let round = mark(&f, &mobius_inverse(&f, &y).unwrap()).unwrap();
        assert_eq!(round, y.scale_all(&6));
    }
    println!("m . n = 6 id on all indicator tuples of S3");

    // Both identities across the whole canonical basis of a larger group.
    let d8 = preset("D4").unwrap(); // dihedral of order 8
    let order = d8.order() as i64;
    for &(class, b) in canonical_basis(&f, &d8).unwrap().iter() {
        let x: PlusElement<i64> = plus_generator_at(
            &f,
            &d8,
            lattice_of(&d8).class(class).rep(),
            b,
        )
        .unwrap();
        let round = mobius_inverse(&f, &mark(&f, &x).unwrap()).unwrap();
        assert_eq!(round, x.scale(&order));
    }
    println!("n . m = {order} id on the canonical basis of the order-8 dihedral group");
}
