//! Enumerate the full subgroup lattice of a permutation group, with
//! conjugacy classes and the Möbius function of the inclusion poset.

use bisetplus::group::preset;
use bisetplus::lattice::lattice_of;

fn main() {
    let s4 = preset("S4").unwrap();
    let lat = lattice_of(&s4);

    println!(
        "S4: {} subgroups in {} conjugacy classes",
        lat.len(),
        lat.num_classes()
    );
    assert_eq!(lat.len(), 30);
    assert_eq!(lat.num_classes(), 11);

    // Entries are sorted by order, then by member set; the trivial subgroup
    // is entry 0 and the whole group is the last entry.
    let full = lat.len() as u32 - 1;
    assert_eq!(lat.entry(0).order(), 1);
    assert_eq!(lat.entry(full).order(), 24);

    println!("\nindex  order  class  |class|");
    for c in 0..lat.num_classes() as u32 {
        let cl = lat.class(c);
        let rep = lat.entry(cl.rep());
        println!(
            "{:>5}  {:>5}  {:>5}  {:>7}",
            cl.rep(),
            rep.order(),
            c,
            cl.members().len()
        );
    }

    // Class sizes add up to the number of subgroups.
    let total: usize = (0..lat.num_classes() as u32)
        .map(|c| lat.class(c).members().len())
        .sum();
    assert_eq!(total, 30);

    // Möbius function on the bottom row: μ(1, 1) = 1, μ(1, C2) = -1, and
    // μ(1, K) depends only on the interval [1, K].
    assert_eq!(lat.mobius(0, 0), 1);
    let c2 = (0..lat.len() as u32).find(|&i| lat.entry(i).order() == 2).unwrap();
    assert_eq!(lat.mobius(0, c2), -1);

    // μ(1, G) over all of S4: the alternating sum that drives Möbius
    // inversion of the table of marks.
    let mu_bottom_top = lat.mobius(0, full);
    println!("\nmu(1, S4) = {mu_bottom_top}");

    // V4 (the normal Klein four subgroup) has mu(1, V4) = 2: two chains of
    // complemented intervals survive the alternating sum.
    let v4 = (0..lat.len() as u32)
        .find(|&i| {
            lat.entry(i).order() == 4 && lat.class(lat.entry(i).class()).members().len() == 1
        })
        .unwrap();
    assert_eq!(lat.mobius(0, v4), 2);

    println!("lattice checks passed");
}
