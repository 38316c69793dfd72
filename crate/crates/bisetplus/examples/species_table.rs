//! Species: the ring homomorphisms from the plus-construction to a
//! cyclotomic field, one per orbit of (subgroup, character) pairs.
//! Their evaluation matrix is square and nonsingular.

use bisetplus::functor::{constant_functor, fibered_functor};
use bisetplus::group::preset;
use bisetplus::plus::plus_rank;
use bisetplus::species::{check_species_theorem, enumerate_species, evaluation_matrix};

fn main() {
    // Constant coefficients: species are exactly the subgroup classes, and
    // the evaluation matrix is the table of marks.
    let s4 = preset("S4").unwrap();
    let f = constant_functor();
    let species = enumerate_species(&f, &s4).unwrap();
    assert_eq!(species.len(), 11);
    assert_eq!(species.len(), plus_rank(&f, &s4).unwrap());
    println!("S4 with constant coefficients: {} species", species.len());

    // Fibered coefficients pick up character data. For C4 with fiber Z/4
    // there are 7 species; the faithful ones evaluate through fourth roots
    // of unity.
    let c4 = preset("C4").unwrap();
    let f4 = fibered_functor(4).unwrap();
    let (species, basis, matrix) = evaluation_matrix(&f4, &c4).unwrap();
    assert_eq!(species.len(), 7);
    assert_eq!(basis.len(), 7);
    println!("\nC4 with fiber Z/4: evaluation matrix");
    for (s, row) in species.iter().zip(&matrix) {
        let rendered: Vec<String> = row.iter().map(|v| v.render()).collect();
        println!("  {}\t(conductor {})\t{}", s.label(), s.conductor(), rendered.join("\t"));
    }

    // The faithful species on the faithful generator really is a primitive
    // fourth root of unity: exact, not floating point.
    let faithful_rows: Vec<_> = species
        .iter()
        .enumerate()
        .filter(|(_, s)| s.conductor() == 4 && s.tuple().iter().any(|&t| t % 2 == 1))
        .collect();
    assert!(!faithful_rows.is_empty());
    let mut saw_imaginary = false;
    for (i, _) in &faithful_rows {
        for v in &matrix[*i] {
            if v.render() == "z" || v.render() == "-z" {
                saw_imaginary = true;
            }
        }
    }
    assert!(saw_imaginary, "faithful species evaluate at z = i");

    // The packaged theorem check: count = rank, multiplicative, unital,
    // and the matrix has full rank over the cyclotomics.
    for (g, modulus, expected) in [("C2", 2, 3), ("S3", 2, 6), ("D4", 2, 19)] {
        let group = preset(g).unwrap();
        let functor = fibered_functor(modulus).unwrap();
        let report = check_species_theorem(&functor, &group).unwrap();
        assert!(report.passed(), "species theorem failed for {g}: {report:?}");
        assert_eq!(report.species_count, expected);
        println!("{g} with fiber Z/{modulus}: {} species, matrix nonsingular", expected);
    }
}
