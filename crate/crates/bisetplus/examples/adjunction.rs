//! The plus-construction is left adjoint to forgetting down to the
//! restriction-only category: a natural map psi out of F extends uniquely
//! to a map phi out of F-plus, by phi([H, a]) = ind(psi(a)).

use bisetplus::biset::{elementary, Elementary};
use bisetplus::functor::constant_functor;
use bisetplus::group::preset;
use bisetplus::lattice::lattice_of;
use bisetplus::plus::{plus_act, plus_generator_at, plus_one, PlusElement};
use bisetplus::verify::adjunction_check;

fn main() {
    let f = constant_functor();
    let groups = vec![preset("trivial").unwrap(), preset("C2").unwrap(), preset("S3").unwrap()];

    // The packaged check: the unit eta is natural for restriction-type
    // bisets, the extension of eta itself is the identity (uniqueness), the
    // extension commutes with plus-admissible bisets, and for multiplicative
    // psi the extension is multiplicative.
    let report = adjunction_check(&f, &groups, 17).unwrap();
    assert!(report.passed(), "failures: {:?}", report.failures);
    println!(
        "adjunction suite: {} cases, {} failures",
        report.cases,
        report.failures.len()
    );

    // The Burnside identification by hand. With constant coefficients,
    // psi(a) = a [G/G] extends to phi([H, *]_G) = [G/H]: the extension
    // formula inducts the unit of F-plus(H) up to G.
    let s3 = preset("S3").unwrap();
    let lat = lattice_of(&s3);
    for entry in 0..lat.len() as u32 {
        let h = lat.group_of(entry).clone();
        let ind = elementary(&Elementary::Ind {
            big: s3.clone(),
            small: h.clone(),
        })
        .unwrap();
        let unit_h: PlusElement<i64> = plus_one(&f, &h).unwrap();
        let phi_of_generator = plus_act(&f, &ind, &unit_h).unwrap();

        // [G/H] as an element of the Burnside ring of S3.
        let expected: PlusElement<i64> =
            plus_generator_at(&f, &s3, entry, 0).unwrap();
        assert_eq!(phi_of_generator, expected);
    }
    println!("phi([H,*]_S3) = [S3/H] for all {} subgroup entries", lat.len());
}
