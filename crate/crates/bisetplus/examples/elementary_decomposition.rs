//! Factor a standard class [GxH/D] through its Goursat data as
//! induction . inflation . transport . deflation . restriction,
//! then multiply the five factors back together.

use bisetplus::biset::{decompose_standard, standard_basis, BisetElement};
use bisetplus::group::preset;

fn main() {
    let s3 = preset("S3").unwrap();
    let c4 = preset("C4").unwrap();

    for (g, h) in [(&s3, &s3), (&s3, &c4), (&c4, &s3)] {
        for d in standard_basis(g, h) {
            let dec = decompose_standard(&d).unwrap();

            // The class factors through four groups read off D:
            // p1(D), p1(D)/k1(D), p2(D)/k2(D), p2(D).
            assert_eq!(dec.p1.order() / dec.q1.order(), dec.proj1.kernel().order());
            assert_eq!(dec.p2.order() / dec.q2.order(), dec.proj2.kernel().order());
            // The middle isomorphism identifies the two quotients.
            assert_eq!(dec.q1.order(), dec.q2.order());

            let product = dec.recompose().unwrap();
            assert_eq!(product, BisetElement::from_class(&d));
        }
    }
    println!("every standard class of S3xS3, S3xC4, C4xS3 recomposes exactly");

    // One worked instance, spelled out.
    let d = &standard_basis(&s3, &c4)[3];
    let dec = decompose_standard(d).unwrap();
    println!(
        "class of order {}: through p1 of order {}, quotients of order {}, p2 of order {}",
        d.order(),
        dec.p1.order(),
        dec.q1.order(),
        dec.p2.order()
    );
    for (name, factor) in ["ind", "inf", "iso", "def", "res"].iter().zip(dec.factors()) {
        assert_eq!(factor.num_terms(), 1, "elementary factors are single classes");
        println!("  {name}: single class in B({}, {})",
            factor.left().order(), factor.right().order());
    }
}
