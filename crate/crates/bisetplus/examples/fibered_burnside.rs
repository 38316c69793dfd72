//! The fibered coefficient system H -> Z.Hom(H, Z/n): basis labels are
//! homomorphisms to Z/n, and the plus-construction is the monomial
//! (fibered) Burnside ring.

use bisetplus::functor::{fibered_functor, CoeffFunctor};
use bisetplus::group::preset;
use bisetplus::lattice::lattice_of;
use bisetplus::plus::{canonical_basis, plus_generator_at, plus_mult, plus_one, plus_rank, PlusElement};

fn main() {
    let f = fibered_functor(2).unwrap();

    // On C2 there are two characters to Z/2 at the top and one at the
    // bottom, giving rank 3: (1, triv), (C2, triv), (C2, sgn).
    let c2 = preset("C2").unwrap();
    assert_eq!(plus_rank(&f, &c2).unwrap(), 3);
    let basis = canonical_basis(&f, &c2).unwrap();
    println!("fibered:2 basis of C2:");
    let lat = lattice_of(&c2);
    for &(class, b) in &basis {
        let h = lat.rep_group(class);
        println!(
            "  subgroup of order {}, character {}",
            h.order(),
            f.basis_label(h, b).unwrap()
        );
    }

    // Hom counting: Hom(C2, Z/2) has gcd(2,2) = 2 elements; Hom(C3, Z/2)
    // is trivial.
    assert_eq!(f.basis_size(&c2).unwrap(), 2);
    assert_eq!(f.basis_size(&preset("C3").unwrap()).unwrap(), 1);

    // S3 with n = 2: classes (1, C2, C3, S3) carry 1 + 2 + 1 + 2 labels;
    // all of them are normalizer-minimal except nothing collapses here,
    // so the rank is 6.
    let s3 = preset("S3").unwrap();
    assert_eq!(plus_rank(&f, &s3).unwrap(), 6);

    // Multiplication twists by products of restricted characters; squares
    // of sign generators land back at the trivial character.
    let slat = lattice_of(&s3);
    let top = slat.len() as u32 - 1;
    let one: PlusElement<i64> = plus_one(&f, &s3).unwrap();
    let sgn: PlusElement<i64> = plus_generator_at(&f, &s3, top, 1).unwrap();
    assert_eq!(plus_mult(&f, &one, &sgn).unwrap(), sgn);
    let sgn_sq = plus_mult(&f, &sgn, &sgn).unwrap();
    assert_eq!(sgn_sq, one, "sign twists cancel: [S3, sgn]^2 = [S3, 1]");
    println!("[S3, sgn]^2 = [S3, 1] in the fibered:2 ring");

    // Changing the fiber changes the rank: Hom(C4, Z/4) has 4 characters.
    let f4 = fibered_functor(4).unwrap();
    let c4 = preset("C4").unwrap();
    assert_eq!(f4.basis_size(&c4).unwrap(), 4);
    assert_eq!(plus_rank(&f4, &c4).unwrap(), 7);
    println!("fibered:4 rank of C4 is 7");
}
