//! The constant-coefficient plus-construction on a group G is its Burnside
//! ring: generators are conjugacy classes of subgroups, multiplication is
//! the double-coset product of transitive G-sets.

use bisetplus::functor::constant_functor;
use bisetplus::group::preset;
use bisetplus::lattice::lattice_of;
use bisetplus::plus::{plus_generator_at, plus_mult, plus_one, plus_rank, PlusElement};

fn main() {
    let s3 = preset("S3").unwrap();
    let f = constant_functor();

    // Rank = number of subgroup classes: 1, C2, C3, S3.
    assert_eq!(plus_rank(&f, &s3).unwrap(), 4);

    let lat = lattice_of(&s3);
    let one: PlusElement<i64> = plus_one(&f, &s3).unwrap();
    let c2: PlusElement<i64> = plus_generator_at(&f, &s3, 1, 0).unwrap(); // [S3/C2]
    let c3: PlusElement<i64> = plus_generator_at(&f, &s3, 4, 0).unwrap(); // [S3/C3]
    let pt: PlusElement<i64> = plus_generator_at(&f, &s3, 0, 0).unwrap(); // [S3/1]

    // The unit is the one-point set [S3/S3].
    assert_eq!(plus_mult(&f, &one, &c2).unwrap(), c2);

    // [S3/C2] x [S3/C3] is a free orbit: point stabilizers intersect
    // conjugates of C2 with conjugates of C3, which meet trivially.
    let product = plus_mult(&f, &c2, &c3).unwrap();
    assert_eq!(product, pt);
    println!("[S3/C2] * [S3/C3] = [S3/1]");

    // [S3/C2] x [S3/C2] has 9 points: a 3-point orbit with stabilizer a
    // conjugate of C2, and a free 6-point orbit.
    let square = plus_mult(&f, &c2, &c2).unwrap();
    let expected = c2.add(&pt).unwrap();
    assert_eq!(square, expected);
    println!("[S3/C2]^2 = [S3/C2] + [S3/1]");

    // [S3/C3] x [S3/C3] = [S3/C3] + [S3/C3]: C3 is normal, both orbits keep
    // a C3 stabilizer.
    let c3_square = plus_mult(&f, &c3, &c3).unwrap();
    assert_eq!(c3_square, c3.scale(&2));
    println!("[S3/C3]^2 = 2[S3/C3]");

    // Multiplication is commutative and associative on the whole basis.
    let gens = [&one, &c2, &c3, &pt];
    for a in gens {
        for b in gens {
            assert_eq!(
                plus_mult(&f, a, b).unwrap(),
                plus_mult(&f, b, a).unwrap()
            );
            for c in gens {
                let left = plus_mult(&f, &plus_mult(&f, a, b).unwrap(), c).unwrap();
                let right = plus_mult(&f, a, &plus_mult(&f, b, c).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
    println!(
        "Burnside ring of S3 verified on all {} basis pairs (lattice has {} entries)",
        gens.len() * gens.len(),
        lat.len()
    );
}
