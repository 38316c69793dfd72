//! Compose standard biset classes two ways and check they agree:
//! the double-coset (Mackey) formula against literal orbit counting on
//! realized bisets.

use bisetplus::biset::{mackey_compose, standard_basis, BisetElement};
use bisetplus::concrete::tensor_oracle;
use bisetplus::group::preset;

fn main() {
    let s3 = preset("S3").unwrap();
    let c4 = preset("C4").unwrap();

    let left_classes = standard_basis(&s3, &c4); // B(S3, C4)
    let right_classes = standard_basis(&c4, &s3); // B(C4, S3)
    println!(
        "B(S3, C4) has {} standard classes, B(C4, S3) has {}",
        left_classes.len(),
        right_classes.len()
    );

    let mut checked = 0usize;
    for d in &left_classes {
        for e in &right_classes {
            let x = BisetElement::from_class(d);
            let y = BisetElement::from_class(e);

            // Double-coset formula.
            let fast = mackey_compose(&x, &y).unwrap();

            // Oracle: build the actual (S3, C4)- and (C4, S3)-sets, form the
            // tensor product over C4, and classify its orbits by stabilizer.
            let slow = tensor_oracle(d, e).unwrap();

            assert_eq!(fast, slow, "composition mismatch");
            checked += 1;
        }
    }
    println!("checked {checked} compositions exactly");

    // A classical identity: res then ind along C2 <= S3 expands as a sum
    // with |C2\\S3/C2| terms.
    use bisetplus::biset::{elementary, Elementary};
    use bisetplus::lattice::lattice_of;
    let c2 = lattice_of(&s3).group_of(1).clone();
    let res = elementary(&Elementary::Res { big: s3.clone(), small: c2.clone() }).unwrap();
    let ind = elementary(&Elementary::Ind { big: s3.clone(), small: c2.clone() }).unwrap();
    let res_ind = mackey_compose(&res, &ind).unwrap();
    // C2\S3/C2 has two double cosets, so res . ind = [C2xC2/diag] + [C2xC2/1'].
    assert_eq!(res_ind.num_terms(), 2);
    println!("res . ind over C2 <= S3 splits into {} classes", res_ind.num_terms());
}
