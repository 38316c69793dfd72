//! Every element type has a versioned JSON form that round-trips exactly:
//! groups travel as generator descriptors, subgroups as generator lists,
//! so a payload can be read back without any shared context.

use bisetplus::biset::{elementary, mackey_compose, Elementary};
use bisetplus::functor::{constant_functor, fibered_functor};
use bisetplus::ghost::GhostElement;
use bisetplus::group::preset;
use bisetplus::json::{
    biset_from_json, biset_to_json, ghost_from_json, ghost_to_json, plus_from_json, plus_to_json,
};
use bisetplus::lattice::lattice_of;
use bisetplus::mark::mark;
use bisetplus::plus::{plus_generator_at, plus_one, PlusElement};

fn main() {
    // A biset element with two differently-shaped classes.
    let s3 = preset("S3").unwrap();
    let c2 = lattice_of(&s3).group_of(1).clone();
    let res = elementary(&Elementary::Res { big: s3.clone(), small: c2.clone() }).unwrap();
    let ind = elementary(&Elementary::Ind { big: s3.clone(), small: c2 }).unwrap();
    let x = mackey_compose(&res, &ind).unwrap().scale(2);
    let payload = biset_to_json(&x).unwrap();
    assert_eq!(payload["schema"], "bisetplus/1");
    let back = biset_from_json(&payload).unwrap();
    assert_eq!(back, x);
    println!("biset payload: {payload}");

    // A plus element with mixed coefficients, fibered labels included.
    let c4 = preset("C4").unwrap();
    let f2 = fibered_functor(2).unwrap();
    let top = lattice_of(&c4).len() as u32 - 1;
    let y: PlusElement<i64> = plus_generator_at(&f2, &c4, top, 1)
        .unwrap()
        .scale(&-3)
        .add(&plus_generator_at(&f2, &c4, 0, 0).unwrap())
        .unwrap();
    let payload = plus_to_json(&f2, &y).unwrap();
    assert_eq!(plus_from_json(&f2, &payload).unwrap(), y);
    println!("plus payload: {payload}");

    // A ghost tuple: the mark of the unit (all ones).
    let f = constant_functor();
    let unit_mark = mark(&f, &plus_one::<i64>(&f, &s3).unwrap()).unwrap();
    assert_eq!(unit_mark, GhostElement::unit(&f, &s3).unwrap());
    let payload = ghost_to_json(&f, &unit_mark).unwrap();
    assert_eq!(ghost_from_json(&f, &payload).unwrap(), unit_mark);
    println!("ghost payload: {payload}");

    // Tampered payloads are rejected, not silently reinterpreted.
    let mut wrong = payload.clone();
    wrong["functor"] = serde_json::json!("fibered:2");
    assert!(ghost_from_json(&f, &wrong).is_err());
    println!("mismatched functor tag rejected");
}
