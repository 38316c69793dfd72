//! Bisets act on ghost tuples componentwise through twisted fixed points.
//! The action matches the mark morphism for every right-free biset — and
//! provably cannot for deflations, which is demonstrated, not hidden.

use bisetplus::biset::{elementary, Elementary};
use bisetplus::error::Error;
use bisetplus::functor::constant_functor;
use bisetplus::ghost::{ghost_act, ghost_act_raw, GhostElement};
use bisetplus::group::{preset, quotient_group};
use bisetplus::lattice::lattice_of;
use bisetplus::mark::mark;
use bisetplus::plus::{plus_act, plus_generator_at, PlusElement};

fn main() {
    let f = constant_functor();
    let c3 = preset("C3").unwrap();
    let s3 = preset("S3").unwrap();

    // Induction C3 -> S3 on ghost tuples.
    let ind = elementary(&Elementary::Ind {
        big: s3.clone(),
        small: lattice_of(&s3).group_of(4).clone(),
    })
    .unwrap();

    // A ghost tuple over the order-3 subgroup: components (5, 9).
    let y = GhostElement::from_components(&f, ind.right(), vec![vec![5], vec![9]]).unwrap();
    let image = ghost_act(&f, &ind, &y).unwrap();
    let got: Vec<i64> = (0..4).map(|c| image.component(c)[0]).collect();
    assert_eq!(got, vec![10, 0, 18, 0]);
    println!("induction sends (5, 9) over C3 to {got:?} over S3");
    assert_eq!(c3.order(), 3);

    // Restriction is right-free too, and the square mark . act = act . mark
    // commutes for it.
    let res = elementary(&Elementary::Res {
        big: s3.clone(),
        small: lattice_of(&s3).group_of(1).clone(),
    })
    .unwrap();
    let x: PlusElement<i64> = plus_generator_at(&f, &s3, 4, 0).unwrap();
    let top = ghost_act(&f, &res, &mark(&f, &x).unwrap()).unwrap();
    let bottom = mark(&f, &plus_act(&f, &res, &x).unwrap()).unwrap();
    assert_eq!(top, bottom);
    println!("mark commutes with restriction along C2 <= S3");

    // Deflation C4 -> C4/C2 is NOT right-free; the checked entry point
    // refuses it outright.
    let c4 = preset("C4").unwrap();
    let n = lattice_of(&c4).group_of(1).clone();
    let (_, epi) = quotient_group(&c4, &n).unwrap();
    let def = elementary(&Elementary::Def { epi }).unwrap();
    let over_c4: PlusElement<i64> = plus_generator_at(&f, &c4, 0, 0).unwrap();
    let marked = mark(&f, &over_c4).unwrap();
    match ghost_act(&f, &def, &marked) {
        Err(Error::RightActionNotFree(_)) => println!("checked ghost action rejects deflation"),
        other => panic!("expected a right-freeness error, got {other:?}"),
    }

    // Evaluating the raw formula anyway shows why: it disagrees with the
    // mark of the (perfectly well-defined) deflation on the plus side.
    let raw = ghost_act_raw(&f, &def, &marked).unwrap();
    let natural = mark(&f, &plus_act(&f, &def, &over_c4).unwrap()).unwrap();
    assert_eq!(natural.component(0), &[2][..]);
    assert_eq!(natural.component(1), &[0][..]);
    assert_eq!(raw.component(0), &[0][..]);
    assert_ne!(raw, natural);
    println!(
        "deflating [1,*] of C4: raw formula gives ({}, {}), the mark of the deflation is ({}, {})",
        raw.component(0)[0],
        raw.component(1)[0],
        natural.component(0)[0],
        natural.component(1)[0]
    );
}
