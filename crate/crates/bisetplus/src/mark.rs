//! The mark morphism `m : F₊(G) → F⁺(G)` and its Möbius quasi-inverse
//! `n : F⁺(G) → F₊(G)`.
//!
//! The component of `m([K, a]_G)` at a subgroup `L` is the sum of
//! `F(res^{^gK}_L)(^g a)` over the cosets `gK ∈ G/K` whose conjugate `^gK`
//! contains `L`; for the constant coefficient system this is the classical
//! mark homomorphism of the Burnside ring (counting `L`-fixed points). The
//! quasi-inverse expands a fixed tuple over the whole subgroup lattice and
//! resums it against the Möbius function, so that over the integers
//!
//! `n ∘ m = m ∘ n = |G| · id`
//!
//! holds exactly, and over the rationals `m` and `|G|⁻¹ n` are mutually
//! inverse isomorphisms.

use crate::error::Result;
use crate::functor::CoeffFunctor;
use crate::ghost::{component_at_entry, GhostElement};
use crate::group::{left_cosets_by_keys, PermGroup};
use crate::lattice::lattice_of;
use crate::plus::{
    canonicalize_at_entry, conjugation_between, plus_generator_at, transport_label, PlusElement,
};
use crate::product::{group_from_key, ProductSubgroup};
use crate::scalar::Scalar;

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// The restriction class `[L × K / Δ(L)]` for `L ≤ K`, with both groups
/// standalone and `l_key`, `k_key` their sorted ambient member keys.
fn restriction_class(
    l_group: &PermGroup,
    l_key: &[u32],
    k_group: &PermGroup,
    k_key: &[u32],
) -> ProductSubgroup {
    let pairs: Vec<(u32, u32)> = l_key
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let j = k_key.binary_search(l).expect("L is contained in K");
            (i as u32, j as u32)
        })
        .collect();
    ProductSubgroup::from_trusted_pairs(l_group.clone(), k_group.clone(), pairs)
}

/// The mark morphism. The `L`-component of the image of `[K, a]_G` is
/// `Σ_{gK ∈ G/K, L ≤ ^gK} F(res^{^gK}_L)(^g a)`.
pub fn mark<S: Scalar>(f: &dyn CoeffFunctor, x: &PlusElement<S>) -> Result<GhostElement<S>> {
    let g = x.group();
    let lat = lattice_of(g);
    let mut comps: Vec<Vec<S>> = Vec::with_capacity(lat.num_classes());
    for c in 0..lat.num_classes() as u32 {
        comps.push(vec![S::zero(); f.basis_size(lat.rep_group(c))?]);
    }
    for ((kc, label), s) in x.terms() {
        let k_entry = lat.class(kc).rep();
        let k_key = lat.entry(k_entry).members().to_vec();
        let k_group = lat.rep_group(kc).clone();
        for a in left_cosets_by_keys(g, &k_key) {
            let mut gk_key: Vec<u32> = k_key.iter().map(|&k| g.conj_idx(a, k)).collect();
            gk_key.sort_unstable();
            let gk_group = group_from_key(g, &gk_key);
            let hom = conjugation_between(g, a, &k_key, &k_group, &gk_key, &gk_group);
            let moved = transport_label(f, &hom, label)?;
            for c in 0..lat.num_classes() as u32 {
                let l_key = lat.entry(lat.class(c).rep()).members();
                if !is_subset(l_key, &gk_key) {
                    continue;
                }
                let res = restriction_class(lat.rep_group(c), l_key, &gk_group, &gk_key);
                for (lbl, w) in f.act(&res, moved)? {
                    let target = &mut comps[c as usize][lbl];
                    *target = target.add(&s.mul(&S::from_int(w)));
                }
            }
        }
    }
    GhostElement::from_components(f, g, comps)
}

/// The Möbius quasi-inverse of the mark morphism:
/// `n(y) = Σ_{L ≤ K} |L| μ(L, K) [L, F(res^K_L)(y_K)]_G`, the sum running
/// over ordered pairs of entries of the full subgroup lattice with `y`
/// expanded from class representatives to every entry.
pub fn mobius_inverse<S: Scalar>(
    f: &dyn CoeffFunctor,
    y: &GhostElement<S>,
) -> Result<PlusElement<S>> {
    let g = y.group().clone();
    let lat = lattice_of(&g);
    let mut out = PlusElement::zero(&g);
    for k in 0..lat.len() as u32 {
        let y_k = component_at_entry(f, &lat, y, k)?;
        if y_k.iter().all(|s| s.is_zero()) {
            continue;
        }
        let k_key = lat.entry(k).members();
        let k_group = lat.group_of(k);
        // inclusion implies the index is not larger (entries sort by order)
        for l in 0..=k {
            let mu = lat.mobius(l, k);
            if mu == 0 {
                continue;
            }
            let l_key = lat.entry(l).members();
            let l_group = lat.group_of(l);
            let weight = l_key.len() as i64 * mu;
            let res = restriction_class(l_group, l_key, k_group, k_key);
            for (b, s) in y_k.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                for (lbl, w) in f.act(&res, b)? {
                    let key = canonicalize_at_entry(f, &lat, l, l_group, lbl)?;
                    out.add_term(key, s.mul(&S::from_int(weight * w)));
                }
            }
        }
    }
    Ok(out)
}

/// The table of marks of `g`: rows and columns indexed by subgroup classes
/// in lattice order, the `(K, L)` entry counting the `L`-fixed points of
/// `G/K`. Lower triangular, with diagonal entry `[N_G(K) : K]`.
pub fn marks_table(g: &PermGroup) -> Result<Vec<Vec<i64>>> {
    let f = crate::functor::constant_functor();
    let lat = lattice_of(g);
    let mut rows = Vec::with_capacity(lat.num_classes());
    for c in 0..lat.num_classes() as u32 {
        let x: PlusElement<i64> = plus_generator_at(&f, g, lat.class(c).rep(), 0)?;
        let m = mark(&f, &x)?;
        rows.push(
            (0..lat.num_classes() as u32)
                .map(|d| m.component(d)[0])
                .collect(),
        );
    }
    Ok(rows)
}
