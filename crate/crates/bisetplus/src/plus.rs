//! The globalization `F₊(G)`: cofixed points of `⊕_{H ≤ G} F(H)` under
//! conjugation. Elements are integer (or rational) combinations of
//! generators `[H, a]_G` with `H ≤ G` and `a` a basis element of `F(H)`,
//! subject to `[H, a]_G = [^gH, ^g a]_G`. Keys are kept canonical: the
//! subgroup-class representative paired with the minimal basis label in its
//! normalizer orbit.
//!
//! For the constant coefficient system this is the Burnside ring of `G`;
//! for `fibered:n` it is the `ℤ/n`-fibered Burnside ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::biset::{elementary, BisetElement, Elementary};
use crate::error::{Error, Result};
use crate::functor::{mult_combos, CoeffFunctor};
use crate::group::{double_cosets_by_keys, GroupHom, PermGroup};
use crate::lattice::{lattice_of, SubgroupLattice};
use crate::product::{group_from_key, ProductSubgroup};
use crate::scalar::Scalar;

/// Canonical generator key: (subgroup-class index in the lattice of the
/// ambient group, normalizer-orbit-minimal basis index of the class
/// representative).
pub type PlusKey = (u32, usize);

/// An element of `F₊(G)` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct PlusElement<S: Scalar> {
    group: PermGroup,
    terms: BTreeMap<PlusKey, S>,
}

impl<S: Scalar> fmt::Debug for PlusElement<S> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "PlusElement(|G|={}, {:?})", self.group.order(), self.terms)
    }
}

impl<S: Scalar> PlusElement<S> {
    pub fn zero(group: &PermGroup) -> Self {
        PlusElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (PlusKey, &S)> {
        self.terms.iter().map(|(&k, s)| (k, s))
    }

    pub fn coeff(&self, key: PlusKey) -> S {
        self.terms.get(&key).cloned().unwrap_or_else(S::zero)
    }

    /// Add `coeff` at an already-canonical key, dropping the term if the
    /// total cancels.
    pub fn add_term(&mut self, key: PlusKey, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let updated = match self.terms.get(&key) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if updated.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, updated);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Incompatible(
                "cannot add elements over different groups".into(),
            ));
        }
        let mut out = self.clone();
        for (k, s) in other.terms() {
            out.add_term(k, s.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.group);
        for (k, s) in self.terms() {
            out.add_term(k, s.neg());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.group);
        for (k, s) in self.terms() {
            out.add_term(k, s.mul(c));
        }
        out
    }
}

/// Transport a basis label along a group isomorphism via the functor's
/// isogation. Isogations permute bases, so the image is a single label.
pub(crate) fn transport_label(f: &dyn CoeffFunctor, hom: &GroupHom, label: usize) -> Result<usize> {
    let graph = ProductSubgroup::graph_of_hom(hom);
    let combo = f.act(&graph, label)?;
    debug_assert_eq!(combo.len(), 1, "isogation must permute the basis");
    debug_assert_eq!(combo[0].1, 1);
    Ok(combo[0].0)
}

/// Conjugation isomorphism between two subgroups of `g` given by member
/// keys: `x ↦ a x a⁻¹` must carry `from_key` onto `to_key`.
pub(crate) fn conjugation_between(
    g: &PermGroup,
    a: u32,
    from_key: &[u32],
    from_group: &PermGroup,
    to_key: &[u32],
    to_group: &PermGroup,
) -> GroupHom {
    let images: Vec<u32> = from_key
        .iter()
        .map(|&m| {
            let c = g.conj_idx(a, m);
            to_key.binary_search(&c).expect("conjugation must map the keys onto each other") as u32
        })
        .collect();
    GroupHom::from_images(from_group.clone(), to_group.clone(), images)
        .expect("conjugation is an isomorphism")
}

/// Canonicalize a generator `[H, b]_G` where `H` is given as lattice entry
/// `entry` of `lat` and `b` indexes `basis(h_group)`. Conjugates to the
/// class representative, transports the label, then minimizes over the
/// normalizer orbit.
pub(crate) fn canonicalize_at_entry(
    f: &dyn CoeffFunctor,
    lat: &SubgroupLattice,
    entry: u32,
    h_group: &PermGroup,
    label: usize,
) -> Result<PlusKey> {
    let g = lat.parent();
    let e = lat.entry(entry);
    let class = e.class();
    let rep_entry = lat.class(class).rep();
    let rep_key = lat.entry(rep_entry).members();
    let rep_group = lat.rep_group(class);
    let at_rep = if entry == rep_entry && h_group == rep_group {
        label
    } else {
        let hom = conjugation_between(
            g,
            e.conjugator_to_rep(),
            e.members(),
            h_group,
            rep_key,
            rep_group,
        );
        transport_label(f, &hom, label)?
    };
    let normalizer = lat.rep_normalizer(class);
    let norm_key = g.member_indices(normalizer).expect("normalizer is a subgroup");
    let mut b = at_rep;
    for &n in &norm_key {
        let hom = conjugation_between(g, n, rep_key, rep_group, rep_key, rep_group);
        let candidate = transport_label(f, &hom, at_rep)?;
        if candidate < b {
            b = candidate;
        }
    }
    Ok((class, b))
}

/// Canonicalize the pair `(H, b)` with `H` a subgroup of `g` (same degree)
/// and `b` a basis index of `F(H)`.
pub fn canonicalize_pair(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
    h: &PermGroup,
    label: usize,
) -> Result<PlusKey> {
    let lat = lattice_of(g);
    let key = g.member_indices(h)?;
    let entry = lat
        .index_of_members(&key)
        .expect("every subgroup appears in the lattice");
    canonicalize_at_entry(f, &lat, entry, h, label)
}

/// The generator `[H, b]_G` as a canonical element.
pub fn plus_generator<S: Scalar>(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
    h: &PermGroup,
    label: usize,
) -> Result<PlusElement<S>> {
    let key = canonicalize_pair(f, g, h, label)?;
    let mut out = PlusElement::zero(g);
    out.add_term(key, S::one());
    Ok(out)
}

/// The generator addressed by a lattice entry index (as printed by the
/// lattice listing) and a basis label of that entry's subgroup.
pub fn plus_generator_at<S: Scalar>(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
    entry: u32,
    label: usize,
) -> Result<PlusElement<S>> {
    let lat = lattice_of(g);
    if entry as usize >= lat.len() {
        return Err(Error::UnknownLabel(format!(
            "subgroup index {entry} out of range (lattice has {} entries)",
            lat.len()
        )));
    }
    let h_group = lat.group_of(entry).clone();
    let key = canonicalize_at_entry(f, &lat, entry, &h_group, label)?;
    let mut out = PlusElement::zero(g);
    out.add_term(key, S::one());
    Ok(out)
}

/// All canonical keys of `F₊(G)`: one per `G`-orbit of pairs `(H, label)`.
/// The number of keys is the rank.
pub fn canonical_basis(f: &dyn CoeffFunctor, g: &PermGroup) -> Result<Vec<PlusKey>> {
    let lat = lattice_of(g);
    let mut keys = Vec::new();
    for class in 0..lat.num_classes() as u32 {
        let rep_entry = lat.class(class).rep();
        let rep_group = lat.rep_group(class).clone();
        let n = f.basis_size(&rep_group)?;
        let mut seen = vec![false; n];
        for b in 0..n {
            let (c2, min_b) = canonicalize_at_entry(f, &lat, rep_entry, &rep_group, b)?;
            debug_assert_eq!(c2, class);
            if !seen[min_b] {
                seen[min_b] = true;
                keys.push((class, min_b));
            }
        }
    }
    Ok(keys)
}

/// Rank of `F₊(G)` as a free module: the number of canonical keys.
pub fn plus_rank(f: &dyn CoeffFunctor, g: &PermGroup) -> Result<usize> {
    Ok(canonical_basis(f, g)?.len())
}

fn require_plus_admissible(f: &dyn CoeffFunctor, u: &BisetElement) -> Result<()> {
    let spec = f.base_spec();
    for (d, _) in u.terms() {
        if !spec.s_plus_member(d)? {
            return Err(Error::InadmissibleClass(format!(
                "class with projections of orders ({}, {}) is not admissible for the globalized action of {}",
                d.p1().len(),
                d.p2().len(),
                f.name()
            )));
        }
    }
    Ok(())
}

/// Action of a formal sum of `(G, H)`-classes on `F₊(H)`:
/// `[G×H/D]·[K,a]_H = Σ_{h ∈ [p₂(D)\H/K]} [D*^hK, F([D*^hK × ^hK / D*Δ(^hK)])(^h a)]_G`.
pub fn plus_act<S: Scalar>(
    f: &dyn CoeffFunctor,
    u: &BisetElement,
    x: &PlusElement<S>,
) -> Result<PlusElement<S>> {
    if x.group != *u.right() {
        return Err(Error::CompositionMismatch(
            "element group does not match the right-hand group of the acting sum".into(),
        ));
    }
    require_plus_admissible(f, u)?;
    let g = u.left();
    let h = u.right();
    let lat_h = lattice_of(h);
    let lat_g = lattice_of(g);
    let mut out = PlusElement::zero(g);
    for ((class, b), s) in x.terms() {
        let k_entry = lat_h.class(class).rep();
        let k_key = lat_h.entry(k_entry).members().to_vec();
        let k_group = lat_h.rep_group(class).clone();
        for (d, m) in u.terms() {
            for t in double_cosets_by_keys(h, d.p2(), &k_key) {
                // ^tK and the transported label
                let mut tk_key: Vec<u32> = k_key.iter().map(|&k| h.conj_idx(t, k)).collect();
                tk_key.sort_unstable();
                let tk_group = group_from_key(h, &tk_key);
                let conj = conjugation_between(h, t, &k_key, &k_group, &tk_key, &tk_group);
                let a_t = transport_label(f, &conj, b)?;
                // D * Δ(^tK) = D ∩ (G × ^tK), acting from ^tK to D*^tK
                let inter = ProductSubgroup::from_trusted_pairs(
                    g.clone(),
                    h.clone(),
                    d.intersect_right(&tk_key),
                );
                let l_key = inter.p1().to_vec();
                let acting = inter.reindexed(&l_key, &tk_key);
                let combo = f.act(&acting, a_t)?;
                if combo.is_empty() {
                    continue;
                }
                let l_entry = lat_g
                    .index_of_members(&l_key)
                    .expect("star product lands in the lattice");
                let l_group = acting.left().clone();
                for (lbl, w) in combo {
                    let key = canonicalize_at_entry(f, &lat_g, l_entry, &l_group, lbl)?;
                    out.add_term(key, s.mul(&S::from_int(m * w)));
                }
            }
        }
    }
    Ok(out)
}

/// Direct implementations of the five elementary specializations of
/// [`plus_act`]. Each matches the general formula (tested) but is computed
/// without double-coset machinery where the formula collapses.
pub fn plus_elementary<S: Scalar>(
    f: &dyn CoeffFunctor,
    e: &Elementary,
    x: &PlusElement<S>,
) -> Result<PlusElement<S>> {
    // the elementary class itself must be admissible for the globalization
    require_plus_admissible(f, &elementary(e)?)?;
    match e {
        Elementary::Iso { iso } => {
            if x.group != *iso.source() {
                return Err(Error::CompositionMismatch(
                    "element group does not match the isomorphism source".into(),
                ));
            }
            let src = iso.source();
            let dst = iso.target();
            let lat_src = lattice_of(src);
            let lat_dst = lattice_of(dst);
            let mut out = PlusElement::zero(dst);
            for ((class, b), s) in x.terms() {
                let k_key = lat_src.entry(lat_src.class(class).rep()).members().to_vec();
                let k_group = lat_src.rep_group(class).clone();
                let mut ak_key: Vec<u32> = k_key.iter().map(|&k| iso.apply_idx(k)).collect();
                ak_key.sort_unstable();
                let ak_group = group_from_key(dst, &ak_key);
                let images: Vec<u32> = k_key
                    .iter()
                    .map(|&k| ak_key.binary_search(&iso.apply_idx(k)).unwrap() as u32)
                    .collect();
                let rest = GroupHom::from_images(k_group.clone(), ak_group.clone(), images)?;
                let b2 = transport_label(f, &rest, b)?;
                let entry = lat_dst.index_of_members(&ak_key).expect("image subgroup in lattice");
                let key = canonicalize_at_entry(f, &lat_dst, entry, &ak_group, b2)?;
                out.add_term(key, s.clone());
            }
            Ok(out)
        }
        Elementary::Res { big, small } => {
            if x.group != *big {
                return Err(Error::CompositionMismatch(
                    "element group does not match the restriction source".into(),
                ));
            }
            let h_key = big.member_indices(small)?;
            let lat_big = lattice_of(big);
            let lat_small = lattice_of(small);
            let mut out = PlusElement::zero(small);
            for ((class, b), s) in x.terms() {
                let k_key = lat_big.entry(lat_big.class(class).rep()).members().to_vec();
                let k_group = lat_big.rep_group(class).clone();
                for t in double_cosets_by_keys(big, &h_key, &k_key) {
                    let mut tk_key: Vec<u32> = k_key.iter().map(|&k| big.conj_idx(t, k)).collect();
                    tk_key.sort_unstable();
                    let tk_group = group_from_key(big, &tk_key);
                    let conj = conjugation_between(big, t, &k_key, &k_group, &tk_key, &tk_group);
                    let a_t = transport_label(f, &conj, b)?;
                    // M = H ∩ ^tK inside the ambient group
                    let m_key: Vec<u32> = h_key
                        .iter()
                        .copied()
                        .filter(|k| tk_key.binary_search(k).is_ok())
                        .collect();
                    let m_group = group_from_key(big, &m_key);
                    // res^{^tK}_M as the class [M × ^tK / Δ(M)]
                    let pairs: Vec<(u32, u32)> = m_key
                        .iter()
                        .enumerate()
                        .map(|(i, &m)| (i as u32, tk_key.binary_search(&m).unwrap() as u32))
                        .collect();
                    let res_class =
                        ProductSubgroup::from_trusted_pairs(m_group.clone(), tk_group.clone(), pairs);
                    let combo = f.act(&res_class, a_t)?;
                    // locate M inside the standalone small group
                    let m_in_small: Vec<u32> = m_key
                        .iter()
                        .map(|&m| {
                            small
                                .index_of(&big.elements()[m as usize])
                                .expect("intersection lies in the subgroup")
                        })
                        .collect();
                    let entry = lat_small
                        .index_of_members(&m_in_small)
                        .expect("intersection subgroup in lattice");
                    for (lbl, w) in combo {
                        let key = canonicalize_at_entry(f, &lat_small, entry, &m_group, lbl)?;
                        out.add_term(key, s.mul(&S::from_int(w)));
                    }
                }
            }
            Ok(out)
        }
        Elementary::Ind { big, small } => {
            if x.group != *small {
                return Err(Error::CompositionMismatch(
                    "element group does not match the induction source".into(),
                ));
            }
            let lat_small = lattice_of(small);
            let lat_big = lattice_of(big);
            let mut out = PlusElement::zero(big);
            for ((class, b), s) in x.terms() {
                let k_key = lat_small.entry(lat_small.class(class).rep()).members().to_vec();
                let k_group = lat_small.rep_group(class).clone();
                let k_in_big: Vec<u32> = k_key
                    .iter()
                    .map(|&k| {
                        big.index_of(&small.elements()[k as usize])
                            .expect("subgroup elements lie in the big group")
                    })
                    .collect();
                let entry = lat_big
                    .index_of_members(&k_in_big)
                    .expect("subgroup appears in the big lattice");
                let key = canonicalize_at_entry(f, &lat_big, entry, &k_group, b)?;
                out.add_term(key, s.clone());
            }
            Ok(out)
        }
        Elementary::Inf { epi } => {
            let g = epi.source();
            let q = epi.target();
            if x.group != *q {
                return Err(Error::CompositionMismatch(
                    "element group does not match the quotient".into(),
                ));
            }
            let lat_q = lattice_of(q);
            let lat_g = lattice_of(g);
            let mut out = PlusElement::zero(g);
            for ((class, b), s) in x.terms() {
                let kq_key = lat_q.entry(lat_q.class(class).rep()).members().to_vec();
                let kq_group = lat_q.rep_group(class).clone();
                // K = full preimage of K̄ in G
                let k_key: Vec<u32> = (0..g.order() as u32)
                    .filter(|&i| kq_key.binary_search(&epi.apply_idx(i)).is_ok())
                    .collect();
                let k_group = group_from_key(g, &k_key);
                // inf^K_{K̄}: transpose of the graph of the restricted epi
                let images: Vec<u32> = k_key
                    .iter()
                    .map(|&i| kq_key.binary_search(&epi.apply_idx(i)).unwrap() as u32)
                    .collect();
                let rest = GroupHom::from_images(k_group.clone(), kq_group.clone(), images)?;
                let inf_class = ProductSubgroup::graph_of_hom(&rest).transpose();
                let combo = f.act(&inf_class, b)?;
                let entry = lat_g.index_of_members(&k_key).expect("preimage subgroup in lattice");
                for (lbl, w) in combo {
                    let key = canonicalize_at_entry(f, &lat_g, entry, &k_group, lbl)?;
                    out.add_term(key, s.mul(&S::from_int(w)));
                }
            }
            Ok(out)
        }
        Elementary::Def { epi } => {
            let g = epi.source();
            let q = epi.target();
            if x.group != *g {
                return Err(Error::CompositionMismatch(
                    "element group does not match the deflation source".into(),
                ));
            }
            let lat_g = lattice_of(g);
            let lat_q = lattice_of(q);
            let mut out = PlusElement::zero(q);
            for ((class, b), s) in x.terms() {
                let k_key = lat_g.entry(lat_g.class(class).rep()).members().to_vec();
                let k_group = lat_g.rep_group(class).clone();
                // KN/N = image of K under the quotient map
                let mut kq_key: Vec<u32> = k_key.iter().map(|&k| epi.apply_idx(k)).collect();
                kq_key.sort_unstable();
                kq_key.dedup();
                let kq_group = group_from_key(q, &kq_key);
                // the class [(KN/N) × K / {(kN, k)}]
                let pairs: Vec<(u32, u32)> = k_key
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| {
                        (kq_key.binary_search(&epi.apply_idx(k)).unwrap() as u32, i as u32)
                    })
                    .collect();
                let def_class =
                    ProductSubgroup::from_trusted_pairs(kq_group.clone(), k_group.clone(), pairs);
                let combo = f.act(&def_class, b)?;
                let entry = lat_q.index_of_members(&kq_key).expect("image subgroup in lattice");
                for (lbl, w) in combo {
                    let key = canonicalize_at_entry(f, &lat_q, entry, &kq_group, lbl)?;
                    out.add_term(key, s.mul(&S::from_int(w)));
                }
            }
            Ok(out)
        }
    }
}

/// The ring unit `[G, 1_{F(G)}]_G`.
pub fn plus_one<S: Scalar>(f: &dyn CoeffFunctor, g: &PermGroup) -> Result<PlusElement<S>> {
    let one = f.value_one(g)?;
    plus_generator(f, g, g, one)
}

/// Green product on `F₊(G)`:
/// `[H,a]·[K,b] = Σ_{t ∈ [H\G/K]} [H∩^tK, res(a)·res(^t b)]_G`.
pub fn plus_mult<S: Scalar>(
    f: &dyn CoeffFunctor,
    x: &PlusElement<S>,
    y: &PlusElement<S>,
) -> Result<PlusElement<S>> {
    if x.group != y.group {
        return Err(Error::Incompatible(
            "cannot multiply elements over different groups".into(),
        ));
    }
    let g = &x.group;
    let lat = lattice_of(g);
    let mut out = PlusElement::zero(g);
    for ((ch, a), sx) in x.terms() {
        let h_key = lat.entry(lat.class(ch).rep()).members().to_vec();
        let h_group = lat.rep_group(ch).clone();
        for ((ck, b), sy) in y.terms() {
            let k_key = lat.entry(lat.class(ck).rep()).members().to_vec();
            let k_group = lat.rep_group(ck).clone();
            for t in double_cosets_by_keys(g, &h_key, &k_key) {
                let mut tk_key: Vec<u32> = k_key.iter().map(|&k| g.conj_idx(t, k)).collect();
                tk_key.sort_unstable();
                let tk_group = group_from_key(g, &tk_key);
                let conj = conjugation_between(g, t, &k_key, &k_group, &tk_key, &tk_group);
                let b_t = transport_label(f, &conj, b)?;
                let m_key: Vec<u32> = h_key
                    .iter()
                    .copied()
                    .filter(|k| tk_key.binary_search(k).is_ok())
                    .collect();
                let m_group = group_from_key(g, &m_key);
                let res_h: Vec<(u32, u32)> = m_key
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| (i as u32, h_key.binary_search(&m).unwrap() as u32))
                    .collect();
                let res_h =
                    ProductSubgroup::from_trusted_pairs(m_group.clone(), h_group.clone(), res_h);
                let ca = f.act(&res_h, a)?;
                let res_k: Vec<(u32, u32)> = m_key
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| (i as u32, tk_key.binary_search(&m).unwrap() as u32))
                    .collect();
                let res_k =
                    ProductSubgroup::from_trusted_pairs(m_group.clone(), tk_group.clone(), res_k);
                let cb = f.act(&res_k, b_t)?;
                let product = mult_combos(f, &m_group, &ca, &cb)?;
                if product.is_empty() {
                    continue;
                }
                let entry = lat.index_of_members(&m_key).expect("intersection in lattice");
                for (lbl, w) in product {
                    let key = canonicalize_at_entry(f, &lat, entry, &m_group, lbl)?;
                    out.add_term(key, sx.mul(&sy.mul(&S::from_int(w))));
                }
            }
        }
    }
    Ok(out)
}

/// Projection `π_G : F₊(G) → F(G)`: keep the `H = G` terms.
pub fn plus_pi<S: Scalar>(
    f: &dyn CoeffFunctor,
    x: &PlusElement<S>,
) -> Result<Vec<(usize, S)>> {
    let lat = lattice_of(&x.group);
    let full_class = lat.entry(lat.len() as u32 - 1).class();
    let _ = f;
    let mut out = Vec::new();
    for ((class, b), s) in x.terms() {
        if class == full_class {
            out.push((b, s.clone()));
        }
    }
    Ok(out)
}

/// Drop the `H = G` terms (the complement of [`plus_pi`] in the
/// decomposition `F₊(G) = F(G) ⊕ F₊^<(G)`).
pub fn plus_below<S: Scalar>(x: &PlusElement<S>) -> PlusElement<S> {
    let lat = lattice_of(&x.group);
    let full_class = lat.entry(lat.len() as u32 - 1).class();
    let mut out = PlusElement::zero(&x.group);
    for ((class, b), s) in x.terms() {
        if class != full_class {
            out.add_term((class, b), s.clone());
        }
    }
    out
}

/// Render in the element-literal syntax `H:label*coeff + …`, with `H` the
/// lattice entry index of the class representative.
pub fn render_literal<S: Scalar>(f: &dyn CoeffFunctor, x: &PlusElement<S>) -> Result<String> {
    if x.is_zero() {
        return Ok("0".into());
    }
    let lat = lattice_of(&x.group);
    let mut parts = Vec::new();
    for ((class, b), s) in x.terms() {
        let rep_entry = lat.class(class).rep();
        let label = f.basis_label(lat.rep_group(class), b)?;
        parts.push(format!("{rep_entry}:{label}*{}", s.render()));
    }
    Ok(parts.join(" + "))
}

/// Parse the element-literal syntax `H:label*coeff + …`. `H` is a lattice
/// entry index of `g` (any entry, not only class representatives); the term
/// is canonicalized. A missing `*coeff` means coefficient 1.
pub fn parse_literal<S: Scalar>(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
    text: &str,
) -> Result<PlusElement<S>> {
    let mut out = PlusElement::zero(g);
    let trimmed = text.trim();
    if trimmed == "0" || trimmed.is_empty() {
        return Ok(out);
    }
    let lat = lattice_of(g);
    for raw in trimmed.split('+') {
        let part = raw.trim();
        if part.is_empty() {
            return Err(Error::Parse(format!("empty term in element literal {text:?}")));
        }
        let (head, coeff_text) = match part.rsplit_once('*') {
            // a trailing `*<int>` is a coefficient; otherwise the `*` belongs
            // to the label (the constant functor's `*` with coefficient 1)
            Some((h, c)) if c.trim().parse::<i64>().is_ok() => (h, c.trim()),
            _ => (part, "1"),
        };
        let coeff: i64 = coeff_text
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {coeff_text:?} in {part:?}")))?;
        let (idx_text, label_text) = head
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("term {part:?} is not of the form H:label*coeff")))?;
        let entry: u32 = idx_text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad subgroup index {idx_text:?} in {part:?}")))?;
        if entry as usize >= lat.len() {
            return Err(Error::UnknownLabel(format!(
                "subgroup index {entry} out of range (lattice has {} entries)",
                lat.len()
            )));
        }
        let h_group = lat.group_of(entry).clone();
        let label = f.parse_label(&h_group, label_text.trim())?;
        let key = canonicalize_at_entry(f, &lat, entry, &h_group, label)?;
        out.add_term(key, S::from_int(coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::mackey_compose;
    use crate::functor::{constant_functor, fibered_functor};
    use crate::group::{preset, quotient_group};
    use crate::lattice::lattice_of;

    fn named(n: &str) -> PermGroup {
        preset(n).unwrap()
    }

    fn subgroup_of_order(g: &PermGroup, n: usize) -> PermGroup {
        let lat = lattice_of(g);
        for i in 0..lat.len() as u32 {
            if lat.entry(i).order() == n {
                return lat.group_of(i).clone();
            }
        }
        panic!("no subgroup of order {n}");
    }

    #[test]
    fn conjugate_pairs_share_a_key() {
        let s3 = named("S3");
        let f = constant_functor();
        let lat = lattice_of(&s3);
        let mut keys = Vec::new();
        for i in 0..lat.len() as u32 {
            if lat.entry(i).order() == 2 {
                let h = lat.group_of(i).clone();
                keys.push(canonicalize_pair(&f, &s3, &h, 0).unwrap());
            }
        }
        assert_eq!(keys.len(), 3);
        assert!(keys.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn canonicalization_is_conjugation_invariant() {
        for f in [fibered_functor(2).unwrap(), fibered_functor(4).unwrap()] {
            for name in ["S3", "D4", "A4"] {
                let g = named(name);
                let lat = lattice_of(&g);
                for i in 0..lat.len() as u32 {
                    let h = lat.group_of(i).clone();
                    let key_i = lat.entry(i).members().to_vec();
                    for b in 0..f.basis_size(&h).unwrap() {
                        let base = canonicalize_pair(&f, &g, &h, b).unwrap();
                        for a in 0..g.order() as u32 {
                            let mut conj_key: Vec<u32> =
                                key_i.iter().map(|&m| g.conj_idx(a, m)).collect();
                            conj_key.sort_unstable();
                            let hg = group_from_key(&g, &conj_key);
                            let hom = conjugation_between(&g, a, &key_i, &h, &conj_key, &hg);
                            let b2 = transport_label(&f, &hom, b).unwrap();
                            assert_eq!(
                                canonicalize_pair(&f, &g, &hg, b2).unwrap(),
                                base,
                                "[^gH, ^gb] must canonicalize like [H, b]"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn swapped_characters_in_a_dihedral_group() {
        // V4 inside the dihedral group of order 8: the normalizer is the
        // whole group and conjugation swaps the two reflections, hence the
        // two characters faithful on exactly one reflection share a key.
        let d8 = named("D4");
        let f = fibered_functor(2).unwrap();
        let lat = lattice_of(&d8);
        let mut v4_entries = Vec::new();
        for i in 0..lat.len() as u32 {
            if lat.entry(i).order() == 4 && lat.group_of(i).elements().iter().all(|p| p.order() <= 2)
            {
                v4_entries.push(i);
            }
        }
        assert!(!v4_entries.is_empty());
        let entry = v4_entries[0];
        let h = lat.group_of(entry).clone();
        assert_eq!(f.basis_size(&h).unwrap(), 4);
        let mut keys: Vec<PlusKey> = (0..4)
            .map(|b| canonicalize_pair(&f, &d8, &h, b).unwrap())
            .collect();
        keys.sort_unstable();
        keys.dedup();
        assert!(
            keys.len() < 4,
            "some character pair must be identified by the normalizer"
        );
    }

    #[test]
    fn burnside_rank_counts_subgroup_classes() {
        let f = constant_functor();
        for (name, classes) in [("S3", 4usize), ("V4", 5), ("A4", 5), ("S4", 11)] {
            let g = named(name);
            assert_eq!(plus_rank(&f, &g).unwrap(), classes);
            assert_eq!(lattice_of(&g).num_classes(), classes);
        }
    }

    #[test]
    fn fibered_rank_on_c2() {
        let f = fibered_functor(2).unwrap();
        let c2 = named("C2");
        assert_eq!(plus_rank(&f, &c2).unwrap(), 3);
    }

    #[test]
    fn burnside_square_of_index_three_point_set() {
        // [S3/C2]² = [S3/C2] + [S3/1]
        let s3 = named("S3");
        let f = constant_functor();
        let c2 = subgroup_of_order(&s3, 2);
        let x: PlusElement<i64> = plus_generator(&f, &s3, &c2, 0).unwrap();
        let sq = plus_mult(&f, &x, &sq_helper(&x)).unwrap();
        let trivial = subgroup_of_order(&s3, 1);
        let lin: PlusElement<i64> = plus_generator(&f, &s3, &trivial, 0).unwrap();
        assert_eq!(sq, x.add(&lin).unwrap());
    }

    fn sq_helper<S: Scalar>(x: &PlusElement<S>) -> PlusElement<S> {
        x.clone()
    }

    #[test]
    fn fibered_square_over_c2() {
        let c2 = named("C2");
        let f = fibered_functor(2).unwrap();
        let trivial = subgroup_of_order(&c2, 1);
        let x: PlusElement<i64> = plus_generator(&f, &c2, &trivial, 0).unwrap();
        let sq = plus_mult(&f, &x, &x).unwrap();
        assert_eq!(sq, x.scale(&2));
    }

    #[test]
    fn unit_laws() {
        let s3 = named("S3");
        for f in [fibered_functor(1).unwrap(), fibered_functor(2).unwrap()] {
            let one: PlusElement<i64> = plus_one(&f, &s3).unwrap();
            for key in canonical_basis(&f, &s3).unwrap() {
                let mut x: PlusElement<i64> = PlusElement::zero(&s3);
                x.add_term(key, 3);
                assert_eq!(plus_mult(&f, &one, &x).unwrap(), x);
                assert_eq!(plus_mult(&f, &x, &one).unwrap(), x);
            }
        }
    }

    #[test]
    fn multiplication_is_commutative_and_associative() {
        let s3 = named("S3");
        let f = fibered_functor(2).unwrap();
        let basis = canonical_basis(&f, &s3).unwrap();
        let gens: Vec<PlusElement<i64>> = basis
            .iter()
            .map(|&k| {
                let mut x = PlusElement::zero(&s3);
                x.add_term(k, 1);
                x
            })
            .collect();
        for x in &gens {
            for y in &gens {
                let xy = plus_mult(&f, x, y).unwrap();
                let yx = plus_mult(&f, y, x).unwrap();
                assert_eq!(xy, yx);
                for z in &gens {
                    let xy_z = plus_mult(&f, &xy, z).unwrap();
                    let x_yz = plus_mult(&f, x, &plus_mult(&f, y, z).unwrap()).unwrap();
                    assert_eq!(xy_z, x_yz);
                }
            }
        }
    }

    #[test]
    fn induction_relabels_the_ambient_group() {
        // ind^{S3}_{C2} of [C2, ∗]_{C2} = [C2, ∗]_{S3}
        let s3 = named("S3");
        let f = constant_functor();
        let c2 = subgroup_of_order(&s3, 2);
        let x: PlusElement<i64> = plus_generator(&f, &c2, &c2, 0).unwrap();
        let ind = Elementary::Ind {
            big: s3.clone(),
            small: c2.clone(),
        };
        let y = plus_elementary(&f, &ind, &x).unwrap();
        assert_eq!(y, plus_generator(&f, &s3, &c2, 0).unwrap());
        let via_act = plus_act(&f, &elementary(&ind).unwrap(), &x).unwrap();
        assert_eq!(via_act, y);
    }

    #[test]
    fn restriction_of_an_order_three_class() {
        // res^{S3}_{C2} of [C3, ∗]_{S3} = [1, ∗]_{C2}
        let s3 = named("S3");
        let f = constant_functor();
        let c2 = subgroup_of_order(&s3, 2);
        let c3 = subgroup_of_order(&s3, 3);
        let x: PlusElement<i64> = plus_generator(&f, &s3, &c3, 0).unwrap();
        let res = Elementary::Res {
            big: s3.clone(),
            small: c2.clone(),
        };
        let y = plus_elementary(&f, &res, &x).unwrap();
        let trivial_in_c2 = subgroup_of_order(&c2, 1);
        assert_eq!(y, plus_generator(&f, &c2, &trivial_in_c2, 0).unwrap());
        assert_eq!(plus_act(&f, &elementary(&res).unwrap(), &x).unwrap(), y);
    }

    #[test]
    fn deflation_collapses_a_reflection_to_the_quotient() {
        // def^{S3}_{S3/A3} of [C2, ∗]_{S3} = [S3/A3, ∗] (C2·A3 = S3)
        let s3 = named("S3");
        let f = constant_functor();
        let a3 = subgroup_of_order(&s3, 3);
        let (q, epi) = quotient_group(&s3, &a3).unwrap();
        let c2 = subgroup_of_order(&s3, 2);
        let x: PlusElement<i64> = plus_generator(&f, &s3, &c2, 0).unwrap();
        let def = Elementary::Def { epi: epi.clone() };
        let y = plus_elementary(&f, &def, &x).unwrap();
        assert_eq!(y, plus_generator(&f, &q, &q, 0).unwrap());
        assert_eq!(plus_act(&f, &elementary(&def).unwrap(), &x).unwrap(), y);
    }

    #[test]
    fn inflation_pulls_back_to_the_preimage() {
        // inf^{C4}_{C4/C2} of [Q, b]_{Q} = [preimage, inf(b)]_{C4}
        let c4 = named("C4");
        let f = fibered_functor(4).unwrap();
        let c2 = subgroup_of_order(&c4, 2);
        let (q, epi) = quotient_group(&c4, &c2).unwrap();
        let inf = Elementary::Inf { epi: epi.clone() };
        for b in 0..f.basis_size(&q).unwrap() {
            let x: PlusElement<i64> = plus_generator(&f, &q, &q, b).unwrap();
            let y = plus_elementary(&f, &inf, &x).unwrap();
            assert_eq!(y.num_terms(), 1);
            let ((class, _), _) = y.terms().next().unwrap();
            let lat = lattice_of(&c4);
            assert_eq!(lat.rep_group(class).order(), 4, "preimage of the full quotient is C4");
            assert_eq!(plus_act(&f, &elementary(&inf).unwrap(), &x).unwrap(), y);
        }
    }

    #[test]
    fn elementary_forms_agree_with_the_general_action() {
        use crate::group::conjugation_hom;
        let s3 = named("S3");
        let d8 = named("D4");
        for f in [fibered_functor(1).unwrap(), fibered_functor(2).unwrap()] {
            for g in [&s3, &d8] {
                let lat = lattice_of(g);
                let mut elems: Vec<Elementary> = Vec::new();
                for c in 0..lat.num_classes() as u32 {
                    let h = lat.rep_group(c).clone();
                    elems.push(Elementary::Res {
                        big: g.clone(),
                        small: h.clone(),
                    });
                    elems.push(Elementary::Ind {
                        big: g.clone(),
                        small: h.clone(),
                    });
                    if g.has_subgroup(&h) && h.order() > 1 {
                        let hk = g.member_indices(&h).unwrap();
                        if hk.iter().all(|&m| {
                            (0..g.order() as u32)
                                .all(|a| hk.binary_search(&g.conj_idx(a, m)).is_ok())
                        }) {
                            let (_, epi) = quotient_group(g, &h).unwrap();
                            elems.push(Elementary::Inf { epi: epi.clone() });
                            elems.push(Elementary::Def { epi });
                        }
                    }
                }
                elems.push(Elementary::Iso {
                    iso: conjugation_hom(&g.elements()[1].clone(), g),
                });
                for e in &elems {
                    let u = elementary(e).unwrap();
                    let source = u.right().clone();
                    for key in canonical_basis(&f, &source).unwrap() {
                        let mut x: PlusElement<i64> = PlusElement::zero(&source);
                        x.add_term(key, 1);
                        let direct = plus_elementary(&f, e, &x).unwrap();
                        let general = plus_act(&f, &u, &x).unwrap();
                        assert_eq!(direct, general, "mismatch for {e:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn action_respects_composition_on_a_small_pair() {
        let s3 = named("S3");
        let c2 = subgroup_of_order(&s3, 2);
        let f = fibered_functor(2).unwrap();
        let res = elementary(&Elementary::Res {
            big: s3.clone(),
            small: c2.clone(),
        })
        .unwrap();
        let ind = elementary(&Elementary::Ind {
            big: s3.clone(),
            small: c2.clone(),
        })
        .unwrap();
        // res ∘ ind : F₊(S3) → F₊(S3) composed against the Mackey product
        let composed = mackey_compose(&ind, &res).unwrap();
        for key in canonical_basis(&f, &s3).unwrap() {
            let mut x: PlusElement<i64> = PlusElement::zero(&s3);
            x.add_term(key, 1);
            let stepwise = plus_act(&f, &ind, &plus_act(&f, &res, &x).unwrap()).unwrap();
            let direct = plus_act(&f, &composed, &x).unwrap();
            assert_eq!(stepwise, direct);
        }
    }

    #[test]
    fn identity_acts_trivially() {
        let s3 = named("S3");
        for f in [fibered_functor(1).unwrap(), fibered_functor(3).unwrap()] {
            let id = BisetElement::identity(&s3);
            for key in canonical_basis(&f, &s3).unwrap() {
                let mut x: PlusElement<i64> = PlusElement::zero(&s3);
                x.add_term(key, 2);
                assert_eq!(plus_act(&f, &id, &x).unwrap(), x);
            }
        }
    }

    #[test]
    fn projection_keeps_only_full_group_terms() {
        let s3 = named("S3");
        let f = constant_functor();
        let c2 = subgroup_of_order(&s3, 2);
        let below: PlusElement<i64> = plus_generator(&f, &s3, &c2, 0).unwrap();
        let top: PlusElement<i64> = plus_one(&f, &s3).unwrap();
        let x = below.add(&top.scale(&5)).unwrap();
        let pi = plus_pi(&f, &x).unwrap();
        assert_eq!(pi, vec![(0, 5)]);
        assert_eq!(plus_pi(&f, &below).unwrap(), vec![]);
        // decomposition: x = [G, π(x)] + (terms below G)
        let mut rebuilt = plus_below(&x);
        for (b, c) in pi {
            let gen: PlusElement<i64> = plus_generator(&f, &s3, &s3, b).unwrap();
            rebuilt = rebuilt.add(&gen.scale(&c)).unwrap();
        }
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn literal_round_trip() {
        let s3 = named("S3");
        for f in [fibered_functor(1).unwrap(), fibered_functor(2).unwrap()] {
            for key in canonical_basis(&f, &s3).unwrap() {
                let mut x: PlusElement<i64> = PlusElement::zero(&s3);
                x.add_term(key, -2);
                let text = render_literal(&f, &x).unwrap();
                let back: PlusElement<i64> = parse_literal(&f, &s3, &text).unwrap();
                assert_eq!(back, x);
            }
        }
        let f = constant_functor();
        let x: PlusElement<i64> = parse_literal(&f, &s3, "1:* + 1:**2").unwrap();
        assert_eq!(x.terms().next().unwrap().1, &3);
        assert!(parse_literal::<i64>(&f, &s3, "99:*").is_err());
        assert!(parse_literal::<i64>(&f, &s3, "nope").is_err());
    }
}
