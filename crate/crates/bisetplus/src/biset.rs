//! The double Burnside group `B(G, H)`: free abelian on conjugacy classes of
//! subgroups of `G × H`, with Mackey composition
//!
//! ```text
//! [G×H/D] · [H×K/E]  =  Σ_{t ∈ [p₂(D) \ H / p₁(E)]}  [G×K / (D * ^{(t,1)}E)]
//! ```
//!
//! and the decomposition of an arbitrary standard class into the five
//! elementary factors (induction, inflation, transport, deflation,
//! restriction) through its Goursat data.

use crate::error::{Error, Result};
use crate::group::{
    double_cosets_by_keys, inclusion_hom, quotient_group, GroupHom, HomKind, PermGroup,
};
use crate::lattice::lattice_of;
use crate::product::ProductSubgroup;
use std::collections::BTreeMap;

/// An element of `B(G, H)`: an integer combination of standard classes
/// `[G×H/D]`, keyed by the canonical pair list of the class of `D`.
#[derive(Clone)]
pub struct BisetElement {
    left: PermGroup,
    right: PermGroup,
    terms: BTreeMap<Vec<(u32, u32)>, (ProductSubgroup, i64)>,
}

impl std::fmt::Debug for BisetElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BisetElement[{}×{}; ", self.left.order(), self.right.order())?;
        let mut first = true;
        for (rep, coeff) in self.terms.values() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·[|D|={}]", coeff, rep.order())?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for BisetElement {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left
            && self.right == other.right
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((ka, (_, ca)), (kb, (_, cb)))| ka == kb && ca == cb)
    }
}

impl Eq for BisetElement {}

impl BisetElement {
    pub fn zero(left: &PermGroup, right: &PermGroup) -> Self {
        BisetElement {
            left: left.clone(),
            right: right.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The standard class `[G×H/D]` with coefficient 1.
    pub fn from_class(d: &ProductSubgroup) -> Self {
        let mut out = Self::zero(d.left(), d.right());
        out.add_class(d, 1);
        out
    }

    /// The identity `[G×G/Δ(G)]` of `B(G, G)`.
    pub fn identity(g: &PermGroup) -> Self {
        let all: Vec<u32> = (0..g.order() as u32).collect();
        Self::from_class(&ProductSubgroup::diagonal(g, g, &all, &all))
    }

    pub fn left(&self) -> &PermGroup {
        &self.left
    }

    pub fn right(&self) -> &PermGroup {
        &self.right
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Canonical class representatives with their coefficients, in canonical
    /// key order.
    pub fn terms(&self) -> impl Iterator<Item = (&ProductSubgroup, i64)> {
        self.terms.values().map(|(d, c)| (d, *c))
    }

    /// Add `coeff · [G×H/D]`, canonicalizing the class of `D`.
    pub fn add_class(&mut self, d: &ProductSubgroup, coeff: i64) {
        debug_assert!(d.left() == &self.left && d.right() == &self.right);
        if coeff == 0 {
            return;
        }
        let key = d.canonical_pairs();
        match self.terms.get_mut(&key) {
            Some((_, c)) => {
                *c += coeff;
                if *c == 0 {
                    self.terms.remove(&key);
                }
            }
            None => {
                let rep = ProductSubgroup::from_trusted_pairs(
                    self.left.clone(),
                    self.right.clone(),
                    key.clone(),
                );
                self.terms.insert(key, (rep, coeff));
            }
        }
    }

    /// Coefficient of the class of `D`.
    pub fn coeff_of(&self, d: &ProductSubgroup) -> i64 {
        let key = d.canonical_pairs();
        self.terms.get(&key).map(|&(_, c)| c).unwrap_or(0)
    }

    pub fn add(&self, other: &BisetElement) -> Result<BisetElement> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::CompositionMismatch(
                "cannot add elements of different double Burnside groups".into(),
            ));
        }
        let mut out = self.clone();
        for (key, (rep, c)) in &other.terms {
            match out.terms.get_mut(key) {
                Some((_, oc)) => {
                    *oc += c;
                    if *oc == 0 {
                        out.terms.remove(key);
                    }
                }
                None => {
                    out.terms.insert(key.clone(), (rep.clone(), *c));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> BisetElement {
        if s == 0 {
            return Self::zero(&self.left, &self.right);
        }
        let mut out = self.clone();
        for (_, c) in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn neg(&self) -> BisetElement {
        self.scale(-1)
    }

    pub fn sub(&self, other: &BisetElement) -> Result<BisetElement> {
        self.add(&other.neg())
    }
}

/// Canonical representatives of all conjugacy classes of subgroups of
/// `G × H` — the standard basis of `B(G, H)` — in canonical order.
pub fn standard_basis(g: &PermGroup, h: &PermGroup) -> Vec<ProductSubgroup> {
    let ambient = crate::product::product_of(g, h);
    let lat = lattice_of(ambient.group());
    let order_r = h.order() as u32;
    (0..lat.num_classes() as u32)
        .map(|c| {
            let rep = lat.class(c).rep();
            let pairs: Vec<(u32, u32)> = lat
                .entry(rep)
                .members()
                .iter()
                .map(|&m| (m / order_r, m % order_r))
                .collect();
            ProductSubgroup::from_trusted_pairs(g.clone(), h.clone(), pairs)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Elementary classes
// ---------------------------------------------------------------------------

/// The five elementary biset classes.
#[derive(Clone, Debug)]
pub enum Elementary {
    /// `res^G_H = [H×G/Δ(H)] ∈ B(H, G)` for `H ≤ G`.
    Res { big: PermGroup, small: PermGroup },
    /// `ind^G_H = [G×H/Δ(H)] ∈ B(G, H)` for `H ≤ G`.
    Ind { big: PermGroup, small: PermGroup },
    /// `inf^G_{G/N} = [G×(G/N)/{(g, gN)}] ∈ B(G, G/N)`, given the quotient
    /// projection `G → G/N`.
    Inf { epi: GroupHom },
    /// `def^G_{G/N} = [(G/N)×G/{(gN, g)}] ∈ B(G/N, G)`, given the quotient
    /// projection.
    Def { epi: GroupHom },
    /// `iso_α = [G×H/{(α(h), h)}] ∈ B(G, H)` for an isomorphism `α: H → G`.
    Iso { iso: GroupHom },
}

/// The standard class of an elementary morphism.
pub fn elementary(e: &Elementary) -> Result<BisetElement> {
    let d = elementary_subgroup(e)?;
    Ok(BisetElement::from_class(&d))
}

/// The defining subgroup of an elementary morphism (before canonicalization).
pub fn elementary_subgroup(e: &Elementary) -> Result<ProductSubgroup> {
    match e {
        Elementary::Res { big, small } => {
            let inc = inclusion_hom(small, big)?;
            // Graph(inc) = {(x, x)} ≤ big × small is the induction class;
            // restriction is its transpose in small × big.
            Ok(ProductSubgroup::graph_of_hom(&inc).transpose())
        }
        Elementary::Ind { big, small } => {
            let inc = inclusion_hom(small, big)?;
            Ok(ProductSubgroup::graph_of_hom(&inc))
        }
        Elementary::Inf { epi } => {
            require_surjective(epi)?;
            // {(g, gN)} ≤ G × (G/N).
            Ok(ProductSubgroup::graph_of_hom(epi).transpose())
        }
        Elementary::Def { epi } => {
            require_surjective(epi)?;
            // {(gN, g)} ≤ (G/N) × G.
            Ok(ProductSubgroup::graph_of_hom(epi))
        }
        Elementary::Iso { iso } => {
            if iso.kind() != HomKind::Isomorphism {
                return Err(Error::InvalidHom(
                    "transport requires an isomorphism".into(),
                ));
            }
            Ok(ProductSubgroup::graph_of_hom(iso))
        }
    }
}

fn require_surjective(epi: &GroupHom) -> Result<()> {
    match epi.kind() {
        HomKind::Epimorphism | HomKind::Isomorphism => Ok(()),
        HomKind::Embedding => Err(Error::InvalidHom(
            "inflation/deflation require a surjective projection".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Mackey composition
// ---------------------------------------------------------------------------

/// Mackey composition `B(G, H) × B(H, K) → B(G, K)`.
pub fn mackey_compose(x: &BisetElement, y: &BisetElement) -> Result<BisetElement> {
    if x.right != y.left {
        return Err(Error::CompositionMismatch(format!(
            "middle groups differ: |H| = {} vs {}",
            x.right.order(),
            y.left.order()
        )));
    }
    let mut out = BisetElement::zero(&x.left, &y.right);
    for (d, cd) in x.terms() {
        for (e, ce) in y.terms() {
            compose_classes_into(&mut out, d, e, cd * ce);
        }
    }
    Ok(out)
}

/// Add `coeff · ([G×H/D] · [H×K/E])` into `out`.
fn compose_classes_into(out: &mut BisetElement, d: &ProductSubgroup, e: &ProductSubgroup, coeff: i64) {
    let middle = d.right();
    let id_k = e.right().identity_index();
    for t in double_cosets_by_keys(middle, d.p2(), e.p1()) {
        let conj = e.conjugate(t, id_k);
        let star = d.star(&conj).expect("middle groups match");
        out.add_class(&star, coeff);
    }
}

// ---------------------------------------------------------------------------
// Five-factor decomposition
// ---------------------------------------------------------------------------

/// A standard class factored through its Goursat data:
/// `[G×H/D] = ind^G_{P₁} · inf^{P₁}_{Q₁} · iso_η · def^{P₂}_{Q₂} · res^H_{P₂}`
/// where `P₁ = p₁(D)`, `Q₁ = P₁/k₁(D)`, `P₂ = p₂(D)`, `Q₂ = P₂/k₂(D)` and
/// `η: Q₂ → Q₁` is the canonical quotient isomorphism of `D`.
pub struct Decomposition {
    pub p1: PermGroup,
    pub p2: PermGroup,
    pub q1: PermGroup,
    pub q2: PermGroup,
    /// Projection `P₁ → Q₁`.
    pub proj1: GroupHom,
    /// Projection `P₂ → Q₂`.
    pub proj2: GroupHom,
    /// The canonical isomorphism `Q₂ → Q₁` induced by the pairs of `D`.
    pub eta: GroupHom,
    pub ind: BisetElement,
    pub inf: BisetElement,
    pub iso: BisetElement,
    pub def: BisetElement,
    pub res: BisetElement,
}

impl Decomposition {
    /// Mackey product of the five factors; equals the class that was
    /// decomposed.
    pub fn recompose(&self) -> Result<BisetElement> {
        let a = mackey_compose(&self.ind, &self.inf)?;
        let b = mackey_compose(&a, &self.iso)?;
        let c = mackey_compose(&b, &self.def)?;
        mackey_compose(&c, &self.res)
    }

    pub fn factors(&self) -> [&BisetElement; 5] {
        [&self.ind, &self.inf, &self.iso, &self.def, &self.res]
    }
}

/// Decompose a standard class `[G×H/D]` into its five elementary factors.
pub fn decompose_standard(d: &ProductSubgroup) -> Result<Decomposition> {
    let g = d.left().clone();
    let h = d.right().clone();
    let p1 = d.p1_group();
    let p2 = d.p2_group();
    let k1 = d.k1_group();
    let k2 = d.k2_group();
    let (q1, proj1) = quotient_group(&p1, &k1)?;
    let (q2, proj2) = quotient_group(&p2, &k2)?;

    // η: Q₂ → Q₁ maps the coset of h to the coset of any g with (g, h) ∈ D.
    let mut images = vec![u32::MAX; q2.order()];
    for &(gi, hi) in d.pairs() {
        let h_in_p2 = p2
            .index_of(h.elem(hi))
            .expect("pair component lies in p2");
        let coset = proj2.apply_idx(h_in_p2);
        if images[coset as usize] == u32::MAX {
            let g_in_p1 = p1.index_of(g.elem(gi)).expect("pair component lies in p1");
            images[coset as usize] = proj1.apply_idx(g_in_p1);
        }
    }
    let eta = GroupHom::from_images(q2.clone(), q1.clone(), images)?;
    debug_assert_eq!(eta.kind(), HomKind::Isomorphism);

    let ind_e = Elementary::Ind { big: g.clone(), small: p1.clone() };
    let inf_e = Elementary::Inf { epi: proj1.clone() };
    let iso_e = Elementary::Iso { iso: eta.clone() };
    let def_e = Elementary::Def { epi: proj2.clone() };
    let res_e = Elementary::Res { big: h.clone(), small: p2.clone() };
    Ok(Decomposition {
        p1,
        p2,
        q1,
        q2,
        proj1,
        proj2,
        eta,
        ind: elementary(&ind_e)?,
        inf: elementary(&inf_e)?,
        iso: elementary(&iso_e)?,
        def: elementary(&def_e)?,
        res: elementary(&res_e)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::preset;

    fn sub_of(g: &PermGroup, order: usize) -> PermGroup {
        let lat = lattice_of(g);
        for i in 0..lat.len() as u32 {
            if lat.entry(i).order() == order {
                return lat.group_of(i).clone();
            }
        }
        panic!("no subgroup of order {order}");
    }

    #[test]
    fn standard_basis_sizes() {
        let c2 = preset("C2").unwrap();
        let s3 = preset("S3").unwrap();
        // B(C2, C2): subgroups of C2×C2 = V4 up to conjugacy (abelian): 5.
        assert_eq!(standard_basis(&c2, &c2).len(), 5);
        // Every basis class starts canonical.
        for d in standard_basis(&s3, &c2) {
            assert_eq!(d.canonical_pairs(), d.pairs());
        }
    }

    #[test]
    fn identity_laws() {
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        let id_s3 = BisetElement::identity(&s3);
        let id_c2 = BisetElement::identity(&c2);
        for d in standard_basis(&s3, &c2) {
            let x = BisetElement::from_class(&d);
            assert_eq!(mackey_compose(&id_s3, &x).unwrap(), x);
            assert_eq!(mackey_compose(&x, &id_c2).unwrap(), x);
        }
    }

    #[test]
    fn res_then_ind_through_different_subgroups() {
        // res^{S3}_{C2} · ind^{S3}_{C3} — wait: composition takes
        // B(C2, S3) × B(S3, C3); the result lives in B(C2, C3) and is the
        // free class [C2×C3/1] (C2 and C3 intersect trivially in S3).
        let s3 = preset("S3").unwrap();
        let c2 = sub_of(&s3, 2);
        let c3 = sub_of(&s3, 3);
        let res = elementary(&Elementary::Res { big: s3.clone(), small: c2.clone() }).unwrap();
        let ind = elementary(&Elementary::Ind { big: s3.clone(), small: c3.clone() }).unwrap();
        let prod = mackey_compose(&res, &ind).unwrap();
        assert_eq!(prod.num_terms(), 1);
        let (d, c) = prod.terms().next().unwrap();
        assert_eq!(c, 1);
        assert_eq!(d.order(), 1); // trivial subgroup of C2 × C3
    }

    #[test]
    fn res_then_ind_same_subgroup_mackey_formula() {
        // res^{S3}_{C2} · ind^{S3}_{C2} = Σ over C2\S3/C2 double cosets:
        // [C2×C2/Δ] + [C2×C2/1].
        let s3 = preset("S3").unwrap();
        let c2 = sub_of(&s3, 2);
        let res = elementary(&Elementary::Res { big: s3.clone(), small: c2.clone() }).unwrap();
        let ind = elementary(&Elementary::Ind { big: s3.clone(), small: c2.clone() }).unwrap();
        let prod = mackey_compose(&res, &ind).unwrap();
        let mut orders: Vec<(usize, i64)> =
            prod.terms().map(|(d, c)| (d.order(), c)).collect();
        orders.sort();
        assert_eq!(orders, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn composition_is_associative() {
        let s3 = preset("S3").unwrap();
        let c2 = sub_of(&s3, 2);
        let c3 = sub_of(&s3, 3);
        // Sums with several terms, composed both ways.
        let mut x = BisetElement::zero(&c2, &s3);
        for (i, d) in standard_basis(&c2, &s3).into_iter().enumerate() {
            x.add_class(&d, 1 + i as i64);
        }
        let mut y = BisetElement::zero(&s3, &s3);
        for (i, d) in standard_basis(&s3, &s3).into_iter().enumerate().take(6) {
            y.add_class(&d, (i as i64) - 2);
        }
        let mut z = BisetElement::zero(&s3, &c3);
        for d in standard_basis(&s3, &c3) {
            z.add_class(&d, 1);
        }
        let left = mackey_compose(&mackey_compose(&x, &y).unwrap(), &z).unwrap();
        let right = mackey_compose(&x, &mackey_compose(&y, &z).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn composition_rejects_mismatched_middles() {
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        let x = BisetElement::identity(&s3);
        let y = BisetElement::identity(&c2);
        assert!(mackey_compose(&x, &y).is_err());
    }

    #[test]
    fn inflation_class_has_expected_kernels() {
        // inf^{C4}_{C4/C2} ∈ B(C4, C2): D = {(g, gN)}: k₁ = N = C2, k₂ = 1.
        let c4 = preset("C4").unwrap();
        let c2 = sub_of(&c4, 2);
        let (_q, epi) = quotient_group(&c4, &c2).unwrap();
        let d = elementary_subgroup(&Elementary::Inf { epi }).unwrap();
        assert_eq!(d.order(), 4);
        assert_eq!(d.k1().len(), 2);
        assert_eq!(d.k2().len(), 1);
        assert_eq!(d.p1().len(), 4);
        assert_eq!(d.p2().len(), 2);
    }

    #[test]
    fn decomposition_recomposes_for_s3_c2_classes() {
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        for d in standard_basis(&s3, &c2) {
            let dec = decompose_standard(&d).unwrap();
            assert_eq!(dec.recompose().unwrap(), BisetElement::from_class(&d));
        }
    }

    #[test]
    fn decomposition_of_identity_class() {
        let s3 = preset("S3").unwrap();
        let id = BisetElement::identity(&s3);
        let (d, _) = id.terms().next().unwrap();
        let dec = decompose_standard(d).unwrap();
        // Δ(S3): p₁ = p₂ = S3, kernels trivial, η an automorphism of S3.
        assert_eq!(dec.p1.order(), 6);
        assert_eq!(dec.q1.order(), 6);
        assert_eq!(dec.recompose().unwrap(), id);
    }

    #[test]
    fn scalar_and_additive_structure() {
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        let basis = standard_basis(&s3, &c2);
        let x = BisetElement::from_class(&basis[0]);
        let y = BisetElement::from_class(&basis[1]);
        let s = x.add(&y).unwrap();
        assert_eq!(s.coeff_of(&basis[0]), 1);
        assert_eq!(s.coeff_of(&basis[1]), 1);
        assert!(s.sub(&s).unwrap().is_zero());
        assert_eq!(s.scale(-3).coeff_of(&basis[1]), -3);
    }
}
