//! The ghost module `F⁺(G)`: fixed points of `Π_{H ≤ G} F(H)` under
//! conjugation, stored compressed as one component per subgroup class, each
//! required to be fixed by the normalizer of its representative. The ring
//! structure is componentwise; for the constant coefficient system this is
//! the ghost ring of integer tuples receiving the mark morphism.

use std::fmt;

use crate::biset::BisetElement;
use crate::error::{Error, Result};
use crate::functor::CoeffFunctor;
use crate::group::{left_cosets_by_keys, PermGroup};
use crate::lattice::{lattice_of, SubgroupLattice};
use crate::plus::{conjugation_between, transport_label};
use crate::product::ProductSubgroup;
use crate::scalar::Scalar;

/// An element of `F⁺(G)`: one dense coefficient vector over
/// `basis(F(H))` per subgroup-class representative `H`.
#[derive(Clone, PartialEq, Eq)]
pub struct GhostElement<S: Scalar> {
    group: PermGroup,
    components: Vec<Vec<S>>,
}

impl<S: Scalar> fmt::Debug for GhostElement<S> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "GhostElement(|G|={}, {:?})", self.group.order(), self.components)
    }
}

/// The permutation of `basis(F(H₀))` induced by conjugation with `n`
/// (an element of the ambient group normalizing `H₀`).
fn basis_permutation(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
    n: u32,
    rep_key: &[u32],
    rep_group: &PermGroup,
    size: usize,
) -> Result<Vec<usize>> {
    let hom = conjugation_between(g, n, rep_key, rep_group, rep_key, rep_group);
    let mut perm = vec![0usize; size];
    for (b, p) in perm.iter_mut().enumerate() {
        *p = transport_label(f, &hom, b)?;
    }
    Ok(perm)
}

impl<S: Scalar> GhostElement<S> {
    /// The zero tuple.
    pub fn zero(f: &dyn CoeffFunctor, g: &PermGroup) -> Result<Self> {
        let lat = lattice_of(g);
        let mut components = Vec::with_capacity(lat.num_classes());
        for c in 0..lat.num_classes() as u32 {
            components.push(vec![S::zero(); f.basis_size(lat.rep_group(c))?]);
        }
        Ok(GhostElement {
            group: g.clone(),
            components,
        })
    }

    /// The unit tuple: the ring unit of `F(H)` in every component.
    pub fn unit(f: &dyn CoeffFunctor, g: &PermGroup) -> Result<Self> {
        let lat = lattice_of(g);
        let mut out = Self::zero(f, g)?;
        for c in 0..lat.num_classes() as u32 {
            let one = f.value_one(lat.rep_group(c))?;
            out.components[c as usize][one] = S::one();
        }
        Ok(out)
    }

    /// Build from per-class component vectors, validating the shape and the
    /// normalizer-fixedness invariant.
    pub fn from_components(
        f: &dyn CoeffFunctor,
        g: &PermGroup,
        components: Vec<Vec<S>>,
    ) -> Result<Self> {
        let lat = lattice_of(g);
        if components.len() != lat.num_classes() {
            return Err(Error::Incompatible(format!(
                "expected {} components, got {}",
                lat.num_classes(),
                components.len()
            )));
        }
        for c in 0..lat.num_classes() as u32 {
            let rep_group = lat.rep_group(c);
            let n = f.basis_size(rep_group)?;
            if components[c as usize].len() != n {
                return Err(Error::Incompatible(format!(
                    "component {c} has {} coefficients, expected {}",
                    components[c as usize].len(),
                    n
                )));
            }
        }
        let out = GhostElement {
            group: g.clone(),
            components,
        };
        out.check_fixedness(f)?;
        Ok(out)
    }

    /// Verify every component is fixed by the normalizer of its class
    /// representative.
    pub fn check_fixedness(&self, f: &dyn CoeffFunctor) -> Result<()> {
        let lat = lattice_of(&self.group);
        for c in 0..lat.num_classes() as u32 {
            let rep_entry = lat.class(c).rep();
            let rep_key = lat.entry(rep_entry).members();
            let rep_group = lat.rep_group(c);
            let v = &self.components[c as usize];
            let norm_key = self
                .group
                .member_indices(lat.rep_normalizer(c))
                .expect("normalizer is a subgroup");
            for &n in &norm_key {
                let perm = basis_permutation(f, &self.group, n, rep_key, rep_group, v.len())?;
                for (b, &p) in perm.iter().enumerate() {
                    if v[b] != v[p] {
                        return Err(Error::Incompatible(format!(
                            "component {c} is not fixed by its normalizer (labels {b} and {p} differ)"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Component at subgroup-class `c`, dense over the basis of the class
    /// representative.
    pub fn component(&self, c: u32) -> &[S] {
        &self.components[c as usize]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|v| v.iter().all(S::is_zero))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Incompatible(
                "cannot add ghost elements over different groups".into(),
            ));
        }
        let mut out = self.clone();
        for (c, comp) in other.components.iter().enumerate() {
            for (b, s) in comp.iter().enumerate() {
                out.components[c][b] = out.components[c][b].add(s);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale_all(&S::from_int(-1)))
    }

    pub fn scale_all(&self, s: &S) -> Self {
        let mut out = self.clone();
        for comp in &mut out.components {
            for v in comp.iter_mut() {
                *v = v.mul(s);
            }
        }
        out
    }
}

/// Expand the compressed tuple to one component per lattice *entry*, using
/// `a_{^gH} = ^g a_H`. Lossless by the fixedness invariant.
pub fn ghost_expand<S: Scalar>(
    f: &dyn CoeffFunctor,
    x: &GhostElement<S>,
) -> Result<Vec<Vec<S>>> {
    let g = &x.group;
    let lat = lattice_of(g);
    let mut out = Vec::with_capacity(lat.len());
    for i in 0..lat.len() as u32 {
        out.push(component_at_entry(f, &lat, x, i)?);
    }
    Ok(out)
}

/// The component of `x` at lattice entry `i`, transported from the class
/// representative. The result is indexed by `basis(lat.group_of(i))`.
pub(crate) fn component_at_entry<S: Scalar>(
    f: &dyn CoeffFunctor,
    lat: &SubgroupLattice,
    x: &GhostElement<S>,
    entry: u32,
) -> Result<Vec<S>> {
    let g = lat.parent();
    let e = lat.entry(entry);
    let c = e.class();
    let rep_entry = lat.class(c).rep();
    let source = &x.components[c as usize];
    if entry == rep_entry {
        return Ok(source.clone());
    }
    let rep_key = lat.entry(rep_entry).members();
    let rep_group = lat.rep_group(c);
    let entry_group = lat.group_of(entry);
    // the entry is ^{c⁻¹}(rep) for its recorded conjugator c
    let back = g.inv_idx(e.conjugator_to_rep());
    let hom = conjugation_between(g, back, rep_key, rep_group, e.members(), entry_group);
    let mut out = vec![S::zero(); source.len()];
    for (b, s) in source.iter().enumerate() {
        if !s.is_zero() {
            let t = transport_label(f, &hom, b)?;
            out[t] = out[t].add(s);
        }
    }
    Ok(out)
}

fn require_upper_admissible(
    f: &dyn CoeffFunctor,
    u: &BisetElement,
    require_free: bool,
) -> Result<()> {
    let spec = f.base_spec();
    for (d, _) in u.terms() {
        if !spec.s_upper_member(d)? {
            return Err(Error::InadmissibleClass(format!(
                "class with projections of orders ({}, {}) is not admissible for the ghost action of {}",
                d.p1().len(),
                d.p2().len(),
                f.name()
            )));
        }
        if require_free && d.k2().len() != 1 {
            return Err(Error::RightActionNotFree(format!(
                "ghost action requires right-free classes; right kernel has order {}",
                d.k2().len()
            )));
        }
    }
    Ok(())
}

/// Ghost action of a formal sum of `(G, H)`-classes: the `K`-component of
/// the image is `Σ_{u ∈ [U/H], K ≤ p₁(stab(u))} F([K×K^u / (K×H)_u])(a_{K^u})`,
/// where `K^u = K * stab(u)`. Classes must be right-free (trivial right
/// kernel); use [`ghost_act_raw`] to evaluate the formula without that
/// guard.
pub fn ghost_act<S: Scalar>(
    f: &dyn CoeffFunctor,
    u: &BisetElement,
    x: &GhostElement<S>,
) -> Result<GhostElement<S>> {
    require_upper_admissible(f, u, true)?;
    ghost_act_unchecked(f, u, x)
}

/// The ghost-action formula evaluated as written, without the right-freeness
/// precondition. On deflation-like classes the result is *not* expected to
/// be compatible with the rest of the theory; this entry point exists to
/// exhibit exactly that failure.
pub fn ghost_act_raw<S: Scalar>(
    f: &dyn CoeffFunctor,
    u: &BisetElement,
    x: &GhostElement<S>,
) -> Result<GhostElement<S>> {
    require_upper_admissible(f, u, false)?;
    ghost_act_unchecked(f, u, x)
}

fn ghost_act_unchecked<S: Scalar>(
    f: &dyn CoeffFunctor,
    u: &BisetElement,
    x: &GhostElement<S>,
) -> Result<GhostElement<S>> {
    if x.group != *u.right() {
        return Err(Error::CompositionMismatch(
            "element group does not match the right-hand group of the acting sum".into(),
        ));
    }
    let g = u.left();
    let h = u.right();
    let lat_g = lattice_of(g);
    let lat_h = lattice_of(h);
    let mut out: GhostElement<S> = GhostElement::zero(f, g)?;
    for (e, m) in u.terms() {
        for a in left_cosets_by_keys(g, e.p1()) {
            // stabilizer of the orbit representative (a, 1)E
            let stab = e.conjugate(a, h.identity_index());
            let stab_p1 = stab.p1().to_vec();
            for c in 0..lat_g.num_classes() as u32 {
                let k_entry = lat_g.class(c).rep();
                let k_key = lat_g.entry(k_entry).members();
                if !is_subset(k_key, &stab_p1) {
                    continue;
                }
                // (K×H)_u = stab ∩ (K × H), viewed inside K × K^u
                let inter = ProductSubgroup::from_trusted_pairs(
                    g.clone(),
                    h.clone(),
                    stab.intersect_left(k_key),
                );
                let ku_key = inter.p2().to_vec();
                let acting = inter.reindexed(k_key, &ku_key);
                let ku_entry = lat_h
                    .index_of_members(&ku_key)
                    .expect("star product lands in the lattice");
                let source = component_at_entry(f, &lat_h, x, ku_entry)?;
                let target = &mut out.components[c as usize];
                for (b, s) in source.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    for (lbl, w) in f.act(&acting, b)? {
                        target[lbl] = target[lbl].add(&s.mul(&S::from_int(m * w)));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Componentwise product.
pub fn ghost_mult<S: Scalar>(
    f: &dyn CoeffFunctor,
    x: &GhostElement<S>,
    y: &GhostElement<S>,
) -> Result<GhostElement<S>> {
    if x.group != y.group {
        return Err(Error::Incompatible(
            "cannot multiply ghost elements over different groups".into(),
        ));
    }
    let lat = lattice_of(&x.group);
    let mut out: GhostElement<S> = GhostElement::zero(f, &x.group)?;
    for c in 0..lat.num_classes() as u32 {
        let h = lat.rep_group(c);
        let (xi, yi) = (&x.components[c as usize], &y.components[c as usize]);
        let target = &mut out.components[c as usize];
        for (i, a) in xi.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in yi.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, w) in f.value_mult(h, i, j)? {
                    target[k] = target[k].add(&a.mul(&b.mul(&S::from_int(w))));
                }
            }
        }
    }
    Ok(out)
}
