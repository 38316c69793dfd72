//! Finite permutation groups with fully enumerated element lists.
//!
//! Groups are given by generators acting on `{0..degree-1}` and closed by
//! breadth-first multiplication at construction; there is no stabilizer-chain
//! machinery.  The element list is stored sorted in the canonical order
//! (lexicographic on image sequences), so element indices provide a
//! deterministic total order used for all representative choices.
//!
//! Cheap `Clone`: a `PermGroup` is a shared handle to immutable data.

use crate::error::{Error, Result};
use crate::perm::Perm;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Default cap on enumerated group order; override with the
/// `BISETPLUS_ORDER_CAP` environment variable.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Orders up to this bound get a dense multiplication table.
const MUL_TABLE_MAX: usize = 1200;

/// Current group-order cap (environment override honored per call).
pub fn order_cap() -> usize {
    std::env::var("BISETPLUS_ORDER_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

struct GroupData {
    degree: u16,
    name: Option<String>,
    generators: Vec<Perm>,
    /// All elements, sorted lexicographically by image sequence.
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverses: Vec<u32>,
    /// Structural fingerprint over (degree, element list); name-independent.
    fingerprint: u64,
    mul_table: OnceLock<Option<Vec<u32>>>,
}

/// A finite permutation group (shared, immutable).
#[derive(Clone)]
pub struct PermGroup {
    data: Arc<GroupData>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.data, &other.data) {
            return true;
        }
        self.data.fingerprint == other.data.fingerprint
            && self.data.degree == other.data.degree
            && self.data.elements == other.data.elements
    }
}
impl Eq for PermGroup {}

impl std::hash::Hash for PermGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.fingerprint.hash(state);
    }
}

fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn fingerprint_of(degree: u16, elements: &[Perm]) -> u64 {
    let bytes = std::iter::once(degree)
        .chain(elements.iter().flat_map(|p| p.images().iter().copied()))
        .flat_map(|v| v.to_le_bytes());
    fnv1a(bytes)
}

impl PermGroup {
    /// The trivial group on one point.
    pub fn trivial() -> PermGroup {
        PermGroup::from_generators(1, Vec::new(), Some("trivial".into())).unwrap()
    }

    /// Close a generating set and build the group.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Perm>,
        name: Option<String>,
    ) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let cap = order_cap();
        let mut elements = vec![Perm::identity(degree)];
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(elements[0].clone(), ());
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let next = current.compose(g);
                if !seen.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::OrderCapExceeded {
                            cap,
                            context: format!("closing {} generators on {} points", generators.len(), degree),
                        });
                    }
                    seen.insert(next.clone(), ());
                    elements.push(next);
                }
            }
        }
        elements.sort();
        Self::from_sorted_elements(degree, generators, elements, name)
    }

    /// Build a group from an element set already known to be closed.
    /// The closure property is checked in debug builds.
    pub fn from_members(degree: usize, mut elements: Vec<Perm>, name: Option<String>) -> PermGroup {
        elements.sort();
        elements.dedup();
        debug_assert!(
            elements.iter().any(|p| p.is_identity()),
            "member set lacks identity"
        );
        let generators = minimal_generators(&elements);
        Self::from_sorted_elements(degree, generators, elements, name).expect("valid member set")
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
        name: Option<String>,
    ) -> Result<PermGroup> {
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses = elements
            .iter()
            .map(|p| *index.get(&p.inverse()).expect("inverse in closed set"))
            .collect();
        let fingerprint = fingerprint_of(degree as u16, &elements);
        Ok(PermGroup {
            data: Arc::new(GroupData {
                degree: degree as u16,
                name,
                generators,
                elements,
                index,
                inverses,
                fingerprint,
                mul_table: OnceLock::new(),
            }),
        })
    }

    pub fn degree(&self) -> usize {
        self.data.degree as usize
    }

    pub fn order(&self) -> usize {
        self.data.elements.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.data.name.as_deref()
    }

    /// Same group data with a different display name.
    pub fn renamed(&self, name: impl Into<String>) -> PermGroup {
        let d = &self.data;
        PermGroup {
            data: Arc::new(GroupData {
                degree: d.degree,
                name: Some(name.into()),
                generators: d.generators.clone(),
                elements: d.elements.clone(),
                index: d.index.clone(),
                inverses: d.inverses.clone(),
                fingerprint: d.fingerprint,
                mul_table: OnceLock::new(),
            }),
        }
    }

    pub fn generators(&self) -> &[Perm] {
        &self.data.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.data.elements
    }

    pub fn elem(&self, i: u32) -> &Perm {
        &self.data.elements[i as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.data.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.data.index.contains_key(p)
    }

    pub fn identity_index(&self) -> u32 {
        self.index_of(&Perm::identity(self.degree()))
            .expect("identity present")
    }

    pub fn fingerprint(&self) -> u64 {
        self.data.fingerprint
    }

    fn table(&self) -> Option<&Vec<u32>> {
        self.data
            .mul_table
            .get_or_init(|| {
                let n = self.order();
                if n > MUL_TABLE_MAX {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for i in 0..n {
                    let a = &self.data.elements[i];
                    for j in 0..n {
                        t[i * n + j] = self.index_of(&a.compose(&self.data.elements[j])).unwrap();
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// Product by element indices: index of `elem(i) ∘ elem(j)`.
    pub fn mul_idx(&self, i: u32, j: u32) -> u32 {
        match self.table() {
            Some(t) => t[i as usize * self.order() + j as usize],
            None => self
                .index_of(&self.elem(i).compose(self.elem(j)))
                .expect("closed"),
        }
    }

    pub fn inv_idx(&self, i: u32) -> u32 {
        self.data.inverses[i as usize]
    }

    /// Index of `elem(a) · elem(x) · elem(a)⁻¹`.
    pub fn conj_idx(&self, a: u32, x: u32) -> u32 {
        self.mul_idx(self.mul_idx(a, x), self.inv_idx(a))
    }

    /// True if every element of `sub` lies in `self` (same degree required).
    pub fn has_subgroup(&self, sub: &PermGroup) -> bool {
        sub.degree() == self.degree() && sub.elements().iter().all(|p| self.contains(p))
    }

    /// Member indices of `sub` inside `self`, sorted ascending.
    pub fn member_indices(&self, sub: &PermGroup) -> Result<Vec<u32>> {
        if sub.degree() != self.degree() {
            return Err(Error::NotASubgroup(format!(
                "degree {} vs parent degree {}",
                sub.degree(),
                self.degree()
            )));
        }
        let mut out = Vec::with_capacity(sub.order());
        for p in sub.elements() {
            match self.index_of(p) {
                Some(i) => out.push(i),
                None => {
                    return Err(Error::NotASubgroup(format!(
                        "element {p} not in parent group"
                    )))
                }
            }
        }
        // Elements are sorted in both groups, so indices come out ascending.
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        Ok(out)
    }

    /// Subgroup of `self` generated by the given member indices.
    pub fn generated_by_indices(&self, gens: &[u32]) -> PermGroup {
        let n = self.order();
        let mut in_set = vec![false; n];
        let id = self.identity_index();
        in_set[id as usize] = true;
        let mut members = vec![id];
        let mut frontier = 0;
        while frontier < members.len() {
            let cur = members[frontier];
            frontier += 1;
            for &g in gens {
                let next = self.mul_idx(cur, g);
                if !in_set[next as usize] {
                    in_set[next as usize] = true;
                    members.push(next);
                }
            }
        }
        members.sort();
        let elems = members.iter().map(|&i| self.elem(i).clone()).collect();
        PermGroup::from_members(self.degree(), elems, None)
    }

    /// Subgroup of `self` generated by the given permutations; errors if a
    /// generator lies outside `self`.
    pub fn subgroup_from_perms(&self, gens: &[Perm]) -> Result<PermGroup> {
        let idx: Vec<u32> = gens
            .iter()
            .map(|p| {
                self.index_of(p).ok_or_else(|| {
                    Error::NotASubgroup(format!("generator {p} not in parent group"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(self.generated_by_indices(&idx))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => write!(f, "PermGroup({n}, order {})", self.order()),
            None => write!(
                f,
                "PermGroup(degree {}, order {})",
                self.degree(),
                self.order()
            ),
        }
    }
}

/// Greedy deterministic small generating set for a closed element list
/// (elements must be sorted; identity excluded from output).
fn minimal_generators(elements: &[Perm]) -> Vec<Perm> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let degree = elements[0].degree();
    let target = elements.len();
    let mut gens: Vec<Perm> = Vec::new();
    let mut closed: HashMap<Perm, ()> = HashMap::new();
    closed.insert(Perm::identity(degree), ());
    for cand in elements {
        if closed.contains_key(cand) {
            continue;
        }
        gens.push(cand.clone());
        // Re-close with the new generator.
        let mut queue: Vec<Perm> = closed.keys().cloned().collect();
        queue.sort();
        let mut frontier = 0;
        while frontier < queue.len() {
            let cur = queue[frontier].clone();
            frontier += 1;
            for g in &gens {
                let next = cur.compose(g);
                if !closed.contains_key(&next) {
                    closed.insert(next.clone(), ());
                    queue.push(next);
                }
            }
        }
        if closed.len() == target {
            break;
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// Conjugation, normalizers, double cosets
// ---------------------------------------------------------------------------

/// The conjugate subgroup `^g H = { g h g⁻¹ : h ∈ H }`, where the group
/// product is `compose` ("apply left factor first").
pub fn conjugate_subgroup(g: &Perm, h: &PermGroup) -> PermGroup {
    let ginv = g.inverse();
    let elems: Vec<Perm> = h
        .elements()
        .iter()
        .map(|x| g.compose(x).compose(&ginv))
        .collect();
    PermGroup::from_members(h.degree(), elems, None)
}

/// True if `n` is normal in `g` (both on the same degree, `n ≤ g`).
pub fn is_normal_in(n: &PermGroup, g: &PermGroup) -> bool {
    g.has_subgroup(n)
        && g.generators()
            .iter()
            .all(|x| conjugate_subgroup(x, n) == *n)
}

/// Normalizer `N_G(H) = { g ∈ G : ^g H = H }` as a subgroup of `G`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let members = g.member_indices(h)?; // validates H ≤ G
    let hset: std::collections::HashSet<u32> = members.iter().copied().collect();
    let mut norm: Vec<Perm> = Vec::new();
    for a in 0..g.order() as u32 {
        let normalizes = members.iter().all(|&x| hset.contains(&g.conj_idx(a, x)));
        if normalizes {
            norm.push(g.elem(a).clone());
        }
    }
    Ok(PermGroup::from_members(g.degree(), norm, None))
}

/// Minimal representatives of the double cosets `A \ G / B`, in canonical
/// order.  `A` and `B` must be subgroups of `G`.
pub fn double_cosets(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<Vec<u32>> {
    let a_idx = g.member_indices(a)?;
    let b_idx = g.member_indices(b)?;
    Ok(double_cosets_by_keys(g, &a_idx, &b_idx))
}

/// As [`double_cosets`], but with the subgroups given by sorted member keys
/// (assumed valid).
pub fn double_cosets_by_keys(g: &PermGroup, a_idx: &[u32], b_idx: &[u32]) -> Vec<u32> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for t in 0..n as u32 {
        if seen[t as usize] {
            continue;
        }
        reps.push(t);
        for &x in a_idx {
            let xt = g.mul_idx(x, t);
            for &y in b_idx {
                seen[g.mul_idx(xt, y) as usize] = true;
            }
        }
    }
    reps
}

/// Minimal representatives of the left cosets `G / B` (i.e. of `{gB}`), in
/// canonical order.
pub fn left_cosets(g: &PermGroup, b: &PermGroup) -> Result<Vec<u32>> {
    let b_idx = g.member_indices(b)?;
    Ok(left_cosets_by_keys(g, &b_idx))
}

/// As [`left_cosets`], but with the subgroup given by a sorted member key.
pub fn left_cosets_by_keys(g: &PermGroup, b_idx: &[u32]) -> Vec<u32> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for t in 0..n as u32 {
        if seen[t as usize] {
            continue;
        }
        reps.push(t);
        for &y in b_idx {
            seen[g.mul_idx(t, y) as usize] = true;
        }
    }
    reps
}

// ---------------------------------------------------------------------------
// Group homomorphisms
// ---------------------------------------------------------------------------

/// Classification of a stored homomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum HomKind {
    Isomorphism,
    Epimorphism,
    Embedding,
}

/// A group homomorphism stored as a full element-wise image table
/// (index of image in `target` per element index of `source`).
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    images: Vec<u32>,
    kind: HomKind,
}

impl GroupHom {
    /// Build from a full image table, verifying the homomorphism property on
    /// all element pairs and classifying the kind.
    pub fn from_images(source: PermGroup, target: PermGroup, images: Vec<u32>) -> Result<GroupHom> {
        if images.len() != source.order() {
            return Err(Error::InvalidHom(format!(
                "image table length {} does not match source order {}",
                images.len(),
                source.order()
            )));
        }
        for &im in &images {
            if im as usize >= target.order() {
                return Err(Error::InvalidHom("image index out of range".into()));
            }
        }
        let n = source.order() as u32;
        for i in 0..n {
            for j in 0..n {
                let lhs = images[source.mul_idx(i, j) as usize];
                let rhs = target.mul_idx(images[i as usize], images[j as usize]);
                if lhs != rhs {
                    return Err(Error::InvalidHom(format!(
                        "not multiplicative at element pair ({i}, {j})"
                    )));
                }
            }
        }
        let mut hit = vec![false; target.order()];
        for &im in &images {
            hit[im as usize] = true;
        }
        let surjective = hit.iter().all(|&b| b);
        let injective = {
            let mut distinct: Vec<u32> = images.clone();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.len() == images.len()
        };
        let kind = match (injective, surjective) {
            (true, true) => HomKind::Isomorphism,
            (false, true) => HomKind::Epimorphism,
            (true, false) => HomKind::Embedding,
            (false, false) => {
                return Err(Error::InvalidHom(
                    "map is neither injective nor surjective".into(),
                ))
            }
        };
        Ok(GroupHom {
            source,
            target,
            images,
            kind,
        })
    }

    /// Build from generator images by extending multiplicatively (errors if
    /// the assignment does not extend to a homomorphism).
    pub fn from_generator_images(
        source: PermGroup,
        target: PermGroup,
        gen_images: &[(Perm, Perm)],
    ) -> Result<GroupHom> {
        let mut table: Vec<Option<u32>> = vec![None; source.order()];
        table[source.identity_index() as usize] = Some(target.identity_index());
        let mut queue = vec![source.identity_index()];
        let gens: Vec<(u32, u32)> = gen_images
            .iter()
            .map(|(s, t)| {
                let si = source
                    .index_of(s)
                    .ok_or_else(|| Error::InvalidHom(format!("generator {s} not in source")))?;
                let ti = target
                    .index_of(t)
                    .ok_or_else(|| Error::InvalidHom(format!("image {t} not in target")))?;
                Ok((si, ti))
            })
            .collect::<Result<_>>()?;
        let mut frontier = 0;
        while frontier < queue.len() {
            let cur = queue[frontier];
            frontier += 1;
            let cur_im = table[cur as usize].unwrap();
            for &(gs, gt) in &gens {
                let nxt = source.mul_idx(cur, gs);
                let nxt_im = target.mul_idx(cur_im, gt);
                match table[nxt as usize] {
                    None => {
                        table[nxt as usize] = Some(nxt_im);
                        queue.push(nxt);
                    }
                    Some(existing) => {
                        if existing != nxt_im {
                            return Err(Error::InvalidHom(
                                "generator images are inconsistent".into(),
                            ));
                        }
                    }
                }
            }
        }
        let images: Vec<u32> = table
            .into_iter()
            .map(|o| o.ok_or_else(|| Error::InvalidHom("generators do not generate source".into())))
            .collect::<Result<_>>()?;
        GroupHom::from_images(source, target, images)
    }

    /// Identity isomorphism.
    pub fn identity(g: &PermGroup) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: (0..g.order() as u32).collect(),
            kind: HomKind::Isomorphism,
        }
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    pub fn apply_idx(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn apply(&self, p: &Perm) -> Result<Perm> {
        let i = self
            .source
            .index_of(p)
            .ok_or_else(|| Error::InvalidHom(format!("{p} not in hom source")))?;
        Ok(self.target.elem(self.images[i as usize]).clone())
    }

    /// Image pairs on the source's generators (for serialization/display).
    pub fn generator_images(&self) -> Vec<(Perm, Perm)> {
        self.source
            .generators()
            .iter()
            .map(|g| {
                let i = self.source.index_of(g).unwrap();
                (g.clone(), self.target.elem(self.images[i as usize]).clone())
            })
            .collect()
    }

    /// Kernel as a subgroup of the source.
    pub fn kernel(&self) -> PermGroup {
        let tid = self.target.identity_index();
        let elems: Vec<Perm> = (0..self.source.order() as u32)
            .filter(|&i| self.images[i as usize] == tid)
            .map(|i| self.source.elem(i).clone())
            .collect();
        PermGroup::from_members(self.source.degree(), elems, None)
    }

    /// Image as a subgroup of the target.
    pub fn image(&self) -> PermGroup {
        let elems: Vec<Perm> = {
            let mut idx: Vec<u32> = self.images.clone();
            idx.sort_unstable();
            idx.dedup();
            idx.into_iter().map(|i| self.target.elem(i).clone()).collect()
        };
        PermGroup::from_members(self.target.degree(), elems, None)
    }

    /// Composition `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::CompositionMismatch(
                "hom target does not match next hom source".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|&i| other.images[i as usize])
            .collect();
        GroupHom::from_images(self.source.clone(), other.target.clone(), images)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<GroupHom> {
        if self.kind != HomKind::Isomorphism {
            return Err(Error::InvalidHom("cannot invert a non-isomorphism".into()));
        }
        let mut images = vec![0u32; self.target.order()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        GroupHom::from_images(self.target.clone(), self.source.clone(), images)
    }

    /// Restriction to a subgroup of the source.
    pub fn restrict(&self, sub: &PermGroup) -> Result<GroupHom> {
        let idx = self.source.member_indices(sub)?;
        let image_elems: Vec<Perm> = idx
            .iter()
            .map(|&i| self.target.elem(self.images[i as usize]).clone())
            .collect();
        let image = PermGroup::from_members(self.target.degree(), image_elems, None);
        let images = idx
            .iter()
            .map(|&i| image.index_of(self.target.elem(self.images[i as usize])).unwrap())
            .collect();
        GroupHom::from_images(sub.clone(), image, images)
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({:?}: {:?} -> {:?})",
            self.kind, self.source, self.target
        )
    }
}

/// The conjugation isomorphism `c_g : H → ^g H`, `h ↦ g h g⁻¹`.
pub fn conjugation_hom(g: &Perm, h: &PermGroup) -> GroupHom {
    let target = conjugate_subgroup(g, h);
    let ginv = g.inverse();
    let images = h
        .elements()
        .iter()
        .map(|x| target.index_of(&g.compose(x).compose(&ginv)).unwrap())
        .collect();
    GroupHom::from_images(h.clone(), target, images).expect("conjugation is an isomorphism")
}

/// The inclusion embedding `H ↪ G`.
pub fn inclusion_hom(h: &PermGroup, g: &PermGroup) -> Result<GroupHom> {
    let images = g.member_indices(h)?;
    GroupHom::from_images(h.clone(), g.clone(), images)
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// Quotient `G/N` realized as the permutation action of `G` on the left
/// cosets of `N` (cosets ordered by minimal representative), together with
/// the projection epimorphism.
pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, GroupHom)> {
    if !is_normal_in(n, g) {
        return Err(Error::NotNormal(format!(
            "order-{} subgroup is not normal in order-{} group",
            n.order(),
            g.order()
        )));
    }
    let n_idx = g.member_indices(n)?;
    let order = g.order();
    // coset id per element, cosets numbered by minimal representative order.
    let mut coset_of = vec![u32::MAX; order];
    let mut reps: Vec<u32> = Vec::new();
    for t in 0..order as u32 {
        if coset_of[t as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(t);
        for &x in &n_idx {
            coset_of[g.mul_idx(t, x) as usize] = c;
        }
    }
    let num_cosets = reps.len();
    // Right translation on left cosets of a normal subgroup: (tN)·a = (ta)N.
    // With the "apply left factor first" product on permutations this makes
    // a ↦ π_a a homomorphism (left translation would be an anti-hom).
    let mut action_perm = |a: u32| -> Perm {
        let images = (0..num_cosets)
            .map(|c| coset_of[g.mul_idx(reps[c], a) as usize] as u16)
            .collect();
        Perm::from_images(images).expect("coset action is a permutation")
    };
    let quot_elems: Vec<Perm> = (0..order as u32).map(&mut action_perm).collect();
    let mut sorted = quot_elems.clone();
    sorted.sort();
    sorted.dedup();
    let quotient = PermGroup::from_members(num_cosets, sorted, None);
    let images = quot_elems
        .iter()
        .map(|p| quotient.index_of(p).unwrap())
        .collect();
    let epi = GroupHom::from_images(g.clone(), quotient.clone(), images)?;
    Ok((quotient, epi))
}

// ---------------------------------------------------------------------------
// Direct products
// ---------------------------------------------------------------------------

/// A direct product `G × H` on the disjoint union of the two domains.
///
/// Elements are ordered so that the product index of the pair `(i, j)` is
/// exactly `i · |H| + j` (row-major); this makes pair/index conversion
/// arithmetic and keeps subgroup keys aligned between the pair view and the
/// ambient-group view.
#[derive(Clone)]
pub struct DirectProduct {
    group: PermGroup,
    left: PermGroup,
    right: PermGroup,
}

impl DirectProduct {
    pub fn new(left: &PermGroup, right: &PermGroup) -> Result<DirectProduct> {
        let cap = order_cap();
        if left.order().saturating_mul(right.order()) > cap {
            return Err(Error::OrderCapExceeded {
                cap,
                context: format!(
                    "direct product of orders {} and {}",
                    left.order(),
                    right.order()
                ),
            });
        }
        let dl = left.degree();
        let dr = right.degree();
        let degree = dl + dr;
        let mut elements = Vec::with_capacity(left.order() * right.order());
        for a in left.elements() {
            for b in right.elements() {
                let mut images: Vec<u16> = Vec::with_capacity(degree);
                images.extend_from_slice(a.images());
                images.extend(b.images().iter().map(|&x| x + dl as u16));
                elements.push(Perm::from_images(images).unwrap());
            }
        }
        // Row-major construction of sorted factors is already sorted
        // lexicographically: the left images dominate the comparison.
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let name = match (left.name(), right.name()) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        let mut gens: Vec<Perm> = Vec::new();
        for a in left.generators() {
            let mut images: Vec<u16> = Vec::with_capacity(degree);
            images.extend_from_slice(a.images());
            images.extend((0..dr as u16).map(|x| x + dl as u16));
            gens.push(Perm::from_images(images).unwrap());
        }
        for b in right.generators() {
            let mut images: Vec<u16> = (0..dl as u16).collect();
            images.extend(b.images().iter().map(|&x| x + dl as u16));
            gens.push(Perm::from_images(images).unwrap());
        }
        let group = PermGroup::from_sorted_elements(degree, gens, elements, name)?;
        Ok(DirectProduct {
            group,
            left: left.clone(),
            right: right.clone(),
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn left(&self) -> &PermGroup {
        &self.left
    }

    pub fn right(&self) -> &PermGroup {
        &self.right
    }

    /// Product element index of the pair `(i, j)`.
    pub fn pair_to_index(&self, i: u32, j: u32) -> u32 {
        i * self.right.order() as u32 + j
    }

    /// Pair `(i, j)` of factor element indices for a product element index.
    pub fn index_to_pair(&self, idx: u32) -> (u32, u32) {
        let r = self.right.order() as u32;
        (idx / r, idx % r)
    }

    /// First-projection epimorphism `G × H → G`.
    pub fn proj_left(&self) -> GroupHom {
        let images = (0..self.group.order() as u32)
            .map(|idx| self.index_to_pair(idx).0)
            .collect();
        GroupHom::from_images(self.group.clone(), self.left.clone(), images)
            .expect("projection is a hom")
    }

    /// Second-projection epimorphism `G × H → H`.
    pub fn proj_right(&self) -> GroupHom {
        let images = (0..self.group.order() as u32)
            .map(|idx| self.index_to_pair(idx).1)
            .collect();
        GroupHom::from_images(self.group.clone(), self.right.clone(), images)
            .expect("projection is a hom")
    }
}

/// Direct product `G × H` (see [`DirectProduct`] for the pair/index layout).
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<DirectProduct> {
    DirectProduct::new(g, h)
}

// ---------------------------------------------------------------------------
// Presets and descriptors
// ---------------------------------------------------------------------------

/// JSON group descriptor: explicit degree and generator image lists.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDescriptor {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<Vec<u16>>,
}

impl GroupDescriptor {
    pub fn of_group(g: &PermGroup) -> GroupDescriptor {
        GroupDescriptor {
            name: g.name().map(|s| s.to_string()),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| Perm::from_images(imgs.clone()))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::from_generators(self.degree, gens, self.name.clone())
    }
}

/// Build a group from a preset name.  Recognized: `trivial` (or `1`),
/// `Cn` (cyclic, n ≤ 30), `Sn` (symmetric, n ≤ 5), `An` (alternating, n ≤ 5),
/// `Dn` (dihedral of order 2n, n ≤ 12), `Q8`, `V4`.
pub fn preset(name: &str) -> Result<PermGroup> {
    let parse_n = |rest: &str, max: usize, label: &str| -> Result<usize> {
        let n: usize = rest
            .parse()
            .map_err(|_| Error::UnknownPreset(name.to_string()))?;
        if n < 1 || n > max {
            return Err(Error::UnknownPreset(format!(
                "{name} (supported: {label}1..{label}{max})"
            )));
        }
        Ok(n)
    };
    match name {
        "trivial" | "1" => Ok(PermGroup::trivial()),
        "Q8" => {
            // Left regular action on {1, -1, i, -i, j, -j, k, -k}.
            let i = Perm::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4])?;
            let j = Perm::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3])?;
            PermGroup::from_generators(8, vec![i, j], Some("Q8".into()))
        }
        "V4" => {
            let a = Perm::from_cycles(4, &[vec![0, 1]])?;
            let b = Perm::from_cycles(4, &[vec![2, 3]])?;
            PermGroup::from_generators(4, vec![a, b], Some("V4".into()))
        }
        _ if name.starts_with('C') => {
            let n = parse_n(&name[1..], 30, "C")?;
            if n == 1 {
                return Ok(PermGroup::trivial().renamed("C1"));
            }
            let cycle = Perm::from_cycles(n, &[(0..n as u16).collect()])?;
            PermGroup::from_generators(n, vec![cycle], Some(format!("C{n}")))
        }
        _ if name.starts_with('S') => {
            let n = parse_n(&name[1..], 5, "S")?;
            if n == 1 {
                return Ok(PermGroup::trivial().renamed("S1"));
            }
            let t = Perm::from_cycles(n, &[vec![0, 1]])?;
            let c = Perm::from_cycles(n, &[(0..n as u16).collect()])?;
            PermGroup::from_generators(n, vec![t, c], Some(format!("S{n}")))
        }
        _ if name.starts_with('A') => {
            let n = parse_n(&name[1..], 5, "A")?;
            if n <= 2 {
                return Ok(PermGroup::trivial().renamed(format!("A{n}")));
            }
            let mut gens = vec![Perm::from_cycles(n, &[vec![0, 1, 2]])?];
            if n >= 4 {
                // A 3-cycle on the tail; together with (0 1 2) generates A_n
                // for n ≤ 5.
                gens.push(Perm::from_cycles(n, &[vec![n as u16 - 3, n as u16 - 2, n as u16 - 1]])?);
            }
            PermGroup::from_generators(n, gens, Some(format!("A{n}")))
        }
        _ if name.starts_with('D') => {
            let n = parse_n(&name[1..], 12, "D")?;
            if n < 3 {
                return Err(Error::UnknownPreset(format!(
                    "{name} (dihedral presets need n ≥ 3)"
                )));
            }
            let r = Perm::from_cycles(n, &[(0..n as u16).collect()])?;
            let s_images = (0..n as u16).map(|i| (n as u16 - i) % n as u16).collect();
            let s = Perm::from_images(s_images)?;
            PermGroup::from_generators(n, vec![r, s], Some(format!("D{n}")))
        }
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

/// Build a group from either a preset name or a JSON group descriptor.
pub fn group_from_spec(spec: &str) -> Result<PermGroup> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        let desc: GroupDescriptor =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(format!("group descriptor: {e}")))?;
        desc.build()
    } else {
        preset(trimmed)
    }
}

/// The desk-scale verification suite: all preset groups of order ≤ 24 that
/// the crate's test batteries sweep.
pub fn desk_suite() -> Vec<PermGroup> {
    ["trivial", "C2", "C3", "C4", "V4", "C6", "S3", "D8", "Q8", "A4", "D12", "S4"]
        .iter()
        .map(|n| preset(n).expect("preset"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_orders() {
        // Dn is dihedral of order 2n; suite orders stay ≤ 24.
        let cases = [
            ("trivial", 1),
            ("C2", 2),
            ("C3", 3),
            ("C4", 4),
            ("V4", 4),
            ("C6", 6),
            ("S3", 6),
            ("Q8", 8),
            ("A4", 12),
            ("D8", 16),
            ("D12", 24),
            ("S4", 24),
            ("S5", 120),
            ("A5", 60),
            ("C30", 30),
        ];
        for (name, order) in cases {
            assert_eq!(preset(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn descriptor_example_klein_four() {
        // degree 4, gens {(0 1), (2 3)} → order 4.
        let g = group_from_spec(r#"{"degree":4,"generators":[[1,0,2,3],[0,1,3,2]]}"#).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.elements().iter().all(|p| p.order() <= 2));
    }

    #[test]
    fn elements_sorted_canonically() {
        let g = preset("S3").unwrap();
        for w in g.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(g.order(), 6);
        assert!(g.elem(0).is_identity());
    }

    #[test]
    fn mul_and_inverse_indices() {
        let g = preset("S4").unwrap();
        for i in 0..g.order() as u32 {
            assert_eq!(g.mul_idx(i, g.inv_idx(i)), g.identity_index());
            for j in 0..g.order() as u32 {
                let direct = g.elem(i).compose(g.elem(j));
                assert_eq!(g.elem(g.mul_idx(i, j)), &direct);
            }
        }
    }

    #[test]
    fn order_cap_enforced() {
        std::env::set_var("BISETPLUS_ORDER_CAP", "100");
        let err = preset("S5").unwrap_err();
        std::env::remove_var("BISETPLUS_ORDER_CAP");
        assert!(matches!(err, Error::OrderCapExceeded { cap: 100, .. }));
        // Back to default afterwards.
        assert!(preset("S5").is_ok());
    }

    #[test]
    fn conjugate_of_generated_c2_in_s3() {
        // ^((12)) ⟨(13)⟩ = ⟨(23)⟩ in S3 (0-based: ^((01)) ⟨(02)⟩ = ⟨(12)⟩).
        let s3 = preset("S3").unwrap();
        let g = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let h = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 2]]).unwrap()])
            .unwrap();
        let conj = conjugate_subgroup(&g, &h);
        let expected = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![1, 2]]).unwrap()])
            .unwrap();
        assert_eq!(conj, expected);
    }

    #[test]
    fn conjugation_hom_roundtrip() {
        let s3 = preset("S3").unwrap();
        let g = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let h = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        let c = conjugation_hom(&g, &h);
        assert_eq!(c.kind(), HomKind::Isomorphism);
        let back = conjugation_hom(&g.inverse(), c.target());
        let round = c.then(&back).unwrap();
        assert_eq!(round, GroupHom::identity(&h));
        // Identity element conjugation.
        let e = Perm::identity(3);
        assert_eq!(conjugation_hom(&e, &h), GroupHom::identity(&h));
    }

    #[test]
    fn double_cosets_partition_s3() {
        let s3 = preset("S3").unwrap();
        let c2 = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        let c3 = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()])
            .unwrap();
        // C2 \ S3 / C3 has one double coset; C2 \ S3 / C2 has two (sizes 2+4).
        assert_eq!(double_cosets(&s3, &c2, &c3).unwrap().len(), 1);
        let reps = double_cosets(&s3, &c2, &c2).unwrap();
        assert_eq!(reps.len(), 2);
        // Sizes partition |S3| = 6.
        let mut total = 0usize;
        for &t in &reps {
            let mut members = std::collections::HashSet::new();
            for &x in &s3.member_indices(&c2).unwrap() {
                for &y in &s3.member_indices(&c2).unwrap() {
                    members.insert(s3.mul_idx(s3.mul_idx(x, t), y));
                }
            }
            total += members.len();
        }
        assert_eq!(total, 6);
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = preset("S3").unwrap();
        let a3 = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()])
            .unwrap();
        let (q, epi) = quotient_group(&s3, &a3).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(epi.kind(), HomKind::Epimorphism);
        assert_eq!(epi.kernel(), a3);
        assert_eq!(q.order() * a3.order(), s3.order());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = preset("S3").unwrap();
        let c2 = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        assert!(matches!(
            quotient_group(&s3, &c2),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn normalizers_in_s3() {
        let s3 = preset("S3").unwrap();
        let c2 = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1]]).unwrap()])
            .unwrap();
        let c3 = s3
            .subgroup_from_perms(&[Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()])
            .unwrap();
        assert_eq!(normalizer(&s3, &c2).unwrap(), c2);
        assert_eq!(normalizer(&s3, &c3).unwrap(), s3);
    }

    #[test]
    fn direct_product_row_major() {
        let c2 = preset("C2").unwrap();
        let s3 = preset("S3").unwrap();
        let p = DirectProduct::new(&c2, &s3).unwrap();
        assert_eq!(p.group().order(), 12);
        assert_eq!(p.group().degree(), 5);
        for idx in 0..12u32 {
            let (i, j) = p.index_to_pair(idx);
            assert_eq!(p.pair_to_index(i, j), idx);
            // The product element really is the pair (elem_i, elem_j).
            let e = p.group().elem(idx);
            assert_eq!(&e.images()[..2], c2.elem(i).images());
            let tail: Vec<u16> = e.images()[2..].iter().map(|&x| x - 2).collect();
            assert_eq!(tail, s3.elem(j).images());
        }
        let pl = p.proj_left();
        let pr = p.proj_right();
        assert_eq!(pl.kind(), HomKind::Epimorphism);
        assert_eq!(pr.kind(), HomKind::Epimorphism);
    }

    #[test]
    fn quotient_by_trivial_is_regular_representation() {
        let s3 = preset("S3").unwrap();
        let triv = s3.subgroup_from_perms(&[]).unwrap();
        let (q, epi) = quotient_group(&s3, &triv).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.degree(), 6);
        // Bijective, so classified as an isomorphism.
        assert_eq!(epi.kind(), HomKind::Isomorphism);
    }

    #[test]
    fn hom_from_generator_images_rejects_inconsistent() {
        let c4 = preset("C4").unwrap();
        let c2 = preset("C2").unwrap();
        // C4 → C2 sending the 4-cycle to the transposition is a hom.
        let g4 = c4.generators()[0].clone();
        let g2 = c2.generators()[0].clone();
        let h = GroupHom::from_generator_images(c4.clone(), c2.clone(), &[(g4.clone(), g2)]);
        assert!(h.is_ok());
        // C3 → C2 sending the 3-cycle to the transposition is not.
        let c3 = preset("C3").unwrap();
        let g3 = c3.generators()[0].clone();
        let g2 = c2.generators()[0].clone();
        let bad = GroupHom::from_generator_images(c3, c2, &[(g3, g2)]);
        assert!(bad.is_err());
    }
}
