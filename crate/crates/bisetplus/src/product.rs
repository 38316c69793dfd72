//! Subgroups of a direct product `G × H`: projections, kernels, the Goursat
//! quotient isomorphism, the star (relative) product, and conjugation.
//!
//! A [`ProductSubgroup`] stores its element pairs as sorted `(left index,
//! right index)` pairs against fixed left/right groups.  Because ambient
//! direct-product groups list their elements in row-major pair order, the
//! pair `(i, j)` corresponds to ambient element index `i·|H| + j`, which
//! lets product subgroups reuse the subgroup-lattice machinery of the
//! ambient group for canonicalization.

use crate::error::{Error, Result};
use crate::group::{direct_product, DirectProduct, GroupHom, PermGroup};
use crate::lattice::canonical_class_key;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// A subgroup `D ≤ G × H`, with cached projections and kernels.
#[derive(Clone)]
pub struct ProductSubgroup {
    left: PermGroup,
    right: PermGroup,
    /// Sorted `(left element index, right element index)` pairs.
    pairs: Vec<(u32, u32)>,
    /// `p₁(D) = {g : (g, h) ∈ D}` as a sorted member key in the left group.
    p1: Vec<u32>,
    /// `p₂(D) = {h : (g, h) ∈ D}` as a sorted member key in the right group.
    p2: Vec<u32>,
    /// `k₁(D) = {g : (g, 1) ∈ D}`.
    k1: Vec<u32>,
    /// `k₂(D) = {h : (1, h) ∈ D}`.
    k2: Vec<u32>,
}

impl std::fmt::Debug for ProductSubgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProductSubgroup")
            .field("left_order", &self.left.order())
            .field("right_order", &self.right.order())
            .field("pairs", &self.pairs)
            .finish()
    }
}

impl PartialEq for ProductSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs && self.left == other.left && self.right == other.right
    }
}

impl Eq for ProductSubgroup {}

impl ProductSubgroup {
    /// Validating constructor: checks index ranges and closure under the
    /// componentwise operation.
    pub fn new(left: &PermGroup, right: &PermGroup, pairs: Vec<(u32, u32)>) -> Result<Self> {
        let mut pairs = pairs;
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.is_empty() {
            return Err(Error::NotASubgroup("empty pair set".into()));
        }
        for &(g, h) in &pairs {
            if g as usize >= left.order() || h as usize >= right.order() {
                return Err(Error::NotASubgroup(format!(
                    "pair ({g}, {h}) out of range for groups of order {} and {}",
                    left.order(),
                    right.order()
                )));
            }
        }
        let id = (left.identity_index(), right.identity_index());
        if pairs.binary_search(&id).is_err() {
            return Err(Error::NotASubgroup("missing identity pair".into()));
        }
        for &(a, b) in &pairs {
            for &(c, d) in &pairs {
                let prod = (left.mul_idx(a, c), right.mul_idx(b, d));
                if pairs.binary_search(&prod).is_err() {
                    return Err(Error::NotASubgroup(format!(
                        "pair set not closed: ({a}, {b})·({c}, {d}) missing"
                    )));
                }
            }
        }
        Ok(Self::from_trusted_pairs(left.clone(), right.clone(), pairs))
    }

    /// Constructor for pair sets already known to be subgroups (results of
    /// star products, conjugation, closures).  Sorts and deduplicates but
    /// does not re-verify closure.
    pub(crate) fn from_trusted_pairs(
        left: PermGroup,
        right: PermGroup,
        mut pairs: Vec<(u32, u32)>,
    ) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        debug_assert!(pairs
            .binary_search(&(left.identity_index(), right.identity_index()))
            .is_ok());
        let id_l = left.identity_index();
        let id_r = right.identity_index();
        let mut p1: Vec<u32> = pairs.iter().map(|&(g, _)| g).collect();
        p1.sort_unstable();
        p1.dedup();
        let mut p2: Vec<u32> = pairs.iter().map(|&(_, h)| h).collect();
        p2.sort_unstable();
        p2.dedup();
        let k1: Vec<u32> = pairs.iter().filter(|&&(_, h)| h == id_r).map(|&(g, _)| g).collect();
        let k2: Vec<u32> = pairs.iter().filter(|&&(g, _)| g == id_l).map(|&(_, h)| h).collect();
        // Goursat: |D| = |p₁|·|k₂| = |p₂|·|k₁|.
        debug_assert_eq!(pairs.len(), p1.len() * k2.len());
        debug_assert_eq!(pairs.len(), p2.len() * k1.len());
        Self { left, right, pairs, p1, p2, k1, k2 }
    }

    /// Closure of pair generators under the componentwise operation.
    pub fn generated(left: &PermGroup, right: &PermGroup, gens: &[(u32, u32)]) -> Result<Self> {
        for &(g, h) in gens {
            if g as usize >= left.order() || h as usize >= right.order() {
                return Err(Error::NotASubgroup(format!("generator pair ({g}, {h}) out of range")));
            }
        }
        let id = (left.identity_index(), right.identity_index());
        let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
        seen.insert(id, ());
        let mut queue = vec![id];
        let mut qi = 0;
        while qi < queue.len() {
            let (a, b) = queue[qi];
            qi += 1;
            for &(g, h) in gens {
                let nxt = (left.mul_idx(a, g), right.mul_idx(b, h));
                if seen.insert(nxt, ()).is_none() {
                    queue.push(nxt);
                }
            }
        }
        Ok(Self::from_trusted_pairs(left.clone(), right.clone(), queue))
    }

    /// The graph `{(α(x), x)} ≤ target × source` of a group homomorphism.
    pub fn graph_of_hom(hom: &GroupHom) -> Self {
        let left = hom.target().clone();
        let right = hom.source().clone();
        let pairs: Vec<(u32, u32)> = (0..right.order() as u32)
            .map(|x| (hom.apply_idx(x), x))
            .collect();
        Self::from_trusted_pairs(left, right, pairs)
    }

    /// The diagonal `Δ(K) = {(k, k)}` of a common subgroup of both factors.
    /// `k_left` / `k_right` are the member keys of the same abstract subgroup
    /// in the left and right groups; they must enumerate matching elements.
    pub fn diagonal(left: &PermGroup, right: &PermGroup, k_left: &[u32], k_right: &[u32]) -> Self {
        debug_assert_eq!(k_left.len(), k_right.len());
        let pairs: Vec<(u32, u32)> = k_left.iter().zip(k_right).map(|(&g, &h)| (g, h)).collect();
        Self::from_trusted_pairs(left.clone(), right.clone(), pairs)
    }

    pub fn left(&self) -> &PermGroup {
        &self.left
    }

    pub fn right(&self) -> &PermGroup {
        &self.right
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn contains_pair(&self, g: u32, h: u32) -> bool {
        self.pairs.binary_search(&(g, h)).is_ok()
    }

    /// First projection `p₁(D)` as a member key in the left group.
    pub fn p1(&self) -> &[u32] {
        &self.p1
    }

    /// Second projection `p₂(D)` as a member key in the right group.
    pub fn p2(&self) -> &[u32] {
        &self.p2
    }

    /// Left kernel `k₁(D) = {g : (g, 1) ∈ D}`.
    pub fn k1(&self) -> &[u32] {
        &self.k1
    }

    /// Right kernel `k₂(D) = {1 ∈ g-side pairs: (1, h) ∈ D}`.
    pub fn k2(&self) -> &[u32] {
        &self.k2
    }

    pub fn p1_group(&self) -> PermGroup {
        group_from_key(&self.left, &self.p1)
    }

    pub fn p2_group(&self) -> PermGroup {
        group_from_key(&self.right, &self.p2)
    }

    pub fn k1_group(&self) -> PermGroup {
        group_from_key(&self.left, &self.k1)
    }

    pub fn k2_group(&self) -> PermGroup {
        group_from_key(&self.right, &self.k2)
    }

    /// Conjugate by `(a, b) ∈ G × H`: `{(a g a⁻¹, b h b⁻¹)}`.
    pub fn conjugate(&self, a: u32, b: u32) -> Self {
        let pairs: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(g, h)| (self.left.conj_idx(a, g), self.right.conj_idx(b, h)))
            .collect();
        Self::from_trusted_pairs(self.left.clone(), self.right.clone(), pairs)
    }

    /// Star product: for `D ≤ G × H` and `E ≤ H × K`,
    /// `D * E = {(g, k) : ∃h, (g, h) ∈ D and (h, k) ∈ E} ≤ G × K`.
    pub fn star(&self, other: &ProductSubgroup) -> Result<ProductSubgroup> {
        if self.right != other.left {
            return Err(Error::CompositionMismatch(
                "star requires the right group of the first factor to equal the left group of the second".into(),
            ));
        }
        // Index `other` by its first component.
        let mut by_first: HashMap<u32, Vec<u32>> = HashMap::new();
        for &(h, k) in &other.pairs {
            by_first.entry(h).or_default().push(k);
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for &(g, h) in &self.pairs {
            if let Some(ks) = by_first.get(&h) {
                for &k in ks {
                    pairs.push((g, k));
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(ProductSubgroup::from_trusted_pairs(
            self.left.clone(),
            other.right.clone(),
            pairs,
        ))
    }

    /// `D * K = {g : ∃k ∈ K, (g, k) ∈ D}` for `K` a subgroup of the right
    /// group, given by its member key.  Returns a member key in the left
    /// group.
    pub fn star_right(&self, k: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .pairs
            .iter()
            .filter(|&&(_, h)| k.binary_search(&h).is_ok())
            .map(|&(g, _)| g)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `K * D = {h : ∃k ∈ K, (k, h) ∈ D}` for `K` a subgroup of the left
    /// group.  Returns a member key in the right group.
    pub fn star_left(&self, k: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .pairs
            .iter()
            .filter(|&&(g, _)| k.binary_search(&g).is_ok())
            .map(|&(_, h)| h)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `D ∩ (G × K)` for `K` a subgroup of the right group (this equals
    /// `D * Δ(K)` as a subgroup of `G × K`, kept in right-group indices).
    pub fn intersect_right(&self, k: &[u32]) -> Vec<(u32, u32)> {
        self.pairs
            .iter()
            .filter(|&&(_, h)| k.binary_search(&h).is_ok())
            .copied()
            .collect()
    }

    /// `D ∩ (K × H)` for `K` a subgroup of the left group.
    pub fn intersect_left(&self, k: &[u32]) -> Vec<(u32, u32)> {
        self.pairs
            .iter()
            .filter(|&&(g, _)| k.binary_search(&g).is_ok())
            .copied()
            .collect()
    }

    /// The same pair set viewed inside `L × R` for subgroups `L` of the left
    /// group and `R` of the right group (given by member keys) that contain
    /// all pair components.  Because parent elements are canonically sorted,
    /// position within the member key is the element index in the standalone
    /// subgroup.
    pub fn reindexed(&self, left_key: &[u32], right_key: &[u32]) -> ProductSubgroup {
        let new_left = if left_key.len() == self.left.order() {
            self.left.clone()
        } else {
            group_from_key(&self.left, left_key)
        };
        let new_right = if right_key.len() == self.right.order() {
            self.right.clone()
        } else {
            group_from_key(&self.right, right_key)
        };
        let pairs: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(g, h)| {
                let gi = left_key.binary_search(&g).expect("pair component outside left key");
                let hi = right_key.binary_search(&h).expect("pair component outside right key");
                (gi as u32, hi as u32)
            })
            .collect();
        ProductSubgroup::from_trusted_pairs(new_left, new_right, pairs)
    }

    /// View inside `p₁(D) × H` (tightening the left group).
    pub fn reindexed_left(&self) -> ProductSubgroup {
        let all_right: Vec<u32> = (0..self.right.order() as u32).collect();
        self.reindexed(&self.p1, &all_right)
    }

    /// View inside `p₁(D) × p₂(D)` (tightening both groups).
    pub fn reindexed_both(&self) -> ProductSubgroup {
        self.reindexed(&self.p1, &self.p2)
    }

    /// The transpose (opposite) subgroup `{(h, g) : (g, h) ∈ D} ≤ H × G`.
    pub fn transpose(&self) -> ProductSubgroup {
        let pairs: Vec<(u32, u32)> = self.pairs.iter().map(|&(g, h)| (h, g)).collect();
        ProductSubgroup::from_trusted_pairs(self.right.clone(), self.left.clone(), pairs)
    }

    /// Member key of this subgroup inside the ambient direct product group
    /// (row-major pair indexing).
    pub fn ambient_members(&self) -> Vec<u32> {
        let order_r = self.right.order() as u32;
        // Pairs are sorted, so the row-major images are sorted too.
        self.pairs.iter().map(|&(g, h)| g * order_r + h).collect()
    }

    /// Canonical pair list of the conjugacy class of this subgroup under
    /// `G × H`: the minimal ambient member key in the conjugation orbit,
    /// mapped back to pairs.
    pub fn canonical_pairs(&self) -> Vec<(u32, u32)> {
        let ambient = product_of(&self.left, &self.right);
        let key = self.ambient_members();
        let canon = canonical_class_key(ambient.group(), &key);
        let order_r = self.right.order() as u32;
        canon.iter().map(|&m| (m / order_r, m % order_r)).collect()
    }

    /// The canonical representative of this subgroup's conjugacy class.
    pub fn canonical_rep(&self) -> ProductSubgroup {
        let pairs = self.canonical_pairs();
        ProductSubgroup::from_trusted_pairs(self.left.clone(), self.right.clone(), pairs)
    }
}

/// Standalone group for a member key of a parent group.
pub(crate) fn group_from_key(parent: &PermGroup, key: &[u32]) -> PermGroup {
    let elems = key.iter().map(|&m| parent.elem(m).clone()).collect();
    PermGroup::from_members(parent.degree(), elems, None)
}

// ---------------------------------------------------------------------------
// Ambient direct-product cache
// ---------------------------------------------------------------------------

type ProductCache =
    Mutex<HashMap<(u64, u64, usize, usize), Vec<(PermGroup, PermGroup, Arc<DirectProduct>)>>>;

static PRODUCTS: OnceLock<ProductCache> = OnceLock::new();

/// Shared ambient direct product `G × H`, built once per ordered pair of
/// structurally distinct groups.
pub fn product_of(g: &PermGroup, h: &PermGroup) -> Arc<DirectProduct> {
    let cache = PRODUCTS.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (g.fingerprint(), h.fingerprint(), g.order(), h.order());
    {
        let map = cache.lock().unwrap();
        if let Some(bucket) = map.get(&key) {
            for (a, b, dp) in bucket {
                if a == g && b == h {
                    return Arc::clone(dp);
                }
            }
        }
    }
    let dp = Arc::new(direct_product(g, h).expect("direct product of cached groups"));
    let mut map = cache.lock().unwrap();
    let bucket = map.entry(key).or_default();
    for (a, b, cached) in bucket.iter() {
        if a == g && b == h {
            return Arc::clone(cached);
        }
    }
    bucket.push((g.clone(), h.clone(), Arc::clone(&dp)));
    dp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{inclusion_hom, preset};

    fn delta(g: &PermGroup) -> ProductSubgroup {
        let all: Vec<u32> = (0..g.order() as u32).collect();
        ProductSubgroup::diagonal(g, g, &all, &all)
    }

    #[test]
    fn projections_and_kernels_of_diagonal() {
        let s3 = preset("S3").unwrap();
        let d = delta(&s3);
        assert_eq!(d.order(), 6);
        assert_eq!(d.p1().len(), 6);
        assert_eq!(d.p2().len(), 6);
        assert_eq!(d.k1(), &[s3.identity_index()]);
        assert_eq!(d.k2(), &[s3.identity_index()]);
    }

    #[test]
    fn new_rejects_non_closed_pair_sets() {
        let c4 = preset("C4").unwrap();
        let id = c4.identity_index();
        // {(e,e), (x, e)} with x of order 4 is not closed.
        let x = (0..4u32).find(|&i| i != id && c4.mul_idx(i, i) != id).unwrap();
        let err = ProductSubgroup::new(&c4, &c4, vec![(id, id), (x, id)]);
        assert!(err.is_err());
    }

    #[test]
    fn goursat_counts_on_a_graph() {
        // Graph of the inclusion C2 ↪ S3: p₁ = C2, k₁ = 1, p₂ = C2, k₂ = 1.
        let s3 = preset("S3").unwrap();
        let c2 = {
            let t = (0..6u32).find(|&i| {
                i != s3.identity_index() && s3.mul_idx(i, i) == s3.identity_index()
            });
            s3.generated_by_indices(&[t.unwrap()])
        };
        let hom = inclusion_hom(&c2, &s3).unwrap();
        let graph = ProductSubgroup::graph_of_hom(&hom);
        assert_eq!(graph.order(), 2);
        assert_eq!(graph.p1().len(), 2);
        assert_eq!(graph.p2().len(), 2);
        assert_eq!(graph.k1().len(), 1);
        assert_eq!(graph.k2().len(), 1);
        assert_eq!(graph.left(), &s3);
        assert_eq!(graph.right(), &c2);
    }

    #[test]
    fn star_of_diagonals_is_diagonal() {
        let s3 = preset("S3").unwrap();
        let d = delta(&s3);
        let s = d.star(&d).unwrap();
        assert_eq!(s, d);
    }

    #[test]
    fn star_composes_graphs_of_homs() {
        // Graph(α) * Graph(β) = Graph(β then α) for composable homs.
        let c4 = preset("C4").unwrap();
        let c2 = {
            let id = c4.identity_index();
            let sq = (0..4u32).find(|&i| i != id && c4.mul_idx(i, i) == id).unwrap();
            c4.generated_by_indices(&[sq])
        };
        let inc = inclusion_hom(&c2, &c4).unwrap(); // C2 → C4
        let g_inc = ProductSubgroup::graph_of_hom(&inc); // ≤ C4 × C2
        // Star with the transpose gives the graph of the identity on the image.
        let g_t = g_inc.transpose(); // ≤ C2 × C4
        let comp = g_inc.star(&g_t).unwrap(); // ≤ C4 × C4
        assert_eq!(comp.order(), 2);
        for &(a, b) in comp.pairs() {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn star_right_and_intersection() {
        let s3 = preset("S3").unwrap();
        let d = delta(&s3);
        // Δ(S3) * C3 = C3 (as a subset of the left copy).
        let id = s3.identity_index();
        let three = (0..6u32)
            .find(|&i| i != id && s3.mul_idx(i, s3.mul_idx(i, i)) == id)
            .unwrap();
        let c3 = s3.generated_by_indices(&[three]);
        let c3_key = s3.member_indices(&c3).unwrap();
        assert_eq!(d.star_right(&c3_key), c3_key);
        assert_eq!(d.intersect_right(&c3_key).len(), 3);
        assert_eq!(d.star_left(&c3_key), c3_key);
    }

    #[test]
    fn conjugation_preserves_order_and_moves_pairs() {
        let s3 = preset("S3").unwrap();
        let id = s3.identity_index();
        let t = (0..6u32).find(|&i| i != id && s3.mul_idx(i, i) == id).unwrap();
        let c2 = s3.generated_by_indices(&[t]);
        let key = s3.member_indices(&c2).unwrap();
        let all: Vec<u32> = (0..6).collect();
        let d = ProductSubgroup::diagonal(&s3, &s3, &key, &key);
        let g3 = (0..6u32)
            .find(|&i| i != id && s3.mul_idx(i, s3.mul_idx(i, i)) == id)
            .unwrap();
        let c = d.conjugate(g3, id);
        assert_eq!(c.order(), d.order());
        assert_ne!(c.pairs(), d.pairs()); // left side moved, right side fixed
        let _ = all;
    }

    #[test]
    fn canonical_rep_is_conjugation_invariant() {
        let s3 = preset("S3").unwrap();
        let d = delta(&s3);
        let base = d.canonical_pairs();
        for a in 0..6u32 {
            for b in 0..6u32 {
                assert_eq!(d.conjugate(a, b).canonical_pairs(), base);
            }
        }
    }

    #[test]
    fn ambient_members_row_major() {
        let c2 = preset("C2").unwrap();
        let d = delta(&c2);
        // Pairs (0,0), (1,1) → ambient indices 0, 3 in C2 × C2.
        assert_eq!(d.ambient_members(), vec![0, 3]);
        let amb = product_of(&c2, &c2);
        assert_eq!(amb.group().order(), 4);
    }
}
