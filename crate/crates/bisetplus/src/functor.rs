//! Based coefficient systems: the values a globalized construction is fed
//! with. A [`CoeffFunctor`] assigns to every group a finite free ℤ-module
//! with a distinguished basis, lets admissible correspondence classes act on
//! those bases, and carries a commutative ring structure on each value.
//!
//! Two instances are provided through one implementation: the constant
//! functor (`const`, every value ℤ on a single basis element `∗`) and the
//! character functor `fibered:n` whose basis at `H` is the set of
//! homomorphisms `H → ℤ/n`. The constant functor is the degenerate case
//! `n = 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::biset::{mackey_compose, standard_basis, BisetElement};
use crate::category::{describe_product_subgroup, CategorySpec, Cond};
use crate::error::{Error, Result};
use crate::group::{quotient_group, GroupHom, PermGroup};
use crate::lattice::lattice_of;
use crate::product::ProductSubgroup;

/// Abelianization `H → H/[H,H]` together with an invariant-factor
/// decomposition of the quotient: explicit generators `g_1, …, g_k` of
/// orders `d_1 | d_2 | … | d_k` and the coordinates of every quotient
/// element in those generators.
pub struct Abelianization {
    group: PermGroup,
    quotient: PermGroup,
    projection: GroupHom,
    factors: Vec<u64>,
    generators: Vec<u32>,
    coords: Vec<Vec<u64>>,
}

impl Abelianization {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn quotient(&self) -> &PermGroup {
        &self.quotient
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    /// Invariant factors `d_1 | d_2 | … | d_k` (empty for a perfect group).
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Indices in the quotient group; `generators()[i]` has order
    /// `factors()[i]` and the quotient is the direct product of the cyclic
    /// subgroups they generate.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// Coordinates of quotient element `q` with respect to the generators:
    /// `q = Π generators()[i] ^ coords(q)[i]`.
    pub fn coords(&self, q: u32) -> &[u64] {
        &self.coords[q as usize]
    }
}

/// Compute the abelianization of `h`: commutator subgroup by closure of all
/// commutators, quotient by right-translation on cosets, then an
/// invariant-factor decomposition with explicit generators.
pub fn abelianization(h: &PermGroup) -> Result<Abelianization> {
    let n = h.order() as u32;
    let mut comms = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xi = h.inv_idx(x);
            let yi = h.inv_idx(y);
            let c = h.mul_idx(h.mul_idx(h.mul_idx(xi, yi), x), y);
            comms.push(c);
        }
    }
    comms.sort_unstable();
    comms.dedup();
    let derived = h.generated_by_indices(&comms);
    let (quotient, projection) = quotient_group(h, &derived)?;
    let (factors, generators) = cyclic_decompose(&quotient);
    let coords = coordinate_table(&quotient, &factors, &generators);
    Ok(Abelianization {
        group: h.clone(),
        quotient,
        projection,
        factors,
        generators,
        coords,
    })
}

/// Split a finite abelian group into cyclic invariant factors. Returns the
/// factor orders in divisibility order (each divides the next) and matching
/// generator indices. Repeatedly picks an element of maximal order; its
/// cyclic subgroup is a direct summand, and a complement is located in the
/// subgroup lattice.
fn cyclic_decompose(q: &PermGroup) -> (Vec<u64>, Vec<u32>) {
    if q.order() == 1 {
        return (Vec::new(), Vec::new());
    }
    let lat = lattice_of(q);
    let full_key: Vec<u32> = (0..q.order() as u32).collect();
    let mut cur = lat.index_of_members(&full_key).expect("full group is in its own lattice");
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    loop {
        let members = lat.entry(cur).members().to_vec();
        if members.len() == 1 {
            break;
        }
        let mut best = members[0];
        let mut best_ord = 0usize;
        for &m in &members {
            let o = q.elements()[m as usize].order();
            if o > best_ord {
                best_ord = o;
                best = m;
            }
        }
        factors.push(best_ord as u64);
        gens.push(best);
        let mut cyc = Vec::with_capacity(best_ord);
        let mut p = q.identity_index();
        for _ in 0..best_ord {
            cyc.push(p);
            p = q.mul_idx(p, best);
        }
        cyc.sort_unstable();
        let target = members.len() / best_ord;
        let mut found = None;
        for i in 0..lat.len() as u32 {
            let e = lat.entry(i);
            if e.order() == target
                && lat.is_included(i, cur)
                && intersection_size(e.members(), &cyc) == 1
            {
                found = Some(i);
                break;
            }
        }
        cur = found.expect("a maximal-order cyclic subgroup of an abelian group is a direct summand");
    }
    factors.reverse();
    gens.reverse();
    (factors, gens)
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// `coords[q][i]` = exponent of generator `i` in the unique product
/// expression of quotient element `q`.
fn coordinate_table(q: &PermGroup, factors: &[u64], gens: &[u32]) -> Vec<Vec<u64>> {
    let order = q.order();
    let mut coords = vec![Vec::new(); order];
    let mut seen = 0usize;
    let mut exps = vec![0u64; factors.len()];
    loop {
        let mut elt = q.identity_index();
        for (i, &g) in gens.iter().enumerate() {
            for _ in 0..exps[i] {
                elt = q.mul_idx(elt, g);
            }
        }
        debug_assert!(coords[elt as usize].is_empty() || exps.iter().all(|&e| e == 0));
        coords[elt as usize] = exps.clone();
        seen += 1;
        // mixed-radix increment, least significant index last
        let mut i = factors.len();
        loop {
            if i == 0 {
                debug_assert_eq!(seen, order, "generators must span the quotient");
                return coords;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < factors[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// One homomorphism `H → ℤ/n`: the images `t_i` of the invariant-factor
/// generators and the full value table on element indices of `H`.
struct HomData {
    images: Vec<u64>,
    values: Vec<u64>,
}

/// All homomorphisms `H → ℤ/n`, enumerated through the abelianization and
/// sorted lexicographically by generator images.
struct HomBasis {
    modulus: u64,
    factors: Vec<u64>,
    homs: Vec<HomData>,
    by_values: HashMap<Vec<u64>, usize>,
}

fn build_hom_basis(h: &PermGroup, modulus: u64) -> Result<HomBasis> {
    let ab = abelianization(h)?;
    let factors = ab.factors().to_vec();
    let k = factors.len();
    let mut steps = Vec::with_capacity(k);
    let mut counts = Vec::with_capacity(k);
    for &d in &factors {
        let g = gcd(d, modulus);
        steps.push(modulus / g);
        counts.push(g);
    }
    let total: u64 = counts.iter().product();
    let mut homs = Vec::with_capacity(total as usize);
    let mut by_values = HashMap::with_capacity(total as usize);
    let mut digits = vec![0u64; k];
    loop {
        let images: Vec<u64> = digits.iter().zip(&steps).map(|(&c, &s)| c * s).collect();
        let mut values = vec![0u64; h.order()];
        for (x, v) in values.iter_mut().enumerate() {
            let q = ab.projection().apply_idx(x as u32);
            let mut acc = 0u64;
            for (i, &t) in images.iter().enumerate() {
                acc = (acc + t % modulus * (ab.coords(q)[i] % modulus)) % modulus;
            }
            *v = acc;
        }
        let idx = homs.len();
        let prev = by_values.insert(values.clone(), idx);
        debug_assert!(prev.is_none(), "distinct generator images give distinct characters");
        homs.push(HomData { images, values });
        let mut i = k;
        let done = loop {
            if i == 0 {
                break true;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < counts[i] {
                break false;
            }
            digits[i] = 0;
        };
        if done {
            break;
        }
    }
    debug_assert_eq!(homs.len() as u64, total);
    Ok(HomBasis {
        modulus,
        factors,
        homs,
        by_values,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of homomorphisms `H → ℤ/n`; equals `Π gcd(d_i, n)` over the
/// invariant factors `d_i` of the abelianization.
pub fn hom_group_size(h: &PermGroup, n: u64) -> Result<usize> {
    let ab = abelianization(h)?;
    Ok(ab.factors().iter().map(|&d| gcd(d, n) as usize).product())
}

/// All homomorphisms `H → ℤ/n` as full value tables (element index →
/// residue), in the basis order used by [`FiberedFunctor`].
pub fn hom_group(h: &PermGroup, n: u64) -> Result<Vec<Vec<u64>>> {
    if n == 0 {
        return Err(Error::Parse("character modulus must be at least 1".into()));
    }
    let hb = build_hom_basis(h, n)?;
    Ok(hb.homs.iter().map(|hd| hd.values.clone()).collect())
}

/// A based coefficient system with a commutative ring structure on each
/// value. `act` is only defined for correspondence classes admissible for
/// [`CoeffFunctor::base_spec`] (left projection full); combinations are
/// returned as sparse integer vectors over the target basis.
pub trait CoeffFunctor: Send + Sync {
    /// Selector string: `const` or `fibered:n`.
    fn name(&self) -> String;

    /// The category data this functor is defined on: open scope, condition
    /// `p1` (restriction, inflation, deflation, isomorphism; no induction).
    fn base_spec(&self) -> CategorySpec;

    fn basis_size(&self, h: &PermGroup) -> Result<usize>;

    /// Human-readable basis label (`∗`, `[1,0]`).
    fn basis_label(&self, h: &PermGroup, idx: usize) -> Result<String>;

    /// JSON form of the label: the string `"∗"` for the constant functor, a
    /// list of generator images for characters.
    fn label_value(&self, h: &PermGroup, idx: usize) -> Result<serde_json::Value>;

    /// Inverse of [`CoeffFunctor::basis_label`], tolerant of bracket and
    /// whitespace variations.
    fn parse_label(&self, h: &PermGroup, text: &str) -> Result<usize>;

    /// Action of the class of `d ≤ P×Q` as a map `F(Q) → F(P)` on basis
    /// element `idx` of `F(Q)`.
    fn act(&self, d: &ProductSubgroup, idx: usize) -> Result<Vec<(usize, i64)>>;

    /// Product of two basis elements of `F(H)`.
    fn value_mult(&self, h: &PermGroup, a: usize, b: usize) -> Result<Vec<(usize, i64)>>;

    /// Basis index of the ring unit of `F(H)`.
    fn value_one(&self, h: &PermGroup) -> Result<usize>;

    /// Least `n` such that every character of the basis-label monoid of any
    /// degree takes values in the `n`-th roots of unity.
    fn conductor(&self) -> u64 {
        1
    }

    /// Invariant factors `g₁ | g₂ | …` of the (abelian) monoid of basis
    /// labels at `h`; empty when the monoid is trivial.
    fn label_invariants(&self, _h: &PermGroup) -> Result<Vec<u64>> {
        Ok(Vec::new())
    }

    /// Coordinates of basis label `idx` with respect to the invariant
    /// factors, each in `0..gᵢ`.
    fn label_coordinates(&self, _h: &PermGroup, _idx: usize) -> Result<Vec<u64>> {
        Ok(Vec::new())
    }
}

/// The one concrete coefficient system: homomorphisms into `ℤ/n`, acted on
/// by transport-of-characters with a kill-on-kernel deflation rule. The
/// modulus-1 case is the constant functor.
pub struct FiberedFunctor {
    modulus: u64,
    cache: Mutex<HashMap<u64, Vec<(PermGroup, Arc<HomBasis>)>>>,
}

impl FiberedFunctor {
    pub fn new(modulus: u64) -> Result<FiberedFunctor> {
        if modulus == 0 {
            return Err(Error::Parse("character modulus must be at least 1".into()));
        }
        Ok(FiberedFunctor {
            modulus,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn basis_data(&self, h: &PermGroup) -> Result<Arc<HomBasis>> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some(bucket) = cache.get(&h.fingerprint()) {
                for (g, hb) in bucket {
                    if g == h {
                        return Ok(Arc::clone(hb));
                    }
                }
            }
        }
        let built = Arc::new(build_hom_basis(h, self.modulus)?);
        let mut cache = self.cache.lock().unwrap();
        let bucket = cache.entry(h.fingerprint()).or_default();
        for (g, hb) in bucket.iter() {
            if g == h {
                return Ok(Arc::clone(hb));
            }
        }
        bucket.push((h.clone(), Arc::clone(&built)));
        Ok(built)
    }

    fn require_left_full(&self, d: &ProductSubgroup) -> Result<()> {
        if d.p1().len() != d.left().order() {
            return Err(Error::ProjectionNotFull(format!(
                "{} acts only through classes with full left projection; got projection of order {} in a group of order {}",
                self.name(),
                d.p1().len(),
                d.left().order()
            )));
        }
        Ok(())
    }
}

impl CoeffFunctor for FiberedFunctor {
    fn name(&self) -> String {
        if self.modulus == 1 {
            "const".into()
        } else {
            format!("fibered:{}", self.modulus)
        }
    }

    fn base_spec(&self) -> CategorySpec {
        CategorySpec::open(&[Cond::P1])
    }

    fn basis_size(&self, h: &PermGroup) -> Result<usize> {
        Ok(self.basis_data(h)?.homs.len())
    }

    fn basis_label(&self, h: &PermGroup, idx: usize) -> Result<String> {
        let hb = self.basis_data(h)?;
        let hd = hb.homs.get(idx).ok_or_else(|| {
            Error::UnknownLabel(format!("basis index {idx} out of range for {}", self.name()))
        })?;
        if self.modulus == 1 {
            Ok("∗".into())
        } else {
            let parts: Vec<String> = hd.images.iter().map(|t| t.to_string()).collect();
            Ok(format!("[{}]", parts.join(",")))
        }
    }

    fn label_value(&self, h: &PermGroup, idx: usize) -> Result<serde_json::Value> {
        let hb = self.basis_data(h)?;
        let hd = hb.homs.get(idx).ok_or_else(|| {
            Error::UnknownLabel(format!("basis index {idx} out of range for {}", self.name()))
        })?;
        if self.modulus == 1 {
            Ok(serde_json::Value::String("∗".into()))
        } else {
            Ok(serde_json::Value::Array(
                hd.images.iter().map(|&t| serde_json::Value::from(t)).collect(),
            ))
        }
    }

    fn parse_label(&self, h: &PermGroup, text: &str) -> Result<usize> {
        let t = text.trim();
        if self.modulus == 1 {
            return if t == "∗" || t == "*" || t == "1" || t.is_empty() || t == "[]" {
                Ok(0)
            } else {
                Err(Error::UnknownLabel(format!(
                    "the constant functor has the single basis label ∗; got {t:?}"
                )))
            };
        }
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        let mut images = Vec::new();
        if !inner.trim().is_empty() {
            for piece in inner.split(',') {
                let v: u64 = piece.trim().parse().map_err(|_| {
                    Error::UnknownLabel(format!("bad character label component {piece:?}"))
                })?;
                images.push(v % self.modulus);
            }
        }
        let hb = self.basis_data(h)?;
        if images.len() != hb.factors.len() {
            return Err(Error::UnknownLabel(format!(
                "character label {t:?} has {} components; expected {} (invariant factors {:?})",
                images.len(),
                hb.factors.len(),
                hb.factors
            )));
        }
        for (idx, hd) in hb.homs.iter().enumerate() {
            if hd.images == images {
                return Ok(idx);
            }
        }
        Err(Error::UnknownLabel(format!(
            "{t:?} is not a character of this group (images must be multiples of n/gcd(d_i,n))"
        )))
    }

    fn act(&self, d: &ProductSubgroup, idx: usize) -> Result<Vec<(usize, i64)>> {
        self.require_left_full(d)?;
        let hb_q = self.basis_data(d.right())?;
        let phi = hb_q.homs.get(idx).ok_or_else(|| {
            Error::UnknownLabel(format!("basis index {idx} out of range for {}", self.name()))
        })?;
        for &k in d.k2() {
            if phi.values[k as usize] != 0 {
                return Ok(Vec::new());
            }
        }
        let mut values = vec![0u64; d.left().order()];
        for &(p, q) in d.pairs() {
            values[p as usize] = phi.values[q as usize];
        }
        let hb_p = self.basis_data(d.left())?;
        let target = *hb_p
            .by_values
            .get(&values)
            .expect("transported character is a character");
        Ok(vec![(target, 1)])
    }

    fn value_mult(&self, h: &PermGroup, a: usize, b: usize) -> Result<Vec<(usize, i64)>> {
        let hb = self.basis_data(h)?;
        let (da, db) = (&hb.homs[a], &hb.homs[b]);
        let values: Vec<u64> = da
            .values
            .iter()
            .zip(&db.values)
            .map(|(&x, &y)| (x + y) % hb.modulus)
            .collect();
        let idx = *hb
            .by_values
            .get(&values)
            .expect("product of characters is a character");
        Ok(vec![(idx, 1)])
    }

    fn value_one(&self, h: &PermGroup) -> Result<usize> {
        let hb = self.basis_data(h)?;
        let idx = *hb
            .by_values
            .get(&vec![0u64; h.order()])
            .expect("trivial character present");
        debug_assert_eq!(idx, 0, "trivial character sorts first");
        Ok(idx)
    }

    fn conductor(&self) -> u64 {
        self.modulus
    }

    fn label_invariants(&self, h: &PermGroup) -> Result<Vec<u64>> {
        let hb = self.basis_data(h)?;
        Ok(hb.factors.iter().map(|&d| gcd(d, self.modulus)).collect())
    }

    fn label_coordinates(&self, h: &PermGroup, idx: usize) -> Result<Vec<u64>> {
        let hb = self.basis_data(h)?;
        if idx >= hb.homs.len() {
            return Err(Error::UnknownLabel(format!(
                "label index {idx} out of range for a basis of size {}",
                hb.homs.len()
            )));
        }
        Ok(hb.homs[idx]
            .images
            .iter()
            .zip(&hb.factors)
            .map(|(&image, &d)| {
                let step = self.modulus / gcd(d, self.modulus);
                image / step
            })
            .collect())
    }
}

/// The constant coefficient system: every value is ℤ on one basis element
/// `∗`, every admissible class acts as the identity.
pub fn constant_functor() -> FiberedFunctor {
    FiberedFunctor::new(1).expect("modulus 1 is valid")
}

/// The character coefficient system `H ↦ ℤ·Hom(H, ℤ/n)`.
pub fn fibered_functor(n: u64) -> Result<FiberedFunctor> {
    FiberedFunctor::new(n)
}

/// Parse a functor selector: `const` or `fibered:n`.
pub fn functor_from_selector(selector: &str) -> Result<Box<dyn CoeffFunctor>> {
    let s = selector.trim();
    if s == "const" {
        return Ok(Box::new(constant_functor()));
    }
    if let Some(rest) = s.strip_prefix("fibered:") {
        let n: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in functor selector {selector:?}")))?;
        return Ok(Box::new(fibered_functor(n)?));
    }
    Err(Error::Parse(format!(
        "unknown functor selector {selector:?} (expected \"const\" or \"fibered:n\")"
    )))
}

/// Canonical sparse combination: sorted by index, zero-free.
pub fn normalize_combo(raw: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (i, c) in raw {
        let e = acc.entry(i).or_insert(0);
        *e += c;
        if *e == 0 {
            acc.remove(&i);
        }
    }
    acc.into_iter().collect()
}

/// Apply the linear extension of `f.act` along a formal sum of classes to a
/// dense vector over `basis(x.right())`.
pub fn act_vector(f: &dyn CoeffFunctor, x: &BisetElement, v: &[i64]) -> Result<Vec<i64>> {
    let mut out = vec![0i64; f.basis_size(x.left())?];
    for (d, c) in x.terms() {
        for (q, &vq) in v.iter().enumerate() {
            if vq == 0 {
                continue;
            }
            for (p, w) in f.act(d, q)? {
                out[p] += c * vq * w;
            }
        }
    }
    Ok(out)
}

/// Matrix of the linear extension of `f.act` along `x`, one column per basis
/// element of `F(x.right())`.
pub fn act_matrix(f: &dyn CoeffFunctor, x: &BisetElement) -> Result<Vec<Vec<i64>>> {
    let n = f.basis_size(x.right())?;
    let mut cols = Vec::with_capacity(n);
    for q in 0..n {
        let mut v = vec![0i64; n];
        v[q] = 1;
        cols.push(act_vector(f, x, &v)?);
    }
    Ok(cols)
}

/// Bilinear extension of `value_mult` to sparse combinations over
/// `basis(h)`.
pub fn mult_combos(
    f: &dyn CoeffFunctor,
    h: &PermGroup,
    a: &[(usize, i64)],
    b: &[(usize, i64)],
) -> Result<Vec<(usize, i64)>> {
    let mut raw = Vec::new();
    for &(i, ci) in a {
        for &(j, cj) in b {
            for (k, ck) in f.value_mult(h, i, j)? {
                raw.push((k, ci * cj * ck));
            }
        }
    }
    Ok(normalize_combo(raw))
}

/// Outcome of [`check_functor_laws`]: how many individual identities were
/// checked and a description of each failure.
#[derive(Debug)]
pub struct FunctorLawReport {
    pub cases: u64,
    pub failures: Vec<String>,
}

impl FunctorLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify the functor and ring laws of `f` over the given groups:
/// identity classes act as the identity; the action along a composite of
/// standard classes equals the composite of the actions; each value ring is
/// commutative, associative and unital; classes with trivial right kernel
/// act by ring homomorphisms; and surjection-type class pairs satisfy the
/// Frobenius projection identities.
pub fn check_functor_laws(f: &dyn CoeffFunctor, groups: &[PermGroup]) -> Result<FunctorLawReport> {
    let spec = f.base_spec();
    let mut cases = 0u64;
    let mut failures = Vec::new();

    for g in groups {
        // identity action
        let id = BisetElement::identity(g);
        let n = f.basis_size(g)?;
        let mat = act_matrix(f, &id)?;
        cases += 1;
        for (q, col) in mat.iter().enumerate() {
            for (p, &c) in col.iter().enumerate() {
                let want = if p == q { 1 } else { 0 };
                if c != want {
                    failures.push(format!(
                        "identity action on {} is not the identity matrix at ({p},{q})",
                        group_name(g)
                    ));
                }
            }
        }

        // ring laws on values
        let one = f.value_one(g)?;
        for a in 0..n {
            let ua = f.value_mult(g, one, a)?;
            let au = f.value_mult(g, a, one)?;
            cases += 1;
            if normalize_combo(ua) != vec![(a, 1)] || normalize_combo(au) != vec![(a, 1)] {
                failures.push(format!("unit law fails at basis {a} of {}", group_name(g)));
            }
            for b in 0..n {
                let ab = f.value_mult(g, a, b)?;
                let ba = f.value_mult(g, b, a)?;
                cases += 1;
                if normalize_combo(ab.clone()) != normalize_combo(ba) {
                    failures.push(format!(
                        "commutativity fails at basis ({a},{b}) of {}",
                        group_name(g)
                    ));
                }
                for c in 0..n {
                    let left = mult_combos(f, g, &normalize_combo(ab.clone()), &[(c, 1)])?;
                    let bc = normalize_combo(f.value_mult(g, b, c)?);
                    let right = mult_combos(f, g, &[(a, 1)], &bc)?;
                    cases += 1;
                    if left != right {
                        failures.push(format!(
                            "associativity fails at basis ({a},{b},{c}) of {}",
                            group_name(g)
                        ));
                    }
                }
            }
        }
    }

    // composition law over all admissible standard-class pairs
    for p in groups {
        for q in groups {
            let left_classes = admissible_classes(&spec, p, q)?;
            for r in groups {
                let right_classes = admissible_classes(&spec, q, r)?;
                for d in &left_classes {
                    let x = BisetElement::from_class(d);
                    let mx = act_matrix(f, &x)?;
                    for e in &right_classes {
                        let y = BisetElement::from_class(e);
                        let my = act_matrix(f, &y)?;
                        let xy = mackey_compose(&x, &y)?;
                        let direct = act_matrix(f, &xy)?;
                        let composed = matrix_product(&mx, &my);
                        cases += 1;
                        if direct != composed {
                            failures.push(format!(
                                "composition law fails for [{}] · [{}]",
                                describe_product_subgroup(d),
                                describe_product_subgroup(e)
                            ));
                        }
                    }
                }
            }
        }
    }

    // restriction-type classes (trivial right kernel) act by ring maps
    for p in groups {
        for q in groups {
            let n_q = f.basis_size(q)?;
            for d in admissible_classes(&spec, p, q)? {
                if d.k2().len() != 1 {
                    continue;
                }
                let one_q = f.value_one(q)?;
                let one_p = f.value_one(p)?;
                cases += 1;
                if normalize_combo(f.act(&d, one_q)?) != vec![(one_p, 1)] {
                    failures.push(format!(
                        "unit is not preserved along [{}]",
                        describe_product_subgroup(&d)
                    ));
                }
                for a in 0..n_q {
                    let fa = normalize_combo(f.act(&d, a)?);
                    for b in 0..n_q {
                        let fb = normalize_combo(f.act(&d, b)?);
                        let ab = normalize_combo(f.value_mult(q, a, b)?);
                        let mut lhs = Vec::new();
                        for (i, c) in ab {
                            for (j, w) in f.act(&d, i)? {
                                lhs.push((j, c * w));
                            }
                        }
                        let rhs = mult_combos(f, p, &fa, &fb)?;
                        cases += 1;
                        if normalize_combo(lhs) != rhs {
                            failures.push(format!(
                                "ring map law fails at basis ({a},{b}) along [{}]",
                                describe_product_subgroup(&d)
                            ));
                        }
                    }
                }
            }
        }
    }

    // Frobenius identities for surjection-type pairs: i(a)·b = i(a·t(b))
    for p in groups {
        for q in groups {
            for e in admissible_classes(&spec, q, p)? {
                // e is the graph of a surjection P → Q exactly when both
                // projections are full and the left kernel is trivial
                if e.p2().len() != e.right().order() || e.k1().len() != 1 {
                    continue;
                }
                let d = e.transpose();
                if spec.s_member(&d)? {
                    let n_p = f.basis_size(p)?;
                    let n_q = f.basis_size(q)?;
                    for a in 0..n_p {
                        let ia = normalize_combo(f.act(&e, a)?);
                        for b in 0..n_q {
                            let tb = normalize_combo(f.act(&d, b)?);
                            let lhs = mult_combos(f, q, &ia, &[(b, 1)])?;
                            let atb = mult_combos(f, p, &[(a, 1)], &tb)?;
                            let mut rhs = Vec::new();
                            for (i, c) in atb {
                                for (j, w) in f.act(&e, i)? {
                                    rhs.push((j, c * w));
                                }
                            }
                            cases += 1;
                            if lhs != normalize_combo(rhs) {
                                failures.push(format!(
                                    "projection identity fails at ({a},{b}) along [{}]",
                                    describe_product_subgroup(&e)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(FunctorLawReport { cases, failures })
}

fn admissible_classes(
    spec: &CategorySpec,
    p: &PermGroup,
    q: &PermGroup,
) -> Result<Vec<ProductSubgroup>> {
    let mut out = Vec::new();
    for d in standard_basis(p, q) {
        if spec.s_member(&d)? {
            out.push(d);
        }
    }
    Ok(out)
}

fn matrix_product(mx: &[Vec<i64>], my: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = mx.first().map_or(0, Vec::len);
    my.iter()
        .map(|col| {
            let mut out = vec![0i64; rows];
            for (q, &c) in col.iter().enumerate() {
                if c != 0 {
                    for (p, &m) in mx[q].iter().enumerate() {
                        out[p] += c * m;
                    }
                }
            }
            out
        })
        .collect()
}

fn group_name(g: &PermGroup) -> String {
    g.name().map(str::to_string).unwrap_or_else(|| format!("group of order {}", g.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::{elementary, Elementary};
    use crate::group::preset;

    fn named(n: &str) -> PermGroup {
        preset(n).unwrap()
    }

    #[test]
    fn abelianization_invariant_factors() {
        assert_eq!(abelianization(&named("S3")).unwrap().factors(), &[2]);
        assert_eq!(abelianization(&named("C6")).unwrap().factors(), &[6]);
        assert_eq!(abelianization(&named("Q8")).unwrap().factors(), &[2, 2]);
        assert_eq!(abelianization(&named("V4")).unwrap().factors(), &[2, 2]);
        assert_eq!(abelianization(&named("A4")).unwrap().factors(), &[3]);
        assert_eq!(abelianization(&named("C1")).unwrap().factors(), &[] as &[u64]);
        assert_eq!(abelianization(&named("S4")).unwrap().factors(), &[2]);
    }

    #[test]
    fn abelianization_coordinates_are_consistent() {
        for name in ["C6", "Q8", "D4", "S3", "A4"] {
            let ab = abelianization(&named(name)).unwrap();
            let q = ab.quotient();
            for x in 0..q.order() as u32 {
                let mut rebuilt = q.identity_index();
                for (i, &g) in ab.generators().iter().enumerate() {
                    for _ in 0..ab.coords(x)[i] {
                        rebuilt = q.mul_idx(rebuilt, g);
                    }
                }
                assert_eq!(rebuilt, x);
            }
            for (i, &g) in ab.generators().iter().enumerate() {
                assert_eq!(
                    q.elements()[g as usize].order() as u64,
                    ab.factors()[i],
                    "generator order must match its invariant factor"
                );
            }
        }
    }

    #[test]
    fn hom_group_counts() {
        assert_eq!(hom_group(&named("S3"), 2).unwrap().len(), 2);
        assert_eq!(hom_group(&named("C3"), 2).unwrap().len(), 1);
        assert_eq!(hom_group(&named("C1"), 12).unwrap().len(), 1);
        assert_eq!(hom_group(&named("C6"), 4).unwrap().len(), 2);
        assert_eq!(hom_group(&named("Q8"), 2).unwrap().len(), 4);
        assert_eq!(hom_group(&named("C4"), 4).unwrap().len(), 4);
        for (name, n) in [("S3", 6u64), ("Q8", 4), ("C6", 6), ("D6", 4)] {
            let g = named(name);
            let expected = hom_group_size(&g, n).unwrap();
            assert_eq!(hom_group(&g, n).unwrap().len(), expected);
        }
    }

    #[test]
    fn hom_values_are_homomorphisms() {
        let g = named("D4");
        for values in hom_group(&g, 4).unwrap() {
            for x in 0..g.order() as u32 {
                for y in 0..g.order() as u32 {
                    let xy = g.mul_idx(x, y);
                    assert_eq!(
                        values[xy as usize],
                        (values[x as usize] + values[y as usize]) % 4
                    );
                }
            }
        }
    }

    #[test]
    fn constant_functor_shape() {
        let f = constant_functor();
        assert_eq!(f.name(), "const");
        let s3 = named("S3");
        assert_eq!(f.basis_size(&s3).unwrap(), 1);
        assert_eq!(f.basis_label(&s3, 0).unwrap(), "∗");
        assert_eq!(f.value_one(&s3).unwrap(), 0);
        assert_eq!(f.value_mult(&s3, 0, 0).unwrap(), vec![(0, 1)]);
        assert_eq!(f.parse_label(&s3, "*").unwrap(), 0);
    }

    #[test]
    fn constant_functor_acts_as_identity() {
        let f = constant_functor();
        let s3 = named("S3");
        let c2 = s3.generated_by_indices(&[1]);
        let res = elementary(&Elementary::Res {
            big: s3.clone(),
            small: c2.clone(),
        })
        .unwrap();
        for (d, _) in res.terms() {
            assert_eq!(f.act(d, 0).unwrap(), vec![(0, 1)]);
        }
        // induction classes have a proper left projection and are rejected
        let ind = elementary(&Elementary::Ind {
            big: s3.clone(),
            small: c2,
        })
        .unwrap();
        let (d, _) = ind.terms().next().unwrap();
        assert!(matches!(f.act(d, 0), Err(Error::ProjectionNotFull(_))));
    }

    #[test]
    fn fibered_restriction_is_character_restriction() {
        let f = fibered_functor(2).unwrap();
        let s3 = named("S3");
        let sgn_values: Vec<Vec<u64>> = hom_group(&s3, 2).unwrap();
        assert_eq!(sgn_values.len(), 2);
        // basis 1 is the sign character; restrict it to a transposition subgroup
        let c2 = s3
            .elements()
            .iter()
            .position(|p| p.order() == 2)
            .map(|i| s3.generated_by_indices(&[i as u32]))
            .unwrap();
        let res = elementary(&Elementary::Res {
            big: s3.clone(),
            small: c2.clone(),
        })
        .unwrap();
        let (d, _) = res.terms().next().unwrap();
        let restricted = f.act(d, 1).unwrap();
        assert_eq!(restricted.len(), 1);
        // sign is nontrivial on the transposition, so it restricts to the
        // nontrivial character of C2, which is basis index 1
        assert_eq!(restricted[0], (1, 1));
        let trivial = f.act(d, 0).unwrap();
        assert_eq!(trivial, vec![(0, 1)]);
    }

    #[test]
    fn fibered_deflation_kills_characters_faithful_on_the_kernel() {
        // C4 → C4/C2: a character of C4 of order 4 (modulus 4) does not
        // factor through the quotient and deflates to zero; characters
        // trivial on C2 factor and survive.
        let f = fibered_functor(4).unwrap();
        let c4 = named("C4");
        let sq = (0..c4.order() as u32)
            .find(|&i| c4.elements()[i as usize].order() == 2)
            .unwrap();
        let c2 = c4.generated_by_indices(&[sq]);
        let (_, epi) = quotient_group(&c4, &c2).unwrap();
        let def = elementary(&Elementary::Def { epi: epi.clone() }).unwrap();
        let (d, _) = def.terms().next().unwrap();
        let homs = hom_group(&c4, 4).unwrap();
        assert_eq!(homs.len(), 4);
        let mut killed = 0;
        let mut kept = 0;
        for (idx, values) in homs.iter().enumerate() {
            let image = f.act(d, idx).unwrap();
            if values[sq as usize] != 0 {
                assert!(image.is_empty(), "faithful character must deflate to zero");
                killed += 1;
            } else {
                assert_eq!(image.len(), 1);
                kept += 1;
            }
        }
        assert_eq!((killed, kept), (2, 2));

        // inflation along the same quotient composes with the projection
        let inf = elementary(&Elementary::Inf { epi }).unwrap();
        let (u, _) = inf.terms().next().unwrap();
        let q = u.right();
        for idx in 0..f.basis_size(q).unwrap() {
            let lifted = f.act(u, idx).unwrap();
            assert_eq!(lifted.len(), 1, "inflation has trivial right kernel");
        }
    }

    #[test]
    fn isogation_permutes_the_basis() {
        use crate::group::conjugation_hom;
        let s3 = named("S3");
        let f = fibered_functor(6).unwrap();
        let n = f.basis_size(&s3).unwrap();
        for a in 0..s3.order() as u32 {
            let iso = conjugation_hom(&s3.elements()[a as usize], &s3);
            let x = elementary(&Elementary::Iso { iso }).unwrap();
            let (d, _) = x.terms().next().unwrap();
            let mut seen = vec![false; n];
            for idx in 0..n {
                let image = f.act(d, idx).unwrap();
                assert_eq!(image.len(), 1);
                let (j, c) = image[0];
                assert_eq!(c, 1);
                assert!(!seen[j]);
                seen[j] = true;
            }
        }
    }

    #[test]
    fn functor_laws_pass_on_small_suite() {
        let groups: Vec<PermGroup> = ["C1", "C2", "C3", "S3"].iter().map(|n| named(n)).collect();
        for f in [constant_functor(), fibered_functor(2).unwrap()] {
            let report = check_functor_laws(&f, &groups).unwrap();
            assert!(report.passed(), "failures: {:?}", report.failures);
            assert!(report.cases > 50);
        }
    }

    #[test]
    fn corrupted_action_is_reported() {
        struct Corrupted(FiberedFunctor);
        impl CoeffFunctor for Corrupted {
            fn name(&self) -> String {
                self.0.name()
            }
            fn base_spec(&self) -> CategorySpec {
                self.0.base_spec()
            }
            fn basis_size(&self, h: &PermGroup) -> Result<usize> {
                self.0.basis_size(h)
            }
            fn basis_label(&self, h: &PermGroup, idx: usize) -> Result<String> {
                self.0.basis_label(h, idx)
            }
            fn label_value(&self, h: &PermGroup, idx: usize) -> Result<serde_json::Value> {
                self.0.label_value(h, idx)
            }
            fn parse_label(&self, h: &PermGroup, text: &str) -> Result<usize> {
                self.0.parse_label(h, text)
            }
            fn act(&self, d: &ProductSubgroup, idx: usize) -> Result<Vec<(usize, i64)>> {
                // drop the action along any class whose right kernel is the
                // whole right-hand group (total deflations)
                if d.k2().len() == d.right().order() && d.right().order() > 1 {
                    return Ok(Vec::new());
                }
                self.0.act(d, idx)
            }
            fn value_mult(&self, h: &PermGroup, a: usize, b: usize) -> Result<Vec<(usize, i64)>> {
                self.0.value_mult(h, a, b)
            }
            fn value_one(&self, h: &PermGroup) -> Result<usize> {
                self.0.value_one(h)
            }
        }
        let groups: Vec<PermGroup> = ["C1", "C2"].iter().map(|n| named(n)).collect();
        let report = check_functor_laws(&Corrupted(constant_functor()), &groups).unwrap();
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.contains("composition law")));
    }

    #[test]
    fn selector_round_trip() {
        assert_eq!(functor_from_selector("const").unwrap().name(), "const");
        assert_eq!(functor_from_selector("fibered:6").unwrap().name(), "fibered:6");
        assert!(functor_from_selector("fibered:0").is_err());
        assert!(functor_from_selector("weird").is_err());
        assert!(matches!(
            functor_from_selector("weird"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn label_round_trip() {
        let f = fibered_functor(4).unwrap();
        let c4 = named("C4");
        for idx in 0..f.basis_size(&c4).unwrap() {
            let label = f.basis_label(&c4, idx).unwrap();
            assert_eq!(f.parse_label(&c4, &label).unwrap(), idx);
        }
        assert!(f.parse_label(&c4, "[0,0]").is_err());
        // C2 into ℤ/4: generator images must be multiples of 2
        let c2 = named("C2");
        assert_eq!(f.basis_size(&c2).unwrap(), 2);
        assert_eq!(f.parse_label(&c2, "[2]").unwrap(), 1);
        assert!(f.parse_label(&c2, "[1]").is_err());
    }
}
