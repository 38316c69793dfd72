//! Subgroup lattices: full enumeration, conjugacy classes, inclusion order
//! and the Möbius function.
//!
//! Enumeration follows the cyclic-extension closure: seed with the trivial
//! and all cyclic subgroups, then repeatedly join known subgroups with
//! cyclic subgroups of prime-power order until stable.  (Joining with the
//! prime-power cyclics reaches the same closure as joining with all cyclic
//! subgroups, since every cyclic group is generated by its prime-power
//! parts.)  The closure runs over class representatives and expands each
//! discovered class into its full conjugation orbit, so the lattice stores
//! *every* subgroup.
//!
//! Subgroups are identified inside a fixed parent by their sorted member
//! index vector (the "member key"); keys are parent-scoped and never compared
//! across parents.  The representative of a conjugacy class is the subgroup
//! with the minimal member key.

use crate::error::{Error, Result};
use crate::group::{normalizer, PermGroup};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// One subgroup of the parent group.
pub struct SubgroupEntry {
    /// Sorted element indices in the parent.
    members: Vec<u32>,
    /// Indices (into `members`' parent) of a small generating set.
    gens: Vec<u32>,
    /// Conjugacy class id.
    class: u32,
    /// Parent element index `a` with `^a(this) = rep(class)`.
    conj_to_rep: u32,
    group: OnceLock<PermGroup>,
}

impl SubgroupEntry {
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// Parent element indices of a small generating set.
    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn conjugator_to_rep(&self) -> u32 {
        self.conj_to_rep
    }
}

/// A conjugacy class of subgroups.
pub struct ClassEntry {
    /// Entry index of the representative (minimal member key in the class).
    rep: u32,
    /// Entry indices of all members, ascending.
    members: Vec<u32>,
    normalizer: OnceLock<PermGroup>,
}

impl ClassEntry {
    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }
}

/// The complete subgroup lattice of a group.
pub struct SubgroupLattice {
    parent: PermGroup,
    entries: Vec<SubgroupEntry>,
    key_index: HashMap<Vec<u32>, u32>,
    classes: Vec<ClassEntry>,
    incl: OnceLock<Vec<Vec<u64>>>,
    mobius: OnceLock<HashMap<(u32, u32), i64>>,
}

impl SubgroupLattice {
    pub fn parent(&self) -> &PermGroup {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entry(&self, i: u32) -> &SubgroupEntry {
        &self.entries[i as usize]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, c: u32) -> &ClassEntry {
        &self.classes[c as usize]
    }

    /// Entry index for a member key, if the key names a subgroup.
    pub fn index_of_members(&self, members: &[u32]) -> Option<u32> {
        self.key_index.get(members).copied()
    }

    /// Entry index of the subgroup `h` (which must be a subgroup of the parent).
    pub fn index_of_subgroup(&self, h: &PermGroup) -> Result<u32> {
        let key = self.parent.member_indices(h)?;
        self.index_of_members(&key).ok_or_else(|| {
            Error::NotASubgroup("member set is not closed under the parent operation".into())
        })
    }

    /// The subgroup as a standalone group (cached per entry).
    pub fn group_of(&self, i: u32) -> &PermGroup {
        self.entries[i as usize].group.get_or_init(|| {
            let elems = self.entries[i as usize]
                .members
                .iter()
                .map(|&m| self.parent.elem(m).clone())
                .collect();
            PermGroup::from_members(self.parent.degree(), elems, None)
        })
    }

    /// The representative group of class `c`.
    pub fn rep_group(&self, c: u32) -> &PermGroup {
        self.group_of(self.classes[c as usize].rep)
    }

    /// Normalizer `N_G(rep)` of the class representative (cached).
    pub fn rep_normalizer(&self, c: u32) -> &PermGroup {
        self.classes[c as usize].normalizer.get_or_init(|| {
            normalizer(&self.parent, self.rep_group(c)).expect("rep is a subgroup")
        })
    }

    /// True if entry `i`'s subgroup is contained in entry `j`'s.
    pub fn is_included(&self, i: u32, j: u32) -> bool {
        let rows = self.incl_rows();
        rows[i as usize][j as usize / 64] >> (j as usize % 64) & 1 == 1
    }

    fn incl_rows(&self) -> &Vec<Vec<u64>> {
        self.incl.get_or_init(|| {
            let n = self.entries.len();
            let words = n.div_ceil(64);
            let mut rows = vec![vec![0u64; words]; n];
            for i in 0..n {
                for j in 0..n {
                    if subset_sorted(&self.entries[i].members, &self.entries[j].members) {
                        rows[i][j / 64] |= 1 << (j % 64);
                    }
                }
            }
            rows
        })
    }

    /// Möbius function `μ(L, K)` of the inclusion poset (0 unless `L ≤ K`).
    pub fn mobius(&self, l: u32, k: u32) -> i64 {
        if !self.is_included(l, k) {
            return 0;
        }
        let table = self.mobius.get_or_init(|| self.mobius_table());
        *table.get(&(l, k)).unwrap_or(&0)
    }

    fn mobius_table(&self) -> HashMap<(u32, u32), i64> {
        // Entries are sorted ascending by order, so a subgroup strictly
        // between L and K has an index strictly between... not necessarily,
        // but inclusion implies order divides, so iterating K by index and
        // accumulating over smaller indices is well-founded.
        let n = self.entries.len() as u32;
        let mut table = HashMap::new();
        for l in 0..n {
            table.insert((l, l), 1i64);
            for k in 0..n {
                if k == l || !self.is_included(l, k) {
                    continue;
                }
                // μ(L,K) = −Σ_{L ≤ M < K} μ(L,M); M ranges over subgroups of
                // K containing L, all of which have smaller index than K
                // except K itself (index order refines subgroup order).
                let mut acc = 0i64;
                for m in 0..n {
                    if m != k && self.is_included(l, m) && self.is_included(m, k) {
                        acc += *table.get(&(l, m)).unwrap_or(&0);
                    }
                }
                table.insert((l, k), -acc);
            }
        }
        table
    }

    /// All subgroup entry indices passing a conjugation-invariant predicate.
    /// Errors if the predicate distinguishes conjugate subgroups.
    pub fn sigma_filtered(&self, admissible: &dyn Fn(&PermGroup) -> bool) -> Result<Vec<u32>> {
        let mut keep = Vec::new();
        for (c, class) in self.classes.iter().enumerate() {
            let verdicts: Vec<bool> = class
                .members
                .iter()
                .map(|&i| admissible(self.group_of(i)))
                .collect();
            if verdicts.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::NotAdmissible(format!(
                    "predicate is not conjugation-invariant on class {c}"
                )));
            }
            if verdicts[0] {
                keep.extend(class.members.iter().copied());
            }
        }
        keep.sort_unstable();
        Ok(keep)
    }
}

fn subset_sorted(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut it = b.iter();
    'outer: for &x in a {
        for &y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Closure of a generating set given by parent element indices;
/// returns the sorted member list.
fn close_indices(parent: &PermGroup, gens: &[u32]) -> Vec<u32> {
    let id = parent.identity_index();
    let mut in_set = vec![false; parent.order()];
    in_set[id as usize] = true;
    let mut members = vec![id];
    let mut frontier = 0;
    while frontier < members.len() {
        let cur = members[frontier];
        frontier += 1;
        for &g in gens {
            let nxt = parent.mul_idx(cur, g);
            if !in_set[nxt as usize] {
                in_set[nxt as usize] = true;
                members.push(nxt);
            }
        }
    }
    members.sort_unstable();
    members
}

fn is_prime_power(mut n: usize) -> bool {
    if n < 2 {
        return false;
    }
    for p in 2..=n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
    }
    false
}

/// Enumerate every subgroup of `G`.
pub fn enumerate_subgroups(g: &PermGroup) -> SubgroupLattice {
    let parent = g.clone();
    let order = parent.order();
    let id = parent.identity_index();

    // --- seeds: trivial + all cyclic subgroups; extension set: the cyclic
    // subgroups of prime-power order (one canonical generator each).
    let mut cyclic_keys: HashMap<Vec<u32>, u32> = HashMap::new(); // key -> a generator
    for x in 0..order as u32 {
        if x == id {
            continue;
        }
        let key = close_indices(&parent, &[x]);
        cyclic_keys.entry(key).or_insert(x);
    }
    let pp_exts: Vec<(Vec<u32>, u32)> = {
        let mut v: Vec<(Vec<u32>, u32)> = cyclic_keys
            .iter()
            .filter(|(key, _)| is_prime_power(key.len()))
            .map(|(key, &gen)| (key.clone(), gen))
            .collect();
        v.sort();
        v
    };

    // --- discovered subgroups, with conjugacy structure.
    struct Found {
        members: Vec<u32>,
        gens: Vec<u32>,
        class: u32,
        conj_to_rep: u32,
    }
    let mut found: Vec<Found> = Vec::new();
    let mut key_to_found: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut class_count = 0u32;
    // worklist of (rep member key, rep generators)
    let mut worklist: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();

    let parent_gens: Vec<u32> = parent
        .generators()
        .iter()
        .map(|p| parent.index_of(p).unwrap())
        .collect();

    let discover = |members: Vec<u32>,
                        gens: Vec<u32>,
                        found: &mut Vec<Found>,
                        key_to_found: &mut HashMap<Vec<u32>, u32>,
                        class_count: &mut u32,
                        worklist: &mut Vec<(Vec<u32>, Vec<u32>)>| {
        if key_to_found.contains_key(&members) {
            return;
        }
        // Conjugation orbit BFS; track member = ^a(seed).
        let mut orbit: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut queue: Vec<(Vec<u32>, u32)> = vec![(members.clone(), id)];
        orbit.insert(members.clone(), id);
        let mut qi = 0;
        while qi < queue.len() {
            let (key, a) = queue[qi].clone();
            qi += 1;
            for &pg in &parent_gens {
                let mut conj: Vec<u32> = key.iter().map(|&m| parent.conj_idx(pg, m)).collect();
                conj.sort_unstable();
                let na = parent.mul_idx(pg, a);
                if !orbit.contains_key(&conj) {
                    orbit.insert(conj.clone(), na);
                    queue.push((conj, na));
                }
            }
        }
        let (min_key, &a_min) = orbit.iter().min_by(|a, b| a.0.cmp(b.0)).unwrap();
        let min_key = min_key.clone();
        let class = *class_count;
        *class_count += 1;
        // Generators of the rep: conjugate the seed's generators by a_min.
        let rep_gens: Vec<u32> = gens.iter().map(|&x| parent.conj_idx(a_min, x)).collect();
        let mut sorted: Vec<(&Vec<u32>, &u32)> = orbit.iter().collect();
        sorted.sort();
        for (key, &a) in sorted {
            // member = ^a(seed); conjugating by a_min·a⁻¹ lands on the rep.
            let c = parent.mul_idx(a_min, parent.inv_idx(a));
            let member_gens: Vec<u32> = gens.iter().map(|&x| parent.conj_idx(a, x)).collect();
            key_to_found.insert(key.clone(), found.len() as u32);
            found.push(Found {
                members: key.clone(),
                gens: member_gens,
                class,
                conj_to_rep: c,
            });
        }
        worklist.push((min_key, rep_gens));
    };

    discover(
        vec![id],
        vec![],
        &mut found,
        &mut key_to_found,
        &mut class_count,
        &mut worklist,
    );
    {
        let mut seeds: Vec<(&Vec<u32>, &u32)> = cyclic_keys.iter().collect();
        seeds.sort();
        for (key, &gen) in seeds {
            discover(
                key.clone(),
                vec![gen],
                &mut found,
                &mut key_to_found,
                &mut class_count,
                &mut worklist,
            );
        }
    }

    // --- cyclic-extension closure over class representatives.
    let mut wi = 0;
    while wi < worklist.len() {
        let (rep_key, rep_gens) = worklist[wi].clone();
        wi += 1;
        for (ext_key, ext_gen) in &pp_exts {
            if subset_sorted(ext_key, &rep_key) {
                continue;
            }
            let mut gens = rep_gens.clone();
            gens.push(*ext_gen);
            let join = close_indices(&parent, &gens);
            if key_to_found.contains_key(&join) {
                continue;
            }
            discover(
                join,
                gens,
                &mut found,
                &mut key_to_found,
                &mut class_count,
                &mut worklist,
            );
        }
    }

    // --- final deterministic ordering: by (order, member key).
    let mut perm: Vec<u32> = (0..found.len() as u32).collect();
    perm.sort_by(|&a, &b| {
        let (fa, fb) = (&found[a as usize], &found[b as usize]);
        fa.members
            .len()
            .cmp(&fb.members.len())
            .then_with(|| fa.members.cmp(&fb.members))
    });
    let mut entries = Vec::with_capacity(found.len());
    let mut key_index = HashMap::with_capacity(found.len());
    let mut class_members: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut old_class_of_new: Vec<u32> = Vec::with_capacity(found.len());
    for (new_idx, &old_idx) in perm.iter().enumerate() {
        let f = &found[old_idx as usize];
        key_index.insert(f.members.clone(), new_idx as u32);
        class_members.entry(f.class).or_default().push(new_idx as u32);
        old_class_of_new.push(f.class);
        entries.push(SubgroupEntry {
            members: f.members.clone(),
            gens: f.gens.clone(),
            class: u32::MAX, // patched below
            conj_to_rep: f.conj_to_rep,
            group: OnceLock::new(),
        });
    }
    // Classes ordered by their minimal entry (= representative, since the rep
    // has the minimal key within a class and index order refines key order
    // within a fixed subgroup order).
    let mut class_list: Vec<(u32, Vec<u32>)> = class_members.into_iter().collect();
    class_list.sort_by_key(|(_, members)| members[0]);
    let mut classes = Vec::with_capacity(class_list.len());
    for (new_class, (_, members)) in class_list.iter().enumerate() {
        for &m in members {
            entries[m as usize].class = new_class as u32;
        }
        classes.push(ClassEntry {
            rep: members[0],
            members: members.clone(),
            normalizer: OnceLock::new(),
        });
    }
    debug_assert!(entries.iter().all(|e| e.class != u32::MAX));
    let _ = old_class_of_new;

    SubgroupLattice {
        parent,
        entries,
        key_index,
        classes,
        incl: OnceLock::new(),
        mobius: OnceLock::new(),
    }
}

// ---------------------------------------------------------------------------
// Global caches
// ---------------------------------------------------------------------------

type LatticeCache = Mutex<HashMap<(u64, usize, usize), Vec<(PermGroup, Arc<SubgroupLattice>)>>>;

static LATTICES: OnceLock<LatticeCache> = OnceLock::new();

/// Shared lattice for a group; enumerated once per structurally distinct
/// group and cached for the process lifetime.
pub fn lattice_of(g: &PermGroup) -> Arc<SubgroupLattice> {
    let cache = LATTICES.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (g.fingerprint(), g.degree(), g.order());
    {
        let map = cache.lock().unwrap();
        if let Some(bucket) = map.get(&key) {
            for (grp, lat) in bucket {
                if grp == g {
                    return Arc::clone(lat);
                }
            }
        }
    }
    let lattice = Arc::new(enumerate_subgroups(g));
    let mut map = cache.lock().unwrap();
    let bucket = map.entry(key).or_default();
    for (grp, lat) in bucket.iter() {
        if grp == g {
            return Arc::clone(lat); // another thread won the race
        }
    }
    bucket.push((g.clone(), Arc::clone(&lattice)));
    lattice
}

/// True if a lattice for `g` is already cached.
pub fn lattice_cached(g: &PermGroup) -> bool {
    let cache = LATTICES.get_or_init(|| Mutex::new(HashMap::new()));
    let map = cache.lock().unwrap();
    map.get(&(g.fingerprint(), g.degree(), g.order()))
        .map(|bucket| bucket.iter().any(|(grp, _)| grp == g))
        .unwrap_or(false)
}

/// Parents up to this order have their full lattice enumerated on demand for
/// canonicalization; larger parents use memoized orbit minimization instead.
const LATTICE_CANON_MAX: usize = 160;

type CanonCache = Mutex<HashMap<(u64, usize), HashMap<Vec<u32>, Arc<Vec<u32>>>>>;

static CANON: OnceLock<CanonCache> = OnceLock::new();

/// Canonical representative key of the conjugacy class of the subgroup with
/// the given member key: the minimal member key in the conjugation orbit.
pub fn canonical_class_key(parent: &PermGroup, members: &[u32]) -> Arc<Vec<u32>> {
    if parent.order() <= LATTICE_CANON_MAX || lattice_cached(parent) {
        let lat = lattice_of(parent);
        let idx = lat
            .index_of_members(members)
            .expect("member key must name a subgroup of the parent");
        let rep = lat.class(lat.entry(idx).class()).rep();
        return Arc::new(lat.entry(rep).members().to_vec());
    }
    let cache = CANON.get_or_init(|| Mutex::new(HashMap::new()));
    let pkey = (parent.fingerprint(), parent.order());
    {
        let map = cache.lock().unwrap();
        if let Some(inner) = map.get(&pkey) {
            if let Some(rep) = inner.get(members) {
                return Arc::clone(rep);
            }
        }
    }
    // Orbit BFS by parent generators, taking the minimal key.
    let parent_gens: Vec<u32> = parent
        .generators()
        .iter()
        .map(|p| parent.index_of(p).unwrap())
        .collect();
    let mut orbit: Vec<Vec<u32>> = vec![members.to_vec()];
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(members.to_vec(), ());
    let mut qi = 0;
    while qi < orbit.len() {
        let key = orbit[qi].clone();
        qi += 1;
        for &pg in &parent_gens {
            let mut conj: Vec<u32> = key.iter().map(|&m| parent.conj_idx(pg, m)).collect();
            conj.sort_unstable();
            if !seen.contains_key(&conj) {
                seen.insert(conj.clone(), ());
                orbit.push(conj);
            }
        }
    }
    let rep = Arc::new(orbit.iter().min().unwrap().clone());
    let mut map = cache.lock().unwrap();
    let inner = map.entry(pkey).or_default();
    for key in orbit {
        inner.entry(key).or_insert_with(|| Arc::clone(&rep));
    }
    Arc::clone(&rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, preset};

    /// Brute-force oracle: all subgroups as closures of ≤ 3 element subsets.
    /// Complete for every group whose subgroups are 3-generated — true for
    /// the desk suite.
    fn oracle_subgroup_keys(g: &PermGroup) -> Vec<Vec<u32>> {
        let n = g.order() as u32;
        let mut keys: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
        keys.insert(close_indices(g, &[]));
        for a in 0..n {
            keys.insert(close_indices(g, &[a]));
            for b in (a + 1)..n {
                keys.insert(close_indices(g, &[a, b]));
                for c in (b + 1)..n {
                    keys.insert(close_indices(g, &[a, b, c]));
                }
            }
        }
        let mut v: Vec<Vec<u32>> = keys.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    #[test]
    fn s3_has_six_subgroups_in_four_classes() {
        let lat = enumerate_subgroups(&preset("S3").unwrap());
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.num_classes(), 4);
        // Orders ascending: 1, 2, 2, 2, 3, 6.
        let orders: Vec<usize> = (0..6).map(|i| lat.entry(i).order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        // Classes: 1, C2 (3 members), C3, S3.
        let sizes: Vec<usize> = (0..4).map(|c| lat.class(c).members().len()).collect();
        assert_eq!(sizes, vec![1, 3, 1, 1]);
    }

    #[test]
    fn v4_has_five_subgroups() {
        let lat = enumerate_subgroups(&preset("V4").unwrap());
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.num_classes(), 5); // abelian: all classes singletons
    }

    #[test]
    fn s4_has_thirty_subgroups_eleven_classes() {
        let lat = enumerate_subgroups(&preset("S4").unwrap());
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.num_classes(), 11);
    }

    #[test]
    fn matches_brute_force_oracle() {
        for name in ["C6", "S3", "Q8", "A4", "D8"] {
            let g = preset(name).unwrap();
            let lat = enumerate_subgroups(&g);
            let expected = oracle_subgroup_keys(&g);
            let got: Vec<Vec<u32>> = (0..lat.len() as u32)
                .map(|i| lat.entry(i).members().to_vec())
                .collect();
            assert_eq!(got, expected, "{name}");
        }
    }

    #[test]
    fn product_lattice_matches_oracle() {
        let c2 = preset("C2").unwrap();
        let s3 = preset("S3").unwrap();
        let p = direct_product(&s3, &c2).unwrap();
        let lat = enumerate_subgroups(p.group());
        let expected = oracle_subgroup_keys(p.group());
        let got: Vec<Vec<u32>> = (0..lat.len() as u32)
            .map(|i| lat.entry(i).members().to_vec())
            .collect();
        assert_eq!(got, expected);
        // V4 = C2 × C2 has 5 subgroups.
        let v4 = direct_product(&c2, &c2).unwrap();
        assert_eq!(enumerate_subgroups(v4.group()).len(), 5);
    }

    #[test]
    fn mobius_values() {
        let c4 = enumerate_subgroups(&preset("C4").unwrap());
        // chain 1 < C2 < C4.
        assert_eq!(c4.len(), 3);
        assert_eq!(c4.mobius(0, 0), 1);
        assert_eq!(c4.mobius(0, 1), -1);
        assert_eq!(c4.mobius(0, 2), 0);

        let v4 = enumerate_subgroups(&preset("V4").unwrap());
        let bottom = 0u32;
        let top = (v4.len() - 1) as u32;
        assert_eq!(v4.mobius(bottom, top), 2);
        // Incomparable pairs give 0.
        assert_eq!(v4.mobius(1, 2), 0);
    }

    #[test]
    fn mobius_convolution_identity() {
        // Σ_{L ≤ K ≤ M} μ(L, K) = [L = M].
        for name in ["S3", "D8", "A4"] {
            let lat = enumerate_subgroups(&preset(name).unwrap());
            let n = lat.len() as u32;
            for l in 0..n {
                for m in 0..n {
                    if !lat.is_included(l, m) {
                        continue;
                    }
                    let mut acc = 0i64;
                    for k in 0..n {
                        if lat.is_included(l, k) && lat.is_included(k, m) {
                            acc += lat.mobius(l, k);
                        }
                    }
                    assert_eq!(acc, i64::from(l == m), "{name} ({l},{m})");
                }
            }
        }
    }

    #[test]
    fn conjugators_land_on_reps() {
        let g = preset("S4").unwrap();
        let lat = enumerate_subgroups(&g);
        for i in 0..lat.len() as u32 {
            let e = lat.entry(i);
            let a = e.conjugator_to_rep();
            let mut conj: Vec<u32> = e.members().iter().map(|&m| g.conj_idx(a, m)).collect();
            conj.sort_unstable();
            let rep = lat.class(e.class()).rep();
            assert_eq!(conj, lat.entry(rep).members());
        }
    }

    #[test]
    fn normalizer_of_rep_and_orbit_size() {
        let g = preset("S4").unwrap();
        let lat = enumerate_subgroups(&g);
        for c in 0..lat.num_classes() as u32 {
            let n = lat.rep_normalizer(c);
            // Orbit-stabilizer: class size × |N_G(H)| = |G|.
            assert_eq!(lat.class(c).members().len() * n.order(), g.order());
        }
    }

    #[test]
    fn sigma_filter_requires_invariance() {
        let g = preset("S3").unwrap();
        let lat = enumerate_subgroups(&g);
        // Conjugation-invariant: order = 2 → the three C2s.
        let by_order = lat.sigma_filtered(&|h: &PermGroup| h.order() == 2).unwrap();
        assert_eq!(by_order.len(), 3);
        // Non-invariant: keep only one specific C2.
        let target = lat.entry(by_order[0]).members().to_vec();
        let bad = lat.sigma_filtered(&|h: &PermGroup| {
            g.member_indices(h).map(|k| k == target).unwrap_or(false)
        });
        assert!(bad.is_err());
    }

    #[test]
    fn canonical_class_key_consistent_between_paths() {
        // The lattice path and the orbit-min path must agree.
        let g = preset("S4").unwrap();
        let lat = lattice_of(&g);
        for i in 0..lat.len() as u32 {
            let e = lat.entry(i);
            let via_lattice = canonical_class_key(&g, e.members());
            let rep = lat.class(e.class()).rep();
            assert_eq!(*via_lattice, lat.entry(rep).members());
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let g = preset("D12").unwrap();
        let a = enumerate_subgroups(&g);
        let b = enumerate_subgroups(&g);
        assert_eq!(a.len(), b.len());
        for i in 0..a.len() as u32 {
            assert_eq!(a.entry(i).members(), b.entry(i).members());
            assert_eq!(a.entry(i).class(), b.entry(i).class());
        }
    }
}
