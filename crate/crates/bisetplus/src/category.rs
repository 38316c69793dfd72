//! Admissibility data for subcategories of the biset category: a finite list
//! of groups together with a condition set cutting out the admissible
//! subgroups of each product, the derived one-sided (`𝒮₊`) and two-sided
//! (`𝒮⁺`) closures, and an axiom checker.
//!
//! A condition set is a subset of `{k1, k2, p1, p2}`; a subgroup
//! `D ≤ G × H` is admissible when every listed condition holds, where
//! `k1` / `k2` require the corresponding kernel to be trivial and
//! `p1` / `p2` require the corresponding projection to be full.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::lattice_of;
use crate::product::{product_of, ProductSubgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A single admissibility condition on subgroups of `G × H`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cond {
    /// `k₁(D) = 1`.
    K1,
    /// `k₂(D) = 1`.
    K2,
    /// `p₁(D) = G`.
    P1,
    /// `p₂(D) = H`.
    P2,
}

impl Cond {
    pub fn as_str(self) -> &'static str {
        match self {
            Cond::K1 => "k1",
            Cond::K2 => "k2",
            Cond::P1 => "p1",
            Cond::P2 => "p2",
        }
    }

    pub fn parse(s: &str) -> Result<Cond> {
        match s {
            "k1" => Ok(Cond::K1),
            "k2" => Ok(Cond::K2),
            "p1" => Ok(Cond::P1),
            "p2" => Ok(Cond::P2),
            _ => Err(Error::Parse(format!(
                "unknown condition {s:?} (expected k1, k2, p1 or p2)"
            ))),
        }
    }
}

/// The `(𝒢, 𝒮)` data: an explicit group list (the quantifier range) and a
/// condition set.  The group class is understood as completed under the
/// subgroups of listed groups, so a subgroup of a listed group is always
/// admissible; an *open* spec admits every group (used as the base data of
/// globally-defined coefficient functors).
#[derive(Clone)]
pub struct CategorySpec {
    groups: Vec<PermGroup>,
    condition: Vec<Cond>,
    open: bool,
}

impl CategorySpec {
    /// Spec over an explicit group list.
    pub fn new(groups: Vec<PermGroup>, condition: &[Cond]) -> CategorySpec {
        let mut condition = condition.to_vec();
        condition.sort_unstable();
        condition.dedup();
        CategorySpec { groups, condition, open: false }
    }

    /// Spec admitting every group (empty quantifier range).
    pub fn open(condition: &[Cond]) -> CategorySpec {
        let mut condition = condition.to_vec();
        condition.sort_unstable();
        condition.dedup();
        CategorySpec { groups: Vec::new(), condition, open: true }
    }

    pub fn groups(&self) -> &[PermGroup] {
        &self.groups
    }

    pub fn condition(&self) -> &[Cond] {
        &self.condition
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    /// The spec with conditions `C ∖ remove` over the same groups.
    pub fn without(&self, remove: &[Cond]) -> CategorySpec {
        let condition: Vec<Cond> = self
            .condition
            .iter()
            .copied()
            .filter(|c| !remove.contains(c))
            .collect();
        CategorySpec {
            groups: self.groups.clone(),
            condition,
            open: self.open,
        }
    }

    /// Group-class membership: listed, a subgroup of a listed group, or
    /// anything if the spec is open.
    pub fn admissible_group(&self, g: &PermGroup) -> bool {
        if self.open {
            return true;
        }
        self.groups.iter().any(|listed| {
            listed == g || (listed.degree() == g.degree() && listed.has_subgroup(g))
        })
    }

    fn require_ambient(&self, d: &ProductSubgroup) -> Result<()> {
        if !self.admissible_group(d.left()) || !self.admissible_group(d.right()) {
            return Err(Error::NotAdmissible(
                "ambient groups are outside the admissible class".into(),
            ));
        }
        Ok(())
    }

    /// Raw condition evaluation (no ambient admissibility check).
    pub fn conditions_hold(&self, d: &ProductSubgroup) -> bool {
        self.condition.iter().all(|c| match c {
            Cond::K1 => d.k1().len() == 1,
            Cond::K2 => d.k2().len() == 1,
            Cond::P1 => d.p1().len() == d.left().order(),
            Cond::P2 => d.p2().len() == d.right().order(),
        })
    }

    /// `D ∈ 𝒮(G, H)`.
    pub fn s_member(&self, d: &ProductSubgroup) -> Result<bool> {
        self.require_ambient(d)?;
        Ok(self.conditions_hold(d))
    }

    /// `D ∈ 𝒮₊(G, H)`: `p₁(D)` is admissible and `D ∈ 𝒮(p₁(D), H)`,
    /// evaluated by reindexing `D` into `p₁(D) × H`.
    pub fn s_plus_member(&self, d: &ProductSubgroup) -> Result<bool> {
        self.require_ambient(d)?;
        Ok(self.conditions_hold(&d.reindexed_left()))
    }

    /// `D ∈ 𝒮⁺(G, H)`: both projections admissible and
    /// `D ∈ 𝒮(p₁(D), p₂(D))`.
    pub fn s_upper_member(&self, d: &ProductSubgroup) -> Result<bool> {
        self.require_ambient(d)?;
        Ok(self.conditions_hold(&d.reindexed_both()))
    }

    /// The subgroup-quantified characterization of `𝒮₊` membership:
    /// for all subgroups `K ≤ H`, `D * K` is admissible and
    /// `D * Δ(K) ∈ 𝒮(D * K, K)`.
    pub fn s_plus_characterization(&self, d: &ProductSubgroup) -> Result<bool> {
        self.require_ambient(d)?;
        let lat = lattice_of(d.right());
        for i in 0..lat.len() as u32 {
            let k_key: Vec<u32> = lat.entry(i).members().to_vec();
            let dk = d.star_right(&k_key);
            let cut = d.intersect_right(&k_key);
            let sub = ProductSubgroup::from_trusted_pairs(
                d.left().clone(),
                d.right().clone(),
                cut,
            );
            if !self.conditions_hold(&sub.reindexed(&dk, &k_key)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The right-handed characterization of `𝒮⁺` membership: `p₂(D)` is
    /// admissible and for all `L ≤ p₂(D)`, `D * L` is admissible and
    /// `D * Δ(L) ∈ 𝒮(D * L, L)`.
    pub fn s_upper_characterization_right(&self, d: &ProductSubgroup) -> Result<bool> {
        self.require_ambient(d)?;
        let p2_group = d.p2_group();
        let lat = lattice_of(&p2_group);
        for i in 0..lat.len() as u32 {
            // Member keys of the sublattice are relative to p₂(D); lift
            // them to right-group indices.
            let l_key: Vec<u32> = lat
                .entry(i)
                .members()
                .iter()
                .map(|&m| d.p2()[m as usize])
                .collect();
            let dl = d.star_right(&l_key);
            let cut = d.intersect_right(&l_key);
            let sub = ProductSubgroup::from_trusted_pairs(
                d.left().clone(),
                d.right().clone(),
                cut,
            );
            if !self.conditions_hold(&sub.reindexed(&dl, &l_key)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The left-handed characterization of `𝒮⁺` membership: `p₁(D)` is
    /// admissible and for all `K ≤ p₁(D)`, `K * D` is admissible and
    /// `Δ(K) * D ∈ 𝒮(K, K * D)`.
    pub fn s_upper_characterization_left(&self, d: &ProductSubgroup) -> Result<bool> {
        self.require_ambient(d)?;
        let p1_group = d.p1_group();
        let lat = lattice_of(&p1_group);
        for i in 0..lat.len() as u32 {
            let k_key: Vec<u32> = lat
                .entry(i)
                .members()
                .iter()
                .map(|&m| d.p1()[m as usize])
                .collect();
            let kd = d.star_left(&k_key);
            let cut = d.intersect_left(&k_key);
            let sub = ProductSubgroup::from_trusted_pairs(
                d.left().clone(),
                d.right().clone(),
                cut,
            );
            if !self.conditions_hold(&sub.reindexed(&k_key, &kd)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

/// The seven axioms on `(𝒢, 𝒮)` data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    /// `Δ(G) ∈ 𝒮(G, G)` for every admissible `G`.
    I,
    /// `𝒮(G, H)` is closed under `G × H`-conjugation.
    II,
    /// `𝒮` is closed under the star product.
    III,
    /// For `D ∈ 𝒮(G, H)` and `K ≤ H`: `D*K` admissible and
    /// `D*Δ(K) ∈ 𝒮(D*K, K)`.
    IV,
    /// `Δ(H) ∈ 𝒮(G, H)` for `H ≤ G` (all inductions admissible).
    V,
    /// `Δ(H) ∈ 𝒮(H, G)` for `H ≤ G` (all restrictions admissible).
    VI,
    /// For `D ∈ 𝒮(G, H)`: `p₂(D)` admissible, and for `K ≤ p₂(D)`:
    /// `D*K` admissible and `D*Δ(K) ∈ 𝒮(D*K, K)`.
    VII,
}

pub const ALL_AXIOMS: [Axiom; 7] =
    [Axiom::I, Axiom::II, Axiom::III, Axiom::IV, Axiom::V, Axiom::VI, Axiom::VII];

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::I => "i",
            Axiom::II => "ii",
            Axiom::III => "iii",
            Axiom::IV => "iv",
            Axiom::V => "v",
            Axiom::VI => "vi",
            Axiom::VII => "vii",
        }
    }

    pub fn parse(s: &str) -> Result<Axiom> {
        match s {
            "i" => Ok(Axiom::I),
            "ii" => Ok(Axiom::II),
            "iii" => Ok(Axiom::III),
            "iv" => Ok(Axiom::IV),
            "v" => Ok(Axiom::V),
            "vi" => Ok(Axiom::VI),
            "vii" => Ok(Axiom::VII),
            _ => Err(Error::Parse(format!("unknown axiom {s:?} (expected i..vii)"))),
        }
    }
}

impl Serialize for Axiom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Outcome of checking one axiom.
#[derive(Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// Number of instances evaluated.
    pub instances: u64,
    /// True if every instance within the product-order limit was evaluated.
    pub exhaustive: bool,
    /// Rendered descriptions of failing instances (capped).
    pub counterexamples: Vec<String>,
}

/// Full axiom report for a spec.
#[derive(Serialize)]
pub struct AxiomReport {
    pub condition: Vec<Cond>,
    pub groups: Vec<String>,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Products up to this order are checked exhaustively; larger products are
/// sampled.
const EXHAUSTIVE_PRODUCT_LIMIT: usize = 144;

const MAX_COUNTEREXAMPLES: usize = 3;

fn describe_group(g: &PermGroup) -> String {
    match g.name() {
        Some(n) => n.to_string(),
        None => format!("order-{} (degree {})", g.order(), g.degree()),
    }
}

pub fn describe_product_subgroup(d: &ProductSubgroup) -> String {
    // A small pair generating set, rendered in cycle notation.
    let mut gens: Vec<(u32, u32)> = Vec::new();
    let mut closure = ProductSubgroup::generated(d.left(), d.right(), &gens)
        .expect("identity closure");
    for &(g, h) in d.pairs() {
        if closure.contains_pair(g, h) {
            continue;
        }
        gens.push((g, h));
        closure = ProductSubgroup::generated(d.left(), d.right(), &gens)
            .expect("generator closure");
        if closure.order() == d.order() {
            break;
        }
    }
    let rendered: Vec<String> = gens
        .iter()
        .map(|&(g, h)| format!("({}, {})", d.left().elem(g), d.right().elem(h)))
        .collect();
    format!("⟨{}⟩", rendered.join(", "))
}

/// All conjugacy-class representatives of subgroups of `G × H` for small
/// products, or `budget` pseudorandom subgroups for large ones.  The second
/// component reports whether the list is exhaustive up to conjugacy.
fn product_subgroup_pool(
    g: &PermGroup,
    h: &PermGroup,
    budget: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<ProductSubgroup>, bool) {
    if g.order() * h.order() <= EXHAUSTIVE_PRODUCT_LIMIT {
        (crate::biset::standard_basis(g, h), true)
    } else {
        let pool = (0..budget)
            .map(|_| {
                let k = rng.gen_range(1..=3usize);
                let gens: Vec<(u32, u32)> = (0..k)
                    .map(|_| {
                        (
                            rng.gen_range(0..g.order() as u32),
                            rng.gen_range(0..h.order() as u32),
                        )
                    })
                    .collect();
                ProductSubgroup::generated(g, h, &gens).expect("random closure")
            })
            .collect();
        (pool, false)
    }
}

/// Check the requested axioms over the spec's group list.  Products of order
/// at most 144 are checked exhaustively (over conjugacy-class
/// representatives where conjugation-invariance makes that complete, over
/// all subgroups for the conjugation axiom itself); larger products are
/// sampled with `budget` pseudorandom subgroups per instance, deterministic
/// in `seed`.
pub fn check_axioms(
    spec: &CategorySpec,
    which: &[Axiom],
    budget: usize,
    seed: u64,
) -> Result<AxiomReport> {
    if spec.groups.is_empty() {
        return Err(Error::NotAdmissible(
            "axiom checking requires an explicit group list".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for &axiom in which {
        let mut instances = 0u64;
        let mut exhaustive = true;
        let mut counterexamples = Vec::new();
        let fail = |cx: String, counterexamples: &mut Vec<String>| {
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(cx);
            }
        };
        match axiom {
            Axiom::I => {
                for g in &spec.groups {
                    instances += 1;
                    let all: Vec<u32> = (0..g.order() as u32).collect();
                    let delta = ProductSubgroup::diagonal(g, g, &all, &all);
                    if !spec.s_member(&delta)? {
                        fail(format!("Δ({}) rejected", describe_group(g)), &mut counterexamples);
                    }
                }
            }
            Axiom::II => {
                for g in &spec.groups {
                    for h in &spec.groups {
                        if g.order() * h.order() <= EXHAUSTIVE_PRODUCT_LIMIT {
                            // All subgroups, grouped by conjugacy class:
                            // membership must be constant on each class.
                            let ambient = product_of(g, h);
                            let lat = lattice_of(ambient.group());
                            let order_r = h.order() as u32;
                            for c in 0..lat.num_classes() as u32 {
                                let verdicts: Result<Vec<bool>> = lat
                                    .class(c)
                                    .members()
                                    .iter()
                                    .map(|&i| {
                                        let pairs: Vec<(u32, u32)> = lat
                                            .entry(i)
                                            .members()
                                            .iter()
                                            .map(|&m| (m / order_r, m % order_r))
                                            .collect();
                                        let d = ProductSubgroup::from_trusted_pairs(
                                            g.clone(),
                                            h.clone(),
                                            pairs,
                                        );
                                        spec.s_member(&d)
                                    })
                                    .collect();
                                let verdicts = verdicts?;
                                instances += verdicts.len() as u64;
                                if verdicts.windows(2).any(|w| w[0] != w[1]) {
                                    fail(
                                        format!(
                                            "membership not constant on a conjugacy class in {} × {}",
                                            describe_group(g),
                                            describe_group(h)
                                        ),
                                        &mut counterexamples,
                                    );
                                }
                            }
                        } else {
                            exhaustive = false;
                            let (pool, _) = product_subgroup_pool(g, h, budget, &mut rng);
                            for d in pool {
                                let base = spec.s_member(&d)?;
                                let a = rng.gen_range(0..g.order() as u32);
                                let b = rng.gen_range(0..h.order() as u32);
                                instances += 1;
                                if spec.s_member(&d.conjugate(a, b))? != base {
                                    fail(
                                        format!(
                                            "conjugate of {} changed membership",
                                            describe_product_subgroup(&d)
                                        ),
                                        &mut counterexamples,
                                    );
                                }
                            }
                        }
                    }
                }
            }
            Axiom::III => {
                for g in &spec.groups {
                    for h in &spec.groups {
                        let (ds, ex1) = product_subgroup_pool(g, h, budget, &mut rng);
                        for k in &spec.groups {
                            let (es, ex2) = product_subgroup_pool(h, k, budget, &mut rng);
                            exhaustive &= ex1 && ex2;
                            for d in &ds {
                                if !spec.s_member(d)? {
                                    continue;
                                }
                                for e in &es {
                                    if !spec.s_member(e)? {
                                        continue;
                                    }
                                    instances += 1;
                                    let star = d.star(e)?;
                                    if !spec.s_member(&star)? {
                                        fail(
                                            format!(
                                                "{} * {} leaves 𝒮",
                                                describe_product_subgroup(d),
                                                describe_product_subgroup(e)
                                            ),
                                            &mut counterexamples,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Axiom::IV | Axiom::VII => {
                for g in &spec.groups {
                    for h in &spec.groups {
                        let (ds, ex) = product_subgroup_pool(g, h, budget, &mut rng);
                        exhaustive &= ex;
                        for d in &ds {
                            if !spec.s_member(d)? {
                                continue;
                            }
                            // Quantifier range: all subgroups of H for (iv),
                            // all subgroups of p₂(D) for (vii).
                            let k_keys: Vec<Vec<u32>> = if axiom == Axiom::IV {
                                let lat = lattice_of(h);
                                (0..lat.len() as u32)
                                    .map(|i| lat.entry(i).members().to_vec())
                                    .collect()
                            } else {
                                let p2_group = d.p2_group();
                                let lat = lattice_of(&p2_group);
                                (0..lat.len() as u32)
                                    .map(|i| {
                                        lat.entry(i)
                                            .members()
                                            .iter()
                                            .map(|&m| d.p2()[m as usize])
                                            .collect()
                                    })
                                    .collect()
                            };
                            for k_key in k_keys {
                                instances += 1;
                                let dk = d.star_right(&k_key);
                                let cut = d.intersect_right(&k_key);
                                let sub = ProductSubgroup::from_trusted_pairs(
                                    g.clone(),
                                    h.clone(),
                                    cut,
                                );
                                if !spec.conditions_hold(&sub.reindexed(&dk, &k_key)) {
                                    fail(
                                        format!(
                                            "D = {} with |K| = {}",
                                            describe_product_subgroup(d),
                                            k_key.len()
                                        ),
                                        &mut counterexamples,
                                    );
                                }
                            }
                        }
                    }
                }
            }
            Axiom::V | Axiom::VI => {
                for g in &spec.groups {
                    let lat = lattice_of(g);
                    for i in 0..lat.len() as u32 {
                        instances += 1;
                        let h = lat.group_of(i);
                        let h_key = lat.entry(i).members();
                        let ident: Vec<u32> = (0..h.order() as u32).collect();
                        let ok = if axiom == Axiom::V {
                            // Δ(H) ≤ G × H.
                            let d = ProductSubgroup::diagonal(g, h, h_key, &ident);
                            spec.s_member(&d)?
                        } else {
                            // Δ(H) ≤ H × G.
                            let d = ProductSubgroup::diagonal(h, g, &ident, h_key);
                            spec.s_member(&d)?
                        };
                        if !ok {
                            fail(
                                format!(
                                    "Δ(order-{} subgroup) of {} rejected",
                                    h.order(),
                                    describe_group(g)
                                ),
                                &mut counterexamples,
                            );
                        }
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            axiom,
            passed: counterexamples.is_empty(),
            instances,
            exhaustive,
            counterexamples,
        });
    }
    Ok(AxiomReport {
        condition: spec.condition.clone(),
        groups: spec.groups.iter().map(describe_group).collect(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::standard_basis;
    use crate::group::{preset, quotient_group};

    fn small_spec(cond: &[Cond]) -> CategorySpec {
        let groups = ["1", "C2", "C3", "S3"]
            .iter()
            .map(|n| preset(n).unwrap())
            .collect();
        CategorySpec::new(groups, cond)
    }

    #[test]
    fn diagonal_satisfies_all_conditions() {
        let s3 = preset("S3").unwrap();
        let all: Vec<u32> = (0..6).collect();
        let d = ProductSubgroup::diagonal(&s3, &s3, &all, &all);
        let spec = small_spec(&[Cond::K1, Cond::K2, Cond::P1, Cond::P2]);
        assert!(spec.s_member(&d).unwrap());
    }

    #[test]
    fn inflation_subgroup_condition_profile() {
        // {(g, gN)} ≤ C4 × C2 for N = C2: fails k1; passes k2, p1, p2.
        let c4 = preset("C4").unwrap();
        let lat = lattice_of(&c4);
        let n = lat.group_of(1).clone();
        let (_q, epi) = quotient_group(&c4, &n).unwrap();
        let d = crate::biset::elementary_subgroup(&crate::biset::Elementary::Inf { epi })
            .unwrap();
        let open = |c: &[Cond]| CategorySpec::open(c);
        assert!(!open(&[Cond::K1]).conditions_hold(&d));
        assert!(open(&[Cond::K2]).conditions_hold(&d));
        assert!(open(&[Cond::P1]).conditions_hold(&d));
        assert!(open(&[Cond::P2]).conditions_hold(&d));
    }

    #[test]
    fn induction_subgroup_fails_p1() {
        let s3 = preset("S3").unwrap();
        let lat = lattice_of(&s3);
        let h = lat.group_of(1).clone(); // C2
        let h_key = lat.entry(1).members();
        let ident: Vec<u32> = (0..2).collect();
        let d = ProductSubgroup::diagonal(&s3, &h, h_key, &ident);
        let spec = CategorySpec::open(&[Cond::P1]);
        assert!(!spec.conditions_hold(&d));
        // But the one-sided closure admits it.
        assert!(spec.s_plus_member(&d).unwrap());
    }

    #[test]
    fn s_plus_with_p1_admits_everything() {
        let spec = small_spec(&[Cond::P1]);
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        for d in standard_basis(&s3, &c2) {
            assert!(spec.s_plus_member(&d).unwrap());
        }
    }

    #[test]
    fn closure_laws_on_small_products() {
        // 𝒮_C₊ = 𝒮_{C∖{p1}} and 𝒮_C⁺ = 𝒮_{C∖{k1... p1,p2}} as predicates.
        let sets: [&[Cond]; 5] = [
            &[],
            &[Cond::P1],
            &[Cond::K1, Cond::K2],
            &[Cond::K1, Cond::K2, Cond::P1],
            &[Cond::K1, Cond::K2, Cond::P1, Cond::P2],
        ];
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        for cond in sets {
            let spec = small_spec(cond);
            let plus_law = spec.without(&[Cond::P1]);
            let upper_law = spec.without(&[Cond::P1, Cond::P2]);
            for d in standard_basis(&s3, &c2).iter().chain(standard_basis(&c2, &s3).iter()) {
                assert_eq!(
                    spec.s_plus_member(d).unwrap(),
                    plus_law.s_member(d).unwrap(),
                    "plus law for {cond:?}"
                );
                assert_eq!(
                    spec.s_upper_member(d).unwrap(),
                    upper_law.s_member(d).unwrap(),
                    "upper law for {cond:?}"
                );
            }
        }
    }

    #[test]
    fn characterizations_agree_with_definitions() {
        let spec = small_spec(&[Cond::K1, Cond::K2]);
        let s3 = preset("S3").unwrap();
        let c3 = preset("C3").unwrap();
        for d in standard_basis(&s3, &c3) {
            assert_eq!(
                spec.s_plus_member(&d).unwrap(),
                spec.s_plus_characterization(&d).unwrap()
            );
            let upper = spec.s_upper_member(&d).unwrap();
            assert_eq!(upper, spec.s_upper_characterization_right(&d).unwrap());
            assert_eq!(upper, spec.s_upper_characterization_left(&d).unwrap());
        }
    }

    #[test]
    fn axiom_report_for_p1_condition() {
        // Over {1, C2, C3, S3} with C = {p1}: (i)-(iv), (vii) pass, (v)
        // fails (proper-subgroup inductions are inadmissible), (vi) passes.
        let spec = small_spec(&[Cond::P1]);
        let report = check_axioms(&spec, &ALL_AXIOMS, 10, 7).unwrap();
        for check in &report.checks {
            let expect = !matches!(check.axiom, Axiom::V);
            assert_eq!(check.passed, expect, "axiom {}", check.axiom.as_str());
            assert!(check.exhaustive);
        }
        assert!(!report.all_passed());
        assert!(!report.check(Axiom::V).unwrap().counterexamples.is_empty());
    }

    #[test]
    fn axiom_report_for_empty_condition() {
        let spec = small_spec(&[]);
        let report = check_axioms(&spec, &ALL_AXIOMS, 10, 7).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn axiom_report_for_free_condition() {
        // C = {k1, k2}: all pass, including (v) and (vi).
        let spec = small_spec(&[Cond::K1, Cond::K2]);
        let report = check_axioms(&spec, &ALL_AXIOMS, 10, 7).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn closed_scope_rejects_foreign_groups() {
        let spec = small_spec(&[Cond::K1]);
        let q8 = preset("Q8").unwrap();
        let all: Vec<u32> = (0..8).collect();
        let d = ProductSubgroup::diagonal(&q8, &q8, &all, &all);
        assert!(spec.s_member(&d).is_err());
    }

    #[test]
    fn idempotence_of_the_plus_closure() {
        // Evaluating 𝒮₊ of the spec whose membership is 𝒮₊ (i.e. dropping
        // p1 twice) changes nothing.
        let spec = small_spec(&[Cond::K1, Cond::P1]);
        let once = spec.without(&[Cond::P1]);
        let s3 = preset("S3").unwrap();
        let c2 = preset("C2").unwrap();
        for d in standard_basis(&s3, &c2) {
            assert_eq!(
                once.s_plus_member(&d).unwrap(),
                once.s_member(&d).unwrap()
            );
            assert_eq!(
                spec.s_plus_member(&d).unwrap(),
                once.s_member(&d).unwrap()
            );
        }
    }
}
