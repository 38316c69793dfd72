//! Species of `F₊(G)`: the ring homomorphisms into cyclotomic fields.
//!
//! A species is determined by a pair `(H, τ)` with `H` a subgroup (up to
//! conjugacy) and `τ` a character of the abelian monoid of basis labels of
//! `F(H)`; it sends `x` to the `τ`-linear extension applied to the
//! `H`-component of `mark(x)`. Pairs in the same `G`-orbit give the same
//! homomorphism, so enumeration keeps one representative per orbit; for
//! commutative coefficients the species are pairwise distinct and as
//! numerous as the rank of `F₊(G)`, and their evaluation matrix on the
//! canonical basis is invertible over `ℚ(ζ_n)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::functor::CoeffFunctor;
use crate::ghost::GhostElement;
use crate::group::PermGroup;
use crate::lattice::lattice_of;
use crate::mark::mark;
use crate::plus::{
    canonical_basis, conjugation_between, plus_generator_at, plus_mult, plus_one,
    transport_label, PlusElement, PlusKey,
};

/// One species, stored by its subgroup class, the defining character tuple
/// over the invariant factors of the label monoid, and (redundantly but
/// conveniently) the full exponent vector: the label with index `b`
/// evaluates to `ζ_n^{exponents[b]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpeciesDescriptor {
    group: PermGroup,
    class: u32,
    tuple: Vec<u64>,
    exponents: Vec<u64>,
    conductor: u64,
}

impl SpeciesDescriptor {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Subgroup class index of `H` in the lattice of `G`.
    pub fn class(&self) -> u32 {
        self.class
    }

    /// Character tuple over the invariant factors of the label monoid.
    pub fn tuple(&self) -> &[u64] {
        &self.tuple
    }

    /// Exponent of `ζ_n` assigned to each basis label of `F(H)`.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Compact display form `entry:tuple`, using the lattice entry index of
    /// the class representative (`id` for the trivial character monoid).
    pub fn label(&self) -> String {
        let lat = lattice_of(&self.group);
        let rep_entry = lat.class(self.class).rep();
        if self.tuple.is_empty() {
            format!("{rep_entry}:id")
        } else {
            let parts: Vec<String> = self.tuple.iter().map(|t| t.to_string()).collect();
            format!("{rep_entry}:[{}]", parts.join(","))
        }
    }
}

/// All species of `F₊(G)`, one per `G`-orbit of pairs `(H, τ)`, ordered by
/// subgroup class and then by character tuple.
pub fn enumerate_species(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
) -> Result<Vec<SpeciesDescriptor>> {
    let n = f.conductor().max(1);
    let lat = lattice_of(g);
    let mut out = Vec::new();
    for c in 0..lat.num_classes() as u32 {
        let rep_entry = lat.class(c).rep();
        let rep_key = lat.entry(rep_entry).members();
        let rep_group = lat.rep_group(c);
        let size = f.basis_size(rep_group)?;
        let invariants = f.label_invariants(rep_group)?;
        let coords: Vec<Vec<u64>> = (0..size)
            .map(|b| f.label_coordinates(rep_group, b))
            .collect::<Result<_>>()?;
        let norm_key = g.member_indices(lat.rep_normalizer(c))?;
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(norm_key.len());
        for &x in &norm_key {
            let hom = conjugation_between(g, x, rep_key, rep_group, rep_key, rep_group);
            let mut p = vec![0usize; size];
            for (b, slot) in p.iter_mut().enumerate() {
                *slot = transport_label(f, &hom, b)?;
            }
            perms.push(p);
        }
        let mut tuple = vec![0u64; invariants.len()];
        'characters: loop {
            let exps: Vec<u64> = coords
                .iter()
                .map(|cb| {
                    cb.iter()
                        .zip(&invariants)
                        .zip(&tuple)
                        .map(|((&coord, &gi), &ti)| ti * coord * (n / gi))
                        .sum::<u64>()
                        % n
                })
                .collect();
            // conjugation by the normalizer permutes the pairs (H, τ)
            // within one species; keep the lexicographically least member
            let minimal = perms
                .iter()
                .map(|p| {
                    let mut moved = vec![0u64; size];
                    for (b, &e) in exps.iter().enumerate() {
                        moved[p[b]] = e;
                    }
                    moved
                })
                .min()
                .expect("the identity permutation is always present");
            if exps == minimal {
                out.push(SpeciesDescriptor {
                    group: g.clone(),
                    class: c,
                    tuple: tuple.clone(),
                    exponents: exps,
                    conductor: n,
                });
            }
            let mut i = 0;
            while i < tuple.len() {
                tuple[i] += 1;
                if tuple[i] < invariants[i] {
                    continue 'characters;
                }
                tuple[i] = 0;
                i += 1;
            }
            break;
        }
    }
    Ok(out)
}

/// `τ` applied linearly to a dense component vector.
fn evaluate_component(s: &SpeciesDescriptor, comp: &[i64]) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::zero(s.conductor)?;
    for (b, &count) in comp.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let term = Cyclotomic::root_of_unity(s.exponents[b] as i64, s.conductor)?
            .scale(&BigRational::from_integer(BigInt::from(count)));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

fn evaluate_ghost(s: &SpeciesDescriptor, m: &GhostElement<i64>) -> Result<Cyclotomic> {
    evaluate_component(s, m.component(s.class))
}

/// Evaluate one species: `τ` applied to the `H`-component of `mark(x)`.
pub fn evaluate_species(
    f: &dyn CoeffFunctor,
    s: &SpeciesDescriptor,
    x: &PlusElement<i64>,
) -> Result<Cyclotomic> {
    if x.group() != &s.group {
        return Err(Error::Incompatible(
            "species and element are over different groups".into(),
        ));
    }
    evaluate_ghost(s, &mark(f, x)?)
}

/// The species table: all species, the canonical basis keys, and the
/// evaluation matrix (rows = species, columns = canonical generators).
pub fn evaluation_matrix(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
) -> Result<(Vec<SpeciesDescriptor>, Vec<PlusKey>, Vec<Vec<Cyclotomic>>)> {
    let species = enumerate_species(f, g)?;
    let basis = canonical_basis(f, g)?;
    let lat = lattice_of(g);
    let mut marks = Vec::with_capacity(basis.len());
    for &(c, b) in &basis {
        let x: PlusElement<i64> = plus_generator_at(f, g, lat.class(c).rep(), b)?;
        marks.push(mark(f, &x)?);
    }
    let mut matrix = Vec::with_capacity(species.len());
    for s in &species {
        let row: Vec<Cyclotomic> = marks
            .iter()
            .map(|m| evaluate_ghost(s, m))
            .collect::<Result<_>>()?;
        matrix.push(row);
    }
    Ok((species, basis, matrix))
}

/// Row rank by Gauss–Jordan elimination over the cyclotomic field.
fn matrix_rank(mut m: Vec<Vec<Cyclotomic>>) -> Result<usize> {
    let rows = m.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inverse()?;
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].mul(&inv)?;
                for c2 in col..cols {
                    let delta = factor.mul(&m[rank][c2])?;
                    m[r][c2] = m[r][c2].sub(&delta)?;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// Outcome of the completeness and separation checks for the species of
/// one group and coefficient system.
#[derive(Clone, Debug)]
pub struct SpeciesReport {
    pub group: String,
    pub functor: String,
    pub species_count: usize,
    pub rank: usize,
    pub matrix_rank: usize,
    pub failures: Vec<String>,
}

impl SpeciesReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.species_count == self.rank
            && self.matrix_rank == self.rank
    }
}

/// Verify, over the canonical generators: every species is unital and
/// multiplicative, the species are pairwise distinct, their number equals
/// the rank of `F₊(G)`, and the evaluation matrix has full rank.
pub fn check_species_theorem(
    f: &dyn CoeffFunctor,
    g: &PermGroup,
) -> Result<SpeciesReport> {
    let (species, basis, matrix) = evaluation_matrix(f, g)?;
    let lat = lattice_of(g);
    let mut failures = Vec::new();

    let one_value = Cyclotomic::one(species.first().map(|s| s.conductor).unwrap_or(1))?;
    let unit_mark = mark(f, &plus_one::<i64>(f, g)?)?;
    for (i, s) in species.iter().enumerate() {
        if evaluate_ghost(s, &unit_mark)? != one_value {
            failures.push(format!("species {i} ({}) is not unital", s.label()));
        }
    }

    for i in 0..matrix.len() {
        for j in i + 1..matrix.len() {
            if matrix[i] == matrix[j] {
                failures.push(format!(
                    "species {i} ({}) and {j} ({}) agree on the whole basis",
                    species[i].label(),
                    species[j].label()
                ));
            }
        }
    }

    let gens: Vec<PlusElement<i64>> = basis
        .iter()
        .map(|&(c, b)| plus_generator_at(f, g, lat.class(c).rep(), b))
        .collect::<Result<_>>()?;
    for j in 0..gens.len() {
        for k in j..gens.len() {
            let product_mark = mark(f, &plus_mult(f, &gens[j], &gens[k])?)?;
            for (i, s) in species.iter().enumerate() {
                let direct = evaluate_ghost(s, &product_mark)?;
                let split = matrix[i][j].mul(&matrix[i][k])?;
                if direct != split {
                    failures.push(format!(
                        "species {i} ({}) is not multiplicative on generators {j}, {k}",
                        s.label()
                    ));
                }
            }
        }
    }

    Ok(SpeciesReport {
        group: g
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("order-{}", g.order())),
        functor: f.name(),
        species_count: species.len(),
        rank: basis.len(),
        matrix_rank: matrix_rank(matrix)?,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{constant_functor, fibered_functor};
    use crate::group::preset;

    fn named(name: &str) -> PermGroup {
        preset(name).unwrap()
    }

    #[test]
    fn species_counts_match_frozen_values() {
        let f = constant_functor();
        assert_eq!(enumerate_species(&f, &named("S3")).unwrap().len(), 4);
        assert_eq!(enumerate_species(&f, &named("trivial")).unwrap().len(), 1);

        let f2 = fibered_functor(2).unwrap();
        let c2 = named("C2");
        let species = enumerate_species(&f2, &c2).unwrap();
        assert_eq!(species.len(), 3);
        let data: Vec<(u32, Vec<u64>, Vec<u64>)> = species
            .iter()
            .map(|s| (s.class(), s.tuple().to_vec(), s.exponents().to_vec()))
            .collect();
        assert_eq!(
            data,
            vec![
                (0, vec![], vec![0]),
                (1, vec![0], vec![0, 0]),
                (1, vec![1], vec![0, 1]),
            ]
        );
    }

    #[test]
    fn unit_evaluates_to_one_everywhere() {
        for (g, modulus) in [(named("S3"), 1u64), (named("S3"), 2), (named("C4"), 4)] {
            let f = fibered_functor(modulus).unwrap();
            let one: PlusElement<i64> = plus_one(&f, &g).unwrap();
            for s in enumerate_species(&f, &g).unwrap() {
                assert_eq!(
                    evaluate_species(&f, &s, &one).unwrap(),
                    Cyclotomic::one(modulus).unwrap()
                );
            }
        }
    }

    #[test]
    fn order_two_species_value_on_the_order_two_generator() {
        let s3 = named("S3");
        let f = constant_functor();
        let lat = lattice_of(&s3);
        let x: PlusElement<i64> = plus_generator_at(&f, &s3, lat.class(1).rep(), 0).unwrap();
        let species = enumerate_species(&f, &s3).unwrap();
        let values: Vec<Cyclotomic> = species
            .iter()
            .map(|s| evaluate_species(&f, s, &x).unwrap())
            .collect();
        let expected: Vec<Cyclotomic> = [3, 1, 0, 0]
            .iter()
            .map(|&v| Cyclotomic::from_integer(1, v).unwrap())
            .collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn self_generator_evaluates_to_normalizer_index() {
        for (g, modulus) in [(named("S3"), 2u64), (named("D4"), 2)] {
            let f = fibered_functor(modulus).unwrap();
            let lat = lattice_of(&g);
            for s in enumerate_species(&f, &g).unwrap() {
                let one_label = f.value_one(lat.rep_group(s.class())).unwrap();
                let x: PlusElement<i64> =
                    plus_generator_at(&f, &g, lat.class(s.class()).rep(), one_label).unwrap();
                let h_order = lat.rep_group(s.class()).order() as i64;
                let n_order = lat.rep_normalizer(s.class()).order() as i64;
                assert_eq!(
                    evaluate_species(&f, &s, &x).unwrap(),
                    Cyclotomic::from_integer(modulus, n_order / h_order).unwrap(),
                    "species {}",
                    s.label()
                );
            }
        }
    }

    #[test]
    fn characters_appear_as_root_of_unity_values() {
        let c4 = named("C4");
        let f = fibered_functor(4).unwrap();
        let lat = lattice_of(&c4);
        let full = lat.num_classes() as u32 - 1;
        let species = enumerate_species(&f, &c4).unwrap();
        let faithful = species
            .iter()
            .find(|s| s.class() == full && s.tuple() == [1])
            .unwrap();
        let x1: PlusElement<i64> = plus_generator_at(&f, &c4, lat.class(full).rep(), 1).unwrap();
        let x2: PlusElement<i64> = plus_generator_at(&f, &c4, lat.class(full).rep(), 2).unwrap();
        assert_eq!(
            evaluate_species(&f, faithful, &x1).unwrap(),
            Cyclotomic::root_of_unity(1, 4).unwrap()
        );
        assert_eq!(
            evaluate_species(&f, faithful, &x1).unwrap().render(),
            "z"
        );
        assert_eq!(
            evaluate_species(&f, faithful, &x2).unwrap(),
            Cyclotomic::from_integer(4, -1).unwrap()
        );
    }

    #[test]
    fn conjugation_gives_the_same_species() {
        let d4 = named("D4");
        let f = fibered_functor(2).unwrap();
        let lat = lattice_of(&d4);
        let basis = canonical_basis(&f, &d4).unwrap();
        let gens: Vec<PlusElement<i64>> = basis
            .iter()
            .map(|&(c, b)| plus_generator_at(&f, &d4, lat.class(c).rep(), b).unwrap())
            .collect();
        for s in enumerate_species(&f, &d4).unwrap() {
            let rep_entry = lat.class(s.class()).rep();
            let rep_key = lat.entry(rep_entry).members();
            let rep_group = lat.rep_group(s.class());
            let norm_key = d4.member_indices(lat.rep_normalizer(s.class())).unwrap();
            for &x in &norm_key {
                let hom =
                    conjugation_between(&d4, x, rep_key, rep_group, rep_key, rep_group);
                let mut moved = vec![0u64; s.exponents().len()];
                for (b, &e) in s.exponents().iter().enumerate() {
                    moved[transport_label(&f, &hom, b).unwrap()] = e;
                }
                let twisted = SpeciesDescriptor {
                    group: d4.clone(),
                    class: s.class(),
                    tuple: s.tuple().to_vec(),
                    exponents: moved,
                    conductor: s.conductor(),
                };
                for gen in &gens {
                    assert_eq!(
                        evaluate_species(&f, &s, gen).unwrap(),
                        evaluate_species(&f, &twisted, gen).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn report_passes_on_frozen_suites() {
        let cases: Vec<(PermGroup, u64, usize)> = vec![
            (named("trivial"), 1, 1),
            (named("C2"), 2, 3),
            (named("C4"), 4, 7),
            (named("S3"), 1, 4),
            (named("S3"), 2, 6),
            (named("D4"), 2, 19),
        ];
        for (g, modulus, count) in cases {
            let f = fibered_functor(modulus).unwrap();
            let report = check_species_theorem(&f, &g).unwrap();
            assert_eq!(
                report.species_count,
                count,
                "{} mod {modulus}: {:?}",
                report.group,
                report.failures
            );
            assert_eq!(report.rank, count);
            assert_eq!(report.matrix_rank, count);
            assert!(report.passed(), "{:?}", report.failures);
        }
    }

    #[test]
    fn report_passes_on_the_largest_desk_group() {
        let report = check_species_theorem(&constant_functor(), &named("S4")).unwrap();
        assert_eq!(report.species_count, 11);
        assert_eq!(report.rank, 11);
        assert_eq!(report.matrix_rank, 11);
        assert!(report.passed(), "{:?}", report.failures);
    }
}
