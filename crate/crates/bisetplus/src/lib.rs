//! Exact arithmetic for double Burnside rings and biset-functor
//! plus-constructions over finite permutation groups.
//!
//! The crate provides, entirely in exact integer / rational / cyclotomic
//! arithmetic:
//!
//! * finite permutation groups, their subgroup lattices, conjugacy classes
//!   and Möbius functions ([`group`], [`lattice`]);
//! * the double Burnside group `B(G, H)` with its standard basis, Mackey
//!   composition, elementary classes (restriction, induction, inflation,
//!   deflation, transport along isomorphisms) and the five-factor
//!   decomposition of an arbitrary standard class ([`biset`], [`concrete`]);
//! * section data `(𝒢, 𝒮)` describing admissible subgroup conditions, the
//!   derived one-sided and two-sided closures, and an axiom checker
//!   ([`category`]);
//! * coefficient functors with a finite basis in every degree — the constant
//!   functor and the functors of `ℤ/n`-valued characters ([`functor`]);
//! * the plus-construction `F₊` (cofixed points over the subgroup lattice,
//!   Burnside and monomial-Burnside rings as special cases) and the ghost
//!   construction `F⁺` (fixed tuples), with their biset actions and ring
//!   structures ([`plus`], [`ghost`]);
//! * the mark morphism from `F₊` to `F⁺`, its Möbius quasi-inverse, and the
//!   exact identities relating them ([`mark`]);
//! * species (algebra homomorphisms to cyclotomic fields), their enumeration
//!   and the completeness/separation checks ([`species`], [`cyclotomic`]);
//! * linearization adjunction checks and a named-suite verification harness
//!   ([`verify`]);
//! * JSON serialization for every element type and a command-line interface
//!   ([`json`], [`cli`]).

pub mod biset;
pub mod category;
pub mod cli;
pub mod concrete;
pub mod cyclotomic;
pub mod error;
pub mod functor;
pub mod ghost;
pub mod group;
pub mod json;
pub mod lattice;
pub mod mark;
pub mod product;
pub mod perm;
pub mod plus;
pub mod scalar;
pub mod species;
pub mod verify;

pub use error::{Error, Result};
pub use group::{
    conjugate_subgroup, conjugation_hom, desk_suite, direct_product, double_cosets,
    group_from_spec, inclusion_hom, is_normal_in, left_cosets, normalizer, order_cap, preset,
    quotient_group, DirectProduct, GroupDescriptor, GroupHom, HomKind, PermGroup,
};
pub use category::{check_axioms, Axiom, AxiomReport, CategorySpec, Cond, ALL_AXIOMS};
pub use concrete::{realize, tensor_oracle, ConcreteBiset};
pub use biset::{decompose_standard, elementary, elementary_subgroup, mackey_compose, standard_basis, BisetElement, Decomposition, Elementary};
pub use cyclotomic::Cyclotomic;
pub use functor::{
    abelianization, act_matrix, act_vector, check_functor_laws, constant_functor, fibered_functor,
    functor_from_selector, hom_group, Abelianization, CoeffFunctor, FiberedFunctor,
    FunctorLawReport,
};
pub use ghost::{ghost_act, ghost_act_raw, ghost_expand, ghost_mult, GhostElement};
pub use mark::{mark, marks_table, mobius_inverse};
pub use lattice::{canonical_class_key, enumerate_subgroups, lattice_of, SubgroupLattice};
pub use plus::{
    canonical_basis, canonicalize_pair, plus_act, plus_elementary, plus_generator, plus_mult,
    plus_one, plus_pi, plus_rank, PlusElement, PlusKey,
};
pub use scalar::Scalar;
pub use species::{
    check_species_theorem, enumerate_species, evaluate_species, evaluation_matrix,
    SpeciesDescriptor, SpeciesReport,
};
pub use product::{product_of, ProductSubgroup};
pub use verify::{adjunction_check, run_suite, SuiteReport, SUITE_NAMES};
pub use perm::Perm;
