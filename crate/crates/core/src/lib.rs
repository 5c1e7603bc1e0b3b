//! Finite binary relations and their Richter-Peleg representations.
//!
//! A utility `u` is a Richter-Peleg representation of `≿` when indifferent
//! elements get equal values and strictly preferred elements get strictly
//! larger values. On a finite universe such a utility exists exactly when
//! `≿` is strongly acyclic, i.e. every cycle of `≿` is made of
//! indifferences. This crate decides that property with certificates,
//! constructs representations exactly, validates stratifications and
//! embeddings, and reduces maximal-element selection for preorders to
//! maximizing a single utility.
//!
//! ```
//! use rpkit::{Relation, synthesize, is_representation};
//!
//! let r = Relation::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
//! assert!(!r.is_transitive());
//! let u = synthesize(&r).unwrap();
//! assert!(is_representation(&r, &u).unwrap());
//! ```

mod bits;
mod error;

pub mod acyclicity;
pub mod format;
pub mod optimality;
pub mod oracle;
pub mod relation;
pub mod representation;
pub mod stratification;

pub use acyclicity::{check_strong_acyclicity, is_acyclic, is_strongly_acyclic, CycleWitness};
pub use bits::BitSet;
pub use error::{Error, Result};
pub use optimality::{argmax, maximal_elements, prop1_utility, prop2_utility, ChoiceProblem};
pub use oracle::{GeneratorConfig, RelationKind};
pub use relation::{default_labels, CondensationDag, Relation, Universe};
pub use representation::{
    is_representation, normalize_to_unit_interval, synthesize, utility_from_stratification, verify_representation,
    Utility, Verification, Violation, ViolationKind,
};
pub use stratification::{
    disjointify, is_pseudo_stratification, is_separable_finite, is_separating, is_stratification, verify_embedding,
    EmbeddingMap, Stratification,
};

pub use num_rational::BigRational;
