//! Input builders shared by the benchmarks.

use rand::Rng;
use rpkit::oracle::random_relation;
use rpkit::{default_labels, GeneratorConfig, Relation, RelationKind};

/// Random relation with edge probability `avg_degree / n`, no diagonal.
pub fn sparse(n: usize, avg_degree: f64, seed: u64) -> Relation {
    let mut rng = GeneratorConfig::new(n, seed, RelationKind::Arbitrary).rng();
    let p = (avg_degree / n as f64).min(1.0);
    Relation::from_fn(default_labels(n), |i, j| i != j && rng.random_bool(p)).expect("labels are valid")
}

pub fn preorder(n: usize, seed: u64) -> Relation {
    random_relation(&GeneratorConfig::new(n, seed, RelationKind::Preorder))
}

pub fn strongly_acyclic(n: usize, seed: u64) -> Relation {
    random_relation(&GeneratorConfig::new(n, seed, RelationKind::StronglyAcyclic))
}
