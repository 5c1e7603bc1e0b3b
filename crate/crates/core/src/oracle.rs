//! Brute-force deciders and seeded generators for the property suites.
//!
//! The deciders here read the relation cell by cell and test the
//! definitions directly; they share no code path with the SCC-based
//! decision procedures they are compared against.
//!
//! **Completeness of the level search.** If `u` is any real-valued
//! representation of `≿` on `n` elements, replacing each value by its rank
//! among the distinct values of `u` preserves every equality and strict
//! inequality, so it is again a representation, now valued in
//! `{0, ..., n - 1}`. Searching all maps `X → {0, ..., n - 1}` therefore
//! decides existence exactly.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::relation::{default_labels, Relation};
use crate::representation::Utility;

/// Largest universe accepted by the brute-force deciders.
pub const BRUTE_FORCE_MAX: usize = 6;
/// Largest universe accepted by [`enumerate_all_relations`].
pub const EXHAUSTIVE_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Arbitrary,
    Preorder,
    StronglyAcyclic,
    CompleteTransitive,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::Arbitrary,
        RelationKind::Preorder,
        RelationKind::StronglyAcyclic,
        RelationKind::CompleteTransitive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Arbitrary => "arbitrary",
            RelationKind::Preorder => "preorder",
            RelationKind::StronglyAcyclic => "strongly-acyclic",
            RelationKind::CompleteTransitive => "complete-transitive",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown relation kind `{s}`"))
    }
}

/// Seeded generator configuration. The PRNG is ChaCha8 seeded with
/// `seed_from_u64(seed)`, so corpora are identical across platforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    pub kind: RelationKind,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64, kind: RelationKind) -> Self {
        assert!(n >= 1, "universe must be nonempty");
        GeneratorConfig { n, seed, kind }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

impl fmt::Display for GeneratorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} seed={} kind={}", self.n, self.seed, self.kind)
    }
}

fn guard(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::TooLarge { n, max })
    } else {
        Ok(())
    }
}

/// Searches all maps into `{0, ..., n - 1}` for a representation, assigning
/// elements in order and backtracking as soon as an assigned pair breaks the
/// definition. Returns a witness on success.
pub fn brute_force_rp_exists(r: &Relation) -> Result<Option<Utility>> {
    let n = r.len();
    guard(n, BRUTE_FORCE_MAX)?;
    let mut levels = vec![0usize; n];
    if assign(r, &mut levels, 0) {
        Ok(Some(Utility::over(
            r,
            levels.iter().map(|&l| BigRational::from_integer(l.into())),
        )))
    } else {
        Ok(None)
    }
}

fn assign(r: &Relation, levels: &mut [usize], next: usize) -> bool {
    let n = levels.len();
    if next == n {
        return true;
    }
    for level in 0..n {
        levels[next] = level;
        let consistent = (0..=next).all(|other| {
            pair_ok(r, levels, next, other) && pair_ok(r, levels, other, next)
        });
        if consistent && assign(r, levels, next + 1) {
            return true;
        }
    }
    false
}

/// The definition for the ordered pair `(x, y)`.
fn pair_ok(r: &Relation, levels: &[usize], x: usize, y: usize) -> bool {
    let xy = r.contains(x, y);
    let yx = r.contains(y, x);
    if xy && yx {
        levels[x] == levels[y]
    } else if xy {
        levels[x] > levels[y]
    } else {
        true
    }
}

/// Enumerates every simple cycle `x1 ≿ ... ≿ xk ≿ x1` and checks that each
/// step is an indifference. Cycles are rooted at their smallest element.
pub fn brute_force_strong_acyclicity(r: &Relation) -> Result<bool> {
    let n = r.len();
    guard(n, BRUTE_FORCE_MAX)?;
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        let ok = cycles_from(r, root, &mut path, &mut on_path);
        path.pop();
        on_path[root] = false;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn cycles_from(r: &Relation, root: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
    let last = *path.last().expect("nonempty path");
    for next in root..r.len() {
        if !r.contains(last, next) {
            continue;
        }
        if next == root {
            let all_indifferent = path
                .iter()
                .zip(path.iter().skip(1).chain(std::iter::once(&root)))
                .all(|(&a, &b)| r.contains(a, b) && r.contains(b, a));
            if !all_indifferent {
                return false;
            }
        } else if !on_path[next] {
            path.push(next);
            on_path[next] = true;
            let ok = cycles_from(r, root, path, on_path);
            path.pop();
            on_path[next] = false;
            if !ok {
                return false;
            }
        }
    }
    true
}

/// All `2^(n^2)` relations on `n` default-labeled elements, each exactly
/// once, with cell `(i, j)` taken from bit `i * n + j` of a counter.
pub fn enumerate_all_relations(n: usize) -> Result<impl Iterator<Item = Relation>> {
    guard(n, EXHAUSTIVE_MAX)?;
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    let template = Relation::from_fn(default_labels(n), |_, _| false)?;
    let cells = n * n;
    Ok((0u64..1 << cells).map(move |code| template.with_cells(|i, j| code >> (i * n + j) & 1 == 1)))
}

/// Deterministic random relation of the requested kind.
///
/// * `arbitrary`: every cell independently with a density drawn per seed.
/// * `preorder`: random partition into classes, random DAG over the
///   classes, then reflexive-transitive closure.
/// * `strongly-acyclic`: a random preorder with random strict pairs,
///   symmetric pairs (both directions together) and diagonal cells removed.
/// * `complete-transitive`: a random weak order from random ranks.
pub fn random_relation(cfg: &GeneratorConfig) -> Relation {
    let mut rng = cfg.rng();
    let n = cfg.n;
    let labels = default_labels(n);
    let r = match cfg.kind {
        RelationKind::Arbitrary => {
            let p: f64 = rng.random();
            Relation::from_fn(labels, |_, _| rng.random_bool(p))
        }
        RelationKind::Preorder => Ok(random_preorder(&mut rng, labels)),
        RelationKind::StronglyAcyclic => {
            let base = random_preorder(&mut rng, labels);
            let drop: f64 = rng.random_range(0.0..0.6);
            let mut keep = vec![vec![true; n]; n];
            for x in 0..n {
                keep[x][x] = !rng.random_bool(drop);
                for y in x + 1..n {
                    let remove = rng.random_bool(drop);
                    if base.indifferent(x, y) {
                        keep[x][y] = !remove;
                        keep[y][x] = !remove;
                    } else if remove {
                        keep[x][y] = false;
                        keep[y][x] = false;
                    }
                }
            }
            Ok(base.with_cells(|x, y| base.contains(x, y) && keep[x][y]))
        }
        RelationKind::CompleteTransitive => {
            let levels = rng.random_range(1..=n);
            let rank: Vec<usize> = (0..n).map(|_| rng.random_range(0..levels)).collect();
            Relation::from_fn(labels, |x, y| rank[x] >= rank[y])
        }
    }
    .expect("default labels are valid");
    match cfg.kind {
        RelationKind::Preorder | RelationKind::CompleteTransitive => {
            assert!(r.is_preorder(), "generator produced a non-preorder for {cfg}")
        }
        RelationKind::StronglyAcyclic => assert!(
            crate::acyclicity::is_strongly_acyclic(&r),
            "generator produced a cycle for {cfg}"
        ),
        RelationKind::Arbitrary => {}
    }
    r
}

fn random_preorder(rng: &mut ChaCha8Rng, labels: Vec<String>) -> Relation {
    let n = labels.len();
    let classes = rng.random_range(1..=n);
    let class: Vec<usize> = (0..n).map(|_| rng.random_range(0..classes)).collect();
    // Random DAG: classes ordered by a random permutation, forward edges
    // kept with a per-seed density.
    let mut order: Vec<usize> = (0..classes).collect();
    order.shuffle(rng);
    let mut position = vec![0; classes];
    for (p, &c) in order.iter().enumerate() {
        position[c] = p;
    }
    let density: f64 = rng.random();
    let mut above = vec![vec![false; classes]; classes];
    for a in 0..classes {
        for b in 0..classes {
            if position[a] < position[b] {
                above[a][b] = rng.random_bool(density);
            }
        }
    }
    Relation::from_fn(labels, |x, y| class[x] == class[y] || above[class[x]][class[y]])
        .expect("default labels are valid")
        .reflexive_closure()
        .transitive_closure()
}

/// A random utility on `r` with integer values in `0..levels`.
pub fn random_utility(r: &Relation, rng: &mut impl Rng, levels: i64) -> Utility {
    Utility::over(
        r,
        (0..r.len()).map(|_| BigRational::from_integer(rng.random_range(0..levels).into())),
    )
}

pub mod suites {
    //! Property checks shared by the `fuzz` command and the test suites.
    //! Each returns `Err` with a description of the first disagreement.

    use super::*;
    use crate::acyclicity::is_strongly_acyclic;
    use crate::optimality::{argmax_indices, maximal_indices, prop1_utility, prop2_utility};
    use crate::representation::{is_representation, normalize_to_unit_interval, synthesize};

    /// The four existence deciders agree on `r`. Brute-force deciders are
    /// skipped above [`BRUTE_FORCE_MAX`].
    pub fn existence_agreement(r: &Relation) -> std::result::Result<bool, String> {
        let scc = is_strongly_acyclic(r);
        let synthesized = synthesize(r);
        if let Ok(u) = &synthesized {
            if !is_representation(r, u).unwrap_or(false) {
                return Err("synthesized utility does not verify".into());
            }
        }
        let mut verdicts = vec![("is_strongly_acyclic", scc), ("synthesize", synthesized.is_ok())];
        if r.len() <= BRUTE_FORCE_MAX {
            let witness = brute_force_rp_exists(r).map_err(|e| e.to_string())?;
            if let Some(u) = &witness {
                if !is_representation(r, u).unwrap_or(false) {
                    return Err("brute-force witness does not verify".into());
                }
            }
            verdicts.push(("brute_force_rp_exists", witness.is_some()));
            verdicts.push((
                "brute_force_strong_acyclicity",
                brute_force_strong_acyclicity(r).map_err(|e| e.to_string())?,
            ));
        }
        if verdicts.iter().all(|&(_, v)| v == scc) {
            Ok(scc)
        } else {
            Err(format!("deciders disagree: {verdicts:?}"))
        }
    }

    fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (0u64..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    fn base_utility(r: &Relation) -> std::result::Result<Utility, String> {
        synthesize(r)
            .map(|u| normalize_to_unit_interval(&u))
            .map_err(|e| e.to_string())
    }

    /// For every menu of the preorder `r`, the scalarized utility's argmax
    /// equals the maximal set. Returns the number of menus checked.
    pub fn prop1_all_menus(r: &Relation) -> std::result::Result<usize, String> {
        let v = base_utility(r)?;
        let mut count = 0;
        for menu in subsets(r.len()) {
            let labels: Vec<&str> = menu.iter().map(|&i| r.label(i)).collect();
            let u = prop1_utility(r, &v, &labels).map_err(|e| e.to_string())?;
            let values = u.values_for(r).map_err(|e| e.to_string())?;
            let got = argmax_indices(&values, &menu);
            let want = maximal_indices(r, &menu);
            if got != want {
                return Err(format!("menu {labels:?}: argmax {got:?} != maximal {want:?}"));
            }
            count += 1;
        }
        Ok(count)
    }

    /// For every element `x` of the preorder `r` and every menu in which `x`
    /// is maximal, `x` maximizes the pointed utility. Returns the number of
    /// (element, menu) pairs checked.
    pub fn prop2_all_menus(r: &Relation) -> std::result::Result<usize, String> {
        let v = base_utility(r)?;
        let mut count = 0;
        for x in 0..r.len() {
            let u = prop2_utility(r, &v, r.label(x)).map_err(|e| e.to_string())?;
            let values = u.values_for(r).map_err(|e| e.to_string())?;
            for menu in subsets(r.len()) {
                if !maximal_indices(r, &menu).contains(&x) {
                    continue;
                }
                if !argmax_indices(&values, &menu).contains(&x) {
                    return Err(format!("element {} not in argmax of menu {menu:?}", r.label(x)));
                }
                count += 1;
            }
        }
        Ok(count)
    }
}
