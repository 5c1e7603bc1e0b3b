//! Stratifications, separation and embeddings.
//!
//! A collection of nonempty subsets is a *pseudo-stratification* of `≿` when
//! strict preference between members of two subsets is never reversed by
//! other members of the same two subsets (the two subsets may coincide). It
//! is a *stratification* when distinct subsets are disjoint, and
//! *separating* when every strict pair `x ≻ y` is split by some listed
//! element `z` with `x ≿ z` and not `y ≻ z`.
//!
//! Finite separability (embeddability into a preorder that has a countable
//! separating stratification) reduces to being a preorder: anything that
//! embeds into a preorder is itself a preorder, and a finite preorder is
//! separated by its singletons through the identity embedding.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::relation::Relation;

/// An ordered list of strata. Position `i` carries weight `2^-i` in
/// [`crate::representation::utility_from_stratification`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    strata: Vec<Vec<String>>,
    origin: Vec<usize>,
}

impl Stratification {
    /// Duplicate labels inside a stratum are dropped; an empty stratum is an
    /// error.
    pub fn new<S: Into<String>>(strata: impl IntoIterator<Item = impl IntoIterator<Item = S>>) -> Result<Self> {
        let mut out = Vec::new();
        for (i, stratum) in strata.into_iter().enumerate() {
            let mut labels: Vec<String> = Vec::new();
            for l in stratum {
                let l = l.into();
                if !labels.contains(&l) {
                    labels.push(l);
                }
            }
            if labels.is_empty() {
                return Err(Error::EmptyStratum(i));
            }
            out.push(labels);
        }
        let origin = (0..out.len()).collect();
        Ok(Stratification { strata: out, origin })
    }

    /// Every element of `r` in its own stratum, in universe order.
    pub fn singletons(r: &Relation) -> Self {
        Stratification {
            strata: r.labels().iter().map(|l| vec![l.clone()]).collect(),
            origin: (0..r.len()).collect(),
        }
    }

    pub fn strata(&self) -> &[Vec<String>] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    /// Position of each stratum in the collection it was derived from (the
    /// identity unless produced by [`disjointify`]).
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    /// Strata as index sets over `r`'s universe.
    pub fn masks(&self, r: &Relation) -> Result<Vec<BitSet>> {
        self.strata
            .iter()
            .map(|s| Ok(BitSet::from_indices(r.len(), r.resolve(s)?)))
            .collect()
    }
}

/// Per-element bitsets of strictly worse elements.
fn strict_rows(r: &Relation) -> Vec<BitSet> {
    (0..r.len()).map(|x| r.lower_strict(x)).collect()
}

fn has_strict_between(rows: &[BitSet], from: &BitSet, to: &BitSet) -> bool {
    from.iter().any(|x| rows[x].intersects(to))
}

fn pseudo_on_masks(rows: &[BitSet], masks: &[BitSet]) -> bool {
    let k = masks.len();
    // forward[a][b]: some member of a strictly beats some member of b.
    let forward: Vec<Vec<bool>> = masks
        .iter()
        .map(|a| masks.iter().map(|b| has_strict_between(rows, a, b)).collect())
        .collect();
    (0..k).all(|a| (a..k).all(|b| !(forward[a][b] && forward[b][a])))
}

pub fn is_pseudo_stratification(r: &Relation, s: &Stratification) -> Result<bool> {
    let masks = s.masks(r)?;
    Ok(pseudo_on_masks(&strict_rows(r), &masks))
}

fn pairwise_disjoint(masks: &[BitSet]) -> bool {
    masks.iter().enumerate().all(|(a, ma)| {
        masks[a + 1..]
            .iter()
            .all(|mb| ma == mb || !ma.intersects(mb))
    })
}

/// Pseudo-stratification whose distinct strata are pairwise disjoint.
/// Strata listed twice with equal contents count as one member of the
/// collection.
pub fn is_stratification(r: &Relation, s: &Stratification) -> Result<bool> {
    let masks = s.masks(r)?;
    Ok(pairwise_disjoint(&masks) && pseudo_on_masks(&strict_rows(r), &masks))
}

/// Requires `s` to be a pseudo-stratification of `r`.
pub fn is_separating(r: &Relation, s: &Stratification) -> Result<bool> {
    let masks = s.masks(r)?;
    let rows = strict_rows(r);
    if !pseudo_on_masks(&rows, &masks) {
        return Err(Error::NotPseudoStratification);
    }
    let mut covered = BitSet::new(r.len());
    for m in &masks {
        covered.union_with(m);
    }
    Ok(separates(r, &rows, &covered))
}

/// Whether every `x ≻ y` admits `z ∈ covered` with `x ≿ z` and not `y ≻ z`.
fn separates(r: &Relation, rows: &[BitSet], covered: &BitSet) -> bool {
    (0..r.len()).all(|x| {
        let mut candidates = r.lower_weak(x);
        candidates.intersect_with(covered);
        rows[x].iter().all(|y| {
            let mut c = candidates.clone();
            c.difference_with(&rows[y]);
            !c.is_empty()
        })
    })
}

/// Makes the strata disjoint: the stratum at position `n` loses every
/// element of earlier strata. Strata that become empty are dropped and the
/// rest keep their original position in [`Stratification::origin`].
pub fn disjointify(s: &Stratification) -> Stratification {
    let mut seen: Vec<&String> = Vec::new();
    let mut strata = Vec::new();
    let mut origin = Vec::new();
    for (stratum, &orig) in s.strata.iter().zip(&s.origin) {
        let fresh: Vec<String> = stratum
            .iter()
            .filter(|l| !seen.contains(l))
            .cloned()
            .collect();
        seen.extend(stratum.iter());
        if !fresh.is_empty() {
            strata.push(fresh);
            origin.push(orig);
        }
    }
    Stratification { strata, origin }
}

/// For finite relations, separability coincides with being a preorder.
pub fn is_separable_finite(r: &Relation) -> bool {
    r.is_preorder()
}

/// A map from one relation's universe into another's.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    source: Relation,
    target: Relation,
    map: Vec<usize>,
}

impl EmbeddingMap {
    /// `pairs` lists `(source label, target label)`; every source element
    /// must appear exactly once.
    pub fn new<A: AsRef<str>, B: AsRef<str>>(
        source: Relation,
        target: Relation,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self> {
        let mut map = vec![usize::MAX; source.len()];
        for (x, fx) in pairs {
            let i = source.require_index(x.as_ref())?;
            let j = target.require_index(fx.as_ref())?;
            if map[i] != usize::MAX {
                return Err(Error::DuplicateMapping(x.as_ref().to_string()));
            }
            map[i] = j;
        }
        if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
            return Err(Error::MissingMapping(source.label(i).to_string()));
        }
        Ok(EmbeddingMap { source, target, map })
    }

    pub fn identity(r: &Relation) -> Self {
        EmbeddingMap {
            source: r.clone(),
            target: r.clone(),
            map: (0..r.len()).collect(),
        }
    }

    pub fn source(&self) -> &Relation {
        &self.source
    }

    pub fn target(&self) -> &Relation {
        &self.target
    }

    pub fn image(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Source pairs `(x, y)` where `x ≿ y` and `f(x) ≿* f(y)` disagree.
    pub fn mismatches(&self) -> Vec<(usize, usize)> {
        let n = self.source.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.source.contains(x, y) != self.target.contains(self.map[x], self.map[y]) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// `x ≿ y ⇔ f(x) ≿* f(y)` for every source pair.
pub fn verify_embedding(e: &EmbeddingMap) -> bool {
    e.mismatches().is_empty()
}
