//! Richter-Peleg representations.
//!
//! A utility `u` represents `≿` when `x ∼ y ⇒ u(x) = u(y)` and
//! `x ≻ y ⇒ u(x) > u(y)`. Nothing is required of incomparable pairs, so the
//! relation need be neither complete nor transitive. All values are exact
//! rationals.
//!
//! Two constructors are provided. [`synthesize`] works for any strongly
//! acyclic relation: take the reflexive-transitive closure (which keeps the
//! same strict pairs when the input is strongly acyclic), collapse its
//! indifference classes and use the height of each class in the resulting
//! DAG. [`utility_from_stratification`] evaluates the dyadic series
//! `u(x) = Σ_i 2^-i [ψ(A_i ∩ LW(x)) + ψ(A_i ∩ LS(x))]` for a preorder and a
//! separating pseudo-stratification `(A_i)`, where `ψ` is 1 on nonempty sets.

use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::acyclicity::check_strong_acyclicity;
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::stratification::{is_separating, Stratification};

/// Exact utility values keyed by element label, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Utility {
    values: IndexMap<String, BigRational>,
}

impl Utility {
    pub fn new() -> Self {
        Utility::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, BigRational)>) -> Self {
        Utility {
            values: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Integer values, convenient for fixtures.
    pub fn from_integers<S: Into<String>>(pairs: impl IntoIterator<Item = (S, i64)>) -> Self {
        Utility::from_pairs(pairs.into_iter().map(|(k, v)| (k, BigRational::from_integer(v.into()))))
    }

    /// Values listed by position over `r`'s universe.
    pub fn over(r: &Relation, values: impl IntoIterator<Item = BigRational>) -> Self {
        Utility::from_pairs(r.labels().iter().cloned().zip(values))
    }

    pub fn insert(&mut self, label: impl Into<String>, value: BigRational) {
        self.values.insert(label.into(), value);
    }

    pub fn get(&self, label: &str) -> Option<&BigRational> {
        self.values.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in the universe order of `r`.
    pub fn values_for(&self, r: &Relation) -> Result<Vec<BigRational>> {
        r.labels()
            .iter()
            .map(|l| {
                self.values
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::MissingValue(l.clone()))
            })
            .collect()
    }
}

impl fmt::Display for Utility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, v) in &self.values {
            writeln!(f, "{label} = {}/{}", v.numer(), v.denom())?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// `x ∼ y` but `u(x) ≠ u(y)`.
    IndifferenceBroken,
    /// `x ≻ y` but `u(x) ≤ u(y)`.
    StrictNotIncreased,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::IndifferenceBroken => "indifference-broken",
            ViolationKind::StrictNotIncreased => "strict-not-increased",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: String,
    pub y: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VIOLATION {} {} {}", self.kind, self.x, self.y)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks both defining implications over every pair. Indifference
/// violations are reported once per unordered pair.
pub fn verify_representation(r: &Relation, u: &Utility) -> Result<Verification> {
    let values = u.values_for(r)?;
    Ok(verify_values(r, &values))
}

pub(crate) fn verify_values(r: &Relation, values: &[BigRational]) -> Verification {
    let mut violations = Vec::new();
    for (x, y) in r.pairs() {
        let kind = if r.contains(y, x) {
            if x < y && values[x] != values[y] {
                ViolationKind::IndifferenceBroken
            } else {
                continue;
            }
        } else if values[x] <= values[y] {
            ViolationKind::StrictNotIncreased
        } else {
            continue;
        };
        violations.push(Violation {
            kind,
            x: r.label(x).to_string(),
            y: r.label(y).to_string(),
        });
    }
    Verification { violations }
}

pub fn is_representation(r: &Relation, u: &Utility) -> Result<bool> {
    Ok(verify_representation(r, u)?.is_valid())
}

/// Integer representation from DAG heights of the indifference classes of
/// the reflexive-transitive closure. Fails with the witness cycle when `r`
/// is not strongly acyclic.
pub fn synthesize(r: &Relation) -> Result<Utility> {
    check_strong_acyclicity(r).map_err(Error::NotStronglyAcyclic)?;
    let closed = r.reflexive_closure().transitive_closure();
    let dag = closed.condensation();
    let heights = dag.heights();
    let u = Utility::over(
        r,
        (0..r.len()).map(|x| BigRational::from_integer(heights[dag.component_of(x)].into())),
    );
    debug_assert!(is_representation(r, &u).unwrap_or(false));
    Ok(u)
}

/// Evaluates the dyadic series for a preorder `r` and a separating
/// pseudo-stratification `s`. Every value is `N / 2^(|s| - 1)` for an
/// integer `N` before reduction.
pub fn utility_from_stratification(r: &Relation, s: &Stratification) -> Result<Utility> {
    if !r.is_preorder() {
        return Err(Error::NotPreorder);
    }
    if !is_separating(r, s)? {
        return Err(Error::NotSeparating);
    }
    let masks = s.masks(r)?;
    let k = masks.len();
    let denom = BigInt::one() << k.saturating_sub(1);
    let values = (0..r.len()).map(|x| {
        let weak = r.lower_weak(x);
        let strict = r.lower_strict(x);
        let mut numer = BigInt::zero();
        for (i, stratum) in masks.iter().enumerate() {
            let hits = u32::from(stratum.intersects(&weak)) + u32::from(stratum.intersects(&strict));
            if hits > 0 {
                numer += BigInt::from(hits) << (k - 1 - i);
            }
        }
        BigRational::new(numer, denom.clone())
    });
    Ok(Utility::over(r, values))
}

/// Replaces each value by its rank among the distinct values, rescaled to
/// `j / (k + 1)` for ranks `j = 1..=k`. Strict order and level sets are
/// unchanged and every value lands in `(0, 1)`.
pub fn normalize_to_unit_interval(u: &Utility) -> Utility {
    let mut distinct: Vec<&BigRational> = u.values.values().collect();
    distinct.sort();
    distinct.dedup();
    let slots = BigInt::from(distinct.len() + 1);
    Utility {
        values: u
            .values
            .iter()
            .map(|(label, v)| {
                let rank = distinct.binary_search(&v).expect("value present") + 1;
                (label.clone(), BigRational::new(rank.into(), slots.clone()))
            })
            .collect(),
    }
}

/// `true` iff every value lies strictly between 0 and 1.
pub fn within_unit_interval(u: &Utility) -> bool {
    let one = BigRational::one();
    u.values.values().all(|v| v.is_positive() && *v < one)
}

/// A representation of `r` also represents its transitive closure. Returns
/// whether that holds for `u`; refuses if `u` does not represent `r`.
pub fn closure_transfer_check(r: &Relation, u: &Utility) -> Result<bool> {
    let base = verify_representation(r, u)?;
    if !base.is_valid() {
        return Err(Error::NotRepresentation(base.violations.len()));
    }
    is_representation(&r.transitive_closure(), u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn example1() -> Relation {
        Relation::new(["a", "b", "c"], [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")]).unwrap()
    }

    fn acyclic_not_strong() -> Relation {
        Relation::new(["a", "b", "c"], [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b"), ("c", "a")]).unwrap()
    }

    fn choice_counterexample() -> Relation {
        Relation::new(
            ["a", "b", "c"],
            [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("c", "b")],
        )
        .unwrap()
    }

    /// Term-by-term summation of the series in exact rationals.
    fn series_oracle(r: &Relation, strata: &[Vec<usize>]) -> Vec<BigRational> {
        (0..r.len())
            .map(|x| {
                let mut total = BigRational::zero();
                for (i, a) in strata.iter().enumerate() {
                    let weak = a.iter().any(|&z| r.contains(x, z));
                    let strict = a.iter().any(|&z| r.contains(x, z) && !r.contains(z, x));
                    let weight = BigRational::new(1.into(), BigInt::from(2).pow(i as u32));
                    total += weight * BigRational::from_integer((weak as i64 + strict as i64).into());
                }
                total
            })
            .collect()
    }

    #[test]
    fn stated_utilities_verify() {
        let u = Utility::from_integers([("a", 2), ("b", 1), ("c", 0)]);
        assert!(is_representation(&example1(), &u).unwrap());

        let full = acyclic_not_strong().transitive_closure();
        let zero = Utility::from_integers([("a", 0), ("b", 0), ("c", 0)]);
        assert!(is_representation(&full, &zero).unwrap());

        let u = Utility::from_integers([("a", 1), ("b", 0), ("c", 0)]);
        assert!(is_representation(&choice_counterexample(), &u).unwrap());
    }

    #[test]
    fn violations_are_reported() {
        let u = Utility::from_integers([("a", 0), ("b", 1), ("c", 1)]);
        let v = verify_representation(&choice_counterexample(), &u).unwrap();
        assert_eq!(
            v.violations,
            vec![Violation {
                kind: ViolationKind::StrictNotIncreased,
                x: "a".into(),
                y: "b".into()
            }]
        );
        let u = Utility::from_integers([("a", 2), ("b", 1), ("c", 0)]);
        let v = verify_representation(&choice_counterexample(), &u).unwrap();
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.violations[0].kind, ViolationKind::IndifferenceBroken);
        assert_eq!(v.violations[0].to_string(), "VIOLATION indifference-broken b c");
    }

    #[test]
    fn missing_value() {
        let u = Utility::from_integers([("a", 2), ("b", 1)]);
        assert_eq!(
            verify_representation(&example1(), &u),
            Err(Error::MissingValue("c".into()))
        );
    }

    #[test]
    fn synthesize_examples() {
        let u = synthesize(&example1()).unwrap();
        assert_eq!(u, Utility::from_integers([("a", 2), ("b", 1), ("c", 0)]));

        match synthesize(&acyclic_not_strong()) {
            Err(Error::NotStronglyAcyclic(w)) => assert_eq!(w.to_string(), "cycle: a b c ; strict: c>a"),
            other => panic!("unexpected {other:?}"),
        }

        let single = Relation::new(["a"], [("a", "a")]).unwrap();
        assert_eq!(synthesize(&single).unwrap(), Utility::from_integers([("a", 0)]));
        let bare = Relation::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(synthesize(&bare).unwrap(), Utility::from_integers([("a", 0)]));
    }

    #[test]
    fn series_on_chain_matches_oracle() {
        let chain = example1().transitive_closure();
        let s = Stratification::singletons(&chain);
        let u = utility_from_stratification(&chain, &s).unwrap();
        // a: [1+0] + [1+1]/2 + [1+1]/4;  b: [1+0]/2 + [1+1]/4;  c: [1+0]/4
        let expected = series_oracle(&chain, &[vec![0], vec![1], vec![2]]);
        assert_eq!(expected, vec![q(5, 2), q(1, 1), q(1, 4)]);
        assert_eq!(u.values_for(&chain).unwrap(), expected);
        assert!(is_representation(&chain, &u).unwrap());
    }

    #[test]
    fn series_trivial_cases() {
        let one = Relation::new(["a"], [("a", "a")]).unwrap();
        let u = utility_from_stratification(&one, &Stratification::singletons(&one)).unwrap();
        assert_eq!(u.get("a"), Some(&q(1, 1)));

        let full = Relation::from_fn(["a", "b"], |_, _| true).unwrap();
        let s = Stratification::new([["a", "b"]]).unwrap();
        let u = utility_from_stratification(&full, &s).unwrap();
        assert_eq!(u, Utility::from_integers([("a", 1), ("b", 1)]));
    }

    #[test]
    fn series_refusals() {
        assert_eq!(
            utility_from_stratification(&example1(), &Stratification::singletons(&example1())),
            Err(Error::NotPreorder)
        );
        // {a} does not separate b ≻ c
        let r = Relation::new(["a", "b", "c"], [("a", "c"), ("b", "c"), ("a", "a"), ("b", "b"), ("c", "c")]).unwrap();
        let s = Stratification::new([["a"]]).unwrap();
        assert_eq!(utility_from_stratification(&r, &s), Err(Error::NotSeparating));
    }

    #[test]
    fn normalization() {
        let u = Utility::from_integers([("a", 2), ("b", 1), ("c", 0)]);
        let n = normalize_to_unit_interval(&u);
        assert_eq!(n, Utility::from_pairs([("a", q(3, 4)), ("b", q(2, 4)), ("c", q(1, 4))]));
        assert!(within_unit_interval(&n));

        let c = Utility::from_integers([("a", 7), ("b", 7)]);
        assert_eq!(
            normalize_to_unit_interval(&c),
            Utility::from_pairs([("a", q(1, 2)), ("b", q(1, 2))])
        );

        let inside = Utility::from_pairs([("a", q(1, 3)), ("b", q(1, 10)), ("c", q(1, 3))]);
        let n = normalize_to_unit_interval(&inside);
        assert_eq!(n.get("a"), n.get("c"));
        assert!(n.get("a") > n.get("b"));
    }

    #[test]
    fn closure_transfer() {
        let u = Utility::from_integers([("a", 2), ("b", 1), ("c", 0)]);
        assert!(closure_transfer_check(&example1(), &u).unwrap());
        let bad = Utility::from_integers([("a", 0), ("b", 1), ("c", 2)]);
        assert!(matches!(
            closure_transfer_check(&example1(), &bad),
            Err(Error::NotRepresentation(_))
        ));
    }

    #[test]
    fn display_format() {
        let u = Utility::from_pairs([("a", q(5, 2)), ("b", q(0, 1))]);
        assert_eq!(u.to_string(), "a = 5/2\nb = 0/1\n");
    }
}
