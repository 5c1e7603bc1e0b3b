//! Maximal elements and their recovery through scalar maximization.
//!
//! `M(≿, A)` is the set of `x ∈ A` such that `y ≿ x` implies `x ≿ y` for
//! every `y ∈ A`. For a preorder with a representation `v` valued in
//! `(0, 1)`, [`prop1_utility`] builds a single representation whose argmax
//! over a given menu is exactly `M(≿, A)`, and [`prop2_utility`] builds one
//! under which a fixed element maximizes every menu where it is maximal.
//! Without transitivity neither construction exists in general; see
//! [`scalarization_counterexample_check`].

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::representation::{
    is_representation, normalize_to_unit_interval, verify_representation, within_unit_interval, Utility,
};

/// A relation together with a menu `A` of available elements.
#[derive(Clone, Debug)]
pub struct ChoiceProblem {
    relation: Relation,
    menu: Vec<usize>,
}

impl ChoiceProblem {
    pub fn new<S: AsRef<str>>(relation: Relation, menu: &[S]) -> Result<Self> {
        let mut menu = relation.resolve(menu)?;
        menu.sort_unstable();
        menu.dedup();
        Ok(ChoiceProblem { relation, menu })
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn menu(&self) -> &[usize] {
        &self.menu
    }

    pub fn maximal(&self) -> Vec<usize> {
        maximal_indices(&self.relation, &self.menu)
    }
}

/// `M(≿, A)` over positions; output ascending.
pub fn maximal_indices(r: &Relation, menu: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = menu
        .iter()
        .copied()
        .filter(|&x| menu.iter().all(|&y| !r.contains(y, x) || r.contains(x, y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `M(≿, A)` as labels in universe order.
pub fn maximal_elements<S: AsRef<str>>(r: &Relation, menu: &[S]) -> Result<Vec<String>> {
    let menu = r.resolve(menu)?;
    Ok(maximal_indices(r, &menu)
        .into_iter()
        .map(|i| r.label(i).to_string())
        .collect())
}

/// Elements of `menu` attaining the largest value, in menu order.
pub fn argmax<S: AsRef<str>>(u: &Utility, menu: &[S]) -> Result<Vec<String>> {
    let mut best: Option<&BigRational> = None;
    let mut winners: Vec<String> = Vec::new();
    for label in menu {
        let label = label.as_ref();
        let v = u.get(label).ok_or_else(|| Error::MissingValue(label.to_string()))?;
        match best {
            Some(b) if v < b => {}
            Some(b) if v == b => {
                if !winners.iter().any(|w| w == label) {
                    winners.push(label.to_string());
                }
            }
            _ => {
                best = Some(v);
                winners.clear();
                winners.push(label.to_string());
            }
        }
    }
    Ok(winners)
}

/// Position-based argmax over `values`, ascending.
pub fn argmax_indices(values: &[BigRational], menu: &[usize]) -> Vec<usize> {
    let Some(best) = menu.iter().map(|&i| &values[i]).max() else {
        return Vec::new();
    };
    let mut out: Vec<usize> = menu.iter().copied().filter(|&i| &values[i] == best).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Preconditions shared by both constructions; returns `v` normalized into
/// `(0, 1)` when it is not already.
fn prepare_base(r: &Relation, v: &Utility) -> Result<Utility> {
    if !r.is_preorder() {
        return Err(Error::NotPreorder);
    }
    let check = verify_representation(r, v)?;
    if !check.is_valid() {
        return Err(Error::NotRepresentation(check.violations.len()));
    }
    Ok(if within_unit_interval(v) {
        v.clone()
    } else {
        normalize_to_unit_interval(v)
    })
}

/// Representation of the preorder `r` whose argmax over `menu` is exactly
/// `M(≿, menu)`:
///
/// * `1` if `x` is indifferent to a maximal element of the menu,
/// * `v(x)` if some menu element is strictly better than `x`,
/// * `1 + v(x)` otherwise.
///
/// For an empty menu `v` itself is returned unchanged.
pub fn prop1_utility<S: AsRef<str>>(r: &Relation, v: &Utility, menu: &[S]) -> Result<Utility> {
    let base = prepare_base(r, v)?;
    let menu = r.resolve(menu)?;
    if menu.is_empty() {
        return Ok(v.clone());
    }
    let base = base.values_for(r)?;
    let maximal = maximal_indices(r, &menu);
    let one = BigRational::one();
    let values = (0..r.len()).map(|x| {
        let tied_to_maximal = maximal.iter().any(|&y| r.indifferent(y, x));
        let dominated = menu.iter().any(|&y| r.strictly(y, x));
        assert!(
            !(tied_to_maximal && dominated),
            "cases overlap at `{}`: input is not transitive",
            r.label(x)
        );
        if tied_to_maximal {
            one.clone()
        } else if dominated {
            base[x].clone()
        } else {
            &one + &base[x]
        }
    });
    let u = Utility::over(r, values);
    assert!(is_representation(r, &u)?, "scalarized utility must represent the preorder");
    Ok(u)
}

/// Representation of the preorder `r` under which `x` maximizes every menu
/// in which it is maximal: `1` on the indifference class of `x`, `1 + v(y)`
/// strictly above it, `v(y)` elsewhere.
pub fn prop2_utility(r: &Relation, v: &Utility, x: &str) -> Result<Utility> {
    let base = prepare_base(r, v)?;
    let x = r.require_index(x)?;
    let base = base.values_for(r)?;
    let one = BigRational::one();
    let values = (0..r.len()).map(|y| {
        if r.indifferent(y, x) {
            one.clone()
        } else if r.strictly(y, x) {
            &one + &base[y]
        } else {
            base[y].clone()
        }
    });
    let u = Utility::over(r, values);
    assert!(is_representation(r, &u)?, "pointed utility must represent the preorder");
    Ok(u)
}

/// Outcome of [`scalarization_counterexample_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    /// `M(≿, {a, c}) = {a, c}`.
    pub maximal_is_whole_menu: bool,
    /// `u(a) = 1, u(b) = u(c) = 0` represents the relation.
    pub stated_utility_verifies: bool,
    pub strongly_acyclic: bool,
    pub transitive: bool,
    /// Number of representations found among all maps into `{0, 1, 2}`.
    pub representations_checked: usize,
    /// Every one of them has `v(a) > v(c)`.
    pub all_prefer_a_over_c: bool,
}

impl CounterexampleReport {
    pub fn confirmed(&self) -> bool {
        self.maximal_is_whole_menu
            && self.stated_utility_verifies
            && self.strongly_acyclic
            && !self.transitive
            && self.representations_checked > 0
            && self.all_prefer_a_over_c
    }
}

/// The relation `a ≻ b ∼ c` with `a ⋈ c` on `{a, b, c}`.
pub fn counterexample_relation() -> Relation {
    Relation::new(
        ["a", "b", "c"],
        [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("c", "b")],
    )
    .expect("fixed relation")
}

/// Shows that scalarization fails without transitivity: `a` and `c` are
/// both maximal in `{a, c}`, yet every representation ranks `a` above `c`.
/// Representations are searched over all maps into `{0, 1, 2}`; since only
/// the order pattern of the values matters, this covers every real-valued
/// representation on three elements.
pub fn scalarization_counterexample_check() -> CounterexampleReport {
    let r = counterexample_relation();
    let maximal = maximal_elements(&r, &["a", "c"]).expect("known labels");
    let stated = Utility::from_integers([("a", 1), ("b", 0), ("c", 0)]);

    let mut checked = 0;
    let mut all_prefer = true;
    for code in 0..27i64 {
        let (a, b, c) = (code / 9, code / 3 % 3, code % 3);
        let u = Utility::from_integers([("a", a), ("b", b), ("c", c)]);
        if is_representation(&r, &u).expect("total utility") {
            checked += 1;
            all_prefer &= a > c;
        }
    }

    CounterexampleReport {
        maximal_is_whole_menu: maximal == ["a", "c"],
        stated_utility_verifies: is_representation(&r, &stated).expect("total utility"),
        strongly_acyclic: crate::acyclicity::is_strongly_acyclic(&r),
        transitive: r.is_transitive(),
        representations_checked: checked,
        all_prefer_a_over_c: all_prefer,
    }
}
