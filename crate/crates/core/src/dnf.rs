//! Positive DNFs and their semantics-preserving manipulations.
//!
//! A term is a non-empty set of variables (a conjunction of unnegated
//! literals); a positive DNF is either the constant TRUE or a non-empty set
//! of terms. The constant FALSE is not representable, matching the class of
//! functions covered.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::variable::Variable;

/// Partial truth assignment. Consistency holds by construction: a map cannot
/// bind a variable to two values.
pub type Assignment = BTreeMap<Variable, bool>;

/// Conjunction of unnegated variables, stored as a set.
///
/// Invariant: non-empty. The constant-TRUE case lives at the DNF level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(BTreeSet<Variable>);

impl Term {
    /// Builds a term from its variables. Panics on an empty variable set.
    pub fn new(vars: impl IntoIterator<Item = Variable>) -> Term {
        let set: BTreeSet<Variable> = vars.into_iter().collect();
        assert!(!set.is_empty(), "a term must contain at least one variable");
        Term(set)
    }

    pub fn vars(&self) -> &BTreeSet<Variable> {
        &self.0
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.0.contains(&v)
    }

    // No is_empty counterpart: terms are non-empty by construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Subset test on variable sets.
    pub fn is_subset_of(&self, other: &Term) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: Vec<_> = self.0.iter().map(|v| v.name()).collect();
        names.sort();
        write!(f, "{}", names.join(" "))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A positive DNF: the constant TRUE or a non-empty set of terms.
///
/// Invariants: no duplicate terms (set semantics), no negations, no
/// constant 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PositiveDnf {
    True,
    Terms(BTreeSet<Term>),
}

impl PositiveDnf {
    /// Builds a DNF from terms, merging duplicates. Panics on an empty term
    /// collection (that would be the unrepresentable constant 0).
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> PositiveDnf {
        let set: BTreeSet<Term> = terms.into_iter().collect();
        assert!(!set.is_empty(), "a positive DNF must contain at least one term");
        PositiveDnf::Terms(set)
    }

    /// Convenience constructor from name lists; interns every name.
    pub fn from_names<'a>(terms: impl IntoIterator<Item = &'a [&'a str]>) -> PositiveDnf {
        PositiveDnf::from_terms(
            terms
                .into_iter()
                .map(|names| Term::new(names.iter().map(|n| Variable::intern(n)))),
        )
    }

    pub fn is_true(&self) -> bool {
        matches!(self, PositiveDnf::True)
    }

    /// Iterates the terms; empty for TRUE.
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        match self {
            PositiveDnf::True => None,
            PositiveDnf::Terms(ts) => Some(ts.iter()),
        }
        .into_iter()
        .flatten()
    }

    pub fn term_count(&self) -> usize {
        match self {
            PositiveDnf::True => 0,
            PositiveDnf::Terms(ts) => ts.len(),
        }
    }

    /// The set of variables occurring in the formula; empty for TRUE.
    pub fn vars(&self) -> BTreeSet<Variable> {
        self.terms().flat_map(|t| t.vars().iter().copied()).collect()
    }

    /// Drops every term that contains another term of the DNF as a subset.
    /// The result is logically equivalent and consists exactly of the
    /// minimal terms, which for a positive DNF is the unique irredundant
    /// form.
    pub fn remove_redundant_terms(&self) -> PositiveDnf {
        match self {
            PositiveDnf::True => PositiveDnf::True,
            PositiveDnf::Terms(ts) => {
                let minimal: BTreeSet<Term> = ts
                    .iter()
                    .filter(|t| {
                        !ts.iter().any(|other| *other != **t && other.is_subset_of(t))
                    })
                    .cloned()
                    .collect();
                PositiveDnf::Terms(minimal)
            }
        }
    }

    /// Substitution with a partial assignment.
    ///
    /// The result is TRUE when some term has every literal in the
    /// assignment; otherwise terms with an assigned-false (or otherwise
    /// non-covered) variable are dropped and assigned variables are deleted
    /// from the survivors. Variables that do not occur in the formula are
    /// ignored. Fails with [`Error::UndefinedSubstitution`] when no term
    /// survives.
    pub fn substitute(&self, assignment: &Assignment) -> Result<PositiveDnf, Error> {
        let ts = match self {
            PositiveDnf::True => return Ok(PositiveDnf::True),
            PositiveDnf::Terms(ts) => ts,
        };
        let mut out: BTreeSet<Term> = BTreeSet::new();
        let mut survivor = false;
        for term in ts {
            let mut fully_assigned = true;
            let mut falsified = false;
            for v in term.vars() {
                match assignment.get(v) {
                    Some(true) => {}
                    Some(false) => {
                        falsified = true;
                        break;
                    }
                    None => fully_assigned = false,
                }
            }
            if falsified {
                continue;
            }
            survivor = true;
            if fully_assigned {
                return Ok(PositiveDnf::True);
            }
            out.insert(Term::new(
                term.vars()
                    .iter()
                    .copied()
                    .filter(|v| !assignment.contains_key(v)),
            ));
        }
        if survivor {
            Ok(PositiveDnf::Terms(out))
        } else {
            Err(Error::UndefinedSubstitution)
        }
    }

    /// The cofactor of the DNF for `delta`-variables: those in `positive`
    /// are set true, the rest of `delta` false. Keeps exactly the terms
    /// whose delta-part is inside `positive` and strips it; TRUE if a kept
    /// term consisted of delta variables only.
    pub fn cofactor(
        &self,
        delta: &BTreeSet<Variable>,
        positive: &BTreeSet<Variable>,
    ) -> Result<PositiveDnf, Error> {
        debug_assert!(positive.is_subset(delta));
        let ts = match self {
            PositiveDnf::True => return Ok(PositiveDnf::True),
            PositiveDnf::Terms(ts) => ts,
        };
        let mut out: BTreeSet<Term> = BTreeSet::new();
        for term in ts {
            if !term.vars().iter().all(|v| !delta.contains(v) || positive.contains(v)) {
                continue;
            }
            let rest: Vec<Variable> = term
                .vars()
                .iter()
                .copied()
                .filter(|v| !delta.contains(v))
                .collect();
            if rest.is_empty() {
                return Ok(PositiveDnf::True);
            }
            out.insert(Term::new(rest));
        }
        if out.is_empty() {
            Err(Error::UndefinedSubstitution)
        } else {
            Ok(PositiveDnf::Terms(out))
        }
    }

    /// Projection onto a variable set: the strongest consequence over those
    /// variables. TRUE when some term has no variable in the set; otherwise
    /// every term is intersected with it. The projection may contain
    /// redundant terms; it is not cleaned up here.
    pub fn project(&self, onto: &BTreeSet<Variable>) -> PositiveDnf {
        let ts = match self {
            PositiveDnf::True => return PositiveDnf::True,
            PositiveDnf::Terms(ts) => ts,
        };
        let mut out: BTreeSet<Term> = BTreeSet::new();
        for term in ts {
            let kept: Vec<Variable> = term
                .vars()
                .iter()
                .copied()
                .filter(|v| onto.contains(v))
                .collect();
            if kept.is_empty() {
                return PositiveDnf::True;
            }
            out.insert(Term::new(kept));
        }
        PositiveDnf::Terms(out)
    }

    /// Canonical form: the unique minimal-term set, deterministically
    /// ordered. Idempotent.
    pub fn canonicalize(&self) -> PositiveDnf {
        self.remove_redundant_terms()
    }

    /// Logical equivalence, decided syntactically on canonical forms. For
    /// positive DNFs the minimal-term set is unique, so this coincides with
    /// truth-table equivalence.
    pub fn equivalent(&self, other: &PositiveDnf) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Conjunction of DNFs by cartesian expansion of their term sets.
    /// TRUE factors are neutral; an empty list yields TRUE. The result is
    /// not canonicalized.
    pub fn conjoin<'a>(parts: impl IntoIterator<Item = &'a PositiveDnf>) -> PositiveDnf {
        let mut acc: Option<BTreeSet<Term>> = None;
        for part in parts {
            let ts = match part {
                PositiveDnf::True => continue,
                PositiveDnf::Terms(ts) => ts,
            };
            acc = Some(match acc {
                None => ts.clone(),
                Some(prev) => {
                    let mut next = BTreeSet::new();
                    for a in &prev {
                        for b in ts {
                            next.insert(Term::new(
                                a.vars().iter().chain(b.vars().iter()).copied(),
                            ));
                        }
                    }
                    next
                }
            });
        }
        match acc {
            None => PositiveDnf::True,
            Some(ts) => PositiveDnf::Terms(ts),
        }
    }
}

impl fmt::Display for PositiveDnf {
    /// Renders in the textual DNF format: variables within a term sorted by
    /// name and joined by spaces, terms sorted by their name sequences and
    /// joined by " | ". TRUE renders as "1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositiveDnf::True => write!(f, "1"),
            PositiveDnf::Terms(ts) => {
                let mut rendered: Vec<Vec<std::sync::Arc<str>>> = ts
                    .iter()
                    .map(|t| {
                        let mut names: Vec<_> = t.vars().iter().map(|v| v.name()).collect();
                        names.sort();
                        names
                    })
                    .collect();
                rendered.sort();
                let parts: Vec<String> = rendered.iter().map(|names| names.join(" ")).collect();
                write!(f, "{}", parts.join(" | "))
            }
        }
    }
}

impl fmt::Debug for PositiveDnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Variable {
        Variable::intern(n)
    }

    fn dnf(terms: &[&[&str]]) -> PositiveDnf {
        PositiveDnf::from_names(terms.iter().copied())
    }

    /// The 4-term shared-variable example used throughout the suite:
    /// x a d1 | x b d1 d2 | y a d1 d2 | y b d2.
    pub(crate) fn shared_pair_dnf() -> PositiveDnf {
        dnf(&[
            &["x", "a", "d1"],
            &["x", "b", "d1", "d2"],
            &["y", "a", "d1", "d2"],
            &["y", "b", "d2"],
        ])
    }

    #[test]
    fn vars_of_products() {
        let phi = dnf(&[&["x", "a"], &["x", "b"], &["y", "a"], &["y", "b"]]);
        let expected: BTreeSet<_> = ["x", "y", "a", "b"].iter().map(|n| v(n)).collect();
        assert_eq!(phi.vars(), expected);
    }

    #[test]
    fn vars_of_constant_and_literal() {
        assert!(PositiveDnf::True.vars().is_empty());
        assert_eq!(dnf(&[&["x"]]).vars(), [v("x")].into_iter().collect());
    }

    #[test]
    fn redundant_superset_is_dropped() {
        let phi = dnf(&[&["x", "y"], &["x"]]);
        assert_eq!(phi.remove_redundant_terms(), dnf(&[&["x"]]));
    }

    #[test]
    fn incomparable_terms_are_kept() {
        let phi = dnf(&[&["x", "a"], &["x", "b"], &["y", "a"], &["y", "b"]]);
        assert_eq!(phi.remove_redundant_terms(), phi);
    }

    #[test]
    fn redundant_removal_on_projection_of_shared_pair() {
        // Projection of the shared-pair example onto {x, y, d1, d2},
        // cleaned by a pairwise subset scan done by hand.
        let phi = dnf(&[
            &["x", "d1"],
            &["x", "d1", "d2"],
            &["y", "d1", "d2"],
            &["y", "d2"],
        ]);
        assert_eq!(
            phi.remove_redundant_terms(),
            dnf(&[&["x", "d1"], &["y", "d2"]])
        );
    }

    #[test]
    fn substitute_shared_pair() {
        let phi = shared_pair_dnf();
        let assignment: Assignment = [(v("d1"), true), (v("d2"), false)].into_iter().collect();
        assert_eq!(phi.substitute(&assignment).unwrap(), dnf(&[&["x", "a"]]));
    }

    #[test]
    fn substitute_empty_assignment_is_identity() {
        let phi = shared_pair_dnf();
        assert_eq!(phi.substitute(&Assignment::new()).unwrap(), phi);
    }

    #[test]
    fn substitute_satisfying_term_gives_true() {
        let phi = dnf(&[&["x"], &["y"]]);
        let assignment: Assignment = [(v("x"), true)].into_iter().collect();
        assert_eq!(phi.substitute(&assignment).unwrap(), PositiveDnf::True);
    }

    #[test]
    fn substitute_undefined_when_all_terms_die() {
        let phi = dnf(&[&["x"], &["y"]]);
        let assignment: Assignment =
            [(v("x"), false), (v("y"), false)].into_iter().collect();
        assert_eq!(phi.substitute(&assignment), Err(Error::UndefinedSubstitution));
    }

    #[test]
    fn cofactor_full_delta_keeps_everything() {
        let phi = shared_pair_dnf();
        let delta: BTreeSet<_> = [v("d1"), v("d2")].into_iter().collect();
        assert_eq!(
            phi.cofactor(&delta, &delta).unwrap(),
            dnf(&[&["x", "a"], &["x", "b"], &["y", "a"], &["y", "b"]])
        );
    }

    #[test]
    fn cofactor_single_delta_variable() {
        let phi = shared_pair_dnf();
        let delta: BTreeSet<_> = [v("d1"), v("d2")].into_iter().collect();
        let pos: BTreeSet<_> = [v("d1")].into_iter().collect();
        assert_eq!(phi.cofactor(&delta, &pos).unwrap(), dnf(&[&["x", "a"]]));
    }

    #[test]
    fn cofactor_empty_delta_is_identity() {
        let phi = shared_pair_dnf();
        let empty = BTreeSet::new();
        assert_eq!(phi.cofactor(&empty, &empty).unwrap(), phi);
    }

    #[test]
    fn project_shared_pair_keeps_redundant_terms() {
        let phi = shared_pair_dnf();
        let onto: BTreeSet<_> = ["x", "y", "d1", "d2"].iter().map(|n| v(n)).collect();
        assert_eq!(
            phi.project(&onto),
            dnf(&[
                &["x", "d1"],
                &["x", "d1", "d2"],
                &["y", "d1", "d2"],
                &["y", "d2"],
            ])
        );
    }

    #[test]
    fn project_onto_own_vars_is_identity() {
        let phi = shared_pair_dnf();
        assert_eq!(phi.project(&phi.vars()), phi);
    }

    #[test]
    fn project_missing_term_gives_true() {
        let phi = dnf(&[&["x"], &["y"]]);
        let onto: BTreeSet<_> = [v("x")].into_iter().collect();
        assert_eq!(phi.project(&onto), PositiveDnf::True);
    }

    #[test]
    fn canonicalize_merges_and_minimizes() {
        let phi = dnf(&[&["x", "y"], &["x"], &["x"]]);
        assert_eq!(phi.canonicalize(), dnf(&[&["x"]]));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let phi = shared_pair_dnf();
        assert_eq!(phi.canonicalize().canonicalize(), phi.canonicalize());
    }

    #[test]
    fn canonicalize_of_expansion_matches_product() {
        let left = dnf(&[&["x", "a"], &["x", "b"], &["y", "a"], &["y", "b"]]);
        let factors = [dnf(&[&["x"], &["y"]]), dnf(&[&["a"], &["b"]])];
        let expanded = PositiveDnf::conjoin(factors.iter());
        assert_eq!(expanded.canonicalize(), left.canonicalize());
    }

    #[test]
    fn equivalence_by_absorption() {
        assert!(dnf(&[&["x", "y"], &["x"]]).equivalent(&dnf(&[&["x"]])));
        assert!(!dnf(&[&["x"]]).equivalent(&dnf(&[&["y"]])));
    }

    #[test]
    fn true_is_only_equivalent_to_true() {
        assert!(PositiveDnf::True.equivalent(&PositiveDnf::True));
        assert!(!PositiveDnf::True.equivalent(&dnf(&[&["x"]])));
    }

    #[test]
    fn conjoin_of_nothing_is_true() {
        assert_eq!(PositiveDnf::conjoin([]), PositiveDnf::True);
        assert_eq!(
            PositiveDnf::conjoin([&PositiveDnf::True, &PositiveDnf::True]),
            PositiveDnf::True
        );
    }

    #[test]
    fn display_is_name_sorted() {
        let phi = dnf(&[&["y", "b"], &["x", "a"]]);
        assert_eq!(phi.to_string(), "a x | b y");
        assert_eq!(PositiveDnf::True.to_string(), "1");
    }
}
