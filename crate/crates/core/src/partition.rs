//! Variable partitions: families of disjoint non-empty classes covering a
//! declared universe.

use std::collections::BTreeSet;
use std::fmt;

use crate::variable::Variable;

/// A partition of a variable universe into disjoint non-empty classes.
///
/// Equality is set-based: two partitions are equal iff they have the same
/// universe and the same family of classes.
#[derive(Clone, PartialEq, Eq)]
pub struct VarPartition {
    universe: BTreeSet<Variable>,
    classes: BTreeSet<BTreeSet<Variable>>,
}

impl VarPartition {
    /// Builds a partition, asserting disjointness and exact coverage of the
    /// universe. Violations are programming errors, not runtime conditions.
    pub fn new(
        universe: BTreeSet<Variable>,
        classes: impl IntoIterator<Item = BTreeSet<Variable>>,
    ) -> VarPartition {
        let classes: BTreeSet<BTreeSet<Variable>> = classes.into_iter().collect();
        let mut seen: BTreeSet<Variable> = BTreeSet::new();
        let mut total = 0usize;
        for class in &classes {
            assert!(!class.is_empty(), "partition classes must be non-empty");
            total += class.len();
            seen.extend(class.iter().copied());
        }
        assert_eq!(total, seen.len(), "partition classes must be disjoint");
        assert_eq!(seen, universe, "partition classes must cover the universe");
        VarPartition { universe, classes }
    }

    /// The all-singletons partition of `universe`.
    pub fn singletons(universe: BTreeSet<Variable>) -> VarPartition {
        let classes: Vec<BTreeSet<Variable>> = universe
            .iter()
            .map(|v| BTreeSet::from([*v]))
            .collect();
        VarPartition::new(universe, classes)
    }

    /// The one-class partition of `universe`; no classes when the universe
    /// is empty.
    pub fn single_class(universe: BTreeSet<Variable>) -> VarPartition {
        if universe.is_empty() {
            VarPartition::new(universe, [])
        } else {
            let class = universe.clone();
            VarPartition::new(universe, [class])
        }
    }

    pub fn universe(&self) -> &BTreeSet<Variable> {
        &self.universe
    }

    pub fn classes(&self) -> impl Iterator<Item = &BTreeSet<Variable>> {
        self.classes.iter()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// The class containing `v`, if `v` is in the universe.
    pub fn class_of(&self, v: Variable) -> Option<&BTreeSet<Variable>> {
        self.classes.iter().find(|c| c.contains(&v))
    }

    /// True when `a` and `b` lie in different classes.
    pub fn separates(&self, a: Variable, b: Variable) -> bool {
        match (self.class_of(a), self.class_of(b)) {
            (Some(ca), Some(cb)) => ca != cb,
            _ => false,
        }
    }
}

impl fmt::Debug for VarPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rendered: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let mut names: Vec<_> = c.iter().map(|v| v.name().to_string()).collect();
                names.sort();
                format!("{{{}}}", names.join(" "))
            })
            .collect();
        rendered.sort();
        write!(f, "{}", rendered.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> BTreeSet<Variable> {
        names.iter().map(|n| Variable::intern(n)).collect()
    }

    #[test]
    fn construction_and_accessors() {
        let p = VarPartition::new(vars(&["x", "y", "a", "b"]), [vars(&["x", "y"]), vars(&["a", "b"])]);
        assert_eq!(p.num_classes(), 2);
        assert!(p.separates(Variable::intern("x"), Variable::intern("a")));
        assert!(!p.separates(Variable::intern("x"), Variable::intern("y")));
    }

    #[test]
    fn equality_ignores_class_order() {
        let p1 = VarPartition::new(vars(&["x", "a"]), [vars(&["x"]), vars(&["a"])]);
        let p2 = VarPartition::new(vars(&["x", "a"]), [vars(&["a"]), vars(&["x"])]);
        assert_eq!(p1, p2);
    }

    #[test]
    #[should_panic(expected = "cover the universe")]
    fn missing_variable_is_rejected() {
        VarPartition::new(vars(&["x", "y"]), [vars(&["x"])]);
    }

    #[test]
    #[should_panic(expected = "disjoint")]
    fn overlapping_classes_are_rejected() {
        VarPartition::new(vars(&["x", "y"]), [vars(&["x", "y"]), vars(&["y"])]);
    }

    #[test]
    fn empty_universe_single_class_has_no_classes() {
        let p = VarPartition::single_class(BTreeSet::new());
        assert_eq!(p.num_classes(), 0);
    }
}
