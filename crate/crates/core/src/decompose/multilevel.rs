//! Multilevel AND/OR factoring of positive DNFs.
//!
//! The factoring alternates two splits: an OR-split into the connected
//! components of the term/variable-sharing graph, and an AND-split along
//! the finest disjoint decomposition. Blocks that neither split leaves
//! behind are emitted verbatim as irreducible DNF leaves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::dnf::PositiveDnf;
use crate::error::Error;
use crate::variable::Variable;

use super::empty_decompose;

/// Nested AND/OR formula with single-variable leaves. AND and OR nodes have
/// at least two children with pairwise-disjoint variable sets, and levels
/// alternate: no AND child of an AND node, no OR child of an OR node.
/// Sub-DNFs that admit no further split are kept as [`FactorTree::Block`]
/// leaves.
#[derive(Clone, PartialEq, Eq)]
pub enum FactorTree {
    Leaf(Variable),
    /// An irreducible multi-term block, kept as a verbatim DNF.
    Block(PositiveDnf),
    And(Vec<FactorTree>),
    Or(Vec<FactorTree>),
}

impl FactorTree {
    /// Operator nesting depth; leaves and blocks count zero.
    pub fn depth(&self) -> usize {
        match self {
            FactorTree::Leaf(_) | FactorTree::Block(_) => 0,
            FactorTree::And(children) | FactorTree::Or(children) => {
                1 + children.iter().map(FactorTree::depth).max().unwrap_or(0)
            }
        }
    }

    /// Total number of variable occurrences in the rendered formula.
    pub fn var_occurrences(&self) -> usize {
        match self {
            FactorTree::Leaf(_) => 1,
            FactorTree::Block(dnf) => dnf.terms().map(|t| t.len()).sum(),
            FactorTree::And(children) | FactorTree::Or(children) => {
                children.iter().map(FactorTree::var_occurrences).sum()
            }
        }
    }

    /// True when every variable occurs exactly once.
    pub fn is_read_once(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.collect_occurrences(&mut seen)
    }

    fn collect_occurrences(&self, seen: &mut BTreeSet<Variable>) -> bool {
        match self {
            FactorTree::Leaf(v) => seen.insert(*v),
            FactorTree::Block(dnf) => {
                let mut multiset: BTreeMap<Variable, usize> = BTreeMap::new();
                for t in dnf.terms() {
                    for v in t.vars() {
                        *multiset.entry(*v).or_default() += 1;
                    }
                }
                multiset
                    .into_iter()
                    .all(|(v, count)| count == 1 && seen.insert(v))
            }
            FactorTree::And(children) | FactorTree::Or(children) => {
                children.iter().all(|c| c.collect_occurrences(seen))
            }
        }
    }

    /// The DNF denoted by the tree: OR nodes merge term sets, AND nodes
    /// expand cartesian products.
    pub fn to_dnf(&self) -> PositiveDnf {
        match self {
            FactorTree::Leaf(v) => {
                PositiveDnf::from_terms([crate::dnf::Term::new([*v])])
            }
            FactorTree::Block(dnf) => dnf.clone(),
            FactorTree::Or(children) => {
                let parts: Vec<PositiveDnf> = children.iter().map(|c| c.to_dnf()).collect();
                if parts.iter().any(PositiveDnf::is_true) {
                    return PositiveDnf::True;
                }
                PositiveDnf::from_terms(parts.iter().flat_map(|p| p.terms().cloned()))
            }
            FactorTree::And(children) => {
                let parts: Vec<PositiveDnf> = children.iter().map(|c| c.to_dnf()).collect();
                PositiveDnf::conjoin(parts.iter())
            }
        }
    }

    /// Smallest variable name in the subtree; used to order children
    /// deterministically.
    fn min_name(&self) -> std::sync::Arc<str> {
        match self {
            FactorTree::Leaf(v) => v.name(),
            FactorTree::Block(dnf) => dnf
                .vars()
                .iter()
                .map(|v| v.name())
                .min()
                .expect("blocks are non-constant"),
            FactorTree::And(children) | FactorTree::Or(children) => children
                .iter()
                .map(FactorTree::min_name)
                .min()
                .expect("operator nodes have children"),
        }
    }
}

impl fmt::Display for FactorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorTree::Leaf(v) => write!(f, "{}", v.name()),
            FactorTree::Block(dnf) => write!(f, "({})", dnf),
            FactorTree::Or(children) => {
                let parts: Vec<String> = children.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join(" | "))
            }
            FactorTree::And(children) => {
                let parts: Vec<String> = children
                    .iter()
                    .map(|c| match c {
                        FactorTree::Leaf(v) => v.name().to_string(),
                        other => format!("({})", other),
                    })
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

impl fmt::Debug for FactorTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Factors a positive DNF into an alternating AND/OR tree whose denotation
/// is equivalent to the input. Inessential variables disappear from the
/// output.
pub fn multilevel_factor(phi: &PositiveDnf) -> Result<FactorTree, Error> {
    if phi.is_true() {
        return Err(Error::ConstantInput);
    }
    Ok(factor(phi.canonicalize()))
}

/// `phi` is canonical (minimal term set) and not TRUE.
fn factor(phi: PositiveDnf) -> FactorTree {
    // A single term is a plain conjunction.
    if phi.term_count() == 1 {
        let term = phi.terms().next().expect("non-constant").clone();
        if term.len() == 1 {
            return FactorTree::Leaf(*term.vars().iter().next().expect("non-empty term"));
        }
        let children: Vec<FactorTree> =
            term.vars().iter().map(|v| FactorTree::Leaf(*v)).collect();
        return and_node(children);
    }

    // OR-split: connected components of the variable-sharing graph.
    let groups = or_split(&phi);
    if groups.len() >= 2 {
        return or_node(groups.into_iter().map(factor).collect());
    }

    // AND-split along the finest disjoint decomposition. Classes whose
    // projection is TRUE carry only inessential variables and are dropped.
    let partition = empty_decompose(&phi).expect("input is not TRUE");
    if partition.num_classes() >= 2 {
        let mut parts: Vec<PositiveDnf> = Vec::new();
        for class in partition.classes() {
            let component = phi.project(class).canonicalize();
            if !component.is_true() {
                parts.push(component);
            }
        }
        match parts.len() {
            0 => unreachable!("a non-constant DNF has a non-constant component"),
            1 => {
                let part = parts.pop().expect("single component");
                if part == phi {
                    return FactorTree::Block(phi);
                }
                return factor(part);
            }
            _ => return and_node(parts.into_iter().map(factor).collect()),
        }
    }

    FactorTree::Block(phi)
}

/// Groups the terms of a canonical non-constant DNF into the connected
/// components of the graph that links terms sharing a variable. Returns the
/// sub-DNFs in a deterministic order.
fn or_split(phi: &PositiveDnf) -> Vec<PositiveDnf> {
    let terms: Vec<_> = phi.terms().cloned().collect();
    let mut owner: BTreeMap<Variable, usize> = BTreeMap::new();
    let mut uf = TermUnionFind::new(terms.len());
    for (i, term) in terms.iter().enumerate() {
        for v in term.vars() {
            match owner.get(v) {
                Some(&j) => uf.union(i, j),
                None => {
                    owner.insert(*v, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<crate::dnf::Term>> = BTreeMap::new();
    for (i, term) in terms.into_iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(term);
    }
    groups
        .into_values()
        .map(PositiveDnf::from_terms)
        .collect()
}

fn and_node(mut children: Vec<FactorTree>) -> FactorTree {
    debug_assert!(children.len() >= 2);
    debug_assert!(children.iter().all(|c| !matches!(c, FactorTree::And(_))));
    children.sort_by_key(FactorTree::min_name);
    FactorTree::And(children)
}

fn or_node(mut children: Vec<FactorTree>) -> FactorTree {
    debug_assert!(children.len() >= 2);
    debug_assert!(children.iter().all(|c| !matches!(c, FactorTree::Or(_))));
    children.sort_by_key(FactorTree::min_name);
    FactorTree::Or(children)
}

struct TermUnionFind {
    parent: Vec<usize>,
}

impl TermUnionFind {
    fn new(len: usize) -> TermUnionFind {
        TermUnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            cur = std::mem::replace(&mut self.parent[cur], root);
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let a = self.find(x);
        let b = self.find(y);
        if a != b {
            self.parent[a] = b;
        }
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

    #[test]
    fn single_variable_is_a_leaf() {
        let tree = multilevel_factor(&dnf(&[&["x"]])).unwrap();
        assert_eq!(tree, FactorTree::Leaf(v("x")));
    }

    #[test]
    fn product_becomes_and_of_ors() {
        let phi = dnf(&[&["x", "a"], &["x", "b"], &["y", "a"], &["y", "b"]]);
        let tree = multilevel_factor(&phi).unwrap();
        let expected = FactorTree::And(vec![
            FactorTree::Or(vec![FactorTree::Leaf(v("a")), FactorTree::Leaf(v("b"))]),
            FactorTree::Or(vec![FactorTree::Leaf(v("x")), FactorTree::Leaf(v("y"))]),
        ]);
        assert_eq!(tree, expected);
        assert!(tree.to_dnf().equivalent(&phi));
        assert!(tree.is_read_once());
        assert_eq!(tree.depth(), 2);
    }

    #[test]
    fn single_term_is_and_of_leaves() {
        let tree = multilevel_factor(&dnf(&[&["x", "y"]])).unwrap();
        assert_eq!(
            tree,
            FactorTree::And(vec![FactorTree::Leaf(v("x")), FactorTree::Leaf(v("y"))])
        );
    }

    #[test]
    fn disjoint_terms_or_split() {
        let phi = dnf(&[&["x", "y"], &["z", "w"]]);
        let tree = multilevel_factor(&phi).unwrap();
        match &tree {
            FactorTree::Or(children) => {
                assert_eq!(children.len(), 2);
                assert!(children.iter().all(|c| matches!(c, FactorTree::And(_))));
            }
            other => panic!("expected an OR node, got {other}"),
        }
        assert!(tree.to_dnf().equivalent(&phi));
    }

    #[test]
    fn majority_is_an_irreducible_block() {
        let phi = dnf(&[&["x", "y"], &["y", "z"], &["x", "z"]]);
        let tree = multilevel_factor(&phi).unwrap();
        assert_eq!(tree, FactorTree::Block(phi.clone()));
        assert!(tree.to_dnf().equivalent(&phi));
        assert!(!tree.is_read_once());
    }

    #[test]
    fn inessential_variables_vanish() {
        let phi = dnf(&[&["x", "y"], &["x"]]);
        let tree = multilevel_factor(&phi).unwrap();
        assert_eq!(tree, FactorTree::Leaf(v("x")));
        assert!(tree.to_dnf().equivalent(&phi));
    }

    #[test]
    fn alternation_holds_on_nested_example() {
        // a b | a c | d e: OR-connected through a, AND-splits into
        // a (b | c) at one branch.
        let phi = dnf(&[&["a", "b"], &["a", "c"], &["d", "e"]]);
        let tree = multilevel_factor(&phi).unwrap();
        assert!(tree.to_dnf().equivalent(&phi));
        assert!(tree.is_read_once());
        assert_eq!(tree.depth(), 3);
        assert_eq!(tree.to_string(), "a (b | c) | d e");
    }

    #[test]
    fn constant_input_is_rejected() {
        assert_eq!(multilevel_factor(&PositiveDnf::True), Err(Error::ConstantInput));
    }
}
