//! Brute-force semantic ground truth for small instances.
//!
//! Satisfying-assignment sets are stored as sorted bitmask vectors over an
//! explicit variable universe. Everything here is exponential by design and
//! guarded by hard variable limits; the oracle never truncates or
//! approximates.

use std::collections::{BTreeMap, BTreeSet};

use crate::dnf::{Assignment, PositiveDnf};
use crate::error::Error;
use crate::partition::VarPartition;
use crate::variable::Variable;

/// Hard cap on enumerated variables.
pub const MAX_ORACLE_VARS: usize = 24;

/// Default cap used by callers that cross-check the main path.
pub const DEFAULT_ORACLE_LIMIT: usize = 12;

/// A set of total assignments over a fixed variable universe.
///
/// Bit `i` of a mask is the value of the `i`-th universe variable (universe
/// sorted ascending). Masks are sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssignmentSet {
    universe: Vec<Variable>,
    masks: Vec<u32>,
}

impl AssignmentSet {
    fn new(universe: Vec<Variable>, mut masks: Vec<u32>) -> AssignmentSet {
        masks.sort_unstable();
        masks.dedup();
        AssignmentSet { universe, masks }
    }

    pub fn universe(&self) -> &[Variable] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Decodes the stored masks into assignment maps.
    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        self.masks.iter().map(move |&mask| {
            self.universe
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, mask & (1 << i) != 0))
                .collect()
        })
    }

    pub fn contains(&self, assignment: &Assignment) -> bool {
        let mut mask = 0u32;
        for (i, v) in self.universe.iter().enumerate() {
            match assignment.get(v) {
                Some(true) => mask |= 1 << i,
                Some(false) => {}
                None => return false,
            }
        }
        self.masks.binary_search(&mask).is_ok()
    }

    /// The set of restrictions of the members onto `vars` (a subset of the
    /// universe). Distinct members with equal restrictions collapse.
    pub fn project_onto(&self, vars: &BTreeSet<Variable>) -> AssignmentSet {
        let positions: Vec<usize> = self
            .universe
            .iter()
            .enumerate()
            .filter(|(_, v)| vars.contains(v))
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(positions.len(), vars.len(), "projection outside universe");
        let sub_universe: Vec<Variable> = positions.iter().map(|&i| self.universe[i]).collect();
        let masks = self
            .masks
            .iter()
            .map(|&mask| extract_bits(mask, &positions))
            .collect();
        AssignmentSet::new(sub_universe, masks)
    }
}

fn extract_bits(mask: u32, positions: &[usize]) -> u32 {
    let mut out = 0u32;
    for (j, &i) in positions.iter().enumerate() {
        if mask & (1 << i) != 0 {
            out |= 1 << j;
        }
    }
    out
}

/// All total assignments over `universe` that satisfy the DNF: some term
/// has every variable true. Requires `vars(phi) ⊆ universe` and at most
/// [`MAX_ORACLE_VARS`] variables.
pub fn satisfying_assignments(
    phi: &PositiveDnf,
    universe: &BTreeSet<Variable>,
) -> Result<AssignmentSet, Error> {
    if universe.len() > MAX_ORACLE_VARS {
        return Err(Error::TooManyVariables {
            actual: universe.len(),
            limit: MAX_ORACLE_VARS,
        });
    }
    assert!(
        phi.vars().is_subset(universe),
        "universe must cover the formula variables"
    );
    let vars: Vec<Variable> = universe.iter().copied().collect();
    let position: BTreeMap<Variable, usize> =
        vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let term_masks: Vec<u32> = phi
        .terms()
        .map(|t| {
            t.vars()
                .iter()
                .fold(0u32, |acc, v| acc | 1 << position[v])
        })
        .collect();
    let total = 1u64 << vars.len();
    let mut masks = Vec::new();
    for mask in 0..total {
        let mask = mask as u32;
        let satisfied = match phi {
            PositiveDnf::True => true,
            _ => term_masks.iter().any(|&t| t & !mask == 0),
        };
        if satisfied {
            masks.push(mask);
        }
    }
    Ok(AssignmentSet::new(vars, masks))
}

/// Splits an assignment set by its restriction to `delta`: returns the set
/// of delta-restrictions together with, for each of them, the set of
/// complementary restrictions of the matching members.
pub fn restrict_project(
    set: &AssignmentSet,
    delta: &BTreeSet<Variable>,
) -> (AssignmentSet, Vec<(Assignment, AssignmentSet)>) {
    let delta_positions: Vec<usize> = set
        .universe
        .iter()
        .enumerate()
        .filter(|(_, v)| delta.contains(v))
        .map(|(i, _)| i)
        .collect();
    debug_assert_eq!(delta_positions.len(), delta.len(), "delta outside universe");
    let rest_positions: Vec<usize> = (0..set.universe.len())
        .filter(|i| !delta_positions.contains(i))
        .collect();
    let delta_universe: Vec<Variable> =
        delta_positions.iter().map(|&i| set.universe[i]).collect();
    let rest_universe: Vec<Variable> =
        rest_positions.iter().map(|&i| set.universe[i]).collect();

    let mut grouped: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &mask in &set.masks {
        grouped
            .entry(extract_bits(mask, &delta_positions))
            .or_default()
            .push(extract_bits(mask, &rest_positions));
    }
    let restriction = AssignmentSet::new(delta_universe.clone(), grouped.keys().copied().collect());
    let groups = grouped
        .into_iter()
        .map(|(dmask, rest_masks)| {
            let assignment: Assignment = delta_universe
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, dmask & (1 << i) != 0))
                .collect();
            (assignment, AssignmentSet::new(rest_universe.clone(), rest_masks))
        })
        .collect();
    (restriction, groups)
}

/// Cartesian combination of assignment sets over pairwise-disjoint
/// universes: every union of one member from each.
pub fn join(sets: &[AssignmentSet]) -> Result<AssignmentSet, Error> {
    let mut universe: BTreeSet<Variable> = BTreeSet::new();
    for set in sets {
        for v in &set.universe {
            if !universe.insert(*v) {
                return Err(Error::OverlappingUniverses(v.name().to_string()));
            }
        }
    }
    let merged: Vec<Variable> = universe.iter().copied().collect();
    let position: BTreeMap<Variable, usize> =
        merged.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut masks: Vec<u32> = vec![0];
    for set in sets {
        let mapped: Vec<usize> = set.universe.iter().map(|v| position[v]).collect();
        let mut next = Vec::with_capacity(masks.len() * set.masks.len());
        for &prefix in &masks {
            for &mask in &set.masks {
                let mut combined = prefix;
                for (j, &target) in mapped.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        combined |= 1 << target;
                    }
                }
                next.push(combined);
            }
        }
        masks = next;
    }
    Ok(AssignmentSet::new(merged, masks))
}

/// Decides whether the DNF is delta-decomposable with the given partition
/// of its non-delta variables: for every delta-restriction of the
/// satisfying set, the residual assignments must be exactly the join of
/// their projections onto the classes. A single-class partition is not a
/// decomposition and yields false.
pub fn check_partition(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
    partition: &VarPartition,
) -> Result<bool, Error> {
    let vars = phi.vars();
    if vars.len() > MAX_ORACLE_VARS {
        return Err(Error::TooManyVariables {
            actual: vars.len(),
            limit: MAX_ORACLE_VARS,
        });
    }
    let non_delta: BTreeSet<Variable> = vars.difference(delta).copied().collect();
    assert_eq!(
        partition.universe(),
        &non_delta,
        "partition universe must be the non-delta variables"
    );
    if partition.num_classes() < 2 {
        return Ok(false);
    }
    let all = satisfying_assignments(phi, &vars)?;
    let (_, groups) = restrict_project(&all, delta);
    Ok(groups_split(&groups, partition))
}

fn groups_split(groups: &[(Assignment, AssignmentSet)], partition: &VarPartition) -> bool {
    for (_, residual) in groups {
        let projections: Vec<AssignmentSet> = partition
            .classes()
            .map(|class| residual.project_onto(class))
            .collect();
        // The residual set always embeds into the join of its projections,
        // so cardinality equality decides; the join is materialized and
        // compared anyway.
        let product: usize = projections.iter().map(AssignmentSet::len).product();
        if product != residual.len() {
            return false;
        }
        let joined = join(&projections).expect("classes are disjoint");
        if joined != *residual {
            return false;
        }
    }
    true
}

/// The projection-based counterpart of [`check_partition`]: the conjunction
/// of the projections of the DNF onto class-plus-delta variable sets must
/// be equivalent to the DNF. The two routes agree on every instance.
pub fn check_partition_via_projections(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
    partition: &VarPartition,
) -> bool {
    if partition.num_classes() < 2 {
        return false;
    }
    let components: Vec<PositiveDnf> = partition
        .classes()
        .map(|class| {
            let scope: BTreeSet<Variable> = class.union(delta).copied().collect();
            phi.project(&scope)
        })
        .collect();
    PositiveDnf::conjoin(components.iter()).equivalent(phi)
}

/// Exhaustively computes the finest delta-decomposition partition of the
/// non-delta variables: every two-class split is validated semantically,
/// and variables end up in the same class iff no valid split separates
/// them. Limited to [`DEFAULT_ORACLE_LIMIT`] non-delta variables.
pub fn brute_finest_partition(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
) -> Result<VarPartition, Error> {
    brute_finest_partition_with_limit(phi, delta, DEFAULT_ORACLE_LIMIT)
}

/// [`brute_finest_partition`] with an explicit non-delta variable limit;
/// the limit is capped at [`MAX_ORACLE_VARS`].
pub fn brute_finest_partition_with_limit(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
    limit: usize,
) -> Result<VarPartition, Error> {
    let limit = limit.min(MAX_ORACLE_VARS);
    let vars = phi.vars();
    assert!(delta.is_subset(&vars), "delta must be formula variables");
    let non_delta: Vec<Variable> = vars.difference(delta).copied().collect();
    let n = non_delta.len();
    if n > limit {
        return Err(Error::TooManyVariables { actual: n, limit });
    }
    let universe: BTreeSet<Variable> = non_delta.iter().copied().collect();
    if n == 0 {
        return Ok(VarPartition::new(universe, []));
    }
    if n == 1 {
        return Ok(VarPartition::single_class(universe));
    }

    let all = satisfying_assignments(phi, &vars)?;
    let (_, groups) = restrict_project(&all, delta);

    // Enumerate unordered bipartitions once: subsets containing the first
    // variable, excluding the full set.
    let mut valid_splits: Vec<u32> = Vec::new();
    let total = 1u64 << (n - 1);
    for half in 0..total {
        let side = ((half as u32) << 1) | 1;
        if side == (1u32 << n) - 1 {
            continue;
        }
        let left: BTreeSet<Variable> = pick_vars(&non_delta, side);
        let right: BTreeSet<Variable> = pick_vars(&non_delta, !side & ((1 << n) - 1));
        let split = VarPartition::new(universe.clone(), [left, right]);
        if groups_split(&groups, &split) {
            valid_splits.push(side);
        }
    }

    // Common refinement: variables stay together iff never separated.
    let mut classes_builder = RefineBuilder::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let separated = valid_splits
                .iter()
                .any(|&side| (side >> i) & 1 != (side >> j) & 1);
            if !separated {
                classes_builder.union(i, j);
            }
        }
    }
    let classes = classes_builder.groups(&non_delta);
    let result = VarPartition::new(universe, classes);

    // Guard against the refinement construction ever producing an invalid
    // partition; the oracle must not return unverified answers.
    if result.num_classes() >= 2 {
        assert!(
            groups_split(&groups, &result),
            "refined oracle partition failed semantic validation"
        );
    }
    Ok(result)
}

fn pick_vars(vars: &[Variable], side: u32) -> BTreeSet<Variable> {
    vars.iter()
        .enumerate()
        .filter(|(i, _)| side & (1 << i) != 0)
        .map(|(_, &v)| v)
        .collect()
}

struct RefineBuilder {
    parent: Vec<usize>,
}

impl RefineBuilder {
    fn new(len: usize) -> RefineBuilder {
        RefineBuilder {
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

    fn groups(&mut self, vars: &[Variable]) -> Vec<BTreeSet<Variable>> {
        let mut out: BTreeMap<usize, BTreeSet<Variable>> = BTreeMap::new();
        for (i, &v) in vars.iter().enumerate() {
            out.entry(self.find(i)).or_default().insert(v);
        }
        out.into_values().collect()
    }
}
