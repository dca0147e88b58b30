//! Conjunctive decomposition of positive DNFs: disjoint (empty-delta)
//! decomposition via polynomial factorization, delta-decomposition via
//! cofactor families and partition alignment, and multilevel AND/OR
//! factoring.

mod multilevel;

pub use multilevel::{multilevel_factor, FactorTree};

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::dnf::PositiveDnf;
use crate::error::Error;
use crate::gf2::{find_partition_impl, Gf2Poly};
use crate::partition::VarPartition;
use crate::variable::Variable;

/// The set of delta-variables of one term; possibly empty.
pub type DeltaAtom = BTreeSet<Variable>;

/// Instance counters reported alongside a decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecomposeStats {
    /// Number of distinct delta-atoms.
    pub atoms: usize,
    /// Number of distinct atom-pair unions that passed the term guard and
    /// were decomposed.
    pub pairs_evaluated: usize,
}

/// Outcome of a delta-decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// The shared variable set the decomposition was computed for.
    pub delta: BTreeSet<Variable>,
    /// Finest partition of the non-delta variables. A single class means
    /// the input is not decomposable.
    pub partition: VarPartition,
    /// Canonical components, one per class whose projection is not the
    /// constant TRUE. When the input is not decomposable this holds the
    /// canonicalized input itself.
    pub components: Vec<PositiveDnf>,
    /// Variables of classes whose component projection collapsed to TRUE;
    /// the formula does not constrain them.
    pub inessential: BTreeSet<Variable>,
    /// True iff the partition has at least two classes.
    pub decomposable: bool,
    pub stats: DecomposeStats,
}

/// Finest variable partition of a positive DNF with no shared variables.
///
/// Redundant terms are removed first; the polynomial of the remaining DNF
/// is factored, and every variable dropped by the cleanup joins the
/// partition as a singleton class (the formula does not depend on it).
pub fn empty_decompose(phi: &PositiveDnf) -> Result<VarPartition, Error> {
    empty_decompose_impl(phi, None)
}

/// [`empty_decompose`] with a seeded random probe order in the polynomial
/// factorization; the result is identical for every seed.
pub fn empty_decompose_seeded(phi: &PositiveDnf, seed: u64) -> Result<VarPartition, Error> {
    let mut rng = StdRng::seed_from_u64(seed);
    empty_decompose_impl(phi, Some(&mut rng))
}

fn empty_decompose_impl(
    phi: &PositiveDnf,
    rng: Option<&mut StdRng>,
) -> Result<VarPartition, Error> {
    if phi.is_true() {
        return Err(Error::ConstantInput);
    }
    let cleaned = phi.remove_redundant_terms();
    let poly = Gf2Poly::from_dnf(&cleaned)?;
    let inner = find_partition_impl(&poly, rng);
    let mut classes: Vec<BTreeSet<Variable>> = inner.classes().cloned().collect();
    for dropped in phi.vars().difference(&cleaned.vars()) {
        classes.push(BTreeSet::from([*dropped]));
    }
    Ok(VarPartition::new(phi.vars(), classes))
}

/// The delta-atoms of a DNF: the delta-variable sets of the terms that
/// contain at least one non-delta variable.
pub fn delta_atoms(phi: &PositiveDnf, delta: &BTreeSet<Variable>) -> BTreeSet<DeltaAtom> {
    phi.terms()
        .filter(|t| t.vars().iter().any(|v| !delta.contains(v)))
        .map(|t| {
            t.vars()
                .iter()
                .copied()
                .filter(|v| delta.contains(v))
                .collect()
        })
        .collect()
}

/// Merges a family of partial partitions over `universe` into the finest
/// partition compatible with all of them: variables are grouped iff they
/// are connected through some class of some family member. Variables
/// mentioned by no class become singletons. The result is independent of
/// family order and of the order of variables within classes.
pub fn align_partitions(
    family: &[VarPartition],
    universe: &BTreeSet<Variable>,
) -> VarPartition {
    let index: BTreeMap<Variable, usize> = universe
        .iter()
        .copied()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let idx = |v: &Variable| -> usize {
        *index
            .get(v)
            .unwrap_or_else(|| panic!("family variable {v} outside the universe"))
    };
    let mut uf = UnionFind::new(universe.len());
    for partition in family {
        for class in partition.classes() {
            let mut members = class.iter();
            if let Some(first) = members.next() {
                let first = idx(first);
                for other in members {
                    uf.union(first, idx(other));
                }
            }
        }
    }
    let vars: Vec<Variable> = universe.iter().copied().collect();
    let mut groups: BTreeMap<usize, BTreeSet<Variable>> = BTreeMap::new();
    for (i, v) in vars.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().insert(*v);
    }
    VarPartition::new(universe.clone(), groups.into_values())
}

/// Computes the finest delta-decomposition of a positive DNF.
///
/// For every unordered pair of delta-atoms (equal atoms included) whose
/// union does not cover a whole term, the corresponding cofactor is
/// decomposed with no shared variables; the resulting partitions are
/// aligned over the non-delta variables, and the components are the
/// canonicalized projections onto class-plus-delta variable sets.
pub fn delta_decompose(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
) -> Result<DecompositionResult, Error> {
    delta_decompose_impl(phi, delta, None)
}

/// [`delta_decompose`] with seeded randomization of the pair enumeration
/// order, the partition-family order, and the factorization probe order.
/// The result is identical for every seed.
pub fn delta_decompose_seeded(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
    seed: u64,
) -> Result<DecompositionResult, Error> {
    let mut rng = StdRng::seed_from_u64(seed);
    delta_decompose_impl(phi, delta, Some(&mut rng))
}

fn delta_decompose_impl(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
    mut rng: Option<&mut StdRng>,
) -> Result<DecompositionResult, Error> {
    if phi.is_true() {
        return Err(Error::ConstantInput);
    }
    let vars = phi.vars();
    if !delta.is_subset(&vars) {
        let missing: Vec<String> = delta
            .difference(&vars)
            .map(|v| v.name().to_string())
            .collect();
        return Err(Error::InvalidDelta(missing));
    }
    let non_delta: BTreeSet<Variable> = vars.difference(delta).copied().collect();

    let atoms = delta_atoms(phi, delta);
    let mut stats = DecomposeStats {
        atoms: atoms.len(),
        pairs_evaluated: 0,
    };

    // A formula with at most one non-delta variable cannot split.
    if non_delta.len() <= 1 {
        return Ok(not_decomposable(phi, delta, non_delta, stats));
    }

    // Unions of unordered atom pairs, equal pairs included, each union
    // evaluated once.
    let atoms: Vec<&DeltaAtom> = atoms.iter().collect();
    let mut unions: BTreeSet<BTreeSet<Variable>> = BTreeSet::new();
    for (i, a1) in atoms.iter().enumerate() {
        for a2 in &atoms[i..] {
            unions.insert(a1.union(a2).copied().collect());
        }
    }
    let mut unions: Vec<BTreeSet<Variable>> = unions.into_iter().collect();
    if let Some(rng) = rng.as_deref_mut() {
        unions.shuffle(rng);
    }

    let mut family: Vec<VarPartition> = Vec::new();
    for union in &unions {
        // A term lying entirely inside the union makes the cofactor TRUE,
        // which supports every partition; skip it.
        if phi.terms().any(|t| t.vars().iter().all(|v| union.contains(v))) {
            continue;
        }
        let sub = phi
            .cofactor(delta, union)
            .expect("cofactor of an atom union is defined");
        family.push(empty_decompose_impl(&sub, rng.as_deref_mut())?);
        stats.pairs_evaluated += 1;
    }
    if let Some(rng) = rng {
        family.shuffle(rng);
    }

    // An empty family (every union covered some term) leaves the graph
    // edgeless: all-singleton partition.
    let partition = align_partitions(&family, &non_delta);
    if partition.num_classes() < 2 {
        return Ok(DecompositionResult {
            delta: delta.clone(),
            partition,
            components: vec![phi.canonicalize()],
            inessential: BTreeSet::new(),
            decomposable: false,
            stats,
        });
    }

    let mut components = Vec::new();
    let mut inessential = BTreeSet::new();
    for class in partition.classes() {
        let scope: BTreeSet<Variable> = class.union(delta).copied().collect();
        let component = phi.project(&scope).canonicalize();
        if component.is_true() {
            inessential.extend(class.iter().copied());
        } else {
            components.push(component);
        }
    }
    Ok(DecompositionResult {
        delta: delta.clone(),
        partition,
        components,
        inessential,
        decomposable: true,
        stats,
    })
}

fn not_decomposable(
    phi: &PositiveDnf,
    delta: &BTreeSet<Variable>,
    non_delta: BTreeSet<Variable>,
    stats: DecomposeStats,
) -> DecompositionResult {
    DecompositionResult {
        delta: delta.clone(),
        partition: VarPartition::single_class(non_delta),
        components: vec![phi.canonicalize()],
        inessential: BTreeSet::new(),
        decomposable: false,
        stats,
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
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
        let mut a = self.find(x);
        let mut b = self.find(y);
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}
