//! Shared instance generators for the integration suites.
//!
//! All generators are seeded, so every run sees the same corpus.

// Each test binary uses its own subset of the generators.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use dnfdec_core::{Gf2Poly, Monomial, PositiveDnf, Term, Variable};

/// A positive DNF together with the shared-variable set to decompose for.
#[derive(Clone, Debug)]
pub struct Instance {
    pub phi: PositiveDnf,
    pub delta: BTreeSet<Variable>,
}

fn non_delta_pool() -> Vec<Variable> {
    (0..10).map(|i| Variable::intern(&format!("p{i}"))).collect()
}

fn delta_pool() -> Vec<Variable> {
    (1..=3).map(|i| Variable::intern(&format!("d{i}"))).collect()
}

/// Random positive DNF over exactly `vars`: every variable occurs in some
/// term.
fn random_dnf_covering(rng: &mut StdRng, vars: &[Variable], max_terms: usize) -> PositiveDnf {
    let mut terms: Vec<BTreeSet<Variable>> = Vec::new();
    let n_terms = rng.gen_range(1..=max_terms);
    for _ in 0..n_terms {
        let size = rng.gen_range(1..=vars.len().min(3));
        let mut picked: Vec<Variable> = vars.to_vec();
        picked.shuffle(rng);
        terms.push(picked.into_iter().take(size).collect());
    }
    // Cover every variable so the formula has the intended universe.
    for &v in vars {
        if !terms.iter().any(|t| t.contains(&v)) {
            let idx = rng.gen_range(0..terms.len());
            terms[idx].insert(v);
        }
    }
    PositiveDnf::from_terms(terms.into_iter().map(Term::new))
}

/// Splits `vars` into `parts` non-empty disjoint groups.
fn split_groups(rng: &mut StdRng, vars: &[Variable], parts: usize) -> Vec<Vec<Variable>> {
    let mut shuffled: Vec<Variable> = vars.to_vec();
    shuffled.shuffle(rng);
    let mut groups: Vec<Vec<Variable>> = (0..parts).map(|_| Vec::new()).collect();
    for (i, v) in shuffled.iter().enumerate() {
        if i < parts {
            groups[i].push(*v);
        } else {
            let idx = rng.gen_range(0..parts);
            groups[idx].push(*v);
        }
    }
    groups
}

fn sample_var_count(rng: &mut StdRng) -> usize {
    // Mostly small instances, a tail at the oracle limit.
    if rng.gen_ratio(1, 10) {
        rng.gen_range(9..=10)
    } else {
        rng.gen_range(4..=8)
    }
}

/// Family (i): cartesian product of 2-3 variable-disjoint positive DNFs.
pub fn product_instance(rng: &mut StdRng) -> Instance {
    let pool = non_delta_pool();
    let n = sample_var_count(rng);
    let parts = rng.gen_range(2..=3.min(n));
    let groups = split_groups(rng, &pool[..n], parts);
    let components: Vec<PositiveDnf> = groups
        .iter()
        .map(|g| random_dnf_covering(rng, g, 4))
        .collect();
    Instance {
        phi: PositiveDnf::conjoin(components.iter()),
        delta: BTreeSet::new(),
    }
}

/// Family (ii): a product whose components additionally mix in shared
/// delta variables.
pub fn shared_delta_instance(rng: &mut StdRng) -> Instance {
    let pool = non_delta_pool();
    let dpool = delta_pool();
    let n = sample_var_count(rng).min(9);
    let n_delta = rng.gen_range(1..=3);
    let parts = rng.gen_range(2..=3.min(n));
    let groups = split_groups(rng, &pool[..n], parts);

    let mut components: Vec<PositiveDnf> = Vec::new();
    for group in &groups {
        let base = random_dnf_covering(rng, group, 3);
        // Sprinkle delta variables into the terms of this component.
        let terms: Vec<Term> = base
            .terms()
            .map(|t| {
                let mut vars: BTreeSet<Variable> = t.vars().clone();
                for &d in dpool[..n_delta].iter() {
                    if rng.gen_ratio(1, 2) {
                        vars.insert(d);
                    }
                }
                Term::new(vars)
            })
            .collect();
        components.push(PositiveDnf::from_terms(terms));
    }
    let phi = PositiveDnf::conjoin(components.iter());
    let delta: BTreeSet<Variable> = dpool[..n_delta]
        .iter()
        .copied()
        .filter(|d| phi.vars().contains(d))
        .collect();
    Instance { phi, delta }
}

/// Family (iii): unstructured random positive DNFs.
pub fn unstructured_instance(rng: &mut StdRng) -> Instance {
    let pool = non_delta_pool();
    let dpool = delta_pool();
    let n = if rng.gen_ratio(1, 10) {
        rng.gen_range(9..=10)
    } else {
        rng.gen_range(2..=8)
    };
    let n_delta = rng.gen_range(0..=3);
    let scope: Vec<Variable> = pool[..n]
        .iter()
        .chain(dpool[..n_delta].iter())
        .copied()
        .collect();
    let n_terms = rng.gen_range(1..=6);
    let mut terms: Vec<Term> = Vec::new();
    for _ in 0..n_terms {
        let size = rng.gen_range(1..=scope.len().min(4));
        let mut picked = scope.clone();
        picked.shuffle(rng);
        terms.push(Term::new(picked.into_iter().take(size)));
    }
    let phi = PositiveDnf::from_terms(terms);
    let delta: BTreeSet<Variable> = dpool[..n_delta]
        .iter()
        .copied()
        .filter(|d| phi.vars().contains(d))
        .collect();
    Instance { phi, delta }
}

/// The randomized corpus used by the oracle-equivalence, soundness, and
/// determinism criteria: at least 1000 instances across the three families,
/// with at most 10 non-delta variables and at most 3 delta variables each.
pub fn decision_corpus() -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(0x0DEC_0DEC);
    let mut out = Vec::new();
    for _ in 0..350 {
        out.push(product_instance(&mut rng));
    }
    for _ in 0..350 {
        out.push(shared_delta_instance(&mut rng));
    }
    for _ in 0..350 {
        out.push(unstructured_instance(&mut rng));
    }
    out
}

/// One irreducible-by-construction multilinear polynomial over fresh
/// variables, together with its variable set.
///
/// Shapes: a single variable; a sum of distinct variables (optionally plus
/// 1), which cannot factor because products of non-constant polynomials
/// contain a monomial of degree at least 2; and three fixed two- and
/// three-variable irreducibles checked by exhausting their candidate
/// splits by hand.
fn irreducible_factor(rng: &mut StdRng, fresh: &mut impl Iterator<Item = Variable>) -> Gf2Poly {
    let shape = rng.gen_range(0..6);
    let mut take = |k: usize| -> Vec<Variable> {
        (0..k).map(|_| fresh.next().expect("fresh pool")).collect()
    };
    match shape {
        0 => {
            let v = take(1);
            Gf2Poly::from_monomials([Monomial::from_vars(v)])
        }
        1 | 2 => {
            let k = rng.gen_range(2..=4);
            let vs = take(k);
            let mut monomials: Vec<Monomial> =
                vs.iter().map(|&v| Monomial::from_vars([v])).collect();
            if rng.gen_ratio(1, 4) {
                monomials.push(Monomial::one());
            }
            Gf2Poly::from_monomials(monomials)
        }
        3 => {
            // xy + x + y
            let vs = take(2);
            Gf2Poly::from_monomials([
                Monomial::from_vars(vs.clone()),
                Monomial::from_vars([vs[0]]),
                Monomial::from_vars([vs[1]]),
            ])
        }
        4 => {
            // xy + 1
            let vs = take(2);
            Gf2Poly::from_monomials([Monomial::from_vars(vs), Monomial::one()])
        }
        _ => {
            // xy + xz + yz
            let vs = take(3);
            Gf2Poly::from_monomials([
                Monomial::from_vars([vs[0], vs[1]]),
                Monomial::from_vars([vs[0], vs[2]]),
                Monomial::from_vars([vs[1], vs[2]]),
            ])
        }
    }
}

/// A product of 2-4 variable-disjoint irreducible polynomials plus the
/// expected variable split.
pub fn factorable_poly(rng: &mut StdRng, salt: usize) -> (Gf2Poly, Vec<BTreeSet<Variable>>) {
    let mut names = (0..).map(move |i| Variable::intern(&format!("f{salt}_{i}")));
    let parts = rng.gen_range(2..=4);
    let mut product = Gf2Poly::one();
    let mut split = Vec::new();
    for _ in 0..parts {
        let factor = irreducible_factor(rng, &mut names);
        split.push(factor.vars());
        product = &product * &factor;
    }
    (product, split)
}

/// Decomposable DNF with exactly `left * right` terms: the product of two
/// variable-disjoint DNFs whose terms are distinct variable pairs.
pub fn sized_product_dnf(rng: &mut StdRng, left: usize, right: usize) -> PositiveDnf {
    let a: Vec<Variable> = (0..12).map(|i| Variable::intern(&format!("l{i}"))).collect();
    let b: Vec<Variable> = (0..12).map(|i| Variable::intern(&format!("r{i}"))).collect();
    let side = |rng: &mut StdRng, pool: &[Variable], count: usize| -> PositiveDnf {
        let mut terms: BTreeSet<Term> = BTreeSet::new();
        while terms.len() < count {
            let i = rng.gen_range(0..pool.len());
            let mut j = rng.gen_range(0..pool.len());
            while j == i {
                j = rng.gen_range(0..pool.len());
            }
            terms.insert(Term::new([pool[i], pool[j]]));
        }
        PositiveDnf::from_terms(terms)
    };
    let lhs = side(rng, &a, left);
    let rhs = side(rng, &b, right);
    PositiveDnf::conjoin([&lhs, &rhs])
}
