//! Multilinear boolean polynomials over the two-element field and the
//! variable-partition factorization procedure.
//!
//! Coefficients are implicit: a monomial is present (coefficient 1) or
//! absent (coefficient 0). Addition is symmetric difference of monomial
//! sets. Squared variables arise only inside the intermediate product used
//! by the factorization test and are never reduced to degree 1; the formal
//! derivative sends them to 0, which is exactly what makes the same-factor
//! test work.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::dnf::PositiveDnf;
use crate::error::Error;
use crate::partition::VarPartition;
use crate::variable::Variable;

/// Power product of variables; the empty map is the constant 1.
///
/// Exponents stay as computed (1 from inputs, 2 inside formal products);
/// no idempotent reduction is performed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<Variable, u8>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(BTreeMap::new())
    }

    /// Multilinear monomial with exponent 1 on each given variable.
    pub fn from_vars(vars: impl IntoIterator<Item = Variable>) -> Monomial {
        Monomial(vars.into_iter().map(|v| (v, 1)).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent_of(&self, v: Variable) -> u8 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.keys().copied()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().map(|&e| u32::from(e)).sum()
    }

    fn multiply(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&v, &e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out)
    }

    fn without(&self, v: Variable) -> Monomial {
        let mut out = self.0.clone();
        out.remove(&v);
        Monomial(out)
    }

    fn with_exponent(&self, v: Variable, exponent: u8) -> Monomial {
        let mut out = self.0.clone();
        if exponent == 0 {
            out.remove(&v);
        } else {
            out.insert(v, exponent);
        }
        Monomial(out)
    }

    fn restricted_to(&self, vars: &BTreeSet<Variable>) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(&v, &e)| (v, e))
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, &e)| {
                if e == 1 {
                    v.name().to_string()
                } else {
                    format!("{}^{}", v.name(), e)
                }
            })
            .collect();
        parts.sort();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Polynomial over the two-element field: a set of monomials, each with
/// implicit coefficient 1. The empty set is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    monomials: BTreeSet<Monomial>,
}

impl Gf2Poly {
    pub fn zero() -> Gf2Poly {
        Gf2Poly::default()
    }

    pub fn one() -> Gf2Poly {
        Gf2Poly {
            monomials: BTreeSet::from([Monomial::one()]),
        }
    }

    /// Sums the given monomials with coefficients mod 2: a monomial that
    /// appears an even number of times cancels.
    pub fn from_monomials(monomials: impl IntoIterator<Item = Monomial>) -> Gf2Poly {
        let mut out = BTreeSet::new();
        for m in monomials {
            toggle(&mut out, m);
        }
        Gf2Poly { monomials: out }
    }

    /// The polynomial of a positive DNF: one multilinear monomial per term.
    /// This map is a bijection between term sets and monomial sets; the
    /// constant TRUE has no polynomial counterpart.
    pub fn from_dnf(dnf: &PositiveDnf) -> Result<Gf2Poly, Error> {
        if dnf.is_true() {
            return Err(Error::ConstantInput);
        }
        Ok(Gf2Poly {
            monomials: dnf
                .terms()
                .map(|t| Monomial::from_vars(t.vars().iter().copied()))
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials.len() == 1 && self.monomials.contains(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn vars(&self) -> BTreeSet<Variable> {
        self.monomials.iter().flat_map(|m| m.vars()).collect()
    }

    /// True when every monomial has degree <= 1 in every variable.
    pub fn is_multilinear(&self) -> bool {
        self.monomials
            .iter()
            .all(|m| m.vars().all(|v| m.exponent_of(v) <= 1))
    }

    /// Substitutes a constant for `x`. Substituting 1 deletes `x` from its
    /// monomials and merges collisions mod 2; substituting 0 deletes the
    /// monomials containing `x`.
    pub fn substitute(&self, x: Variable, value: bool) -> Gf2Poly {
        let mut out = BTreeSet::new();
        for m in &self.monomials {
            if m.exponent_of(x) == 0 {
                // Stripped monomials can collide with untouched ones, so
                // both go through the mod-2 merge.
                toggle(&mut out, m.clone());
            } else if value {
                toggle(&mut out, m.without(x));
            }
        }
        Gf2Poly { monomials: out }
    }

    /// Formal partial derivative with coefficients mod 2: a monomial with
    /// exponent e on `x` contributes e * m / x, so even exponents vanish.
    /// On multilinear polynomials this coincides with
    /// `substitute(x, 1) + substitute(x, 0)`; on squares it does not, and
    /// the formal rule is the one the factorization test needs.
    pub fn derivative(&self, x: Variable) -> Gf2Poly {
        let mut out = BTreeSet::new();
        for m in &self.monomials {
            let e = m.exponent_of(x);
            if e % 2 == 1 {
                toggle(&mut out, m.with_exponent(x, e - 1));
            }
        }
        Gf2Poly { monomials: out }
    }

    /// Projection onto a variable set: every monomial keeps only those
    /// variables and duplicates collapse to a single copy. This is set
    /// deduplication, deliberately distinct from the mod-2 cancellation of
    /// addition and multiplication.
    pub fn project(&self, onto: &BTreeSet<Variable>) -> Gf2Poly {
        Gf2Poly {
            monomials: self
                .monomials
                .iter()
                .map(|m| m.restricted_to(onto))
                .collect(),
        }
    }

    /// Evaluates at a total assignment of the polynomial's variables.
    /// Missing variables default to false.
    pub fn evaluate(&self, assignment: &BTreeMap<Variable, bool>) -> bool {
        let mut acc = false;
        for m in &self.monomials {
            let value = m
                .vars()
                .all(|v| assignment.get(&v).copied().unwrap_or(false));
            acc ^= value;
        }
        acc
    }
}

fn toggle(set: &mut BTreeSet<Monomial>, m: Monomial) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

impl std::ops::Add for &Gf2Poly {
    type Output = Gf2Poly;

    /// Symmetric difference of monomial sets (coefficients mod 2).
    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut out = self.monomials.clone();
        for m in &rhs.monomials {
            toggle(&mut out, m.clone());
        }
        Gf2Poly { monomials: out }
    }
}

impl std::ops::Mul for &Gf2Poly {
    type Output = Gf2Poly;

    /// Distributed formal product: exponents add, colliding monomials
    /// cancel pairwise mod 2. No idempotent reduction of squares.
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        let mut out = BTreeSet::new();
        for a in &self.monomials {
            for b in &rhs.monomials {
                toggle(&mut out, a.multiply(b));
            }
        }
        Gf2Poly { monomials: out }
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.monomials.iter().map(|m| m.to_string()).collect();
        parts.sort();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Computes the finest variable partition of a multilinear polynomial: the
/// grouping of variables by the irreducible factors of the polynomial.
/// Constants yield the empty partition. Deterministic: always probes the
/// smallest remaining variable first.
pub fn find_partition(f: &Gf2Poly) -> VarPartition {
    find_partition_impl(f, None)
}

/// Same as [`find_partition`] but probes variables in a seeded random
/// order. The result is identical for every seed; the finest partition is
/// unique.
pub fn find_partition_seeded(f: &Gf2Poly, seed: u64) -> VarPartition {
    let mut rng = StdRng::seed_from_u64(seed);
    find_partition_impl(f, Some(&mut rng))
}

pub(crate) fn find_partition_impl(f: &Gf2Poly, mut rng: Option<&mut StdRng>) -> VarPartition {
    debug_assert!(f.is_multilinear());
    if f.is_constant() {
        return VarPartition::new(BTreeSet::new(), []);
    }
    let universe = f.vars();
    let mut classes: Vec<BTreeSet<Variable>> = Vec::new();
    let mut f = f.clone();

    // Variables occurring in every monomial are factors on their own.
    let common: Vec<Variable> = universe
        .iter()
        .copied()
        .filter(|&v| f.monomials().all(|m| m.exponent_of(v) > 0))
        .collect();
    for z in common {
        classes.push(BTreeSet::from([z]));
        f = f.substitute(z, true);
    }

    let mut remaining = f.vars();
    if remaining.is_empty() {
        return VarPartition::new(universe, classes);
    }
    if remaining.len() == 1 {
        classes.push(remaining);
        return VarPartition::new(universe, classes);
    }

    loop {
        f = f.project(&remaining);
        let x = pick(&remaining, rng.as_deref_mut());
        remaining.remove(&x);
        let mut class = BTreeSet::from([x]);
        let g = &f.substitute(x, false) * &f.derivative(x);
        for &y in &remaining {
            // dG/dy != 0 iff some monomial of G is linear in y: the formal
            // derivative maps those monomials injectively, so nothing
            // cancels.
            if g.monomials().any(|m| m.exponent_of(y) == 1) {
                class.insert(y);
            }
        }
        for v in &class {
            remaining.remove(v);
        }
        classes.push(class);
        if remaining.is_empty() {
            break;
        }
    }
    VarPartition::new(universe, classes)
}

fn pick(vars: &BTreeSet<Variable>, rng: Option<&mut StdRng>) -> Variable {
    match rng {
        None => *vars.iter().next().expect("non-empty variable set"),
        Some(rng) => {
            let idx = rng.gen_range(0..vars.len());
            *vars.iter().nth(idx).expect("index in range")
        }
    }
}

/// The factors of `f` corresponding to a variable partition: the
/// projections of `f` onto the classes. For the finest partition of a
/// non-constant multilinear polynomial, the product of the factors equals
/// `f`.
pub fn factors(f: &Gf2Poly, partition: &VarPartition) -> Vec<Gf2Poly> {
    partition.classes().map(|class| f.project(class)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Variable {
        Variable::intern(n)
    }

    fn vars(names: &[&str]) -> BTreeSet<Variable> {
        names.iter().map(|n| v(n)).collect()
    }

    /// Builds a polynomial from space-separated variable lists, one list
    /// per monomial ("" is the constant monomial).
    fn poly(monomials: &[&str]) -> Gf2Poly {
        Gf2Poly::from_monomials(monomials.iter().map(|m| {
            Monomial::from_vars(m.split_whitespace().map(v))
        }))
    }

    fn partition(classes: &[&[&str]]) -> VarPartition {
        let universe: BTreeSet<Variable> =
            classes.iter().flat_map(|c| c.iter().map(|n| v(n))).collect();
        VarPartition::new(universe, classes.iter().map(|c| c.iter().map(|n| v(n)).collect()))
    }

    #[test]
    fn from_dnf_maps_terms_to_monomials() {
        let phi = PositiveDnf::from_names([
            ["x", "a"].as_slice(),
            &["x", "b"],
            &["y", "a"],
            &["y", "b"],
        ]);
        let f = Gf2Poly::from_dnf(&phi).unwrap();
        assert_eq!(f, poly(&["x a", "x b", "y a", "y b"]));
        assert_eq!(
            Gf2Poly::from_dnf(&PositiveDnf::from_names([["x"].as_slice()])).unwrap(),
            poly(&["x"])
        );
        assert_eq!(Gf2Poly::from_dnf(&PositiveDnf::True), Err(Error::ConstantInput));
    }

    #[test]
    fn substitute_zero_drops_monomials() {
        let f = poly(&["x a", "x b", "y a", "y b"]);
        assert_eq!(f.substitute(v("x"), false), poly(&["y a", "y b"]));
    }

    #[test]
    fn substitute_one_erases_variable() {
        let f = poly(&["x a", "x b", "y a", "y b"]);
        assert_eq!(f.substitute(v("x"), true), poly(&["a", "b", "y a", "y b"]));
    }

    #[test]
    fn substitute_one_cancels_mod_two() {
        // (xy + y) at x=1: xy becomes y and cancels with y.
        let f = poly(&["x y", "y"]);
        let g = f.substitute(v("x"), true);
        assert!(g.is_zero());
        // Evaluation agrees on every assignment of the remaining variable.
        for y_val in [false, true] {
            let full: BTreeMap<Variable, bool> =
                [(v("x"), true), (v("y"), y_val)].into_iter().collect();
            assert_eq!(g.evaluate(&full), f.evaluate(&full));
        }
    }

    #[test]
    fn derivative_of_multilinear() {
        let f = poly(&["x a", "x b", "y a", "y b"]);
        assert_eq!(f.derivative(v("x")), poly(&["a", "b"]));
    }

    #[test]
    fn derivative_kills_squares() {
        // ya^2 + yb^2: derivative by a is 0, derivative by y keeps squares.
        let ya = Monomial::from_vars([v("y")]).with_exponent(v("a"), 2);
        let yb = Monomial::from_vars([v("y")]).with_exponent(v("b"), 2);
        let g = Gf2Poly::from_monomials([ya, yb]);
        assert!(g.derivative(v("a")).is_zero());
        let dy = g.derivative(v("y"));
        assert_eq!(dy.monomial_count(), 2);
        assert!(!dy.is_zero());
        assert!(dy.monomials().all(|m| m.exponent_of(v("y")) == 0));
    }

    #[test]
    fn multiply_cancels_cross_terms() {
        // (ya + yb)(a + b) = ya^2 + yb^2: both yab cross terms cancel.
        let f = poly(&["y a", "y b"]);
        let g = poly(&["a", "b"]);
        let prod = &f * &g;
        let ya2 = Monomial::from_vars([v("y")]).with_exponent(v("a"), 2);
        let yb2 = Monomial::from_vars([v("y")]).with_exponent(v("b"), 2);
        assert_eq!(prod, Gf2Poly::from_monomials([ya2, yb2]));
    }

    #[test]
    fn multiply_identity_and_expansion() {
        let f = poly(&["x a", "x b"]);
        assert_eq!(&f * &Gf2Poly::one(), f);
        let left = poly(&["x", "y"]);
        let right = poly(&["a", "b"]);
        assert_eq!(&left * &right, poly(&["x a", "x b", "y a", "y b"]));
    }

    #[test]
    fn projection_deduplicates() {
        let f = poly(&["x a", "x b", "y a", "y b"]);
        assert_eq!(f.project(&vars(&["a", "b"])), poly(&["a", "b"]));
        assert_eq!(f.project(&vars(&["x", "y"])), poly(&["x", "y"]));
        assert_eq!(f.project(&f.vars()), f);
    }

    #[test]
    fn find_partition_of_two_factor_product() {
        let f = poly(&["x a", "x b", "y a", "y b"]);
        assert_eq!(find_partition(&f), partition(&[&["x", "y"], &["a", "b"]]));
    }

    #[test]
    fn find_partition_of_irreducible_sum() {
        let f = poly(&["x", "y"]);
        assert_eq!(find_partition(&f), partition(&[&["x", "y"]]));
    }

    #[test]
    fn find_partition_of_single_monomial() {
        let f = poly(&["x a b"]);
        assert_eq!(find_partition(&f), partition(&[&["x"], &["a"], &["b"]]));
    }

    #[test]
    fn find_partition_of_three_factor_product() {
        // (x + y)(a + b)(c + d) expanded by hand: 8 monomials.
        let f = poly(&[
            "x a c", "x a d", "x b c", "x b d", "y a c", "y a d", "y b c", "y b d",
        ]);
        let p = find_partition(&f);
        assert_eq!(p, partition(&[&["x", "y"], &["a", "b"], &["c", "d"]]));
        // Multiply-back: the projections onto the classes recover f.
        let fs = factors(&f, &p);
        let product = fs.iter().fold(Gf2Poly::one(), |acc, g| &acc * g);
        assert_eq!(product, f);
    }

    #[test]
    fn find_partition_of_constants_is_empty() {
        assert_eq!(find_partition(&Gf2Poly::zero()).num_classes(), 0);
        assert_eq!(find_partition(&Gf2Poly::one()).num_classes(), 0);
        assert!(find_partition(&Gf2Poly::one()).universe().is_empty());
    }

    #[test]
    fn factors_of_two_factor_product() {
        let f = poly(&["x a", "x b", "y a", "y b"]);
        let p = find_partition(&f);
        let fs = factors(&f, &p);
        let expected = [poly(&["a", "b"]), poly(&["x", "y"])];
        assert_eq!(fs.len(), 2);
        assert!(expected.iter().all(|e| fs.contains(e)));
    }

    #[test]
    fn factors_of_irreducible_is_itself() {
        let f = poly(&["x y", "y z", "x z"]);
        let p = find_partition(&f);
        assert_eq!(p.num_classes(), 1);
        assert_eq!(factors(&f, &p), vec![f]);
    }

    #[test]
    fn squared_cross_terms_do_not_leak_into_class() {
        // Regression guard: with f = xa + xb + ya + yb and x probed first,
        // G = ya^2 + yb^2. dG/da = 0 must hold, and dG/dy != 0; reducing
        // squares during multiplication would misclassify a.
        let f = poly(&["x a", "x b", "y a", "y b"]);
        let g = &f.substitute(v("x"), false) * &f.derivative(v("x"));
        let ya2 = Monomial::from_vars([v("y")]).with_exponent(v("a"), 2);
        let yb2 = Monomial::from_vars([v("y")]).with_exponent(v("b"), 2);
        assert_eq!(g, Gf2Poly::from_monomials([ya2, yb2]));
        assert!(g.derivative(v("a")).is_zero());
        assert!(g.derivative(v("b")).is_zero());
        assert!(!g.derivative(v("y")).is_zero());
        assert_eq!(find_partition(&f), partition(&[&["x", "y"], &["a", "b"]]));
    }

    #[test]
    fn trivial_factor_with_constant_tail() {
        // x + xy = x(1 + y): x is a trivial factor, the rest is 1 + y.
        let f = poly(&["x", "x y"]);
        let p = find_partition(&f);
        assert_eq!(p, partition(&[&["x"], &["y"]]));
        let fs = factors(&f, &p);
        let product = fs.iter().fold(Gf2Poly::one(), |acc, g| &acc * g);
        assert_eq!(product, f);
    }
}
