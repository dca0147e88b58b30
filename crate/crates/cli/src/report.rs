//! Report assembly: deterministic JSON and text rendering.
//!
//! Every list is sorted by variable name; partition classes are ordered by
//! their smallest member.

use std::collections::BTreeSet;

use serde::Serialize;

use dnfdec_core::{DecompositionResult, FactorTree, Gf2Poly, PositiveDnf, VarPartition, Variable};

#[derive(Serialize)]
pub struct Stats {
    pub terms: usize,
    pub variables: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atoms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs_evaluated: Option<usize>,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
pub struct ComponentReport {
    pub dnf: String,
    pub variables: Vec<String>,
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub mode: &'static str,
    pub delta: Vec<String>,
    pub decomposable: bool,
    pub partition: Vec<Vec<String>>,
    pub components: Vec<ComponentReport>,
    pub inessential_variables: Vec<String>,
    pub stats: Stats,
}

#[derive(Serialize)]
pub struct FactorReport {
    pub poly: String,
    pub variables: Vec<String>,
}

#[derive(Serialize)]
pub struct FactorPolyReport {
    pub mode: &'static str,
    pub factorable: bool,
    pub partition: Vec<Vec<String>>,
    pub factors: Vec<FactorReport>,
    pub stats: Stats,
}

#[derive(Serialize)]
pub struct MultilevelReport {
    pub mode: &'static str,
    pub formula: String,
    pub depth: usize,
    pub variable_occurrences: usize,
    pub read_once: bool,
    pub equivalent_to_input: bool,
    pub stats: Stats,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub mode: &'static str,
    #[serde(rename = "match")]
    pub matches: bool,
    pub reference: String,
    pub components: Vec<String>,
    pub expansion: String,
    pub stats: Stats,
}

pub fn sorted_names(vars: &BTreeSet<Variable>) -> Vec<String> {
    let mut names: Vec<String> = vars.iter().map(|v| v.name().to_string()).collect();
    names.sort();
    names
}

/// Classes as sorted name lists, ordered by their smallest member.
pub fn partition_report(partition: &VarPartition) -> Vec<Vec<String>> {
    let mut classes: Vec<Vec<String>> = partition.classes().map(sorted_names).collect();
    classes.sort();
    classes
}

fn component_report(dnf: &PositiveDnf) -> ComponentReport {
    ComponentReport {
        dnf: dnf.to_string(),
        variables: sorted_names(&dnf.vars()),
    }
}

/// Components in class order (sorted by smallest class member); components
/// with no non-delta variable, which can only arise from formulas that do
/// not constrain a class at all, come last.
fn ordered_components(result: &DecompositionResult) -> Vec<ComponentReport> {
    let mut classes: Vec<&BTreeSet<Variable>> = result.partition.classes().collect();
    classes.sort_by_key(|c| c.iter().map(|v| v.name()).min());

    let mut remaining: Vec<&PositiveDnf> = result.components.iter().collect();
    let mut ordered: Vec<ComponentReport> = Vec::new();
    for class in classes {
        if let Some(pos) = remaining.iter().position(|c| {
            let non_delta: BTreeSet<Variable> =
                c.vars().difference(&result.delta).copied().collect();
            !non_delta.is_empty() && non_delta.is_subset(class)
        }) {
            ordered.push(component_report(remaining.remove(pos)));
        }
    }
    let mut leftovers: Vec<ComponentReport> =
        remaining.into_iter().map(component_report).collect();
    leftovers.sort_by(|a, b| a.dnf.cmp(&b.dnf));
    ordered.extend(leftovers);
    ordered
}

pub fn decompose_report(
    input: &PositiveDnf,
    result: &DecompositionResult,
    elapsed_ms: u64,
) -> DecomposeReport {
    DecomposeReport {
        mode: "decompose",
        delta: sorted_names(&result.delta),
        decomposable: result.decomposable,
        partition: partition_report(&result.partition),
        components: ordered_components(result),
        inessential_variables: sorted_names(&result.inessential),
        stats: Stats {
            terms: input.term_count(),
            variables: input.vars().len(),
            atoms: Some(result.stats.atoms),
            pairs_evaluated: Some(result.stats.pairs_evaluated),
            elapsed_ms,
        },
    }
}

pub fn factor_poly_report(
    poly: &Gf2Poly,
    partition: &VarPartition,
    factors: &[Gf2Poly],
    elapsed_ms: u64,
) -> FactorPolyReport {
    let mut reports: Vec<FactorReport> = factors
        .iter()
        .map(|f| FactorReport {
            poly: f.to_string(),
            variables: sorted_names(&f.vars()),
        })
        .collect();
    reports.sort_by(|a, b| a.poly.cmp(&b.poly));
    FactorPolyReport {
        mode: "factor-poly",
        factorable: partition.num_classes() >= 2,
        partition: partition_report(partition),
        factors: reports,
        stats: Stats {
            terms: poly.monomial_count(),
            variables: poly.vars().len(),
            atoms: None,
            pairs_evaluated: None,
            elapsed_ms,
        },
    }
}

pub fn multilevel_report(
    input: &PositiveDnf,
    tree: &FactorTree,
    equivalent: bool,
    elapsed_ms: u64,
) -> MultilevelReport {
    MultilevelReport {
        mode: "multilevel",
        formula: tree.to_string(),
        depth: tree.depth(),
        variable_occurrences: tree.var_occurrences(),
        read_once: tree.is_read_once(),
        equivalent_to_input: equivalent,
        stats: Stats {
            terms: input.term_count(),
            variables: input.vars().len(),
            atoms: None,
            pairs_evaluated: None,
            elapsed_ms,
        },
    }
}

pub fn verify_report(
    reference: &PositiveDnf,
    components: &[PositiveDnf],
    expansion: &PositiveDnf,
    matches: bool,
    elapsed_ms: u64,
) -> VerifyReport {
    VerifyReport {
        mode: "verify",
        matches,
        reference: reference.to_string(),
        components: components.iter().map(|c| c.to_string()).collect(),
        expansion: expansion.to_string(),
        stats: Stats {
            terms: reference.term_count(),
            variables: reference.vars().len(),
            atoms: None,
            pairs_evaluated: None,
            elapsed_ms,
        },
    }
}

pub trait Render {
    fn render_text(&self) -> String;
    fn render_json(&self) -> String;
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

fn stats_line(stats: &Stats) -> String {
    let mut parts = vec![
        format!("terms={}", stats.terms),
        format!("variables={}", stats.variables),
    ];
    if let Some(atoms) = stats.atoms {
        parts.push(format!("atoms={atoms}"));
    }
    if let Some(pairs) = stats.pairs_evaluated {
        parts.push(format!("pairs_evaluated={pairs}"));
    }
    parts.push(format!("elapsed_ms={}", stats.elapsed_ms));
    parts.join(" ")
}

fn braced(classes: &[Vec<String>]) -> String {
    classes
        .iter()
        .map(|c| format!("{{{}}}", c.join(" ")))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Render for DecomposeReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("mode: decompose\n");
        out.push_str(&format!("delta: {}\n", self.delta.join(" ")));
        out.push_str(&format!("decomposable: {}\n", self.decomposable));
        out.push_str(&format!("partition: {}\n", braced(&self.partition)));
        for component in &self.components {
            out.push_str(&format!("component: {}\n", component.dnf));
        }
        out.push_str(&format!(
            "inessential: {}\n",
            self.inessential_variables.join(" ")
        ));
        out.push_str(&format!("stats: {}\n", stats_line(&self.stats)));
        out
    }

    fn render_json(&self) -> String {
        to_json(self)
    }
}

impl Render for FactorPolyReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("mode: factor-poly\n");
        out.push_str(&format!("factorable: {}\n", self.factorable));
        out.push_str(&format!("partition: {}\n", braced(&self.partition)));
        for factor in &self.factors {
            out.push_str(&format!("factor: {}\n", factor.poly));
        }
        out.push_str(&format!("stats: {}\n", stats_line(&self.stats)));
        out
    }

    fn render_json(&self) -> String {
        to_json(self)
    }
}

impl Render for MultilevelReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("mode: multilevel\n");
        out.push_str(&format!("formula: {}\n", self.formula));
        out.push_str(&format!("depth: {}\n", self.depth));
        out.push_str(&format!(
            "variable_occurrences: {}\n",
            self.variable_occurrences
        ));
        out.push_str(&format!("read_once: {}\n", self.read_once));
        out.push_str(&format!(
            "equivalent_to_input: {}\n",
            self.equivalent_to_input
        ));
        out.push_str(&format!("stats: {}\n", stats_line(&self.stats)));
        out
    }

    fn render_json(&self) -> String {
        to_json(self)
    }
}

impl Render for VerifyReport {
    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str("mode: verify\n");
        out.push_str(&format!("match: {}\n", self.matches));
        out.push_str(&format!("reference: {}\n", self.reference));
        for component in &self.components {
            out.push_str(&format!("component: {}\n", component));
        }
        out.push_str(&format!("expansion: {}\n", self.expansion));
        out.push_str(&format!("stats: {}\n", stats_line(&self.stats)));
        out
    }

    fn render_json(&self) -> String {
        to_json(self)
    }
}
