//! Command-line front end for positive-DNF decomposition.
//!
//! Exit codes: 0 success (including a "not decomposable" finding), 1 not
//! decomposable under --fail-if-indecomposable, 2 input/format error, 3
//! invalid delta, 4 oracle limit exceeded, 5 verification mismatch, 6
//! disagreement between the main path and the oracle.

mod report;

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use dnfdec_core::oracle::brute_finest_partition_with_limit;
use dnfdec_core::{
    delta_decompose, factors, find_partition, multilevel_factor, parse_dnf, variable, Error,
    Gf2Poly, PositiveDnf, Variable,
};

use report::Render;

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Finest delta-decomposition of the input DNF.
    Decompose,
    /// Factor the input, read as a polynomial over the two-element field.
    FactorPoly,
    /// Multilevel AND/OR factoring.
    Multilevel,
    /// Check components against a reference DNF by re-expansion.
    Verify,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Decomposes positive DNFs into conjunctions of components sharing only a
/// designated variable set.
///
/// The input is a DNF over unnegated variables: terms are separated by '|',
/// '+' or newlines, variables within a term by whitespace, '*' or '&'; '#'
/// comments run to the end of the line. In verify mode the input holds
/// several DNFs separated by lines containing only "---": the reference
/// first, then one section per component.
#[derive(Parser)]
#[command(name = "dnfdec", version)]
struct Cli {
    /// Input file; omit or use '-' for stdin.
    input: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "decompose")]
    mode: Mode,

    /// Comma-separated shared (delta) variables.
    #[arg(long, value_delimiter = ',')]
    delta: Vec<String>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Cross-check the result against the brute-force oracle.
    #[arg(long)]
    oracle_check: bool,

    /// Hard limit on non-delta variables for --oracle-check.
    #[arg(long, default_value_t = 12)]
    oracle_limit: usize,

    /// Exit with status 1 when the input is not decomposable (or not
    /// factorable in factor-poly mode).
    #[arg(long)]
    fail_if_indecomposable: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let text = read_input(cli.input.as_deref())?;
    match cli.mode {
        Mode::Decompose => run_decompose(cli, &text),
        Mode::FactorPoly => run_factor_poly(cli, &text),
        Mode::Multilevel => run_multilevel(cli, &text),
        Mode::Verify => run_verify(cli, &text),
    }
}

fn read_input(path: Option<&std::path::Path>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| fail(2, format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| fail(2, format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse_input(text: &str) -> Result<PositiveDnf, Failure> {
    parse_dnf(text).map_err(|e| fail(2, e.to_string()))
}

fn parse_delta(cli: &Cli, phi: &PositiveDnf) -> Result<BTreeSet<Variable>, Failure> {
    let mut delta = BTreeSet::new();
    for name in &cli.delta {
        let name = name.trim();
        if name.is_empty() {
            continue;
        }
        if !variable::is_valid_name(name) {
            return Err(fail(3, format!("invalid delta variable name {name:?}")));
        }
        delta.insert(Variable::intern(name));
    }
    let vars = phi.vars();
    let missing: Vec<String> = delta
        .iter()
        .filter(|v| !vars.contains(v))
        .map(|v| v.name().to_string())
        .collect();
    if !missing.is_empty() {
        return Err(fail(
            3,
            format!("delta variables not in the DNF: {}", missing.join(", ")),
        ));
    }
    Ok(delta)
}

fn emit(cli: &Cli, report: &impl Render) {
    match cli.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", report.render_json()),
    }
}

fn run_decompose(cli: &Cli, text: &str) -> Result<u8, Failure> {
    let phi = parse_input(text)?;
    let delta = parse_delta(cli, &phi)?;
    let start = Instant::now();
    let result = delta_decompose(&phi, &delta).map_err(|e| match e {
        Error::InvalidDelta(_) => fail(3, e.to_string()),
        other => fail(2, other.to_string()),
    })?;
    let elapsed_ms = start.elapsed().as_millis() as u64;

    if cli.oracle_check {
        let non_delta = phi.vars().difference(&delta).count();
        if non_delta > cli.oracle_limit {
            return Err(fail(
                4,
                format!(
                    "oracle check refused: {non_delta} non-delta variables exceed the limit {}",
                    cli.oracle_limit
                ),
            ));
        }
        let oracle = brute_finest_partition_with_limit(&phi, &delta, cli.oracle_limit)
            .map_err(|e| fail(4, e.to_string()))?;
        if oracle != result.partition {
            return Err(fail(
                6,
                format!(
                    "oracle disagreement: main path found {:?}, oracle found {:?}",
                    result.partition, oracle
                ),
            ));
        }
        eprintln!("oracle check passed");
    }

    emit(cli, &report::decompose_report(&phi, &result, elapsed_ms));
    if cli.fail_if_indecomposable && !result.decomposable {
        return Ok(1);
    }
    Ok(0)
}

fn run_factor_poly(cli: &Cli, text: &str) -> Result<u8, Failure> {
    let phi = parse_input(text)?;
    let poly = Gf2Poly::from_dnf(&phi).map_err(|e| fail(2, e.to_string()))?;
    let start = Instant::now();
    let partition = find_partition(&poly);
    let factor_list = factors(&poly, &partition);
    let elapsed_ms = start.elapsed().as_millis() as u64;

    if cli.oracle_check {
        let product = factor_list
            .iter()
            .fold(Gf2Poly::one(), |acc, f| &acc * f);
        if product != poly {
            return Err(fail(
                6,
                format!("oracle disagreement: factors multiply to {product}, input is {poly}"),
            ));
        }
        eprintln!("oracle check passed");
    }

    emit(
        cli,
        &report::factor_poly_report(&poly, &partition, &factor_list, elapsed_ms),
    );
    if cli.fail_if_indecomposable && partition.num_classes() < 2 {
        return Ok(1);
    }
    Ok(0)
}

fn run_multilevel(cli: &Cli, text: &str) -> Result<u8, Failure> {
    let phi = parse_input(text)?;
    let start = Instant::now();
    let tree = multilevel_factor(&phi).map_err(|e| fail(2, e.to_string()))?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let equivalent = tree.to_dnf().equivalent(&phi);

    emit(cli, &report::multilevel_report(&phi, &tree, equivalent, elapsed_ms));
    if !equivalent {
        return Err(fail(6, "factored tree is not equivalent to the input"));
    }
    Ok(0)
}

fn run_verify(cli: &Cli, text: &str) -> Result<u8, Failure> {
    let mut sections: Vec<&str> = Vec::new();
    let mut current_start = 0usize;
    let mut offset = 0usize;
    for line in text.split_inclusive('\n') {
        if line.trim() == "---" {
            sections.push(&text[current_start..offset]);
            current_start = offset + line.len();
        }
        offset += line.len();
    }
    sections.push(&text[current_start..]);

    if sections.len() < 2 {
        return Err(fail(
            2,
            "verify mode needs a reference DNF and at least one component, separated by '---' lines",
        ));
    }
    let parse_section = |index: usize, body: &str| -> Result<PositiveDnf, Failure> {
        parse_dnf(body).map_err(|e| fail(2, format!("section {}: {e}", index + 1)))
    };
    let reference = parse_section(0, sections[0])?;
    let components: Vec<PositiveDnf> = sections[1..]
        .iter()
        .enumerate()
        .map(|(i, body)| parse_section(i + 1, body))
        .collect::<Result<_, _>>()?;

    let start = Instant::now();
    let expansion = PositiveDnf::conjoin(components.iter()).canonicalize();
    let matches = expansion == reference.canonicalize();
    let elapsed_ms = start.elapsed().as_millis() as u64;

    emit(
        cli,
        &report::verify_report(&reference, &components, &expansion, matches, elapsed_ms),
    );
    if matches {
        Ok(0)
    } else {
        Err(fail(5, "components do not re-expand to the reference DNF"))
    }
}
