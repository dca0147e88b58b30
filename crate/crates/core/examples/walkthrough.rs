//! Walk through the decomposition modes on small formulas.
//!
//! Run with: cargo run --example walkthrough

use std::collections::BTreeSet;

use dnfdec_core::{
    delta_decompose, factors, find_partition, multilevel_factor, parse_dnf, Gf2Poly, Variable,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Disjoint decomposition: the 4-term product splits into two factors.
    let phi = parse_dnf("x a | x b | y a | y b")?;
    println!("input:     {phi}");
    let result = delta_decompose(&phi, &BTreeSet::new())?;
    println!("partition: {:?}", result.partition);
    for component in &result.components {
        println!("component: {component}");
    }

    // The polynomial view of the same formula.
    let poly = Gf2Poly::from_dnf(&phi)?;
    let partition = find_partition(&poly);
    println!("polynomial: {poly}");
    for factor in factors(&poly, &partition) {
        println!("factor:     {factor}");
    }

    // Shared variables: this one only splits when d1, d2 may be shared.
    let shared = parse_dnf("x a d1 | x b d1 d2 | y a d1 d2 | y b d2")?;
    println!("\nshared:    {shared}");
    let plain = delta_decompose(&shared, &BTreeSet::new())?;
    println!("decomposable with nothing shared: {}", plain.decomposable);
    let delta: BTreeSet<Variable> = ["d1", "d2"].iter().map(|n| Variable::intern(n)).collect();
    let with_delta = delta_decompose(&shared, &delta)?;
    println!("decomposable sharing {{d1 d2}}:     {}", with_delta.decomposable);
    for component in &with_delta.components {
        println!("component: {component}");
    }

    // Multilevel factoring compacts a wide DNF into a read-once formula.
    let wide = parse_dnf(
        "a b s u | a b s v | a b s w | a b t u | a b t v | a b t w \
         | a b x y | a b x z | a c s u | a c s v | a c s w | a c t u \
         | a c t v | a c t w | a c x y | a c x z | d e s u | d e s v \
         | d e s w | d e t u | d e t v | d e t w | d e x y | d e x z",
    )?;
    let tree = multilevel_factor(&wide)?;
    println!("\n{} terms factor to: {tree}", wide.term_count());
    println!(
        "depth {}, {} variable occurrences, read-once: {}",
        tree.depth(),
        tree.var_occurrences(),
        tree.is_read_once()
    );
    Ok(())
}
