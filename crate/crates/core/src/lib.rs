//! Finest conjunctive decomposition of positive DNFs.
//!
//! A positive DNF is delta-decomposable when it is equivalent to a
//! conjunction of formulas that share at most a designated variable set and
//! partition the remaining variables. This crate computes the finest such
//! decomposition in polynomial time by factoring the multilinear polynomial
//! of the DNF over the two-element field, and ships a brute-force semantic
//! oracle for validating results on small instances plus a multilevel
//! AND/OR factoring mode for compact formula output.
//!
//! All values are immutable after construction and all operations are pure;
//! the process-wide variable interner is the only shared state and is safe
//! for concurrent use.
//!
//! ```
//! use std::collections::BTreeSet;
//! use dnfdec_core::{delta_decompose, parse_dnf, Variable};
//!
//! let phi = parse_dnf("x a d1 | x b d1 d2 | y a d1 d2 | y b d2")?;
//! let delta: BTreeSet<Variable> =
//!     ["d1", "d2"].iter().map(|n| Variable::intern(n)).collect();
//! let result = delta_decompose(&phi, &delta)?;
//! assert!(result.decomposable);
//! let rendered: Vec<String> =
//!     result.components.iter().map(|c| c.to_string()).collect();
//! assert!(rendered.contains(&"d1 x | d2 y".to_string()));
//! assert!(rendered.contains(&"a d1 | b d2".to_string()));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod decompose;
pub mod dnf;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod partition;
pub mod text;
pub mod variable;

pub use decompose::{
    align_partitions, delta_atoms, delta_decompose, delta_decompose_seeded, empty_decompose,
    empty_decompose_seeded, multilevel_factor, DecomposeStats, DecompositionResult, DeltaAtom,
    FactorTree,
};
pub use dnf::{Assignment, PositiveDnf, Term};
pub use error::Error;
pub use gf2::{factors, find_partition, find_partition_seeded, Gf2Poly, Monomial};
pub use partition::VarPartition;
pub use text::{parse_dnf, ParseError};
pub use variable::Variable;
