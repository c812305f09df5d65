//! Fair and credible assignments of weighted players to identical resources.
//!
//! Players with positive integer weights choose among `m` identical
//! resources; every player on a resource pays its total load. This crate
//! checks assignments against the fairness properties (credibility, equality,
//! envy-freeness, weak ordered envy-freeness, strong and weak monotonicity),
//! solves the existence and makespan-threshold problems with polynomial
//! algorithms where they exist, and falls back to exhaustive search for the
//! NP-complete cases.
//!
//! ```
//! use fairsched::{solve, Instance, PropertySet, DEFAULT_ENUM_CAP};
//!
//! let instance = Instance::new(vec![4, 3, 3, 1], 2).unwrap();
//! let props: PropertySet = "WOE+Cr".parse().unwrap();
//! let solution = solve(props, &instance, None, DEFAULT_ENUM_CAP).unwrap();
//! assert_eq!(solution.makespan(), Some(7));
//! ```

pub mod batch;
pub mod ef;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod instance;
pub mod properties;
pub mod sca;
pub mod solve;

pub use batch::Execution;
pub use error::{Error, Result};
pub use exact::DEFAULT_ENUM_CAP;
pub use instance::{
    canonicalize, compute_loads, equivalent, is_contiguous, load_distribution, makespan, Assignment, Instance,
    LoadDistribution, LoadVector, Weight,
};
pub use properties::{check, Property, PropertySet, Verdict, Witness};
pub use solve::{minimize, solve, Solution, SolverKind};
