//! Instance generation, exhaustive enumeration, an element-enumeration
//! oracle and the property suite.

pub mod brute;
mod fixtures;
mod generate;
mod properties;
mod suite;

pub use fixtures::{worked_examples, Fixture};
pub use generate::{
    enumerate_filtrations, random_complex, random_filtration, random_free_complex, split_seed, Infinities,
};
pub use properties::{standard_properties, Property};
pub use suite::{run_suite, CaseResult, Counts, Exhibit, Failure, RingContext, SuiteConfig, SuiteReport};
