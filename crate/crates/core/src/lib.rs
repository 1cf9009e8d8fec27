pub mod algebra;
pub mod error;
pub mod ops;
pub mod sample;
pub mod sfa;
pub mod dfa;
pub mod dfa_learn;
pub mod sfa_learn;
pub mod query_learn;
pub mod random;
pub mod cli;
