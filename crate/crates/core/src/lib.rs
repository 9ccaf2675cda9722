//! Translation of action descriptions in the causal-law language into
//! propositional programs, with a built-in stable-model solver.

pub mod cli;
pub mod explicit;
pub mod export;
pub mod ground;
pub mod mvpf;
pub mod parser;
pub mod prop;
pub mod solve;
pub mod syntax;
pub mod translate;
pub mod view;

#[cfg(test)]
mod testing;
