//! Exact dense matrices over the cyclotomic scalars and over ramified
//! series, plus Jordan normal forms and ad-eigenvalue analysis.

mod jordan;
mod matrix;
pub mod poly;

pub use jordan::{
    ad_eigenvalues, is_zero_class, jordan_block, jordan_blocks_of, jordan_decomposition,
    jordan_form, jordan_form_with_eigenvalues, JordanForm,
};
pub use matrix::{Entry, Matrix};
