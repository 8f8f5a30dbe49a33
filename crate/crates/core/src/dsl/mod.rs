//! The expression language: parsing, index expansion, rendering and
//! identity-suite files.

pub mod ast;
pub mod eval;
pub mod parser;
pub mod render;
pub mod suite;

pub use ast::{Func, Index, Node};
pub use eval::{evaluate, free_indices, Env};
pub use parser::{parse, ParseError};
pub use render::render;
pub use suite::{IdentitySpec, Mode, Suite, SuiteError};
