//! Graph products of groups: word problem, reduced and shortlex normal
//! forms, geodesics, cyclic reduction and conjugacy, together with brute
//! force oracles used to test them.
//!
//! ```
//! use graphprod::{corpus, normal_form, GWord};
//!
//! let g = corpus::fig2();
//! let w = GWord::parse(&g, "a b a- b-").unwrap();
//! assert!(normal_form::word_problem(&g, &w));
//! ```

pub mod amalgam;
pub mod cli;
pub mod conjugacy;
pub mod corpus;
pub mod dependence;
pub mod error;
pub mod node_group;
pub mod normal_form;
pub mod oracles;
pub mod spec;
pub mod trace;
pub mod word;

pub use error::{Error, Result};
pub use node_group::{Element, NodeGroupKind, NodeGroupSpec};
pub use spec::{GraphProductSpec, NodeId};
pub use word::{GWord, Letter};
