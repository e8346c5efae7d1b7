//! Higher-dimensional string rewriting over monoid presentations.

pub mod branching;
pub mod catalog;
pub mod completion;
pub mod dot;
pub mod error;
pub mod garside;
pub mod normalize;
pub mod order;
pub mod polygraph;
pub mod reduce;
pub mod sphere;
pub mod standard;
pub mod text;
pub mod word;

pub use error::{Error, Result};
pub use polygraph::{
    label, Label, Orientation, RewritePath, RewriteStep, Rule, ThreeCell, ThreeOnePolygraph,
    TwoPolygraph,
};
pub use word::Word;
