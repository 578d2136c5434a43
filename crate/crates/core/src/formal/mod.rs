//! Free-group towers, potentials on presented 2-groupoids and the formal
//! expansion of objects in terms of models.

mod expand;
mod groupoid;
mod insensitive;
mod tower;
mod word;

#[cfg(test)]
mod tests;

pub use expand::{
    expand_formal, FormalCalculus, FormalExpansion, LevelGenerators, Membership, Verification,
};
pub use groupoid::{ElementaryMorphism, GroupoidPresentation, MorphismWord};
pub use insensitive::{gamma, insensitive_check, rho0, GammaClass, Insensitivity};
pub use tower::{
    linearize, passes_needed, phi, tower_op, Collapsed, TowerElement, TowerOp, TowerValue,
};
pub use word::{in_normal_closure, NestedWord, Symbol};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum FormalError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("level mismatch: {0}")]
    Level(String),
    #[error("not composable: {0}")]
    Composable(String),
    #[error("no model reachable from {0} within the bound")]
    NoModel(String),
    #[error("object {0} reaches several models: {1}")]
    SeveralModels(String, String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("word is not closed at a model: {0}")]
    NotClosed(String),
    #[error("word has no declared relation to the identity: {0}")]
    NotRelated(String),
}
