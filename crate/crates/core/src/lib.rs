//! Knowledge structures delineated by fuzzy skill multimaps.
//!
//! A [`FuzzySkillMultimap`] assigns each item a family of competencies,
//! fuzzy sets of skills graded exactly in `[0, 1]`. Its problem function maps
//! a skill profile to the items it solves, and the images form a
//! [`KnowledgeStructure`]. The crate computes that structure, decides its
//! closure and separation properties directly, evaluates the multimap-side
//! criteria for the same properties, and merges component multimaps.
//!
//! ```
//! use kst_core::{delineate, fixtures, DEFAULT_MAX_COMPETENCIES};
//!
//! let mm = fixtures::f_scs();
//! let ks = delineate(&mm, DEFAULT_MAX_COMPETENCIES).unwrap().structure;
//! assert_eq!(ks.len(), 4);
//! assert!(ks.is_intersection_closed());
//! ```

pub mod classify;
pub mod cli;
pub mod delineation;
pub mod distributed;
pub mod error;
pub mod fixtures;
pub mod fuzzy;
pub mod io;
pub mod itemset;
pub mod multimap;
pub mod structure;

pub use delineation::{delineate, problem_function, DelineationResult, DEFAULT_MAX_COMPETENCIES};
pub use error::{Error, Result};
pub use fuzzy::{FuzzySet, Grade, SkillDomain};
pub use itemset::ItemSet;
pub use multimap::{FuzzySkillMultimap, MinimalSelection, MultimapBuilder};
pub use structure::{FringeReport, KnowledgeStructure, QuotientResult};
