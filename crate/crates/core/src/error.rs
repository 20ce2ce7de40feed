use thiserror::Error;

use crate::multimap::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible skill domains")]
    IncompatibleDomains,

    #[error("grade out of range: {0}")]
    GradeOutOfRange(String),

    #[error("malformed grade {0:?}")]
    MalformedGrade(String),

    #[error("skill domain must be non-empty")]
    EmptySkillDomain,

    #[error("duplicate skill {0:?}")]
    DuplicateSkill(String),

    #[error("unknown skill {0:?}")]
    UnknownSkill(String),

    #[error("unknown item {0:?}")]
    UnknownItem(String),

    #[error("duplicate item {0:?}")]
    DuplicateItem(String),

    #[error("item set must be non-empty")]
    EmptyItemSet,

    #[error("invalid multimap: {}", join_violations(.0))]
    InvalidMultimap(Vec<Violation>),

    #[error("invalid knowledge structure: {0}")]
    InvalidStructure(String),

    #[error("{competency} is not a competency of item {item}")]
    NotACompetency { item: String, competency: String },

    #[error("{0} is not a state of the structure")]
    NotAState(String),

    #[error("{0}")]
    Precondition(String),

    #[error("{count} distinct competencies exceed the enumeration limit of {limit}")]
    TooManyCompetencies { count: usize, limit: usize },

    #[error("restricting to the chosen skills leaves item {0} with no non-zero competency")]
    CollapsedFamily(String),

    #[error("part {part} is not a fuzzy skill function: item {item} has comparable competencies {first} and {second}")]
    NotASkillFunction {
        part: usize,
        item: String,
        first: String,
        second: String,
    },

    #[error("document error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
