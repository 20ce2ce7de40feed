//! Worked examples of multimaps and structures used throughout the tests
//! and the CLI documentation. Grades are one-decimal values.

use crate::multimap::{FuzzySkillMultimap, MultimapBuilder};
use crate::structure::KnowledgeStructure;

fn build(b: MultimapBuilder) -> FuzzySkillMultimap {
    b.build().expect("fixture is a valid multimap")
}

/// Two items that both require full mastery of every skill.
pub fn f_ex1() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2"])
            .competency("q1", &[("s1", "1"), ("s2", "1")])
            .competency("q2", &[("s1", "1"), ("s2", "1")]),
    )
}

/// Delineates a simple closure space although competencies of `q1` have no
/// common lower bound in `mu(q1)`.
pub fn f_scs() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2"])
            .competency("q1", &[("s1", "0.2")])
            .competency("q1", &[("s1", "0.1"), ("s2", "0.3")])
            .competency("q2", &[("s1", "0.6"), ("s2", "0.7")])
            .competency("q3", &[("s1", "0.4")]),
    )
}

/// Delineates a learning space with no molecule competencies.
pub fn f_ls() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2", "s3"])
            .competency("q1", &[("s1", "0.1"), ("s2", "0.3")])
            .competency("q1", &[("s2", "0.4"), ("s3", "0.6")])
            .competency("q2", &[("s2", "0.4"), ("s3", "0.6")]),
    )
}

/// Crisp counterpart of [`f_ls`].
pub fn f_ls_crisp() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2", "s3"])
            .competency("q1", &[("s1", "1"), ("s2", "1")])
            .competency("q1", &[("s2", "1"), ("s3", "1")])
            .competency("q2", &[("s2", "1"), ("s3", "1")]),
    )
}

/// Mutually refining families on two items.
pub fn f_nd() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2", "s3"])
            .competency("a", &[("s1", "0.3")])
            .competency("a", &[("s2", "0.4")])
            .competency("a", &[("s2", "0.7"), ("s3", "0.4")])
            .competency("b", &[("s1", "0.3")])
            .competency("b", &[("s2", "0.4")]),
    )
}

/// Disjunctive multimap with an injective family assignment.
pub fn f_inj() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2"])
            .competency("a", &[("s1", "0.6")])
            .competency("a", &[("s1", "0.8")])
            .competency("a", &[("s2", "0.7")])
            .competency("b", &[("s1", "0.3")])
            .competency("b", &[("s2", "0.4")]),
    )
}

/// Three items sharing two molecule competencies.
pub fn f_min() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2", "s3"])
            .competency("a", &[("s1", "0.2")])
            .competency("a", &[("s2", "0.1")])
            .competency("a", &[("s1", "0.3"), ("s2", "0.4")])
            .competency("b", &[("s1", "0.2")])
            .competency("b", &[("s2", "0.1")])
            .competency("b", &[("s1", "0.5"), ("s3", "0.2")])
            .competency("b", &[("s2", "0.3"), ("s3", "0.3")])
            .competency("c", &[("s1", "0.2")])
            .competency("c", &[("s2", "0.1")])
            .competency("c", &[("s1", "0.3"), ("s2", "0.5"), ("s3", "0.6")]),
    )
}

/// Two items where `b` is reachable without `a` but not conversely.
/// Only `a` and `b` carry competencies, so the item domain is `{a, b}`.
pub fn f_bisep() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2", "s3"])
            .competency("a", &[("s1", "0.2")])
            .competency("a", &[("s2", "0.1")])
            .competency("a", &[("s1", "0.3"), ("s2", "0.4")])
            .competency("b", &[("s1", "0.2")])
            .competency("b", &[("s2", "0.1")])
            .competency("b", &[("s3", "0.6")])
            .competency("b", &[("s1", "0.5"), ("s2", "0.2")]),
    )
}

/// Conjunctive fuzzy skill function whose second competency dominates the first.
pub fn f_14() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2"])
            .competency("a", &[("s1", "0.2")])
            .competency("b", &[("s1", "0.3"), ("s2", "0.7")]),
    )
}

/// Disjunctive multimap whose items are separable in one direction only.
pub fn f_disj() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2"])
            .competency("q", &[("s1", "0.2")])
            .competency("r", &[("s1", "0.1")])
            .competency("r", &[("s2", "0.7")]),
    )
}

/// The unrestricted multimap of the prolongation example.
pub fn f_prolong_full() -> FuzzySkillMultimap {
    build(
        MultimapBuilder::new(["s1", "s2", "s3"])
            .competency("q", &[("s1", "0.2"), ("s2", "0.3")])
            .competency("r", &[("s1", "0.2"), ("s3", "0.5")]),
    )
}

/// Two components with disjoint item sets and overlapping skill sets.
pub fn f_merge1_parts() -> Vec<FuzzySkillMultimap> {
    vec![
        build(
            MultimapBuilder::new(["s1", "s2", "s3", "s4"])
                .competency("a", &[("s1", "0.1"), ("s2", "0.7")])
                .competency("a", &[("s2", "0.4"), ("s3", "0.6")])
                .competency("b", &[("s1", "0.2"), ("s3", "0.5")])
                .competency("b", &[("s3", "0.5"), ("s4", "0.5")]),
        ),
        build(
            MultimapBuilder::new(["s1", "s3", "s4", "s5"])
                .competency("c", &[("s1", "0.2"), ("s3", "0.5")])
                .competency("c", &[("s3", "0.5"), ("s4", "0.5")])
                .competency("d", &[("s1", "0.2"), ("s4", "0.5")])
                .competency("d", &[("s3", "0.5"), ("s5", "0.5")]),
        ),
    ]
}

/// Three single-skill components with overlapping item sets.
pub fn f_merge2_parts() -> Vec<FuzzySkillMultimap> {
    vec![
        build(
            MultimapBuilder::new(["s1"])
                .competency("a", &[("s1", "0.2")])
                .competency("b", &[("s1", "0.2")]),
        ),
        build(
            MultimapBuilder::new(["s2"])
                .competency("b", &[("s2", "0.4")])
                .competency("c", &[("s2", "0.4")]),
        ),
        build(
            MultimapBuilder::new(["s3"])
                .competency("a", &[("s3", "0.6")])
                .competency("c", &[("s3", "0.6")]),
        ),
    ]
}

/// A non-discriminative structure in which `a` and `c` always co-occur.
pub fn f_quot() -> KnowledgeStructure {
    KnowledgeStructure::from_names(
        &["a", "b", "c", "d"],
        &[&[], &["d"], &["a", "c"], &["a", "b", "c"], &["a", "c", "d"], &["a", "b", "c", "d"]],
    )
    .expect("fixture is a valid structure")
}
