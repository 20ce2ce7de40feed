//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use kst_core::{FuzzySet, FuzzySkillMultimap, Grade, ItemSet, KnowledgeStructure, SkillDomain};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub enum Shape {
    /// Arbitrary supports and grades.
    General,
    /// Mostly single-skill competencies.
    Molecular,
    /// One competency per item.
    Conjunctive,
    /// Families are antichains.
    SkillFunction,
}

pub const SHAPES: [Shape; 4] = [Shape::General, Shape::Molecular, Shape::Conjunctive, Shape::SkillFunction];

pub fn domain(n: usize) -> Arc<SkillDomain> {
    Arc::new(SkillDomain::new((1..=n).map(|k| format!("s{k}"))).unwrap())
}

fn nonzero_tenth(rng: &mut ChaCha8Rng) -> Grade {
    Grade::tenths(rng.random_range(1..=10))
}

/// A fuzzy set with grades in tenths, zero allowed.
pub fn random_profile(rng: &mut ChaCha8Rng, d: &Arc<SkillDomain>) -> FuzzySet {
    let grades = (0..d.len()).map(|_| Grade::tenths(rng.random_range(0..=10))).collect();
    FuzzySet::from_grades(d, grades).unwrap()
}

/// A non-zero competency; `molecule` forces a single-skill support.
pub fn random_competency(rng: &mut ChaCha8Rng, d: &Arc<SkillDomain>, molecule: bool) -> FuzzySet {
    let mut grades = vec![Grade::ZERO; d.len()];
    if molecule {
        grades[rng.random_range(0..d.len())] = nonzero_tenth(rng);
    } else {
        for g in grades.iter_mut() {
            if rng.random_bool(0.5) {
                *g = nonzero_tenth(rng);
            }
        }
        if grades.iter().all(|g| g.is_zero()) {
            grades[rng.random_range(0..d.len())] = nonzero_tenth(rng);
        }
    }
    FuzzySet::from_grades(d, grades).unwrap()
}

fn random_family(rng: &mut ChaCha8Rng, d: &Arc<SkillDomain>, shape: Shape, max: usize) -> Vec<FuzzySet> {
    let count = match shape {
        Shape::Conjunctive => 1,
        _ => rng.random_range(1..=max),
    };
    let mut fam: Vec<FuzzySet> = Vec::new();
    for _ in 0..count {
        let molecule = match shape {
            Shape::Molecular => rng.random_bool(0.75),
            _ => rng.random_bool(0.3),
        };
        let c = random_competency(rng, d, molecule);
        let comparable = fam.iter().any(|x| x.subseteq(&c).unwrap() || c.subseteq(x).unwrap());
        if fam.contains(&c) || (matches!(shape, Shape::SkillFunction) && comparable) {
            continue;
        }
        fam.push(c);
    }
    fam
}

/// A multimap over items `q1..` and skills `s1..` with at most four items,
/// three skills and three competencies per item.
pub fn random_multimap(rng: &mut ChaCha8Rng, shape: Shape) -> FuzzySkillMultimap {
    let n_items = rng.random_range(1..=4);
    let d = domain(rng.random_range(1..=3));
    let items = (1..=n_items).map(|k| format!("q{k}")).collect();
    let mu = (0..n_items).map(|_| random_family(rng, &d, shape, 3)).collect();
    FuzzySkillMultimap::new(items, d, mu).unwrap()
}

/// `size` multimaps cycling through every shape.
pub fn corpus(seed: u64, size: usize) -> Vec<FuzzySkillMultimap> {
    let mut r = rng(seed);
    (0..size).map(|k| random_multimap(&mut r, SHAPES[k % SHAPES.len()])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlap {
    Free,
    DisjointItems,
    DisjointSkills,
    DisjointBoth,
}

pub const OVERLAPS: [Overlap; 4] = [Overlap::Free, Overlap::DisjointItems, Overlap::DisjointSkills, Overlap::DisjointBoth];

const MERGE_ITEMS: [&str; 4] = ["a", "b", "c", "d"];
const MERGE_SKILLS: [&str; 4] = ["s1", "s2", "s3", "s4"];

/// Splits `pool` into `parts` non-empty blocks.
fn partition<'a>(rng: &mut ChaCha8Rng, pool: &[&'a str], parts: usize) -> Vec<Vec<&'a str>> {
    let mut shuffled = pool.to_vec();
    shuffled.shuffle(rng);
    let mut blocks: Vec<Vec<&str>> = shuffled[..parts].iter().map(|x| vec![*x]).collect();
    for x in &shuffled[parts..] {
        let k = rng.random_range(0..parts);
        blocks[k].push(x);
    }
    blocks
}

fn subsets<'a>(rng: &mut ChaCha8Rng, pool: &[&'a str], parts: usize) -> Vec<Vec<&'a str>> {
    (0..parts)
        .map(|_| {
            let mut s: Vec<&str> = pool.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
            if s.is_empty() {
                s.push(pool[rng.random_range(0..pool.len())]);
            }
            s
        })
        .collect()
}

fn sorted_by_pool<'a>(pool: &[&'a str], mut s: Vec<&'a str>) -> Vec<&'a str> {
    s.sort_by_key(|x| pool.iter().position(|p| p == x));
    s
}

/// Two or three fuzzy skill functions over items `a..d` and skills `s1..s4`,
/// with at most two competencies per item and part.
pub fn random_parts(rng: &mut ChaCha8Rng, overlap: Overlap) -> Vec<FuzzySkillMultimap> {
    let parts = rng.random_range(2..=3);
    let items = match overlap {
        Overlap::DisjointItems | Overlap::DisjointBoth => partition(rng, &MERGE_ITEMS, parts),
        _ => subsets(rng, &MERGE_ITEMS, parts),
    };
    let skills = match overlap {
        Overlap::DisjointSkills | Overlap::DisjointBoth => partition(rng, &MERGE_SKILLS, parts),
        _ => subsets(rng, &MERGE_SKILLS, parts),
    };
    items
        .into_iter()
        .zip(skills)
        .map(|(q, s)| {
            let q = sorted_by_pool(&MERGE_ITEMS, q);
            let s = sorted_by_pool(&MERGE_SKILLS, s);
            let d = Arc::new(SkillDomain::new(s.iter().copied()).unwrap());
            let mu = q.iter().map(|_| random_family(rng, &d, Shape::SkillFunction, 2)).collect();
            FuzzySkillMultimap::new(q.iter().map(|x| x.to_string()).collect(), d, mu).unwrap()
        })
        .collect()
}

/// A structure on `n` items from random states, closed under union half of
/// the time.
pub fn random_structure(rng: &mut ChaCha8Rng, n: usize) -> KnowledgeStructure {
    let full = ItemSet::full(n);
    let mut states: BTreeSet<ItemSet> = [ItemSet::empty(), full].into_iter().collect();
    let extra = rng.random_range(0..=(1usize << n).min(12));
    for _ in 0..extra {
        let mask: u32 = rng.random_range(0..(1u32 << n));
        states.insert((0..n).filter(|i| mask & (1 << i) != 0).collect());
    }
    if rng.random_bool(0.5) {
        loop {
            let snapshot: Vec<ItemSet> = states.iter().cloned().collect();
            let before = states.len();
            for a in &snapshot {
                for b in &snapshot {
                    states.insert(a.union(b));
                }
            }
            if states.len() == before {
                break;
            }
        }
    }
    let items = (1..=n).map(|k| format!("q{k}")).collect();
    KnowledgeStructure::new(items, states).unwrap()
}

/// All subsets of a small item set.
pub fn all_subsets(n: usize) -> Vec<ItemSet> {
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}
