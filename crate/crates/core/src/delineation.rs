//! The problem function and the structure it delineates.
//!
//! Every value `p(T)` is decided by the competencies below `T`: with
//! `A = {C in pool : C ⊆ T}` we have `p(T) = p(⋁A)`, because a competency is
//! below `⋁A` only if it is below `T`. So the finite family of joins of pool
//! subsets, together with the zero set, stands in for all of `𝓕(S)`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, SkillDomain};
use crate::itemset::ItemSet;
use crate::multimap::FuzzySkillMultimap;
use crate::structure::KnowledgeStructure;

pub const DEFAULT_MAX_COMPETENCIES: usize = 22;

/// `p(T)`: the items with some competency below `t`.
pub fn problem_function(mm: &FuzzySkillMultimap, t: &FuzzySet) -> Result<ItemSet> {
    if t.domain() != mm.domain() {
        return Err(Error::IncompatibleDomains);
    }
    Ok(problem_unchecked(mm, t))
}

/// `[T]`, the same map under the name used for molecule arguments.
pub fn bracket(mm: &FuzzySkillMultimap, t: &FuzzySet) -> Result<ItemSet> {
    problem_function(mm, t)
}

pub(crate) fn problem_unchecked(mm: &FuzzySkillMultimap, t: &FuzzySet) -> ItemSet {
    mm.families()
        .iter()
        .enumerate()
        .filter(|(_, fam)| fam.iter().any(|c| c.leq(t)))
        .map(|(q, _)| q)
        .collect()
}

/// All joins of subsets of `pool` (the empty join is the zero set), in
/// breadth-first order: a join first appears at the level of the smallest
/// subset producing it, and within a level in pool order.
pub fn join_closure(domain: &Arc<SkillDomain>, pool: &[FuzzySet], limit: usize) -> Result<Vec<FuzzySet>> {
    if pool.len() > limit {
        return Err(Error::TooManyCompetencies {
            count: pool.len(),
            limit,
        });
    }
    if pool.iter().any(|c| c.domain() != domain) {
        return Err(Error::IncompatibleDomains);
    }
    let zero = FuzzySet::zero(domain);
    let mut seen: HashSet<FuzzySet> = HashSet::from([zero.clone()]);
    let mut out = vec![zero];
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let start = out.len();
        for x in frontier.clone() {
            for c in pool {
                if c.leq(&out[x]) {
                    continue;
                }
                let j = out[x].join_unchecked(c);
                if seen.insert(j.clone()) {
                    out.push(j);
                }
            }
        }
        frontier = start..out.len();
    }
    Ok(out)
}

/// The join closure of a multimap's competency pool.
pub fn join_test_set(mm: &FuzzySkillMultimap, max_competencies: usize) -> Result<Vec<FuzzySet>> {
    join_closure(mm.domain(), &mm.competency_pool(), max_competencies)
}

#[derive(Clone, Debug)]
pub struct DelineationResult {
    pub structure: KnowledgeStructure,
    /// One profile per state that the problem function maps onto it.
    pub witnesses: BTreeMap<ItemSet, FuzzySet>,
}

impl DelineationResult {
    pub fn witness(&self, state: &ItemSet) -> Option<&FuzzySet> {
        self.witnesses.get(state)
    }

    /// Re-evaluates every witness against `mm`.
    pub fn check_witnesses(&self, mm: &FuzzySkillMultimap) -> Result<()> {
        for state in self.structure.states() {
            let w = self
                .witness(state)
                .ok_or_else(|| Error::Invariant(format!("state {state:?} has no witness")))?;
            if problem_unchecked(mm, w) != *state {
                return Err(Error::Invariant(format!("witness {w} does not reproduce state {state:?}")));
            }
        }
        Ok(())
    }
}

/// The knowledge structure `{p(T) : T ∈ 𝓕(S)}`.
///
/// Fails when the multimap has more than `max_competencies` distinct
/// competencies.
pub fn delineate(mm: &FuzzySkillMultimap, max_competencies: usize) -> Result<DelineationResult> {
    let mut witnesses = BTreeMap::new();
    for t in join_test_set(mm, max_competencies)? {
        witnesses.entry(problem_unchecked(mm, &t)).or_insert(t);
    }
    let structure = KnowledgeStructure::new(mm.items().to_vec(), witnesses.keys().cloned())?;
    Ok(DelineationResult { structure, witnesses })
}
