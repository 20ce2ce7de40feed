//! Prolongations, submultimaps, merges of component multimaps and the
//! comparison of a merged structure with its components.
//!
//! Skills and items are identified across components by name. A merged
//! multimap lives on the union of the component skill sets; each component's
//! competencies are extended by zero grades onto that union.
//!
//! Statements quantified over every fuzzy set `T` are decided on finite join
//! closures. For any `X`, `p(X) = p(⋁{C in pool : C ⊆ X})`, and the same holds
//! for every component problem function because component competencies are
//! pool members. The masked and confined conditions below rely on this.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::classify::{ClassificationReport, Criterion, Relation, Witness};
use crate::delineation::{delineate, join_closure, problem_unchecked};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, SkillDomain};
use crate::itemset::ItemSet;
use crate::multimap::FuzzySkillMultimap;
use crate::structure::KnowledgeStructure;

/// Output of [`zero_restrict`].
#[derive(Clone, Debug)]
pub struct Restriction {
    pub multimap: FuzzySkillMultimap,
    /// Competencies with no positive grade left on the kept skills.
    pub zeroed: usize,
    /// Competencies that coincided with an earlier one after restriction.
    pub duplicates: usize,
}

impl Restriction {
    /// The original multimap prolongs the restriction exactly.
    pub fn is_prolongation(&self) -> bool {
        self.zeroed == 0
    }
}

/// Keeps only the grades on `skills`, over a domain of just those skills.
///
/// Competencies that become zero are dropped; an item left without any
/// competency is an error.
pub fn zero_restrict<S: AsRef<str>>(mm: &FuzzySkillMultimap, skills: &[S]) -> Result<Restriction> {
    if skills.is_empty() {
        return Err(Error::EmptySkillDomain);
    }
    let wanted: HashSet<&str> = skills.iter().map(AsRef::as_ref).collect();
    if wanted.len() != skills.len() {
        let dup = skills
            .iter()
            .enumerate()
            .find(|(i, s)| skills[..*i].iter().any(|t| t.as_ref() == s.as_ref()))
            .map(|(_, s)| s.as_ref().to_string())
            .unwrap_or_default();
        return Err(Error::DuplicateSkill(dup));
    }
    for s in &wanted {
        if !mm.domain().contains(s) {
            return Err(Error::UnknownSkill((*s).to_string()));
        }
    }
    let kept: Vec<usize> = (0..mm.domain().len())
        .filter(|&k| wanted.contains(mm.domain().skills()[k].as_str()))
        .collect();
    let domain = Arc::new(SkillDomain::new(kept.iter().map(|&k| mm.domain().skills()[k].clone()))?);
    let (mut zeroed, mut duplicates) = (0, 0);
    let mut mu = Vec::with_capacity(mm.len());
    for (q, fam) in mm.families().iter().enumerate() {
        let mut out: Vec<FuzzySet> = Vec::new();
        for c in fam {
            let r = FuzzySet::from_grades(&domain, kept.iter().map(|&k| c.grades()[k]).collect())?;
            if r.is_zero() {
                zeroed += 1;
            } else if out.contains(&r) {
                duplicates += 1;
            } else {
                out.push(r);
            }
        }
        if out.is_empty() {
            return Err(Error::CollapsedFamily(mm.items()[q].clone()));
        }
        mu.push(out);
    }
    Ok(Restriction {
        multimap: FuzzySkillMultimap::new(mm.items().to_vec(), domain, mu)?,
        zeroed,
        duplicates,
    })
}

/// The items `items` with their families unchanged, in the multimap's order.
pub fn submultimap<S: AsRef<str>>(mm: &FuzzySkillMultimap, items: &[S]) -> Result<FuzzySkillMultimap> {
    if items.is_empty() {
        return Err(Error::EmptyItemSet);
    }
    let mut positions = items
        .iter()
        .map(|q| mm.item_index(q.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    positions.sort_unstable();
    positions.dedup();
    mm.select_items(&positions)
}

/// Re-expresses every competency over `target`, with grade 0 on new skills.
pub fn extend_by_zeros(mm: &FuzzySkillMultimap, target: &Arc<SkillDomain>) -> Result<FuzzySkillMultimap> {
    let mu = mm
        .families()
        .iter()
        .map(|fam| fam.iter().map(|c| c.rebase(target)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FuzzySkillMultimap::new(mm.items().to_vec(), Arc::clone(target), mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MergeMode {
    /// Every part must be a fuzzy skill function.
    #[default]
    Strict,
    /// Arbitrary multimaps are merged as well.
    Permissive,
}

/// One part of a merge, re-expressed over the merged skill domain.
#[derive(Clone, Debug)]
pub struct Component {
    pub items: Vec<String>,
    pub skills: Vec<String>,
    /// Positions of `items` in the merged item list.
    pub positions: Vec<usize>,
    /// The part's families extended by zeros onto the merged domain.
    pub mu: FuzzySkillMultimap,
}

#[derive(Clone, Debug)]
pub struct MergeResult {
    pub merged: FuzzySkillMultimap,
    pub components: Vec<Component>,
    /// Per component, grade 1 on its skills and 0 elsewhere.
    pub masks: Vec<FuzzySet>,
    /// Whether the merged multimap is itself a fuzzy skill function.
    pub is_skill_function: bool,
}

impl MergeResult {
    pub fn items_pairwise_disjoint(&self) -> bool {
        pairwise_disjoint(self.components.iter().map(|c| &c.items))
    }

    pub fn skills_pairwise_disjoint(&self) -> bool {
        pairwise_disjoint(self.components.iter().map(|c| &c.skills))
    }

    pub fn item_set(&self, i: usize) -> ItemSet {
        self.components[i].positions.iter().copied().collect()
    }
}

fn pairwise_disjoint<'a>(sets: impl Iterator<Item = &'a Vec<String>>) -> bool {
    let mut seen = HashSet::new();
    sets.flatten().all(|x| seen.insert(x))
}

fn first_appearance<'a>(names: impl Iterator<Item = &'a String>) -> Vec<String> {
    let mut seen = HashSet::new();
    names.filter(|n| seen.insert(*n)).cloned().collect()
}

/// Unions the zero-extended families of every part, item by item.
pub fn merge(parts: &[FuzzySkillMultimap], mode: MergeMode) -> Result<MergeResult> {
    if parts.is_empty() {
        return Err(Error::EmptyItemSet);
    }
    if mode == MergeMode::Strict {
        for (i, part) in parts.iter().enumerate() {
            if let Some((q, a, b)) = part.comparable_pair() {
                return Err(Error::NotASkillFunction {
                    part: i,
                    item: part.items()[q].clone(),
                    first: a.to_string(),
                    second: b.to_string(),
                });
            }
        }
    }
    let skills = first_appearance(parts.iter().flat_map(|p| p.domain().skills()));
    let domain = Arc::new(SkillDomain::new(skills)?);
    let items = first_appearance(parts.iter().flat_map(|p| p.items()));
    let mut mu: Vec<Vec<FuzzySet>> = vec![Vec::new(); items.len()];
    let mut components = Vec::with_capacity(parts.len());
    let mut masks = Vec::with_capacity(parts.len());
    for part in parts {
        let extended = extend_by_zeros(part, &domain)?;
        let positions: Vec<usize> = part
            .items()
            .iter()
            .map(|q| items.iter().position(|x| x == q).expect("merged items cover every part"))
            .collect();
        for (&pos, fam) in positions.iter().zip(extended.families()) {
            for c in fam {
                if !mu[pos].contains(c) {
                    mu[pos].push(c.clone());
                }
            }
        }
        masks.push(FuzzySet::indicator(&domain, part.domain().skills())?);
        components.push(Component {
            items: part.items().to_vec(),
            skills: part.domain().skills().to_vec(),
            positions,
            mu: extended,
        });
    }
    let merged = FuzzySkillMultimap::new(items, domain, mu)?;
    let is_skill_function = merged.is_fuzzy_skill_function();
    Ok(MergeResult {
        merged,
        components,
        masks,
        is_skill_function,
    })
}

/// `p*_i(T)`: the items of component `i` with a zero-extended competency
/// below `t`, indexed by their positions in the merged item list.
pub fn component_problem_function(mr: &MergeResult, i: usize, t: &FuzzySet) -> Result<ItemSet> {
    let comp = mr
        .components
        .get(i)
        .ok_or_else(|| Error::Precondition(format!("no component {i}")))?;
    if t.domain() != mr.merged.domain() {
        return Err(Error::IncompatibleDomains);
    }
    Ok(component_unchecked(comp, t))
}

fn component_unchecked(comp: &Component, t: &FuzzySet) -> ItemSet {
    problem_unchecked(&comp.mu, t)
        .iter()
        .map(|k| comp.positions[k])
        .collect()
}

/// Outcome of comparing a parent structure with part structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshReport {
    /// The parent's items are exactly the union of the parts' items.
    pub covers: bool,
    /// First part whose structure differs from the parent's trace on it.
    pub first_mismatch: Option<usize>,
}

impl MeshReport {
    pub fn is_mesh(&self) -> bool {
        self.covers && self.first_mismatch.is_none()
    }
}

/// Checks that `parent` covers exactly the parts' items and that its trace
/// on each part's items equals that part.
pub fn mesh_report(parent: &KnowledgeStructure, parts: &[KnowledgeStructure]) -> MeshReport {
    let union: BTreeSet<&String> = parts.iter().flat_map(|p| p.items()).collect();
    let own: BTreeSet<&String> = parent.items().iter().collect();
    let covers = union == own;
    let first_mismatch = parts.iter().position(|part| {
        parent
            .trace_on_names(part.items())
            .map_or(true, |tr| tr.canonical() != part.canonical())
    });
    MeshReport { covers, first_mismatch }
}

pub fn is_mesh(parent: &KnowledgeStructure, parts: &[KnowledgeStructure]) -> bool {
    mesh_report(parent, parts).is_mesh()
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub merge: MergeResult,
    pub parent: KnowledgeStructure,
    pub parts: Vec<KnowledgeStructure>,
    pub mesh: MeshReport,
}

impl ConsistencyReport {
    /// The merged delineation is a mesh of the part delineations.
    pub fn consistent(&self) -> bool {
        self.mesh.is_mesh()
    }
}

/// Delineates the merge and every part and compares them.
pub fn check_consistency(parts: &[FuzzySkillMultimap], mode: MergeMode, max_competencies: usize) -> Result<ConsistencyReport> {
    let merge = merge(parts, mode)?;
    let parent = delineate(&merge.merged, max_competencies)?.structure;
    let part_structures = parts
        .iter()
        .map(|p| delineate(p, max_competencies).map(|d| d.structure))
        .collect::<Result<Vec<_>>>()?;
    let mesh = mesh_report(&parent, &part_structures);
    Ok(ConsistencyReport {
        merge,
        parent,
        parts: part_structures,
        mesh,
    })
}

/// Every part structure and trace needed by the masked and
/// confined reports.
struct Delineated {
    parts: Vec<KnowledgeStructure>,
    traces: Vec<KnowledgeStructure>,
}

fn delineate_all(mr: &MergeResult, max_competencies: usize) -> Result<Delineated> {
    let parent = delineate(&mr.merged, max_competencies)?.structure;
    let parts = mr
        .components
        .iter()
        .map(|c| delineate(&c.mu, max_competencies).map(|d| d.structure))
        .collect::<Result<Vec<_>>>()?;
    let traces = mr
        .components
        .iter()
        .map(|c| parent.trace_on_names(&c.items))
        .collect::<Result<Vec<_>>>()?;
    Ok(Delineated { parts, traces })
}

/// A part state missing from the trace, if any.
fn inclusion_failure(part: &KnowledgeStructure, trace: &KnowledgeStructure) -> Option<Witness> {
    let tr = trace.canonical();
    part.canonical()
        .into_iter()
        .find(|s| !tr.contains(s))
        .map(|s| Witness::State(s.into_iter().collect()))
}

fn equality_failure(part: &KnowledgeStructure, trace: &KnowledgeStructure) -> Option<Witness> {
    inclusion_failure(part, trace).or_else(|| inclusion_failure(trace, part))
}

fn outcome(w: Option<Witness>) -> (bool, Option<Witness>) {
    (w.is_none(), w)
}

/// A merged competency of an item of component `i` that lies under the mask
/// but does not come from the component.
///
/// Only items of the component are examined; an item outside it has no
/// component competencies, so every masked competency of it would count.
pub fn masked_condition_failure(mr: &MergeResult, i: usize) -> Option<Witness> {
    masked_failure_over(mr, i, mr.components[i].positions.iter().copied())
}

/// The same condition quantified over every merged item.
pub fn masked_condition_failure_all_items(mr: &MergeResult, i: usize) -> Option<Witness> {
    masked_failure_over(mr, i, 0..mr.merged.len())
}

fn masked_failure_over(mr: &MergeResult, i: usize, items: impl Iterator<Item = usize>) -> Option<Witness> {
    let comp = &mr.components[i];
    let mask = &mr.masks[i];
    for q in items {
        let own = comp.positions.iter().position(|&p| p == q).map(|k| comp.mu.family(k));
        for c in mr.merged.family(q) {
            if c.leq(mask) && !own.is_some_and(|f| f.contains(c)) {
                return Some(Witness::Competency {
                    item: mr.merged.items()[q].clone(),
                    competency: c.clone(),
                });
            }
        }
    }
    None
}

/// A profile below the mask on which the component and the merge disagree
/// about the component's items.
fn masked_profile_failure(mr: &MergeResult, i: usize, max_competencies: usize) -> Result<Option<Witness>> {
    let mask = &mr.masks[i];
    let below: Vec<FuzzySet> = mr
        .merged
        .competency_pool()
        .into_iter()
        .filter(|c| c.leq(mask))
        .collect();
    let qi = mr.item_set(i);
    let comp = &mr.components[i];
    for t in join_closure(mr.merged.domain(), &below, max_competencies)? {
        if component_unchecked(comp, &t) != problem_unchecked(&mr.merged, &t).intersection(&qi) {
            return Ok(Some(Witness::Profile(t)));
        }
    }
    Ok(None)
}

/// A component item with a merged competency outside the mask.
pub fn confined_condition_failure(mr: &MergeResult, i: usize) -> Option<Witness> {
    let mask = &mr.masks[i];
    mr.components[i].positions.iter().find_map(|&q| {
        mr.merged.family(q).iter().find(|c| !c.leq(mask)).map(|c| Witness::Competency {
            item: mr.merged.items()[q].clone(),
            competency: c.clone(),
        })
    })
}

/// A profile whose masked part solves fewer of the component's items.
fn confined_profile_failure(mr: &MergeResult, i: usize, max_competencies: usize) -> Result<Option<Witness>> {
    let mask = &mr.masks[i];
    let qi = mr.item_set(i);
    for t in join_closure(mr.merged.domain(), &mr.merged.competency_pool(), max_competencies)? {
        let masked = t.meet_unchecked(mask);
        if problem_unchecked(&mr.merged, &masked).intersection(&qi) != problem_unchecked(&mr.merged, &t).intersection(&qi) {
            return Ok(Some(Witness::Profile(t)));
        }
    }
    Ok(None)
}

/// Per component: merged competencies under the mask come from the
/// component, against agreement of the component and merged problem
/// functions under the mask, and the latter against the part structure
/// being included in the trace of the merged structure.
pub fn cond_gg(mr: &MergeResult, max_competencies: usize) -> Result<ClassificationReport> {
    let d = delineate_all(mr, max_competencies)?;
    let mut records = Vec::new();
    for i in 0..mr.components.len() {
        let profile = outcome(masked_profile_failure(mr, i, max_competencies)?);
        records.push(Criterion::new(
            format!("masked.{i}.equivalence"),
            Relation::Equivalent,
            mr.is_skill_function,
            outcome(masked_condition_failure(mr, i)),
            profile.clone(),
        ));
        records.push(Criterion::new(
            format!("masked.{i}.trace-inclusion"),
            Relation::Sufficient,
            true,
            profile,
            outcome(inclusion_failure(&d.parts[i], &d.traces[i])),
        ));
    }
    Ok(ClassificationReport { records })
}

/// Per component: competencies of its items stay inside the mask, against
/// masking profiles not changing which of its items are solved, and the
/// consequences for the part structure and the trace of the merged
/// structure.
pub fn cond_ggg(mr: &MergeResult, max_competencies: usize) -> Result<ClassificationReport> {
    let d = delineate_all(mr, max_competencies)?;
    let mut records = Vec::new();
    for i in 0..mr.components.len() {
        let profile = outcome(confined_profile_failure(mr, i, max_competencies)?);
        let masked = outcome(masked_profile_failure(mr, i, max_competencies)?);
        let equality = outcome(equality_failure(&d.parts[i], &d.traces[i]));
        records.push(Criterion::new(
            format!("confined.{i}.equivalence"),
            Relation::Equivalent,
            mr.is_skill_function,
            outcome(confined_condition_failure(mr, i)),
            profile.clone(),
        ));
        records.push(Criterion::new(
            format!("confined.{i}.trace-equality"),
            Relation::Sufficient,
            true,
            profile.clone(),
            equality.clone(),
        ));
        let both = if !masked.0 { masked } else { profile };
        records.push(Criterion::new(
            format!("confined.{i}.with-masked-trace-equality"),
            Relation::Sufficient,
            true,
            both,
            equality,
        ));
    }
    Ok(ClassificationReport { records })
}
