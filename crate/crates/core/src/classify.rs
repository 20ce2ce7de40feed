//! Multimap-side criteria for structural properties of the delineated
//! structure, each reported next to the property decided on the structure
//! itself.
//!
//! A [`Criterion`] pairs a condition computed from the multimap (`holds`)
//! with a value computed from the delineated structure (`oracle`). For an
//! [`Relation::Equivalent`] criterion the two must agree; for a
//! [`Relation::Sufficient`] one a true condition must come with a true
//! oracle. When a criterion's standing hypothesis fails, `holds` is `None`
//! and nothing is claimed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::delineation::{problem_unchecked, DelineationResult};
use crate::error::{Error, Result};
use crate::fuzzy::FuzzySet;
use crate::itemset::ItemSet;
use crate::multimap::FuzzySkillMultimap;
use crate::structure::KnowledgeStructure;

/// `U ≼ V`: every member of `u` contains some member of `v`.
///
/// Sets over different skill domains are never below one another.
pub fn refines(u: &[FuzzySet], v: &[FuzzySet]) -> bool {
    u.iter().all(|a| v.iter().any(|b| b.subseteq(a).unwrap_or(false)))
}

fn same_family(a: &[FuzzySet], b: &[FuzzySet]) -> bool {
    a.iter().all(|c| b.contains(c)) && b.iter().all(|c| a.contains(c))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |q| (q + 1..n).map(move |r| (q, r)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equivalent,
    Sufficient,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equivalent => "iff",
            Relation::Sufficient => "implies",
        })
    }
}

/// Evidence attached to a failed condition or oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Item(String),
    ItemPair(String, String),
    Competency { item: String, competency: FuzzySet },
    CompetencyPair { item: String, first: FuzzySet, second: FuzzySet },
    Subfamily { item: String, family: Vec<FuzzySet> },
    Profile(FuzzySet),
    State(Vec<String>),
    StatePair(Vec<String>, Vec<String>),
    Component(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[String]| format!("{{{}}}", v.join(","));
        let fam = |v: &[FuzzySet]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        match self {
            Witness::Item(q) => write!(f, "item {q}"),
            Witness::ItemPair(q, r) => write!(f, "items {q},{r}"),
            Witness::Competency { item, competency } => write!(f, "item {item} competency {competency}"),
            Witness::CompetencyPair { item, first, second } => write!(f, "item {item} competencies {first} {second}"),
            Witness::Subfamily { item, family } => write!(f, "item {item} subfamily [{}]", fam(family)),
            Witness::Profile(t) => write!(f, "profile {t}"),
            Witness::State(s) => write!(f, "state {}", set(s)),
            Witness::StatePair(a, b) => write!(f, "states {} {}", set(a), set(b)),
            Witness::Component(i) => write!(f, "component {i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub id: String,
    pub relation: Relation,
    pub hypothesis_met: bool,
    /// The multimap-side condition; `None` when the hypothesis fails.
    pub holds: Option<bool>,
    pub oracle: bool,
    pub witness: Option<Witness>,
}

impl Criterion {
    /// Builds a record, attaching the condition's counterexample when the
    /// condition fails and the oracle's when only the oracle fails.
    pub fn new(
        id: impl Into<String>,
        relation: Relation,
        hypothesis_met: bool,
        condition: (bool, Option<Witness>),
        oracle: (bool, Option<Witness>),
    ) -> Self {
        let holds = hypothesis_met.then_some(condition.0);
        let witness = if !condition.0 {
            condition.1
        } else if !oracle.0 {
            oracle.1
        } else {
            None
        };
        Criterion {
            id: id.into(),
            relation,
            hypothesis_met,
            holds,
            oracle: oracle.0,
            witness,
        }
    }

    pub fn consistent(&self) -> bool {
        match (self.relation, self.holds) {
            (_, None) => true,
            (Relation::Equivalent, Some(h)) => h == self.oracle,
            (Relation::Sufficient, Some(h)) => !h || self.oracle,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassificationReport {
    pub records: Vec<Criterion>,
}

impl ClassificationReport {
    pub fn get(&self, id: &str) -> Option<&Criterion> {
        self.records.iter().find(|c| c.id == id)
    }

    /// Records whose condition and oracle contradict their relation.
    pub fn violations(&self) -> Vec<&Criterion> {
        self.records.iter().filter(|c| !c.consistent()).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.records.iter().all(Criterion::consistent)
    }

    pub fn extend(&mut self, other: ClassificationReport) {
        self.records.extend(other.records);
    }
}

fn competency_witness(mm: &FuzzySkillMultimap, q: usize, c: &FuzzySet) -> Witness {
    Witness::Competency {
        item: mm.items()[q].clone(),
        competency: c.clone(),
    }
}

fn pair_witness(items: &[String], (q, r): (usize, usize)) -> Witness {
    Witness::ItemPair(items[q].clone(), items[r].clone())
}

fn outcome(w: Option<Witness>) -> (bool, Option<Witness>) {
    (w.is_none(), w)
}

/// A competency with no molecule of its own family below it.
pub fn molecule_below_failure(mm: &FuzzySkillMultimap) -> Option<Witness> {
    for (q, fam) in mm.families().iter().enumerate() {
        for c in fam {
            if !fam.iter().any(|m| m.is_molecule() && m.leq(c)) {
                return Some(competency_witness(mm, q, c));
            }
        }
    }
    None
}

/// Every competency lies above a molecule competency of the same item.
pub fn cond_ks_molecule(mm: &FuzzySkillMultimap) -> bool {
    molecule_below_failure(mm).is_none()
}

/// Union closure of a family of item sets, including the empty union.
fn union_closure(base: &[ItemSet]) -> BTreeSet<ItemSet> {
    let mut out: BTreeSet<ItemSet> = BTreeSet::from([ItemSet::empty()]);
    let mut frontier = vec![ItemSet::empty()];
    while let Some(x) = frontier.pop() {
        for b in base {
            let u = x.union(b);
            if out.insert(u.clone()) {
                frontier.push(u);
            }
        }
    }
    out
}

/// A state that is not a union of images of minimal competencies, or such a
/// union that is not a state.
pub fn union_base_failure(mm: &FuzzySkillMultimap, ks: &KnowledgeStructure) -> Option<Witness> {
    let base: Vec<ItemSet> = mm
        .minimal_competencies()
        .pool()
        .iter()
        .map(|d| problem_unchecked(mm, d))
        .collect();
    for k in ks.states() {
        let cover = base
            .iter()
            .filter(|b| b.is_subset(k))
            .fold(ItemSet::empty(), |acc, b| acc.union(b));
        if cover != *k {
            return Some(Witness::State(ks.names(k)));
        }
    }
    union_closure(&base)
        .into_iter()
        .find(|u| !ks.contains(u))
        .map(|u| Witness::State(ks.names(&u)))
}

/// The states are exactly the unions of images of minimal competencies.
pub fn cond_union_base(mm: &FuzzySkillMultimap, ks: &KnowledgeStructure) -> bool {
    union_base_failure(mm, ks).is_none()
}

/// An item `g` and the subfamily of minimal competencies lying above none of
/// `g`'s minimal competencies whose join nevertheless lies above one.
///
/// Checking the largest such subfamily suffices: joins are monotone, so any
/// smaller subfamily has a smaller join.
pub fn star_failure(mm: &FuzzySkillMultimap) -> Option<Witness> {
    let minimal = mm.minimal_competencies();
    let pool = minimal.pool();
    let zero = FuzzySet::zero(mm.domain());
    for (g, own) in minimal.per_item.iter().enumerate() {
        let free: Vec<FuzzySet> = pool
            .iter()
            .filter(|d| !own.iter().any(|c| c.leq(d)))
            .cloned()
            .collect();
        let join = free.iter().fold(zero.clone(), |acc, d| acc.join_unchecked(d));
        if own.iter().any(|c| c.leq(&join)) {
            return Some(Witness::Subfamily {
                item: mm.items()[g].clone(),
                family: free,
            });
        }
    }
    None
}

pub fn cond_star(mm: &FuzzySkillMultimap) -> bool {
    star_failure(mm).is_none()
}

/// Two competencies of one item with no competency of that item below their meet.
pub fn scs_meet_failure(mm: &FuzzySkillMultimap) -> Option<Witness> {
    for (q, fam) in mm.families().iter().enumerate() {
        for (i, a) in fam.iter().enumerate() {
            for b in &fam[i + 1..] {
                let m = a.meet_unchecked(b);
                if !fam.iter().any(|c| c.leq(&m)) {
                    return Some(Witness::CompetencyPair {
                        item: mm.items()[q].clone(),
                        first: a.clone(),
                        second: b.clone(),
                    });
                }
            }
        }
    }
    None
}

pub fn cond_scs_meet(mm: &FuzzySkillMultimap) -> bool {
    scs_meet_failure(mm).is_none()
}

/// An item whose family has no molecule as its minimum.
pub fn molecule_minimum_failure(mm: &FuzzySkillMultimap) -> Option<Witness> {
    (0..mm.len())
        .find(|&q| !mm.global_minimum(q).is_some_and(|m| m.is_molecule()))
        .map(|q| Witness::Item(mm.items()[q].clone()))
}

/// Every family has a minimum and that minimum is a molecule.
pub fn cond_molecule_minimum(mm: &FuzzySkillMultimap) -> bool {
    molecule_minimum_failure(mm).is_none()
}

/// Whether some item of `[t]` can be dropped by a union of images of
/// molecule competencies lying inside `[t]`.
fn peelable(image: &ItemSet, images: &[ItemSet]) -> bool {
    image.iter().any(|x| {
        let rest = image.without(x);
        let cover = images
            .iter()
            .filter(|b| b.is_subset(&rest))
            .fold(ItemSet::empty(), |acc, b| acc.union(b));
        cover == rest
    })
}

/// First failure of the molecule conditions for a learning space: a
/// competency above no molecule of its family, or a molecule competency
/// whose image cannot be peeled by one item.
pub fn learning_space_failure(mm: &FuzzySkillMultimap) -> Option<Witness> {
    if let Some(w) = molecule_below_failure(mm) {
        return Some(w);
    }
    let molecules = mm.molecules_of();
    let images: Vec<ItemSet> = molecules.iter().map(|t| problem_unchecked(mm, t)).collect();
    molecules
        .iter()
        .zip(&images)
        .find(|(_, img)| img.len() >= 2 && !peelable(img, &images))
        .map(|(t, _)| Witness::Profile(t.clone()))
}

pub fn cond_learning_space(mm: &FuzzySkillMultimap) -> bool {
    learning_space_failure(mm).is_none()
}

fn pair_of(ks: &KnowledgeStructure, p: Option<(ItemSet, ItemSet)>) -> Option<Witness> {
    p.map(|(a, b)| Witness::StatePair(ks.names(&a), ks.names(&b)))
}

/// The structural criteria: knowledge space, closure space, quasi-ordinal
/// space and learning space.
pub fn classify(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    let ks = &dr.structure;
    let union_gap = pair_of(ks, ks.first_union_gap());
    let meet_gap = pair_of(ks, ks.first_intersection_gap());
    let union = (union_gap.is_none(), union_gap.clone());
    let meet = (meet_gap.is_none(), meet_gap.clone());
    let quasi = (union.0 && meet.0, union_gap.clone().or(meet_gap));
    let ungraded = pair_of(ks, ks.first_ungraded_pair());
    let learning = (union.0 && ungraded.is_none(), union_gap.or(ungraded));
    ClassificationReport {
        records: vec![
            Criterion::new(
                "knowledge-space/molecule-below",
                Relation::Sufficient,
                true,
                outcome(molecule_below_failure(mm)),
                union.clone(),
            ),
            Criterion::new(
                "knowledge-space/union-base",
                Relation::Equivalent,
                true,
                outcome(union_base_failure(mm, ks)),
                union.clone(),
            ),
            Criterion::new(
                "knowledge-space/star",
                Relation::Sufficient,
                true,
                outcome(star_failure(mm)),
                union,
            ),
            Criterion::new(
                "closure-space/meet",
                Relation::Sufficient,
                true,
                outcome(scs_meet_failure(mm)),
                meet,
            ),
            Criterion::new(
                "quasi-ordinal/molecule-minimum",
                Relation::Sufficient,
                true,
                outcome(molecule_minimum_failure(mm)),
                quasi,
            ),
            Criterion::new(
                "learning-space/molecules",
                Relation::Sufficient,
                true,
                outcome(learning_space_failure(mm)),
                learning,
            ),
        ],
    }
}

fn disc_oracle(ks: &KnowledgeStructure) -> (bool, Option<Witness>) {
    let w = ks.first_indiscriminate_pair().map(|p| pair_witness(ks.items(), p));
    (w.is_none(), w)
}

fn bidisc_oracle(ks: &KnowledgeStructure) -> (bool, Option<Witness>) {
    let w = ks.first_non_bi_discriminated_pair().map(|p| pair_witness(ks.items(), p));
    (w.is_none(), w)
}

/// `(true, None)` when `ok` holds for every item pair, else the first failure.
fn all_pairs(items: &[String], ok: impl Fn(usize, usize) -> bool) -> (bool, Option<Witness>) {
    let w = pairs(items.len()).find(|&(q, r)| !ok(q, r)).map(|p| pair_witness(items, p));
    (w.is_none(), w)
}

/// Discriminativeness through refinement and equality of families.
pub fn discriminative_by_refinement(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    let mu = mm.families();
    let items = mm.items();
    let refinement = all_pairs(items, |q, r| !refines(&mu[r], &mu[q]) || !refines(&mu[q], &mu[r]));
    let not_nested = all_pairs(items, |q, r| {
        let r_in_q = mu[r].iter().all(|c| mu[q].contains(c));
        let q_in_r = mu[q].iter().all(|c| mu[r].contains(c));
        !r_in_q || !q_in_r
    });
    let distinct = all_pairs(items, |q, r| !same_family(&mu[q], &mu[r]));
    let disc = disc_oracle(&dr.structure);
    let fsf = mm.is_fuzzy_skill_function();
    ClassificationReport {
        records: vec![
            Criterion::new(
                "discriminative/refinement",
                Relation::Equivalent,
                true,
                refinement.clone(),
                disc.clone(),
            ),
            Criterion::new(
                "discriminative/refinement-implies-not-nested",
                Relation::Sufficient,
                true,
                refinement,
                not_nested.clone(),
            ),
            Criterion::new(
                "discriminative/not-nested-iff-distinct",
                Relation::Equivalent,
                true,
                not_nested,
                distinct.clone(),
            ),
            Criterion::new(
                "discriminative/distinct-families-on-skill-functions",
                Relation::Equivalent,
                fsf,
                distinct,
                disc,
            ),
        ],
    }
}

/// Per item, the set `{M_{q,C} : C ∈ μ(q)}` of minima below each competency,
/// or `None` if some competency has no unique minimum below it.
pub fn minima_below(mm: &FuzzySkillMultimap) -> Option<Vec<Vec<FuzzySet>>> {
    (0..mm.len())
        .map(|q| {
            let mut out: Vec<FuzzySet> = Vec::new();
            for c in mm.family(q) {
                let m = mm.min_below(q, c).expect("competency of its own family")?;
                if !out.contains(&m) {
                    out.push(m);
                }
            }
            Some(out)
        })
        .collect()
}

fn minima_report(
    mm: &FuzzySkillMultimap,
    dr: &DelineationResult,
    prefix: &str,
    both_sides: bool,
) -> ClassificationReport {
    let minima = minima_below(mm);
    let met = minima.is_some();
    let m = minima.unwrap_or_else(|| vec![Vec::new(); mm.len()]);
    let items = mm.items();
    // One side of a pair: some minimum of `q` is absent from, or refines
    // nothing of, the minima of `r`.
    let escapes = |q: usize, r: usize| m[q].iter().any(|x| !m[r].contains(x));
    let unrefined = |q: usize, r: usize| m[q].iter().any(|x| !m[r].iter().any(|y| y.leq(x)));
    let combine = |a: bool, b: bool| if both_sides { a && b } else { a || b };
    let distinct = all_pairs(items, |q, r| combine(escapes(q, r), escapes(r, q)));
    let refinement = all_pairs(items, |q, r| combine(unrefined(q, r), unrefined(r, q)));
    let oracle = if both_sides {
        bidisc_oracle(&dr.structure)
    } else {
        disc_oracle(&dr.structure)
    };
    ClassificationReport {
        records: vec![
            Criterion::new(
                format!("{prefix}/minima-distinct"),
                Relation::Equivalent,
                met,
                distinct,
                oracle.clone(),
            ),
            Criterion::new(
                format!("{prefix}/minima-refinement"),
                Relation::Equivalent,
                met,
                refinement,
                oracle,
            ),
        ],
    }
}

/// Discriminativeness through the minima below each competency.
pub fn discriminative_by_minima(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    minima_report(mm, dr, "discriminative", false)
}

/// Bi-discriminativeness through the minima below each competency.
pub fn bi_discriminative_by_minima(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    minima_report(mm, dr, "bi-discriminative", true)
}

/// Bi-discriminativeness through refinement in both directions.
pub fn bi_discriminative_by_refinement(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    let mu = mm.families();
    let condition = all_pairs(mm.items(), |q, r| !refines(&mu[q], &mu[r]) && !refines(&mu[r], &mu[q]));
    ClassificationReport {
        records: vec![Criterion::new(
            "bi-discriminative/refinement",
            Relation::Equivalent,
            true,
            condition,
            bidisc_oracle(&dr.structure),
        )],
    }
}

/// When every family has a minimum `M_q`: compares discriminative,
/// bi-discriminative, pairwise distinct minima and pairwise incomparable
/// minima, two at a time.
pub fn separation_by_global_minima(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    let minima: Option<Vec<FuzzySet>> = (0..mm.len()).map(|q| mm.global_minimum(q)).collect();
    let met = minima.is_some();
    let m = minima.unwrap_or_default();
    let items = mm.items();
    let disc = disc_oracle(&dr.structure);
    let bidisc = bidisc_oracle(&dr.structure);
    let (distinct, incomparable) = if met {
        (
            all_pairs(items, |q, r| m[q] != m[r]),
            all_pairs(items, |q, r| !m[q].leq(&m[r]) && !m[r].leq(&m[q])),
        )
    } else {
        ((false, None), (false, None))
    };
    let rec = |id: &str, a: &(bool, Option<Witness>), b: &(bool, Option<Witness>)| {
        Criterion::new(format!("global-minimum/{id}"), Relation::Equivalent, met, a.clone(), b.clone())
    };
    ClassificationReport {
        records: vec![
            rec("distinct-iff-discriminative", &distinct, &disc),
            rec("incomparable-iff-bi-discriminative", &incomparable, &bidisc),
            rec("discriminative-iff-bi-discriminative", &disc, &bidisc),
            rec("distinct-iff-incomparable", &distinct, &incomparable),
            rec("incomparable-iff-discriminative", &incomparable, &disc),
            rec("distinct-iff-bi-discriminative", &distinct, &bidisc),
        ],
    }
}

/// Every separability criterion in one report.
pub fn separability(mm: &FuzzySkillMultimap, dr: &DelineationResult) -> ClassificationReport {
    let mut report = discriminative_by_refinement(mm, dr);
    report.extend(discriminative_by_minima(mm, dr));
    report.extend(bi_discriminative_by_minima(mm, dr));
    report.extend(bi_discriminative_by_refinement(mm, dr));
    report.extend(separation_by_global_minima(mm, dr));
    report
}

fn fringe_preconditions(mm: &FuzzySkillMultimap, dr: &DelineationResult, k: &ItemSet) -> Result<()> {
    if !cond_ks_molecule(mm) {
        return Err(Error::Precondition(
            "fringe witnesses need a molecule competency below every competency".into(),
        ));
    }
    if !dr.structure.contains(k) {
        return Err(Error::NotAState(format!("{:?}", dr.structure.names(k))));
    }
    Ok(())
}

/// A molecule competency `T` of item `q` with `[T] \ K = {q}`; one exists
/// exactly when `q` is in the outer fringe of `K`.
pub fn outer_fringe_witness(
    mm: &FuzzySkillMultimap,
    dr: &DelineationResult,
    k: &ItemSet,
    q: usize,
) -> Result<Option<FuzzySet>> {
    fringe_preconditions(mm, dr, k)?;
    if k.contains(q) {
        return Err(Error::Precondition(format!("item {} already belongs to the state", mm.items()[q])));
    }
    let target = ItemSet::singleton(q);
    Ok(mm
        .family(q)
        .iter()
        .find(|t| t.is_molecule() && problem_unchecked(mm, t).difference(k) == target)
        .cloned())
}

/// For each item `q` of `K \ {r}`, a molecule competency `T_q` with
/// `[T_q] ⊆ K \ {r}`; such witnesses exist exactly when `r` is in the inner
/// fringe of `K`.
pub fn inner_fringe_witness(
    mm: &FuzzySkillMultimap,
    dr: &DelineationResult,
    k: &ItemSet,
    r: usize,
) -> Result<Option<BTreeMap<String, FuzzySet>>> {
    fringe_preconditions(mm, dr, k)?;
    if !k.contains(r) {
        return Err(Error::Precondition(format!("item {} is not in the state", mm.items()[r])));
    }
    let rest = k.without(r);
    let mut out = BTreeMap::new();
    for q in rest.iter() {
        let found = mm
            .family(q)
            .iter()
            .find(|t| t.is_molecule() && problem_unchecked(mm, t).is_subset(&rest));
        match found {
            Some(t) => {
                out.insert(mm.items()[q].clone(), t.clone());
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}
