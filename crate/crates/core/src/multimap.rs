//! Fuzzy skill multimaps: items, a skill domain, and for every item a
//! finite family of non-zero competencies.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzySet, SkillDomain};

/// One reason a candidate multimap is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoItems,
    DuplicateItem(String),
    EmptyFamily(String),
    ZeroCompetency(String),
    DomainMismatch(String),
    DuplicateCompetency { item: String, competency: String },
    FamilyCountMismatch { items: usize, families: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoItems => write!(f, "no items"),
            Violation::DuplicateItem(q) => write!(f, "duplicate item {q}"),
            Violation::EmptyFamily(q) => write!(f, "empty competency family at {q}"),
            Violation::ZeroCompetency(q) => write!(f, "zero competency at {q}"),
            Violation::DomainMismatch(q) => write!(f, "competency of {q} uses an incompatible skill domain"),
            Violation::DuplicateCompetency { item, competency } => {
                write!(f, "duplicate competency {competency} at {item}")
            }
            Violation::FamilyCountMismatch { items, families } => {
                write!(f, "{items} items but {families} competency families")
            }
        }
    }
}

/// Checks every multimap invariant and returns all violations found.
pub fn validate(items: &[String], domain: &SkillDomain, mu: &[Vec<FuzzySet>]) -> Vec<Violation> {
    let mut out = Vec::new();
    if items.is_empty() {
        out.push(Violation::NoItems);
    }
    for (i, q) in items.iter().enumerate() {
        if items[..i].contains(q) {
            out.push(Violation::DuplicateItem(q.clone()));
        }
    }
    if items.len() != mu.len() {
        out.push(Violation::FamilyCountMismatch {
            items: items.len(),
            families: mu.len(),
        });
        return out;
    }
    for (q, family) in items.iter().zip(mu) {
        if family.is_empty() {
            out.push(Violation::EmptyFamily(q.clone()));
        }
        for (k, c) in family.iter().enumerate() {
            if c.domain().as_ref() != domain {
                out.push(Violation::DomainMismatch(q.clone()));
                continue;
            }
            if c.is_zero() {
                out.push(Violation::ZeroCompetency(q.clone()));
            }
            if family[..k].contains(c) {
                out.push(Violation::DuplicateCompetency {
                    item: q.clone(),
                    competency: c.to_string(),
                });
            }
        }
    }
    out
}

/// A validated fuzzy skill multimap `(Q, S, mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzySkillMultimap {
    items: Vec<String>,
    domain: Arc<SkillDomain>,
    mu: Vec<Vec<FuzzySet>>,
}

/// Per item, the inclusion-minimal competencies of its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSelection {
    pub per_item: Vec<Vec<FuzzySet>>,
}

impl MinimalSelection {
    /// Union of all items' minimal competencies, deduplicated, in item order.
    pub fn pool(&self) -> Vec<FuzzySet> {
        let mut pool: Vec<FuzzySet> = Vec::new();
        for c in self.per_item.iter().flatten() {
            if !pool.contains(c) {
                pool.push(c.clone());
            }
        }
        pool
    }
}

impl FuzzySkillMultimap {
    pub fn new(items: Vec<String>, domain: Arc<SkillDomain>, mu: Vec<Vec<FuzzySet>>) -> Result<Self> {
        let violations = validate(&items, &domain, &mu);
        if !violations.is_empty() {
            return Err(Error::InvalidMultimap(violations));
        }
        // Share one domain allocation across all competencies.
        let mu = mu
            .into_iter()
            .map(|fam| {
                fam.into_iter()
                    .map(|c| FuzzySet::from_grades(&domain, c.grades().to_vec()).expect("validated domain"))
                    .collect()
            })
            .collect();
        Ok(FuzzySkillMultimap { items, domain, mu })
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn domain(&self) -> &Arc<SkillDomain> {
        &self.domain
    }

    pub fn item_index(&self, item: &str) -> Result<usize> {
        self.items
            .iter()
            .position(|q| q == item)
            .ok_or_else(|| Error::UnknownItem(item.to_string()))
    }

    pub fn family(&self, q: usize) -> &[FuzzySet] {
        &self.mu[q]
    }

    pub fn family_of(&self, item: &str) -> Result<&[FuzzySet]> {
        Ok(self.family(self.item_index(item)?))
    }

    pub fn families(&self) -> &[Vec<FuzzySet>] {
        &self.mu
    }

    /// All distinct competencies, in item then declaration order.
    pub fn competency_pool(&self) -> Vec<FuzzySet> {
        let mut pool: Vec<FuzzySet> = Vec::new();
        for c in self.mu.iter().flatten() {
            if !pool.contains(c) {
                pool.push(c.clone());
            }
        }
        pool
    }

    /// An item with two distinct comparable competencies, if any.
    pub fn comparable_pair(&self) -> Option<(usize, FuzzySet, FuzzySet)> {
        for (q, fam) in self.mu.iter().enumerate() {
            for (i, a) in fam.iter().enumerate() {
                for b in &fam[i + 1..] {
                    if a.leq(b) {
                        return Some((q, a.clone(), b.clone()));
                    }
                    if b.leq(a) {
                        return Some((q, b.clone(), a.clone()));
                    }
                }
            }
        }
        None
    }

    /// Every family is an antichain under inclusion.
    pub fn is_fuzzy_skill_function(&self) -> bool {
        self.comparable_pair().is_none()
    }

    pub fn is_disjunctive(&self) -> bool {
        self.mu.iter().flatten().all(FuzzySet::is_molecule)
    }

    pub fn is_conjunctive(&self) -> bool {
        self.mu.iter().all(|fam| fam.len() == 1)
    }

    pub fn minimal_competencies(&self) -> MinimalSelection {
        MinimalSelection {
            per_item: self.mu.iter().map(|fam| minimal_elements(fam)).collect(),
        }
    }

    /// The unique inclusion-minimum of `{D in mu(q) : D ⊆ c}`, if there is one.
    pub fn min_below(&self, q: usize, c: &FuzzySet) -> Result<Option<FuzzySet>> {
        let fam = &self.mu[q];
        if !fam.contains(c) {
            return Err(Error::NotACompetency {
                item: self.items[q].clone(),
                competency: c.to_string(),
            });
        }
        let below: Vec<&FuzzySet> = fam.iter().filter(|d| d.leq(c)).collect();
        Ok(below
            .iter()
            .find(|m| below.iter().all(|d| m.leq(d)))
            .map(|m| (*m).clone()))
    }

    /// The minimum of the whole family `mu(q)`, if it has one.
    pub fn global_minimum(&self, q: usize) -> Option<FuzzySet> {
        let fam = &self.mu[q];
        fam.iter().find(|m| fam.iter().all(|d| m.leq(d))).cloned()
    }

    /// The molecules occurring as competencies of any item, deduplicated.
    pub fn molecules_of(&self) -> Vec<FuzzySet> {
        self.competency_pool().into_iter().filter(FuzzySet::is_molecule).collect()
    }

    /// Rebuilds the multimap keeping only the items at `positions`.
    pub(crate) fn select_items(&self, positions: &[usize]) -> Result<Self> {
        FuzzySkillMultimap::new(
            positions.iter().map(|&p| self.items[p].clone()).collect(),
            Arc::clone(&self.domain),
            positions.iter().map(|&p| self.mu[p].clone()).collect(),
        )
    }
}

/// Inclusion-minimal members of a family, in declaration order.
pub fn minimal_elements(family: &[FuzzySet]) -> Vec<FuzzySet> {
    family
        .iter()
        .filter(|c| !family.iter().any(|d| d != *c && d.leq(c)))
        .cloned()
        .collect()
}

/// Convenience construction from string grades, mostly for fixtures.
///
/// ```
/// use kst_core::multimap::MultimapBuilder;
/// let mm = MultimapBuilder::new(["s1", "s2"])
///     .competency("a", &[("s1", "0.2")])
///     .competency("b", &[("s1", "0.3"), ("s2", "0.7")])
///     .build()
///     .unwrap();
/// assert!(mm.is_conjunctive());
/// ```
pub struct MultimapBuilder {
    domain: Result<Arc<SkillDomain>>,
    items: Vec<String>,
    mu: Vec<Vec<FuzzySet>>,
    error: Option<Error>,
}

impl MultimapBuilder {
    pub fn new<I, S>(skills: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        MultimapBuilder {
            domain: SkillDomain::new(skills).map(Arc::new),
            items: Vec::new(),
            mu: Vec::new(),
            error: None,
        }
    }

    fn slot(&mut self, item: &str) -> usize {
        match self.items.iter().position(|q| q == item) {
            Some(i) => i,
            None => {
                self.items.push(item.to_string());
                self.mu.push(Vec::new());
                self.items.len() - 1
            }
        }
    }

    /// Declares an item without competencies yet (keeps declaration order).
    pub fn item(mut self, item: &str) -> Self {
        self.slot(item);
        self
    }

    pub fn competency(mut self, item: &str, grades: &[(&str, &str)]) -> Self {
        let idx = self.slot(item);
        if self.error.is_some() {
            return self;
        }
        match &self.domain {
            Ok(d) => match FuzzySet::parse_pairs(d, grades) {
                Ok(c) => self.mu[idx].push(c),
                Err(e) => self.error = Some(e),
            },
            Err(_) => {}
        }
        self
    }

    pub fn build(self) -> Result<FuzzySkillMultimap> {
        let domain = self.domain?;
        if let Some(e) = self.error {
            return Err(e);
        }
        FuzzySkillMultimap::new(self.items, domain, self.mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fs(mm: &FuzzySkillMultimap, pairs: &[(&str, &str)]) -> FuzzySet {
        FuzzySet::parse_pairs(mm.domain(), pairs).unwrap()
    }

    #[test]
    fn validate_accepts_fixture() {
        let mm = fixtures::f_scs();
        assert!(validate(mm.items(), mm.domain(), mm.families()).is_empty());
    }

    #[test]
    fn validate_reports_empty_family() {
        let mm = fixtures::f_scs();
        let mut mu = mm.families().to_vec();
        mu[2].clear();
        let v = validate(mm.items(), mm.domain(), &mu);
        assert_eq!(v, vec![Violation::EmptyFamily("q3".into())]);
        assert_eq!(v[0].to_string(), "empty competency family at q3");
    }

    #[test]
    fn validate_reports_zero_competency() {
        let mm = fixtures::f_scs();
        let mut mu = mm.families().to_vec();
        mu[0].push(FuzzySet::zero(mm.domain()));
        let v = validate(mm.items(), mm.domain(), &mu);
        assert_eq!(v, vec![Violation::ZeroCompetency("q1".into())]);
        assert!(v[0].to_string().contains("zero competency"));
    }

    #[test]
    fn validate_reports_several_violations() {
        let mm = fixtures::f_scs();
        let mut mu = mm.families().to_vec();
        mu[1].clear();
        let dup = mu[0][0].clone();
        mu[0].push(dup);
        let items = vec!["q1".to_string(), "q1".to_string(), "q3".to_string()];
        let v = validate(&items, mm.domain(), &mu);
        assert_eq!(v.len(), 3, "{v:?}");
        let other = Arc::new(SkillDomain::new(["x"]).unwrap());
        mu[1].push(FuzzySet::ones(&other));
        assert!(validate(mm.items(), mm.domain(), &mu).contains(&Violation::DomainMismatch("q2".into())));
    }

    #[test]
    fn skill_function_checks() {
        assert!(fixtures::f_14().is_fuzzy_skill_function());
        // q1's two competencies differ in opposite directions on s1 and s2.
        assert!(fixtures::f_scs().is_fuzzy_skill_function());
        let mm = MultimapBuilder::new(["s1", "s2"])
            .competency("q", &[("s1", "0.2")])
            .competency("q", &[("s1", "0.2"), ("s2", "0.5")])
            .build()
            .unwrap();
        assert!(!mm.is_fuzzy_skill_function());
        assert_eq!(mm.comparable_pair().unwrap().0, 0);
    }

    #[test]
    fn disjunctive_and_conjunctive() {
        assert!(fixtures::f_disj().is_disjunctive());
        assert!(!fixtures::f_scs().is_disjunctive());
        assert!(fixtures::f_inj().is_disjunctive());
        assert!(fixtures::f_14().is_conjunctive());
        assert!(!fixtures::f_scs().is_conjunctive());
        assert!(fixtures::f_ex1().is_conjunctive());
    }

    #[test]
    fn minimal_competency_examples() {
        let nd = fixtures::f_nd();
        let sel = nd.minimal_competencies();
        assert_eq!(sel.per_item[0], vec![fs(&nd, &[("s1", "0.3")]), fs(&nd, &[("s2", "0.4")])]);
        let f14 = fixtures::f_14();
        assert_eq!(f14.minimal_competencies().per_item[0], vec![fs(&f14, &[("s1", "0.2")])]);
        let disj = fixtures::f_disj();
        assert_eq!(
            disj.minimal_competencies().per_item[1],
            vec![fs(&disj, &[("s1", "0.1")]), fs(&disj, &[("s2", "0.7")])]
        );
    }

    #[test]
    fn min_below_examples() {
        let nd = fixtures::f_nd();
        let c = fs(&nd, &[("s2", "0.7"), ("s3", "0.4")]);
        assert_eq!(nd.min_below(0, &c).unwrap(), Some(fs(&nd, &[("s2", "0.4")])));
        let f14 = fixtures::f_14();
        let a = fs(&f14, &[("s1", "0.2")]);
        assert_eq!(f14.min_below(0, &a).unwrap(), Some(a));
        let mm = MultimapBuilder::new(["s1", "s2"])
            .competency("q", &[("s1", "0.2")])
            .competency("q", &[("s2", "0.3")])
            .competency("q", &[("s1", "0.2"), ("s2", "0.3")])
            .build()
            .unwrap();
        let top = fs(&mm, &[("s1", "0.2"), ("s2", "0.3")]);
        assert_eq!(mm.min_below(0, &top).unwrap(), None);
        assert!(matches!(
            mm.min_below(0, &fs(&mm, &[("s1", "0.9")])),
            Err(Error::NotACompetency { .. })
        ));
    }

    #[test]
    fn molecules_of_examples() {
        let scs = fixtures::f_scs();
        assert_eq!(scs.molecules_of(), vec![fs(&scs, &[("s1", "0.2")]), fs(&scs, &[("s1", "0.4")])]);
        assert!(fixtures::f_ex1().molecules_of().is_empty());
        let disj = fixtures::f_disj();
        assert_eq!(
            disj.molecules_of(),
            vec![fs(&disj, &[("s1", "0.2")]), fs(&disj, &[("s1", "0.1")]), fs(&disj, &[("s2", "0.7")])]
        );
    }

    #[test]
    fn builder_surfaces_errors() {
        assert!(matches!(
            MultimapBuilder::new(["s1"]).competency("a", &[("s9", "0.1")]).build(),
            Err(Error::UnknownSkill(_))
        ));
        assert!(matches!(
            MultimapBuilder::new(["s1"]).item("a").build(),
            Err(Error::InvalidMultimap(_))
        ));
    }
}
