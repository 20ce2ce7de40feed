//! Exact fuzzy sets over a finite skill domain.
//!
//! Grades are rationals in `[0, 1]`, so every comparison is exact. A
//! [`FuzzySet`] stores one grade per skill of its [`SkillDomain`], in
//! declaration order, which keeps equality, join, meet and inclusion as
//! plain linear scans.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A membership degree in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(Ratio<i64>);

impl Grade {
    pub const ZERO: Grade = Grade(Ratio::new_raw(0, 1));
    pub const ONE: Grade = Grade(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::MalformedGrade(format!("{numer}/{denom}")));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Result<Self> {
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(Error::GradeOutOfRange(format!("{r}")));
        }
        Ok(Grade(r))
    }

    /// Grade `k / 10`, the one-decimal lattice the fixtures use.
    pub fn tenths(k: u8) -> Self {
        assert!(k <= 10, "tenths out of range");
        Grade(Ratio::new(i64::from(k), 10))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }
}

impl FromStr for Grade {
    type Err = Error;

    /// Accepts decimal strings (`"0.3"`, `"1"`, `".25"`) and fractions
    /// (`"1/3"`).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let malformed = || Error::MalformedGrade(s.to_string());
        if t.is_empty() {
            return Err(malformed());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| malformed())?;
            let d: i64 = d.trim().parse().map_err(|_| malformed())?;
            if d <= 0 || n < 0 {
                return Err(if n < 0 {
                    Error::GradeOutOfRange(s.to_string())
                } else {
                    malformed()
                });
            }
            return Grade::from_ratio(Ratio::new(n, d))
                .map_err(|_| Error::GradeOutOfRange(s.to_string()));
        }
        if t.starts_with('-') {
            return Err(Error::GradeOutOfRange(s.to_string()));
        }
        let (int_part, frac_part) = t.split_once('.').unwrap_or((t, ""));
        let digits_ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) || (int_part.is_empty() && frac_part.is_empty()) {
            return Err(malformed());
        }
        // Strip padding so "0.10" and "0.1" parse identically without
        // spending precision on zeros.
        let int_part = int_part.trim_start_matches('0');
        let frac_part = frac_part.trim_end_matches('0');
        if int_part.len() > 1 || frac_part.len() > 17 {
            return Err(if int_part.len() > 1 {
                Error::GradeOutOfRange(s.to_string())
            } else {
                malformed()
            });
        }
        let denom = 10i64.pow(frac_part.len() as u32);
        let int: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| malformed())? };
        let frac: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| malformed())? };
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| Error::GradeOutOfRange(s.to_string()))?;
        Grade::from_ratio(Ratio::new(numer, denom)).map_err(|_| Error::GradeOutOfRange(s.to_string()))
    }
}

impl fmt::Display for Grade {
    /// Terminating decimals print as decimals, everything else as `n/d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        if d == 1 {
            return write!(f, "{n}");
        }
        let mut rest = d;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 {
            return write!(f, "{n}/{d}");
        }
        let places = twos.max(fives);
        let scale = 10i128.pow(places);
        let scaled = i128::from(n) * (scale / i128::from(d));
        let digits = format!("{:0>width$}", scaled, width = places as usize + 1);
        let (int, frac) = digits.split_at(digits.len() - places as usize);
        write!(f, "{int}.{frac}")
    }
}

/// The ordered, duplicate-free list of skills a fuzzy set is defined over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkillDomain {
    skills: Vec<String>,
}

impl SkillDomain {
    pub fn new<I, S>(skills: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let skills: Vec<String> = skills.into_iter().map(Into::into).collect();
        if skills.is_empty() {
            return Err(Error::EmptySkillDomain);
        }
        for (i, s) in skills.iter().enumerate() {
            if skills[..i].contains(s) {
                return Err(Error::DuplicateSkill(s.clone()));
            }
        }
        Ok(SkillDomain { skills })
    }

    pub fn skills(&self) -> &[String] {
        &self.skills
    }

    pub fn len(&self) -> usize {
        self.skills.len()
    }

    pub fn is_empty(&self) -> bool {
        self.skills.is_empty()
    }

    pub fn index_of(&self, skill: &str) -> Option<usize> {
        self.skills.iter().position(|s| s == skill)
    }

    pub fn contains(&self, skill: &str) -> bool {
        self.index_of(skill).is_some()
    }
}

/// A total map from the skills of a domain to grades.
#[derive(Clone, Debug)]
pub struct FuzzySet {
    domain: Arc<SkillDomain>,
    grades: Vec<Grade>,
}

impl FuzzySet {
    pub fn zero(domain: &Arc<SkillDomain>) -> Self {
        FuzzySet {
            domain: Arc::clone(domain),
            grades: vec![Grade::ZERO; domain.len()],
        }
    }

    pub fn ones(domain: &Arc<SkillDomain>) -> Self {
        FuzzySet {
            domain: Arc::clone(domain),
            grades: vec![Grade::ONE; domain.len()],
        }
    }

    pub fn from_grades(domain: &Arc<SkillDomain>, grades: Vec<Grade>) -> Result<Self> {
        if grades.len() != domain.len() {
            return Err(Error::IncompatibleDomains);
        }
        Ok(FuzzySet {
            domain: Arc::clone(domain),
            grades,
        })
    }

    /// Builds a set from `(skill, grade)` pairs; unnamed skills get grade 0.
    pub fn from_pairs<S: AsRef<str>>(domain: &Arc<SkillDomain>, pairs: &[(S, Grade)]) -> Result<Self> {
        let mut set = FuzzySet::zero(domain);
        for (skill, grade) in pairs {
            let idx = domain
                .index_of(skill.as_ref())
                .ok_or_else(|| Error::UnknownSkill(skill.as_ref().to_string()))?;
            set.grades[idx] = *grade;
        }
        Ok(set)
    }

    /// Like [`FuzzySet::from_pairs`] but parses grade strings.
    pub fn parse_pairs<S: AsRef<str>>(domain: &Arc<SkillDomain>, pairs: &[(S, &str)]) -> Result<Self> {
        let parsed = pairs
            .iter()
            .map(|(s, g)| Ok((s.as_ref(), g.parse::<Grade>()?)))
            .collect::<Result<Vec<_>>>()?;
        FuzzySet::from_pairs(domain, &parsed)
    }

    /// Characteristic set of `skills`: grade 1 on them, 0 elsewhere.
    pub fn indicator<S: AsRef<str>>(domain: &Arc<SkillDomain>, skills: &[S]) -> Result<Self> {
        let pairs: Vec<(&str, Grade)> = skills.iter().map(|s| (s.as_ref(), Grade::ONE)).collect();
        FuzzySet::from_pairs(domain, &pairs)
    }

    pub fn domain(&self) -> &Arc<SkillDomain> {
        &self.domain
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn grade(&self, skill: &str) -> Option<Grade> {
        self.domain.index_of(skill).map(|i| self.grades[i])
    }

    /// Skills with a positive grade.
    pub fn support(&self) -> impl Iterator<Item = (&str, Grade)> + '_ {
        self.domain
            .skills()
            .iter()
            .zip(&self.grades)
            .filter(|(_, g)| !g.is_zero())
            .map(|(s, g)| (s.as_str(), *g))
    }

    fn same_domain(&self, other: &FuzzySet) -> bool {
        Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain
    }

    fn check(&self, other: &FuzzySet) -> Result<()> {
        if self.same_domain(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleDomains)
        }
    }

    /// Pointwise `self(s) <= other(s)`.
    pub fn subseteq(&self, other: &FuzzySet) -> Result<bool> {
        self.check(other)?;
        Ok(self.leq(other))
    }

    pub fn join(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.check(other)?;
        Ok(self.join_unchecked(other))
    }

    pub fn meet(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.check(other)?;
        Ok(self.meet_unchecked(other))
    }

    /// Exactly one skill carries a positive grade.
    pub fn is_molecule(&self) -> bool {
        self.grades.iter().filter(|g| !g.is_zero()).count() == 1
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(|g| g.is_zero())
    }

    /// Inclusion for sets already known to share a domain.
    pub(crate) fn leq(&self, other: &FuzzySet) -> bool {
        debug_assert!(self.same_domain(other));
        self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    pub(crate) fn join_unchecked(&self, other: &FuzzySet) -> FuzzySet {
        debug_assert!(self.same_domain(other));
        FuzzySet {
            domain: Arc::clone(&self.domain),
            grades: self.grades.iter().zip(&other.grades).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub(crate) fn meet_unchecked(&self, other: &FuzzySet) -> FuzzySet {
        debug_assert!(self.same_domain(other));
        FuzzySet {
            domain: Arc::clone(&self.domain),
            grades: self.grades.iter().zip(&other.grades).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    /// Re-expresses this set over `target`, which must contain every skill
    /// of the current domain; new skills get grade 0.
    pub fn rebase(&self, target: &Arc<SkillDomain>) -> Result<FuzzySet> {
        let mut out = FuzzySet::zero(target);
        for (skill, grade) in self.domain.skills().iter().zip(&self.grades) {
            let idx = target
                .index_of(skill)
                .ok_or_else(|| Error::UnknownSkill(skill.clone()))?;
            out.grades[idx] = *grade;
        }
        Ok(out)
    }
}

impl PartialEq for FuzzySet {
    fn eq(&self, other: &Self) -> bool {
        self.grades == other.grades && self.same_domain(other)
    }
}

impl Eq for FuzzySet {}

impl Hash for FuzzySet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.grades.hash(state);
    }
}

impl PartialOrd for FuzzySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order for deterministic collections; unrelated to inclusion.
impl Ord for FuzzySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grades
            .cmp(&other.grades)
            .then_with(|| self.domain.skills().cmp(other.domain.skills()))
    }
}

impl fmt::Display for FuzzySet {
    /// Paper-style notation with zero grades omitted: `{0.2/s1, 0.3/s2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (skill, grade)) in self.support().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{grade}/{skill}")?;
        }
        f.write_str("}")
    }
}
