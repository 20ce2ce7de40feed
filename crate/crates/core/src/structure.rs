//! Finite knowledge structures and their definitional predicates.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::itemset::ItemSet;

/// A domain of items together with a family of states containing `∅` and the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeStructure {
    items: Vec<String>,
    states: BTreeSet<ItemSet>,
}

/// Inner and outer fringe of one state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FringeReport {
    pub state: ItemSet,
    pub inner: ItemSet,
    pub outer: ItemSet,
    pub fringe: ItemSet,
}

/// Items merged by equal `K_q`, and the structure induced on the classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    /// Each class as positions into the original item list.
    pub classes: Vec<ItemSet>,
    pub structure: KnowledgeStructure,
}

/// `|K Δ L|`.
pub fn distance(k: &ItemSet, l: &ItemSet) -> usize {
    k.symmetric_difference(l).len()
}

impl KnowledgeStructure {
    pub fn new<I>(items: Vec<String>, states: I) -> Result<Self>
    where
        I: IntoIterator<Item = ItemSet>,
    {
        if items.is_empty() {
            return Err(Error::InvalidStructure("empty item domain".into()));
        }
        for (i, q) in items.iter().enumerate() {
            if items[..i].contains(q) {
                return Err(Error::DuplicateItem(q.clone()));
            }
        }
        let full = ItemSet::full(items.len());
        let states: BTreeSet<ItemSet> = states.into_iter().collect();
        if let Some(bad) = states.iter().find(|s| !s.is_subset(&full)) {
            return Err(Error::InvalidStructure(format!("state {bad:?} has positions outside the domain")));
        }
        if !states.contains(&ItemSet::empty()) {
            return Err(Error::InvalidStructure("missing the empty state".into()));
        }
        if !states.contains(&full) {
            return Err(Error::InvalidStructure("missing the full domain as a state".into()));
        }
        Ok(KnowledgeStructure { items, states })
    }

    /// Builds a structure from item names, resolving each state by name.
    pub fn from_names<S: AsRef<str>>(items: &[S], states: &[&[S]]) -> Result<Self> {
        let items: Vec<String> = items.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup = |name: &str| {
            items
                .iter()
                .position(|q| q == name)
                .ok_or_else(|| Error::UnknownItem(name.to_string()))
        };
        let states = states
            .iter()
            .map(|st| st.iter().map(|n| lookup(n.as_ref())).collect::<Result<ItemSet>>())
            .collect::<Result<Vec<_>>>()?;
        KnowledgeStructure::new(items, states)
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn states(&self) -> &BTreeSet<ItemSet> {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn domain(&self) -> ItemSet {
        ItemSet::full(self.items.len())
    }

    pub fn contains(&self, state: &ItemSet) -> bool {
        self.states.contains(state)
    }

    pub fn item_index(&self, item: &str) -> Result<usize> {
        self.items
            .iter()
            .position(|q| q == item)
            .ok_or_else(|| Error::UnknownItem(item.to_string()))
    }

    pub fn item_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ItemSet> {
        names.iter().map(|n| self.item_index(n.as_ref())).collect()
    }

    pub fn names(&self, set: &ItemSet) -> Vec<String> {
        set.iter().map(|i| self.items[i].clone()).collect()
    }

    /// States ordered by size, then by member positions.
    pub fn sorted_states(&self) -> Vec<ItemSet> {
        let mut v: Vec<ItemSet> = self.states.iter().cloned().collect();
        v.sort_by_key(ItemSet::display_key);
        v
    }

    /// State names in display order; handy for golden comparisons.
    pub fn named_states(&self) -> Vec<Vec<String>> {
        self.sorted_states().iter().map(|s| self.names(s)).collect()
    }

    /// States as sets of names, independent of item declaration order.
    pub fn canonical(&self) -> BTreeSet<BTreeSet<String>> {
        self.states
            .iter()
            .map(|s| s.iter().map(|i| self.items[i].clone()).collect())
            .collect()
    }

    /// `K_q`: the states containing item `q`.
    pub fn states_containing(&self, q: usize) -> BTreeSet<ItemSet> {
        self.states.iter().filter(|s| s.contains(q)).cloned().collect()
    }

    pub fn states_containing_item(&self, item: &str) -> Result<BTreeSet<ItemSet>> {
        Ok(self.states_containing(self.item_index(item)?))
    }

    /// Pairwise closure suffices for a finite family.
    pub fn is_union_closed(&self) -> bool {
        self.first_union_gap().is_none()
    }

    /// Two states whose union is missing, if any.
    pub fn first_union_gap(&self) -> Option<(ItemSet, ItemSet)> {
        let v: Vec<&ItemSet> = self.states.iter().collect();
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                if !self.states.contains(&a.union(b)) {
                    return Some(((*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }

    pub fn is_intersection_closed(&self) -> bool {
        self.first_intersection_gap().is_none()
    }

    pub fn first_intersection_gap(&self) -> Option<(ItemSet, ItemSet)> {
        let v: Vec<&ItemSet> = self.states.iter().collect();
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                if !self.states.contains(&a.intersection(b)) {
                    return Some(((*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }

    pub fn is_quasi_ordinal(&self) -> bool {
        self.is_union_closed() && self.is_intersection_closed()
    }

    /// Every pair of states is joined inside the family by a path of
    /// single-item steps whose length equals their distance.
    pub fn is_well_graded(&self) -> bool {
        self.first_ungraded_pair().is_none()
    }

    /// A pair of states whose graph distance differs from `|K Δ L|`.
    pub fn first_ungraded_pair(&self) -> Option<(ItemSet, ItemSet)> {
        let v: Vec<&ItemSet> = self.states.iter().collect();
        let index: HashMap<&ItemSet, usize> = v.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let n_items = self.items.len();
        let neighbours: Vec<Vec<usize>> = v
            .iter()
            .map(|s| {
                (0..n_items)
                    .filter_map(|q| {
                        let t = if s.contains(q) { s.without(q) } else { s.with(q) };
                        index.get(&t).copied()
                    })
                    .collect()
            })
            .collect();
        for src in 0..v.len() {
            let mut dist = vec![usize::MAX; v.len()];
            dist[src] = 0;
            let mut queue = VecDeque::from([src]);
            while let Some(x) = queue.pop_front() {
                for &y in &neighbours[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            for dst in src + 1..v.len() {
                if dist[dst] != distance(v[src], v[dst]) {
                    return Some((v[src].clone(), v[dst].clone()));
                }
            }
        }
        None
    }

    pub fn is_learning_space(&self) -> bool {
        self.is_union_closed() && self.is_well_graded()
    }

    /// Every non-empty state loses some item and stays a state.
    pub fn is_accessible(&self) -> bool {
        self.states
            .iter()
            .filter(|s| !s.is_empty())
            .all(|s| s.iter().any(|q| self.states.contains(&s.without(q))))
    }

    /// Some state meets each item pair in exactly one point.
    pub fn is_t0(&self) -> bool {
        self.first_pair(|q, r| self.states.iter().any(|s| s.contains(q) != s.contains(r)))
            .is_none()
    }

    /// Each item of each pair is in some state without the other.
    pub fn is_t1(&self) -> bool {
        self.first_pair(|q, r| {
            self.states.iter().any(|s| s.contains(q) && !s.contains(r))
                && self.states.iter().any(|s| s.contains(r) && !s.contains(q))
        })
        .is_none()
    }

    /// `K_q != K_r` for every pair of distinct items.
    pub fn is_discriminative(&self) -> bool {
        self.first_indiscriminate_pair().is_none()
    }

    pub fn first_indiscriminate_pair(&self) -> Option<(usize, usize)> {
        let kq: Vec<BTreeSet<ItemSet>> = (0..self.items.len()).map(|q| self.states_containing(q)).collect();
        self.first_pair(|q, r| kq[q] != kq[r])
    }

    /// Neither of `K_q`, `K_r` contains the other, for every pair.
    pub fn is_bi_discriminative(&self) -> bool {
        self.first_non_bi_discriminated_pair().is_none()
    }

    pub fn first_non_bi_discriminated_pair(&self) -> Option<(usize, usize)> {
        let kq: Vec<BTreeSet<ItemSet>> = (0..self.items.len()).map(|q| self.states_containing(q)).collect();
        self.first_pair(|q, r| !kq[q].is_subset(&kq[r]) && !kq[r].is_subset(&kq[q]))
    }

    /// First unordered pair `(q, r)` for which `ok` fails.
    fn first_pair(&self, ok: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        let n = self.items.len();
        (0..n)
            .flat_map(|q| (q + 1..n).map(move |r| (q, r)))
            .find(|&(q, r)| !ok(q, r))
    }

    /// The trace `{K ∩ Q' : K ∈ 𝒦}` on a non-empty subset `Q'`, re-indexed
    /// onto `Q'` in domain order.
    pub fn trace(&self, sub: &ItemSet) -> Result<KnowledgeStructure> {
        if sub.is_empty() {
            return Err(Error::EmptyItemSet);
        }
        if !sub.is_subset(&self.domain()) {
            return Err(Error::InvalidStructure("trace domain is not a subset of the items".into()));
        }
        let positions: Vec<usize> = sub.iter().collect();
        let items = positions.iter().map(|&p| self.items[p].clone()).collect();
        KnowledgeStructure::new(items, self.states.iter().map(|s| s.project(&positions)))
    }

    pub fn trace_on_names<S: AsRef<str>>(&self, names: &[S]) -> Result<KnowledgeStructure> {
        self.trace(&self.item_set(names)?)
    }

    /// Merges items with identical `K_q` into classes named by their sorted
    /// member names joined with `+`.
    pub fn quotient(&self) -> QuotientResult {
        let mut by_key: BTreeMap<BTreeSet<ItemSet>, usize> = BTreeMap::new();
        let mut classes: Vec<ItemSet> = Vec::new();
        for q in 0..self.items.len() {
            let key = self.states_containing(q);
            let slot = *by_key.entry(key).or_insert_with(|| {
                classes.push(ItemSet::empty());
                classes.len() - 1
            });
            classes[slot].insert(q);
        }
        let names = classes
            .iter()
            .map(|c| {
                let mut members = self.names(c);
                members.sort();
                members.join("+")
            })
            .collect();
        let states = self.states.iter().map(|s| {
            classes
                .iter()
                .enumerate()
                .filter(|(_, c)| c.iter().next().is_some_and(|q| s.contains(q)))
                .map(|(k, _)| k)
                .collect::<ItemSet>()
        });
        let structure = KnowledgeStructure::new(names, states).expect("quotient keeps ∅ and the domain");
        QuotientResult { classes, structure }
    }

    pub fn fringes(&self, state: &ItemSet) -> Result<FringeReport> {
        if !self.states.contains(state) {
            return Err(Error::NotAState(format!("{:?}", self.names(state))));
        }
        let inner: ItemSet = state.iter().filter(|&t| self.states.contains(&state.without(t))).collect();
        let outer: ItemSet = (0..self.items.len())
            .filter(|&t| !state.contains(t) && self.states.contains(&state.with(t)))
            .collect();
        Ok(FringeReport {
            state: state.clone(),
            fringe: inner.union(&outer),
            inner,
            outer,
        })
    }
}
