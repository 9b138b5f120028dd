//! Exact Carlitz rank by breadth-first search.
//!
//! Forms of length `n` are `inv ∘ v + a_{n+1}`, where `v` is the map of a
//! length `n - 1` form whose last coefficient is nonzero (any affine map when
//! `n = 1`). The search therefore keeps one deduplicated set of "inner" maps
//! per level instead of enumerating all `(q-1)^n q^2` coefficient vectors.
//! The first level at which a permutation appears is its rank, so minimality
//! is structural.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::field::{Elem, Field};
use crate::form::CarlitzForm;
use crate::poly::PermMap;
use crate::{Error, Result};

/// Map-level operations allowed before a search gives up.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankResult {
    Found { rank: usize, witness: CarlitzForm },
    NotFoundWithinCap(usize),
}

impl RankResult {
    pub fn rank(&self) -> Option<usize> {
        match self {
            RankResult::Found { rank, .. } => Some(*rank),
            RankResult::NotFoundWithinCap(_) => None,
        }
    }
}

/// Default rank cap, `q + 2`.
pub fn default_cap(field: &Field) -> usize {
    field.order() as usize + 2
}

/// Rank of `m`, searching forms with up to `cap` inversions.
pub fn carlitz_rank(field: &Field, m: &PermMap, cap: usize) -> Result<RankResult> {
    carlitz_rank_with_budget(field, m, cap, DEFAULT_BUDGET)
}

pub fn carlitz_rank_with_budget(field: &Field, m: &PermMap, cap: usize, budget: u64) -> Result<RankResult> {
    if m.images().len() != field.order() as usize || !m.is_permutation() {
        return Err(Error::NotAPermutation);
    }
    let mut found = None;
    Search::new(field, budget).run(cap, |map, rank, coeffs| {
        if map == m.images() {
            found = Some(RankResult::Found { rank, witness: CarlitzForm::from_coeffs_unchecked(coeffs.to_vec()) });
            return Visit::Stop;
        }
        Visit::Continue
    })?;
    Ok(found.unwrap_or(RankResult::NotFoundWithinCap(cap)))
}

/// Permutations of rank exactly `n`.
pub fn permutations_of_rank(field: &Field, n: usize) -> Result<BTreeSet<PermMap>> {
    let table = RankTable::build(field, n)?;
    Ok(table.of_rank(n).cloned().collect())
}

/// Rank and a minimal witness for every permutation of rank at most `max_rank`.
#[derive(Clone, Debug)]
pub struct RankTable {
    max_rank: usize,
    entries: BTreeMap<PermMap, (usize, CarlitzForm)>,
}

impl RankTable {
    pub fn build(field: &Field, max_rank: usize) -> Result<Self> {
        Self::build_with_budget(field, max_rank, DEFAULT_BUDGET)
    }

    pub fn build_with_budget(field: &Field, max_rank: usize, budget: u64) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let full = factorial(field.order() as u64);
        Search::new(field, budget).run(max_rank, |map, rank, coeffs| {
            let key = PermMap::from_images_unchecked(map.to_vec());
            entries.entry(key).or_insert_with(|| (rank, CarlitzForm::from_coeffs_unchecked(coeffs.to_vec())));
            if full.is_some_and(|all| entries.len() as u64 == all) {
                Visit::Stop
            } else {
                Visit::Continue
            }
        })?;
        Ok(RankTable { max_rank, entries })
    }

    pub fn max_rank(&self) -> usize {
        self.max_rank
    }

    pub fn rank_of(&self, m: &PermMap) -> Option<usize> {
        self.entries.get(m).map(|(r, _)| *r)
    }

    pub fn witness(&self, m: &PermMap) -> Option<&CarlitzForm> {
        self.entries.get(m).map(|(_, w)| w)
    }

    pub fn of_rank(&self, n: usize) -> impl Iterator<Item = &PermMap> {
        self.entries.iter().filter(move |(_, (r, _))| *r == n).map(|(m, _)| m)
    }

    /// Number of permutations found at each rank `0..=max_rank`.
    pub fn counts_by_rank(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.max_rank + 1];
        for (r, _) in self.entries.values() {
            counts[*r] += 1;
        }
        counts
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PermMap, usize, &CarlitzForm)> {
        self.entries.iter().map(|(m, (r, w))| (m, *r, w))
    }
}

fn factorial(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

enum Visit {
    Continue,
    Stop,
}

struct Search<'a> {
    field: &'a Field,
    budget: u64,
    spent: u64,
}

impl<'a> Search<'a> {
    fn new(field: &'a Field, budget: u64) -> Self {
        Search { field, budget, spent: 0 }
    }

    fn charge(&mut self, maps: u64) -> Result<()> {
        self.spent += maps;
        if self.spent > self.budget {
            Err(Error::BudgetExceeded { limit: self.budget })
        } else {
            Ok(())
        }
    }

    /// Calls `visit(map, rank, coeffs)` for every map reachable with each
    /// length `0..=cap`, level by level. Maps may repeat across levels.
    fn run(&mut self, cap: usize, mut visit: impl FnMut(&[Elem], usize, &[Elem]) -> Visit) -> Result<()> {
        let field = self.field;
        // Inner maps for length 1 forms; also exactly the length 0 forms.
        let mut inner: BTreeMap<Vec<Elem>, Vec<Elem>> = BTreeMap::new();
        for a0 in field.nonzero_elements() {
            for a1 in field.elements() {
                let map: Vec<Elem> = field.elements().map(|c| field.add(field.mul(a0, c), a1)).collect();
                let coeffs = alloc::vec![a0, a1];
                if let Visit::Stop = visit(&map, 0, &coeffs) {
                    return Ok(());
                }
                inner.insert(map, coeffs);
            }
        }
        self.charge(inner.len() as u64)?;

        for n in 1..=cap {
            self.charge(inner.len() as u64 * field.order() as u64)?;
            let last = n == cap;
            let mut next: BTreeMap<Vec<Elem>, Vec<Elem>> = BTreeMap::new();
            let mut map = alloc::vec![Elem::ZERO; field.order() as usize];
            for (v, prefix) in &inner {
                let inverted: Vec<Elem> = v.iter().map(|&x| field.inverse_or_zero(x)).collect();
                let mut coeffs = prefix.clone();
                coeffs.push(Elem::ZERO);
                for a in field.elements() {
                    for (slot, &u) in map.iter_mut().zip(&inverted) {
                        *slot = field.add(u, a);
                    }
                    *coeffs.last_mut().unwrap() = a;
                    if let Visit::Stop = visit(&map, n, &coeffs) {
                        return Ok(());
                    }
                    if !last && !a.is_zero() && !next.contains_key(&map) {
                        next.insert(map.clone(), coeffs.clone());
                    }
                }
            }
            inner = next;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::FormSpace;
    use crate::poly::Poly;

    /// Independent oracle: enumerate every coefficient vector by length and
    /// record the first length at which each expanded map appears.
    fn brute_ranks(field: &Field, cap: usize) -> BTreeMap<PermMap, usize> {
        let mut out = BTreeMap::new();
        for n in 0..=cap {
            for form in FormSpace::new(field, n).iter() {
                out.entry(form.expand(field)).or_insert(n);
            }
        }
        out
    }

    #[test]
    fn bfs_matches_form_enumeration() {
        for (p, r, cap) in [(2, 2, 4), (3, 1, 3), (5, 1, 3), (7, 1, 2)] {
            let f = Field::new(p, r).unwrap();
            let table = RankTable::build(&f, cap).unwrap();
            let oracle = brute_ranks(&f, cap);
            assert_eq!(table.len(), oracle.len(), "q={}", f.order());
            for (m, r) in &oracle {
                assert_eq!(table.rank_of(m), Some(*r));
                let w = table.witness(m).unwrap();
                assert_eq!(w.inversions(), *r);
                assert_eq!(&w.expand(&f), m);
            }
        }
    }

    #[test]
    fn rank_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let affine = Poly::new(alloc::vec![Elem(3), Elem(2)]).to_map(&f5);
        assert_eq!(carlitz_rank(&f5, &affine, 4).unwrap().rank(), Some(0));
        let inv = Poly::monomial(Elem::ONE, 3).to_map(&f5);
        match carlitz_rank(&f5, &inv, 4).unwrap() {
            RankResult::Found { rank, witness } => {
                assert_eq!(rank, 1);
                assert_eq!(witness.expand(&f5), inv);
            }
            other => panic!("{other:?}"),
        }
        let square = Poly::monomial(Elem::ONE, 2).to_map(&f5);
        assert_eq!(carlitz_rank(&f5, &square, 4), Err(Error::NotAPermutation));
        assert_eq!(carlitz_rank(&f5, &inv, 0).unwrap(), RankResult::NotFoundWithinCap(0));
    }

    #[test]
    fn rank_sets() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(permutations_of_rank(&f5, 0).unwrap().len(), 20);
        let r1 = permutations_of_rank(&f5, 1).unwrap();
        for m in &r1 {
            assert_eq!(carlitz_rank(&f5, m, 3).unwrap().rank(), Some(1));
            assert!(m.interpolate(&f5).degree().unwrap() > 1);
        }
    }

    #[test]
    fn full_coverage_of_small_symmetric_groups() {
        for (p, r, total) in [(2u64, 2u32, 24usize), (5, 1, 120)] {
            let f = Field::new(p, r).unwrap();
            let table = RankTable::build(&f, 6).unwrap();
            assert_eq!(table.len(), total);
            assert_eq!(table.counts_by_rank().iter().sum::<usize>(), total);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::new(7, 1).unwrap();
        assert!(matches!(RankTable::build_with_budget(&f, 3, 100), Err(Error::BudgetExceeded { .. })));
    }
}
