//! Resource multisets.
//!
//! A bag maps formulas to multiplicities (never zero) and iterates in the
//! canonical order, i.e. lexicographic on the printed formula. Every
//! enumeration in the crate that walks a bag inherits that order, which is
//! what makes sweep results and witnesses reproducible.

use std::collections::BTreeMap;
use std::fmt;

use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ResourceBag {
    counts: BTreeMap<Formula, usize>,
}

impl ResourceBag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(f: Formula) -> Self {
        let mut bag = Self::new();
        bag.insert(f);
        bag
    }

    pub fn insert(&mut self, f: Formula) {
        self.insert_many(f, 1);
    }

    pub fn insert_many(&mut self, f: Formula, n: usize) {
        if n > 0 {
            *self.counts.entry(f).or_insert(0) += n;
        }
    }

    /// Removes one occurrence; false if the formula is absent.
    pub fn remove_one(&mut self, f: &Formula) -> bool {
        match self.counts.get_mut(f) {
            Some(n) if *n > 1 => {
                *n -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(f);
                true
            }
            None => false,
        }
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.counts.get(f).copied().unwrap_or(0)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.counts.contains_key(f)
    }

    /// Total number of elements, multiplicities included.
    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Distinct formulas with multiplicities, canonical order.
    pub fn distinct(&self) -> impl Iterator<Item = (&Formula, usize)> {
        self.counts.iter().map(|(f, n)| (f, *n))
    }

    /// Every element with repetition, canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.counts
            .iter()
            .flat_map(|(f, n)| std::iter::repeat(f).take(*n))
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, n) in other.distinct() {
            out.insert_many(f.clone(), n);
        }
        out
    }

    /// Multiplicity-wise inclusion.
    pub fn is_subbag(&self, other: &Self) -> bool {
        self.distinct().all(|(f, n)| n <= other.count(f))
    }

    pub fn is_strict_subbag(&self, other: &Self) -> bool {
        self.is_subbag(other) && self.size() < other.size()
    }

    /// Per-formula saturating difference.
    /// Per-formula maximum, the multiset reading of set union.
    pub fn max_union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, n) in other.distinct() {
            let have = out.count(f);
            if n > have {
                out.insert_many(f.clone(), n - have);
            }
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (f, n) in self.distinct() {
            let m = other.count(f);
            if n > m {
                out.insert_many(f.clone(), n - m);
            }
        }
        out
    }

    /// Copy with one occurrence of `f` removed. `f` must be present.
    pub fn minus_one(&self, f: &Formula) -> Self {
        let mut out = self.clone();
        let removed = out.remove_one(f);
        debug_assert!(removed, "minus_one on absent formula");
        out
    }

    /// Copy with one occurrence of `f` added.
    pub fn plus_one(&self, f: Formula) -> Self {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    /// Summed formula sizes; the termination measure contribution of a side.
    pub fn formula_size(&self) -> usize {
        self.distinct().map(|(f, n)| f.size() * n).sum()
    }

    /// Number of sub-bags, i.e. the product of (multiplicity + 1) over
    /// distinct formulas. None on u128 overflow.
    pub fn multisubset_count(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for (_, n) in self.distinct() {
            total = total.checked_mul(n as u128 + 1)?;
        }
        Some(total)
    }

    /// All sub-bags in a fixed order: a mixed-radix counter over the distinct
    /// formulas (first formula least significant), so the empty bag comes
    /// first and the full bag last.
    pub fn multisubsets(&self) -> Vec<ResourceBag> {
        let items: Vec<(&Formula, usize)> = self.distinct().collect();
        let mut digits = vec![0usize; items.len()];
        let mut out = Vec::new();
        loop {
            let mut bag = ResourceBag::new();
            for (d, (f, _)) in digits.iter().zip(&items) {
                bag.insert_many((*f).clone(), *d);
            }
            out.push(bag);
            let mut i = 0;
            loop {
                if i == items.len() {
                    return out;
                }
                if digits[i] < items[i].1 {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

impl FromIterator<Formula> for ResourceBag {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        let mut bag = Self::new();
        for f in iter {
            bag.insert(f);
        }
        bag
    }
}

impl fmt::Display for ResourceBag {
    /// `{f1, f2, f2}`: canonical order, multiplicity by repetition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for formula in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{formula}")?;
        }
        write!(f, "}}")
    }
}
