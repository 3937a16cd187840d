//! Finite bases indexed by combinatorial keys.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// An ordered list of distinct keys with a reverse lookup.
#[derive(Clone, Debug)]
pub struct IndexedBasis<K> {
    elems: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Clone + Eq + Hash> IndexedBasis<K> {
    pub fn new() -> IndexedBasis<K> {
        IndexedBasis {
            elems: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Keeps the given order; duplicates are an error.
    pub fn from_vec(elems: Vec<K>) -> Result<IndexedBasis<K>> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, k) in elems.iter().enumerate() {
            if index.insert(k.clone(), i).is_some() {
                return Err(Error::InvalidArgument("duplicate basis element".into()));
            }
        }
        Ok(IndexedBasis { elems, index })
    }

    /// Sorts and deduplicates before indexing.
    pub fn from_unsorted(mut elems: Vec<K>) -> IndexedBasis<K>
    where
        K: Ord,
    {
        elems.sort();
        elems.dedup();
        IndexedBasis::from_vec(elems).expect("deduplicated")
    }

    /// Appends `k` unless present; returns its index.
    pub fn insert(&mut self, k: K) -> usize {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        let i = self.elems.len();
        self.index.insert(k.clone(), i);
        self.elems.push(k);
        i
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &K {
        &self.elems[i]
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn elements(&self) -> &[K] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, K> {
        self.elems.iter()
    }
}

impl<K: Clone + Eq + Hash> Default for IndexedBasis<K> {
    fn default() -> Self {
        IndexedBasis::new()
    }
}

impl<'a, K> IntoIterator for &'a IndexedBasis<K> {
    type Item = &'a K;
    type IntoIter = std::slice::Iter<'a, K>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}
