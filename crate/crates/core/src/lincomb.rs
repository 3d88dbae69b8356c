//! Sparse formal linear combinations with exact coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// A finite formal sum `Σ c_k·k`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinComb<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut s = Self::new();
        s.add_term(k, c);
        s
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += &c;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, k: &K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.0.remove(k);
                }
            }
            None => {
                self.0.insert(k.clone(), c.clone());
            }
        }
    }

    /// `self += c·other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            if c.is_one() {
                self.add_term_ref(k, v);
            } else {
                self.add_term_ref(k, &(c * v));
            }
        }
    }

    pub fn get(&self, k: &K) -> Option<&Scalar> {
        self.0.get(k)
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn remove(&mut self, k: &K) -> Option<Scalar> {
        self.0.remove(k)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.0.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.0.keys()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<(&K, &Scalar)> {
        self.0.iter().next()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        LinComb(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in self.iter() {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Maps each key to a combination and sums with coefficients.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<K2>) -> LinComb<K2> {
        let mut out = LinComb::new();
        for (k, v) in self.iter() {
            out.add_scaled(v, &f(k));
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        LinComb(
            self.0
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord> IntoIterator for LinComb<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), rhs);
        out
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scale(&Scalar::from_int(-1))
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})·{:?}", v, k)?;
        }
        Ok(())
    }
}
