//! Exact sparse linear algebra: echelon bases, reduction, kernels.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Sorted `(column, value)` pairs with no zero values.
pub type SVec = Vec<(usize, Scalar)>;

/// `a + c·b`
pub fn axpy(a: &SVec, c: &Scalar, b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(a: &SVec, c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

pub fn from_dense(v: &[Scalar]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SVec, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A subspace held as rows in echelon form: every row has a distinct pivot
/// (its first column) with value 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a SVec>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Subtracts multiples of the rows until no pivot column is occupied.
    pub fn reduce(&self, v: &SVec) -> SVec {
        if self.rows.is_empty() || v.is_empty() {
            return v.clone();
        }
        let mut cur = v.clone();
        let mut pos = 0;
        loop {
            let next = cur[pos..]
                .iter()
                .position(|(c, _)| self.rows.contains_key(c));
            match next {
                None => return cur,
                Some(off) => {
                    let k = pos + off;
                    let (col, c) = cur[k].clone();
                    let row = &self.rows[&col];
                    cur = axpy(&cur, &(-&c), row);
                    pos = cur.partition_point(|(i, _)| *i <= col);
                }
            }
        }
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SVec) -> bool {
        let r = self.reduce(&v);
        match r.first() {
            None => false,
            Some((p, c)) => {
                let p = *p;
                let inv = c.recip();
                self.rows.insert(p, scale(&r, &inv));
                true
            }
        }
    }

    /// The reduced row echelon rows, in pivot order; canonical for the span.
    pub fn canonical_rows(&self) -> Vec<SVec> {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut done: BTreeMap<usize, SVec> = BTreeMap::new();
        for &p in pivots.iter().rev() {
            let mut row = self.rows[&p].clone();
            let mut pos = 1;
            loop {
                let next = row[pos..].iter().position(|(c, _)| done.contains_key(c));
                match next {
                    None => break,
                    Some(off) => {
                        let k = pos + off;
                        let (col, c) = row[k].clone();
                        row = axpy(&row, &(-&c), &done[&col]);
                        pos = row.partition_point(|(i, _)| *i <= col);
                    }
                }
            }
            done.insert(p, row);
        }
        done.into_values().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SVec> {
        self.rows.values()
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }

    pub fn same_span(&self, other: &Echelon) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other)
    }

    pub fn intersection(&self, other: &Echelon) -> Echelon {
        let a: Vec<SVec> = self.rows.values().cloned().collect();
        let b: Vec<SVec> = other.rows.values().cloned().collect();
        // a_i ↦ e_i, b_j ↦ e_{offset+j}: kernel of Σ α_i a_i − Σ β_j b_j
        let cols: Vec<SVec> = a
            .iter()
            .cloned()
            .chain(b.iter().map(|v| scale(v, &Scalar::from_int(-1))))
            .collect();
        let ker = kernel(&cols);
        let mut out = Echelon::new();
        for k in ker {
            let mut v = Vec::new();
            for (i, c) in &k {
                if *i < a.len() {
                    v = axpy(&v, c, &a[*i]);
                }
            }
            out.insert(v);
        }
        out
    }
}

/// A basis of the kernel of the map sending `e_j` to `columns[j]`,
/// in reduced row echelon form.
pub fn kernel(columns: &[SVec]) -> Vec<SVec> {
    let mut rows: BTreeMap<usize, (SVec, SVec)> = BTreeMap::new();
    let mut ker = Echelon::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut tag: SVec = vec![(j, Scalar::one())];
        let mut pos = 0;
        loop {
            let next = v[pos..].iter().position(|(c, _)| rows.contains_key(c));
            match next {
                None => break,
                Some(off) => {
                    let k = pos + off;
                    let (p, c) = v[k].clone();
                    let (row, rtag) = &rows[&p];
                    let m = -&c;
                    v = axpy(&v, &m, row);
                    tag = axpy(&tag, &m, rtag);
                    pos = v.partition_point(|(i, _)| *i <= p);
                }
            }
        }
        match v.first() {
            None => {
                ker.insert(tag);
            }
            Some((p, c)) => {
                let inv = c.recip();
                let p = *p;
                rows.insert(p, (scale(&v, &inv), scale(&tag, &inv)));
            }
        }
    }
    ker.canonical_rows()
}

/// Rank of the span of `vs`.
pub fn rank(vs: &[SVec]) -> usize {
    Echelon::from_vectors(vs.iter()).rank()
}

/// Solves `Σ x_j columns[j] = target`; `None` when inconsistent.
pub fn solve(columns: &[SVec], target: &SVec) -> Option<SVec> {
    let mut rows: BTreeMap<usize, (SVec, SVec)> = BTreeMap::new();
    let reduce = |rows: &BTreeMap<usize, (SVec, SVec)>, v0: &SVec, t0: SVec| -> (SVec, SVec) {
        let mut v = v0.clone();
        let mut tag = t0;
        let mut pos = 0;
        loop {
            let next = v[pos..].iter().position(|(c, _)| rows.contains_key(c));
            match next {
                None => return (v, tag),
                Some(off) => {
                    let k = pos + off;
                    let (p, c) = v[k].clone();
                    let (row, rtag) = &rows[&p];
                    let m = -&c;
                    v = axpy(&v, &m, row);
                    tag = axpy(&tag, &m, rtag);
                    pos = v.partition_point(|(i, _)| *i <= p);
                }
            }
        }
    };
    for (j, col) in columns.iter().enumerate() {
        let (v, tag) = reduce(&rows, col, vec![(j, Scalar::one())]);
        if let Some((p, c)) = v.first() {
            let inv = c.recip();
            let p = *p;
            rows.insert(p, (scale(&v, &inv), scale(&tag, &inv)));
        }
    }
    let (v, tag) = reduce(&rows, target, Vec::new());
    if v.is_empty() {
        // target − Σ tag_j col_j = 0 after negation bookkeeping
        Some(scale(&tag, &Scalar::from_int(-1)))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> SVec {
        from_dense(&v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_small() {
        // columns (1,0), (0,1), (1,1): kernel spanned by (1,1,-1)
        let k = kernel(&[s(&[1, 0]), s(&[0, 1]), s(&[1, 1])]);
        assert_eq!(k, vec![s(&[1, 1, -1])]);
        assert!(kernel(&[s(&[1, 0]), s(&[0, 1])]).is_empty());
        assert_eq!(kernel(&[Vec::new()]), vec![s(&[1])]);
    }

    #[test]
    fn reduce_and_contains() {
        let e = Echelon::from_vectors([s(&[1, 1, 0]), s(&[0, 1, 1])].iter());
        assert!(e.contains(&s(&[1, 2, 1])));
        assert!(!e.contains(&s(&[0, 0, 1])));
        assert_eq!(e.reduce(&s(&[1, 1, 0])), Vec::new());
        let f = Echelon::from_vectors([s(&[0, 0, 1])].iter());
        assert_eq!(e.intersection(&f).rank(), 0);
        let g = Echelon::from_vectors([s(&[1, 2, 1]), s(&[1, 0, 0])].iter());
        assert_eq!(e.intersection(&g).rank(), 1);
    }

    #[test]
    fn canonical_form_is_span_invariant() {
        let a = Echelon::from_vectors([s(&[1, 2, 3]), s(&[0, 1, 4])].iter());
        let b = Echelon::from_vectors([s(&[1, 3, 7]), s(&[2, 5, 10])].iter());
        assert_eq!(a.canonical_rows(), b.canonical_rows());
    }

    #[test]
    fn solve_consistent_and_not() {
        let cols = [s(&[1, 0]), s(&[1, 1])];
        let x = solve(&cols, &s(&[3, 1])).unwrap();
        assert_eq!(
            axpy(
                &scale(
                    &cols[0],
                    &x.iter()
                        .find(|p| p.0 == 0)
                        .map(|p| p.1.clone())
                        .unwrap_or_default()
                ),
                &x.iter()
                    .find(|p| p.0 == 1)
                    .map(|p| p.1.clone())
                    .unwrap_or_default(),
                &cols[1]
            ),
            s(&[3, 1])
        );
        assert!(solve(&[s(&[1, 0])], &s(&[0, 1])).is_none());
    }
}
